// Command-line front end: loads a scenario file, runs one experiment
// pipeline, and writes CSV tables plus a run manifest.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "afcmem/figures.hpp"
#include "afcmem/scenario.hpp"

namespace {

struct GlobalOptions {
  std::string scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  double resolution_scale = 1.0;
};

void add_global_flags(CLI::App* cmd, GlobalOptions& opt) {
  cmd->add_option("--scenario", opt.scenario_path, "Scenario file (key-value sections)")
      ->required();
  cmd->add_option("--out-dir", opt.out_dir, "Output directory for CSV tables + manifest");
  cmd->add_option("--seed", opt.seed, "Override the scenario seed")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  cmd->add_option("--resolution-scale", opt.resolution_scale,
                  "Refine every grid: span x scale, bins x scale^2 (power of two >= 1)");
}

afcmem::Scenario load(const GlobalOptions& opt) {
  afcmem::Scenario s = afcmem::load_scenario(opt.scenario_path);
  if (opt.seed_given) s.seed = opt.seed;
  if (opt.resolution_scale != 1.0) afcmem::scale_resolution(s, opt.resolution_scale);
  return s;
}

void report(const afcmem::PathList& files, const afcmem::WarningList& warnings) {
  for (const afcmem::Warning& w : warnings)
    std::cerr << "warning [" << w.code << "] " << w.message << "\n";
  for (const std::filesystem::path& f : files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-enhanced AFC quantum-memory simulator"};
  app.require_subcommand(1);

  GlobalOptions opt;
  std::string figure_id;
  std::string tomo_part = "all";

  CLI::App* comb = app.add_subcommand("comb", "Export the carved comb spectrum");
  CLI::App* cavity_sweep =
      app.add_subcommand("cavity-sweep", "CW reflection sweep across the line");
  CLI::App* store = app.add_subcommand("store", "Single storage run: echo trace + summary");
  CLI::App* sweep_detuning =
      app.add_subcommand("sweep-detuning", "Echo efficiency vs comb center detuning");
  CLI::App* sweep_bandwidth =
      app.add_subcommand("sweep-bandwidth", "Echo efficiency vs comb bandwidth");
  CLI::App* qubit =
      app.add_subcommand("qubit", "Time-bin qubit storage fidelity (all six input states)");
  CLI::App* g2 = app.add_subcommand("g2", "Heralded cross-correlation vs storage time");
  CLI::App* tomography =
      app.add_subcommand("tomography", "Process tomography of the modeled memory channel");
  tomography->add_option("--part", tomo_part, "Which tables to write: all, states, chi, bloch")
      ->check(CLI::IsMember({"all", "states", "chi", "bloch"}));
  CLI::App* figure = app.add_subcommand("figure", "Run one named figure pipeline");
  figure->add_option("id", figure_id, "Figure id: 2a, 2b, 2c, 3, 4a, 4b, 4c")->required();

  for (CLI::App* cmd : {comb, cavity_sweep, store, sweep_detuning, sweep_bandwidth, qubit, g2,
                        tomography, figure})
    add_global_flags(cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    const afcmem::Scenario scenario = load(opt);
    const std::filesystem::path out_dir = opt.out_dir;
    afcmem::WarningList warnings;
    afcmem::PathList files;

    if (figure->parsed()) {
      const afcmem::FigureRun run =
          afcmem::run_figure(figure_id, scenario, opt.scenario_path, out_dir, &warnings);
      files = run.files;
      files.push_back(out_dir / "manifest.json");
    } else {
      if (comb->parsed()) files = afcmem::export_comb(scenario, out_dir, &warnings);
      if (cavity_sweep->parsed()) files = afcmem::run_reflection_sweep(scenario, out_dir, &warnings);
      if (store->parsed()) files = afcmem::run_store(scenario, out_dir, &warnings);
      if (sweep_detuning->parsed()) files = afcmem::run_detuning_sweep(scenario, out_dir, &warnings);
      if (sweep_bandwidth->parsed())
        files = afcmem::run_bandwidth_sweep(scenario, out_dir, &warnings);
      if (qubit->parsed()) files = afcmem::run_qubit(scenario, out_dir, &warnings);
      if (g2->parsed()) files = afcmem::run_g2(scenario, out_dir, &warnings);
      if (tomography->parsed()) {
        afcmem::TomoPart part = afcmem::TomoPart::all;
        if (tomo_part == "states") part = afcmem::TomoPart::states;
        if (tomo_part == "chi") part = afcmem::TomoPart::chi;
        if (tomo_part == "bloch") part = afcmem::TomoPart::bloch;
        files = afcmem::run_tomography(scenario, out_dir, part, &warnings);
      }
      afcmem::finalize_manifest(opt.scenario_path, scenario.seed, files, out_dir);
      files.push_back(out_dir / "manifest.json");
    }

    report(files, warnings);
    return 0;
  } catch (const afcmem::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
