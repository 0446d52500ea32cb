#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "afcmem/manifest.hpp"
#include "afcmem/scenario.hpp"

namespace afcmem {

using PathList = std::vector<std::filesystem::path>;

// Experiment pipelines.  Each one checks that the scenario carries the
// sections it needs (ScenarioError naming what is missing), runs the
// simulation, writes its CSV tables under out_dir, and returns the files
// written.  All randomness derives from scenario.seed, so outputs are
// byte-identical across runs.

// Carved comb spectrum on the storage grid: detuning_Hz, alpha_per_cm,
// phase_rad_per_cm.
PathList export_comb(const Scenario& s, const std::filesystem::path& out_dir,
                     WarningList* warnings = nullptr);

// CW reflection sweep across the full line: detuning_Hz, reflected_power_norm.
PathList run_reflection_sweep(const Scenario& s, const std::filesystem::path& out_dir,
                              WarningList* warnings = nullptr);

// Echo efficiency vs comb center detuning across the line.
PathList run_detuning_sweep(const Scenario& s, const std::filesystem::path& out_dir,
                            WarningList* warnings = nullptr);

// One storage run: full output trace, echo windows, and summary metrics.
PathList run_store(const Scenario& s, const std::filesystem::path& out_dir,
                   WarningList* warnings = nullptr);

// Echo efficiency vs comb bandwidth with paired storage times.
PathList run_bandwidth_sweep(const Scenario& s, const std::filesystem::path& out_dir,
                             WarningList* warnings = nullptr);

// Time-bin qubit storage: direct Z discrimination, double-comb equator
// analysis, and the interferometer cross-check; window energies + fidelities.
PathList run_qubit(const Scenario& s, const std::filesystem::path& out_dir,
                   WarningList* warnings = nullptr);

// Heralded g2 vs storage time: simulated memory efficiency feeds the signal
// channel of the Monte Carlo coincidence model.
PathList run_g2(const Scenario& s, const std::filesystem::path& out_dir,
                WarningList* warnings = nullptr);

enum class TomoPart { all, states, chi, bloch };

// Qubit process tomography of the modeled memory channel: reconstructed
// density matrices + fidelities, the process matrix, and Bloch-sphere
// cross-sections.
PathList run_tomography(const Scenario& s, const std::filesystem::path& out_dir,
                        TomoPart part = TomoPart::all, WarningList* warnings = nullptr);

struct FigureRun {
  PathList files;
  RunManifest manifest;
};

// Dispatches one figure pipeline by id (2a, 2b, 2c, 3, 4a, 4b, 4c), writes
// out_dir/manifest.json, and prefixes any propagated error with
// "figure <id>: ".
FigureRun run_figure(const std::string& figure_id, const Scenario& s,
                     const std::filesystem::path& scenario_path,
                     const std::filesystem::path& out_dir, WarningList* warnings = nullptr);

// Hashes the scenario and every output file, writes out_dir/manifest.json.
RunManifest finalize_manifest(const std::filesystem::path& scenario_path, std::uint64_t seed,
                              const PathList& files, const std::filesystem::path& out_dir);

}  // namespace afcmem
