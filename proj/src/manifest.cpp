#include "afcmem/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "afcmem/spectral_medium.hpp"

namespace afcmem {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file for hashing: " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ull;
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

RunManifest make_manifest(const std::filesystem::path& scenario_path, std::uint64_t seed) {
  RunManifest manifest;
  manifest.scenario_path = scenario_path.string();
  manifest.scenario_hash = fnv1a64_file(scenario_path);
  manifest.seed = seed;
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32] = {};
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  manifest.wall_clock_utc = stamp;
  return manifest;
}

void add_output(RunManifest& manifest, const std::filesystem::path& file,
                const std::filesystem::path& base_dir) {
  RunManifest::Output out;
  out.path = std::filesystem::relative(file, base_dir).generic_string();
  out.hash = fnv1a64_file(file);
  manifest.outputs.push_back(std::move(out));
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& json_path) {
  nlohmann::json doc;
  doc["scenario_path"] = manifest.scenario_path;
  doc["scenario_hash_fnv1a64"] = manifest.scenario_hash;
  doc["tool_version"] = manifest.tool_version;
  doc["seed"] = manifest.seed;
  doc["wall_clock_utc"] = manifest.wall_clock_utc;
  doc["outputs"] = nlohmann::json::array();
  for (const auto& out : manifest.outputs)
    doc["outputs"].push_back({{"path", out.path}, {"hash_fnv1a64", out.hash}});
  std::filesystem::create_directories(json_path.parent_path());
  std::ofstream file(json_path);
  if (!file) throw ConfigError("cannot write manifest: " + json_path.string());
  file << doc.dump(2) << "\n";
}

}  // namespace afcmem
