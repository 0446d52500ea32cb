#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace afcmem {

inline constexpr const char* kToolVersion = "1.0.0";

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

// Run provenance record.  The wall clock field documents when the run
// happened and is excluded from the determinism contract: identical
// (scenario, seed, version) produce identical output files and hashes.
struct RunManifest {
  std::string scenario_path;
  std::uint64_t scenario_hash = 0;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  std::string wall_clock_utc;

  struct Output {
    std::string path;  // relative to the manifest directory
    std::uint64_t hash = 0;
  };
  std::vector<Output> outputs;
};

RunManifest make_manifest(const std::filesystem::path& scenario_path, std::uint64_t seed);

// Hashes the file and appends it, path stored relative to base_dir.
void add_output(RunManifest& manifest, const std::filesystem::path& file,
                const std::filesystem::path& base_dir);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& json_path);

}  // namespace afcmem
