#pragma once

// Run manifests: a sidecar <prefix>.manifest.json recording the command, its
// parameters, tool version, time of the run and SHA-256 digests of every
// output file.

#include <filesystem>
#include <string>
#include <vector>

#include "boat/serialize.hpp"

namespace boat::cli {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
  std::string command;
  Json params = Json::object();
  std::vector<std::filesystem::path> outputs;

  /// Serialised manifest; digests are taken from the files as they are now.
  Json to_json() const;
  /// Writes the manifest next to the outputs and returns its path.
  std::filesystem::path write(const std::filesystem::path& path) const;
};

/// "<prefix>.manifest.json"
std::filesystem::path manifest_path(const std::filesystem::path& prefix);

} // namespace boat::cli
