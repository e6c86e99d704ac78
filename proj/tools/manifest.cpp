#include "manifest.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

namespace boat::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

namespace {

// SOURCE_DATE_EPOCH pins the timestamp for reproducible manifests.
std::string timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::atoll(env));
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

} // namespace

Json RunManifest::to_json() const {
  Json outs = Json::array();
  for (const auto& p : outputs) {
    outs.push_back({{"path", p.filename().string()}, {"sha256", sha256_file(p)}});
  }
  return {{"command", command},
          {"params", params},
          {"version", kToolVersion},
          {"timestamp", timestamp()},
          {"outputs", outs}};
}

std::filesystem::path RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
  return path;
}

std::filesystem::path manifest_path(const std::filesystem::path& prefix) {
  return std::filesystem::path(prefix.string() + ".manifest.json");
}

} // namespace boat::cli
