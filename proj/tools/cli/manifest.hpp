#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace hacc::cli {

// Git blob id: SHA-1 of "blob <size>\0" followed by the content, as 40 hex digits.
std::string git_blob_hash(std::span<const std::byte> content);
std::string git_blob_hash(const std::string& content);
std::string git_blob_hash_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string name;  // path relative to the output directory
  std::string hash;
  std::size_t bytes = 0;
};

// JSON manifest: config echo, hashed outputs in the given order, and a
// combined hash over the "name hash" lines. Contains no timestamps, so two
// identical runs produce identical manifests.
std::string manifest_json(const std::string& config_echo, const std::vector<ManifestEntry>& outputs);

// Hashes the named files under dir.
std::vector<ManifestEntry> hash_outputs(const std::filesystem::path& dir, const std::vector<std::string>& names);

}  // namespace hacc::cli
