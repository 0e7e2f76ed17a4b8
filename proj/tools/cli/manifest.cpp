#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include "json.hpp"

#include "hacc/errors.hpp"

namespace hacc::cli {

namespace {

std::string sha1_hex(std::span<const std::byte> prefix, std::span<const std::byte> content) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), prefix.data(), prefix.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw IoError("SHA-1 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace

std::string git_blob_hash(std::span<const std::byte> content) {
  const std::string header = "blob " + std::to_string(content.size());
  std::vector<std::byte> prefix(header.size() + 1);
  for (std::size_t i = 0; i < header.size(); ++i) {
    prefix[i] = static_cast<std::byte>(header[i]);
  }
  prefix.back() = std::byte{0};
  return sha1_hex(prefix, content);
}

std::string git_blob_hash(const std::string& content) {
  return git_blob_hash(std::as_bytes(std::span<const char>(content.data(), content.size())));
}

std::string git_blob_hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for hashing");
  }
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return git_blob_hash(content);
}

std::vector<ManifestEntry> hash_outputs(const std::filesystem::path& dir, const std::vector<std::string>& names) {
  std::vector<ManifestEntry> out;
  for (const auto& name : names) {
    const auto path = dir / name;
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) {
      throw IoError("cannot stat " + path.string() + ": " + ec.message());
    }
    out.push_back({name, git_blob_hash_file(path), static_cast<std::size_t>(size)});
  }
  return out;
}

std::string manifest_json(const std::string& config_echo, const std::vector<ManifestEntry>& outputs) {
  nlohmann::ordered_json j;
  j["format"] = "hacc-mini-manifest-1";
  j["config"] = config_echo;
  std::string listing;
  auto& arr = j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& e : outputs) {
    arr.push_back({{"name", e.name}, {"bytes", e.bytes}, {"hash", e.hash}});
    listing += e.name + ' ' + e.hash + '\n';
  }
  j["outputs_hash"] = git_blob_hash(listing);
  return j.dump(2) + '\n';
}

}  // namespace hacc::cli
