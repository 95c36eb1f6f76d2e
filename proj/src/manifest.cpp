#include "xorlab/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace xorlab {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.generic_string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read error on " + path.generic_string());
  return sha256_hex(bytes);
}

std::string Manifest::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["files"] = nlohmann::ordered_json::object();
  for (const auto& [path, digest] : files) j["files"][path] = digest;
  if (!errors.empty()) {
    j["errors"] = nlohmann::ordered_json::object();
    for (const auto& [path, msg] : errors) j["errors"][path] = msg;
  }
  return j.dump(2) + "\n";
}

Manifest Manifest::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Manifest m;
  m.label = j.value("label", "");
  for (const auto& [path, digest] : j.at("files").items()) m.files[path] = digest.get<std::string>();
  if (j.contains("errors"))
    for (const auto& [path, msg] : j.at("errors").items()) m.errors[path] = msg.get<std::string>();
  return m;
}

Manifest make_manifest(const std::vector<fs::path>& roots, const fs::path& base, const std::string& label) {
  Manifest m;
  m.label = label;
  std::set<fs::path> paths;
  for (const auto& root : roots) {
    if (!fs::exists(root)) throw std::invalid_argument("manifest root does not exist: " + root.generic_string());
    if (fs::is_regular_file(root)) {
      paths.insert(root);
      continue;
    }
    for (const auto& entry : fs::recursive_directory_iterator(root))
      if (entry.is_regular_file()) paths.insert(entry.path());
  }
  for (const auto& p : paths) {
    const std::string rel = fs::relative(p, base).generic_string();
    try {
      m.files[rel] = sha256_file(p);
    } catch (const std::exception& e) {
      m.errors[rel] = e.what();
    }
  }
  return m;
}

ManifestCheck verify_manifest(const Manifest& m, const fs::path& base) {
  ManifestCheck check;
  for (const auto& [rel, digest] : m.files) {
    const fs::path p = base / rel;
    if (!fs::is_regular_file(p)) {
      check.missing.push_back(rel);
      continue;
    }
    std::string actual;
    try {
      actual = sha256_file(p);
    } catch (const std::exception&) {
      check.missing.push_back(rel);
      continue;
    }
    if (actual != digest) check.mismatched.push_back(rel);
  }
  return check;
}

std::string PresenceReport::format() const {
  std::ostringstream os;
  for (const auto& [path, present] : entries) os << (present ? "OK " : "MISS ") << path << "\n";
  os << "ALL ASSETS PRESENT: " << (all_present ? "true" : "false") << "\n";
  return os.str();
}

PresenceReport verify_presence(const std::vector<std::string>& required, const fs::path& base) {
  PresenceReport r;
  std::set<std::string> seen;
  for (const auto& path : required) {
    if (!seen.insert(path).second) continue;
    const bool present = fs::exists(base / path);
    r.entries.emplace_back(path, present);
    r.all_present = r.all_present && present;
  }
  return r;
}

}  // namespace xorlab
