#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace xorlab {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);
/// Throws std::runtime_error (with the path) if the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

struct Manifest {
  std::string label;
  std::map<std::string, std::string> files;   // relative path -> digest
  std::map<std::string, std::string> errors;  // relative path -> message

  /// {"label": ..., "files": {...}} plus "errors" when nonempty.
  std::string to_json() const;
  static Manifest from_json(const std::string& text);
};

/// Hashes every regular file under each root. Paths are relative to base,
/// use forward slashes and sort lexicographically. A root may be a file.
/// Throws std::invalid_argument if a root does not exist.
Manifest make_manifest(const std::vector<std::filesystem::path>& roots, const std::filesystem::path& base,
                       const std::string& label);

struct ManifestCheck {
  std::vector<std::string> missing;
  std::vector<std::string> mismatched;
  bool ok() const { return missing.empty() && mismatched.empty(); }
};

/// Re-hashes each listed file relative to base.
ManifestCheck verify_manifest(const Manifest& m, const std::filesystem::path& base);

struct PresenceReport {
  std::vector<std::pair<std::string, bool>> entries;  // first-occurrence order, duplicates dropped
  bool all_present = true;

  /// "OK <path>" / "MISS <path>" lines, then "ALL ASSETS PRESENT: true|false".
  std::string format() const;
};

PresenceReport verify_presence(const std::vector<std::string>& required, const std::filesystem::path& base);

}  // namespace xorlab
