#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xorlab/ec_solver.hpp"
#include "xorlab/profile.hpp"
#include "xorlab/restrictions.hpp"
#include "xorlab/sources.hpp"

namespace xorlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything a subcommand produces, before anything touches the disk.
struct Artifacts {
  std::string command;
  std::vector<std::pair<std::string, std::string>> files;  // path relative to outdir, contents
  nlohmann::ordered_json summary;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> failures;  // assertion failures, one line each
  std::vector<std::string> warnings;
};

Artifacts run_ec(const EcExperimentConfig& cfg);
Artifacts run_spr(const SprConfig& cfg);
Artifacts run_pcg(const PcgConfig& cfg);

struct ProfileRun {
  ProfileConfig cfg;
  std::string data_dir = "results";  // relative to outdir
  std::optional<std::string> pcg_csv_text;
  std::optional<std::string> context_for_corr;
};
Artifacts run_profile(const ProfileRun& run);

Artifacts run_corr(const std::string& pcg_csv_text, const std::string& mass_csv_text,
                   const std::string& stability_csv_text, const std::string& context);
Artifacts run_restrict(const RestrictionExperimentConfig& cfg);
/// Writes instance.json and instance.cnf for one generated instance.
Artifacts run_lift(int n, double gamma, std::uint64_t seed, bool uniform_rhs);

/// Writes the files, the JSON summary (json_out, or
/// results/<command>_summary.json under outdir) and merges the seeds into
/// outdir/seeds.txt. Throws std::runtime_error naming the path on I/O errors.
void write_artifacts(const Artifacts& a, const std::filesystem::path& outdir,
                     const std::optional<std::filesystem::path>& json_out = std::nullopt);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Quick verification preset at reduced sizes. Returns the artifacts of each
/// step in order; the caller writes them.
std::vector<Artifacts> rc1_preset();
/// Paths (relative to outdir) the preset must leave behind.
std::vector<std::string> rc1_expected_files();

}  // namespace xorlab
