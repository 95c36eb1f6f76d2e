#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xorlab/manifest.hpp"
#include "xorlab/pipeline.hpp"

using namespace xorlab;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string outdir = "artifacts";
  std::string json_out;
  std::uint64_t seed_base = 0;
  int seeds = 0;
  std::vector<int> ns;
};

void add_common(CLI::App* app, Common& c, bool seeds = true) {
  app->add_option("--outdir", c.outdir, "Output directory")->capture_default_str();
  app->add_option("--json-out", c.json_out, "Summary JSON path (default <outdir>/results/<name>_summary.json)");
  if (!seeds) return;
  app->add_option("--n", c.ns, "Problem sizes")->required();
  app->add_option("--seeds", c.seeds, "Seeds per size")->required();
  app->add_option("--seed-base", c.seed_base, "Row seed = seed_base + index")->capture_default_str();
}

struct StreamFlags {
  std::string context_mode = "label-block";
  int length_mult = 64;
  std::vector<double> label_p, p0, p1;
  std::vector<double> epsilon, p_run;
  int max_run = 128;
  bool strong = false;
};

void add_stream_flags(CLI::App* app, StreamFlags& f) {
  app->add_option("--context-mode", f.context_mode, "label-block or side")
      ->check(CLI::IsMember({"label-block", "side"}))
      ->capture_default_str();
  app->add_option("--length-mult", f.length_mult, "Stream length = length_mult * n")->capture_default_str();
  app->add_option("--label-p", f.label_p, "Label flip rate (grid)");
  app->add_option("--p0", f.p0, "Bit probability under label 0 (paired with --p1)");
  app->add_option("--p1", f.p1, "Bit probability under label 1 (paired with --p0)");
  app->add_option("--epsilon", f.epsilon, "Side residual noise (grid)");
  app->add_option("--p-run", f.p_run, "Side run switch rate (grid)");
  app->add_option("--max-run", f.max_run, "Side run cap")->capture_default_str();
  app->add_flag("--auto-strong-signal", f.strong, "Fill unset label parameters with 0.03 / 0.35 / 0.65");
}

std::vector<LabelBlockParams> label_grid(const StreamFlags& f) {
  const LabelBlockParams strong{};
  std::vector<double> lp = f.label_p.empty() ? std::vector<double>{strong.label_p} : f.label_p;
  std::vector<double> p0 = f.p0.empty() ? std::vector<double>{strong.p0} : f.p0;
  std::vector<double> p1 = f.p1.empty() ? std::vector<double>{strong.p1} : f.p1;
  if (p0.size() != p1.size()) throw CLI::ValidationError("--p0/--p1", "lists must have equal length");
  std::vector<LabelBlockParams> grid;
  for (double l : lp)
    for (std::size_t i = 0; i < p0.size(); ++i) grid.push_back({l, p0[i], p1[i], f.length_mult});
  return grid;
}

std::vector<SideParams> side_grid(const StreamFlags& f) {
  const SideParams defaults{};
  std::vector<double> eps = f.epsilon.empty() ? std::vector<double>{defaults.epsilon} : f.epsilon;
  std::vector<double> pr = f.p_run.empty() ? std::vector<double>{defaults.p_run} : f.p_run;
  std::vector<SideParams> grid;
  for (double e : eps)
    for (double p : pr) grid.push_back({e, p, f.max_run, f.length_mult});
  return grid;
}

int finish(const Artifacts& a, const Common& c) {
  write_artifacts(a, c.outdir, c.json_out.empty() ? std::nullopt : std::optional<fs::path>(c.json_out));
  for (const auto& w : a.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& [rel, contents] : a.files) std::printf("wrote %s\n", (fs::path(c.outdir) / rel).generic_string().c_str());
  if (!a.failures.empty()) {
    std::fprintf(stderr, "assertion failed on %zu row(s):\n", a.failures.size());
    for (const auto& f : a.failures) std::fprintf(stderr, "  %s\n", f.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xorlab: balanced 3XOR lifts, erasure-counting DPLL and compression-gap experiments"};
  app.require_subcommand(1);

  // ec
  Common ec_c;
  EcExperimentConfig ec_cfg;
  int count_decisions = 1;
  auto* ec = app.add_subcommand("ec", "Erasure-counting DPLL on lifted hidden-assignment instances");
  add_common(ec, ec_c);
  ec->add_option("--gamma", ec_cfg.gamma, "Window ratio")->capture_default_str();
  ec->add_option("--max-backtracks", ec_cfg.solver.max_backtracks, "Backtrack cap")->capture_default_str();
  ec->add_option("--count-decisions-as-erasure", count_decisions, "1 counts popped decisions")->capture_default_str();
  ec->add_flag("--randomize-order", ec_cfg.solver.randomize_order, "Seeded variable order");

  // spr
  Common spr_c;
  SprConfig spr_cfg;
  bool simple_mode = false;
  auto* spr = app.add_subcommand("spr", "k-gram log-loss on parity histories");
  add_common(spr, spr_c);
  spr->add_option("--kmax", spr_cfg.kmax, "Largest k")->capture_default_str();
  spr->add_option("--eps", spr_cfg.eps, "Flip noise")->capture_default_str();
  spr->add_option("--p-hist", spr_cfg.p_hist, "Lag-set refresh rate")->capture_default_str();
  spr->add_option("--max-lag", spr_cfg.max_lag, "Memory depth")->capture_default_str();
  spr->add_option("--length-mult", spr_cfg.length_mult, "Stream length = length_mult * n")->capture_default_str();
  spr->add_flag("--simple-mode", simple_mode, "Accepted; the history generator always runs in simple mode");

  // pcg
  Common pcg_c;
  PcgConfig pcg_cfg;
  StreamFlags pcg_f;
  std::string model = "kgram";
  bool lz_varindex = false, plot_all_k = false;
  std::optional<double> assert_tol;
  auto* pcgc = app.add_subcommand("pcg", "Compression gap MDL - CMDL");
  add_common(pcgc, pcg_c);
  add_stream_flags(pcgc, pcg_f);
  pcgc->add_option("--model", model, "kgram or lz")->check(CLI::IsMember({"kgram", "lz"}))->capture_default_str();
  pcgc->add_option("--k", pcg_cfg.ks, "k-gram orders")->capture_default_str();
  pcgc->add_flag("--lz-varindex", lz_varindex, "Elias-gamma pointer cost for LZ78");
  pcgc->add_option("--warn-k-ratio", pcg_cfg.warn_k_ratio, "Warn when L/2^k is below this")->capture_default_str();
  pcgc->add_flag("--auto-clamp-k", pcg_cfg.auto_clamp_k, "Lower k until L/2^k meets --warn-k-ratio");
  pcgc->add_flag("--clamp-nonneg-pcg", pcg_cfg.clamp_nonneg, "Clamp per-row PCG at 0");
  pcgc->add_option("--assert-nonneg-pcg", assert_tol, "Fail if any row has PCG < -TOL");
  pcgc->add_flag("--plot-all-k", plot_all_k, "Accepted for compatibility; plotting is separate");

  // profile
  Common prof_c;
  ProfileRun prof_run;
  StreamFlags prof_f;
  prof_f.length_mult = 64;
  std::string pcg_csv_path, context_for_corr, out_data_dir;
  auto* prof = app.add_subcommand("profile", "Mod-q Fourier mass and noise stability of generated streams");
  add_common(prof, prof_c);
  add_stream_flags(prof, prof_f);
  prof->add_option("--q", prof_run.cfg.qs, "Moduli")->capture_default_str();
  prof->add_option("--kmax-values", prof_run.cfg.kmax_values, "Degree caps")->capture_default_str();
  prof->add_option("--rho", prof_run.cfg.rhos, "Stability correlations")->capture_default_str();
  prof->add_option("--window", prof_run.cfg.window, "Window width in bits")->capture_default_str();
  prof->add_option("--pcg-csv", pcg_csv_path, "pcg_estimate.csv to correlate against");
  prof->add_option("--context-for-corr", context_for_corr, "Context used for the join");
  prof->add_option("--out-data-dir", out_data_dir, "CSV directory (default <outdir>/results)");

  // corr
  Common corr_c;
  std::string corr_pcg, corr_mass, corr_stab, corr_context = "label-block";
  auto* corr = app.add_subcommand("corr", "Pearson r between per-seed top-k PCG and profile metrics");
  add_common(corr, corr_c, false);
  corr->add_option("--pcg-csv", corr_pcg, "pcg_estimate.csv")->required();
  corr->add_option("--mass-csv", corr_mass, "mass_by_qk.csv")->required();
  corr->add_option("--stability-csv", corr_stab, "stability_by_rho.csv")->required();
  corr->add_option("--context", corr_context, "Context to join on")->capture_default_str();

  // lift
  Common lift_c;
  int lift_n = 64;
  double lift_gamma = 0.1;
  std::uint64_t lift_seed = 0;
  bool uniform_rhs = false;
  auto* lift = app.add_subcommand("lift", "Generate one 3XOR instance and its 3SAT lift");
  add_common(lift, lift_c, false);
  lift->add_option("--n", lift_n, "Variables")->capture_default_str();
  lift->add_option("--gamma", lift_gamma, "Window ratio")->capture_default_str();
  lift->add_option("--seed", lift_seed, "Seed")->capture_default_str();
  lift->add_flag("--uniform-rhs", uniform_rhs, "Uniform right-hand side, no hidden assignment");

  // restrict
  Common res_c;
  RestrictionExperimentConfig res_cfg;
  auto* res = app.add_subcommand("restrict", "Restriction-path statistics on uniform-RHS instances");
  add_common(res, res_c);
  res->add_option("--gamma", res_cfg.gamma, "Window ratio")->capture_default_str();
  res->add_option("--d", res_cfg.d, "Rounds")->capture_default_str();
  res->add_option("--alpha", res_cfg.alpha, "Path exponent")->capture_default_str();
  res->add_option("--max-rows", res_cfg.max_rows, "Kernel search bound")->capture_default_str();

  // manifest
  std::vector<std::string> roots;
  std::string base = ".", manifest_out, label = "artifacts";
  auto* man = app.add_subcommand("manifest", "Write a SHA-256 manifest");
  man->add_option("--root", roots, "Files or directories to hash")->required();
  man->add_option("--base", base, "Paths are recorded relative to this directory")->capture_default_str();
  man->add_option("--out", manifest_out, "Manifest JSON path")->required();
  man->add_option("--label", label, "Manifest label")->capture_default_str();

  std::string verify_path, verify_base = ".";
  auto* ver = app.add_subcommand("verify-manifest", "Re-hash files listed in a manifest");
  ver->add_option("--manifest", verify_path, "Manifest JSON")->required();
  ver->add_option("--base", verify_base, "Base directory")->capture_default_str();

  std::vector<std::string> required;
  std::string presence_base = ".", presence_list;
  auto* pres = app.add_subcommand("presence", "Presence-only check of expected assets");
  pres->add_option("paths", required, "Paths to check");
  pres->add_option("--list", presence_list, "File with one path per line");
  pres->add_option("--base", presence_base, "Base directory")->capture_default_str();

  std::string rc1_outdir = "artifacts_smoke/rc1";
  auto* rc1 = app.add_subcommand("rc1", "Quick verification preset");
  rc1->add_option("--outdir", rc1_outdir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ec->parsed()) {
      ec_cfg.ns = ec_c.ns;
      ec_cfg.seeds = ec_c.seeds;
      ec_cfg.seed_base = ec_c.seed_base;
      ec_cfg.solver.count_decisions_as_erasure = count_decisions != 0;
      return finish(run_ec(ec_cfg), ec_c);
    }
    if (spr->parsed()) {
      spr_cfg.ns = spr_c.ns;
      spr_cfg.seeds = spr_c.seeds;
      spr_cfg.seed_base = spr_c.seed_base;
      return finish(run_spr(spr_cfg), spr_c);
    }
    if (pcgc->parsed()) {
      pcg_cfg.ns = pcg_c.ns;
      pcg_cfg.seeds = pcg_c.seeds;
      pcg_cfg.seed_base = pcg_c.seed_base;
      pcg_cfg.mode = context_mode_from_string(pcg_f.context_mode);
      pcg_cfg.lz = model == "lz";
      pcg_cfg.lz_cfg.pointer_cost = lz_varindex ? PointerCost::vlc : PointerCost::uniform;
      pcg_cfg.assert_nonneg_tol = assert_tol;
      pcg_cfg.label_grid = label_grid(pcg_f);
      pcg_cfg.side_grid = side_grid(pcg_f);
      return finish(run_pcg(pcg_cfg), pcg_c);
    }
    if (prof->parsed()) {
      auto& cfg = prof_run.cfg;
      cfg.ns = prof_c.ns;
      cfg.seeds = prof_c.seeds;
      cfg.seed_base = prof_c.seed_base;
      cfg.mode = context_mode_from_string(prof_f.context_mode);
      cfg.label_grid = label_grid(prof_f);
      cfg.side_grid = side_grid(prof_f);
      if (!pcg_csv_path.empty()) prof_run.pcg_csv_text = read_file(pcg_csv_path);
      if (!context_for_corr.empty()) prof_run.context_for_corr = context_for_corr;
      if (!out_data_dir.empty()) {
        // Data files go to an explicit directory; the summary stays under outdir.
        prof_run.data_dir = fs::relative(fs::absolute(out_data_dir), fs::absolute(prof_c.outdir)).generic_string();
        if (prof_run.data_dir == ".") prof_run.data_dir.clear();
      }
      return finish(run_profile(prof_run), prof_c);
    }
    if (corr->parsed())
      return finish(run_corr(read_file(corr_pcg), read_file(corr_mass), read_file(corr_stab), corr_context), corr_c);
    if (lift->parsed()) return finish(run_lift(lift_n, lift_gamma, lift_seed, uniform_rhs), lift_c);
    if (res->parsed()) {
      res_cfg.ns = res_c.ns;
      res_cfg.seeds = res_c.seeds;
      res_cfg.seed_base = res_c.seed_base;
      return finish(run_restrict(res_cfg), res_c);
    }
    if (man->parsed()) {
      std::vector<fs::path> paths(roots.begin(), roots.end());
      const Manifest m = make_manifest(paths, base, label);
      write_file(manifest_out, m.to_json());
      std::printf("%zu file(s) hashed into %s\n", m.files.size(), manifest_out.c_str());
      for (const auto& [path, msg] : m.errors) std::fprintf(stderr, "error: %s: %s\n", path.c_str(), msg.c_str());
      return m.errors.empty() ? 0 : 1;
    }
    if (ver->parsed()) {
      const Manifest m = Manifest::from_json(read_file(verify_path));
      const ManifestCheck check = verify_manifest(m, verify_base);
      for (const auto& p : check.missing) std::printf("MISSING %s\n", p.c_str());
      for (const auto& p : check.mismatched) std::printf("MISMATCH %s\n", p.c_str());
      std::printf("%s: %zu file(s), %zu missing, %zu mismatched\n", check.ok() ? "VERIFIED" : "FAILED", m.files.size(),
                  check.missing.size(), check.mismatched.size());
      return check.ok() ? 0 : 1;
    }
    if (pres->parsed()) {
      std::vector<std::string> paths = required;
      if (!presence_list.empty()) {
        std::istringstream in(read_file(presence_list));
        for (std::string line; std::getline(in, line);)
          if (!line.empty()) paths.push_back(line);
      }
      const PresenceReport r = verify_presence(paths, presence_base);
      std::fputs(r.format().c_str(), stdout);
      return r.all_present ? 0 : 1;
    }
    if (rc1->parsed()) {
      int status = 0;
      Common c;
      c.outdir = rc1_outdir;
      for (const auto& a : rc1_preset()) status = std::max(status, finish(a, c));
      const PresenceReport r = verify_presence(rc1_expected_files(), rc1_outdir);
      std::fputs(r.format().c_str(), stdout);
      return r.all_present ? status : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
