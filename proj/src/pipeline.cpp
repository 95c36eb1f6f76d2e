#include "xorlab/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

#include "xorlab/instances.hpp"

namespace xorlab {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<std::uint64_t> seed_list(std::uint64_t base, int count) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(base + static_cast<std::uint64_t>(i));
  return out;
}

ordered_json header(const std::string& command) {
  ordered_json j;
  j["tool"] = "xorlab";
  j["version"] = kToolVersion;
  j["command"] = command;
  return j;
}

ordered_json label_json(const std::vector<LabelBlockParams>& grid) {
  ordered_json a = ordered_json::array();
  for (const auto& p : grid)
    a.push_back({{"label_p", p.label_p}, {"p0", p.p0}, {"p1", p.p1}, {"length_mult", p.length_mult}});
  return a;
}

ordered_json side_json(const std::vector<SideParams>& grid) {
  ordered_json a = ordered_json::array();
  for (const auto& p : grid)
    a.push_back({{"epsilon", p.epsilon}, {"p_run", p.p_run}, {"max_run", p.max_run}, {"length_mult", p.length_mult}});
  return a;
}

}  // namespace

Artifacts run_ec(const EcExperimentConfig& cfg) {
  Artifacts a;
  a.command = "ec_counter";
  const EcExperiment e = ec_experiment(cfg);
  a.files.emplace_back("results/ec_counter.csv", ec_csv(e));
  a.files.emplace_back("results/ec_counter_aggregate.csv", ec_aggregate_csv(e));
  a.seeds = seed_list(cfg.seed_base, cfg.seeds);
  a.summary = header(a.command);
  a.summary["config"] = {{"n", cfg.ns},
                         {"seeds", cfg.seeds},
                         {"seed_base", cfg.seed_base},
                         {"gamma", cfg.gamma},
                         {"max_backtracks", cfg.solver.max_backtracks},
                         {"count_decisions_as_erasure", cfg.solver.count_decisions_as_erasure},
                         {"randomize_order", cfg.solver.randomize_order}};
  ordered_json agg = ordered_json::array();
  for (const auto& g : e.aggregates)
    agg.push_back({{"n", g.n},
                   {"status", to_string(g.status)},
                   {"count", g.count},
                   {"mean_erasures", g.mean_erasures},
                   {"mean_decisions", g.mean_decisions},
                   {"mean_backtracks", g.mean_backtracks}});
  a.summary["rows"] = e.rows.size();
  a.summary["aggregates"] = agg;
  return a;
}

Artifacts run_spr(const SprConfig& cfg) {
  Artifacts a;
  a.command = "spr_trace";
  const SprExperiment e = spr_experiment(cfg);
  a.files.emplace_back("results/spr_trace.csv", spr_csv(e));
  a.files.emplace_back("results/spr_trace_aggregate.csv", spr_aggregate_csv(e));
  a.seeds = seed_list(cfg.seed_base, cfg.seeds);
  a.summary = header(a.command);
  a.summary["config"] = {{"n", cfg.ns},         {"seeds", cfg.seeds},   {"seed_base", cfg.seed_base},
                         {"kmax", cfg.kmax},    {"eps", cfg.eps},       {"p_hist", cfg.p_hist},
                         {"max_lag", cfg.max_lag}, {"length_mult", cfg.length_mult}};
  ordered_json agg = ordered_json::array();
  for (const auto& g : e.aggregates)
    agg.push_back({{"n", g.n}, {"k", g.k}, {"mean_logloss", g.mean}, {"sem_logloss", g.sem}, {"count", g.count}});
  a.summary["rows"] = e.rows.size();
  a.summary["aggregates"] = agg;
  return a;
}

Artifacts run_pcg(const PcgConfig& cfg) {
  Artifacts a;
  a.command = "pcg_estimate";
  const PcgExperiment e = pcg_experiment(cfg);
  const bool label = cfg.mode == ContextMode::label_block;
  const std::size_t combos = label ? cfg.label_grid.size() : cfg.side_grid.size();
  a.files.emplace_back("results/pcg_estimate.csv", pcg_csv(e));
  a.files.emplace_back("results/pcg_topk.csv", pcg_topk_csv(e));
  if (combos == 1)
    a.files.emplace_back(cfg.lz ? "results/lz_codec_vs_n.csv" : "results/kgram_scale_vs_n.csv", pcg_scale_csv(e));
  if (label)
    a.files.emplace_back("results/label_conditional_entropy.csv", entropy_csv(e, "label_conditional_entropy"));
  else
    a.files.emplace_back("results/side_residual_entropy.csv", entropy_csv(e, "side_residual_entropy"));
  a.seeds = seed_list(cfg.seed_base, cfg.seeds);

  a.summary = header(a.command);
  ordered_json c = {{"n", cfg.ns},
                    {"seeds", cfg.seeds},
                    {"seed_base", cfg.seed_base},
                    {"context_mode", to_string(cfg.mode)},
                    {"model", cfg.lz ? "lz" : "kgram"}};
  if (cfg.lz)
    c["lz_varindex"] = cfg.lz_cfg.pointer_cost == PointerCost::vlc;
  else
    c["k"] = cfg.ks;
  if (label)
    c["label_grid"] = label_json(cfg.label_grid);
  else
    c["side_grid"] = side_json(cfg.side_grid);
  c["warn_k_ratio"] = cfg.warn_k_ratio;
  c["auto_clamp_k"] = cfg.auto_clamp_k;
  c["clamp_nonneg_pcg"] = cfg.clamp_nonneg;
  c["assert_nonneg_pcg"] = cfg.assert_nonneg_tol ? ordered_json(*cfg.assert_nonneg_tol) : ordered_json(nullptr);
  a.summary["config"] = c;
  ordered_json agg = ordered_json::array();
  for (const auto& t : e.topk)
    agg.push_back({{"params", t.params},
                   {"n", t.n},
                   {"mean_pcg_topk", t.mean},
                   {"std_pcg_topk", t.sd},
                   {"sem_pcg_topk", t.sem},
                   {"count", t.count}});
  a.summary["rows"] = e.rows.size();
  a.summary["aggregates"] = agg;
  a.summary["thin_context_warnings"] = e.thin_context_warnings;
  a.summary["negative_rows"] = e.assert_failures.size();

  if (e.thin_context_warnings > 0)
    a.warnings.push_back(std::to_string(e.thin_context_warnings) + " row(s) with L/2^k below --warn-k-ratio " +
                         format_number(cfg.warn_k_ratio));
  for (std::size_t idx : e.assert_failures) {
    const PcgRow& r = e.rows[idx];
    a.failures.push_back("pcg_bits=" + format_number(r.result.pcg) + " < -" + format_number(*cfg.assert_nonneg_tol) +
                         " at n=" + std::to_string(r.n) + " seed=" + std::to_string(r.seed) + " k=" +
                         std::to_string(r.k) + " params=" + r.params);
  }
  return a;
}

Artifacts run_profile(const ProfileRun& run) {
  Artifacts a;
  a.command = "profile_multimod";
  const auto& cfg = run.cfg;
  const auto blocks = profile_experiment(cfg);
  const std::string dir = run.data_dir.empty() ? "" : run.data_dir + "/";
  if (blocks.size() == 1) {
    a.files.emplace_back(dir + "mass_by_qk.csv", mass_csv(blocks[0]));
    a.files.emplace_back(dir + "stability_by_rho.csv", stability_csv(blocks[0]));
  } else {
    CsvWriter index({"block", "params"});
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      index.row({b, blocks[b].params});
      a.files.emplace_back(dir + "mass_by_qk.p" + std::to_string(b) + ".csv", mass_csv(blocks[b]));
      a.files.emplace_back(dir + "stability_by_rho.p" + std::to_string(b) + ".csv", stability_csv(blocks[b]));
    }
    a.files.emplace_back(dir + "profile_blocks.csv", index.str());
  }
  a.seeds = seed_list(cfg.seed_base, cfg.seeds);
  a.summary = header(a.command);
  ordered_json c = {{"n", cfg.ns},
                    {"seeds", cfg.seeds},
                    {"seed_base", cfg.seed_base},
                    {"context_mode", to_string(cfg.mode)},
                    {"q", cfg.qs},
                    {"kmax_values", cfg.kmax_values},
                    {"rho", cfg.rhos},
                    {"window", cfg.window}};
  if (cfg.mode == ContextMode::label_block)
    c["label_grid"] = label_json(cfg.label_grid);
  else
    c["side_grid"] = side_json(cfg.side_grid);
  a.summary["config"] = c;

  // Mean cumulative mass at the cap and mean stability, per block and n.
  ordered_json agg = ordered_json::array();
  for (const auto& b : blocks) {
    std::map<std::tuple<int, int, int>, std::pair<double, std::size_t>> mass;
    for (const auto& r : b.mass)
      if (r.k == r.degree_cap) {
        auto& s = mass[{r.n, r.q, r.degree_cap}];
        s.first += r.value;
        ++s.second;
      }
    std::map<std::pair<int, double>, std::pair<double, std::size_t>> stab;
    for (const auto& r : b.stability) {
      auto& s = stab[{r.n, r.rho}];
      s.first += r.value;
      ++s.second;
    }
    for (const auto& [key, s] : mass)
      agg.push_back({{"params", b.params},
                     {"metric", "cumulative_mass"},
                     {"n", std::get<0>(key)},
                     {"q", std::get<1>(key)},
                     {"k", std::get<2>(key)},
                     {"mean", s.first / static_cast<double>(s.second)}});
    for (const auto& [key, s] : stab)
      agg.push_back({{"params", b.params},
                     {"metric", "stability"},
                     {"n", key.first},
                     {"rho", key.second},
                     {"mean", s.first / static_cast<double>(s.second)}});
  }
  a.summary["aggregates"] = agg;

  if (run.pcg_csv_text) {
    if (blocks.size() != 1) throw std::invalid_argument("correlation needs a single profile parameter set");
    const std::string context = run.context_for_corr.value_or(to_string(cfg.mode));
    const auto rows = corr_with_pcg(parse_csv(*run.pcg_csv_text), parse_csv(mass_csv(blocks[0])),
                                    parse_csv(stability_csv(blocks[0])), context);
    a.files.emplace_back(dir + "corr_with_pcg.csv", corr_csv(rows));
    ordered_json corr = ordered_json::array();
    for (const auto& r : rows) corr.push_back({{"metric", r.metric}, {"param", r.param}, {"r", r.r}, {"count", r.count}});
    a.summary["correlation"] = corr;
  }
  return a;
}

Artifacts run_corr(const std::string& pcg_csv_text, const std::string& mass_csv_text,
                   const std::string& stability_csv_text, const std::string& context) {
  Artifacts a;
  a.command = "corr_with_pcg";
  const auto rows = corr_with_pcg(parse_csv(pcg_csv_text), parse_csv(mass_csv_text), parse_csv(stability_csv_text), context);
  a.files.emplace_back("results/corr_with_pcg.csv", corr_csv(rows));
  a.summary = header(a.command);
  a.summary["config"] = {{"context", context}};
  ordered_json corr = ordered_json::array();
  for (const auto& r : rows) corr.push_back({{"metric", r.metric}, {"param", r.param}, {"r", r.r}, {"count", r.count}});
  a.summary["aggregates"] = corr;
  return a;
}

Artifacts run_restrict(const RestrictionExperimentConfig& cfg) {
  Artifacts a;
  a.command = "restriction_stats";
  const auto rows = restriction_experiment(cfg);
  a.files.emplace_back("results/restriction_stats.csv", restriction_csv(rows));
  a.seeds = seed_list(cfg.seed_base, cfg.seeds);
  a.summary = header(a.command);
  a.summary["config"] = {{"n", cfg.ns},         {"seeds", cfg.seeds}, {"seed_base", cfg.seed_base},
                         {"gamma", cfg.gamma},   {"d", cfg.d},         {"alpha", cfg.alpha},
                         {"max_rows", cfg.max_rows}};
  std::map<int, std::tuple<double, double, std::size_t>> by_n;
  for (const auto& r : rows) {
    auto& [alive, unfixed, count] = by_n[r.n];
    alive += r.alive_vars;
    unfixed += r.unfixed_clauses;
    ++count;
  }
  ordered_json agg = ordered_json::array();
  for (const auto& [n, v] : by_n) {
    const auto& [alive, unfixed, count] = v;
    agg.push_back({{"n", n},
                   {"mean_alive_vars", alive / static_cast<double>(count)},
                   {"mean_unfixed_clauses", unfixed / static_cast<double>(count)},
                   {"count", count}});
  }
  a.summary["rows"] = rows.size();
  a.summary["aggregates"] = agg;
  return a;
}

Artifacts run_lift(int n, double gamma, std::uint64_t seed, bool uniform_rhs) {
  Artifacts a;
  a.command = "lift";
  const XorInstance x = uniform_rhs ? gen_uniform_rhs_xor(n, gamma, seed) : gen_balanced_xor(n, gamma, seed);
  const CnfInstance c = lift_to_cnf(x);
  std::ostringstream cnf;
  write_dimacs(cnf, c);
  a.files.emplace_back("results/instance.json", to_json(x));
  a.files.emplace_back("results/instance.cnf", cnf.str());
  a.seeds = {seed};
  a.summary = header(a.command);
  a.summary["config"] = {{"n", n}, {"gamma", gamma}, {"seed", seed}, {"uniform_rhs", uniform_rhs}};
  a.summary["aggregates"] = {{"m", x.m()}, {"cnf_clauses", c.clauses.size()}};
  return a;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.generic_string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create " + path.parent_path().generic_string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.generic_string());
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error("write failed on " + path.generic_string());
}

void write_artifacts(const Artifacts& a, const fs::path& outdir, const std::optional<fs::path>& json_out) {
  for (const auto& [rel, contents] : a.files) write_file(outdir / rel, contents);
  write_file(json_out ? *json_out : outdir / "results" / (a.command + "_summary.json"), a.summary.dump(2) + "\n");

  std::set<std::uint64_t> seeds(a.seeds.begin(), a.seeds.end());
  const fs::path seeds_path = outdir / "seeds.txt";
  if (fs::exists(seeds_path)) {
    std::istringstream in(read_file(seeds_path));
    std::uint64_t s;
    while (in >> s) seeds.insert(s);
  }
  std::string text;
  for (std::uint64_t s : seeds) text += std::to_string(s) + "\n";
  write_file(seeds_path, text);
}

std::vector<Artifacts> rc1_preset() {
  std::vector<Artifacts> out;

  EcExperimentConfig ec;
  ec.ns = {64, 96};
  ec.seeds = 5;
  ec.gamma = 0.1;
  ec.solver.max_backtracks = 10000;
  out.push_back(run_ec(ec));

  SprConfig spr;
  spr.ns = {64};
  spr.seeds = 5;
  spr.kmax = 6;
  out.push_back(run_spr(spr));

  PcgConfig pcg;
  pcg.ns = {64};
  pcg.seeds = 8;
  pcg.mode = ContextMode::label_block;
  pcg.ks = {0, 2, 4};
  pcg.label_grid = {LabelBlockParams{0.03, 0.35, 0.65, 64}};
  pcg.warn_k_ratio = 16;
  pcg.auto_clamp_k = true;
  pcg.assert_nonneg_tol = 0.0;
  out.push_back(run_pcg(pcg));

  ProfileRun prof;
  prof.cfg.ns = {96};
  prof.cfg.seeds = 5;
  prof.cfg.mode = ContextMode::label_block;
  prof.cfg.label_grid = {LabelBlockParams{0.03, 0.35, 0.65, 32}};
  prof.cfg.qs = {2, 3};
  prof.cfg.kmax_values = {6};
  prof.cfg.rhos = {0.1, 0.2};
  prof.data_dir = "";
  out.push_back(run_profile(prof));
  return out;
}

std::vector<std::string> rc1_expected_files() {
  return {"results/ec_counter.csv", "results/spr_trace.csv", "results/pcg_estimate.csv", "mass_by_qk.csv",
          "stability_by_rho.csv",   "seeds.txt"};
}

}  // namespace xorlab
