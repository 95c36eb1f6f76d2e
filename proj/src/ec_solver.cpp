#include "xorlab/ec_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "xorlab/csv.hpp"
#include "xorlab/rng.hpp"

namespace xorlab {

std::string to_string(EcStatus s) {
  switch (s) {
    case EcStatus::ok: return "ok";
    case EcStatus::limit: return "limit";
    case EcStatus::unsat: return "unsat";
  }
  return "?";
}

namespace {

struct Occurrence {
  int clause;
  bool positive;
};

struct TrailEntry {
  int var;
  bool decision;
  bool flipped;
};

class Dpll {
 public:
  Dpll(const CnfInstance& c, std::uint64_t seed, const EcOptions& opts)
      : cnf_(c), opts_(opts), occ_(static_cast<std::size_t>(c.n)), value_(static_cast<std::size_t>(c.n), -1),
        ntrue_(c.clauses.size(), 0), nfalse_(c.clauses.size(), 0), order_(static_cast<std::size_t>(c.n)),
        first_value_(static_cast<std::size_t>(c.n), 0) {
    for (std::size_t i = 0; i < c.clauses.size(); ++i)
      for (int lit : c.clauses[i]) {
        const int v = std::abs(lit) - 1;
        if (v < 0 || v >= c.n) throw std::invalid_argument("literal out of range");
        occ_[v].push_back({static_cast<int>(i), lit > 0});
      }
    std::iota(order_.begin(), order_.end(), 0);
    if (opts.randomize_order) {
      Rng rng(seed, 0x0DE5);
      for (std::size_t i = order_.size(); i > 1; --i) std::swap(order_[i - 1], order_[rng.below(i)]);
      for (auto& f : first_value_) f = static_cast<std::int8_t>(rng.bit());
    }
  }

  EcRunResult run() {
    EcRunResult r;
    r.n = cnf_.n;
    r.m = static_cast<int>(cnf_.clauses.size());
    for (const auto& cl : cnf_.clauses)
      if (cl.empty()) {
        r.status = EcStatus::unsat;
        return r;
      }
    if (!assign_root_units(r) || !propagate(r)) {
      r.status = EcStatus::unsat;
      return r;
    }
    for (;;) {
      const int v = pick_branch_var();
      if (v < 0) {
        r.status = EcStatus::ok;
        BitVector a(value_.size());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<std::uint8_t>(value_[i]);
        r.assignment = std::move(a);
        return r;
      }
      ++r.decisions;
      assign(v, first_value_[v], true, false);
      while (!propagate(r)) {
        if (r.backtracks >= opts_.max_backtracks) {
          r.status = EcStatus::limit;
          return r;
        }
        if (!backtrack(r)) {
          r.status = EcStatus::unsat;
          return r;
        }
      }
    }
  }

 private:
  bool lit_true(const Occurrence& o, int val) const { return o.positive == (val == 1); }

  void assign(int v, int val, bool decision, bool flipped) {
    value_[v] = static_cast<std::int8_t>(val);
    for (const auto& o : occ_[v]) {
      if (lit_true(o, val)) ++ntrue_[o.clause];
      else ++nfalse_[o.clause];
    }
    trail_.push_back({v, decision, flipped});
  }

  void unassign_top() {
    const int v = trail_.back().var;
    const int val = value_[v];
    for (const auto& o : occ_[v]) {
      if (lit_true(o, val)) --ntrue_[o.clause];
      else --nfalse_[o.clause];
    }
    value_[v] = -1;
    trail_.pop_back();
  }

  bool assign_root_units(EcRunResult& r) {
    for (const auto& cl : cnf_.clauses) {
      if (cl.size() != 1) continue;
      const int v = std::abs(cl[0]) - 1;
      const int want = cl[0] > 0 ? 1 : 0;
      if (value_[v] == -1) {
        assign(v, want, false, false);
        ++r.propagations;
      } else if (value_[v] != want) {
        return false;
      }
    }
    return true;
  }

  // Unit propagation to fixpoint over the unprocessed trail suffix.
  bool propagate(EcRunResult& r) {
    while (qhead_ < trail_.size()) {
      const int v = trail_[qhead_++].var;
      const int val = value_[v];
      for (const auto& o : occ_[v]) {
        if (lit_true(o, val)) continue;
        const int c = o.clause;
        if (ntrue_[c] > 0) continue;
        const auto size = static_cast<int>(cnf_.clauses[c].size());
        if (nfalse_[c] == size) return false;
        if (nfalse_[c] == size - 1) {
          for (int lit : cnf_.clauses[c]) {
            const int u = std::abs(lit) - 1;
            if (value_[u] == -1) {
              assign(u, lit > 0 ? 1 : 0, false, false);
              ++r.propagations;
              break;
            }
          }
        }
      }
    }
    return true;
  }

  int pick_branch_var() const {
    for (int v : order_)
      if (value_[v] == -1) return v;
    return -1;
  }

  // Chronological backtrack: unwind to the newest unflipped decision and try
  // its other value. Returns false when no such decision exists.
  bool backtrack(EcRunResult& r) {
    const auto it = std::find_if(trail_.rbegin(), trail_.rend(),
                                 [](const TrailEntry& e) { return e.decision && !e.flipped; });
    if (it == trail_.rend()) return false;
    ++r.backtracks;
    const std::size_t target = static_cast<std::size_t>(trail_.rend() - it) - 1;
    const int var = trail_[target].var;
    const int val = value_[var];
    while (trail_.size() > target) {
      if (trail_.back().decision) {
        ++r.popped_decisions;
        if (opts_.count_decisions_as_erasure) ++r.erasures;
      } else {
        ++r.popped_implied;
        ++r.erasures;
      }
      unassign_top();
    }
    qhead_ = trail_.size();
    assign(var, 1 - val, true, true);
    return true;
  }

  const CnfInstance& cnf_;
  EcOptions opts_;
  std::vector<std::vector<Occurrence>> occ_;
  std::vector<std::int8_t> value_;
  std::vector<int> ntrue_;
  std::vector<int> nfalse_;
  std::vector<int> order_;
  std::vector<std::int8_t> first_value_;
  std::vector<TrailEntry> trail_;
  std::size_t qhead_ = 0;
};

}  // namespace

EcRunResult dpll_ec(const CnfInstance& c, std::uint64_t seed, const EcOptions& opts) {
  if (opts.max_backtracks < 1) throw std::invalid_argument("max_backtracks must be >= 1");
  auto r = Dpll(c, seed, opts).run();
  r.seed = seed;
  return r;
}

EcExperiment ec_experiment(const EcExperimentConfig& cfg) {
  if (cfg.ns.empty()) throw std::invalid_argument("ec_experiment needs at least one n");
  EcExperiment e;
  auto ns = cfg.ns;
  std::sort(ns.begin(), ns.end());
  for (int n : ns) {
    for (int i = 0; i < cfg.seeds; ++i) {
      const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
      const auto x = gen_balanced_xor(n, cfg.gamma, seed);
      const auto cnf = lift_to_cnf(x);
      auto r = dpll_ec(cnf, seed, cfg.solver);
      if (r.status == EcStatus::ok && !check_assignment(x, *r.assignment))
        throw std::logic_error("solver returned a non-satisfying assignment");
      r.n = n;
      r.m = x.m();
      r.assignment.reset();
      e.rows.push_back(std::move(r));
    }
    for (auto status : {EcStatus::ok, EcStatus::limit, EcStatus::unsat}) {
      EcAggregate a;
      a.n = n;
      a.status = status;
      for (const auto& r : e.rows) {
        if (r.n != n || r.status != status) continue;
        ++a.count;
        a.mean_erasures += static_cast<double>(r.erasures);
        a.mean_decisions += static_cast<double>(r.decisions);
        a.mean_backtracks += static_cast<double>(r.backtracks);
      }
      if (a.count == 0) continue;
      const auto cnt = static_cast<double>(a.count);
      a.mean_erasures /= cnt;
      a.mean_decisions /= cnt;
      a.mean_backtracks /= cnt;
      e.aggregates.push_back(a);
    }
  }
  return e;
}

std::string ec_csv(const EcExperiment& e) {
  CsvWriter w({"n", "m", "seed", "status", "erasures", "decisions", "backtracks", "propagations"});
  for (const auto& r : e.rows)
    w.row({r.n, r.m, r.seed, to_string(r.status), r.erasures, r.decisions, r.backtracks, r.propagations});
  return w.str();
}

std::string ec_aggregate_csv(const EcExperiment& e) {
  CsvWriter w({"n", "status", "count", "mean_erasures", "mean_decisions", "mean_backtracks"});
  for (const auto& a : e.aggregates)
    w.row({a.n, to_string(a.status), a.count, a.mean_erasures, a.mean_decisions, a.mean_backtracks});
  return w.str();
}

}  // namespace xorlab
