#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xorlab/instances.hpp"

namespace xorlab {

enum class EcStatus { ok, limit, unsat };

std::string to_string(EcStatus s);

struct EcOptions {
  std::uint64_t max_backtracks = 20000;
  bool count_decisions_as_erasure = true;
  /// Shuffle the branching order and first polarity with the run seed.
  /// Off by default: the search is then fully determined by the instance.
  bool randomize_order = false;
};

/// Instrumented run of the toy DPLL. Erasures are trail pops on backtracks.
struct EcRunResult {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  EcStatus status = EcStatus::unsat;
  std::uint64_t erasures = 0;
  std::uint64_t decisions = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t propagations = 0;
  /// Popped decision entries (counted in erasures iff the flag is set).
  std::uint64_t popped_decisions = 0;
  /// Popped propagated entries.
  std::uint64_t popped_implied = 0;
  std::optional<BitVector> assignment;
};

/// DPLL with unit propagation and chronological backtracking.
///
/// Branching takes the lowest unassigned variable, false first. On a
/// conflict the trail is unwound to the most recent decision whose second
/// value is untried; every popped entry is one erasure, except that popped
/// decision entries only count when `count_decisions_as_erasure` is set.
/// The run stops with `limit` once `max_backtracks` backtracks were taken.
EcRunResult dpll_ec(const CnfInstance& c, std::uint64_t seed, const EcOptions& opts);

struct EcExperimentConfig {
  std::vector<int> ns;
  int seeds = 0;
  std::uint64_t seed_base = 0;
  double gamma = 0.1;
  EcOptions solver;
};

struct EcAggregate {
  int n = 0;
  EcStatus status = EcStatus::ok;
  std::size_t count = 0;
  double mean_erasures = 0;
  double mean_decisions = 0;
  double mean_backtracks = 0;
};

struct EcExperiment {
  std::vector<EcRunResult> rows;  // sorted by (n, seed)
  std::vector<EcAggregate> aggregates;
};

/// One hidden-assignment instance per (n, seed_base + i), lifted and solved.
EcExperiment ec_experiment(const EcExperimentConfig& cfg);

std::string ec_csv(const EcExperiment& e);
std::string ec_aggregate_csv(const EcExperiment& e);

}  // namespace xorlab
