#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xorlab/instances.hpp"

namespace xorlab {

enum class VarStatus : std::uint8_t { alive, fixed0, fixed1 };

/// Outcome of a d-round product restriction. Fixed values are drawn at
/// sampling time, so a Restriction is a plain value.
struct Restriction {
  std::vector<VarStatus> status;
  int d = 1;
  double p = 1.0;  // per-round survival rate
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(status.size()); }
  bool alive(int v) const { return status[v] == VarStatus::alive; }
  std::uint8_t fixed_value(int v) const { return status[v] == VarStatus::fixed1 ? 1 : 0; }
  int alive_count() const;
  /// Composed survival probability p^d.
  double survival() const;
};

/// Per-round rate of the restriction path, p = m^(-alpha/d).
double path_rate(int m, int d, double alpha);

/// Each variable survives each of d rounds independently with rate
/// p = m^(-alpha/d); a variable that dies in any round is fixed to an
/// unbiased bit.
Restriction sample_restriction(int n, int d, double alpha, int m, std::uint64_t seed);

/// d rounds at an explicit per-round rate. d = 1 gives a single product
/// restriction with survival `rate`.
Restriction sample_restriction_rate(int n, int d, double rate, std::uint64_t seed);

struct ReducedClause {
  std::vector<int> alive_vars;
  std::uint8_t rhs = 0;  // b xor the fixed variables' values
};

struct RestrictedXor {
  XorInstance base;
  Restriction rho;
  std::vector<int> unfixed_clauses;      // C, ascending clause indices
  std::vector<int> alive_vars;           // ascending
  std::vector<ReducedClause> reduced;    // parallel to unfixed_clauses

  /// Value of x_i xor x_j xor x_k xor b for a clause outside C (0 = satisfied).
  std::uint8_t fixed_clause_residual(int clause) const;
};

RestrictedXor apply_restriction(const XorInstance& x, const Restriction& rho);

/// Pr[a fixed set of t_star variables keeps at least one alive variable]
/// = 1 - (1 - p^d)^t_star, evaluated as -expm1(t log1p(-p^d)).
double survival_probability(int t_star, int d, double p);

/// Nonzero mu over the unfixed clause rows with mu^T A_C = 0 over GF(2).
/// Rows are the full incidence rows (all n columns) of the clauses in C.
struct KernelWitness {
  int weight = 0;
  std::vector<int> clauses;  // supp(mu) as base clause indices, ascending
};

/// Minimum-weight kernel vector by weight-ascending exhaustive search.
/// Throws SizeExceeded if |C| > max_rows or max_rows > 24.
std::optional<KernelWitness> row_kernel_min_weight(const RestrictedXor& x, int max_rows);

/// Redraws the right-hand side uniformly `samples` times for the fixed
/// (A, rho) and returns |mean(xor_{j in supp(mu)} b_j) - 1/2|.
/// Throws std::invalid_argument if mu is empty or not a kernel vector of A_C.
double live_parity_bias_check(const RestrictedXor& x, const KernelWitness& mu, std::uint64_t samples,
                              std::uint64_t seed);

}  // namespace xorlab

namespace xorlab {

struct RestrictionExperimentConfig {
  std::vector<int> ns;
  int seeds = 0;
  std::uint64_t seed_base = 0;
  double gamma = 0.1;
  int d = 3;
  double alpha = 1.0 / 3.0;
  int max_rows = 20;  // kernel search only when |C| <= max_rows
};

struct RestrictionRow {
  int n = 0, m = 0, d = 0;
  double alpha = 0, p = 0;
  std::uint64_t seed = 0;
  int alive_vars = 0;
  int unfixed_clauses = 0;
  int min_kernel_weight = -1;  // 0: trivial kernel, -1: search skipped
  bool kernel_searched = false;
};

std::vector<RestrictionRow> restriction_experiment(const RestrictionExperimentConfig& cfg);

/// Columns n,m,d,alpha,p,seed,alive_vars,unfixed_clauses,min_kernel_weight.
/// min_kernel_weight is 0 for a trivial kernel and -1 when |C| exceeded the
/// search bound.
std::string restriction_csv(const std::vector<RestrictionRow>& rows);

}  // namespace xorlab
