#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xorlab {

using BitVector = std::vector<std::uint8_t>;

struct XorClause {
  std::array<int, 3> vars;  // distinct, ascending
  std::uint8_t rhs = 0;

  friend bool operator==(const XorClause&, const XorClause&) = default;
  friend auto operator<=>(const XorClause&, const XorClause&) = default;
};

/// Sparse 3XOR system A x = b over GF(2).
struct XorInstance {
  int n = 0;
  std::vector<XorClause> clauses;
  std::optional<BitVector> hidden;
  double gamma = 0.0;
  std::uint64_t seed = 0;

  int m() const { return static_cast<int>(clauses.size()); }
  friend bool operator==(const XorInstance&, const XorInstance&) = default;
};

/// A literal is a DIMACS-style signed 1-based variable index.
using Clause = std::vector<int>;

struct CnfInstance {
  int n = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

/// Clause count of the balanced window, m = round-half-up((1 + gamma) n).
int balanced_clause_count(int n, double gamma);

/// Hidden-assignment model: a uniform hidden assignment is drawn first, then
/// every clause's parity bit is set so that the assignment satisfies it.
XorInstance gen_balanced_xor(int n, double gamma, std::uint64_t seed);

/// Same incidence as gen_balanced_xor for the same (n, gamma, seed), but with
/// i.i.d. unbiased right-hand sides and no hidden assignment.
XorInstance gen_uniform_rhs_xor(int n, double gamma, std::uint64_t seed);

/// Four-clause encoding of each parity constraint. For clause (i, j, k, b) the
/// emitted clauses forbid exactly the four assignments of parity 1 - b, in
/// ascending sign-pattern order (bit 2 = sign of i, bit 0 = sign of k).
CnfInstance lift_to_cnf(const XorInstance& x);

bool check_assignment(const XorInstance& x, const BitVector& a);
bool check_assignment(const CnfInstance& c, const BitVector& a);

/// All satisfying assignments as bitmasks (bit v = value of variable v). n <= 24.
std::vector<std::uint32_t> enumerate_solutions(const XorInstance& x);
std::vector<std::uint32_t> enumerate_solutions(const CnfInstance& c);

void write_dimacs(std::ostream& os, const CnfInstance& c);
CnfInstance parse_dimacs(std::istream& is);
std::string to_json(const XorInstance& x);

/// Canonical text key of an instance (sorted clause multiset). Two instances
/// with equal keys are identical up to clause order.
std::string canonical_key(const XorInstance& x);
std::string canonical_key(const CnfInstance& c);

using Histogram = std::map<std::string, double>;

/// Total variation distance between two histograms, each normalised by its
/// own total mass.
double total_variation(const Histogram& a, const Histogram& b);

}  // namespace xorlab
