#include "xorlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "xorlab/rng.hpp"

namespace xorlab {
namespace {

constexpr std::uint64_t kIncidenceStream = 1;
constexpr std::uint64_t kRhsStream = 2;

void validate_window(int n, double gamma) {
  if (n < 3) throw std::invalid_argument("3XOR instance needs n >= 3");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
}

std::vector<std::array<int, 3>> sample_triples(int n, int m, std::uint64_t seed) {
  Rng rng(seed, kIncidenceStream);
  const auto un = static_cast<std::uint64_t>(n);
  std::vector<std::array<int, 3>> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) {
    const int i = static_cast<int>(rng.below(un));
    int j;
    do { j = static_cast<int>(rng.below(un)); } while (j == i);
    int k;
    do { k = static_cast<int>(rng.below(un)); } while (k == i || k == j);
    std::array<int, 3> t{i, j, k};
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  return out;
}

bool clause_holds(const XorClause& c, const BitVector& a) {
  return ((a[c.vars[0]] ^ a[c.vars[1]] ^ a[c.vars[2]]) & 1U) == c.rhs;
}

}  // namespace

int balanced_clause_count(int n, double gamma) {
  return static_cast<int>(std::floor((1.0 + gamma) * n + 0.5));
}

XorInstance gen_balanced_xor(int n, double gamma, std::uint64_t seed) {
  validate_window(n, gamma);
  XorInstance x;
  x.n = n;
  x.gamma = gamma;
  x.seed = seed;
  const int m = balanced_clause_count(n, gamma);
  Rng rng(seed, kRhsStream);
  BitVector hidden(static_cast<std::size_t>(n));
  for (auto& b : hidden) b = rng.bit();
  for (const auto& t : sample_triples(n, m, seed)) {
    const auto rhs = static_cast<std::uint8_t>(hidden[t[0]] ^ hidden[t[1]] ^ hidden[t[2]]);
    x.clauses.push_back({t, rhs});
  }
  x.hidden = std::move(hidden);
  return x;
}

XorInstance gen_uniform_rhs_xor(int n, double gamma, std::uint64_t seed) {
  validate_window(n, gamma);
  XorInstance x;
  x.n = n;
  x.gamma = gamma;
  x.seed = seed;
  const int m = balanced_clause_count(n, gamma);
  Rng rng(seed, kRhsStream);
  for (const auto& t : sample_triples(n, m, seed)) x.clauses.push_back({t, rng.bit()});
  return x;
}

CnfInstance lift_to_cnf(const XorInstance& x) {
  CnfInstance c;
  c.n = x.n;
  c.clauses.reserve(x.clauses.size() * 4);
  for (const auto& xc : x.clauses) {
    // A clause with negation pattern s rules out the assignment a = s, whose
    // parity is popcount(s). Keep patterns with parity != rhs.
    for (unsigned s = 0; s < 8; ++s) {
      const unsigned parity = ((s >> 2) ^ (s >> 1) ^ s) & 1U;
      if (parity == xc.rhs) continue;
      Clause cl(3);
      for (int pos = 0; pos < 3; ++pos) {
        const int lit = xc.vars[pos] + 1;
        cl[pos] = ((s >> (2 - pos)) & 1U) ? -lit : lit;
      }
      c.clauses.push_back(std::move(cl));
    }
  }
  return c;
}

bool check_assignment(const XorInstance& x, const BitVector& a) {
  if (static_cast<int>(a.size()) != x.n) throw std::invalid_argument("assignment length does not match n");
  return std::all_of(x.clauses.begin(), x.clauses.end(), [&](const XorClause& c) { return clause_holds(c, a); });
}

bool check_assignment(const CnfInstance& c, const BitVector& a) {
  if (static_cast<int>(a.size()) != c.n) throw std::invalid_argument("assignment length does not match n");
  for (const auto& cl : c.clauses) {
    bool sat = false;
    for (int lit : cl) {
      const std::uint8_t v = a[static_cast<std::size_t>(std::abs(lit) - 1)] & 1U;
      if ((lit > 0) == (v == 1)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

template <class Instance>
std::vector<std::uint32_t> enumerate_impl(const Instance& inst) {
  if (inst.n > 24) throw std::invalid_argument("exhaustive enumeration limited to n <= 24");
  std::vector<std::uint32_t> out;
  BitVector a(static_cast<std::size_t>(inst.n));
  for (std::uint32_t mask = 0; mask < (1U << inst.n); ++mask) {
    for (int v = 0; v < inst.n; ++v) a[v] = (mask >> v) & 1U;
    if (check_assignment(inst, a)) out.push_back(mask);
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> enumerate_solutions(const XorInstance& x) {
  // Parity checks on masks directly; this is the hot path of the n <= 20 oracles.
  if (x.n > 24) throw std::invalid_argument("exhaustive enumeration limited to n <= 24");
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> rhs;
  for (const auto& c : x.clauses) {
    rows.push_back((1U << c.vars[0]) | (1U << c.vars[1]) | (1U << c.vars[2]));
    rhs.push_back(c.rhs);
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1U << x.n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < rows.size() && ok; ++i)
      ok = static_cast<std::uint32_t>(__builtin_popcount(rows[i] & mask) & 1) == rhs[i];
    if (ok) out.push_back(mask);
  }
  return out;
}

std::vector<std::uint32_t> enumerate_solutions(const CnfInstance& c) { return enumerate_impl(c); }

void write_dimacs(std::ostream& os, const CnfInstance& c) {
  os << "p cnf " << c.n << ' ' << c.clauses.size() << '\n';
  for (const auto& cl : c.clauses) {
    for (int lit : cl) os << lit << ' ';
    os << "0\n";
  }
}

CnfInstance parse_dimacs(std::istream& is) {
  CnfInstance c;
  std::string line;
  bool header = false;
  std::size_t declared = 0;
  Clause current;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      ls >> p >> fmt >> c.n >> declared;
      if (fmt != "cnf" || !ls) throw std::invalid_argument("bad DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("DIMACS clause before header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        c.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::abs(lit) > c.n) throw std::invalid_argument("DIMACS literal out of range");
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) throw std::invalid_argument("DIMACS clause not 0-terminated");
  if (c.clauses.size() != declared) throw std::invalid_argument("DIMACS clause count mismatch");
  return c;
}

std::string to_json(const XorInstance& x) {
  nlohmann::ordered_json j;
  j["n"] = x.n;
  j["m"] = x.m();
  j["gamma"] = x.gamma;
  j["seed"] = x.seed;
  auto clauses = nlohmann::json::array();
  for (const auto& c : x.clauses) clauses.push_back({c.vars[0], c.vars[1], c.vars[2], c.rhs});
  j["clauses"] = std::move(clauses);
  if (x.hidden) {
    std::string bits;
    for (auto b : *x.hidden) bits.push_back(b ? '1' : '0');
    j["hidden"] = bits;
  }
  return j.dump();
}

std::string canonical_key(const XorInstance& x) {
  auto clauses = x.clauses;
  std::sort(clauses.begin(), clauses.end());
  std::ostringstream os;
  os << x.n << ':';
  for (const auto& c : clauses) os << c.vars[0] << ',' << c.vars[1] << ',' << c.vars[2] << '=' << int(c.rhs) << ';';
  return os.str();
}

std::string canonical_key(const CnfInstance& c) {
  auto clauses = c.clauses;
  std::sort(clauses.begin(), clauses.end());
  std::ostringstream os;
  os << c.n << ':';
  for (const auto& cl : clauses) {
    for (int lit : cl) os << lit << ',';
    os << ';';
  }
  return os.str();
}

double total_variation(const Histogram& a, const Histogram& b) {
  double ta = 0, tb = 0;
  for (const auto& [k, v] : a) ta += v;
  for (const auto& [k, v] : b) tb += v;
  if (ta <= 0 || tb <= 0) throw std::invalid_argument("total_variation on empty histogram");
  double sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += ia->second / ta;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += ib->second / tb;
      ++ib;
    } else {
      sum += std::abs(ia->second / ta - ib->second / tb);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

}  // namespace xorlab
