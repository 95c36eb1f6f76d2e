#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xorlab/restrictions.hpp"

namespace xorlab {

inline constexpr int kMaxFourierArity = 20;

/// Real multilinear function on {+-1}^n, stored as its 2^n Fourier
/// coefficients indexed by subset bitmask. Inputs are given as bit masks
/// x in {0,1}^n with x'_j = (-1)^{x_j}.
struct MultilinearPoly {
  int n = 0;
  std::vector<double> coeffs;

  MultilinearPoly() = default;
  explicit MultilinearPoly(int arity);

  double coeff(std::uint32_t s) const { return coeffs[s]; }
  double& coeff(std::uint32_t s) { return coeffs[s]; }

  /// Largest |S| with |coeff(S)| > tol; 0 for the zero polynomial.
  int degree(double tol = 1e-12) const;
  double evaluate(std::uint32_t x) const;
  /// f(x) for every x in {0,1}^n.
  std::vector<double> values() const;
  /// sqrt(sum of squared coefficients) = sqrt(E f^2).
  double norm2() const;
  /// max |f(x)| over the cube.
  double sup_norm() const;
  std::string to_json() const;
};

/// In-place unnormalised Walsh-Hadamard butterfly over a power-of-two table.
void fwht_inplace(std::span<double> a);

/// Fourier coefficients of the function with the given truth table.
/// Throws std::invalid_argument unless values.size() = 2^n with n <= 20.
MultilinearPoly wht(std::span<const double> values);

/// Sum of coeff(S)^2 over 1 <= |S| <= k (or 0 <= |S| <= k with include_empty).
double mass_le_k(const MultilinearPoly& p, int k, bool include_empty = false);

/// Noise stability sum_S rho^{|S|} coeff(S)^2.
double stab_rho(const MultilinearPoly& p, double rho);

/// T(x) = A x xor r over GF(2); row i of A is a bitmask over the n inputs.
struct AffineMap {
  int n = 0;
  std::vector<std::uint32_t> rows;
  std::uint32_t offset = 0;

  int m() const { return static_cast<int>(rows.size()); }
  /// Maximum row weight.
  int delta() const;
  bool is_permutation() const;
  std::uint32_t apply(std::uint32_t x) const;
  /// J(S): symmetric difference of the row supports over i in S.
  std::uint32_t image_support(std::uint32_t s) const;
};

/// q = p o T expressed in the input variables:
/// coeff_q(U) = sum over S with J(S) = U of (-1)^{<S, r>} coeff_p(S).
MultilinearPoly affine_pullback(const MultilinearPoly& p, const AffineMap& t);

/// Collision-aware bound M_k * sum_{S : |J(S)| <= k} coeff_p(S)^2, with
/// M_k = max over |U| <= k of #{S : J(S) = U}. Levels start at 1 unless
/// include_empty is set, matching mass_le_k.
double collision_mass_bound(const MultilinearPoly& p, const AffineMap& t, int k, bool include_empty = false);

/// Substitutes x_j = fixed value for every j outside alive_mask. The result
/// keeps arity n; coefficients on dead variables vanish.
MultilinearPoly restrict_poly(const MultilinearPoly& p, std::uint32_t alive_mask, std::uint32_t fixed_bits);
MultilinearPoly restrict_poly(const MultilinearPoly& p, const Restriction& rho);

struct ParityBoundCheck {
  double lhs = 0;  // E_rho |<p|rho, chi_{U(rho)}>|
  double rhs = 0;  // ||p||_2 * Pr[|U(rho)| <= deg p]^{1/2}
  double prob_small = 0;
  bool holds() const { return lhs <= rhs + 1e-12; }
};

/// Exact enumeration over all product restrictions with survival s, with
/// U(rho) the alive part of the parity on variables {0, ..., t_star - 1}.
/// Limited to n <= 10.
ParityBoundCheck rand_index_parity_bound_check(const MultilinearPoly& p, int t_star, double s);

}  // namespace xorlab
