#pragma once

// Finite Blaschke products c · Π (z - α)/(1 - conj(α) z) and the divisor
// lattice on them (divisibility, lcm, gcd), all in one variable.

#include <cstddef>
#include <vector>

#include "projprod/hilbert.hpp"

namespace projprod::hardy {

inline constexpr double kDefaultMaxZeroModulus = 0.95;
inline constexpr double kDefaultZeroTol = 1e-8;
inline constexpr double kDefaultTruncTol = 1e-12;

class BlaschkeProduct {
 public:
  /// The constant function 1 (no zeros).
  BlaschkeProduct() = default;

  /// Validates |constant| = 1 within tol_unimodular and |α| ≤ max_zero_modulus.
  static BlaschkeProduct make(Complex constant, std::vector<Complex> zeros,
                              double max_zero_modulus = kDefaultMaxZeroModulus,
                              double tol_unimodular = 1e-9);
  static BlaschkeProduct from_zeros(std::vector<Complex> zeros,
                                    double max_zero_modulus = kDefaultMaxZeroModulus) {
    return make(Complex(1.0, 0.0), std::move(zeros), max_zero_modulus);
  }

  Complex constant() const { return constant_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  std::size_t degree() const { return zeros_.size(); }
  bool is_constant() const { return zeros_.empty(); }
  double max_zero_modulus() const;

 private:
  BlaschkeProduct(Complex c, std::vector<Complex> zeros) : constant_(c), zeros_(std::move(zeros)) {}
  Complex constant_{1.0, 0.0};
  std::vector<Complex> zeros_;
};

/// Truncation H²(D) ≈ span{z^0, ..., z^{N-1}}; coefficient k ↔ z^k.
struct HardyTruncation {
  std::size_t order = 256;
  double tol_trunc = kDefaultTruncTol;

  /// Requires order ≥ 2·degree and ρ^order < tol_trunc (ρ the largest zero
  /// modulus); throws TruncationError carrying a sufficient order otherwise.
  void require_adequate(const BlaschkeProduct& b) const;
  std::size_t sufficient_order(const BlaschkeProduct& b) const;
};

/// Throws DomainError for |z| > 1.
Complex blaschke_eval(const BlaschkeProduct& b, Complex z);

/// First N Taylor coefficients at 0, by convolving the factor series.
ComplexVector blaschke_taylor(const BlaschkeProduct& b, const HardyTruncation& trunc);

struct ZeroCluster {
  Complex center;
  std::size_t multiplicity = 0;
};

/// Single-linkage clusters of points closer than tol; centers are means.
std::vector<ZeroCluster> cluster_zeros(const std::vector<Complex>& zeros, double tol);

/// True when the multisets `a` and `b` can be matched one-to-one with every
/// pair closer than tol.
bool zeros_match(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol);

/// Zero multiset of b1 contained (with multiplicity, within tol_zero) in that of b2.
bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
             double tol_zero = kDefaultZeroTol);

/// Multiset max / min of zero multiplicities; constants normalized to 1.
BlaschkeProduct blaschke_lcm(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                             double tol_zero = kDefaultZeroTol);
BlaschkeProduct blaschke_gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                             double tol_zero = kDefaultZeroTol);

/// b1 · b2.
BlaschkeProduct blaschke_multiply(const BlaschkeProduct& b1, const BlaschkeProduct& b2);

}  // namespace projprod::hardy
