#include "projprod/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "projprod/errors.hpp"

namespace projprod::hardy {

namespace {

// Kuhn's augmenting-path matching on the bipartite "closer than tol" graph.
std::size_t max_matching(const std::vector<Complex>& left, const std::vector<Complex>& right,
                         double tol) {
  std::vector<int> owner(right.size(), -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment =
      [&](std::size_t i, std::vector<char>& seen) {
        for (std::size_t j = 0; j < right.size(); ++j) {
          if (seen[j] || std::abs(left[i] - right[j]) > tol) continue;
          seen[j] = 1;
          if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
            owner[j] = static_cast<int>(i);
            return true;
          }
        }
        return false;
      };
  std::size_t matched = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    std::vector<char> seen(right.size(), 0);
    if (augment(i, seen)) ++matched;
  }
  return matched;
}

struct SharedCluster {
  Complex center;
  std::size_t in_first = 0;
  std::size_t in_second = 0;
};

std::vector<SharedCluster> shared_clusters(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                           double tol) {
  std::vector<Complex> all = b1.zeros();
  all.insert(all.end(), b2.zeros().begin(), b2.zeros().end());
  const std::size_t n1 = b1.degree();
  // Union-find over the union so that a cluster may contain zeros of both.
  std::vector<std::size_t> parent(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root(parent[i]);
  };
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(all[i] - all[j]) <= tol) parent[root(i)] = root(j);

  std::vector<SharedCluster> out;
  std::vector<long> slot(all.size(), -1);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t r = root(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.push_back({});
      members.push_back(0);
    }
    auto& c = out[static_cast<std::size_t>(slot[r])];
    c.center += all[i];
    ++members[static_cast<std::size_t>(slot[r])];
    (i < n1 ? c.in_first : c.in_second) += 1;
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].center /= static_cast<double>(members[k]);
  return out;
}

BlaschkeProduct from_clusters(const std::vector<SharedCluster>& clusters, bool take_max) {
  std::vector<Complex> zeros;
  for (const auto& c : clusters) {
    const std::size_t mult = take_max ? std::max(c.in_first, c.in_second)
                                      : std::min(c.in_first, c.in_second);
    zeros.insert(zeros.end(), mult, c.center);
  }
  // Inputs already passed the modulus check; cluster means cannot exceed it.
  return BlaschkeProduct::make(Complex(1.0, 0.0), std::move(zeros), 1.0);
}

}  // namespace

BlaschkeProduct BlaschkeProduct::make(Complex constant, std::vector<Complex> zeros,
                                      double max_zero_modulus, double tol_unimodular) {
  if (!std::isfinite(constant.real()) || !std::isfinite(constant.imag()) ||
      std::abs(std::abs(constant) - 1.0) > tol_unimodular) {
    throw InputError("Blaschke constant must be unimodular");
  }
  for (const Complex& a : zeros) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InputError("Blaschke zero is not finite");
    }
    if (!(std::abs(a) < 1.0) || std::abs(a) > max_zero_modulus) {
      throw InputError("Blaschke zero of modulus " + std::to_string(std::abs(a)) +
                       " exceeds the allowed maximum " + std::to_string(max_zero_modulus));
    }
  }
  return BlaschkeProduct(constant, std::move(zeros));
}

double BlaschkeProduct::max_zero_modulus() const {
  double rho = 0.0;
  for (const Complex& a : zeros_) rho = std::max(rho, std::abs(a));
  return rho;
}

std::size_t HardyTruncation::sufficient_order(const BlaschkeProduct& b) const {
  std::size_t n = std::max<std::size_t>(2, 2 * b.degree());
  const double rho = b.max_zero_modulus();
  if (rho > 0.0) {
    const double needed = std::log(tol_trunc) / std::log(rho);
    n = std::max(n, static_cast<std::size_t>(std::floor(needed)) + 1);
  }
  return n;
}

void HardyTruncation::require_adequate(const BlaschkeProduct& b) const {
  const std::size_t need = sufficient_order(b);
  const double rho = b.max_zero_modulus();
  const bool tail_ok = rho == 0.0 || std::pow(rho, static_cast<double>(order)) < tol_trunc;
  if (order < 2 * b.degree() || !tail_ok) {
    throw TruncationError("truncation order " + std::to_string(order) +
                              " is too small for a Blaschke product of degree " +
                              std::to_string(b.degree()) + " with zero modulus " +
                              std::to_string(rho) + "; use at least " + std::to_string(need),
                          need);
  }
}

Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("blaschke_eval: |z| > 1");
  Complex value = b.constant();
  for (const Complex& a : b.zeros()) {
    const Complex den = 1.0 - std::conj(a) * z;
    if (den == Complex(0.0, 0.0)) throw DomainError("blaschke_eval: pole");
    value *= (z - a) / den;
  }
  return value;
}

ComplexVector blaschke_taylor(const BlaschkeProduct& b, const HardyTruncation& trunc) {
  trunc.require_adequate(b);
  const Index n = static_cast<Index>(trunc.order);
  ComplexVector coeffs = ComplexVector::Zero(n);
  coeffs(0) = b.constant();
  ComplexVector factor(n);
  for (const Complex& a : b.zeros()) {
    // b_a = -a + (1 - |a|²) Σ_{k≥1} conj(a)^{k-1} z^k
    factor(0) = -a;
    Complex p(1.0, 0.0);
    const double scale = 1.0 - std::norm(a);
    for (Index k = 1; k < n; ++k) {
      factor(k) = scale * p;
      p *= std::conj(a);
    }
    ComplexVector next = ComplexVector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (coeffs(i) == Complex(0.0, 0.0)) continue;
      next.segment(i, n - i) += coeffs(i) * factor.head(n - i);
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

std::vector<ZeroCluster> cluster_zeros(const std::vector<Complex>& zeros, double tol) {
  const auto shared = shared_clusters(BlaschkeProduct::make(Complex(1, 0), zeros, 1.0),
                                      BlaschkeProduct(), tol);
  std::vector<ZeroCluster> out;
  out.reserve(shared.size());
  for (const auto& c : shared) out.push_back({c.center, c.in_first});
  return out;
}

bool zeros_match(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  return a.size() == b.size() && max_matching(a, b, tol) == a.size();
}

bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2, double tol_zero) {
  if (b1.degree() > b2.degree()) return false;
  return max_matching(b1.zeros(), b2.zeros(), tol_zero) == b1.degree();
}

BlaschkeProduct blaschke_lcm(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                             double tol_zero) {
  return from_clusters(shared_clusters(b1, b2, tol_zero), true);
}

BlaschkeProduct blaschke_gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                             double tol_zero) {
  return from_clusters(shared_clusters(b1, b2, tol_zero), false);
}

BlaschkeProduct blaschke_multiply(const BlaschkeProduct& b1, const BlaschkeProduct& b2) {
  std::vector<Complex> zeros = b1.zeros();
  zeros.insert(zeros.end(), b2.zeros().begin(), b2.zeros().end());
  return BlaschkeProduct::make(b1.constant() * b2.constant(), std::move(zeros), 1.0);
}

}  // namespace projprod::hardy
