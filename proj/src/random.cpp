#include "projprod/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace projprod {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix random_gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

ComplexMatrix random_unitary(Rng& rng, Index n) {
  const ComplexMatrix g = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_projection(Rng& rng, Index n, Index rank) {
  if (rank <= 0) return ComplexMatrix::Zero(n, n);
  const ComplexMatrix g = random_gaussian(rng, n, rank);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, rank);
  return q * q.adjoint();
}

ProjectionPair random_gaussian_pair(Rng& rng, Index n, const Tolerances& tol) {
  std::uniform_int_distribution<Index> common_dist(0, std::max<Index>(0, n / 3));
  const Index common = common_dist(rng);
  std::uniform_int_distribution<Index> rank_dist(common, n);
  const Index r1 = rank_dist(rng);
  const Index r2 = rank_dist(rng);
  const ComplexMatrix shared = random_gaussian(rng, n, common);
  auto build = [&](Index rank) {
    if (rank == 0) return ComplexMatrix(ComplexMatrix::Zero(n, n));
    ComplexMatrix basis(n, rank);
    basis.leftCols(common) = shared;
    basis.rightCols(rank - common) = random_gaussian(rng, n, rank - common);
    Eigen::HouseholderQR<ComplexMatrix> qr(basis);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, rank);
    return ComplexMatrix(q * q.adjoint());
  };
  ComplexMatrix p1 = build(r1);
  ComplexMatrix p2 = build(r2);
  return ProjectionPair::make(std::move(p1), std::move(p2), tol);
}

ProjectionPair random_halmos_pair(Rng& rng, Index n, double min_angle, const Tolerances& tol) {
  // Split n = d11 + d10 + d01 + d00 + 2g.
  std::uniform_int_distribution<Index> generic_dist(0, n / 2);
  const Index g = generic_dist(rng);
  Index rest = n - 2 * g;
  Index dims[4] = {0, 0, 0, 0};
  std::uniform_int_distribution<int> slot(0, 3);
  for (Index i = 0; i < rest; ++i) ++dims[slot(rng)];

  ComplexMatrix p1 = ComplexMatrix::Zero(n, n);
  ComplexMatrix p2 = ComplexMatrix::Zero(n, n);
  Index at = 0;
  for (Index i = 0; i < dims[0]; ++i, ++at) p1(at, at) = p2(at, at) = 1.0;  // ran ∩ ran
  for (Index i = 0; i < dims[1]; ++i, ++at) p1(at, at) = 1.0;               // ran P1 ∩ ker P2
  for (Index i = 0; i < dims[2]; ++i, ++at) p2(at, at) = 1.0;               // ker P1 ∩ ran P2
  at += dims[3];                                                          // ker ∩ ker
  std::uniform_real_distribution<double> angle(min_angle, std::numbers::pi / 2 - min_angle);
  for (Index i = 0; i < g; ++i, at += 2) {
    const double t = angle(rng);
    const double c = std::cos(t);
    const double s = std::sin(t);
    p1(at, at) = 1.0;
    p2(at, at) = c * c;
    p2(at, at + 1) = p2(at + 1, at) = c * s;
    p2(at + 1, at + 1) = s * s;
  }
  const ComplexMatrix u = random_unitary(rng, n);
  ComplexMatrix q1 = u * p1 * u.adjoint();
  ComplexMatrix q2 = u * p2 * u.adjoint();
  // Symmetrize rounding from the conjugation.
  q1 = (0.5 * (q1 + q1.adjoint())).eval();
  q2 = (0.5 * (q2 + q2.adjoint())).eval();
  return ProjectionPair::make(std::move(q1), std::move(q2), tol);
}

ComplexMatrix random_strict_contraction(Rng& rng, Index n) {
  const ComplexMatrix g = random_gaussian(rng, n, n);
  std::uniform_real_distribution<double> target(0.2, 0.95);
  return g * (target(rng) / operator_norm(g));
}

}  // namespace projprod
