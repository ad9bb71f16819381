#include "projprod/hilbert.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "projprod/errors.hpp"

namespace projprod {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b, std::string_view op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InputError(std::string(op) + ": ambient dimension mismatch (" +
                     std::to_string(a.ambient_dim()) + " vs " +
                     std::to_string(b.ambient_dim()) + ")");
  }
}

// Numerical rank from descending singular values.
Index numerical_rank(const Eigen::VectorXd& sv, double rel_tol, double scale_floor) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * std::max(sv(0), scale_floor);
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace

// Two passes of classical Gram-Schmidt, enough for orthonormal frames.
ComplexMatrix residual_against(const ComplexMatrix& frame, const ComplexMatrix& v) {
  if (frame.cols() == 0) return v;
  ComplexMatrix r = v - frame * (frame.adjoint() * v);
  r -= frame * (frame.adjoint() * r);
  return r;
}

void Tolerances::validate() const {
  auto inside = [](double x) { return x > 0.0 && x < 1.0; };
  if (!inside(rank) || !inside(eq) || !inside(orth)) {
    throw InputError("tolerances must lie strictly between 0 and 1");
  }
}

Tolerances Tolerances::from_environment() {
  Tolerances tol;
  if (const char* env = std::getenv("PROJPROD_TOL_EQ"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw InputError(std::string("PROJPROD_TOL_EQ is not a number: ") + env);
    }
    tol.eq = v;
  }
  tol.validate();
  return tol;
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw InputError(std::string(what) + ": expected a square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_decomposition(m, SingularVectors::none).values(0);
}

Subspace Subspace::trivial(Index ambient_dim) {
  return Subspace(ComplexMatrix(ambient_dim, 0));
}

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(ComplexMatrix::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::from_frame(ComplexMatrix frame, const Tolerances& tol) {
  require_finite(frame, "subspace frame");
  if (frame.rows() < 1) throw InputError("subspace frame: ambient dimension must be positive");
  if (frame.cols() > frame.rows()) {
    throw InputError("subspace frame: more columns than ambient dimension");
  }
  const Index k = frame.cols();
  const double defect =
      k == 0 ? 0.0 : operator_norm(frame.adjoint() * frame - ComplexMatrix::Identity(k, k));
  if (defect > tol.orth) {
    throw InputError("subspace frame is not orthonormal (defect " + std::to_string(defect) + ")");
  }
  return Subspace(std::move(frame));
}

Subspace make_subspace_unchecked(ComplexMatrix frame) { return Subspace(std::move(frame)); }

Subspace orthonormal_range(const ComplexMatrix& t, const Tolerances& tol, double scale_floor) {
  require_finite(t, "orthonormal_range");
  if (t.size() == 0) throw InputError("orthonormal_range: empty matrix");
  const SingularDecomposition svd = singular_decomposition(t, SingularVectors::thin_u);
  const Index r = numerical_rank(svd.values, tol.rank, scale_floor);
  return make_subspace_unchecked(svd.u.leftCols(r));
}

Subspace kernel(const ComplexMatrix& t, const Tolerances& tol, double scale_floor) {
  require_finite(t, "kernel");
  if (t.size() == 0) throw InputError("kernel: empty matrix");
  const SingularDecomposition svd = singular_decomposition(t, SingularVectors::full_v);
  const Index r = numerical_rank(svd.values, tol.rank, scale_floor);
  return make_subspace_unchecked(svd.v.rightCols(t.cols() - r));
}

FundamentalSubspaces fundamental_subspaces(const ComplexMatrix& t, const Tolerances& tol,
                                           double scale_floor) {
  require_finite(t, "fundamental_subspaces");
  if (t.size() == 0) throw InputError("fundamental_subspaces: empty matrix");
  const SingularDecomposition svd = singular_decomposition(t, SingularVectors::full);
  const Index r = numerical_rank(svd.values, tol.rank, scale_floor);
  return {make_subspace_unchecked(svd.u.leftCols(r)),
          make_subspace_unchecked(svd.u.rightCols(t.rows() - r)),
          make_subspace_unchecked(svd.v.leftCols(r)),
          make_subspace_unchecked(svd.v.rightCols(t.cols() - r))};
}

ComplexMatrix projector(const Subspace& s) { return s.frame() * s.frame().adjoint(); }

Subspace intersect(const Subspace& s1, const Subspace& s2, const Tolerances& tol) {
  require_same_ambient(s1, s2, "intersect");
  const Index n = s1.ambient_dim();
  if (s1.is_trivial() || s2.is_trivial()) return Subspace::trivial(n);

  // P1 P2 P1 vanishes off S1, so its spectrum lives in the compression
  // F1* P2 F1 = (F2* F1)* (F2* F1).
  const ComplexMatrix overlap = s2.frame().adjoint() * s1.frame();
  const HermitianEigen eig = hermitian_eigen(overlap.adjoint() * overlap);
  const Eigen::VectorXd& values = eig.values;  // ascending
  Index first = values.size();
  while (first > 0 && values(first - 1) >= 1.0 - tol.rank) --first;
  const Index k = values.size() - first;
  ComplexMatrix frame = s1.frame() * eig.vectors.rightCols(k);

  // Cross-check: ker(I - P1 P2) must have the same dimension.
  const ComplexMatrix defect = ComplexMatrix::Identity(n, n) - projector(s1) * projector(s2);
  const Index k_null = kernel(defect, tol, kUnitScale).dim();
  if (k_null != k) {
    throw ConsistencyError("intersect: eigenvalue-1 space has dimension " + std::to_string(k) +
                           " but ker(I - P1 P2) has dimension " + std::to_string(k_null));
  }

  // Re-orthonormalize; the eigenvectors are orthonormal in S1 coordinates
  // and F1 is an isometry, so this only polishes rounding.
  Eigen::HouseholderQR<ComplexMatrix> qr(frame);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);
  return make_subspace_unchecked(std::move(q));
}

Subspace join(const Subspace& s1, const Subspace& s2, const Tolerances& tol) {
  require_same_ambient(s1, s2, "join");
  if (s1.is_trivial()) return s2;
  if (s2.is_trivial()) return s1;
  return extend(s1, s2.frame(), tol);
}

Subspace extend(const Subspace& s, const ComplexMatrix& vectors, const Tolerances& tol) {
  const Index n = s.ambient_dim();
  if (vectors.rows() != n) throw InputError("extend: vectors have the wrong length");
  require_finite(vectors, "extend");
  if (vectors.cols() == 0) return s;
  const double scale = std::max(1.0, vectors.colwise().norm().maxCoeff());
  // Extend the frame by the part of the new vectors orthogonal to it.
  const ComplexMatrix rest = residual_against(s.frame(), vectors);
  const SingularDecomposition svd = singular_decomposition(rest, SingularVectors::thin_u);
  const Eigen::VectorXd& sv = svd.values;
  Index r = 0;
  while (r < sv.size() && sv(r) > tol.rank * scale) ++r;
  if (r == 0) return s;
  ComplexMatrix frame(n, s.dim() + r);
  frame.leftCols(s.dim()) = s.frame();
  frame.rightCols(r) = svd.u.leftCols(r);
  return make_subspace_unchecked(std::move(frame));
}

Subspace complement(const Subspace& s) {
  const Index n = s.ambient_dim();
  if (s.is_trivial()) return Subspace::full(n);
  Eigen::HouseholderQR<ComplexMatrix> qr(s.frame());
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  return make_subspace_unchecked(q.rightCols(n - s.dim()));
}

double subspace_distance(const Subspace& s1, const Subspace& s2) {
  require_same_ambient(s1, s2, "subspace_distance");
  // ‖P - Q‖ = max(‖(I - P) Q‖, ‖(I - Q) P‖).
  const double a = operator_norm(residual_against(s1.frame(), s2.frame()));
  const double b = operator_norm(residual_against(s2.frame(), s1.frame()));
  return std::max(a, b);
}

bool subspace_equal(const Subspace& s1, const Subspace& s2, const Tolerances& tol) {
  require_same_ambient(s1, s2, "subspace_equal");
  if (s1.dim() != s2.dim()) return false;
  return subspace_distance(s1, s2) <= tol.eq;
}

bool contains(const Subspace& outer, const Subspace& inner, const Tolerances& tol) {
  require_same_ambient(outer, inner, "contains");
  if (inner.is_trivial()) return true;
  return operator_norm(residual_against(outer.frame(), inner.frame())) <= tol.eq;
}

}  // namespace projprod
