#include "projprod/products.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "projprod/errors.hpp"

namespace projprod {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

double projection_defect(const ComplexMatrix& p) {
  require_square(p, "projection check");
  require_finite(p, "projection check");
  return std::max(operator_norm(p - p.adjoint()), operator_norm(p - p * p));
}

bool is_projection(const ComplexMatrix& p, const Tolerances& tol) {
  return projection_defect(p) <= tol.eq;
}

ProjectionPair ProjectionPair::make(ComplexMatrix p1, ComplexMatrix p2, const Tolerances& tol) {
  if (p1.rows() != p2.rows() || p1.cols() != p2.cols()) {
    throw InputError("projection pair: size mismatch");
  }
  if (const double d = projection_defect(p1); d > tol.eq) {
    throw InputError("first operator is not an orthogonal projection (defect " + fmt(d) + ")");
  }
  if (const double d = projection_defect(p2); d > tol.eq) {
    throw InputError("second operator is not an orthogonal projection (defect " + fmt(d) + ")");
  }
  return ProjectionPair(std::move(p1), std::move(p2));
}

ClassificationReport classify(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "classify");
  require_finite(t, "classify");
  const ComplexMatrix ts = t.adjoint();
  const ComplexMatrix p_ran = projector(orthonormal_range(t, tol, kUnitScale));
  const ComplexMatrix p_ran_adj = projector(orthonormal_range(ts, tol, kUnitScale));

  ClassificationReport r;
  r.crimmins_residual = operator_norm(t * ts * t - t * t);
  r.factor_residual = operator_norm(t - p_ran * p_ran_adj);
  r.sebestyen_residual = operator_norm(t * ts - t * p_ran);
  r.range_adjoint_residual = operator_norm(t * ts - p_ran * ts);
  r.norm = operator_norm(t);
  r.is_contraction = r.norm <= 1.0 + tol.eq;

  const double lo = std::min({r.crimmins_residual, r.factor_residual, r.sebestyen_residual});
  const double hi = std::max({r.crimmins_residual, r.factor_residual, r.sebestyen_residual});
  r.is_product = hi <= tol.eq;
  if (lo <= tol.eq && hi > kVerdictSpread * tol.eq) {
    throw ConsistencyError("classify: criteria disagree (residuals " + fmt(r.crimmins_residual) +
                           ", " + fmt(r.factor_residual) + ", " + fmt(r.sebestyen_residual) + ")");
  }
  return r;
}

std::pair<ComplexMatrix, ComplexMatrix> canonical_factorization(const ComplexMatrix& t,
                                                                const Tolerances& tol) {
  const ClassificationReport report = classify(t, tol);
  if (!report.is_product) {
    throw ClassificationError("operator is not a product of two projections (Crimmins residual " +
                                  fmt(report.crimmins_residual) + ")",
                              report.crimmins_residual);
  }
  ComplexMatrix left = projector(orthonormal_range(t, tol, kUnitScale));
  ComplexMatrix right = projector(orthonormal_range(t.adjoint(), tol, kUnitScale));
  if (operator_norm(t - left * right) > tol.eq) {
    throw ConsistencyError("canonical_factorization: factors do not reproduce T");
  }
  return {std::move(left), std::move(right)};
}

ComplexMatrix canonical_sandwich(const ComplexMatrix& x, const ComplexMatrix& p1,
                                 const ComplexMatrix& p2, const Tolerances& tol) {
  require_finite(x, "canonical_sandwich");
  if (!is_projection(p1, tol) || !is_projection(p2, tol)) {
    throw InputError("canonical_sandwich: outer factors must be projections");
  }
  if (p1.cols() != x.rows() || x.cols() != p2.rows()) {
    throw InputError("canonical_sandwich: incompatible sizes");
  }
  ComplexMatrix t = p1 * x * p2;
  const ComplexMatrix left = projector(orthonormal_range(t, tol, kUnitScale));
  const ComplexMatrix right = projector(orthonormal_range(t.adjoint(), tol, kUnitScale));
  const double residual = operator_norm(t - left * x * right);
  // Scale by ‖X‖: the identity is linear in X.
  if (residual > tol.eq * std::max(1.0, operator_norm(x))) {
    throw ConsistencyError("canonical_sandwich: P_ranT X P_ranT* differs from P1 X P2 by " +
                           fmt(residual));
  }
  return t;
}

std::optional<Subspace> sebestyen_right_factor(const ComplexMatrix& t1, const ComplexMatrix& t2,
                                               const Tolerances& tol) {
  if (t1.rows() != t2.rows() || t1.cols() != t2.cols()) {
    throw InputError("sebestyen_right_factor: size mismatch");
  }
  require_finite(t1, "sebestyen_right_factor");
  require_finite(t2, "sebestyen_right_factor");
  const ComplexMatrix t1s = t1.adjoint();
  if (operator_norm(t1 * t1s - t2 * t1s) > tol.eq) return std::nullopt;
  Subspace s = orthonormal_range(t1s, tol, kUnitScale);
  if (operator_norm(t1 - t2 * projector(s)) > tol.eq) {
    throw ConsistencyError("sebestyen_right_factor: T1 != T2 P_{ran T1*}");
  }
  return s;
}

Subspace unitary_part(const ProjectionPair& pair, const Tolerances& tol) {
  const Index n = pair.dim();
  Subspace hu = kernel(pair.product() - identity(n), tol, kUnitScale);
  const Subspace meet = intersect(orthonormal_range(pair.p1(), tol, kUnitScale),
                                  orthonormal_range(pair.p2(), tol, kUnitScale), tol);
  if (!subspace_equal(hu, meet, tol)) {
    throw ConsistencyError("unitary_part: ker(P1P2 - I) (dim " + std::to_string(hu.dim()) +
                           ") differs from ran P1 ∩ ran P2 (dim " + std::to_string(meet.dim()) +
                           ")");
  }
  return hu;
}

Subspace cnu_part(const ComplexMatrix& t, const Tolerances& tol) {
  const ClassificationReport report = classify(t, tol);
  if (!report.is_product) {
    throw ClassificationError("cnu_part: operator is not a product of two projections",
                              report.crimmins_residual);
  }
  Subspace hcnu = join(kernel(t, tol, kUnitScale), kernel(t.adjoint(), tol, kUnitScale), tol);
  // For T = P1 P2 the unitary part is ker(T - I); its complement must agree.
  const Subspace hu = kernel(t - identity(t.rows()), tol, kUnitScale);
  if (!subspace_equal(hcnu, complement(hu), tol)) {
    throw ConsistencyError("cnu_part: ker T ⋁ ker T* differs from (ker(T - I))^⊥");
  }
  return hcnu;
}

CanonicalDecomposition canonical_decomposition(const ProjectionPair& pair, const Tolerances& tol) {
  const ComplexMatrix t = pair.product();
  Subspace hu = unitary_part(pair, tol);
  Subspace hcnu = complement(hu);
  const ComplexMatrix& fu = hu.frame();
  const ComplexMatrix& fc = hcnu.frame();

  CanonicalDecomposition d{hu, hcnu, fu.adjoint() * t * fu, fc.adjoint() * t * fc, 0.0, 0.0};
  d.off_diagonal_norm =
      std::max(operator_norm(fu.adjoint() * t * fc), operator_norm(fc.adjoint() * t * fu));
  const Index k = hu.dim();
  d.unitarity_defect =
      k == 0 ? 0.0
             : operator_norm(d.unitary_block.adjoint() * d.unitary_block - identity(k));
  if (d.off_diagonal_norm > tol.eq) {
    throw ConsistencyError("canonical_decomposition: T is not block diagonal (off-diagonal " +
                           fmt(d.off_diagonal_norm) + ")");
  }
  if (d.unitarity_defect > kUnitaryBlockSlack * tol.eq) {
    throw ConsistencyError("canonical_decomposition: unitary block defect " +
                           fmt(d.unitarity_defect));
  }
  return d;
}

KernelDecomposition kernel_decomposition(const ProjectionPair& pair, const Tolerances& tol) {
  const Index n = pair.dim();
  const Subspace ran_p2 = orthonormal_range(pair.p2(), tol, kUnitScale);
  const Subspace ker_p1 = orthonormal_range(identity(n) - pair.p1(), tol, kUnitScale);
  const Subspace ker_p2 = orthonormal_range(identity(n) - pair.p2(), tol, kUnitScale);
  KernelDecomposition kd{intersect(ker_p1, ran_p2, tol), ker_p2};

  const double cross = kd.coupled.is_trivial() || kd.annihilated.is_trivial()
                           ? 0.0
                           : operator_norm(kd.coupled.frame().adjoint() * kd.annihilated.frame());
  if (cross > tol.eq) {
    throw ConsistencyError("kernel_decomposition: summands are not orthogonal");
  }
  const Subspace sum = join(kd.coupled, kd.annihilated, tol);
  if (!subspace_equal(sum, kernel(pair.product(), tol, kUnitScale), tol)) {
    throw ConsistencyError("kernel_decomposition: summands do not span ker(P1 P2)");
  }
  return kd;
}

}  // namespace projprod
