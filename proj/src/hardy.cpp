#include "projprod/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "projprod/errors.hpp"
#include "projprod/products.hpp"
#include "projprod/random.hpp"

namespace projprod::hardy {

namespace {

using PowerMap = std::function<ComplexMatrix(const ComplexMatrix&, std::size_t)>;

Index as_index(std::size_t n) { return static_cast<Index>(n); }

void require_order(const Subspace& s, const HardyTruncation& trunc, const char* op) {
  if (s.ambient_dim() != as_index(trunc.order)) {
    throw InputError(std::string(op) + ": subspace lives in C^" + std::to_string(s.ambient_dim()) +
                     " but the truncation order is " + std::to_string(trunc.order));
  }
}

// Closure of span{A^i X : i ≥ 0} for a nilpotent A. With K_j the span of the
// first j powers, K_{2j} = K_j + A^j K_j, and K_{2j} = K_j forces K_{j+1} = K_j.
Subspace krylov_closure(Subspace v, const PowerMap& power, const Tolerances& tol) {
  const std::size_t n = static_cast<std::size_t>(v.ambient_dim());
  if (v.is_trivial()) return v;
  for (std::size_t j = 1; j < n; j *= 2) {
    Subspace grown = extend(v, power(v.frame(), j), tol);
    if (grown.dim() == v.dim()) break;
    v = std::move(grown);
  }
  return v;
}

// Largest A-invariant subspace inside k: V ← {f ∈ V : A f ∈ V}.
Subspace invariant_part(Subspace v, const PowerMap& power, const Tolerances& tol) {
  while (!v.is_trivial()) {
    const ComplexMatrix& f = v.frame();
    const ComplexMatrix leak = residual_against(f, power(f, 1));
    const SingularDecomposition svd = singular_decomposition(leak, SingularVectors::full_v);
    const Eigen::VectorXd& sv = svd.values;
    Index r = 0;
    while (r < sv.size() && sv(r) > tol.rank) ++r;
    if (r == 0) break;
    ComplexMatrix kept = f * svd.v.rightCols(f.cols() - r);
    v = make_subspace_unchecked(std::move(kept));
  }
  return v;
}

const PowerMap kForward = [](const ComplexMatrix& f, std::size_t p) {
  return shift_columns(f, p);
};
const PowerMap kBackward = [](const ComplexMatrix& f, std::size_t p) {
  return backward_shift_columns(f, p);
};

bool use_direct(Route route, const Subspace& s) {
  if (route == Route::direct) return true;
  if (route == Route::dual) return false;
  return 2 * s.dim() <= s.ambient_dim();
}

// ‖P_{Q} F‖ for a model-space frame Q: the part of span F outside bH².
double outside_inner(const ModelSpace& q, const ComplexMatrix& f) {
  if (q.space.is_trivial() || f.cols() == 0) return 0.0;
  return operator_norm(q.space.frame().adjoint() * f);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Every divisor of b, as zero multisets built from its clusters.
std::vector<BlaschkeProduct> divisors_of(const BlaschkeProduct& b) {
  const auto clusters = cluster_zeros(b.zeros(), kDefaultZeroTol);
  std::vector<std::vector<Complex>> acc{{}};
  for (const auto& c : clusters) {
    std::vector<std::vector<Complex>> next;
    for (const auto& base : acc) {
      for (std::size_t k = 0; k <= c.multiplicity; ++k) {
        auto zs = base;
        zs.insert(zs.end(), k, c.center);
        next.push_back(std::move(zs));
      }
    }
    acc = std::move(next);
  }
  std::vector<BlaschkeProduct> out;
  out.reserve(acc.size());
  for (auto& zs : acc) out.push_back(BlaschkeProduct::make(Complex(1, 0), std::move(zs), 1.0));
  return out;
}

BlaschkeProduct sample_product(Rng& rng, const std::vector<Complex>& pool) {
  std::uniform_int_distribution<std::size_t> degree(0, 3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<Complex> zs;
  const std::size_t d = pool.empty() ? 0 : degree(rng);
  for (std::size_t i = 0; i < d; ++i) zs.push_back(pool[pick(rng)]);
  return BlaschkeProduct::make(Complex(1, 0), std::move(zs), 1.0);
}

}  // namespace

ComplexMatrix shift_matrix(std::size_t order) {
  const Index n = as_index(order);
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k + 1 < n; ++k) s(k + 1, k) = 1.0;
  return s;
}

ComplexMatrix shift_columns(const ComplexMatrix& f, std::size_t power) {
  const Index n = f.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n, f.cols());
  const Index p = as_index(power);
  if (p < n) out.bottomRows(n - p) = f.topRows(n - p);
  return out;
}

ComplexMatrix backward_shift_columns(const ComplexMatrix& f, std::size_t power) {
  const Index n = f.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n, f.cols());
  const Index p = as_index(power);
  if (p < n) out.topRows(n - p) = f.bottomRows(n - p);
  return out;
}

ComplexMatrix toeplitz_matrix(const BlaschkeProduct& b, const HardyTruncation& trunc) {
  const ComplexVector c = blaschke_taylor(b, trunc);
  const Index n = c.size();
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) t.col(j).tail(n - j) = c.head(n - j);
  return t;
}

ModelSpace model_space_frame(const BlaschkeProduct& b, const HardyTruncation& trunc,
                             const Tolerances& tol) {
  trunc.require_adequate(b);
  const Index n = as_index(trunc.order);
  const auto clusters = cluster_zeros(b.zeros(), kDefaultZeroTol);
  const Index m = as_index(b.degree());

  bool merged = false;
  const auto& zs = b.zeros();
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j) {
      const double d = std::abs(zs[i] - zs[j]);
      if (d > 0.0 && d <= kDefaultZeroTol) merged = true;
    }

  // Column for (λ, j): coefficient k is k!/(k-j)! · conj(λ)^{k-j} for k ≥ j.
  ComplexMatrix kernels = ComplexMatrix::Zero(n, m);
  Index col = 0;
  for (const auto& c : clusters) {
    const Complex lam = std::conj(c.center);
    for (std::size_t j = 0; j < c.multiplicity; ++j, ++col) {
      Complex power(1.0, 0.0);
      for (Index k = as_index(j); k < n; ++k) {
        double falling = 1.0;
        for (Index t = 0; t < as_index(j); ++t) falling *= static_cast<double>(k - t);
        kernels(k, col) = falling * power;
        power *= lam;
      }
      kernels.col(col).normalize();
    }
  }

  ModelSpace out{Subspace::trivial(n), 1.0, merged};
  if (m == 0) return out;
  const Eigen::VectorXd sv = singular_decomposition(kernels, SingularVectors::none).values;
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                          : std::numeric_limits<double>::infinity();
  out.ill_conditioned = merged || out.condition > 1e8;
  Eigen::HouseholderQR<ComplexMatrix> qr(kernels);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, m);
  out.space = make_subspace_unchecked(std::move(q));
  (void)tol;
  return out;
}

Subspace inner_subspace(const BlaschkeProduct& b, const HardyTruncation& trunc,
                        const Tolerances& tol) {
  return complement(model_space_frame(b, trunc, tol).space);
}

ComplexMatrix model_projection_matrix(const BlaschkeProduct& b, const HardyTruncation& trunc,
                                      const Tolerances& tol) {
  return projector(model_space_frame(b, trunc, tol).space);
}

double toeplitz_defect(const BlaschkeProduct& b, const HardyTruncation& trunc,
                       const Tolerances& tol) {
  const Index n = as_index(trunc.order);
  const Index lead = n - as_index(b.degree());
  const ComplexMatrix inner =
      ComplexMatrix::Identity(n, n) - model_projection_matrix(b, trunc, tol);
  const ComplexMatrix tb = toeplitz_matrix(b, trunc);
  const ComplexMatrix ttstar = tb * tb.adjoint();
  return operator_norm(inner.topLeftCorner(lead, lead) - ttstar.topLeftCorner(lead, lead));
}

ComplexMatrix inner_projection_matrix(const BlaschkeProduct& b, const HardyTruncation& trunc,
                                      const Tolerances& tol) {
  const Index n = as_index(trunc.order);
  ComplexMatrix p = ComplexMatrix::Identity(n, n) - model_projection_matrix(b, trunc, tol);
  if (const double d = toeplitz_defect(b, trunc, tol); d > trunc.tol_trunc + tol.eq) {
    throw ConsistencyError("inner projection disagrees with T_b T_b* by " + sci(d));
  }
  return p;
}

Subspace embed(const Subspace& s, std::size_t order) {
  const Index n = as_index(order);
  if (n < s.ambient_dim()) throw InputError("embed: target order is smaller than the source");
  ComplexMatrix f = ComplexMatrix::Zero(n, s.dim());
  f.topRows(s.ambient_dim()) = s.frame();
  return make_subspace_unchecked(std::move(f));
}

Subspace shift_saturation(const Subspace& s, const Tolerances& tol, Route route) {
  if (use_direct(route, s)) return krylov_closure(s, kForward, tol);
  // V is S-invariant iff V^⊥ is S*-invariant.
  return complement(invariant_part(complement(s), kBackward, tol));
}

Subspace invariant_core(const Subspace& k, const Tolerances& tol, Route route) {
  if (use_direct(route, k)) return invariant_part(k, kForward, tol);
  return complement(krylov_closure(complement(k), kBackward, tol));
}

namespace {

// Zeros of the inner function whose model space is q.
BlaschkeProduct inner_function_from_model(const Subspace& q, const HardyTruncation& trunc) {
  const Index m = q.dim();
  if (m == 0) return BlaschkeProduct();
  if (2 * static_cast<std::size_t>(m) > trunc.order) {
    throw TruncationError("recovered inner function has degree " + std::to_string(m) +
                              ", more than half the truncation order",
                          2 * trunc.order);
  }
  const ComplexMatrix compressed = q.frame().adjoint() * shift_columns(q.frame(), 1);
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(compressed, false);
  std::vector<Complex> raw(eig.eigenvalues().data(), eig.eigenvalues().data() + m);

  std::vector<Complex> zeros;
  for (const auto& c : cluster_zeros(raw, kRecoveredZeroCluster)) {
    zeros.insert(zeros.end(), c.multiplicity, c.center);
  }
  for (const Complex& z : zeros) {
    if (!(std::abs(z) < 1.0)) {
      throw TruncationError("recovered zero " + sci(std::abs(z)) + " lies outside the disc",
                            2 * trunc.order);
    }
  }
  std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  BlaschkeProduct b = BlaschkeProduct::make(Complex(1, 0), std::move(zeros), 1.0);
  trunc.require_adequate(b);
  return b;
}

// V^⊥ for the smallest invariant V ⊇ s; s_perp = s^⊥ if already known.
Subspace saturation_complement(const Subspace& s, const Subspace* s_perp, const Tolerances& tol) {
  if (use_direct(Route::automatic, s)) return complement(krylov_closure(s, kForward, tol));
  return invariant_part(s_perp != nullptr ? *s_perp : complement(s), kBackward, tol);
}

// s^⊥ inside C^finer for s ⊆ C^N ⊆ C^finer.
Subspace padded_complement(const Subspace& s_perp, std::size_t finer) {
  const Index n = s_perp.ambient_dim();
  const Index extra = as_index(finer) - n;
  ComplexMatrix f = ComplexMatrix::Zero(as_index(finer), s_perp.dim() + extra);
  f.topLeftCorner(n, s_perp.dim()) = s_perp.frame();
  f.bottomRightCorner(extra, extra).setIdentity();
  return make_subspace_unchecked(std::move(f));
}

}  // namespace

BlaschkeProduct inner_function_of(const Subspace& invariant, const HardyTruncation& trunc,
                                  const Tolerances& tol) {
  require_order(invariant, trunc, "inner_function_of");
  (void)tol;
  return inner_function_from_model(complement(invariant), trunc);
}

namespace {

BeurlingFit beurling_fit(const Subspace& s, const Subspace* s_perp, const HardyTruncation& trunc,
                         const Tolerances& tol) {
  require_order(s, trunc, "smallest_beurling_containing");
  if (s.is_trivial()) throw InputError("smallest_beurling_containing: subspace is trivial");

  std::optional<Subspace> own_perp;
  if (s_perp == nullptr && !use_direct(Route::automatic, s)) {
    own_perp = complement(s);
    s_perp = &*own_perp;
  }
  const Subspace q_v = saturation_complement(s, s_perp, tol);
  BlaschkeProduct phi = inner_function_from_model(q_v, trunc);

  // The codimension must not move when the truncation grows by deg φ.
  const std::size_t m = phi.degree();
  const std::size_t finer = trunc.order + std::max<std::size_t>(m, 1);
  const Subspace fine = embed(s, finer);
  std::optional<Subspace> fine_perp;
  if (s_perp != nullptr) fine_perp = padded_complement(*s_perp, finer);
  const std::size_t codim_fine = static_cast<std::size_t>(
      saturation_complement(fine, fine_perp ? &*fine_perp : nullptr, tol).dim());
  if (codim_fine != m) {
    throw TruncationError("Beurling codimension changed from " + std::to_string(m) + " to " +
                              std::to_string(codim_fine) + " under refinement",
                          2 * trunc.order);
  }

  const ModelSpace q = model_space_frame(phi, trunc, tol);
  if (const double out = outside_inner(q, s.frame()); out > tol.eq) {
    throw ConsistencyError("subspace is not inside the recovered φH² (defect " + sci(out) + ")");
  }

  // No proper multiple φ·b_α may still contain s.
  std::vector<Complex> probes{Complex(0, 0), Complex(0.5, 0), Complex(-0.5, 0), Complex(0, 0.5),
                              Complex(0, -0.5)};
  for (const auto& c : cluster_zeros(phi.zeros(), kDefaultZeroTol)) probes.push_back(c.center);
  for (const Complex& alpha : probes) {
    const BlaschkeProduct bigger =
        blaschke_multiply(phi, BlaschkeProduct::make(Complex(1, 0), {alpha}, 1.0));
    if (bigger.degree() * 2 > trunc.order) continue;
    const ModelSpace qb = model_space_frame(bigger, trunc, tol);
    if (outside_inner(qb, s.frame()) <= tol.eq) {
      throw ConsistencyError("subspace also fits inside a proper multiple of the recovered φ");
    }
  }
  return {std::move(phi), complement(q_v)};
}

}  // namespace

BeurlingFit smallest_beurling_containing(const Subspace& s, const HardyTruncation& trunc,
                                         const Tolerances& tol) {
  return beurling_fit(s, nullptr, trunc, tol);
}

BeurlingFit smallest_beurling_containing(const Subspace& s, const Subspace& s_perp,
                                         const HardyTruncation& trunc, const Tolerances& tol) {
  require_order(s_perp, trunc, "smallest_beurling_containing");
  if (s.dim() + s_perp.dim() != s.ambient_dim()) {
    throw InputError("smallest_beurling_containing: complement has the wrong dimension");
  }
  return beurling_fit(s, &s_perp, trunc, tol);
}

BeurlingFit largest_invariant_inside(const Subspace& k, const HardyTruncation& trunc,
                                     const Tolerances& tol, const BlaschkeProduct* reference) {
  require_order(k, trunc, "largest_invariant_inside");
  Subspace v = invariant_core(k, tol);
  if (v.is_trivial()) {
    throw EmptyInvariantFamily("J_T empty: no nonzero shift-invariant subspace fits inside");
  }
  BlaschkeProduct psi = inner_function_of(v, trunc, tol);

  // ψH² ⊆ k  ⇔  k^⊥ ⊆ Q_ψ.
  const Subspace k_perp = complement(k);
  const ModelSpace q = model_space_frame(psi, trunc, tol);
  const double leak = operator_norm(residual_against(q.space.frame(), k_perp.frame()));
  if (leak > tol.eq) {
    throw ConsistencyError("recovered ψH² is not inside the subspace (defect " + sci(leak) + ")");
  }

  if (reference != nullptr) {
    for (const BlaschkeProduct& d : divisors_of(*reference)) {
      if (2 * d.degree() > trunc.order) continue;
      const ModelSpace qd = model_space_frame(d, trunc, tol);
      const bool fits = operator_norm(residual_against(qd.space.frame(), k_perp.frame())) <= tol.eq;
      if (fits && !divides(psi, d, kRecoveredZeroCluster)) {
        throw ConsistencyError("an invariant subspace inside k is not divisible by the recovered ψ");
      }
    }
  }
  return {std::move(psi), std::move(v)};
}

InnerPair InnerPair::make(BlaschkeProduct phi1, BlaschkeProduct phi2, HardyTruncation trunc) {
  trunc.require_adequate(phi1);
  trunc.require_adequate(phi2);
  return InnerPair{std::move(phi1), std::move(phi2), trunc};
}

InnerProductReport inner_product_check(const ComplexMatrix& t, const HardyTruncation& trunc,
                                       const Tolerances& tol) {
  require_square(t, "inner_product_check");
  require_finite(t, "inner_product_check");
  if (t.rows() != as_index(trunc.order)) {
    throw InputError("inner_product_check: operator size differs from the truncation order");
  }
  const ComplexMatrix ts = t.adjoint();
  const FundamentalSubspaces sub = fundamental_subspaces(t, tol, kUnitScale);
  if (sub.range.is_trivial()) throw InputError("inner_product_check: operator is zero");

  InnerProductReport r;
  r.truncation = trunc.order;
  r.phi_t = smallest_beurling_containing(sub.range, sub.cokernel, trunc, tol).inner;
  r.phi_t_adj = smallest_beurling_containing(sub.adjoint_range, sub.kernel, trunc, tol).inner;

  const ModelSpace q_left = model_space_frame(r.phi_t, trunc, tol);
  const ModelSpace q_right = model_space_frame(r.phi_t_adj, trunc, tol);
  const Index n = t.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix p_left = id - projector(q_left.space);
  const ComplexMatrix p_right = id - projector(q_right.space);

  r.factorization_residual = operator_norm(t - p_left * p_right);
  r.range_adjoint_residual = operator_norm(t * ts - p_left * ts);
  const Subspace expected_kernel =
      join(intersect(q_left.space, complement(q_right.space), tol), q_right.space, tol);
  r.kernel_residual = subspace_distance(sub.kernel, expected_kernel);
  r.passed = r.factorization_residual <= tol.eq && r.range_adjoint_residual <= tol.eq &&
             r.kernel_residual <= tol.eq;
  return r;
}

InnerProductReport product_inner_check(const InnerPair& pair, const Tolerances& tol) {
  ComplexMatrix p1 = inner_projection_matrix(pair.phi1, pair.trunc, tol);
  ComplexMatrix p2 = inner_projection_matrix(pair.phi2, pair.trunc, tol);
  InnerProductReport r = inner_product_check(p1 * p2, pair.trunc, tol);

  const ProjectionPair projections = ProjectionPair::make(std::move(p1), std::move(p2), tol);
  const Subspace hu = unitary_part(projections, tol);
  r.unitary_dim = static_cast<std::size_t>(hu.dim());
  r.lcm = blaschke_lcm(pair.phi1, pair.phi2);
  r.unitary_lcm_residual = subspace_distance(hu, inner_subspace(r.lcm, pair.trunc, tol));
  r.passed = r.passed && r.unitary_lcm_residual <= tol.eq;
  return r;
}

namespace {

ModelProductReport model_check_impl(const ComplexMatrix& t, const HardyTruncation& trunc,
                                    const Tolerances& tol, const BlaschkeProduct* ref_left,
                                    const BlaschkeProduct* ref_right) {
  require_square(t, "model_product_check");
  require_finite(t, "model_product_check");
  if (t.rows() != as_index(trunc.order)) {
    throw InputError("model_product_check: operator size differs from the truncation order");
  }
  ModelProductReport r;
  r.truncation = trunc.order;
  const ComplexMatrix ts = t.adjoint();
  const Subspace ker = kernel(t, tol, kUnitScale);
  const Subspace ker_adj = kernel(ts, tol, kUnitScale);

  try {
    r.psi_t = largest_invariant_inside(ker_adj, trunc, tol, ref_left).inner;
  } catch (const EmptyInvariantFamily&) {
    r.family_empty = true;
    r.classification = "not a product of two model projections: J_T is empty";
    return r;
  }
  try {
    r.psi_t_adj = largest_invariant_inside(ker, trunc, tol, ref_right).inner;
  } catch (const EmptyInvariantFamily&) {
    r.family_empty = true;
    r.classification = "not a product of two model projections: J_T* is empty";
    return r;
  }

  const ModelSpace q_left = model_space_frame(*r.psi_t, trunc, tol);
  const ModelSpace q_right = model_space_frame(*r.psi_t_adj, trunc, tol);
  const ComplexMatrix p_left = projector(q_left.space);
  const ComplexMatrix p_right = projector(q_right.space);
  r.factorization_residual = operator_norm(t - p_left * p_right);
  r.range_adjoint_residual = operator_norm(t * ts - p_left * ts);
  const Subspace expected_kernel =
      join(intersect(q_right.space, complement(q_left.space), tol), complement(q_right.space), tol);
  r.kernel_residual = subspace_distance(ker, expected_kernel);
  r.is_model_product = r.factorization_residual <= tol.eq &&
                       r.range_adjoint_residual <= tol.eq && r.kernel_residual <= tol.eq;
  r.classification = r.is_model_product ? "product of two model projections"
                                        : "not a product of two model projections";
  return r;
}

}  // namespace

ModelProductReport model_product_check(const ComplexMatrix& t, const HardyTruncation& trunc,
                                       const Tolerances& tol) {
  return model_check_impl(t, trunc, tol, nullptr, nullptr);
}

ModelProductReport product_model_check(const InnerPair& pair, const Tolerances& tol) {
  const ComplexMatrix p1 = model_projection_matrix(pair.phi1, pair.trunc, tol);
  const ComplexMatrix p2 = model_projection_matrix(pair.phi2, pair.trunc, tol);
  // φ1 ∈ J_T and φ2 ∈ J_T*: both serve as divisor-lattice references.
  return model_check_impl(p1 * p2, pair.trunc, tol, &pair.phi1, &pair.phi2);
}

Subspace model_inner_intersection(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                  const HardyTruncation& trunc, const Tolerances& tol) {
  return intersect(model_space_frame(b1, trunc, tol).space, inner_subspace(b2, trunc, tol), tol);
}

std::size_t intersection_dimension(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                   const HardyTruncation& trunc, const Tolerances& tol) {
  const std::size_t dim =
      static_cast<std::size_t>(model_inner_intersection(b1, b2, trunc, tol).dim());
  if ((dim == 0) != (b1.degree() <= b2.degree())) {
    throw ConsistencyError("Q_b1 ∩ b2H² has dimension " + std::to_string(dim) + " with deg b1 = " +
                           std::to_string(b1.degree()) + ", deg b2 = " +
                           std::to_string(b2.degree()));
  }
  return dim;
}

MismatchReport mismatched_range_verifier(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                         std::size_t trials,
                                         const std::vector<Complex>& zero_pool,
                                         std::uint64_t seed, const HardyTruncation& trunc,
                                         const Tolerances& tol) {
  if (b1.degree() == b2.degree()) {
    throw InputError("mismatched_range_verifier: the two products must have different degrees");
  }
  trunc.require_adequate(b1);
  trunc.require_adequate(b2);
  const ModelSpace q1 = model_space_frame(b1, trunc, tol);
  const ModelSpace q2 = model_space_frame(b2, trunc, tol);

  MismatchReport report;
  report.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    // A third of the draws pin one factor to the target, where a match would
    // have to come from.
    std::uniform_int_distribution<int> mode(0, 2);
    BlaschkeProduct a = mode(rng) == 0 ? b1 : sample_product(rng, zero_pool);
    BlaschkeProduct b = mode(rng) == 0 ? b2 : sample_product(rng, zero_pool);
    trunc.require_adequate(a);
    trunc.require_adequate(b);
    const ComplexMatrix t = inner_projection_matrix(a, trunc, tol) *
                            inner_projection_matrix(b, trunc, tol);
    // cl ran T = b1H²  ⇔  ker T* = Q_b1.
    const double d1 = subspace_distance(kernel(t.adjoint(), tol, kUnitScale), q1.space);
    const double d2 = subspace_distance(kernel(t, tol, kUnitScale), q2.space);
    const bool hit1 = d1 <= tol.eq;
    const bool hit2 = d2 <= tol.eq;
    if (hit1 && hit2) ++report.counterexamples;
    if (hit1 != hit2) report.near_misses.push_back({std::move(a), std::move(b), d1, d2});
  }
  return report;
}

KernelDivisorReport kernel_inner_divisor_check(const InnerPair& pair,
                                               const std::vector<BlaschkeProduct>& candidates,
                                               const Tolerances& tol) {
  if (pair.phi1.is_constant()) {
    throw InputError("kernel_inner_divisor_check: the left inner function must be nonconstant");
  }
  const ComplexMatrix t = inner_projection_matrix(pair.phi1, pair.trunc, tol) *
                          inner_projection_matrix(pair.phi2, pair.trunc, tol);
  const Subspace ker = kernel(t, tol, kUnitScale);
  KernelDivisorReport r;
  r.kernel_dim = static_cast<std::size_t>(ker.dim());
  r.operator_is_zero = operator_norm(t) <= tol.eq;

  bool any_contained = false;
  for (const BlaschkeProduct& phi : candidates) {
    if (phi.is_constant()) {
      throw InputError("kernel_inner_divisor_check: candidates must be nonconstant");
    }
    const ModelSpace q = model_space_frame(phi, pair.trunc, tol);
    DivisorCheck check{phi, outside_inner(q, ker.frame()), false};
    check.contained = check.outside_norm <= tol.eq;
    any_contained = any_contained || check.contained;
    r.candidates.push_back(std::move(check));
  }
  r.shift_defect =
      ker.is_trivial() ? 0.0 : operator_norm(residual_against(ker.frame(), shift_columns(ker.frame(), 1)));
  r.kernel_shift_invariant = r.shift_defect <= tol.eq;
  r.passed = !any_contained && (r.operator_is_zero || !r.kernel_shift_invariant);
  return r;
}

}  // namespace projprod::hardy
