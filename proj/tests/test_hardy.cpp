#include <doctest.h>

#include <cmath>

#include "projprod/errors.hpp"
#include "projprod/hardy.hpp"
#include "projprod/products.hpp"
#include "projprod/random.hpp"
#include "support.hpp"

using namespace projprod;
using namespace projprod::hardy;
using namespace testing;
using namespace std::complex_literals;

namespace {

const Tolerances tol;

BlaschkeProduct z_pow(std::size_t k) { return BlaschkeProduct::from_zeros(std::vector<Complex>(k, 0.0)); }
BlaschkeProduct b(std::vector<Complex> zeros) { return BlaschkeProduct::from_zeros(std::move(zeros)); }
const BlaschkeProduct kHalf = b({0.5});
const BlaschkeProduct kZHalf = b({0.0, 0.5});

bool recovered(const BlaschkeProduct& got, const std::vector<Complex>& zeros) {
  return zeros_match(got.zeros(), zeros, 1e-6);
}

// The Cauchy kernel at λ truncated to N: coefficients conj(λ)^k.
ComplexVector cauchy(Complex lambda, Index n) {
  ComplexVector k(n);
  Complex p = 1.0;
  for (Index i = 0; i < n; ++i, p *= std::conj(lambda)) k(i) = p;
  return k;
}

}  // namespace

TEST_CASE("shift and Toeplitz matrices") {
  const ComplexMatrix s = shift_matrix(4);
  CHECK(max_abs_diff(s * basis(4, 1), basis(4, 2)) == 0.0);
  CHECK((s * basis(4, 3)).isZero());
  Rng rng = trial_rng(1, 0);
  const ComplexMatrix f = random_gaussian(rng, 6, 2);
  CHECK(max_abs_diff(shift_columns(f, 2), shift_matrix(6) * shift_matrix(6) * f) == 0.0);
  CHECK(max_abs_diff(backward_shift_columns(f, 1), shift_matrix(6).adjoint() * f) == 0.0);
  // T_z is the shift itself
  CHECK(max_abs_diff(toeplitz_matrix(z_pow(1), HardyTruncation{8}), shift_matrix(8)) == 0.0);
}

TEST_CASE("model_space_frame examples") {
  const HardyTruncation trunc{64};
  const ModelSpace qz = model_space_frame(z_pow(1), trunc, tol);
  CHECK(subspace_equal(qz.space, span({basis(64, 0)}, 64), tol));
  const ModelSpace qz2 = model_space_frame(z_pow(2), trunc, tol);
  CHECK(subspace_equal(qz2.space, span({basis(64, 0), basis(64, 1)}, 64), tol));
  const ModelSpace qh = model_space_frame(kHalf, trunc, tol);
  CHECK(subspace_equal(qh.space, span({cauchy(0.5, 64)}, 64), tol));
  CHECK_FALSE(qh.ill_conditioned);
  CHECK(model_space_frame(BlaschkeProduct(), trunc, tol).space.is_trivial());
  CHECK(model_space_frame(b({0.3, 0.3 + 1e-9}), trunc, tol).ill_conditioned);
}

TEST_CASE("inner and model projection examples") {
  const HardyTruncation trunc{64};
  const ComplexMatrix pz = inner_projection_matrix(z_pow(1), trunc, tol);
  ComplexMatrix expected = ComplexMatrix::Identity(64, 64);
  expected(0, 0) = 0.0;
  CHECK(max_abs_diff(pz, expected) < 1e-15);
  CHECK(max_abs_diff(inner_projection_matrix(BlaschkeProduct(), trunc, tol),
                     ComplexMatrix::Identity(64, 64)) == 0.0);

  // I - k k*/‖k‖² with ‖k‖² = Σ 4^{-i} → 4/3
  const ComplexVector k = cauchy(0.5, 64);
  CHECK(k.squaredNorm() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  const ComplexMatrix ph = inner_projection_matrix(kHalf, trunc, tol);
  CHECK(max_abs_diff(ph, ComplexMatrix::Identity(64, 64) - k * k.adjoint() * 0.75) < 1e-12);
  CHECK(max_abs_diff(ph + model_projection_matrix(kHalf, trunc, tol),
                     ComplexMatrix::Identity(64, 64)) < 1e-15);
}

TEST_CASE("inner projections match the Toeplitz product on the leading block") {
  const HardyTruncation trunc{128};
  for (const BlaschkeProduct& p : {z_pow(1), z_pow(3), kHalf, b({0.3 + 0.4i, -0.6}),
                                   b({0.8 * std::polar(1.0, M_PI / 3), -0.3, 0.2 - 0.5i})}) {
    CHECK(toeplitz_defect(p, trunc, tol) <= 1e-12);
    const ComplexMatrix inner = inner_projection_matrix(p, trunc, tol);
    CHECK(projection_defect(inner) <= 1e-10);
    CHECK(model_space_frame(p, trunc, tol).space.dim() == static_cast<Index>(p.degree()));
  }
}

TEST_CASE("zero recovery from an invariant subspace") {
  const HardyTruncation trunc{64};
  CHECK(recovered(inner_function_of(inner_subspace(z_pow(2), trunc, tol), trunc, tol), {0.0, 0.0}));
  CHECK(recovered(inner_function_of(inner_subspace(kHalf, trunc, tol), trunc, tol), {0.5}));
  const BlaschkeProduct three = b({0.3 + 0.4i, -0.6, 0.2 - 0.5i});
  CHECK(recovered(inner_function_of(inner_subspace(three, trunc, tol), trunc, tol), three.zeros()));
  CHECK(inner_function_of(Subspace::full(64), trunc, tol).is_constant());
  CHECK_THROWS_AS(inner_function_of(Subspace::full(32), trunc, tol), InputError);
}

TEST_CASE("smallest_beurling_containing examples") {
  const HardyTruncation trunc{64};
  const ComplexMatrix t =
      inner_projection_matrix(z_pow(1), trunc, tol) * inner_projection_matrix(kHalf, trunc, tol);
  const BeurlingFit fit = smallest_beurling_containing(orthonormal_range(t, tol, kUnitScale), trunc, tol);
  CHECK(recovered(fit.inner, {0.0}));
  CHECK(subspace_equal(fit.invariant, inner_subspace(z_pow(1), trunc, tol), tol));

  CHECK(recovered(smallest_beurling_containing(span({basis(64, 2)}, 64), trunc, tol).inner, {0.0, 0.0}));
  CHECK(smallest_beurling_containing(span({basis(64, 0)}, 64), trunc, tol).inner.is_constant());
  CHECK_THROWS_AS(smallest_beurling_containing(Subspace::trivial(64), trunc, tol), InputError);
}

TEST_CASE("smallest_beurling_containing: s ⊆ φH² for every fitted φ") {
  const HardyTruncation trunc{64};
  // z b_{1/2} times two coprime polynomials saturates to z b_{1/2} H².
  const ComplexMatrix tb = toeplitz_matrix(kZHalf, trunc);
  const Subspace s = span({ComplexVector(tb * basis(64, 0)), ComplexVector(tb * (basis(64, 1) + basis(64, 3)))}, 64);
  const BeurlingFit fit = smallest_beurling_containing(s, trunc, tol);
  CHECK(recovered(fit.inner, {0.0, 0.5}));
  CHECK(contains(fit.invariant, s, tol));
}

TEST_CASE("largest_invariant_inside examples") {
  const HardyTruncation trunc{64};
  CHECK(recovered(largest_invariant_inside(inner_subspace(z_pow(2), trunc, tol), trunc, tol).inner,
                  {0.0, 0.0}));
  CHECK_THROWS_AS(largest_invariant_inside(span({basis(64, 0)}, 64), trunc, tol), EmptyInvariantFamily);

  const HardyTruncation big{128};
  const ComplexMatrix t =
      model_projection_matrix(z_pow(2), big, tol) * model_projection_matrix(kZHalf, big, tol);
  const Subspace ker_adj = kernel(t.adjoint(), tol, kUnitScale);
  const BlaschkeProduct ref = z_pow(2);
  const BeurlingFit fit = largest_invariant_inside(ker_adj, big, tol, &ref);
  CHECK(recovered(fit.inner, {0.0, 0.0}));
}

TEST_CASE("largest_invariant_inside matches a brute-force saturation") {
  // Brute force: the invariant core as the intersection of z^{-j}K over all j,
  // computed with plain matrix kernels.
  const Index n = 48;
  const HardyTruncation trunc{static_cast<std::size_t>(n)};
  const Subspace k = join(inner_subspace(b({0.0, -0.4i}), trunc, tol), span({basis(n, 0)}, n), tol);
  const ComplexMatrix leak = ComplexMatrix::Identity(n, n) - projector(k);
  ComplexMatrix stacked(0, n);
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  for (Index j = 0; j < n; ++j) {
    ComplexMatrix next(stacked.rows() + n, n);
    next << stacked, leak * power;
    stacked = next;
    power = (shift_matrix(static_cast<std::size_t>(n)) * power).eval();
  }
  const Subspace oracle = kernel(stacked, tol, kUnitScale);
  const BeurlingFit fit = largest_invariant_inside(k, trunc, tol);
  CHECK(subspace_equal(fit.invariant, oracle, tol));
  CHECK(recovered(fit.inner, {0.0, -0.4i}));
}

TEST_CASE("direct and dual routes agree") {
  const HardyTruncation trunc{40};
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng = trial_rng(17, i);
    const Index d = 1 + static_cast<Index>(i % 5);
    // Cubics 1 + q(z) with Σ|q_k| ≤ 1/2 have no zeros in the closed disc, so
    // b·f saturates to bH² and the truncation stays adequate.
    ComplexMatrix f = ComplexMatrix::Zero(40, d);
    f.row(0).setOnes();
    for (Index c = 0; c < d; ++c) {
      const ComplexVector q = random_gaussian(rng, 3, 1);
      f.col(c).segment(1, 3) = 0.5 * q / q.cwiseAbs().sum();
    }
    const Subspace tb = orthonormal_range(toeplitz_matrix(b({0.3i}), trunc) * f, tol);
    CAPTURE(i);
    CHECK(subspace_equal(shift_saturation(tb, tol, Route::direct), shift_saturation(tb, tol, Route::dual),
                         tol));
    const Subspace k = join(inner_subspace(b({0.0, 0.5}), trunc, tol), orthonormal_range(f, tol), tol);
    CHECK(subspace_equal(invariant_core(k, tol, Route::direct), invariant_core(k, tol, Route::dual), tol));
  }
}

TEST_CASE("intersection_dimension examples") {
  const HardyTruncation trunc{64};
  CHECK(intersection_dimension(z_pow(1), kHalf, trunc, tol) == 0);
  CHECK(intersection_dimension(z_pow(2), kHalf, trunc, tol) == 1);
  CHECK(intersection_dimension(z_pow(1), z_pow(2), trunc, tol) == 0);
  // a + b z ∈ b_{1/2}H² iff a + b/2 = 0
  ComplexVector w = ComplexVector::Zero(64);
  w(0) = -0.5;
  w(1) = 1.0;
  CHECK(subspace_equal(model_inner_intersection(z_pow(2), kHalf, trunc, tol), span({w}, 64), tol));
}

TEST_CASE("mismatched_range_verifier examples") {
  const HardyTruncation trunc{64};
  const std::vector<Complex> pool{0.0, 0.5, -0.3, 0.4i};
  const MismatchReport r = mismatched_range_verifier(z_pow(1), z_pow(2), 40, pool, 3, trunc, tol);
  CHECK(r.trials == 40);
  CHECK(r.counterexamples == 0);
  CHECK_THROWS_AS(mismatched_range_verifier(z_pow(1), z_pow(1), 1, pool, 3, trunc, tol), InputError);
  const MismatchReport r2 = mismatched_range_verifier(kZHalf, z_pow(1), 100, pool, 4, trunc, tol);
  CHECK(r2.counterexamples == 0);
  CHECK_FALSE(r2.near_misses.empty());
}

TEST_CASE("kernel_inner_divisor_check examples") {
  const HardyTruncation trunc{64};
  const KernelDivisorReport r =
      kernel_inner_divisor_check(InnerPair::make(z_pow(1), kHalf, trunc), {z_pow(1), kHalf}, tol);
  CHECK(r.passed);
  CHECK_FALSE(r.candidates[0].contained);
  // k_{1/2}(0) = 1 after normalization by ‖k‖ = 2/√3
  CHECK(r.candidates[0].outside_norm >= std::sqrt(0.75) - 1e-9);
  CHECK_FALSE(r.kernel_shift_invariant);

  CHECK_THROWS_AS(kernel_inner_divisor_check(InnerPair::make(z_pow(1), kHalf, trunc), {BlaschkeProduct()}, tol),
                  InputError);

  const KernelDivisorReport same =
      kernel_inner_divisor_check(InnerPair::make(z_pow(1), z_pow(1), trunc), {z_pow(1), kHalf}, tol);
  CHECK(same.passed);
  CHECK(same.kernel_dim == 1);
  CHECK_FALSE(same.kernel_shift_invariant);
}

TEST_CASE("product_inner_check examples") {
  const HardyTruncation trunc{128};
  const InnerProductReport r = product_inner_check(InnerPair::make(z_pow(1), kHalf, trunc), tol);
  CHECK(r.passed);
  CHECK(recovered(r.phi_t, {0.0}));
  CHECK(recovered(r.phi_t_adj, {0.5}));
  CHECK(r.factorization_residual <= 1e-8);
  CHECK(r.range_adjoint_residual <= 1e-8);
  CHECK(r.kernel_residual <= 1e-8);
  CHECK(r.unitary_dim == 126);

  const InnerProductReport same = product_inner_check(InnerPair::make(z_pow(1), z_pow(1), trunc), tol);
  CHECK(same.passed);
  CHECK(recovered(same.phi_t, {0.0}));
  CHECK(recovered(same.phi_t_adj, {0.0}));
  CHECK(same.unitary_dim == 127);

  const InnerProductReport nested = product_inner_check(InnerPair::make(z_pow(2), z_pow(1), trunc), tol);
  CHECK(nested.passed);
  CHECK(recovered(nested.phi_t, {0.0, 0.0}));
  CHECK(nested.unitary_dim == 126);
}

TEST_CASE("product_model_check examples") {
  const HardyTruncation trunc{128};
  const ModelProductReport r = product_model_check(InnerPair::make(z_pow(2), kZHalf, trunc), tol);
  CHECK(r.is_model_product);
  REQUIRE(r.psi_t.has_value());
  CHECK(recovered(*r.psi_t, {0.0, 0.0}));
  CHECK(r.factorization_residual <= 1e-6);

  const ModelProductReport same = product_model_check(InnerPair::make(z_pow(1), z_pow(1), trunc), tol);
  CHECK(same.is_model_product);
  CHECK(recovered(*same.psi_t, {0.0}));
  CHECK(recovered(*same.psi_t_adj, {0.0}));

  // T = I has ker T* = {0}: no inner φ with φH² inside it.
  const ModelProductReport identity = model_product_check(ComplexMatrix::Identity(128, 128), trunc, tol);
  CHECK(identity.family_empty);
  CHECK_FALSE(identity.is_model_product);
}

TEST_CASE("property: divisibility is containment of Beurling subspaces") {
  const HardyTruncation trunc{48};
  const std::vector<Complex> pool{0.0, 0.5, -0.4i, 0.3 + 0.3i};
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = trial_rng(91, i);
    auto draw = [&] {
      std::uniform_int_distribution<std::size_t> len(0, 3);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::vector<Complex> zs(len(rng));
      for (auto& z : zs) z = pool[pick(rng)];
      return b(zs);
    };
    const BlaschkeProduct b1 = draw();
    const BlaschkeProduct b2 = draw();
    CAPTURE(i);
    const Subspace q1 = model_space_frame(b1, trunc, tol).space;
    const Subspace q2 = model_space_frame(b2, trunc, tol).space;
    const bool inner_contained = contains(inner_subspace(b1, trunc, tol), inner_subspace(b2, trunc, tol), tol);
    CHECK(divides(b1, b2) == inner_contained);
    CHECK(divides(b1, b2) == contains(q2, q1, tol));
    // P_{b2H²} ≤ P_{b1H²} exactly when the difference is positive semidefinite
    const ComplexMatrix diff = inner_projection_matrix(b1, trunc, tol) - inner_projection_matrix(b2, trunc, tol);
    CHECK(divides(b1, b2) == (hermitian_eigen(diff).values.minCoeff() >= -1e-9));

    // b1H² ∩ b2H² = lcm(b1, b2)H²
    const Subspace meet = intersect(inner_subspace(b1, trunc, tol), inner_subspace(b2, trunc, tol), tol);
    CHECK(subspace_distance(meet, inner_subspace(blaschke_lcm(b1, b2), trunc, tol)) <= 1e-8);
  }
}
