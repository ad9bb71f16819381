#pragma once

// H²(D) truncated to span{z^0, ..., z^{N-1}}: model and inner subspaces of
// finite Blaschke products, Beurling subspaces generated by (or contained in)
// a given subspace, and the checks that relate products of inner / model
// projections to those inner functions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projprod/blaschke.hpp"
#include "projprod/hilbert.hpp"

namespace projprod::hardy {

/// Recovered compressed-shift eigenvalues closer than this are one zero of
/// higher multiplicity (a perturbed Jordan block of size s splits by ~eps^{1/s}).
inline constexpr double kRecoveredZeroCluster = 1e-4;

/// Forward shift f ↦ z f on C^N; the coefficient of z^{N-1} falls off.
ComplexMatrix shift_matrix(std::size_t order);

/// Applies the truncated shift `power` times to each column (rows move down).
ComplexMatrix shift_columns(const ComplexMatrix& f, std::size_t power);
/// Applies the backward shift (adjoint of the truncated shift) `power` times.
ComplexMatrix backward_shift_columns(const ComplexMatrix& f, std::size_t power);

/// Lower-triangular truncated Toeplitz matrix of multiplication by b.
ComplexMatrix toeplitz_matrix(const BlaschkeProduct& b, const HardyTruncation& trunc);

struct ModelSpace {
  Subspace space;               ///< orthonormal frame of Q_b (dimension = degree of b)
  double condition = 1.0;       ///< condition number of the normalized kernel set
  bool ill_conditioned = false; ///< distinct zeros merged or condition above 1e8
};

/// Q_b = (bH²)^⊥, spanned by the truncated reproducing kernels k_λ and, for a
/// zero of multiplicity s, the derivative kernels (d/dλ̄)^j k_λ, j < s.
ModelSpace model_space_frame(const BlaschkeProduct& b, const HardyTruncation& trunc,
                             const Tolerances& tol);

/// bH² ∩ C^N, the orthogonal complement of the model space.
Subspace inner_subspace(const BlaschkeProduct& b, const HardyTruncation& trunc,
                        const Tolerances& tol);

ComplexMatrix model_projection_matrix(const BlaschkeProduct& b, const HardyTruncation& trunc,
                                      const Tolerances& tol);

/// I - P_{Q_b}. Throws ConsistencyError if it disagrees with T_b T_b* on the
/// leading (N - m) block by more than tol_trunc + tol.eq.
ComplexMatrix inner_projection_matrix(const BlaschkeProduct& b, const HardyTruncation& trunc,
                                      const Tolerances& tol);

/// ‖(I - P_{Q_b}) - T_b T_b*‖ restricted to the leading (N - m) block.
double toeplitz_defect(const BlaschkeProduct& b, const HardyTruncation& trunc,
                       const Tolerances& tol);

/// Pads a frame living in C^N with zero rows to C^{order}.
Subspace embed(const Subspace& s, std::size_t order);

enum class Route {
  automatic,  ///< whichever side (subspace or complement) is smaller
  direct,     ///< work on the subspace with the forward shift
  dual,       ///< work on the complement with the backward shift
};

/// Smallest shift-invariant subspace containing `s`: the closure of
/// s ⋁ z s ⋁ z² s ⋁ ..., saturated by doubling the shift power.
Subspace shift_saturation(const Subspace& s, const Tolerances& tol, Route route = Route::automatic);

/// Largest shift-invariant subspace inside `k`: V ← V ∩ {f : z f ∈ V} until stable.
Subspace invariant_core(const Subspace& k, const Tolerances& tol, Route route = Route::automatic);

/// Zeros of the inner function of a shift-invariant V = φH² (truncated):
/// eigenvalues of the shift compressed to V^⊥. Constant normalized to 1.
BlaschkeProduct inner_function_of(const Subspace& invariant, const HardyTruncation& trunc,
                                  const Tolerances& tol);

struct BeurlingFit {
  BlaschkeProduct inner;
  Subspace invariant;  ///< the computed φH² ∩ C^N
};

/// φ with φH² the smallest Beurling subspace containing `s` (the lcm of every
/// inner φ with s ⊆ φH²). Checks s ⊆ φH², that no single-zero augmentation
/// of φ still contains s, and that the codimension is unchanged when the
/// truncation grows by the degree of φ.
BeurlingFit smallest_beurling_containing(const Subspace& s, const HardyTruncation& trunc,
                                         const Tolerances& tol);
/// Same, with s^⊥ supplied (saves recomputing it when s is large).
BeurlingFit smallest_beurling_containing(const Subspace& s, const Subspace& s_perp,
                                         const HardyTruncation& trunc, const Tolerances& tol);

/// ψ with ψH² the largest shift-invariant subspace inside `k` (the gcd of the
/// inner φ with φH² ⊆ k). Throws EmptyInvariantFamily when there is none.
/// If `reference` is given, every divisor d of it with dH² ⊆ k is checked to
/// be divisible by ψ.
BeurlingFit largest_invariant_inside(const Subspace& k, const HardyTruncation& trunc,
                                     const Tolerances& tol,
                                     const BlaschkeProduct* reference = nullptr);

/// Two Blaschke products sharing a truncation adequate for both.
struct InnerPair {
  BlaschkeProduct phi1;
  BlaschkeProduct phi2;
  HardyTruncation trunc;

  static InnerPair make(BlaschkeProduct phi1, BlaschkeProduct phi2, HardyTruncation trunc);
};

struct InnerProductReport {
  std::size_t truncation = 0;
  BlaschkeProduct phi_t;      ///< φ_T
  BlaschkeProduct phi_t_adj;  ///< φ_{T*}
  double factorization_residual = 0.0;  ///< ‖T - P_{φ_T H²} P_{φ_T* H²}‖
  double range_adjoint_residual = 0.0;  ///< ‖T T* - P_{φ_T H²} T*‖
  double kernel_residual = 0.0;  ///< distance of ker T to [φ_T* H² ∩ Q_φT] ⊕ Q_φT*
  std::size_t unitary_dim = 0;   ///< dim H_u (only for pairs)
  BlaschkeProduct lcm;           ///< lcm(φ1, φ2) (only for pairs)
  double unitary_lcm_residual = 0.0;  ///< ‖P_{H_u} - P_{lcm H²}‖ (only for pairs)
  bool passed = false;
};

/// Recovers φ_T, φ_T* for an arbitrary T and measures the factorization.
InnerProductReport inner_product_check(const ComplexMatrix& t, const HardyTruncation& trunc,
                                       const Tolerances& tol);

/// T = P_{φ1 H²} P_{φ2 H²}: everything above plus H_u = lcm(φ1, φ2) H².
InnerProductReport product_inner_check(const InnerPair& pair, const Tolerances& tol);

struct ModelProductReport {
  std::size_t truncation = 0;
  bool family_empty = false;  ///< J_T or J_T* empty
  std::string classification;
  std::optional<BlaschkeProduct> psi_t;      ///< ψ_T
  std::optional<BlaschkeProduct> psi_t_adj;  ///< ψ_{T*}
  double factorization_residual = 0.0;  ///< ‖T - P_{Q_ψT} P_{Q_ψT*}‖
  double range_adjoint_residual = 0.0;  ///< ‖T T* - P_{Q_ψT} T*‖
  double kernel_residual = 0.0;  ///< distance of ker T to [Q_ψT* ∩ ψ_T H²] ⊕ ψ_T* H²
  bool is_model_product = false;
};

/// Recovers ψ_T, ψ_T* for an arbitrary T, or reports an empty family.
ModelProductReport model_product_check(const ComplexMatrix& t, const HardyTruncation& trunc,
                                       const Tolerances& tol);

/// T = P_{Q_φ1} P_{Q_φ2}.
ModelProductReport product_model_check(const InnerPair& pair, const Tolerances& tol);

/// dim(Q_{b1} ∩ b2 H²). Throws ConsistencyError if (dim = 0) disagrees with
/// deg b1 ≤ deg b2.
std::size_t intersection_dimension(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                   const HardyTruncation& trunc, const Tolerances& tol);

/// The intersection Q_{b1} ∩ b2 H² itself (the witness space).
Subspace model_inner_intersection(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                  const HardyTruncation& trunc, const Tolerances& tol);

struct MismatchTrial {
  BlaschkeProduct phi_a;
  BlaschkeProduct phi_b;
  double range_distance = 0.0;          ///< ‖P_{cl ran T} - P_{b1 H²}‖
  double adjoint_range_distance = 0.0;  ///< ‖P_{cl ran T*} - P_{b2 H²}‖
};

struct MismatchReport {
  std::size_t trials = 0;
  std::size_t counterexamples = 0;  ///< both range equalities held
  std::vector<MismatchTrial> near_misses;  ///< exactly one equality held
};

/// Samples T = P_{φa H²} P_{φb H²} with zeros drawn from `zero_pool` and
/// counts trials with cl ran T = b1 H² and cl ran T* = b2 H² simultaneously.
/// Requires deg b1 ≠ deg b2.
MismatchReport mismatched_range_verifier(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                         std::size_t trials,
                                         const std::vector<Complex>& zero_pool,
                                         std::uint64_t seed, const HardyTruncation& trunc,
                                         const Tolerances& tol);

struct DivisorCheck {
  BlaschkeProduct candidate;
  double outside_norm = 0.0;  ///< ‖P_{Q_φ} F_{ker T}‖, positive when ker T ⊄ φH²
  bool contained = false;
};

struct KernelDivisorReport {
  std::size_t kernel_dim = 0;
  std::vector<DivisorCheck> candidates;
  bool operator_is_zero = false;
  double shift_defect = 0.0;  ///< ‖(I - P_ker) z F_ker‖
  bool kernel_shift_invariant = false;
  bool passed = false;  ///< no candidate contains ker T and ker T not invariant (T ≠ 0)
};

/// For T = P_{φ1 H²} P_{φ2 H²}: ker T sits in no φH² with φ nonconstant and is
/// not shift-invariant. Candidates must be nonconstant.
KernelDivisorReport kernel_inner_divisor_check(const InnerPair& pair,
                                               const std::vector<BlaschkeProduct>& candidates,
                                               const Tolerances& tol);

}  // namespace projprod::hardy
