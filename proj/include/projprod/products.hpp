#pragma once

// Operators of the form T = P1 P2 with P1, P2 orthogonal projections:
// classification, canonical factorizations, the unitary / completely
// non-unitary splitting and the kernel splitting of P1 P2.

#include <optional>
#include <utility>

#include "projprod/hilbert.hpp"

namespace projprod {

/// max(‖P - P*‖, ‖P - P²‖).
double projection_defect(const ComplexMatrix& p);

/// P = P* = P² within tol.eq. Throws InputError for non-square input.
bool is_projection(const ComplexMatrix& p, const Tolerances& tol);

/// Two validated orthogonal projections on the same space.
class ProjectionPair {
 public:
  /// Rejects (InputError) anything that is not a projection within tol.eq;
  /// inputs are never re-symmetrized.
  static ProjectionPair make(ComplexMatrix p1, ComplexMatrix p2, const Tolerances& tol);

  const ComplexMatrix& p1() const { return p1_; }
  const ComplexMatrix& p2() const { return p2_; }
  Index dim() const { return p1_.rows(); }
  ComplexMatrix product() const { return p1_ * p2_; }

 private:
  ProjectionPair(ComplexMatrix p1, ComplexMatrix p2) : p1_(std::move(p1)), p2_(std::move(p2)) {}
  ComplexMatrix p1_;
  ComplexMatrix p2_;
};

struct ClassificationReport {
  bool is_product = false;
  double crimmins_residual = 0.0;   ///< ‖T T* T - T²‖
  double factor_residual = 0.0;     ///< ‖T - P_ranT P_ranT*‖
  double sebestyen_residual = 0.0;  ///< ‖T T* - T P_ranT‖
  /// ‖T T* - P_ranT T*‖, the adjoint twin of the Sebestyén form. Reported
  /// only; it does not enter the verdict.
  double range_adjoint_residual = 0.0;
  double norm = 0.0;
  bool is_contraction = false;
};

/// Computes every residual and cross-checks the three verdicts. If one
/// criterion accepts (≤ tol.eq) while another rejects by more than
/// kVerdictSpread·tol.eq, throws ConsistencyError.
ClassificationReport classify(const ComplexMatrix& t, const Tolerances& tol);
inline constexpr double kVerdictSpread = 1e3;

/// (P_ranT, P_ranT*) with T = P_ranT P_ranT*. Throws ClassificationError if
/// T is not a product of two projections.
std::pair<ComplexMatrix, ComplexMatrix> canonical_factorization(const ComplexMatrix& t,
                                                                const Tolerances& tol);

/// T = P1 X P2, after verifying T = P_ranT X P_ranT*.
ComplexMatrix canonical_sandwich(const ComplexMatrix& x, const ComplexMatrix& p1,
                                 const ComplexMatrix& p2, const Tolerances& tol);

/// If T1 T1* = T2 T1*, returns S = ran T1* (so that T1 = T2 P_S); otherwise nothing.
std::optional<Subspace> sebestyen_right_factor(const ComplexMatrix& t1, const ComplexMatrix& t2,
                                               const Tolerances& tol);

/// H_u = ker(P1 P2 - I), checked against ran P1 ∩ ran P2.
Subspace unitary_part(const ProjectionPair& pair, const Tolerances& tol);

/// H_cnu = ker T ⋁ ker T*, checked against the complement of ker(T - I).
Subspace cnu_part(const ComplexMatrix& t, const Tolerances& tol);

struct CanonicalDecomposition {
  Subspace unitary_space;
  Subspace cnu_space;
  ComplexMatrix unitary_block;  ///< T compressed to the unitary_space frame
  ComplexMatrix cnu_block;      ///< T compressed to the cnu_space frame
  double off_diagonal_norm = 0.0;
  double unitarity_defect = 0.0;  ///< ‖U* U - I‖
};

/// Near-unitary blocks pass at this multiple of tol.eq: the block depends on
/// two subspace computations.
inline constexpr double kUnitaryBlockSlack = 10.0;

CanonicalDecomposition canonical_decomposition(const ProjectionPair& pair, const Tolerances& tol);

/// ker(P1 P2) = [ran(I - P1) ∩ ran P2] ⊕ ran(I - P2).
struct KernelDecomposition {
  Subspace coupled;    ///< ran(I - P1) ∩ ran P2
  Subspace annihilated;  ///< ran(I - P2)
};

KernelDecomposition kernel_decomposition(const ProjectionPair& pair, const Tolerances& tol);

}  // namespace projprod
