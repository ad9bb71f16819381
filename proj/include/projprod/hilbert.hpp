#pragma once

// Finite-dimensional complex Hilbert space substrate: dense operators,
// closed subspaces carried as orthonormal frames, and the lattice operations
// (range, kernel, intersection, span, complement) built on top of them.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace projprod {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Tolerances {
  double rank = 1e-10;  ///< relative singular-value cutoff
  double eq = 1e-9;     ///< operator-norm bound for "equal" matrices
  double orth = 1e-10;  ///< orthonormality defect allowed in frames

  /// Throws InputError unless every field lies strictly inside (0, 1).
  void validate() const;

  /// Defaults, with `eq` taken from PROJPROD_TOL_EQ when that variable is set.
  static Tolerances from_environment();
};

void require_finite(const ComplexMatrix& m, std::string_view what);
void require_square(const ComplexMatrix& m, std::string_view what);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Which singular vectors to return: none, the thin U (rows × min), the full
/// U (rows × rows), the full V (cols × cols), or both full U and full V.
enum class SingularVectors { none, thin_u, full_u, full_v, full };

struct SingularDecomposition {
  Eigen::VectorXd values;  ///< descending
  ComplexMatrix u;
  ComplexMatrix v;
};

/// LAPACK divide-and-conquer SVD, falling back to QR iteration if it fails to
/// converge. Throws ConsistencyError if both fail.
SingularDecomposition singular_decomposition(const ComplexMatrix& m, SingularVectors which);

struct HermitianEigen {
  Eigen::VectorXd values;  ///< ascending
  ComplexMatrix vectors;
};

/// Eigen-decomposition of the Hermitian part of h (LAPACK divide and conquer).
HermitianEigen hermitian_eigen(const ComplexMatrix& h);

/// A closed subspace of C^n stored as an n x k matrix with orthonormal columns.
/// The trivial subspace has k = 0.
class Subspace {
 public:
  static Subspace trivial(Index ambient_dim);
  static Subspace full(Index ambient_dim);

  /// Validates frame orthonormality against tol.orth.
  static Subspace from_frame(ComplexMatrix frame, const Tolerances& tol);

  Index ambient_dim() const { return frame_.rows(); }
  Index dim() const { return frame_.cols(); }
  bool is_trivial() const { return frame_.cols() == 0; }
  const ComplexMatrix& frame() const { return frame_; }

 private:
  explicit Subspace(ComplexMatrix frame) : frame_(std::move(frame)) {}
  ComplexMatrix frame_;

  friend Subspace make_subspace_unchecked(ComplexMatrix frame);
};

/// Wraps a frame already known to be orthonormal (output of an SVD / QR).
Subspace make_subspace_unchecked(ComplexMatrix frame);

/// Singular values above tol.rank · max(σ_max, scale_floor) count toward the
/// rank. The default is purely relative; operators with a known unit scale
/// (projections, their products and differences) pass kUnitScale so that a
/// matrix of pure rounding noise has rank 0.
inline constexpr double kUnitScale = 1.0;

Subspace orthonormal_range(const ComplexMatrix& t, const Tolerances& tol, double scale_floor = 0.0);
Subspace kernel(const ComplexMatrix& t, const Tolerances& tol, double scale_floor = 0.0);

struct FundamentalSubspaces {
  Subspace range;          ///< ran T
  Subspace cokernel;       ///< ker T* = (ran T)^⊥
  Subspace adjoint_range;  ///< ran T*
  Subspace kernel;         ///< ker T = (ran T*)^⊥
};

/// All four from one full SVD.
FundamentalSubspaces fundamental_subspaces(const ComplexMatrix& t, const Tolerances& tol,
                                           double scale_floor = 0.0);
ComplexMatrix projector(const Subspace& s);

/// S1 ∩ S2 as the eigenvalue-1 space of P1 P2 P1, cross-checked against
/// ker(I - P1 P2). Throws ConsistencyError if the two disagree in dimension.
Subspace intersect(const Subspace& s1, const Subspace& s2, const Tolerances& tol);

/// Closed span of S1 ∪ S2.
Subspace join(const Subspace& s1, const Subspace& s2, const Tolerances& tol);

/// Closed span of S and the columns of `vectors` (arbitrary, not orthonormal).
/// New directions are kept when their residual singular value exceeds
/// tol.rank · max(1, largest column norm).
Subspace extend(const Subspace& s, const ComplexMatrix& vectors, const Tolerances& tol);

/// v - F F* v, reorthogonalized once.
ComplexMatrix residual_against(const ComplexMatrix& frame, const ComplexMatrix& v);

Subspace complement(const Subspace& s);

/// ‖P_{S1} - P_{S2}‖, evaluated through the frames.
double subspace_distance(const Subspace& s1, const Subspace& s2);
bool subspace_equal(const Subspace& s1, const Subspace& s2, const Tolerances& tol);

/// True when `inner` ⊆ `outer`, i.e. ‖(I - P_outer) F_inner‖ ≤ tol.eq.
bool contains(const Subspace& outer, const Subspace& inner, const Tolerances& tol);

}  // namespace projprod
