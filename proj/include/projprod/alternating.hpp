#pragma once

// von Neumann's alternating projections (P1 P2)^m, the identification of
// their limit with the projection onto the unitary part, and decay of the
// completely non-unitary block.

#include <cstddef>
#include <vector>

#include "projprod/hilbert.hpp"
#include "projprod/products.hpp"

namespace projprod {

/// (P1 P2)^m by repeated squaring. m = 0 gives the identity.
ComplexMatrix iterate_product(const ProjectionPair& pair, std::size_t m);

struct TraceRow {
  std::size_t m = 0;
  double residual = 0.0;          ///< ‖(P1 P2)^m - P_{H_u}‖
  double cnu_norm = 0.0;          ///< ‖B^m‖, B the cnu block
  double cnu_adjoint_norm = 0.0;  ///< ‖(B*)^m‖
};

struct IterationTrace {
  std::vector<TraceRow> rows;
  bool converged = false;
  ComplexMatrix limit;      ///< last iterate
  ComplexMatrix target;     ///< projector onto H_u
  /// Geometric ratio of the last two nonzero residuals; diagnostic only
  /// (tracks the squared cosine of the Friedrichs angle). NaN when undefined.
  double rate_estimate = 0.0;
};

struct AlternatingOptions {
  double tol_conv = 1e-10;
  std::size_t max_iter = 10'000;
};

/// Iterates until ‖(P1 P2)^m - P_{H_u}‖ ≤ tol_conv or max_iter is reached.
/// Exhaustion is reported through `converged`, not thrown.
IterationTrace von_neumann_limit(const ProjectionPair& pair, const AlternatingOptions& opts,
                                 const Tolerances& tol);

struct DecayProfile {
  std::vector<double> forward;  ///< ‖B^m‖, m = 1, 2, ...
  std::vector<double> adjoint;  ///< ‖(B*)^m‖
  std::size_t forward_steps = 0;  ///< first m with ‖B^m‖ ≤ tol.eq
  std::size_t adjoint_steps = 0;
};

/// Powers of the cnu block and its adjoint, until both drop below tol.eq.
/// Throws ConsistencyError if that does not happen within m_max steps.
DecayProfile c00_decay_check(const ProjectionPair& pair, std::size_t m_max,
                             const Tolerances& tol);

}  // namespace projprod
