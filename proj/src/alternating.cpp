#include "projprod/alternating.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "projprod/errors.hpp"

namespace projprod {

ComplexMatrix iterate_product(const ProjectionPair& pair, std::size_t m) {
  const Index n = pair.dim();
  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix base = pair.product();
  while (m > 0) {
    if (m & 1u) result = (result * base).eval();
    m >>= 1u;
    if (m > 0) base = (base * base).eval();
  }
  return result;
}

IterationTrace von_neumann_limit(const ProjectionPair& pair, const AlternatingOptions& opts,
                                 const Tolerances& tol) {
  if (!(opts.tol_conv > 0.0)) throw InputError("von_neumann_limit: tol_conv must be positive");
  if (opts.max_iter == 0) throw InputError("von_neumann_limit: max_iter must be positive");

  const CanonicalDecomposition dec = canonical_decomposition(pair, tol);
  const ComplexMatrix& block = dec.cnu_block;
  const ComplexMatrix block_adj = block.adjoint();

  IterationTrace trace;
  trace.target = projector(dec.unitary_space);
  const ComplexMatrix t = pair.product();
  ComplexMatrix power = t;
  ComplexMatrix bpow = block;
  ComplexMatrix bpow_adj = block_adj;

  for (std::size_t m = 1; m <= opts.max_iter; ++m) {
    if (m > 1) {
      power = (power * t).eval();
      bpow = (bpow * block).eval();
      bpow_adj = (bpow_adj * block_adj).eval();
    }
    TraceRow row{m, operator_norm(power - trace.target), operator_norm(bpow),
                 operator_norm(bpow_adj)};
    trace.rows.push_back(row);
    if (row.residual <= opts.tol_conv) {
      trace.converged = true;
      break;
    }
  }
  trace.limit = power;

  trace.rate_estimate = std::numeric_limits<double>::quiet_NaN();
  const auto& rows = trace.rows;
  for (std::size_t i = rows.size(); i >= 2; --i) {
    if (rows[i - 1].residual > 0.0 && rows[i - 2].residual > 0.0) {
      trace.rate_estimate = rows[i - 1].residual / rows[i - 2].residual;
      break;
    }
  }
  return trace;
}

DecayProfile c00_decay_check(const ProjectionPair& pair, std::size_t m_max,
                             const Tolerances& tol) {
  const CanonicalDecomposition dec = canonical_decomposition(pair, tol);
  const ComplexMatrix& block = dec.cnu_block;
  const ComplexMatrix block_adj = block.adjoint();

  DecayProfile profile;
  ComplexMatrix bpow = block;
  ComplexMatrix bpow_adj = block_adj;
  for (std::size_t m = 1; m <= m_max; ++m) {
    if (m > 1) {
      bpow = (bpow * block).eval();
      bpow_adj = (bpow_adj * block_adj).eval();
    }
    const double f = operator_norm(bpow);
    const double a = operator_norm(bpow_adj);
    profile.forward.push_back(f);
    profile.adjoint.push_back(a);
    if (profile.forward_steps == 0 && f <= tol.eq) profile.forward_steps = m;
    if (profile.adjoint_steps == 0 && a <= tol.eq) profile.adjoint_steps = m;
    if (profile.forward_steps != 0 && profile.adjoint_steps != 0) return profile;
  }
  throw ConsistencyError("c00_decay_check: cnu powers did not fall below " +
                         std::to_string(tol.eq) + " within " + std::to_string(m_max) +
                         " steps");
}

}  // namespace projprod
