#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "projprod/hilbert.hpp"

namespace testing {

using projprod::Complex;
using projprod::ComplexMatrix;
using projprod::ComplexVector;
using projprod::Index;

/// Row-major literal: mat({{1, 2}, {3, 4}}).
inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = static_cast<Index>(rows.begin()->size());
  ComplexMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const Complex& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline ComplexVector vec(std::initializer_list<Complex> v) {
  ComplexVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (const Complex& x : v) out(i++) = x;
  return out;
}

inline ComplexVector basis(Index n, Index k) {
  ComplexVector e = ComplexVector::Zero(n);
  e(k) = 1.0;
  return e;
}

/// Span of the given (not necessarily orthonormal) columns, built by
/// Gram-Schmidt here rather than by the library.
inline projprod::Subspace span(const std::vector<ComplexVector>& vs, Index n) {
  std::vector<ComplexVector> q;
  for (ComplexVector v : vs) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) v -= u * u.dot(v);
    }
    if (v.norm() > 1e-12) q.push_back(v / v.norm());
  }
  ComplexMatrix f(n, static_cast<Index>(q.size()));
  for (Index j = 0; j < f.cols(); ++j) f.col(j) = q[static_cast<std::size_t>(j)];
  return projprod::Subspace::from_frame(f, projprod::Tolerances{});
}

/// Largest entry modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testing
