#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "projprod/errors.hpp"
#include "projprod/hilbert.hpp"

namespace projprod {

namespace {

// a is overwritten. Returns LAPACK's info.
lapack_int run_gesdd(ComplexMatrix& a, char job, Eigen::VectorXd& s, ComplexMatrix& u,
                     ComplexMatrix& vt) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  return LAPACKE_zgesdd(LAPACK_COL_MAJOR, job, m, n, a.data(), m, s.data(), u.data(),
                        std::max<lapack_int>(1, static_cast<lapack_int>(u.rows())), vt.data(),
                        std::max<lapack_int>(1, static_cast<lapack_int>(vt.rows())));
}

lapack_int run_gesvd(ComplexMatrix& a, char jobu, char jobvt, Eigen::VectorXd& s,
                     ComplexMatrix& u, ComplexMatrix& vt) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(1, std::min(m, n))));
  return LAPACKE_zgesvd(LAPACK_COL_MAJOR, jobu, jobvt, m, n, a.data(), m, s.data(), u.data(),
                        std::max<lapack_int>(1, static_cast<lapack_int>(u.rows())), vt.data(),
                        std::max<lapack_int>(1, static_cast<lapack_int>(vt.rows())),
                        superb.data());
}

}  // namespace

SingularDecomposition singular_decomposition(const ComplexMatrix& m, SingularVectors which) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  const Index k = std::min(rows, cols);
  SingularDecomposition out;
  out.values = Eigen::VectorXd::Zero(k);
  if (k == 0) {
    if (which == SingularVectors::full) {
      out.u = ComplexMatrix::Identity(rows, rows);
      out.v = ComplexMatrix::Identity(cols, cols);
    }
    if (which == SingularVectors::thin_u) out.u = ComplexMatrix(rows, 0);
    if (which == SingularVectors::full_u) out.u = ComplexMatrix::Identity(rows, rows);
    if (which == SingularVectors::full_v) out.v = ComplexMatrix::Identity(cols, cols);
    return out;
  }

  // gesdd ties U and V together; full V means computing the full U as well.
  char job = 'N';
  ComplexMatrix u(1, 1);
  ComplexMatrix vt(1, 1);
  if (which == SingularVectors::thin_u) {
    job = 'S';
    u.resize(rows, k);
    vt.resize(k, cols);
  } else if (which == SingularVectors::full_u) {
    job = rows <= cols ? 'S' : 'A';
    u.resize(rows, rows);
    vt.resize(job == 'S' ? k : cols, cols);
  } else if (which == SingularVectors::full) {
    job = 'A';
    u.resize(rows, rows);
    vt.resize(cols, cols);
  } else if (which == SingularVectors::full_v) {
    // For rows ≥ cols the thin V is already square.
    job = rows >= cols ? 'S' : 'A';
    u.resize(rows, job == 'S' ? k : rows);
    vt.resize(cols, cols);
  }
  ComplexMatrix a = m;
  lapack_int info = run_gesdd(a, job, out.values, u, vt);
  if (info > 0) {
    a = m;
    const bool want_full_u = which == SingularVectors::full_u || which == SingularVectors::full;
    const bool want_full_v = which == SingularVectors::full_v || which == SingularVectors::full;
    const char jobu = which == SingularVectors::thin_u ? 'S' : want_full_u ? 'A' : 'N';
    const char jobvt = want_full_v ? 'A' : 'N';
    if (jobu == 'N') u.resize(1, 1);
    if (jobvt == 'N') vt.resize(1, 1);
    info = run_gesvd(a, jobu, jobvt, out.values, u, vt);
  }
  if (info != 0) {
    throw ConsistencyError("singular value decomposition failed (LAPACK info " +
                           std::to_string(info) + ")");
  }
  if (which == SingularVectors::thin_u || which == SingularVectors::full_u ||
      which == SingularVectors::full) {
    out.u = std::move(u);
  }
  if (which == SingularVectors::full_v || which == SingularVectors::full) out.v = vt.adjoint();
  return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw InputError("hermitian_eigen: matrix is not square");
  const lapack_int n = static_cast<lapack_int>(h.rows());
  HermitianEigen out;
  out.values = Eigen::VectorXd::Zero(n);
  out.vectors = 0.5 * (h + h.adjoint());
  if (n == 0) return out;
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                                   out.values.data());
  if (info > 0) {
    out.vectors = 0.5 * (h + h.adjoint());
    info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n, out.values.data());
  }
  if (info != 0) {
    throw ConsistencyError("Hermitian eigensolver failed (LAPACK info " + std::to_string(info) +
                           ")");
  }
  return out;
}

}  // namespace projprod
