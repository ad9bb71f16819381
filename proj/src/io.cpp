#include "projprod/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "projprod/errors.hpp"

namespace projprod::io {

namespace {

Complex complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(std::string(what) + ": expected a [re, im] pair");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InputError(std::string(what) + ": non-finite value");
  }
  return z;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing \"") + key + "\" key");
  return *it;
}

json zeros_to_json(const hardy::BlaschkeProduct& b) {
  json zs = json::array();
  for (const Complex& z : b.zeros()) zs.push_back(complex_to_json(z));
  return zs;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const json& rows = field(j, "rows");
  const json& cols = field(j, "cols");
  const json& data = field(j, "data");
  if (!rows.is_number_integer() || !cols.is_number_integer()) {
    throw InputError("\"rows\" and \"cols\" must be integers");
  }
  const long r = rows.get<long>();
  const long c = cols.get<long>();
  if (r < 1 || c < 1) throw InputError("\"rows\" and \"cols\" must be positive");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(r * c)) {
    throw InputError("\"data\" must hold rows x cols [re, im] pairs");
  }
  ComplexMatrix m(r, c);
  for (long i = 0; i < r; ++i)
    for (long k = 0; k < c; ++k)
      m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * c + k)], "matrix entry");
  return m;
}

json subspace_to_json(const Subspace& s) {
  json j = matrix_to_json(s.frame());
  j["ambient_dim"] = s.ambient_dim();
  return j;
}

Subspace subspace_from_json(const json& j, const Tolerances& tol) {
  const json& ambient = field(j, "ambient_dim");
  if (!ambient.is_number_integer() || ambient.get<long>() < 1) {
    throw InputError("\"ambient_dim\" must be a positive integer");
  }
  const long n = ambient.get<long>();
  // A trivial subspace has a frame with no columns.
  if (field(j, "cols").is_number_integer() && field(j, "cols").get<long>() == 0) {
    if (!field(j, "data").empty()) throw InputError("trivial subspace carries data");
    return Subspace::trivial(n);
  }
  ComplexMatrix frame = matrix_from_json(j);
  if (frame.rows() != n) throw InputError("frame rows differ from \"ambient_dim\"");
  return Subspace::from_frame(std::move(frame), tol);
}

json blaschke_to_json(const hardy::BlaschkeProduct& b) {
  return {{"constant", complex_to_json(b.constant())}, {"zeros", zeros_to_json(b)}};
}

hardy::BlaschkeProduct blaschke_from_json(const json& j, double max_zero_modulus) {
  const Complex c =
      j.is_object() && j.contains("constant") ? complex_from_json(j["constant"], "constant")
                                              : Complex(1.0, 0.0);
  const json& zs = field(j, "zeros");
  if (!zs.is_array()) throw InputError("\"zeros\" must be an array");
  std::vector<Complex> zeros;
  for (const json& z : zs) zeros.push_back(complex_from_json(z, "zero"));
  return hardy::BlaschkeProduct::make(c, std::move(zeros), max_zero_modulus);
}

json to_json(const ClassificationReport& r) {
  return {{"is_product", r.is_product},
          {"crimmins_residual", r.crimmins_residual},
          {"factor_residual", r.factor_residual},
          {"sebestyen_residual", r.sebestyen_residual},
          {"range_adjoint_residual", r.range_adjoint_residual},
          {"norm", r.norm},
          {"is_contraction", r.is_contraction}};
}

json to_json(const CanonicalDecomposition& d, const KernelDecomposition& k) {
  return {{"unitary_space", subspace_to_json(d.unitary_space)},
          {"cnu_space", subspace_to_json(d.cnu_space)},
          {"unitary_dim", d.unitary_space.dim()},
          {"cnu_dim", d.cnu_space.dim()},
          {"unitary_block", matrix_to_json(d.unitary_block)},
          {"cnu_block", matrix_to_json(d.cnu_block)},
          {"off_diagonal_norm", d.off_diagonal_norm},
          {"unitarity_defect", d.unitarity_defect},
          {"kernel_coupled", subspace_to_json(k.coupled)},
          {"kernel_annihilated", subspace_to_json(k.annihilated)}};
}

json to_json(const hardy::InnerProductReport& r) {
  return {{"truncation", r.truncation},
          {"phi_T", blaschke_to_json(r.phi_t)},
          {"phi_T_adjoint", blaschke_to_json(r.phi_t_adj)},
          {"factorization_residual", r.factorization_residual},
          {"range_adjoint_residual", r.range_adjoint_residual},
          {"kernel_residual", r.kernel_residual},
          {"unitary_dim", r.unitary_dim},
          {"lcm", blaschke_to_json(r.lcm)},
          {"unitary_lcm_residual", r.unitary_lcm_residual},
          {"passed", r.passed}};
}

json to_json(const hardy::ModelProductReport& r) {
  json j = {{"truncation", r.truncation},
            {"family_empty", r.family_empty},
            {"classification", r.classification},
            {"is_model_product", r.is_model_product}};
  if (r.psi_t) j["psi_T"] = blaschke_to_json(*r.psi_t);
  if (r.psi_t_adj) j["psi_T_adjoint"] = blaschke_to_json(*r.psi_t_adj);
  if (!r.family_empty) {
    j["factorization_residual"] = r.factorization_residual;
    j["range_adjoint_residual"] = r.range_adjoint_residual;
    j["kernel_residual"] = r.kernel_residual;
  }
  return j;
}

json to_json(const hardy::MismatchReport& r) {
  json misses = json::array();
  for (const auto& m : r.near_misses) {
    misses.push_back({{"phi_a", blaschke_to_json(m.phi_a)},
                      {"phi_b", blaschke_to_json(m.phi_b)},
                      {"range_distance", m.range_distance},
                      {"adjoint_range_distance", m.adjoint_range_distance}});
  }
  return {{"trials", r.trials}, {"counterexamples", r.counterexamples}, {"near_misses", misses}};
}

json to_json(const hardy::KernelDivisorReport& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"candidate", blaschke_to_json(c.candidate)},
                     {"outside_norm", c.outside_norm},
                     {"contained", c.contained}});
  }
  return {{"kernel_dim", r.kernel_dim},
          {"candidates", cands},
          {"operator_is_zero", r.operator_is_zero},
          {"shift_defect", r.shift_defect},
          {"kernel_shift_invariant", r.kernel_shift_invariant},
          {"passed", r.passed}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace) {
  os << "m,residual,cnu_norm,cnu_adjoint_norm\n";
  for (const TraceRow& row : trace.rows) {
    os << row.m << ',' << format_double(row.residual) << ',' << format_double(row.cnu_norm) << ','
       << format_double(row.cnu_adjoint_norm) << '\n';
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

}  // namespace projprod::io
