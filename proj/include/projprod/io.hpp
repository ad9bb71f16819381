#pragma once

// JSON and CSV encodings of matrices, subspaces, Blaschke products and the
// reports produced by the library.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "projprod/alternating.hpp"
#include "projprod/blaschke.hpp"
#include "projprod/hardy.hpp"
#include "projprod/hilbert.hpp"
#include "projprod/products.hpp"

namespace projprod::io {

using nlohmann::json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
json matrix_to_json(const ComplexMatrix& m);
/// Throws InputError on any schema violation or non-finite entry.
ComplexMatrix matrix_from_json(const json& j);

/// The frame matrix plus "ambient_dim".
json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j, const Tolerances& tol);

/// {"constant": [re, im], "zeros": [[re, im], ...]}, multiplicity by repetition.
json blaschke_to_json(const hardy::BlaschkeProduct& b);
hardy::BlaschkeProduct blaschke_from_json(const json& j,
                                          double max_zero_modulus = hardy::kDefaultMaxZeroModulus);

json complex_to_json(Complex z);

json to_json(const ClassificationReport& r);
json to_json(const CanonicalDecomposition& d, const KernelDecomposition& k);
json to_json(const hardy::InnerProductReport& r);
json to_json(const hardy::ModelProductReport& r);
json to_json(const hardy::MismatchReport& r);
json to_json(const hardy::KernelDivisorReport& r);

/// 17 significant digits.
std::string format_double(double v);

/// Header "m,residual,cnu_norm,cnu_adjoint_norm", one row per iterate.
void write_trace_csv(std::ostream& os, const IterationTrace& trace);

/// Reads and parses a JSON file; InputError if unreadable or malformed.
json read_json_file(const std::filesystem::path& path);

}  // namespace projprod::io
