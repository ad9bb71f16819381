#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "projprod/errors.hpp"
#include "projprod/io.hpp"
#include "projprod/random.hpp"
#include "support.hpp"

using namespace projprod;
using namespace projprod::io;
using namespace testing;

namespace {

const Tolerances tol;

}  // namespace

TEST_CASE("matrix round trip is exact") {
  Rng rng = trial_rng(1, 0);
  const ComplexMatrix m = random_gaussian(rng, 3, 5);
  const ComplexMatrix back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 5);
  CHECK(max_abs_diff(back, m) == 0.0);
}

TEST_CASE("matrix layout is row-major [re, im] pairs") {
  const json j = matrix_to_json(mat({{1, Complex(0, 2)}, {3, 4}}));
  CHECK(j["rows"] == 2);
  CHECK(j["data"][1][1] == 2.0);
  CHECK(j["data"][2][0] == 3.0);
}

TEST_CASE("matrix schema violations") {
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 1}, {"cols", 1}}), InputError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":1,"cols":2,"data":[[1,0]]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":1,"cols":1,"data":[[1]]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":0,"cols":1,"data":[]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":1,"cols":1,"data":[["a",0]]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(json::array()), InputError);
}

TEST_CASE("subspace round trip") {
  Rng rng = trial_rng(2, 0);
  const Subspace s = orthonormal_range(random_gaussian(rng, 6, 2), tol);
  const Subspace back = subspace_from_json(json::parse(subspace_to_json(s).dump()), tol);
  CHECK(subspace_equal(back, s, tol));
  const Subspace none = subspace_from_json(subspace_to_json(Subspace::trivial(4)), tol);
  CHECK(none.is_trivial());
  CHECK(none.ambient_dim() == 4);
  json bad = subspace_to_json(s);
  bad["ambient_dim"] = 7;
  CHECK_THROWS_AS(subspace_from_json(bad, tol), InputError);
}

TEST_CASE("Blaschke product round trip and validation") {
  const auto b = hardy::BlaschkeProduct::make(std::polar(1.0, 0.3), {0.0, Complex(0.2, -0.5), 0.0});
  const auto back = blaschke_from_json(json::parse(blaschke_to_json(b).dump()));
  CHECK(back.constant() == b.constant());
  CHECK(back.zeros() == b.zeros());
  CHECK(blaschke_from_json(json::parse(R"({"zeros":[[0.5,0]]})")).constant() == Complex(1, 0));
  CHECK_THROWS_AS(blaschke_from_json(json::parse(R"({"zeros":[[0.99,0]]})")), InputError);
  CHECK_NOTHROW(blaschke_from_json(json::parse(R"({"zeros":[[0.99,0]]})"), 0.995));
  CHECK_THROWS_AS(blaschke_from_json(json::parse(R"({"constant":[1,0]})")), InputError);
}

TEST_CASE("format_double keeps 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("trace CSV") {
  IterationTrace trace;
  trace.rows.push_back({1, 0.5, 0.25, 0.125});
  trace.rows.push_back({2, 0.1, 0.0, 0.0});
  std::ostringstream os;
  write_trace_csv(os, trace);
  CHECK(os.str() ==
        "m,residual,cnu_norm,cnu_adjoint_norm\n1,0.5,0.25,0.125\n2,0.10000000000000001,0,0\n");
}

TEST_CASE("read_json_file errors") {
  const auto dir = std::filesystem::temp_directory_path();
  CHECK_THROWS_AS(read_json_file(dir / "projprod-no-such-file.json"), InputError);
  const auto bad = dir / "projprod-malformed.json";
  std::ofstream(bad) << "{\"rows\": ";
  CHECK_THROWS_AS(read_json_file(bad), InputError);
  std::filesystem::remove(bad);
}

TEST_CASE("report encodings carry their fields") {
  const ClassificationReport r = classify(mat({{0.5, 0.5}, {0, 0}}), tol);
  const json j = to_json(r);
  CHECK(j["is_product"] == true);
  CHECK(j.contains("crimmins_residual"));
  CHECK(j.contains("sebestyen_residual"));
}
