#include <doctest.h>

#include "projprod/errors.hpp"
#include "projprod/suites.hpp"

using namespace projprod;
using namespace projprod::suites;

namespace {

SuiteConfig small(std::size_t trials, Index dim) {
  SuiteConfig c;
  c.seed = 7;
  c.trials = trials;
  c.dim = dim;
  c.truncation = 96;
  return c;
}

}  // namespace

TEST_CASE("algebraic suites pass on a small budget") {
  for (const char* name : {"crimmins", "decomposition", "vonneumann"}) {
    CAPTURE(name);
    const SuiteResult r = run_suite(name, small(30, 6));
    CHECK(r.ok());
    CHECK(r.checks > 0);
    CHECK(r.failed == 0);
    CHECK(r.suite == name);
  }
}

TEST_CASE("the lemma sweep passes at a smaller truncation") {
  const SuiteResult r = run_suite("blaschke-lemma", small(1, 6));
  CHECK(r.ok());
  CHECK(r.checks >= 16);
}

TEST_CASE("suites are deterministic given the seed") {
  const SuiteConfig cfg = small(25, 5);
  CHECK(to_json(run_suite("crimmins", cfg)).dump() == to_json(run_suite("crimmins", cfg)).dump());
  SuiteConfig other = cfg;
  other.seed = 8;
  CHECK(to_json(crimmins_equivalence(cfg)).dump() != to_json(crimmins_equivalence(other)).dump());
}

TEST_CASE("unknown suite names are rejected") {
  CHECK_THROWS_AS(run_suite("foo", small(1, 2)), InputError);
  CHECK(suite_names().size() == 5);
}

TEST_CASE("SuiteResult folding and encoding") {
  SuiteResult a;
  a.suite = "a";
  a.checks = 3;
  a.metrics.push_back({"x", 1e-12, 1e-9});
  SuiteResult b;
  b.checks = 2;
  b.failed = 1;
  b.failures.push_back("boom");
  b.metrics.push_back({"x", 1e-8, 1e-9});
  CHECK(a.ok());
  a.absorb(b);
  CHECK_FALSE(a.ok());
  CHECK(a.checks == 5);
  CHECK(a.failed == 1);
  const nlohmann::json j = to_json(a);
  CHECK(j["suite"] == "a");
  CHECK(j["failures"].size() == 1);
}

TEST_CASE("recovery pool bounds") {
  const auto pool = recovery_pool();
  CHECK(pool.size() == 6);
  for (const auto& b : pool) {
    CHECK(b.degree() <= 3);
    CHECK(b.max_zero_modulus() <= 0.8 + 1e-12);
  }
}
