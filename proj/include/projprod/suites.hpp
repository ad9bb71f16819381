#pragma once

// Seeded property suites over random projection pairs and fixed Hardy-space
// fixtures. Deterministic given the configuration; no timing or other
// run-dependent data enters a result.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "projprod/blaschke.hpp"
#include "projprod/hilbert.hpp"

namespace projprod::suites {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 1000;
  Index dim = 8;
  std::size_t truncation = 256;
  Tolerances tol;
};

/// Worst observed value of one quantity against its bound (pass if worst ≤ bound).
struct Metric {
  std::string name;
  double worst = 0.0;
  double bound = 0.0;
  bool ok() const { return worst <= bound; }
};

struct SuiteResult {
  std::string suite;
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::vector<Metric> metrics;
  std::vector<std::string> failures;  ///< first few failure messages

  bool ok() const;
  /// Folds `other` into this result.
  void absorb(const SuiteResult& other);
};

nlohmann::json to_json(const SuiteResult& r);

const std::vector<std::string>& suite_names();

/// Runs a named suite; throws InputError for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

// Building blocks, also driven individually by the acceptance tests.

/// Residuals of the three product criteria over random pairs in C^dim.
SuiteResult crimmins_equivalence(const SuiteConfig& cfg);
/// c I for c ∈ {0.3, 0.5, 0.9} and `count` random strict contractions with
/// Crimmins residual above 1e-4 must all be rejected.
SuiteResult negative_classification(const SuiteConfig& cfg, std::size_t count);
/// H_u and H_cnu identities plus unitarity of the unitary block.
SuiteResult canonical_decomposition_suite(const SuiteConfig& cfg);
/// ker(P1 P2) = [ran(I - P1) ∩ ran P2] ⊕ ran(I - P2).
SuiteResult kernel_decomposition_suite(const SuiteConfig& cfg);
/// Closed form for two lines at 45°: residual (1/2)^{m-1}/√2 for m ≤ 30.
SuiteResult von_neumann_closed_form();
/// Convergence to P_{ran P1 ∩ ran P2} and C00 decay for random pairs.
SuiteResult von_neumann_suite(const SuiteConfig& cfg);
SuiteResult c00_suite(const SuiteConfig& cfg);
/// Inner projections and Beurling intersections for z, z², b_{1/2}, z b_{1/2}.
SuiteResult hardy_exactness(const SuiteConfig& cfg);
/// product_inner_check over every pair from the six-product pool; recovered
/// φ_T compared with a run at twice the truncation.
SuiteResult inner_recovery(const SuiteConfig& cfg);
/// product_model_check over the pool plus instances with an empty J_T.
SuiteResult model_recovery(const SuiteConfig& cfg);
/// dim(Q_b1 ∩ b2 H²) = max(0, m1 - m2) for all m1, m2 ≤ 4, and the witness
/// for (z², b_{1/2}).
SuiteResult blaschke_lemma(const SuiteConfig& cfg);

/// The six Blaschke products (at most three zeros, moduli ≤ 0.8) used by the
/// recovery suites.
std::vector<hardy::BlaschkeProduct> recovery_pool();

}  // namespace projprod::suites
