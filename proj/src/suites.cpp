#include "projprod/suites.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numbers>

#include "projprod/alternating.hpp"
#include "projprod/errors.hpp"
#include "projprod/hardy.hpp"
#include "projprod/products.hpp"
#include "projprod/random.hpp"

namespace projprod::suites {

namespace {

constexpr std::size_t kMaxRecordedFailures = 8;

// Distinct stream families so that suites sharing a seed do not share draws.
constexpr std::uint64_t kNegativeStream = 0x6e65676174697665ULL;
constexpr std::uint64_t kProbeStream = 0x70726f6265ULL;

class Recorder {
 public:
  explicit Recorder(std::string suite) { result_.suite = std::move(suite); }

  void bound(const std::string& name, double limit) {
    index_[name] = result_.metrics.size();
    result_.metrics.push_back({name, 0.0, limit});
  }

  /// Tracks the worst value; false if it breaks the bound (NaN counts as broken).
  bool observe(const std::string& name, double value) {
    Metric& m = result_.metrics.at(index_.at(name));
    if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
    m.worst = std::max(m.worst, value);
    return value <= m.bound;
  }

  void check(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) fail(what);
  }

  void fail(const std::string& what) {
    ++result_.failed;
    if (result_.failures.size() < kMaxRecordedFailures) result_.failures.push_back(what);
  }

  SuiteResult finish() { return std::move(result_); }

 private:
  SuiteResult result_;
  std::map<std::string, std::size_t> index_;
};

std::string trial_label(std::size_t i) { return "trial " + std::to_string(i); }

Tolerances with_eq(Tolerances tol, double eq) {
  tol.eq = eq;
  return tol;
}

hardy::BlaschkeProduct product_of(std::vector<Complex> zeros) {
  return hardy::BlaschkeProduct::from_zeros(std::move(zeros));
}

// (I - Q1 Q1*)(I - Q2 Q2*) expanded so only thin products are formed.
ComplexMatrix low_rank_inner_product(const Subspace& q1, const Subspace& q2) {
  const Index n = q1.ambient_dim();
  const ComplexMatrix& f1 = q1.frame();
  const ComplexMatrix& f2 = q2.frame();
  ComplexMatrix t = ComplexMatrix::Identity(n, n);
  t.noalias() -= f1 * f1.adjoint();
  t.noalias() -= f2 * f2.adjoint();
  t.noalias() += f1 * (f1.adjoint() * f2) * f2.adjoint();
  return t;
}

ComplexVector random_unit_in(Rng& rng, const Subspace& s) {
  ComplexVector c = random_gaussian(rng, s.dim(), 1).col(0);
  c.normalize();
  return s.frame() * c;
}

}  // namespace

bool SuiteResult::ok() const {
  if (failed != 0) return false;
  for (const Metric& m : metrics)
    if (!m.ok()) return false;
  return true;
}

void SuiteResult::absorb(const SuiteResult& other) {
  checks += other.checks;
  failed += other.failed;
  for (const Metric& m : other.metrics) metrics.push_back({other.suite + "." + m.name, m.worst, m.bound});
  for (const std::string& f : other.failures) {
    if (failures.size() < kMaxRecordedFailures) failures.push_back(other.suite + ": " + f);
  }
}

nlohmann::json to_json(const SuiteResult& r) {
  nlohmann::json metrics = nlohmann::json::array();
  for (const Metric& m : r.metrics) {
    metrics.push_back({{"name", m.name}, {"worst", m.worst}, {"bound", m.bound}, {"ok", m.ok()}});
  }
  return {{"suite", r.suite},   {"checks", r.checks},     {"failed", r.failed},
          {"passed", r.ok()},   {"metrics", metrics},     {"failures", r.failures}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"crimmins", "decomposition", "vonneumann", "hardy",
                                              "blaschke-lemma"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  SuiteResult out;
  out.suite = name;
  if (name == "crimmins") {
    out.absorb(crimmins_equivalence(cfg));
    out.absorb(negative_classification(cfg, 100));
  } else if (name == "decomposition") {
    out.absorb(canonical_decomposition_suite(cfg));
    out.absorb(kernel_decomposition_suite(cfg));
  } else if (name == "vonneumann") {
    out.absorb(von_neumann_closed_form());
    out.absorb(von_neumann_suite(cfg));
    out.absorb(c00_suite(cfg));
  } else if (name == "hardy") {
    out.absorb(hardy_exactness(cfg));
    out.absorb(inner_recovery(cfg));
    out.absorb(model_recovery(cfg));
  } else if (name == "blaschke-lemma") {
    out.absorb(blaschke_lemma(cfg));
  } else {
    throw InputError("unknown suite \"" + name + "\"");
  }
  return out;
}

SuiteResult crimmins_equivalence(const SuiteConfig& cfg) {
  Recorder rec("crimmins-equivalence");
  constexpr double kBound = 1e-8;
  rec.bound("crimmins_residual", kBound);
  rec.bound("factor_residual", kBound);
  rec.bound("sebestyen_residual", kBound);
  rec.bound("norm_excess", cfg.tol.eq);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng = trial_rng(cfg.seed, i);
    try {
      const ProjectionPair pair = random_gaussian_pair(rng, cfg.dim, cfg.tol);
      const ComplexMatrix t = pair.product();
      const ClassificationReport r = classify(t, cfg.tol);
      bool ok = rec.observe("crimmins_residual", r.crimmins_residual);
      ok = rec.observe("factor_residual", r.factor_residual) && ok;
      ok = rec.observe("sebestyen_residual", r.sebestyen_residual) && ok;
      ok = rec.observe("norm_excess", std::max(0.0, r.norm - 1.0)) && ok;
      ok = ok && r.is_product && classify(t.adjoint(), cfg.tol).is_product;
      rec.check(ok, trial_label(i) + ": product of projections not recognized");
    } catch (const std::exception& e) {
      rec.fail(trial_label(i) + ": " + e.what());
    }
  }
  return rec.finish();
}

SuiteResult negative_classification(const SuiteConfig& cfg, std::size_t count) {
  Recorder rec("negative-classification");
  for (double c : {0.3, 0.5, 0.9}) {
    const ComplexMatrix t = c * ComplexMatrix::Identity(cfg.dim, cfg.dim);
    const ClassificationReport r = classify(t, cfg.tol);
    rec.check(!r.is_product, "c I with c = " + std::to_string(c) + " accepted");
  }
  std::size_t produced = 0;
  for (std::uint64_t i = 0; produced < count; ++i) {
    Rng rng = trial_rng(cfg.seed ^ kNegativeStream, i);
    const ComplexMatrix t = random_strict_contraction(rng, cfg.dim);
    const double crimmins = operator_norm(t * t.adjoint() * t - t * t);
    if (crimmins <= 1e-4) continue;
    ++produced;
    try {
      rec.check(!classify(t, cfg.tol).is_product, "strict contraction " + std::to_string(i) + " accepted");
    } catch (const std::exception& e) {
      rec.fail("strict contraction " + std::to_string(i) + ": " + e.what());
    }
  }
  return rec.finish();
}

SuiteResult canonical_decomposition_suite(const SuiteConfig& cfg) {
  Recorder rec("canonical-decomposition");
  constexpr double kBound = 1e-8;
  rec.bound("unitary_vs_intersection", kBound);
  rec.bound("cnu_vs_complement", kBound);
  rec.bound("unitary_block_defect", 1e-7);
  rec.bound("isometric_on_unitary_part", cfg.tol.eq);
  rec.bound("cnu_restriction_crimmins", 10 * cfg.tol.eq);
  const Tolerances tol = with_eq(cfg.tol, kBound);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng = trial_rng(cfg.seed, i);
    try {
      const ProjectionPair pair = random_gaussian_pair(rng, cfg.dim, cfg.tol);
      const ComplexMatrix t = pair.product();
      const Index n = pair.dim();
      const Subspace hu = kernel(t - ComplexMatrix::Identity(n, n), cfg.tol, kUnitScale);
      const Subspace meet = intersect(orthonormal_range(pair.p1(), cfg.tol, kUnitScale),
                                      orthonormal_range(pair.p2(), cfg.tol, kUnitScale), cfg.tol);
      const Subspace hcnu = join(kernel(t, cfg.tol, kUnitScale), kernel(t.adjoint(), cfg.tol, kUnitScale), cfg.tol);
      bool ok = hu.dim() == meet.dim() && hcnu.dim() + hu.dim() == n;
      ok = rec.observe("unitary_vs_intersection", subspace_distance(hu, meet)) && ok;
      ok = rec.observe("cnu_vs_complement", subspace_distance(hcnu, complement(hu))) && ok;

      const CanonicalDecomposition dec = canonical_decomposition(pair, tol);
      ok = rec.observe("unitary_block_defect", dec.unitarity_defect) && ok;
      const ComplexMatrix& b = dec.cnu_block;
      ok = rec.observe("cnu_restriction_crimmins",
                       b.size() == 0 ? 0.0 : operator_norm(b * b.adjoint() * b - b * b)) && ok;

      // ‖T f‖ = ‖f‖ on H_u, and < 1 for unit vectors with a cnu component.
      Rng probe = trial_rng(cfg.seed ^ kProbeStream, i);
      if (!hu.is_trivial()) {
        const ComplexVector f = random_unit_in(probe, hu);
        ok = rec.observe("isometric_on_unitary_part", std::abs((t * f).norm() - 1.0)) && ok;
      }
      if (!hcnu.is_trivial()) {
        ComplexVector f = random_gaussian(probe, n, 1).col(0);
        f.normalize();
        ok = ok && (t * f).norm() < 1.0;
      }
      rec.check(ok, trial_label(i) + ": decomposition identity failed");
    } catch (const std::exception& e) {
      rec.fail(trial_label(i) + ": " + e.what());
    }
  }
  return rec.finish();
}

SuiteResult kernel_decomposition_suite(const SuiteConfig& cfg) {
  Recorder rec("kernel-decomposition");
  constexpr double kBound = 1e-8;
  rec.bound("join_vs_kernel", kBound);
  rec.bound("summand_overlap", kBound);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng = trial_rng(cfg.seed, i);
    try {
      const ProjectionPair pair = random_gaussian_pair(rng, cfg.dim, cfg.tol);
      const KernelDecomposition kd = kernel_decomposition(pair, with_eq(cfg.tol, kBound));
      const Subspace sum = join(kd.coupled, kd.annihilated, cfg.tol);
      const Subspace ker = kernel(pair.product(), cfg.tol, kUnitScale);
      const double overlap =
          kd.coupled.is_trivial() || kd.annihilated.is_trivial()
              ? 0.0
              : operator_norm(kd.coupled.frame().adjoint() * kd.annihilated.frame());
      bool ok = rec.observe("join_vs_kernel", subspace_distance(sum, ker));
      ok = rec.observe("summand_overlap", overlap) && ok;
      rec.check(ok && sum.dim() == ker.dim(), trial_label(i) + ": kernel identity failed");
    } catch (const std::exception& e) {
      rec.fail(trial_label(i) + ": " + e.what());
    }
  }
  return rec.finish();
}

SuiteResult von_neumann_closed_form() {
  Recorder rec("von-neumann-45deg");
  rec.bound("closed_form_error", 1e-12);
  const Tolerances tol;
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p1(0, 0) = 1.0;
  ComplexMatrix p2 = ComplexMatrix::Constant(2, 2, 0.5);
  const ProjectionPair pair = ProjectionPair::make(p1, p2, tol);
  AlternatingOptions opts;
  opts.tol_conv = 1e-300;  // run the full 30 steps
  opts.max_iter = 30;
  const IterationTrace trace = von_neumann_limit(pair, opts, tol);
  rec.check(trace.rows.size() == 30, "trace length");
  for (const TraceRow& row : trace.rows) {
    const double expected = std::pow(0.5, static_cast<double>(row.m) - 1.0) / std::numbers::sqrt2;
    rec.check(rec.observe("closed_form_error", std::abs(row.residual - expected)),
              "m = " + std::to_string(row.m));
  }
  return rec.finish();
}

SuiteResult von_neumann_suite(const SuiteConfig& cfg) {
  Recorder rec("von-neumann");
  rec.bound("final_residual", 1e-10);
  rec.bound("limit_vs_intersection", 1e-8);
  rec.bound("monotonicity_excess", cfg.tol.eq);
  AlternatingOptions opts;  // tol_conv 1e-10, max_iter 10^4
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng = trial_rng(cfg.seed, i);
    try {
      const ProjectionPair pair = random_halmos_pair(rng, cfg.dim, 0.05, cfg.tol);
      const IterationTrace trace = von_neumann_limit(pair, opts, cfg.tol);
      const Subspace meet = intersect(orthonormal_range(pair.p1(), cfg.tol, kUnitScale),
                                      orthonormal_range(pair.p2(), cfg.tol, kUnitScale), cfg.tol);
      bool ok = trace.converged;
      ok = rec.observe("final_residual", trace.rows.back().residual) && ok;
      ok = rec.observe("limit_vs_intersection", operator_norm(trace.limit - projector(meet))) && ok;
      double excess = 0.0;
      for (std::size_t k = 1; k < trace.rows.size(); ++k) {
        excess = std::max(excess, trace.rows[k].residual - trace.rows[k - 1].residual);
      }
      ok = rec.observe("monotonicity_excess", excess) && ok;
      rec.check(ok, trial_label(i) + ": alternating projections did not reach P_{H_u}");
    } catch (const std::exception& e) {
      rec.fail(trial_label(i) + ": " + e.what());
    }
  }
  return rec.finish();
}

SuiteResult c00_suite(const SuiteConfig& cfg) {
  Recorder rec("c00-decay");
  rec.bound("steps_forward", 1e4);
  rec.bound("steps_adjoint", 1e4);
  const Tolerances tol = with_eq(cfg.tol, 1e-8);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng = trial_rng(cfg.seed, i);
    try {
      const ProjectionPair pair = random_halmos_pair(rng, cfg.dim, 0.05, cfg.tol);
      const DecayProfile d = c00_decay_check(pair, 10'000, tol);
      bool ok = rec.observe("steps_forward", static_cast<double>(d.forward_steps));
      ok = rec.observe("steps_adjoint", static_cast<double>(d.adjoint_steps)) && ok;
      rec.check(ok, trial_label(i) + ": cnu powers did not decay");
    } catch (const std::exception& e) {
      rec.fail(trial_label(i) + ": " + e.what());
    }
  }
  return rec.finish();
}

SuiteResult hardy_exactness(const SuiteConfig& cfg) {
  Recorder rec("hardy-exactness");
  rec.bound("inner_projection_defect", 1e-10);
  rec.bound("intersection_vs_lcm", 1e-8);
  rec.bound("model_dimension_error", 0.0);
  const hardy::HardyTruncation trunc{cfg.truncation};
  const std::vector<hardy::BlaschkeProduct> set{
      product_of({0.0}), product_of({0.0, 0.0}), product_of({0.5}), product_of({0.0, 0.5})};
  std::vector<Subspace> inner;
  for (const auto& b : set) {
    try {
      const ComplexMatrix p = hardy::inner_projection_matrix(b, trunc, cfg.tol);
      const hardy::ModelSpace q = hardy::model_space_frame(b, trunc, cfg.tol);
      bool ok = rec.observe("inner_projection_defect", projection_defect(p));
      ok = rec.observe("model_dimension_error",
                       std::abs(static_cast<double>(q.space.dim()) -
                                static_cast<double>(b.degree()))) && ok;
      rec.check(ok, "inner projection of degree " + std::to_string(b.degree()));
      inner.push_back(complement(q.space));
    } catch (const std::exception& e) {
      rec.fail(e.what());
      inner.push_back(Subspace::trivial(static_cast<Index>(cfg.truncation)));
    }
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      try {
        const Subspace meet = intersect(inner[i], inner[j], cfg.tol);
        const Subspace lcm = hardy::inner_subspace(hardy::blaschke_lcm(set[i], set[j]), trunc, cfg.tol);
        rec.check(rec.observe("intersection_vs_lcm", subspace_distance(meet, lcm)),
                  "pair " + std::to_string(i) + "," + std::to_string(j));
      } catch (const std::exception& e) {
        rec.fail(e.what());
      }
    }
  }
  return rec.finish();
}

std::vector<hardy::BlaschkeProduct> recovery_pool() {
  const Complex i(0.0, 1.0);
  return {product_of({0.0}),
          product_of({0.0, 0.0}),
          product_of({0.5}),
          product_of({0.0, 0.5}),
          product_of({0.3 + 0.4 * i, -0.6}),
          product_of({0.8 * std::exp(i * (std::numbers::pi / 3.0)), -0.3, 0.2 - 0.5 * i})};
}

SuiteResult inner_recovery(const SuiteConfig& cfg) {
  Recorder rec("inner-recovery");
  rec.bound("factorization_residual", 1e-6);
  rec.bound("range_adjoint_residual", 1e-6);
  rec.bound("kernel_residual", 1e-6);
  rec.bound("unitary_lcm_residual", 1e-6);
  rec.bound("unitary_dim_deficit", 0.0);
  const auto pool = recovery_pool();
  const hardy::HardyTruncation trunc{cfg.truncation};
  const hardy::HardyTruncation oracle{2 * cfg.truncation};
  // T(b, a) = T(a, b)*, so unordered pairs cover every ordered pair.
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a; b < pool.size(); ++b) {
      const std::string label = "pair " + std::to_string(a) + "," + std::to_string(b);
      try {
        const auto pair = hardy::InnerPair::make(pool[a], pool[b], trunc);
        const hardy::InnerProductReport r = hardy::product_inner_check(pair, cfg.tol);
        bool ok = rec.observe("factorization_residual", r.factorization_residual);
        ok = rec.observe("range_adjoint_residual", r.range_adjoint_residual) && ok;
        ok = rec.observe("kernel_residual", r.kernel_residual) && ok;
        ok = rec.observe("unitary_lcm_residual", r.unitary_lcm_residual) && ok;
        const double floor_dim = static_cast<double>(cfg.truncation) -
                                 static_cast<double>(pool[a].degree() + pool[b].degree());
        ok = rec.observe("unitary_dim_deficit",
                         std::max(0.0, floor_dim - static_cast<double>(r.unitary_dim))) && ok;

        // Same zeros at twice the truncation.
        const hardy::ModelSpace q1 = hardy::model_space_frame(pool[a], oracle, cfg.tol);
        const hardy::ModelSpace q2 = hardy::model_space_frame(pool[b], oracle, cfg.tol);
        const FundamentalSubspaces fine =
            fundamental_subspaces(low_rank_inner_product(q1.space, q2.space), cfg.tol, kUnitScale);
        const auto phi_fine =
            hardy::smallest_beurling_containing(fine.range, fine.cokernel, oracle, cfg.tol);
        const auto phi_adj_fine =
            hardy::smallest_beurling_containing(fine.adjoint_range, fine.kernel, oracle, cfg.tol);
        ok = ok && hardy::zeros_match(r.phi_t.zeros(), phi_fine.inner.zeros(), 1e-4) &&
             hardy::zeros_match(r.phi_t_adj.zeros(), phi_adj_fine.inner.zeros(), 1e-4);
        rec.check(ok, label);
      } catch (const std::exception& e) {
        rec.fail(label + ": " + e.what());
      }
    }
  }
  return rec.finish();
}

SuiteResult model_recovery(const SuiteConfig& cfg) {
  Recorder rec("model-recovery");
  rec.bound("factorization_residual", 1e-6);
  rec.bound("range_adjoint_residual", 1e-6);
  rec.bound("kernel_residual", 1e-6);
  const auto pool = recovery_pool();
  const hardy::HardyTruncation trunc{cfg.truncation};
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a; b < pool.size(); ++b) {
      const std::string label = "pair " + std::to_string(a) + "," + std::to_string(b);
      try {
        const auto pair = hardy::InnerPair::make(pool[a], pool[b], trunc);
        const hardy::ModelProductReport r = hardy::product_model_check(pair, cfg.tol);
        bool ok = !r.family_empty && r.is_model_product;
        ok = rec.observe("factorization_residual", r.factorization_residual) && ok;
        ok = rec.observe("range_adjoint_residual", r.range_adjoint_residual) && ok;
        ok = rec.observe("kernel_residual", r.kernel_residual) && ok;
        rec.check(ok, label);
      } catch (const std::exception& e) {
        rec.fail(label + ": " + e.what());
      }
    }
  }

  // Operators whose ker T* holds no shift-invariant subspace.
  const Index n = static_cast<Index>(cfg.truncation);
  std::vector<std::pair<std::string, ComplexMatrix>> empty_cases;
  empty_cases.emplace_back("identity (co-isometry)", ComplexMatrix::Identity(n, n));
  empty_cases.emplace_back("P_{zH²}", hardy::inner_projection_matrix(pool[0], trunc, cfg.tol));
  empty_cases.emplace_back("P_{zH²} P_{b_½H²}",
                           hardy::inner_projection_matrix(pool[0], trunc, cfg.tol) *
                               hardy::inner_projection_matrix(pool[2], trunc, cfg.tol));
  for (const auto& [name, t] : empty_cases) {
    try {
      const hardy::ModelProductReport r = hardy::model_product_check(t, trunc, cfg.tol);
      rec.check(r.family_empty && !r.is_model_product, "J_T-empty instance " + name);
    } catch (const std::exception& e) {
      rec.fail(name + ": " + e.what());
    }
  }
  return rec.finish();
}

SuiteResult blaschke_lemma(const SuiteConfig& cfg) {
  Recorder rec("blaschke-lemma");
  rec.bound("witness_distance", 1e-8);
  const Complex i(0.0, 1.0);
  const std::vector<Complex> left_pool{0.0, 0.5, -0.4 * i, 0.3 + 0.3 * i};
  const std::vector<Complex> right_pool{-0.5, 0.6 * i, 0.0, 0.2 - 0.7 * i};
  const hardy::HardyTruncation trunc{cfg.truncation};
  for (std::size_t m1 = 0; m1 <= 4; ++m1) {
    for (std::size_t m2 = 0; m2 <= 4; ++m2) {
      const std::string label = "(m1, m2) = (" + std::to_string(m1) + ", " + std::to_string(m2) + ")";
      try {
        const auto b1 = product_of({left_pool.begin(), left_pool.begin() + static_cast<long>(m1)});
        const auto b2 = product_of({right_pool.begin(), right_pool.begin() + static_cast<long>(m2)});
        const std::size_t dim = hardy::intersection_dimension(b1, b2, trunc, cfg.tol);
        const std::size_t expected = m1 > m2 ? m1 - m2 : 0;
        rec.check((dim == 0) == (m1 <= m2) && dim == expected, label);
      } catch (const std::exception& e) {
        rec.fail(label + ": " + e.what());
      }
    }
  }
  try {
    const Subspace w = hardy::model_inner_intersection(product_of({0.0, 0.0}), product_of({0.5}),
                                                       trunc, cfg.tol);
    ComplexMatrix v = ComplexMatrix::Zero(static_cast<Index>(cfg.truncation), 1);
    v(0, 0) = -0.5;
    v(1, 0) = 1.0;
    v.normalize();
    const Subspace expected = Subspace::from_frame(v, cfg.tol);
    rec.check(w.dim() == 1 && rec.observe("witness_distance", subspace_distance(w, expected)),
              "witness for (z², b_½) is span{z - ½}");
  } catch (const std::exception& e) {
    rec.fail(std::string("witness: ") + e.what());
  }
  return rec.finish();
}

}  // namespace projprod::suites
