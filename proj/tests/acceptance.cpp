// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "projprod/suites.hpp"

namespace {

using namespace projprod;
using namespace projprod::suites;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string worst_of(const SuiteResult& r) {
  std::string out;
  for (const Metric& m : r.metrics) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.2e (<= %.0e)", out.empty() ? "" : ", ", m.name.c_str(),
                  m.worst, m.bound);
    out += buf;
  }
  return out;
}

Outcome from_suite(const SuiteResult& r) {
  Outcome o{r.ok(), std::to_string(r.checks - r.failed) + "/" + std::to_string(r.checks) + " checks"};
  if (const std::string worst = worst_of(r); !worst.empty()) o.detail += "; " + worst;
  if (!r.failures.empty()) o.detail += "; first failure: " + r.failures.front();
  return o;
}

SuiteConfig config(std::size_t trials, Index dim) {
  SuiteConfig c;
  c.seed = 42;
  c.trials = trials;
  c.dim = dim;
  c.truncation = 256;
  return c;
}

int failures = 0;

void criterion(int id, const std::string& title, double time_limit,
               const std::function<Outcome()>& run) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0.0 && secs > time_limit) {
    o.ok = false;
    o.detail += "; runtime above " + std::to_string(static_cast<int>(time_limit)) + " s";
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %2d %s [%.1f s] %s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  std::string crimmins_report;
  std::string decomposition_report;
  std::string lemma_report;
  std::string model_report;

  criterion(1, "Crimmins equivalence (1000 pairs, C^8)", 10.0, [&] {
    const SuiteResult r = crimmins_equivalence(config(1000, 8));
    crimmins_report = to_json(r).dump();
    return from_suite(r);
  });
  criterion(2, "negative classification", 0.0, [] {
    return from_suite(negative_classification(config(1000, 8), 100));
  });
  criterion(3, "canonical decomposition (500 pairs, C^10)", 0.0, [&] {
    const SuiteResult r = canonical_decomposition_suite(config(500, 10));
    decomposition_report = to_json(r).dump();
    return from_suite(r);
  });
  criterion(4, "von Neumann limit", 0.0, [] {
    SuiteResult r;
    r.suite = "von-neumann";
    r.absorb(von_neumann_closed_form());
    r.absorb(von_neumann_suite(config(500, 10)));
    return from_suite(r);
  });
  criterion(5, "C00 decay of the cnu block", 0.0, [] { return from_suite(c00_suite(config(500, 10))); });
  criterion(6, "kernel decomposition identity", 0.0, [] {
    return from_suite(kernel_decomposition_suite(config(500, 10)));
  });
  criterion(7, "Hardy exactness (N = 256)", 0.0, [] { return from_suite(hardy_exactness(config(1, 8))); });
  criterion(8, "inner-projection recovery (pool of 6, N = 256 vs 512)", 60.0, [] {
    return from_suite(inner_recovery(config(1, 8)));
  });
  criterion(9, "model-projection recovery", 0.0, [&] {
    const SuiteResult r = model_recovery(config(1, 8));
    model_report = to_json(r).dump();
    return from_suite(r);
  });
  criterion(10, "Q_b1 ∩ b2H² dimension sweep (m1, m2 <= 4)", 0.0, [&] {
    const SuiteResult r = blaschke_lemma(config(1, 8));
    lemma_report = to_json(r).dump();
    return from_suite(r);
  });
  criterion(11, "determinism (repeat with the same seed)", 0.0, [&] {
    std::vector<std::string> differing;
    auto same = [&](const std::string& name, const std::string& first, const std::string& second) {
      if (first.empty() || first != second) differing.push_back(name);
    };
    same("crimmins", crimmins_report, to_json(crimmins_equivalence(config(1000, 8))).dump());
    same("decomposition", decomposition_report,
         to_json(canonical_decomposition_suite(config(500, 10))).dump());
    same("blaschke-lemma", lemma_report, to_json(blaschke_lemma(config(1, 8))).dump());
    same("model-recovery", model_report, to_json(model_recovery(config(1, 8))).dump());
    const SuiteConfig vn = config(50, 10);
    same("vonneumann", to_json(von_neumann_suite(vn)).dump(), to_json(von_neumann_suite(vn)).dump());
    if (differing.empty()) return Outcome{true, "5 suites reproduced byte for byte"};
    std::string list;
    for (const auto& d : differing) list += (list.empty() ? "" : ", ") + d;
    return Outcome{false, "reports differ: " + list};
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
