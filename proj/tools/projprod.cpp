// projprod: command-line front end for the projection-product library.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict or failed
// suite, 2 input error, 3 truncation too small.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "projprod/alternating.hpp"
#include "projprod/blaschke.hpp"
#include "projprod/errors.hpp"
#include "projprod/hardy.hpp"
#include "projprod/io.hpp"
#include "projprod/products.hpp"
#include "projprod/suites.hpp"

namespace {

using namespace projprod;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitTruncation = 3;

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 1000;
  std::size_t dim = 8;
  std::size_t truncation = 256;
  std::optional<double> tol_eq;
  std::optional<double> tol_rank;
  std::string out;

  Tolerances tolerances() const {
    Tolerances tol = Tolerances::from_environment();
    if (tol_eq) tol.eq = *tol_eq;
    if (tol_rank) tol.rank = *tol_rank;
    tol.validate();
    return tol;
  }

  void validate() const {
    if (trials < 1) throw InputError("--trials must be at least 1");
    if (dim < 1) throw InputError("--dim must be at least 1");
    if (truncation < 2) throw InputError("--truncation must be at least 2");
  }

  hardy::HardyTruncation hardy_truncation() const { return hardy::HardyTruncation{truncation}; }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << text;
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

ComplexMatrix load_matrix(const std::string& path) {
  try {
    return io::matrix_from_json(io::read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

hardy::BlaschkeProduct load_blaschke(const std::string& path, double max_modulus) {
  try {
    return io::blaschke_from_json(io::read_json_file(path), max_modulus);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

ProjectionPair load_pair(const std::string& f1, const std::string& f2, const Tolerances& tol) {
  const ComplexMatrix p1 = load_matrix(f1);
  const ComplexMatrix p2 = load_matrix(f2);
  if (p1.rows() != p2.rows() || p1.cols() != p2.cols()) {
    throw InputError(f1 + " and " + f2 + " have different shapes");
  }
  for (const auto& [path, p] : {std::pair{f1, &p1}, std::pair{f2, &p2}}) {
    if (p->rows() != p->cols()) throw InputError(path + ": not a square matrix");
    if (!is_projection(*p, tol)) {
      throw InputError(path + ": not an orthogonal projection (defect " +
                       io::format_double(projection_defect(*p)) + ")");
    }
  }
  return ProjectionPair::make(p1, p2, tol);
}

int cmd_check(const RunConfig& cfg, const std::string& file) {
  const ClassificationReport r = classify(load_matrix(file), cfg.tolerances());
  emit_json(cfg, io::to_json(r));
  return r.is_product ? 0 : 1;
}

int cmd_decompose(const RunConfig& cfg, const std::string& f1, const std::string& f2) {
  const Tolerances tol = cfg.tolerances();
  const ProjectionPair pair = load_pair(f1, f2, tol);
  emit_json(cfg, io::to_json(canonical_decomposition(pair, tol), kernel_decomposition(pair, tol)));
  return 0;
}

int cmd_alternate(const RunConfig& cfg, const std::string& f1, const std::string& f2,
                  const AlternatingOptions& opts) {
  const Tolerances tol = cfg.tolerances();
  const IterationTrace trace = von_neumann_limit(load_pair(f1, f2, tol), opts, tol);
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  emit(cfg, csv.str());
  const double last = trace.rows.empty() ? 0.0 : trace.rows.back().residual;
  std::cerr << "final_residual=" << io::format_double(last)
            << " converged=" << (trace.converged ? "true" : "false") << "\n";
  return trace.converged ? 0 : 1;
}

int cmd_blaschke(const RunConfig& cfg, const std::string& op, const std::vector<std::string>& args,
                 double max_modulus) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw InputError("blaschke " + op + " expects " + std::to_string(n) + " argument(s)");
    }
  };
  if (op == "lcm" || op == "gcd" || op == "divides") {
    need(2);
    const auto b1 = load_blaschke(args[0], max_modulus);
    const auto b2 = load_blaschke(args[1], max_modulus);
    if (op == "lcm") {
      emit_json(cfg, io::blaschke_to_json(hardy::blaschke_lcm(b1, b2)));
    } else if (op == "gcd") {
      emit_json(cfg, io::blaschke_to_json(hardy::blaschke_gcd(b1, b2)));
    } else {
      emit_json(cfg, json{{"divides", hardy::divides(b1, b2)}});
    }
    return 0;
  }
  if (op == "eval") {
    need(3);
    const auto b = load_blaschke(args[0], max_modulus);
    double re = 0.0;
    double im = 0.0;
    try {
      re = std::stod(args[1]);
      im = std::stod(args[2]);
    } catch (const std::exception&) {
      throw InputError("blaschke eval: point must be given as two numbers RE IM");
    }
    emit_json(cfg, io::complex_to_json(hardy::blaschke_eval(b, Complex(re, im))));
    return 0;
  }
  throw InputError("unknown blaschke operation \"" + op + "\" (lcm, gcd, divides, eval)");
}

int cmd_inner_demo(const RunConfig& cfg, const std::string& f1, const std::string& f2,
                   double max_modulus) {
  const auto pair = hardy::InnerPair::make(load_blaschke(f1, max_modulus),
                                           load_blaschke(f2, max_modulus), cfg.hardy_truncation());
  const hardy::InnerProductReport r = hardy::product_inner_check(pair, cfg.tolerances());
  emit_json(cfg, io::to_json(r));
  return r.passed ? 0 : 1;
}

int cmd_model_demo(const RunConfig& cfg, const std::vector<std::string>& files,
                   const std::string& operator_file, double max_modulus) {
  const Tolerances tol = cfg.tolerances();
  hardy::ModelProductReport r;
  if (!operator_file.empty()) {
    if (!files.empty()) throw InputError("model-demo takes either two Blaschke files or --operator");
    const ComplexMatrix t = load_matrix(operator_file);
    hardy::HardyTruncation trunc = cfg.hardy_truncation();
    trunc.order = static_cast<std::size_t>(t.rows());
    r = hardy::model_product_check(t, trunc, tol);
  } else {
    if (files.size() != 2) throw InputError("model-demo expects two Blaschke files");
    const auto pair = hardy::InnerPair::make(load_blaschke(files[0], max_modulus),
                                             load_blaschke(files[1], max_modulus),
                                             cfg.hardy_truncation());
    r = hardy::product_model_check(pair, tol);
  }
  emit_json(cfg, io::to_json(r));
  if (r.family_empty) std::cerr << r.classification << "\n";
  return r.is_model_product ? 0 : 1;
}

int cmd_propcheck(const RunConfig& cfg, const std::string& name) {
  suites::SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.trials = cfg.trials;
  sc.dim = static_cast<Index>(cfg.dim);
  sc.truncation = cfg.truncation;
  sc.tol = cfg.tolerances();
  const suites::SuiteResult r = suites::run_suite(name, sc);
  emit_json(cfg, suites::to_json(r));
  std::cerr << name << ": " << (r.checks - r.failed) << " passed, " << r.failed << " failed\n";
  for (const suites::Metric& m : r.metrics) {
    std::cerr << "  " << m.name << " worst " << io::format_double(m.worst) << " (bound "
              << io::format_double(m.bound) << ")" << (m.ok() ? "" : "  FAIL") << "\n";
  }
  for (const std::string& f : r.failures) std::cerr << "  failure: " << f << "\n";
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Products of two orthogonal projections: classification, decomposition, "
               "alternating projections and Hardy-space models"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--tol-eq", cfg.tol_eq, "equality tolerance (default 1e-9 or $PROJPROD_TOL_EQ)");
  app.add_option("--tol-rank", cfg.tol_rank, "relative rank tolerance (default 1e-10)");
  app.add_option("--truncation", cfg.truncation, "Hardy truncation order N");
  app.add_option("--seed", cfg.seed, "root seed");
  app.add_option("--trials", cfg.trials, "number of random trials");
  app.add_option("--dim", cfg.dim, "ambient dimension for random pairs");
  app.add_option("--out", cfg.out, "write the report here instead of standard output");
  double max_modulus = hardy::kDefaultMaxZeroModulus;
  app.add_option("--max-modulus", max_modulus, "largest accepted Blaschke zero modulus");

  std::string file1;
  std::string file2;

  auto* check = app.add_subcommand("check", "classify an operator as a product of two projections");
  check->add_option("matrix", file1)->required();

  auto* decompose = app.add_subcommand("decompose", "H_u / H_cnu and kernel decomposition of P1 P2");
  decompose->add_option("p1", file1)->required();
  decompose->add_option("p2", file2)->required();

  AlternatingOptions opts;
  auto* alternate = app.add_subcommand("alternate", "CSV trace of (P1 P2)^m against P_{H_u}");
  alternate->add_option("p1", file1)->required();
  alternate->add_option("p2", file2)->required();
  alternate->add_option("--tol-conv", opts.tol_conv, "stop once the residual is below this");
  alternate->add_option("--max-iter", opts.max_iter, "iteration cap");

  std::string op;
  std::vector<std::string> blaschke_args;
  auto* blaschke = app.add_subcommand("blaschke", "lcm, gcd, divides or eval on Blaschke products");
  blaschke->add_option("op", op, "lcm | gcd | divides | eval")->required();
  blaschke->add_option("args", blaschke_args, "Blaschke files (and RE IM for eval)");

  auto* inner = app.add_subcommand("inner-demo", "recover phi_T, phi_T* for P_{phi1 H2} P_{phi2 H2}");
  inner->add_option("phi1", file1)->required();
  inner->add_option("phi2", file2)->required();

  std::vector<std::string> model_files;
  std::string operator_file;
  auto* model = app.add_subcommand("model-demo", "recover psi_T, psi_T* for P_{Q_phi1} P_{Q_phi2}");
  model->add_option("phis", model_files, "two Blaschke files");
  model->add_option("--operator", operator_file, "check an arbitrary N x N operator instead");

  std::string suite;
  auto* propcheck = app.add_subcommand("propcheck", "run a seeded property suite");
  propcheck->add_option("suite", suite, "crimmins | decomposition | vonneumann | hardy | blaschke-lemma")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    cfg.validate();
    if (*check) return cmd_check(cfg, file1);
    if (*decompose) return cmd_decompose(cfg, file1, file2);
    if (*alternate) return cmd_alternate(cfg, file1, file2, opts);
    if (*blaschke) return cmd_blaschke(cfg, op, blaschke_args, max_modulus);
    if (*inner) return cmd_inner_demo(cfg, file1, file2, max_modulus);
    if (*model) return cmd_model_demo(cfg, model_files, operator_file, max_modulus);
    if (*propcheck) return cmd_propcheck(cfg, suite);
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "suggested truncation: " << e.suggested_order() << "\n";
    return kExitTruncation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
