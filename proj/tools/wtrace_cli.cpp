// Command-line driver: runs named verification suites over the built-in
// corpora and exposes individual quantities for ad-hoc operands. Exit code 0
// means every emitted check passed; 1 means at least one failed; 2 means the
// configuration or an operand could not be used.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtrace/cocycles.hpp"
#include "wtrace/expr_parse.hpp"
#include "wtrace/loop_geometry.hpp"
#include "wtrace/suites.hpp"

namespace {

wtrace::DiagonalWeight weight_by_name(const std::string& name) {
  using wtrace::DiagonalWeight;
  if (name == "laplace_plus") return DiagonalWeight::laplace_plus();
  if (name == "abs_d_plus") return DiagonalWeight::abs_d_plus();
  if (name == "shifted_sq") return DiagonalWeight::shifted_sq();
  if (name == "laplace_plus_one") return DiagonalWeight::laplace_plus_one();
  if (name == "quartic_plus") return DiagonalWeight::quartic_plus();
  throw std::invalid_argument("unknown weight: " + name);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace wtrace;

  CLI::App app{
      "weighted-trace calculus for banded operators on circle modes: "
      "verification suites and single-quantity computations"};
  app.require_subcommand(1);

  std::string algebra_path;
  std::string suite = "all";
  std::string convention = "kernel-plus";
  std::string format = "json";
  std::string output;
  std::int64_t truncation = 256;
  int depth = 8;
  int jobs = 1;
  double tol = 0.0;

  const std::vector<std::string> weight_names{
      "laplace_plus", "abs_d_plus", "shifted_sq", "laplace_plus_one",
      "quartic_plus"};

  CLI::App* run = app.add_subcommand("run", "run a named verification suite");
  run->add_option("--algebra", algebra_path,
                  "structure-constant file (default: built-in su(2))");
  run->add_option("--suite", suite, "suite name")
      ->check(CLI::IsMember(suite_names()));
  run->add_option("--truncation", truncation,
                  "mode cutoff for dense and extrapolated routes");
  run->add_option("--depth", depth, "expansion depth for compositions");
  run->add_option("--tol", tol, "override every check tolerance");
  run->add_option("--convention", convention, "kernel-mode handling")
      ->check(CLI::IsMember({"kernel-plus", "kernel-excluded"}));
  run->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--jobs", jobs, "worker threads for suite execution");
  run->add_option("--output", output, "write the report to this file");

  CLI::App* comp =
      app.add_subcommand("compute", "compute one quantity for given operands");
  std::string quantity;
  std::vector<std::string> operands;
  std::string weight_name = "laplace_plus";
  double s_param = 0.5;
  int fibre_dim = 1;
  comp->add_option("quantity", quantity, "what to compute")
      ->required()
      ->check(CLI::IsMember({"trace", "res", "radul", "schwinger", "lambda",
                             "first_chern", "ricci", "symplectic"}));
  comp->add_option("operands", operands,
                   "operator expressions (trace, res, radul, schwinger) or "
                   "loop monomials (lambda, first_chern, ricci, symplectic)")
      ->expected(1, 2);
  comp->add_option("--algebra", algebra_path,
                   "structure-constant file (default: built-in su(2))");
  comp->add_option("--weight", weight_name, "regularizing weight")
      ->check(CLI::IsMember(weight_names));
  comp->add_option("--s", s_param, "metric exponent for ricci/first_chern");
  comp->add_option("--fibre-dim", fibre_dim, "fibre dimension for operators");
  comp->add_option("--depth", depth, "expansion depth for compositions");
  comp->add_option("--convention", convention, "kernel-mode handling")
      ->check(CLI::IsMember({"kernel-plus", "kernel-excluded"}));
  comp->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  comp->add_option("--output", output, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;  // usage errors share exit code 2
  }

  try {
    const Convention conv = convention == "kernel-plus"
                                ? Convention::kKernelPlus
                                : Convention::kKernelExcluded;
    AlgebraPtr alg;
    if (!algebra_path.empty()) {
      alg = std::make_shared<const LieAlgebraData>(
          LieAlgebraData::load(algebra_path));
    }

    std::vector<CheckReport> reports;
    if (run->parsed()) {
      SuiteConfig cfg;
      cfg.algebra = alg;
      cfg.truncation = truncation;
      cfg.depth = depth;
      cfg.tol_override = tol;
      cfg.convention = conv;
      cfg.jobs = jobs;
      reports = run_suite(suite, cfg);
    } else {
      if (!alg) {
        alg = std::make_shared<const LieAlgebraData>(LieAlgebraData::su2());
      }
      const DiagonalWeight q = weight_by_name(weight_name);
      const GeometryConfig gcfg{s_param, conv, depth};
      auto need = [&](std::size_t n) {
        if (operands.size() != n) {
          throw std::invalid_argument(quantity + " needs " +
                                      std::to_string(n) + " operand(s)");
        }
      };
      auto op = [&](std::size_t i) {
        return parse_operator_expr(operands[i], conv, fibre_dim, depth);
      };
      auto lp = [&](std::size_t i) {
        return parse_loop_monomial(operands[i], alg);
      };
      CheckReport r;
      r.check_id = "compute/" + quantity;
      r.anchor = quantity + "(" + join(operands) + ")";
      const auto t0 = std::chrono::steady_clock::now();
      cplx value;
      if (quantity == "trace") {
        need(1);
        value = weighted_trace(op(0), q);
      } else if (quantity == "res") {
        need(1);
        value = wres_from_modes(op(0), q);
      } else if (quantity == "radul") {
        need(2);
        value = radul_trace_route(op(0), op(1), q);
      } else if (quantity == "schwinger") {
        need(2);
        value = schwinger(op(0), op(1), q);
      } else if (quantity == "lambda") {
        need(2);
        value = polarization_cocycle(ad_operator(lp(0), conv),
                                     ad_operator(lp(1), conv), q);
      } else if (quantity == "first_chern") {
        need(2);
        value = chern_form(lp(0), lp(1), q, gcfg);
      } else if (quantity == "ricci") {
        need(2);
        value = ricci_weighted(lp(0), lp(1), q, gcfg);
      } else {
        need(2);
        value = symplectic_form(lp(0), lp(1));
      }
      const auto t1 = std::chrono::steady_clock::now();
      r.lhs = value;
      r.rhs = value;
      r.abs_err = 0.0;
      r.tol = tol;
      r.pass = true;
      r.runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
              .count();
      reports.push_back(std::move(r));
    }

    std::string text =
        format == "json" ? reports_to_json(reports) : reports_to_csv(reports);
    if (text.empty() || text.back() != '\n') text.push_back('\n');
    if (!output.empty()) {
      std::ofstream f(output);
      if (!f) throw std::runtime_error("cannot write to " + output);
      f << text;
    } else {
      std::fputs(text.c_str(), stdout);
    }
    return all_pass(reports) ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
