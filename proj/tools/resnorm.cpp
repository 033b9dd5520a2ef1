// resnorm: batch front end for the resource-norm library. Computes
// monotones on zoo or user-supplied states, reproduces the reference
// tables and irreversibility scenarios, and exposes the conic solver for
// debugging. Exit codes: 0 success, 1 check failure, 2 input error,
// 3 solver failure.

#include "resnorm/conic.hpp"
#include "resnorm/dhtest.hpp"
#include "resnorm/entanglement.hpp"
#include "resnorm/linalg.hpp"
#include "resnorm/rates.hpp"
#include "resnorm/stab.hpp"
#include "resnorm/states.hpp"
#include "resnorm/wigner.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using namespace resnorm;
using nlohmann::json;

constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSolverFailure = 3;

struct Options {
  std::string state;
  std::string norm;
  int copies = 1;
  double eps = 0.0;
  double delta = 0.0;
  double tol = 1e-6;
  int max_iter = 200;
  std::string format = "text";
  std::string out;
  std::string config;
};

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw std::invalid_argument("cannot open output file: " + opt.out);
  f << text;
}

void apply_config(Options& opt) {
  if (opt.config.empty()) return;
  std::ifstream f(opt.config);
  if (!f) throw std::invalid_argument("cannot open config file: " + opt.config);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "tol") opt.tol = std::stod(value);
    else if (key == "max-iter") opt.max_iter = std::stoi(value);
    else throw std::invalid_argument("config: only tolerance keys are accepted, got '" + key + "'");
    if (opt.tol <= 0 || opt.max_iter <= 0)
      throw std::invalid_argument("config: tolerances must be positive");
  }
}

Operator load_state(const Options& opt) {
  if (opt.state.empty()) throw std::invalid_argument("--state is required");
  Operator op;
  if (opt.state.rfind("zoo:", 0) == 0) {
    op = states::zoo_lookup(opt.state.substr(4)).op;
  } else {
    std::ifstream f(opt.state);
    if (!f) throw std::invalid_argument("cannot open state file: " + opt.state);
    std::stringstream buf;
    buf << f.rdbuf();
    op = operator_from_json(buf.str());
  }
  if (opt.copies < 1 || opt.copies > 2)
    throw std::invalid_argument("--copies must be 1 or 2");
  return rates::tensor_power_regrouped(op, opt.copies);
}

int qubit_count(const Operator& x) {
  for (int d : x.dims)
    if (d != 2) throw std::invalid_argument("stabiliser monotones need qubit factors");
  return static_cast<int>(x.dims.size());
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

using MonotoneFn = std::function<double(const Operator&, const Options&)>;

const std::vector<std::pair<std::string, MonotoneFn>>& monotone_table() {
  static const std::vector<std::pair<std::string, MonotoneFn>> table = {
      {"negativity", [](const Operator& x, const Options&) { return entanglement::negativity(x); }},
      {"log-negativity",
       [](const Operator& x, const Options&) { return entanglement::log_negativity(x); }},
      {"reshuffled-negativity",
       [](const Operator& x, const Options&) { return entanglement::reshuffled_negativity(x); }},
      {"tempered-negativity",
       [](const Operator& x, const Options& o) { return entanglement::tempered_negativity(x, o.tol); }},
      {"tempered-reshuffled-negativity",
       [](const Operator& x, const Options& o) {
         return entanglement::tempered_reshuffled_negativity(x, o.tol);
       }},
      {"sep-base",
       [](const Operator& x, const Options& o) { return rates::mu_norm(x, norms::NormTag::SepBase, o.tol); }},
      {"sep-dual",
       [](const Operator& x, const Options& o) {
         return rates::dual_mu_norm(x, norms::NormTag::SepBase, o.tol);
       }},
      {"wigner-norm",
       [](const Operator& x, const Options&) { return wigner::wigner_trace_norm(x); }},
      {"wigner-dual",
       [](const Operator& x, const Options&) { return wigner::wigner_spectral_norm(x); }},
      {"fw-base", [](const Operator& x, const Options& o) { return wigner::fw_base_norm(x, o.tol); }},
      {"fw-dual",
       [](const Operator& x, const Options& o) { return wigner::fw_dual_overlap(x, o.tol); }},
      {"fw-robustness",
       [](const Operator& x, const Options& o) { return wigner::fw_gen_robustness(x, o.tol); }},
      {"tempered-mana",
       [](const Operator& x, const Options& o) { return wigner::tempered_mana(x, o.tol); }},
      {"stab-norm",
       [](const Operator& x, const Options&) { return stab::stab_norm(x.mat, qubit_count(x)); }},
      {"stab-dual",
       [](const Operator& x, const Options&) { return stab::stab_norm_dual(x.mat, qubit_count(x)); }},
      {"stab-base",
       [](const Operator& x, const Options& o) {
         return stab::stab_base_norm(x.mat, qubit_count(x), o.tol);
       }},
      {"stab-dual-overlap",
       [](const Operator& x, const Options&) { return stab::stab_dual_overlap(x, qubit_count(x)); }},
      {"stab-robustness",
       [](const Operator& x, const Options& o) {
         return stab::stab_gen_robustness(x, qubit_count(x), o.tol);
       }},
      {"tempered-stab",
       [](const Operator& x, const Options& o) {
         return stab::tempered_stab_norm(x, qubit_count(x), o.tol);
       }},
      {"ball-value",
       [](const Operator& x, const Options& o) {
         if (o.norm.empty()) throw std::invalid_argument("ball-value needs --norm");
         return dhtest::d_emancipated_min_over_ball(x, {norms::parse_norm_tag(o.norm), x.dims},
                                                    o.eps, o.tol);
       }},
  };
  return table;
}

int cmd_compute(const std::string& monotone, Options& opt) {
  apply_config(opt);
  Operator op = load_state(opt);
  double value = 0.0;
  bool found = false;
  for (const auto& [name, fn] : monotone_table())
    if (name == monotone) {
      value = fn(op, opt);
      found = true;
      break;
    }
  double extra = std::numeric_limits<double>::quiet_NaN();
  if (!found && monotone == "mana") {
    // Report the Wigner trace norm alongside its log.
    value = wigner::wigner_trace_norm(op);
    extra = std::log2(value);
    found = true;
  }
  if (!found) throw std::invalid_argument("unknown monotone: " + monotone);

  std::ostringstream os;
  os.precision(12);
  if (opt.format == "json") {
    json j{{"monotone", monotone}, {"state", opt.state}, {"copies", opt.copies},
           {"value", value}};
    if (!std::isnan(extra)) j["log2_value"] = extra;
    os << j.dump(2) << "\n";
  } else {
    os << monotone << "(" << opt.state << (opt.copies > 1 ? ", 2 copies" : "") << ") = " << value;
    if (!std::isnan(extra)) os << "   (log2 = " << extra << ")";
    os << "\n";
  }
  emit(opt, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int report_table1(Options& opt) {
  struct Row {
    std::string name;
    double computed, expected, tol;
  };
  std::vector<Row> rows;
  const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  for (int n = 1; n <= 4; ++n) {
    // n regrouped copies of Phi_2 form Phi_{2^n}.
    Operator phi = states::max_entangled(1 << n);
    std::string tag = "Phi2^" + std::to_string(n);
    rows.push_back({"negativity(" + tag + ")", entanglement::negativity(phi),
                    std::pow(2.0, n), 1e-9});
    rows.push_back({"reshuffled(" + tag + ")", entanglement::reshuffled_negativity(phi),
                    std::pow(2.0, n), 1e-9});
    rows.push_back({"sep-base(" + tag + ")",
                    rates::mu_norm(phi, norms::NormTag::SepBase),
                    std::pow(2.0, n + 1) - 1.0, 1e-9});
  }
  auto wnorm = [](const Vector& v) { return wigner::wigner_trace_norm(projector(v, {3})); };
  rows.push_back({"wigner-norm(S)", wnorm(states::strange_ket()), 5.0 / 3, 1e-9});
  rows.push_back({"wigner-norm(N)", wnorm(states::norell_ket()), 5.0 / 3, 1e-9});
  rows.push_back({"wigner-norm(H+)", wnorm(states::hadamard_plus_ket()), (1 + 2 * s3) / 3, 1e-9});
  rows.push_back({"stab-norm(T)", stab::stab_norm(states::t_state().mat, 1), (1 + s2) / 2, 1e-9});
  rows.push_back({"stab-norm(Hoggar)", stab::stab_norm(states::hoggar().mat, 3), 11.0 / 4, 1e-9});

  std::ostringstream os;
  os.precision(12);
  bool all = true;
  for (const auto& r : rows) {
    bool ok = std::abs(r.computed - r.expected) <= r.tol;
    all = all && ok;
    os << (ok ? "pass" : "FAIL") << "  " << r.name << "  computed=" << r.computed
       << "  expected=" << r.expected << "  |diff|=" << std::abs(r.computed - r.expected) << "\n";
  }
  os << (all ? "table1: all rows match\n" : "table1: MISMATCH\n");
  emit(opt, os.str());
  return all ? 0 : kExitCheckFailure;
}

int report_appendix_a(Options& opt) {
  auto rep = wigner::verify_appendix_a();
  std::ostringstream os;
  os.precision(12);
  auto line = [&](const char* name, bool ok) {
    os << (ok ? "pass" : "FAIL") << "  " << name << "\n";
  };
  line("wigner table of N^(x)2 (81 entries)", rep.n2_table_ok);
  line("wigner table of X+", rep.xplus_table_ok);
  line("wigner table of X-", rep.xminus_table_ok);
  line("rank-one eigen-decomposition of X+/X-", rep.decomposition_ok);
  line("X+/X- positive semidefinite", rep.psd_ok);
  os << "trace sum  = " << rep.trace_sum << "  (expected 11/3)\n";
  os << "trace diff = " << rep.trace_diff << "  (expected 1)\n";
  line("tempered witness for H+", rep.hplus_witness_ok);
  if (!rep.detail.empty()) os << rep.detail << "\n";
  os << (rep.all_pass ? "appendix-a: pass\n" : "appendix-a: FAIL\n");
  if (!opt.out.empty() && opt.format == "csv") {
    // CSV of the N^(x)2 Wigner table in the appendix row/column layout.
    Operator n2 = kron_pow(projector(states::norell_ket(), {3}), 2);
    emit(opt, wigner::wigner_csv(wigner::wigner_rep(n2)));
    std::cout << os.str();
  } else {
    emit(opt, os.str());
  }
  return rep.all_pass ? 0 : kExitCheckFailure;
}

int report_irreversibility(const std::string& scenario, Options& opt) {
  auto rep = rates::irreversibility_verdict(rates::parse_scenario(scenario), opt.tol);
  std::ostringstream os;
  if (opt.format == "text") {
    os.precision(12);
    os << "scenario: " << rep.scenario << "\n";
    for (const auto& b : rep.bounds)
      os << "  " << b.direction << " = " << b.bound << "   [" << b.formula << "]\n";
    os << "round-trip product = " << rep.product << "\n";
    os << "verdict: " << rep.verdict;
    if (!rep.conditional_on.empty()) os << "  (conditional on " << rep.conditional_on << ")";
    os << "\n";
  } else {
    os << rep.to_json() << "\n";
  }
  emit(opt, os.str());
  return rep.product < 1.0 - 1e-3 ? 0 : kExitCheckFailure;
}

int cmd_report(const std::string& target, Options& opt) {
  apply_config(opt);
  if (target == "table1") return report_table1(opt);
  if (target == "appendix-a") return report_appendix_a(opt);
  if (target.rfind("irreversibility:", 0) == 0)
    return report_irreversibility(target.substr(16), opt);
  throw std::invalid_argument("unknown report target: " + target);
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int cmd_solve(const std::string& path, Options& opt) {
  apply_config(opt);
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open problem dump: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  conic::ConicProgram prog = conic::parse_program(buf.str());
  conic::ConicSolution sol = conic::solve(prog, opt.tol, opt.tol, opt.max_iter);

  std::ostringstream os;
  os.precision(12);
  switch (sol.status) {
    case conic::Status::Optimal:
      os << "status: optimal\n";
      os << "primal value = " << sol.primal_value << "\n";
      os << "dual value   = " << sol.dual_value << "\n";
      os << "gap          = " << sol.gap << "\n";
      break;
    case conic::Status::Infeasible:
      os << "status: infeasible\n";
      os << "certificate ray |y| = " << sol.y.norm() << " (b'y > 0, A'y <= 0)\n";
      break;
    case conic::Status::Unbounded:
      os << "status: unbounded\n";
      break;
    case conic::Status::MaxIterations:
      os << "status: max iterations (gap " << sol.gap << ")\n";
      emit(opt, os.str());
      return kExitSolverFailure;
  }
  os << "iterations = " << sol.iterations << "\n";
  emit(opt, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resource-norm toolkit (batch only)"};
  app.require_subcommand(1);
  Options opt;

  std::string monotone, target, problem;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--state", opt.state, "zoo:NAME or path to an operator JSON file");
    sub->add_option("--norm", opt.norm, "norm tag for ball-style monotones");
    sub->add_option("--copies", opt.copies, "tensor copies (1 or 2, bipartite-regrouped)");
    sub->add_option("--eps", opt.eps, "smoothing parameter");
    sub->add_option("--delta", opt.delta, "ball radius parameter");
    sub->add_option("--tol", opt.tol, "solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", opt.out, "write output to this file");
    sub->add_option("--config", opt.config, "key=value overrides (tolerances only)");
  };

  CLI::App* compute = app.add_subcommand("compute", "evaluate one monotone on one state");
  compute->add_option("monotone", monotone, "monotone name")->required();
  add_common(compute);

  CLI::App* report = app.add_subcommand(
      "report", "table1 | appendix-a | irreversibility:<scenario>");
  report->add_option("target", target, "report target")->required();
  add_common(report);

  CLI::App* solve = app.add_subcommand("solve", "run the conic solver on a problem dump");
  solve->add_option("problem", problem, "path to a conic-program v1 dump")->required();
  solve->add_option("--max-iter", opt.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  add_common(solve);

  try {
    app.parse(argc, argv);
    if (compute->parsed()) return cmd_compute(monotone, opt);
    if (report->parsed()) return cmd_report(target, opt);
    return cmd_solve(problem, opt);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  } catch (const conic::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
