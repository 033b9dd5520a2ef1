// Acceptance gate: one pass/fail line per criterion. Exit code 0 iff all
// criteria pass. Each criterion is self-contained and recomputes its
// numbers from scratch through the library entry points.

#include "resnorm/conic.hpp"
#include "resnorm/dhtest.hpp"
#include "resnorm/entanglement.hpp"
#include "resnorm/linalg.hpp"
#include "resnorm/rates.hpp"
#include "resnorm/stab.hpp"
#include "resnorm/states.hpp"
#include "resnorm/wigner.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace resnorm;
using norms::NormTag;

namespace {

Matrix random_hermitian(std::mt19937& rng, int d) {
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (m + m.adjoint().eval());
}

Operator random_state(std::mt19937& rng, std::vector<int> dims) {
  int d = 1;
  for (int f : dims) d *= f;
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return Operator(rho, std::move(dims), true);
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// --------------------------------------------------------------------------
// 1. Reference-table values through the closed-form paths.
// --------------------------------------------------------------------------
bool criterion1(std::string& detail) {
  bool ok = true;
  for (int n = 1; n <= 4; ++n) {
    Operator phi = states::max_entangled(1 << n);  // n regrouped copies of Phi_2
    double want = std::pow(2.0, n);
    ok = ok && close(entanglement::negativity(phi), want, 1e-9);
    ok = ok && close(entanglement::reshuffled_negativity(phi), want, 1e-9);
    ok = ok && close(rates::mu_norm(phi, NormTag::SepBase), 2 * want - 1, 1e-9);
  }
  auto wn = [](const Vector& v) { return wigner::wigner_trace_norm(projector(v, {3})); };
  ok = ok && close(wn(states::strange_ket()), 5.0 / 3, 1e-9);
  ok = ok && close(wn(states::norell_ket()), 5.0 / 3, 1e-9);
  ok = ok && close(wn(states::hadamard_plus_ket()), (1 + 2 * std::sqrt(3.0)) / 3, 1e-9);
  ok = ok && close(stab::stab_norm(states::t_state().mat, 1), (1 + std::sqrt(2.0)) / 2, 1e-9);
  ok = ok && close(stab::stab_norm(states::hoggar().mat, 3), 11.0 / 4, 1e-9);
  detail = "entangled-unit norms n=1..4, qutrit Wigner norms, qubit Pauli norms";
  return ok;
}

// --------------------------------------------------------------------------
// 2. Two-copy qutrit tables, split decomposition and tempered witness.
// --------------------------------------------------------------------------
bool criterion2(std::string& detail) {
  auto rep = wigner::verify_appendix_a();
  Operator n2 = kron_pow(projector(states::norell_ket(), {3}), 2);
  double base2 = wigner::fw_base_norm(n2, 1e-7);
  double wtau = wigner::tempered_mana(projector(states::hadamard_plus_ket(), {3}), 1e-7);
  double wtau_want = std::log2((1 + 2 * std::sqrt(3.0)) / 3.0);
  bool ok = rep.all_pass && close(base2, 11.0 / 3, 1e-6) && close(wtau, wtau_want, 1e-6);
  std::ostringstream os;
  os << "tables/PSD/witness " << (rep.all_pass ? "ok" : "FAIL") << ", ||N^2||_FW = " << base2
     << ", W_tau(H+) = " << wtau;
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 3. The three irreversibility verdicts.
// --------------------------------------------------------------------------
bool criterion3(std::string& detail) {
  auto ent = rates::irreversibility_verdict(rates::Scenario::EntanglementOmega3);
  auto qutrit = rates::irreversibility_verdict(rates::Scenario::QutritMagic);
  auto qubit = rates::irreversibility_verdict(rates::Scenario::QubitMagicConditional);
  double qutrit_want = std::log2(11.0 / 3) * std::log2(3 - std::sqrt(3.0)) /
                       (std::log2(9.0 / 4) * std::log2((1 + 2 * std::sqrt(3.0)) / 3));
  bool ok = ent.verdict == "irreversible" && 1.0 - ent.product >= 0.41 &&
            qutrit.verdict == "irreversible" && qutrit.product <= 0.96 &&
            close(qutrit.product, qutrit_want, 1e-3) &&
            qubit.verdict == "conditionally irreversible" && qubit.product <= 0.85 &&
            close(qubit.product, 0.8410, 1e-3) && qubit.conditional_on == "Conjecture 1";
  std::ostringstream os;
  os << "products: entanglement " << ent.product << ", qutrit " << qutrit.product << ", qubit "
     << qubit.product << " (conditional)";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 4. Tempered values of omega_d through both balls.
// --------------------------------------------------------------------------
bool criterion4(std::string& detail) {
  const double alpha[] = {2.0, 2.0, 5.0 / 3};
  bool ok = true;
  std::ostringstream os;
  for (int d = 3; d <= 5; ++d) {
    Operator omega = states::omega_state(d);
    double via_neg = entanglement::tempered_negativity(omega, 1e-6);
    double via_resh = entanglement::tempered_reshuffled_negativity(omega, 1e-6);
    ok = ok && close(via_neg, alpha[d - 3], 1e-6) && close(via_resh, alpha[d - 3], 1e-6);
    os << "d=" << d << ": " << via_neg << "/" << via_resh << " ";
  }
  detail = os.str() + "(negativity/reshuffled balls)";
  return ok;
}

// --------------------------------------------------------------------------
// 5. Stabiliser enumeration and LP values.
// --------------------------------------------------------------------------
bool criterion5(std::string& detail) {
  bool ok = true;
  const int counts[] = {6, 60, 1080};
  for (int n = 1; n <= 3; ++n)
    ok = ok && static_cast<int>(stab::enumerate_stabiliser_states(n).vectors.size()) ==
                   counts[n - 1];
  Operator hog = states::hoggar();
  double hog_rs = (stab::stab_base_norm(hog.mat, 3, 1e-7) + 1.0) / 2.0;  // 1 + R^s
  double hog_dual = stab::stab_dual_overlap(hog, 3);
  double t_rg = 1.0 + stab::stab_gen_robustness(states::t_state(), 1, 1e-7);
  ok = ok && close(hog_rs, 12.0 / 5, 1e-6) && close(hog_dual, 5.0 / 12, 1e-6) &&
       close(t_rg, 2 * (2 - std::sqrt(2.0)), 1e-6);
  for (const auto& p : stab::PauliString::all(3)) {
    bool identity = true;
    for (char c : p.letters) identity = identity && c == 'I';
    if (identity) continue;
    ok = ok && close(std::abs(inner(p.matrix(), hog.mat)), 1.0 / 3, 1e-12);
  }
  std::ostringstream os;
  os << "counts 6/60/1080, 1+R^s(Hog) = " << hog_rs << ", dual 5/12, 1+R^g(T) = " << t_rg
     << ", 63 Pauli overlaps 1/3";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 6. Invariant-based property suites.
// --------------------------------------------------------------------------
bool criterion6(std::string& detail) {
  std::ostringstream os;
  bool ok = true;

  const std::vector<dhtest::NormBall> balls = {{NormTag::Negativity, {2, 2}},
                                               {NormTag::ReshuffledNegativity, {2, 2}},
                                               {NormTag::Wigner, {3}},
                                               {NormTag::StabiliserP, {2}}};

  // (a) smoothed-norm eps-delta inequality, 100 random instances per ball.
  {
    std::mt19937 rng(50001);
    std::uniform_real_distribution<double> u(0.05, 0.3);
    int bad = 0;
    for (const auto& ball : balls)
      for (int i = 0; i < 100; ++i) {
        Operator rho = random_state(rng, ball.dims);
        auto rep = dhtest::check_eps_delta(rho, ball, u(rng), u(rng));
        if (!rep.holds) ++bad;
      }
    ok = ok && bad == 0;
    os << "eps-delta 400 instances (" << bad << " bad); ";
  }

  // (b) reparametrization identity between the two testing entropies.
  {
    std::mt19937 rng(50002);
    std::uniform_real_distribution<double> u(0.02, 0.6);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      int d = 2 + (i % 2);
      Operator rho = random_state(rng, {d});
      Operator x(random_hermitian(rng, d), {d}, true);
      double eps = u(rng);
      double lhs = dhtest::emancipated_optimum(rho, x, eps, 3e-9);
      double rhs = 2.0 * dhtest::hyp_test_optimum(rho, x, eps / 2, 3e-9) - x.mat.trace().real();
      if (!close(lhs, rhs, 1e-8)) ++bad;
    }
    ok = ok && bad == 0;
    os << "identity 100 instances (" << bad << " bad); ";
  }

  // (c) minimax: primal and dual ball programs agree.
  {
    std::mt19937 rng(50003);
    std::uniform_real_distribution<double> u(0.0, 0.4);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
      const auto& ball = balls[i % balls.size()];
      Operator rho = random_state(rng, ball.dims);
      double eps = u(rng);
      double dual = dhtest::d_emancipated_min_over_ball(rho, ball, eps);
      double primal = dhtest::d_emancipated_min_over_ball_primal(rho, ball, eps);
      if (!close(dual, primal, 1e-6)) ++bad;
    }
    ok = ok && bad == 0;
    os << "minimax 50 instances (" << bad << " bad); ";
  }

  // (d) one-shot maps contract both norms on 100 probes each.
  {
    Operator phi2 = states::max_entangled(2);
    Operator omega = states::omega_state(3);
    dhtest::NormBall in{NormTag::Negativity, {2, 2}}, out{NormTag::Negativity, {3, 3}};
    auto dil = rates::build_one_shot_map(rates::MapKind::Dilution, omega, phi2, omega, in, out,
                                         0.0, 100);
    auto w = dhtest::d_emancipated_min_over_ball_witness(omega, out, 0.0);
    double feas = dhtest::dual_norm(out, w.q) * rates::mu_norm(phi2, NormTag::Negativity);
    Operator q(w.q.mat / std::max(1.0, feas), w.q.dims, true);
    auto dist = rates::build_one_shot_map(rates::MapKind::Distillation, omega, phi2, q, out, in,
                                          1e-4, 100);
    ok = ok && dil.ok && dist.ok;
    os << "maps " << (dil.ok && dist.ok ? "contract" : "FAIL") << "; ";
  }

  // (e) solver duality gap and brute-force grid agreement on 2x2 programs.
  {
    std::mt19937 rng(50004);
    std::normal_distribution<double> g;
    int bad = 0;
    double worst_gap = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
      RealMatrix a1(2, 2), a2(2, 2);
      a1 << g(rng), g(rng), 0, g(rng);
      a2 << g(rng), g(rng), 0, g(rng);
      a1(1, 0) = a1(0, 1);
      a2(1, 0) = a2(0, 1);
      double b1 = g(rng), b2 = g(rng);
      conic::LmiProblem lmi(2);
      lmi.set_objective(0, b1);
      lmi.set_objective(1, b2);
      lmi.add_psd(RealMatrix::Identity(2, 2), {{0, a1}, {1, a2}});
      for (int v : {0, 1})
        for (double s : {1.0, -1.0}) lmi.add_nonneg(3.0, {{v, s}});  // box |y_v| <= 3
      auto res = lmi.solve(1e-9, 1e-9);
      worst_gap = std::max(worst_gap, std::abs(res.raw.gap));

      // Coarse-to-fine grid search over the same feasible box.
      auto feasible = [&](double y1, double y2) {
        RealMatrix m = RealMatrix::Identity(2, 2) - y1 * a1 - y2 * a2;
        double tr = m(0, 0) + m(1, 1);
        double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        return tr >= 0 && det >= -1e-15 && std::abs(y1) <= 3 && std::abs(y2) <= 3;
      };
      double c1 = 0, c2 = 0, best = -1e300, step = 0.01;
      for (int level = 0; level < 3; ++level) {
        double lo1 = level ? c1 - 2 * step * 10 : -3.0, hi1 = level ? c1 + 2 * step * 10 : 3.0;
        double lo2 = level ? c2 - 2 * step * 10 : -3.0, hi2 = level ? c2 + 2 * step * 10 : 3.0;
        if (level) step /= 100;
        for (double y1 = lo1; y1 <= hi1; y1 += step)
          for (double y2 = lo2; y2 <= hi2; y2 += step)
            if (feasible(y1, y2) && b1 * y1 + b2 * y2 > best) {
              best = b1 * y1 + b2 * y2;
              c1 = y1;
              c2 = y2;
            }
      }
      if (std::abs(res.value - best) > 1e-4) ++bad;
    }
    ok = ok && bad == 0 && worst_gap <= 1e-8;
    os << "solver grid 10 instances (" << bad << " bad, worst gap " << worst_gap << ")";
  }

  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 7. Disclosure of what is out of reach.
// --------------------------------------------------------------------------
bool criterion7(std::string& detail) {
  detail =
      "disclosure: true asymptotic regularized quantities (n -> infinity) and LOCC rates are "
      "not computed here; every certificate above is a finite-copy bound (n <= 2, or "
      "conditional where flagged), which is exactly what the emitted reports claim";
  return true;  // passes by being stated
}

}  // namespace

int main() {
  using Criterion = bool (*)(std::string&);
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"reference table values", criterion1},
      {"two-copy qutrit certificates", criterion2},
      {"irreversibility verdicts", criterion3},
      {"tempered omega_d cross-checks", criterion4},
      {"stabiliser enumeration and LP", criterion5},
      {"property suites", criterion6},
      {"out-of-reach disclosure", criterion7},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].second(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("criterion %zu [%s] %s: %s\n", i + 1, ok ? "pass" : "FAIL", criteria[i].first,
                detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
