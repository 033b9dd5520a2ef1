#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "resnorm/dhtest.hpp"
#include "resnorm/entanglement.hpp"
#include "resnorm/linalg.hpp"
#include "resnorm/rates.hpp"
#include "resnorm/states.hpp"
#include "resnorm/wigner.hpp"

#include <cmath>
#include <random>

using namespace resnorm;
using namespace resnorm::rates;
using doctest::Approx;
using norms::NormTag;

namespace {

Operator random_pure(std::mt19937& rng, std::vector<int> dims) {
  int d = 1;
  for (int f : dims) d *= f;
  std::normal_distribution<double> g;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  v.normalize();
  return projector(v, std::move(dims));
}

const double kLog32 = std::log2(1.5);

}  // namespace

TEST_CASE("norm dispatch routes to the closed forms and SDPs") {
  Operator phi2 = states::max_entangled(2);
  CHECK(mu_norm(phi2, NormTag::Negativity) == Approx(2.0).epsilon(1e-12));
  CHECK(dual_mu_norm(phi2, NormTag::Negativity) == Approx(0.5).epsilon(1e-12));
  CHECK(mu_norm(phi2, NormTag::SepBase) == Approx(3.0).epsilon(1e-12));
  CHECK(dual_mu_norm(phi2, NormTag::SepBase) == Approx(0.5).epsilon(1e-12));

  std::mt19937 rng(40001);
  Operator psi = random_pure(rng, {2, 3});
  // Any norm/dual pair obeys Cauchy-Schwarz on a unit vector.
  CHECK(mu_norm(psi, NormTag::SepBase) * dual_mu_norm(psi, NormTag::SepBase) >= 1.0 - 1e-9);

  Operator mixed = states::omega_state(3);
  CHECK_THROWS_AS(mu_norm(mixed, NormTag::SepBase), std::invalid_argument);
  CHECK_THROWS_AS(mu_norm(mixed, NormTag::GenRobustnessSep), std::invalid_argument);
  CHECK_THROWS_AS(positive_mu_norm(phi2, NormTag::Negativity), std::invalid_argument);

  // Positive-cone variant of the sep-base norm for omega_d.
  CHECK(positive_mu_norm(states::omega_state(3), NormTag::SepBase) == Approx(1.5).epsilon(1e-9));
  CHECK(positive_mu_norm(states::omega_state(4), NormTag::SepBase) ==
        Approx(4.0 / 3).epsilon(1e-9));
}

TEST_CASE("tensor_power_regrouped keeps bipartite structure") {
  Operator phi2 = states::max_entangled(2);
  Operator two = tensor_power_regrouped(phi2, 2);
  REQUIRE(two.dims == std::vector<int>{4, 4});
  // Two regrouped copies of Phi_2 are exactly Phi_4.
  CHECK((two.mat - states::max_entangled(4).mat).cwiseAbs().maxCoeff() <= 1e-12);

  std::mt19937 rng(40002);
  Operator psi = random_pure(rng, {2, 3});
  Operator psi2 = tensor_power_regrouped(psi, 2);
  CHECK(psi2.mat.trace().real() == Approx(1.0).epsilon(1e-12));
  double n1 = entanglement::negativity(psi);
  CHECK(entanglement::negativity(psi2) == Approx(n1 * n1).epsilon(1e-10));
  double d1 = dual_mu_norm(psi, NormTag::Negativity);
  CHECK(dual_mu_norm(psi2, NormTag::Negativity) == Approx(d1 * d1).epsilon(1e-10));
}

TEST_CASE("one-shot exact cost matches the ceiling formula") {
  Operator phi2 = states::max_entangled(2);
  CHECK(one_shot_exact_cost(phi2, phi2, NormTag::Negativity) == 1);
  // Three regrouped copies of Phi_2 are Phi_8.
  CHECK(one_shot_exact_cost(states::max_entangled(8), phi2, NormTag::Negativity) == 3);
  Operator omega = states::omega_state(3);
  int expected = static_cast<int>(std::ceil(std::log2(entanglement::negativity(omega)) - 1e-6));
  CHECK(one_shot_exact_cost(omega, phi2, NormTag::Negativity) == expected);
  // omega_3 violates the multiplicativity/duality assumption as a unit.
  CHECK_THROWS_AS(one_shot_exact_cost(phi2, omega, NormTag::Negativity), std::domain_error);
}

TEST_CASE("one-shot exact distillation matches the floor formula") {
  Operator phi2 = states::max_entangled(2);
  CHECK(one_shot_exact_distillation(phi2, phi2, NormTag::Negativity) == 1);
  CHECK(one_shot_exact_distillation(states::omega_state(3), phi2, NormTag::Negativity) == 1);
  Vector e00 = Vector::Zero(4);
  e00(0) = 1;
  CHECK(one_shot_exact_distillation(projector(e00, {2, 2}), phi2, NormTag::Negativity) == 0);
  CHECK_THROWS_AS(one_shot_exact_distillation(phi2, phi2, NormTag::SepBase),
                  std::invalid_argument);
}

TEST_CASE("one-shot maps contract both norms on random probes") {
  Operator phi2 = states::max_entangled(2);
  Operator omega = states::omega_state(3);
  dhtest::NormBall in_ball{NormTag::Negativity, {2, 2}};
  dhtest::NormBall out_ball{NormTag::Negativity, {3, 3}};

  SUBCASE("dilution Phi_2 -> omega_3") {
    auto cert = build_one_shot_map(MapKind::Dilution, omega, phi2, omega, in_ball, out_ball);
    CHECK(cert.ok);
    CHECK(cert.probes >= 100);
    CHECK(cert.max_trace_ratio <= 1.0 + 1e-9);
    CHECK(cert.max_mu_ratio <= 1.0 + 1e-9);
    CHECK(cert.transform_error <= 1e-9);
  }

  SUBCASE("distillation omega_3 -> Phi_2 with the optimal test operator") {
    auto w = dhtest::d_emancipated_min_over_ball_witness(omega, out_ball, 0.0);
    CHECK(w.value == Approx(1.0).epsilon(1e-5));
    // Renormalize away solver round-off before certifying feasibility.
    double feas = dhtest::dual_norm(out_ball, w.q) * mu_norm(phi2, NormTag::Negativity);
    Operator q(w.q.mat / std::max(1.0, feas), w.q.dims, true);
    auto cert = build_one_shot_map(MapKind::Distillation, omega, phi2, q, out_ball, in_ball,
                                   1e-4);
    CHECK(cert.ok);
    CHECK(cert.max_trace_ratio <= 1.0 + 1e-9);
    CHECK(cert.max_mu_ratio <= 1.0 + 1e-9);
    CHECK(cert.transform_error <= 1e-4);
  }

  SUBCASE("degenerate dilution acts as the identity on phi") {
    auto cert = build_one_shot_map(MapKind::Dilution, phi2, phi2, phi2, in_ball, in_ball);
    CHECK(cert.ok);
    CHECK(cert.transform_error <= 1e-12);
  }

  SUBCASE("infeasible ingredients are rejected") {
    Operator big(1.2 * omega.mat, omega.dims, true);
    CHECK_THROWS_AS(
        build_one_shot_map(MapKind::Dilution, omega, phi2, big, in_ball, out_ball),
        std::invalid_argument);
  }
}

TEST_CASE("cost lower bounds reproduce the three scenarios") {
  SUBCASE("entanglement cost of omega_3 is at least one ebit") {
    auto rep = cost_lower_bound(states::omega_state(3), states::max_entangled(2),
                                {NormTag::ReshuffledNegativity, {3, 3}}, NormTag::Negativity, 1);
    CHECK(rep.bound == Approx(1.0).epsilon(1e-4));
    CHECK(rep.direction == "cost-lower");
    CHECK(rep.conditional_on.empty());
  }

  SUBCASE("qutrit magic: producing H+ from Norell states") {
    Operator hplus = projector(states::hadamard_plus_ket(), {3});
    Operator norell = projector(states::norell_ket(), {3});
    auto rep = cost_lower_bound(hplus, norell, {NormTag::Wigner, {3}}, NormTag::FwBase, 2);
    double expect =
        std::log2((1.0 + 2.0 * std::sqrt(3.0)) / 3.0) / (0.5 * std::log2(11.0 / 3.0));
    CHECK(rep.bound == Approx(expect).epsilon(1e-4));
    CHECK(rep.copies == 2);
    CHECK(1.0 / rep.bound == Approx(1.63).epsilon(2e-3));
  }

  SUBCASE("qubit magic: conditional regularization of the Hoggar unit") {
    auto rep = cost_lower_bound(states::t_state(), states::hoggar(),
                                {NormTag::StabiliserP, {2}}, NormTag::StabBase, 1, true);
    double expect = std::log2((1.0 + std::sqrt(2.0)) / 2.0) / std::log2(12.0 / 5.0);
    CHECK(rep.bound == Approx(expect).epsilon(1e-4));
    CHECK(rep.conditional_on == "Conjecture 1");
    CHECK(1.0 / rep.bound == Approx(4.65).epsilon(2e-3));
  }

  SUBCASE("non-multiplicative gamma balls are rejected") {
    CHECK_THROWS_AS(cost_lower_bound(states::omega_state(3), states::max_entangled(2),
                                     {NormTag::SepBase, {3, 3}}, NormTag::Negativity, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("distillable-rate upper bounds reproduce the three scenarios") {
  SUBCASE("omega_3 -> Phi_2 under the positive sep-base variant") {
    auto rep = distillable_upper_bound(states::omega_state(3), states::max_entangled(2),
                                       NormTag::SepBase, true);
    CHECK(rep.bound == Approx(kLog32).epsilon(1e-9));
    CHECK(rep.direction == "distillable-upper");
  }

  SUBCASE("H+ -> Norell under the Wigner-positive base norm") {
    Operator hplus = projector(states::hadamard_plus_ket(), {3});
    Operator norell = projector(states::norell_ket(), {3});
    auto rep = distillable_upper_bound(hplus, norell, NormTag::FwBase, true);
    CHECK(rep.bound == Approx(std::log2(3.0 - std::sqrt(3.0)) / kLog32).epsilon(1e-5));
    CHECK(rep.bound == Approx(0.59).epsilon(2e-2));
  }

  SUBCASE("T -> Hoggar under the stabiliser base norm") {
    auto rep =
        distillable_upper_bound(states::t_state(), states::hoggar(), NormTag::StabBase, true);
    double expect = (1.0 + std::log2(2.0 - std::sqrt(2.0))) / std::log2(12.0 / 5.0);
    CHECK(rep.bound == Approx(expect).epsilon(1e-5));
    CHECK(rep.bound == Approx(0.18).epsilon(1e-2));
  }

  SUBCASE("dual value >= 1 yields the trivial bound") {
    Operator hplus = projector(states::hadamard_plus_ket(), {3});
    auto rep = distillable_upper_bound(hplus, hplus, NormTag::Wigner, false);
    CHECK(std::isinf(rep.bound));
  }
}

TEST_CASE("mixture cost bound matches direct formula evaluation") {
  Operator phi2 = states::max_entangled(2);
  dhtest::NormBall ball{NormTag::Negativity, {2, 2}};

  SUBCASE("single pure block has no entropy penalty") {
    double v = mixture_cost_bound({1.0}, {phi2}, ball, phi2, NormTag::Negativity);
    CHECK(v == Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("two orthogonal blocks, independent recomputation") {
    Operator rest(Matrix::Identity(4, 4) - phi2.mat, {2, 2}, true);
    double v = mixture_cost_bound({0.5, 0.5}, {phi2, rest}, ball, phi2, NormTag::Negativity);
    double d1 = op_norm(partial_transpose(phi2.mat, 2, 2));
    double d2 = op_norm(partial_transpose(rest.mat, 2, 2));
    double hand = (0.5 * -std::log2(d1) + 0.5 * -std::log2(d2) - 1.0) / 1.0;
    CHECK(v == Approx(hand).epsilon(1e-12));
  }

  SUBCASE("uniform distribution over trivial blocks shows the entropy penalty") {
    Vector e0 = Vector::Zero(4), e1 = Vector::Zero(4);
    e0(0) = 1;
    e1(3) = 1;
    double v = mixture_cost_bound({0.5, 0.5}, {projector(e0, {2, 2}), projector(e1, {2, 2})},
                                  ball, phi2, NormTag::Negativity);
    CHECK(v == Approx(-1.0).epsilon(1e-12));  // value 0 per block, minus H(p) = 1 bit
  }

  SUBCASE("non-orthogonal blocks are rejected") {
    CHECK_THROWS_AS(mixture_cost_bound({0.5, 0.5}, {phi2, phi2}, ball, phi2, NormTag::Negativity),
                    std::invalid_argument);
  }
}

TEST_CASE("irreversibility verdicts for the three scenarios") {
  SUBCASE("entanglement omega_3") {
    auto rep = irreversibility_verdict(Scenario::EntanglementOmega3);
    CHECK(rep.product == Approx(kLog32).epsilon(1e-4));
    CHECK(rep.product < 1.0);
    CHECK(1.0 - rep.product >= 0.41);  // one full ebit in, at most log(3/2) back
    CHECK(rep.verdict == "irreversible");
    CHECK(rep.conditional_on.empty());
    REQUIRE(rep.bounds.size() == 2);
    CHECK(rep.bounds[0].direction == "distillable-upper");
    CHECK(rep.bounds[1].direction == "cost-lower");
  }

  SUBCASE("qutrit magic") {
    auto rep = irreversibility_verdict(Scenario::QutritMagic);
    double expect = std::log2(11.0 / 3.0) * std::log2(3.0 - std::sqrt(3.0)) /
                    (std::log2(9.0 / 4.0) * std::log2((1.0 + 2.0 * std::sqrt(3.0)) / 3.0));
    CHECK(rep.product == Approx(expect).epsilon(1e-3));
    CHECK(rep.product <= 0.96);
    CHECK(rep.verdict == "irreversible");
  }

  SUBCASE("qubit magic, conditional") {
    auto rep = irreversibility_verdict(Scenario::QubitMagicConditional);
    CHECK(rep.product == Approx(0.8411).epsilon(1e-3));
    CHECK(rep.product <= 0.85);
    CHECK(rep.verdict == "conditionally irreversible");
    CHECK(rep.conditional_on == "Conjecture 1");
  }

  SUBCASE("JSON report round-trips through a parser") {
    auto rep = irreversibility_verdict(Scenario::EntanglementOmega3);
    std::string j = rep.to_json();
    CHECK(j.find("\"scenario\"") != std::string::npos);
    CHECK(j.find("\"bounds\"") != std::string::npos);
    CHECK(j.find("\"verdict\"") != std::string::npos);
    CHECK(parse_scenario(rep.scenario) == Scenario::EntanglementOmega3);
  }
}

TEST_CASE("renormalized no-free-lunch checks") {
  SUBCASE("Phi_2 with the negativity norm sits exactly on the boundary") {
    Operator phi2 = states::max_entangled(2);
    auto rep = no_free_lunch_renormalized_check(phi2, phi2, {NormTag::Negativity, {2, 2}});
    CHECK(rep.product1 == Approx(1.0).epsilon(1e-12));
    CHECK(rep.product2 == Approx(1.0).epsilon(1e-12));
    CHECK(rep.ratio == Approx(1.0).epsilon(1e-12));
    CHECK(rep.holds);
  }

  SUBCASE("H+ with the Wigner norm") {
    Operator hplus = projector(states::hadamard_plus_ket(), {3});
    auto rep = no_free_lunch_renormalized_check(hplus, hplus, {NormTag::Wigner, {3}});
    CHECK(rep.norm1 == Approx((1.0 + 2.0 * std::sqrt(3.0)) / 3.0).epsilon(1e-12));
    CHECK(rep.dual1 == Approx(1.0).epsilon(1e-12));
    CHECK(rep.product1 >= 1.0 - 1e-12);
    CHECK(rep.holds);
  }

  SUBCASE("random pure states against the pure separability formulas") {
    std::mt19937 rng(40003);
    for (int trial = 0; trial < 5; ++trial) {
      Operator psi = random_pure(rng, {2, 3});
      auto rep = no_free_lunch_renormalized_check(psi, psi, {NormTag::SepBase, {2, 3}});
      CHECK(rep.product1 >= 1.0 - 1e-9);
      CHECK(rep.product2 >= 1.0 - 1e-9);
      CHECK(rep.holds);
    }
  }
}
