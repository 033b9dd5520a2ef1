#pragma once

#include "resnorm/dhtest.hpp"
#include "resnorm/norms.hpp"
#include "resnorm/operator.hpp"

#include <string>
#include <vector>

namespace resnorm::rates {

/// One named quantity entering a rate bound, with a note on how it was
/// obtained (closed form, SDP/LP value, or conjectural regularization).
struct Ingredient {
  std::string name;
  double value = 0.0;
  std::string provenance;
};

/// A single directional rate bound in log2 units per copy. `bound` is
/// re-derivable from `ingredients` through `formula`.
struct RateBoundReport {
  double bound = 0.0;
  std::string direction;  // "cost-lower" | "distillable-upper"
  norms::NormTag norm = norms::NormTag::Negativity;
  int copies = 1;  // copies used for the regularization estimate
  std::string formula;
  std::vector<Ingredient> ingredients;
  std::string conditional_on;  // empty when unconditional
};

/// ||x||_mu for the tags whose primal norm we can evaluate. SepBase is
/// supported for pure bipartite states only (Schmidt closed form);
/// GenRobustness* tags evaluate 1 + R^g of the corresponding set.
double mu_norm(const Operator& x, norms::NormTag mu, double tol = 1e-7);

/// Dual evaluation ||q||_mu^o: the dual norm for the four closed-form
/// norm tags, the maximal overlap with the free set for the base tags.
double dual_mu_norm(const Operator& q, norms::NormTag mu, double tol = 1e-7);

/// Positive-cone variant p_mu(x) = inf{||z||_mu : x <= z}. Equals
/// 1 + R^g of the free set for the base-norm tags; for SepBase only the
/// omega_d family is supported (certified through the explicit
/// decomposition omega_d + Phi_d/(d-1) = P_d/(d-1)).
double positive_mu_norm(const Operator& x, norms::NormTag mu, double tol = 1e-7);

/// n-fold tensor power with bipartite factors regrouped so that the result
/// lives on (A1...An) (x) (B1...Bn); for non-bipartite inputs this is the
/// plain Kronecker power. n in {1, 2}.
Operator tensor_power_regrouped(const Operator& x, int n);

/// Exact one-shot cost ceil(log2||rho||_mu / log2||phi||_mu). Requires the
/// strict multiplicativity/duality assumption for phi, asserted numerically
/// at one and two copies (throws std::domain_error when it fails).
int one_shot_exact_cost(const Operator& rho, const Operator& phi, norms::NormTag mu,
                        double tol = 1e-6);

/// Exact one-shot distillation floor(D / log2||phi||_mu) where D is the
/// zero-error emancipated hypothesis-testing value minimized over the unit
/// ball of mu (closed-form ball tags only). Same assumption on phi.
int one_shot_exact_distillation(const Operator& rho, const Operator& phi, norms::NormTag mu,
                                double tol = 1e-6);

enum class MapKind { Dilution, Distillation };

/// The explicit one-shot maps: dilution Lambda(Z) = <Z, phi> X, distillation
/// Lambda(Z) = <Q, Z> phi. `ingredient` is X resp. Q.
struct OneShotMap {
  MapKind kind = MapKind::Dilution;
  Operator phi;
  Operator ingredient;
  Operator apply(const Operator& z) const;
};

/// Certificate from probing the map on random Hermitian inputs: both the
/// trace norm and the mu norm may never grow, and the transformation error
/// on the designated input stays within eps.
struct MapCertificate {
  OneShotMap map;
  int probes = 0;
  double max_trace_ratio = 0.0;  // max ||Lambda(Z)||_1 / ||Z||_1
  double max_mu_ratio = 0.0;     // max ||Lambda(Z)||_mu / ||Z||_mu
  double transform_error = 0.0;  // ||Lambda(rho_in) - target||_1 or |<Q,rho>-1|
  bool ok = false;
};

/// Builds and certifies a one-shot map. Dilution: rho is the input state
/// (pure phi), ingredient X the produced operator; feasibility
/// ||X||_mu_out * ||phi||^o_mu_in <= 1. Distillation: rho is the input,
/// phi the produced pure target, ingredient Q the test operator
/// (||Q||_inf <= 1, <Q,rho> >= 1-eps, ||Q||^o_mu_in * ||phi||_mu_out <= 1).
/// Throws std::invalid_argument on infeasible ingredients.
MapCertificate build_one_shot_map(MapKind kind, const Operator& rho, const Operator& phi,
                                  const Operator& ingredient, const dhtest::NormBall& in_ball,
                                  const dhtest::NormBall& out_ball, double eps = 0.0,
                                  int probes = 120, unsigned seed = 117);

/// Cost lower bound: (zero-error emancipated value of rho over the gamma
/// ball) / L, with L = (1/n) log2 ||phi^{(x)n}||_mu for n in {1, 2}.
/// Requires a dual-multiplicative gamma ball (asserted numerically at two
/// copies). With conjectural_pure_regularization set, phi must be pure and
/// L is instead estimated as log2((||phi||_mu + 1)/2) = log2(1 + R^s); the
/// report is then flagged conditional on Conjecture 1.
RateBoundReport cost_lower_bound(const Operator& rho, const Operator& phi,
                                 const dhtest::NormBall& ball, norms::NormTag mu, int copies,
                                 bool conjectural_pure_regularization = false, double tol = 1e-6);

/// Distillable-rate upper bound log2||rho||_mu / (-log2 of the per-copy
/// dual value of phi); with positive_variant, log2 p_mu(rho) instead. A
/// nonnegative denominator yields the documented trivial bound +infinity.
RateBoundReport distillable_upper_bound(const Operator& rho, const Operator& phi,
                                        norms::NormTag mu, bool positive_variant, int copies = 1,
                                        double tol = 1e-6);

/// Cost bound for a mixture over orthogonal blocks:
/// [sum_x p_x log2(1/||Pi_x||^o_gamma) - H(p)] / L with
/// L = (1/n) log2 ||phi^{(x)n}||_mu. Throws on non-orthogonal projectors
/// or a non-normalized distribution.
double mixture_cost_bound(const std::vector<double>& p, const std::vector<Operator>& projectors,
                          const dhtest::NormBall& ball, const Operator& phi, norms::NormTag mu,
                          int copies = 1, double tol = 1e-6);

enum class Scenario { EntanglementOmega3, QutritMagic, QubitMagicConditional };
Scenario parse_scenario(const std::string& name);
std::string to_string(Scenario s);

/// Round-trip verdict: the product of the forward distillable-upper rate
/// bound and the reverse rate bound (the reciprocal of the cost-lower
/// bound). A product < 1 - 1e-3 certifies irreversibility of the cycle.
struct ScenarioReport {
  std::string scenario;
  std::vector<RateBoundReport> bounds;
  double product = 0.0;
  std::string verdict;         // "irreversible" | "conditionally irreversible" | "not shown"
  std::string conditional_on;  // empty when unconditional
  std::string to_json(int indent = 2) const;
};
ScenarioReport irreversibility_verdict(Scenario s, double tol = 1e-6);

/// Renormalized no-free-lunch sanity report for a resource/target pair:
/// ||phi^{(x)n}||_mu ||phi^{(x)n}||^o_mu >= 1 at n = 1, 2 (Cauchy-Schwarz),
/// the ratio (-log dual)/(log norm) <= 1, and the surrogate-level chain
/// (ball value of rho) <= log2||rho||_mu which keeps the emitted cost and
/// distillation bounds mutually consistent.
struct NoFreeLunchReport {
  double norm1 = 0.0, dual1 = 0.0, product1 = 0.0;
  double norm2 = 0.0, dual2 = 0.0, product2 = 0.0;
  double ratio = 0.0;       // (-log2 dual1) / (log2 norm1), <= 1 when defined
  double ball_value = 0.0;  // zero-error emancipated value of rho
  double log_norm = 0.0;    // log2 ||rho||_mu
  bool holds = false;
};
NoFreeLunchReport no_free_lunch_renormalized_check(const Operator& rho, const Operator& phi,
                                                   const dhtest::NormBall& ball,
                                                   double tol = 1e-6);

}  // namespace resnorm::rates
