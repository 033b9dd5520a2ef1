#pragma once

#include "resnorm/operator.hpp"

#include <string>

namespace resnorm::entanglement {

/// Trace norm of the partial transpose, ||X^Gamma||_1.
double negativity(const Operator& x);
double log_negativity(const Operator& x);

/// Trace norm of the realignment, ||X^R||_1 (bipartite d x d only).
double reshuffled_negativity(const Operator& x);

/// Closed-form separability norms of a pure bipartite state.
struct PureSepNorms {
  double base_norm;     // 1 + 2 R^s
  double one_plus_Rs;   // (sum_i sqrt(p_i))^2, p_i squared Schmidt coefficients
  double dual_overlap;  // max_i p_i
};
PureSepNorms pure_sep_norms(const Vector& v, int da, int db);

/// Tempered negativity N_tau: max <W,rho> over Hermitian W with
/// ||W^Gamma||_inf <= 1 and ||W||_inf <= <W,rho>. Returns the SDP value
/// (take log for the additive monotone E_tau).
double tempered_negativity(const Operator& rho, double tol = 1e-6);

/// Tempered reshuffled negativity N^R_tau: same with ||W^R||_inf <= 1.
double tempered_reshuffled_negativity(const Operator& rho, double tol = 1e-6);

/// Checks of the analytic witness W_d = alpha_d P_d - beta_d Phi_d and the
/// robustness decomposition omega_d + Phi_d/(d-1) = P_d/(d-1).
struct OmegaWitnessReport {
  int d;
  double alpha, beta;
  double reshuffled_inf_norm;  // ||W_d^R||_inf, expected 1
  double inf_norm;             // ||W_d||_inf, expected alpha_d
  double overlap;              // <W_d, omega_d>, expected alpha_d
  double robustness_bound;     // 1/(d-1)
  bool decomposition_ok;       // omega_d + Phi_d/(d-1) == P_d/(d-1), P_d separable
  bool all_pass;
  std::string detail;
};
OmegaWitnessReport verify_omega_witness(int d);

}  // namespace resnorm::entanglement
