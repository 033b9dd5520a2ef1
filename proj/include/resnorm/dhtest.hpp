#pragma once

#include "resnorm/norms.hpp"
#include "resnorm/operator.hpp"

namespace resnorm::dhtest {

/// Unit ball of a resource norm whose primal norm and dual support function
/// are LP/SDP-representable: negativity, reshuffled negativity, Wigner and
/// stabiliser-P balls qualify. `dims` are the tensor factors of the space.
struct NormBall {
  norms::NormTag tag;
  std::vector<int> dims;
};

/// Closed-form evaluation of ||X||_mu and ||Q||_mu^o for the supported balls.
double primal_norm(const NormBall& ball, const Operator& x);
double dual_norm(const NormBall& ball, const Operator& q);

/// Inner optimum inf{<Q,X> : 0 <= Q <= 1, <Q,rho> >= 1-eps} of the
/// hypothesis-testing entropy (may be negative for non-positive X).
double hyp_test_optimum(const Operator& rho, const Operator& x, double eps, double tol = 1e-7);

/// D_H^eps(rho||X) = -log2 of the optimum above. Optima below 10*tol are
/// reported as +infinity (orthogonal-support case).
double d_hyp(const Operator& rho, const Operator& x, double eps, double tol = 1e-7);

/// Inner optimum inf{<Q,X> : -1 <= Q <= 1, <Q,rho> >= 1-eps}.
double emancipated_optimum(const Operator& rho, const Operator& x, double eps, double tol = 1e-7);

/// D_h^eps(rho||X) = -log2 of the optimum; nonpositive optima (below 10*tol)
/// give +infinity, following log(x) = -infinity for x <= 0 inside the -log.
double d_emancipated(const Operator& rho, const Operator& x, double eps, double tol = 1e-7);

/// inf over the unit ball, computed through the dual form
/// log2 max{1/||Q||_mu^o : ||Q||_inf <= 1, <Q,rho> >= 1-eps}.
double d_emancipated_min_over_ball(const Operator& rho, const NormBall& ball, double eps,
                                   double tol = 1e-6);

/// Ball value together with the optimal dual witness Q (||Q||_inf <= 1,
/// <Q,rho> >= 1-eps, value = log2(1/||Q||_mu^o)); used to verify the
/// minimax identity by reconstructing the optimal ball element from Q.
struct BallWitness {
  double value;
  Operator q;
};
BallWitness d_emancipated_min_over_ball_witness(const Operator& rho, const NormBall& ball,
                                                double eps, double tol = 1e-6);

/// Primal side of the same quantity, computed as one SDP by dualizing the
/// inner minimization: -log2 of sup over ||Z||_mu <= 1 of
/// max{lambda(1-eps) - Tr A - Tr B : Z = lambda rho - A + B, A,B >= 0,
/// lambda >= 0}. Agrees with d_emancipated_min_over_ball (minimax identity).
double d_emancipated_min_over_ball_primal(const Operator& rho, const NormBall& ball, double eps,
                                          double tol = 1e-6);

/// Zero-error support-projector form log2 max{1/||Q||_mu^o : 2 Pi_rho - 1 <=
/// Q <= 1}; depends on rho only through its support projector.
double d_emancipated_zero_support_form(const Operator& rho, const NormBall& ball,
                                       double tol = 1e-6);

/// Smoothed-norm inequality: inf{log2 ||X||_mu : ||X||_1 <= 1,
/// ||X - rho||_1 <= eps} >= d_emancipated_min_over_ball(rho, ball, delta)
/// + log2(1 - delta - eps), for eps + delta < 1. The left side is itself an
/// SDP over Hermitian (not necessarily positive) X; eps = 0 collapses it to
/// the closed-form norm of rho.
struct EpsDeltaReport {
  double lhs, rhs;
  bool holds;
};
EpsDeltaReport check_eps_delta(const Operator& rho, const NormBall& ball, double eps, double delta,
                               double tol = 1e-6);

}  // namespace resnorm::dhtest
