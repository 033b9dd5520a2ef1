#pragma once

#include "resnorm/operator.hpp"

#include <string>
#include <vector>

namespace resnorm::stab {

/// An n-qubit Pauli string over the letters {I, X, Y, Z}.
struct PauliString {
  int n = 0;
  std::vector<char> letters;  // size n, most significant qubit first

  PauliString(int n_, std::vector<char> letters_);

  /// Hermitian unitary operator, built on demand.
  Matrix matrix() const;
  std::string label() const;

  /// All 4^n strings, identity first, in lexicographic letter order.
  static std::vector<PauliString> all(int n);
};

/// All pure stabiliser states on n qubits, deduplicated up to global phase.
struct StabiliserStateSet {
  int n = 0;
  std::vector<Vector> vectors;  // normalized, canonical global phase
};

/// Stabiliser norm ||X||_P = 2^{-n} sum_P |Tr(X P)| of a 2^n-dim Hermitian
/// operator, and its dual ||X||_P^o = max_P |Tr(X P)|.
double stab_norm(const Matrix& x, int n);
double stab_norm_dual(const Matrix& x, int n);

/// Breadth-first closure of {H, S, CNOT} applied to |0...0>. Counts are
/// 6, 60, 1080 for n = 1, 2, 3; larger n is rejected. Cached and read-only.
const StabiliserStateSet& enumerate_stabiliser_states(int n);

/// Base norm over the stabiliser polytope: min lambda+ + lambda- over
/// X = lambda+ sigma+ - lambda- sigma- with sigma+- convex mixtures of the
/// enumerated stabiliser projectors (an LP). On a state this is 1 + 2 R^s.
double stab_base_norm(const Matrix& x, int n, double tol = 1e-7);

/// Dual overlap max{<rho, sigma> : sigma in STAB} = max_i <psi_i|rho|psi_i>.
double stab_dual_overlap(const Operator& rho, int n);

/// Generalized robustness over STAB: min{t : (rho + t omega)/(1+t) in STAB,
/// omega any state}, via the SDP min sum_i p_i - 1 with sum_i p_i Pi_i >= rho.
double stab_gen_robustness(const Operator& rho, int n, double tol = 1e-7);

/// Tempered stabiliser norm P_tau(rho) = log2 max{<rho,X> : ||X||_P^o <= 1,
/// ||X||_inf <= <rho,X>} (the equality constraint relaxed, tight at optimum).
double tempered_stab_norm(const Operator& rho, int n, double tol = 1e-6);

/// Regularized upper bound log2 of lim_n ||T^(x)n||_STAB^{1/n} <= 1.29,
/// an external numerical estimate (Heinrich & Gross 2019); not re-derived.
double t_stab_regularized_log_bound();

/// JSON export of a stabiliser state set: {"n":..,"count":..,
/// "vectors":[[[re,im],...],...]} for external verification.
std::string stab_set_to_json(const StabiliserStateSet& set);

}  // namespace resnorm::stab
