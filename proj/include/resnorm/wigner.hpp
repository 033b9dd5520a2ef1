#pragma once

#include "resnorm/operator.hpp"

#include <string>
#include <utility>
#include <vector>

namespace resnorm::wigner {

/// One phase-space point per qutrit factor; components in Z_3.
using PhasePoint = std::vector<std::pair<int, int>>;

/// Discrete Wigner representation of an n-qutrit Hermitian operator:
/// values[idx] = W_p(Y) = <A_p, Y> / 3^n, p flattened row-major with local
/// index a1*3 + a2.
struct WignerRep {
  int n = 1;
  RealVector values;  // length 9^n
};

/// Heisenberg-Weyl operator T_{(a1,a2)} = omega^{-2 a1 a2} Z^{a1} X^{a2}
/// on C^d (omega = e^{2 pi i/d}); written for general odd d, exercised at
/// d = 3.
Matrix heisenberg_weyl(int a1, int a2, int d = 3);

/// Single-qudit phase-point operator A_{(a1,a2)} = T A_{(0,0)} T^dag with
/// A_{(0,0)} = (1/d) sum_{a1,a2} T_{(a1,a2)}.
Matrix phase_point_op(int a1, int a2, int d = 3);

/// Multi-qutrit phase-point operator (tensor product over the point).
Operator phase_point_op(const PhasePoint& p);

/// Flat index <-> phase point for n qutrits.
int phase_point_index(const PhasePoint& p);
PhasePoint phase_point_from_index(int idx, int n);

WignerRep wigner_rep(const Operator& y);
Operator inverse_wigner(const WignerRep& w);

/// Wigner trace norm ||Y||_W = sum_p |W_p(Y)| and its log (the mana).
double wigner_trace_norm(const Operator& y);
double mana(const Operator& rho);

/// Wigner spectral norm ||Y||_W^dual = max_p 3^n |W_p(Y)|.
double wigner_spectral_norm(const Operator& y);

// F_W = {states with nonnegative Wigner representation}. The SDPs are
// parametrized directly in Wigner coordinates; n <= 2 copies supported,
// larger inputs rejected ("problem too large for certified solve").

/// Base norm ||X||_{F_W} = min lambda+ + lambda- over X = l+ s+ - l- s-,
/// s+- in F_W.
double fw_base_norm(const Operator& x, double tol = 1e-7);

/// Dual overlap ||rho||^dual_{F_W} = max_{sigma in F_W} <rho, sigma>.
double fw_dual_overlap(const Operator& rho, double tol = 1e-7);

/// Generalized robustness R^g_{F_W}(rho) = min{r : rho <= (1+r) sigma,
/// sigma in F_W}.
double fw_gen_robustness(const Operator& rho, double tol = 1e-7);

/// Tempered mana W_tau(rho) = log2 max{<rho,X> : ||X||_W^dual <= 1,
/// ||X||_inf <= Tr rho X}.
double tempered_mana(const Operator& rho, double tol = 1e-6);

/// Checks of the two-copy decomposition and witness data used for the
/// magic-state bounds: the 9x9 Wigner tables of |N><N|^(x)2 and its split
/// X+ / X-, PSD-ness of X+- via the explicit rank-one decomposition, the
/// trace bookkeeping Tr X+ + Tr X- = 11/3, and the Wigner table of the
/// tempered witness for |H+><H+|.
struct AppendixReport {
  bool n2_table_ok = false;
  bool xplus_table_ok = false;
  bool xminus_table_ok = false;
  bool decomposition_ok = false;  // X+ = N^2 + sum w_i |v_i><v_i|, X- likewise
  bool psd_ok = false;
  double trace_sum = 0.0;   // Tr X+ + Tr X-, expected 11/3
  double trace_diff = 0.0;  // Tr X+ - Tr X-, expected 1
  bool hplus_witness_ok = false;
  bool all_pass = false;
  std::string detail;
};
AppendixReport verify_appendix_a();

/// CSV rendering of a Wigner table: n=1 gives a 3x3 grid (rows a1, columns
/// a2), n=2 a 9x9 grid (rows (a1,a2), columns (b1,b2)).
std::string wigner_csv(const WignerRep& w);

}  // namespace resnorm::wigner
