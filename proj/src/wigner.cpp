#include "resnorm/wigner.hpp"

#include "resnorm/conic.hpp"
#include "resnorm/linalg.hpp"
#include "resnorm/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace resnorm::wigner {

namespace {

void check_index(int a, int d) {
  if (a < 0 || a >= d) throw std::invalid_argument("phase-space index out of range");
}

int qutrit_count(const Operator& y) {
  for (int d : y.dims)
    if (d != 3) throw std::invalid_argument("expected a tensor power of qutrits");
  return static_cast<int>(y.dims.size());
}

void check_certified_size(int n) {
  if (n > 2)
    throw std::invalid_argument(
        "problem too large for certified solve (at most 2 qutrit copies supported)");
}

// Cached single-qutrit phase-point operators A_0..A_8 (index a1*3+a2).
const std::vector<Matrix>& qutrit_phase_points() {
  static const std::vector<Matrix> cache = [] {
    std::vector<Matrix> a;
    for (int a1 = 0; a1 < 3; ++a1)
      for (int a2 = 0; a2 < 3; ++a2) a.push_back(phase_point_op(a1, a2, 3));
    return a;
  }();
  return cache;
}

// Phase-point operator for a flat n-qutrit index.
Matrix phase_point_matrix(int idx, int n) {
  const auto& single = qutrit_phase_points();
  Matrix out = Matrix::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    // most significant local index first
    const int local = (idx / static_cast<int>(std::pow(9, k))) % 9;
    out = kron(out, single[local]);
  }
  return out;
}

int pow_int(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Matrix heisenberg_weyl(int a1, int a2, int d) {
  if (d < 2 || d % 2 == 0) throw std::invalid_argument("heisenberg_weyl: d must be odd, >= 3");
  check_index(a1, d);
  check_index(a2, d);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
  Matrix Z = Matrix::Zero(d, d), X = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    Z(j, j) = std::pow(omega, j);
    X((j + 1) % d, j) = 1.0;
  }
  Matrix Za = Matrix::Identity(d, d), Xa = Matrix::Identity(d, d);
  for (int k = 0; k < a1; ++k) Za = Za * Z;
  for (int k = 0; k < a2; ++k) Xa = Xa * X;
  const int phase_exp = (((-2 * a1 * a2) % d) + d) % d;
  return std::pow(omega, phase_exp) * Za * Xa;
}

Matrix phase_point_op(int a1, int a2, int d) {
  check_index(a1, d);
  check_index(a2, d);
  Matrix a00 = Matrix::Zero(d, d);
  for (int b1 = 0; b1 < d; ++b1)
    for (int b2 = 0; b2 < d; ++b2) a00 += heisenberg_weyl(b1, b2, d);
  a00 /= d;
  Matrix t = heisenberg_weyl(a1, a2, d);
  Matrix a = t * a00 * t.adjoint();
  return 0.5 * (a + a.adjoint().eval());
}

Operator phase_point_op(const PhasePoint& p) {
  if (p.empty()) throw std::invalid_argument("phase_point_op: empty point");
  return Operator(phase_point_matrix(phase_point_index(p), static_cast<int>(p.size())),
                  std::vector<int>(p.size(), 3), true);
}

int phase_point_index(const PhasePoint& p) {
  int idx = 0;
  for (const auto& [a1, a2] : p) {
    check_index(a1, 3);
    check_index(a2, 3);
    idx = idx * 9 + (a1 * 3 + a2);
  }
  return idx;
}

PhasePoint phase_point_from_index(int idx, int n) {
  if (n < 1 || idx < 0 || idx >= pow_int(9, n))
    throw std::invalid_argument("phase_point_from_index: out of range");
  PhasePoint p(n);
  for (int k = n - 1; k >= 0; --k) {
    const int local = idx % 9;
    idx /= 9;
    p[k] = {local / 3, local % 3};
  }
  return p;
}

WignerRep wigner_rep(const Operator& y) {
  const int n = qutrit_count(y);
  const int P = pow_int(9, n);
  WignerRep w;
  w.n = n;
  w.values.resize(P);
  const double scale = std::pow(3.0, n);
  for (int idx = 0; idx < P; ++idx)
    w.values(idx) = std::real((phase_point_matrix(idx, n).adjoint() * y.mat).trace()) / scale;
  return w;
}

Operator inverse_wigner(const WignerRep& w) {
  const int P = pow_int(9, w.n);
  if (static_cast<int>(w.values.size()) != P)
    throw std::invalid_argument("inverse_wigner: value count mismatch");
  const int D = pow_int(3, w.n);
  Matrix y = Matrix::Zero(D, D);
  for (int idx = 0; idx < P; ++idx) y += w.values(idx) * phase_point_matrix(idx, w.n);
  return Operator(0.5 * (y + y.adjoint().eval()), std::vector<int>(w.n, 3), true);
}

double wigner_trace_norm(const Operator& y) { return wigner_rep(y).values.cwiseAbs().sum(); }

double mana(const Operator& rho) { return std::log2(wigner_trace_norm(rho)); }

double wigner_spectral_norm(const Operator& y) {
  const int n = qutrit_count(y);
  return std::pow(3.0, n) * wigner_rep(y).values.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// F_W programs in Wigner coordinates
// ---------------------------------------------------------------------------

namespace {

// Adds the block  sum_i y_i A_i - C >= 0  over the Wigner basis.
void add_wigner_psd(conic::LmiProblem& lmi, int n, const Matrix& c) {
  const int P = pow_int(9, n);
  std::vector<std::pair<int, Matrix>> terms;
  terms.reserve(P);
  for (int i = 0; i < P; ++i) terms.emplace_back(i, Matrix(-phase_point_matrix(i, n)));
  lmi.add_psd_hermitian(-c, terms);
}

}  // namespace

double fw_base_norm(const Operator& x, double tol) {
  const int n = qutrit_count(x);
  check_certified_size(n);
  const int P = pow_int(9, n);
  const RealVector o = wigner_rep(x).values;

  // X = P - N with P, N in cone(F_W); coordinates p = W(P), N = P - X.
  conic::LmiProblem lmi(P);
  for (int i = 0; i < P; ++i) {
    lmi.set_objective(i, -2.0);  // maximize -2 sum p = -(Tr P + Tr N) - Tr X
    lmi.add_nonneg(0.0, {{i, -1.0}});
    lmi.add_nonneg(-o(i), {{i, -1.0}});
  }
  const int D = pow_int(3, n);
  add_wigner_psd(lmi, n, Matrix::Zero(D, D));
  add_wigner_psd(lmi, n, x.mat);
  auto res = lmi.solve(tol * 1e-1, tol * 1e-1, 200);
  return -res.value - o.sum();
}

double fw_dual_overlap(const Operator& rho, double tol) {
  const int n = qutrit_count(rho);
  check_certified_size(n);
  const int P = pow_int(9, n);
  conic::LmiProblem lmi(P);
  std::vector<std::pair<int, double>> ones;
  for (int i = 0; i < P; ++i) {
    lmi.set_objective(i,
                      std::real((phase_point_matrix(i, n).adjoint() * rho.mat).trace()));
    lmi.add_nonneg(0.0, {{i, -1.0}});
    ones.emplace_back(i, 1.0);
  }
  lmi.add_eq(1.0, ones);  // unit trace: Wigner coefficients sum to 1
  const int D = pow_int(3, n);
  add_wigner_psd(lmi, n, Matrix::Zero(D, D));
  auto res = lmi.solve(tol * 1e-1, tol * 1e-1, 200);
  return res.value;
}

double fw_gen_robustness(const Operator& rho, double tol) {
  const int n = qutrit_count(rho);
  check_certified_size(n);
  const int P = pow_int(9, n);
  // min Tr M over M in cone(F_W), M >= rho; value = 1 + R^g.
  conic::LmiProblem lmi(P);
  for (int i = 0; i < P; ++i) {
    lmi.set_objective(i, -1.0);
    lmi.add_nonneg(0.0, {{i, -1.0}});
  }
  add_wigner_psd(lmi, n, rho.mat);
  auto res = lmi.solve(tol * 1e-1, tol * 1e-1, 200);
  return -res.value - 1.0;
}

double tempered_mana(const Operator& rho, double tol) {
  const int n = qutrit_count(rho);
  check_certified_size(n);
  const int P = pow_int(9, n);
  const int D = pow_int(3, n);
  const double dn = std::pow(3.0, n);

  conic::LmiProblem lmi(P);
  RealVector overlap(P);
  for (int i = 0; i < P; ++i) {
    overlap(i) = std::real((phase_point_matrix(i, n).adjoint() * rho.mat).trace());
    lmi.set_objective(i, overlap(i));
    lmi.add_nonneg(1.0, {{i, dn}});   // 3^n x_i <= 1
    lmi.add_nonneg(1.0, {{i, -dn}});  // 3^n x_i >= -1
  }
  const Matrix id = Matrix::Identity(D, D);
  for (double sign : {1.0, -1.0}) {
    // <rho,X> I + sign * X >= 0
    std::vector<std::pair<int, Matrix>> terms;
    for (int i = 0; i < P; ++i)
      terms.emplace_back(i, Matrix(-(overlap(i) * id + sign * phase_point_matrix(i, n))));
    lmi.add_psd_hermitian(Matrix::Zero(D, D), terms);
  }
  return std::log2(conic::solve_value_tolerant(lmi, tol));
}

// ---------------------------------------------------------------------------
// Two-copy decomposition and witness verification
// ---------------------------------------------------------------------------

namespace {

// Wigner tables, entries * 36, rows/columns indexed by a1*3+a2.
// clang-format off
constexpr int kXPlus36[9][9] = {
    {1, 0, 1, 0, 0, 0, 0, 0, 0},
    {0, 8, 0, 3, 3, 3, 3, 3, 3},
    {1, 0, 1, 0, 0, 0, 0, 0, 0},
    {0, 3, 0, 1, 1, 1, 1, 1, 1},
    {0, 3, 0, 1, 1, 1, 1, 1, 1},
    {0, 3, 0, 1, 1, 1, 1, 1, 1},
    {0, 3, 0, 1, 1, 1, 1, 1, 1},
    {0, 3, 0, 1, 1, 1, 1, 1, 1},
    {0, 3, 0, 1, 1, 1, 1, 1, 1},
};
constexpr int kXMinus36[9][9] = {
    {0, 2, 0, 1, 1, 1, 1, 1, 1},
    {2, 4, 2, 1, 1, 1, 1, 1, 1},
    {0, 2, 0, 1, 1, 1, 1, 1, 1},
    {1, 1, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 1, 0, 0, 0, 0, 0, 0},
};
// Single-copy Wigner row of the Norell state, entries * 6; the two-copy
// table is the outer product (entries * 36).
constexpr int kNorell6[9] = {-1, 2, -1, 1, 1, 1, 1, 1, 1};
// clang-format on

RealVector table_to_vec(const int (*tab)[9], double denom) {
  RealVector v(81);
  for (int p = 0; p < 9; ++p)
    for (int q = 0; q < 9; ++q) v(p * 9 + q) = tab[p][q] / denom;
  return v;
}

Vector make_v(std::initializer_list<double> entries, double scale) {
  Vector v(static_cast<int>(entries.size()));
  int i = 0;
  for (double e : entries) v(i++) = e;
  return v / scale;
}

}  // namespace

AppendixReport verify_appendix_a() {
  AppendixReport rep;
  std::ostringstream os;
  const double tol = 1e-9;

  const Vector n_ket = states::norell_ket();
  Operator n2 = kron(projector(n_ket, {3}), projector(n_ket, {3}));

  // (i) two-copy Wigner table
  RealVector table(81);
  for (int p = 0; p < 9; ++p)
    for (int q = 0; q < 9; ++q) table(p * 9 + q) = kNorell6[p] * kNorell6[q] / 36.0;
  RealVector computed = wigner_rep(n2).values;
  rep.n2_table_ok = (computed - table).cwiseAbs().maxCoeff() < tol;
  if (!rep.n2_table_ok) os << "two-copy Wigner table mismatch; ";

  // (ii) X+- tables and the rank-one decomposition
  WignerRep wplus{2, table_to_vec(kXPlus36, 36.0)};
  WignerRep wminus{2, table_to_vec(kXMinus36, 36.0)};
  Operator xplus = inverse_wigner(wplus);
  Operator xminus = inverse_wigner(wminus);
  rep.xplus_table_ok = rep.xminus_table_ok = true;
  if ((xplus.mat - xminus.mat - n2.mat).cwiseAbs().maxCoeff() > tol) {
    rep.xplus_table_ok = rep.xminus_table_ok = false;
    os << "X+ - X- != N^(x)2; ";
  }

  // The support of X- is spanned by five real unit vectors; each is an
  // eigenvector (the two degenerate pairs are oblique, so the rank-one terms
  // are checked through the eigen-relation rather than as a mixture).
  const Vector v1 = make_v({1, 0, 1, -1, -2, -1, 1, 0, 1}, std::sqrt(10.0));
  const Vector v2 = make_v({0, 1, 0, -1, 0, -1, 0, 1, 0}, 2.0);
  const Vector v3 = make_v({1, 1, 1, 1, 1, 1, 1, 1, 1}, 3.0);
  const Vector v4 = make_v({-1, 0, 1, -1, 0, 1, -1, 0, 1}, std::sqrt(6.0));
  const Vector v5 = make_v({0, -1, -2, 1, 0, -1, 2, 1, 0}, 2.0 * std::sqrt(3.0));
  const double w[5] = {5.0 / 12, 5.0 / 12, 1.0 / 3, 1.0 / 12, 1.0 / 12};
  const Vector* vs[5] = {&v1, &v2, &v3, &v4, &v5};
  auto [vp, up] = eigh(xplus);
  auto [vm, um] = eigh(xminus);
  rep.decomposition_ok = true;
  for (int i = 0; i < 5; ++i) {
    const Vector& vi = *vs[i];
    if (std::abs(vi.norm() - 1.0) > tol ||
        (xminus.mat * vi - w[i] * vi).norm() > tol)
      rep.decomposition_ok = false;
  }
  RealVector spectrum(9);
  spectrum << 0, 0, 0, 0, 1.0 / 12, 1.0 / 12, 1.0 / 3, 5.0 / 12, 5.0 / 12;
  if ((vm - spectrum).cwiseAbs().maxCoeff() > tol) rep.decomposition_ok = false;
  if (!rep.decomposition_ok) os << "eigen-decomposition of X- failed; ";

  rep.psd_ok = vp.minCoeff() > -tol && vm.minCoeff() > -tol;
  if (!rep.psd_ok) os << "X+- not PSD; ";

  // (iii) trace bookkeeping
  rep.trace_sum = wplus.values.sum() + wminus.values.sum();
  rep.trace_diff = wplus.values.sum() - wminus.values.sum();
  const bool traces_ok =
      std::abs(rep.trace_sum - 11.0 / 3.0) < tol && std::abs(rep.trace_diff - 1.0) < tol;
  if (!traces_ok) os << "trace bookkeeping failed; ";

  // (iv) tempered-mana witness for |H+><H+|
  const double cplus = (1.0 + 2.0 * std::sqrt(3.0)) / 3.0;
  const double cminus = (2.0 * std::sqrt(3.0) - 1.0) / 3.0;
  Matrix x = cplus * projector(states::hadamard_plus_ket(), {3}).mat -
             cminus * projector(states::hadamard_minus_ket(), {3}).mat -
             (1.0 / 3.0) * projector(states::hadamard_i_ket(), {3}).mat;
  Operator xop(x, {3}, true);
  RealVector wx = wigner_rep(xop).values;
  RealVector expect(9);
  expect << 1, 1, 1, 1, -1, -1, 1, -1, -1;
  expect /= 3.0;
  const double overlap =
      std::real(states::hadamard_plus_ket().dot(x * states::hadamard_plus_ket()));
  rep.hplus_witness_ok = (wx - expect).cwiseAbs().maxCoeff() < tol &&
                         std::abs(wigner_spectral_norm(xop) - 1.0) < tol &&
                         std::abs(op_norm(x) - overlap) < tol &&
                         std::abs(overlap - cplus) < tol;
  if (!rep.hplus_witness_ok) os << "H+ witness table failed; ";

  rep.all_pass = rep.n2_table_ok && rep.xplus_table_ok && rep.xminus_table_ok &&
                 rep.decomposition_ok && rep.psd_ok && traces_ok && rep.hplus_witness_ok;
  rep.detail = os.str();
  return rep;
}

std::string wigner_csv(const WignerRep& w) {
  std::ostringstream os;
  os.precision(12);
  if (w.n == 1) {
    os << "a1\\a2,0,1,2\n";
    for (int a1 = 0; a1 < 3; ++a1) {
      os << a1;
      for (int a2 = 0; a2 < 3; ++a2) os << "," << w.values(a1 * 3 + a2);
      os << "\n";
    }
  } else if (w.n == 2) {
    os << "(a1 a2)\\(b1 b2)";
    for (int b = 0; b < 9; ++b) os << ",(" << b / 3 << " " << b % 3 << ")";
    os << "\n";
    for (int a = 0; a < 9; ++a) {
      os << "(" << a / 3 << " " << a % 3 << ")";
      for (int b = 0; b < 9; ++b) os << "," << w.values(a * 9 + b);
      os << "\n";
    }
  } else {
    throw std::invalid_argument("wigner_csv: only 1 or 2 copies supported");
  }
  return os.str();
}

}  // namespace resnorm::wigner
