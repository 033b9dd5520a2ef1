#include "resnorm/dhtest.hpp"

#include "resnorm/conic.hpp"
#include "resnorm/entanglement.hpp"
#include "resnorm/hermvar.hpp"
#include "resnorm/linalg.hpp"
#include "resnorm/stab.hpp"
#include "resnorm/wigner.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace resnorm::dhtest {

using norms::NormTag;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int space_dim(const NormBall& ball) {
  int d = 1;
  for (int f : ball.dims) d *= f;
  return d;
}

void check_ball_operator(const NormBall& ball, const Operator& x) {
  if (x.mat.rows() != space_dim(ball))
    throw std::invalid_argument("operator dimension does not match the norm ball");
}

std::pair<int, int> bipartite(const NormBall& ball) {
  if (ball.dims.size() != 2)
    throw std::invalid_argument("this norm ball requires a bipartite dimension list");
  return {ball.dims[0], ball.dims[1]};
}

int qubit_count(const NormBall& ball) {
  for (int f : ball.dims)
    if (f != 2) throw std::invalid_argument("stabiliser ball requires qubit factors");
  return static_cast<int>(ball.dims.size());
}

int qutrit_count(const NormBall& ball) {
  for (int f : ball.dims)
    if (f != 3) throw std::invalid_argument("Wigner ball requires qutrit factors");
  return static_cast<int>(ball.dims.size());
}

[[noreturn]] void unsupported(const NormBall& ball) {
  throw std::invalid_argument("norm ball not SDP/LP-representable here: " +
                              norms::to_string(ball.tag));
}

// Adds the constraint that the dual norm of Q is at most the variable
// `tvar` (or at most 1 when tvar < 0) to an LMI over the HermVar Q.
void add_dual_ball_constraint(conic::LmiProblem& lmi, const detail::HermVar& Q,
                              const NormBall& ball, int tvar) {
  const int d = Q.dim;
  switch (ball.tag) {
    case NormTag::Negativity: {
      auto [da, db] = bipartite(ball);
      const Matrix id = Matrix::Identity(d, d);
      for (double sign : {1.0, -1.0}) {
        // t I + sign Q^Gamma >= 0
        std::vector<std::pair<int, Matrix>> terms;
        for (int t = 0; t < Q.count(); ++t)
          terms.emplace_back(t, Matrix(-sign * partial_transpose(Q.basis(t), da, db)));
        if (tvar >= 0) {
          terms.emplace_back(tvar, Matrix(-id));
          lmi.add_psd_hermitian(Matrix::Zero(d, d), terms);
        } else {
          lmi.add_psd_hermitian(id, terms);
        }
      }
      return;
    }
    case NormTag::ReshuffledNegativity: {
      auto [da, db] = bipartite(ball);
      if (da != db) throw std::invalid_argument("reshuffled ball requires d x d bipartition");
      // [[t I, Q^R], [(Q^R)^dag, t I]] >= 0
      std::vector<std::pair<int, Matrix>> terms;
      for (int t = 0; t < Q.count(); ++t) {
        Matrix r = reshuffle(Q.basis(t), da, db);
        Matrix a = Matrix::Zero(2 * d, 2 * d);
        a.topRightCorner(d, d) = -r;
        a.bottomLeftCorner(d, d) = -r.adjoint();
        terms.emplace_back(t, a);
      }
      if (tvar >= 0) {
        terms.emplace_back(tvar, Matrix(-Matrix::Identity(2 * d, 2 * d)));
        lmi.add_psd_hermitian(Matrix::Zero(2 * d, 2 * d), terms);
      } else {
        lmi.add_psd_hermitian(Matrix::Identity(2 * d, 2 * d), terms);
      }
      return;
    }
    case NormTag::Wigner: {
      const int n = qutrit_count(ball);
      const int npoints = static_cast<int>(std::pow(9, n));
      for (int p = 0; p < npoints; ++p) {
        const Matrix ap = wigner::phase_point_op(wigner::phase_point_from_index(p, n)).mat;
        const RealVector coeff = Q.pairing(ap);  // Tr(Q A_p)
        for (double sign : {1.0, -1.0}) {
          // t - sign Tr(Q A_p) >= 0
          std::vector<std::pair<int, double>> row;
          for (int t = 0; t < Q.count(); ++t) row.emplace_back(t, sign * coeff(t));
          if (tvar >= 0) {
            row.emplace_back(tvar, -1.0);
            lmi.add_nonneg(0.0, row);
          } else {
            lmi.add_nonneg(1.0, row);
          }
        }
      }
      return;
    }
    case NormTag::StabiliserP: {
      const int n = qubit_count(ball);
      for (const auto& ps : stab::PauliString::all(n)) {
        const RealVector coeff = Q.pairing(ps.matrix());
        for (double sign : {1.0, -1.0}) {
          std::vector<std::pair<int, double>> row;
          for (int t = 0; t < Q.count(); ++t) row.emplace_back(t, sign * coeff(t));
          if (tvar >= 0) {
            row.emplace_back(tvar, -1.0);
            lmi.add_nonneg(0.0, row);
          } else {
            lmi.add_nonneg(1.0, row);
          }
        }
      }
      return;
    }
    default: unsupported(ball);
  }
}

// Like conic::solve_value_tolerant, but keeps the variable vector.
conic::LmiProblem::Result solve_result_tolerant(const conic::LmiProblem& lmi, double tol) {
  try {
    return lmi.solve(tol * 1e-1, tol * 1e-1, 200);
  } catch (const conic::SolverError& err) {
    const auto& s = err.solution;
    const double scale = 1.0 + std::abs(s.primal_value) + std::abs(s.dual_value);
    if (s.status == conic::Status::MaxIterations && s.gap <= tol * scale &&
        s.primal_residual <= tol && s.dual_residual <= tol) {
      conic::LmiProblem::Result res;
      res.value = s.dual_value;
      res.y = s.y;
      res.raw = s;
      return res;
    }
    throw;
  }
}

// min t s.t. ||Q||^o_mu <= t and the caller-supplied operator constraints;
// returns log2(1/t*) plus the optimal Q.
BallWitness min_dual_norm_log(const Operator& rho, const NormBall& ball,
                              const std::function<void(conic::LmiProblem&, const detail::HermVar&,
                                                       const Matrix&)>& add_q_constraints,
                              double tol) {
  check_ball_operator(ball, rho.mat);
  const int d = static_cast<int>(rho.mat.rows());
  detail::HermVar Q{d, 0};
  const int tvar = Q.count();
  conic::LmiProblem lmi(tvar + 1);
  lmi.set_objective(tvar, -1.0);  // max -t
  add_dual_ball_constraint(lmi, Q, ball, tvar);
  add_q_constraints(lmi, Q, Matrix::Identity(d, d));
  const auto res = solve_result_tolerant(lmi, tol);
  const double tstar = -res.value;
  Operator qop(Q.assemble(res.y.head(Q.count())), rho.dims, true);
  if (tstar <= 10 * tol) return {kInf, qop};
  return {-std::log2(tstar), qop};
}

}  // namespace

double primal_norm(const NormBall& ball, const Operator& x) {
  check_ball_operator(ball, x.mat);
  switch (ball.tag) {
    case NormTag::Negativity: {
      auto [da, db] = bipartite(ball);
      return trace_norm(partial_transpose(x.mat, da, db));
    }
    case NormTag::ReshuffledNegativity: {
      auto [da, db] = bipartite(ball);
      return trace_norm(reshuffle(x.mat, da, db));
    }
    case NormTag::Wigner: qutrit_count(ball); return wigner::wigner_trace_norm(x);
    case NormTag::StabiliserP: return stab::stab_norm(x.mat, qubit_count(ball));
    default: unsupported(ball);
  }
}

double dual_norm(const NormBall& ball, const Operator& q) {
  check_ball_operator(ball, q.mat);
  switch (ball.tag) {
    case NormTag::Negativity: {
      auto [da, db] = bipartite(ball);
      return op_norm(partial_transpose(q.mat, da, db));
    }
    case NormTag::ReshuffledNegativity: {
      auto [da, db] = bipartite(ball);
      return op_norm(reshuffle(q.mat, da, db));
    }
    case NormTag::Wigner: qutrit_count(ball); return wigner::wigner_spectral_norm(q);
    case NormTag::StabiliserP: return stab::stab_norm_dual(q.mat, qubit_count(ball));
    default: unsupported(ball);
  }
}

double hyp_test_optimum(const Operator& rho, const Operator& x, double eps, double tol) {
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in [0, 1)");
  if (rho.mat.rows() != x.mat.rows()) throw std::invalid_argument("dimension mismatch");
  const int d = static_cast<int>(rho.mat.rows());
  detail::HermVar Q{d, 0};
  conic::LmiProblem lmi(Q.count());
  const RealVector obj = Q.pairing(x.mat);
  for (int t = 0; t < Q.count(); ++t) lmi.set_objective(t, -obj(t));  // max -<Q,X>

  std::vector<std::pair<int, Matrix>> lower, upper;
  for (int t = 0; t < Q.count(); ++t) {
    lower.emplace_back(t, Matrix(Q.basis(t)));    // I - Q >= 0
    upper.emplace_back(t, Matrix(-Q.basis(t)));   // Q >= 0
  }
  lmi.add_psd_hermitian(Matrix::Identity(d, d), lower);
  lmi.add_psd_hermitian(Matrix::Zero(d, d), upper);

  const RealVector ov = Q.pairing(rho.mat);
  std::vector<std::pair<int, double>> row;
  for (int t = 0; t < Q.count(); ++t) row.emplace_back(t, -ov(t));
  lmi.add_nonneg(-(1.0 - eps), row);  // <Q,rho> - (1-eps) >= 0

  return -conic::solve_value_tolerant(lmi, tol);
}

double d_hyp(const Operator& rho, const Operator& x, double eps, double tol) {
  const double opt = hyp_test_optimum(rho, x, eps, tol);
  if (opt <= 10 * tol) return kInf;
  return -std::log2(opt);
}

double emancipated_optimum(const Operator& rho, const Operator& x, double eps, double tol) {
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in [0, 1)");
  if (rho.mat.rows() != x.mat.rows()) throw std::invalid_argument("dimension mismatch");
  const int d = static_cast<int>(rho.mat.rows());
  detail::HermVar Q{d, 0};
  conic::LmiProblem lmi(Q.count());
  const RealVector obj = Q.pairing(x.mat);
  for (int t = 0; t < Q.count(); ++t) lmi.set_objective(t, -obj(t));

  const Matrix id = Matrix::Identity(d, d);
  for (double sign : {1.0, -1.0}) {
    // I + sign Q >= 0
    std::vector<std::pair<int, Matrix>> terms;
    for (int t = 0; t < Q.count(); ++t) terms.emplace_back(t, Matrix(sign * Q.basis(t)));
    lmi.add_psd_hermitian(id, terms);
  }

  const RealVector ov = Q.pairing(rho.mat);
  std::vector<std::pair<int, double>> row;
  for (int t = 0; t < Q.count(); ++t) row.emplace_back(t, -ov(t));
  lmi.add_nonneg(-(1.0 - eps), row);

  return -conic::solve_value_tolerant(lmi, tol);
}

double d_emancipated(const Operator& rho, const Operator& x, double eps, double tol) {
  const double opt = emancipated_optimum(rho, x, eps, tol);
  if (opt <= 10 * tol) return kInf;
  return -std::log2(opt);
}

BallWitness d_emancipated_min_over_ball_witness(const Operator& rho, const NormBall& ball,
                                                double eps, double tol) {
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in [0, 1)");
  return min_dual_norm_log(
      rho, ball,
      [&](conic::LmiProblem& lmi, const detail::HermVar& Q, const Matrix& id) {
        // -I <= Q <= I
        for (double sign : {1.0, -1.0}) {
          std::vector<std::pair<int, Matrix>> terms;
          for (int t = 0; t < Q.count(); ++t) terms.emplace_back(t, Matrix(sign * Q.basis(t)));
          lmi.add_psd_hermitian(id, terms);
        }
        // <Q,rho> >= 1 - eps
        const RealVector ov = Q.pairing(rho.mat);
        std::vector<std::pair<int, double>> row;
        for (int t = 0; t < Q.count(); ++t) row.emplace_back(t, -ov(t));
        lmi.add_nonneg(-(1.0 - eps), row);
      },
      tol);
}

double d_emancipated_min_over_ball(const Operator& rho, const NormBall& ball, double eps,
                                   double tol) {
  return d_emancipated_min_over_ball_witness(rho, ball, eps, tol).value;
}

double d_emancipated_zero_support_form(const Operator& rho, const NormBall& ball, double tol) {
  auto [vals, vecs] = eigh(rho);
  const int d = static_cast<int>(rho.mat.rows());
  Matrix proj = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (vals(i) > 1e-9) proj += vecs.col(i) * vecs.col(i).adjoint();
  const Matrix lo = 2.0 * proj - Matrix::Identity(d, d);
  return min_dual_norm_log(
      rho, ball,
      [&](conic::LmiProblem& lmi, const detail::HermVar& Q, const Matrix& id) {
        // 2 Pi_rho - I <= Q <= I
        std::vector<std::pair<int, Matrix>> upper, lower;
        for (int t = 0; t < Q.count(); ++t) {
          upper.emplace_back(t, Matrix(Q.basis(t)));
          lower.emplace_back(t, Matrix(-Q.basis(t)));
        }
        lmi.add_psd_hermitian(id, upper);
        lmi.add_psd_hermitian(Matrix(-lo), lower);  // Q - (2 Pi - I) >= 0
      },
      tol)
      .value;
}

namespace {

// Adds variables and constraints expressing ||M(vars)||_1 <= bound, where
// M is Hermitian and linear in the existing variables with coefficient
// matrices `coeff` plus constant `c0`: introduces P, N >= 0 with
// M = P - N and Tr P + Tr N <= bound (bound = variable index or constant).
struct HermSplit {
  detail::HermVar p, n;
};

HermSplit add_trace_norm_split(conic::LmiProblem& lmi, int& next_var, int d) {
  HermSplit s{{d, next_var}, {d, next_var + d * d}};
  next_var += 2 * d * d;
  for (const detail::HermVar* h : {&s.p, &s.n}) {
    std::vector<std::pair<int, Matrix>> terms;
    for (int t = 0; t < h->count(); ++t) terms.emplace_back(h->offset + t, Matrix(-h->basis(t)));
    lmi.add_psd_hermitian(Matrix::Zero(d, d), terms);  // P >= 0 / N >= 0
  }
  return s;
}

}  // namespace

double d_emancipated_min_over_ball_primal(const Operator& rho, const NormBall& ball, double eps,
                                          double tol) {
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in [0, 1)");
  check_ball_operator(ball, rho.mat);
  const int d = static_cast<int>(rho.mat.rows());
  detail::HermVar Z{d, 0};
  int next_var = Z.count();
  const int lam = next_var++;
  int aux_count = 2 * d * d;  // A, B
  int ball_count = 0;
  switch (ball.tag) {
    case NormTag::Negativity: ball_count = 2 * d * d; break;
    case NormTag::ReshuffledNegativity: ball_count = 2 * d * d; break;
    case NormTag::Wigner: ball_count = 2 * static_cast<int>(std::pow(9, qutrit_count(ball))); break;
    case NormTag::StabiliserP: ball_count = 2 * (1 << (2 * qubit_count(ball))); break;
    default: unsupported(ball);
  }
  conic::LmiProblem lmi(next_var + aux_count + ball_count);

  detail::HermVar A{d, next_var}, B{d, next_var + d * d};
  next_var += 2 * d * d;
  for (const detail::HermVar* h : {&A, &B}) {
    std::vector<std::pair<int, Matrix>> terms;
    for (int t = 0; t < h->count(); ++t) terms.emplace_back(h->offset + t, Matrix(-h->basis(t)));
    lmi.add_psd_hermitian(Matrix::Zero(d, d), terms);
  }
  lmi.add_nonneg(0.0, {{lam, -1.0}});  // lambda >= 0

  // objective: max lambda (1 - eps) - Tr A - Tr B
  lmi.set_objective(lam, 1.0 - eps);
  for (int i = 0; i < d; ++i) {
    lmi.set_objective(A.offset + i, -1.0);
    lmi.set_objective(B.offset + i, -1.0);
  }

  // Z = lambda rho - A + B, coordinate-wise
  const RealVector rc = Z.coordinates(rho.mat);
  for (int t = 0; t < Z.count(); ++t)
    lmi.add_eq(0.0, {{Z.offset + t, 1.0},
                     {lam, -rc(t)},
                     {A.offset + t, 1.0},
                     {B.offset + t, -1.0}});

  // ||Z||_mu <= 1
  switch (ball.tag) {
    case NormTag::Negativity: {
      auto [da, db] = bipartite(ball);
      HermSplit s = add_trace_norm_split(lmi, next_var, d);
      for (int t = 0; t < Z.count(); ++t) {
        std::vector<std::pair<int, double>> row;
        for (int q = 0; q < Z.count(); ++q) {
          const double c = Z.coordinates(partial_transpose(Z.basis(q), da, db))(t);
          if (std::abs(c) > 1e-14) row.emplace_back(Z.offset + q, c);
        }
        row.emplace_back(s.p.offset + t, -1.0);
        row.emplace_back(s.n.offset + t, 1.0);
        lmi.add_eq(0.0, row);  // Z^Gamma = P - N
      }
      std::vector<std::pair<int, double>> trace_row;
      for (int i = 0; i < d; ++i) {
        trace_row.emplace_back(s.p.offset + i, 1.0);
        trace_row.emplace_back(s.n.offset + i, 1.0);
      }
      lmi.add_nonneg(1.0, trace_row);
      break;
    }
    case NormTag::ReshuffledNegativity: {
      auto [da, db] = bipartite(ball);
      if (da != db) throw std::invalid_argument("reshuffled ball requires d x d bipartition");
      detail::HermVar A2{d, next_var}, B2{d, next_var + d * d};
      next_var += 2 * d * d;
      std::vector<std::pair<int, Matrix>> terms;
      for (int t = 0; t < Z.count(); ++t) {
        Matrix r = reshuffle(Z.basis(t), da, db);
        Matrix m = Matrix::Zero(2 * d, 2 * d);
        m.topRightCorner(d, d) = -r;
        m.bottomLeftCorner(d, d) = -r.adjoint();
        terms.emplace_back(Z.offset + t, m);
      }
      for (int t = 0; t < A2.count(); ++t) {
        Matrix m = Matrix::Zero(2 * d, 2 * d);
        m.topLeftCorner(d, d) = -A2.basis(t);
        terms.emplace_back(A2.offset + t, m);
        Matrix m2 = Matrix::Zero(2 * d, 2 * d);
        m2.bottomRightCorner(d, d) = -B2.basis(t);
        terms.emplace_back(B2.offset + t, m2);
      }
      lmi.add_psd_hermitian(Matrix::Zero(2 * d, 2 * d), terms);
      std::vector<std::pair<int, double>> trace_row;
      for (int i = 0; i < d; ++i) {
        trace_row.emplace_back(A2.offset + i, 0.5);
        trace_row.emplace_back(B2.offset + i, 0.5);
      }
      lmi.add_nonneg(1.0, trace_row);
      break;
    }
    case NormTag::Wigner: {
      const int n = qutrit_count(ball);
      const int npoints = static_cast<int>(std::pow(9, n));
      const int u0 = next_var, v0 = next_var + npoints;
      next_var += 2 * npoints;
      const double threen = std::pow(3.0, n);
      std::vector<std::pair<int, double>> sum_row;
      for (int p = 0; p < npoints; ++p) {
        const Matrix ap = wigner::phase_point_op(wigner::phase_point_from_index(p, n)).mat;
        const RealVector coeff = Z.pairing(ap);
        std::vector<std::pair<int, double>> row;
        for (int t = 0; t < Z.count(); ++t)
          if (std::abs(coeff(t)) > 1e-14) row.emplace_back(Z.offset + t, coeff(t) / threen);
        row.emplace_back(u0 + p, -1.0);
        row.emplace_back(v0 + p, 1.0);
        lmi.add_eq(0.0, row);  // W_p(Z) = u_p - v_p
        lmi.add_nonneg(0.0, {{u0 + p, -1.0}});
        lmi.add_nonneg(0.0, {{v0 + p, -1.0}});
        sum_row.emplace_back(u0 + p, 1.0);
        sum_row.emplace_back(v0 + p, 1.0);
      }
      lmi.add_nonneg(1.0, sum_row);
      break;
    }
    case NormTag::StabiliserP: {
      const int n = qubit_count(ball);
      const auto paulis = stab::PauliString::all(n);
      const int np = static_cast<int>(paulis.size());
      const int u0 = next_var, v0 = next_var + np;
      next_var += 2 * np;
      const double scale = 1.0 / (1 << n);
      std::vector<std::pair<int, double>> sum_row;
      for (int p = 0; p < np; ++p) {
        const RealVector coeff = Z.pairing(paulis[p].matrix());
        std::vector<std::pair<int, double>> row;
        for (int t = 0; t < Z.count(); ++t)
          if (std::abs(coeff(t)) > 1e-14) row.emplace_back(Z.offset + t, coeff(t));
        row.emplace_back(u0 + p, -1.0);
        row.emplace_back(v0 + p, 1.0);
        lmi.add_eq(0.0, row);  // Tr(Z P) = u_p - v_p
        lmi.add_nonneg(0.0, {{u0 + p, -1.0}});
        lmi.add_nonneg(0.0, {{v0 + p, -1.0}});
        sum_row.emplace_back(u0 + p, scale);
        sum_row.emplace_back(v0 + p, scale);
      }
      lmi.add_nonneg(1.0, sum_row);
      break;
    }
    default: unsupported(ball);
  }

  const double val = conic::solve_value_tolerant(lmi, tol);
  if (val <= 10 * tol) return kInf;
  return -std::log2(val);
}

EpsDeltaReport check_eps_delta(const Operator& rho, const NormBall& ball, double eps, double delta,
                               double tol) {
  if (eps < 0.0 || delta < 0.0 || eps + delta >= 1.0)
    throw std::invalid_argument("need eps, delta >= 0 with eps + delta < 1");
  check_ball_operator(ball, rho.mat);
  const int d = static_cast<int>(rho.mat.rows());

  double lhs;
  if (eps < 1e-12) {
    // B_0(rho) = {rho}: closed-form norm
    lhs = std::log2(primal_norm(ball, rho));
  } else {
    // min ||X||_mu over Hermitian X with ||X||_1 <= 1, ||X - rho||_1 <= eps
    detail::HermVar X{d, 0};
    int next_var = X.count();
    conic::LmiProblem* lmi_ptr = nullptr;

    // First pass to count variables is avoided by building constraint lists
    // after allocating a generous LmiProblem: variables are X, two trace-norm
    // splits, and the norm-objective auxiliaries.
    int aux_count = 4 * d * d;
    int obj_count = 0;
    switch (ball.tag) {
      case NormTag::Negativity: obj_count = 2 * d * d; break;
      case NormTag::ReshuffledNegativity: obj_count = 2 * d * d; break;
      case NormTag::Wigner:
        obj_count = 2 * static_cast<int>(std::pow(9, qutrit_count(ball)));
        break;
      case NormTag::StabiliserP:
        obj_count = 2 * (1 << (2 * qubit_count(ball)));
        break;
      default: unsupported(ball);
    }
    conic::LmiProblem lmi(X.count() + aux_count + obj_count);
    lmi_ptr = &lmi;

    // ||X||_1 <= 1
    HermSplit s1 = add_trace_norm_split(lmi, next_var, d);
    for (int t = 0; t < X.count(); ++t) {
      // coordinate-wise X - P + N = 0
      lmi.add_eq(0.0, {{X.offset + t, 1.0}, {s1.p.offset + t, -1.0}, {s1.n.offset + t, 1.0}});
    }
    {
      std::vector<std::pair<int, double>> row;
      for (int i = 0; i < d; ++i) {
        row.emplace_back(s1.p.offset + i, 1.0);  // diagonal coords are traces
        row.emplace_back(s1.n.offset + i, 1.0);
      }
      lmi.add_nonneg(1.0, row);
    }

    // ||X - rho||_1 <= eps
    HermSplit s2 = add_trace_norm_split(lmi, next_var, d);
    const RealVector rho_coords = X.coordinates(rho.mat);
    for (int t = 0; t < X.count(); ++t) {
      lmi.add_eq(rho_coords(t),
                 {{X.offset + t, 1.0}, {s2.p.offset + t, -1.0}, {s2.n.offset + t, 1.0}});
    }
    {
      std::vector<std::pair<int, double>> row;
      for (int i = 0; i < d; ++i) {
        row.emplace_back(s2.p.offset + i, 1.0);
        row.emplace_back(s2.n.offset + i, 1.0);
      }
      lmi.add_nonneg(eps, row);
    }

    // objective: minimize ||X||_mu
    switch (ball.tag) {
      case NormTag::Negativity: {
        auto [da, db] = bipartite(ball);
        HermSplit s3 = add_trace_norm_split(lmi, next_var, d);
        // X^Gamma - P3 + N3 = 0, coordinate-wise
        for (int t = 0; t < X.count(); ++t) {
          std::vector<std::pair<int, double>> row;
          for (int s = 0; s < X.count(); ++s) {
            const double c = X.coordinates(partial_transpose(X.basis(s), da, db))(t);
            if (std::abs(c) > 1e-14) row.emplace_back(X.offset + s, c);
          }
          row.emplace_back(s3.p.offset + t, -1.0);
          row.emplace_back(s3.n.offset + t, 1.0);
          lmi.add_eq(0.0, row);
        }
        for (int i = 0; i < d; ++i) {
          lmi.set_objective(s3.p.offset + i, -1.0);
          lmi.set_objective(s3.n.offset + i, -1.0);
        }
        break;
      }
      case NormTag::ReshuffledNegativity: {
        auto [da, db] = bipartite(ball);
        if (da != db) throw std::invalid_argument("reshuffled ball requires d x d bipartition");
        // ||X^R||_1 <= (Tr A + Tr B)/2 with [[A, X^R],[X^R^dag, B]] >= 0
        detail::HermVar A{d, next_var}, B{d, next_var + d * d};
        next_var += 2 * d * d;
        std::vector<std::pair<int, Matrix>> terms;
        for (int t = 0; t < X.count(); ++t) {
          Matrix r = reshuffle(X.basis(t), da, db);
          Matrix m = Matrix::Zero(2 * d, 2 * d);
          m.topRightCorner(d, d) = -r;
          m.bottomLeftCorner(d, d) = -r.adjoint();
          terms.emplace_back(X.offset + t, m);
        }
        for (int t = 0; t < A.count(); ++t) {
          Matrix m = Matrix::Zero(2 * d, 2 * d);
          m.topLeftCorner(d, d) = -A.basis(t);
          terms.emplace_back(A.offset + t, m);
          Matrix m2 = Matrix::Zero(2 * d, 2 * d);
          m2.bottomRightCorner(d, d) = -B.basis(t);
          terms.emplace_back(B.offset + t, m2);
        }
        lmi.add_psd_hermitian(Matrix::Zero(2 * d, 2 * d), terms);
        for (int i = 0; i < d; ++i) {
          lmi.set_objective(A.offset + i, -0.5);
          lmi.set_objective(B.offset + i, -0.5);
        }
        break;
      }
      case NormTag::Wigner: {
        const int n = qutrit_count(ball);
        const int npoints = static_cast<int>(std::pow(9, n));
        const int u0 = next_var, v0 = next_var + npoints;
        next_var += 2 * npoints;
        const double threen = std::pow(3.0, n);
        for (int p = 0; p < npoints; ++p) {
          const Matrix ap = wigner::phase_point_op(wigner::phase_point_from_index(p, n)).mat;
          const RealVector coeff = X.pairing(ap);  // 3^n W_p(X)
          std::vector<std::pair<int, double>> row;
          for (int t = 0; t < X.count(); ++t)
            if (std::abs(coeff(t)) > 1e-14) row.emplace_back(X.offset + t, coeff(t) / threen);
          row.emplace_back(u0 + p, -1.0);
          row.emplace_back(v0 + p, 1.0);
          lmi.add_eq(0.0, row);  // W_p(X) = u_p - v_p
          lmi.add_nonneg(0.0, {{u0 + p, -1.0}});
          lmi.add_nonneg(0.0, {{v0 + p, -1.0}});
          lmi.set_objective(u0 + p, -1.0);
          lmi.set_objective(v0 + p, -1.0);
        }
        break;
      }
      case NormTag::StabiliserP: {
        const int n = qubit_count(ball);
        const auto paulis = stab::PauliString::all(n);
        const int np = static_cast<int>(paulis.size());
        const int u0 = next_var, v0 = next_var + np;
        next_var += 2 * np;
        const double scale = 1.0 / (1 << n);
        for (int p = 0; p < np; ++p) {
          const RealVector coeff = X.pairing(paulis[p].matrix());
          std::vector<std::pair<int, double>> row;
          for (int t = 0; t < X.count(); ++t)
            if (std::abs(coeff(t)) > 1e-14) row.emplace_back(X.offset + t, coeff(t));
          row.emplace_back(u0 + p, -1.0);
          row.emplace_back(v0 + p, 1.0);
          lmi.add_eq(0.0, row);  // Tr(X P) = u_p - v_p
          lmi.add_nonneg(0.0, {{u0 + p, -1.0}});
          lmi.add_nonneg(0.0, {{v0 + p, -1.0}});
          lmi.set_objective(u0 + p, -scale);
          lmi.set_objective(v0 + p, -scale);
        }
        break;
      }
      default: unsupported(ball);
    }
    lhs = std::log2(-conic::solve_value_tolerant(*lmi_ptr, tol));
  }

  const double rhs =
      d_emancipated_min_over_ball(rho, ball, delta, tol) + std::log2(1.0 - delta - eps);
  EpsDeltaReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.holds = lhs >= rhs - 1e-6;
  return rep;
}

}  // namespace resnorm::dhtest
