#include "resnorm/entanglement.hpp"

#include "resnorm/conic.hpp"
#include "resnorm/hermvar.hpp"
#include "resnorm/linalg.hpp"
#include "resnorm/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace resnorm::entanglement {

namespace {

std::pair<int, int> bipartite_dims(const Operator& x) {
  if (x.dims.size() != 2)
    throw std::invalid_argument("expected a bipartite operator (two tensor factors)");
  return {x.dims[0], x.dims[1]};
}

// max <W,rho> s.t. ||map(W)||_inf <= 1 (via PSD blocks supplied by caller)
// and ||W||_inf <= <W,rho>. The second pair of blocks uses
// <W,rho> I -+ W >= 0.
double tempered_value(const Operator& rho,
                      const std::function<void(conic::LmiProblem&, const detail::HermVar&)>&
                          add_unit_ball_blocks,
                      double tol) {
  const int D = static_cast<int>(rho.mat.rows());
  detail::HermVar W{D, 0};
  conic::LmiProblem lmi(W.count());
  const RealVector overlap = W.pairing(rho.mat);
  for (int t = 0; t < W.count(); ++t) lmi.set_objective(t, overlap(t));

  add_unit_ball_blocks(lmi, W);

  const Matrix id = Matrix::Identity(D, D);
  for (double sign : {1.0, -1.0}) {
    // <W,rho> I + sign * W >= 0  ->  C = 0, A_t = -(<B_t,rho> I + sign B_t)
    std::vector<std::pair<int, Matrix>> terms;
    for (int t = 0; t < W.count(); ++t)
      terms.emplace_back(t, Matrix(-(overlap(t) * id + sign * W.basis(t))));
    lmi.add_psd_hermitian(Matrix::Zero(D, D), terms);
  }

  // The relaxation ||W||_inf <= <W,rho> has empty interior (the overlap
  // never exceeds the norm), so the solve may stall just above a very tight
  // gap; accept it when it certifies the value to tol.
  return conic::solve_value_tolerant(lmi, tol);
}

}  // namespace

double negativity(const Operator& x) {
  auto [da, db] = bipartite_dims(x);
  return trace_norm(partial_transpose(x.mat, da, db));
}

double log_negativity(const Operator& x) { return std::log2(negativity(x)); }

double reshuffled_negativity(const Operator& x) {
  auto [da, db] = bipartite_dims(x);
  return trace_norm(reshuffle(x.mat, da, db));
}

PureSepNorms pure_sep_norms(const Vector& v, int da, int db) {
  auto sd = schmidt(v, da, db);  // rejects non-normalized input
  double sum_sqrt = 0.0, pmax = 0.0;
  for (int i = 0; i < sd.coefficients.size(); ++i) {
    const double p = sd.coefficients(i) * sd.coefficients(i);
    sum_sqrt += std::sqrt(p);
    pmax = std::max(pmax, p);
  }
  PureSepNorms out;
  out.one_plus_Rs = sum_sqrt * sum_sqrt;
  out.base_norm = 2.0 * out.one_plus_Rs - 1.0;
  out.dual_overlap = pmax;
  return out;
}

double tempered_negativity(const Operator& rho, double tol) {
  auto [da, db] = bipartite_dims(rho);
  const int D = da * db;
  const Matrix id = Matrix::Identity(D, D);
  auto blocks = [da = da, db = db, &id, D](conic::LmiProblem& lmi, const detail::HermVar& W) {
    for (double sign : {1.0, -1.0}) {
      // I + sign * W^Gamma >= 0
      auto terms = W.map_terms(
          [&](const Matrix& b) { return Matrix(-sign * partial_transpose(b, da, db)); });
      lmi.add_psd_hermitian(id, terms);
    }
  };
  return tempered_value(rho, blocks, tol);
}

double tempered_reshuffled_negativity(const Operator& rho, double tol) {
  auto [da, db] = bipartite_dims(rho);
  if (da != db)
    throw std::invalid_argument("tempered_reshuffled_negativity: requires d x d bipartition");
  const int D = da * db;
  auto blocks = [da = da, db = db, D](conic::LmiProblem& lmi, const detail::HermVar& W) {
    // ||W^R||_inf <= 1  <=>  [[I, W^R], [(W^R)^dag, I]] >= 0
    Matrix c = Matrix::Identity(2 * D, 2 * D);
    auto terms = W.map_terms([&](const Matrix& b) {
      Matrix r = reshuffle(b, da, db);
      Matrix a = Matrix::Zero(2 * D, 2 * D);
      a.topRightCorner(D, D) = -r;
      a.bottomLeftCorner(D, D) = -r.adjoint();
      return a;
    });
    lmi.add_psd_hermitian(c, terms);
  };
  return tempered_value(rho, blocks, tol);
}

OmegaWitnessReport verify_omega_witness(int d) {
  if (d < 3) throw std::invalid_argument("verify_omega_witness: d must be >= 3");
  OmegaWitnessReport rep;
  rep.d = d;
  rep.alpha = (d == 3) ? 2.0 : static_cast<double>(d) / (d - 2);
  rep.beta = (d == 3) ? 3.0 : 2.0 * d / (d - 2);

  const Operator omega = states::omega_state(d);
  // Witness data: P the rank-d projector sum_i |ii><ii|, Phi the rank-one
  // projector onto the maximally entangled vector.
  const Matrix proj_P = static_cast<double>(d) * states::diagonal_projector_state(d).mat;
  const Matrix proj_Phi = states::max_entangled(d).mat;
  const Matrix Wd = rep.alpha * proj_P - rep.beta * proj_Phi;

  rep.reshuffled_inf_norm = op_norm(reshuffle(Wd, d, d));
  rep.inf_norm = op_norm(Wd);
  rep.overlap = std::real((Wd.adjoint() * omega.mat).trace());
  rep.robustness_bound = 1.0 / (d - 1);
  // omega + Phi/(d-1) = P/(d-1) = (1 + 1/(d-1)) * (P/d) with P/d separable.
  rep.decomposition_ok =
      (omega.mat + proj_Phi / (d - 1) - proj_P / (d - 1)).cwiseAbs().maxCoeff() < 1e-12;

  std::ostringstream os;
  const double tol = 1e-9;
  bool norm_ok = std::abs(rep.reshuffled_inf_norm - 1.0) < tol;
  bool inf_ok = std::abs(rep.inf_norm - rep.alpha) < tol;
  bool overlap_ok = std::abs(rep.overlap - rep.alpha) < tol;
  if (!norm_ok) os << "||W^R||_inf != 1; ";
  if (!inf_ok) os << "||W||_inf != alpha; ";
  if (!overlap_ok) os << "<W,omega> != alpha; ";
  if (!rep.decomposition_ok) os << "robustness decomposition failed; ";
  rep.all_pass = norm_ok && inf_ok && overlap_ok && rep.decomposition_ok;
  rep.detail = os.str();
  return rep;
}

}  // namespace resnorm::entanglement
