#include "resnorm/conic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace resnorm::conic {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kStepFraction = 0.98;

}  // namespace

// ---------------------------------------------------------------------------
// svec / smat / Hermitian embedding
// ---------------------------------------------------------------------------

RealVector svec(const RealMatrix& s) {
  const int n = static_cast<int>(s.rows());
  if (s.cols() != n) throw std::invalid_argument("svec: matrix must be square");
  RealVector v(n * (n + 1) / 2);
  int t = 0;
  for (int q = 0; q < n; ++q)
    for (int p = 0; p <= q; ++p)
      v(t++) = (p == q) ? s(p, q) : kSqrt2 * 0.5 * (s(p, q) + s(q, p));
  return v;
}

RealMatrix smat(const RealVector& v, int n) {
  if (static_cast<int>(v.size()) != n * (n + 1) / 2)
    throw std::invalid_argument("smat: length does not match dimension");
  RealMatrix s(n, n);
  int t = 0;
  for (int q = 0; q < n; ++q)
    for (int p = 0; p <= q; ++p) {
      const double x = (p == q) ? v(t) : v(t) / kSqrt2;
      s(p, q) = x;
      s(q, p) = x;
      ++t;
    }
  return s;
}

RealMatrix embed_hermitian(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("embed_hermitian: matrix must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("embed_hermitian: matrix must be Hermitian");
  RealMatrix r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = m.real();
  r.bottomRightCorner(n, n) = m.real();
  r.topRightCorner(n, n) = -m.imag();
  r.bottomLeftCorner(n, n) = m.imag();
  return 0.5 * (r + r.transpose());
}

RealMatrix embed_hermitian(const Operator& m) { return embed_hermitian(m.mat); }

Matrix deembed_hermitian(const RealMatrix& r) {
  const int n2 = static_cast<int>(r.rows());
  if (r.cols() != n2 || n2 % 2 != 0)
    throw std::invalid_argument("deembed_hermitian: expected even-dimensional square matrix");
  const int n = n2 / 2;
  RealMatrix re = 0.5 * (r.topLeftCorner(n, n) + r.bottomRightCorner(n, n));
  RealMatrix im = 0.5 * (r.bottomLeftCorner(n, n) - r.topRightCorner(n, n));
  Matrix m = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return 0.5 * (m + m.adjoint().eval());
}

// ---------------------------------------------------------------------------
// ConicProgram
// ---------------------------------------------------------------------------

int ConicProgram::total_len() const {
  int n = 0;
  for (const auto& blk : blocks) n += blk.vec_len();
  return n;
}

void ConicProgram::validate() const {
  const int n = total_len();
  if (static_cast<int>(c.size()) != n)
    throw std::invalid_argument("conic program: objective length mismatch");
  for (const auto& row : rows)
    for (const auto& [idx, val] : row.entries) {
      if (idx < 0 || idx >= n) throw std::invalid_argument("conic program: entry index out of range");
      if (!std::isfinite(val)) throw std::invalid_argument("conic program: non-finite coefficient");
    }
  for (const auto& blk : blocks)
    if (blk.size <= 0) throw std::invalid_argument("conic program: nonpositive block size");
}

// ---------------------------------------------------------------------------
// Solver internals
// ---------------------------------------------------------------------------

namespace {

struct MatEntry {
  int p, q;
  double v;
};

// Per (row, PSD block): matrix triplets (full storage, both halves).
struct BlockLayout {
  BlockType type;
  int n;       // matrix side or component count
  int offset;  // offset into the svec coordinate vector
};

struct RowData {
  // per PSD block: triplets; parallel to psd block list
  std::vector<std::vector<MatEntry>> psd;
  std::vector<std::pair<int, double>> lin;   // global coordinate, coefficient (NonNeg)
  std::vector<std::pair<int, double>> fre;   // global coordinate, coefficient (Free)
};

struct Workspace {
  std::vector<BlockLayout> layout;
  std::vector<int> psd_blocks;   // indices into layout with type PSD
  std::vector<int> lin_coords;   // global coordinates in NonNeg blocks
  std::vector<int> free_coords;  // global coordinates in Free blocks
  std::vector<RowData> rows;
  RealVector b;
  double nu = 0.0;  // barrier parameter degree
};

// Map a global svec coordinate within a PSD block to its (p,q) pair.
void coord_to_pq(int t, int& p, int& q) {
  // t indexes column-major upper triangle: offsets 0,1,3,6,...
  q = static_cast<int>((std::sqrt(8.0 * t + 1.0) - 1.0) / 2.0);
  while ((q + 1) * (q + 2) / 2 <= t) ++q;
  while (q * (q + 1) / 2 > t) --q;
  p = t - q * (q + 1) / 2;
}

Workspace build_workspace(const ConicProgram& prog) {
  Workspace w;
  int off = 0;
  for (const auto& blk : prog.blocks) {
    BlockLayout bl{blk.type, blk.size, off};
    if (blk.type == BlockType::PSD) w.psd_blocks.push_back(static_cast<int>(w.layout.size()));
    if (blk.type == BlockType::NonNeg)
      for (int t = 0; t < blk.size; ++t) w.lin_coords.push_back(off + t);
    if (blk.type == BlockType::Free)
      for (int t = 0; t < blk.size; ++t) w.free_coords.push_back(off + t);
    w.layout.push_back(bl);
    off += blk.vec_len();
    if (blk.type == BlockType::PSD || blk.type == BlockType::NonNeg) w.nu += blk.size;
  }

  const int m = static_cast<int>(prog.rows.size());
  w.b.resize(m);
  w.rows.resize(m);
  for (int i = 0; i < m; ++i) {
    w.b(i) = prog.rows[i].rhs;
    w.rows[i].psd.resize(w.psd_blocks.size());
    for (const auto& [idx, val] : prog.rows[i].entries) {
      // locate the block containing this coordinate
      int k = static_cast<int>(w.layout.size()) - 1;
      while (w.layout[k].offset > idx) --k;
      const auto& bl = w.layout[k];
      if (bl.type == BlockType::PSD) {
        int p, q;
        coord_to_pq(idx - bl.offset, p, q);
        int which = 0;
        while (w.psd_blocks[which] != k) ++which;
        auto& trip = w.rows[i].psd[which];
        if (p == q) {
          trip.push_back({p, q, val});
        } else {
          trip.push_back({p, q, val / kSqrt2});
          trip.push_back({q, p, val / kSqrt2});
        }
      } else if (bl.type == BlockType::NonNeg) {
        w.rows[i].lin.emplace_back(idx, val);
      } else {
        w.rows[i].fre.emplace_back(idx, val);
      }
    }
  }
  return w;
}

double cone_violation(const Workspace& w, const RealVector& z, bool free_must_vanish) {
  double viol = 0.0;
  for (int k : w.psd_blocks) {
    const auto& bl = w.layout[k];
    RealMatrix Z = smat(z.segment(bl.offset, Block{BlockType::PSD, bl.n}.vec_len()), bl.n);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(Z, Eigen::EigenvaluesOnly);
    viol = std::max(viol, -es.eigenvalues().minCoeff());
  }
  for (int t : w.lin_coords) viol = std::max(viol, -z(t));
  if (free_must_vanish)
    for (int t : w.free_coords) viol = std::max(viol, std::abs(z(t)));
  return viol;
}

}  // namespace

ConicSolution solve(const ConicProgram& prog, double gap_tol, double feas_tol, int max_iter) {
  prog.validate();
  Workspace w = build_workspace(prog);
  const int n = prog.total_len();
  const int m = static_cast<int>(prog.rows.size());
  const int nf = static_cast<int>(w.free_coords.size());
  const int npsd = static_cast<int>(w.psd_blocks.size());

  // Inverted index: for each nonneg coordinate, the rows touching it.
  std::vector<std::vector<std::pair<int, double>>> lin_index(n);
  std::vector<int> free_pos(n, -1);
  for (int t = 0; t < nf; ++t) free_pos[w.free_coords[t]] = t;
  for (int i = 0; i < m; ++i)
    for (const auto& [idx, val] : w.rows[i].lin) lin_index[idx].emplace_back(i, val);
  RealMatrix Af = RealMatrix::Zero(m, nf);
  for (int i = 0; i < m; ++i)
    for (const auto& [idx, val] : w.rows[i].fre) Af(i, free_pos[idx]) = val;

  // A x and A^T y as callables over the sparse rows.
  auto apply_A = [&](const RealVector& x) {
    RealVector out = RealVector::Zero(m);
    for (int i = 0; i < m; ++i)
      for (const auto& [idx, val] : prog.rows[i].entries) out(i) += val * x(idx);
    return out;
  };
  auto apply_At = [&](const RealVector& y) {
    RealVector out = RealVector::Zero(n);
    for (int i = 0; i < m; ++i)
      for (const auto& [idx, val] : prog.rows[i].entries) out(idx) += val * y(i);
    return out;
  };

  // Identity-scaled deterministic start.
  const double bnorm = (m > 0) ? w.b.cwiseAbs().maxCoeff() : 0.0;
  const double cnorm = (n > 0) ? prog.c.cwiseAbs().maxCoeff() : 0.0;
  const double xi = std::max(10.0, bnorm);
  const double eta = std::max(10.0, cnorm);
  RealVector x = RealVector::Zero(n), s = RealVector::Zero(n), y = RealVector::Zero(m);
  for (int k : w.psd_blocks) {
    const auto& bl = w.layout[k];
    RealVector id = svec(RealMatrix::Identity(bl.n, bl.n));
    x.segment(bl.offset, id.size()) = xi * id;
    s.segment(bl.offset, id.size()) = eta * id;
  }
  for (int t : w.lin_coords) {
    x(t) = xi;
    s(t) = eta;
  }

  ConicSolution sol;
  auto finish = [&](Status st) {
    sol.status = st;
    sol.x = x;
    sol.y = y;
    sol.s = s;
    return sol;
  };

  std::vector<RealMatrix> X(npsd), S(npsd), Sinv(npsd), Lx(npsd);
  std::vector<RealMatrix> Rmat(npsd), dX(npsd), dS(npsd);
  RealVector dx(n), ds(n), dy(m), dxf;
  RealVector dx_aff(n), ds_aff(n);

  for (int iter = 0; iter < max_iter; ++iter) {
    sol.iterations = iter;

    // Factor cone blocks.
    bool ok = true;
    for (int kk = 0; kk < npsd; ++kk) {
      const auto& bl = w.layout[w.psd_blocks[kk]];
      const int len = Block{BlockType::PSD, bl.n}.vec_len();
      X[kk] = smat(x.segment(bl.offset, len), bl.n);
      S[kk] = smat(s.segment(bl.offset, len), bl.n);
      Eigen::LLT<RealMatrix> lltX(X[kk]), lltS(S[kk]);
      if (lltX.info() != Eigen::Success || lltS.info() != Eigen::Success) {
        ok = false;
        break;
      }
      Lx[kk] = lltX.matrixL();
      Sinv[kk] = lltS.solve(RealMatrix::Identity(bl.n, bl.n));
    }
    if (!ok) return finish(Status::MaxIterations);

    const RealVector rp = w.b - apply_A(x);
    const RealVector rd = prog.c - apply_At(y) - s;
    const double pval = prog.c.dot(x);
    const double dval = w.b.dot(y);
    double mu = 0.0;
    if (w.nu > 0) mu = x.dot(s) / w.nu;

    sol.primal_value = pval;
    sol.dual_value = dval;
    sol.gap = std::abs(pval - dval);
    sol.primal_residual = (m > 0) ? rp.norm() / (1.0 + w.b.norm()) : 0.0;
    sol.dual_residual = rd.norm() / (1.0 + prog.c.norm());

    const bool feas = sol.primal_residual <= feas_tol && sol.dual_residual <= feas_tol;
    if (feas && sol.gap <= gap_tol * (1.0 + std::abs(pval) + std::abs(dval)))
      return finish(Status::Optimal);

    // Divergence-based certificate checks.
    const double xscale = x.cwiseAbs().maxCoeff();
    const double yscale = (m > 0) ? y.cwiseAbs().maxCoeff() : 0.0;
    if (yscale > 1e8 * std::max(1.0, eta)) {
      const double by = w.b.dot(y);
      if (by > feas_tol * yscale) {
        RealVector yhat = y / by;
        RealVector z = -apply_At(yhat);
        if (cone_violation(w, z, true) <= 1e2 * feas_tol) {
          y = yhat;
          return finish(Status::Infeasible);
        }
      }
    }
    if (xscale > 1e8 * std::max(1.0, xi)) {
      const double cx = prog.c.dot(x);
      if (cx < -feas_tol * xscale) {
        RealVector xhat = x / (-cx);
        RealVector Ax = apply_A(xhat);
        if ((m == 0 || Ax.cwiseAbs().maxCoeff() <= 1e2 * feas_tol)) {
          x = xhat;
          return finish(Status::Unbounded);
        }
      }
    }

    // --- Schur complement M_ij = Tr(A_i X A_j S^-1), symmetrized ---------
    RealMatrix M = RealMatrix::Zero(m, m);
    for (int kk = 0; kk < npsd; ++kk) {
      const int nb = w.layout[w.psd_blocks[kk]].n;
      RealMatrix B(nb, nb);
      for (int j = 0; j < m; ++j) {
        const auto& aj = w.rows[j].psd[kk];
        if (aj.empty()) continue;
        // B = X * (A_j * Sinv), exploiting sparse A_j
        B.setZero();
        for (const auto& e : aj) B += (e.v * X[kk].col(e.p)) * Sinv[kk].row(e.q);
        for (int i = 0; i < m; ++i) {
          const auto& ai = w.rows[i].psd[kk];
          if (ai.empty()) continue;
          double acc = 0.0;
          for (const auto& e : ai) acc += e.v * B(e.p, e.q);
          M(i, j) += acc;
        }
      }
    }
    M = 0.5 * (M + M.transpose()).eval();
    for (int t : w.lin_coords) {
      const double ratio = x(t) / s(t);
      for (const auto& [i, vi] : lin_index[t])
        for (const auto& [j, vj] : lin_index[t]) M(i, j) += vi * ratio * vj;
    }

    RealMatrix Maug(m + nf, m + nf);
    Maug.setZero();
    Maug.topLeftCorner(m, m) = M;
    if (nf > 0) {
      Maug.topRightCorner(m, nf) = Af;
      Maug.bottomLeftCorner(nf, m) = Af.transpose();
    }
    Eigen::PartialPivLU<RealMatrix> lu(Maug);

    // Solves the Newton system for a given complementarity right-hand side.
    auto newton = [&](double sigma_mu, bool corrector) {
      for (int kk = 0; kk < npsd; ++kk) {
        const int nb = w.layout[w.psd_blocks[kk]].n;
        Rmat[kk] = sigma_mu * RealMatrix::Identity(nb, nb) - X[kk] * S[kk];
        if (corrector) Rmat[kk] -= dX[kk] * dS[kk];
      }
      RealVector rhs(m + nf);
      rhs.head(m) = rp;
      for (int kk = 0; kk < npsd; ++kk) {
        const auto& bl = w.layout[w.psd_blocks[kk]];
        const int len = Block{BlockType::PSD, bl.n}.vec_len();
        RealMatrix Rd = smat(rd.segment(bl.offset, len), bl.n);
        RealMatrix G = (Rmat[kk] - X[kk] * Rd) * Sinv[kk];
        for (int i = 0; i < m; ++i)
          for (const auto& e : w.rows[i].psd[kk]) rhs(i) -= e.v * G(e.p, e.q);
      }
      for (int t : w.lin_coords) {
        double R = sigma_mu - x(t) * s(t);
        if (corrector) R -= dx_aff(t) * ds_aff(t);
        const double G = (R - x(t) * rd(t)) / s(t);
        for (const auto& [i, vi] : lin_index[t]) rhs(i) -= vi * G;
      }
      for (int t = 0; t < nf; ++t) rhs(m + t) = rd(w.free_coords[t]);

      RealVector sol_aug = lu.solve(rhs);
      dy = sol_aug.head(m);
      dxf = sol_aug.tail(nf);

      const RealVector Atdy = apply_At(dy);
      ds = rd - Atdy;
      dx.setZero();
      for (int kk = 0; kk < npsd; ++kk) {
        const auto& bl = w.layout[w.psd_blocks[kk]];
        const int len = Block{BlockType::PSD, bl.n}.vec_len();
        dS[kk] = smat(ds.segment(bl.offset, len), bl.n);
        RealMatrix D = (Rmat[kk] - X[kk] * dS[kk]) * Sinv[kk];
        dX[kk] = 0.5 * (D + D.transpose());
        dx.segment(bl.offset, len) = svec(dX[kk]);
        ds.segment(bl.offset, len) = svec(dS[kk]);  // re-symmetrized (no-op)
      }
      for (int t : w.lin_coords) {
        double R = sigma_mu - x(t) * s(t);
        if (corrector) R -= dx_aff(t) * ds_aff(t);
        dx(t) = (R - x(t) * ds(t)) / s(t);
      }
      for (int t = 0; t < nf; ++t) {
        dx(w.free_coords[t]) = dxf(t);
        ds(w.free_coords[t]) = 0.0;
      }
    };

    // Largest feasible steps along (dx, ds).
    auto max_step = [&](const RealVector& v, const RealVector& dv,
                       const std::vector<RealMatrix>& Vf, bool primal) {
      double alpha = std::numeric_limits<double>::infinity();
      for (int kk = 0; kk < npsd; ++kk) {
        const auto& bl = w.layout[w.psd_blocks[kk]];
        const int len = Block{BlockType::PSD, bl.n}.vec_len();
        RealMatrix D = smat(dv.segment(bl.offset, len), bl.n);
        RealMatrix W;
        if (primal) {
          W = Lx[kk].triangularView<Eigen::Lower>().solve(D);
          W = Lx[kk].triangularView<Eigen::Lower>().solve(W.transpose().eval());
        } else {
          Eigen::LLT<RealMatrix> llt(Vf[kk]);
          RealMatrix L = llt.matrixL();
          W = L.triangularView<Eigen::Lower>().solve(D);
          W = L.triangularView<Eigen::Lower>().solve(W.transpose().eval());
        }
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (W + W.transpose()),
                                                     Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues().minCoeff();
        if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
      }
      for (int t : w.lin_coords)
        if (dv(t) < 0) alpha = std::min(alpha, -v(t) / dv(t));
      return alpha;
    };

    // Predictor.
    newton(0.0, false);
    dx_aff = dx;
    ds_aff = ds;
    const double ap_aff = std::min(1.0, kStepFraction * max_step(x, dx, X, true));
    const double ad_aff = std::min(1.0, kStepFraction * max_step(s, ds, S, false));
    double sigma = 0.0;
    if (w.nu > 0) {
      const double mu_aff = (x + ap_aff * dx).dot(s + ad_aff * ds) / w.nu;
      sigma = std::pow(std::max(mu_aff, 0.0) / std::max(mu, 1e-300), 3.0);
      sigma = std::min(std::max(sigma, 1e-8), 1.0);
    }

    // Corrector.
    newton(sigma * mu, true);
    const double ap = std::min(1.0, kStepFraction * max_step(x, dx, X, true));
    const double ad = std::min(1.0, kStepFraction * max_step(s, ds, S, false));
    if (ap < 1e-9 && ad < 1e-9) return finish(Status::MaxIterations);

    x += ap * dx;
    s += ad * ds;
    y += ad * dy;
  }
  return finish(Status::MaxIterations);
}

// ---------------------------------------------------------------------------
// LmiProblem
// ---------------------------------------------------------------------------

namespace {

RealVector sym_svec(const RealMatrix& a) {
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("LmiProblem: matrix data must be symmetric");
  return svec(0.5 * (a + a.transpose()));
}

}  // namespace

void LmiProblem::add_psd(const RealMatrix& c,
                         const std::vector<std::pair<int, RealMatrix>>& terms) {
  PendingBlock pb;
  pb.block = {BlockType::PSD, static_cast<int>(c.rows())};
  pb.c = sym_svec(c);
  for (const auto& [var, a] : terms) {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("LmiProblem: variable out of range");
    if (a.rows() != c.rows() || a.cols() != c.cols())
      throw std::invalid_argument("LmiProblem: block dimension mismatch");
    pb.terms.emplace_back(var, sym_svec(a));
  }
  pending_.push_back(std::move(pb));
}

void LmiProblem::add_psd_hermitian(const Matrix& c,
                                   const std::vector<std::pair<int, Matrix>>& terms) {
  std::vector<std::pair<int, RealMatrix>> emb;
  emb.reserve(terms.size());
  for (const auto& [var, a] : terms) emb.emplace_back(var, embed_hermitian(a));
  add_psd(embed_hermitian(c), emb);
}

void LmiProblem::add_nonneg(double c0, const std::vector<std::pair<int, double>>& coeffs) {
  PendingBlock pb;
  pb.block = {BlockType::NonNeg, 1};
  pb.c = RealVector::Constant(1, c0);
  for (const auto& [var, v] : coeffs) {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("LmiProblem: variable out of range");
    pb.terms.emplace_back(var, RealVector::Constant(1, v));
  }
  pending_.push_back(std::move(pb));
}

void LmiProblem::add_eq(double c0, const std::vector<std::pair<int, double>>& coeffs) {
  PendingBlock pb;
  pb.block = {BlockType::Free, 1};
  pb.c = RealVector::Constant(1, c0);
  for (const auto& [var, v] : coeffs) {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("LmiProblem: variable out of range");
    pb.terms.emplace_back(var, RealVector::Constant(1, v));
  }
  pending_.push_back(std::move(pb));
}

double solve_value_tolerant(const LmiProblem& lmi, double tol, int max_iter) {
  try {
    return lmi.solve(tol * 1e-1, tol * 1e-1, max_iter).value;
  } catch (const SolverError& err) {
    const auto& s = err.solution;
    const double scale = 1.0 + std::abs(s.primal_value) + std::abs(s.dual_value);
    if (s.status == Status::MaxIterations && s.gap <= tol * scale && s.primal_residual <= tol &&
        s.dual_residual <= tol)
      return s.dual_value;
    throw;
  }
}

void LmiProblem::finalize() const {
  prog_ = ConicProgram{};
  int total = 0;
  for (const auto& pb : pending_) total += pb.block.vec_len();
  prog_.c.resize(total);
  prog_.rows.assign(nvars_, ConstraintRow{});
  for (int i = 0; i < nvars_; ++i) prog_.rows[i].rhs = obj_(i);
  int off = 0;
  for (const auto& pb : pending_) {
    prog_.blocks.push_back(pb.block);
    prog_.c.segment(off, pb.c.size()) = pb.c;
    for (const auto& [var, a] : pb.terms)
      for (int t = 0; t < a.size(); ++t)
        if (a(t) != 0.0) prog_.rows[var].entries.emplace_back(off + t, a(t));
    off += pb.block.vec_len();
  }
}

LmiProblem::Result LmiProblem::solve(double gap_tol, double feas_tol, int max_iter) const {
  finalize();
  ConicSolution raw = conic::solve(prog_, gap_tol, feas_tol, max_iter);
  if (raw.status != Status::Optimal) {
    std::string why;
    switch (raw.status) {
      case Status::Infeasible: why = "constraint system admits no feasible point"; break;
      case Status::Unbounded: why = "objective is unbounded"; break;
      default: why = "solver did not converge (max iterations)"; break;
    }
    // Note: the LMI is the conic dual, so primal infeasibility of the
    // internal program signals an unbounded LMI and vice versa.
    if (raw.status == Status::Infeasible) why = "LMI objective is unbounded";
    if (raw.status == Status::Unbounded) why = "LMI constraint system is infeasible";
    throw SolverError("LmiProblem: " + why, raw);
  }
  Result res;
  res.value = raw.dual_value;
  res.y = raw.y;
  res.raw = std::move(raw);
  return res;
}

// ---------------------------------------------------------------------------
// Plain-text dump / parse
// ---------------------------------------------------------------------------

std::string dump_program(const ConicProgram& p) {
  p.validate();
  std::ostringstream os;
  os.precision(17);
  os << "conic-program v1\n";
  os << "blocks " << p.blocks.size() << "\n";
  for (const auto& blk : p.blocks) {
    switch (blk.type) {
      case BlockType::PSD: os << "psd "; break;
      case BlockType::NonNeg: os << "nonneg "; break;
      case BlockType::Free: os << "free "; break;
    }
    os << blk.size << "\n";
  }
  int nnz = 0;
  for (int t = 0; t < p.c.size(); ++t)
    if (p.c(t) != 0.0) ++nnz;
  os << "objective " << nnz << "\n";
  for (int t = 0; t < p.c.size(); ++t)
    if (p.c(t) != 0.0) os << t << " " << p.c(t) << "\n";
  os << "rows " << p.rows.size() << "\n";
  for (const auto& row : p.rows) {
    os << "row " << row.entries.size() << " " << row.rhs << "\n";
    for (const auto& [idx, val] : row.entries) os << idx << " " << val << "\n";
  }
  return os.str();
}

ConicProgram parse_program(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  is >> tok;
  std::string version;
  if (tok != "conic-program" || !(is >> version) || version != "v1")
    throw std::invalid_argument("parse_program: unrecognized header");
  ConicProgram p;
  int nblocks = 0;
  if (!(is >> tok >> nblocks) || tok != "blocks" || nblocks < 0)
    throw std::invalid_argument("parse_program: malformed block count");
  for (int k = 0; k < nblocks; ++k) {
    std::string kind;
    int size = 0;
    if (!(is >> kind >> size)) throw std::invalid_argument("parse_program: malformed block");
    BlockType type;
    if (kind == "psd") type = BlockType::PSD;
    else if (kind == "nonneg") type = BlockType::NonNeg;
    else if (kind == "free") type = BlockType::Free;
    else throw std::invalid_argument("parse_program: unknown block kind '" + kind + "'");
    p.blocks.push_back({type, size});
  }
  p.c = RealVector::Zero(p.total_len());
  int nnz = 0;
  if (!(is >> tok >> nnz) || tok != "objective")
    throw std::invalid_argument("parse_program: malformed objective");
  for (int t = 0; t < nnz; ++t) {
    int idx;
    double val;
    if (!(is >> idx >> val)) throw std::invalid_argument("parse_program: malformed objective entry");
    if (idx < 0 || idx >= p.c.size())
      throw std::invalid_argument("parse_program: objective index out of range");
    p.c(idx) = val;
  }
  int nrows = 0;
  if (!(is >> tok >> nrows) || tok != "rows")
    throw std::invalid_argument("parse_program: malformed row count");
  for (int i = 0; i < nrows; ++i) {
    int cnt;
    double rhs;
    if (!(is >> tok >> cnt >> rhs) || tok != "row")
      throw std::invalid_argument("parse_program: malformed row");
    ConstraintRow row;
    row.rhs = rhs;
    for (int t = 0; t < cnt; ++t) {
      int idx;
      double val;
      if (!(is >> idx >> val)) throw std::invalid_argument("parse_program: malformed row entry");
      row.entries.emplace_back(idx, val);
    }
    p.rows.push_back(std::move(row));
  }
  p.validate();
  return p;
}

}  // namespace resnorm::conic
