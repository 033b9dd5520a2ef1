#pragma once

#include "resnorm/operator.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace resnorm::conic {

// Small dense conic solver: primal-dual path following (HKM scaling,
// Mehrotra predictor-corrector) over products of PSD, nonnegative and
// free blocks. Complex Hermitian data enters through the real symmetric
// embedding below. Deterministic: fixed initialization, no randomness.

enum class BlockType { PSD, NonNeg, Free };

struct Block {
  BlockType type;
  int size;  // PSD: matrix side; NonNeg/Free: component count

  int vec_len() const { return type == BlockType::PSD ? size * (size + 1) / 2 : size; }
};

/// One equality constraint <a, x> = b_i, sparse over svec coordinates.
struct ConstraintRow {
  std::vector<std::pair<int, double>> entries;
  double rhs = 0.0;
};

/// min <c,x>  s.t.  A x = b,  x in K (per-block cones).
struct ConicProgram {
  std::vector<Block> blocks;
  RealVector c;
  std::vector<ConstraintRow> rows;

  int total_len() const;
  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded, MaxIterations };

struct ConicSolution {
  Status status = Status::MaxIterations;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  RealVector x;  // primal point (or unbounded ray)
  RealVector y;  // dual multipliers (or infeasibility certificate ray)
  RealVector s;  // dual slack
};

ConicSolution solve(const ConicProgram& p, double gap_tol = 1e-8,
                    double feas_tol = 1e-8, int max_iter = 100);

/// [[Re M, -Im M],[Im M, Re M]]; PSD iff M is, spectrum doubled.
RealMatrix embed_hermitian(const Matrix& m);
RealMatrix embed_hermitian(const Operator& m);

/// Inverse of embed_hermitian, averaging over the embedding symmetry.
Matrix deembed_hermitian(const RealMatrix& r);

/// Scaled vectorization of a symmetric matrix (off-diagonals * sqrt 2),
/// so that dot(svec(A), svec(B)) = <A, B>.
RealVector svec(const RealMatrix& s);
RealMatrix smat(const RealVector& v, int n);

// ---------------------------------------------------------------------------
// Linear-matrix-inequality builder:
//   max  b'y   s.t.   C_k - sum_i y_i A_ik  >= 0   for every block k,
// solved through the conic primal whose dual this is. Hermitian data is
// embedded automatically.
// ---------------------------------------------------------------------------
class LmiProblem {
 public:
  explicit LmiProblem(int nvars) : nvars_(nvars), obj_(RealVector::Zero(nvars)) {}

  void set_objective(int var, double coeff) { obj_(var) = coeff; }

  /// C - sum_i y_i A_i >= 0 with real symmetric data.
  void add_psd(const RealMatrix& c, const std::vector<std::pair<int, RealMatrix>>& terms);
  /// Same with complex Hermitian data (embedded).
  void add_psd_hermitian(const Matrix& c, const std::vector<std::pair<int, Matrix>>& terms);
  /// Scalar constraint c0 - sum_i coeff_i y_i >= 0.
  void add_nonneg(double c0, const std::vector<std::pair<int, double>>& coeffs);
  /// Scalar equality c0 - sum_i coeff_i y_i = 0 (a Free primal block).
  void add_eq(double c0, const std::vector<std::pair<int, double>>& coeffs);

  struct Result {
    double value = 0.0;  // optimal b'y
    RealVector y;
    ConicSolution raw;
  };

  /// Throws on solver failure (status other than Optimal).
  Result solve(double gap_tol = 1e-8, double feas_tol = 1e-8, int max_iter = 100) const;

  const ConicProgram& program() const { return prog_; }

 private:
  void finalize() const;

  int nvars_;
  RealVector obj_;
  mutable ConicProgram prog_;
  // per added block: svec'd C appended to c, per-variable coefficients
  struct PendingBlock {
    Block block;
    RealVector c;                                   // svec of C
    std::vector<std::pair<int, RealVector>> terms;  // (var, svec of A_i)
  };
  std::vector<PendingBlock> pending_;
};

/// Solve an LMI whose optimal face may lack strict complementarity (e.g.
/// tempered-norm programs, whose feasible sets have empty interior). A
/// stalled iterate is accepted when its gap and residuals certify the value
/// to within tol; otherwise the SolverError propagates.
double solve_value_tolerant(const LmiProblem& lmi, double tol, int max_iter = 200);

struct SolverError : std::runtime_error {
  ConicSolution solution;
  SolverError(const std::string& what, ConicSolution sol)
      : std::runtime_error(what), solution(std::move(sol)) {}
};

/// Plain-text sparse triplet dump for cross-checking with external solvers.
std::string dump_program(const ConicProgram& p);
ConicProgram parse_program(const std::string& text);

}  // namespace resnorm::conic
