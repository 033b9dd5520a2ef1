#pragma once

#include "resnorm/conic.hpp"
#include "resnorm/operator.hpp"

#include <functional>
#include <vector>

namespace resnorm::detail {

/// Real coordinates for a D x D Hermitian matrix variable inside an
/// LmiProblem: D diagonal entries, then for each p<q the real and imaginary
/// parts of the (p,q) entry. Basis elements are E_pp, (E_pq + E_qp),
/// i(E_pq - E_qp), so coordinates are plain entries (not scaled).
struct HermVar {
  int dim = 0;
  int offset = 0;  // first variable index inside the LmiProblem

  int count() const { return dim * dim; }

  /// Basis element for local coordinate t.
  Matrix basis(int t) const;

  /// W(y) = sum_t y_t B_t for coordinates y.
  Matrix assemble(const RealVector& y) const;

  /// Coordinates of a given Hermitian matrix.
  RealVector coordinates(const Matrix& w) const;

  /// Linear coefficients c_t = <B_t, A> so that <W(y), A> = c . y for
  /// Hermitian A (real inner product).
  RealVector pairing(const Matrix& a) const;

  /// Terms {(offset+t, L(B_t))} for a linear matrix map L, e.g. the partial
  /// transpose or an embedding into a larger block.
  std::vector<std::pair<int, Matrix>> map_terms(
      const std::function<Matrix(const Matrix&)>& map) const;
};

}  // namespace resnorm::detail
