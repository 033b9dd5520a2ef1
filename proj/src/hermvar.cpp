#include "resnorm/hermvar.hpp"

#include <stdexcept>

namespace resnorm::detail {

Matrix HermVar::basis(int t) const {
  if (t < 0 || t >= count()) throw std::out_of_range("HermVar::basis: index out of range");
  Matrix b = Matrix::Zero(dim, dim);
  if (t < dim) {
    b(t, t) = 1.0;
    return b;
  }
  int r = t - dim;
  const bool imag_part = r >= dim * (dim - 1) / 2;
  if (imag_part) r -= dim * (dim - 1) / 2;
  // r enumerates pairs p<q column-major
  int q = 1;
  while (r >= q) {
    r -= q;
    ++q;
  }
  const int p = r;
  if (imag_part) {
    b(p, q) = Complex(0, 1);
    b(q, p) = Complex(0, -1);
  } else {
    b(p, q) = 1.0;
    b(q, p) = 1.0;
  }
  return b;
}

Matrix HermVar::assemble(const RealVector& y) const {
  if (static_cast<int>(y.size()) < offset + count())
    throw std::invalid_argument("HermVar::assemble: coordinate vector too short");
  Matrix w = Matrix::Zero(dim, dim);
  for (int t = 0; t < count(); ++t) w += y(offset + t) * basis(t);
  return w;
}

RealVector HermVar::coordinates(const Matrix& w) const {
  if (w.rows() != dim || w.cols() != dim)
    throw std::invalid_argument("HermVar::coordinates: dimension mismatch");
  RealVector y(count());
  int t = 0;
  for (int p = 0; p < dim; ++p) y(t++) = std::real(w(p, p));
  for (int q = 1; q < dim; ++q)
    for (int p = 0; p < q; ++p) y(t++) = std::real(w(p, q));
  for (int q = 1; q < dim; ++q)
    for (int p = 0; p < q; ++p) y(t++) = std::imag(w(p, q));
  return y;
}

RealVector HermVar::pairing(const Matrix& a) const {
  RealVector c(count());
  for (int t = 0; t < count(); ++t) c(t) = std::real((basis(t).adjoint() * a).trace());
  return c;
}

std::vector<std::pair<int, Matrix>> HermVar::map_terms(
    const std::function<Matrix(const Matrix&)>& map) const {
  std::vector<std::pair<int, Matrix>> terms;
  terms.reserve(count());
  for (int t = 0; t < count(); ++t) terms.emplace_back(offset + t, map(basis(t)));
  return terms;
}

}  // namespace resnorm::detail
