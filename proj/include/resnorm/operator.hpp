#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace resnorm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;

/// Dense complex operator with declared Hermiticity and optional tensor-factor
/// shape. All quantities in this library are built out of these.
struct Operator {
  Matrix mat;
  std::vector<int> dims;  // tensor factor dimensions of the row space
  bool hermitian = false;

  Operator() = default;

  Operator(Matrix m, std::vector<int> d = {}, bool herm = false)
      : mat(std::move(m)), dims(std::move(d)), hermitian(herm) {
    if (dims.empty()) dims = {static_cast<int>(mat.rows())};
    long prod = 1;
    for (int k : dims) {
      if (k <= 0) throw std::invalid_argument("Operator: nonpositive factor dimension");
      prod *= k;
    }
    if (prod != mat.rows())
      throw std::invalid_argument("Operator: dims product does not match rows");
    if (hermitian) {
      if (mat.rows() != mat.cols())
        throw std::invalid_argument("Operator: hermitian flag on non-square matrix");
      double dev = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
      if (dev > kHermTol)
        throw std::invalid_argument("Operator: hermitian flag set but |M - M^dag| = " +
                                    std::to_string(dev));
    }
  }

  long rows() const { return mat.rows(); }
  long cols() const { return mat.cols(); }
  bool square() const { return mat.rows() == mat.cols(); }
};

/// Marks an operator Hermitian after symmetrising away roundoff.
inline Operator as_hermitian(Matrix m, std::vector<int> d = {}) {
  Matrix h = 0.5 * (m + m.adjoint());
  return Operator(std::move(h), std::move(d), true);
}

inline double inner(const Matrix& a, const Matrix& b) {
  // <A,B> = Tr A^dag B; real for Hermitian pairs
  return (a.adjoint() * b).trace().real();
}

}  // namespace resnorm
