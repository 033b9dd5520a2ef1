#include "resnorm/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "json.hpp"

namespace resnorm {

std::pair<RealVector, Matrix> eigh(const Operator& m) {
  if (!m.square()) throw std::invalid_argument("eigh: matrix not square");
  if (!m.hermitian) throw std::invalid_argument("eigh: operator not declared Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigh: decomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double trace_norm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues().sum();
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  bool herm = a.hermitian && b.hermitian;
  Matrix m = kron(a.mat, b.mat);
  return herm ? as_hermitian(std::move(m), std::move(dims))
              : Operator(std::move(m), std::move(dims), false);
}

Operator kron_pow(const Operator& a, int n) {
  if (n < 1) throw std::invalid_argument("kron_pow: n must be >= 1");
  Operator out = a;
  for (int k = 1; k < n; ++k) out = kron(out, a);
  return out;
}

Matrix partial_transpose(const Matrix& m, int da, int db) {
  if (m.rows() != m.cols() || m.rows() != long(da) * db)
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k)
      out.block(i * db, k * db, db, db) =
          m.block(i * db, k * db, db, db).transpose();
  return out;
}

Operator partial_transpose(const Operator& m) {
  if (m.dims.size() != 2)
    throw std::invalid_argument("partial_transpose: operator is not bipartite");
  Matrix pt = partial_transpose(m.mat, m.dims[0], m.dims[1]);
  return Operator(std::move(pt), m.dims, m.hermitian);
}

Matrix reshuffle(const Matrix& m, int da, int db) {
  if (m.rows() != m.cols() || m.rows() != long(da) * db)
    throw std::invalid_argument("reshuffle: dimension mismatch");
  // Realignment: X_{(i,j),(k,l)} |i><j| (x) |k><l|  ->  entry at row (i,k),
  // column (j,l). An involution on d (x) d spaces.
  Matrix out(long(da) * da, long(db) * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l)
          out(i * da + k, j * db + l) = m(i * db + j, k * db + l);
  return out;
}

SchmidtDecomposition schmidt(const Vector& v, int da, int db) {
  if (v.size() != long(da) * db) throw std::invalid_argument("schmidt: dimension mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("schmidt: vector not normalized");
  Matrix c(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) c(i, j) = v(i * db + j);
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

Operator projector(const Vector& v, std::vector<int> dims) {
  Matrix p = v * v.adjoint();
  return as_hermitian(std::move(p), std::move(dims));
}

Operator operator_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  long rows = j.at("rows").get<long>();
  long cols = j.at("cols").get<long>();
  std::vector<int> dims;
  if (j.contains("dims")) dims = j.at("dims").get<std::vector<int>>();
  const auto& re = j.at("re");
  Matrix m = Matrix::Zero(rows, cols);
  auto fill = [&](const nlohmann::json& part, bool imag) {
    if (long(part.size()) != rows) throw std::invalid_argument("matrix json: bad row count");
    for (long i = 0; i < rows; ++i) {
      if (long(part[i].size()) != cols)
        throw std::invalid_argument("matrix json: bad column count");
      for (long k = 0; k < cols; ++k) {
        double x = part[i][k].get<double>();
        if (!std::isfinite(x)) throw std::invalid_argument("matrix json: NaN/Inf entry");
        m(i, k) += imag ? Complex(0, x) : Complex(x, 0);
      }
    }
  };
  fill(re, false);
  if (j.contains("im")) fill(j.at("im"), true);
  bool herm = m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= kHermTol;
  return Operator(std::move(m), std::move(dims), herm);
}

std::string operator_to_json(const Operator& op) {
  nlohmann::json j;
  j["rows"] = op.rows();
  j["cols"] = op.cols();
  j["dims"] = op.dims;
  std::vector<std::vector<double>> re(op.rows()), im(op.rows());
  for (long i = 0; i < op.rows(); ++i)
    for (long k = 0; k < op.cols(); ++k) {
      re[i].push_back(op.mat(i, k).real());
      im[i].push_back(op.mat(i, k).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

}  // namespace resnorm
