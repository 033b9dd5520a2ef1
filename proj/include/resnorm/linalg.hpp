#pragma once

#include "resnorm/operator.hpp"

#include <utility>

namespace resnorm {

/// Eigendecomposition of a declared-Hermitian operator.
/// Eigenvalues ascending; M = V diag(lambda) V^dag to 1e-10.
std::pair<RealVector, Matrix> eigh(const Operator& m);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Largest singular value.
double op_norm(const Matrix& m);

/// Tensor product; dims lists are concatenated.
Operator kron(const Operator& a, const Operator& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// N-fold tensor power.
Operator kron_pow(const Operator& a, int n);

/// Partial transpose over the second factor of a dA*dB bipartite operator.
Matrix partial_transpose(const Matrix& m, int da, int db);
Operator partial_transpose(const Operator& m);

/// Reshuffling X_{ij,kl} |i><j| (x) |k><l|. A Hilbert-Schmidt isometry;
/// does not preserve Hermiticity.
Matrix reshuffle(const Matrix& m, int da, int db);

struct SchmidtDecomposition {
  RealVector coefficients;  // nonincreasing, squares sum to 1
  Matrix left;              // columns: orthonormal left basis
  Matrix right;             // columns: orthonormal right basis
};

/// Schmidt decomposition of a normalized bipartite vector.
SchmidtDecomposition schmidt(const Vector& v, int da, int db);

/// Projector |v><v| as a Hermitian Operator.
Operator projector(const Vector& v, std::vector<int> dims = {});

/// Parse / serialize the matrix JSON format
/// {"rows":n,"cols":m,"dims":[...],"re":[[...]],"im":[[...]]} (row-major).
/// Parsers reject NaN/Inf.
Operator operator_from_json(const std::string& text);
std::string operator_to_json(const Operator& op);

}  // namespace resnorm
