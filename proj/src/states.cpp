#include "resnorm/states.hpp"

#include "resnorm/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace resnorm::states {

namespace {

constexpr double kPi = std::numbers::pi;

Vector normalized(Vector v) { return v / v.norm(); }

}  // namespace

Operator max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = 1.0 / d;
  return Operator(m, {d, d}, true);
}

Operator diagonal_projector_state(int d) {
  if (d < 2) throw std::invalid_argument("diagonal_projector_state: d must be >= 2");
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) m(i * d + i, i * d + i) = 1.0 / d;
  return Operator(m, {d, d}, true);
}

Operator omega_state(int d) {
  if (d < 3) throw std::invalid_argument("omega_state: d must be >= 3");
  // (P_d - Phi_d)/(d-1) with P_d the rank-d projector sum_i |ii><ii|.
  Matrix m = (static_cast<double>(d) * diagonal_projector_state(d).mat - max_entangled(d).mat) /
             static_cast<double>(d - 1);
  return Operator(m, {d, d}, true);
}

Vector strange_ket() {
  Vector v = Vector::Zero(3);
  v(1) = 1.0;
  v(2) = -1.0;
  return normalized(v);
}

Vector norell_ket() {
  Vector v(3);
  v << -1.0, 2.0, -1.0;
  return normalized(v);
}

Matrix qutrit_hadamard() {
  const Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
  Matrix h(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) h(j, k) = std::pow(w, j * k) / std::sqrt(3.0);
  return h;
}

namespace {

// Eigenvector of the qutrit Hadamard for a given eigenvalue, deterministic
// phase (first nonzero component rotated positive real).
Vector hadamard_eigenvector(Complex lambda) {
  Matrix h = qutrit_hadamard();
  Eigen::ComplexEigenSolver<Matrix> es(h);
  int best = 0;
  double bestdist = std::abs(es.eigenvalues()(0) - lambda);
  for (int k = 1; k < 3; ++k) {
    const double d = std::abs(es.eigenvalues()(k) - lambda);
    if (d < bestdist) {
      bestdist = d;
      best = k;
    }
  }
  if (bestdist > 1e-10)
    throw std::logic_error("hadamard_eigenvector: requested eigenvalue not found");
  Vector v = es.eigenvectors().col(best).normalized();
  for (int i = 0; i < 3; ++i)
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  return v;
}

}  // namespace

Vector hadamard_plus_ket() { return hadamard_eigenvector(Complex(1, 0)); }
Vector hadamard_minus_ket() { return hadamard_eigenvector(Complex(-1, 0)); }
Vector hadamard_i_ket() { return hadamard_eigenvector(Complex(0, 1)); }

Vector t_ket() {
  Vector v(2);
  v << 1.0, std::polar(1.0, kPi / 4.0);
  return normalized(v);
}

Operator t_state() { return projector(t_ket(), {2}); }

Matrix pauli_string(int n, int a, int b) {
  if (n < 1 || a < 0 || b < 0 || a >= (1 << n) || b >= (1 << n))
    throw std::invalid_argument("pauli_string: bit vectors out of range");
  Matrix X(2, 2), Z(2, 2), I2 = Matrix::Identity(2, 2);
  X << 0, 1, 1, 0;
  Z << 1, 0, 0, -1;
  Matrix out = Matrix::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    const bool xa = (a >> q) & 1, zb = (b >> q) & 1;
    Matrix factor = I2;
    if (xa && zb) factor = X * Z;
    else if (xa) factor = X;
    else if (zb) factor = Z;
    out = kron(out, factor);
  }
  return out;
}

Vector hoggar_ket(int a, int b) {
  Vector fid(8);
  fid << Complex(-1, 2), 1, 1, 1, 1, 1, 1, 1;
  fid /= std::sqrt(12.0);
  if (a == 0 && b == 0) return fid;
  return normalized(pauli_string(3, a, b) * fid);
}

Operator hoggar(int a, int b) { return projector(hoggar_ket(a, b), {2, 2, 2}); }

std::vector<StateZooEntry> state_zoo() {
  std::vector<StateZooEntry> zoo;
  auto add_pure = [&](const std::string& name, const Vector& v, std::vector<int> dims,
                      const std::string& notes) {
    zoo.push_back({name, projector(v, std::move(dims)), notes});
  };
  zoo.push_back({"Phi2", max_entangled(2), "two-qubit maximally entangled state"});
  zoo.push_back({"Phi3", max_entangled(3), "two-qutrit maximally entangled state"});
  zoo.push_back({"P3", diagonal_projector_state(3), "uniform mixture of |ii>, d=3"});
  for (int d = 3; d <= 5; ++d)
    zoo.push_back({"omega" + std::to_string(d), omega_state(d),
                   "(P_d - Phi_d)/(d-1) antisymmetric-type state"});
  add_pure("S", strange_ket(), {3}, "strange qutrit state (|1>-|2>)/sqrt2");
  add_pure("N", norell_ket(), {3}, "Norell qutrit state (-|0>+2|1>-|2>)/sqrt6");
  add_pure("H+", hadamard_plus_ket(), {3}, "+1 eigenstate of the qutrit Hadamard");
  add_pure("H-", hadamard_minus_ket(), {3}, "-1 eigenstate of the qutrit Hadamard");
  add_pure("Hi", hadamard_i_ket(), {3}, "+i eigenstate of the qutrit Hadamard");
  add_pure("T", t_ket(), {2}, "qubit T magic state");
  add_pure("Hoggar", hoggar_ket(), {2, 2, 2}, "three-qubit Hoggar SIC fiducial");
  return zoo;
}

StateZooEntry zoo_lookup(const std::string& name) {
  for (auto& e : state_zoo())
    if (e.name == name) return e;
  throw std::invalid_argument("zoo_lookup: unknown state '" + name + "'");
}

}  // namespace resnorm::states
