#include "resnorm/stab.hpp"

#include "resnorm/conic.hpp"
#include "resnorm/hermvar.hpp"
#include "resnorm/linalg.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace resnorm::stab {

namespace {

void check_dims(const Matrix& x, int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  const int d = 1 << n;
  if (x.rows() != d || x.cols() != d)
    throw std::invalid_argument("operator dimension does not match qubit count");
}

// In-place action of a single-qubit gate on index bit q (bit 0 = last qubit).
void apply_single(Vector& v, int q, const Matrix& u) {
  const int d = static_cast<int>(v.size());
  const int bit = 1 << q;
  for (int j = 0; j < d; ++j) {
    if (j & bit) continue;
    const Complex a = v(j), b = v(j | bit);
    v(j) = u(0, 0) * a + u(0, 1) * b;
    v(j | bit) = u(1, 0) * a + u(1, 1) * b;
  }
}

void apply_cnot(Vector& v, int c, int t) {
  const int d = static_cast<int>(v.size());
  Vector out(d);
  for (int j = 0; j < d; ++j) {
    const int jp = ((j >> c) & 1) ? (j ^ (1 << t)) : j;
    out(jp) = v(j);
  }
  v = out;
}

// Global-phase canonical form: rotate the first nonzero amplitude to the
// positive real axis.
Vector canonical_phase(const Vector& v) {
  for (int j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) > 1e-9) return v * (std::abs(v(j)) / v(j));
  }
  return v;
}

// Fingerprint for dedup: amplitudes rounded to 1e-9.
std::vector<long long> fingerprint(const Vector& v) {
  std::vector<long long> key;
  key.reserve(2 * v.size());
  for (int j = 0; j < v.size(); ++j) {
    key.push_back(std::llround(v(j).real() * 1e9));
    key.push_back(std::llround(v(j).imag() * 1e9));
  }
  return key;
}

StabiliserStateSet build_stabiliser_states(int n) {
  const int d = 1 << n;
  Matrix h(2, 2), s(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  s << 1, 0, 0, Complex(0, 1);

  StabiliserStateSet set;
  set.n = n;
  std::set<std::vector<long long>> seen;
  Vector zero = Vector::Zero(d);
  zero(0) = 1.0;
  zero = canonical_phase(zero);
  seen.insert(fingerprint(zero));
  set.vectors.push_back(zero);

  for (std::size_t head = 0; head < set.vectors.size(); ++head) {
    const Vector base = set.vectors[head];
    std::vector<Vector> next;
    for (int q = 0; q < n; ++q) {
      Vector a = base, b = base;
      apply_single(a, q, h);
      apply_single(b, q, s);
      next.push_back(a);
      next.push_back(b);
    }
    for (int c = 0; c < n; ++c)
      for (int t = 0; t < n; ++t) {
        if (c == t) continue;
        Vector a = base;
        apply_cnot(a, c, t);
        next.push_back(a);
      }
    for (Vector& v : next) {
      v = canonical_phase(v.normalized());
      if (seen.insert(fingerprint(v)).second) set.vectors.push_back(v);
    }
  }
  return set;
}

}  // namespace

PauliString::PauliString(int n_, std::vector<char> letters_) : n(n_), letters(std::move(letters_)) {
  if (n < 1 || static_cast<int>(letters.size()) != n)
    throw std::invalid_argument("PauliString: letter count must equal qubit count");
  for (char l : letters)
    if (l != 'I' && l != 'X' && l != 'Y' && l != 'Z')
      throw std::invalid_argument("PauliString: letters must be in {I,X,Y,Z}");
}

Matrix PauliString::matrix() const {
  Matrix i2 = Matrix::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  Matrix out = Matrix::Identity(1, 1);
  for (char l : letters) {
    const Matrix& f = (l == 'X') ? x : (l == 'Y') ? y : (l == 'Z') ? z : i2;
    out = kron(out, f);
  }
  return out;
}

std::string PauliString::label() const { return std::string(letters.begin(), letters.end()); }

std::vector<PauliString> PauliString::all(int n) {
  if (n < 1) throw std::invalid_argument("PauliString::all: n must be positive");
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliString> out;
  const long total = 1L << (2 * n);
  out.reserve(total);
  for (long code = 0; code < total; ++code) {
    std::vector<char> letters(n);
    long c = code;
    for (int q = n - 1; q >= 0; --q) {
      letters[q] = kLetters[c & 3];
      c >>= 2;
    }
    out.emplace_back(n, std::move(letters));
  }
  return out;
}

double stab_norm(const Matrix& x, int n) {
  check_dims(x, n);
  double sum = 0.0;
  for (const PauliString& p : PauliString::all(n))
    sum += std::abs((x * p.matrix()).trace());
  return sum / static_cast<double>(1 << n);
}

double stab_norm_dual(const Matrix& x, int n) {
  check_dims(x, n);
  double best = 0.0;
  for (const PauliString& p : PauliString::all(n))
    best = std::max(best, std::abs((x * p.matrix()).trace()));
  return best;
}

const StabiliserStateSet& enumerate_stabiliser_states(int n) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("stabiliser enumeration supports 1 <= n <= 3 qubits");
  static std::map<int, StabiliserStateSet> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_stabiliser_states(n)).first;
  return it->second;
}

double stab_base_norm(const Matrix& x, int n, double tol) {
  check_dims(x, n);
  const auto& set = enumerate_stabiliser_states(n);
  const int d = 1 << n;
  // Dual form: ||X||_STAB = max <X,W> s.t. |<psi|W|psi>| <= 1 for every
  // stabiliser state. Keeps the solve at d^2 variables.
  detail::HermVar W{d, 0};
  conic::LmiProblem lmi(W.count());
  const RealVector obj = W.pairing(x);
  for (int t = 0; t < W.count(); ++t) lmi.set_objective(t, obj(t));
  for (const Vector& psi : set.vectors) {
    const RealVector q = W.pairing(psi * psi.adjoint());
    std::vector<std::pair<int, double>> plus, minus;
    for (int t = 0; t < W.count(); ++t) {
      plus.emplace_back(t, q(t));
      minus.emplace_back(t, -q(t));
    }
    lmi.add_nonneg(1.0, plus);   // 1 - <psi|W|psi> >= 0
    lmi.add_nonneg(1.0, minus);  // 1 + <psi|W|psi> >= 0
  }
  return lmi.solve(tol, tol).value;
}

double stab_dual_overlap(const Operator& rho, int n) {
  check_dims(rho.mat, n);
  const auto& set = enumerate_stabiliser_states(n);
  double best = 0.0;
  for (const Vector& psi : set.vectors)
    best = std::max(best, std::real(psi.dot(rho.mat * psi)));
  return best;
}

double stab_gen_robustness(const Operator& rho, int n, double tol) {
  check_dims(rho.mat, n);
  const auto& set = enumerate_stabiliser_states(n);
  const int d = 1 << n;
  // Dual form: R^g + 1 = max <rho,W> s.t. W >= 0, <psi|W|psi> <= 1.
  detail::HermVar W{d, 0};
  conic::LmiProblem lmi(W.count());
  const RealVector obj = W.pairing(rho.mat);
  for (int t = 0; t < W.count(); ++t) lmi.set_objective(t, obj(t));
  for (const Vector& psi : set.vectors) {
    const RealVector q = W.pairing(psi * psi.adjoint());
    std::vector<std::pair<int, double>> coeffs;
    for (int t = 0; t < W.count(); ++t) coeffs.emplace_back(t, q(t));
    lmi.add_nonneg(1.0, coeffs);
  }
  std::vector<std::pair<int, Matrix>> terms;
  for (int t = 0; t < W.count(); ++t) terms.emplace_back(t, Matrix(-W.basis(t)));
  lmi.add_psd_hermitian(Matrix::Zero(d, d), terms);  // W >= 0
  return lmi.solve(tol, tol).value - 1.0;
}

double tempered_stab_norm(const Operator& rho, int n, double tol) {
  check_dims(rho.mat, n);
  const int d = 1 << n;
  detail::HermVar X{d, 0};
  conic::LmiProblem lmi(X.count());
  const RealVector overlap = X.pairing(rho.mat);
  for (int t = 0; t < X.count(); ++t) lmi.set_objective(t, overlap(t));

  // ||X||_P^o <= 1: |Tr(X P)| <= 1 for every Pauli string.
  for (const PauliString& p : PauliString::all(n)) {
    const Matrix pm = p.matrix();
    std::vector<std::pair<int, double>> plus, minus;
    for (int t = 0; t < X.count(); ++t) {
      const double c = std::real((X.basis(t) * pm).trace());
      plus.emplace_back(t, c);
      minus.emplace_back(t, -c);
    }
    lmi.add_nonneg(1.0, plus);
    lmi.add_nonneg(1.0, minus);
  }

  // ||X||_inf <= <rho,X>: <rho,X> I -+ X >= 0.
  const Matrix id = Matrix::Identity(d, d);
  for (double sign : {1.0, -1.0}) {
    std::vector<std::pair<int, Matrix>> terms;
    for (int t = 0; t < X.count(); ++t)
      terms.emplace_back(t, Matrix(-(overlap(t) * id + sign * X.basis(t))));
    lmi.add_psd_hermitian(Matrix::Zero(d, d), terms);
  }

  // Empty-interior relaxation; accept a stalled iterate once it certifies
  // the value to tol.
  return std::log2(conic::solve_value_tolerant(lmi, tol));
}

double t_stab_regularized_log_bound() { return std::log2(1.29); }

std::string stab_set_to_json(const StabiliserStateSet& set) {
  nlohmann::json j;
  j["n"] = set.n;
  j["count"] = set.vectors.size();
  auto& vecs = j["vectors"] = nlohmann::json::array();
  for (const Vector& v : set.vectors) {
    nlohmann::json entry = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i)
      entry.push_back({v(i).real(), v(i).imag()});
    vecs.push_back(std::move(entry));
  }
  return j.dump();
}

}  // namespace resnorm::stab
