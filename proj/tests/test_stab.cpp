#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "resnorm/linalg.hpp"
#include "resnorm/stab.hpp"
#include "resnorm/states.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>

using namespace resnorm;
using namespace resnorm::stab;
using resnorm::states::hoggar_ket;
using resnorm::states::t_ket;
using resnorm::states::t_state;

namespace {

Matrix random_hermitian(std::mt19937& rng, int d) {
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (m + m.adjoint().eval());
}

Operator random_state(std::mt19937& rng, int n) {
  const int d = 1 << n;
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return Operator(rho, std::vector<int>(n, 2), true);
}

}  // namespace

TEST_CASE("Pauli strings are Hermitian, unitary, traceless") {
  for (int n : {1, 2}) {
    auto all = PauliString::all(n);
    CHECK(static_cast<int>(all.size()) == (1 << (2 * n)));
    const int d = 1 << n;
    bool first = true;
    for (const auto& p : all) {
      Matrix m = p.matrix();
      CHECK((m - m.adjoint()).norm() < 1e-14);
      CHECK((m * m - Matrix::Identity(d, d)).norm() < 1e-14);
      if (first) {
        CHECK(p.label() == std::string(n, 'I'));
        first = false;
      } else {
        CHECK(std::abs(m.trace()) < 1e-14);
      }
    }
  }
  CHECK(PauliString(2, {'X', 'Z'}).label() == "XZ");
}

TEST_CASE("stabiliser norm closed-form values") {
  // ||T||_P = (1+sqrt(2))/2: Pauli expectations 1, 1/sqrt2, 1/sqrt2, 0
  CHECK(stab_norm(t_state().mat, 1) ==
        doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-12));
  // ||Hog||_P = 11/4: 1 + 63 * (1/3), all over 2^3
  Matrix hog = projector(hoggar_ket(), {2, 2, 2}).mat;
  CHECK(stab_norm(hog, 3) == doctest::Approx(11.0 / 4.0).epsilon(1e-12));
  // maximally mixed: only the identity contributes, giving 2^-n
  for (int n : {1, 2}) {
    const int d = 1 << n;
    Matrix mixed = Matrix::Identity(d, d) / d;
    CHECK(stab_norm(mixed, n) == doctest::Approx(1.0 / d).epsilon(1e-12));
  }
  // dual norm of a state is the largest Pauli expectation = 1 (identity)
  CHECK(stab_norm_dual(t_state().mat, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Hoggar symmetry: 63 Pauli expectations of modulus 1/3") {
  Matrix hog = projector(hoggar_ket(), {2, 2, 2}).mat;
  auto all = PauliString::all(3);
  for (std::size_t i = 1; i < all.size(); ++i) {
    const double m = std::abs((hog * all[i].matrix()).trace());
    CHECK(m == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("stabiliser norm and dual are multiplicative under kron") {
  std::mt19937 rng(20001);
  for (int t = 0; t < 3; ++t) {
    Matrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 4);
    Matrix ab = kron(a, b);
    CHECK(stab_norm(ab, 3) == doctest::Approx(stab_norm(a, 1) * stab_norm(b, 2)).epsilon(1e-10));
    CHECK(stab_norm_dual(ab, 3) ==
          doctest::Approx(stab_norm_dual(a, 1) * stab_norm_dual(b, 2)).epsilon(1e-10));
  }
}

TEST_CASE("stabiliser state enumeration counts and contents") {
  CHECK(enumerate_stabiliser_states(1).vectors.size() == 6);
  CHECK(enumerate_stabiliser_states(2).vectors.size() == 60);
  CHECK(enumerate_stabiliser_states(3).vectors.size() == 1080);
  CHECK_THROWS(enumerate_stabiliser_states(4));

  // n=1: exactly the six +-X, +-Y, +-Z eigenstates
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const auto& set1 = enumerate_stabiliser_states(1);
  int eigen_hits = 0;
  for (const Vector& v : set1.vectors) {
    for (const Matrix* p : {&x, &y, &z}) {
      Vector r = (*p) * v;
      if ((r - v).norm() < 1e-12 || (r + v).norm() < 1e-12) ++eigen_hits;
    }
  }
  CHECK(eigen_hits == 6);

  // every enumerated state has stabiliser norm exactly 1
  for (const Vector& v : set1.vectors)
    CHECK(stab_norm(Matrix(v * v.adjoint()), 1) == doctest::Approx(1.0).epsilon(1e-12));
  const auto& set2 = enumerate_stabiliser_states(2);
  for (const Vector& v : set2.vectors)
    CHECK(stab_norm(Matrix(v * v.adjoint()), 2) == doctest::Approx(1.0).epsilon(1e-12));
  const auto& set3 = enumerate_stabiliser_states(3);
  for (std::size_t i = 0; i < set3.vectors.size(); i += 27) {
    const Vector& v = set3.vectors[i];
    CHECK(stab_norm(Matrix(v * v.adjoint()), 3) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("STAB base norm, dual overlap and robustness") {
  // any stabiliser state has base norm 1
  const auto& set2 = enumerate_stabiliser_states(2);
  const Vector& psi = set2.vectors[17];
  CHECK(stab_base_norm(Matrix(psi * psi.adjoint()), 2) == doctest::Approx(1.0).epsilon(1e-6));

  // Hoggar: 1 + R^s = (||.||_STAB + 1)/2 = 12/5, dual overlap 5/12
  Operator hog = projector(hoggar_ket(), {2, 2, 2});
  const double base = stab_base_norm(hog.mat, 3);
  CHECK((base + 1.0) / 2.0 == doctest::Approx(12.0 / 5.0).epsilon(1e-6));
  CHECK(stab_dual_overlap(hog, 3) == doctest::Approx(5.0 / 12.0).epsilon(1e-6));

  // T: 1 + R^g = 2(2 - sqrt(2))
  CHECK(stab_gen_robustness(t_state(), 1) + 1.0 ==
        doctest::Approx(2.0 * (2.0 - std::sqrt(2.0))).epsilon(1e-6));

  // base norm dominates the stabiliser norm on random Hermitian inputs
  std::mt19937 rng(20002);
  for (int t = 0; t < 3; ++t) {
    Matrix a = random_hermitian(rng, 2);
    CHECK(stab_base_norm(a, 1) >= stab_norm(a, 1) - 1e-7);
  }
}

TEST_CASE("tempered stabiliser norm") {
  // P_tau(T) = log((1+sqrt(2))/2)
  CHECK(tempered_stab_norm(t_state(), 1) ==
        doctest::Approx(std::log2((1.0 + std::sqrt(2.0)) / 2.0)).epsilon(1e-5));
  // stabiliser pure state -> 0
  Vector zero = Vector::Zero(2);
  zero(0) = 1.0;
  CHECK(tempered_stab_norm(projector(zero, {2}), 1) == doctest::Approx(0.0).epsilon(1e-5));
  // dominance: P_tau(rho) <= log ||rho||_P on random states
  std::mt19937 rng(20003);
  for (int t = 0; t < 3; ++t) {
    Operator rho = random_state(rng, 1);
    CHECK(tempered_stab_norm(rho, 1) <= std::log2(stab_norm(rho.mat, 1)) + 1e-5);
  }
}

TEST_CASE("regularized T bound constant and JSON export") {
  CHECK(t_stab_regularized_log_bound() == doctest::Approx(std::log2(1.29)).epsilon(1e-12));

  auto j = nlohmann::json::parse(stab_set_to_json(enumerate_stabiliser_states(1)));
  CHECK(j["n"] == 1);
  CHECK(j["count"] == 6);
  CHECK(j["vectors"].size() == 6);
  CHECK(j["vectors"][0].size() == 2);
  // first state is |0>
  CHECK(j["vectors"][0][0][0].get<double>() == doctest::Approx(1.0));
}
