#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "resnorm/entanglement.hpp"
#include "resnorm/linalg.hpp"
#include "resnorm/states.hpp"

#include <cmath>
#include <random>

using namespace resnorm;
using namespace resnorm::entanglement;
using resnorm::states::max_entangled;
using resnorm::states::omega_state;

namespace {

Vector random_ket(int d, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v.normalized();
}

Operator random_separable(int d, int terms, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Matrix m = Matrix::Zero(d * d, d * d);
  double tot = 0.0;
  for (int t = 0; t < terms; ++t) {
    Vector a = random_ket(d, rng), b = random_ket(d, rng);
    const double w = u(rng);
    Vector ab(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ab(i * d + j) = a(i) * b(j);
    m += w * (ab * ab.adjoint());
    tot += w;
  }
  return Operator(m / tot, {d, d}, true);
}

Operator random_state(int da, int db, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix m(da * db, da * db);
  for (int i = 0; i < da * db; ++i)
    for (int j = 0; j < da * db; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return Operator(rho, {da, db}, true);
}

}  // namespace

TEST_CASE("negativity of named states") {
  // separable states have negativity 1
  std::mt19937 rng(9001);
  for (int trial = 0; trial < 3; ++trial) {
    Operator sep = random_separable(2, 6, rng);
    CHECK(negativity(sep) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(reshuffled_negativity(sep) <= 1.0 + 1e-9);
  }
  // Phi_2^{(x) n} -> 2^n; copies regrouped as Phi_{2^n} (see permutation
  // test below for why this grouping is the right one)
  for (int n = 1; n <= 4; ++n) {
    Operator grouped = max_entangled(1 << n);
    CHECK(negativity(grouped) == doctest::Approx(std::pow(2.0, n)).epsilon(1e-9));
    CHECK(log_negativity(grouped) == doctest::Approx(n).epsilon(1e-9));
  }
  Operator phi2 = max_entangled(2);
  CHECK(reshuffled_negativity(phi2) == doctest::Approx(2.0).epsilon(1e-10));
  // random X: agreement with trace_norm of partial transpose by construction
  Operator x = random_state(2, 3, rng);
  CHECK(negativity(x) ==
        doctest::Approx(trace_norm(partial_transpose(x.mat, 2, 3))).epsilon(1e-12));
}

TEST_CASE("kron of maximally entangled states needs index regrouping") {
  // Phi_2 (x) Phi_2 with systems reordered (A1 B1 A2 B2 -> A1 A2 B1 B2)
  // equals Phi_4; verify negativity 4 through an explicit permutation.
  Operator phi2 = max_entangled(2);
  Operator two = kron(phi2, phi2);
  // permutation on basis index (a1 b1 a2 b2) -> (a1 a2 b1 b2)
  Eigen::VectorXi perm(16);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          perm(((a1 * 2 + b1) * 2 + a2) * 2 + b2) = ((a1 * 2 + a2) * 2 + b1) * 2 + b2;
  Matrix reordered = Matrix::Zero(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) reordered(perm(i), perm(j)) = two.mat(i, j);
  CHECK((reordered - max_entangled(4).mat).cwiseAbs().maxCoeff() < 1e-14);
}

namespace {

// X on (da,db) and Y on (dc,dd) combined on the (da*dc, db*dd) bipartition.
Operator tensor_regrouped(const Operator& x, const Operator& y) {
  const int da = x.dims[0], db = x.dims[1], dc = y.dims[0], dd = y.dims[1];
  const int D = da * db * dc * dd;
  Matrix raw = kron(x.mat, y.mat);  // ordering (a b)(c d)
  auto perm = [&](int a, int b, int c, int d) {
    return ((a * dc + c) * db + b) * dd + d;  // -> (a c)(b d)
  };
  Matrix out = Matrix::Zero(D, D);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < dc; ++c)
        for (int d = 0; d < dd; ++d)
          for (int a2 = 0; a2 < da; ++a2)
            for (int b2 = 0; b2 < db; ++b2)
              for (int c2 = 0; c2 < dc; ++c2)
                for (int d2 = 0; d2 < dd; ++d2)
                  out(perm(a, b, c, d), perm(a2, b2, c2, d2)) =
                      raw(((a * db + b) * dc + c) * dd + d,
                          ((a2 * db + b2) * dc + c2) * dd + d2);
  return Operator(out, {da * dc, db * dd}, x.hermitian && y.hermitian);
}

}  // namespace

TEST_CASE("negativities multiplicative under tensor products") {
  std::mt19937 rng(9005);
  Operator x = random_state(2, 2, rng), y = random_state(2, 2, rng);
  Operator xy = tensor_regrouped(x, y);
  CHECK(negativity(xy) == doctest::Approx(negativity(x) * negativity(y)).epsilon(1e-8));
  CHECK(reshuffled_negativity(xy) ==
        doctest::Approx(reshuffled_negativity(x) * reshuffled_negativity(y)).epsilon(1e-8));
}

TEST_CASE("pure-state separability norms") {
  // Phi_2: base norm 3, dual overlap 1/2
  Vector phi(4);
  phi << 1, 0, 0, 1;
  phi /= std::sqrt(2.0);
  auto n = pure_sep_norms(phi, 2, 2);
  CHECK(n.base_norm == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(n.one_plus_Rs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(n.dual_overlap == doctest::Approx(0.5).epsilon(1e-12));

  // product state
  std::mt19937 rng(9002);
  Vector a = random_ket(3, rng), b = random_ket(2, rng);
  Vector prod(6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) prod(i * 2 + j) = a(i) * b(j);
  auto p = pure_sep_norms(prod, 3, 2);
  CHECK(p.base_norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.dual_overlap == doctest::Approx(1.0).epsilon(1e-9));

  // multiplicativity of 1+R^s: Phi_2^{(x)n} -> 2^n, base norm 2^{n+1}-1
  for (int n2 = 2; n2 <= 3; ++n2) {
    Vector big = Vector::Zero(1 << (2 * n2));
    // maximally entangled vector of dimension 2^n2 under (A..)(B..) grouping
    const int D = 1 << n2;
    for (int i = 0; i < D; ++i) big(i * D + i) = 1.0 / std::sqrt(double(D));
    auto q = pure_sep_norms(big, D, D);
    CHECK(q.one_plus_Rs == doctest::Approx(std::pow(2.0, n2)).epsilon(1e-10));
    CHECK(q.base_norm == doctest::Approx(std::pow(2.0, n2 + 1) - 1).epsilon(1e-9));
    CHECK(q.dual_overlap == doctest::Approx(std::pow(2.0, -n2)).epsilon(1e-12));
  }

  CHECK_THROWS(pure_sep_norms(2.0 * phi, 2, 2));
}

TEST_CASE("omega witness verification") {
  for (int d : {3, 4, 5}) {
    auto rep = verify_omega_witness(d);
    CHECK(rep.all_pass);
    CHECK(rep.reshuffled_inf_norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.overlap == doctest::Approx(rep.inf_norm).epsilon(1e-10));
    CHECK(rep.decomposition_ok);
  }
  auto r3 = verify_omega_witness(3);
  CHECK(r3.alpha == doctest::Approx(2.0));
  CHECK(r3.beta == doctest::Approx(3.0));
  auto r4 = verify_omega_witness(4);
  CHECK(r4.alpha == doctest::Approx(2.0));
  CHECK(r4.beta == doctest::Approx(4.0));
  auto r5 = verify_omega_witness(5);
  CHECK(r5.alpha == doctest::Approx(5.0 / 3.0));
  // irreversibility margin: log alpha_d > log(d/(d-1))
  for (int d : {3, 4, 5}) {
    auto rep = verify_omega_witness(d);
    CHECK(std::log2(rep.alpha) > std::log2(double(d) / (d - 1)) + (d == 3 ? 0.1 : 1e-3));
  }
}

TEST_CASE("tempered negativity SDP") {
  // omega_3 -> 2
  CHECK(tempered_negativity(omega_state(3)) == doctest::Approx(2.0).epsilon(1e-5));
  // Phi_2 -> 2
  CHECK(tempered_negativity(max_entangled(2)) == doctest::Approx(2.0).epsilon(1e-5));
  // separable pure product -> 1
  std::mt19937 rng(9003);
  Vector a = random_ket(2, rng), b = random_ket(2, rng);
  Vector prod(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod(i * 2 + j) = a(i) * b(j);
  Operator prodstate = projector(prod, {2, 2});
  CHECK(tempered_negativity(prodstate) == doctest::Approx(1.0).epsilon(1e-5));
  // dominance: tempered <= negativity on random states
  for (int trial = 0; trial < 3; ++trial) {
    Operator rho = random_state(2, 2, rng);
    CHECK(tempered_negativity(rho) <= negativity(rho) + 1e-5);
  }
}

TEST_CASE("tempered reshuffled negativity SDP") {
  // omega_d -> alpha_d
  CHECK(tempered_reshuffled_negativity(omega_state(3)) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(tempered_reshuffled_negativity(omega_state(4)) == doctest::Approx(2.0).epsilon(2e-5));
  // pure product -> 1
  std::mt19937 rng(9004);
  Vector a = random_ket(2, rng), b = random_ket(2, rng);
  Vector prod(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod(i * 2 + j) = a(i) * b(j);
  CHECK(tempered_reshuffled_negativity(projector(prod, {2, 2})) ==
        doctest::Approx(1.0).epsilon(1e-5));
  // feasibility oracle: value >= <W,rho> for a hand-built feasible W
  Operator rho = random_state(2, 2, rng);
  // W = I/2: ||W^R||_inf = d/2 = 1, <W,rho> = 1/2 = ||W||_inf
  Matrix W = 0.5 * Matrix::Identity(4, 4);
  const double lower = std::real((W * rho.mat).trace());
  CHECK(tempered_reshuffled_negativity(rho) >= lower - 1e-5);
}

TEST_CASE("tempered omega_5 value") {
  CHECK(tempered_reshuffled_negativity(omega_state(5)) ==
        doctest::Approx(5.0 / 3.0).epsilon(2e-5));
}
