// Copyright 2026 The nosplit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmat.hpp"
#include "test_util.hpp"

using namespace nosplit;
using nstest::max_abs_diff;
using nstest::random_hermitian;
using nstest::random_matrix;
using nstest::random_unitary;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: the eigenvalues of a 2x2 Hermitian [[a, b], [b*, d]]
// are the roots of x^2 - (a+d)x + (ad - |b|^2), via the quadratic formula.
void char_poly_roots_2x2(const CMatrix& h, double& lo, double& hi) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double tr = a + d;
  const double det = a * d - std::norm(h(0, 1));
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  lo = 0.5 * (tr - disc);
  hi = 0.5 * (tr + disc);
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace

TEST_CASE("tensor: identity, basis bookkeeping, Pauli action") {
  CHECK(max_abs_diff(tensor(CMatrix::identity(2), CMatrix::identity(2)),
                     CMatrix::identity(4)) == 0.0);

  CMatrix e0(2, 1), e1(2, 1);
  e0(0, 0) = 1.0;
  e1(1, 0) = 1.0;
  const CMatrix t = tensor(e0, e1);  // |01>
  CHECK(t.rows() == 4);
  CHECK(std::abs(t(1, 0) - cplx(1.0, 0.0)) == 0.0);
  CHECK(std::abs(t(0, 0)) + std::abs(t(2, 0)) + std::abs(t(3, 0)) == 0.0);

  // (X ox I)|00> = |10>
  CMatrix e00(4, 1);
  e00(0, 0) = 1.0;
  const CMatrix lifted = tensor(pauli_x(), CMatrix::identity(2));
  const CMatrix out = lifted * e00;
  CHECK(std::abs(out(2, 0) - cplx(1.0, 0.0)) == 0.0);
}

TEST_CASE("tensor: bilinearity on random inputs") {
  nstest::Rng rng(101);
  for (int it = 0; it < 20; ++it) {
    const CMatrix a = random_matrix(rng, 2, 2);
    const CMatrix b = random_matrix(rng, 2, 2);
    const cplx s(rng.normal(), rng.normal());
    CHECK(max_abs_diff(tensor(s * a, b), s * tensor(a, b)) <= 1e-12);
    CHECK(max_abs_diff(tensor(a, s * b), s * tensor(a, b)) <= 1e-12);
  }
}

TEST_CASE("tensor: rejects non-finite input") {
  CMatrix bad(2, 2);
  bad(0, 0) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(tensor(bad, CMatrix::identity(2)), Error);
}

TEST_CASE("adjoint") {
  CHECK(max_abs_diff(adjoint(CMatrix::identity(4)), CMatrix::identity(4)) == 0.0);

  CMatrix d(2, 2);
  d(0, 0) = cplx(0.0, 1.0);
  d(1, 1) = cplx(0.0, -1.0);
  const CMatrix da = adjoint(d);
  CHECK(da(0, 0) == cplx(0.0, -1.0));
  CHECK(da(1, 1) == cplx(0.0, 1.0));

  nstest::Rng rng(7);
  const CMatrix m = random_matrix(rng, 4, 4);
  CHECK(max_abs_diff(adjoint(adjoint(m)), m) == 0.0);
}

TEST_CASE("hermitian_eigen: Pauli Z and X") {
  const EigenSystem z = hermitian_eigen(pauli_z());
  CHECK(z.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(z.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(z.eigenvectors(1, 0)) == doctest::Approx(1.0));  // |1> for -1
  CHECK(std::abs(z.eigenvectors(0, 1)) == doctest::Approx(1.0));  // |0> for +1

  const EigenSystem x = hermitian_eigen(pauli_x());
  CHECK(x.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(x.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  // (|0> - |1>)/sqrt(2) and (|0> + |1>)/sqrt(2) up to phase
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(x.eigenvectors(0, 0)) - r) <= 1e-12);
  CHECK(std::abs(x.eigenvectors(0, 0) + x.eigenvectors(1, 0)) <= 1e-12);
  CHECK(std::abs(x.eigenvectors(0, 1) - x.eigenvectors(1, 1)) <= 1e-12);
}

TEST_CASE("hermitian_eigen: quadratic-formula oracle for random 2x2") {
  nstest::Rng rng(42);
  for (int it = 0; it < 200; ++it) {
    const CMatrix h = random_hermitian(rng, 2);
    double lo = 0.0, hi = 0.0;
    char_poly_roots_2x2(h, lo, hi);
    const EigenSystem es = hermitian_eigen(h);
    CHECK(std::abs(es.eigenvalues[0] - lo) <= 1e-10);
    CHECK(std::abs(es.eigenvalues[1] - hi) <= 1e-10);
  }
}

TEST_CASE("hermitian_eigen: residuals, unitarity and reconstruction (2 and 4)") {
  nstest::Rng rng(43);
  for (int n : {2, 4}) {
    for (int it = 0; it < 100; ++it) {
      const CMatrix h = random_hermitian(rng, n);
      const EigenSystem es = hermitian_eigen(h);
      CHECK(is_unitary(es.eigenvectors, 1e-10));
      // ascending order
      for (int k = 1; k < n; ++k) CHECK(es.eigenvalues[k] >= es.eigenvalues[k - 1]);
      // per-pair residual ||H v - lambda v||
      for (int k = 0; k < n; ++k) {
        std::vector<cplx> v(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) v[static_cast<std::size_t>(r)] = es.eigenvectors(r, k);
        const std::vector<cplx> hv = h.apply(v);
        double resid = 0.0;
        for (int r = 0; r < n; ++r)
          resid += std::norm(hv[static_cast<std::size_t>(r)] -
                             es.eigenvalues[static_cast<std::size_t>(k)] *
                                 v[static_cast<std::size_t>(r)]);
        CHECK(std::sqrt(resid) <= 1e-10);
      }
      // reconstruction V diag(lambda) V'
      CMatrix rec(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          cplx acc = 0.0;
          for (int k = 0; k < n; ++k)
            acc += es.eigenvectors(r, k) * es.eigenvalues[static_cast<std::size_t>(k)] *
                   std::conj(es.eigenvectors(c, k));
          rec(r, c) = acc;
        }
      CHECK(frobenius_norm(rec - h) <= 1e-10 * std::max(1.0, frobenius_norm(h)));
      // eigenvalue sum vs trace
      double sum = 0.0;
      for (double lam : es.eigenvalues) sum += lam;
      CHECK(std::abs(sum - h.trace().real()) <= 1e-10 * std::max(1.0, frobenius_norm(h)));
    }
  }
}

TEST_CASE("hermitian_eigen: eigenvalue product equals 2x2 determinant") {
  nstest::Rng rng(44);
  for (int it = 0; it < 100; ++it) {
    const CMatrix h = random_hermitian(rng, 2);
    const double det = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
    const EigenSystem es = hermitian_eigen(h);
    CHECK(std::abs(es.eigenvalues[0] * es.eigenvalues[1] - det) <= 1e-10);
  }
}

TEST_CASE("hermitian_eigen: rejects non-Hermitian input") {
  nstest::Rng rng(45);
  CMatrix m = random_matrix(rng, 4, 4);
  m(0, 1) += cplx(1.0, 1.0);  // make sure it is far from Hermitian
  CHECK_THROWS_AS(hermitian_eigen(m), Error);
  try {
    hermitian_eigen(m);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_hermitian);
  }
}

TEST_CASE("unitary_from_hermitian: H = 0, pi Z, (pi/2) X") {
  CHECK(max_abs_diff(unitary_from_hermitian(CMatrix(2, 2)), CMatrix::identity(2)) <=
        1e-15);

  const cplx pi_c(kPi, 0.0);
  const CMatrix mz = unitary_from_hermitian(pi_c * pauli_z());
  const cplx minus_one(-1.0, 0.0);
  CHECK(max_abs_diff(mz, minus_one * CMatrix::identity(2)) <= 1e-12);

  // closed form: exp(i a X) = cos(a) I + i sin(a) X; at a = pi/2 this is iX
  const cplx half_pi(kPi / 2.0, 0.0);
  const CMatrix ux = unitary_from_hermitian(half_pi * pauli_x());
  const cplx i(0.0, 1.0);
  CHECK(max_abs_diff(ux, i * pauli_x()) <= 1e-12);

  nstest::Rng rng(46);
  for (int it = 0; it < 25; ++it) {
    const double a = rng.uniform(-3.0, 3.0);
    const CMatrix u = unitary_from_hermitian(cplx(a, 0.0) * pauli_x());
    const CMatrix expected =
        cplx(std::cos(a), 0.0) * CMatrix::identity(2) + cplx(0.0, std::sin(a)) * pauli_x();
    CHECK(max_abs_diff(u, expected) <= 1e-12);
  }
}

TEST_CASE("unitary_from_hermitian: inverse pairing and unitarity") {
  nstest::Rng rng(47);
  const cplx minus_one(-1.0, 0.0);
  for (int n : {2, 4}) {
    for (int it = 0; it < 50; ++it) {
      const CMatrix h = random_hermitian(rng, n);
      const CMatrix u = unitary_from_hermitian(h);
      const CMatrix v = unitary_from_hermitian(minus_one * h);
      CHECK(is_unitary(u, 1e-10));
      CHECK(frobenius_norm(u * v - CMatrix::identity(n)) <= 1e-10);
    }
  }
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(CMatrix::identity(4), 1e-10));
  const cplx two(2.0, 0.0);
  CHECK_FALSE(is_unitary(two * CMatrix::identity(2), 1e-10));
}

TEST_CASE("svd2x2: identity and rank-1") {
  const Svd2x2 si = svd2x2(CMatrix::identity(2));
  CHECK(si.sigma0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(si.sigma1 == doctest::Approx(1.0).epsilon(1e-14));

  CMatrix r1(2, 2);
  r1(1, 1) = 1.0;  // e1 e1'
  const Svd2x2 s = svd2x2(r1);
  CHECK(s.sigma0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.sigma1 == 0.0);
  CHECK(is_unitary(s.left, 1e-12));
  CHECK(is_unitary(s.right, 1e-12));
}

TEST_CASE("svd2x2: reconstruction and Frobenius identity on random input") {
  nstest::Rng rng(48);
  for (int it = 0; it < 300; ++it) {
    const CMatrix m = random_matrix(rng, 2, 2);
    const Svd2x2 s = svd2x2(m);
    CHECK(s.sigma0 >= s.sigma1);
    CHECK(s.sigma1 >= 0.0);
    CHECK(is_unitary(s.left, 1e-10));
    CHECK(is_unitary(s.right, 1e-10));

    CMatrix sig(2, 2);
    sig(0, 0) = s.sigma0;
    sig(1, 1) = s.sigma1;
    const CMatrix rec = s.left * sig * adjoint(s.right);
    CHECK(frobenius_norm(rec - m) <= 1e-12 * std::max(1.0, frobenius_norm(m)));

    // Frobenius-norm identity oracle
    const double f2 = frobenius_norm(m) * frobenius_norm(m);
    CHECK(std::abs(s.sigma0 * s.sigma0 + s.sigma1 * s.sigma1 - f2) <=
          1e-10 * std::max(1.0, f2));
  }
}

TEST_CASE("svd2x2: singular values invariant under unitary factors") {
  nstest::Rng rng(49);
  for (int it = 0; it < 50; ++it) {
    const CMatrix m = random_matrix(rng, 2, 2);
    const CMatrix u = random_unitary(rng, 2);
    const CMatrix v = random_unitary(rng, 2);
    const Svd2x2 s0 = svd2x2(m);
    const Svd2x2 s1 = svd2x2(u * m * v);
    CHECK(std::abs(s0.sigma0 - s1.sigma0) <= 1e-10);
    CHECK(std::abs(s0.sigma1 - s1.sigma1) <= 1e-10);
  }
}

TEST_CASE("svd2x2: near-singular input keeps orthonormal factors") {
  nstest::Rng rng(50);
  for (int it = 0; it < 50; ++it) {
    // rank-1 plus a tiny perturbation
    CMatrix m = random_matrix(rng, 2, 1) * adjoint(random_matrix(rng, 2, 1));
    m(0, 0) += cplx(1e-11 * rng.normal(), 0.0);
    const Svd2x2 s = svd2x2(m);
    CHECK(is_unitary(s.left, 1e-10));
    CHECK(is_unitary(s.right, 1e-10));
    CMatrix sig(2, 2);
    sig(0, 0) = s.sigma0;
    sig(1, 1) = s.sigma1;
    CHECK(frobenius_norm(s.left * sig * adjoint(s.right) - m) <=
          1e-12 * std::max(1.0, frobenius_norm(m)));
  }
}

TEST_CASE("gram_schmidt_unitary: fixed points and scaling") {
  nstest::Rng rng(51);
  const CMatrix u = random_unitary(rng, 4);
  CHECK(max_abs_diff(gram_schmidt_unitary(u), u) <= 1e-12);

  CMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(max_abs_diff(gram_schmidt_unitary(d), CMatrix::identity(2)) <= 1e-15);
}

TEST_CASE("gram_schmidt_unitary: Ginibre samples become unitary") {
  nstest::Rng rng(52);
  for (int it = 0; it < 100; ++it)
    CHECK(is_unitary(gram_schmidt_unitary(random_matrix(rng, 4, 4)), 1e-12));
}

TEST_CASE("gram_schmidt_unitary: rank-deficient input rejected") {
  CMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 1.0;
  CHECK_THROWS_AS(gram_schmidt_unitary(m), Error);
  try {
    gram_schmidt_unitary(m);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::rank_deficient);
  }
}
