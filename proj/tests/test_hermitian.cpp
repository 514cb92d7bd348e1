#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lambda1/hermitian.hpp"

using namespace lambda1;

TEST_CASE("eig: identity n=2") {
  Spectrum sp = eig_hermitian(Hermitian::identity(2));
  CHECK(sp.values[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sp.values[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eig: diag(3,1,2) sorts ascending") {
  Spectrum sp = eig_hermitian(Hermitian::diag({3, 1, 2}));
  CHECK(sp.values[0] == doctest::Approx(1.0));
  CHECK(sp.values[1] == doctest::Approx(2.0));
  CHECK(sp.values[2] == doctest::Approx(3.0));
}

TEST_CASE("eig: [[2,1],[1,2]] -> (1,3)") {
  Hermitian h(2);
  h.set(0, 0, 2);
  h.set(1, 1, 2);
  h.set(0, 1, 1);
  Spectrum sp = eig_hermitian(h);
  CHECK(sp.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("from_entries rejects non-Hermitian input") {
  // (0,1) entry is not the conjugate of (1,0)
  cplx raw[4] = {cplx(1, 0), cplx(0, 1), cplx(0, 1), cplx(1, 0)};
  CHECK_THROWS_AS(Hermitian::from_entries(2, raw), std::invalid_argument);
}

TEST_CASE("eigenvector residual within 1e-10 relative") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + int(rng.uniform() * 3);  // 2..4
    Hermitian h = random_hermitian(rng, n);
    Spectrum sp = eig_hermitian(h, true);
    for (int k = 0; k < n; ++k) {
      double res = 0;
      for (int j = 0; j < n; ++j) {
        cplx hv = 0;
        for (int l = 0; l < n; ++l) hv += h(j, l) * sp.vectors[k][l];
        res = std::max(res, std::abs(hv - sp.values[k] * sp.vectors[k][j]));
      }
      CHECK(res <= 1e-10 * (1.0 + h.frobenius()));
    }
  }
}

TEST_CASE("lambda_k examples and range check") {
  CHECK(lambda_k(Hermitian::identity(3), 1) == doctest::Approx(1.0));
  Hermitian h(2);
  h.set(0, 0, 2);
  h.set(1, 1, 2);
  h.set(0, 1, 1);
  CHECK(lambda_k(h, 2) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(lambda_k(Hermitian::diag({5, -1}), 1) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(lambda_k(Hermitian::identity(2), 0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_k(Hermitian::identity(2), 3), std::invalid_argument);
}

TEST_CASE("rayleigh quotient") {
  cplx e1[2] = {1, 0};
  CHECK(rayleigh(Hermitian::identity(2), e1) == doctest::Approx(1.0));
  CHECK(rayleigh(Hermitian::diag({1, 4}), e1) == doctest::Approx(1.0));
  Hermitian h(2);
  h.set(0, 0, 2);
  h.set(1, 1, 2);
  h.set(0, 1, 1);
  cplx ones[2] = {1, 1};
  CHECK(rayleigh(h, ones) == doctest::Approx(3.0));
  cplx zero[2] = {0, 0};
  CHECK_THROWS_AS(rayleigh(h, zero), std::invalid_argument);
}

TEST_CASE("rayleigh bounded below by lambda_1") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Hermitian h = random_hermitian(rng, 3);
    cplx v[3];
    for (auto& c : v) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK(rayleigh(h, v) >= lambda_min(h) - 1e-10);
    CHECK(rayleigh(h, v) <= lambda_max(h) + 1e-10);
  }
}

TEST_CASE("q11_part: identity real form (2n=2) -> [1/2]") {
  SymmetricForm q = SymmetricForm::diag({1, 1});
  Hermitian h = q11_part(q);
  CHECK(h.dim() == 1);
  CHECK(h(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("q11_part: real Hessian of |z1|^2 in R^4 -> diag(1,0)") {
  SymmetricForm q = SymmetricForm::diag({2, 2, 0, 0});
  Hermitian h = q11_part(q);
  CHECK(h(0, 0).real() == doctest::Approx(1.0));
  CHECK(h(1, 1).real() == doctest::Approx(0.0));
  CHECK(std::abs(h(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("q11_part: pluriharmonic Re(z1^2) -> zero") {
  SymmetricForm q = SymmetricForm::diag({2, -2});
  Hermitian h = q11_part(q);
  CHECK(std::abs(h(0, 0)) <= 1e-15);
}

TEST_CASE("q11_part is linear") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    SymmetricForm q1(4), q2(4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        q1.set(i, j, rng.uniform(-1, 1));
        q2.set(i, j, rng.uniform(-1, 1));
      }
    double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    Hermitian lhs = q11_part(q1 * a + q2 * b);
    Hermitian rhs = q11_part(q1) * a + q11_part(q2) * b;
    CHECK((lhs - rhs).frobenius() <= 1e-13);
  }
}

TEST_CASE("weyl_margins examples") {
  auto m = weyl_margins(Hermitian::identity(2), Hermitian::identity(2));
  for (auto& [lo, hi] : m) {
    CHECK(lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(0.0).epsilon(1e-12));
  }
  auto m2 = weyl_margins(Hermitian::diag({1, 3}), Hermitian::diag({0, 2}));
  for (auto& [lo, hi] : m2) {
    CHECK(lo >= -1e-9);
    CHECK(hi >= -1e-9);
  }
  double l1 = lambda_min(Hermitian::diag({1, 3}) + Hermitian::diag({0, 2}));
  CHECK(l1 >= 1.0 - 1e-12);
  CHECK(l1 <= 3.0 + 1e-12);
  CHECK_THROWS_AS(weyl_margins(Hermitian::identity(2), Hermitian::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("weyl inequalities on seeded random pairs") {
  Rng rng(123);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = (trial % 2) ? 2 : 3;
    Hermitian a = random_hermitian(rng, n);
    Hermitian b = random_hermitian(rng, n);
    for (auto& [lo, hi] : weyl_margins(a, b)) {
      CHECK(lo >= -1e-9);
      CHECK(hi >= -1e-9);
    }
  }
}

TEST_CASE("homogeneity of lambda_k") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Hermitian a = random_hermitian(rng, 3);
    for (double alpha : {0.5, 2.0, 7.0})
      for (int k = 1; k <= 3; ++k) {
        double lhs = lambda_k(a * alpha, k);
        double rhs = alpha * lambda_k(a, k);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
      }
  }
}

TEST_CASE("ellipticity: lambda_k nondecreasing under psd perturbation") {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    Hermitian a = random_hermitian(rng, 3);
    Hermitian p = random_posdef(rng, 3);
    for (int k = 1; k <= 3; ++k) CHECK(lambda_k(a + p, k) >= lambda_k(a, k) - 1e-9);
  }
}

TEST_CASE("lambda_1 concavity and lambda_n convexity") {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    Hermitian a = random_hermitian(rng, 3);
    Hermitian b = random_hermitian(rng, 3);
    for (double alpha : {0.25, 0.5, 0.75}) {
      Hermitian mix = a * alpha + b * (1 - alpha);
      CHECK(lambda_min(mix) >= alpha * lambda_min(a) + (1 - alpha) * lambda_min(b) - 1e-9);
      CHECK(lambda_max(mix) <= alpha * lambda_max(a) + (1 - alpha) * lambda_max(b) + 1e-9);
    }
  }
}

TEST_CASE("off-diagonal norm bound after sweeps") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    Hermitian h = random_hermitian(rng, 4);
    Spectrum sp = eig_hermitian(h);
    // eigenvalue sum must match the trace (rotations preserve it)
    double sum = sp.values[0] + sp.values[1] + sp.values[2] + sp.values[3];
    CHECK(sum == doctest::Approx(h.trace()).epsilon(1e-11));
  }
}

TEST_CASE("rng fork determinism") {
  Rng a(1), b(1);
  CHECK(a.next() == b.next());
  Rng fa = a.fork(3), fb = b.fork(3);
  CHECK(fa.next() == fb.next());
  Rng fc = b.fork(4);
  CHECK(fa.next() != fc.next());
}
