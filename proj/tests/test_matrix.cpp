#include <doctest.h>

#include "losr/matrix.hpp"

using namespace losr;

TEST_CASE("tensor product ordering and dimensions") {
  CMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  CMatrix t = tensor(a, b);
  REQUIRE(t.rows() == 4);
  CHECK(t(0, 1) == Complex(1, 0));   // a(0,0)*b(0,1)
  CHECK(t(2, 1) == Complex(3, 0));   // a(1,0)*b(0,1)
  CHECK(t(3, 2) == Complex(4, 0));
}

TEST_CASE("partial trace recovers factors of a product") {
  std::mt19937_64 rng(11);
  CMatrix a = random_density(2, rng), b = random_density(3, rng);
  CMatrix ab = tensor(a, b);
  CHECK(frob_dist(partial_trace(ab, {2, 3}, {0}), a) < 1e-12);
  CHECK(frob_dist(partial_trace(ab, {2, 3}, {1}), b) < 1e-12);
  CHECK(std::abs(partial_trace(ab, {2, 3}, {})(0, 0).real() - 1.0) < 1e-12);
}

TEST_CASE("partial transpose is involutive and matches full transpose") {
  std::mt19937_64 rng(12);
  CMatrix m = random_hermitian(6, rng);
  CMatrix pt = partial_transpose(m, {2, 3}, 1);
  CHECK(frob_dist(partial_transpose(pt, {2, 3}, 1), m) < 1e-12);
  CMatrix both = partial_transpose(partial_transpose(m, {2, 3}, 0), {2, 3}, 1);
  CHECK(frob_dist(both, m.transpose()) < 1e-12);
}

TEST_CASE("dephase_factor is an idempotent projection") {
  std::mt19937_64 rng(13);
  CMatrix m = random_hermitian(6, rng);
  CMatrix d = dephase_factor(m, {2, 3}, 0);
  CHECK(frob_dist(dephase_factor(d, {2, 3}, 0), d) < 1e-14);
  // Frobenius-orthogonal projection: <m - d, d> = 0.
  CHECK(std::abs(((m - d).adjoint() * d).trace()) < 1e-10);
}

TEST_CASE("factor_perm_matrix realizes permute_factors by conjugation") {
  std::mt19937_64 rng(14);
  std::vector<int> dims = {2, 3, 2};
  std::vector<int> perm = {2, 0, 1};
  CMatrix m = random_hermitian(12, rng);
  CMatrix p = factor_perm_matrix(dims, perm);
  CHECK(frob_dist(p * m * p.transpose(), permute_factors(m, dims, perm)) <
        1e-12);
  CHECK(frob_dist(p * p.transpose(), identity(12)) < 1e-14);
}

TEST_CASE("shift and clock obey the Weyl relation") {
  for (int d : {2, 3, 5}) {
    CMatrix x = shift_op(d), z = clock_op(d);
    Complex w = std::exp(Complex(0, 2 * M_PI / d));
    CHECK(frob_dist(z * x, w * x * z) < 1e-12);
    CHECK(frob_dist(x * x.adjoint(), identity(d)) < 1e-12);
  }
}

TEST_CASE("herm_eigvals sorts ascending and rejects non-Hermitian input") {
  CMatrix m(2, 2);
  m << 2, 0, 0, -1;
  auto ev = herm_eigvals(m);
  CHECK(ev.front() == doctest::Approx(-1.0));
  CHECK(ev.back() == doctest::Approx(2.0));
  CMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS(herm_eigvals(bad));
}

TEST_CASE("proj_psd clips negative eigenvalues only") {
  CMatrix m(2, 2);
  m << 1, 0, 0, -2;
  CMatrix p = proj_psd(m);
  CHECK(frob_dist(p, (CMatrix(2, 2) << 1, 0, 0, 0).finished()) < 1e-12);
}

TEST_CASE("random generators produce valid objects") {
  std::mt19937_64 rng(15);
  CMatrix rho = random_density(4, rng);
  CHECK(is_hermitian(rho));
  CHECK(min_eigval(rho) > -1e-12);
  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  CMatrix v = random_isometry(6, 2, rng);
  CHECK(frob_dist(v.adjoint() * v, identity(2)) < 1e-12);
}
