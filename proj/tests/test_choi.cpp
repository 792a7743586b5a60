#include <doctest.h>

#include "losr/choi.hpp"

using namespace losr;

TEST_CASE("identity channel Choi acts as the identity") {
  std::mt19937_64 rng(21);
  CMatrix rho = random_density(3, rng);
  CHECK(frob_dist(choi_apply(choi_identity(3), rho), rho) < 1e-12);
  CHECK(is_cp(choi_identity(3)));
  CHECK(is_tp(choi_identity(3)));
}

TEST_CASE("depolarizing channel maps everything to the maximally mixed state") {
  std::mt19937_64 rng(22);
  CMatrix rho = random_density(2, rng);
  CHECK(frob_dist(choi_apply(choi_depolarizing(2), rho), identity(2) / 2.0) <
        1e-12);
}

TEST_CASE("choi_from_kraus matches direct application") {
  std::mt19937_64 rng(23);
  CMatrix v = random_isometry(3, 2, rng);
  ChoiOperator j = choi_from_kraus({v});
  CMatrix rho = random_density(2, rng);
  CHECK(frob_dist(choi_apply(j, rho), v * rho * v.adjoint()) < 1e-12);
  CHECK(is_tp(j));
}

TEST_CASE("superoperator round trip and action agree") {
  std::mt19937_64 rng(24);
  ChoiOperator j = random_cptp(2, 3, rng);
  CMatrix k = choi_to_superop(j);
  CHECK(frob_dist(superop_to_choi(k, 3, 2).matrix, j.matrix) < 1e-12);
  CMatrix rho = random_density(2, rng);
  Eigen::VectorXcd vec(4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) vec(r * 2 + c) = rho(r, c);
  Eigen::VectorXcd out = k * vec;
  CMatrix direct = choi_apply(j, rho);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(out(r * 3 + c) - direct(r, c)) < 1e-12);
}

TEST_CASE("reshuffling preserves the Frobenius inner product") {
  std::mt19937_64 rng(25);
  ChoiOperator a = random_cptp(2, 3, rng), b = random_cptp(2, 3, rng);
  Complex lhs = (a.matrix.adjoint() * b.matrix).trace();
  Complex rhs = (choi_to_superop(a).adjoint() * choi_to_superop(b)).trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("sequential composition matches function composition") {
  std::mt19937_64 rng(26);
  ChoiOperator j1 = random_cptp(2, 3, rng), j2 = random_cptp(3, 2, rng);
  ChoiOperator chain = compose_sequential(j2, j1);
  CMatrix rho = random_density(2, rng);
  CHECK(frob_dist(choi_apply(chain, rho),
                  choi_apply(j2, choi_apply(j1, rho))) < 1e-11);
}

TEST_CASE("parallel composition acts factorwise with outputs grouped first") {
  std::mt19937_64 rng(27);
  ChoiOperator ja = random_cptp(2, 2, rng), jb = random_cptp(2, 3, rng);
  ChoiOperator par = compose_parallel(ja, jb);
  CMatrix ra = random_density(2, rng), rb = random_density(2, rng);
  CHECK(frob_dist(choi_apply(par, tensor(ra, rb)),
                  tensor(choi_apply(ja, ra), choi_apply(jb, rb))) < 1e-11);
  CHECK(is_tp(par));
}

TEST_CASE("superop_tensor equals the superoperator of the parallel channel") {
  std::mt19937_64 rng(28);
  ChoiOperator ja = random_cptp(2, 2, rng), jb = random_cptp(2, 3, rng);
  CMatrix kt = superop_tensor(choi_to_superop(ja), 2, 2, choi_to_superop(jb),
                              3, 2);
  CHECK(frob_dist(kt, choi_to_superop(compose_parallel(ja, jb))) < 1e-12);
}

TEST_CASE("superop_permutation conjugates by the factor permutation") {
  std::mt19937_64 rng(29);
  CMatrix m = random_hermitian(6, rng);
  CMatrix k = superop_permutation({2, 3}, {1, 0});
  Eigen::VectorXcd vec(36);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) vec(r * 6 + c) = m(r, c);
  Eigen::VectorXcd out = k * vec;
  CMatrix want = permute_factors(m, {2, 3}, {1, 0});
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c)
      CHECK(std::abs(out(r * 6 + c) - want(r, c)) < 1e-12);
}

TEST_CASE("classical channels are diagonal and stochastic") {
  Eigen::MatrixXd kernel(2, 3);
  kernel << 0.25, 1, 0, 0.75, 0, 1;
  ChoiOperator j = choi_classical(kernel);
  CHECK(is_cp(j));
  CHECK(is_tp(j));
  CMatrix in = CMatrix::Zero(3, 3);
  in(0, 0) = 1.0;
  CMatrix out = choi_apply(j, in);
  CHECK(out(0, 0).real() == doctest::Approx(0.25));
  CHECK(out(1, 1).real() == doctest::Approx(0.75));
}

TEST_CASE("random CPTP channels are CPTP") {
  std::mt19937_64 rng(30);
  for (int t = 0; t < 5; ++t) {
    ChoiOperator j = random_cptp(3, 2, rng);
    CHECK(cp_defect(j) < 1e-10);
    CHECK(tp_defect(j) < 1e-10);
  }
}
