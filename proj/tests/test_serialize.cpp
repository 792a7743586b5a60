#include <doctest.h>

#include "losr/serialize.hpp"

using namespace losr;

TEST_CASE("matrix JSON round trip") {
  std::mt19937_64 rng(81);
  CMatrix m = random_hermitian(3, rng);
  CMatrix back = matrix_from_json(to_json(m));
  CHECK(frob_dist(m, back) < 1e-12);
}

TEST_CASE("system string grammar") {
  CHECK(system_to_string(quantum_system(4)) == "Q:4");
  CHECK(system_from_string("C:2") == classical_system(2));
  CHECK(system_from_string("I:1") == trivial_system());
  CHECK_THROWS(system_from_string("I:2"));
  CHECK_THROWS(system_from_string("Q"));
  CHECK_THROWS(system_from_string("Z:2"));
}

TEST_CASE("resource JSON round trip preserves wiring and Choi") {
  std::mt19937_64 rng(82);
  Resource r = from_state(random_density(4, rng), 2, 2);
  Resource back = resource_from_json(to_json(r));
  CHECK(back.wiring == r.wiring);
  CHECK(frob_dist(back.choi.matrix, r.choi.matrix) < 1e-12);
}

TEST_CASE("box and assemblage JSON round trips") {
  CorrelationTable pr = pr_box();
  CorrelationTable back = box_from_json(to_json(pr));
  for (size_t i = 0; i < pr.p.size(); ++i)
    CHECK(back.p[i] == doctest::Approx(pr.p[i]));

  CMatrix zp = (identity(2) + pauli_z()) / 2.0;
  CMatrix xp = (identity(2) + pauli_x()) / 2.0;
  Assemblage a = assemblage_from_state(
      werner_state(0.7), 2, 2,
      {{zp, identity(2) - zp}, {xp, identity(2) - xp}});
  Assemblage aback = assemblage_from_json(to_json(a));
  for (int x = 0; x < 2; ++x)
    for (int o = 0; o < 2; ++o)
      CHECK(frob_dist(aback.sigma[x][o], a.sigma[x][o]) < 1e-12);
}

TEST_CASE("transform JSON round trip acts identically") {
  std::mt19937_64 rng(83);
  LosrTransform t = sq_encode(Party::A, 2);
  LosrTransform back = transform_from_json(to_json(t));
  PartyWiring w{quantum_system(2), quantum_system(2), quantum_system(2),
                quantum_system(2)};
  ChoiOperator ja = random_cptp(2, 2, rng), jb = random_cptp(2, 2, rng);
  Resource r = from_channel(compose_parallel(ja, jb), w);
  CHECK(frob_dist(apply(t, r).choi.matrix, apply(back, r).choi.matrix) <
        1e-12);
}

TEST_CASE("game JSON round trip preserves values") {
  Game g = chsh_game();
  Game back = game_from_json(to_json(g));
  Resource r = from_box(pr_box());
  CHECK(evaluate(back, r) == doctest::Approx(evaluate(g, r)));
  CHECK(back.analyzer.povm_a_complete);
}

TEST_CASE("membership reports serialize with the certificate shape") {
  auto rep = box_is_local(pr_box());
  json j = to_json(rep);
  CHECK(j.at("verdict") == "NonFree");
  CHECK(j.at("certificate").at("kind") == "dual");
  CHECK(j.at("certificate").at("F").size() == 16);
  CHECK(j.at("certificate").contains("bound"));
  CHECK(j.at("certificate").contains("value"));

  auto free_rep = box_is_local(deterministic_box(0, 0, 2, 2, 2, 2));
  json jf = to_json(free_rep);
  CHECK(jf.at("verdict") == "Free");
  CHECK(jf.at("certificate").at("kind") == "decomposition");
}
