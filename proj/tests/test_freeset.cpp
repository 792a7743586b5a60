#include <doctest.h>

#include "losr/freeset.hpp"

using namespace losr;

namespace {

CorrelationTable mix_boxes(const std::vector<double>& w,
                           const std::vector<CorrelationTable>& boxes) {
  CorrelationTable out = CorrelationTable::zeros(
      boxes[0].na, boxes[0].nb, boxes[0].nx, boxes[0].ny);
  for (size_t k = 0; k < w.size(); ++k)
    for (size_t i = 0; i < out.p.size(); ++i)
      out.p[i] += w[k] * boxes[k].p[i];
  return out;
}

std::vector<std::vector<CMatrix>> zx_povms() {
  CMatrix zp = (identity(2) + pauli_z()) / 2.0;
  CMatrix xp = (identity(2) + pauli_x()) / 2.0;
  return {{zp, identity(2) - zp}, {xp, identity(2) - xp}};
}

}  // namespace

TEST_CASE("PR box is outside the local polytope with a verified dual") {
  auto rep = box_is_local(pr_box());
  REQUIRE(rep.verdict == Verdict::NonFree);
  REQUIRE(rep.dual.size() == 16);
  // Recompute bound and value from the functional directly.
  CorrelationTable pr = pr_box();
  double value = 0.0;
  for (size_t i = 0; i < pr.p.size(); ++i) value += rep.dual[i] * pr.p[i];
  double bound = -1e300;
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb) {
      CorrelationTable d = deterministic_box(fa, fb, 2, 2, 2, 2);
      double v = 0.0;
      for (size_t i = 0; i < d.p.size(); ++i) v += rep.dual[i] * d.p[i];
      bound = std::max(bound, v);
    }
  CHECK(value == doctest::Approx(rep.value));
  CHECK(bound == doctest::Approx(rep.bound));
  CHECK(value > bound + 1e-9);
}

TEST_CASE("local mixtures are recognized with a reconstructing certificate") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<CorrelationTable> dets;
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb)
      dets.push_back(deterministic_box(fa, fb, 2, 2, 2, 2));
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> w(16);
    double total = 0.0;
    for (auto& v : w) total += (v = unif(rng));
    for (auto& v : w) v /= total;
    auto rep = box_is_local(mix_boxes(w, dets));
    CHECK(rep.verdict == Verdict::Free);
    CHECK(rep.residual < 1e-7);
  }
}

TEST_CASE("noisy PR box crosses the local boundary at visibility 3/4") {
  std::vector<CorrelationTable> pieces = {pr_box(),
                                          CorrelationTable::zeros(2, 2, 2, 2)};
  // Uniform noise wins CHSH with probability 1/2, PR with 1; the local
  // boundary 3/4 sits at visibility 1/2.
  for (auto& v : pieces[1].p) v = 1.0 / 4.0;
  auto at = [&](double vis) {
    return box_is_local(mix_boxes({vis, 1.0 - vis}, pieces)).verdict;
  };
  CHECK(at(0.49) == Verdict::Free);
  CHECK(at(0.51) == Verdict::NonFree);
}

TEST_CASE("PPT criterion on Werner states") {
  CHECK(state_is_ppt(werner_state(0.2), 2, 2).verdict == Verdict::Free);
  auto rep = state_is_ppt(werner_state(0.5), 2, 2);
  REQUIRE(rep.verdict == Verdict::NonFree);
  CHECK(rep.value > 0.0);
  CHECK(rep.value ==
        doctest::Approx(-(rep.witness * werner_state(0.5)).trace().real()));
}

TEST_CASE("PPT is only Inconclusive beyond 2x3") {
  std::mt19937_64 rng(62);
  CMatrix rho = tensor(random_density(3, rng), random_density(3, rng));
  auto rep = state_is_ppt(rho, 3, 3);
  CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("steering verdicts for singlet, product, and noisy Werner") {
  auto povms = zx_povms();
  auto singlet = assemblage_from_state(werner_state(1.0), 2, 2, povms);
  auto rep = assemblage_is_unsteerable(singlet);
  REQUIRE(rep.verdict == Verdict::NonFree);
  // Re-verify the steering functional against its LHS bound.
  double value = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      value += (rep.dual_ops[x][a] * singlet.sigma[x][a]).trace().real();
  CHECK(value == doctest::Approx(rep.value));
  CHECK(value > rep.bound);

  std::mt19937_64 rng(63);
  auto product = assemblage_from_state(
      tensor(random_density(2, rng), identity(2) / 2.0), 2, 2, povms);
  CHECK(assemblage_is_unsteerable(product).verdict == Verdict::Free);

  CHECK(assemblage_is_unsteerable(
            assemblage_from_state(werner_state(0.3), 2, 2, povms))
            .verdict == Verdict::Free);
}

TEST_CASE("box convertibility basics") {
  CorrelationTable pr = pr_box();
  CorrelationTable det = deterministic_box(0, 0, 2, 2, 2, 2);
  CHECK(box_convertible(pr, det).verdict == Verdict::Free);
  CHECK(box_convertible(pr, pr).verdict == Verdict::Free);
  auto rep = box_convertible(det, pr);
  REQUIRE(rep.verdict == Verdict::NonFree);
  CHECK(rep.value > rep.bound + 1e-9);
}

TEST_CASE("wirings compose deterministic boxes into deterministic boxes") {
  auto ws = enumerate_wirings(2, 2, 2, 2);
  CHECK(ws.size() == 4 * 16);
  CorrelationTable d = deterministic_box(1, 2, 2, 2, 2, 2);
  for (size_t k = 0; k < ws.size(); k += 7) {
    CorrelationTable q = wire_box(d, ws[k], 2, ws[(k * 3) % ws.size()], 2);
    for (double v : q.p) CHECK((v < 1e-12 || std::abs(v - 1.0) < 1e-12));
    CHECK(validate_table(q).empty());
  }
}
