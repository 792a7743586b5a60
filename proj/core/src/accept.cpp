#include "losr/accept.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "losr/freeset.hpp"
#include "losr/game.hpp"

namespace losr::accept {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
  void expect_near(double got, double want, double tol,
                   const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream s;
      s << what << " (got " << got << ", want " << want << " +- " << tol
        << ")";
      expect(false, s.str());
    }
  }
};

std::vector<CMatrix> angle_povm(double theta) {
  CMatrix o = std::cos(theta) * pauli_z() + std::sin(theta) * pauli_x();
  return {(identity(2) + o) / 2.0, (identity(2) - o) / 2.0};
}

std::vector<std::vector<CMatrix>> zx_povms() {
  return {angle_povm(0.0), angle_povm(M_PI / 2.0)};
}

// CHSH win operator with the optimal qubit measurements; Tr[W Phi+] is the
// quantum win probability cos^2(pi/8).
CMatrix chsh_win_operator() {
  auto ma = std::vector<std::vector<CMatrix>>{angle_povm(0.0),
                                              angle_povm(M_PI / 2.0)};
  auto mb = std::vector<std::vector<CMatrix>>{angle_povm(M_PI / 4.0),
                                              angle_povm(-M_PI / 4.0)};
  CMatrix w = CMatrix::Zero(4, 4);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) w += 0.25 * tensor(ma[x][a], mb[y][b]);
  return w;
}

Resource random_ns_resource(const PartyWiring& w, std::mt19937_64& rng) {
  auto product = [&] {
    ChoiOperator ja = random_cptp(w.a_in.dim, w.a_out.dim, rng);
    ChoiOperator jb = random_cptp(w.b_in.dim, w.b_out.dim, rng);
    return compose_parallel(ja, jb);
  };
  ChoiOperator j1 = product(), j2 = product();
  std::uniform_real_distribution<double> unif(0.2, 0.8);
  const double lam = unif(rng);
  ChoiOperator j{lam * j1.matrix + (1.0 - lam) * j2.matrix, j1.dim_out,
                 j1.dim_in};
  return from_channel(j, w);
}

CorrelationTable random_local_box(int na, int nb, int nx, int ny,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int nfa = static_cast<int>(std::pow(na, nx));
  const int nfb = static_cast<int>(std::pow(nb, ny));
  CorrelationTable p = CorrelationTable::zeros(na, nb, nx, ny);
  double total = 0.0;
  for (int fa = 0; fa < nfa; ++fa)
    for (int fb = 0; fb < nfb; ++fb) {
      const double wgt = unif(rng);
      total += wgt;
      CorrelationTable d = deterministic_box(fa, fb, na, nb, nx, ny);
      for (size_t i = 0; i < p.p.size(); ++i) p.p[i] += wgt * d.p[i];
    }
  for (auto& v : p.p) v /= total;
  return p;
}

CriterionResult criterion_roundtrip(std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed);
  for (int d : {2, 3}) {
    PartyWiring w{quantum_system(2), quantum_system(d), quantum_system(2),
                  quantum_system(2)};
    LosrTransform enc = sq_encode(Party::A, d);
    LosrTransform dec = sq_decode(Party::A, d);
    for (int trial = 0; trial < 25 && c.ok; ++trial) {
      Resource r = random_ns_resource(w, rng);
      Resource back = apply(dec, apply(enc, r));
      c.expect(back.wiring == r.wiring,
               "round trip changed the wiring (d=" + std::to_string(d) + ")");
      c.expect_near(frob_dist(back.choi.matrix, r.choi.matrix), 0.0, 1e-8,
                    "round-trip Choi distance (d=" + std::to_string(d) + ")");
    }
  }
  return {"semiquantum encode/decode round trip, 50 random resources", c.ok,
          c.why.str(), 0.0};
}

CriterionResult criterion_chsh(std::uint64_t seed) {
  Check c;
  Game chsh = chsh_game();
  c.expect_near(evaluate(chsh, from_box(pr_box())), 1.0, 1e-12,
                "PR box value");

  double local = -1.0;
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb)
      local = std::max(
          local, evaluate(chsh, from_box(deterministic_box(fa, fb, 2, 2, 2,
                                                           2))));
  c.expect_near(local, 0.75, 1e-9, "local bound by vertex enumeration");

  // Quantum value: Phi+ with the optimal angle families.
  Resource phi = from_state(proj(max_entangled_ket(2)), 2, 2);
  LosrTransform ma = measure_output_family(
      Party::A, {angle_povm(0.0), angle_povm(M_PI / 2.0)});
  Resource mid = apply(ma, phi);
  LosrTransform mb = measure_output_family(
      Party::B, {angle_povm(M_PI / 4.0), angle_povm(-M_PI / 4.0)});
  Resource box = apply(mb, mid);
  const double q = evaluate(chsh, box);
  c.expect_near(q, std::pow(std::cos(M_PI / 8.0), 2), 1e-6, "quantum value");

  // See-saw on the encoded state against the pushed-forward game.
  PartyWiring sw = phi.wiring;
  LosrTransform enc = compose(sq_encode(Party::B, 2), sq_encode(Party::A, 2),
                              sw);
  PartyWiring ew = transformed_wiring(enc, sw);
  LosrTransform dec = compose(sq_decode(Party::A, 2), sq_decode(Party::B, 2),
                              ew);
  Resource enc_phi = apply(enc, phi);
  Game pushed = pushforward(witness_game_on_states(chsh_win_operator(), 2, 2),
                            enc, dec);
  SeesawResult ss = performance_seesaw(pushed, enc_phi, 20, 40, seed);
  c.expect(ss.value >= 0.8534,
           "see-saw value " + std::to_string(ss.value) + " < 0.8534");
  return {"CHSH ladder: PR box, local bound, quantum value, see-saw", c.ok,
          c.why.str(), 0.0};
}

CriterionResult criterion_werner_ppt(std::uint64_t) {
  Check c;
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    CMatrix pt = partial_transpose(werner_state(p), {2, 2}, 1);
    c.expect_near(min_eigval(pt), (1.0 - 3.0 * p) / 4.0, 1e-12,
                  "partial-transpose eigenvalue at p=" + std::to_string(p));
  }
  const double eps = 1e-9, tol = 1e-10;
  auto below = state_is_ppt(werner_state(1.0 / 3.0 - eps), 2, 2, tol);
  auto above = state_is_ppt(werner_state(1.0 / 3.0 + eps), 2, 2, tol);
  c.expect(below.verdict == Verdict::Free, "p=1/3-1e-9 should be Free");
  c.expect(above.verdict == Verdict::NonFree, "p=1/3+1e-9 should be NonFree");
  return {"Werner partial-transpose eigenvalue formula and 1/3 threshold",
          c.ok, c.why.str(), 0.0};
}

CriterionResult criterion_steering(std::uint64_t) {
  Check c;
  auto povms = zx_povms();

  Assemblage singlet =
      assemblage_from_state(werner_state(1.0), 2, 2, povms);
  auto rep = assemblage_is_unsteerable(singlet);
  c.expect(rep.verdict == Verdict::NonFree, "singlet+ZX should be NonFree");
  if (rep.verdict == Verdict::NonFree)
    c.expect(rep.value > rep.bound, "steering dual fails re-verification");

  Assemblage product = assemblage_from_state(
      tensor(proj(basis_ket(0, 2)), identity(2) / 2.0), 2, 2, povms);
  auto rep2 = assemblage_is_unsteerable(product);
  c.expect(rep2.verdict == Verdict::Free, "product assemblage should be Free");
  c.expect(rep2.residual < 1e-7, "product LHS residual too large");

  Assemblage werner = assemblage_from_state(werner_state(0.3), 2, 2, povms);
  auto rep3 = assemblage_is_unsteerable(werner);
  c.expect(rep3.verdict == Verdict::Free, "Werner p=0.3 should be Free");
  c.expect(rep3.residual < 1e-7, "Werner LHS residual too large");
  return {"steering: singlet NonFree with dual, product and Werner 0.3 Free",
          c.ok, c.why.str(), 0.0};
}

CriterionResult criterion_pushforward(std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed);
  PartyWiring sw{trivial_system(), quantum_system(2), trivial_system(),
                 quantum_system(2)};
  LosrTransform enc = compose(sq_encode(Party::B, 2), sq_encode(Party::A, 2),
                              sw);
  PartyWiring ew = transformed_wiring(enc, sw);
  LosrTransform dec = compose(sq_decode(Party::A, 2), sq_decode(Party::B, 2),
                              ew);

  std::vector<CMatrix> ws, rhos;
  for (int i = 0; i < 10; ++i) ws.push_back(random_hermitian(4, rng));
  for (int i = 0; i < 10; ++i) rhos.push_back(random_density(4, rng));
  std::vector<Resource> encoded;
  for (const auto& rho : rhos)
    encoded.push_back(apply(enc, from_state(rho, 2, 2)));

  for (const auto& w : ws) {
    Game g = pushforward(witness_game_on_states(w, 2, 2), enc, dec);
    CMatrix y = game_observable(g);
    for (size_t k = 0; k < rhos.size() && c.ok; ++k) {
      const double got = (y * encoded[k].choi.matrix).trace().real();
      const double want = (w * rhos[k]).trace().real();
      c.expect_near(got, want, 1e-8, "pushforward value mismatch");
    }
    if (!c.ok) break;
  }
  return {"witness pushforward matches Tr(W rho) on 10x10 random pairs",
          c.ok, c.why.str(), 0.0};
}

CriterionResult criterion_type_table(std::uint64_t) {
  Check c;
  const std::vector<PartitionType> types = {
      {Kind::Trivial, Kind::Classical}, {Kind::Trivial, Kind::Quantum},
      {Kind::Classical, Kind::Classical}, {Kind::Classical, Kind::Quantum},
      {Kind::Quantum, Kind::Classical}, {Kind::Quantum, Kind::Quantum}};
  // Fixture grid: fixture[t][u] = can column type t encode row type u.
  // Y/N/?; types ordered I->C, I->Q, C->C, C->Q, Q->C, Q->Q.
  const char* fixture[6] = {
      "YNNNNN",  // t = I->C
      "YYNNNN",  // t = I->Q
      "YNYNNN",  // t = C->C
      "YYYY??",  // t = C->Q
      "YYYYYY",  // t = Q->C
      "YYYYYY",  // t = Q->Q
  };
  int unknown = 0;
  for (int t = 0; t < 6; ++t)
    for (int u = 0; u < 6; ++u) {
      Encode want = fixture[t][u] == 'Y'
                        ? Encode::Yes
                        : fixture[t][u] == 'N' ? Encode::No : Encode::Unknown;
      EncodeVerdict got = partition_encodes(types[t], types[u]);
      if (got.value == Encode::Unknown) ++unknown;
      c.expect(got.value == want,
               "cell (" + to_string(types[t]) + " encodes " +
                   to_string(types[u]) + ") disagrees with the fixture");
    }
  c.expect(unknown == 2, "expected exactly 2 Unknown cells, got " +
                             std::to_string(unknown));
  for (const auto& t : types)
    for (const auto& u : types)
      for (const auto& v : types)
        if (partition_encodes(t, u).value == Encode::Yes &&
            partition_encodes(u, v).value == Encode::Yes)
          c.expect(partition_encodes(t, v).value == Encode::Yes,
                   "Yes-relation not transitively closed");
  return {"encodability grid matches the fixture; 2 Unknowns; transitivity",
          c.ok, c.why.str(), 0.0};
}

CriterionResult criterion_box_convertibility(std::uint64_t seed) {
  Check c;
  CorrelationTable pr = pr_box();
  CorrelationTable det = deterministic_box(0, 0, 2, 2, 2, 2);

  auto down = box_convertible(pr, det);
  c.expect(down.verdict == Verdict::Free, "PR -> deterministic should be Free");

  auto up = box_convertible(det, pr);
  c.expect(up.verdict == Verdict::NonFree,
           "deterministic -> PR should be NonFree");
  c.expect(!up.dual.empty() && up.value > up.bound,
           "NonFree conversion lacks a verified dual");

  c.expect(box_convertible(pr, pr).verdict == Verdict::Free,
           "p -> p should be Free");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto was = enumerate_wirings(2, 2, 2, 2);
  for (int trial = 0; trial < 100 && c.ok; ++trial) {
    CorrelationTable p = random_local_box(2, 2, 2, 2, rng);
    // Random mixture of deterministic wirings applied to a free box.
    CorrelationTable q = CorrelationTable::zeros(2, 2, 2, 2);
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto& wa = was[rng() % was.size()];
      const auto& wb = was[rng() % was.size()];
      const double wgt = unif(rng) + 1e-3;
      total += wgt;
      CorrelationTable piece = wire_box(p, wa, 2, wb, 2);
      for (size_t i = 0; i < q.p.size(); ++i) q.p[i] += wgt * piece.p[i];
    }
    for (auto& v : q.p) v /= total;
    c.expect(box_is_local(q).verdict == Verdict::Free,
             "wiring a free box left the local polytope");
  }
  return {"box convertibility: PR->local, local-/->PR, reflexive, monotone",
          c.ok, c.why.str(), 0.0};
}

CriterionResult criterion_validation(std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed);

  auto expect_valid = [&](const Resource& r, const std::string& what) {
    auto v = validate(r, 1e-9);
    c.expect(v.empty(), what + " fails " + (v.empty() ? "" : v.front().check));
  };
  expect_valid(from_state(random_density(4, rng), 2, 2), "from_state");
  Resource box = from_box(pr_box());
  expect_valid(box, "from_box");
  expect_valid(from_assemblage(
                   assemblage_from_state(werner_state(1.0), 2, 2, zx_povms())),
               "from_assemblage");
  PartyWiring qw{quantum_system(2), quantum_system(2), quantum_system(2),
                 quantum_system(2)};
  expect_valid(random_ns_resource(qw, rng), "from_channel");

  // Dephasing every classical factor of a valid resource is a no-op.
  CMatrix j = box.choi.matrix;
  const auto dims = box.wiring.factor_dims();
  for (int f = 0; f < 4; ++f) j = dephase_factor(j, dims, f);
  c.expect_near(frob_dist(j, box.choi.matrix), 0.0, 1e-12,
                "classical dephasing moved a valid box resource");

  // The swap channel signals in both directions.
  CMatrix s = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) s(i * 2 + k, k * 2 + i) = 1.0;
  ChoiOperator swap_choi =
      choi_from_map([&](const CMatrix& rho) { return CMatrix(s * rho * s); },
                    4, 4);
  Resource swap_res{qw, swap_choi};
  bool saw_ns = false;
  for (const auto& v : validate(swap_res, 1e-9))
    if (v.check.rfind("nonsignaling", 0) == 0) saw_ns = true;
  c.expect(saw_ns, "swap channel not rejected as signaling");
  return {"constructor validation, dephasing fixed point, swap rejection",
          c.ok, c.why.str(), 0.0};
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  using Fn = CriterionResult (*)(std::uint64_t);
  const Fn fns[] = {criterion_roundtrip,    criterion_chsh,
                    criterion_werner_ppt,   criterion_steering,
                    criterion_pushforward,  criterion_type_table,
                    criterion_box_convertibility, criterion_validation};
  std::vector<CriterionResult> out;
  int idx = 0;
  for (Fn fn : fns) {
    const auto start = Clock::now();
    CriterionResult r;
    try {
      r = fn(seed + idx);
    } catch (const std::exception& e) {
      r.name = "criterion " + std::to_string(idx + 1);
      r.pass = false;
      r.note = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    ++idx;
    out.push_back(std::move(r));
  }
  // Runtime budgets are part of the contract.
  if (out[0].seconds >= 30.0) {
    out[0].pass = false;
    out[0].note += " exceeded the 30 s budget";
  }
  if (out[3].seconds >= 60.0) {
    out[3].pass = false;
    out[3].note += " exceeded the 60 s budget";
  }
  return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace losr::accept
