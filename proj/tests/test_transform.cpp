#include <doctest.h>

#include "losr/transform.hpp"

using namespace losr;

namespace {

Resource random_product_resource(const PartyWiring& w, std::mt19937_64& rng) {
  ChoiOperator ja = random_cptp(w.a_in.dim, w.a_out.dim, rng);
  ChoiOperator jb = random_cptp(w.b_in.dim, w.b_out.dim, rng);
  return from_channel(compose_parallel(ja, jb), w);
}

std::vector<CMatrix> zbasis_povm() {
  return {proj(basis_ket(0, 2)), proj(basis_ket(1, 2))};
}

CMatrix word(int d, int a, int b) {
  CMatrix x = shift_op(d), z = clock_op(d);
  CMatrix out = identity(d);
  for (int i = 0; i < a; ++i) out = out * x;
  for (int i = 0; i < b; ++i) out = out * z;
  return out;
}

}  // namespace

TEST_CASE("identity transform is the identity") {
  std::mt19937_64 rng(51);
  PartyWiring w{quantum_system(2), quantum_system(2), quantum_system(3),
                quantum_system(2)};
  Resource r = random_product_resource(w, rng);
  Resource out = apply(identity_transform(), r);
  CHECK(out.wiring == r.wiring);
  CHECK(frob_dist(out.choi.matrix, r.choi.matrix) < 1e-12);
}

TEST_CASE("measuring one half of a state reproduces the Born rule") {
  std::mt19937_64 rng(52);
  CMatrix rho = random_density(4, rng);
  Resource r = from_state(rho, 2, 2);
  Resource m = apply(measure_output(Party::A, zbasis_povm()), r);
  CHECK(m.wiring.a_out == classical_system(2));
  CMatrix sigma = choi_apply(m.choi, CMatrix::Ones(1, 1));
  for (int a = 0; a < 2; ++a) {
    CMatrix block = CMatrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        block(i, k) = sigma(a * 2 + i, a * 2 + k);
    CMatrix want = partial_trace(
        tensor(proj(basis_ket(a, 2)), identity(2)) * rho, {2, 2}, {1});
    CHECK(frob_dist(block, want) < 1e-10);
  }
}

TEST_CASE("semiquantum encoding of the Bell state matches the Born oracle") {
  // Both parties Bell-measure their half of Phi+ against a fresh input.
  Resource phi = from_state(proj(max_entangled_ket(2)), 2, 2);
  LosrTransform enc = compose(sq_encode(Party::B, 2), sq_encode(Party::A, 2),
                              phi.wiring);
  Resource e = apply(enc, phi);
  CHECK(to_string(e.wiring.global_type()) == "QQ->CC");

  std::mt19937_64 rng(53);
  std::vector<CMatrix> bell;
  const CVector omega = max_entangled_ket(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      bell.push_back(proj(tensor(identity(2), word(2, a, b)) * omega));

  for (int trial = 0; trial < 3; ++trial) {
    CMatrix xi = random_density(2, rng), psi = random_density(2, rng);
    CMatrix sigma = choi_apply(e.choi, tensor(xi, psi));
    // Oracle on (A, A', B, B'): the resource half comes first in each
    // measured pair, matching the encoder's (resource, fresh) convention.
    CMatrix global = permute_factors(tensor(proj(omega), tensor(xi, psi)),
                                     {2, 2, 2, 2}, {0, 2, 1, 3});
    for (int oa = 0; oa < 4; ++oa)
      for (int ob = 0; ob < 4; ++ob) {
        double want =
            (tensor(bell[oa], bell[ob]) * global).trace().real();
        CHECK(std::abs(sigma(oa * 4 + ob, oa * 4 + ob).real() - want) <
              1e-10);
      }
  }
}

TEST_CASE("encode/decode round trip on a small random resource") {
  std::mt19937_64 rng(54);
  PartyWiring w{quantum_system(2), quantum_system(2), quantum_system(2),
                quantum_system(2)};
  Resource r = random_product_resource(w, rng);
  Resource back = apply(sq_decode(Party::A, 2),
                        apply(sq_encode(Party::A, 2), r));
  CHECK(back.wiring == r.wiring);
  CHECK(frob_dist(back.choi.matrix, r.choi.matrix) < 1e-9);
}

TEST_CASE("teleportation correction convention matters at d=3") {
  // A decoder with the uncorrected word X^a Z^b instead of its transpose
  // fails to invert the encoder once d > 2.
  const int d = 3;
  std::vector<CMatrix> kraus;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMatrix bra = CMatrix::Zero(1, d * d);
      bra(0, a * d + b) = 1.0;
      kraus.push_back(tensor(bra, word(d, a, b)));
    }
  LosrTransform good = sq_decode(Party::A, d);
  LosrTransform bad = good;
  bad.branches[0].a.post = choi_from_kraus(kraus);

  std::mt19937_64 rng(55);
  PartyWiring w{quantum_system(2), quantum_system(d), quantum_system(2),
                quantum_system(2)};
  Resource r = random_product_resource(w, rng);
  Resource enc = apply(sq_encode(Party::A, d), r);
  Resource ok = apply(good, enc);
  CHECK(frob_dist(ok.choi.matrix, r.choi.matrix) < 1e-9);
  ChoiOperator wrong = apply_linear(bad, enc.choi, enc.wiring);
  CHECK(frob_dist(wrong.matrix, r.choi.matrix) > 1e-3);
}

TEST_CASE("composition is associative on resources") {
  std::mt19937_64 rng(56);
  PartyWiring w{quantum_system(2), quantum_system(2), quantum_system(2),
                quantum_system(2)};
  Resource r = random_product_resource(w, rng);
  LosrTransform t1 = sq_encode(Party::A, 2);
  PartyWiring w1 = transformed_wiring(t1, w);
  LosrTransform t2 = sq_decode(Party::A, 2);
  LosrTransform t3 = measure_output(Party::B, zbasis_povm());

  LosrTransform left = compose(t3, compose(t2, t1, w), w);
  LosrTransform right = compose(compose(t3, t2, w1), t1, w);
  CMatrix a = apply(left, r).choi.matrix;
  CMatrix b = apply(right, r).choi.matrix;
  CMatrix c = apply(t3, apply(t2, apply(t1, r))).choi.matrix;
  CHECK(frob_dist(a, b) < 1e-10);
  CHECK(frob_dist(a, c) < 1e-10);
}

TEST_CASE("mixtures act linearly") {
  std::mt19937_64 rng(57);
  PartyWiring w{quantum_system(2), quantum_system(2), quantum_system(2),
                quantum_system(2)};
  Resource r = random_product_resource(w, rng);
  LosrTransform t1 = measure_output(Party::A, zbasis_povm());
  std::vector<CMatrix> xb = {(identity(2) + pauli_x()) / 2.0,
                             (identity(2) - pauli_x()) / 2.0};
  LosrTransform t2 = measure_output(Party::A, xb);
  LosrTransform mix = mixture({{0.25, t1}, {0.75, t2}});
  CMatrix got = apply(mix, r).choi.matrix;
  CMatrix want = 0.25 * apply(t1, r).choi.matrix +
                 0.75 * apply(t2, r).choi.matrix;
  CHECK(frob_dist(got, want) < 1e-11);
}

TEST_CASE("pull_observable is the adjoint of apply_linear") {
  std::mt19937_64 rng(58);
  PartyWiring w{quantum_system(2), quantum_system(2), quantum_system(2),
                quantum_system(2)};
  std::vector<std::vector<CMatrix>> family = {
      zbasis_povm(),
      {(identity(2) + pauli_x()) / 2.0, (identity(2) - pauli_x()) / 2.0}};
  LosrTransform t = measure_output_family(Party::A, family);
  PartyWiring nw = transformed_wiring(t, w);

  ChoiOperator j{random_hermitian(w.dim_out() * w.dim_in(), rng),
                 w.dim_out(), w.dim_in()};
  ChoiOperator y{random_hermitian(nw.dim_out() * nw.dim_in(), rng),
                 nw.dim_out(), nw.dim_in()};
  ChoiOperator tj = apply_linear(t, j, w);
  ChoiOperator py = pull_observable(t, y, w);
  Complex lhs = (y.matrix.adjoint() * tj.matrix).trace();
  Complex rhs = (py.matrix.adjoint() * j.matrix).trace();
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("classical wirings act on boxes as function composition") {
  CorrelationTable pr = pr_box();
  Resource r = from_box(pr);
  // x' -> x = x', outcome a' = a xor x'.
  std::vector<int> f = {0, 1};
  std::vector<std::vector<int>> ga = {{0, 1}, {1, 0}};
  std::vector<std::vector<int>> gid = {{0, 0}, {1, 1}};
  LosrTransform t = box_wiring_transform(f, ga, 2, 2, f, gid, 2, 2);
  Resource out = apply(t, r);
  CorrelationTable q = to_box(out);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          CHECK(q.at(a ^ x, b, x, y) ==
                doctest::Approx(pr.at(a, b, x, y)).epsilon(1e-12));
}

TEST_CASE("entanglement assistance appends a quantum output factor") {
  std::mt19937_64 rng(59);
  PartyWiring w{quantum_system(2), quantum_system(2), quantum_system(2),
                quantum_system(2)};
  Resource r = random_product_resource(w, rng);
  LosrTransform t = entangle_assist(Party::A, max_entangled_ket(2), 2, 2);
  Resource out = apply(t, r);
  CHECK(out.wiring.a_in == trivial_system());
  CHECK(out.wiring.a_out == quantum_system(4));
  CHECK(validate(out).empty());
}

TEST_CASE("encoding a classical-output party is rejected") {
  Resource box = from_box(pr_box());
  CHECK_THROWS(apply(sq_encode(Party::A, 2), box));
}
