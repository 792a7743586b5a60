#include "losr/game.hpp"

#include "losr/freeset.hpp"

#include <cmath>
#include <stdexcept>

namespace losr {

namespace {

// Hermitian matrices as real vectors of dim d^2, isometric up to scaling.
Eigen::VectorXd herm_vec(const CMatrix& m) {
  const int d = static_cast<int>(m.rows());
  Eigen::VectorXd v(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) v(k++) = m(i, i).real();
  const double s = std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      v(k++) = s * m(i, j).real();
      v(k++) = s * m(i, j).imag();
    }
  return v;
}

CMatrix inv_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < 1e-12)
      throw std::invalid_argument("frame operator is singular");
    ev(i) = 1.0 / std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<CMatrix> delta_preps(int n) {
  std::vector<CMatrix> out;
  for (int x = 0; x < n; ++x) out.push_back(proj(basis_ket(x, n)));
  return out;
}

CMatrix dephase_classical(const CMatrix& y, const PartyWiring& w) {
  CMatrix out = y;
  const auto dims = w.factor_dims();
  const System* systems[4] = {&w.a_out, &w.b_out, &w.a_in, &w.b_in};
  for (int f = 0; f < 4; ++f)
    if (systems[f]->kind == Kind::Classical)
      out = dephase_factor(out, dims, f);
  return out;
}

}  // namespace

std::vector<CMatrix> spanning_preparations(int d) {
  std::vector<CMatrix> out = delta_preps(d);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CVector plus = (basis_ket(j, d) + basis_ket(k, d)) / std::sqrt(2.0);
      CVector plusi =
          (basis_ket(j, d) + Complex(0, 1) * basis_ket(k, d)) / std::sqrt(2.0);
      out.push_back(proj(plus));
      out.push_back(proj(plusi));
    }
  return out;
}

std::vector<CMatrix> spanning_povm(int d) {
  auto family = spanning_preparations(d);
  CMatrix frame = CMatrix::Zero(d, d);
  for (const auto& s : family) frame += s;
  CMatrix t = inv_sqrt(frame);
  std::vector<CMatrix> out;
  for (const auto& s : family) out.push_back(t * s * t);
  return out;
}

bool spans_operator_space(const std::vector<CMatrix>& ops, int d,
                          bool diagonal) {
  const int need = diagonal ? d : d * d;
  Eigen::MatrixXd s(static_cast<int>(ops.size()), need);
  for (size_t i = 0; i < ops.size(); ++i) {
    if (diagonal)
      for (int j = 0; j < d; ++j) s(static_cast<int>(i), j) = ops[i](j, j).real();
    else
      s.row(static_cast<int>(i)) = herm_vec(ops[i]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(s);
  qr.setThreshold(1e-8);
  return qr.rank() == need;
}

Analyzer default_analyzer(const PartyWiring& w) {
  Analyzer z;
  auto preps = [](const System& s) -> std::vector<CMatrix> {
    switch (s.kind) {
      case Kind::Trivial: return {CMatrix::Ones(1, 1)};
      case Kind::Classical: return delta_preps(s.dim);
      case Kind::Quantum: return spanning_preparations(s.dim);
    }
    throw std::logic_error("bad kind");
  };
  auto povm = [](const System& s) -> std::vector<CMatrix> {
    switch (s.kind) {
      case Kind::Trivial: return {CMatrix::Ones(1, 1)};
      case Kind::Classical: return delta_preps(s.dim);
      case Kind::Quantum: return spanning_povm(s.dim);
    }
    throw std::logic_error("bad kind");
  };
  z.prep_a = preps(w.a_in);
  z.prep_b = preps(w.b_in);
  z.povm_a = povm(w.a_out);
  z.povm_b = povm(w.b_out);
  z.prep_a_complete = spans_operator_space(z.prep_a, w.a_in.dim,
                                           w.a_in.kind != Kind::Quantum);
  z.prep_b_complete = spans_operator_space(z.prep_b, w.b_in.dim,
                                           w.b_in.kind != Kind::Quantum);
  z.povm_a_complete = spans_operator_space(z.povm_a, w.a_out.dim,
                                           w.a_out.kind != Kind::Quantum);
  z.povm_b_complete = spans_operator_space(z.povm_b, w.b_out.dim,
                                           w.b_out.kind != Kind::Quantum);
  return z;
}

PayoffTable PayoffTable::zeros(int na, int nb, int nx, int ny) {
  PayoffTable t;
  t.na = na;
  t.nb = nb;
  t.nx = nx;
  t.ny = ny;
  t.f.assign(size_t(na) * nb * nx * ny, 0.0);
  return t;
}

CorrelationTable correlations(const Analyzer& z, const Resource& r) {
  const int nx = static_cast<int>(z.prep_a.size());
  const int ny = static_cast<int>(z.prep_b.size());
  const int na = static_cast<int>(z.povm_a.size());
  const int nb = static_cast<int>(z.povm_b.size());
  if (z.prep_a.front().rows() != r.wiring.a_in.dim ||
      z.prep_b.front().rows() != r.wiring.b_in.dim ||
      z.povm_a.front().rows() != r.wiring.a_out.dim ||
      z.povm_b.front().rows() != r.wiring.b_out.dim)
    throw std::invalid_argument("analyzer does not match the resource wiring");

  CorrelationTable t = CorrelationTable::zeros(na, nb, nx, ny);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      CMatrix sigma = choi_apply(r.choi, tensor(z.prep_a[x], z.prep_b[y]));
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          t.at(a, b, x, y) =
              (tensor(z.povm_a[a], z.povm_b[b]) * sigma).trace().real();
    }
  return t;
}

double evaluate(const Game& g, const Resource& r) {
  if (!(r.wiring == g.wiring))
    throw std::invalid_argument(
        "game/resource type mismatch: " + to_string(r.wiring.global_type()) +
        " vs " + to_string(g.wiring.global_type()) +
        " (convert the resource explicitly first)");
  CorrelationTable p = correlations(g.analyzer, r);
  if (p.na != g.payoff.na || p.nb != g.payoff.nb || p.nx != g.payoff.nx ||
      p.ny != g.payoff.ny)
    throw std::invalid_argument("payoff table does not match the analyzer");
  double v = 0.0;
  for (size_t i = 0; i < p.p.size(); ++i) v += g.payoff.f[i] * p.p[i];
  return v;
}

CMatrix game_observable(const Game& g) {
  const auto& z = g.analyzer;
  const int side = g.wiring.dim_out() * g.wiring.dim_in();
  CMatrix y = CMatrix::Zero(side, side);
  for (int x = 0; x < g.payoff.nx; ++x)
    for (int yy = 0; yy < g.payoff.ny; ++yy) {
      CMatrix in_t =
          tensor(z.prep_a[x], z.prep_b[yy]).transpose();
      for (int a = 0; a < g.payoff.na; ++a)
        for (int b = 0; b < g.payoff.nb; ++b) {
          const double f = g.payoff.at(a, b, x, yy);
          if (f == 0.0) continue;
          y += f * tensor(tensor(z.povm_a[a], z.povm_b[b]), in_t);
        }
    }
  return y;
}

Game chsh_game() {
  Game g;
  g.wiring = {classical_system(2), classical_system(2), classical_system(2),
              classical_system(2)};
  g.analyzer = default_analyzer(g.wiring);
  g.payoff = PayoffTable::zeros(2, 2, 2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          if ((a ^ b) == (x & y)) g.payoff.at(a, b, x, y) = 0.25;
  return g;
}

Game witness_game_on_states(const CMatrix& w, int dim_a, int dim_b) {
  if (w.rows() != dim_a * dim_b || w.cols() != dim_a * dim_b)
    throw std::invalid_argument("witness dimension mismatch");
  if (!is_hermitian(w, 1e-9))
    throw std::invalid_argument("witness is not Hermitian");
  Game g;
  g.wiring = {trivial_system(), quantum_system(dim_a), trivial_system(),
              quantum_system(dim_b)};
  g.analyzer = default_analyzer(g.wiring);
  const int na = static_cast<int>(g.analyzer.povm_a.size());
  const int nb = static_cast<int>(g.analyzer.povm_b.size());

  const int d = dim_a * dim_b;
  Eigen::MatrixXd s(d * d, na * nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      s.col(a * nb + b) =
          herm_vec(tensor(g.analyzer.povm_a[a], g.analyzer.povm_b[b]));
  Eigen::VectorXd coeff =
      s.completeOrthogonalDecomposition().solve(herm_vec(w));
  if ((s * coeff - herm_vec(w)).norm() > 1e-9)
    throw std::runtime_error("POVM products failed to span the witness");

  g.payoff = PayoffTable::zeros(na, nb, 1, 1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) g.payoff.at(a, b, 0, 0) = coeff(a * nb + b);
  return g;
}

Game pushforward(const Game& g, const LosrTransform& enc,
                 const LosrTransform& dec, std::uint64_t probe_seed) {
  const PartyWiring w = g.wiring;
  const PartyWiring nw = transformed_wiring(enc, w);

  // The decoder must undo the encoder on a probe set before we trust it.
  std::mt19937_64 rng(probe_seed);
  for (int k = 0; k < 3; ++k) {
    ChoiOperator ja = random_cptp(w.a_in.dim, w.a_out.dim, rng);
    ChoiOperator jb = random_cptp(w.b_in.dim, w.b_out.dim, rng);
    Resource probe{w, compose_parallel(ja, jb)};
    probe.choi.matrix = dephase_classical(probe.choi.matrix, w);
    Resource back = apply(dec, apply(enc, probe));
    if (frob_dist(back.choi.matrix, probe.choi.matrix) > 1e-7)
      throw std::invalid_argument("decoder does not invert the encoder");
  }

  CMatrix y = game_observable(g);
  ChoiOperator yop{std::move(y), w.dim_out(), w.dim_in()};
  ChoiOperator pulled = pull_observable(dec, yop, nw);
  CMatrix target = (pulled.matrix + pulled.matrix.adjoint()) / 2.0;
  target = dephase_classical(target, nw);

  Game out;
  out.wiring = nw;
  out.analyzer = default_analyzer(nw);
  const auto& z = out.analyzer;
  const int na = static_cast<int>(z.povm_a.size());
  const int nb = static_cast<int>(z.povm_b.size());
  const int nx = static_cast<int>(z.prep_a.size());
  const int ny = static_cast<int>(z.prep_b.size());

  const int side = nw.dim_out() * nw.dim_in();
  Eigen::MatrixXd s(side * side, na * nb * nx * ny);
  int col = 0;
  for (int x = 0; x < nx; ++x)
    for (int yy = 0; yy < ny; ++yy) {
      CMatrix in_t = tensor(z.prep_a[x], z.prep_b[yy]).transpose();
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          s.col(col++) = herm_vec(
              tensor(tensor(z.povm_a[a], z.povm_b[b]), in_t));
    }
  Eigen::VectorXd rhs = herm_vec(target);
  Eigen::VectorXd coeff = s.completeOrthogonalDecomposition().solve(rhs);
  if ((s * coeff - rhs).norm() > 1e-8)
    throw std::runtime_error(
        "analyzer products failed to span the pulled observable");

  out.payoff = PayoffTable::zeros(na, nb, nx, ny);
  col = 0;
  for (int x = 0; x < nx; ++x)
    for (int yy = 0; yy < ny; ++yy)
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) out.payoff.at(a, b, x, yy) = coeff(col++);
  return out;
}

double performance_exact_classical(const Game& g, const Resource& r) {
  for (const System* s :
       {&g.wiring.a_in, &g.wiring.a_out, &g.wiring.b_in, &g.wiring.b_out,
        &r.wiring.a_in, &r.wiring.a_out, &r.wiring.b_in, &r.wiring.b_out})
    if (s->kind != Kind::Classical)
      throw std::invalid_argument("exact performance needs classical types");

  CorrelationTable p = to_box(r);
  auto was = enumerate_wirings(p.nx, p.na, g.wiring.a_in.dim,
                               g.wiring.a_out.dim);
  auto wbs = enumerate_wirings(p.ny, p.nb, g.wiring.b_in.dim,
                               g.wiring.b_out.dim);
  double best = -1e300;
  for (const auto& wa : was)
    for (const auto& wb : wbs) {
      CorrelationTable q =
          wire_box(p, wa, g.wiring.a_out.dim, wb, g.wiring.b_out.dim);
      double v = 0.0;
      for (size_t i = 0; i < q.p.size(); ++i) v += g.payoff.f[i] * q.p[i];
      best = std::max(best, v);
    }
  return best;
}

namespace {

// Projection onto CPTP Choi operators (optionally with a dephased factor)
// by Dykstra between the PSD cone and the affine constraints.
CMatrix proj_cptp(const CMatrix& j0, int dout, int din, bool deph_out,
                  bool deph_in) {
  CMatrix j = (j0 + j0.adjoint()) / 2.0;
  CMatrix corr = CMatrix::Zero(j.rows(), j.cols());
  const CMatrix i_in = CMatrix::Identity(din, din);
  for (int it = 0; it < 300; ++it) {
    CMatrix z = j + corr;
    CMatrix p = proj_psd(z);
    corr = z - p;
    // affine: trace preservation, then classical dephasing
    CMatrix delta = partial_trace(p, {dout, din}, {1}) - i_in;
    j = p - tensor(CMatrix::Identity(dout, dout), delta) / double(dout);
    if (deph_out) j = dephase_factor(j, {dout, din}, 0);
    if (deph_in) j = dephase_factor(j, {dout, din}, 1);
    if ((j - p).norm() < 1e-10 && min_eigval(j) > -1e-10) break;
  }
  return j;
}

struct Converter {
  ChoiOperator choi;
  bool deph_out = false, deph_in = false;
};

LosrTransform converters_to_transform(const Converter& cin_a,
                                      const Converter& cout_a,
                                      const Converter& cin_b,
                                      const Converter& cout_b,
                                      const PartyWiring& gw) {
  Branch br;
  br.a.pre_plan = PrePlan::Explicit;
  br.a.pre = cin_a.choi;
  br.a.post_plan = PostPlan::Explicit;
  br.a.post = cout_a.choi;
  br.a.in_change = {SystemChange::Mode::Set, gw.a_in};
  br.a.out_change = {SystemChange::Mode::Set, gw.a_out};
  br.b.pre_plan = PrePlan::Explicit;
  br.b.pre = cin_b.choi;
  br.b.post_plan = PostPlan::Explicit;
  br.b.post = cout_b.choi;
  br.b.in_change = {SystemChange::Mode::Set, gw.b_in};
  br.b.out_change = {SystemChange::Mode::Set, gw.b_out};
  return {{std::move(br)}};
}

// Identity when dims match, else a measure-and-prepare embedding.
ChoiOperator identity_like(int din, int dout) {
  if (din == dout) return choi_identity(din);
  std::vector<CMatrix> kraus;
  for (int j = 0; j < din; ++j) {
    CMatrix k = CMatrix::Zero(dout, din);
    k(j % dout, j) = 1.0;
    kraus.push_back(std::move(k));
  }
  return choi_from_kraus(kraus);
}

// Index split of the superop_tensor layout: joint row v of a two-party
// superoperator decomposes into each party's superop indices.
void split_indices(int da, int db, std::vector<int>& pa, std::vector<int>& pb) {
  pa.resize(da * db * da * db);
  pb.resize(da * db * da * db);
  int v = 0;
  for (int ra = 0; ra < da; ++ra)
    for (int rb = 0; rb < db; ++rb)
      for (int ca = 0; ca < da; ++ca)
        for (int cb = 0; cb < db; ++cb) {
          pa[v] = ra * da + ca;
          pb[v] = rb * db + cb;
          ++v;
        }
}

}  // namespace

SeesawResult performance_seesaw(const Game& g, const Resource& r,
                                int restarts, int iters, std::uint64_t seed) {
  const PartyWiring& rw = r.wiring;
  const PartyWiring& gw = g.wiring;
  const CMatrix yg = game_observable(g);
  const ChoiOperator ygop{yg, gw.dim_out(), gw.dim_in()};
  const CMatrix ky = choi_to_superop(ygop);
  const CMatrix kres = choi_to_superop(r.choi);

  // Index maps for the joint pre (in converters) and post (out converters).
  std::vector<int> pre_ra, pre_rb, pre_ca, pre_cb;
  split_indices(rw.a_in.dim, rw.b_in.dim, pre_ra, pre_rb);
  split_indices(gw.a_in.dim, gw.b_in.dim, pre_ca, pre_cb);
  std::vector<int> post_ra, post_rb, post_ca, post_cb;
  split_indices(gw.a_out.dim, gw.b_out.dim, post_ra, post_rb);
  split_indices(rw.a_out.dim, rw.b_out.dim, post_ca, post_cb);

  auto pre_joint = [&](const Converter& a, const Converter& b) {
    return superop_tensor(choi_to_superop(a.choi), a.choi.dim_out,
                          a.choi.dim_in, choi_to_superop(b.choi),
                          b.choi.dim_out, b.choi.dim_in);
  };

  auto value_of = [&](const Converter& cin_a, const Converter& cout_a,
                      const Converter& cin_b, const Converter& cout_b) {
    CMatrix kpre = pre_joint(cin_a, cin_b);
    CMatrix kpost = pre_joint(cout_a, cout_b);
    return (ky.adjoint() * kpost * kres * kpre).trace().real();
  };

  // d(value)/d(Choi of the A-side factor) of a joint superoperator pair,
  // given value = Tr[G * joint] and the fixed B-side superop.
  auto grad_a = [](const CMatrix& gmat, const CMatrix& kb,
                   const std::vector<int>& ra, const std::vector<int>& rb,
                   const std::vector<int>& ca, const std::vector<int>& cb,
                   int a_out, int a_in) {
    const int da2 = a_out * a_out, di2 = a_in * a_in;
    CMatrix c = CMatrix::Zero(da2, di2);
    for (int v = 0; v < gmat.cols(); ++v)
      for (int u = 0; u < gmat.rows(); ++u)
        c(ra[v], ca[u]) += gmat(u, v) * kb(rb[v], cb[u]);
    CMatrix cj = superop_to_choi(c, a_out, a_in).matrix.conjugate();
    return CMatrix((cj + cj.adjoint()) / 2.0);
  };

  auto ascend = [&](Converter& target, const CMatrix& h) {
    const double scale = h.norm();
    if (scale < 1e-14) return;
    const double step = 1.0 / scale;
    CMatrix j = target.choi.matrix;
    double best = (h * j).trace().real();
    for (int it = 0; it < 120; ++it) {
      CMatrix jn = proj_cptp(j + step * h, target.choi.dim_out,
                             target.choi.dim_in, target.deph_out,
                             target.deph_in);
      double vn = (h * jn).trace().real();
      if (vn < best + 1e-7 * (1.0 + std::abs(best))) {
        if (vn > best) j = jn;
        break;
      }
      j = jn;
      best = vn;
    }
    target.choi.matrix = j;
  };

  SeesawResult result;
  result.value = -1e300;
  std::mt19937_64 rng(seed);
  for (int restart = 0; restart < restarts; ++restart) {
    Converter cin_a{{}, false, gw.a_in.kind == Kind::Classical};
    Converter cin_b{{}, false, gw.b_in.kind == Kind::Classical};
    Converter cout_a{{}, gw.a_out.kind == Kind::Classical, false};
    Converter cout_b{{}, gw.b_out.kind == Kind::Classical, false};
    if (restart == 0) {
      cin_a.choi = identity_like(gw.a_in.dim, rw.a_in.dim);
      cin_b.choi = identity_like(gw.b_in.dim, rw.b_in.dim);
      cout_a.choi = identity_like(rw.a_out.dim, gw.a_out.dim);
      cout_b.choi = identity_like(rw.b_out.dim, gw.b_out.dim);
    } else {
      cin_a.choi = random_cptp(gw.a_in.dim, rw.a_in.dim, rng);
      cin_b.choi = random_cptp(gw.b_in.dim, rw.b_in.dim, rng);
      cout_a.choi = random_cptp(rw.a_out.dim, gw.a_out.dim, rng);
      cout_b.choi = random_cptp(rw.b_out.dim, gw.b_out.dim, rng);
    }
    for (Converter* c : {&cin_a, &cin_b, &cout_a, &cout_b})
      c->choi.matrix = proj_cptp(c->choi.matrix, c->choi.dim_out,
                                 c->choi.dim_in, c->deph_out, c->deph_in);

    double prev = value_of(cin_a, cout_a, cin_b, cout_b);
    for (int it = 0; it < iters; ++it) {
      {  // input converters: value = Tr[G_pre * kpre_joint]
        CMatrix kpost = pre_joint(cout_a, cout_b);
        CMatrix gpre = ky.adjoint() * kpost * kres;
        ascend(cin_a, grad_a(gpre, choi_to_superop(cin_b.choi), pre_ra,
                             pre_rb, pre_ca, pre_cb, rw.a_in.dim,
                             gw.a_in.dim));
        CMatrix ka = choi_to_superop(cin_a.choi);
        ascend(cin_b, grad_a(gpre, ka, pre_rb, pre_ra, pre_cb, pre_ca,
                             rw.b_in.dim, gw.b_in.dim));
      }
      {  // output converters: value = Tr[G_post * kpost_joint]
        CMatrix kpre = pre_joint(cin_a, cin_b);
        CMatrix gpost = kres * kpre * ky.adjoint();
        ascend(cout_a, grad_a(gpost, choi_to_superop(cout_b.choi), post_ra,
                              post_rb, post_ca, post_cb, gw.a_out.dim,
                              rw.a_out.dim));
        CMatrix ka = choi_to_superop(cout_a.choi);
        ascend(cout_b, grad_a(gpost, ka, post_rb, post_ra, post_cb, post_ca,
                              gw.b_out.dim, rw.b_out.dim));
      }
      double now = value_of(cin_a, cout_a, cin_b, cout_b);
      if (now < prev + 1e-7) {
        prev = std::max(prev, now);
        break;
      }
      prev = now;
    }
    if (prev > result.value) {
      result.value = prev;
      result.transform =
          converters_to_transform(cin_a, cout_a, cin_b, cout_b, gw);
    }
  }
  return result;
}

}  // namespace losr
