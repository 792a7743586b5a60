#include "losr/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace losr {

namespace {

System composite(Kind k, int dim) {
  return dim == 1 ? trivial_system() : System{k, dim};
}

CMatrix mat_pow(const CMatrix& m, int n) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) out = out * m;
  return out;
}

CMatrix pauli_word(int d, int a, int b) {
  return mat_pow(shift_op(d), a) * mat_pow(clock_op(d), b);
}

void check_povm(const std::vector<CMatrix>& povm) {
  if (povm.empty()) throw std::invalid_argument("empty POVM");
  const int d = static_cast<int>(povm.front().rows());
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& e : povm) {
    if (e.rows() != d || e.cols() != d)
      throw std::invalid_argument("POVM effect dimension mismatch");
    if (!is_hermitian(e) || min_eigval(e) < -kDefaultTol)
      throw std::invalid_argument("POVM effect not PSD");
    sum += e;
  }
  if ((sum - CMatrix::Identity(d, d)).norm() > 1e-8)
    throw std::invalid_argument("POVM effects do not sum to identity");
}

ChoiOperator measurement_choi(const std::vector<CMatrix>& effects, int d) {
  const int n = static_cast<int>(effects.size());
  return choi_from_map(
      [&](const CMatrix& rho) {
        CMatrix out = CMatrix::Zero(n, n);
        for (int a = 0; a < n; ++a) out(a, a) = (effects[a] * rho).trace();
        return out;
      },
      d, n);
}

LosrTransform single_party(Party party, LocalComb comb) {
  Branch b;
  (party == Party::A ? b.a : b.b) = std::move(comb);
  return {{std::move(b)}};
}

void check_branch_probs(const LosrTransform& t) {
  if (t.branches.empty())
    throw std::invalid_argument("transform has no branches");
  double sum = 0.0;
  for (const auto& b : t.branches) {
    if (b.p < -1e-12) throw std::invalid_argument("negative branch weight");
    sum += b.p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("branch weights do not sum to 1");
}

}  // namespace

System apply_change(const SystemChange& c, const System& old) {
  switch (c.mode) {
    case SystemChange::Mode::Keep:
      return old;
    case SystemChange::Mode::Set:
      return c.sys;
    case SystemChange::Mode::PrependFactor:
      return composite(promote(c.sys.kind, old.kind), c.sys.dim * old.dim);
    case SystemChange::Mode::AppendFactor:
      return composite(promote(old.kind, c.sys.kind), old.dim * c.sys.dim);
    case SystemChange::Mode::DropFront:
      if (c.sys.dim <= 0 || old.dim % c.sys.dim != 0)
        throw std::invalid_argument("cannot drop leading factor: bad dims");
      return composite(old.kind, old.dim / c.sys.dim);
  }
  throw std::logic_error("bad SystemChange mode");
}

MaterializedComb materialize(const LocalComb& comb, const System& res_in,
                             const System& res_out) {
  if (comb.expect_out.check) {
    if (res_out.kind != comb.expect_out.kind ||
        (comb.expect_out.dim > 0 && res_out.dim != comb.expect_out.dim))
      throw std::invalid_argument("comb expects a different output system");
  }
  const int m = comb.memory;
  if (m < 1) throw std::invalid_argument("memory dim < 1");

  MaterializedComb out;
  out.memory = m;
  switch (comb.pre_plan) {
    case PrePlan::Identity:
      if (m != 1) throw std::invalid_argument("identity pre needs memory 1");
      out.pre = choi_identity(res_in.dim);
      break;
    case PrePlan::Explicit:
      if (comb.pre.dim_out != res_in.dim * m)
        throw std::invalid_argument("pre output != resource input x memory");
      out.pre = comb.pre;
      break;
    case PrePlan::RouteFactorToMemory: {
      // (M, res_in) -> (res_in, M) by a swap unitary; M lands in memory.
      CMatrix u = factor_perm_matrix({m, res_in.dim}, {1, 0});
      out.pre = choi_from_kraus({u});
      break;
    }
    case PrePlan::FeedEntangledHalf: {
      if (res_in.dim % m != 0)
        throw std::invalid_argument("input has no leading factor of memory dim");
      const int rem = res_in.dim / m;
      const CMatrix pair = proj(max_entangled_ket(m));  // on (slot, memory)
      out.pre = choi_from_map(
          [&](const CMatrix& rho) {
            CMatrix t = tensor(pair, rho);  // (slot, mem, rem)
            return permute_factors(t, {m, m, rem}, {0, 2, 1});
          },
          rem, res_in.dim * m);
      break;
    }
  }

  switch (comb.post_plan) {
    case PostPlan::Identity:
      if (m != 1) throw std::invalid_argument("identity post needs memory 1");
      out.post = choi_identity(res_out.dim);
      break;
    case PostPlan::AppendMemoryToOutput:
      out.post = choi_identity(res_out.dim * m);
      break;
    case PostPlan::Explicit:
      if (comb.post.dim_in != res_out.dim * m)
        throw std::invalid_argument("post input != resource output x memory");
      out.post = comb.post;
      break;
  }

  out.new_in = apply_change(comb.in_change, res_in);
  out.new_out = apply_change(comb.out_change, res_out);
  if (out.pre.dim_in != out.new_in.dim || out.post.dim_out != out.new_out.dim)
    throw std::invalid_argument("comb dims inconsistent with system change");
  return out;
}

PartyWiring transformed_wiring(const LosrTransform& t, const PartyWiring& w) {
  if (t.branches.empty())
    throw std::invalid_argument("transform has no branches");
  const auto& b = t.branches.front();
  auto ma = materialize(b.a, w.a_in, w.a_out);
  auto mb = materialize(b.b, w.b_in, w.b_out);
  return {ma.new_in, ma.new_out, mb.new_in, mb.new_out};
}

namespace {

void index_decode(int idx, const std::vector<int>& dims, std::vector<int>& d) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    d[k] = idx % dims[k];
    idx /= dims[k];
  }
}

int index_encode(const std::vector<int>& d, const std::vector<int>& dims) {
  int idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + d[k];
  return idx;
}

// Index form of factor_perm_matrix: map[j] = i with P(i, j) = 1.
std::vector<int> perm_indices(const std::vector<int>& dims,
                              const std::vector<int>& perm) {
  const int n = static_cast<int>(dims.size());
  int total = 1;
  for (int d : dims) total *= d;
  std::vector<int> out_dims(n);
  for (int k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  std::vector<int> map(total), in(n), out(n);
  for (int j = 0; j < total; ++j) {
    index_decode(j, dims, in);
    for (int k = 0; k < n; ++k) out[k] = in[perm[k]];
    map[j] = index_encode(out, out_dims);
  }
  return map;
}

// Per-branch contraction data so that the branch superoperator is
// sum_s outer[s] * K(resource) * inner[s], without ever forming the big
// (resource (x) memory) superoperator or dense permutations.
struct BranchContraction {
  double p = 1.0;
  std::vector<CMatrix> outer, inner;
  MaterializedComb ma, mb;
};

BranchContraction build_contraction(const Branch& br, const PartyWiring& w) {
  BranchContraction bc;
  bc.p = br.p;
  bc.ma = materialize(br.a, w.a_in, w.a_out);
  bc.mb = materialize(br.b, w.b_in, w.b_out);
  const auto& ma = bc.ma;
  const auto& mb = bc.mb;
  const int mm = ma.memory * mb.memory;
  const int din = w.dim_in(), dout = w.dim_out();

  CMatrix kpre =
      superop_tensor(choi_to_superop(ma.pre), ma.pre.dim_out, ma.pre.dim_in,
                     choi_to_superop(mb.pre), mb.pre.dim_out, mb.pre.dim_in);
  CMatrix kpost = superop_tensor(
      choi_to_superop(ma.post), ma.post.dim_out, ma.post.dim_in,
      choi_to_superop(mb.post), mb.post.dim_out, mb.post.dim_in);

  // (A_in, memA, B_in, memB) -> (A_in, B_in, memA, memB): permute kpre rows.
  auto pi1 = perm_indices({w.a_in.dim, ma.memory, w.b_in.dim, mb.memory},
                          {0, 2, 1, 3});
  const int dpre = din * mm;
  CMatrix b(dpre * dpre, kpre.cols());
  for (int r1 = 0; r1 < dpre; ++r1)
    for (int r2 = 0; r2 < dpre; ++r2)
      b.row(pi1[r1] * dpre + pi1[r2]) = kpre.row(r1 * dpre + r2);

  // kpost reads (A_out, memA, B_out, memB); reindex its columns by the
  // middle ordering (A_out, B_out, memA, memB).
  auto pi2 = perm_indices({w.a_out.dim, ma.memory, w.b_out.dim, mb.memory},
                          {0, 2, 1, 3});
  const int dpost = dout * mm;
  CMatrix a(kpost.rows(), dpost * dpost);
  for (int c1 = 0; c1 < dpost; ++c1)
    for (int c2 = 0; c2 < dpost; ++c2)
      a.col(pi2[c1] * dpost + pi2[c2]) = kpost.col(c1 * dpost + c2);

  // The middle factor is (resource superop (x) memory identity) with the
  // factor interleave of superop_tensor; group its row/column indices by
  // the shared memory index s and absorb the grouping into a and b.
  auto src_of = [](const std::vector<int>& dims, int i) {
    // reindex source for perm {0,2,1,3}: digits of i in permuted dims land
    // at positions {0,2,1,3} of the source.
    std::vector<int> pd = {dims[0], dims[2], dims[1], dims[3]};
    std::vector<int> dg(4), sg(4);
    index_decode(i, pd, dg);
    sg[0] = dg[0];
    sg[2] = dg[1];
    sg[1] = dg[2];
    sg[3] = dg[3];
    return index_encode(sg, dims);
  };
  const int mm2 = mm * mm;
  bc.outer.assign(mm2, CMatrix(a.rows(), dout * dout));
  bc.inner.assign(mm2, CMatrix(din * din, b.cols()));
  std::vector<int> rdims = {dout, dout, mm, mm}, cdims = {din, din, mm, mm};
  for (int i = 0; i < dpost * dpost; ++i) {
    const int src = src_of(rdims, i);
    bc.outer[src % mm2].col(src / mm2) = a.col(i);
  }
  for (int jx = 0; jx < dpre * dpre; ++jx) {
    const int src = src_of(cdims, jx);
    bc.inner[src % mm2].row(src / mm2) = b.row(jx);
  }
  return bc;
}

}  // namespace

ChoiOperator apply_linear(const LosrTransform& t, const ChoiOperator& j,
                          const PartyWiring& w) {
  if (j.dim_out != w.dim_out() || j.dim_in != w.dim_in())
    throw std::invalid_argument("operator does not match wiring dims");
  const PartyWiring nw = transformed_wiring(t, w);
  const CMatrix kr = choi_to_superop(j);

  CMatrix acc = CMatrix::Zero(nw.dim_out() * nw.dim_out(),
                              nw.dim_in() * nw.dim_in());
  for (const auto& br : t.branches) {
    BranchContraction bc = build_contraction(br, w);
    if (!(bc.ma.new_in == nw.a_in) || !(bc.ma.new_out == nw.a_out) ||
        !(bc.mb.new_in == nw.b_in) || !(bc.mb.new_out == nw.b_out))
      throw std::invalid_argument("branches disagree on the new wiring");
    for (size_t s = 0; s < bc.outer.size(); ++s)
      acc += bc.p * ((bc.outer[s] * kr) * bc.inner[s]);
  }
  return superop_to_choi(acc, nw.dim_out(), nw.dim_in());
}

ChoiOperator pull_observable(const LosrTransform& t, const ChoiOperator& y,
                             const PartyWiring& w) {
  const PartyWiring nw = transformed_wiring(t, w);
  if (y.dim_out != nw.dim_out() || y.dim_in != nw.dim_in())
    throw std::invalid_argument("observable does not match transformed dims");
  const CMatrix ky = choi_to_superop(y);

  CMatrix acc =
      CMatrix::Zero(w.dim_out() * w.dim_out(), w.dim_in() * w.dim_in());
  for (const auto& br : t.branches) {
    BranchContraction bc = build_contraction(br, w);
    for (size_t s = 0; s < bc.outer.size(); ++s)
      acc += bc.p * (bc.outer[s].adjoint() * ky * bc.inner[s].adjoint());
  }
  return superop_to_choi(acc, w.dim_out(), w.dim_in());
}

Resource apply(const LosrTransform& t, const Resource& r) {
  check_branch_probs(t);
  Resource out;
  out.wiring = transformed_wiring(t, r.wiring);
  out.choi = apply_linear(t, r.choi, r.wiring);
  require_valid(out, 1e-7);
  return out;
}

LosrTransform compose(const LosrTransform& t2, const LosrTransform& t1,
                      const PartyWiring& w) {
  check_branch_probs(t1);
  check_branch_probs(t2);
  const PartyWiring w1 = transformed_wiring(t1, w);

  auto merge = [](const MaterializedComb& c1, const MaterializedComb& c2) {
    LocalComb out;
    out.memory = c1.memory * c2.memory;
    ChoiOperator idm2 = choi_identity(c2.memory);
    out.pre_plan = PrePlan::Explicit;
    out.pre = compose_sequential(compose_parallel(c1.pre, idm2), c2.pre);
    out.post_plan = PostPlan::Explicit;
    out.post = compose_sequential(c2.post, compose_parallel(c1.post, idm2));
    out.in_change = {SystemChange::Mode::Set, c2.new_in};
    out.out_change = {SystemChange::Mode::Set, c2.new_out};
    return out;
  };

  LosrTransform out;
  for (const auto& b1 : t1.branches) {
    auto m1a = materialize(b1.a, w.a_in, w.a_out);
    auto m1b = materialize(b1.b, w.b_in, w.b_out);
    for (const auto& b2 : t2.branches) {
      auto m2a = materialize(b2.a, w1.a_in, w1.a_out);
      auto m2b = materialize(b2.b, w1.b_in, w1.b_out);
      Branch b;
      b.p = b1.p * b2.p;
      b.a = merge(m1a, m2a);
      b.b = merge(m1b, m2b);
      out.branches.push_back(std::move(b));
    }
  }
  return out;
}

LosrTransform mixture(
    const std::vector<std::pair<double, LosrTransform>>& ts) {
  double sum = 0.0;
  LosrTransform out;
  for (const auto& [wgt, t] : ts) {
    if (wgt < -1e-12) throw std::invalid_argument("negative mixture weight");
    check_branch_probs(t);
    sum += wgt;
    for (const auto& b : t.branches) {
      Branch nb = b;
      nb.p *= wgt;
      out.branches.push_back(std::move(nb));
    }
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("mixture weights do not sum to 1");
  return out;
}

LosrTransform identity_transform() { return {{Branch{}}}; }

LosrTransform measure_output(Party party, const std::vector<CMatrix>& povm) {
  check_povm(povm);
  const int d = static_cast<int>(povm.front().rows());
  const int n = static_cast<int>(povm.size());
  LocalComb c;
  c.post_plan = PostPlan::Explicit;
  c.post = measurement_choi(povm, d);
  c.out_change = {SystemChange::Mode::Set, composite(Kind::Classical, n)};
  c.expect_out = {true, Kind::Quantum, d};
  return single_party(party, std::move(c));
}

LosrTransform measure_output_family(
    Party party, const std::vector<std::vector<CMatrix>>& povms) {
  if (povms.empty()) throw std::invalid_argument("empty POVM family");
  const int nx = static_cast<int>(povms.size());
  const int na = static_cast<int>(povms.front().size());
  const int d = static_cast<int>(povms.front().front().rows());
  for (const auto& povm : povms) {
    if (static_cast<int>(povm.size()) != na)
      throw std::invalid_argument("POVM family outcome counts differ");
    check_povm(povm);
  }
  LocalComb c;
  c.memory = nx;
  c.in_change = {SystemChange::Mode::PrependFactor, classical_system(nx)};
  c.pre_plan = PrePlan::RouteFactorToMemory;
  c.post_plan = PostPlan::Explicit;
  c.post = choi_from_map(
      [&](const CMatrix& rho) {  // rho on (res_out d, setting nx)
        CMatrix out = CMatrix::Zero(na, na);
        for (int a = 0; a < na; ++a) {
          Complex v = 0.0;
          for (int x = 0; x < nx; ++x) {
            CMatrix sel = CMatrix::Zero(nx, nx);
            sel(x, x) = 1.0;
            v += (tensor(povms[x][a], sel) * rho).trace();
          }
          out(a, a) = v;
        }
        return out;
      },
      d * nx, na);
  c.out_change = {SystemChange::Mode::Set, composite(Kind::Classical, na)};
  c.expect_out = {true, Kind::Quantum, d};
  return single_party(party, std::move(c));
}

LosrTransform prepare_from_classical(Party party,
                                     const std::vector<CMatrix>& states) {
  if (states.empty()) throw std::invalid_argument("empty state list");
  const int d = static_cast<int>(states.front().rows());
  for (const auto& s : states) {
    if (s.rows() != d || s.cols() != d)
      throw std::invalid_argument("state dimension mismatch");
    if (!is_hermitian(s) || min_eigval(s) < -kDefaultTol ||
        std::abs(s.trace().real() - 1.0) > 1e-8)
      throw std::invalid_argument("not a unit-trace density matrix");
  }
  const int n = static_cast<int>(states.size());
  LocalComb c;
  c.pre_plan = PrePlan::Explicit;
  c.pre = choi_from_map(
      [&](const CMatrix& rho) {
        CMatrix out = CMatrix::Zero(d, d);
        for (int x = 0; x < n; ++x) out += rho(x, x) * states[x];
        return out;
      },
      n, d);
  c.in_change = {SystemChange::Mode::Set, composite(Kind::Classical, n)};
  return single_party(party, std::move(c));
}

LosrTransform entangle_assist(Party party, const CVector& phi, int d1,
                              int d2) {
  if (phi.size() != d1 * d2)
    throw std::invalid_argument("entangle_assist: dims do not match phi");
  if (std::abs(phi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("entangle_assist: phi not normalized");
  LocalComb c;
  c.memory = d2;
  c.pre_plan = PrePlan::Explicit;
  c.pre = choi_prepare(proj(phi), 1);  // (res_in d1, memory d2)
  c.post_plan = PostPlan::AppendMemoryToOutput;
  c.in_change = {SystemChange::Mode::Set, trivial_system()};
  c.out_change = {SystemChange::Mode::AppendFactor, quantum_system(d2)};
  return single_party(party, std::move(c));
}

LosrTransform stochastic_input(Party party, const Eigen::MatrixXd& kernel) {
  for (int x = 0; x < kernel.cols(); ++x) {
    double s = 0.0;
    for (int a = 0; a < kernel.rows(); ++a) {
      if (kernel(a, x) < -1e-12)
        throw std::invalid_argument("stochastic kernel has negative entry");
      s += kernel(a, x);
    }
    if (std::abs(s - 1.0) > 1e-9)
      throw std::invalid_argument("stochastic kernel column sum != 1");
  }
  LocalComb c;
  c.pre_plan = PrePlan::Explicit;
  c.pre = choi_classical(kernel);
  c.in_change = {SystemChange::Mode::Set,
                 composite(Kind::Classical, static_cast<int>(kernel.cols()))};
  return single_party(party, std::move(c));
}

LosrTransform sq_encode(Party party, int d) {
  if (d < 2) throw std::invalid_argument("sq_encode needs dim >= 2");
  std::vector<CMatrix> bell;
  const CVector omega = max_entangled_ket(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      bell.push_back(proj(tensor(identity(d), pauli_word(d, a, b)) * omega));
  LocalComb c;
  c.memory = d;
  c.in_change = {SystemChange::Mode::PrependFactor, quantum_system(d)};
  c.pre_plan = PrePlan::RouteFactorToMemory;
  c.post_plan = PostPlan::Explicit;
  c.post = measurement_choi(bell, d * d);
  c.out_change = {SystemChange::Mode::Set, classical_system(d * d)};
  c.expect_out = {true, Kind::Quantum, d};
  return single_party(party, std::move(c));
}

LosrTransform sq_decode(Party party, int d) {
  if (d < 2) throw std::invalid_argument("sq_decode needs dim >= 2");
  std::vector<CMatrix> kraus;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMatrix correction = pauli_word(d, a, b).transpose();
      CMatrix bra = CMatrix::Zero(1, d * d);
      bra(0, a * d + b) = 1.0;
      kraus.push_back(tensor(bra, correction));  // (outcome, memory) -> out
    }
  LocalComb c;
  c.memory = d;
  c.in_change = {SystemChange::Mode::DropFront, quantum_system(d)};
  c.pre_plan = PrePlan::FeedEntangledHalf;
  c.post_plan = PostPlan::Explicit;
  c.post = choi_from_kraus(kraus);
  c.out_change = {SystemChange::Mode::Set, quantum_system(d)};
  c.expect_out = {true, Kind::Classical, d * d};
  return single_party(party, std::move(c));
}

LocalComb classical_wiring_comb(const std::vector<int>& f,
                                const std::vector<std::vector<int>>& g, int nx,
                                int n_out) {
  const int nxp = static_cast<int>(f.size());
  const int na = static_cast<int>(g.size());
  if (nxp < 1 || na < 1 || n_out < 1)
    throw std::invalid_argument("empty wiring maps");
  for (int v : f)
    if (v < 0 || v >= nx) throw std::invalid_argument("input map out of range");
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != nxp)
      throw std::invalid_argument("output map setting count mismatch");
    for (int v : row)
      if (v < 0 || v >= n_out)
        throw std::invalid_argument("output map out of range");
  }
  LocalComb c;
  c.memory = nxp;
  c.in_change = {SystemChange::Mode::Set, composite(Kind::Classical, nxp)};
  c.pre_plan = PrePlan::Explicit;
  c.pre = choi_from_map(
      [&](const CMatrix& rho) {  // x' -> (f(x'), remembered x')
        CMatrix out = CMatrix::Zero(nx * nxp, nx * nxp);
        for (int xp = 0; xp < nxp; ++xp) {
          int idx = f[xp] * nxp + xp;
          out(idx, idx) += rho(xp, xp);
        }
        return out;
      },
      nxp, nx * nxp);
  c.post_plan = PostPlan::Explicit;
  c.post = choi_from_map(
      [&](const CMatrix& rho) {  // (a, x') -> g[a][x']
        CMatrix out = CMatrix::Zero(n_out, n_out);
        for (int a = 0; a < na; ++a)
          for (int xp = 0; xp < nxp; ++xp) {
            int idx = a * nxp + xp;
            out(g[a][xp], g[a][xp]) += rho(idx, idx);
          }
        return out;
      },
      na * nxp, n_out);
  c.out_change = {SystemChange::Mode::Set, composite(Kind::Classical, n_out)};
  c.expect_out = {true, Kind::Classical, na};
  return c;
}

LosrTransform box_wiring_transform(const std::vector<int>& fa,
                                   const std::vector<std::vector<int>>& ga,
                                   int nxa, int na_out,
                                   const std::vector<int>& fb,
                                   const std::vector<std::vector<int>>& gb,
                                   int nxb, int nb_out) {
  Branch b;
  b.a = classical_wiring_comb(fa, ga, nxa, na_out);
  b.b = classical_wiring_comb(fb, gb, nxb, nb_out);
  return {{std::move(b)}};
}

}  // namespace losr
