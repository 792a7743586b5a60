#include "losr/resource.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace losr {

namespace {

void push_if(std::vector<Violation>& v, const std::string& check, double mag,
             double tol) {
  if (mag > tol) v.push_back({check, mag});
}

}  // namespace

std::vector<Violation> validate(const Resource& r, double tol) {
  std::vector<Violation> out;
  const auto& w = r.wiring;
  if (r.choi.dim_out != w.dim_out() || r.choi.dim_in != w.dim_in() ||
      r.choi.matrix.rows() != r.choi.side()) {
    out.push_back({"dims", 1.0});
    return out;
  }
  for (const System* s : {&w.a_in, &w.a_out, &w.b_in, &w.b_out}) {
    if ((s->kind == Kind::Trivial) != (s->dim == 1)) {
      out.push_back({"dims", 1.0});
      return out;
    }
  }

  push_if(out, "cp", cp_defect(r.choi), tol);
  push_if(out, "tp", tp_defect(r.choi), tol);

  const auto dims = w.factor_dims();
  const CMatrix& j = r.choi.matrix;

  // B's input must not affect A's marginal: Tr_Bout J on (A_out, A_in, B_in)
  // equals (Tr_{Bout,Bin} J / d_Bin) (x) I_Bin.
  {
    CMatrix lhs = partial_trace(j, dims, {0, 2, 3});
    CMatrix ja = partial_trace(j, dims, {0, 2}) / double(w.b_in.dim);
    CMatrix rhs = tensor(ja, CMatrix::Identity(w.b_in.dim, w.b_in.dim));
    push_if(out, "nonsignaling-b-to-a", (lhs - rhs).norm(), tol);
  }
  // Symmetrically, A's input must not affect B's marginal.
  {
    CMatrix lhs = partial_trace(j, dims, {1, 2, 3});  // (B_out, A_in, B_in)
    CMatrix jb = partial_trace(j, dims, {1, 3}) / double(w.a_in.dim);
    CMatrix rhs = tensor(jb, CMatrix::Identity(w.a_in.dim, w.a_in.dim));
    rhs = permute_factors(rhs, {w.b_out.dim, w.b_in.dim, w.a_in.dim},
                          {0, 2, 1});
    push_if(out, "nonsignaling-a-to-b", (lhs - rhs).norm(), tol);
  }

  // Classical systems must act diagonally: dephasing their factor is a
  // fixed point.
  const System* systems[4] = {&w.a_out, &w.b_out, &w.a_in, &w.b_in};
  for (int f = 0; f < 4; ++f) {
    if (systems[f]->kind != Kind::Classical) continue;
    push_if(out, "classical-diagonal", (dephase_factor(j, dims, f) - j).norm(),
            tol);
  }
  return out;
}

void require_valid(const Resource& r, double tol) {
  auto v = validate(r, tol);
  if (v.empty()) return;
  std::ostringstream msg;
  msg << "invalid resource:";
  for (const auto& x : v) msg << " " << x.check << "(" << x.magnitude << ")";
  throw std::invalid_argument(msg.str());
}

CorrelationTable CorrelationTable::zeros(int na, int nb, int nx, int ny) {
  CorrelationTable t;
  t.na = na;
  t.nb = nb;
  t.nx = nx;
  t.ny = ny;
  t.p.assign(size_t(na) * nb * nx * ny, 0.0);
  return t;
}

std::vector<Violation> validate_table(const CorrelationTable& t, double tol) {
  std::vector<Violation> out;
  double neg = 0.0, norm = 0.0, nsa = 0.0, nsb = 0.0;
  for (double v : t.p) neg = std::max(neg, -v);
  for (int x = 0; x < t.nx; ++x)
    for (int y = 0; y < t.ny; ++y) {
      double s = 0.0;
      for (int a = 0; a < t.na; ++a)
        for (int b = 0; b < t.nb; ++b) s += t.at(a, b, x, y);
      norm = std::max(norm, std::abs(s - 1.0));
    }
  // Marginal of A must not depend on y, and of B not on x.
  for (int x = 0; x < t.nx; ++x)
    for (int a = 0; a < t.na; ++a)
      for (int y = 0; y < t.ny; ++y)
        for (int y2 = y + 1; y2 < t.ny; ++y2) {
          double m1 = 0.0, m2 = 0.0;
          for (int b = 0; b < t.nb; ++b) {
            m1 += t.at(a, b, x, y);
            m2 += t.at(a, b, x, y2);
          }
          nsa = std::max(nsa, std::abs(m1 - m2));
        }
  for (int y = 0; y < t.ny; ++y)
    for (int b = 0; b < t.nb; ++b)
      for (int x = 0; x < t.nx; ++x)
        for (int x2 = x + 1; x2 < t.nx; ++x2) {
          double m1 = 0.0, m2 = 0.0;
          for (int a = 0; a < t.na; ++a) {
            m1 += t.at(a, b, x, y);
            m2 += t.at(a, b, x2, y);
          }
          nsb = std::max(nsb, std::abs(m1 - m2));
        }
  push_if(out, "negativity", neg, tol);
  push_if(out, "tp", norm, tol);
  push_if(out, "nonsignaling-b-to-a", nsa, tol);
  push_if(out, "nonsignaling-a-to-b", nsb, tol);
  return out;
}

std::vector<Violation> validate_assemblage(const Assemblage& a, double tol) {
  std::vector<Violation> out;
  if (a.settings() == 0 || a.outcomes() == 0) {
    out.push_back({"dims", 1.0});
    return out;
  }
  double psd = 0.0;
  for (const auto& row : a.sigma)
    for (const auto& s : row) psd = std::max(psd, -min_eigval(s));
  push_if(out, "psd", psd, tol);

  CMatrix rho0 = CMatrix::Zero(a.dim(), a.dim());
  for (const auto& s : a.sigma[0]) rho0 += s;
  double ns = 0.0;
  for (int x = 1; x < a.settings(); ++x) {
    CMatrix rho = CMatrix::Zero(a.dim(), a.dim());
    for (const auto& s : a.sigma[x]) rho += s;
    ns = std::max(ns, (rho - rho0).norm());
  }
  push_if(out, "nonsignaling-a-to-b", ns, tol);
  push_if(out, "tp", std::abs(rho0.trace().real() - 1.0), tol);
  return out;
}

Resource from_state(const CMatrix& rho, int dim_a, int dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw std::invalid_argument("from_state: dimension mismatch");
  if (min_eigval(rho) < -kDefaultTol)
    throw std::invalid_argument("from_state: state not PSD");
  if (std::abs(rho.trace().real() - 1.0) > kDefaultTol ||
      std::abs(rho.trace().imag()) > kDefaultTol)
    throw std::invalid_argument("from_state: state trace != 1");
  Resource r;
  r.wiring = {trivial_system(), quantum_system(dim_a), trivial_system(),
              quantum_system(dim_b)};
  r.choi = ChoiOperator{(rho + rho.adjoint()) / 2.0, dim_a * dim_b, 1};
  return r;
}

Resource from_box(const CorrelationTable& t) {
  auto bad = validate_table(t);
  if (!bad.empty())
    throw std::invalid_argument("from_box: table fails " + bad.front().check);
  Resource r;
  r.wiring = {classical_system(t.nx), classical_system(t.na),
              classical_system(t.ny), classical_system(t.nb)};
  const int side = t.na * t.nb * t.nx * t.ny;
  CMatrix j = CMatrix::Zero(side, side);
  for (int a = 0; a < t.na; ++a)
    for (int b = 0; b < t.nb; ++b)
      for (int x = 0; x < t.nx; ++x)
        for (int y = 0; y < t.ny; ++y) {
          int idx = ((a * t.nb + b) * t.nx + x) * t.ny + y;
          j(idx, idx) = t.at(a, b, x, y);
        }
  r.choi = ChoiOperator{std::move(j), t.na * t.nb, t.nx * t.ny};
  return r;
}

CorrelationTable to_box(const Resource& r) {
  const auto& w = r.wiring;
  CorrelationTable t = CorrelationTable::zeros(w.a_out.dim, w.b_out.dim,
                                               w.a_in.dim, w.b_in.dim);
  for (int a = 0; a < t.na; ++a)
    for (int b = 0; b < t.nb; ++b)
      for (int x = 0; x < t.nx; ++x)
        for (int y = 0; y < t.ny; ++y) {
          int idx = ((a * t.nb + b) * t.nx + x) * t.ny + y;
          t.at(a, b, x, y) = r.choi.matrix(idx, idx).real();
        }
  return t;
}

Resource from_assemblage(const Assemblage& a) {
  auto bad = validate_assemblage(a);
  if (!bad.empty())
    throw std::invalid_argument("from_assemblage: fails " + bad.front().check);
  const int na = a.outcomes(), nx = a.settings(), db = a.dim();
  Resource r;
  r.wiring = {classical_system(nx), classical_system(na), trivial_system(),
              quantum_system(db)};
  const int side = na * db * nx;
  CMatrix j = CMatrix::Zero(side, side);
  for (int x = 0; x < nx; ++x)
    for (int aa = 0; aa < na; ++aa)
      for (int i = 0; i < db; ++i)
        for (int k = 0; k < db; ++k)
          j((aa * db + i) * nx + x, (aa * db + k) * nx + x) =
              a.sigma[x][aa](i, k);
  r.choi = ChoiOperator{std::move(j), na * db, nx};
  return r;
}

Assemblage to_assemblage(const Resource& r) {
  const auto& w = r.wiring;
  const int na = w.a_out.dim, nx = w.a_in.dim, db = w.b_out.dim;
  Assemblage a;
  a.sigma.assign(nx, std::vector<CMatrix>(na, CMatrix::Zero(db, db)));
  for (int x = 0; x < nx; ++x)
    for (int aa = 0; aa < na; ++aa)
      for (int i = 0; i < db; ++i)
        for (int k = 0; k < db; ++k)
          a.sigma[x][aa](i, k) =
              r.choi.matrix((aa * db + i) * nx + x, (aa * db + k) * nx + x);
  return a;
}

Resource from_channel(const ChoiOperator& j, const PartyWiring& wiring,
                      double tol) {
  Resource r{wiring, j};
  require_valid(r, tol);
  return r;
}

CorrelationTable pr_box() {
  CorrelationTable t = CorrelationTable::zeros(2, 2, 2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          if ((a ^ b) == (x & y)) t.at(a, b, x, y) = 0.5;
  return t;
}

CorrelationTable deterministic_box(int fa, int fb, int na, int nb, int nx,
                                   int ny) {
  CorrelationTable t = CorrelationTable::zeros(na, nb, nx, ny);
  std::vector<int> ax(nx), by(ny);
  for (int x = 0; x < nx; ++x) {
    ax[x] = fa % na;
    fa /= na;
  }
  for (int y = 0; y < ny; ++y) {
    by[y] = fb % nb;
    fb /= nb;
  }
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) t.at(ax[x], by[y], x, y) = 1.0;
  return t;
}

Assemblage assemblage_from_state(
    const CMatrix& rho, int dim_a, int dim_b,
    const std::vector<std::vector<CMatrix>>& povms) {
  Assemblage a;
  for (const auto& povm : povms) {
    std::vector<CMatrix> row;
    for (const auto& m : povm) {
      CMatrix big = tensor(m, CMatrix::Identity(dim_b, dim_b)) * rho;
      row.push_back(partial_trace(big, {dim_a, dim_b}, {1}));
    }
    a.sigma.push_back(std::move(row));
  }
  return a;
}

CMatrix werner_state(double p) {
  CVector psi_minus(4);
  psi_minus << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
  return p * proj(psi_minus) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
}

}  // namespace losr
