#include "losr/freeset.hpp"

#include <cmath>
#include <stdexcept>

namespace losr {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Eigen::VectorXd table_vec(const CorrelationTable& t) {
  return Eigen::Map<const Eigen::VectorXd>(t.p.data(),
                                           static_cast<long>(t.p.size()));
}

double reconstruction_residual(const Eigen::MatrixXd& vertices,
                               const std::vector<double>& w,
                               const Eigen::VectorXd& target) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(target.size());
  for (int i = 0; i < vertices.cols(); ++i) acc += w[i] * vertices.col(i);
  return (acc - target).cwiseAbs().maxCoeff();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Free: return "Free";
    case Verdict::NonFree: return "NonFree";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<DeterministicWiring> enumerate_wirings(int nx, int na, int nxp,
                                                   int nap) {
  const long long nf = ipow(nx, nxp);
  const long long ng = ipow(nap, na * nxp);
  std::vector<DeterministicWiring> out;
  out.reserve(static_cast<size_t>(nf * ng));
  for (long long fi = 0; fi < nf; ++fi) {
    DeterministicWiring w;
    w.f.resize(nxp);
    long long f = fi;
    for (int xp = 0; xp < nxp; ++xp) {
      w.f[xp] = static_cast<int>(f % nx);
      f /= nx;
    }
    for (long long gi = 0; gi < ng; ++gi) {
      w.g.assign(na, std::vector<int>(nxp));
      long long g = gi;
      for (int a = 0; a < na; ++a)
        for (int xp = 0; xp < nxp; ++xp) {
          w.g[a][xp] = static_cast<int>(g % nap);
          g /= nap;
        }
      out.push_back(w);
    }
  }
  return out;
}

CorrelationTable wire_box(const CorrelationTable& p,
                          const DeterministicWiring& wa, int na_out,
                          const DeterministicWiring& wb, int nb_out) {
  const int nxp = static_cast<int>(wa.f.size());
  const int nyp = static_cast<int>(wb.f.size());
  CorrelationTable q = CorrelationTable::zeros(na_out, nb_out, nxp, nyp);
  for (int xp = 0; xp < nxp; ++xp)
    for (int yp = 0; yp < nyp; ++yp)
      for (int a = 0; a < p.na; ++a)
        for (int b = 0; b < p.nb; ++b)
          q.at(wa.g[a][xp], wb.g[b][yp], xp, yp) +=
              p.at(a, b, wa.f[xp], wb.f[yp]);
  return q;
}

MembershipReport box_is_local(const CorrelationTable& p, double tol) {
  auto bad = validate_table(p);
  if (!bad.empty())
    throw std::invalid_argument("box_is_local: table fails " +
                                bad.front().check);
  const long long nfa = ipow(p.na, p.nx), nfb = ipow(p.nb, p.ny);
  const int dim = static_cast<int>(p.p.size());
  Eigen::MatrixXd vertices(dim, nfa * nfb);
  int col = 0;
  for (long long fa = 0; fa < nfa; ++fa)
    for (long long fb = 0; fb < nfb; ++fb)
      vertices.col(col++) =
          table_vec(deterministic_box(static_cast<int>(fa),
                                      static_cast<int>(fb), p.na, p.nb, p.nx,
                                      p.ny));
  const Eigen::VectorXd target = table_vec(p);
  HullResult h = hull_membership(vertices, target, tol);

  MembershipReport rep;
  if (h.inside) {
    rep.verdict = Verdict::Free;
    rep.weights = h.weights;
    rep.residual = reconstruction_residual(vertices, h.weights, target);
    rep.detail = "convex over deterministic local boxes";
  } else {
    rep.verdict = Verdict::NonFree;
    rep.dual.assign(h.functional.data(), h.functional.data() + dim);
    rep.bound = h.bound;
    rep.value = h.value;
    rep.detail = "Bell functional separates from the local polytope";
  }
  return rep;
}

MembershipReport state_is_ppt(const CMatrix& rho, int dim_a, int dim_b,
                              double tol) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw std::invalid_argument("state_is_ppt: dimension mismatch");
  CMatrix pt = partial_transpose(rho, {dim_a, dim_b}, 1);
  Eigen::SelfAdjointEigenSolver<CMatrix> es((pt + pt.adjoint()) / 2.0);
  const double lam = es.eigenvalues()(0);

  MembershipReport rep;
  if (lam < -tol) {
    rep.verdict = Verdict::NonFree;
    CVector v = es.eigenvectors().col(0);
    rep.witness = partial_transpose(proj(v), {dim_a, dim_b}, 1);
    // Direct re-verification: Tr[W rho] is the negative eigenvalue; PPT
    // states give Tr[W sigma] >= 0.
    rep.value = -(rep.witness * rho).trace().real();
    rep.bound = 0.0;
    rep.detail = "partial transpose witness; value = -Tr[W rho]";
    if (rep.value <= rep.bound + tol)
      throw std::runtime_error("state_is_ppt: witness failed re-verification");
    return rep;
  }
  rep.value = -lam;
  rep.bound = 0.0;
  if (dim_a * dim_b <= 6) {
    rep.verdict = Verdict::Free;
    rep.detail = "PPT is sufficient at these dimensions";
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.detail = "PPT holds but is not sufficient at these dimensions";
  }
  return rep;
}

MembershipReport assemblage_is_unsteerable(const Assemblage& asm_in,
                                           double tol, int max_iters) {
  auto bad = validate_assemblage(asm_in);
  if (!bad.empty())
    throw std::invalid_argument("assemblage fails " + bad.front().check);
  const int nx = asm_in.settings(), na = asm_in.outcomes(), db = asm_in.dim();
  const long long nlam = ipow(na, nx);
  if (nlam > 4096)
    throw std::invalid_argument("too many response functions");

  auto response = [&](long long lam, int x) {
    for (int k = 0; k < x; ++k) lam /= na;
    return static_cast<int>(lam % na);
  };

  // Gram of the affine constraint map, one row per (x,a); its pseudoinverse
  // realizes the projection onto the constraint subspace.
  const int nc = nx * na;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nc, nc);
  for (long long lam = 0; lam < nlam; ++lam)
    for (int x = 0; x < nx; ++x)
      for (int x2 = 0; x2 < nx; ++x2)
        gram(x * na + response(lam, x), x2 * na + response(lam, x2)) += 1.0;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> pinv(gram);

  CMatrix rho_b = CMatrix::Zero(db, db);
  for (const auto& s : asm_in.sigma[0]) rho_b += s;

  std::vector<CMatrix> sigma(nlam, rho_b / double(nlam));
  std::vector<CMatrix> corr(nlam, CMatrix::Zero(db, db));

  auto affine_residual = [&](const std::vector<CMatrix>& s, CMatrix* res) {
    double worst = 0.0;
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < na; ++a) {
        CMatrix r = -asm_in.sigma[x][a];
        for (long long lam = 0; lam < nlam; ++lam)
          if (response(lam, x) == a) r += s[lam];
        if (res) res[x * na + a] = r;
        worst = std::max(worst, r.norm());
      }
    return worst;
  };

  std::vector<CMatrix> res(nc);
  MembershipReport rep;
  for (int iter = 0; iter < max_iters; ++iter) {
    // Project onto the affine constraints.
    affine_residual(sigma, res.data());
    // Apply the pseudoinverse entrywise across the constraint index.
    Eigen::MatrixXcd stacked(nc, db * db);
    for (int c = 0; c < nc; ++c)
      stacked.row(c) =
          Eigen::Map<const Eigen::VectorXcd>(res[c].data(), db * db);
    Eigen::MatrixXcd wsol =
        pinv.solve(Eigen::MatrixXd(stacked.real())).cast<Complex>() +
        Complex(0, 1) * pinv.solve(Eigen::MatrixXd(stacked.imag()));
    std::vector<CMatrix> wmats(nc);
    for (int c = 0; c < nc; ++c) {
      Eigen::VectorXcd row = wsol.row(c);
      wmats[c] = Eigen::Map<const CMatrix>(row.data(), db, db);
    }
    for (long long lam = 0; lam < nlam; ++lam)
      for (int x = 0; x < nx; ++x)
        sigma[lam] -= wmats[x * na + response(lam, x)];
    // PSD step. Plain alternating projections (no Dykstra correction): when
    // the target is steerable the two sets do not intersect, and only the
    // uncorrected iteration converges to the minimal-gap pair that yields a
    // separating functional.
    double move = 0.0;
    for (long long lam = 0; lam < nlam; ++lam) {
      CMatrix pz = proj_psd(sigma[lam]);
      move = std::max(move, (pz - sigma[lam]).norm());
      sigma[lam] = pz;
    }

    const bool last = iter == max_iters - 1;
    if (move <= tol || last || iter % 500 == 499) {
      double feas = affine_residual(sigma, nullptr);
      if (feas <= tol) {
        rep.verdict = Verdict::Free;
        rep.lhs_states = sigma;
        rep.residual = feas;
        rep.detail = "local-hidden-state model found";
        return rep;
      }
      // Separating direction: target minus its best unsteerable
      // reconstruction so far.
      std::vector<std::vector<CMatrix>> g(
          nx, std::vector<CMatrix>(na, CMatrix::Zero(db, db)));
      double value = 0.0;
      for (int x = 0; x < nx; ++x)
        for (int a = 0; a < na; ++a) {
          CMatrix tau = CMatrix::Zero(db, db);
          for (long long lam = 0; lam < nlam; ++lam)
            if (response(lam, x) == a) tau += sigma[lam];
          g[x][a] = asm_in.sigma[x][a] - tau;
          g[x][a] = (g[x][a] + g[x][a].adjoint()) / 2.0;
          value += (g[x][a] * asm_in.sigma[x][a]).trace().real();
        }
      double bound = -1e300;
      for (long long lam = 0; lam < nlam; ++lam) {
        CMatrix h = CMatrix::Zero(db, db);
        for (int x = 0; x < nx; ++x) h += g[x][response(lam, x)];
        auto ev = herm_eigvals(h, 1e-6);
        bound = std::max(bound, ev.back());
      }
      if (value > bound + tol) {
        rep.verdict = Verdict::NonFree;
        rep.dual_ops = g;
        rep.value = value;
        rep.bound = bound;
        rep.detail = "steering functional separates from the LHS set";
        return rep;
      }
      if (last) break;
    }
  }
  rep.verdict = Verdict::Inconclusive;
  rep.detail = "iteration cap reached without model or certificate";
  return rep;
}

MembershipReport box_convertible(const CorrelationTable& p,
                                 const CorrelationTable& q, double tol) {
  for (const auto* t : {&p, &q}) {
    auto bad = validate_table(*t);
    if (!bad.empty())
      throw std::invalid_argument("box_convertible: table fails " +
                                  bad.front().check);
  }
  auto was = enumerate_wirings(p.nx, p.na, q.nx, q.na);
  auto wbs = enumerate_wirings(p.ny, p.nb, q.ny, q.nb);
  const int dim = static_cast<int>(q.p.size());
  Eigen::MatrixXd vertices(dim, was.size() * wbs.size());
  int col = 0;
  for (const auto& wa : was)
    for (const auto& wb : wbs)
      vertices.col(col++) = table_vec(wire_box(p, wa, q.na, wb, q.nb));
  const Eigen::VectorXd target = table_vec(q);
  HullResult h = hull_membership(vertices, target, tol);

  MembershipReport rep;
  if (h.inside) {
    rep.verdict = Verdict::Free;
    rep.weights = h.weights;
    rep.residual = reconstruction_residual(vertices, h.weights, target);
    rep.detail = "mixture of deterministic wirings reaches the target";
  } else {
    rep.verdict = Verdict::NonFree;
    rep.dual.assign(h.functional.data(), h.functional.data() + dim);
    rep.bound = h.bound;
    rep.value = h.value;
    rep.detail = "functional separates target from the wiring image";
  }
  return rep;
}

}  // namespace losr
