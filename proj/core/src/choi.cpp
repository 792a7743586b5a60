#include "losr/choi.hpp"

#include <stdexcept>

namespace losr {

ChoiOperator choi_from_map(
    const std::function<CMatrix(const CMatrix&)>& action, int dim_in,
    int dim_out) {
  CMatrix j = CMatrix::Zero(dim_out * dim_in, dim_out * dim_in);
  for (int i = 0; i < dim_in; ++i)
    for (int k = 0; k < dim_in; ++k) {
      CMatrix unit = CMatrix::Zero(dim_in, dim_in);
      unit(i, k) = 1.0;
      CMatrix e = action(unit);
      if (e.rows() != dim_out || e.cols() != dim_out)
        throw std::invalid_argument("choi_from_map: wrong output dimension");
      // place E(|i><k|) (x) |i><k|
      for (int r = 0; r < dim_out; ++r)
        for (int c = 0; c < dim_out; ++c)
          j(r * dim_in + i, c * dim_in + k) += e(r, c);
    }
  return ChoiOperator{std::move(j), dim_out, dim_in};
}

ChoiOperator choi_from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus list");
  const int dout = static_cast<int>(kraus.front().rows());
  const int din = static_cast<int>(kraus.front().cols());
  return choi_from_map(
      [&](const CMatrix& rho) {
        CMatrix out = CMatrix::Zero(dout, dout);
        for (const auto& k : kraus) out += k * rho * k.adjoint();
        return out;
      },
      din, dout);
}

ChoiOperator choi_identity(int d) {
  return choi_from_map([](const CMatrix& rho) { return rho; }, d, d);
}

ChoiOperator choi_depolarizing(int d) {
  return choi_from_map(
      [d](const CMatrix& rho) {
        return CMatrix(rho.trace() / double(d) * CMatrix::Identity(d, d));
      },
      d, d);
}

ChoiOperator choi_prepare(const CMatrix& sigma, int dim_in) {
  return choi_from_map(
      [&](const CMatrix& rho) { return CMatrix(rho.trace() * sigma); }, dim_in,
      static_cast<int>(sigma.rows()));
}

ChoiOperator choi_classical(const Eigen::MatrixXd& kernel) {
  const int dout = static_cast<int>(kernel.rows());
  const int din = static_cast<int>(kernel.cols());
  return choi_from_map(
      [&](const CMatrix& rho) {
        CMatrix out = CMatrix::Zero(dout, dout);
        for (int x = 0; x < din; ++x)
          for (int a = 0; a < dout; ++a) out(a, a) += kernel(a, x) * rho(x, x);
        return out;
      },
      din, dout);
}

CMatrix choi_apply(const ChoiOperator& j, const CMatrix& rho) {
  if (rho.rows() != j.dim_in || rho.cols() != j.dim_in)
    throw std::invalid_argument("choi_apply: state dimension mismatch");
  CMatrix big = j.matrix *
                tensor(CMatrix::Identity(j.dim_out, j.dim_out),
                       CMatrix(rho.transpose()));
  return partial_trace(big, {j.dim_out, j.dim_in}, {0});
}

CMatrix choi_to_superop(const ChoiOperator& j) {
  const int dout = j.dim_out, din = j.dim_in;
  CMatrix k(dout * dout, din * din);
  for (int r = 0; r < dout; ++r)
    for (int c = 0; c < dout; ++c)
      for (int i = 0; i < din; ++i)
        for (int l = 0; l < din; ++l)
          k(r * dout + c, i * din + l) = j.matrix(r * din + i, c * din + l);
  return k;
}

ChoiOperator superop_to_choi(const CMatrix& k, int dim_out, int dim_in) {
  if (k.rows() != dim_out * dim_out || k.cols() != dim_in * dim_in)
    throw std::invalid_argument("superop_to_choi: dimension mismatch");
  CMatrix j(dim_out * dim_in, dim_out * dim_in);
  for (int r = 0; r < dim_out; ++r)
    for (int c = 0; c < dim_out; ++c)
      for (int i = 0; i < dim_in; ++i)
        for (int l = 0; l < dim_in; ++l)
          j(r * dim_in + i, c * dim_in + l) = k(r * dim_out + c, i * dim_in + l);
  return ChoiOperator{std::move(j), dim_out, dim_in};
}

CMatrix superop_tensor(const CMatrix& ka, int a_out, int a_in,
                       const CMatrix& kb, int b_out, int b_in) {
  // Rows of ka (x) kb carry factors (ra, ca, rb, cb); the joint superoperator
  // needs ((ra, rb), (ca, cb)). Same reshuffle on columns.
  CMatrix k = tensor(ka, kb);
  return reindex(k, {a_out, a_out, b_out, b_out}, {0, 2, 1, 3},
                 {a_in, a_in, b_in, b_in}, {0, 2, 1, 3});
}

CMatrix superop_permutation(const std::vector<int>& dims,
                            const std::vector<int>& perm) {
  CMatrix p = factor_perm_matrix(dims, perm);
  return tensor(p, p);
}

ChoiOperator compose_sequential(const ChoiOperator& j2,
                                const ChoiOperator& j1) {
  if (j1.dim_out != j2.dim_in)
    throw std::invalid_argument("compose_sequential: dimension mismatch");
  CMatrix k = choi_to_superop(j2) * choi_to_superop(j1);
  return superop_to_choi(k, j2.dim_out, j1.dim_in);
}

ChoiOperator compose_parallel(const ChoiOperator& ja, const ChoiOperator& jb) {
  // (outA, inA, outB, inB) -> (outA, outB, inA, inB)
  CMatrix j = tensor(ja.matrix, jb.matrix);
  j = permute_factors(j, {ja.dim_out, ja.dim_in, jb.dim_out, jb.dim_in},
                      {0, 2, 1, 3});
  return ChoiOperator{std::move(j), ja.dim_out * jb.dim_out,
                      ja.dim_in * jb.dim_in};
}

double cp_defect(const ChoiOperator& j) {
  return std::max(0.0, -min_eigval(j.matrix));
}

double tp_defect(const ChoiOperator& j) {
  CMatrix marg = partial_trace(j.matrix, {j.dim_out, j.dim_in}, {1});
  return (marg - CMatrix::Identity(j.dim_in, j.dim_in)).norm();
}

bool is_cp(const ChoiOperator& j, double tol) { return cp_defect(j) <= tol; }
bool is_tp(const ChoiOperator& j, double tol) { return tp_defect(j) <= tol; }

ChoiOperator random_cptp(int dim_in, int dim_out, std::mt19937_64& rng) {
  // Stinespring: isometry into out (x) env, env traced out.
  const int env = dim_in;  // enough for generic channels at these sizes
  CMatrix v = random_isometry(dim_out * env, dim_in, rng);
  return choi_from_map(
      [&](const CMatrix& rho) {
        CMatrix big = v * rho * v.adjoint();
        return partial_trace(big, {dim_out, env}, {0});
      },
      dim_in, dim_out);
}

}  // namespace losr
