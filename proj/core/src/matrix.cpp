#include "losr/matrix.hpp"

#include <numeric>
#include <stdexcept>

namespace losr {

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

void check_dims(const CMatrix& m, const std::vector<int>& dims) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix is not square");
  if (product(dims) != m.rows())
    throw std::invalid_argument("factor dimensions do not match matrix side");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("factor dimension < 1");
}

// Decode a flat index into per-factor digits, row-major.
void decode(int idx, const std::vector<int>& dims, std::vector<int>& out) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = idx % dims[k];
    idx /= dims[k];
  }
}

int encode(const std::vector<int>& digits, const std::vector<int>& dims) {
  int idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

}  // namespace

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix tensor(const std::vector<CMatrix>& factors) {
  if (factors.empty()) return CMatrix::Ones(1, 1);
  CMatrix out = factors.front();
  for (size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  check_dims(m, dims);
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("keep index out of range");
    kept[k] = true;
  }
  std::vector<int> keep_sorted;
  std::vector<int> traced;
  for (int k = 0; k < n; ++k) (kept[k] ? keep_sorted : traced).push_back(k);

  int dk = 1, dt = 1;
  for (int k : keep_sorted) dk *= dims[k];
  for (int k : traced) dt *= dims[k];

  CMatrix out = CMatrix::Zero(dk, dk);
  std::vector<int> row(n), col(n);
  std::vector<int> kdims(keep_sorted.size());
  for (size_t k = 0; k < keep_sorted.size(); ++k) kdims[k] = dims[keep_sorted[k]];
  std::vector<int> krow(keep_sorted.size()), kcol(keep_sorted.size());

  for (int i = 0; i < dk; ++i) {
    decode(i, kdims, krow);
    for (int j = 0; j < dk; ++j) {
      decode(j, kdims, kcol);
      Complex s = 0.0;
      for (int t = 0; t < dt; ++t) {
        // Spread kept and traced digits back into full indices.
        int tt = t;
        for (int k = static_cast<int>(traced.size()) - 1; k >= 0; --k) {
          row[traced[k]] = col[traced[k]] = tt % dims[traced[k]];
          tt /= dims[traced[k]];
        }
        for (size_t k = 0; k < keep_sorted.size(); ++k) {
          row[keep_sorted[k]] = krow[k];
          col[keep_sorted[k]] = kcol[k];
        }
        s += m(encode(row, dims), encode(col, dims));
      }
      out(i, j) = s;
    }
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& m, const std::vector<int>& dims,
                          int factor) {
  check_dims(m, dims);
  const int n = static_cast<int>(dims.size());
  if (factor < 0 || factor >= n)
    throw std::invalid_argument("factor index out of range");
  CMatrix out(m.rows(), m.cols());
  std::vector<int> row(n), col(n);
  for (int i = 0; i < m.rows(); ++i) {
    decode(i, dims, row);
    for (int j = 0; j < m.cols(); ++j) {
      decode(j, dims, col);
      std::vector<int> r2 = row, c2 = col;
      std::swap(r2[factor], c2[factor]);
      out(encode(r2, dims), encode(c2, dims)) = m(i, j);
    }
  }
  return out;
}

CMatrix dephase_factor(const CMatrix& m, const std::vector<int>& dims,
                       int factor) {
  check_dims(m, dims);
  const int n = static_cast<int>(dims.size());
  if (factor < 0 || factor >= n)
    throw std::invalid_argument("factor index out of range");
  CMatrix out = m;
  std::vector<int> row(n), col(n);
  for (int i = 0; i < m.rows(); ++i) {
    decode(i, dims, row);
    for (int j = 0; j < m.cols(); ++j) {
      decode(j, dims, col);
      if (row[factor] != col[factor]) out(i, j) = 0.0;
    }
  }
  return out;
}

CMatrix permute_factors(const CMatrix& m, const std::vector<int>& dims,
                        const std::vector<int>& perm) {
  return reindex(m, dims, perm, dims, perm);
}

CMatrix factor_perm_matrix(const std::vector<int>& dims,
                           const std::vector<int>& perm) {
  const int n = static_cast<int>(dims.size());
  const int d = product(dims);
  std::vector<int> out_dims(n);
  for (int k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  CMatrix p = CMatrix::Zero(d, d);
  std::vector<int> in(n), out(n);
  for (int j = 0; j < d; ++j) {
    decode(j, dims, in);
    for (int k = 0; k < n; ++k) out[k] = in[perm[k]];
    p(encode(out, out_dims), j) = 1.0;
  }
  return p;
}

CMatrix reindex(const CMatrix& m, const std::vector<int>& row_dims,
                const std::vector<int>& row_perm,
                const std::vector<int>& col_dims,
                const std::vector<int>& col_perm) {
  if (product(row_dims) != m.rows() || product(col_dims) != m.cols())
    throw std::invalid_argument("reindex: dims do not match matrix");
  const int nr = static_cast<int>(row_dims.size());
  const int nc = static_cast<int>(col_dims.size());
  std::vector<int> out_rdims(nr), out_cdims(nc);
  for (int k = 0; k < nr; ++k) out_rdims[k] = row_dims[row_perm[k]];
  for (int k = 0; k < nc; ++k) out_cdims[k] = col_dims[col_perm[k]];

  CMatrix out(m.rows(), m.cols());
  std::vector<int> rd(nr), cd(nc), rsrc(nr), csrc(nc);
  for (int i = 0; i < m.rows(); ++i) {
    decode(i, out_rdims, rd);
    for (int k = 0; k < nr; ++k) rsrc[row_perm[k]] = rd[k];
    const int si = encode(rsrc, row_dims);
    for (int j = 0; j < m.cols(); ++j) {
      decode(j, out_cdims, cd);
      for (int k = 0; k < nc; ++k) csrc[col_perm[k]] = cd[k];
      out(i, j) = m(si, encode(csrc, col_dims));
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double frob_dist(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm();
}

std::vector<double> herm_eigvals(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("herm_eigvals: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return std::vector<double>(v.data(), v.data() + v.size());
}

double min_eigval(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0,
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CMatrix proj_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix shift_op(int d) {
  CMatrix m = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m((j + 1) % d, j) = 1.0;
  return m;
}

CMatrix clock_op(int d) {
  CMatrix m = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    m(j, j) = std::polar(1.0, 2.0 * M_PI * j / d);
  return m;
}

CVector basis_ket(int j, int d) {
  CVector v = CVector::Zero(d);
  v(j) = 1.0;
  return v;
}

CVector max_entangled_ket(int d) {
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return v;
}

CMatrix proj(const CVector& v) { return v * v.adjoint(); }

CVector random_pure_ket(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

CMatrix random_density(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

CMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

CMatrix random_isometry(int rows, int cols, std::mt19937_64& rng) {
  if (rows < cols) throw std::invalid_argument("isometry needs rows >= cols");
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  // Fix column phases so the result is deterministic up to the RNG stream.
  CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace losr
