#include "losr/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace losr {

namespace {

constexpr double kPivotTol = 1e-10;

// Phase-I simplex on: min sum(artificials) s.t. A x + s = b, x >= 0, with
// the artificials s as the starting basis. Bland's rule, full tableau.
struct PhaseOne {
  int m, n;                 // constraints, real variables
  Eigen::MatrixXd t;        // m rows x (n + m + 1) cols, last col = rhs
  Eigen::RowVectorXd cost;  // reduced costs + objective in last entry
  std::vector<int> basis;

  PhaseOne(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : m(static_cast<int>(a.rows())), n(static_cast<int>(a.cols())) {
    t.setZero(m, n + m + 1);
    t.leftCols(n) = a;
    t.col(n + m) = b;
    for (int i = 0; i < m; ++i) {
      if (t(i, n + m) < 0) t.row(i) = -t.row(i);
      t(i, n + i) = 1.0;
    }
    basis.resize(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    // c = (0,...,0, 1,...,1); eliminate the basic columns from the cost row.
    cost.setZero(n + m + 1);
    for (int j = n; j < n + m; ++j) cost(j) = 1.0;
    for (int i = 0; i < m; ++i) cost -= t.row(i);
  }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < m; ++i)
      if (i != row && std::abs(t(i, col)) > 0)
        t.row(i) -= t(i, col) * t.row(row);
    cost -= cost(col) * t.row(row);
    basis[row] = col;
  }

  void solve() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n + m; ++j)
        if (cost(j) < -kPivotTol) {
          enter = j;
          break;
        }
      if (enter < 0) return;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) <= kPivotTol) continue;
        double ratio = t(i, n + m) / t(i, enter);
        if (leave < 0 || ratio < best - kPivotTol ||
            (ratio < best + kPivotTol && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0)
        throw std::logic_error("phase-I simplex unbounded");  // cannot happen
      pivot(leave, enter);
    }
  }

  double objective() const { return -cost(n + m); }

  // Dual y with y'A_j <= c_j for all j at optimality; read from the
  // artificial columns (c_j = 1 there).
  Eigen::VectorXd dual() const {
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) y(i) = 1.0 - cost(n + i);
    return y;
  }
};

}  // namespace

HullResult hull_membership(const Eigen::MatrixXd& vertices,
                           const Eigen::VectorXd& target, double tol) {
  const int dim = static_cast<int>(vertices.rows());
  const int nv = static_cast<int>(vertices.cols());
  if (target.size() != dim)
    throw std::invalid_argument("hull_membership: dimension mismatch");
  if (nv == 0) throw std::invalid_argument("hull_membership: no vertices");

  Eigen::MatrixXd a(dim + 1, nv);
  a.topRows(dim) = vertices;
  a.bottomRows(1).setOnes();
  Eigen::VectorXd b(dim + 1);
  b.head(dim) = target;
  b(dim) = 1.0;

  // Row signs flip inside PhaseOne when rhs < 0; remember them for the dual.
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(dim + 1);
  for (int i = 0; i <= dim; ++i)
    if (b(i) < 0) sign(i) = -1.0;

  PhaseOne lp(a, b);
  lp.solve();

  HullResult res;
  if (lp.objective() <= tol) {
    res.inside = true;
    res.weights.assign(nv, 0.0);
    for (int i = 0; i <= dim; ++i)
      if (lp.basis[i] < nv)
        res.weights[lp.basis[i]] = std::max(0.0, lp.t(i, nv + dim + 1));
    return res;
  }

  Eigen::VectorXd y = sign.cwiseProduct(lp.dual());
  res.functional = y.head(dim);
  // Re-verify by direct evaluation; y satisfies f'v_i + mu <= 0, f't + mu > 0.
  res.bound = (res.functional.transpose() * vertices).maxCoeff();
  res.value = res.functional.dot(target);
  if (res.value <= res.bound + tol)
    throw std::runtime_error("hull_membership: dual failed re-verification");
  return res;
}

}  // namespace losr
