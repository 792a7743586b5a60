#pragma once

#include <Eigen/Dense>

#include <vector>

namespace losr {

// Is `target` a convex combination of the columns of `vertices`?
// inside  -> `weights` (one per column, >= 0, summing to 1) reconstructs it.
// outside -> `functional` f separates: f.target > max_i f.vertex_i = bound,
//            both recomputed by direct evaluation, never read off the solver.
struct HullResult {
  bool inside = false;
  std::vector<double> weights;
  Eigen::VectorXd functional;
  double bound = 0.0;
  double value = 0.0;
};

HullResult hull_membership(const Eigen::MatrixXd& vertices,
                           const Eigen::VectorXd& target, double tol = 1e-9);

}  // namespace losr
