#pragma once

#include "losr/lp.hpp"
#include "losr/resource.hpp"

namespace losr {

enum class Verdict { Free, NonFree, Inconclusive };

std::string to_string(Verdict v);

// Certificate-bearing membership verdict. Free verdicts carry a convex
// decomposition (weights over the canonical vertex enumeration, plus any
// operator pieces) with its reconstruction residual; NonFree verdicts carry
// a separating functional with bound (free-set maximum) and value (on the
// tested object), both recomputed by direct evaluation.
struct MembershipReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> weights;
  std::vector<CMatrix> lhs_states;  // LHS model pieces, one per response fn
  double residual = 0.0;
  std::vector<double> dual;                // table-shaped functional
  std::vector<std::vector<CMatrix>> dual_ops;  // steering functional F[x][a]
  CMatrix witness;                         // entanglement witness
  double bound = 0.0;
  double value = 0.0;
  std::string detail;
};

// Deterministic single-copy wiring of one classical partition: input
// preprocessing x = f[x'] and outcome postprocessing a' = g[a][x'].
struct DeterministicWiring {
  std::vector<int> f;
  std::vector<std::vector<int>> g;
};

// All wirings (nx, na) -> (nxp, nap): nx^nxp input maps times
// nap^(na*nxp) output maps, fixed enumeration order.
std::vector<DeterministicWiring> enumerate_wirings(int nx, int na, int nxp,
                                                   int nap);

CorrelationTable wire_box(const CorrelationTable& p,
                          const DeterministicWiring& wa, int na_out,
                          const DeterministicWiring& wb, int nb_out);

// Local polytope membership by LP over the deterministic local boxes; the
// NonFree dual is a Bell functional in table shape.
MembershipReport box_is_local(const CorrelationTable& p, double tol = 1e-9);

// PPT criterion. NonFree carries W = (|v><v|)^{T_B} for the most negative
// eigenvector v of rho^{T_B} (value = -Tr[W rho] > 0, bound 0 on PPT
// states). PPT states are Free only for dA*dB <= 6, else Inconclusive.
MembershipReport state_is_ppt(const CMatrix& rho, int dim_a, int dim_b,
                              double tol = 1e-9);

// LHS feasibility by alternating projections (Dykstra) over PSD pieces, one
// per deterministic response function. NonFree when the final separating
// direction verifies as a steering functional; cap without either ->
// Inconclusive.
MembershipReport assemblage_is_unsteerable(const Assemblage& a,
                                           double tol = 1e-7,
                                           int max_iters = 50000);

// Single-copy LOSR convertibility p -> q by LP over products of
// deterministic wirings.
MembershipReport box_convertible(const CorrelationTable& p,
                                 const CorrelationTable& q, double tol = 1e-9);

}  // namespace losr
