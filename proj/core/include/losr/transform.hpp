#pragma once

#include "losr/resource.hpp"

namespace losr {

enum class Party { A, B };

// How a comb's pre map is realized once the resource dimensions are known.
//   Identity            new input = resource input, no memory
//   Explicit            stored Choi, new_in -> (res_in (x) memory)
//   RouteFactorToMemory new input = (M (x) res_in); M is moved to memory
//   FeedEntangledHalf   new input drops a leading factor of dim `memory`;
//                       that slot is fed half of |Omega_d>, other half kept
enum class PrePlan { Identity, Explicit, RouteFactorToMemory, FeedEntangledHalf };

// Post map realization, (res_out (x) memory) -> new output.
enum class PostPlan { Identity, Explicit, AppendMemoryToOutput };

// How the party's input or output system changes.
struct SystemChange {
  enum class Mode { Keep, Set, PrependFactor, AppendFactor, DropFront };
  Mode mode = Mode::Keep;
  System sys;
};

System apply_change(const SystemChange& c, const System& old);

// Optional kind/dim requirement on the party's resource-side system.
struct SystemExpectation {
  bool check = false;
  Kind kind = Kind::Trivial;
  int dim = 0;  // 0 = any
};

// One party's local operation: pre feeds the resource, memory flows around
// it, post collects the output.
struct LocalComb {
  int memory = 1;
  PrePlan pre_plan = PrePlan::Identity;
  ChoiOperator pre;  // when Explicit: dim_out = res_in * memory (that order)
  PostPlan post_plan = PostPlan::Identity;
  ChoiOperator post;  // when Explicit: dim_in = res_out * memory
  SystemChange in_change, out_change;
  SystemExpectation expect_out;
};

struct MaterializedComb {
  ChoiOperator pre, post;
  int memory = 1;
  System new_in, new_out;
};

// Resolve a comb against concrete party systems; throws on any mismatch.
MaterializedComb materialize(const LocalComb& comb, const System& res_in,
                             const System& res_out);

struct Branch {
  double p = 1.0;
  LocalComb a, b;
};

// Shared-randomness mixture of per-party comb pairs.
struct LosrTransform {
  std::vector<Branch> branches;
};

PartyWiring transformed_wiring(const LosrTransform& t, const PartyWiring& w);

// Link the transform around the resource and validate the result.
Resource apply(const LosrTransform& t, const Resource& r);
// Same contraction on an arbitrary operator in resource shape; no
// CP/TP/nonsignaling checks. Used to push linear functionals around.
ChoiOperator apply_linear(const LosrTransform& t, const ChoiOperator& j,
                          const PartyWiring& w);
// Adjoint of apply_linear: Tr[result^dag J] = Tr[y^dag apply_linear(t, J, w)]
// for every J in the shape of w. `y` lives in the transformed shape.
ChoiOperator pull_observable(const LosrTransform& t, const ChoiOperator& y,
                             const PartyWiring& w);

// Sequential composition acting as apply(t2, apply(t1, .)) on resources of
// wiring w; branches multiply out.
LosrTransform compose(const LosrTransform& t2, const LosrTransform& t1,
                      const PartyWiring& w);
// Convex combination; weights must be nonnegative and sum to 1.
LosrTransform mixture(const std::vector<std::pair<double, LosrTransform>>& ts);

LosrTransform identity_transform();
// Measure the party's quantum output (dim = effect size) with a fixed POVM;
// output becomes classical with one symbol per effect.
LosrTransform measure_output(Party party, const std::vector<CMatrix>& povm);
// Setting-dependent measurement: a classical setting factor is prepended to
// the party's input and selects povms[x].
LosrTransform measure_output_family(
    Party party, const std::vector<std::vector<CMatrix>>& povms);
// Replace a classical input of dim states.size() by the preparation x ->
// states[x] feeding the party's quantum input.
LosrTransform prepare_from_classical(Party party,
                                     const std::vector<CMatrix>& states);
// Feed the party's input the first half of pure |phi> (dims d1 x d2); the
// second half becomes an extra quantum output factor.
LosrTransform entangle_assist(Party party, const CVector& phi, int d1, int d2);
// Column-stochastic preprocessing of a classical input; kernel(x|x').
LosrTransform stochastic_input(Party party, const Eigen::MatrixXd& kernel);

// Bell-measure the party's quantum output of dim d against a fresh quantum
// input of dim d; output becomes classical of dim d^2. Basis
// (I (x) X^a Z^b)|Omega_d>/sqrt(d), outcome index a*d+b.
LosrTransform sq_encode(Party party, int d);
// Inverse: feeds |Omega_d>/sqrt(d), applies the correction (X^a Z^b)^T
// selected by the classical outcome, restoring the quantum output.
LosrTransform sq_decode(Party party, int d);

// Deterministic classical wiring of one party: input map x = f[x'], output
// map a' = g[a][x'] (the setting is remembered).
LocalComb classical_wiring_comb(const std::vector<int>& f,
                                const std::vector<std::vector<int>>& g, int nx,
                                int n_out);
LosrTransform box_wiring_transform(const std::vector<int>& fa,
                                   const std::vector<std::vector<int>>& ga,
                                   int nxa, int na_out,
                                   const std::vector<int>& fb,
                                   const std::vector<std::vector<int>>& gb,
                                   int nxb, int nb_out);

}  // namespace losr
