#pragma once

#include <string>

#include "losr/choi.hpp"
#include "losr/types.hpp"

namespace losr {

// Bipartite party wiring. The Choi factor ordering is fixed project-wide as
// (A_out, B_out, A_in, B_in).
struct PartyWiring {
  System a_in, a_out, b_in, b_out;

  int dim_out() const { return a_out.dim * b_out.dim; }
  int dim_in() const { return a_in.dim * b_in.dim; }
  std::vector<int> factor_dims() const {
    return {a_out.dim, b_out.dim, a_in.dim, b_in.dim};
  }
  GlobalType global_type() const {
    return {{a_in.kind, a_out.kind}, {b_in.kind, b_out.kind}};
  }
  bool operator==(const PartyWiring&) const = default;
};

// A typed bipartite nonsignaling resource: CPTP, nonsignaling both ways, and
// diagonal on every classical factor.
struct Resource {
  PartyWiring wiring;
  ChoiOperator choi;
};

struct Violation {
  std::string check;  // "cp" | "tp" | "nonsignaling-a-to-b" |
                      // "nonsignaling-b-to-a" | "classical-diagonal" | "dims"
  double magnitude = 0.0;
};

// Empty iff all invariant families hold at tol. Reports, never throws.
std::vector<Violation> validate(const Resource& r, double tol = kDefaultTol);
// Throws std::invalid_argument listing the violations if validate fails.
void require_valid(const Resource& r, double tol = kDefaultTol);

// Conditional probability table P(a,b|x,y).
struct CorrelationTable {
  int na = 0, nb = 0, nx = 0, ny = 0;
  std::vector<double> p;  // index (((x*ny + y)*na + a)*nb + b)

  double& at(int a, int b, int x, int y) {
    return p[((x * ny + y) * na + a) * nb + b];
  }
  double at(int a, int b, int x, int y) const {
    return p[((x * ny + y) * na + a) * nb + b];
  }
  static CorrelationTable zeros(int na, int nb, int nx, int ny);
};

// Normalization and nonsignaling of a raw table.
std::vector<Violation> validate_table(const CorrelationTable& p,
                                      double tol = kDefaultTol);

// Steering assemblage sigma[x][a]: subnormalized states on B, one per setting
// and outcome of A.
struct Assemblage {
  std::vector<std::vector<CMatrix>> sigma;

  int settings() const { return static_cast<int>(sigma.size()); }
  int outcomes() const {
    return sigma.empty() ? 0 : static_cast<int>(sigma[0].size());
  }
  int dim() const {
    return sigma.empty() || sigma[0].empty()
               ? 0
               : static_cast<int>(sigma[0][0].rows());
  }
};

std::vector<Violation> validate_assemblage(const Assemblage& a,
                                           double tol = kDefaultTol);

// Constructors for the named resource kinds.
Resource from_state(const CMatrix& rho, int dim_a, int dim_b);      // II->QQ
Resource from_box(const CorrelationTable& p);                       // CC->CC
CorrelationTable to_box(const Resource& r);
Resource from_assemblage(const Assemblage& a);                      // CI->CQ
Assemblage to_assemblage(const Resource& r);
// Generic constructor; validates and throws with the violation list.
Resource from_channel(const ChoiOperator& j, const PartyWiring& wiring,
                      double tol = kDefaultTol);

// Canonical boxes.
CorrelationTable pr_box();
CorrelationTable deterministic_box(int fa, int fb, int na, int nb, int nx,
                                   int ny);  // a = fa(x), b = fb(y) encoded

// sigma_{a|x} from measuring {povms[x]} on A's half of rho (dims da x db).
Assemblage assemblage_from_state(const CMatrix& rho, int dim_a, int dim_b,
                                 const std::vector<std::vector<CMatrix>>& povms);

// Werner state p*|Phi-><Phi-| + (1-p)*I/4 on two qubits.
CMatrix werner_state(double p);

}  // namespace losr
