#pragma once

#include "losr/transform.hpp"

#include <random>

namespace losr {

// Tomographic front end turning a resource into a correlation table:
// preparations indexed by the classical settings, POVMs producing the
// outcomes. Classical systems get delta preparations and the computational
// readout; completeness flags are verified at construction.
struct Analyzer {
  std::vector<CMatrix> prep_a, prep_b;
  std::vector<CMatrix> povm_a, povm_b;
  bool prep_a_complete = false, prep_b_complete = false;
  bool povm_a_complete = false, povm_b_complete = false;
};

// Canonical spanning preparations for a quantum system: the d basis states,
// the |+> and |+i> superpositions of each pair -- exactly d*d states.
std::vector<CMatrix> spanning_preparations(int d);
// Informationally complete POVM: the same family rescaled by the inverse
// square root of its frame operator.
std::vector<CMatrix> spanning_povm(int d);

Analyzer default_analyzer(const PartyWiring& w);

// Does the family span the full (or, for diagonal=true, the diagonal)
// operator space?
bool spans_operator_space(const std::vector<CMatrix>& ops, int d,
                          bool diagonal = false);

struct PayoffTable {
  int na = 0, nb = 0, nx = 0, ny = 0;
  std::vector<double> f;  // index (((x*ny + y)*na + a)*nb + b)

  double& at(int a, int b, int x, int y) {
    return f[((x * ny + y) * na + a) * nb + b];
  }
  double at(int a, int b, int x, int y) const {
    return f[((x * ny + y) * na + a) * nb + b];
  }
  static PayoffTable zeros(int na, int nb, int nx, int ny);
};

struct Game {
  PartyWiring wiring;  // the resource type this game accepts, with dims
  Analyzer analyzer;
  PayoffTable payoff;
};

// P(ab|xy) = Tr[(M_a (x) N_b) E(rho_x (x) rho_y)].
CorrelationTable correlations(const Analyzer& z, const Resource& r);

// sum_abxy F(abxy) P(ab|xy); requires an exact wiring match.
double evaluate(const Game& g, const Resource& r);

// The game as a single observable on the resource Choi:
// evaluate(g, r) = Tr[game_observable(g) * r.choi].
CMatrix game_observable(const Game& g);

// CHSH with the uniform input prior folded in: F = 1/4 [a xor b = xy].
Game chsh_game();

// Game of type II->QQ with evaluate(g, from_state(rho)) = Tr[W rho].
Game witness_game_on_states(const CMatrix& w, int dim_a, int dim_b);

// Game G on the encoded type with G(enc(r)) = g(r): payoff coefficients of
// the decoder-pulled observable in the default analyzer of the new type.
// The decoder is verified against the encoder on random probes first.
Game pushforward(const Game& g, const LosrTransform& enc,
                 const LosrTransform& dec, std::uint64_t probe_seed = 7);

// Exact performance over shared-randomness mixtures of deterministic local
// wirings; all four systems of g and r must be classical.
double performance_exact_classical(const Game& g, const Resource& r);

struct SeesawResult {
  double value = 0.0;       // lower bound on the performance
  LosrTransform transform;  // achieves `value` on the input resource
};

// Alternating linear-objective ascent over per-party (input converter,
// output converter) CPTP pairs; restart 0 starts from identity-like
// converters, the rest from seeded random channels. Reports a lower bound.
SeesawResult performance_seesaw(const Game& g, const Resource& r,
                                int restarts = 20, int iters = 200,
                                std::uint64_t seed = 1);

}  // namespace losr
