#ifndef VQC_ABSTRACT_HPP
#define VQC_ABSTRACT_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "vqc/concrete.hpp"
#include "vqc/interval.hpp"

namespace vqc {

using AbstractEnvironment = std::map<std::string, RealInterval>;

// Componentwise enclosure of a set of state vectors.
struct AbstractState {
    int n_qubits = 0;
    std::vector<ComplexInterval> amps;
};

struct AbstractDistribution {
    std::vector<RealInterval> probs;
};

AbstractState init_state_abstract(int n_qubits);

// The l-inf ball of radius eps around env, as one interval per variable.
AbstractEnvironment ball_env(const Environment& env, double eps);

// Encoding gate: matrix entries are complex intervals obtained from the
// exact sin/cos ranges over the half-angle interval, then an interval
// matrix-vector product (strided, like the concrete kernel).
AbstractState encode_abstract(const AbstractState& s, const GateOp& g,
                              const AbstractEnvironment& aenv);

// Parametric/constant gate: exact complex entries lifted to point intervals.
// X and CX move components without touching bounds.
AbstractState apply_parametric_abstract(const AbstractState& s, const GateOp& g);

using ComplexMatrix = std::vector<std::vector<Amplitude>>;

// Lifted 2^n x 2^n matrix of one parametric/constant gate.
ComplexMatrix full_unitary(const GateOp& g, int n_qubits);

// Exact product of the lifted gates in application order; applying the
// result once is symbolic mode. Throws on encoding gates and above 12
// qubits (the dense matrix stops being a sensible representation there).
ComplexMatrix compose_parametric_run(const std::vector<GateOp>& gs, int n_qubits);

AbstractState apply_matrix_abstract(const AbstractState& s, const ComplexMatrix& m);

// Meet every component with [-1,1]x[-1,1]. Sound because every reachable
// amplitude lies there; a component turning Empty means the enclosure was
// not sound to begin with, reported as std::logic_error.
AbstractState clip_state(const AbstractState& s);

AbstractDistribution measure_abstract(const AbstractState& s, bool clipped);

RealInterval class_aggregate(const AbstractDistribution& d,
                             const std::vector<int>& observed, std::uint64_t b);

// Non-dominated class set under the strict interval order on aggregates;
// sorted ascending. Singleton iff one class strictly dominates all others.
std::vector<std::uint64_t> classify_abstract(const AbstractDistribution& d,
                                             const std::vector<int>& observed);

// Exactly one entry per row and per column above the zero threshold.
bool is_generalized_permutation(const ComplexMatrix& m, double zero_tol = 1e-12);

enum class AbsMode { Stepwise, Symbolic };

// Stepwise: gate-by-gate abstract application. Symbolic: encoding gates
// stepwise, maximal parametric runs composed exactly and applied once.
// clipped additionally clips after every step and clamps probabilities
// to [0,1].
AbstractDistribution run_abstract(const Circuit& c, const AbstractEnvironment& aenv,
                                  AbsMode mode, bool clipped);

// Same walk, also recording the state after every step (per op in stepwise
// mode, per encoding gate or composed run in symbolic mode).
struct AbstractTrace {
    std::vector<AbstractState> states;
    AbstractDistribution dist;
};
AbstractTrace run_abstract_trace(const Circuit& c, const AbstractEnvironment& aenv,
                                 AbsMode mode, bool clipped);

// Componentwise hull of two abstract distributions over the same basis.
AbstractDistribution union_distributions(const AbstractDistribution& a,
                                         const AbstractDistribution& b);

}  // namespace vqc

#endif
