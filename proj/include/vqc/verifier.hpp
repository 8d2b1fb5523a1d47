#ifndef VQC_VERIFIER_HPP
#define VQC_VERIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqc/abstract.hpp"

namespace vqc {

struct RefinementConfig {
    int max_depth = 20;
    double min_width = 1e-6;  // boxes this narrow are not split further
    AbsMode mode = AbsMode::Symbolic;
    bool clipped = true;
    bool parallel = false;
};

enum class Status { Robust, Falsified, Unknown };
const char* status_name(Status s);

struct VerificationProblem {
    Circuit circuit;
    Environment center;
    double eps = 0.0;
    std::vector<int> observed;  // class qubits, normally circuit.observed
    RefinementConfig config;
};

struct Verdict {
    Status status = Status::Unknown;
    std::uint64_t target_class = 0;
    // Falsified only; concretely validated and inside the eps ball.
    std::optional<Environment> witness;
    std::int64_t regions_explored = 0;
    int max_depth_reached = 0;
};

// Branch-and-refine over input boxes, level by level. Every box of a level
// is evaluated (abstractly, then concretely when inconclusive) before the
// level's outcomes are aggregated in index order, so the parallel flag can
// never change the verdict or the statistics. Robust iff every leaf box
// classifies exactly to the class of the center; a box too deep or too
// narrow to split makes the final verdict Unknown unless some other box
// still produces a witness.
Verdict verify_robust(const VerificationProblem& p);

// Concrete search inside one box: the center first, then the corners in
// lexicographic variable order (corner count capped at 2^10; past the cap
// the remaining variables stay at their lower bound). First environment
// whose concrete class differs from target, if any.
std::optional<Environment> find_counterexample(const Circuit& c,
                                               const AbstractEnvironment& box,
                                               std::uint64_t target,
                                               const std::vector<int>& observed);

struct MaxEpsResult {
    double value = 0.0;
    bool robust_at_min = false;
    double bracket_lo = 0.0;  // last radius proved Robust
    double bracket_hi = 0.0;  // first radius not proved Robust (eps_max if none)
    std::string diagnostic;
};

// Largest radius proved Robust, within tau of the supremum reachable under
// cfg: doubling from eps_min until a failure or eps_max, then bisection.
// Not Robust at eps_min itself -> value 0 and a diagnostic.
MaxEpsResult max_epsilon(const Circuit& c, const Environment& center,
                         const std::vector<int>& observed, double eps_min,
                         double eps_max, double tau, const RefinementConfig& cfg);

// Tolerance for comparing concretely computed probabilities against the
// abstract bounds: the abstract side encloses real arithmetic, the concrete
// side carries its own floating-point error.
inline constexpr double kContainmentSlack = 1e-9;

struct ProbeReport {
    int samples = 0;
    std::int64_t violations = 0;
    std::vector<std::string> details;  // first few violations, formatted
};

// Empirical containment check: uniform environments in the box (seeded from
// the box, so repeat runs agree), each run concretely and compared against
// the abstract distribution in all four mode/clip combinations. A violation
// is a soundness bug, never expected.
ProbeReport soundness_probe(const Circuit& c, const AbstractEnvironment& box,
                            int samples, bool parallel = false);

}  // namespace vqc

#endif
