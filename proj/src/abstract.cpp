#include "vqc/abstract.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace vqc {

namespace {

bool is_point_zero(const ComplexInterval& z) {
    return !z.is_empty() && z.re.lo == 0.0 && z.re.hi == 0.0 && z.im.lo == 0.0 &&
           z.im.hi == 0.0;
}

// Accumulates a matrix-row sum, skipping exact-zero entries so structural
// zeros never inject rounding noise (this keeps permutation rows exact).
struct RowSum {
    std::optional<ComplexInterval> acc;

    void add(const ComplexInterval& entry, const ComplexInterval& amp) {
        if (is_point_zero(entry)) return;
        ComplexInterval term = ci_mul(entry, amp);
        acc = acc ? ci_add(*acc, term) : term;
    }
    ComplexInterval value() const { return acc ? *acc : ci_zero(); }
};

using AbstractUnitary2 = std::array<ComplexInterval, 4>;

AbstractUnitary2 to_abstract(const std::array<Amplitude, 4>& u) {
    return {ci_point(u[0]), ci_point(u[1]), ci_point(u[2]), ci_point(u[3])};
}

AbstractUnitary2 encoding_matrix(GateKind kind, const RealInterval& angle) {
    const RealInterval half{angle.lo / 2.0, angle.hi / 2.0, false};
    const TrigRanges t = itv_trig(half);
    const RealInterval zero = ri_point(0.0);
    switch (kind) {
        case GateKind::EncRx:
            return {ci(t.cos_range, zero), ci(zero, ri_neg(t.sin_range)),
                    ci(zero, ri_neg(t.sin_range)), ci(t.cos_range, zero)};
        case GateKind::EncRy:
            return {ci(t.cos_range, zero), ci(ri_neg(t.sin_range), zero),
                    ci(t.sin_range, zero), ci(t.cos_range, zero)};
        default:  // EncRz
            return {ci(t.cos_range, ri_neg(t.sin_range)), ci_zero(), ci_zero(),
                    ci(t.cos_range, t.sin_range)};
    }
}

void apply_unitary2_strided(AbstractState& s, int qubit, const AbstractUnitary2& m) {
    const size_t mask = size_t{1} << qubit;
    const size_t dim = s.amps.size();
    for (size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const ComplexInterval a0 = s.amps[i];
        const ComplexInterval a1 = s.amps[i | mask];
        RowSum r0, r1;
        r0.add(m[0], a0);
        r0.add(m[1], a1);
        r1.add(m[2], a0);
        r1.add(m[3], a1);
        s.amps[i] = r0.value();
        s.amps[i | mask] = r1.value();
    }
}

void apply_cx_abstract(AbstractState& s, int control, int target) {
    const size_t cmask = size_t{1} << control;
    const size_t tmask = size_t{1} << target;
    for (size_t i = 0; i < s.amps.size(); ++i)
        if ((i & cmask) && !(i & tmask)) std::swap(s.amps[i], s.amps[i | tmask]);
}

void apply_x_abstract(AbstractState& s, int qubit) {
    const size_t mask = size_t{1} << qubit;
    for (size_t i = 0; i < s.amps.size(); ++i)
        if (!(i & mask)) std::swap(s.amps[i], s.amps[i | mask]);
}

}  // namespace

AbstractState init_state_abstract(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
    AbstractState s;
    s.n_qubits = n_qubits;
    s.amps.assign(size_t{1} << n_qubits, ci_zero());
    s.amps[0] = ci_point({1.0, 0.0});
    return s;
}

AbstractEnvironment ball_env(const Environment& env, double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("perturbation radius must be finite and >= 0");
    AbstractEnvironment a;
    for (const auto& [name, v] : env) a.emplace(name, ri(v - eps, v + eps));
    return a;
}

AbstractState encode_abstract(const AbstractState& s, const GateOp& g,
                              const AbstractEnvironment& aenv) {
    auto it = aenv.find(g.angle_var);
    if (it == aenv.end())
        throw std::out_of_range("unbound variable '" + g.angle_var + "'");
    AbstractState out = s;
    apply_unitary2_strided(out, g.qubit, encoding_matrix(g.kind, it->second));
    return out;
}

AbstractState apply_parametric_abstract(const AbstractState& s, const GateOp& g) {
    if (is_encoding(g.kind))
        throw std::invalid_argument("encoding gate needs an abstract environment");
    AbstractState out = s;
    if (g.kind == GateKind::CX) {
        apply_cx_abstract(out, g.control, g.qubit);
        return out;
    }
    if (g.kind == GateKind::X) {
        apply_x_abstract(out, g.qubit);
        return out;
    }
    apply_unitary2_strided(out, g.qubit, to_abstract(gate_unitary(g, {}).u2));
    return out;
}

ComplexMatrix full_unitary(const GateOp& g, int n_qubits) {
    if (is_encoding(g.kind))
        throw std::invalid_argument("encoding gate has no fixed unitary");
    const size_t dim = size_t{1} << n_qubits;
    ComplexMatrix m(dim, std::vector<Amplitude>(dim, Amplitude{0.0, 0.0}));
    if (g.kind == GateKind::CX) {
        const size_t cmask = size_t{1} << g.control;
        const size_t tmask = size_t{1} << g.qubit;
        for (size_t j = 0; j < dim; ++j) {
            const size_t i = (j & cmask) ? (j ^ tmask) : j;
            m[i][j] = 1.0;
        }
        return m;
    }
    const auto u = gate_unitary(g, {}).u2;
    const size_t mask = size_t{1} << g.qubit;
    for (size_t j = 0; j < dim; ++j) {
        const size_t jb = (j & mask) ? 1 : 0;
        m[j & ~mask][j] = u[0 * 2 + jb];
        m[j | mask][j] = u[1 * 2 + jb];
    }
    return m;
}

ComplexMatrix compose_parametric_run(const std::vector<GateOp>& gs, int n_qubits) {
    if (gs.empty()) throw std::invalid_argument("empty parametric run");
    if (n_qubits > 12) throw std::length_error("composition above 12 qubits is unsupported");
    for (const GateOp& g : gs)
        if (is_encoding(g.kind))
            throw std::invalid_argument("encoding gate in parametric run");
    const size_t dim = size_t{1} << n_qubits;
    // Identity, then left-multiply gate by gate; each column is a state
    // vector, so the strided concrete kernel does the product in O(2^n)
    // per column instead of a full matrix-matrix multiply.
    ComplexMatrix m(dim, std::vector<Amplitude>(dim, Amplitude{0.0, 0.0}));
    for (size_t j = 0; j < dim; ++j) m[j][j] = 1.0;
    QuantumState col;
    col.n_qubits = n_qubits;
    col.amps.resize(dim);
    for (size_t j = 0; j < dim; ++j) {
        for (size_t i = 0; i < dim; ++i) col.amps[i] = m[i][j];
        for (const GateOp& g : gs) apply_gate(col, g, {});
        for (size_t i = 0; i < dim; ++i) m[i][j] = col.amps[i];
    }
    return m;
}

AbstractState apply_matrix_abstract(const AbstractState& s, const ComplexMatrix& m) {
    const size_t dim = s.amps.size();
    if (m.size() != dim) throw std::invalid_argument("matrix/state dimension mismatch");
    AbstractState out;
    out.n_qubits = s.n_qubits;
    out.amps.resize(dim);
    for (size_t i = 0; i < dim; ++i) {
        RowSum row;
        for (size_t j = 0; j < dim; ++j) {
            const Amplitude& e = m[i][j];
            if (e.real() == 0.0 && e.imag() == 0.0) continue;
            row.add(ci_point(e), s.amps[j]);
        }
        out.amps[i] = row.value();
    }
    return out;
}

AbstractState clip_state(const AbstractState& s) {
    const ComplexInterval box = ci(ri(-1.0, 1.0), ri(-1.0, 1.0));
    AbstractState out;
    out.n_qubits = s.n_qubits;
    out.amps.reserve(s.amps.size());
    for (const ComplexInterval& a : s.amps) {
        ComplexInterval clipped = ci_meet(a, box);
        if (clipped.is_empty())
            throw std::logic_error(
                "clip produced an empty component: the enclosure was unsound");
        out.amps.push_back(clipped);
    }
    return out;
}

AbstractDistribution measure_abstract(const AbstractState& s, bool clipped) {
    AbstractDistribution d;
    d.probs.reserve(s.amps.size());
    for (const ComplexInterval& a : s.amps) {
        RealInterval p = ci_sqmod(a);
        if (clipped) {
            p = ri_meet(p, ri(0.0, 1.0));
            if (p.is_empty())
                throw std::logic_error(
                    "probability clip produced an empty interval: the enclosure was unsound");
        }
        d.probs.push_back(p);
    }
    return d;
}

RealInterval class_aggregate(const AbstractDistribution& d,
                             const std::vector<int>& observed, std::uint64_t b) {
    RealInterval agg = ri_point(0.0);
    for (size_t e = 0; e < d.probs.size(); ++e)
        if (class_of_basis(e, observed) == b) agg = ri_add(agg, d.probs[e]);
    return agg;
}

std::vector<std::uint64_t> classify_abstract(const AbstractDistribution& d,
                                             const std::vector<int>& observed) {
    const std::uint64_t n_classes = std::uint64_t{1} << observed.size();
    std::vector<RealInterval> agg;
    agg.reserve(n_classes);
    for (std::uint64_t b = 0; b < n_classes; ++b)
        agg.push_back(class_aggregate(d, observed, b));
    std::vector<std::uint64_t> result;
    for (std::uint64_t b = 0; b < n_classes; ++b) {
        bool dominated = false;
        for (std::uint64_t b2 = 0; b2 < n_classes && !dominated; ++b2)
            dominated = ri_strictly_below(agg[b], agg[b2]);
        if (!dominated) result.push_back(b);
    }
    return result;
}

bool is_generalized_permutation(const ComplexMatrix& m, double zero_tol) {
    const size_t dim = m.size();
    std::vector<int> col_hits(dim, 0);
    for (size_t i = 0; i < dim; ++i) {
        int row_hits = 0;
        for (size_t j = 0; j < dim; ++j) {
            if (std::abs(m[i][j]) > zero_tol) {
                ++row_hits;
                ++col_hits[j];
            }
        }
        if (row_hits != 1) return false;
    }
    for (size_t j = 0; j < dim; ++j)
        if (col_hits[j] != 1) return false;
    return true;
}

namespace {

AbstractDistribution run_abstract_impl(const Circuit& c, const AbstractEnvironment& aenv,
                                       AbsMode mode, bool clipped,
                                       std::vector<AbstractState>* trace) {
    AbstractState s = init_state_abstract(c.n_qubits);
    const auto step = [&](AbstractState next) {
        s = clipped ? clip_state(next) : std::move(next);
        if (trace) trace->push_back(s);
    };
    std::vector<GateOp> run;
    const auto flush_run = [&]() {
        if (run.empty()) return;
        step(apply_matrix_abstract(s, compose_parametric_run(run, c.n_qubits)));
        run.clear();
    };
    for (const GateOp& g : c.ops) {
        if (is_encoding(g.kind)) {
            if (mode == AbsMode::Symbolic) flush_run();
            step(encode_abstract(s, g, aenv));
        } else if (mode == AbsMode::Symbolic) {
            run.push_back(g);
        } else {
            step(apply_parametric_abstract(s, g));
        }
    }
    if (mode == AbsMode::Symbolic) flush_run();
    return measure_abstract(s, clipped);
}

}  // namespace

AbstractDistribution run_abstract(const Circuit& c, const AbstractEnvironment& aenv,
                                  AbsMode mode, bool clipped) {
    return run_abstract_impl(c, aenv, mode, clipped, nullptr);
}

AbstractTrace run_abstract_trace(const Circuit& c, const AbstractEnvironment& aenv,
                                 AbsMode mode, bool clipped) {
    AbstractTrace t;
    t.dist = run_abstract_impl(c, aenv, mode, clipped, &t.states);
    return t;
}

AbstractDistribution union_distributions(const AbstractDistribution& a,
                                         const AbstractDistribution& b) {
    if (a.probs.size() != b.probs.size())
        throw std::invalid_argument("distributions over different bases");
    AbstractDistribution u;
    u.probs.reserve(a.probs.size());
    for (size_t e = 0; e < a.probs.size(); ++e)
        u.probs.push_back(ri_hull(a.probs[e], b.probs[e]));
    return u;
}

}  // namespace vqc
