#include "vqc/concrete.hpp"

#include <cmath>
#include <stdexcept>

namespace vqc {

namespace {

constexpr Amplitude kI{0.0, 1.0};

double angle_of(const GateOp& g, const Environment& env) {
    if (is_encoding(g.kind)) {
        auto it = env.find(g.angle_var);
        if (it == env.end())
            throw std::out_of_range("unbound variable '" + g.angle_var + "'");
        return it->second;
    }
    return g.angle_const;
}

}  // namespace

QuantumState init_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
    QuantumState s;
    s.n_qubits = n_qubits;
    s.amps.assign(size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    s.amps[0] = Amplitude{1.0, 0.0};
    return s;
}

std::array<Amplitude, 4> rx_matrix(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {Amplitude{c, 0.0}, -kI * s, -kI * s, Amplitude{c, 0.0}};
}

std::array<Amplitude, 4> ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {Amplitude{c, 0.0}, Amplitude{-s, 0.0}, Amplitude{s, 0.0}, Amplitude{c, 0.0}};
}

std::array<Amplitude, 4> rz_matrix(double theta) {
    return {std::exp(-kI * (theta / 2.0)), Amplitude{0.0, 0.0}, Amplitude{0.0, 0.0},
            std::exp(kI * (theta / 2.0))};
}

std::array<Amplitude, 4> h_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return {Amplitude{r, 0.0}, Amplitude{r, 0.0}, Amplitude{r, 0.0}, Amplitude{-r, 0.0}};
}

std::array<Amplitude, 4> x_matrix() {
    return {Amplitude{0.0, 0.0}, Amplitude{1.0, 0.0}, Amplitude{1.0, 0.0},
            Amplitude{0.0, 0.0}};
}

GateUnitary gate_unitary(const GateOp& g, const Environment& env) {
    GateUnitary u;
    switch (g.kind) {
        case GateKind::EncRx:
        case GateKind::ParamRx:
            u.u2 = rx_matrix(angle_of(g, env));
            return u;
        case GateKind::EncRy:
        case GateKind::ParamRy:
            u.u2 = ry_matrix(angle_of(g, env));
            return u;
        case GateKind::EncRz:
        case GateKind::ParamRz:
            u.u2 = rz_matrix(angle_of(g, env));
            return u;
        case GateKind::H:
            u.u2 = h_matrix();
            return u;
        case GateKind::X:
            u.u2 = x_matrix();
            return u;
        case GateKind::CX:
            break;
    }
    u.arity = 2;
    // basis (control, target): 00->00, 01->01, 10->11, 11->10
    u.u4.fill(Amplitude{0.0, 0.0});
    u.u4[0 * 4 + 0] = 1.0;
    u.u4[1 * 4 + 1] = 1.0;
    u.u4[2 * 4 + 3] = 1.0;
    u.u4[3 * 4 + 2] = 1.0;
    return u;
}

void apply_gate(QuantumState& s, const GateOp& g, const Environment& env) {
    const size_t dim = s.amps.size();
    if (g.kind == GateKind::CX) {
        const size_t cmask = size_t{1} << g.control;
        const size_t tmask = size_t{1} << g.qubit;
        for (size_t i = 0; i < dim; ++i)
            if ((i & cmask) && !(i & tmask)) std::swap(s.amps[i], s.amps[i | tmask]);
        return;
    }
    const auto u = gate_unitary(g, env).u2;
    const size_t mask = size_t{1} << g.qubit;
    for (size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const Amplitude a0 = s.amps[i];
        const Amplitude a1 = s.amps[i | mask];
        s.amps[i] = u[0] * a0 + u[1] * a1;
        s.amps[i | mask] = u[2] * a0 + u[3] * a1;
    }
}

Distribution measure(const QuantumState& s) {
    Distribution d;
    d.probs.reserve(s.amps.size());
    for (const Amplitude& a : s.amps) d.probs.push_back(std::norm(a));
    return d;
}

std::uint64_t classify(const Distribution& d, const std::vector<int>& observed) {
    const size_t n_classes = size_t{1} << observed.size();
    std::vector<double> agg(n_classes, 0.0);
    for (size_t e = 0; e < d.probs.size(); ++e)
        agg[class_of_basis(e, observed)] += d.probs[e];
    std::uint64_t best = 0;
    for (std::uint64_t b = 1; b < n_classes; ++b)
        if (agg[b] > agg[best]) best = b;
    return best;
}

double class_probability(const Distribution& d, const std::vector<int>& observed,
                         std::uint64_t cls) {
    double p = 0.0;
    for (size_t e = 0; e < d.probs.size(); ++e)
        if (class_of_basis(e, observed) == cls) p += d.probs[e];
    return p;
}

ConcreteResult run_concrete(const Circuit& c, const Environment& env) {
    QuantumState s = init_state(c.n_qubits);
    for (const GateOp& g : c.ops) apply_gate(s, g, env);
    ConcreteResult r;
    r.dist = measure(s);
    r.cls = classify(r.dist, c.observed);
    r.prob = class_probability(r.dist, c.observed, r.cls);
    return r;
}

}  // namespace vqc
