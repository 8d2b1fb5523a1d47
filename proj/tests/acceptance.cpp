// Acceptance gate: eleven end-to-end checks over the released surface, one
// line of output each ("criterion N: PASS/FAIL — description"). The exit
// code is the number of failed checks, so CI can gate on it directly.
//
// Checks 1-7 run the reference pipelines in reproduction mode (stepwise,
// unclipped, no outward rounding) against frozen expected values; 8-10 are
// property sweeps over a random corpus; 11 drives the bundled models end to
// end through verification, report emission, and the max-radius search.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "vqc/harness.hpp"

using namespace vqc;
namespace tu = testutil;
using clock_type = std::chrono::steady_clock;

namespace {

// Reference tolerance for reproduced quantities; their sources print two to
// three decimals.
constexpr double kRefTol = 0.01;
// Slack when a sampled hull must sit inside an abstract enclosure. Sampling
// only ever under-covers, so this absorbs printf-level fp noise alone.
constexpr double kHullSlack = 1e-9;
// Dense-grid resolution for hull oracles; endpoint error is O((w/n)^2).
constexpr int kHullSamples = 4000;

constexpr const char* kDemoText =
    "qubits 2\n"
    "inputs x0 x1\n"
    "rx q0 $x0\n"
    "rx q1 $x1\n"
    "ry q0 0.99\n"
    "ry q1 -0.5\n"
    "cx q0 q1\n"
    "ry q0 3.27\n"
    "ry q1 -0.69\n"
    "measure q0\n";

struct Check {
    bool ok = true;
    std::string note;  // first failure detail, appended to the line

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool ri_near(const RealInterval& r, double lo, double hi, double tol) {
    return !r.is_empty() && near(r.lo, lo, tol) && near(r.hi, hi, tol);
}

std::string ri_str(const RealInterval& r) {
    return "[" + fmt(r.lo) + ", " + fmt(r.hi) + "]";
}

struct RefAmp {
    double re_lo, re_hi, im_lo, im_hi;
};

bool ci_near_ref(const ComplexInterval& a, const RefAmp& e, double tol) {
    return ri_near(a.re, e.re_lo, e.re_hi, tol) && ri_near(a.im, e.im_lo, e.im_hi, tol);
}

std::vector<Amplitude> run_prefix(const Circuit& c, const Environment& env, size_t n_ops) {
    QuantumState s = init_state(c.n_qubits);
    for (size_t i = 0; i < n_ops; ++i) apply_gate(s, c.ops[i], env);
    return s.amps;
}

// ---------------------------------------------------------------------------
// 1. concrete pipeline on the worked two-qubit example

void criterion_1(Check& ck) {
    const Circuit c = parse_circuit(kDemoText);
    const Environment env{{"x0", 6.0}, {"x1", 2.7}};

    const std::vector<Amplitude> psi_enc = run_prefix(c, env, 2);
    const Amplitude exp_enc[4] = {{-0.22, 0.0}, {0.0, -0.03}, {0.0, 0.97}, {-0.14, 0.0}};
    for (int e = 0; e < 4; ++e) {
        ck.require(near(psi_enc[e].real(), exp_enc[e].real(), kRefTol) &&
                       near(psi_enc[e].imag(), exp_enc[e].imag(), kRefTol),
                   "encoded amplitude " + render_basis(e, 2) + " = " +
                       fmt(psi_enc[e].real()) + (psi_enc[e].imag() < 0 ? "" : "+") +
                       fmt(psi_enc[e].imag()) + "i");
    }

    const std::vector<Amplitude> psi_fin = run_prefix(c, env, c.ops.size());
    const Amplitude exp_fin[4] = {{0.14, -0.49}, {-0.11, 0.46}, {0.08, 0.03}, {0.17, 0.70}};
    for (int e = 0; e < 4; ++e) {
        ck.require(near(psi_fin[e].real(), exp_fin[e].real(), kRefTol) &&
                       near(psi_fin[e].imag(), exp_fin[e].imag(), kRefTol),
                   "final amplitude " + render_basis(e, 2));
    }

    const ConcreteResult r = run_concrete(c, env);
    for (int e = 0; e < 4; ++e) {
        // expected distribution = squared moduli of the expected final
        // amplitudes, so the two checks cannot drift apart
        ck.require(near(r.dist.probs[e], std::norm(exp_fin[e]), kRefTol),
                   "probability of " + render_basis(e, 2) + " = " + fmt(r.dist.probs[e]));
    }
    ck.require(r.cls == 1, "class = " + std::to_string(r.cls));
    ck.require(near(r.prob, 0.73, kRefTol), "class probability = " + fmt(r.prob));
}

// ---------------------------------------------------------------------------
// 2. stepwise abstract enclosure over the perturbation box

void criterion_2(Check& ck) {
    const Circuit c = parse_circuit(kDemoText);
    const AbstractEnvironment box = ball_env({{"x0", 6.0}, {"x1", 2.7}}, 0.5);
    const AbstractTrace t = run_abstract_trace(c, box, AbsMode::Stepwise, false);

    const AbstractState& enc = t.states[1];  // after both encoding rotations
    const RefAmp exp_enc[4] = {{-0.454, 0.029, 0.0, 0.0},
                               {0.0, 0.0, -0.173, 0.049},
                               {0.0, 0.0, 0.824, 1.0},
                               {-0.382, 0.108, 0.0, 0.0}};
    for (int e = 0; e < 4; ++e)
        ck.require(ci_near_ref(enc.amps[e], exp_enc[e], kRefTol),
                   "encoded enclosure " + render_basis(e, 2));

    const AbstractState& fin = t.states.back();
    const RefAmp exp_fin[4] = {{-0.159, 0.433, -0.559, -0.355},
                               {-0.404, 0.184, 0.341, 0.544},
                               {-0.171, 0.328, -0.074, 0.181},
                               {-0.086, 0.413, 0.54, 0.768}};
    for (int e = 0; e < 4; ++e)
        ck.require(ci_near_ref(fin.amps[e], exp_fin[e], kRefTol),
                   "final enclosure " + render_basis(e, 2));

    const RealInterval exp_dist[4] = {ri(0.126, 0.50), ri(0.116, 0.460), ri(0.0, 0.140),
                                      ri(0.291, 0.761)};
    for (int e = 0; e < 4; ++e)
        ck.require(ri_near(t.dist.probs[e], exp_dist[e].lo, exp_dist[e].hi, kRefTol),
                   "probability enclosure " + render_basis(e, 2) + " = " +
                       ri_str(t.dist.probs[e]));

    const RealInterval agg0 = class_aggregate(t.dist, c.observed, 0);
    const RealInterval agg1 = class_aggregate(t.dist, c.observed, 1);
    ck.require(ri_near(agg0, 0.126, 0.640, kRefTol), "class-0 aggregate " + ri_str(agg0));
    ck.require(ri_near(agg1, 0.407, 1.221, kRefTol), "class-1 aggregate " + ri_str(agg1));
}

// ---------------------------------------------------------------------------
// 3. enclosure is sound but strictly wider than the reachable hull

void criterion_3(Check& ck) {
    const Circuit c = parse_circuit(
        "qubits 1\n"
        "inputs x\n"
        "rx q0 $x\n"
        "rx q0 1.5707963267948966\n"
        "measure q0\n");
    const double half_pi = std::numbers::pi / 2.0;
    const RealInterval range = ri(half_pi - 0.5, half_pi + 0.5);
    const AbstractEnvironment box{{"x", range}};

    const AbstractTrace t = run_abstract_trace(c, box, AbsMode::Stepwise, false);
    const RefAmp exp_mid[2] = {{0.51, 0.86, 0.0, 0.0}, {0.0, 0.0, -0.86, -0.51}};
    const RefAmp exp_fin[2] = {{-0.247, 0.247, 0.0, 0.0}, {0.0, 0.0, -1.216, -0.722}};
    for (int e = 0; e < 2; ++e) {
        ck.require(ci_near_ref(t.states[0].amps[e], exp_mid[e], kRefTol),
                   "intermediate enclosure " + render_basis(e, 1));
        ck.require(ci_near_ref(t.states[1].amps[e], exp_fin[e], kRefTol),
                   "final enclosure " + render_basis(e, 1));
    }

    // independent dense sweep of the reachable states
    const std::vector<ComplexInterval> hull = tu::hull_states_1var(c, "x", range, kHullSamples);
    for (int e = 0; e < 2; ++e)
        ck.require(tu::ci_subset(hull[e], t.states[1].amps[e], kHullSlack),
                   "sampled hull escapes the enclosure at " + render_basis(e, 1));
    // the |1> imaginary part witnesses strictness: reachable values stay in
    // [-1, -0.968] while the enclosure stretches past both ends
    const RealInterval& wide = t.states[1].amps[1].im;
    ck.require(wide.lo < hull[1].im.lo - 0.1 && wide.hi > hull[1].im.hi + 0.1,
               "enclosure " + ri_str(wide) + " does not strictly contain the hull " +
                   ri_str(hull[1].im));
}

// ---------------------------------------------------------------------------
// 4. symbolic composition tightens the probability enclosure

void criterion_4(Check& ck) {
    const Circuit c = parse_circuit(kDemoText);
    const AbstractEnvironment box = ball_env({{"x0", 6.0}, {"x1", 2.7}}, 0.5);
    const AbstractDistribution step = run_abstract(c, box, AbsMode::Stepwise, false);
    const AbstractDistribution symb = run_abstract(c, box, AbsMode::Symbolic, false);

    const RealInterval exp_symb[4] = {ri(0.165, 0.394), ri(0.128, 0.410), ri(0.0, 0.068),
                                      ri(0.320, 0.698)};
    for (int e = 0; e < 4; ++e) {
        ck.require(ri_near(symb.probs[e], exp_symb[e].lo, exp_symb[e].hi, kRefTol),
                   "composed enclosure " + render_basis(e, 2) + " = " + ri_str(symb.probs[e]));
        ck.require(tu::ri_subset(symb.probs[e], step.probs[e]) &&
                       symb.probs[e].width() < step.probs[e].width() - 0.01,
                   "composed enclosure not tighter at " + render_basis(e, 2));
    }
}

// ---------------------------------------------------------------------------
// 5. one split of the widest input, then certified robustness

void criterion_5(Check& ck) {
    const Circuit c = parse_circuit(kDemoText);
    AbstractEnvironment lo_box = ball_env({{"x0", 6.0}, {"x1", 2.7}}, 0.5);
    AbstractEnvironment hi_box = lo_box;
    lo_box["x0"] = ri(5.5, 6.0);
    hi_box["x0"] = ri(6.0, 6.5);

    const AbstractDistribution joined =
        union_distributions(run_abstract(c, lo_box, AbsMode::Symbolic, false),
                            run_abstract(c, hi_box, AbsMode::Symbolic, false));
    const RealInterval exp_union[4] = {ri(0.176, 0.387), ri(0.139, 0.367), ri(0.0, 0.057),
                                       ri(0.322, 0.674)};
    for (int e = 0; e < 4; ++e)
        ck.require(ri_near(joined.probs[e], exp_union[e].lo, exp_union[e].hi, kRefTol),
                   "split union " + render_basis(e, 2) + " = " + ri_str(joined.probs[e]));

    VerificationProblem p;
    p.circuit = c;
    p.center = {{"x0", 6.0}, {"x1", 2.7}};
    p.eps = 0.5;
    p.observed = c.observed;
    p.config.mode = AbsMode::Symbolic;
    p.config.clipped = false;
    const Verdict v = verify_robust(p);
    ck.require(v.status == Status::Robust, std::string("verdict ") + status_name(v.status));
    ck.require(v.regions_explored <= 3,
               "regions explored = " + std::to_string(v.regions_explored));
}

// ---------------------------------------------------------------------------
// 6. non-dominated class set over two observed qubits

void criterion_6(Check& ck) {
    AbstractDistribution d;
    d.probs.assign(8, ri(0.0, 0.0));
    d.probs[0b000] = ri(0.2, 0.46);
    d.probs[0b001] = ri(0.0, 0.2);
    d.probs[0b010] = ri(0.09, 0.10);
    d.probs[0b101] = ri(0.11, 0.6);
    d.probs[0b111] = ri(0.11, 0.6);
    const std::vector<int> observed{2, 0};

    ck.require(ri_near(class_aggregate(d, observed, 0b00), 0.29, 0.56, 1e-12),
               "class-00 aggregate");
    ck.require(ri_near(class_aggregate(d, observed, 0b11), 0.22, 1.2, 1e-12),
               "class-11 aggregate");
    const std::vector<std::uint64_t> classes = classify_abstract(d, observed);
    ck.require(classes == std::vector<std::uint64_t>{0b00, 0b11},
               "non-dominated set has " + std::to_string(classes.size()) + " classes");
}

// ---------------------------------------------------------------------------
// 7. maximum certified radius at a known decision boundary

void criterion_7(Check& ck) {
    const Circuit c = parse_circuit(
        "qubits 1\n"
        "inputs x\n"
        "rx q0 $x\n"
        "measure q0\n");
    RefinementConfig cfg;
    cfg.mode = AbsMode::Stepwise;
    cfg.clipped = false;
    const MaxEpsResult m = max_epsilon(c, {{"x", 0.0}}, c.observed, 0.01, 2.0, 2e-4, cfg);
    // P(1) = sin^2(x/2), so the class flips exactly at |x| = pi/2
    ck.require(near(m.value, std::numbers::pi / 2.0, 1e-3),
               "certified radius = " + fmt(m.value));
    ck.require(m.bracket_hi - m.bracket_lo <= 2e-4 + 1e-12,
               "bracket width = " + fmt(m.bracket_hi - m.bracket_lo));
}

// ---------------------------------------------------------------------------
// 8-9. random corpus: containment and point-box agreement

std::vector<Circuit> make_corpus() {
    std::mt19937_64 rng(20260817ULL);
    tu::RandomCircuitOpts opts;
    opts.max_qubits = 4;
    opts.max_gates = 30;
    opts.max_inputs = 4;
    std::vector<Circuit> corpus;
    corpus.reserve(100);
    for (int i = 0; i < 100; ++i) corpus.push_back(tu::random_circuit(rng, opts));
    return corpus;
}

void criterion_8(Check& ck, const std::vector<Circuit>& corpus, double* seconds) {
    const auto t0 = clock_type::now();
    std::mt19937_64 rng(0xb0c5ULL);
    std::int64_t violations = 0;
    std::string first;
    for (const Circuit& c : corpus) {
        for (int b = 0; b < 100; ++b) {
            const AbstractEnvironment box = tu::random_box(rng, c);
            const ProbeReport r = soundness_probe(c, box, 100);
            violations += r.violations;
            if (first.empty() && !r.details.empty()) first = r.details.front();
        }
    }
    *seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    ck.require(violations == 0,
               std::to_string(violations) + " containment violations; first: " + first);
    ck.require(*seconds < 600.0, "took " + fmt(*seconds) + " s");
}

void criterion_9(Check& ck, const std::vector<Circuit>& corpus) {
    std::mt19937_64 rng(0x9047ULL);
    constexpr double kPointTol = 1e-9;
    double worst = 0.0;
    for (const Circuit& c : corpus) {
        for (int trial = 0; trial < 3; ++trial) {
            const Environment env = tu::random_env(rng, c);
            AbstractEnvironment point;
            for (const auto& [name, v] : env) point.emplace(name, ri(v, v));
            const std::vector<double>& probs = run_concrete(c, env).dist.probs;

            ScopedStrictSoundness strict(true);
            for (AbsMode mode : {AbsMode::Stepwise, AbsMode::Symbolic}) {
                for (bool clipped : {false, true}) {
                    const AbstractDistribution d = run_abstract(c, point, mode, clipped);
                    for (size_t e = 0; e < probs.size(); ++e) {
                        worst = std::max({worst, std::abs(d.probs[e].lo - probs[e]),
                                          std::abs(d.probs[e].hi - probs[e])});
                    }
                }
            }
        }
    }
    ck.require(worst <= kPointTol, "worst point-box deviation " + fmt(worst));
}

// ---------------------------------------------------------------------------
// 10. hull-exactness dichotomy over the gate alphabet

void criterion_10(Check& ck) {
    const RealInterval range = ri(0.9, 1.7);
    // enc is the encoding rotation producing the one-variable state family
    // the gate under test is applied to
    const auto circuit_for = [&](const std::string& enc, const std::string& gate_line) {
        return parse_circuit("qubits 2\ninputs x\n" + enc + " q0 $x\n" + gate_line +
                             "\nmeasure q0\n");
    };
    const auto final_state = [&](const Circuit& c) {
        const AbstractTrace t =
            run_abstract_trace(c, {{"x", range}}, AbsMode::Stepwise, false);
        const std::vector<ComplexInterval> hull =
            tu::hull_states_1var(c, "x", range, kHullSamples);
        return std::pair{t.states.back().amps, hull};
    };

    // Exact gates must be hull-exact over every family; check both encodings.
    const char* exact_gates[] = {"x q0", "cx q0 q1", "rz q0 0.77",
                                 "rx q0 3.141592653589793", "ry q0 3.141592653589793",
                                 "ry q0 6.283185307179586"};
    for (const char* g : exact_gates) {
        for (const char* enc : {"rx", "ry"}) {
            const Circuit c = circuit_for(enc, g);
            const auto [abs_state, hull] = final_state(c);
            ck.require(is_generalized_permutation(full_unitary(c.ops.back(), 2)),
                       std::string(g) + " not recognized as a generalized permutation");
            for (size_t e = 0; e < abs_state.size(); ++e) {
                ck.require(tu::ci_subset(hull[e], abs_state[e], kHullSlack),
                           std::string(g) + ": hull escapes enclosure");
                ck.require(tu::ci_close(abs_state[e], hull[e], 1e-5),
                           std::string(g) + ": enclosure wider than the hull at basis " +
                               render_basis(e, 2));
            }
        }
    }

    // A dense gate loses precision when it mixes components that depend on
    // the same input: rx feeds the amplitudes' re/im parts, so a dense rx
    // widens over an rx family; ry and h mix real parts, so they widen over
    // a ry family. One witnessing family per gate is what incompleteness
    // asks for.
    const std::pair<const char*, const char*> dense_gates[] = {
        {"rx", "rx q0 0.3"}, {"rx", "rx q0 0.7"}, {"rx", "rx q0 2.0"},
        {"ry", "ry q0 1.2"}, {"ry", "ry q0 -1.3"}, {"ry", "h q0"}};
    for (const auto& [enc, g] : dense_gates) {
        const Circuit c = circuit_for(enc, g);
        const auto [abs_state, hull] = final_state(c);
        ck.require(!is_generalized_permutation(full_unitary(c.ops.back(), 2)),
                   std::string(g) + " misclassified as a generalized permutation");
        double widest_gap = 0.0;
        for (size_t e = 0; e < abs_state.size(); ++e) {
            ck.require(tu::ci_subset(hull[e], abs_state[e], kHullSlack),
                       std::string(g) + ": hull escapes enclosure");
            widest_gap = std::max({widest_gap,
                                   abs_state[e].re.width() - hull[e].re.width(),
                                   abs_state[e].im.width() - hull[e].im.width()});
        }
        ck.require(widest_gap > 1e-3,
                   std::string(g) + " unexpectedly hull-exact (gap " + fmt(widest_gap) + ")");
    }
}

// ---------------------------------------------------------------------------
// 11. bundled models end to end: verify, report, max-radius search

struct Picked {
    Environment env;
    int label;
    double margin;
};

std::vector<Picked> confident_samples(const Circuit& c, const std::vector<DatasetSample>& data,
                                      size_t per_class) {
    std::vector<Picked> all;
    for (const DatasetSample& s : data) {
        Environment env;
        for (size_t i = 0; i < c.input_vars.size(); ++i)
            env[c.input_vars[i]] = s.features[i % s.features.size()];
        const double p1 = class_probability(run_concrete(c, env).dist, c.observed, 1);
        all.push_back({env, s.label, s.label == 1 ? p1 - 0.5 : 0.5 - p1});
    }
    std::sort(all.begin(), all.end(),
              [](const Picked& a, const Picked& b) { return a.margin > b.margin; });
    std::vector<Picked> out;
    size_t n0 = 0, n1 = 0;
    for (const Picked& p : all) {
        size_t& n = p.label == 0 ? n0 : n1;
        if (n == per_class) continue;
        ++n;
        out.push_back(p);
    }
    return out;
}

void check_model(Check& ck, const std::string& weights_path,
                 const std::vector<DatasetSample>& data, double eps_verify, double eps_min,
                 double eps_max, double tau, bool scale_radius_by_margin, double value_floor) {
    const WeightsFile w = load_weights(weights_path);
    const auto kind = model_kind_of(w.model);
    ck.require(kind.has_value(), weights_path + ": unknown model " + w.model);
    if (!kind) return;
    const Circuit c = build_model(*kind, w.weights);

    const std::vector<Picked> picks = confident_samples(c, data, 5);
    ck.require(picks.size() >= 10,
               w.model + ": only " + std::to_string(picks.size()) + " samples");

    for (const Picked& pk : picks) {
        VerificationProblem p;
        p.circuit = c;
        p.center = pk.env;
        p.eps = eps_verify;
        p.observed = c.observed;

        auto t0 = clock_type::now();
        const Verdict v = verify_robust(p);
        const double verify_ms =
            std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
        ck.require(v.status == Status::Robust,
                   w.model + " sample (label " + std::to_string(pk.label) + ") " +
                       status_name(v.status) + " at eps " + fmt(eps_verify));
        ck.require(v.target_class == static_cast<std::uint64_t>(pk.label),
                   w.model + ": center classifies off its dataset label");

        double lo = eps_min, hi = eps_max, step_tau = tau;
        if (scale_radius_by_margin) {
            hi = std::max(4e-4, pk.margin / 250.0);
            lo = hi / 16.0;
            step_tau = hi / 8.0;
        }
        t0 = clock_type::now();
        const MaxEpsResult m = max_epsilon(c, pk.env, c.observed, lo, hi, step_tau, p.config);
        const double maxeps_s = std::chrono::duration<double>(clock_type::now() - t0).count();
        ck.require(maxeps_s < 60.0, w.model + ": max-radius search took " + fmt(maxeps_s) + " s");
        ck.require(m.value >= value_floor,
                   w.model + ": certified radius " + fmt(m.value) + " below " +
                       fmt(value_floor));

        Report rep = make_report(p, v, verify_ms);
        add_max_eps(rep, m);
        const std::string json = report_to_json(rep);
        for (const char* key :
             {"\"status\"", "\"class\"", "\"epsilon\"", "\"max_epsilon\"",
              "\"regions_explored\"", "\"max_depth_reached\"", "\"mode\"", "\"clip\"",
              "\"runtime_ms\"", "\"per_class_intervals\""}) {
            ck.require(json.find(key) != std::string::npos,
                       w.model + ": report is missing " + key);
        }
        const Report back = report_from_json(json);
        ck.require(back.status == rep.status && back.cls == rep.cls &&
                       back.epsilon == rep.epsilon && back.max_eps == rep.max_eps &&
                       back.regions_explored == rep.regions_explored &&
                       back.mode == rep.mode && back.clip == rep.clip,
                   w.model + ": report does not survive a JSON round trip");
    }
}

void criterion_11(Check& ck) {
    const auto iris = load_iris("data/iris.csv", {"setosa", "versicolor"});
    const auto digits = load_mnist_4x4("data/digits-images-idx3-ubyte",
                                       "data/digits-labels-idx1-ubyte", {0, 1});
    check_model(ck, "data/qcl_demo_weights.json", iris, 0.02, 5e-3, 0.3, 0.03, false, 0.05);
    check_model(ck, "data/ccqc_demo_weights.json", iris, 0.02, 5e-3, 0.3, 0.03, false, 0.05);
    check_model(ck, "data/pv_demo_weights.json", digits, 5e-4, 0.0, 0.0, 0.0, true, 4e-4);
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* description;
        std::function<void(Check&)> fn;
        double budget_s;  // wall-clock bound included in the verdict
    };

    std::vector<Circuit> corpus = make_corpus();
    double probe_seconds = 0.0;

    const std::vector<Entry> entries = {
        {1, "concrete pipeline reproduces the reference amplitudes, distribution, and class",
         criterion_1, 1.0},
        {2, "stepwise abstract enclosure matches the reference intervals and class aggregates",
         criterion_2, 1.0},
        {3, "enclosure soundly and strictly contains the sampled reachable hull", criterion_3,
         1.0},
        {4, "symbolic composition tightens every probability interval", criterion_4, 1.0},
        {5, "split-and-union refinement matches the reference; robustness certified within 3 "
            "regions",
         criterion_5, 1.0},
        {6, "abstract classification returns exactly the two non-dominated classes",
         criterion_6, 1.0},
        {7, "maximum certified radius at a known decision boundary within 1e-3", criterion_7,
         5.0},
        {8, "zero containment violations over 100 circuits x 100 boxes x 100 samples",
         [&](Check& ck) { criterion_8(ck, corpus, &probe_seconds); }, 600.0},
        {9, "point boxes reproduce concrete distributions within 1e-9",
         [&](Check& ck) { criterion_9(ck, corpus); }, 600.0},
        {10, "generalized permutations are hull-exact, dense rotations strictly widen",
         criterion_10, 60.0},
        {11, "bundled models verify 10 samples each with schema-valid reports, max radius "
             "under 60 s per sample",
         criterion_11, 600.0},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        Check ck;
        const auto t0 = clock_type::now();
        try {
            entry.fn(ck);
        } catch (const std::exception& e) {
            ck.require(false, std::string("threw: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(clock_type::now() - t0).count();
        ck.require(elapsed < entry.budget_s,
                   "exceeded " + fmt(entry.budget_s) + " s budget (" + fmt(elapsed) + " s)");

        std::string line = entry.description;
        if (!ck.ok) line += " [" + ck.note + "]";
        std::printf("criterion %d: %s — %s\n", entry.id, ck.ok ? "PASS" : "FAIL",
                    line.c_str());
        std::fflush(stdout);
        if (!ck.ok) ++failures;
    }
    return failures;
}
