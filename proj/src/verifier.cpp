#include "vqc/verifier.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <exception>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

namespace vqc {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

enum class BoxKind { Safe, Witness, Undecided };

struct BoxOutcome {
    BoxKind kind = BoxKind::Undecided;
    std::optional<Environment> witness;
};

BoxOutcome evaluate_box(const Circuit& c, const AbstractEnvironment& box,
                        std::uint64_t target, const std::vector<int>& observed,
                        const RefinementConfig& cfg) {
    {
        ScopedStrictSoundness strict(true);
        const AbstractDistribution dist = run_abstract(c, box, cfg.mode, cfg.clipped);
        const std::vector<std::uint64_t> classes = classify_abstract(dist, observed);
        if (classes.size() == 1 && classes[0] == target) return {BoxKind::Safe, {}};
    }
    if (auto w = find_counterexample(c, box, target, observed))
        return {BoxKind::Witness, std::move(w)};
    return {BoxKind::Undecided, {}};
}

// Widest input interval; ties keep the first variable in declaration order.
std::pair<std::string, double> widest_input(const Circuit& c,
                                            const AbstractEnvironment& box) {
    std::string name;
    double width = -1.0;
    for (const std::string& v : c.input_vars) {
        auto it = box.find(v);
        if (it != box.end() && it->second.width() > width) {
            name = v;
            width = it->second.width();
        }
    }
    return {name, width};
}

std::uint64_t hash_box(const AbstractEnvironment& box) {
    std::uint64_t h = 1469598103934665603ULL;
    const auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [name, r] : box) {
        for (unsigned char ch : name) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
        mix(std::bit_cast<std::uint64_t>(r.lo));
        mix(std::bit_cast<std::uint64_t>(r.hi));
    }
    return h;
}

}  // namespace

const char* status_name(Status s) {
    switch (s) {
        case Status::Robust: return "robust";
        case Status::Falsified: return "falsified";
        default: return "unknown";
    }
}

Verdict verify_robust(const VerificationProblem& p) {
    if (p.config.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
    if (!(p.config.min_width > 0.0)) throw std::invalid_argument("min_width must be > 0");
    for (const std::string& v : p.circuit.input_vars)
        if (!p.center.count(v))
            throw std::invalid_argument("center does not bind input variable '" + v + "'");

    Verdict verdict;
    verdict.target_class = classify(run_concrete(p.circuit, p.center).dist, p.observed);

    std::vector<AbstractEnvironment> level{ball_env(p.center, p.eps)};
    bool exhausted = false;
    for (int depth = 0; !level.empty(); ++depth) {
        verdict.max_depth_reached = depth;
        verdict.regions_explored += static_cast<std::int64_t>(level.size());

        const std::int64_t count = static_cast<std::int64_t>(level.size());
        std::vector<BoxOutcome> outcomes(level.size());
        std::vector<std::exception_ptr> errors(level.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (p.config.parallel)
#endif
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                outcomes[i] = evaluate_box(p.circuit, level[i], verdict.target_class,
                                           p.observed, p.config);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);

        // Aggregate in index order: the first witness is canonical no matter
        // how the level was scheduled.
        std::vector<AbstractEnvironment> next;
        for (std::int64_t i = 0; i < count; ++i) {
            BoxOutcome& out = outcomes[i];
            if (out.kind == BoxKind::Witness) {
                verdict.status = Status::Falsified;
                verdict.witness = std::move(out.witness);
                return verdict;
            }
            if (out.kind != BoxKind::Undecided) continue;
            const auto [var, width] = widest_input(p.circuit, level[i]);
            if (depth >= p.config.max_depth || width <= p.config.min_width) {
                exhausted = true;
                continue;
            }
            const auto halves = ri_split(level[i].at(var));
            AbstractEnvironment lo = level[i];
            AbstractEnvironment hi = std::move(level[i]);
            lo[var] = halves.first;
            hi[var] = halves.second;
            next.push_back(std::move(lo));
            next.push_back(std::move(hi));
        }
        level = std::move(next);
    }
    verdict.status = exhausted ? Status::Unknown : Status::Robust;
    return verdict;
}

std::optional<Environment> find_counterexample(const Circuit& c,
                                               const AbstractEnvironment& box,
                                               std::uint64_t target,
                                               const std::vector<int>& observed) {
    const std::vector<std::pair<std::string, RealInterval>> vars(box.begin(), box.end());
    const auto misclassifies = [&](const Environment& env) {
        return classify(run_concrete(c, env).dist, observed) != target;
    };

    Environment center;
    for (const auto& [name, r] : vars) center[name] = r.mid();
    if (misclassifies(center)) return center;

    constexpr size_t kCornerBits = 10;
    const size_t corners = size_t{1} << std::min(vars.size(), kCornerBits);
    for (size_t mask = 0; mask < corners; ++mask) {
        Environment env;
        for (size_t j = 0; j < vars.size(); ++j) {
            const RealInterval& r = vars[j].second;
            env[vars[j].first] = (j < kCornerBits && (mask >> j) & 1) ? r.hi : r.lo;
        }
        if (misclassifies(env)) return env;
    }
    return std::nullopt;
}

MaxEpsResult max_epsilon(const Circuit& c, const Environment& center,
                         const std::vector<int>& observed, double eps_min,
                         double eps_max, double tau, const RefinementConfig& cfg) {
    if (!(eps_min > 0.0) || !(eps_min <= eps_max))
        throw std::invalid_argument("need 0 < eps_min <= eps_max");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
    const auto robust_at = [&](double eps) {
        VerificationProblem p;
        p.circuit = c;
        p.center = center;
        p.eps = eps;
        p.observed = observed;
        p.config = cfg;
        return verify_robust(p).status == Status::Robust;
    };

    MaxEpsResult r;
    if (!robust_at(eps_min)) {
        r.bracket_hi = eps_min;
        r.diagnostic = "not robust at the minimum radius " + fmt_double(eps_min);
        return r;
    }
    r.robust_at_min = true;

    double lo = eps_min;
    double hi = eps_max;
    bool have_failure = false;
    while (2.0 * lo <= eps_max) {
        if (robust_at(2.0 * lo)) {
            lo = 2.0 * lo;
        } else {
            hi = 2.0 * lo;
            have_failure = true;
            break;
        }
    }
    if (!have_failure) {
        if (lo == eps_max || robust_at(eps_max)) {
            r.value = r.bracket_lo = r.bracket_hi = eps_max;
            r.diagnostic = "still robust at the search ceiling " + fmt_double(eps_max);
            return r;
        }
        hi = eps_max;
    }
    while (hi - lo > tau) {
        const double mid = std::midpoint(lo, hi);
        if (mid <= lo || mid >= hi) break;
        if (robust_at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    r.value = lo;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    return r;
}

ProbeReport soundness_probe(const Circuit& c, const AbstractEnvironment& box,
                            int samples, bool parallel) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    for (const std::string& v : c.input_vars)
        if (!box.count(v)) throw std::out_of_range("unbound variable '" + v + "'");

    struct Combo {
        AbsMode mode;
        bool clipped;
        const char* label;
    };
    constexpr std::array<Combo, 4> combos{{{AbsMode::Stepwise, false, "stepwise/unclipped"},
                                           {AbsMode::Stepwise, true, "stepwise/clipped"},
                                           {AbsMode::Symbolic, false, "symbolic/unclipped"},
                                           {AbsMode::Symbolic, true, "symbolic/clipped"}}};
    std::array<AbstractDistribution, 4> bounds;
    {
        ScopedStrictSoundness strict(true);
        for (size_t k = 0; k < combos.size(); ++k)
            bounds[k] = run_abstract(c, box, combos[k].mode, combos[k].clipped);
    }

    const std::uint64_t seed = hash_box(box);
    std::vector<std::vector<std::string>> found(static_cast<size_t>(samples));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(samples));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 0; i < samples; ++i) {
        try {
            std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (std::uint64_t{1} + i));
            Environment env;
            for (const auto& [name, r] : box) {
                env[name] = r.width() == 0.0
                                ? r.lo
                                : std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
            }
            const std::vector<double> probs = run_concrete(c, env).dist.probs;
            for (size_t k = 0; k < combos.size(); ++k) {
                for (size_t e = 0; e < probs.size(); ++e) {
                    const RealInterval& b = bounds[k].probs[e];
                    if (probs[e] < b.lo - kContainmentSlack ||
                        probs[e] > b.hi + kContainmentSlack) {
                        found[i].push_back("sample " + std::to_string(i) + " " +
                                           combos[k].label + " basis " +
                                           render_basis(e, c.n_qubits) + ": probability " +
                                           fmt_double(probs[e]) + " outside [" +
                                           fmt_double(b.lo) + ", " + fmt_double(b.hi) + "]");
                    }
                }
            }
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    ProbeReport report;
    report.samples = samples;
    for (const auto& per_sample : found) {
        report.violations += static_cast<std::int64_t>(per_sample.size());
        for (const std::string& d : per_sample)
            if (report.details.size() < 8) report.details.push_back(d);
    }
    return report;
}

}  // namespace vqc
