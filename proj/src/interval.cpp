#include "vqc/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vqc {

namespace {

thread_local bool g_strict_soundness = false;

double round_down(double x) {
    if (g_strict_soundness)
        return std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}

double round_up(double x) {
    if (g_strict_soundness)
        return std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

RealInterval outward(double lo, double hi) {
    return RealInterval{round_down(lo), round_up(hi), false};
}

}  // namespace

double RealInterval::mid() const { return std::midpoint(lo, hi); }

RealInterval ri(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("interval bounds must be finite");
    if (lo > hi)
        throw std::invalid_argument("interval bounds inverted");
    return RealInterval{lo, hi, false};
}

RealInterval ri_point(double v) { return ri(v, v); }

RealInterval ri_empty() { return RealInterval{0.0, 0.0, true}; }

bool strict_soundness_enabled() { return g_strict_soundness; }

ScopedStrictSoundness::ScopedStrictSoundness(bool on) : prev_(g_strict_soundness) {
    g_strict_soundness = on;
}

ScopedStrictSoundness::~ScopedStrictSoundness() { g_strict_soundness = prev_; }

RealInterval ri_add(const RealInterval& a, const RealInterval& b) {
    if (a.empty || b.empty) return ri_empty();
    return outward(a.lo + b.lo, a.hi + b.hi);
}

RealInterval ri_neg(const RealInterval& a) {
    if (a.empty) return ri_empty();
    return RealInterval{-a.hi, -a.lo, false};
}

RealInterval ri_sub(const RealInterval& a, const RealInterval& b) {
    return ri_add(a, ri_neg(b));
}

RealInterval ri_mul(const RealInterval& a, const RealInterval& b) {
    if (a.empty || b.empty) return ri_empty();
    const double p1 = a.lo * b.lo;
    const double p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo;
    const double p4 = a.hi * b.hi;
    return outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

RealInterval ri_sq(const RealInterval& a) {
    if (a.empty) return ri_empty();
    const double s1 = a.lo * a.lo;
    const double s2 = a.hi * a.hi;
    const double hi = round_up(std::max(s1, s2));
    if (a.contains_zero()) return RealInterval{0.0, hi, false};
    // lo is a square of a nonzero bound; one-ulp widening keeps it positive.
    return RealInterval{round_down(std::min(s1, s2)), hi, false};
}

RealInterval ri_meet(const RealInterval& a, const RealInterval& b) {
    if (a.empty || b.empty) return ri_empty();
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo > hi) return ri_empty();
    return RealInterval{lo, hi, false};
}

RealInterval ri_hull(const RealInterval& a, const RealInterval& b) {
    if (a.empty) return b;
    if (b.empty) return a;
    return RealInterval{std::min(a.lo, b.lo), std::max(a.hi, b.hi), false};
}

bool ri_strictly_below(const RealInterval& a, const RealInterval& b) {
    if (a.empty || b.empty) return false;
    return a.hi < b.lo;
}

std::pair<RealInterval, RealInterval> ri_split(const RealInterval& a) {
    if (a.empty) throw std::invalid_argument("cannot split the empty interval");
    if (a.lo == a.hi) throw std::domain_error("degenerate interval is unsplittable");
    const double m = a.mid();
    return {RealInterval{a.lo, m, false}, RealInterval{m, a.hi, false}};
}

TrigRanges itv_trig(const RealInterval& a) {
    if (a.empty) return {ri_empty(), ri_empty()};
    constexpr double pi = std::numbers::pi;
    if (a.width() >= 2.0 * pi)
        return {ri(-1.0, 1.0), ri(-1.0, 1.0)};

    double sin_lo = std::sin(a.lo), sin_hi = sin_lo;
    double cos_lo = std::cos(a.lo), cos_hi = cos_lo;
    const auto consider = [&](double s, double c) {
        sin_lo = std::min(sin_lo, s);
        sin_hi = std::max(sin_hi, s);
        cos_lo = std::min(cos_lo, c);
        cos_hi = std::max(cos_hi, c);
    };
    consider(std::sin(a.hi), std::cos(a.hi));

    // Multiples of pi/2 inside the interval; their sin/cos values are exact
    // 0/+-1 by quadrant, which pins the bound when an extremum is interior.
    const long long k_lo = static_cast<long long>(std::ceil(a.lo / (pi / 2.0)));
    const long long k_hi = static_cast<long long>(std::floor(a.hi / (pi / 2.0)));
    for (long long k = k_lo; k <= k_hi; ++k) {
        switch (((k % 4) + 4) % 4) {
            case 0: consider(0.0, 1.0); break;
            case 1: consider(1.0, 0.0); break;
            case 2: consider(0.0, -1.0); break;
            default: consider(-1.0, 0.0); break;
        }
    }

    // Outward-round the sampled bounds, then clamp: the true ranges always
    // lie inside [-1, 1], so clamping cannot cut off a reachable value.
    const auto clamp1 = [](RealInterval r) {
        r.lo = std::max(r.lo, -1.0);
        r.hi = std::min(r.hi, 1.0);
        return r;
    };
    return {clamp1(outward(sin_lo, sin_hi)), clamp1(outward(cos_lo, cos_hi))};
}

ComplexInterval ci(const RealInterval& re, const RealInterval& im) {
    return ComplexInterval{re, im};
}

ComplexInterval ci_point(std::complex<double> z) {
    return ComplexInterval{ri_point(z.real()), ri_point(z.imag())};
}

ComplexInterval ci_zero() { return ci_point({0.0, 0.0}); }

ComplexInterval ci_add(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval{ri_add(a.re, b.re), ri_add(a.im, b.im)};
}

ComplexInterval ci_neg(const ComplexInterval& a) {
    return ComplexInterval{ri_neg(a.re), ri_neg(a.im)};
}

ComplexInterval ci_mul(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval{ri_sub(ri_mul(a.re, b.re), ri_mul(a.im, b.im)),
                           ri_add(ri_mul(a.re, b.im), ri_mul(a.im, b.re))};
}

ComplexInterval ci_mul(std::complex<double> a, const ComplexInterval& b) {
    return ci_mul(ci_point(a), b);
}

RealInterval ci_sqmod(const ComplexInterval& a) {
    return ri_add(ri_sq(a.re), ri_sq(a.im));
}

ComplexInterval ci_meet(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval{ri_meet(a.re, b.re), ri_meet(a.im, b.im)};
}

ComplexInterval ci_hull(const ComplexInterval& a, const ComplexInterval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return ComplexInterval{ri_hull(a.re, b.re), ri_hull(a.im, b.im)};
}

bool ci_contains(const ComplexInterval& a, std::complex<double> z) {
    return a.re.contains(z.real()) && a.im.contains(z.imag());
}

}  // namespace vqc
