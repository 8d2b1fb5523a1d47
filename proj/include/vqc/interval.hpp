#ifndef VQC_INTERVAL_HPP
#define VQC_INTERVAL_HPP

#include <complex>
#include <utility>

namespace vqc {

// Closed bounded real interval. Empty is an explicit state, never encoded
// by inverted bounds; non-empty intervals always satisfy lo <= hi and both
// bounds finite.
struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;

    bool is_empty() const { return empty; }
    double width() const { return hi - lo; }
    double mid() const;
    bool contains(double v) const { return !empty && lo <= v && v <= hi; }
    bool contains_zero() const { return contains(0.0); }

    friend bool operator==(const RealInterval& a, const RealInterval& b) {
        if (a.empty || b.empty) return a.empty == b.empty;
        return a.lo == b.lo && a.hi == b.hi;
    }
};

// Validating constructors. ri throws std::invalid_argument on non-finite or
// inverted bounds (unbounded intervals are out of the domain by design).
RealInterval ri(double lo, double hi);
RealInterval ri_point(double v);
RealInterval ri_empty();

// Strict-soundness mode: when enabled, ri_add/ri_sub/ri_mul/ri_sq/itv_trig
// widen results outward by one ulp so floating-point evaluation stays a
// superset of the exact real-arithmetic result. Off by default; verification
// paths enable it, plain enclosure printing leaves it off. Thread-local.
bool strict_soundness_enabled();

class ScopedStrictSoundness {
  public:
    explicit ScopedStrictSoundness(bool on);
    ~ScopedStrictSoundness();
    ScopedStrictSoundness(const ScopedStrictSoundness&) = delete;
    ScopedStrictSoundness& operator=(const ScopedStrictSoundness&) = delete;

  private:
    bool prev_;
};

// Arithmetic. Empty operands propagate to Empty.
RealInterval ri_add(const RealInterval& a, const RealInterval& b);
RealInterval ri_sub(const RealInterval& a, const RealInterval& b);
RealInterval ri_neg(const RealInterval& a);
RealInterval ri_mul(const RealInterval& a, const RealInterval& b);
// Dependency-aware square: [0, max(lo^2, hi^2)] when 0 is inside. Strictly
// tighter than ri_mul(a, a) there; never wider anywhere.
RealInterval ri_sq(const RealInterval& a);

// Lattice / order operations. These are exact and never rounded outward.
RealInterval ri_meet(const RealInterval& a, const RealInterval& b);
RealInterval ri_hull(const RealInterval& a, const RealInterval& b);
// Strict interval order: every point of a lies below every point of b.
bool ri_strictly_below(const RealInterval& a, const RealInterval& b);
// Midpoint split; union of the halves equals the input. Throws
// std::domain_error on width-zero input, std::invalid_argument on Empty.
std::pair<RealInterval, RealInterval> ri_split(const RealInterval& a);

// Exact ranges of sin and cos over an interval: endpoint values plus every
// multiple of pi/2 inside (critical points evaluate to exact 0/+-1). Both
// results are subsets of [-1, 1].
struct TrigRanges {
    RealInterval sin_range;
    RealInterval cos_range;
};
TrigRanges itv_trig(const RealInterval& a);

// Complex interval: an axis-aligned box in the complex plane.
struct ComplexInterval {
    RealInterval re;
    RealInterval im;

    bool is_empty() const { return re.is_empty() || im.is_empty(); }

    friend bool operator==(const ComplexInterval& a, const ComplexInterval& b) {
        return a.re == b.re && a.im == b.im;
    }
};

ComplexInterval ci(const RealInterval& re, const RealInterval& im);
ComplexInterval ci_point(std::complex<double> z);
ComplexInterval ci_zero();

ComplexInterval ci_add(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval ci_neg(const ComplexInterval& a);
ComplexInterval ci_mul(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval ci_mul(std::complex<double> a, const ComplexInterval& b);
// |a|^2 via the dependency-aware square of each part; a RealInterval.
RealInterval ci_sqmod(const ComplexInterval& a);
ComplexInterval ci_meet(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval ci_hull(const ComplexInterval& a, const ComplexInterval& b);
bool ci_contains(const ComplexInterval& a, std::complex<double> z);

}  // namespace vqc

#endif
