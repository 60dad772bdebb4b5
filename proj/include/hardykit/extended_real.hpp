#pragma once

#include <cmath>
#include <string>

#include "hardykit/interval.hpp"

namespace hardykit {

/// Nonnegative extended real. Distinguishes a genuine +inf (proved or detected
/// divergence) from a floating-point overflow that merely exceeded double range.
class ExtReal {
  public:
    ExtReal() : value_(0.0), infinite_(false), overflow_(false) {}

    static ExtReal finite(double v) {
        ExtReal r;
        r.value_ = v;
        return r;
    }
    static ExtReal infinity() {
        ExtReal r;
        r.infinite_ = true;
        return r;
    }
    static ExtReal overflow() {
        ExtReal r;
        r.infinite_ = true;
        r.overflow_ = true;
        return r;
    }

    bool is_finite() const { return !infinite_; }
    bool is_infinite() const { return infinite_; }
    bool from_overflow() const { return overflow_; }

    /// Finite value; +inf when infinite (either kind).
    double as_double() const { return infinite_ ? kInf : value_; }

    bool operator==(const ExtReal& o) const {
        if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
        return value_ == o.value_;
    }
    bool operator<(const ExtReal& o) const {
        if (infinite_) return false;
        if (o.infinite_) return true;
        return value_ < o.value_;
    }

    std::string str() const {
        if (infinite_) return overflow_ ? "inf(overflow)" : "inf";
        return std::to_string(value_);
    }

  private:
    double value_;
    bool infinite_;
    bool overflow_;
};

/// exp() that reports overflow as the dedicated ExtReal state instead of
/// silently promoting it to a mathematical infinity.
inline ExtReal ext_exp(double log_value) {
    if (std::isnan(log_value)) return ExtReal::overflow();
    if (log_value == kInf) return ExtReal::infinity();
    if (log_value == -kInf) return ExtReal::finite(0.0);
    double v = std::exp(log_value);
    if (!std::isfinite(v)) return ExtReal::overflow();
    return ExtReal::finite(v);
}

}  // namespace hardykit
