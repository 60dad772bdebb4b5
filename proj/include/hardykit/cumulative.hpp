#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "hardykit/quadrature.hpp"

namespace hardykit {

enum class TailKind { UpperTail, LowerTail };

/// Monotone cumulative integral: UpperTail(x) = int_x^b, LowerTail(x) = int_a^x.
/// Values are computed independently per point (cache is a pure memo), so
/// results do not depend on evaluation order or thread scheduling.
class CumulativeIntegral {
  public:
    using ClosedFormFn = std::function<std::optional<ExtReal>(double)>;

    CumulativeIntegral(TailKind kind, Interval iv, Integrand integrand, QuadratureSettings settings,
                       std::optional<ClosedFormFn> closed_form, std::optional<PowerForm> cum_pf);

    TailKind kind() const { return kind_; }
    const Interval& interval() const { return interval_; }
    const QuadratureSettings& settings() const { return settings_; }

    /// Cumulative value at an interior point (cached, monotonicity-checked).
    ExtReal eval(double x) const;

    /// Value plus the absolute quadrature error estimate (0 for closed forms).
    std::pair<ExtReal, double> eval_with_error(double x) const;

    /// Pure-power descriptor of the cumulative itself, when exact.
    const std::optional<PowerForm>& power_form() const { return cum_pf_; }

    /// Limit toward the inner endpoint (b for LowerTail, a for UpperTail):
    /// the total mass, possibly infinite.
    ExtReal total_mass() const;

    /// Number of cached evaluation points.
    std::size_t cache_size() const;

  private:
    struct Entry {
        double value;
        double err;
        bool infinite;
    };

    Entry compute(double x) const;
    void check_monotone(double x, const Entry& e) const;

    TailKind kind_;
    Interval interval_;
    Integrand integrand_;
    QuadratureSettings settings_;
    std::optional<ClosedFormFn> closed_form_;
    std::optional<PowerForm> cum_pf_;
    mutable std::map<double, Entry> cache_;
    mutable std::mutex mutex_;
    mutable std::optional<ExtReal> total_;
};

using CumulativePtr = std::shared_ptr<const CumulativeIntegral>;

/// Tail of a weight; throws DivergentTail when the tail is infinite at every
/// interior point (outer-end divergence).
CumulativePtr upper_tail(const WeightSpec& w, const QuadratureSettings& s);
CumulativePtr lower_tail(const WeightSpec& w, const QuadratureSettings& s);

/// Like upper_tail/lower_tail but returning the divergent object instead of
/// throwing; callers that treat +inf as a value use this.
CumulativePtr weight_tail_allow_divergent(TailKind kind, const WeightSpec& w,
                                          const QuadratureSettings& s);

/// Tail of a generic composite integrand (condition inner integrals).
CumulativePtr make_tail(TailKind kind, Interval iv, Integrand g, const QuadratureSettings& s);

}  // namespace hardykit
