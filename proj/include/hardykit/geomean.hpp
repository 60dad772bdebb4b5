#pragma once

#include <map>
#include <mutex>

#include "hardykit/conditions_common.hpp"

namespace hardykit {

/// Geometric-mean context for a weight on (0,inf): caches the signed lower
/// integral of ln f used by the operator T.
class GeoMeanContext {
  public:
    GeoMeanContext(WeightSpec f, QuadratureSettings quad);

    const WeightSpec& weight() const { return f_; }

    /// Signed int_0^x ln f; throws LogNotIntegrable when |ln f| is not
    /// integrable on (0,x) (the weight vanishes or blows up on positive
    /// measure).
    double log_integral(double x) const;

    /// T f(x) = exp((1/x) int_0^x ln f).
    double geomean(double x) const;

    /// A f(x) = (1/x) int_0^x f; throws DivergentTail when the integral is
    /// infinite.
    double average(double x) const;

  private:
    WeightSpec f_;
    QuadratureSettings quad_;
    mutable std::map<double, double> cache_;
    mutable std::mutex mutex_;
};

/// (Af)(x) for a standalone weight.
double averaging_A(const WeightSpec& f, double x, const QuadratureSettings& quad = {});

/// (Tf)(x) for a standalone weight.
double geomean_T(const WeightSpec& f, double x, const QuadratureSettings& quad = {});

struct LimitCheckResult {
    double lhs;  // ((A f^alpha)(x))^{1/alpha}
    double rhs;  // T f(x)
    double gap;  // |lhs - rhs|
};

/// Power-mean approximation of T at small alpha; a property probe, not
/// production math.
LimitCheckResult limit_check_LHA(const WeightSpec& f, double x, double alpha,
                                 const QuadratureSettings& quad = {});

/// [T(1/v)]^{expo} as a structured weight when v is built from constants,
/// powers and exponentials; nullopt otherwise.
std::optional<WeightSpec> reciprocal_geomean_power(const WeightSpec& v, double expo);

/// sup_{t>0} t^{-1/p} (int_0^t [T(1/v)]^{q/p} u dx)^{1/q} for 0 < p <= q < inf.
SupEstimate condition_scriptB(const WeightSpec& u, const WeightSpec& v, double p, double q,
                              const QuadratureSettings& quad = {}, const SupSettings& st = {});

/// sup_{t>0} t^{-(1/p1+1/p2)} (int_0^t [T(1/v1)]^{q/p1} [T(1/v2)]^{q/p2} u)^{1/q}
/// for 1 < max(p1,p2) < q < inf.
SupEstimate condition_scriptB_bilinear(const WeightSpec& u, const WeightSpec& v1,
                                       const WeightSpec& v2, double p1, double p2, double q,
                                       const QuadratureSettings& quad = {},
                                       const SupSettings& st = {});

}  // namespace hardykit
