#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hardykit/extended_real.hpp"
#include "hardykit/interval.hpp"

namespace hardykit {

enum class WeightFamily {
    Constant,
    Power,
    Exponential,
    LogPower,
    Indicator,
    Piecewise,
    Product,
    Tabulated,
};

/// Integrand of the shape scale * t^expo, valid on the full positive axis of
/// the hosting interval. Used to recognize closed-form composite integrals.
struct PowerForm {
    double scale = 1.0;
    double expo = 0.0;
};

/// Nonnegative measurable weight on an interval, restricted to structured
/// families with known antiderivative behavior where available.
///
/// Families:
///   Constant(c)          w(t) = c
///   Power(lambda)        w(t) = scale * t^lambda            (interval within [0, inf))
///   Exponential(kappa)   w(t) = scale * exp(kappa * t)
///   LogPower(lambda,mu)  w(t) = scale * t^lambda * |ln t|^mu
///   Indicator(support)   w(t) = 1 on support, 0 elsewhere
///   Piecewise            list of (sub-interval, weight), 0 in gaps
///   Product              pointwise product of factors
///   Tabulated            samples with log-linear (positive) or linear (zeros) interpolation
///
/// Immutable after construction; safe for concurrent reads.
class WeightSpec {
  public:
    static WeightSpec constant(double c, Interval iv);
    static WeightSpec power(double lambda, Interval iv, double scale = 1.0);
    static WeightSpec exponential(double kappa, Interval iv, double scale = 1.0);
    static WeightSpec log_power(double lambda, double mu, Interval iv, double scale = 1.0);
    static WeightSpec indicator(Interval support, Interval iv);
    static WeightSpec piecewise(std::vector<std::pair<Interval, WeightSpec>> pieces, Interval iv);
    static WeightSpec product(std::vector<WeightSpec> factors, Interval iv);
    static WeightSpec tabulated(std::vector<double> xs, std::vector<double> values);

    WeightFamily family() const { return family_; }
    const Interval& interval() const { return interval_; }

    /// Checked evaluation at an interior, non-singular point.
    double operator()(double x) const;

    /// Evaluation without the domain precondition check (x assumed interior).
    double value_unchecked(double x) const;

    /// Declared interior singular points (finite set).
    const std::vector<double>& singular_points() const { return singular_points_; }

    /// Points (including endpoints) near which the weight is unbounded;
    /// quadrature hints.
    std::vector<double> unbounded_near() const;

    /// w^r as a new spec; closed-form families map to closed-form families.
    WeightSpec pow(double r) const;

    /// c * w.
    WeightSpec scaled(double c) const;

    /// w * 1_sub, on the same hosting interval.
    WeightSpec restricted(Interval sub) const;

    /// The same weight re-hosted on a sub-interval of its interval.
    WeightSpec narrowed(Interval sub) const;

    /// Exact integral over (lo,hi) when the family admits one; infinity for
    /// provable divergence. nullopt means "integrate numerically".
    std::optional<ExtReal> closed_form_integral(double lo, double hi) const;

    /// Exact signed integral of ln w over (lo,hi); -inf when the weight
    /// vanishes on a set of positive measure in (lo,hi).
    std::optional<double> closed_form_log_integral(double lo, double hi) const;

    /// Pure-power descriptor when w(t) = scale * t^expo throughout its interval.
    std::optional<PowerForm> power_form() const;

    // Family parameters (meaningful fields depend on family).
    double param_lambda() const { return lambda_; }
    double param_mu() const { return mu_; }
    double param_kappa() const { return kappa_; }
    double param_scale() const { return scale_; }
    const Interval& support() const { return support_; }
    const std::vector<std::pair<Interval, WeightSpec>>& pieces() const { return pieces_; }
    const std::vector<WeightSpec>& factors() const { return factors_; }
    const std::vector<double>& sample_xs() const { return xs_; }
    const std::vector<double>& sample_values() const { return vs_; }
    bool tabulated_log_interp() const { return log_interp_; }

  private:
    WeightSpec(WeightFamily f, Interval iv) : family_(f), interval_(iv), support_(iv) {}

    WeightFamily family_;
    Interval interval_;
    double lambda_ = 0.0;
    double mu_ = 0.0;
    double kappa_ = 0.0;
    double scale_ = 1.0;
    Interval support_;  // Indicator only
    std::vector<std::pair<Interval, WeightSpec>> pieces_;
    std::vector<WeightSpec> factors_;
    std::vector<double> xs_, vs_;
    bool log_interp_ = true;
    std::vector<double> singular_points_;
};

/// Exponent pair (p, p/(p-1)).
struct ConjugateExponent {
    double p;
    double p_conj;
};

/// Conjugate exponent p' = p/(p-1); requires p > 1.
ConjugateExponent conjugate(double p);

}  // namespace hardykit
