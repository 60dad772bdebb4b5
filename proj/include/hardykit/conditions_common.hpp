#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hardykit/cumulative.hpp"
#include "hardykit/sup_search.hpp"

namespace hardykit {

/// Nonnegative monotone expression coef * base(x) + added(x) over cumulative
/// integrals (handles G, c*G, h+G, ... uniformly).
class MonotoneExpr {
  public:
    static MonotoneExpr of(CumulativePtr base, double coef = 1.0);
    /// coef * base + added; base and added must share their tail direction.
    static MonotoneExpr sum(CumulativePtr base, double coef, CumulativePtr added);

    ExtReal eval(double x) const;
    std::pair<ExtReal, double> eval_with_error(double x) const;

    /// true = nondecreasing (lower tails), false = nonincreasing (upper tails).
    bool nondecreasing() const { return nondecreasing_; }

    std::optional<PowerForm> power_form() const;

    ExtReal limit_at_lower_end() const;  // x -> a+
    ExtReal limit_at_upper_end() const;  // x -> b-

    const Interval& interval() const { return base_->interval(); }

  private:
    CumulativePtr base_;
    double coef_ = 1.0;
    CumulativePtr added_;
    bool nondecreasing_ = true;
};

/// sup over the open interval (lo,hi) of expr(y)^p, using the monotone
/// endpoint shortcut. `lo`/`hi` may equal the interval ends (limits used).
ExtReal monotone_power_sup(const MonotoneExpr& expr, double p, double lo, double hi);

/// Composite integrand w(t) * prod_j expr_j(t)^{e_j} with structure hints.
Integrand make_composite(const WeightSpec& w,
                         const std::vector<std::pair<MonotoneExpr, double>>& powers);

// ---------------------------------------------------------------------------

/// Context for the two-weight conditions: F(x) = int_x^b f, G(x) = int_a^x g.
struct LinearContext {
    Interval domain;
    WeightSpec f, g;
    CumulativePtr F, G;
    QuadratureSettings quad;
    bool F_divergent = false;  // F(x) infinite at every interior point
    bool G_divergent = false;
};

LinearContext make_linear_context(const WeightSpec& f, const WeightSpec& g,
                                  const QuadratureSettings& quad);

/// Context for the three-weight conditions: adds H(x) = int_a^x h.
struct BilinearContext {
    Interval domain;
    WeightSpec f, g, h;
    CumulativePtr F, G, H;
    QuadratureSettings quad;
    bool F_divergent = false;
    bool G_divergent = false;
    bool H_divergent = false;
};

BilinearContext make_bilinear_context(const WeightSpec& f, const WeightSpec& g, const WeightSpec& h,
                                      const QuadratureSettings& quad);

// ---------------------------------------------------------------------------

/// Auxiliary function for the inf-type conditions: scale * (F|G|H) or a custom
/// monotone cumulative.
struct AuxFunctionSpec {
    enum class Base { F, G, H, Custom };
    Base base = Base::G;
    double scale = 1.0;
    CumulativePtr custom;

    MonotoneExpr resolve(const LinearContext& ctx) const;
    MonotoneExpr resolve(const BilinearContext& ctx) const;
};

// ---------------------------------------------------------------------------

/// One multiplicative factor base^exponent of a condition value.
struct ValueFactor {
    ExtReal base;
    double exponent;
    double rel_err = 0.0;
};

/// Combines factors in log space, resolving zero/infinity masses; flags an
/// indeterminate 0 * inf product as overflow.
EvalResult combine_factors(const std::vector<ValueFactor>& factors);

}  // namespace hardykit
