#include "hardykit/geomean.hpp"

#include <cmath>

namespace hardykit {

GeoMeanContext::GeoMeanContext(WeightSpec f, QuadratureSettings quad)
    : f_(std::move(f)), quad_(quad) {
    if (f_.interval().a != 0.0)
        throw ConfigInvalid("geometric-mean weights live on intervals starting at 0");
}

double GeoMeanContext::log_integral(double x) const {
    if (!(x > 0.0) || x >= f_.interval().b)
        throw PointOutsideDomain("log integral needs 0 < x < b");
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
    }
    double value;
    if (auto cf = f_.closed_form_log_integral(0.0, x)) {
        if (std::isinf(*cf))
            throw LogNotIntegrable("ln of the weight is not integrable on (0," +
                                   std::to_string(x) + ")");
        value = *cf;
    } else {
        Integrand g;
        const WeightSpec& w = f_;
        g.fn = [&w](double t) {
            double v = w.value_unchecked(t);
            return v > 0.0 ? std::log(v) : -kInf;
        };
        g.singular_hints = w.unbounded_near();
        g.singular_hints.push_back(0.0);  // ln t blows up at 0 for power-like weights
        QuadResult r = integrate_fn(g, 0.0, x, quad_);
        if (r.value.is_infinite())
            throw LogNotIntegrable("ln of the weight is not integrable on (0," +
                                   std::to_string(x) + ")");
        value = r.value.as_double();
    }
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(x, value);
    return value;
}

double GeoMeanContext::geomean(double x) const { return std::exp(log_integral(x) / x); }

double GeoMeanContext::average(double x) const {
    QuadResult r = integrate(f_, 0.0, x, quad_);
    if (r.value.is_infinite())
        throw DivergentTail("averaging operator: int_0^x of the weight is infinite");
    return r.value.as_double() / x;
}

double averaging_A(const WeightSpec& f, double x, const QuadratureSettings& quad) {
    return GeoMeanContext(f, quad).average(x);
}

double geomean_T(const WeightSpec& f, double x, const QuadratureSettings& quad) {
    return GeoMeanContext(f, quad).geomean(x);
}

LimitCheckResult limit_check_LHA(const WeightSpec& f, double x, double alpha,
                                 const QuadratureSettings& quad) {
    if (!(alpha > 0.0)) throw ConfigInvalid("limit check needs alpha > 0");
    GeoMeanContext ctx(f, quad);
    double rhs = ctx.geomean(x);
    double lhs = std::pow(GeoMeanContext(f.pow(alpha), quad).average(x), 1.0 / alpha);
    return {lhs, rhs, std::fabs(lhs - rhs)};
}

std::optional<WeightSpec> reciprocal_geomean_power(const WeightSpec& v, double expo) {
    const Interval& iv = v.interval();
    switch (v.family()) {
        case WeightFamily::Constant: {
            double c = v.param_scale();
            if (!(c > 0.0)) return std::nullopt;
            return WeightSpec::constant(std::pow(c, -expo), iv);
        }
        case WeightFamily::Power: {
            // T(1/v)(x) = (e^lambda / scale) x^{-lambda}
            double l = v.param_lambda(), c = v.param_scale();
            double scale = std::pow(std::exp(l) / c, expo);
            return WeightSpec::power(-l * expo, iv, scale);
        }
        case WeightFamily::Exponential: {
            // T(1/v)(x) = (1/scale) e^{-kappa x / 2}
            double k = v.param_kappa(), c = v.param_scale();
            return WeightSpec::exponential(-k * expo / 2.0, iv, std::pow(c, -expo));
        }
        case WeightFamily::Product: {
            std::vector<WeightSpec> parts;
            for (const auto& f : v.factors()) {
                auto p = reciprocal_geomean_power(f, expo);
                if (!p) return std::nullopt;
                parts.push_back(std::move(*p));
            }
            return WeightSpec::product(std::move(parts), iv);
        }
        default:
            return std::nullopt;
    }
}

namespace {

// lower cumulative of [T(1/v1)]^{e1} [T(1/v2)]^{e2} u, closed form when the
// reciprocal geometric means are structured weights
CumulativePtr geomean_condition_tail(const WeightSpec& u,
                                     const std::vector<std::pair<WeightSpec, double>>& vs,
                                     const QuadratureSettings& quad) {
    std::vector<WeightSpec> factors{u};
    bool structured = true;
    for (const auto& [v, e] : vs) {
        auto p = reciprocal_geomean_power(v, e);
        if (!p) {
            structured = false;
            break;
        }
        factors.push_back(std::move(*p));
    }
    const Interval& iv = u.interval();
    if (structured)
        return weight_tail_allow_divergent(TailKind::LowerTail,
                                           WeightSpec::product(std::move(factors), iv), quad);

    auto contexts =
        std::make_shared<std::vector<std::pair<std::shared_ptr<GeoMeanContext>, double>>>();
    for (const auto& [v, e] : vs)
        contexts->emplace_back(std::make_shared<GeoMeanContext>(v, quad), e);
    Integrand g;
    g.fn = [u, contexts](double t) {
        double acc = u.value_unchecked(t);
        for (const auto& [ctx, e] : *contexts)
            acc *= std::exp(-e * ctx->log_integral(t) / t);
        return acc;
    };
    g.singular_hints = u.unbounded_near();
    return make_tail(TailKind::LowerTail, iv, std::move(g), quad);
}

SupEstimate geomean_condition_sup(const WeightSpec& u, double outer_t_expo, double q,
                                  const std::vector<std::pair<WeightSpec, double>>& vs,
                                  const QuadratureSettings& quad, const SupSettings& st) {
    CumulativePtr K = geomean_condition_tail(u, vs, quad);
    PointFn fn = [K, outer_t_expo, q](double t) {
        auto [v, err] = K->eval_with_error(t);
        std::vector<ValueFactor> factors;
        factors.push_back(ValueFactor{ExtReal::finite(t), outer_t_expo, 0.0});
        double rel = v.is_finite() && v.as_double() > 0.0 ? err / v.as_double() : 0.0;
        factors.push_back(ValueFactor{v, 1.0 / q, rel});
        return combine_factors(factors);
    };
    return estimate_sup(fn, u.interval(), st);
}

}  // namespace

SupEstimate condition_scriptB(const WeightSpec& u, const WeightSpec& v, double p, double q,
                              const QuadratureSettings& quad, const SupSettings& st) {
    if (!(p > 0.0) || !(p <= q) || !(q < kInf))
        throw ExponentOutOfRange("the geometric-mean condition requires 0 < p <= q < inf (p=" +
                                 std::to_string(p) + ", q=" + std::to_string(q) + ")");
    return geomean_condition_sup(u, -1.0 / p, q, {{v, q / p}}, quad, st);
}

SupEstimate condition_scriptB_bilinear(const WeightSpec& u, const WeightSpec& v1,
                                       const WeightSpec& v2, double p1, double p2, double q,
                                       const QuadratureSettings& quad, const SupSettings& st) {
    if (!(std::max(p1, p2) > 1.0) || !(std::max(p1, p2) < q) || !(q < kInf))
        throw ExponentOutOfRange(
            "the bilinear geometric-mean condition requires 1 < max(p1,p2) < q < inf (p1=" +
            std::to_string(p1) + ", p2=" + std::to_string(p2) + ", q=" + std::to_string(q) + ")");
    return geomean_condition_sup(u, -(1.0 / p1 + 1.0 / p2), q, {{v1, q / p1}, {v2, q / p2}}, quad,
                                 st);
}

}  // namespace hardykit
