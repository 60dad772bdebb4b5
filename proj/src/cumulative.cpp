#include "hardykit/cumulative.hpp"

#include <cmath>

namespace hardykit {

CumulativeIntegral::CumulativeIntegral(TailKind kind, Interval iv, Integrand integrand,
                                       QuadratureSettings settings,
                                       std::optional<ClosedFormFn> closed_form,
                                       std::optional<PowerForm> cum_pf)
    : kind_(kind),
      interval_(iv),
      integrand_(std::move(integrand)),
      settings_(settings),
      closed_form_(std::move(closed_form)),
      cum_pf_(cum_pf) {
    settings_.validate();
}

CumulativeIntegral::Entry CumulativeIntegral::compute(double x) const {
    if (closed_form_) {
        if (auto v = (*closed_form_)(x))
            return Entry{v->is_infinite() ? 0.0 : v->as_double(), 0.0, v->is_infinite()};
    }
    double lo = kind_ == TailKind::UpperTail ? x : interval_.a;
    double hi = kind_ == TailKind::UpperTail ? interval_.b : x;
    QuadResult r = integrate_fn(integrand_, lo, hi, settings_);
    if (r.value.is_infinite()) return Entry{0.0, 0.0, true};
    return Entry{r.value.as_double(), r.error_estimate, false};
}

void CumulativeIntegral::check_monotone(double x, const Entry& e) const {
    // UpperTail nonincreasing, LowerTail nondecreasing; slack covers the
    // reported quadrature error of both entries.
    auto violates = [&](double xn, const Entry& n) {
        if (e.infinite || n.infinite) return false;
        double slack = settings_.abs_tol + 2.0 * (e.err + n.err) +
                       4e-16 * std::max(std::fabs(e.value), std::fabs(n.value));
        bool n_left = xn < x;
        double lo_val = n_left ? n.value : e.value;
        double hi_val = n_left ? e.value : n.value;
        if (kind_ == TailKind::UpperTail) return hi_val > lo_val + slack;
        return hi_val < lo_val - slack;
    };
    auto it = cache_.lower_bound(x);
    if (it != cache_.end() && violates(it->first, it->second))
        throw MonotonicityViolation("cumulative value at x=" + std::to_string(x) +
                                    " breaks monotonicity; quadrature tolerance too loose");
    if (it != cache_.begin()) {
        auto prev = std::prev(it);
        if (violates(prev->first, prev->second))
            throw MonotonicityViolation("cumulative value at x=" + std::to_string(x) +
                                        " breaks monotonicity; quadrature tolerance too loose");
    }
}

ExtReal CumulativeIntegral::eval(double x) const { return eval_with_error(x).first; }

std::pair<ExtReal, double> CumulativeIntegral::eval_with_error(double x) const {
    if (!(x >= interval_.a && x <= interval_.b))
        throw PointOutsideDomain("cumulative integral evaluated outside its interval");
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(x);
        if (it != cache_.end()) {
            const Entry& e = it->second;
            return {e.infinite ? ExtReal::infinity() : ExtReal::finite(e.value), e.err};
        }
    }
    Entry e = compute(x);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        check_monotone(x, e);
        cache_.emplace(x, e);
    }
    return {e.infinite ? ExtReal::infinity() : ExtReal::finite(e.value), e.err};
}

ExtReal CumulativeIntegral::total_mass() const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (total_) return *total_;
    }
    double inner = kind_ == TailKind::UpperTail ? interval_.a : interval_.b;
    std::optional<ExtReal> v;
    if (closed_form_) v = (*closed_form_)(inner);
    if (!v) {
        try {
            QuadResult r = integrate_fn(integrand_, interval_.a, interval_.b, settings_);
            v = r.value;
        } catch (const ToleranceNotReached& e) {
            v = ExtReal::finite(e.best_estimate);
        }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    total_ = *v;
    return *v;
}

std::size_t CumulativeIntegral::cache_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

namespace {

std::optional<PowerForm> cumulative_power_form(TailKind kind, const Interval& iv,
                                               const std::optional<PowerForm>& wpf) {
    if (!wpf) return std::nullopt;
    double e = wpf->expo + 1.0;
    if (kind == TailKind::LowerTail) {
        // int_0^x s t^l = s/(l+1) x^{l+1}, anchored at a = 0
        if (iv.a != 0.0 || e <= 0.0) return std::nullopt;
        return PowerForm{wpf->scale / e, e};
    }
    // int_x^inf s t^l = s/(-l-1) x^{l+1}, anchored at b = inf
    if (iv.b != kInf || e >= 0.0) return std::nullopt;
    return PowerForm{wpf->scale / (-e), e};
}

CumulativePtr weight_tail(TailKind kind, const WeightSpec& w, const QuadratureSettings& s,
                          bool throw_on_divergence) {
    Integrand g;
    g.fn = [w](double t) { return w.value_unchecked(t); };
    g.pf = w.power_form();
    g.singular_hints = w.unbounded_near();
    const Interval& iv = w.interval();

    CumulativeIntegral::ClosedFormFn cf;
    if (kind == TailKind::UpperTail)
        cf = [w](double x) { return w.closed_form_integral(x, w.interval().b); };
    else
        cf = [w](double x) { return w.closed_form_integral(w.interval().a, x); };
    auto cum = std::make_shared<CumulativeIntegral>(kind, iv, std::move(g), s, std::move(cf),
                                                    cumulative_power_form(kind, iv, w.power_form()));
    if (throw_on_divergence) {
        ExtReal probe = cum->eval(iv.interior_point());
        if (probe.is_infinite())
            throw DivergentTail(std::string("weight ") +
                                (kind == TailKind::UpperTail ? "upper" : "lower") +
                                " tail is infinite at every interior point");
    }
    return cum;
}

}  // namespace

CumulativePtr upper_tail(const WeightSpec& w, const QuadratureSettings& s) {
    return weight_tail(TailKind::UpperTail, w, s, true);
}

CumulativePtr lower_tail(const WeightSpec& w, const QuadratureSettings& s) {
    return weight_tail(TailKind::LowerTail, w, s, true);
}

CumulativePtr weight_tail_allow_divergent(TailKind kind, const WeightSpec& w,
                                          const QuadratureSettings& s) {
    return weight_tail(kind, w, s, false);
}

CumulativePtr make_tail(TailKind kind, Interval iv, Integrand g, const QuadratureSettings& s) {
    auto pf = cumulative_power_form(kind, iv, g.pf);
    return std::make_shared<CumulativeIntegral>(kind, iv, std::move(g), s, std::nullopt, pf);
}

}  // namespace hardykit
