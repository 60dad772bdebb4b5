#include "hardykit/conditions_common.hpp"

#include <cmath>

namespace hardykit {

// ---------------------------------------------------------------------------
// MonotoneExpr

MonotoneExpr MonotoneExpr::of(CumulativePtr base, double coef) {
    if (!base) throw ConfigInvalid("monotone expression needs a cumulative");
    if (!(coef > 0.0)) throw ConfigInvalid("monotone expression scale must be > 0");
    MonotoneExpr e;
    e.base_ = std::move(base);
    e.coef_ = coef;
    e.nondecreasing_ = e.base_->kind() == TailKind::LowerTail;
    return e;
}

MonotoneExpr MonotoneExpr::sum(CumulativePtr base, double coef, CumulativePtr added) {
    MonotoneExpr e = of(std::move(base), coef);
    if (!added) throw ConfigInvalid("monotone sum needs a second cumulative");
    if (added->kind() != e.base_->kind())
        throw ConfigInvalid("monotone sum requires matching tail directions");
    e.added_ = std::move(added);
    return e;
}

ExtReal MonotoneExpr::eval(double x) const { return eval_with_error(x).first; }

std::pair<ExtReal, double> MonotoneExpr::eval_with_error(double x) const {
    auto [v, err] = base_->eval_with_error(x);
    if (v.is_infinite()) return {v, 0.0};
    double total = coef_ * v.as_double();
    double toterr = coef_ * err;
    if (added_) {
        auto [v2, err2] = added_->eval_with_error(x);
        if (v2.is_infinite()) return {v2, 0.0};
        total += v2.as_double();
        toterr += err2;
    }
    return {ExtReal::finite(total), toterr};
}

std::optional<PowerForm> MonotoneExpr::power_form() const {
    auto pf = base_->power_form();
    if (!pf) return std::nullopt;
    PowerForm mine{coef_ * pf->scale, pf->expo};
    if (added_) {
        auto pf2 = added_->power_form();
        if (!pf2 || pf2->expo != mine.expo) return std::nullopt;
        mine.scale += pf2->scale;
    }
    return mine;
}

ExtReal MonotoneExpr::limit_at_lower_end() const {
    ExtReal b = nondecreasing_ ? ExtReal::finite(0.0) : base_->total_mass();
    if (b.is_infinite()) return b;
    double total = coef_ * b.as_double();
    if (added_) {
        ExtReal a2 = nondecreasing_ ? ExtReal::finite(0.0) : added_->total_mass();
        if (a2.is_infinite()) return a2;
        total += a2.as_double();
    }
    return ExtReal::finite(total);
}

ExtReal MonotoneExpr::limit_at_upper_end() const {
    ExtReal b = nondecreasing_ ? base_->total_mass() : ExtReal::finite(0.0);
    if (b.is_infinite()) return b;
    double total = coef_ * b.as_double();
    if (added_) {
        ExtReal a2 = nondecreasing_ ? added_->total_mass() : ExtReal::finite(0.0);
        if (a2.is_infinite()) return a2;
        total += a2.as_double();
    }
    return ExtReal::finite(total);
}

namespace {

ExtReal ext_pow(ExtReal v, double p) {
    if (p == 0.0) return ExtReal::finite(1.0);
    if (v.is_infinite()) return p > 0.0 ? ExtReal::infinity() : ExtReal::finite(0.0);
    double d = v.as_double();
    if (d == 0.0) return p > 0.0 ? ExtReal::finite(0.0) : ExtReal::infinity();
    double r = std::pow(d, p);
    if (!std::isfinite(r)) return ExtReal::overflow();
    return ExtReal::finite(r);
}

}  // namespace

ExtReal monotone_power_sup(const MonotoneExpr& expr, double p, double lo, double hi) {
    const Interval& iv = expr.interval();
    bool hi_is_end = hi >= iv.b;
    bool lo_is_end = lo <= iv.a;
    // sup of expr^p sits at the end where expr is extremal for the sign of p
    bool want_upper_end = expr.nondecreasing() == (p > 0.0);
    if (want_upper_end) {
        ExtReal v = hi_is_end ? expr.limit_at_upper_end() : expr.eval(hi);
        return ext_pow(v, p);
    }
    ExtReal v = lo_is_end ? expr.limit_at_lower_end() : expr.eval(lo);
    return ext_pow(v, p);
}

// ---------------------------------------------------------------------------
// composite integrands

Integrand make_composite(const WeightSpec& w,
                         const std::vector<std::pair<MonotoneExpr, double>>& powers) {
    Integrand g;
    g.fn = [w, powers](double t) -> double {
        double wv = w.value_unchecked(t);
        if (wv == 0.0) return 0.0;
        double log_acc = std::log(wv);
        for (const auto& [expr, e] : powers) {
            if (e == 0.0) continue;
            ExtReal b = expr.eval(t);
            if (b.is_infinite()) return e > 0.0 ? kInf : 0.0;
            double bv = b.as_double();
            if (bv == 0.0) {
                if (e > 0.0) return 0.0;
                return kInf;
            }
            log_acc += e * std::log(bv);
        }
        return std::exp(log_acc);
    };

    // power-law recognition: all parts must be exact powers
    auto wpf = w.power_form();
    if (wpf && w.interval().a >= 0.0) {
        PowerForm pf = *wpf;
        bool ok = true;
        for (const auto& [expr, e] : powers) {
            auto epf = expr.power_form();
            if (!epf) {
                ok = false;
                break;
            }
            pf.scale *= std::pow(epf->scale, e);
            pf.expo += e * epf->expo;
        }
        if (ok && std::isfinite(pf.scale) && std::isfinite(pf.expo)) g.pf = pf;
    }

    // singular hints: the weight's own blowups plus ends where a negative
    // power meets a vanishing cumulative
    g.singular_hints = w.unbounded_near();
    for (const auto& [expr, e] : powers) {
        if (e >= 0.0) continue;
        const Interval& iv = expr.interval();
        if (expr.nondecreasing() && !iv.lower_infinite()) g.singular_hints.push_back(iv.a);
        if (!expr.nondecreasing() && !iv.upper_infinite()) g.singular_hints.push_back(iv.b);
    }
    std::sort(g.singular_hints.begin(), g.singular_hints.end());
    g.singular_hints.erase(std::unique(g.singular_hints.begin(), g.singular_hints.end()),
                           g.singular_hints.end());
    return g;
}

// ---------------------------------------------------------------------------
// contexts

LinearContext make_linear_context(const WeightSpec& f, const WeightSpec& g,
                                  const QuadratureSettings& quad) {
    if (!(f.interval().a == g.interval().a && f.interval().b == g.interval().b))
        throw ConfigInvalid("context weights must share one interval");
    LinearContext ctx{f.interval(), f, g, nullptr, nullptr, quad};
    ctx.F = weight_tail_allow_divergent(TailKind::UpperTail, f, quad);
    ctx.G = weight_tail_allow_divergent(TailKind::LowerTail, g, quad);
    double probe = ctx.domain.interior_point();
    ctx.F_divergent = ctx.F->eval(probe).is_infinite();
    ctx.G_divergent = ctx.G->eval(probe).is_infinite();
    return ctx;
}

BilinearContext make_bilinear_context(const WeightSpec& f, const WeightSpec& g, const WeightSpec& h,
                                      const QuadratureSettings& quad) {
    if (!(f.interval().a == g.interval().a && f.interval().b == g.interval().b &&
          f.interval().a == h.interval().a && f.interval().b == h.interval().b))
        throw ConfigInvalid("context weights must share one interval");
    BilinearContext ctx{f.interval(), f, g, h, nullptr, nullptr, nullptr, quad};
    ctx.F = weight_tail_allow_divergent(TailKind::UpperTail, f, quad);
    ctx.G = weight_tail_allow_divergent(TailKind::LowerTail, g, quad);
    ctx.H = weight_tail_allow_divergent(TailKind::LowerTail, h, quad);
    double probe = ctx.domain.interior_point();
    ctx.F_divergent = ctx.F->eval(probe).is_infinite();
    ctx.G_divergent = ctx.G->eval(probe).is_infinite();
    ctx.H_divergent = ctx.H->eval(probe).is_infinite();
    return ctx;
}

// ---------------------------------------------------------------------------
// aux functions

MonotoneExpr AuxFunctionSpec::resolve(const LinearContext& ctx) const {
    if (!(scale > 0.0)) throw ConfigInvalid("aux function scale must be > 0");
    switch (base) {
        case Base::F:
            return MonotoneExpr::of(ctx.F, scale);
        case Base::G:
            return MonotoneExpr::of(ctx.G, scale);
        case Base::H:
            throw ConfigInvalid("aux base H is not available in a two-weight context");
        case Base::Custom:
            return MonotoneExpr::of(custom, scale);
    }
    throw ConfigInvalid("unreachable aux base");
}

MonotoneExpr AuxFunctionSpec::resolve(const BilinearContext& ctx) const {
    if (!(scale > 0.0)) throw ConfigInvalid("aux function scale must be > 0");
    switch (base) {
        case Base::F:
            return MonotoneExpr::of(ctx.F, scale);
        case Base::G:
            return MonotoneExpr::of(ctx.G, scale);
        case Base::H:
            return MonotoneExpr::of(ctx.H, scale);
        case Base::Custom:
            return MonotoneExpr::of(custom, scale);
    }
    throw ConfigInvalid("unreachable aux base");
}

// ---------------------------------------------------------------------------

EvalResult combine_factors(const std::vector<ValueFactor>& factors) {
    EvalResult r;
    double log_acc = 0.0;
    double zero_mass = 0.0;  // net exponent of vanishing bases
    double inf_mass = 0.0;   // net exponent of infinite bases
    bool inf_from_integral = false;
    for (const auto& f : factors) {
        if (f.exponent == 0.0) continue;
        if (f.base.is_infinite()) {
            inf_mass += f.exponent;
            if (f.exponent > 0.0) inf_from_integral = true;
            continue;
        }
        double b = f.base.as_double();
        if (b == 0.0) {
            zero_mass += f.exponent;
            continue;
        }
        log_acc += f.exponent * std::log(b);
        r.rel_err += std::fabs(f.exponent) * f.rel_err;
    }
    bool to_zero = zero_mass > 0.0 || inf_mass < 0.0;
    bool to_inf = zero_mass < 0.0 || inf_mass > 0.0;
    if (to_zero && to_inf) {
        r.value = ExtReal::overflow();
        r.overflow = true;
        return r;
    }
    if (to_inf) {
        r.value = ExtReal::infinity();
        r.divergent_inner = inf_from_integral;
        return r;
    }
    if (to_zero) {
        r.value = ExtReal::finite(0.0);
        return r;
    }
    r.value = ext_exp(log_acc);
    if (r.value.from_overflow()) r.overflow = true;
    return r;
}

}  // namespace hardykit
