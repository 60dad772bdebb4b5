#include "hardykit/conditions_linear.hpp"

#include <cmath>

namespace hardykit {

std::string to_string(LinearConditionId id) {
    switch (id) {
        case LinearConditionId::AM:
            return "AM";
        default:
            return "B" + std::to_string(static_cast<int>(id) + 1);
    }
}

LinearConditionId linear_id_from_string(const std::string& name) {
    if (name == "AM") return LinearConditionId::AM;
    if (name.size() >= 2 && name[0] == 'B') {
        int n = std::atoi(name.c_str() + 1);
        if (n >= 1 && n <= 15) return static_cast<LinearConditionId>(n - 1);
    }
    throw ConfigInvalid("unknown linear condition id '" + name + "'");
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw SideConditionViolated(msg);
}

double rel_of(const ExtReal& v, double err) {
    if (v.is_infinite() || err == 0.0) return 0.0;
    return err / std::max(std::fabs(v.as_double()), 1e-300);
}

std::function<ValueFactor(double)> expr_factor(MonotoneExpr e, double p) {
    return [e = std::move(e), p](double x) {
        auto [v, err] = e.eval_with_error(x);
        return ValueFactor{v, p, rel_of(v, err)};
    };
}

std::function<ValueFactor(double)> integral_factor(CumulativePtr I, double p) {
    return [I = std::move(I), p](double x) {
        try {
            auto [v, err] = I->eval_with_error(x);
            return ValueFactor{v, p, rel_of(v, err)};
        } catch (const ToleranceNotReached& e) {
            ExtReal v = ExtReal::finite(e.best_estimate);
            return ValueFactor{v, p, rel_of(v, e.error_bound) + 1.0};
        }
    };
}

CumulativePtr aux_base_cumulative(const AuxFunctionSpec& aux, const LinearContext& ctx) {
    switch (aux.base) {
        case AuxFunctionSpec::Base::F:
            return ctx.F;
        case AuxFunctionSpec::Base::G:
            return ctx.G;
        case AuxFunctionSpec::Base::Custom:
            return aux.custom;
        default:
            throw ConfigInvalid("aux base H is not available in a two-weight context");
    }
}

}  // namespace

LinearFunctional::LinearFunctional(LinearConditionId id, const LinearParams& params,
                                   LinearContext ctx, std::optional<AuxFunctionSpec> aux)
    : id_(id), params_(params), ctx_(std::move(ctx)) {
    const double a = params.alpha, b = params.beta, s = params.s;
    if (!(a > 0.0) || !(b > 0.0)) throw SideConditionViolated("alpha and beta must be > 0");
    bool uses_s = id != LinearConditionId::B1 && id != LinearConditionId::AM;
    if (uses_s && !(s > 0.0)) throw SideConditionViolated("s must be > 0");

    bool wants_aux = id == LinearConditionId::B12 || id == LinearConditionId::B13 ||
                     id == LinearConditionId::B14 || id == LinearConditionId::B15;
    if (wants_aux && !aux)
        throw MissingAuxFunction(to_string(id) + " requires an auxiliary function h");
    if (!wants_aux && aux)
        throw ConfigInvalid(to_string(id) + " does not take an auxiliary function");

    MonotoneExpr F = MonotoneExpr::of(ctx_.F);
    MonotoneExpr G = MonotoneExpr::of(ctx_.G);
    const auto& q = ctx_.quad;
    const Interval& dom = ctx_.domain;
    auto UT = [&](const WeightSpec& w, std::vector<std::pair<MonotoneExpr, double>> ps) {
        return make_tail(TailKind::UpperTail, dom, make_composite(w, ps), q);
    };
    auto LT = [&](const WeightSpec& w, std::vector<std::pair<MonotoneExpr, double>> ps) {
        return make_tail(TailKind::LowerTail, dom, make_composite(w, ps), q);
    };

    switch (id) {
        case LinearConditionId::B1:
        case LinearConditionId::AM:
            factors_.push_back(expr_factor(F, a));
            factors_.push_back(expr_factor(G, b));
            break;
        case LinearConditionId::B2:
            factors_.push_back(integral_factor(UT(ctx_.f, {{G, (b - s) / a}}), a));
            factors_.push_back(expr_factor(G, s));
            break;
        case LinearConditionId::B3:
            factors_.push_back(integral_factor(LT(ctx_.g, {{F, (a - s) / b}}), b));
            factors_.push_back(expr_factor(F, s));
            break;
        case LinearConditionId::B4:
            factors_.push_back(integral_factor(LT(ctx_.f, {{G, (b + s) / a}}), a));
            factors_.push_back(expr_factor(G, -s));
            break;
        case LinearConditionId::B5:
            factors_.push_back(integral_factor(UT(ctx_.g, {{F, (a + s) / b}}), b));
            factors_.push_back(expr_factor(F, -s));
            break;
        case LinearConditionId::B6:
            factors_.push_back(integral_factor(UT(ctx_.f, {{G, b / (a + s)}}), a + s));
            factors_.push_back(expr_factor(F, -s));
            break;
        case LinearConditionId::B7:
            factors_.push_back(integral_factor(LT(ctx_.g, {{F, a / (b + s)}}), b + s));
            factors_.push_back(expr_factor(G, -s));
            break;
        case LinearConditionId::B8:
            require(a > s, "B8 requires alpha > s (alpha=" + std::to_string(a) +
                               ", s=" + std::to_string(s) + ")");
            factors_.push_back(integral_factor(LT(ctx_.f, {{G, b / (a - s)}}), a - s));
            factors_.push_back(expr_factor(F, s));
            break;
        case LinearConditionId::B9:
            require(a < s, "B9 requires alpha < s (alpha=" + std::to_string(a) +
                               ", s=" + std::to_string(s) + ")");
            factors_.push_back(integral_factor(UT(ctx_.f, {{G, b / (a - s)}}), a - s));
            factors_.push_back(expr_factor(F, s));
            break;
        case LinearConditionId::B10:
            require(b > s, "B10 requires beta > s (beta=" + std::to_string(b) +
                               ", s=" + std::to_string(s) + ")");
            factors_.push_back(integral_factor(UT(ctx_.g, {{F, a / (b - s)}}), b - s));
            factors_.push_back(expr_factor(G, s));
            break;
        case LinearConditionId::B11:
            require(b < s, "B11 requires beta < s (beta=" + std::to_string(b) +
                               ", s=" + std::to_string(s) + ")");
            factors_.push_back(integral_factor(LT(ctx_.g, {{F, a / (b - s)}}), b - s));
            factors_.push_back(expr_factor(G, s));
            break;
        case LinearConditionId::B12: {
            require(b < s, "B12 requires beta < s (beta=" + std::to_string(b) +
                               ", s=" + std::to_string(s) + ")");
            MonotoneExpr h = aux->resolve(ctx_);
            if (!h.nondecreasing())
                throw ConfigInvalid("B12 pairs h with G; use a nondecreasing aux function");
            MonotoneExpr hG = MonotoneExpr::sum(aux_base_cumulative(*aux, ctx_), aux->scale, ctx_.G);
            factors_.push_back(integral_factor(UT(ctx_.f, {{h, (b - s) / a}}), a));
            factors_.push_back(expr_factor(hG, s));
            break;
        }
        case LinearConditionId::B13: {
            require(a < s, "B13 requires alpha < s (alpha=" + std::to_string(a) +
                               ", s=" + std::to_string(s) + ")");
            MonotoneExpr h = aux->resolve(ctx_);
            if (h.nondecreasing())
                throw ConfigInvalid("B13 pairs h with F; use a nonincreasing aux function");
            MonotoneExpr hF = MonotoneExpr::sum(aux_base_cumulative(*aux, ctx_), aux->scale, ctx_.F);
            factors_.push_back(integral_factor(LT(ctx_.g, {{h, (a - s) / b}}), b));
            factors_.push_back(expr_factor(hF, s));
            break;
        }
        case LinearConditionId::B14: {
            MonotoneExpr h = aux->resolve(ctx_);
            if (!h.nondecreasing())
                throw ConfigInvalid("B14 pairs h with G; use a nondecreasing aux function");
            MonotoneExpr hG = MonotoneExpr::sum(aux_base_cumulative(*aux, ctx_), aux->scale, ctx_.G);
            factors_.push_back(integral_factor(LT(ctx_.f, {{hG, (b + s) / a}}), a));
            factors_.push_back(expr_factor(h, -s));
            break;
        }
        case LinearConditionId::B15: {
            MonotoneExpr h = aux->resolve(ctx_);
            if (h.nondecreasing())
                throw ConfigInvalid("B15 pairs h with F; use a nonincreasing aux function");
            MonotoneExpr hF = MonotoneExpr::sum(aux_base_cumulative(*aux, ctx_), aux->scale, ctx_.F);
            factors_.push_back(integral_factor(UT(ctx_.g, {{hF, (a + s) / b}}), b));
            factors_.push_back(expr_factor(h, -s));
            break;
        }
    }
}

EvalResult LinearFunctional::operator()(double x) const {
    if (!ctx_.domain.contains(x))
        throw PointOutsideDomain("condition evaluated outside the context domain");
    std::vector<ValueFactor> vals;
    vals.reserve(factors_.size());
    for (const auto& f : factors_) vals.push_back(f(x));
    return combine_factors(vals);
}

EvalResult eval_linear_pointwise(LinearConditionId id, double x, const LinearParams& params,
                                 const LinearContext& ctx, std::optional<AuxFunctionSpec> aux) {
    return LinearFunctional(id, params, ctx, std::move(aux))(x);
}

SupEstimate sup_linear(LinearConditionId id, const LinearParams& params, const LinearContext& ctx,
                       const Interval& sub, std::optional<AuxFunctionSpec> aux,
                       const SupSettings& st) {
    if (!ctx.domain.covers(sub))
        throw ConfigInvalid("sup sub-interval must lie within the context domain");
    LinearFunctional fn(id, params, ctx, std::move(aux));
    return estimate_sup([&fn](double x) { return fn(x); }, sub, st);
}

InfLinearResult inf_linear(LinearConditionId id, const LinearParams& params,
                           const LinearContext& ctx, const Interval& sub,
                           std::vector<AuxFunctionSpec> candidates, const SupSettings& st) {
    if (candidates.empty()) throw ConfigInvalid("inf requires a nonempty candidate list");
    // canonical candidate: scale 1 on the condition's natural base
    bool has_canonical = false;
    for (const auto& c : candidates)
        if (c.base == canonical_aux_base(id) && c.scale == 1.0) has_canonical = true;
    if (!has_canonical) candidates.push_back(AuxFunctionSpec{canonical_aux_base(id), 1.0, nullptr});

    std::optional<InfLinearResult> best;
    for (const auto& cand : candidates) {
        SupEstimate est = sup_linear(id, params, ctx, sub, cand, st);
        if (!best || est.value < best->estimate.value) best = InfLinearResult{est, cand};
    }
    return *best;
}

std::vector<AuxFunctionSpec> canonical_aux_candidates(AuxFunctionSpec::Base base, int n) {
    std::vector<AuxFunctionSpec> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = n == 1 ? 0.0 : -8.0 + 16.0 * static_cast<double>(i) / (n - 1);
        out.push_back(AuxFunctionSpec{base, std::exp2(t), nullptr});
    }
    return out;
}

AuxFunctionSpec::Base canonical_aux_base(LinearConditionId id) {
    switch (id) {
        case LinearConditionId::B12:
        case LinearConditionId::B14:
            return AuxFunctionSpec::Base::G;
        case LinearConditionId::B13:
        case LinearConditionId::B15:
            return AuxFunctionSpec::Base::F;
        default:
            throw ConfigInvalid(to_string(id) + " is not an inf-type condition");
    }
}

LinearContext hardy_linear_context(const WeightSpec& u, const WeightSpec& v, double p,
                                   const QuadratureSettings& quad) {
    ConjugateExponent pc = conjugate(p);
    WeightSpec dual = v.pow(1.0 - pc.p_conj);
    return make_linear_context(u, dual, quad);
}

SupEstimate muckenhoupt_AM(const WeightSpec& u, const WeightSpec& v, double p, double q,
                           const QuadratureSettings& quad, const SupSettings& st) {
    if (!(p > 1.0) || !(p <= q) || !(q < kInf))
        throw ExponentOutOfRange("Muckenhoupt condition requires 1 < p <= q < inf (p=" +
                                 std::to_string(p) + ", q=" + std::to_string(q) + ")");
    LinearContext ctx = hardy_linear_context(u, v, p, quad);
    LinearParams params{1.0 / q, 1.0 - 1.0 / p, 0.25};  // beta = 1/p'
    return sup_linear(LinearConditionId::B1, params, ctx, ctx.domain, std::nullopt, st);
}

}  // namespace hardykit
