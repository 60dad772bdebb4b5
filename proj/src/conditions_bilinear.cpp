#include "hardykit/conditions_bilinear.hpp"

#include <cmath>

namespace hardykit {

std::string to_string(BilinearConditionId id) {
    if (id == BilinearConditionId::D) return "D";
    return "Bt" + std::to_string(static_cast<int>(id) + 1);
}

BilinearConditionId bilinear_id_from_string(const std::string& name) {
    if (name == "D") return BilinearConditionId::D;
    if (name.size() >= 3 && name[0] == 'B' && name[1] == 't') {
        int n = std::atoi(name.c_str() + 2);
        if (n >= 1 && n <= 23) return static_cast<BilinearConditionId>(n - 1);
    }
    throw ConfigInvalid("unknown bilinear condition id '" + name + "'");
}

bool bilinear_uses_h1(BilinearConditionId id) {
    int n = static_cast<int>(id) + 1;
    return id != BilinearConditionId::D && n >= 16 && n <= 23;
}

bool bilinear_uses_h2(BilinearConditionId id) {
    int n = static_cast<int>(id) + 1;
    return id != BilinearConditionId::D && n >= 18 && n <= 23;
}

AuxFunctionSpec::Base canonical_aux_base1(BilinearConditionId id) {
    if (id == BilinearConditionId::Bt16) return AuxFunctionSpec::Base::H;
    if (bilinear_uses_h1(id)) return AuxFunctionSpec::Base::G;
    throw ConfigInvalid(to_string(id) + " takes no auxiliary function");
}

AuxFunctionSpec::Base canonical_aux_base2(BilinearConditionId id) {
    if (bilinear_uses_h2(id)) return AuxFunctionSpec::Base::H;
    throw ConfigInvalid(to_string(id) + " takes no second auxiliary function");
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

// sup over (a,x) (below = true) or (x,b) of expr^p, as one factor
std::function<ValueFactor(double)> inner_sup_factor(MonotoneExpr e, double p, Interval dom,
                                                    bool below) {
    return [e = std::move(e), p, dom, below](double x) {
        ExtReal v = below ? monotone_power_sup(e, p, dom.a, x) : monotone_power_sup(e, p, x, dom.b);
        return ValueFactor{v, 1.0, 0.0};
    };
}

CumulativePtr aux_base_cumulative(const AuxFunctionSpec& aux, const BilinearContext& ctx) {
    switch (aux.base) {
        case AuxFunctionSpec::Base::F:
            return ctx.F;
        case AuxFunctionSpec::Base::G:
            return ctx.G;
        case AuxFunctionSpec::Base::H:
            return ctx.H;
        case AuxFunctionSpec::Base::Custom:
            return aux.custom;
    }
    throw ConfigInvalid("unreachable aux base");
}

}  // namespace

BilinearFunctional::BilinearFunctional(BilinearConditionId id, const BilinearParams& params,
                                       BilinearContext ctx, std::optional<AuxFunctionSpec> h1,
                                       std::optional<AuxFunctionSpec> h2)
    : id_(id), params_(params), ctx_(std::move(ctx)) {
    if (id == BilinearConditionId::D) id = BilinearConditionId::Bt1;
    const double a = params.alpha, b = params.beta, c = params.gamma;
    const double s = params.s, s1 = params.s1, s2 = params.s2;
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw SideConditionViolated("alpha, beta and gamma must be > 0");
    const int n = static_cast<int>(id) + 1;
    if (n >= 11 && n <= 17 && !(s > 0.0)) throw SideConditionViolated("s must be > 0");
    if (((n >= 2 && n <= 10) || n >= 18) && !(s1 > 0.0 && s2 > 0.0))
        throw SideConditionViolated("s1 and s2 must be > 0");

    bool wants1 = bilinear_uses_h1(id), wants2 = bilinear_uses_h2(id);
    if (wants1 && !h1)
        throw MissingAuxFunction(to_string(id) + " requires the auxiliary function h1");
    if (wants2 && !h2)
        throw MissingAuxFunction(to_string(id) + " requires the auxiliary function h2");
    if ((!wants1 && h1) || (!wants2 && h2))
        throw ConfigInvalid(to_string(id) + " was given an unused auxiliary function");

    MonotoneExpr F = MonotoneExpr::of(ctx_.F);
    MonotoneExpr G = MonotoneExpr::of(ctx_.G);
    MonotoneExpr H = MonotoneExpr::of(ctx_.H);
    const auto& q = ctx_.quad;
    const Interval& dom = ctx_.domain;
    auto UT = [&](const WeightSpec& w, std::vector<std::pair<MonotoneExpr, double>> ps) {
        return make_tail(TailKind::UpperTail, dom, make_composite(w, ps), q);
    };
    auto LT = [&](const WeightSpec& w, std::vector<std::pair<MonotoneExpr, double>> ps) {
        return make_tail(TailKind::LowerTail, dom, make_composite(w, ps), q);
    };
    auto push_i = [&](CumulativePtr I, double p) { factors_.push_back(integral_factor(I, p)); };
    auto push_e = [&](const MonotoneExpr& e, double p) { factors_.push_back(expr_factor(e, p)); };

    switch (id) {
        case BilinearConditionId::D:
        case BilinearConditionId::Bt1:
            push_e(F, a);
            push_e(G, b);
            push_e(H, c);
            break;
        case BilinearConditionId::Bt2:
            push_i(UT(ctx_.f, {{G, (b - s1) / a}, {H, (c - s2) / a}}), a);
            push_e(G, s1);
            push_e(H, s2);
            break;
        case BilinearConditionId::Bt3:
            push_i(LT(ctx_.f, {{G, (b + s1) / a}, {H, (c + s2) / a}}), a);
            push_e(G, -s1);
            push_e(H, -s2);
            break;
        case BilinearConditionId::Bt4:
            push_i(LT(ctx_.f, {{G, b / (a + s1)}, {H, (c - s2) / (a + s1)}}), a + s1);
            push_e(F, -s1);
            push_e(H, s2);
            break;
        case BilinearConditionId::Bt5:
            push_i(LT(ctx_.f, {{G, (b - s2) / (a + s1)}, {H, c / (a + s1)}}), a + s1);
            push_e(F, -s1);
            push_e(G, s2);
            break;
        case BilinearConditionId::Bt6:
            require(a > s1, "Bt6 requires alpha > s1 (alpha=" + std::to_string(a) +
                                ", s1=" + std::to_string(s1) + ")");
            push_i(LT(ctx_.f, {{G, b / (a - s1)}, {H, (c + s2) / (a - s1)}}), a - s1);
            push_e(F, s1);
            push_e(H, -s2);
            break;
        case BilinearConditionId::Bt7:
            require(a > s1, "Bt7 requires alpha > s1 (alpha=" + std::to_string(a) +
                                ", s1=" + std::to_string(s1) + ")");
            push_i(LT(ctx_.f, {{G, (b + s2) / (a - s1)}, {H, c / (a - s1)}}), a - s1);
            push_e(F, s1);
            push_e(G, -s2);
            break;
        case BilinearConditionId::Bt8:
            require(a < s1, "Bt8 requires alpha < s1 (alpha=" + std::to_string(a) +
                                ", s1=" + std::to_string(s1) + ")");
            push_i(UT(ctx_.f, {{G, b / (a - s1)}}), a - s1);
            push_e(H, s2);
            push_i(UT(ctx_.f, {{H, (c - s2) / s1}}), s1);
            break;
        case BilinearConditionId::Bt9:
            require(a < s1, "Bt9 requires alpha < s1 (alpha=" + std::to_string(a) +
                                ", s1=" + std::to_string(s1) + ")");
            push_i(UT(ctx_.f, {{H, c / (a - s1)}}), a - s1);
            push_e(G, s2);
            push_i(UT(ctx_.f, {{G, (b - s2) / s1}}), s1);
            break;
        case BilinearConditionId::Bt10:
            push_i(LT(ctx_.g, {{F, (a / 2.0) / (b + s1)}}), b + s1);
            push_i(LT(ctx_.h, {{F, (a / 2.0) / (c + s2)}}), c + s2);
            push_e(G, -s1);
            push_e(H, -s2);
            break;
        case BilinearConditionId::Bt11:
            push_i(UT(ctx_.f, {{G, b * (1.0 - s) / a}, {H, c * (1.0 - s) / a}}), a);
            push_e(G, b * s);
            push_e(H, c * s);
            break;
        case BilinearConditionId::Bt12:
            push_i(LT(ctx_.f, {{G, b * (1.0 + s) / a}, {H, c * (1.0 + s) / a}}), a);
            push_e(G, -b * s);
            push_e(H, -c * s);
            break;
        case BilinearConditionId::Bt13:
            push_i(UT(ctx_.f, {{G, b / (a + s)}, {H, c / (a + s)}}), a + s);
            push_e(F, -s);
            break;
        case BilinearConditionId::Bt14:
            require(a > s, "Bt14 requires alpha > s (alpha=" + std::to_string(a) +
                               ", s=" + std::to_string(s) + ")");
            push_i(LT(ctx_.f, {{G, b / (a - s)}, {H, c / (a - s)}}), a - s);
            push_e(F, s);
            break;
        case BilinearConditionId::Bt15:
            require(a < s, "Bt15 requires alpha < s (alpha=" + std::to_string(a) +
                               ", s=" + std::to_string(s) + ")");
            push_i(UT(ctx_.f, {{G, b / (a - s)}, {H, c / (a - s)}}), a - s);
            push_e(F, s);
            break;
        case BilinearConditionId::Bt16: {
            require(c < s, "Bt16 requires gamma < s (gamma=" + std::to_string(c) +
                               ", s=" + std::to_string(s) + ")");
            MonotoneExpr h = h1->resolve(ctx_);
            if (!h.nondecreasing())
                throw ConfigInvalid("Bt16 pairs h1 with H; use a nondecreasing aux function");
            MonotoneExpr hH = MonotoneExpr::sum(aux_base_cumulative(*h1, ctx_), h1->scale, ctx_.H);
            push_i(UT(ctx_.f, {{h, (c - s) / a}}), a);
            push_e(G, b);
            push_e(hH, s);
            break;
        }
        case BilinearConditionId::Bt17: {
            require(b < s, "Bt17 requires beta < s (beta=" + std::to_string(b) +
                               ", s=" + std::to_string(s) + ")");
            MonotoneExpr h = h1->resolve(ctx_);
            if (!h.nondecreasing())
                throw ConfigInvalid("Bt17 pairs h1 with G; use a nondecreasing aux function");
            MonotoneExpr hG = MonotoneExpr::sum(aux_base_cumulative(*h1, ctx_), h1->scale, ctx_.G);
            push_i(UT(ctx_.f, {{h, (b - s) / a}}), a);
            push_e(H, c);
            push_e(hG, s);
            break;
        }
        case BilinearConditionId::Bt18:
        case BilinearConditionId::Bt19:
        case BilinearConditionId::Bt20: {
            require(b < s1 && c < s2,
                    to_string(id) + " requires beta < s1 and gamma < s2 (beta=" +
                        std::to_string(b) + ", s1=" + std::to_string(s1) +
                        ", gamma=" + std::to_string(c) + ", s2=" + std::to_string(s2) + ")");
            MonotoneExpr ha = h1->resolve(ctx_);
            MonotoneExpr hb = h2->resolve(ctx_);
            if (!ha.nondecreasing() || !hb.nondecreasing())
                throw ConfigInvalid(to_string(id) + " pairs h1 with G and h2 with H; use "
                                                    "nondecreasing aux functions");
            MonotoneExpr hG = MonotoneExpr::sum(aux_base_cumulative(*h1, ctx_), h1->scale, ctx_.G);
            MonotoneExpr hH = MonotoneExpr::sum(aux_base_cumulative(*h2, ctx_), h2->scale, ctx_.H);
            push_i(UT(ctx_.f, {{ha, (b - s1) / a}, {hb, (c - s2) / a}}), a);
            if (id == BilinearConditionId::Bt18) {
                factors_.push_back(inner_sup_factor(hG, s1, dom, true));
                push_e(hH, s2);
            } else if (id == BilinearConditionId::Bt19) {
                push_e(hG, s1);
                factors_.push_back(inner_sup_factor(hH, s2, dom, true));
            } else {
                factors_.push_back(inner_sup_factor(hG, s1, dom, true));
                factors_.push_back(inner_sup_factor(hH, s2, dom, true));
            }
            break;
        }
        case BilinearConditionId::Bt21:
        case BilinearConditionId::Bt22:
        case BilinearConditionId::Bt23: {
            MonotoneExpr ha = h1->resolve(ctx_);
            MonotoneExpr hb = h2->resolve(ctx_);
            if (!ha.nondecreasing() || !hb.nondecreasing())
                throw ConfigInvalid(to_string(id) + " pairs h1 with G and h2 with H; use "
                                                    "nondecreasing aux functions");
            MonotoneExpr hG = MonotoneExpr::sum(aux_base_cumulative(*h1, ctx_), h1->scale, ctx_.G);
            MonotoneExpr hH = MonotoneExpr::sum(aux_base_cumulative(*h2, ctx_), h2->scale, ctx_.H);
            push_i(LT(ctx_.f, {{hG, (b + s1) / a}, {hH, (c + s2) / a}}), a);
            if (id == BilinearConditionId::Bt21) {
                factors_.push_back(inner_sup_factor(ha, -s1, dom, false));
                push_e(hb, -s2);
            } else if (id == BilinearConditionId::Bt22) {
                push_e(ha, -s1);
                factors_.push_back(inner_sup_factor(hb, -s2, dom, false));
            } else {
                factors_.push_back(inner_sup_factor(ha, -s1, dom, false));
                factors_.push_back(inner_sup_factor(hb, -s2, dom, false));
            }
            break;
        }
    }
}

EvalResult BilinearFunctional::operator()(double x) const {
    if (!ctx_.domain.contains(x))
        throw PointOutsideDomain("condition evaluated outside the context domain");
    std::vector<ValueFactor> vals;
    vals.reserve(factors_.size());
    for (const auto& f : factors_) vals.push_back(f(x));
    return combine_factors(vals);
}

EvalResult eval_bilinear_pointwise(BilinearConditionId id, double x, const BilinearParams& params,
                                   const BilinearContext& ctx, std::optional<AuxFunctionSpec> h1,
                                   std::optional<AuxFunctionSpec> h2) {
    return BilinearFunctional(id, params, ctx, std::move(h1), std::move(h2))(x);
}

SupEstimate sup_bilinear(BilinearConditionId id, const BilinearParams& params,
                         const BilinearContext& ctx, const Interval& sub,
                         std::optional<AuxFunctionSpec> h1, std::optional<AuxFunctionSpec> h2,
                         const SupSettings& st) {
    if (!ctx.domain.covers(sub))
        throw ConfigInvalid("sup sub-interval must lie within the context domain");
    BilinearFunctional fn(id, params, ctx, std::move(h1), std::move(h2));
    return estimate_sup([&fn](double x) { return fn(x); }, sub, st);
}

InfBilinearResult inf_bilinear(BilinearConditionId id, const BilinearParams& params,
                               const BilinearContext& ctx, const Interval& sub,
                               std::vector<AuxFunctionSpec> candidates1,
                               std::vector<AuxFunctionSpec> candidates2, const SupSettings& st) {
    if (!bilinear_uses_h1(id))
        throw ConfigInvalid(to_string(id) + " is not an inf-type condition");
    if (candidates1.empty()) throw ConfigInvalid("inf requires a nonempty candidate list");

    auto ensure_canonical = [](std::vector<AuxFunctionSpec>& cands, AuxFunctionSpec::Base base) {
        for (const auto& c : cands)
            if (c.base == base && c.scale == 1.0) return;
        cands.push_back(AuxFunctionSpec{base, 1.0, nullptr});
    };
    ensure_canonical(candidates1, canonical_aux_base1(id));

    std::optional<InfBilinearResult> best;
    if (!bilinear_uses_h2(id)) {
        for (const auto& c1 : candidates1) {
            SupEstimate est = sup_bilinear(id, params, ctx, sub, c1, std::nullopt, st);
            if (!best || est.value < best->estimate.value)
                best = InfBilinearResult{est, c1, std::nullopt};
        }
        return *best;
    }
    if (candidates2.empty()) candidates2.push_back(AuxFunctionSpec{canonical_aux_base2(id), 1.0});
    ensure_canonical(candidates2, canonical_aux_base2(id));
    for (const auto& c1 : candidates1) {
        for (const auto& c2 : candidates2) {
            SupEstimate est = sup_bilinear(id, params, ctx, sub, c1, c2, st);
            if (!best || est.value < best->estimate.value) best = InfBilinearResult{est, c1, c2};
        }
    }
    return *best;
}

BilinearContext hardy_bilinear_context(const WeightSpec& u, const WeightSpec& v1,
                                       const WeightSpec& v2, double p1, double p2,
                                       const QuadratureSettings& quad) {
    ConjugateExponent c1 = conjugate(p1);
    ConjugateExponent c2 = conjugate(p2);
    return make_bilinear_context(u, v1.pow(1.0 - c1.p_conj), v2.pow(1.0 - c2.p_conj), quad);
}

SupEstimate bilinear_D(const WeightSpec& u, const WeightSpec& v1, const WeightSpec& v2, double p1,
                       double p2, double q, const QuadratureSettings& quad, const SupSettings& st) {
    if (!(p1 > 1.0) || !(p2 > 1.0) || !(q > 1.0) || !(q < kInf) ||
        !(q >= std::max(p1, p2)))
        throw ExponentOutOfRange(
            "the bilinear Hardy condition requires 1 < p1, p2, q < inf and q >= max(p1, p2) "
            "(p1=" + std::to_string(p1) + ", p2=" + std::to_string(p2) +
            ", q=" + std::to_string(q) + ")");
    BilinearContext ctx = hardy_bilinear_context(u, v1, v2, p1, p2, quad);
    BilinearParams params;
    params.alpha = 1.0 / q;
    params.beta = 1.0 - 1.0 / p1;   // 1/p1'
    params.gamma = 1.0 - 1.0 / p2;  // 1/p2'
    return sup_bilinear(BilinearConditionId::Bt1, params, ctx, ctx.domain, std::nullopt,
                        std::nullopt, st);
}

BilinearConditionId a_tilde_underlying(int i) {
    if (i < 1 || i > 22) throw ConfigInvalid("At index must be in 1..22");
    return static_cast<BilinearConditionId>(i);  // Bt_{i+1} has enum value i
}

ATildeResult eval_A_tilde(int i, const BilinearParams& params, const BilinearContext& hardy_ctx,
                          double p1, double p2, double q, const SupSettings& st) {
    if (!(std::max(p1, p2) > 1.0) || !(q >= std::max(p1, p2)) || !(q < kInf))
        throw ExponentOutOfRange("the At scale requires 1 < max(p1,p2) <= q < inf");
    conjugate(p1);
    conjugate(p2);
    BilinearConditionId id = a_tilde_underlying(i);
    BilinearParams sub = params;
    sub.alpha = 1.0 / q;
    sub.beta = 1.0 - 1.0 / p1;
    sub.gamma = 1.0 - 1.0 / p2;
    ATildeResult out;
    if (bilinear_uses_h1(id)) {
        out.inf_type = true;
        out.upper_bound_via_candidates = true;
        std::vector<AuxFunctionSpec> c1{
            AuxFunctionSpec{canonical_aux_base1(id), 0.5, nullptr},
            AuxFunctionSpec{canonical_aux_base1(id), 1.0, nullptr},
            AuxFunctionSpec{canonical_aux_base1(id), 2.0, nullptr},
        };
        std::vector<AuxFunctionSpec> c2;
        if (bilinear_uses_h2(id))
            c2 = {AuxFunctionSpec{canonical_aux_base2(id), 0.5, nullptr},
                  AuxFunctionSpec{canonical_aux_base2(id), 1.0, nullptr},
                  AuxFunctionSpec{canonical_aux_base2(id), 2.0, nullptr}};
        out.estimate = inf_bilinear(id, sub, hardy_ctx, hardy_ctx.domain, c1, c2, st).estimate;
        return out;
    }
    out.estimate = sup_bilinear(id, sub, hardy_ctx, hardy_ctx.domain, std::nullopt, std::nullopt, st);
    return out;
}

}  // namespace hardykit
