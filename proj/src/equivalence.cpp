#include "hardykit/equivalence.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "hardykit/parallel.hpp"
#include "hardykit/version.hpp"

namespace hardykit {

std::string to_string(SuiteKind k) {
    switch (k) {
        case SuiteKind::Linear:
            return "linear";
        case SuiteKind::Bilinear:
            return "bilinear";
        case SuiteKind::HardyLinear:
            return "hardy-linear";
        case SuiteKind::HardyBilinear:
            return "hardy-bilinear";
        case SuiteKind::GeoMean:
            return "geomean";
        case SuiteKind::GeoMeanBilinear:
            return "geomean-bilinear";
    }
    return "?";
}

SuiteKind suite_from_string(const std::string& name) {
    if (name == "linear") return SuiteKind::Linear;
    if (name == "bilinear") return SuiteKind::Bilinear;
    if (name == "hardy-linear") return SuiteKind::HardyLinear;
    if (name == "hardy-bilinear") return SuiteKind::HardyBilinear;
    if (name == "geomean") return SuiteKind::GeoMean;
    if (name == "geomean-bilinear") return SuiteKind::GeoMeanBilinear;
    throw ConfigInvalid("unknown suite kind '" + name + "'");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::PASS:
            return "PASS";
        case Verdict::FAIL:
            return "FAIL";
        case Verdict::INCONCLUSIVE:
            return "INCONCLUSIVE";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// config parsing

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigInvalid("unknown key '" + it.key() + "' in " + what);
    }
}

BilinearParams params_from_json(const json& j) {
    check_keys(j, {"alpha", "beta", "gamma", "s", "s1", "s2"}, "parameter set");
    BilinearParams p;
    if (j.contains("alpha")) p.alpha = j.at("alpha").get<double>();
    if (j.contains("beta")) p.beta = j.at("beta").get<double>();
    if (j.contains("gamma")) p.gamma = j.at("gamma").get<double>();
    if (j.contains("s")) p.s = j.at("s").get<double>();
    if (j.contains("s1")) p.s1 = j.at("s1").get<double>();
    if (j.contains("s2")) p.s2 = j.at("s2").get<double>();
    return p;
}

json params_to_json(const BilinearParams& p) {
    return json{{"alpha", p.alpha}, {"beta", p.beta},   {"gamma", p.gamma},
                {"s", p.s},         {"s1", p.s1},       {"s2", p.s2}};
}

bool needs_two_lower(SuiteKind k) {
    return k == SuiteKind::HardyBilinear || k == SuiteKind::GeoMeanBilinear;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    check_keys(j,
               {"suite", "weights", "exponents", "params", "conditions", "quadrature", "sup",
                "seed", "force_infinite", "candidates", "bracket"},
               "run config");
    RunConfig cfg;
    if (!j.contains("suite")) throw ConfigInvalid("run config needs a 'suite'");
    cfg.kind = suite_from_string(j.at("suite").get<std::string>());

    if (!j.contains("weights") || !j.at("weights").is_object())
        throw ConfigInvalid("run config needs a 'weights' object");
    const json& w = j.at("weights");
    auto grab = [&](const char* name) -> std::optional<WeightSpec> {
        if (!w.contains(name)) return std::nullopt;
        return weight_from_json(w.at(name));
    };
    switch (cfg.kind) {
        case SuiteKind::Linear:
            check_keys(w, {"f", "g"}, "weights");
            cfg.f = grab("f");
            cfg.g = grab("g");
            if (!cfg.f || !cfg.g) throw ConfigInvalid("linear suites need weights f and g");
            break;
        case SuiteKind::Bilinear:
            check_keys(w, {"f", "g", "h"}, "weights");
            cfg.f = grab("f");
            cfg.g = grab("g");
            cfg.h = grab("h");
            if (!cfg.f || !cfg.g || !cfg.h)
                throw ConfigInvalid("bilinear suites need weights f, g and h");
            break;
        case SuiteKind::HardyLinear:
        case SuiteKind::GeoMean:
            check_keys(w, {"u", "v"}, "weights");
            cfg.u = grab("u");
            cfg.v = grab("v");
            if (!cfg.u || !cfg.v) throw ConfigInvalid("this suite needs weights u and v");
            break;
        case SuiteKind::HardyBilinear:
        case SuiteKind::GeoMeanBilinear:
            check_keys(w, {"u", "v1", "v2"}, "weights");
            cfg.u = grab("u");
            cfg.v1 = grab("v1");
            cfg.v2 = grab("v2");
            if (!cfg.u || !cfg.v1 || !cfg.v2)
                throw ConfigInvalid("this suite needs weights u, v1 and v2");
            break;
    }

    if (j.contains("exponents")) {
        const json& e = j.at("exponents");
        check_keys(e, {"p", "q", "p1", "p2"}, "exponents");
        if (e.contains("p")) cfg.p = e.at("p").get<double>();
        if (e.contains("q")) cfg.q = e.at("q").get<double>();
        if (e.contains("p1")) cfg.p1 = e.at("p1").get<double>();
        if (e.contains("p2")) cfg.p2 = e.at("p2").get<double>();
    }
    if (j.contains("params")) {
        cfg.param_sets.clear();
        for (const auto& pj : j.at("params")) cfg.param_sets.push_back(params_from_json(pj));
        if (cfg.param_sets.empty()) throw ConfigInvalid("'params' must not be empty");
    }
    if (j.contains("conditions")) {
        if (j.at("conditions").is_string()) {
            if (j.at("conditions").get<std::string>() != "all")
                throw ConfigInvalid("'conditions' must be a list or \"all\"");
        } else {
            for (const auto& c : j.at("conditions"))
                cfg.conditions.push_back(c.get<std::string>());
        }
    }
    if (j.contains("quadrature")) cfg.quad = quadrature_from_json(j.at("quadrature"));
    if (j.contains("sup")) cfg.sup = sup_from_json(j.at("sup"));
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("force_infinite"))
        for (const auto& c : j.at("force_infinite"))
            cfg.force_infinite.push_back(c.get<std::string>());
    if (j.contains("candidates")) {
        const json& c = j.at("candidates");
        check_keys(c, {"linear_grid", "bilinear_scales"}, "candidates");
        if (c.contains("linear_grid")) cfg.linear_candidate_grid = c.at("linear_grid").get<int>();
        if (c.contains("bilinear_scales")) {
            cfg.bilinear_candidate_scales.clear();
            for (const auto& s : c.at("bilinear_scales"))
                cfg.bilinear_candidate_scales.push_back(s.get<double>());
        }
    }
    if (j.contains("bracket")) {
        const json& b = j.at("bracket");
        check_keys(b, {"enabled", "family", "grid", "theta_grid", "theta_span"}, "bracket");
        cfg.with_bracket = b.value("enabled", true);
        if (b.contains("family")) cfg.family.kind = family_from_string(b.at("family").get<std::string>());
        if (b.contains("grid")) cfg.family.grid = b.at("grid").get<int>();
        if (b.contains("theta_grid")) cfg.family.theta_grid = b.at("theta_grid").get<int>();
        if (b.contains("theta_span")) cfg.family.theta_span = b.at("theta_span").get<double>();
    }
    return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
    json j;
    j["suite"] = to_string(cfg.kind);
    json w;
    if (cfg.f) w["f"] = weight_to_json(*cfg.f);
    if (cfg.g) w["g"] = weight_to_json(*cfg.g);
    if (cfg.h) w["h"] = weight_to_json(*cfg.h);
    if (cfg.u) w["u"] = weight_to_json(*cfg.u);
    if (cfg.v) w["v"] = weight_to_json(*cfg.v);
    if (cfg.v1) w["v1"] = weight_to_json(*cfg.v1);
    if (cfg.v2) w["v2"] = weight_to_json(*cfg.v2);
    j["weights"] = w;
    if (cfg.kind == SuiteKind::HardyLinear || cfg.kind == SuiteKind::GeoMean)
        j["exponents"] = json{{"p", cfg.p}, {"q", cfg.q}};
    else if (needs_two_lower(cfg.kind))
        j["exponents"] = json{{"p1", cfg.p1}, {"p2", cfg.p2}, {"q", cfg.q}};
    json ps = json::array();
    for (const auto& p : cfg.param_sets) ps.push_back(params_to_json(p));
    j["params"] = ps;
    if (!cfg.conditions.empty()) j["conditions"] = cfg.conditions;
    j["quadrature"] = json{{"rel_tol", cfg.quad.rel_tol},
                           {"abs_tol", cfg.quad.abs_tol},
                           {"max_subdivisions", cfg.quad.max_subdivisions}};
    j["sup"] = json{{"initial_grid", cfg.sup.initial_grid},
                    {"refine_passes", cfg.sup.refine_passes},
                    {"rel_change_tol", cfg.sup.rel_change_tol}};
    j["seed"] = cfg.seed;
    if (!cfg.force_infinite.empty()) j["force_infinite"] = cfg.force_infinite;
    return j;
}

// ---------------------------------------------------------------------------
// suite evaluation

namespace {

struct SuiteContexts {
    std::optional<LinearContext> lin;
    std::optional<BilinearContext> bil;
};

SuiteContexts build_contexts(const RunConfig& cfg) {
    SuiteContexts c;
    switch (cfg.kind) {
        case SuiteKind::Linear:
            c.lin = make_linear_context(*cfg.f, *cfg.g, cfg.quad);
            break;
        case SuiteKind::HardyLinear:
            if (!(cfg.p > 1.0) || !(cfg.p <= cfg.q) || !(cfg.q < kInf))
                throw ConfigInvalid("hardy-linear suites require 1 < p <= q < inf");
            c.lin = hardy_linear_context(*cfg.u, *cfg.v, cfg.p, cfg.quad);
            break;
        case SuiteKind::Bilinear:
            c.bil = make_bilinear_context(*cfg.f, *cfg.g, *cfg.h, cfg.quad);
            break;
        case SuiteKind::HardyBilinear:
            if (!(cfg.p1 > 1.0) || !(cfg.p2 > 1.0) || !(cfg.q >= std::max(cfg.p1, cfg.p2)) ||
                !(cfg.q < kInf))
                throw ConfigInvalid(
                    "hardy-bilinear suites require 1 < p1, p2 and max(p1,p2) <= q < inf");
            c.bil = hardy_bilinear_context(*cfg.u, *cfg.v1, *cfg.v2, cfg.p1, cfg.p2, cfg.quad);
            break;
        case SuiteKind::GeoMean:
        case SuiteKind::GeoMeanBilinear:
            break;  // evaluated directly from the weights
    }
    return c;
}

std::vector<std::string> all_condition_ids(SuiteKind kind) {
    std::vector<std::string> ids;
    switch (kind) {
        case SuiteKind::Linear:
            for (int i = 1; i <= 15; ++i) ids.push_back("B" + std::to_string(i));
            break;
        case SuiteKind::HardyLinear:
            ids.push_back("AM");
            for (int i = 1; i <= 15; ++i) ids.push_back("B" + std::to_string(i));
            break;
        case SuiteKind::Bilinear:
            for (int i = 1; i <= 23; ++i) ids.push_back("Bt" + std::to_string(i));
            break;
        case SuiteKind::HardyBilinear:
            ids.push_back("D");
            for (int i = 1; i <= 22; ++i) ids.push_back("At" + std::to_string(i));
            break;
        case SuiteKind::GeoMean:
            ids.push_back("scriptB");
            break;
        case SuiteKind::GeoMeanBilinear:
            ids.push_back("scriptB2");
            break;
    }
    return ids;
}

LinearParams linear_params(const BilinearParams& p) { return {p.alpha, p.beta, p.s}; }

BilinearParams hardy_substituted(const RunConfig& cfg, const BilinearParams& p) {
    BilinearParams s = p;
    s.alpha = 1.0 / cfg.q;
    s.beta = 1.0 - 1.0 / cfg.p1;
    s.gamma = 1.0 - 1.0 / cfg.p2;
    return s;
}

std::vector<AuxFunctionSpec> scale_candidates(AuxFunctionSpec::Base base,
                                              const std::vector<double>& scales) {
    std::vector<AuxFunctionSpec> out;
    for (double c : scales) out.push_back(AuxFunctionSpec{base, c, nullptr});
    return out;
}

ConditionOutcome evaluate_condition(const RunConfig& cfg, const SuiteContexts& ctxs,
                                    const std::string& id, int si) {
    const BilinearParams& set = cfg.param_sets[static_cast<std::size_t>(si)];
    ConditionOutcome out;
    out.id = id;
    out.set_index = si;
    try {
        if (cfg.kind == SuiteKind::GeoMean && id == "scriptB") {
            out.estimate = condition_scriptB(*cfg.u, *cfg.v, cfg.p, cfg.q, cfg.quad, cfg.sup);
            out.evaluated = true;
            return out;
        }
        if (cfg.kind == SuiteKind::GeoMeanBilinear && id == "scriptB2") {
            out.estimate = condition_scriptB_bilinear(*cfg.u, *cfg.v1, *cfg.v2, cfg.p1, cfg.p2,
                                                      cfg.q, cfg.quad, cfg.sup);
            out.evaluated = true;
            return out;
        }
        if (ctxs.lin) {
            const LinearContext& ctx = *ctxs.lin;
            LinearParams p = linear_params(set);
            LinearConditionId lid = linear_id_from_string(id);
            if (lid == LinearConditionId::AM) {
                if (cfg.kind != SuiteKind::HardyLinear)
                    throw ConfigInvalid("AM needs a hardy-linear suite");
                p.alpha = 1.0 / cfg.q;
                p.beta = 1.0 - 1.0 / cfg.p;
                lid = LinearConditionId::B1;
            }
            bool inf_type = lid == LinearConditionId::B12 || lid == LinearConditionId::B13 ||
                            lid == LinearConditionId::B14 || lid == LinearConditionId::B15;
            if (inf_type) {
                auto cands = canonical_aux_candidates(canonical_aux_base(lid),
                                                      cfg.linear_candidate_grid);
                out.estimate = inf_linear(lid, p, ctx, ctx.domain, std::move(cands), cfg.sup)
                                   .estimate;
                out.inf_type = true;
            } else {
                out.estimate = sup_linear(lid, p, ctx, ctx.domain, std::nullopt, cfg.sup);
            }
            out.evaluated = true;
            return out;
        }
        const BilinearContext& ctx = *ctxs.bil;
        if (id == "D") {
            BilinearParams p = hardy_substituted(cfg, set);
            out.estimate = sup_bilinear(BilinearConditionId::Bt1, p, ctx, ctx.domain, std::nullopt,
                                        std::nullopt, cfg.sup);
            out.evaluated = true;
            return out;
        }
        BilinearConditionId bid;
        BilinearParams p = set;
        if (id.size() > 2 && id[0] == 'A' && id[1] == 't') {
            int i = std::atoi(id.c_str() + 2);
            bid = a_tilde_underlying(i);
            p = hardy_substituted(cfg, set);
        } else {
            bid = bilinear_id_from_string(id);
        }
        if (bilinear_uses_h1(bid)) {
            auto c1 = scale_candidates(canonical_aux_base1(bid), cfg.bilinear_candidate_scales);
            std::vector<AuxFunctionSpec> c2;
            if (bilinear_uses_h2(bid))
                c2 = scale_candidates(canonical_aux_base2(bid), cfg.bilinear_candidate_scales);
            out.estimate =
                inf_bilinear(bid, p, ctx, ctx.domain, std::move(c1), std::move(c2), cfg.sup)
                    .estimate;
            out.inf_type = true;
        } else {
            out.estimate =
                sup_bilinear(bid, p, ctx, ctx.domain, std::nullopt, std::nullopt, cfg.sup);
        }
        out.evaluated = true;
        return out;
    } catch (const SideConditionViolated& e) {
        out.skipped_reason = e.what();
    } catch (const MissingAuxFunction& e) {
        out.skipped_reason = e.what();
    } catch (const Error& e) {
        out.skipped_reason = std::string("error: ") + e.what();
    }
    return out;
}

// max relative residual of the two exact identities over a 50-point grid
void identity_residuals(const RunConfig& cfg, const SuiteContexts& ctxs, IdentityResiduals& res) {
    const double L = cfg.sup.log_range;
    auto grid_points = [&](const Interval& dom) {
        std::vector<double> xs;
        for (int i = 0; i < 50; ++i) {
            double y = -L + 2.0 * L * i / 49.0;
            xs.push_back(sup_transform_point(dom, y));
        }
        return xs;
    };
    if (ctxs.lin) {
        const LinearContext& ctx = *ctxs.lin;
        LinearParams p = linear_params(cfg.param_sets.front());
        if (cfg.kind == SuiteKind::HardyLinear) {
            p.alpha = 1.0 / cfg.q;
            p.beta = 1.0 - 1.0 / cfg.p;
        }
        p.s = p.beta;  // the reduction point
        LinearFunctional b1(LinearConditionId::B1, p, ctx);
        LinearFunctional b2(LinearConditionId::B2, p, ctx);
        double worst = 0.0;
        for (double x : grid_points(ctx.domain)) {
            EvalResult r1 = b1(x), r2 = b2(x);
            res.uncertainty = std::max({res.uncertainty, r1.rel_err, r2.rel_err});
            if (!r1.value.is_finite() || !r2.value.is_finite()) continue;
            double v1 = r1.value.as_double(), v2 = r2.value.as_double();
            if (v1 < 1e-12 && v2 < 1e-12) continue;
            worst = std::max(worst, std::fabs(v2 - v1) / std::max(v1, 1e-300));
        }
        res.b2_reduction = worst;
        return;
    }
    if (!ctxs.bil) return;
    const BilinearContext& ctx = *ctxs.bil;
    BilinearParams base = cfg.param_sets.front();
    if (cfg.kind == SuiteKind::HardyBilinear) base = hardy_substituted(cfg, base);
    const double d1[3] = {0.2, 0.6, 1.1};
    const double d2[3] = {0.3, 0.8, 0.95};
    AuxFunctionSpec hg{AuxFunctionSpec::Base::G, 1.0, nullptr};
    AuxFunctionSpec hh{AuxFunctionSpec::Base::H, 1.0, nullptr};
    double worst1 = 0.0, worst2 = 0.0;
    for (int k = 0; k < 3; ++k) {
        BilinearParams p = base;
        p.s1 = p.beta + d1[k];
        p.s2 = p.gamma + d2[k];
        BilinearFunctional bt2(BilinearConditionId::Bt2, p, ctx);
        BilinearFunctional bt18(BilinearConditionId::Bt18, p, ctx, hg, hh);
        BilinearFunctional bt3(BilinearConditionId::Bt3, p, ctx);
        BilinearFunctional bt21(BilinearConditionId::Bt21, p, ctx, hg, hh);
        double f18 = std::pow(2.0, p.s1 + p.s2);
        double f21 = std::pow(2.0, p.beta + p.gamma + p.s1 + p.s2);
        for (double x : grid_points(ctx.domain)) {
            EvalResult r2 = bt2(x), r18 = bt18(x);
            res.uncertainty = std::max({res.uncertainty, r2.rel_err, r18.rel_err});
            if (r2.value.is_finite() && r18.value.is_finite()) {
                double expect = f18 * r2.value.as_double();
                if (expect > 1e-12)
                    worst1 = std::max(worst1,
                                      std::fabs(r18.value.as_double() - expect) / expect);
            }
            EvalResult r3 = bt3(x), r21 = bt21(x);
            res.uncertainty = std::max({res.uncertainty, r3.rel_err, r21.rel_err});
            if (r3.value.is_finite() && r21.value.is_finite()) {
                double expect = f21 * r3.value.as_double();
                if (expect > 1e-12)
                    worst2 = std::max(worst2,
                                      std::fabs(r21.value.as_double() - expect) / expect);
            }
        }
    }
    res.i1 = worst1;
    res.i2 = worst2;
}

}  // namespace

EquivalenceReport run_suite(const RunConfig& cfg) {
    EquivalenceReport rep;
    rep.config = run_config_to_json(cfg);
    rep.config_digest = config_hash(rep.config);
    rep.seed = cfg.seed;

    SuiteContexts ctxs = build_contexts(cfg);

    // reference per parameter set
    switch (cfg.kind) {
        case SuiteKind::Linear:
        case SuiteKind::HardyLinear:
            rep.reference_id = "B1";
            break;
        case SuiteKind::Bilinear:
            rep.reference_id = "Bt1";
            break;
        case SuiteKind::HardyBilinear:
            rep.reference_id = "D";
            break;
        case SuiteKind::GeoMean:
            rep.reference_id = "scriptB";
            break;
        case SuiteKind::GeoMeanBilinear:
            rep.reference_id = "scriptB2";
            break;
    }
    rep.references.resize(cfg.param_sets.size());
    for (std::size_t si = 0; si < cfg.param_sets.size(); ++si) {
        ConditionOutcome ref =
            evaluate_condition(cfg, ctxs, rep.reference_id, static_cast<int>(si));
        if (!ref.evaluated)
            throw ConfigInvalid("reference condition could not be evaluated: " +
                                ref.skipped_reason);
        rep.references[si] = ref.estimate;
    }

    std::vector<std::string> ids = cfg.conditions.empty() ? all_condition_ids(cfg.kind)
                                                          : cfg.conditions;
    std::vector<ConditionOutcome> outcomes(ids.size() * cfg.param_sets.size());
    parallel_for(outcomes.size(), [&](std::size_t k) {
        std::size_t ci = k / cfg.param_sets.size();
        int si = static_cast<int>(k % cfg.param_sets.size());
        outcomes[k] = evaluate_condition(cfg, ctxs, ids[ci], si);
    });

    for (auto& o : outcomes) {
        for (const auto& forced : cfg.force_infinite)
            if (o.id == forced && o.evaluated) {
                o.estimate.value = ExtReal::infinity();
                o.estimate.converged = true;
                o.injected_infinite = true;
            }
        const SupEstimate& ref = rep.references[static_cast<std::size_t>(o.set_index)];
        if (o.evaluated && o.estimate.value.is_finite() && ref.value.is_finite() &&
            ref.value.as_double() > 0.0) {
            o.ratio_to_reference = o.estimate.value.as_double() / ref.value.as_double();
            o.ratio_valid = true;
        }
    }
    rep.outcomes = std::move(outcomes);

    identity_residuals(cfg, ctxs, rep.identities);

    if (cfg.with_bracket) {
        EstimatorProblem prob;
        prob.quad = cfg.quad;
        prob.q = cfg.q;
        switch (cfg.kind) {
            case SuiteKind::HardyLinear:
                prob.kind = InequalityKind::H1;
                prob.u = *cfg.u;
                prob.v = {*cfg.v};
                prob.p = {cfg.p};
                break;
            case SuiteKind::HardyBilinear:
                prob.kind = InequalityKind::H2;
                prob.u = *cfg.u;
                prob.v = {*cfg.v1, *cfg.v2};
                prob.p = {cfg.p1, cfg.p2};
                break;
            case SuiteKind::GeoMean:
                prob.kind = InequalityKind::GM;
                prob.u = *cfg.u;
                prob.v = {*cfg.v};
                prob.p = {cfg.p};
                break;
            case SuiteKind::GeoMeanBilinear:
                prob.kind = InequalityKind::BGM;
                prob.u = *cfg.u;
                prob.v = {*cfg.v1, *cfg.v2};
                prob.p = {cfg.p1, cfg.p2};
                break;
            default:
                throw ConfigInvalid("constant brackets need a Hardy or geomean form suite");
        }
        rep.bracket = maximize_quotient(cfg.family, prob);
    }

    // verdict
    int finite_conv = 0, infinite_conv = 0, unconverged = 0;
    auto tally = [&](const SupEstimate& e) {
        if (!e.converged) {
            ++unconverged;
            return;
        }
        if (e.value.is_infinite())
            ++infinite_conv;
        else
            ++finite_conv;
    };
    for (const auto& r : rep.references) tally(r);
    for (const auto& o : rep.outcomes)
        if (o.evaluated) tally(o.estimate);

    const double kIdentityTol = 1e-8;
    bool identity_exceeded = rep.identities.i1 > kIdentityTol ||
                             rep.identities.i2 > kIdentityTol ||
                             rep.identities.b2_reduction > kIdentityTol;
    if (identity_exceeded && rep.identities.uncertainty <= 1e-3) {
        rep.verdict = Verdict::FAIL;
        rep.verdict_reason = "identity residual exceeds 1e-8";
    } else if (finite_conv > 0 && infinite_conv > 0) {
        rep.verdict = Verdict::FAIL;
        rep.verdict_reason = "mixed finiteness across converged condition values";
    } else if (identity_exceeded) {
        rep.verdict = Verdict::INCONCLUSIVE;
        rep.verdict_reason = "identity check unreliable under the configured tolerances";
    } else if (unconverged > 0) {
        rep.verdict = Verdict::INCONCLUSIVE;
        rep.verdict_reason = std::to_string(unconverged) + " condition value(s) not converged";
    } else {
        rep.verdict = Verdict::PASS;
        rep.verdict_reason = "";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// serialization

json sup_estimate_to_json(const SupEstimate& est) {
    json j;
    j["value"] = est.value.is_infinite() ? json("inf") : json(est.value.as_double());
    j["witness"] = est.witness;
    j["converged"] = est.converged;
    json flags;
    flags["divergent_inner"] = est.divergent_inner;
    flags["overflow"] = est.overflow;
    flags["below_abs_tol"] = est.below_abs_tol;
    flags["endpoint_divergence"] = est.endpoint_divergence;
    j["flags"] = flags;
    j["diagnostics"] = json{{"grid_size", est.grid_size},
                            {"refined_passes", est.refined_passes},
                            {"worst_rel_err", est.worst_rel_err}};
    return j;
}

json report_to_json(const EquivalenceReport& rep) {
    json j;
    j["version"] = kVersion;
    j["config"] = rep.config;
    j["config_hash"] = rep.config_digest;
    j["seed"] = rep.seed;
    j["reference"] = rep.reference_id;
    json refs = json::array();
    for (const auto& r : rep.references) refs.push_back(sup_estimate_to_json(r));
    j["reference_values"] = refs;
    json outs = json::array();
    for (const auto& o : rep.outcomes) {
        json oj;
        oj["id"] = o.id;
        oj["set"] = o.set_index;
        if (o.evaluated) {
            oj["estimate"] = sup_estimate_to_json(o.estimate);
            oj["inf_type_upper_bound"] = o.inf_type;
            if (o.injected_infinite) oj["injected"] = true;
            if (o.ratio_valid) oj["ratio_to_reference"] = o.ratio_to_reference;
        } else {
            oj["skipped"] = o.skipped_reason;
        }
        outs.push_back(oj);
    }
    j["conditions"] = outs;
    json ids;
    if (rep.identities.i1 >= 0.0) ids["bt18_vs_bt2"] = rep.identities.i1;
    if (rep.identities.i2 >= 0.0) ids["bt21_vs_bt3"] = rep.identities.i2;
    if (rep.identities.b2_reduction >= 0.0) ids["b2_reduction"] = rep.identities.b2_reduction;
    j["identity_residuals"] = ids;
    j["verdict"] = to_string(rep.verdict);
    if (!rep.verdict_reason.empty()) j["verdict_reason"] = rep.verdict_reason;
    if (rep.bracket) {
        const auto& b = *rep.bracket;
        j["bracket"] = json{{"lower", b.lower},
                            {"condition_value",
                             b.condition_infinite ? json("inf") : json(b.condition_value)},
                            {"ratio", b.ratio},
                            {"best_member", b.best.member},
                            {"evaluated", b.evaluated},
                            {"skipped", b.skipped}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// sweeps and curves

std::vector<SweepPoint> sweep(const json& base_config, const std::string& axis,
                              const std::vector<double>& values) {
    if (axis.empty()) throw ConfigInvalid("sweep needs an axis path");
    std::string pointer = "/";
    for (char c : axis) pointer += c == '.' ? '/' : c;
    json::json_pointer ptr(pointer);
    std::vector<SweepPoint> out;
    for (double v : values) {
        SweepPoint pt;
        pt.value = v;
        try {
            json patched = base_config;
            patched[ptr] = v;
            pt.report = run_suite(run_config_from_json(patched));
        } catch (const Error& e) {
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

std::string sweep_csv(const std::string& axis, const std::vector<SweepPoint>& points) {
    std::ostringstream csv;
    csv << "axis,value,condition,set,estimate,converged,ratio_to_reference,verdict,error\n";
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    };
    for (const auto& pt : points) {
        if (!pt.report) {
            csv << axis << "," << num(pt.value) << ",,,,,,," << '"' << pt.error << '"' << "\n";
            continue;
        }
        for (const auto& o : pt.report->outcomes) {
            csv << axis << "," << num(pt.value) << "," << o.id << "," << o.set_index << ",";
            if (o.evaluated) {
                csv << (o.estimate.value.is_infinite() ? "inf"
                                                       : num(o.estimate.value.as_double()))
                    << "," << (o.estimate.converged ? "true" : "false") << ",";
                if (o.ratio_valid) csv << num(o.ratio_to_reference);
                csv << "," << to_string(pt.report->verdict) << ",";
            } else {
                csv << ",,," << to_string(pt.report->verdict) << ",\"" << o.skipped_reason << '"';
            }
            csv << "\n";
        }
    }
    return csv.str();
}

std::vector<std::pair<double, double>> condition_curve(const RunConfig& cfg, const std::string& id,
                                                       int set_index, int n) {
    if (set_index < 0 || static_cast<std::size_t>(set_index) >= cfg.param_sets.size())
        throw ConfigInvalid("plot-data parameter set index out of range");
    SuiteContexts ctxs = build_contexts(cfg);
    Interval dom = ctxs.lin ? ctxs.lin->domain
                            : (ctxs.bil ? ctxs.bil->domain : cfg.u->interval());
    std::vector<std::pair<double, double>> pts;
    const double L = cfg.sup.log_range;
    RunConfig one = cfg;
    for (int i = 0; i < n; ++i) {
        double y = -L + 2.0 * L * i / std::max(1, n - 1);
        double x = sup_transform_point(dom, y);
        double value = std::nan("");
        try {
            if (ctxs.lin) {
                LinearParams p = linear_params(cfg.param_sets[static_cast<std::size_t>(set_index)]);
                LinearConditionId lid = linear_id_from_string(id);
                if (lid == LinearConditionId::AM) {
                    p.alpha = 1.0 / cfg.q;
                    p.beta = 1.0 - 1.0 / cfg.p;
                    lid = LinearConditionId::B1;
                }
                std::optional<AuxFunctionSpec> aux;
                if (lid == LinearConditionId::B12 || lid == LinearConditionId::B14)
                    aux = AuxFunctionSpec{AuxFunctionSpec::Base::G, 1.0, nullptr};
                if (lid == LinearConditionId::B13 || lid == LinearConditionId::B15)
                    aux = AuxFunctionSpec{AuxFunctionSpec::Base::F, 1.0, nullptr};
                value = eval_linear_pointwise(lid, x, p, *ctxs.lin, aux).value.as_double();
            } else if (ctxs.bil) {
                BilinearParams p = cfg.param_sets[static_cast<std::size_t>(set_index)];
                BilinearConditionId bid;
                if (id == "D") {
                    bid = BilinearConditionId::Bt1;
                    p = hardy_substituted(cfg, p);
                } else if (id.size() > 2 && id[0] == 'A' && id[1] == 't') {
                    bid = a_tilde_underlying(std::atoi(id.c_str() + 2));
                    p = hardy_substituted(cfg, p);
                } else {
                    bid = bilinear_id_from_string(id);
                }
                std::optional<AuxFunctionSpec> h1, h2;
                if (bilinear_uses_h1(bid))
                    h1 = AuxFunctionSpec{canonical_aux_base1(bid), 1.0, nullptr};
                if (bilinear_uses_h2(bid))
                    h2 = AuxFunctionSpec{canonical_aux_base2(bid), 1.0, nullptr};
                value = eval_bilinear_pointwise(bid, x, p, *ctxs.bil, h1, h2).value.as_double();
            } else {
                throw ConfigInvalid("plot data is available for condition-scale suites only");
            }
        } catch (const Error&) {
            value = std::nan("");
        }
        pts.emplace_back(x, value);
    }
    return pts;
}

// ---------------------------------------------------------------------------
// randomized suite configs

namespace {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

}  // namespace

std::vector<RunConfig> random_linear_suite_configs(int n, std::uint64_t seed) {
    Rng rng(seed);
    Interval iv(0.0, kInf);
    const double alpha = 0.5, beta = 0.5;
    std::vector<RunConfig> out;
    for (int i = 0; i < n; ++i) {
        RunConfig cfg;
        cfg.kind = SuiteKind::Linear;
        cfg.seed = seed + static_cast<std::uint64_t>(i);
        BilinearParams lo_s, hi_s;
        lo_s.alpha = hi_s.alpha = alpha;
        lo_s.beta = hi_s.beta = beta;
        lo_s.s = 0.25;  // s < alpha, beta: B8/B10 admissible
        hi_s.s = 0.8;   // s > alpha, beta: B9/B11/B12/B13 admissible
        cfg.param_sets = {lo_s, hi_s};
        int kind = i % 3;
        if (kind == 0) {
            // balanced power pair: B1 constant in x
            double lg = rng.uniform(-0.5, 2.0);
            double lf = -1.0 - (lg + 1.0) * beta / alpha;
            cfg.f = WeightSpec::power(lf, iv, rng.uniform(0.5, 2.0));
            cfg.g = WeightSpec::power(lg, iv, rng.uniform(0.5, 2.0));
        } else if (kind == 1) {
            // exponential decay against a power: peaked B1
            cfg.f = WeightSpec::exponential(rng.uniform(-2.0, -0.5), iv, rng.uniform(0.5, 2.0));
            cfg.g = WeightSpec::power(rng.uniform(-0.5, 2.0), iv, rng.uniform(0.5, 2.0));
        } else {
            // strictly sub-balanced exponential pair
            double kf = rng.uniform(-2.0, -0.5);
            double kg = -kf * alpha / beta * rng.uniform(0.2, 0.8);
            cfg.f = WeightSpec::exponential(kf, iv, rng.uniform(0.5, 2.0));
            cfg.g = WeightSpec::exponential(kg, iv, rng.uniform(0.5, 2.0));
        }
        out.push_back(std::move(cfg));
    }
    return out;
}

std::vector<RunConfig> random_bilinear_suite_configs(int n, std::uint64_t seed) {
    Rng rng(seed);
    Interval iv(0.0, kInf);
    std::vector<RunConfig> out;
    for (int i = 0; i < n; ++i) {
        RunConfig cfg;
        cfg.kind = SuiteKind::HardyBilinear;
        cfg.seed = seed + static_cast<std::uint64_t>(i);
        cfg.p1 = cfg.p2 = cfg.q = 2.0;  // alpha = beta = gamma = 1/2
        BilinearParams lo_s, hi_s;
        lo_s.s = 0.25;
        lo_s.s1 = 0.25;
        lo_s.s2 = 0.3;
        hi_s.s = 0.8;
        hi_s.s1 = 0.8;
        hi_s.s2 = 0.9;
        cfg.param_sets = {lo_s, hi_s};
        // v_i chosen so the dual weights are powers with exponents mu in a
        // band keeping every inner integral convergent
        double mu1 = rng.uniform(-0.2, 0.4);
        double mu2 = mu1 + rng.uniform(-0.3, 0.3);
        double conj1 = 1.0 - conjugate(cfg.p1).p_conj;  // = -1 at p = 2
        double conj2 = 1.0 - conjugate(cfg.p2).p_conj;
        cfg.v1 = WeightSpec::power(mu1 / conj1, iv, rng.uniform(0.7, 1.4));
        cfg.v2 = WeightSpec::power(mu2 / conj2, iv, rng.uniform(0.7, 1.4));
        if (i % 3 != 2) {
            // balanced power u: D constant in x
            double lu = -1.0 - ((mu1 + 1.0) * 0.5 + (mu2 + 1.0) * 0.5) / 0.5;
            cfg.u = WeightSpec::power(lu, iv, rng.uniform(0.5, 2.0));
        } else {
            cfg.u = WeightSpec::exponential(rng.uniform(-2.0, -0.5), iv, rng.uniform(0.5, 2.0));
        }
        out.push_back(std::move(cfg));
    }
    return out;
}

}  // namespace hardykit
