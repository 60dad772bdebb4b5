#include "hardykit/estimator.hpp"

#include <cmath>

namespace hardykit {

std::string to_string(InequalityKind k) {
    switch (k) {
        case InequalityKind::H1:
            return "H1";
        case InequalityKind::H2:
            return "H2";
        case InequalityKind::GM:
            return "GM";
        case InequalityKind::BGM:
            return "BGM";
    }
    return "?";
}

InequalityKind inequality_from_string(const std::string& name) {
    if (name == "H1") return InequalityKind::H1;
    if (name == "H2") return InequalityKind::H2;
    if (name == "GM") return InequalityKind::GM;
    if (name == "BGM") return InequalityKind::BGM;
    throw ConfigInvalid("unknown inequality '" + name + "' (expected H1, H2, GM or BGM)");
}

std::string to_string(TestFunctionKind k) {
    switch (k) {
        case TestFunctionKind::TruncatedDual:
            return "truncated-dual";
        case TestFunctionKind::PowerCut:
            return "power-cut";
        case TestFunctionKind::Plateau:
            return "plateau";
        case TestFunctionKind::Custom:
            return "custom";
    }
    return "?";
}

TestFunctionKind family_from_string(const std::string& name) {
    if (name == "truncated-dual") return TestFunctionKind::TruncatedDual;
    if (name == "power-cut") return TestFunctionKind::PowerCut;
    if (name == "plateau") return TestFunctionKind::Plateau;
    if (name == "custom") return TestFunctionKind::Custom;
    throw ConfigInvalid("unknown test-function family '" + name + "'");
}

namespace {

bool bilinear_kind(InequalityKind k) {
    return k == InequalityKind::H2 || k == InequalityKind::BGM;
}

double finite_or_throw(const QuadResult& r, const char* what) {
    if (r.value.is_infinite()) throw DivergentNorm(std::string(what) + " is infinite");
    return r.value.as_double();
}

// ||f||_{p,v} = (int f^p v)^{1/p}
double weighted_norm(const WeightSpec& f, const WeightSpec& v, double p,
                     const QuadratureSettings& quad) {
    WeightSpec fp = f.pow(p);
    WeightSpec integrand = WeightSpec::product({fp, v}, f.interval());
    double val = finite_or_throw(integrate(integrand, f.interval().a, f.interval().b, quad),
                                 "test-function norm");
    return std::pow(val, 1.0 / p);
}

// (int P_f^q [P_g^q] u)^{1/q} with P the lower primitive
double primitive_norm(const std::vector<WeightSpec>& fs, const WeightSpec& u, double q,
                      const QuadratureSettings& quad) {
    std::vector<CumulativePtr> prims;
    for (const auto& f : fs)
        prims.push_back(weight_tail_allow_divergent(TailKind::LowerTail, f, quad));
    Integrand g;
    g.fn = [prims, u, q](double x) {
        double acc = u.value_unchecked(x);
        if (acc == 0.0) return 0.0;
        for (const auto& P : prims) {
            ExtReal v = P->eval(x);
            if (v.is_infinite()) return kInf;
            acc *= std::pow(v.as_double(), q);
        }
        return acc;
    };
    g.singular_hints = u.unbounded_near();
    double val = finite_or_throw(integrate_fn(g, u.interval().a, u.interval().b, quad),
                                 "left-hand norm");
    return std::pow(val, 1.0 / q);
}

// (int (Tf)^q [(Tg)^q] u)^{1/q}, T extended by zero beyond each support end
double geomean_norm(const std::vector<std::pair<WeightSpec, double>>& fs_with_end,
                    const WeightSpec& u, double q, const QuadratureSettings& quad) {
    double hi = kInf;
    std::vector<WeightSpec> closed{u};
    bool structured = true;
    for (const auto& [f, end] : fs_with_end) {
        hi = std::min(hi, end);
        auto tf = reciprocal_geomean_power(f, -q);  // (T f)^q
        if (!tf) {
            structured = false;
            break;
        }
        closed.push_back(std::move(*tf));
    }
    hi = std::min(hi, u.interval().b);
    if (structured) {
        Interval host(u.interval().a, hi);
        std::vector<WeightSpec> parts;
        for (auto& w : closed) parts.push_back(w.narrowed(host));
        WeightSpec w = WeightSpec::product(std::move(parts), host);
        double val = finite_or_throw(integrate(w, host.a, host.b, quad), "geometric-mean norm");
        return std::pow(val, 1.0 / q);
    }
    auto ctxs = std::make_shared<std::vector<std::shared_ptr<GeoMeanContext>>>();
    for (const auto& [f, end] : fs_with_end) {
        (void)end;
        ctxs->push_back(std::make_shared<GeoMeanContext>(f, quad));
    }
    Integrand g;
    g.fn = [ctxs, u, q](double x) {
        double acc = u.value_unchecked(x);
        for (const auto& c : *ctxs) acc *= std::exp(q * c->log_integral(x) / x);
        return acc;
    };
    double val = finite_or_throw(integrate_fn(g, u.interval().a, hi, quad), "geometric-mean norm");
    return std::pow(val, 1.0 / q);
}

}  // namespace

QuotientSample quotient_linear(const WeightSpec& f, const WeightSpec& u, const WeightSpec& v,
                               double p, double q, const QuadratureSettings& quad) {
    QuotientSample s;
    s.rhs = weighted_norm(f, v, p, quad);
    if (s.rhs == 0.0) throw ZeroTestFunction("test function has zero weighted norm");
    s.lhs = primitive_norm({f}, u, q, quad);
    s.quotient = s.lhs / s.rhs;
    return s;
}

QuotientSample quotient_bilinear(const WeightSpec& f, const WeightSpec& g, const WeightSpec& u,
                                 const WeightSpec& v1, const WeightSpec& v2, double p1, double p2,
                                 double q, const QuadratureSettings& quad) {
    QuotientSample s;
    double nf = weighted_norm(f, v1, p1, quad);
    double ng = weighted_norm(g, v2, p2, quad);
    if (nf == 0.0 || ng == 0.0) throw ZeroTestFunction("test function has zero weighted norm");
    s.rhs = nf * ng;
    s.lhs = primitive_norm({f, g}, u, q, quad);
    s.quotient = s.lhs / s.rhs;
    return s;
}

QuotientSample quotient_geomean(const WeightSpec& f, const std::optional<WeightSpec>& g,
                                const EstimatorProblem& prob) {
    QuotientSample s;
    bool bi = g.has_value();
    if (bi != (prob.kind == InequalityKind::BGM))
        throw ConfigInvalid("geometric-mean quotient form does not match the problem kind");
    double nf = weighted_norm(f, prob.v[0], prob.p[0], prob.quad);
    double ng = bi ? weighted_norm(*g, prob.v[1], prob.p[1], prob.quad) : 1.0;
    if (nf == 0.0 || ng == 0.0) throw ZeroTestFunction("test function has zero weighted norm");
    s.rhs = nf * ng;
    std::vector<std::pair<WeightSpec, double>> fs{{f, f.interval().b}};
    if (bi) fs.emplace_back(*g, g->interval().b);
    s.lhs = geomean_norm(fs, prob.u, prob.q, prob.quad);
    s.quotient = s.lhs / s.rhs;
    return s;
}

std::vector<std::pair<WeightSpec, std::string>> build_family(const TestFunctionFamily& family,
                                                             const EstimatorProblem& prob,
                                                             int slot) {
    const Interval dom = prob.u.interval();
    const WeightSpec& v = prob.v[static_cast<std::size_t>(slot)];
    double p = prob.p[static_cast<std::size_t>(slot)];

    // log-spaced truncation points in transformed coordinates
    auto trunc_points = [&](int n) {
        std::vector<double> ts;
        double L = std::log(1e4);
        for (int i = 0; i < n; ++i) {
            double y = -L + 2.0 * L * static_cast<double>(i) / (n - 1);
            double t;
            if (dom.bounded())
                t = dom.a + (dom.b - dom.a) / (1.0 + std::exp(-y));
            else if (!dom.lower_infinite())
                t = dom.a + std::exp(y);
            else
                t = dom.b - std::exp(-y);
            if (t > dom.a && t < dom.b) ts.push_back(t);
        }
        return ts;
    };

    // geometric-mean forms need the support end to be the interval end (T is
    // extended by zero beyond it); Hardy forms keep the full domain
    bool gm = prob.kind == InequalityKind::GM || prob.kind == InequalityKind::BGM;
    auto truncate = [&](const WeightSpec& w, double t) {
        Interval cut(dom.a, t);
        return gm ? w.narrowed(cut) : w.restricted(cut);
    };

    std::vector<std::pair<WeightSpec, std::string>> out;
    switch (family.kind) {
        case TestFunctionKind::TruncatedDual: {
            WeightSpec dual = v.pow(1.0 - conjugate(p).p_conj);
            for (double t : trunc_points(family.grid))
                out.emplace_back(truncate(dual, t), "truncated-dual t=" + std::to_string(t));
            break;
        }
        case TestFunctionKind::PowerCut: {
            if (dom.a != 0.0)
                throw ConfigInvalid("power-cut families need an interval starting at 0");
            double theta_c = 0.0;
            if (auto pf = v.power_form()) theta_c = pf->expo * (1.0 - conjugate(p).p_conj);
            for (int k = 0; k < family.theta_grid; ++k) {
                double theta = family.theta_grid == 1
                                   ? theta_c
                                   : theta_c - family.theta_span +
                                         2.0 * family.theta_span * k / (family.theta_grid - 1);
                for (double t : trunc_points(9))
                    out.emplace_back(truncate(WeightSpec::power(theta, dom), t),
                                     "power-cut theta=" + std::to_string(theta) +
                                         " t=" + std::to_string(t));
            }
            break;
        }
        case TestFunctionKind::Plateau: {
            auto ts = trunc_points(9);
            for (std::size_t i = 0; i < ts.size(); ++i)
                for (std::size_t j = i + 1; j < ts.size(); ++j)
                    out.emplace_back(
                        WeightSpec::indicator(Interval(ts[i], ts[j]), dom),
                        "plateau (" + std::to_string(ts[i]) + "," + std::to_string(ts[j]) + ")");
            break;
        }
        case TestFunctionKind::Custom: {
            int k = 0;
            for (const auto& w : family.custom)
                out.emplace_back(w, "custom #" + std::to_string(k++));
            break;
        }
    }
    return out;
}

SupEstimate condition_for(const EstimatorProblem& prob) {
    switch (prob.kind) {
        case InequalityKind::H1:
            return muckenhoupt_AM(prob.u, prob.v[0], prob.p[0], prob.q, prob.quad);
        case InequalityKind::H2:
            return bilinear_D(prob.u, prob.v[0], prob.v[1], prob.p[0], prob.p[1], prob.q,
                              prob.quad);
        case InequalityKind::GM:
            return condition_scriptB(prob.u, prob.v[0], prob.p[0], prob.q, prob.quad);
        case InequalityKind::BGM:
            return condition_scriptB_bilinear(prob.u, prob.v[0], prob.v[1], prob.p[0], prob.p[1],
                                              prob.q, prob.quad);
    }
    throw ConfigInvalid("unreachable inequality kind");
}

ConstantBracket maximize_quotient(const TestFunctionFamily& family, const EstimatorProblem& prob) {
    bool bi = bilinear_kind(prob.kind);
    if (prob.v.size() != (bi ? 2u : 1u) || prob.p.size() != prob.v.size())
        throw ConfigInvalid("estimator problem needs one weight/exponent per norm factor");

    auto members_f = build_family(family, prob, 0);
    auto members_g =
        bi ? build_family(family, prob, 1) : std::vector<std::pair<WeightSpec, std::string>>{};
    if (members_f.empty() || (bi && members_g.empty()))
        throw AllSamplesDegenerate("empty test-function family");

    ConstantBracket out;
    auto consider = [&](const QuotientSample& s) {
        ++out.evaluated;
        if (s.quotient > out.best.quotient) out.best = s;
    };
    auto guarded = [&](auto&& fn) {
        try {
            consider(fn());
        } catch (const ZeroTestFunction&) {
            ++out.skipped;
        } catch (const DivergentNorm&) {
            ++out.skipped;
        } catch (const LogNotIntegrable&) {
            ++out.skipped;
        } catch (const NonpositiveBase&) {
            ++out.skipped;
        }
    };

    if (!bi) {
        for (const auto& [f, label] : members_f) {
            guarded([&] {
                QuotientSample s = prob.kind == InequalityKind::H1
                                       ? quotient_linear(f, prob.u, prob.v[0], prob.p[0], prob.q,
                                                         prob.quad)
                                       : quotient_geomean(f, std::nullopt, prob);
                s.member = label;
                return s;
            });
        }
    } else {
        for (const auto& [f, lf] : members_f) {
            for (const auto& [g, lg] : members_g) {
                guarded([&] {
                    QuotientSample s =
                        prob.kind == InequalityKind::H2
                            ? quotient_bilinear(f, g, prob.u, prob.v[0], prob.v[1], prob.p[0],
                                                prob.p[1], prob.q, prob.quad)
                            : quotient_geomean(f, g, prob);
                    s.member = lf + " x " + lg;
                    return s;
                });
            }
        }
    }
    if (out.evaluated == 0)
        throw AllSamplesDegenerate("every family member was degenerate for this configuration");

    out.lower = out.best.quotient;
    SupEstimate cond = condition_for(prob);
    out.condition_infinite = cond.value.is_infinite();
    out.condition_value = cond.value.as_double();
    out.ratio = out.condition_infinite ? 0.0 : out.lower / out.condition_value;
    return out;
}

}  // namespace hardykit
