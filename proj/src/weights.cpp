#include "hardykit/weights.hpp"

#include <algorithm>
#include <cmath>

namespace hardykit {

namespace {

bool nonneg_finite(double v) { return std::isfinite(v) && v >= 0.0; }

// Pointwise product of structured atoms: scale * t^lambda * e^{kappa t} on a
// support box, zero outside. Constant/Power/Exponential/Indicator (and
// products thereof) flatten into this; everything else does not.
struct Atom {
    double scale = 1.0;
    double lambda = 0.0;
    double kappa = 0.0;
    double s_lo = -kInf;
    double s_hi = kInf;

    bool empty_support() const { return !(s_lo < s_hi); }
};

std::optional<Atom> flatten(const WeightSpec& w) {
    Atom a;
    a.s_lo = w.interval().a;
    a.s_hi = w.interval().b;
    switch (w.family()) {
        case WeightFamily::Constant:
            a.scale = w.param_scale();
            return a;
        case WeightFamily::Power:
            a.scale = w.param_scale();
            a.lambda = w.param_lambda();
            return a;
        case WeightFamily::Exponential:
            a.scale = w.param_scale();
            a.kappa = w.param_kappa();
            return a;
        case WeightFamily::LogPower:
            if (w.param_mu() == 0.0) {
                a.scale = w.param_scale();
                a.lambda = w.param_lambda();
                return a;
            }
            return std::nullopt;
        case WeightFamily::Indicator:
            a.s_lo = std::max(a.s_lo, w.support().a);
            a.s_hi = std::min(a.s_hi, w.support().b);
            return a;
        case WeightFamily::Product: {
            for (const auto& f : w.factors()) {
                auto fa = flatten(f);
                if (!fa) return std::nullopt;
                a.scale *= fa->scale;
                a.lambda += fa->lambda;
                a.kappa += fa->kappa;
                a.s_lo = std::max(a.s_lo, fa->s_lo);
                a.s_hi = std::min(a.s_hi, fa->s_hi);
            }
            return a;
        }
        default:
            return std::nullopt;
    }
}

// integral of scale * t^lambda over (lo,hi), 0 <= lo < hi <= inf
ExtReal power_integral(double scale, double lambda, double lo, double hi) {
    if (scale == 0.0) return ExtReal::finite(0.0);
    if (lambda == -1.0) {
        if (lo == 0.0 || hi == kInf) return ExtReal::infinity();
        return ExtReal::finite(scale * (std::log(hi) - std::log(lo)));
    }
    double e = lambda + 1.0;
    double upper, lower;
    if (hi == kInf) {
        if (e > 0.0) return ExtReal::infinity();
        upper = 0.0;
    } else {
        upper = std::pow(hi, e);
    }
    if (lo == 0.0) {
        if (e < 0.0) return ExtReal::infinity();
        lower = 0.0;
    } else {
        lower = std::pow(lo, e);
    }
    double v = scale * (upper - lower) / e;
    if (!std::isfinite(v)) return ExtReal::overflow();
    return ExtReal::finite(v);
}

// integral of scale * e^{kappa t} over (lo,hi)
ExtReal exp_integral(double scale, double kappa, double lo, double hi) {
    if (scale == 0.0) return ExtReal::finite(0.0);
    if (kappa == 0.0) {
        if (lo == -kInf || hi == kInf) return ExtReal::infinity();
        return ExtReal::finite(scale * (hi - lo));
    }
    double upper, lower;
    if (hi == kInf) {
        if (kappa > 0.0) return ExtReal::infinity();
        upper = 0.0;
    } else {
        upper = std::exp(kappa * hi);
    }
    if (lo == -kInf) {
        if (kappa < 0.0) return ExtReal::infinity();
        lower = 0.0;
    } else {
        lower = std::exp(kappa * lo);
    }
    double v = scale * (upper - lower) / kappa;
    if (!std::isfinite(v)) return ExtReal::overflow();
    return ExtReal::finite(v);
}

std::optional<ExtReal> atom_integral(const Atom& a, double lo, double hi) {
    double l = std::max(lo, a.s_lo);
    double h = std::min(hi, a.s_hi);
    if (!(l < h)) return ExtReal::finite(0.0);
    if (a.lambda != 0.0 && a.kappa != 0.0) return std::nullopt;
    if (a.kappa != 0.0) return exp_integral(a.scale, a.kappa, l, h);
    return power_integral(a.scale, a.lambda, l, h);
}

// t ln t - t, continuous extension 0 at t = 0
double xlogx_antideriv(double t) {
    if (t == 0.0) return 0.0;
    return t * std::log(t) - t;
}

}  // namespace

// ---------------------------------------------------------------------------
// factories

WeightSpec WeightSpec::constant(double c, Interval iv) {
    if (!nonneg_finite(c)) throw ConfigInvalid("constant weight must be finite and >= 0");
    WeightSpec w(WeightFamily::Constant, iv);
    w.scale_ = c;
    return w;
}

WeightSpec WeightSpec::power(double lambda, Interval iv, double scale) {
    if (!std::isfinite(lambda)) throw ConfigInvalid("power exponent must be finite");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigInvalid("power scale must be > 0");
    if (iv.a < 0.0) throw ConfigInvalid("power weights are defined on intervals within [0, inf)");
    WeightSpec w(WeightFamily::Power, iv);
    w.lambda_ = lambda;
    w.scale_ = scale;
    return w;
}

WeightSpec WeightSpec::exponential(double kappa, Interval iv, double scale) {
    if (!std::isfinite(kappa)) throw ConfigInvalid("exponential rate must be finite");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigInvalid("exponential scale must be > 0");
    WeightSpec w(WeightFamily::Exponential, iv);
    w.kappa_ = kappa;
    w.scale_ = scale;
    return w;
}

WeightSpec WeightSpec::log_power(double lambda, double mu, Interval iv, double scale) {
    if (!std::isfinite(lambda) || !std::isfinite(mu))
        throw ConfigInvalid("log-power exponents must be finite");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigInvalid("log-power scale must be > 0");
    if (iv.a < 0.0) throw ConfigInvalid("log-power weights are defined on intervals within [0, inf)");
    WeightSpec w(WeightFamily::LogPower, iv);
    w.lambda_ = lambda;
    w.mu_ = mu;
    w.scale_ = scale;
    // |ln t|^mu blows up at t = 1 for negative mu
    if (mu < 0.0 && iv.contains(1.0)) w.singular_points_.push_back(1.0);
    return w;
}

WeightSpec WeightSpec::indicator(Interval support, Interval iv) {
    double lo = std::max(support.a, iv.a);
    double hi = std::min(support.b, iv.b);
    if (!(lo < hi)) throw ConfigInvalid("indicator support does not meet the interval");
    WeightSpec w(WeightFamily::Indicator, iv);
    w.support_ = Interval(lo, hi);
    return w;
}

WeightSpec WeightSpec::piecewise(std::vector<std::pair<Interval, WeightSpec>> pieces, Interval iv) {
    if (pieces.empty()) throw ConfigInvalid("piecewise weight needs at least one piece");
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& l, const auto& r) { return l.first.a < r.first.a; });
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& [piv, pw] = pieces[i];
        if (!iv.covers(piv)) throw ConfigInvalid("piecewise piece lies outside the hosting interval");
        if (!pw.interval().covers(piv))
            throw ConfigInvalid("piece weight does not cover its sub-interval");
        if (i + 1 < pieces.size() && pieces[i + 1].first.a < piv.b)
            throw ConfigInvalid("piecewise pieces overlap");
    }
    WeightSpec w(WeightFamily::Piecewise, iv);
    for (const auto& [piv, pw] : pieces)
        for (double s : pw.singular_points())
            if (piv.contains(s)) w.singular_points_.push_back(s);
    w.pieces_ = std::move(pieces);
    return w;
}

WeightSpec WeightSpec::product(std::vector<WeightSpec> factors, Interval iv) {
    if (factors.empty()) throw ConfigInvalid("product weight needs at least one factor");
    for (const auto& f : factors)
        if (!f.interval().covers(iv))
            throw ConfigInvalid("product factor does not cover the hosting interval");
    WeightSpec w(WeightFamily::Product, iv);
    for (const auto& f : factors)
        for (double s : f.singular_points())
            if (iv.contains(s)) w.singular_points_.push_back(s);
    w.factors_ = std::move(factors);
    return w;
}

WeightSpec WeightSpec::tabulated(std::vector<double> xs, std::vector<double> values) {
    if (xs.size() < 2 || xs.size() != values.size())
        throw ConfigInvalid("tabulated weight needs >= 2 matching samples");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !nonneg_finite(values[i]))
            throw ConfigInvalid("tabulated samples must be finite with values >= 0");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw ConfigInvalid("tabulated sample points must be strictly increasing");
    }
    WeightSpec w(WeightFamily::Tabulated, Interval(xs.front(), xs.back()));
    w.log_interp_ = std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
    w.xs_ = std::move(xs);
    w.vs_ = std::move(values);
    return w;
}

// ---------------------------------------------------------------------------
// evaluation

double WeightSpec::value_unchecked(double x) const {
    switch (family_) {
        case WeightFamily::Constant:
            return scale_;
        case WeightFamily::Power:
            return scale_ * std::pow(x, lambda_);
        case WeightFamily::Exponential:
            return scale_ * std::exp(kappa_ * x);
        case WeightFamily::LogPower: {
            double lt = std::log(x);
            return scale_ * std::pow(x, lambda_) * std::pow(std::fabs(lt), mu_);
        }
        case WeightFamily::Indicator:
            return support_.contains(x) ? 1.0 : 0.0;
        case WeightFamily::Piecewise: {
            for (const auto& [piv, pw] : pieces_)
                if (piv.contains(x)) return pw.value_unchecked(x);
            return 0.0;
        }
        case WeightFamily::Product: {
            double v = 1.0;
            for (const auto& f : factors_) {
                v *= f.value_unchecked(x);
                if (v == 0.0) return 0.0;
            }
            return v;
        }
        case WeightFamily::Tabulated: {
            auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            if (it == xs_.begin() || it == xs_.end()) return 0.0;
            std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
            double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
            if (log_interp_)
                return std::exp((1.0 - t) * std::log(vs_[i]) + t * std::log(vs_[i + 1]));
            return (1.0 - t) * vs_[i] + t * vs_[i + 1];
        }
    }
    return 0.0;
}

double WeightSpec::operator()(double x) const {
    if (!interval_.contains(x))
        throw PointOutsideDomain("weight evaluated at x=" + std::to_string(x) +
                                 " outside its open interval");
    for (double s : singular_points_)
        if (x == s) throw SingularPoint("weight has a declared singularity at x=" + std::to_string(s));
    return value_unchecked(x);
}

std::vector<double> WeightSpec::unbounded_near() const {
    std::vector<double> pts;
    switch (family_) {
        case WeightFamily::Power:
            if (lambda_ < 0.0 && interval_.a == 0.0) pts.push_back(0.0);
            break;
        case WeightFamily::LogPower:
            if (interval_.a == 0.0 && (lambda_ < 0.0 || mu_ > 0.0)) pts.push_back(0.0);
            if (mu_ < 0.0 && interval_.contains(1.0)) pts.push_back(1.0);
            break;
        case WeightFamily::Piecewise:
            for (const auto& [piv, pw] : pieces_)
                for (double p : pw.unbounded_near())
                    if (p >= piv.a && p <= piv.b) pts.push_back(p);
            break;
        case WeightFamily::Product:
            for (const auto& f : factors_)
                for (double p : f.unbounded_near()) pts.push_back(p);
            break;
        default:
            break;
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// ---------------------------------------------------------------------------
// transforms

WeightSpec WeightSpec::pow(double r) const {
    if (!std::isfinite(r)) throw ConfigInvalid("power transform exponent must be finite");
    switch (family_) {
        case WeightFamily::Constant: {
            if (scale_ == 0.0) {
                if (r > 0.0) return constant(0.0, interval_);
                throw NonpositiveBase("zero weight under nonpositive power transform");
            }
            return constant(std::pow(scale_, r), interval_);
        }
        case WeightFamily::Power:
            return power(lambda_ * r, interval_, std::pow(scale_, r));
        case WeightFamily::Exponential:
            return exponential(kappa_ * r, interval_, std::pow(scale_, r));
        case WeightFamily::LogPower:
            return log_power(lambda_ * r, mu_ * r, interval_, std::pow(scale_, r));
        case WeightFamily::Indicator: {
            if (support_.covers(interval_)) return *this;  // no vanishing set
            if (r <= 0.0)
                throw NonpositiveBase(
                    "indicator weight vanishes on positive measure; negative power undefined");
            return *this;
        }
        case WeightFamily::Piecewise: {
            if (r <= 0.0) {
                // implicit zero gaps make negative powers undefined
                double covered = pieces_.front().first.a;
                if (covered > interval_.a)
                    throw NonpositiveBase("piecewise weight vanishes below its first piece");
                for (const auto& [piv, pw] : pieces_) {
                    (void)pw;
                    if (piv.a > covered)
                        throw NonpositiveBase("piecewise weight vanishes on a gap between pieces");
                    covered = std::max(covered, piv.b);
                }
                if (covered < interval_.b)
                    throw NonpositiveBase("piecewise weight vanishes above its last piece");
            }
            std::vector<std::pair<Interval, WeightSpec>> out;
            out.reserve(pieces_.size());
            for (const auto& [piv, pw] : pieces_) out.emplace_back(piv, pw.pow(r));
            return piecewise(std::move(out), interval_);
        }
        case WeightFamily::Product: {
            std::vector<WeightSpec> out;
            out.reserve(factors_.size());
            for (const auto& f : factors_) out.push_back(f.pow(r));
            return product(std::move(out), interval_);
        }
        case WeightFamily::Tabulated: {
            if (!log_interp_ && r <= 0.0)
                throw NonpositiveBase("tabulated weight with zero samples under nonpositive power");
            std::vector<double> vs(vs_.size());
            for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = std::pow(vs_[i], r);
            return tabulated(xs_, std::move(vs));
        }
    }
    throw ConfigInvalid("unreachable weight family");
}

WeightSpec WeightSpec::scaled(double c) const {
    if (!nonneg_finite(c)) throw ConfigInvalid("weight scale factor must be finite and >= 0");
    if (c == 0.0) return constant(0.0, interval_);
    switch (family_) {
        case WeightFamily::Constant:
            return constant(scale_ * c, interval_);
        case WeightFamily::Power:
            return power(lambda_, interval_, scale_ * c);
        case WeightFamily::Exponential:
            return exponential(kappa_, interval_, scale_ * c);
        case WeightFamily::LogPower:
            return log_power(lambda_, mu_, interval_, scale_ * c);
        case WeightFamily::Piecewise: {
            std::vector<std::pair<Interval, WeightSpec>> out;
            out.reserve(pieces_.size());
            for (const auto& [piv, pw] : pieces_) out.emplace_back(piv, pw.scaled(c));
            return piecewise(std::move(out), interval_);
        }
        case WeightFamily::Tabulated: {
            std::vector<double> vs(vs_.size());
            for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = vs_[i] * c;
            return tabulated(xs_, std::move(vs));
        }
        default: {
            std::vector<WeightSpec> fs;
            if (family_ == WeightFamily::Product)
                fs = factors_;
            else
                fs.push_back(*this);
            fs.push_back(constant(c, interval_));
            return product(std::move(fs), interval_);
        }
    }
}

WeightSpec WeightSpec::restricted(Interval sub) const {
    Interval clip = intersect(sub, interval_);
    switch (family_) {
        case WeightFamily::Indicator:
            return indicator(intersect(clip, support_), interval_);
        case WeightFamily::Piecewise: {
            std::vector<std::pair<Interval, WeightSpec>> out;
            for (const auto& [piv, pw] : pieces_) {
                double lo = std::max(piv.a, clip.a);
                double hi = std::min(piv.b, clip.b);
                if (lo < hi) out.emplace_back(Interval(lo, hi), pw);
            }
            if (out.empty()) return constant(0.0, interval_);
            return piecewise(std::move(out), interval_);
        }
        case WeightFamily::Product: {
            std::vector<WeightSpec> fs = factors_;
            fs.push_back(indicator(clip, interval_));
            return product(std::move(fs), interval_);
        }
        default: {
            std::vector<WeightSpec> fs{*this, indicator(clip, interval_)};
            return product(std::move(fs), interval_);
        }
    }
}

WeightSpec WeightSpec::narrowed(Interval sub) const {
    if (!interval_.covers(sub)) throw ConfigInvalid("narrowed interval must lie inside the weight's");
    switch (family_) {
        case WeightFamily::Constant:
            return constant(scale_, sub);
        case WeightFamily::Power:
            return power(lambda_, sub, scale_);
        case WeightFamily::Exponential:
            return exponential(kappa_, sub, scale_);
        case WeightFamily::LogPower:
            return log_power(lambda_, mu_, sub, scale_);
        case WeightFamily::Indicator:
            return indicator(support_, sub);
        case WeightFamily::Piecewise: {
            std::vector<std::pair<Interval, WeightSpec>> out;
            for (const auto& [piv, pw] : pieces_) {
                double lo = std::max(piv.a, sub.a);
                double hi = std::min(piv.b, sub.b);
                if (lo < hi) out.emplace_back(Interval(lo, hi), pw);
            }
            if (out.empty()) return constant(0.0, sub);
            return piecewise(std::move(out), sub);
        }
        case WeightFamily::Product: {
            std::vector<WeightSpec> fs;
            fs.reserve(factors_.size());
            for (const auto& f : factors_) fs.push_back(f.narrowed(sub));
            return product(std::move(fs), sub);
        }
        case WeightFamily::Tabulated: {
            std::vector<double> xs, vs;
            if (sub.a > xs_.front()) {
                xs.push_back(sub.a);
                vs.push_back(value_unchecked(sub.a));
            }
            for (std::size_t i = 0; i < xs_.size(); ++i)
                if (xs_[i] >= sub.a && xs_[i] <= sub.b) {
                    xs.push_back(xs_[i]);
                    vs.push_back(vs_[i]);
                }
            if (sub.b < xs_.back() && (xs.empty() || xs.back() < sub.b)) {
                xs.push_back(sub.b);
                vs.push_back(value_unchecked(sub.b));
            }
            return tabulated(std::move(xs), std::move(vs));
        }
    }
    throw ConfigInvalid("unreachable weight family");
}

// ---------------------------------------------------------------------------
// closed forms

std::optional<ExtReal> WeightSpec::closed_form_integral(double lo, double hi) const {
    if (!(lo < hi)) return ExtReal::finite(0.0);
    switch (family_) {
        case WeightFamily::Piecewise: {
            double total = 0.0;
            for (const auto& [piv, pw] : pieces_) {
                double l = std::max(lo, piv.a);
                double h = std::min(hi, piv.b);
                if (!(l < h)) continue;
                auto part = pw.closed_form_integral(l, h);
                if (!part) return std::nullopt;
                if (part->is_infinite()) return *part;
                total += part->as_double();
            }
            return ExtReal::finite(total);
        }
        case WeightFamily::Tabulated: {
            double l = std::max(lo, xs_.front());
            double h = std::min(hi, xs_.back());
            if (!(l < h)) return ExtReal::finite(0.0);
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
                double sl = std::max(l, xs_[i]);
                double sh = std::min(h, xs_[i + 1]);
                if (!(sl < sh)) continue;
                if (log_interp_) {
                    double k = (std::log(vs_[i + 1]) - std::log(vs_[i])) / (xs_[i + 1] - xs_[i]);
                    if (k == 0.0) {
                        total += vs_[i] * (sh - sl);
                    } else {
                        double base = vs_[i];
                        total += base *
                                 (std::exp(k * (sh - xs_[i])) - std::exp(k * (sl - xs_[i]))) / k;
                    }
                } else {
                    double m = (vs_[i + 1] - vs_[i]) / (xs_[i + 1] - xs_[i]);
                    double wl = vs_[i] + m * (sl - xs_[i]);
                    double wh = vs_[i] + m * (sh - xs_[i]);
                    total += 0.5 * (wl + wh) * (sh - sl);
                }
            }
            return ExtReal::finite(total);
        }
        default: {
            auto atom = flatten(*this);
            if (!atom) return std::nullopt;
            if (atom->empty_support() || atom->scale == 0.0) return ExtReal::finite(0.0);
            return atom_integral(*atom, lo, hi);
        }
    }
}

std::optional<double> WeightSpec::closed_form_log_integral(double lo, double hi) const {
    if (!(lo < hi)) return 0.0;
    if (std::isinf(lo) || std::isinf(hi)) return std::nullopt;
    switch (family_) {
        case WeightFamily::Piecewise: {
            double total = 0.0;
            double covered = lo;
            for (const auto& [piv, pw] : pieces_) {
                double l = std::max(lo, piv.a);
                double h = std::min(hi, piv.b);
                if (!(l < h)) continue;
                if (l > covered + 1e-300) return -kInf;  // zero gap of positive measure
                auto part = pw.closed_form_log_integral(l, h);
                if (!part) return std::nullopt;
                if (*part == -kInf) return -kInf;
                total += *part;
                covered = h;
            }
            if (covered < hi) return -kInf;
            return total;
        }
        case WeightFamily::Tabulated: {
            if (lo < xs_.front() || hi > xs_.back()) return -kInf;
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
                double sl = std::max(lo, xs_[i]);
                double sh = std::min(hi, xs_[i + 1]);
                if (!(sl < sh)) continue;
                double dx = xs_[i + 1] - xs_[i];
                if (log_interp_) {
                    // ln w is linear on the segment
                    double la = std::log(vs_[i]), lb = std::log(vs_[i + 1]);
                    double wl = la + (lb - la) * (sl - xs_[i]) / dx;
                    double wh = la + (lb - la) * (sh - xs_[i]) / dx;
                    total += 0.5 * (wl + wh) * (sh - sl);
                } else {
                    double m = (vs_[i + 1] - vs_[i]) / dx;
                    auto anti = [&](double x) {
                        double u = vs_[i] + m * (x - xs_[i]);
                        if (m == 0.0) return x * (u > 0.0 ? std::log(u) : -kInf);
                        return (xlogx_antideriv(u)) / m;
                    };
                    if (m == 0.0 && vs_[i] == 0.0) return -kInf;
                    total += anti(sh) - anti(sl);
                }
            }
            if (!std::isfinite(total)) return -kInf;
            return total;
        }
        default: {
            auto atom = flatten(*this);
            if (!atom) return std::nullopt;
            if (atom->scale == 0.0) return -kInf;
            double l = std::max(lo, atom->s_lo);
            double h = std::min(hi, atom->s_hi);
            if (!(l < h)) return -kInf;                       // entirely outside support
            if (l > lo + 1e-300 || h < hi - 1e-300) return -kInf;  // partial vanishing
            double total = (h - l) * std::log(atom->scale);
            if (atom->lambda != 0.0)
                total += atom->lambda * (xlogx_antideriv(h) - xlogx_antideriv(l));
            if (atom->kappa != 0.0) total += atom->kappa * 0.5 * (h * h - l * l);
            return total;
        }
    }
}

std::optional<PowerForm> WeightSpec::power_form() const {
    auto atom = flatten(*this);
    if (!atom) return std::nullopt;
    if (atom->kappa != 0.0) return std::nullopt;
    // the power law must hold on the whole interval, with no indicator clipping
    if (atom->s_lo > interval_.a || atom->s_hi < interval_.b) return std::nullopt;
    if (atom->lambda != 0.0 && interval_.a < 0.0) return std::nullopt;
    return PowerForm{atom->scale, atom->lambda};
}

// ---------------------------------------------------------------------------

ConjugateExponent conjugate(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw ExponentOutOfRange("conjugate exponent requires p in (1, inf), got p=" +
                                 std::to_string(p));
    return {p, p / (p - 1.0)};
}

}  // namespace hardykit
