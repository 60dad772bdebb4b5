#include "hardykit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace hardykit {

namespace {

// 15-point Kronrod / 7-point Gauss pair (positive abscissae).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                           0.4179591836734694};

struct Panel {
    double lo, hi;
    double value;
    double err;
    int depth;
};

// Evaluates f, nudging off non-finite spots so isolated singular nodes do not
// poison a panel.
double safe_eval(const std::function<double(double)>& f, double x, double width) {
    double v = f(x);
    if (std::isfinite(v)) return v;
    double h = std::max(1e-12 * width, 1e-300);
    v = f(x + h);
    if (std::isfinite(v)) return v;
    v = f(x - h);
    if (std::isfinite(v)) return v;
    return 1e300;  // force further subdivision
}

Panel gk15(const std::function<double(double)>& f, double lo, double hi, int depth) {
    const double c = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    double fc = safe_eval(f, c, hw);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);
    double flo_[7], fhi_[7];
    for (int i = 0; i < 7; ++i) {
        double dx = hw * kXgk[i];
        double f1 = safe_eval(f, c - dx, hw);
        double f2 = safe_eval(f, c + dx, hw);
        flo_[i] = f1;
        fhi_[i] = f2;
        resk += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(flo_[i] - mean) + std::fabs(fhi_[i] - mean));
    resk *= hw;
    resg *= hw;
    resabs *= hw;
    resasc *= hw;
    double err = std::fabs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return Panel{lo, hi, resk, err, depth};
}

struct PanelCmp {
    bool operator()(const Panel& a, const Panel& b) const { return a.err < b.err; }
};

struct Accum {
    double value = 0.0;
    double err = 0.0;
    int subdivisions = 0;
    bool divergent = false;
};

// Adaptive bisection over a finite interval with a well-behaved (already
// singularity-peeled) integrand. Ranges spanning many orders of magnitude are
// pre-split geometrically so narrow support near the lower end cannot slip
// between the nodes of one huge panel.
void adaptive_core(const std::function<double(double)>& f, double lo, double hi,
                   const QuadratureSettings& s, double tol_abs, Accum& acc) {
    std::priority_queue<Panel, std::vector<Panel>, PanelCmp> q;
    double total = 0.0;
    double toterr = 0.0;
    auto push = [&](double a, double b) {
        Panel p = gk15(f, a, b, 0);
        total += p.value;
        toterr += p.err;
        acc.subdivisions += 1;
        q.push(std::move(p));
    };
    double width = hi - lo;
    if (lo >= 0.0 && width > 256.0 * std::max(lo, 1.0)) {
        double start = std::max(lo, width * 1e-15);
        if (start > lo) push(lo, start);
        double cur = start;
        while (cur < hi) {
            double next = std::min(cur * 4.0, hi);
            if (next > cur) push(cur, next);
            cur = next;
        }
    } else {
        push(lo, hi);
    }
    while (toterr > std::max(tol_abs, s.rel_tol * std::fabs(total))) {
        if (acc.subdivisions >= s.max_subdivisions)
            throw ToleranceNotReached("adaptive quadrature exceeded max_subdivisions",
                                      acc.value + total, acc.err + toterr);
        Panel p = q.top();
        q.pop();
        if (p.depth > 48 || p.hi - p.lo < 1e-15 * (hi - lo)) {
            // panel cannot be meaningfully refined; accept its estimate
            toterr -= p.err;
            continue;
        }
        double mid = 0.5 * (p.lo + p.hi);
        Panel l = gk15(f, p.lo, mid, p.depth + 1);
        Panel r = gk15(f, mid, p.hi, p.depth + 1);
        acc.subdivisions += 2;
        total += l.value + r.value - p.value;
        toterr += l.err + r.err - p.err;
        q.push(l);
        q.push(r);
    }
    acc.value += total;
    acc.err += toterr;
}

// Geometric shells approaching a finite endpoint (singularity peel) or +inf.
// `points(k)` yields the shell boundary sequence c_0 > c_1 > ... -> target
// (or c_0 < c_1 < ... -> inf); the shell k spans [min,max] of consecutive
// boundaries. Detects divergence when 30 consecutive shells fail to decay.
struct ShellOutcome {
    double value = 0.0;
    double err = 0.0;
    bool divergent = false;
};

ShellOutcome shell_sum(const std::function<double(double)>& f,
                       const std::function<double(int)>& boundary, const QuadratureSettings& s,
                       double tol_abs, Accum& acc) {
    ShellOutcome out;
    double prev_shell = -1.0;
    double prev_total_est = 0.0;
    int high_ratio_streak = 0;
    int stable_streak = 0;
    const int kMaxShells = 700;
    for (int k = 0;; ++k) {
        if (k >= kMaxShells)
            throw ToleranceNotReached("shell accumulation did not settle", acc.value + out.value,
                                      acc.err + out.err);
        double c0 = boundary(k);
        double c1 = boundary(k + 1);
        double lo = std::min(c0, c1);
        double hi = std::max(c0, c1);
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) break;
        double local_tol =
            std::max({0.05 * tol_abs, 0.1 * s.rel_tol * std::fabs(out.value), s.abs_tol});
        Accum shell_acc;
        QuadratureSettings ss = s;
        ss.max_subdivisions = 200;
        try {
            adaptive_core(f, lo, hi, ss, local_tol, shell_acc);
        } catch (const ToleranceNotReached& e) {
            shell_acc.value = e.best_estimate;
            shell_acc.err = e.error_bound;
        }
        acc.subdivisions += shell_acc.subdivisions;
        double sk = shell_acc.value;
        out.value += sk;
        out.err += shell_acc.err;

        double mag = std::fabs(sk);
        double goal = std::max(tol_abs, s.rel_tol * std::fabs(out.value));
        if (prev_shell >= 0.0) {
            double ratio = prev_shell > 0.0 ? mag / prev_shell : 0.0;
            if (ratio >= 0.99)
                ++high_ratio_streak;
            else
                high_ratio_streak = 0;
            if (high_ratio_streak >= 30) {
                out.divergent = true;
                return out;
            }
            // geometric tail extrapolation; accept once the extrapolated total
            // stops moving
            if (ratio < 0.97) {
                double tail = mag * ratio / std::max(1.0 - ratio, 0.03);
                double total_est = out.value + (sk >= 0.0 ? tail : -tail);
                double change = std::fabs(total_est - prev_total_est);
                stable_streak = change <= 0.25 * goal ? stable_streak + 1 : 0;
                prev_total_est = total_est;
                if ((stable_streak >= 2 && k >= 3) || tail <= 0.25 * goal) {
                    out.value = total_est;
                    out.err += tail <= 0.25 * goal ? tail : std::fabs(change) + 0.1 * tail;
                    return out;
                }
            } else {
                stable_streak = 0;
            }
        }
        if (mag < 0.05 * std::max(tol_abs, s.abs_tol) && k >= 3) return out;
        prev_shell = mag;
    }
    return out;
}

// tanh-sinh rule over a finite interval, level-refined.
void tanh_sinh(const std::function<double(double)>& f, double lo, double hi,
               const QuadratureSettings& s, Accum& acc) {
    const double c = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    auto node = [&](double u, double& x, double& w) {
        double sh = std::sinh(u);
        double t = std::tanh(0.5 * M_PI * sh);
        x = c + hw * t;
        double ch = std::cosh(0.5 * M_PI * sh);
        w = hw * 0.5 * M_PI * std::cosh(u) / (ch * ch);
    };
    const double umax = 3.8;
    double h = 0.5;
    double prev = kInf;
    double sum = 0.0;
    {
        double x, w;
        node(0.0, x, w);
        sum = w * safe_eval(f, x, hw);
        for (double u = h; u <= umax; u += h) {
            double xp, wp, xm, wm;
            node(u, xp, wp);
            node(-u, xm, wm);
            if (xp > lo && xp < hi) sum += wp * safe_eval(f, xp, hw);
            if (xm > lo && xm < hi) sum += wm * safe_eval(f, xm, hw);
        }
        sum *= h;
    }
    for (int level = 1; level <= 10; ++level) {
        double hh = h / 2.0;
        double add = 0.0;
        for (double u = hh; u <= umax; u += h) {
            double xp, wp, xm, wm;
            node(u, xp, wp);
            node(-u, xm, wm);
            if (xp > lo && xp < hi) add += wp * safe_eval(f, xp, hw);
            if (xm > lo && xm < hi) add += wm * safe_eval(f, xm, hw);
        }
        double next = 0.5 * sum + hh * add;
        acc.subdivisions += 1;
        double diff = std::fabs(next - prev);
        prev = sum;
        sum = next;
        h = hh;
        if (level >= 3 && diff <= std::max(s.abs_tol, s.rel_tol * std::fabs(sum))) {
            acc.value += sum;
            acc.err += diff;
            return;
        }
    }
    acc.value += sum;
    acc.err += std::fabs(sum - prev);
}

// finite-interval driver: splits at interior singular hints, peels shells at
// singular endpoints, adaptive GK elsewhere.
void integrate_finite(const Integrand& g, double lo, double hi, const QuadratureSettings& s,
                      double tol_abs, Accum& acc) {
    // split at interior singular points first
    std::vector<double> cuts;
    for (double p : g.singular_hints)
        if (p > lo && p < hi) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    if (!cuts.empty()) {
        double start = lo;
        for (double cpt : cuts) {
            Integrand part = g;
            part.singular_hints = {cpt};
            integrate_finite(part, start, cpt, s, tol_abs / (cuts.size() + 1.0), acc);
            start = cpt;
        }
        Integrand part = g;
        part.singular_hints = {start};
        integrate_finite(part, start, hi, s, tol_abs / (cuts.size() + 1.0), acc);
        return;
    }

    if (s.endpoint_map == EndpointMap::DoubleExponential) {
        tanh_sinh(g.fn, lo, hi, s, acc);
        return;
    }

    bool sing_lo = s.endpoint_map == EndpointMap::LogLower;
    bool sing_hi = s.endpoint_map == EndpointMap::LogUpper;
    for (double p : g.singular_hints) {
        if (p == lo) sing_lo = true;
        if (p == hi) sing_hi = true;
    }
    // probe for unflagged endpoint blowup
    double width = hi - lo;
    auto blows_up = [&](double e, double dir) {
        double v1 = g.fn(e + dir * 1e-4 * width);
        double v2 = g.fn(e + dir * 1e-7 * width);
        if (!std::isfinite(v2)) return true;
        return std::fabs(v2) > 50.0 * std::fabs(v1) + 1e3;
    };
    if (!sing_lo && blows_up(lo, +1.0)) sing_lo = true;
    if (!sing_hi && blows_up(hi, -1.0)) sing_hi = true;

    double core_lo = lo, core_hi = hi;
    if (sing_lo) {
        double delta = 0.25 * width;
        core_lo = lo + delta;
        auto bnd = [=](int k) { return lo + delta * std::pow(2.0, -k); };
        ShellOutcome sh = shell_sum(g.fn, bnd, s, tol_abs * 0.4, acc);
        if (sh.divergent) {
            acc.divergent = true;
            return;
        }
        acc.value += sh.value;
        acc.err += sh.err;
    }
    if (sing_hi) {
        double delta = 0.25 * (hi - core_lo);
        core_hi = hi - delta;
        auto bnd = [=](int k) { return hi - delta * std::pow(2.0, -k); };
        ShellOutcome sh = shell_sum(g.fn, bnd, s, tol_abs * 0.4, acc);
        if (sh.divergent) {
            acc.divergent = true;
            return;
        }
        acc.value += sh.value;
        acc.err += sh.err;
    }
    adaptive_core(g.fn, core_lo, core_hi, s, tol_abs * (sing_lo || sing_hi ? 0.2 : 1.0), acc);
}

}  // namespace

QuadResult integrate_fn(const Integrand& g, double lo, double hi, const QuadratureSettings& s) {
    s.validate();
    if (!(lo <= hi)) throw ConfigInvalid("integration range requires lo <= hi");
    QuadResult r;
    if (lo == hi) {
        r.value = ExtReal::finite(0.0);
        return r;
    }

    // exact power-law fast path
    if (g.pf && lo >= 0.0) {
        ExtReal v = [&] {
            if (g.pf->scale == 0.0) return ExtReal::finite(0.0);
            if (g.pf->expo == -1.0) {
                if (lo == 0.0 || hi == kInf) return ExtReal::infinity();
                return ExtReal::finite(g.pf->scale * (std::log(hi) - std::log(lo)));
            }
            double e = g.pf->expo + 1.0;
            double up, lw;
            if (hi == kInf) {
                if (e > 0.0) return ExtReal::infinity();
                up = 0.0;
            } else
                up = std::pow(hi, e);
            if (lo == 0.0) {
                if (e < 0.0) return ExtReal::infinity();
                lw = 0.0;
            } else
                lw = std::pow(lo, e);
            double val = g.pf->scale * (up - lw) / e;
            if (!std::isfinite(val)) return ExtReal::overflow();
            return ExtReal::finite(val);
        }();
        r.value = v;
        r.closed_form = true;
        return r;
    }

    Accum acc;
    double tol_abs = s.abs_tol;

    if (std::isinf(lo) && std::isinf(hi)) {
        Integrand gm = g;
        QuadResult left = integrate_fn(gm, lo, 0.0, s);
        if (left.value.is_infinite()) return left;
        QuadResult right = integrate_fn(gm, 0.0, hi, s);
        if (right.value.is_infinite()) return right;
        r.value = ExtReal::finite(left.value.as_double() + right.value.as_double());
        r.error_estimate = left.error_estimate + right.error_estimate;
        r.subdivisions = left.subdivisions + right.subdivisions;
        return r;
    }

    if (std::isinf(hi)) {
        double split = lo > 0.0 ? 2.0 * lo : std::max(1.0, -2.0 * lo);
        if (split <= lo) split = lo + 1.0;
        integrate_finite(g, lo, split, s, tol_abs * 0.5, acc);
        if (!acc.divergent) {
            auto bnd = [=](int k) { return split * std::pow(2.0, k); };
            ShellOutcome sh = shell_sum(g.fn, bnd, s, tol_abs * 0.5, acc);
            if (sh.divergent)
                acc.divergent = true;
            else {
                acc.value += sh.value;
                acc.err += sh.err;
            }
        }
    } else if (std::isinf(lo)) {
        Integrand flipped;
        flipped.fn = [fn = g.fn](double t) { return fn(-t); };
        for (double p : g.singular_hints) flipped.singular_hints.push_back(-p);
        return integrate_fn(flipped, -hi, kInf, s);
    } else {
        integrate_finite(g, lo, hi, s, tol_abs, acc);
    }

    r.subdivisions = acc.subdivisions;
    if (acc.divergent) {
        r.value = ExtReal::infinity();
        r.divergence_heuristic = true;
        return r;
    }
    if (!std::isfinite(acc.value)) {
        r.value = ExtReal::overflow();
        return r;
    }
    r.value = ExtReal::finite(acc.value);
    r.error_estimate = acc.err;
    return r;
}

QuadResult integrate(const WeightSpec& w, double lo, double hi, const QuadratureSettings& s) {
    s.validate();
    if (lo < w.interval().a || hi > w.interval().b)
        throw PointOutsideDomain("integration range exceeds the weight's interval");
    if (auto cf = w.closed_form_integral(lo, hi)) {
        QuadResult r;
        r.value = *cf;
        r.closed_form = true;
        return r;
    }
    Integrand g;
    g.fn = [&w](double t) { return w.value_unchecked(t); };
    g.pf = w.power_form();
    g.singular_hints = w.unbounded_near();
    return integrate_fn(g, lo, hi, s);
}

}  // namespace hardykit
