#include "hardykit/sup_search.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hardykit {

namespace {

// Transformed coordinate y in [-L, L] -> x in (a,b), log-dense near the ends.
double map_point(const Interval& sub, double y) {
    if (sub.bounded()) {
        double s = 1.0 / (1.0 + std::exp(-y));
        return sub.a + (sub.b - sub.a) * s;
    }
    if (!sub.lower_infinite() && sub.upper_infinite()) return sub.a + std::exp(y);
    if (sub.lower_infinite() && !sub.upper_infinite()) return sub.b - std::exp(-y);
    return std::sinh(y);
}

struct Sample {
    double y;
    double x;
    EvalResult r;
};

}  // namespace

double sup_transform_point(const Interval& sub, double y) { return map_point(sub, y); }

SupEstimate estimate_sup(const PointFn& fn, const Interval& sub, const SupSettings& st) {
    SupEstimate out;
    const double L = st.log_range;
    const int n0 = std::max(st.initial_grid, 5);

    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(n0) + 8 * static_cast<std::size_t>(st.refine_passes));

    auto evaluate = [&](double y) {
        double x = map_point(sub, y);
        EvalResult r = fn(x);
        out.worst_rel_err = std::max(out.worst_rel_err, r.rel_err);
        if (r.overflow) out.overflow = true;
        return Sample{y, x, r};
    };

    for (int i = 0; i < n0; ++i) {
        double y = -L + 2.0 * L * static_cast<double>(i) / (n0 - 1);
        samples.push_back(evaluate(y));
        if (samples.back().r.divergent_inner || samples.back().r.value.is_infinite()) {
            out.value = ExtReal::infinity();
            out.witness = samples.back().x;
            out.divergent_inner = samples.back().r.divergent_inner;
            out.overflow = out.overflow || samples.back().r.value.from_overflow();
            out.grid_size = static_cast<int>(samples.size());
            out.converged = true;
            return out;
        }
    }

    auto best_index = [&]() {
        std::size_t bi = 0;
        double bv = -1.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            double v = samples[i].r.value.as_double();
            if (v > bv) {
                bv = v;
                bi = i;
            } else if (v == bv && samples[i].x < samples[bi].x) {
                bi = i;  // ties resolved toward the smallest x
            }
        }
        return bi;
    };

    double prev_max = -1.0;
    int small_change_streak = 0;
    int endpoint_streak_lo = 0, endpoint_streak_hi = 0;
    int pass = 0;
    for (; pass < st.refine_passes; ++pass) {
        std::size_t bi = best_index();
        double cur_max = samples[bi].r.value.as_double();
        if (prev_max >= 0.0) {
            double change = std::fabs(cur_max - prev_max) / std::max(cur_max, st.abs_tol);
            small_change_streak = change < st.rel_change_tol ? small_change_streak + 1 : 0;
            if (small_change_streak >= 2) {
                out.converged = true;
                break;
            }
        }
        prev_max = cur_max;
        if (bi == 0)
            ++endpoint_streak_lo;
        else
            endpoint_streak_lo = 0;
        if (bi + 1 == samples.size())
            ++endpoint_streak_hi;
        else
            endpoint_streak_hi = 0;

        // log-log fit over the 8 outermost points once the argmax pins an end
        auto endpoint_fit = [&](bool low_end) -> bool {
            std::size_t m = std::min<std::size_t>(8, samples.size());
            double sy = 0, sv = 0, syy = 0, syv = 0;
            int cnt = 0;
            for (std::size_t k = 0; k < m; ++k) {
                const Sample& s = low_end ? samples[k] : samples[samples.size() - 1 - k];
                double v = s.r.value.as_double();
                if (!(v > 0.0)) continue;
                double lv = std::log(v);
                sy += s.y;
                sv += lv;
                syy += s.y * s.y;
                syv += s.y * lv;
                ++cnt;
            }
            if (cnt < 4) return false;
            double denom = cnt * syy - sy * sy;
            if (denom == 0.0) return false;
            double slope = (cnt * syv - sy * sv) / denom;
            double toward_end = low_end ? -slope : slope;
            return toward_end > st.endpoint_slope_tol;
        };
        if (endpoint_streak_lo >= 2 && endpoint_fit(true)) {
            out.value = ExtReal::infinity();
            out.witness = samples.front().x;
            out.endpoint_divergence = true;
            out.converged = true;
            out.grid_size = static_cast<int>(samples.size());
            out.refined_passes = pass;
            return out;
        }
        if (endpoint_streak_hi >= 2 && endpoint_fit(false)) {
            out.value = ExtReal::infinity();
            out.witness = samples.back().x;
            out.endpoint_divergence = true;
            out.converged = true;
            out.grid_size = static_cast<int>(samples.size());
            out.refined_passes = pass;
            return out;
        }

        // refine: repeated bisection of the gaps flanking the argmax, plus the
        // two outermost gaps (suprema are often attained in endpoint limits)
        bool hit_inf = false;
        auto insert_mid = [&](std::size_t i, std::size_t j) {
            if (hit_inf || j >= samples.size() || i >= j) return;
            double mid = 0.5 * (samples[i].y + samples[j].y);
            if (std::fabs(samples[j].y - samples[i].y) < 4e-16 * (1.0 + std::fabs(mid))) return;
            Sample s = evaluate(mid);
            if (s.r.divergent_inner || s.r.value.is_infinite()) {
                out.value = ExtReal::infinity();
                out.witness = s.x;
                out.divergent_inner = s.r.divergent_inner;
                out.converged = true;
                hit_inf = true;
                return;
            }
            auto pos = std::upper_bound(samples.begin(), samples.end(), s,
                                        [](const Sample& a, const Sample& b) { return a.y < b.y; });
            samples.insert(pos, std::move(s));
        };
        for (int local = 0; local < 6 && !hit_inf; ++local) {
            std::size_t bj = best_index();
            if (bj > 0) insert_mid(bj - 1, bj);
            if (!hit_inf) {
                bj = best_index();
                insert_mid(bj, bj + 1);
            }
        }
        if (!hit_inf) insert_mid(0, 1);
        if (!hit_inf) insert_mid(samples.size() - 2, samples.size() - 1);
        if (hit_inf) {
            out.grid_size = static_cast<int>(samples.size());
            out.refined_passes = pass + 1;
            return out;
        }
    }

    std::size_t bi = best_index();
    double maxv = samples[bi].r.value.as_double();
    out.grid_size = static_cast<int>(samples.size());
    out.refined_passes = pass;
    out.witness = samples[bi].x;
    if (maxv < st.abs_tol) {
        out.value = ExtReal::finite(0.0);
        out.below_abs_tol = true;
        out.converged = true;
        return out;
    }
    out.value = ExtReal::finite(maxv);
    if (!out.converged && prev_max >= 0.0) {
        double last_change = std::fabs(maxv - prev_max) / std::max(maxv, st.abs_tol);
        out.converged = small_change_streak >= 1 && last_change < st.rel_change_tol;
    }
    if (out.worst_rel_err > 1e-3) out.converged = false;
    return out;
}

}  // namespace hardykit
