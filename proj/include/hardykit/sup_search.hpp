#pragma once

#include <functional>

#include "hardykit/extended_real.hpp"
#include "hardykit/interval.hpp"

namespace hardykit {

/// One pointwise evaluation of a condition function.
struct EvalResult {
    ExtReal value;
    bool divergent_inner = false;  // an inner integral was +inf
    bool overflow = false;         // double overflow or indeterminate product
    double rel_err = 0.0;          // accumulated relative quadrature error
};

struct SupSettings {
    int initial_grid = 129;
    int refine_passes = 5;
    double rel_change_tol = 1e-6;
    double abs_tol = 1e-14;        // maxima below this are reported as exact 0
    double log_range = 18.4206807439523654;  // ln(1e8); half-width of transformed grid
    double endpoint_slope_tol = 0.02;        // log-log slope declaring endpoint divergence
};

struct SupEstimate {
    ExtReal value;
    double witness = 0.0;  // argmax location (smallest x on ties)
    int grid_size = 0;
    int refined_passes = 0;
    bool converged = false;
    bool divergent_inner = false;
    bool overflow = false;
    bool below_abs_tol = false;
    bool endpoint_divergence = false;
    double worst_rel_err = 0.0;
};

using PointFn = std::function<EvalResult(double)>;

/// Estimates sup over the open interval `sub` by a log-uniform grid in
/// transformed coordinates with bisection refinement around the running
/// argmax and the interval ends. Endpoint-pinned argmaxes trigger a log-log
/// slope fit that can declare +inf.
SupEstimate estimate_sup(const PointFn& fn, const Interval& sub, const SupSettings& st = {});

/// Grid coordinate map used by the sup engine: y in [-L, L] to x in (a,b),
/// log-dense toward the ends. Exposed for plot grids and truncation points.
double sup_transform_point(const Interval& sub, double y);

}  // namespace hardykit
