#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hardykit/extended_real.hpp"
#include "hardykit/weights.hpp"

namespace hardykit {

enum class EndpointMap { None, LogUpper, LogLower, DoubleExponential };

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    EndpointMap endpoint_map = EndpointMap::None;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw ConfigInvalid("quadrature tolerances must be > 0");
        if (max_subdivisions < 1) throw ConfigInvalid("max_subdivisions must be >= 1");
    }
};

struct QuadResult {
    ExtReal value;
    double error_estimate = 0.0;  // absolute, finite results only
    int subdivisions = 0;
    bool divergence_heuristic = false;  // +inf detected by shell growth, not closed form
    bool closed_form = false;
};

/// Integrand with structure hints for the adaptive engine.
struct Integrand {
    std::function<double(double)> fn;
    std::optional<PowerForm> pf;         // exact power law valid on the whole range
    std::vector<double> singular_hints;  // finite points near which fn is unbounded
};

/// Adaptive integration of a generic integrand over (lo,hi), either endpoint
/// possibly infinite. Throws ToleranceNotReached when the subdivision budget
/// is exhausted without meeting tolerance.
QuadResult integrate_fn(const Integrand& g, double lo, double hi, const QuadratureSettings& s);

/// Integral of a weight over (lo,hi) within its interval; closed form when the
/// family admits one, adaptive quadrature otherwise.
QuadResult integrate(const WeightSpec& w, double lo, double hi, const QuadratureSettings& s);

}  // namespace hardykit
