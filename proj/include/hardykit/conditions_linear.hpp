#pragma once

#include <string>

#include "hardykit/conditions_common.hpp"

namespace hardykit {

enum class LinearConditionId {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
    B10,
    B11,
    B12,
    B13,
    B14,
    B15,
    AM,
};

std::string to_string(LinearConditionId id);
LinearConditionId linear_id_from_string(const std::string& name);

/// Parameters (alpha, beta, s) of the two-weight condition scale. `s` is
/// ignored by B1/AM.
struct LinearParams {
    double alpha = 0.5;
    double beta = 0.5;
    double s = 0.25;
};

/// One condition function bound to its parameters and context. Side
/// conditions are checked at construction; evaluation is pure.
class LinearFunctional {
  public:
    LinearFunctional(LinearConditionId id, const LinearParams& params, LinearContext ctx,
                     std::optional<AuxFunctionSpec> aux = std::nullopt);

    EvalResult operator()(double x) const;

    LinearConditionId id() const { return id_; }
    const LinearContext& context() const { return ctx_; }
    const LinearParams& params() const { return params_; }

  private:
    LinearConditionId id_;
    LinearParams params_;
    LinearContext ctx_;
    std::vector<std::function<ValueFactor(double)>> factors_;
};

/// Formula value of the condition at one point.
EvalResult eval_linear_pointwise(LinearConditionId id, double x, const LinearParams& params,
                                 const LinearContext& ctx,
                                 std::optional<AuxFunctionSpec> aux = std::nullopt);

/// Supremum of the condition over a sub-interval of the context domain.
SupEstimate sup_linear(LinearConditionId id, const LinearParams& params, const LinearContext& ctx,
                       const Interval& sub, std::optional<AuxFunctionSpec> aux = std::nullopt,
                       const SupSettings& st = {});

struct InfLinearResult {
    SupEstimate estimate;  // min over candidates; an upper bound of the true inf
    AuxFunctionSpec best;
};

/// inf over a candidate family of aux functions of sup_linear; the canonical
/// candidate (scale 1) is always included.
InfLinearResult inf_linear(LinearConditionId id, const LinearParams& params,
                           const LinearContext& ctx, const Interval& sub,
                           std::vector<AuxFunctionSpec> candidates, const SupSettings& st = {});

/// 17-point log grid of scales in [2^-8, 2^8] on the given base.
std::vector<AuxFunctionSpec> canonical_aux_candidates(AuxFunctionSpec::Base base, int n = 17);

/// Canonical aux base for each inf-type condition (G for B12/B14, F for B13/B15).
AuxFunctionSpec::Base canonical_aux_base(LinearConditionId id);

/// Muckenhoupt condition sup_x U^{1/q}(x) V^{1/p'}(x) for 1 < p <= q < inf.
/// Divergent tails yield a +inf estimate rather than an error.
SupEstimate muckenhoupt_AM(const WeightSpec& u, const WeightSpec& v, double p, double q,
                           const QuadratureSettings& quad = {}, const SupSettings& st = {});

/// Shared helper: context (U, V) for Hardy-form weights u, v and exponents.
LinearContext hardy_linear_context(const WeightSpec& u, const WeightSpec& v, double p,
                                   const QuadratureSettings& quad);

}  // namespace hardykit
