#pragma once

#include <string>

#include "hardykit/conditions_common.hpp"

namespace hardykit {

enum class BilinearConditionId {
    Bt1,
    Bt2,
    Bt3,
    Bt4,
    Bt5,
    Bt6,
    Bt7,
    Bt8,
    Bt9,
    Bt10,
    Bt11,
    Bt12,
    Bt13,
    Bt14,
    Bt15,
    Bt16,
    Bt17,
    Bt18,
    Bt19,
    Bt20,
    Bt21,
    Bt22,
    Bt23,
    D,
};

std::string to_string(BilinearConditionId id);
BilinearConditionId bilinear_id_from_string(const std::string& name);

/// Parameter tuple of the three-weight scale; each condition reads the subset
/// it needs (s for Bt11..Bt17, (s1,s2) for Bt2..Bt10 and Bt18..Bt23).
struct BilinearParams {
    double alpha = 0.5;
    double beta = 0.5;
    double gamma = 0.5;
    double s = 0.25;
    double s1 = 0.25;
    double s2 = 0.25;
};

/// Which auxiliary slots a condition uses.
bool bilinear_uses_h1(BilinearConditionId id);
bool bilinear_uses_h2(BilinearConditionId id);

/// Canonical aux base for each slot (G or H per the display formulas).
AuxFunctionSpec::Base canonical_aux_base1(BilinearConditionId id);
AuxFunctionSpec::Base canonical_aux_base2(BilinearConditionId id);

class BilinearFunctional {
  public:
    BilinearFunctional(BilinearConditionId id, const BilinearParams& params, BilinearContext ctx,
                       std::optional<AuxFunctionSpec> h1 = std::nullopt,
                       std::optional<AuxFunctionSpec> h2 = std::nullopt);

    EvalResult operator()(double x) const;

    BilinearConditionId id() const { return id_; }
    const BilinearContext& context() const { return ctx_; }

  private:
    BilinearConditionId id_;
    BilinearParams params_;
    BilinearContext ctx_;
    std::vector<std::function<ValueFactor(double)>> factors_;
};

EvalResult eval_bilinear_pointwise(BilinearConditionId id, double x, const BilinearParams& params,
                                   const BilinearContext& ctx,
                                   std::optional<AuxFunctionSpec> h1 = std::nullopt,
                                   std::optional<AuxFunctionSpec> h2 = std::nullopt);

SupEstimate sup_bilinear(BilinearConditionId id, const BilinearParams& params,
                         const BilinearContext& ctx, const Interval& sub,
                         std::optional<AuxFunctionSpec> h1 = std::nullopt,
                         std::optional<AuxFunctionSpec> h2 = std::nullopt,
                         const SupSettings& st = {});

struct InfBilinearResult {
    SupEstimate estimate;  // upper bound of the true double infimum
    AuxFunctionSpec best1;
    std::optional<AuxFunctionSpec> best2;
};

/// Minimum of sup_bilinear over candidate aux choices (pairs for Bt18..Bt23);
/// the canonical choice (G and/or H, scale 1) is always included.
InfBilinearResult inf_bilinear(BilinearConditionId id, const BilinearParams& params,
                               const BilinearContext& ctx, const Interval& sub,
                               std::vector<AuxFunctionSpec> candidates1,
                               std::vector<AuxFunctionSpec> candidates2 = {},
                               const SupSettings& st = {});

/// Hardy-form context: F = U (upper tail of u), G = V1, H = V2 with
/// V_i = lower tail of v_i^{1-p_i'}.
BilinearContext hardy_bilinear_context(const WeightSpec& u, const WeightSpec& v1,
                                       const WeightSpec& v2, double p1, double p2,
                                       const QuadratureSettings& quad);

/// The bilinear Hardy condition sup U^{1/q} V1^{1/p1'} V2^{1/p2'} for
/// 1 < p1, p2, q < inf with q >= max(p1,p2).
SupEstimate bilinear_D(const WeightSpec& u, const WeightSpec& v1, const WeightSpec& v2, double p1,
                       double p2, double q, const QuadratureSettings& quad = {},
                       const SupSettings& st = {});

/// Result of one At_i evaluation (i = 1..22); inf-type for i = 15..22.
struct ATildeResult {
    SupEstimate estimate;
    bool inf_type = false;
    bool upper_bound_via_candidates = false;
};

/// Theorem-scale conditions in Hardy form: At_i delegates to Bt_{i+1} with
/// alpha = 1/q, beta = 1/p1', gamma = 1/p2' on (U, V1, V2); shared code path.
ATildeResult eval_A_tilde(int i, const BilinearParams& params, const BilinearContext& hardy_ctx,
                          double p1, double p2, double q, const SupSettings& st = {});

/// Maps At index (1..22) to the underlying Bt id (i+1).
BilinearConditionId a_tilde_underlying(int i);

}  // namespace hardykit
