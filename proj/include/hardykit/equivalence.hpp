#pragma once

#include "hardykit/config_io.hpp"

namespace hardykit {

enum class SuiteKind { Linear, Bilinear, HardyLinear, HardyBilinear, GeoMean, GeoMeanBilinear };

std::string to_string(SuiteKind k);
SuiteKind suite_from_string(const std::string& name);

/// One full run description: weights, exponents, parameter sets, selected
/// conditions and numerical settings.
struct RunConfig {
    SuiteKind kind = SuiteKind::HardyBilinear;

    // raw-form weights (Linear/Bilinear suites)
    std::optional<WeightSpec> f, g, h;
    // Hardy/geomean-form weights
    std::optional<WeightSpec> u, v, v1, v2;
    double p = 2.0, q = 2.0, p1 = 2.0, p2 = 2.0;

    std::vector<BilinearParams> param_sets{BilinearParams{}};
    std::vector<std::string> conditions;  // empty = every applicable condition

    QuadratureSettings quad;
    SupSettings sup;
    std::uint64_t seed = 0;

    // candidate scale grids for the inf-type conditions
    int linear_candidate_grid = 17;
    std::vector<double> bilinear_candidate_scales{0.5, 1.0, 2.0};

    // fault-injection hook for exercising the FAIL verdict in fixtures
    std::vector<std::string> force_infinite;

    bool with_bracket = false;
    TestFunctionFamily family;
};

RunConfig run_config_from_json(const json& j);
json run_config_to_json(const RunConfig& cfg);

struct ConditionOutcome {
    std::string id;
    int set_index = 0;
    SupEstimate estimate;
    bool evaluated = false;
    bool inf_type = false;  // value is an upper bound via canonical candidates
    bool injected_infinite = false;
    std::string skipped_reason;  // side-condition or hypothesis mismatch
    double ratio_to_reference = 0.0;
    bool ratio_valid = false;
};

/// Identity residuals; negative means not applicable to the suite kind.
struct IdentityResiduals {
    double i1 = -1.0;            // Bt18 at (G,H) vs 2^{s1+s2} Bt2
    double i2 = -1.0;            // Bt21 at (G,H) vs 2^{beta+gamma+s1+s2} Bt3
    double b2_reduction = -1.0;  // B2 at s = beta vs B1
    double uncertainty = 0.0;    // worst quadrature rel error seen during the checks
};

enum class Verdict { PASS, FAIL, INCONCLUSIVE };

std::string to_string(Verdict v);

struct EquivalenceReport {
    json config;
    std::uint64_t config_digest = 0;
    std::uint64_t seed = 0;
    std::string reference_id;
    std::vector<SupEstimate> references;  // one per parameter set
    std::vector<ConditionOutcome> outcomes;
    IdentityResiduals identities;
    Verdict verdict = Verdict::PASS;
    std::string verdict_reason;
    std::optional<ConstantBracket> bracket;
};

/// Evaluates every selected condition at every admissible parameter set,
/// assembles ratios against the suite reference, runs the identity checks and
/// issues the verdict. Deterministic given the config.
EquivalenceReport run_suite(const RunConfig& cfg);

json report_to_json(const EquivalenceReport& rep);
json sup_estimate_to_json(const SupEstimate& est);

struct SweepPoint {
    double value;
    std::optional<EquivalenceReport> report;
    std::string error;  // nonfatal per-point failure, sweep continues
};

/// Patches `axis` (dotted path into the config document) with each value and
/// reruns the suite.
std::vector<SweepPoint> sweep(const json& base_config, const std::string& axis,
                              const std::vector<double>& values);

std::string sweep_csv(const std::string& axis, const std::vector<SweepPoint>& points);

/// Pointwise condition curve on the sup-engine grid, for external plotting.
std::vector<std::pair<double, double>> condition_curve(const RunConfig& cfg, const std::string& id,
                                                       int set_index, int n);

/// Seeded generator for the equivalence test suites: balanced power pairs and
/// exponentially decaying pairs with finite B1.
std::vector<RunConfig> random_linear_suite_configs(int n, std::uint64_t seed);
std::vector<RunConfig> random_bilinear_suite_configs(int n, std::uint64_t seed);

}  // namespace hardykit
