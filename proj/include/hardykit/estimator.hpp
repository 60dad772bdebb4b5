#pragma once

#include <string>

#include "hardykit/conditions_bilinear.hpp"
#include "hardykit/conditions_linear.hpp"
#include "hardykit/geomean.hpp"

namespace hardykit {

enum class InequalityKind { H1, H2, GM, BGM };

std::string to_string(InequalityKind k);
InequalityKind inequality_from_string(const std::string& name);

/// One inequality instance: weights, exponents, and quadrature settings.
struct EstimatorProblem {
    InequalityKind kind = InequalityKind::H1;
    WeightSpec u = WeightSpec::constant(1.0, Interval(0.0, kInf));
    std::vector<WeightSpec> v;  // one weight for H1/GM, two for H2/BGM
    std::vector<double> p;      // matching exponents
    double q = 2.0;
    QuadratureSettings quad;
};

enum class TestFunctionKind { TruncatedDual, PowerCut, Plateau, Custom };

std::string to_string(TestFunctionKind k);
TestFunctionKind family_from_string(const std::string& name);

struct TestFunctionFamily {
    TestFunctionKind kind = TestFunctionKind::TruncatedDual;
    int grid = 33;            // log-spaced truncation points
    int theta_grid = 9;       // PowerCut exponents around the critical one
    double theta_span = 0.5;  // half-width of the exponent grid
    std::vector<WeightSpec> custom;
};

struct QuotientSample {
    double lhs = 0.0;
    double rhs = 0.0;
    double quotient = 0.0;
    std::string member;  // family member description
};

/// Hardy quotient ||int_a^. f||_{q,u} / ||f||_{p,v}.
QuotientSample quotient_linear(const WeightSpec& f, const WeightSpec& u, const WeightSpec& v,
                               double p, double q, const QuadratureSettings& quad = {});

/// Bilinear Hardy quotient with two primitives on the left.
QuotientSample quotient_bilinear(const WeightSpec& f, const WeightSpec& g, const WeightSpec& u,
                                 const WeightSpec& v1, const WeightSpec& v2, double p1, double p2,
                                 double q, const QuadratureSettings& quad = {});

/// Geometric-mean quotient; `g` present selects the bilinear form.
QuotientSample quotient_geomean(const WeightSpec& f, const std::optional<WeightSpec>& g,
                                const EstimatorProblem& prob);

struct ConstantBracket {
    double lower = 0.0;            // max observed quotient: C >= lower
    double condition_value = 0.0;  // A_M, D, scriptB or scriptB2 (+inf possible)
    bool condition_infinite = false;
    double ratio = 0.0;  // lower / condition_value (0 when infinite)
    QuotientSample best;
    int evaluated = 0;
    int skipped = 0;
};

/// Sweeps the family (product grid for bilinear forms), returning the largest
/// quotient paired with the matching condition value. Degenerate members are
/// skipped; AllSamplesDegenerate when nothing evaluates.
ConstantBracket maximize_quotient(const TestFunctionFamily& family, const EstimatorProblem& prob);

/// The family members used for a slot (0 = f, 1 = g).
std::vector<std::pair<WeightSpec, std::string>> build_family(const TestFunctionFamily& family,
                                                             const EstimatorProblem& prob,
                                                             int slot);

/// Condition value for the problem's inequality (Muckenhoupt-type scale).
SupEstimate condition_for(const EstimatorProblem& prob);

}  // namespace hardykit
