#pragma once

#include "rsplit/best_approx.hpp"
#include "rsplit/engine.hpp"
#include "rsplit/prox.hpp"
#include "rsplit/sets.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rsplit {

/// Malformed problem file. The message carries the JSON path of the
/// offending field (e.g. "/operands/1/lambda") or the parser's line/column.
class SpecError : public Error {
public:
    using Error::Error;
};

// Set descriptors -------------------------------------------------------

struct HalfspaceDesc {
    Vector normal;
    double offset = 0.0;
};
struct HyperplaneDesc {
    Vector normal;
    double offset = 0.0;
};
struct BallDesc {
    Vector center;
    double radius = 1.0;
};
struct BoxDesc {
    Vector lower;
    Vector upper;
};
struct AffineSubspaceDesc {
    Matrix matrix;
    Vector rhs;
};
using SetDesc = std::variant<HalfspaceDesc, HyperplaneDesc, BallDesc, BoxDesc, AffineSubspaceDesc>;

// Function descriptors --------------------------------------------------

struct ZeroFunctionDesc {};
struct QuadraticDesc {
    Matrix matrix;
    Vector linear;
    double constant = 0.0;
};
struct NegSqNormDesc {
    double c = 0.0;
};
struct OneNormDesc {
    double weight = 1.0;
};
struct IndicatorDesc {
    SetDesc set;
};
using FunctionDesc = std::variant<ZeroFunctionDesc, QuadraticDesc, NegSqNormDesc, OneNormDesc, IndicatorDesc>;

// Operator descriptors --------------------------------------------------

struct ZeroOperatorDesc {};
struct ScaledIdentityDesc {
    double lambda = 0.0;
};
struct AffineQuadraticDesc {
    Matrix matrix;
    Vector offset;
    std::optional<double> modulus;
};
struct NormalConeDesc {
    SetDesc set;
};
struct SubdifferentialDesc {
    FunctionDesc function;
};
using OperatorDesc = std::variant<ZeroOperatorDesc, ScaledIdentityDesc, AffineQuadraticDesc,
                                  NormalConeDesc, SubdifferentialDesc>;

bool operator==(const HalfspaceDesc& a, const HalfspaceDesc& b);
bool operator==(const HyperplaneDesc& a, const HyperplaneDesc& b);
bool operator==(const BallDesc& a, const BallDesc& b);
bool operator==(const BoxDesc& a, const BoxDesc& b);
bool operator==(const AffineSubspaceDesc& a, const AffineSubspaceDesc& b);
bool operator==(const ZeroFunctionDesc&, const ZeroFunctionDesc&);
bool operator==(const QuadraticDesc& a, const QuadraticDesc& b);
bool operator==(const NegSqNormDesc& a, const NegSqNormDesc& b);
bool operator==(const OneNormDesc& a, const OneNormDesc& b);
bool operator==(const IndicatorDesc& a, const IndicatorDesc& b);
bool operator==(const ZeroOperatorDesc&, const ZeroOperatorDesc&);
bool operator==(const ScaledIdentityDesc& a, const ScaledIdentityDesc& b);
bool operator==(const AffineQuadraticDesc& a, const AffineQuadraticDesc& b);
bool operator==(const NormalConeDesc& a, const NormalConeDesc& b);
bool operator==(const SubdifferentialDesc& a, const SubdifferentialDesc& b);

// Problem ---------------------------------------------------------------

enum class ProblemKind { resolvent, prox, project };

std::string to_string(ProblemKind kind);

/// Partial algorithm configuration; unset fields get defaults
/// (theta = 1, q = 0, balanced sigma/tau and shifts, gamma = 1,
/// kappa = 1/2, tol = 1e-8, max_iter = 1e5, x0 = r).
struct AlgorithmSpec {
    std::optional<double> theta;
    std::optional<Vector> q;
    std::optional<double> sigma;
    std::optional<double> tau;
    std::optional<Vector> r_a;
    std::optional<Vector> r_b;
    std::optional<double> gamma;
    std::optional<double> kappa;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<Vector> x0;
    /// project problems only: theta = 1/eta, sigma = tau = (1-eta)/(gamma eta), q = -r, zero shifts.
    std::optional<double> eta;

    friend bool operator==(const AlgorithmSpec& a, const AlgorithmSpec& b);
};

struct OutputSpec {
    std::optional<std::string> trace;
    std::string format = "csv";   // "csv" or "jsonl"
    std::optional<std::string> result;

    friend bool operator==(const OutputSpec& a, const OutputSpec& b) = default;
};

struct ProblemSpec {
    ProblemKind kind = ProblemKind::resolvent;
    std::vector<OperatorDesc> operators;   // kind == resolvent
    std::vector<FunctionDesc> functions;   // kind == prox
    std::vector<SetDesc> sets;             // kind == project
    Vector r;
    double omega = 1.0;
    AlgorithmSpec algorithm;
    OutputSpec output;

    Eigen::Index dim() const { return r.size(); }

    friend bool operator==(const ProblemSpec& a, const ProblemSpec& b);
};

ProblemSpec parse_problem_spec(const nlohmann::json& j);
/// Parses text; syntax errors report line and column.
ProblemSpec parse_problem_spec_text(const std::string& text);
ProblemSpec load_problem_spec(const std::string& path);

nlohmann::json to_json(const ProblemSpec& spec);

Operator build_operator(const OperatorDesc& d);
ProxFunction build_function(const FunctionDesc& d);
ConvexSet build_set(const SetDesc& d);

/// Splitting configuration for a resolvent/prox problem with operand moduli
/// (alpha, beta), filling unset fields with balanced defaults.
SplitConfig assemble_config(const ProblemSpec& spec, double alpha, double beta);

/// Projection parameters for a project problem (eta mapping applied when set).
ProjectionParams assemble_projection_params(const ProblemSpec& spec);

/// Moduli of the two operands as the engine sees them.
std::pair<double, double> operand_moduli(const ProblemSpec& spec);

/// Build operands, assemble parameters and run the matching solver.
SolveOutcome solve_problem(const ProblemSpec& spec);

} // namespace rsplit
