#include "rsplit/problem.hpp"

#include "rsplit/export.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace rsplit {

namespace {

using nlohmann::json;

bool same(const Vector& a, const Vector& b) { return a.size() == b.size() && a == b; }
bool same(const Matrix& a, const Matrix& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}
bool same(const std::optional<Vector>& a, const std::optional<Vector>& b)
{
    if (a.has_value() != b.has_value()) {
        return false;
    }
    return !a || same(*a, *b);
}

[[noreturn]] void spec_fail(const std::string& path, const std::string& what)
{
    throw SpecError((path.empty() ? std::string("/") : path) + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        spec_fail(path, "expected an object");
    }
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* key : allowed) {
            ok = ok || item.key() == key;
        }
        if (!ok) {
            spec_fail(path + "/" + item.key(), "unknown field");
        }
    }
}

const json& need(const json& obj, const std::string& path, const char* key)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        spec_fail(path + "/" + key, "missing required field");
    }
    return *it;
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        spec_fail(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        spec_fail(path, "expected a finite number");
    }
    return v;
}

double number_or(const json& obj, const std::string& path, const char* key, double fallback)
{
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, path + "/" + key);
}

Vector vec(const json& j, const std::string& path, Eigen::Index dim)
{
    Vector v;
    try {
        v = vector_from_json(j, path);
    } catch (const Error& e) {
        throw SpecError(e.what());
    }
    if (dim >= 0 && v.size() != dim) {
        spec_fail(path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
    }
    return v;
}

Matrix mat(const json& j, const std::string& path, Eigen::Index cols)
{
    Matrix m;
    try {
        m = matrix_from_json(j, path);
    } catch (const Error& e) {
        throw SpecError(e.what());
    }
    if (m.cols() != cols) {
        spec_fail(path, "expected rows with " + std::to_string(cols) + " entries, got "
                            + std::to_string(m.cols()));
    }
    return m;
}

std::string kind_of(const json& obj, const std::string& path)
{
    const json& k = need(obj, path, "kind");
    if (!k.is_string()) {
        spec_fail(path + "/kind", "expected a string");
    }
    return k.get<std::string>();
}

template <class Build, class Desc>
void validate_build(const Desc& d, const std::string& path, Build build)
{
    try {
        (void)build(d);
    } catch (const SpecError&) {
        throw;
    } catch (const Error& e) {
        spec_fail(path, e.what());
    }
}

SetDesc parse_set(const json& j, const std::string& path, Eigen::Index dim)
{
    const std::string kind = kind_of(j, path);
    SetDesc out;
    if (kind == "halfspace" || kind == "hyperplane") {
        check_keys(j, path, {"kind", "normal", "offset"});
        Vector a = vec(need(j, path, "normal"), path + "/normal", dim);
        const double b = number(need(j, path, "offset"), path + "/offset");
        if (kind == "halfspace") {
            out = HalfspaceDesc{std::move(a), b};
        } else {
            out = HyperplaneDesc{std::move(a), b};
        }
    } else if (kind == "ball") {
        check_keys(j, path, {"kind", "center", "radius"});
        out = BallDesc{vec(need(j, path, "center"), path + "/center", dim),
                       number(need(j, path, "radius"), path + "/radius")};
    } else if (kind == "box") {
        check_keys(j, path, {"kind", "lower", "upper"});
        out = BoxDesc{vec(need(j, path, "lower"), path + "/lower", dim),
                      vec(need(j, path, "upper"), path + "/upper", dim)};
    } else if (kind == "affine_subspace") {
        check_keys(j, path, {"kind", "matrix", "rhs"});
        Matrix g = mat(need(j, path, "matrix"), path + "/matrix", dim);
        Vector h = vec(need(j, path, "rhs"), path + "/rhs", g.rows());
        out = AffineSubspaceDesc{std::move(g), std::move(h)};
    } else {
        spec_fail(path + "/kind", "unknown set kind '" + kind
                                      + "' (expected halfspace, hyperplane, ball, box, affine_subspace)");
    }
    validate_build(out, path, [](const SetDesc& d) { return build_set(d); });
    return out;
}

FunctionDesc parse_function(const json& j, const std::string& path, Eigen::Index dim)
{
    const std::string kind = kind_of(j, path);
    FunctionDesc out;
    if (kind == "zero") {
        check_keys(j, path, {"kind"});
        out = ZeroFunctionDesc{};
    } else if (kind == "quadratic") {
        check_keys(j, path, {"kind", "matrix", "linear", "constant"});
        Matrix m = mat(need(j, path, "matrix"), path + "/matrix", dim);
        if (m.rows() != dim) {
            spec_fail(path + "/matrix", "expected a square matrix of size " + std::to_string(dim));
        }
        Vector b = j.contains("linear") ? vec(j["linear"], path + "/linear", dim) : Vector::Zero(dim);
        out = QuadraticDesc{std::move(m), std::move(b), number_or(j, path, "constant", 0.0)};
    } else if (kind == "neg_sq_norm") {
        check_keys(j, path, {"kind", "c"});
        out = NegSqNormDesc{number(need(j, path, "c"), path + "/c")};
    } else if (kind == "one_norm") {
        check_keys(j, path, {"kind", "weight"});
        out = OneNormDesc{number_or(j, path, "weight", 1.0)};
    } else if (kind == "indicator") {
        check_keys(j, path, {"kind", "set"});
        out = IndicatorDesc{parse_set(need(j, path, "set"), path + "/set", dim)};
    } else {
        spec_fail(path + "/kind", "unknown function kind '" + kind
                                      + "' (expected zero, quadratic, neg_sq_norm, one_norm, indicator)");
    }
    validate_build(out, path, [](const FunctionDesc& d) { return build_function(d); });
    return out;
}

OperatorDesc parse_operator(const json& j, const std::string& path, Eigen::Index dim)
{
    const std::string kind = kind_of(j, path);
    OperatorDesc out;
    if (kind == "zero") {
        check_keys(j, path, {"kind"});
        out = ZeroOperatorDesc{};
    } else if (kind == "scaled_identity") {
        check_keys(j, path, {"kind", "lambda"});
        out = ScaledIdentityDesc{number(need(j, path, "lambda"), path + "/lambda")};
    } else if (kind == "affine_quadratic") {
        check_keys(j, path, {"kind", "matrix", "offset", "modulus"});
        Matrix m = mat(need(j, path, "matrix"), path + "/matrix", dim);
        if (m.rows() != dim) {
            spec_fail(path + "/matrix", "expected a square matrix of size " + std::to_string(dim));
        }
        Vector b = j.contains("offset") ? vec(j["offset"], path + "/offset", dim) : Vector::Zero(dim);
        std::optional<double> modulus;
        if (j.contains("modulus")) {
            modulus = number(j["modulus"], path + "/modulus");
        }
        out = AffineQuadraticDesc{std::move(m), std::move(b), modulus};
    } else if (kind == "normal_cone") {
        check_keys(j, path, {"kind", "set"});
        out = NormalConeDesc{parse_set(need(j, path, "set"), path + "/set", dim)};
    } else if (kind == "subdifferential") {
        check_keys(j, path, {"kind", "function"});
        out = SubdifferentialDesc{parse_function(need(j, path, "function"), path + "/function", dim)};
    } else {
        spec_fail(path + "/kind",
                  "unknown operator kind '" + kind
                      + "' (expected zero, scaled_identity, affine_quadratic, normal_cone, subdifferential)");
    }
    validate_build(out, path, [](const OperatorDesc& d) { return build_operator(d); });
    return out;
}

json set_to_json(const SetDesc& d)
{
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, HalfspaceDesc>) {
                return {{"kind", "halfspace"}, {"normal", vector_to_json(s.normal)}, {"offset", s.offset}};
            } else if constexpr (std::is_same_v<T, HyperplaneDesc>) {
                return {{"kind", "hyperplane"}, {"normal", vector_to_json(s.normal)}, {"offset", s.offset}};
            } else if constexpr (std::is_same_v<T, BallDesc>) {
                return {{"kind", "ball"}, {"center", vector_to_json(s.center)}, {"radius", s.radius}};
            } else if constexpr (std::is_same_v<T, BoxDesc>) {
                return {{"kind", "box"}, {"lower", vector_to_json(s.lower)}, {"upper", vector_to_json(s.upper)}};
            } else {
                return {{"kind", "affine_subspace"}, {"matrix", matrix_to_json(s.matrix)}, {"rhs", vector_to_json(s.rhs)}};
            }
        },
        d);
}

json function_to_json(const FunctionDesc& d)
{
    return std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ZeroFunctionDesc>) {
                return {{"kind", "zero"}};
            } else if constexpr (std::is_same_v<T, QuadraticDesc>) {
                return {{"kind", "quadratic"}, {"matrix", matrix_to_json(f.matrix)},
                        {"linear", vector_to_json(f.linear)}, {"constant", f.constant}};
            } else if constexpr (std::is_same_v<T, NegSqNormDesc>) {
                return {{"kind", "neg_sq_norm"}, {"c", f.c}};
            } else if constexpr (std::is_same_v<T, OneNormDesc>) {
                return {{"kind", "one_norm"}, {"weight", f.weight}};
            } else {
                return {{"kind", "indicator"}, {"set", set_to_json(f.set)}};
            }
        },
        d);
}

json operator_to_json(const OperatorDesc& d)
{
    return std::visit(
        [](const auto& o) -> json {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, ZeroOperatorDesc>) {
                return {{"kind", "zero"}};
            } else if constexpr (std::is_same_v<T, ScaledIdentityDesc>) {
                return {{"kind", "scaled_identity"}, {"lambda", o.lambda}};
            } else if constexpr (std::is_same_v<T, AffineQuadraticDesc>) {
                json j = {{"kind", "affine_quadratic"}, {"matrix", matrix_to_json(o.matrix)},
                          {"offset", vector_to_json(o.offset)}};
                if (o.modulus) {
                    j["modulus"] = *o.modulus;
                }
                return j;
            } else if constexpr (std::is_same_v<T, NormalConeDesc>) {
                return {{"kind", "normal_cone"}, {"set", set_to_json(o.set)}};
            } else {
                return {{"kind", "subdifferential"}, {"function", function_to_json(o.function)}};
            }
        },
        d);
}

AlgorithmSpec parse_algorithm(const json& j, const std::string& path, Eigen::Index dim)
{
    check_keys(j, path, {"theta", "q", "sigma", "tau", "r_a", "r_b", "gamma", "kappa", "tol",
                         "max_iter", "x0", "eta"});
    AlgorithmSpec a;
    auto opt_num = [&](const char* key, std::optional<double>& dst) {
        if (j.contains(key)) {
            dst = number(j[key], path + "/" + key);
        }
    };
    auto opt_vec = [&](const char* key, std::optional<Vector>& dst) {
        if (j.contains(key)) {
            dst = vec(j[key], path + "/" + key, dim);
        }
    };
    opt_num("theta", a.theta);
    opt_vec("q", a.q);
    opt_num("sigma", a.sigma);
    opt_num("tau", a.tau);
    opt_vec("r_a", a.r_a);
    opt_vec("r_b", a.r_b);
    opt_num("gamma", a.gamma);
    opt_num("kappa", a.kappa);
    opt_num("tol", a.tol);
    opt_vec("x0", a.x0);
    opt_num("eta", a.eta);
    if (j.contains("max_iter")) {
        const json& m = j["max_iter"];
        if (!m.is_number_integer() || m.get<long long>() <= 0) {
            spec_fail(path + "/max_iter", "expected a positive integer");
        }
        a.max_iter = m.get<std::size_t>();
    }
    return a;
}

json algorithm_to_json(const AlgorithmSpec& a)
{
    json j = json::object();
    auto put = [&j](const char* key, const std::optional<double>& v) {
        if (v) {
            j[key] = *v;
        }
    };
    auto put_vec = [&j](const char* key, const std::optional<Vector>& v) {
        if (v) {
            j[key] = vector_to_json(*v);
        }
    };
    put("theta", a.theta);
    put_vec("q", a.q);
    put("sigma", a.sigma);
    put("tau", a.tau);
    put_vec("r_a", a.r_a);
    put_vec("r_b", a.r_b);
    put("gamma", a.gamma);
    put("kappa", a.kappa);
    put("tol", a.tol);
    if (a.max_iter) {
        j["max_iter"] = *a.max_iter;
    }
    put_vec("x0", a.x0);
    put("eta", a.eta);
    return j;
}

} // namespace

bool operator==(const HalfspaceDesc& a, const HalfspaceDesc& b) { return same(a.normal, b.normal) && a.offset == b.offset; }
bool operator==(const HyperplaneDesc& a, const HyperplaneDesc& b) { return same(a.normal, b.normal) && a.offset == b.offset; }
bool operator==(const BallDesc& a, const BallDesc& b) { return same(a.center, b.center) && a.radius == b.radius; }
bool operator==(const BoxDesc& a, const BoxDesc& b) { return same(a.lower, b.lower) && same(a.upper, b.upper); }
bool operator==(const AffineSubspaceDesc& a, const AffineSubspaceDesc& b) { return same(a.matrix, b.matrix) && same(a.rhs, b.rhs); }
bool operator==(const ZeroFunctionDesc&, const ZeroFunctionDesc&) { return true; }
bool operator==(const QuadraticDesc& a, const QuadraticDesc& b)
{
    return same(a.matrix, b.matrix) && same(a.linear, b.linear) && a.constant == b.constant;
}
bool operator==(const NegSqNormDesc& a, const NegSqNormDesc& b) { return a.c == b.c; }
bool operator==(const OneNormDesc& a, const OneNormDesc& b) { return a.weight == b.weight; }
bool operator==(const IndicatorDesc& a, const IndicatorDesc& b) { return a.set == b.set; }
bool operator==(const ZeroOperatorDesc&, const ZeroOperatorDesc&) { return true; }
bool operator==(const ScaledIdentityDesc& a, const ScaledIdentityDesc& b) { return a.lambda == b.lambda; }
bool operator==(const AffineQuadraticDesc& a, const AffineQuadraticDesc& b)
{
    return same(a.matrix, b.matrix) && same(a.offset, b.offset) && a.modulus == b.modulus;
}
bool operator==(const NormalConeDesc& a, const NormalConeDesc& b) { return a.set == b.set; }
bool operator==(const SubdifferentialDesc& a, const SubdifferentialDesc& b) { return a.function == b.function; }

bool operator==(const AlgorithmSpec& a, const AlgorithmSpec& b)
{
    return a.theta == b.theta && same(a.q, b.q) && a.sigma == b.sigma && a.tau == b.tau
           && same(a.r_a, b.r_a) && same(a.r_b, b.r_b) && a.gamma == b.gamma && a.kappa == b.kappa
           && a.tol == b.tol && a.max_iter == b.max_iter && same(a.x0, b.x0) && a.eta == b.eta;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b)
{
    return a.kind == b.kind && a.operators == b.operators && a.functions == b.functions
           && a.sets == b.sets && same(a.r, b.r) && a.omega == b.omega && a.algorithm == b.algorithm
           && a.output == b.output;
}

std::string to_string(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::resolvent:
        return "resolvent";
    case ProblemKind::prox:
        return "prox";
    case ProblemKind::project:
        return "project";
    }
    return "?";
}

ProblemSpec parse_problem_spec(const json& j)
{
    check_keys(j, "", {"kind", "operands", "r", "omega", "algorithm", "output"});
    ProblemSpec spec;
    const std::string kind = kind_of(j, "");
    if (kind == "resolvent") {
        spec.kind = ProblemKind::resolvent;
    } else if (kind == "prox") {
        spec.kind = ProblemKind::prox;
    } else if (kind == "project") {
        spec.kind = ProblemKind::project;
    } else {
        spec_fail("/kind", "unknown problem kind '" + kind + "' (expected resolvent, prox, project)");
    }
    spec.r = vec(need(j, "", "r"), "/r", -1);
    if (spec.r.size() == 0) {
        spec_fail("/r", "point must have at least one coordinate");
    }
    const auto dim = spec.r.size();
    spec.omega = number_or(j, "", "omega", 1.0);
    if (!(spec.omega > 0.0)) {
        spec_fail("/omega", "must be positive");
    }

    const json& operands = need(j, "", "operands");
    if (!operands.is_array() || operands.size() != 2) {
        spec_fail("/operands", "expected an array of exactly two descriptors");
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string path = "/operands/" + std::to_string(i);
        switch (spec.kind) {
        case ProblemKind::resolvent:
            spec.operators.push_back(parse_operator(operands[i], path, dim));
            break;
        case ProblemKind::prox:
            spec.functions.push_back(parse_function(operands[i], path, dim));
            break;
        case ProblemKind::project:
            spec.sets.push_back(parse_set(operands[i], path, dim));
            break;
        }
    }

    if (j.contains("algorithm")) {
        spec.algorithm = parse_algorithm(j["algorithm"], "/algorithm", dim);
    }
    if (spec.algorithm.eta && spec.kind != ProblemKind::project) {
        spec_fail("/algorithm/eta", "the eta mapping applies to project problems only");
    }
    if (j.contains("output")) {
        const json& out = j["output"];
        check_keys(out, "/output", {"trace", "format", "result"});
        if (out.contains("trace")) {
            if (!out["trace"].is_string()) {
                spec_fail("/output/trace", "expected a path string");
            }
            spec.output.trace = out["trace"].get<std::string>();
        }
        if (out.contains("format")) {
            if (!out["format"].is_string()
                || (out["format"] != "csv" && out["format"] != "jsonl")) {
                spec_fail("/output/format", "expected \"csv\" or \"jsonl\"");
            }
            spec.output.format = out["format"].get<std::string>();
        }
        if (out.contains("result")) {
            if (!out["result"].is_string()) {
                spec_fail("/output/result", "expected a path string");
            }
            spec.output.result = out["result"].get<std::string>();
        }
    }
    return spec;
}

ProblemSpec parse_problem_spec_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("syntax error: ") + e.what());
    }
    return parse_problem_spec(j);
}

ProblemSpec load_problem_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw SpecError(path + ": cannot open problem file");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_problem_spec_text(buf.str());
    } catch (const SpecError& e) {
        throw SpecError(path + ": " + e.what());
    }
}

nlohmann::json to_json(const ProblemSpec& spec)
{
    json operands = json::array();
    for (const auto& d : spec.operators) {
        operands.push_back(operator_to_json(d));
    }
    for (const auto& d : spec.functions) {
        operands.push_back(function_to_json(d));
    }
    for (const auto& d : spec.sets) {
        operands.push_back(set_to_json(d));
    }
    json j = {
        {"kind", to_string(spec.kind)},
        {"operands", operands},
        {"r", vector_to_json(spec.r)},
        {"omega", spec.omega},
        {"algorithm", algorithm_to_json(spec.algorithm)},
    };
    json out = {{"format", spec.output.format}};
    if (spec.output.trace) {
        out["trace"] = *spec.output.trace;
    }
    if (spec.output.result) {
        out["result"] = *spec.output.result;
    }
    j["output"] = out;
    return j;
}

ConvexSet build_set(const SetDesc& d)
{
    return std::visit(
        [](const auto& s) -> ConvexSet {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, HalfspaceDesc>) {
                return halfspace(s.normal, s.offset);
            } else if constexpr (std::is_same_v<T, HyperplaneDesc>) {
                return hyperplane(s.normal, s.offset);
            } else if constexpr (std::is_same_v<T, BallDesc>) {
                return ball(s.center, s.radius);
            } else if constexpr (std::is_same_v<T, BoxDesc>) {
                return box(s.lower, s.upper);
            } else {
                return affine_subspace(s.matrix, s.rhs);
            }
        },
        d);
}

ProxFunction build_function(const FunctionDesc& d)
{
    return std::visit(
        [](const auto& f) -> ProxFunction {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ZeroFunctionDesc>) {
                return zero_function();
            } else if constexpr (std::is_same_v<T, QuadraticDesc>) {
                return quadratic(f.matrix, f.linear, f.constant);
            } else if constexpr (std::is_same_v<T, NegSqNormDesc>) {
                return neg_sq_norm(f.c);
            } else if constexpr (std::is_same_v<T, OneNormDesc>) {
                return one_norm(f.weight);
            } else {
                return indicator(build_set(f.set));
            }
        },
        d);
}

Operator build_operator(const OperatorDesc& d)
{
    return std::visit(
        [](const auto& o) -> Operator {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, ZeroOperatorDesc>) {
                return zero_operator();
            } else if constexpr (std::is_same_v<T, ScaledIdentityDesc>) {
                return scaled_identity(o.lambda);
            } else if constexpr (std::is_same_v<T, AffineQuadraticDesc>) {
                return affine_quadratic(o.matrix, o.offset, o.modulus);
            } else if constexpr (std::is_same_v<T, NormalConeDesc>) {
                return normal_cone_of(build_set(o.set));
            } else {
                return subdifferential_of(build_function(o.function));
            }
        },
        d);
}

std::pair<double, double> operand_moduli(const ProblemSpec& spec)
{
    switch (spec.kind) {
    case ProblemKind::resolvent:
        return {build_operator(spec.operators.at(0)).modulus(), build_operator(spec.operators.at(1)).modulus()};
    case ProblemKind::prox:
        return {build_function(spec.functions.at(0)).modulus(), build_function(spec.functions.at(1)).modulus()};
    case ProblemKind::project:
        return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

SplitConfig assemble_config(const ProblemSpec& spec, double alpha, double beta)
{
    const AlgorithmSpec& alg = spec.algorithm;
    const auto dim = spec.dim();
    SplitConfig c;
    c.omega = spec.omega;
    c.r = spec.r;
    c.theta = alg.theta.value_or(1.0);
    c.q = alg.q.value_or(Vector::Zero(dim));

    const double total = c.theta / c.omega;
    if (alg.sigma && alg.tau) {
        c.sigma = *alg.sigma;
        c.tau = *alg.tau;
    } else if (alg.sigma) {
        c.sigma = *alg.sigma;
        c.tau = total - c.sigma;
    } else if (alg.tau) {
        c.tau = *alg.tau;
        c.sigma = total - c.tau;
    } else {
        const double offset = c.theta * (beta - alpha) / 2.0;
        c.sigma = total / 2.0 + offset;
        c.tau = total / 2.0 - offset;
    }

    const Vector shift_total = (c.q + c.r) / c.omega;
    if (alg.r_a && alg.r_b) {
        c.r_a = *alg.r_a;
        c.r_b = *alg.r_b;
    } else if (alg.r_a) {
        c.r_a = *alg.r_a;
        c.r_b = shift_total - c.r_a;
    } else if (alg.r_b) {
        c.r_b = *alg.r_b;
        c.r_a = shift_total - c.r_b;
    } else {
        c.r_a = shift_total / 2.0;
        c.r_b = c.r_a;
    }
    c.gamma = alg.gamma.value_or(1.0);
    c.kappa = alg.kappa.value_or(0.5);
    c.tol = alg.tol.value_or(1e-8);
    c.max_iter = alg.max_iter.value_or(100000);
    return c;
}

ProjectionParams assemble_projection_params(const ProblemSpec& spec)
{
    const AlgorithmSpec& alg = spec.algorithm;
    if (alg.eta) {
        return aamr_projection_params(spec.r, *alg.eta, alg.gamma.value_or(1.0), alg.kappa.value_or(0.5),
                                      alg.tol.value_or(1e-8), alg.max_iter.value_or(100000));
    }
    // sigma + tau = theta/omega, with omega taken from the problem when the
    // split is not given in full
    const SplitConfig c = assemble_config(spec, 0.0, 0.0);
    ProjectionParams p;
    p.theta = c.theta;
    p.q = c.q;
    p.sigma = c.sigma;
    p.tau = c.tau;
    p.r_c = c.r_a;
    p.r_d = c.r_b;
    p.gamma = c.gamma;
    p.kappa = c.kappa;
    p.tol = c.tol;
    p.max_iter = c.max_iter;
    return p;
}

SolveOutcome solve_problem(const ProblemSpec& spec)
{
    const std::optional<Vector>& x0 = spec.algorithm.x0;
    switch (spec.kind) {
    case ProblemKind::resolvent: {
        const Operator a = build_operator(spec.operators.at(0));
        const Operator b = build_operator(spec.operators.at(1));
        if (!spec.algorithm.sigma && !spec.algorithm.tau
            && !(a.modulus() + b.modulus() > -1.0 / spec.omega)) {
            // surfaces as InfeasibleError rather than a list of violations
            (void)balanced_config(spec.omega, spec.r, a.modulus(), b.modulus());
        }
        return solve_resolvent(a, b, assemble_config(spec, a.modulus(), b.modulus()), x0);
    }
    case ProblemKind::prox: {
        const ProxFunction f = build_function(spec.functions.at(0));
        const ProxFunction g = build_function(spec.functions.at(1));
        if (!spec.algorithm.sigma && !spec.algorithm.tau
            && !(f.modulus() + g.modulus() > -1.0 / spec.omega)) {
            (void)balanced_config(spec.omega, spec.r, f.modulus(), g.modulus());
        }
        return prox_of_sum(f, g, spec.omega, spec.r, assemble_config(spec, f.modulus(), g.modulus()), x0);
    }
    case ProblemKind::project: {
        const ConvexSet c = build_set(spec.sets.at(0));
        const ConvexSet d = build_set(spec.sets.at(1));
        return project_intersection(c, d, spec.r, assemble_projection_params(spec), x0);
    }
    }
    throw SpecError("unsupported problem kind");
}

} // namespace rsplit
