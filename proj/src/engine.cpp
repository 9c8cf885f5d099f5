#include "rsplit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rsplit {

namespace {

std::string describe(const std::vector<Violation>& violations)
{
    std::ostringstream msg;
    msg << "invalid splitting configuration:";
    for (const auto& v : violations) {
        msg << "\n  [" << v.constraint << "] " << v.message;
    }
    return msg.str();
}

Vector zeros_if_empty(const Vector& v, Eigen::Index dim)
{
    return v.size() == 0 ? Vector::Zero(dim) : v;
}

} // namespace

ConfigError::ConfigError(std::vector<Violation> violations)
    : Error(describe(violations))
    , violations_(std::move(violations))
{
}

std::vector<Violation> validate_config(const SplitConfig& c, double alpha, double beta)
{
    std::vector<Violation> out;
    auto fail = [&out](std::string name, double residual, std::string message) {
        out.push_back({std::move(name), residual, std::move(message)});
    };
    auto fmt = [](auto&&... parts) {
        std::ostringstream s;
        s.precision(12);
        (s << ... << parts);
        return s.str();
    };

    const auto dim = c.r.size();
    bool dims_ok = dim > 0;
    if (dim == 0) {
        fail("dimension", 0.0, "point r is empty");
    }
    for (auto [name, v] : {std::pair{"q", &c.q}, std::pair{"r_a", &c.r_a}, std::pair{"r_b", &c.r_b}}) {
        if (v->size() != dim) {
            dims_ok = false;
            fail("dimension", static_cast<double>(v->size() - dim),
                 fmt(name, " has dimension ", v->size(), ", expected ", dim));
        }
    }
    if (dims_ok && !(c.r.allFinite() && c.q.allFinite() && c.r_a.allFinite() && c.r_b.allFinite())) {
        fail("finite", 0.0, "vector parameters contain NaN or infinity");
    }
    for (auto [name, value] : {std::pair{"omega", c.omega}, std::pair{"theta", c.theta},
                               std::pair{"gamma", c.gamma}, std::pair{"tol", c.tol}}) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            fail(std::string(name) + "-positive", value, fmt(name, " must be positive and finite, got ", value));
        }
    }
    if (!(c.kappa > 0.0 && c.kappa <= 1.0)) {
        fail("kappa-range", c.kappa, fmt("kappa must lie in (0, 1], got ", c.kappa));
    }
    if (c.max_iter == 0) {
        fail("max-iter-positive", 0.0, "max_iter must be positive");
    }
    if (!std::isfinite(c.sigma) || !std::isfinite(c.tau)) {
        fail("finite", 0.0, "sigma and tau must be finite");
        return out;
    }
    if (!(c.omega > 0.0 && c.theta > 0.0)) {
        return out;
    }

    const double target = c.theta / c.omega;
    const double split_res = std::abs(c.sigma + c.tau - target);
    const double split_scale = std::max(std::abs(c.sigma) + std::abs(c.tau), std::abs(target));
    if (split_res > 1e-12 * split_scale) {
        fail("split-sum", split_res,
             fmt("sigma + tau = theta/omega violated: sigma + tau = ", c.sigma + c.tau,
                 ", theta/omega = ", target, ", residual ", split_res));
    }
    if (dims_ok) {
        const Vector shift_target = (c.q + c.r) / c.omega;
        const double shift_res = (c.r_a + c.r_b - shift_target).norm();
        const double shift_scale = std::max(c.r_a.norm() + c.r_b.norm(), shift_target.norm());
        if (shift_res > 1e-12 * shift_scale) {
            fail("shift-sum", shift_res,
                 fmt("r_a + r_b = (q + r)/omega violated: residual ", shift_res));
        }
    }

    const double a_margin = c.theta * alpha + c.sigma;
    if (!(a_margin > 0.0)) {
        fail("strong-monotonicity-A", a_margin,
             fmt("theta*alpha + sigma > 0 violated: theta*alpha + sigma = ", a_margin));
    }
    const double b_margin = c.theta * beta + c.tau;
    if (!(b_margin >= 0.0)) {
        fail("monotonicity-B", b_margin,
             fmt("theta*beta + tau >= 0 violated: theta*beta + tau = ", b_margin));
    }
    if (c.gamma > 0.0) {
        const double ds = 1.0 + c.gamma * c.sigma;
        if (!(ds > 0.0)) {
            fail("gamma-sigma", ds, fmt("1 + gamma*sigma > 0 violated: 1 + gamma*sigma = ", ds));
        }
        const double dt = 1.0 + c.gamma * c.tau;
        if (!(dt > 0.0)) {
            fail("gamma-tau", dt, fmt("1 + gamma*tau > 0 violated: 1 + gamma*tau = ", dt));
        }
    }
    const double mod_margin = alpha + beta + 1.0 / c.omega;
    if (!(mod_margin > 0.0)) {
        fail("modulus-sum", mod_margin,
             fmt("alpha + beta > -1/omega violated: alpha + beta = ", alpha + beta,
                 ", -1/omega = ", -1.0 / c.omega));
    }
    return out;
}

void require_valid(const SplitConfig& c, double alpha, double beta)
{
    auto violations = validate_config(c, alpha, beta);
    if (!violations.empty()) {
        throw ConfigError(std::move(violations));
    }
}

SplitConfig balanced_config(double omega, const Vector& r, double alpha, double beta,
                            const BalanceOptions& opts)
{
    if (!(omega > 0.0)) {
        throw ParameterError("balanced_config: omega must be positive");
    }
    if (!(alpha + beta > -1.0 / omega)) {
        std::ostringstream msg;
        msg << "alpha + beta = " << alpha + beta << " <= -1/omega = " << -1.0 / omega
            << ": no admissible splitting exists";
        throw InfeasibleError(msg.str());
    }
    SplitConfig c;
    c.omega = omega;
    c.r = r;
    c.theta = opts.theta;
    c.q = zeros_if_empty(opts.q, r.size());
    const double half = opts.theta / (2.0 * omega);
    const double offset = opts.theta * (beta - alpha) / 2.0;
    c.sigma = half + offset;
    c.tau = half - offset;
    c.r_a = (c.q + r) / (2.0 * omega);
    c.r_b = c.r_a;
    c.gamma = opts.gamma;
    c.kappa = opts.kappa;
    c.tol = opts.tol;
    c.max_iter = opts.max_iter;

    const double low = std::min(c.sigma, c.tau);
    if (opts.gamma > 0.0 && !(1.0 + opts.gamma * low > 0.0)) {
        std::ostringstream msg;
        msg << "gamma = " << opts.gamma << " is incompatible with the balanced split (sigma = "
            << c.sigma << ", tau = " << c.tau << "): need gamma < " << -1.0 / low;
        throw ParameterError(msg.str());
    }
    require_valid(c, alpha, beta);
    return c;
}

SplitConfig swap_roles(const SplitConfig& c)
{
    SplitConfig s = c;
    std::swap(s.sigma, s.tau);
    std::swap(s.r_a, s.r_b);
    return s;
}

Vector shadow_point(const SplitConfig& c, const Operator& a, const Vector& x)
{
    const double d = 1.0 + c.gamma * c.sigma;
    const double mu = c.gamma * c.theta / d;
    return resolvent(a, mu, (c.theta / d) * x + mu * c.r_a - c.q);
}

namespace {

Vector shadow_point_b(const SplitConfig& c, const Operator& b, const Vector& x)
{
    const double d = 1.0 + c.gamma * c.tau;
    const double mu = c.gamma * c.theta / d;
    return resolvent(b, mu, (c.theta / d) * x + mu * c.r_b - c.q);
}

detail::Step general_step(const SplitConfig& c, const Operator& a, const Operator& b, const Vector& x)
{
    Vector pa = shadow_point(c, a, x);
    const Vector ja = (pa + c.q) / c.theta;
    const Vector ya = 2.0 * ja - x;
    const Vector pb = shadow_point_b(c, b, ya);
    const Vector jb = (pb + c.q) / c.theta;
    const Vector yb = 2.0 * jb - ya;
    return {(1.0 - c.kappa) * x + c.kappa * yb, std::move(pa)};
}

void require_engine_operator(const Operator& op)
{
    if (!op.maximal()) {
        throw DomainError(op.name() + ": the splitting iteration requires a maximal operator");
    }
}

} // namespace

Vector resolvent_A_sigma(const SplitConfig& c, const Operator& a, const Vector& x)
{
    return (shadow_point(c, a, x) + c.q) / c.theta;
}

Vector resolvent_B_tau(const SplitConfig& c, const Operator& b, const Vector& x)
{
    return (shadow_point_b(c, b, x) + c.q) / c.theta;
}

Vector dr_step(const SplitConfig& c, const Operator& a, const Operator& b, const Vector& x)
{
    require_dim(x, c.dim(), "dr_step");
    return general_step(c, a, b, x).next;
}

namespace detail {

SolveOutcome iterate(const StepFn& step, Vector x0, double tol, std::size_t max_iter)
{
    SolveOutcome out;
    auto& records = out.trace.records;
    Vector x = std::move(x0);
    Vector prev_shadow;
    std::size_t n = 0;
    bool converged = false;
    for (;; ++n) {
        Step s = step(x);
        const double fp = (s.next - x).norm();
        const double sh = n == 0 ? std::numeric_limits<double>::infinity()
                                 : (s.shadow - prev_shadow).norm();
        records.push_back({n, x, s.shadow, fp, sh});
        if (sh <= tol && fp <= tol) {
            converged = true;
            break;
        }
        if (n >= max_iter || !s.next.allFinite()) {
            break;
        }
        prev_shadow = std::move(s.shadow);
        x = std::move(s.next);
    }
    out.result.solution = records.back().p;
    out.result.governing = records.back().x;
    out.result.iterations = n;
    out.result.converged = converged;
    out.result.rate_estimate = estimate_rate(out.trace);
    return out;
}

} // namespace detail

SolveOutcome solve_resolvent(const Operator& a, const Operator& b, const SplitConfig& c,
                             const std::optional<Vector>& x0)
{
    require_engine_operator(a);
    require_engine_operator(b);
    require_valid(c, a.modulus(), b.modulus());
    Vector start = x0 ? *x0 : c.r;
    require_dim(start, c.dim(), "solve_resolvent x0");
    require_finite(start, "solve_resolvent x0");
    return detail::iterate([&](const Vector& x) { return general_step(c, a, b, x); },
                           std::move(start), c.tol, c.max_iter);
}

namespace {

void check_maxmono_inputs(const Operator& a, const Operator& b, double omega)
{
    for (const Operator* op : {&a, &b}) {
        if (op->modulus() != 0.0) {
            throw ParameterError(op->name() + ": maxmono_resolvent expects monotone operators "
                                 "(declared modulus 0); use solve_resolvent for other moduli");
        }
        require_engine_operator(*op);
    }
    if (!(omega > 0.5)) {
        std::ostringstream msg;
        msg << "maxmono_resolvent supports omega > 1/2 only (got " << omega
            << "); use solve_resolvent";
        throw ParameterError(msg.str());
    }
}

} // namespace

SplitConfig maxmono_config(double omega, const Vector& r, const MaxMonoOptions& opts)
{
    if (!(omega > 0.5)) {
        throw ParameterError("maxmono_config: omega must exceed 1/2");
    }
    if (!(opts.theta > 0.0)) {
        throw ParameterError("maxmono_config: theta must be positive");
    }
    SplitConfig c;
    c.omega = omega;
    c.r = r;
    c.theta = opts.theta;
    c.q = zeros_if_empty(opts.q, r.size());
    c.sigma = opts.theta / (2.0 * omega);
    c.tau = c.sigma;
    c.r_a = (c.q + r) / (2.0 * omega);
    c.r_b = c.r_a;
    c.gamma = 2.0 * omega / (opts.theta * (2.0 * omega - 1.0));
    c.kappa = opts.kappa;
    c.tol = opts.tol;
    c.max_iter = opts.max_iter;
    return c;
}

SolveOutcome maxmono_resolvent(const Operator& a, const Operator& b, double omega, const Vector& r,
                               const MaxMonoOptions& opts)
{
    check_maxmono_inputs(a, b, omega);
    // validates the remaining parameters through the equivalent general configuration
    require_valid(maxmono_config(omega, r, opts), 0.0, 0.0);

    const double theta = opts.theta;
    const Vector q = zeros_if_empty(opts.q, r.size());
    const double kappa = opts.kappa;
    const double keep = 1.0 - 1.0 / (2.0 * omega);
    const Vector anchor = r / (2.0 * omega);

    auto step = [&](const Vector& x) -> detail::Step {
        Vector pa = resolvent(a, 1.0, keep * (theta * x - q) + anchor);
        const Vector ya = 2.0 * (pa + q) / theta - x;
        const Vector pb = resolvent(b, 1.0, keep * (theta * ya - q) + anchor);
        const Vector yb = 2.0 * (pb + q) / theta - ya;
        return {(1.0 - kappa) * x + kappa * yb, std::move(pa)};
    };
    Vector start = opts.x0 ? *opts.x0 : r;
    require_dim(start, r.size(), "maxmono_resolvent x0");
    require_finite(start, "maxmono_resolvent x0");
    return detail::iterate(step, std::move(start), opts.tol, opts.max_iter);
}

SplitConfig aamr_params(double gamma, double eta, const Vector& r, double kappa, double tol,
                        std::size_t max_iter)
{
    if (!(eta > 0.0 && eta < 1.0)) {
        throw ParameterError("aamr_params: eta must lie in (0, 1)");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ParameterError("aamr_params: gamma must be positive");
    }
    SplitConfig c;
    c.omega = gamma / (2.0 * (1.0 - eta));
    c.r = r;
    c.theta = 1.0 / eta;
    c.q = -r;
    c.sigma = (1.0 - eta) / (gamma * eta);
    c.tau = c.sigma;
    c.r_a = Vector::Zero(r.size());
    c.r_b = Vector::Zero(r.size());
    c.gamma = gamma;
    c.kappa = kappa;
    c.tol = tol;
    c.max_iter = max_iter;
    return c;
}

AveragedParams avg_variant_params(double eta, const Vector& r)
{
    if (!(eta > 0.0 && eta < 1.0)) {
        throw ParameterError("avg_variant_params: eta must lie in (0, 1)");
    }
    return {1.0 / (2.0 * (1.0 - eta)), 1.0 / eta, ((1.0 - eta) / eta) * r};
}

std::optional<RateFit> fit_residual_decay(const IterationTrace& t, std::size_t burn_in)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& rec : t.records) {
        if (rec.n < burn_in || !(rec.fp_residual > 0.0) || !std::isfinite(rec.fp_residual)) {
            continue;
        }
        xs.push_back(static_cast<double>(rec.n));
        ys.push_back(std::log(rec.fp_residual));
    }
    const std::size_t m = xs.size();
    if (m < 10) {
        return std::nullopt;
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    RateFit fit;
    fit.samples = m;
    fit.slope = sxy / sxx;
    fit.rate = std::exp(fit.slope);
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = syy > 0.0 ? 1.0 - std::max(ss_res, 0.0) / syy : 1.0;
    return fit;
}

std::optional<double> estimate_rate(const IterationTrace& t, std::size_t burn_in)
{
    auto fit = fit_residual_decay(t, burn_in);
    if (!fit || !(fit->rate < 1.0)) {
        return std::nullopt;
    }
    return fit->rate;
}

} // namespace rsplit
