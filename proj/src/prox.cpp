#include "rsplit/prox.hpp"

#include "rsplit/errors.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace rsplit {

ProxFunction::ProxFunction(std::string name, ProxFn prox, double modulus, ValueFn value,
                           GradientFn gradient, std::optional<double> gradient_lipschitz,
                           std::optional<Eigen::Index> dim)
    : name_(std::move(name))
    , prox_(std::move(prox))
    , modulus_(modulus)
    , value_(std::move(value))
    , gradient_(std::move(gradient))
    , gradient_lipschitz_(gradient_lipschitz)
    , dim_(dim)
{
    if (!prox_) {
        throw ParameterError(name_ + ": missing prox evaluator");
    }
    if (!std::isfinite(modulus_)) {
        throw ParameterError(name_ + ": modulus must be finite");
    }
}

double ProxFunction::value(const Vector& x) const
{
    if (!value_) {
        throw DomainError(name_ + ": no value evaluator");
    }
    if (dim_) {
        require_dim(x, *dim_, name_);
    }
    return value_(x);
}

Vector ProxFunction::gradient(const Vector& x) const
{
    if (!gradient_) {
        throw DomainError(name_ + ": not differentiable");
    }
    if (dim_) {
        require_dim(x, *dim_, name_);
    }
    return gradient_(x);
}

Vector prox(const ProxFunction& f, double gamma, const Vector& x)
{
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ParameterError(f.name() + ": prox parameter gamma must be positive");
    }
    if (!(1.0 + gamma * f.modulus() > 0.0)) {
        std::ostringstream msg;
        msg << f.name() << ": prox is ill-posed, 1 + gamma*modulus = " << 1.0 + gamma * f.modulus()
            << " <= 0";
        throw DomainError(msg.str());
    }
    if (f.dim()) {
        require_dim(x, *f.dim(), f.name() + " prox");
    }
    require_finite(x, f.name() + " prox argument");
    return f.eval_prox(gamma, x);
}

ProxFunction zero_function()
{
    return ProxFunction(
        "zero", [](double, const Vector& x) { return x; }, 0.0, [](const Vector&) { return 0.0; },
        [](const Vector& x) -> Vector { return Vector::Zero(x.size()); }, 0.0);
}

ProxFunction quadratic(Matrix m, Vector b, double c0)
{
    if (m.rows() != m.cols() || m.rows() != b.size()) {
        throw DimensionError("quadratic: matrix and linear term dimensions disagree");
    }
    if (m.rows() == 0) {
        throw DimensionError("quadratic: empty matrix");
    }
    if (!m.allFinite() || !b.allFinite() || !std::isfinite(c0)) {
        throw DomainError("quadratic: non-finite data");
    }
    if (!is_symmetric(m)) {
        throw ParameterError("quadratic: matrix must be symmetric");
    }
    const double alpha = min_eigenvalue(m);
    const double lip = max_abs_eigenvalue(m);
    const auto dim = m.rows();
    auto mm = std::make_shared<const Matrix>(std::move(m));
    auto bb = std::make_shared<const Vector>(std::move(b));
    return ProxFunction(
        "quadratic",
        [mm, bb](double gamma, const Vector& x) -> Vector {
            const Matrix sys = Matrix::Identity(mm->rows(), mm->cols()) + gamma * *mm;
            return solve_spd(sys, x - gamma * *bb);
        },
        alpha, [mm, bb, c0](const Vector& x) { return 0.5 * x.dot(*mm * x) + bb->dot(x) + c0; },
        [mm, bb](const Vector& x) -> Vector { return *mm * x + *bb; }, lip, dim);
}

ProxFunction neg_sq_norm(double c)
{
    if (!std::isfinite(c)) {
        throw ParameterError("neg_sq_norm: c must be finite");
    }
    return ProxFunction(
        "neg_sq_norm", [c](double gamma, const Vector& x) -> Vector { return x / (1.0 - gamma * c); },
        -c, [c](const Vector& x) { return -0.5 * c * x.squaredNorm(); },
        [c](const Vector& x) -> Vector { return -c * x; }, std::abs(c));
}

ProxFunction one_norm(double w)
{
    if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ParameterError("one_norm: weight must be finite and nonnegative");
    }
    return ProxFunction(
        "one_norm",
        [w](double gamma, const Vector& x) -> Vector {
            const double t = gamma * w;
            return x.unaryExpr([t](double v) {
                const double mag = std::abs(v) - t;
                return mag > 0.0 ? std::copysign(mag, v) : 0.0;
            });
        },
        0.0, [w](const Vector& x) { return w * x.lpNorm<1>(); });
}

ProxFunction indicator(const ConvexSet& c)
{
    return ProxFunction(
        "indicator(" + c.name() + ")", [c](double, const Vector& x) { return c.project(x); }, 0.0,
        [c](const Vector& x) {
            return c.contains(x, 1e-12) ? 0.0 : std::numeric_limits<double>::infinity();
        },
        {}, std::nullopt, c.dim());
}

SolveOutcome prox_of_sum(const ProxFunction& f, const ProxFunction& g, double omega, const Vector& r,
                         const std::optional<SplitConfig>& config, const std::optional<Vector>& x0)
{
    const SplitConfig c = config ? *config : balanced_config(omega, r, f.modulus(), g.modulus());
    if (config && c.omega != omega) {
        throw ParameterError("prox_of_sum: configuration omega differs from the requested omega");
    }
    return solve_resolvent(subdifferential_of(f), subdifferential_of(g), c, x0);
}

} // namespace rsplit
