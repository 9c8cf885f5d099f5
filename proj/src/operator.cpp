#include "rsplit/operator.hpp"

#include "rsplit/errors.hpp"
#include "rsplit/prox.hpp"
#include "rsplit/sets.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace rsplit {

Operator::Operator(std::string name,
                   ResolventFn resolvent,
                   double modulus,
                   std::optional<double> lipschitz,
                   bool maximal,
                   ApplyFn apply,
                   std::optional<Eigen::Index> dim)
    : name_(std::move(name))
    , resolvent_(std::move(resolvent))
    , modulus_(modulus)
    , lipschitz_(lipschitz)
    , maximal_(maximal)
    , apply_(std::move(apply))
    , dim_(dim)
{
    if (!resolvent_) {
        throw ParameterError(name_ + ": missing resolvent evaluator");
    }
    if (!std::isfinite(modulus_)) {
        throw ParameterError(name_ + ": modulus must be finite");
    }
    if (lipschitz_ && !(*lipschitz_ >= 0.0 && std::isfinite(*lipschitz_))) {
        throw ParameterError(name_ + ": Lipschitz constant must be finite and nonnegative");
    }
}

Vector Operator::apply(const Vector& x) const
{
    if (!apply_) {
        throw DomainError(name_ + ": operator has no single-valued evaluator");
    }
    if (dim_) {
        require_dim(x, *dim_, name_);
    }
    return apply_(x);
}

Vector resolvent(const Operator& a, double gamma, const Vector& x)
{
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        std::ostringstream msg;
        msg << a.name() << ": resolvent parameter gamma must be positive, got " << gamma;
        throw ParameterError(msg.str());
    }
    if (a.maximal() && !(1.0 + gamma * a.modulus() > 0.0)) {
        std::ostringstream msg;
        msg << a.name() << ": 1 + gamma*modulus = " << 1.0 + gamma * a.modulus()
            << " is not positive; resolvent is not single-valued";
        throw ParameterError(msg.str());
    }
    if (a.dim()) {
        require_dim(x, *a.dim(), a.name() + " resolvent");
    }
    require_finite(x, a.name() + " resolvent argument");
    Vector p = a.eval_resolvent(gamma, x);
    if (p.size() != x.size()) {
        throw DimensionError(a.name() + ": resolvent changed the dimension");
    }
    require_finite(p, a.name() + " resolvent value");
    return p;
}

Vector reflected_resolvent(const Operator& a, double gamma, const Vector& x)
{
    return 2.0 * resolvent(a, gamma, x) - x;
}

double transformed_modulus(double alpha, double theta, double sigma)
{
    return theta * alpha + sigma;
}

Vector transformed_resolvent(const TransformedOperator& t, double gamma, const Vector& x)
{
    if (!(t.theta > 0.0)) {
        throw ParameterError("transformed resolvent: theta must be positive");
    }
    if (!(gamma > 0.0)) {
        throw ParameterError("transformed resolvent: gamma must be positive");
    }
    const double d = 1.0 + gamma * t.sigma;
    if (d == 0.0) {
        throw ParameterError("transformed resolvent: 1 + gamma*sigma must be nonzero");
    }
    require_dim(t.q, x.size(), "transformed resolvent q");
    require_dim(t.r_shift, x.size(), "transformed resolvent shift");
    if (t.base.maximal() && !(1.0 + gamma * t.modulus() > 0.0)) {
        throw ParameterError("transformed resolvent: 1 + gamma*(theta*alpha + sigma) must be positive");
    }
    const double mu = gamma * t.theta / d;
    const Vector arg = (t.theta / d) * x + mu * t.r_shift - t.q;
    const Vector inner_point = resolvent(t.base, mu, arg);
    return (inner_point + t.q) / t.theta;
}

Vector transformed_apply(const TransformedOperator& t, const Vector& x)
{
    return t.base.apply(t.theta * x - t.q) + t.sigma * x - t.r_shift;
}

Operator zero_operator()
{
    return Operator(
        "zero", [](double, const Vector& x) { return x; }, 0.0, 0.0, true,
        [](const Vector& x) -> Vector { return Vector::Zero(x.size()); });
}

Operator scaled_identity(double lambda)
{
    if (!std::isfinite(lambda)) {
        throw ParameterError("scaled_identity: lambda must be finite");
    }
    return Operator(
        "scaled_identity",
        [lambda](double gamma, const Vector& x) -> Vector { return x / (1.0 + gamma * lambda); },
        lambda, std::abs(lambda), true, [lambda](const Vector& x) -> Vector { return lambda * x; });
}

Operator affine_quadratic(Matrix m, Vector b, std::optional<double> declared_modulus)
{
    if (m.rows() != m.cols() || m.rows() != b.size()) {
        throw DimensionError("affine_quadratic: matrix and offset dimensions disagree");
    }
    if (m.rows() == 0) {
        throw DimensionError("affine_quadratic: empty matrix");
    }
    if (!m.allFinite() || !b.allFinite()) {
        throw DomainError("affine_quadratic: non-finite data");
    }
    if (!is_symmetric(m)) {
        throw ParameterError("affine_quadratic: matrix must be symmetric");
    }
    double alpha = min_eigenvalue(m);
    if (declared_modulus) {
        if (*declared_modulus > alpha + 1e-12 * std::max(1.0, std::abs(alpha))) {
            std::ostringstream msg;
            msg << "affine_quadratic: declared modulus " << *declared_modulus
                << " exceeds the smallest eigenvalue " << alpha;
            throw ParameterError(msg.str());
        }
        alpha = *declared_modulus;
    }
    const double lip = max_abs_eigenvalue(m);
    const auto dim = m.rows();
    auto mm = std::make_shared<const Matrix>(std::move(m));
    auto bb = std::make_shared<const Vector>(std::move(b));
    return Operator(
        "affine_quadratic",
        [mm, bb](double gamma, const Vector& x) -> Vector {
            const Matrix sys = Matrix::Identity(mm->rows(), mm->cols()) + gamma * *mm;
            return solve_spd(sys, x - gamma * *bb);
        },
        alpha, lip, true, [mm, bb](const Vector& x) -> Vector { return *mm * x + *bb; }, dim);
}

Operator subdifferential_of(const ProxFunction& f)
{
    Operator::ApplyFn apply;
    if (f.has_gradient()) {
        apply = [f](const Vector& x) { return f.gradient(x); };
    }
    return Operator(
        "subdifferential(" + f.name() + ")",
        [f](double gamma, const Vector& x) { return f.eval_prox(gamma, x); }, f.modulus(),
        f.gradient_lipschitz(), true, std::move(apply), f.dim());
}

Operator normal_cone_of(const ConvexSet& c)
{
    return Operator(
        "normal_cone(" + c.name() + ")", [c](double, const Vector& x) { return c.project(x); }, 0.0,
        std::nullopt, true, {}, c.dim());
}

} // namespace rsplit
