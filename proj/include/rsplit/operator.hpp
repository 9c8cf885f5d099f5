#pragma once

#include "rsplit/linalg.hpp"

#include <functional>
#include <optional>
#include <string>

namespace rsplit {

class ConvexSet;
class ProxFunction;

/// A (possibly set-valued) operator A: X => X accessed only through its
/// resolvents J_{gamma A} = (Id + gamma A)^{-1}.
///
/// `modulus` is the declared monotonicity constant alpha:
///   <x - y, u - v> >= alpha |x - y|^2  for u in Ax, v in Ay.
/// A negative modulus declares a weakly monotone operator. Moduli are
/// metadata supplied by the constructor; nothing here proves them.
///
/// When the operator is single-valued an `apply` evaluator may be attached;
/// it is used only for certificates (resolvent identity, residuals), never
/// by the splitting iteration itself.
class Operator {
public:
    using ResolventFn = std::function<Vector(double gamma, const Vector& x)>;
    using ApplyFn = std::function<Vector(const Vector& x)>;

    Operator(std::string name,
             ResolventFn resolvent,
             double modulus,
             std::optional<double> lipschitz = std::nullopt,
             bool maximal = true,
             ApplyFn apply = {},
             std::optional<Eigen::Index> dim = std::nullopt);

    const std::string& name() const { return name_; }
    double modulus() const { return modulus_; }
    std::optional<double> lipschitz() const { return lipschitz_; }
    bool maximal() const { return maximal_; }
    /// Fixed ambient dimension, if the operator carries one.
    std::optional<Eigen::Index> dim() const { return dim_; }

    bool single_valued() const { return static_cast<bool>(apply_); }
    /// A(x) for single-valued operators; throws DomainError otherwise.
    Vector apply(const Vector& x) const;

    /// Raw resolvent call without precondition checks. Prefer rsplit::resolvent.
    Vector eval_resolvent(double gamma, const Vector& x) const { return resolvent_(gamma, x); }

private:
    std::string name_;
    ResolventFn resolvent_;
    double modulus_;
    std::optional<double> lipschitz_;
    bool maximal_;
    ApplyFn apply_;
    std::optional<Eigen::Index> dim_;
};

/// J_{gamma A}(x). Requires gamma > 0 and, for maximal A, 1 + gamma*alpha > 0.
Vector resolvent(const Operator& a, double gamma, const Vector& x);

/// R_{gamma A}(x) = 2 J_{gamma A}(x) - x.
Vector reflected_resolvent(const Operator& a, double gamma, const Vector& x);

/// Modulus of A o (theta Id - q) + sigma Id - r for alpha-monotone A.
double transformed_modulus(double alpha, double theta, double sigma);

/// The operator  A o (theta Id - q) + sigma Id - r_shift.
struct TransformedOperator {
    Operator base;
    double theta = 1.0;
    Vector q;
    double sigma = 0.0;
    Vector r_shift;

    double modulus() const { return transformed_modulus(base.modulus(), theta, sigma); }
};

/// Resolvent of the transformed operator expressed through a single
/// resolvent of the base:
///
///   J_{gamma T}(x) = (1/theta) ( J_{mu A}( (theta/d) x + mu r_shift - q ) + q ),
///   d = 1 + gamma sigma,  mu = gamma theta / d.
///
/// d < 0 is accepted and the formula applied as written.
Vector transformed_resolvent(const TransformedOperator& t, double gamma, const Vector& x);

/// T(x) when the base is single-valued.
Vector transformed_apply(const TransformedOperator& t, const Vector& x);

// Catalog ---------------------------------------------------------------

Operator zero_operator();
/// A = lambda Id.
Operator scaled_identity(double lambda);
/// A(x) = M x + b, M symmetric. Modulus is lambda_min(M), Lipschitz constant |M|_2.
/// A smaller declared modulus may be passed (any alpha <= lambda_min(M) is valid),
/// e.g. 0 to present a positive semidefinite M as merely monotone.
Operator affine_quadratic(Matrix m, Vector b, std::optional<double> declared_modulus = std::nullopt);
/// Frechet subdifferential of f; its resolvent is the prox of f.
Operator subdifferential_of(const ProxFunction& f);
/// Normal cone of C; every resolvent is the projector onto C.
Operator normal_cone_of(const ConvexSet& c);

} // namespace rsplit
