#pragma once

#include "rsplit/engine.hpp"
#include "rsplit/linalg.hpp"
#include "rsplit/sets.hpp"

#include <functional>
#include <optional>
#include <string>

namespace rsplit {

/// Proper lsc alpha-convex function known through its proximity operator
///   Prox_{gamma f}(x) = argmin_z f(z) + |z - x|^2 / (2 gamma),
/// which is single-valued with full domain whenever 1 + gamma alpha > 0.
class ProxFunction {
public:
    using ProxFn = std::function<Vector(double gamma, const Vector& x)>;
    using ValueFn = std::function<double(const Vector& x)>;
    using GradientFn = std::function<Vector(const Vector& x)>;

    ProxFunction(std::string name, ProxFn prox, double modulus, ValueFn value = {},
                 GradientFn gradient = {}, std::optional<double> gradient_lipschitz = std::nullopt,
                 std::optional<Eigen::Index> dim = std::nullopt);

    const std::string& name() const { return name_; }
    double modulus() const { return modulus_; }
    std::optional<Eigen::Index> dim() const { return dim_; }
    std::optional<double> gradient_lipschitz() const { return gradient_lipschitz_; }

    bool has_value() const { return static_cast<bool>(value_); }
    bool has_gradient() const { return static_cast<bool>(gradient_); }

    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;

    /// Raw prox evaluation; rsplit::prox adds the well-posedness checks.
    Vector eval_prox(double gamma, const Vector& x) const { return prox_(gamma, x); }

private:
    std::string name_;
    ProxFn prox_;
    double modulus_;
    ValueFn value_;
    GradientFn gradient_;
    std::optional<double> gradient_lipschitz_;
    std::optional<Eigen::Index> dim_;
};

/// Prox_{gamma f}(x). Throws DomainError when 1 + gamma * modulus <= 0.
Vector prox(const ProxFunction& f, double gamma, const Vector& x);

// Catalog ---------------------------------------------------------------

/// f = 0 in any dimension.
ProxFunction zero_function();
/// f(x) = x^T M x / 2 + <b, x> + c0, M symmetric; modulus lambda_min(M).
ProxFunction quadratic(Matrix m, Vector b, double c0 = 0.0);
/// f(x) = -(c/2)|x|^2; modulus -c.
ProxFunction neg_sq_norm(double c);
/// f(x) = w |x|_1, w >= 0; prox is soft thresholding at gamma w.
ProxFunction one_norm(double w = 1.0);
/// Indicator of C; prox is the projector onto C.
ProxFunction indicator(const ConvexSet& c);

/// Prox_{omega(f+g)}(r) through the splitting iteration applied to the
/// subdifferentials of f and g. Without a configuration the balanced split
/// (theta = 1, q = 0, gamma = 1, kappa = 1/2) is used.
SolveOutcome prox_of_sum(const ProxFunction& f, const ProxFunction& g, double omega, const Vector& r,
                         const std::optional<SplitConfig>& config = std::nullopt,
                         const std::optional<Vector>& x0 = std::nullopt);

} // namespace rsplit
