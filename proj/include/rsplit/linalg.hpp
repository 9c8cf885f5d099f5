#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace rsplit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

double inner(const Vector& x, const Vector& y);
double norm(const Vector& x);

/// Solve M x = b for symmetric positive-definite M by Cholesky factorization.
/// Throws NotPositiveDefiniteError when M is not symmetric or the
/// factorization breaks down.
Vector solve_spd(const Matrix& m, const Vector& b);

/// Throws DimensionError naming `what` unless x.size() == dim.
void require_dim(const Vector& x, Eigen::Index dim, std::string_view what);

/// Throws DomainError naming `what` if any coordinate is NaN or infinite.
void require_finite(const Vector& x, std::string_view what);

bool all_finite(const Vector& x);

/// x -> scale * x + shift
class AffineMap {
public:
    AffineMap(double scale, Vector shift);

    Vector apply(const Vector& x) const;
    Vector operator()(const Vector& x) const { return apply(x); }

    double scale() const { return scale_; }
    const Vector& shift() const { return shift_; }

private:
    double scale_;
    Vector shift_;
};

// Extreme eigenvalues of a symmetric matrix.
double min_eigenvalue(const Matrix& m);
double max_abs_eigenvalue(const Matrix& m);

bool is_symmetric(const Matrix& m, double tol = 1e-12);

} // namespace rsplit
