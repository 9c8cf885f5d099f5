#include "rsplit/linalg.hpp"

#include "rsplit/errors.hpp"

#include <cmath>
#include <string>

namespace rsplit {

double inner(const Vector& x, const Vector& y)
{
    if (x.size() != y.size()) {
        throw DimensionError("inner: dimension mismatch (" + std::to_string(x.size()) + " vs "
                             + std::to_string(y.size()) + ")");
    }
    return x.dot(y);
}

double norm(const Vector& x) { return x.norm(); }

bool is_symmetric(const Matrix& m, double tol)
{
    if (m.rows() != m.cols()) {
        return false;
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Vector solve_spd(const Matrix& m, const Vector& b)
{
    if (m.rows() != m.cols() || m.rows() != b.size()) {
        throw DimensionError("solve_spd: matrix is " + std::to_string(m.rows()) + "x"
                             + std::to_string(m.cols()) + ", right-hand side has "
                             + std::to_string(b.size()) + " entries");
    }
    if (m.size() == 0) {
        return b;
    }
    if (!is_symmetric(m)) {
        throw NotPositiveDefiniteError("solve_spd: matrix is not symmetric");
    }
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefiniteError("solve_spd: matrix is not positive definite");
    }
    Vector x = llt.solve(b);
    // one step of iterative refinement keeps the residual near machine precision
    // for moderately conditioned systems
    x += llt.solve(b - m * x);
    return x;
}

void require_dim(const Vector& x, Eigen::Index dim, std::string_view what)
{
    if (x.size() != dim) {
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(dim)
                             + ", got " + std::to_string(x.size()));
    }
}

bool all_finite(const Vector& x) { return x.allFinite(); }

void require_finite(const Vector& x, std::string_view what)
{
    if (!x.allFinite()) {
        throw DomainError(std::string(what) + ": non-finite coordinate");
    }
}

AffineMap::AffineMap(double scale, Vector shift)
    : scale_(scale)
    , shift_(std::move(shift))
{
}

Vector AffineMap::apply(const Vector& x) const
{
    require_dim(x, shift_.size(), "AffineMap::apply");
    if (scale_ == 0.0) {
        return shift_;
    }
    if (scale_ == 1.0) {
        return x + shift_;
    }
    if (scale_ == -1.0) {
        return shift_ - x;
    }
    return scale_ * x + shift_;
}

double min_eigenvalue(const Matrix& m)
{
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_abs_eigenvalue(const Matrix& m)
{
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace rsplit
