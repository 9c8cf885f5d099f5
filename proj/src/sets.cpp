#include "rsplit/sets.hpp"

#include "rsplit/errors.hpp"

#include <cmath>
#include <memory>

namespace rsplit {

ConvexSet::ConvexSet(std::string name, Eigen::Index dim, ProjectFn project)
    : name_(std::move(name))
    , dim_(dim)
    , project_(std::move(project))
{
    if (dim_ <= 0) {
        throw ParameterError(name_ + ": dimension must be positive");
    }
}

Vector ConvexSet::project(const Vector& x) const
{
    require_dim(x, dim_, name_ + " projection");
    return project_(x);
}

double ConvexSet::distance(const Vector& x) const { return (x - project(x)).norm(); }

bool ConvexSet::contains(const Vector& x, double tol) const { return distance(x) <= tol; }

Vector project_set(const ConvexSet& c, const Vector& x) { return c.project(x); }

namespace {

void require_nonzero_normal(const Vector& a, const char* what)
{
    if (a.size() == 0) {
        throw DimensionError(std::string(what) + ": empty normal vector");
    }
    require_finite(a, what);
    if (a.squaredNorm() == 0.0) {
        throw ParameterError(std::string(what) + ": normal vector must be nonzero");
    }
}

} // namespace

ConvexSet halfspace(Vector a, double b)
{
    require_nonzero_normal(a, "halfspace");
    const auto dim = a.size();
    const double aa = a.squaredNorm();
    return ConvexSet("halfspace", dim, [a = std::move(a), b, aa](const Vector& x) -> Vector {
        const double excess = a.dot(x) - b;
        if (excess <= 0.0) {
            return x;
        }
        return x - (excess / aa) * a;
    });
}

ConvexSet hyperplane(Vector a, double b)
{
    require_nonzero_normal(a, "hyperplane");
    const auto dim = a.size();
    const double aa = a.squaredNorm();
    return ConvexSet("hyperplane", dim, [a = std::move(a), b, aa](const Vector& x) -> Vector {
        return x - ((a.dot(x) - b) / aa) * a;
    });
}

ConvexSet ball(Vector center, double radius)
{
    if (center.size() == 0) {
        throw DimensionError("ball: empty center");
    }
    require_finite(center, "ball center");
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw ParameterError("ball: radius must be finite and nonnegative");
    }
    const auto dim = center.size();
    return ConvexSet("ball", dim, [c = std::move(center), radius](const Vector& x) -> Vector {
        const Vector d = x - c;
        const double dist = d.norm();
        if (dist <= radius) {
            return x;
        }
        return c + (radius / dist) * d;
    });
}

ConvexSet box(Vector lo, Vector hi)
{
    if (lo.size() != hi.size()) {
        throw DimensionError("box: lower and upper bounds differ in dimension");
    }
    if (lo.size() == 0) {
        throw DimensionError("box: empty bounds");
    }
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
        if (std::isnan(lo[i]) || std::isnan(hi[i]) || lo[i] > hi[i]) {
            throw ParameterError("box: lower bound exceeds upper bound at coordinate "
                                 + std::to_string(i));
        }
    }
    const auto dim = lo.size();
    return ConvexSet("box", dim, [lo = std::move(lo), hi = std::move(hi)](const Vector& x) -> Vector {
        return x.cwiseMax(lo).cwiseMin(hi);
    });
}

ConvexSet affine_subspace(Matrix g, Vector h)
{
    if (g.rows() != h.size()) {
        throw DimensionError("affine_subspace: G has " + std::to_string(g.rows())
                             + " rows but h has " + std::to_string(h.size()) + " entries");
    }
    if (g.rows() == 0 || g.cols() == 0) {
        throw DimensionError("affine_subspace: empty constraint matrix");
    }
    if (!g.allFinite() || !h.allFinite()) {
        throw DomainError("affine_subspace: non-finite constraint data");
    }
    // Orthonormal basis Q of row(G) and the minimum-norm solution x0 of G x = h;
    // then P(x) = x - Q Q^T (x - x0).
    Eigen::ColPivHouseholderQR<Matrix> qr(g.transpose());
    if (qr.rank() < g.rows()) {
        throw ParameterError("affine_subspace: constraint matrix must have full row rank");
    }
    const Matrix q = qr.householderQ() * Matrix::Identity(g.cols(), g.rows());
    const Vector x0 = g.transpose() * solve_spd(g * g.transpose(), h);
    const auto dim = g.cols();
    return ConvexSet("affine_subspace", dim, [q, x0](const Vector& x) -> Vector {
        return x - q * (q.transpose() * (x - x0));
    });
}

} // namespace rsplit
