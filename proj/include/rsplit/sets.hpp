#pragma once

#include "rsplit/linalg.hpp"

#include <functional>
#include <string>

namespace rsplit {

/// Closed convex set with an exact metric projector.
///
/// Instances are immutable and cheap to copy (the projector closure is shared).
class ConvexSet {
public:
    using ProjectFn = std::function<Vector(const Vector&)>;

    ConvexSet(std::string name, Eigen::Index dim, ProjectFn project);

    /// Nearest point of the set to x.
    Vector project(const Vector& x) const;

    /// True when x lies within distance tol of the set.
    bool contains(const Vector& x, double tol = 1e-9) const;

    double distance(const Vector& x) const;

    Eigen::Index dim() const { return dim_; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    Eigen::Index dim_;
    ProjectFn project_;
};

Vector project_set(const ConvexSet& c, const Vector& x);

/// {x : <a, x> <= b}
ConvexSet halfspace(Vector a, double b);
/// {x : <a, x> = b}
ConvexSet hyperplane(Vector a, double b);
ConvexSet ball(Vector center, double radius);
/// {x : lo <= x <= hi} componentwise; infinite bounds are allowed.
ConvexSet box(Vector lo, Vector hi);
/// {x : G x = h}; G must have full row rank.
ConvexSet affine_subspace(Matrix g, Vector h);

} // namespace rsplit
