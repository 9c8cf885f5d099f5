#include "rsplit/errors.hpp"
#include "rsplit/sets.hpp"
#include "rsplit/verification.hpp"

#include <doctest.h>

#include <limits>
#include <random>
#include <vector>

using namespace rsplit;

namespace {

Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) {
        v(i++) = x;
    }
    return v;
}

std::vector<ConvexSet> catalog(std::mt19937_64& rng, Eigen::Index dim)
{
    Matrix g = Matrix::Zero(1, dim);
    g(0, 0) = 1.0;
    g(0, dim - 1) += 2.0;
    return {
        halfspace(random_vector(rng, dim), 0.3),
        hyperplane(random_vector(rng, dim), -0.4),
        ball(random_vector(rng, dim), 1.2),
        box(-Vector::Ones(dim), 0.5 * Vector::Ones(dim)),
        affine_subspace(g, vec({0.7})),
    };
}

} // namespace

TEST_CASE("closed-form projections")
{
    CHECK(halfspace(vec({1, 0}), 0.0).project(vec({2, 1})).isApprox(vec({0, 1})));
    CHECK(halfspace(vec({1, 0}), 0.0).project(vec({-2, 1})) == vec({-2, 1}));
    CHECK(hyperplane(vec({0, 2}), 2.0).project(vec({3, 5})).isApprox(vec({3, 1})));
    CHECK(ball(vec({0, 0}), 1.0).project(vec({3, 4})).isApprox(vec({0.6, 0.8})));
    CHECK(ball(vec({0, 0}), 1.0).project(vec({0.1, 0.2})) == vec({0.1, 0.2}));
    CHECK(ball(vec({1, 1}), 0.0).project(vec({5, 5})) == vec({1, 1}));
    CHECK(box(vec({0, 0}), vec({1, 1})).project(vec({-1, 0.5})) == vec({0, 0.5}));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(box(vec({0, -inf}), vec({inf, 1})).project(vec({-3, 7})) == vec({0, 1}));

    Matrix g(1, 3);
    g << 1, 1, 1;
    const Vector p = affine_subspace(g, vec({3})).project(vec({0, 0, 0}));
    CHECK(p.isApprox(vec({1, 1, 1})));
}

TEST_CASE("construction errors")
{
    CHECK_THROWS_AS(halfspace(vec({0, 0}), 1.0), ParameterError);
    CHECK_THROWS_AS(ball(vec({0, 0}), -1.0), ParameterError);
    CHECK_THROWS_AS(box(vec({1, 0}), vec({0, 0})), ParameterError);
    CHECK_THROWS_AS(box(vec({0}), vec({0, 0})), DimensionError);
    Matrix g(2, 2);
    g << 1, 1, 2, 2;
    CHECK_THROWS_AS(affine_subspace(g, vec({1, 2})), ParameterError);
    CHECK_THROWS_AS(ball(vec({0, 0}), 1.0).project(vec({1, 2, 3})), DimensionError);
}

TEST_CASE("contains and distance")
{
    const ConvexSet b = ball(vec({0, 0}), 1.0);
    CHECK(b.contains(vec({0.5, 0.5})));
    CHECK_FALSE(b.contains(vec({2, 0})));
    CHECK(b.distance(vec({3, 0})) == doctest::Approx(2.0));
    CHECK(project_set(b, vec({2, 0})).isApprox(vec({1, 0})));
}

TEST_CASE("projector certificates on random samples")
{
    std::mt19937_64 rng(42);
    for (Eigen::Index dim : {1, 2, 3, 5}) {
        for (const ConvexSet& c : catalog(rng, dim)) {
            CAPTURE(c.name());
            for (int i = 0; i < 250; ++i) {
                const Vector x = random_vector(rng, dim, 3.0);
                const Vector y = random_vector(rng, dim, 3.0);
                const Vector px = c.project(x);
                const Vector py = c.project(y);
                // idempotence
                CHECK((c.project(px) - px).norm() <= 1e-12 * (1.0 + px.norm()));
                // firm nonexpansiveness
                CHECK((px - py).squaredNorm() <= (px - py).dot(x - y) + 1e-9);
                // variational inequality against another point of the set
                CHECK((x - px).dot(py - px) <= 1e-9);
            }
        }
    }
}
