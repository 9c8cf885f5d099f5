#include "rsplit/errors.hpp"
#include "rsplit/linalg.hpp"
#include "rsplit/verification.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

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

} // namespace

TEST_CASE("inner and norm")
{
    CHECK(inner(vec({1, 2}), vec({3, 4})) == doctest::Approx(11.0));
    CHECK(norm(vec({3, 4})) == doctest::Approx(5.0));
    CHECK(norm(Vector::Zero(4)) == 0.0);
    CHECK_THROWS_AS(inner(vec({1, 2}), vec({1, 2, 3})), DimensionError);
}

TEST_CASE("Cauchy-Schwarz on random pairs")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Vector x = random_vector(rng, 6, 3.0);
        const Vector y = random_vector(rng, 6, 3.0);
        CHECK(std::abs(inner(x, y)) <= norm(x) * norm(y) * (1.0 + 1e-15));
    }
}

TEST_CASE("solve_spd")
{
    Matrix m(2, 2);
    m << 4, 1, 1, 3;
    const Vector x = solve_spd(m, vec({1, 2}));
    CHECK(x(0) == doctest::Approx(1.0 / 11.0));
    CHECK(x(1) == doctest::Approx(7.0 / 11.0));

    SUBCASE("random SPD systems have tiny residuals")
    {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 100; ++i) {
            const auto dim = 1 + i % 10;
            const Matrix a = random_symmetric(rng, dim, 0.1, 10.0);
            const Vector b = random_vector(rng, dim);
            const Vector sol = solve_spd(a, b);
            CHECK(norm(a * sol - b) <= 1e-12 * (1.0 + norm(b)));
        }
    }
    SUBCASE("failures")
    {
        Matrix indefinite(2, 2);
        indefinite << 1, 0, 0, -1;
        CHECK_THROWS_AS(solve_spd(indefinite, vec({1, 1})), NotPositiveDefiniteError);
        Matrix asym(2, 2);
        asym << 2, 1, 0, 2;
        CHECK_THROWS_AS(solve_spd(asym, vec({1, 1})), NotPositiveDefiniteError);
        CHECK_THROWS_AS(solve_spd(Matrix::Identity(2, 2), vec({1, 1, 1})), DimensionError);
    }
}

TEST_CASE("dimension and finiteness guards")
{
    CHECK_NOTHROW(require_dim(vec({1, 2}), 2, "x"));
    CHECK_THROWS_AS(require_dim(vec({1, 2}), 3, "x"), DimensionError);
    Vector bad = vec({1, std::numeric_limits<double>::quiet_NaN()});
    CHECK_FALSE(all_finite(bad));
    CHECK_THROWS_AS(require_finite(bad, "x"), DomainError);
    CHECK(all_finite(vec({1, 2})));
}

TEST_CASE("AffineMap")
{
    const AffineMap f(2.0, vec({1, -1}));
    CHECK(f(vec({1, 1})).isApprox(vec({3, 1})));
    CHECK(AffineMap(1.0, vec({0.5, 0.5}))(vec({1, 2})) == vec({1.5, 2.5}));
    CHECK(AffineMap(-1.0, vec({0, 0}))(vec({1, 2})) == vec({-1, -2}));
    CHECK(AffineMap(0.0, vec({4, 5}))(vec({1, 2})) == vec({4, 5}));
    CHECK_THROWS_AS(f(vec({1, 2, 3})), DimensionError);
}

TEST_CASE("eigenvalue helpers")
{
    Matrix m(2, 2);
    m << 2, 1, 1, 2;
    CHECK(min_eigenvalue(m) == doctest::Approx(1.0));
    CHECK(max_abs_eigenvalue(m) == doctest::Approx(3.0));
    Matrix n(2, 2);
    n << -5, 0, 0, 1;
    CHECK(max_abs_eigenvalue(n) == doctest::Approx(5.0));
    CHECK(is_symmetric(m));
    Matrix asym(2, 2);
    asym << 1, 2, 3, 4;
    CHECK_FALSE(is_symmetric(asym));
}
