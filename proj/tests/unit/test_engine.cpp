#include "rsplit/engine.hpp"
#include "rsplit/errors.hpp"
#include "rsplit/prox.hpp"
#include "rsplit/sets.hpp"
#include "rsplit/verification.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
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

bool names(const std::vector<Violation>& vs, const std::string& constraint)
{
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.constraint == constraint; });
}

IterationTrace synthetic_trace(const std::vector<double>& residuals)
{
    IterationTrace t;
    for (std::size_t n = 0; n < residuals.size(); ++n) {
        TraceRecord rec;
        rec.n = n;
        rec.fp_residual = residuals[n];
        t.records.push_back(rec);
    }
    return t;
}

struct Fixture {
    Matrix m1, m2;
    Vector b1, b2, r;
    double omega = 1.0;

    Vector exact() const { return quadratic_resolvent_oracle(m1, b1, m2, b2, omega, r); }
    Operator a() const { return affine_quadratic(m1, b1); }
    Operator b() const { return affine_quadratic(m2, b2); }
};

Fixture fixture()
{
    std::mt19937_64 rng(21);
    Fixture f;
    f.m1 = random_symmetric(rng, 4, -0.3, 2.0);
    f.m2 = random_symmetric(rng, 4, 0.5, 1.5);
    f.b1 = random_vector(rng, 4);
    f.b2 = random_vector(rng, 4);
    f.r = random_vector(rng, 4, 2.0);
    return f;
}

} // namespace

TEST_CASE("balanced_config")
{
    const SplitConfig c = balanced_config(1.0, vec({1, 2}), -0.2, 0.1);
    CHECK(c.sigma == doctest::Approx(0.65));
    CHECK(c.tau == doctest::Approx(0.35));
    CHECK(c.r_a.isApprox(vec({0.5, 1.0})));
    CHECK(c.r_b.isApprox(c.r_a));
    CHECK(validate_config(c, -0.2, 0.1).empty());
    // both transformed moduli equal theta (alpha + beta + 1/omega)/2
    CHECK(c.theta * -0.2 + c.sigma == doctest::Approx(c.theta * 0.1 + c.tau));

    CHECK_THROWS_AS(balanced_config(1.0, vec({1}), -0.6, -0.5), InfeasibleError);
    BalanceOptions opts;
    opts.gamma = 5.0;
    // sigma = 0.5 + (0 - 2)/2 = -0.5 needs gamma < 2
    CHECK_THROWS_AS(balanced_config(1.0, vec({1}), 2.0, 0.0, opts), ParameterError);
}

TEST_CASE("validate_config reports each violated condition")
{
    SplitConfig c = balanced_config(1.0, vec({1, 2}), 0.0, 0.0);
    c.sigma = 0.7;
    auto vs = validate_config(c, 0.0, 0.0);
    CHECK(names(vs, "split-sum"));
    REQUIRE(!vs.empty());
    CHECK(vs.front().message.find("sigma + tau = theta/omega") != std::string::npos);
    CHECK_THROWS_AS(require_valid(c, 0.0, 0.0), ConfigError);

    c = balanced_config(1.0, vec({1, 2}), 0.0, 0.0);
    c.r_a = vec({0, 0});
    CHECK(names(validate_config(c, 0.0, 0.0), "shift-sum"));

    c = balanced_config(1.0, vec({1, 2}), 0.0, 0.0);
    CHECK(names(validate_config(c, -0.6, 0.0), "strong-monotonicity-A"));
    CHECK(names(validate_config(c, 0.0, -0.6), "monotonicity-B"));
    CHECK(names(validate_config(c, -1.0, -0.2), "modulus-sum"));

    c.sigma = -1.0;
    c.tau = 2.0;
    c.gamma = 2.0;
    CHECK(names(validate_config(c, 2.0, 0.0), "gamma-sigma"));

    c = balanced_config(1.0, vec({1, 2}), 0.0, 0.0);
    c.kappa = 1.5;
    CHECK(names(validate_config(c, 0.0, 0.0), "kappa-range"));
    c.kappa = 0.5;
    c.q = vec({1, 2, 3});
    CHECK(names(validate_config(c, 0.0, 0.0), "dimension"));
}

TEST_CASE("dr_step agrees with a hand-computed affine map")
{
    // A = 2 Id, B = Id in one dimension, theta = 1, q = 0.
    const Operator a = scaled_identity(2.0);
    const Operator b = scaled_identity(1.0);
    SplitConfig c = balanced_config(1.0, vec({3}), 2.0, 1.0);
    c.gamma = 0.8;
    c.kappa = 0.6;
    const double x = 1.7;
    auto res = [&](double lambda, double shift, double s, double v) {
        return (v + c.gamma * shift) / (1.0 + c.gamma * (lambda + s));
    };
    const double ra = 2.0 * res(2.0, c.r_a(0), c.sigma, x) - x;
    const double rb = 2.0 * res(1.0, c.r_b(0), c.tau, ra) - ra;
    const double expected = (1.0 - c.kappa) * x + c.kappa * rb;
    CHECK(dr_step(c, a, b, vec({x}))(0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(shadow_point(c, a, vec({x}))(0) == doctest::Approx(res(2.0, c.r_a(0), c.sigma, x)));
}

TEST_CASE("solve_resolvent examples")
{
    const auto zero = solve_resolvent(zero_operator(), zero_operator(),
                                      balanced_config(1.0, vec({1, 2}), 0.0, 0.0));
    CHECK(zero.result.converged);
    CHECK((zero.result.solution - vec({1, 2})).norm() <= 1e-12);

    // J_{omega(l1 + l2)Id}(r) = r / (1 + omega (l1 + l2))
    const auto si = solve_resolvent(scaled_identity(1.0), scaled_identity(0.5),
                                    balanced_config(2.0, vec({4, -8}), 1.0, 0.5));
    CHECK(si.result.converged);
    CHECK((si.result.solution - vec({1, -2})).norm() <= 1e-7);

    // weakly monotone A
    const auto weak = solve_resolvent(scaled_identity(-0.4), scaled_identity(0.6),
                                      balanced_config(1.0, vec({1.2}), -0.4, 0.6));
    CHECK(weak.result.solution(0) == doctest::Approx(1.0).epsilon(1e-7));

    SUBCASE("trace layout")
    {
        CHECK(si.trace.size() == si.result.iterations + 1);
        CHECK(std::isinf(si.trace.records.front().shadow_residual));
        CHECK(si.trace.records.front().x == vec({4, -8}));
    }
}

TEST_CASE("quadratic oracle on 50 random instances")
{
    const auto reports = quadratic_reports(kDefaultSeed, default_quadratic_solver);
    CHECK(reports.size() == 50);
    for (const auto& r : reports) {
        CAPTURE(r.instance_id);
        CHECK(r.discrepancy <= 1e-7);
    }
}

TEST_CASE("solution is invariant under admissible parameter changes")
{
    const Fixture f = fixture();
    const double alpha = min_eigenvalue(f.m1);
    const double beta = min_eigenvalue(f.m2);
    const Vector exact = f.exact();

    std::vector<SplitConfig> configs;
    for (double theta : {1.0, 2.0}) {
        for (int qsel = 0; qsel < 3; ++qsel) {
            for (double gamma : {0.5, 1.0, 2.0}) {
                for (double kappa : {0.5, 1.0}) {
                    BalanceOptions o;
                    o.theta = theta;
                    o.q = qsel == 0 ? Vector::Zero(4) : (qsel == 1 ? f.r : Vector(-f.r));
                    o.gamma = gamma;
                    o.kappa = kappa;
                    o.tol = 1e-11;
                    configs.push_back(balanced_config(f.omega, f.r, alpha, beta, o));
                }
            }
        }
    }
    // an unbalanced split: all of the margin on A, B merely monotone after shifting
    SplitConfig lopsided = balanced_config(f.omega, f.r, alpha, beta);
    lopsided.tau = -beta;
    lopsided.sigma = 1.0 / f.omega - lopsided.tau;
    lopsided.r_a = f.r;
    lopsided.r_b = Vector::Zero(4);
    lopsided.tol = 1e-11;
    configs.push_back(lopsided);

    std::vector<Vector> sols;
    for (const auto& c : configs) {
        REQUIRE(validate_config(c, alpha, beta).empty());
        const auto out = solve_resolvent(f.a(), f.b(), c);
        CHECK(out.result.converged);
        sols.push_back(out.result.solution);
        CHECK((out.result.solution - exact).norm() <= 1e-7);
    }
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (std::size_t j = i + 1; j < sols.size(); ++j) {
            CHECK((sols[i] - sols[j]).norm() <= 1e-6);
        }
    }
}

TEST_CASE("resolvent identity at the computed solution")
{
    const Fixture f = fixture();
    BalanceOptions o;
    o.tol = 1e-10;
    const auto out = solve_resolvent(f.a(), f.b(),
                                     balanced_config(f.omega, f.r, min_eigenvalue(f.m1), min_eigenvalue(f.m2), o));
    const Vector& p = out.result.solution;
    CHECK((p + f.omega * f.a().apply(p) + f.omega * f.b().apply(p) - f.r).norm() <= 10 * o.tol);
}

TEST_CASE("residual tail is nonincreasing on Lipschitz instances")
{
    const Fixture f = fixture();
    BalanceOptions o;
    o.tol = 1e-12;
    const auto out = solve_resolvent(f.a(), f.b(),
                                     balanced_config(f.omega, f.r, min_eigenvalue(f.m1), min_eigenvalue(f.m2), o));
    const auto& recs = out.trace.records;
    REQUIRE(recs.size() > kDefaultBurnIn + 5);
    for (std::size_t n = kDefaultBurnIn + 1; n < recs.size(); ++n) {
        CHECK(recs[n].fp_residual <= recs[n - 1].fp_residual + 1e-12);
    }
}

TEST_CASE("Peaceman-Rachford (kappa = 1) converges on the quadratic set")
{
    const auto reports = quadratic_reports(kDefaultSeed, [](const Operator& a, const Operator& b, const SplitConfig& c) {
        SplitConfig pr = c;
        pr.kappa = 1.0;
        const auto out = solve_resolvent(a, b, pr);
        CHECK(out.result.converged);
        return out.result.solution;
    });
    for (const auto& r : reports) {
        CHECK(r.passed);
    }
}

TEST_CASE("non-convergence is reported, not thrown")
{
    SplitConfig c = balanced_config(1.0, vec({1, 2}), 0.0, 0.0);
    c.max_iter = 3;
    c.tol = 1e-15;
    const auto out = solve_resolvent(normal_cone_of(ball(vec({0, 0}), 1.0)),
                                     normal_cone_of(halfspace(vec({1, 1}), -1.0)), c);
    CHECK_FALSE(out.result.converged);
    CHECK(out.result.iterations == 3);
    CHECK(out.trace.size() == 4);
}

TEST_CASE("non-maximal operators are rejected")
{
    const Operator fake("fake", [](double, const Vector& x) { return x; }, 0.0, std::nullopt, false);
    CHECK_THROWS_AS(solve_resolvent(fake, zero_operator(), balanced_config(1.0, vec({1}), 0.0, 0.0)), DomainError);
}

TEST_CASE("swap_roles handles the mirrored strictness condition")
{
    // alpha = 0 on A and all strictness on B: theta*alpha + sigma > 0 needs the swap when sigma = 0
    const Operator a = scaled_identity(0.0);
    const Operator b = scaled_identity(1.0);
    SplitConfig c = balanced_config(1.0, vec({2, 4}), 0.0, 1.0);
    c.sigma = 0.0;
    c.tau = 1.0;
    CHECK(names(validate_config(c, 0.0, 1.0), "strong-monotonicity-A"));
    const SplitConfig s = swap_roles(c);
    CHECK(s.sigma == 1.0);
    CHECK(s.tau == 0.0);
    CHECK(validate_config(s, 1.0, 0.0).empty());
    const auto out = solve_resolvent(b, a, s);
    CHECK((out.result.solution - vec({1, 2})).norm() <= 1e-7);
}

TEST_CASE("estimate_rate")
{
    std::vector<double> geometric;
    for (int n = 0; n < 80; ++n) {
        geometric.push_back(3.0 * std::pow(0.7, n));
    }
    const auto rate = estimate_rate(synthetic_trace(geometric));
    REQUIRE(rate);
    CHECK(*rate == doctest::Approx(0.7).epsilon(1e-6));
    const auto fit = fit_residual_decay(synthetic_trace(geometric));
    CHECK(fit->r_squared == doctest::Approx(1.0));
    CHECK(fit->samples == 60);

    CHECK_FALSE(estimate_rate(synthetic_trace(std::vector<double>(80, 0.5))));
    CHECK_FALSE(estimate_rate(synthetic_trace(std::vector<double>(25, 0.5))));

    const auto out = solve_resolvent(scaled_identity(1.0), zero_operator(),
                                     balanced_config(1.0, vec({1, -1, 2}), 1.0, 0.0,
                                                     BalanceOptions{1.0, {}, 1.0, 0.5, 1e-13, 100000}));
    const auto measured = estimate_rate(out.trace);
    REQUIRE(measured);
    CHECK(*measured < 1.0);
}

TEST_CASE("maxmono path tracks the general engine step by step")
{
    std::mt19937_64 rng(31);
    const Operator a = affine_quadratic(random_symmetric(rng, 3, 0.0, 2.0), random_vector(rng, 3), 0.0);
    const Operator b = normal_cone_of(ball(random_vector(rng, 3), 1.0));
    const Vector r = random_vector(rng, 3, 2.0);
    MaxMonoOptions opts;
    opts.theta = 1.3;
    opts.q = random_vector(rng, 3, 0.5);
    opts.tol = 1e-300;
    opts.max_iter = 100;
    const double omega = 1.4;
    const auto special = maxmono_resolvent(a, b, omega, r, opts);
    const SplitConfig cfg = maxmono_config(omega, r, opts);
    CHECK(cfg.gamma == doctest::Approx(2.0 * omega / (opts.theta * (2.0 * omega - 1.0))));
    const auto general = solve_resolvent(a, b, cfg, r);
    // either run may stop early on an exact fixed point; hold its last point
    const auto& sp = special.trace.records;
    const auto& ge = general.trace.records;
    double worst = 0.0;
    for (std::size_t n = 0; n < std::max(sp.size(), ge.size()); ++n) {
        const Vector& x = ge[std::min(n, ge.size() - 1)].x;
        const Vector& y = sp[std::min(n, sp.size() - 1)].x;
        worst = std::max(worst, (y - x).norm() / std::max(x.norm(), r.norm()));
    }
    MESSAGE("largest relative gap over 100 steps: " << worst);
    CHECK(worst <= 1e-12);

    CHECK_THROWS_AS(maxmono_config(0.5, r), ParameterError);
    CHECK_THROWS_AS(maxmono_resolvent(scaled_identity(1.0), b, omega, r), ParameterError);
}

TEST_CASE("parameter maps")
{
    const Vector r = vec({1, -2});
    const SplitConfig c = aamr_params(1.0, 0.5, r);
    CHECK(c.omega == doctest::Approx(1.0));
    CHECK(c.theta == doctest::Approx(2.0));
    CHECK(c.sigma == doctest::Approx(1.0));
    CHECK(c.tau == doctest::Approx(1.0));
    CHECK(c.q == -r);
    CHECK(c.r_a.norm() == 0.0);
    CHECK(c.r_b.norm() == 0.0);
    CHECK(validate_config(c, 0.0, 0.0).empty());
    CHECK(aamr_params(3.0, 0.25, r).omega == doctest::Approx(2.0));
    CHECK_THROWS_AS(aamr_params(1.0, 1.0, r), ParameterError);

    const AveragedParams p = avg_variant_params(0.5, r);
    CHECK(p.omega == doctest::Approx(1.0));
    CHECK(p.theta == doctest::Approx(2.0));
    CHECK(p.q.isApprox(r));
    CHECK_THROWS_AS(avg_variant_params(0.0, r), ParameterError);
}

TEST_CASE("AAMR mapping reproduces its direct iteration")
{
    std::mt19937_64 rng(77);
    const Operator a = subdifferential_of(one_norm(0.5));
    const Operator b = affine_quadratic(random_symmetric(rng, 3, 0.0, 1.0), random_vector(rng, 3), 0.0);
    const Vector r = random_vector(rng, 3);
    const Vector x0 = random_vector(rng, 3);
    const auto run = solve_resolvent(a, b, aamr_params(0.9, 0.4, r, 0.5, 1e-300, 50), x0);
    Vector x = x0;
    for (const auto& rec : run.trace.records) {
        CHECK((rec.x - x).norm() <= 1e-12 * std::max(x.norm(), r.norm()));
        x = aamr_reference_step(a, b, 0.9, 0.4, 0.5, r, x);
    }
}
