// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "rsplit/best_approx.hpp"
#include "rsplit/engine.hpp"
#include "rsplit/export.hpp"
#include "rsplit/prox.hpp"
#include "rsplit/sets.hpp"
#include "rsplit/verification.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rsplit;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(double v) { return format_number(v); }

double max_discrepancy(const std::vector<OracleReport>& reports)
{
    double worst = 0.0;
    for (const auto& r : reports) {
        worst = std::max(worst, r.discrepancy);
    }
    return worst;
}

Outcome quadratic_oracle()
{
    const auto start = std::chrono::steady_clock::now();
    const auto reports = quadratic_reports(kDefaultSeed, default_quadratic_solver);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double worst = max_discrepancy(reports);
    std::ostringstream s;
    s << reports.size() << " affine pairs, max |engine - oracle| = " << fmt(worst) << ", " << fmt(seconds) << " s";
    return {reports.size() == 50 && worst <= 1e-7 && seconds < 10.0, s.str()};
}

Outcome parameter_invariance()
{
    std::mt19937_64 rng(kDefaultSeed);
    const QuadraticInstance inst = random_quadratic_instance(rng, 5, 1.0);
    const Operator a = affine_quadratic(inst.m1, inst.b1);
    const Operator b = affine_quadratic(inst.m2, inst.b2);
    const double alpha = a.modulus();
    const double beta = b.modulus();
    const Vector& r = inst.r;

    std::vector<SplitConfig> configs;
    struct Variant {
        double theta;
        int q;
        double gamma;
        double kappa;
    };
    for (const Variant& v : {Variant{1, 0, 1, 0.5}, Variant{2, 0, 1, 0.5}, Variant{1, 1, 0.5, 0.5},
                             Variant{1, -1, 2, 0.5}, Variant{2, 1, 1, 1.0}, Variant{1, 0, 0.5, 1.0},
                             Variant{2, -1, 2, 1.0}}) {
        BalanceOptions o;
        o.theta = v.theta;
        o.q = static_cast<double>(v.q) * r;
        o.gamma = v.gamma;
        o.kappa = v.kappa;
        o.tol = 1e-11;
        configs.push_back(balanced_config(inst.omega, r, alpha, beta, o));
    }
    // unbalanced: B_tau merely monotone, the whole margin on A, shifts all on A
    SplitConfig lopsided = configs.front();
    lopsided.tau = -lopsided.theta * beta;
    lopsided.sigma = lopsided.theta / inst.omega - lopsided.tau;
    lopsided.r_a = (lopsided.q + r) / inst.omega;
    lopsided.r_b = Vector::Zero(r.size());
    lopsided.gamma = 0.5;
    configs.push_back(lopsided);

    std::vector<Vector> sols;
    for (const auto& c : configs) {
        const auto out = solve_resolvent(a, b, c);
        if (!out.result.converged) {
            return {false, "a configuration did not converge"};
        }
        sols.push_back(out.result.solution);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (std::size_t j = i + 1; j < sols.size(); ++j) {
            worst = std::max(worst, (sols[i] - sols[j]).norm());
        }
    }
    std::ostringstream s;
    s << configs.size() << " configurations, max pairwise gap = " << fmt(worst);
    return {configs.size() >= 5 && worst <= 1e-6, s.str()};
}

Outcome weakly_convex()
{
    std::mt19937_64 rng(kDefaultSeed + 3);
    double worst_closed = 0.0;
    double worst_grid = 0.0;
    std::size_t count = 0;
    struct Case {
        double c;
        double beta;
        double omega;
    };
    // beta - c ranges over negative values (nonconvex sum) down to close to -1/omega
    for (const Case& cs : {Case{0.8, 1.5, 1.0}, Case{1.2, 0.5, 1.0}, Case{2.5, 1.0, 0.5}, Case{0.6, 0.2, 2.0},
                           Case{1.9, 1.0, 1.0}, Case{0.3, 2.0, 0.5}}) {
        for (Eigen::Index dim = 1; dim <= 5; ++dim) {
            const Vector r = random_vector(rng, dim, 2.0);
            const Vector lin = 0.5 * random_vector(rng, dim);
            const auto f = neg_sq_norm(cs.c);
            const auto g = quadratic(cs.beta * Matrix::Identity(dim, dim), lin);
            BalanceOptions o;
            o.tol = 1e-11;
            const auto cfg = balanced_config(cs.omega, r, f.modulus(), g.modulus(), o);
            const auto out = prox_of_sum(f, g, cs.omega, r, cfg);
            const Vector exact = (r - cs.omega * lin) / (1.0 + cs.omega * (cs.beta - cs.c));
            worst_closed = std::max(worst_closed, (out.result.solution - exact).norm());
            if (dim <= 3) {
                const ProxFunction sum("sum", [](double, const Vector& x) { return x; }, cs.beta - cs.c,
                                       [f, g](const Vector& z) { return f.value(z) + g.value(z); });
                const double radius = 1.5 * (exact - r).norm() + 0.5;
                const Vector grid = grid_prox_oracle(sum, cs.omega, r, radius, 81);
                worst_grid = std::max(worst_grid, (out.result.solution - grid).norm());
            }
            ++count;
        }
    }
    std::ostringstream s;
    s << count << " instances, max closed-form gap = " << fmt(worst_closed) << ", max grid gap (dim <= 3) = "
      << fmt(worst_grid);
    return {worst_closed <= 1e-6 && worst_grid <= 1e-6, s.str()};
}

Outcome best_approximation()
{
    Vector r(2);
    r << 2, 1;
    Vector expected(2);
    expected << 0, 1;
    Vector origin = Vector::Zero(2);
    Vector e1(2);
    e1 << 1, 0;
    ProjectionParams p;
    p.tol = 1e-12;
    const auto out = project_intersection(ball(origin, 1.0), halfspace(e1, 0.0), r, p);
    const double gap = (out.result.solution - expected).norm();
    const auto reports = run_suite("projection");
    const double worst = max_discrepancy(reports);
    std::ostringstream s;
    s << "ball/halfspace gap = " << fmt(gap) << "; " << reports.size()
      << " random pairs, max |engine - Dykstra| = " << fmt(worst);
    return {gap <= 1e-7 && reports.size() == 50 && worst <= 1e-6 && all_passed(reports), s.str()};
}

Outcome linear_rate()
{
    const auto reports = run_suite("rate");
    double worst_rate = 0.0;
    double worst_r2 = 1.0;
    for (const auto& r : reports) {
        if (r.engine_value.size() == 2) {
            worst_rate = std::max(worst_rate, r.engine_value(0));
            worst_r2 = std::min(worst_r2, r.engine_value(1));
        } else {
            worst_rate = 1.0;
            worst_r2 = 0.0;
        }
    }
    std::ostringstream s;
    s << reports.size() << " runs with A = lambda Id, largest rate = " << fmt(worst_rate)
      << ", smallest R^2 = " << fmt(worst_r2);
    return {all_passed(reports) && worst_rate < 1.0 && worst_r2 >= 0.99, s.str()};
}

Outcome specializations()
{
    const auto reports = run_suite("specializations");
    std::ostringstream s;
    s << reports.size() << " mapped runs x 100 iterations, max relative gap = " << fmt(max_discrepancy(reports));
    return {all_passed(reports) && max_discrepancy(reports) <= 1e-12, s.str()};
}

Outcome peaceman_rachford()
{
    std::size_t converged = 0;
    std::size_t total = 0;
    const auto reports = quadratic_reports(kDefaultSeed, [&](const Operator& a, const Operator& b, const SplitConfig& c) {
        SplitConfig pr = c;
        pr.kappa = 1.0;
        const auto out = solve_resolvent(a, b, pr);
        ++total;
        const auto& last = out.trace.records.back();
        converged += out.result.converged && last.shadow_residual <= pr.tol ? 1 : 0;
        return out.result.solution;
    });
    std::ostringstream s;
    s << converged << '/' << total << " kappa = 1 runs converged, max |engine - oracle| = "
      << fmt(max_discrepancy(reports));
    return {total == 50 && converged == total, s.str()};
}

// Certificates -------------------------------------------------------------

struct Tally {
    std::size_t checks = 0;
    double worst = -std::numeric_limits<double>::infinity();   // positive means violated

    void add(double violation)
    {
        ++checks;
        worst = std::max(worst, violation);
    }
};

Outcome identities()
{
    constexpr std::size_t samples = 1000;
    constexpr double tol = 1e-9;
    const Eigen::Index dim = 3;
    std::mt19937_64 rng(kDefaultSeed + 8);
    std::uniform_real_distribution<> unit(0.0, 1.0);

    const Vector center = random_vector(rng, dim);
    Matrix g = random_vector(rng, dim).transpose();
    const std::vector<ConvexSet> sets{
        halfspace(random_vector(rng, dim), 0.4),
        hyperplane(random_vector(rng, dim), -0.3),
        ball(center, 1.1),
        box(-Vector::Ones(dim), 0.5 * Vector::Ones(dim)),
        affine_subspace(g, Vector::Constant(1, 0.2)),
    };
    std::vector<ProxFunction> functions{
        zero_function(),
        quadratic(random_symmetric(rng, dim, -0.4, 2.0), random_vector(rng, dim)),
        neg_sq_norm(0.6),
        one_norm(0.7),
    };
    for (const auto& c : sets) {
        functions.push_back(indicator(c));
    }
    std::vector<Operator> operators{zero_operator(), scaled_identity(1.3), scaled_identity(-0.5),
                                    affine_quadratic(random_symmetric(rng, dim, -0.2, 1.5), random_vector(rng, dim))};
    for (const auto& f : functions) {
        operators.push_back(subdifferential_of(f));
    }
    for (const auto& c : sets) {
        operators.push_back(normal_cone_of(c));
    }

    Tally tally;
    std::size_t entries = 0;
    // projectors: firm nonexpansiveness and <x - Px, y - Px> <= 0 for y in C
    for (const auto& c : sets) {
        ++entries;
        for (std::size_t i = 0; i < samples; ++i) {
            const Vector x = random_vector(rng, dim, 3.0);
            const Vector y = random_vector(rng, dim, 3.0);
            const Vector px = c.project(x);
            const Vector py = c.project(y);
            tally.add((px - py).squaredNorm() - (px - py).dot(x - y));
            tally.add((x - px).dot(py - px));
        }
    }
    // prox: (1 + gamma alpha)-cocoercivity and the subgradient inequality
    //   f(y) >= f(z) + <(x - z)/gamma, y - z> + (alpha/2)|y - z|^2,  z = Prox_{gamma f}(x)
    for (const auto& f : functions) {
        ++entries;
        for (std::size_t i = 0; i < samples; ++i) {
            const double gamma = 0.2 + unit(rng);
            if (!(1.0 + gamma * f.modulus() > 0.05)) {
                continue;
            }
            const Vector x = random_vector(rng, dim, 3.0);
            const Vector x2 = random_vector(rng, dim, 3.0);
            const Vector z = prox(f, gamma, x);
            const Vector z2 = prox(f, gamma, x2);
            tally.add((1.0 + gamma * f.modulus()) * (z - z2).squaredNorm() - (z - z2).dot(x - x2));
            // comparison point inside dom f
            const Vector y = prox(f, gamma, random_vector(rng, dim, 3.0));
            const double lower = f.value(z) + ((x - z) / gamma).dot(y - z) + 0.5 * f.modulus() * (y - z).squaredNorm();
            tally.add(lower - f.value(y));
        }
    }
    // operator resolvents: u = (x - p)/gamma lies in A p, so pairs obey the modulus inequality
    for (const auto& a : operators) {
        ++entries;
        for (std::size_t i = 0; i < samples; ++i) {
            const double gamma = 0.2 + unit(rng);
            if (!(1.0 + gamma * a.modulus() > 0.05)) {
                continue;
            }
            const Vector x = random_vector(rng, dim, 3.0);
            const Vector y = random_vector(rng, dim, 3.0);
            const Vector p = resolvent(a, gamma, x);
            const Vector q = resolvent(a, gamma, y);
            const Vector u = (x - p) / gamma;
            const Vector v = (y - q) / gamma;
            tally.add(a.modulus() * (p - q).squaredNorm() - (u - v).dot(p - q));
            if (a.single_valued() && a.name().find("one_norm") == std::string::npos) {
                tally.add((a.apply(p) - u).norm());
            }
        }
    }
    std::ostringstream s;
    s << entries << " catalog entries x " << samples << " samples, " << tally.checks
      << " certificates, largest violation = " << fmt(tally.worst) << " (tolerance 1e-9)";
    return {tally.checks > 0 && tally.worst <= tol, s.str()};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"quadratic oracle equivalence", quadratic_oracle},
        {"parameter invariance", parameter_invariance},
        {"weakly monotone coverage", weakly_convex},
        {"best approximation", best_approximation},
        {"linear convergence", linear_rate},
        {"specialization fidelity", specializations},
        {"Peaceman-Rachford convergence", peaceman_rachford},
        {"resolvent and projector identities", identities},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        Outcome out;
        try {
            out = run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        failures += out.passed ? 0 : 1;
        std::cout << (out.passed ? "PASS" : "FAIL") << " [" << index++ << "] " << name << ": " << out.detail
                  << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
