#include "rsplit/verification.hpp"

#include "rsplit/errors.hpp"
#include "rsplit/export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rsplit {

namespace {

std::string instance_name(const std::string& suite, const std::string& label, std::size_t index)
{
    std::ostringstream s;
    s << suite << '/' << label << '/' << std::setw(3) << std::setfill('0') << index;
    return s.str();
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Matrix random_orthogonal(std::mt19937_64& rng, Eigen::Index dim)
{
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        g.data()[i] = std::normal_distribution<double>(0.0, 1.0)(rng);
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(dim, dim);
}

} // namespace

OracleReport make_report(std::string instance_id, Vector engine_value, Vector oracle_value,
                         double tolerance)
{
    OracleReport rep;
    rep.instance_id = std::move(instance_id);
    rep.discrepancy = engine_value.size() == oracle_value.size()
                          ? (engine_value - oracle_value).norm()
                          : std::numeric_limits<double>::infinity();
    if (!std::isfinite(rep.discrepancy) && engine_value.size() == oracle_value.size()) {
        rep.discrepancy = std::numeric_limits<double>::infinity();
    }
    rep.engine_value = std::move(engine_value);
    rep.oracle_value = std::move(oracle_value);
    rep.tolerance = tolerance;
    rep.passed = rep.discrepancy <= tolerance;
    return rep;
}

Vector quadratic_resolvent_oracle(const Matrix& m1, const Vector& b1, const Matrix& m2,
                                  const Vector& b2, double omega, const Vector& r)
{
    const auto dim = r.size();
    const Matrix sys = Matrix::Identity(dim, dim) + omega * (m1 + m2);
    return solve_spd(sys, r - omega * (b1 + b2));
}

namespace {

constexpr std::size_t kZoomPoints = 21;   // per axis, spanning +-2 coarser steps

std::size_t zoom_levels(double h, double target)
{
    std::size_t levels = 0;
    while (h > target && levels < 40) {
        h *= 4.0 / static_cast<double>(kZoomPoints - 1);
        ++levels;
    }
    return levels;
}

} // namespace

double grid_oracle_spacing(double radius, std::size_t resolution, double target)
{
    double h = 2.0 * radius / static_cast<double>(resolution - 1);
    const std::size_t levels = zoom_levels(h, target);
    for (std::size_t i = 0; i < levels; ++i) {
        h *= 4.0 / static_cast<double>(kZoomPoints - 1);
    }
    return h;
}

Vector grid_prox_oracle(const ProxFunction& f, double gamma, const Vector& x, double radius,
                        std::size_t resolution, double target)
{
    const auto dim = x.size();
    if (dim < 1 || dim > 3) {
        throw ParameterError("grid_prox_oracle: supports dimension 1 to 3 only");
    }
    if (!(gamma > 0.0) || !(1.0 + gamma * f.modulus() > 0.0)) {
        throw DomainError("grid_prox_oracle: prox is ill-posed for this gamma");
    }
    if (resolution < 2 || !(radius > 0.0) || !(target > 0.0)) {
        throw ParameterError("grid_prox_oracle: need resolution >= 2, radius > 0 and target > 0");
    }
    auto objective = [&](const Vector& z) {
        return f.value(z) + (z - x).squaredNorm() / (2.0 * gamma);
    };
    // Scan a tensor grid of `n` points per axis with spacing h, starting at origin.
    auto scan = [&](const Vector& origin, double h, std::size_t n) {
        std::array<std::size_t, 3> idx{0, 0, 0};
        Vector z(dim);
        Vector best = origin;
        double best_val = std::numeric_limits<double>::infinity();
        std::size_t total = 1;
        for (Eigen::Index k = 0; k < dim; ++k) {
            total *= n;
        }
        for (std::size_t t = 0; t < total; ++t) {
            std::size_t rest = t;
            for (Eigen::Index k = 0; k < dim; ++k) {
                idx[static_cast<std::size_t>(k)] = rest % n;
                rest /= n;
                z[k] = origin[k] + h * static_cast<double>(idx[static_cast<std::size_t>(k)]);
            }
            const double v = objective(z);
            if (v < best_val) {
                best_val = v;
                best = z;
            }
        }
        return best;
    };
    double h = 2.0 * radius / static_cast<double>(resolution - 1);
    Vector best = scan(x.array() - radius, h, resolution);
    const std::size_t levels = zoom_levels(h, target);
    for (std::size_t i = 0; i < levels; ++i) {
        const double fine = h * 4.0 / static_cast<double>(kZoomPoints - 1);
        best = scan(best.array() - 2.0 * h, fine, kZoomPoints);
        h = fine;
    }
    return best;
}

Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index dim, double lo, double hi)
{
    Vector eig(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        eig[i] = uniform(rng, lo, hi);
    }
    eig[0] = lo;  // pin the extreme so the declared modulus is attained
    const Matrix q = random_orthogonal(rng, dim);
    Matrix m = q * eig.asDiagonal() * q.transpose();
    return 0.5 * (m + m.transpose());
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index dim, double scale)
{
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = uniform(rng, -scale, scale);
    }
    return v;
}

QuadraticInstance random_quadratic_instance(std::mt19937_64& rng, Eigen::Index dim, double omega)
{
    QuadraticInstance inst;
    inst.omega = omega;
    // alpha in [-0.4/omega, 0.5], beta in [0, 0.5]: alpha + beta >= -0.4/omega > -1/omega
    const double lo1 = uniform(rng, -0.4 / omega, 0.5);
    const double lo2 = uniform(rng, 0.0, 0.5);
    inst.m1 = random_symmetric(rng, dim, lo1, lo1 + uniform(rng, 0.5, 3.0));
    inst.m2 = random_symmetric(rng, dim, lo2, lo2 + uniform(rng, 0.5, 3.0));
    inst.b1 = random_vector(rng, dim);
    inst.b2 = random_vector(rng, dim);
    inst.r = random_vector(rng, dim, 2.0);
    return inst;
}

namespace {

ConvexSet random_set_through(std::mt19937_64& rng, std::size_t kind, const Vector& anchor)
{
    const auto dim = anchor.size();
    switch (kind) {
    case 0: {
        const Vector a = random_vector(rng, dim);
        return halfspace(a, a.dot(anchor) + uniform(rng, 0.1, 1.0));
    }
    case 1: {
        const Vector a = random_vector(rng, dim);
        return hyperplane(a, a.dot(anchor));
    }
    case 2: {
        const Vector center = anchor + random_vector(rng, dim, 0.7);
        return ball(center, (anchor - center).norm() + uniform(rng, 0.2, 1.0));
    }
    case 3: {
        Vector lo(dim);
        Vector hi(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            lo[i] = anchor[i] - uniform(rng, 0.1, 1.0);
            hi[i] = anchor[i] + uniform(rng, 0.1, 1.0);
        }
        return box(lo, hi);
    }
    default: {
        const Eigen::Index rows = dim == 1 ? 1 : 1 + static_cast<Eigen::Index>(pick(rng, static_cast<std::size_t>(dim - 1)));
        Matrix g(rows, dim);
        for (Eigen::Index i = 0; i < rows; ++i) {
            g.row(i) = random_vector(rng, dim).transpose();
        }
        return affine_subspace(g, g * anchor);
    }
    }
}

} // namespace

SetPair random_feasible_pair(std::mt19937_64& rng, Eigen::Index dim)
{
    Vector anchor = random_vector(rng, dim);
    const std::size_t kc = pick(rng, 5);
    const std::size_t kd = pick(rng, 5);
    ConvexSet c = random_set_through(rng, kc, anchor);
    ConvexSet d = random_set_through(rng, kd, anchor);
    return {std::move(c), std::move(d), std::move(anchor)};
}

std::vector<Vector> sample_intersection(const ConvexSet& c, const ConvexSet& d, std::mt19937_64& rng,
                                        std::size_t count, double tol)
{
    std::vector<Vector> out;
    const auto dim = c.dim();
    for (std::size_t attempt = 0; attempt < 4 * count && out.size() < count; ++attempt) {
        Vector z = random_vector(rng, dim, 3.0);
        for (int k = 0; k < 20000; ++k) {
            z = d.project(c.project(z));
            if (c.contains(z, tol)) {
                break;
            }
        }
        if (c.contains(z, tol) && d.contains(z, tol)) {
            out.push_back(std::move(z));
        }
    }
    return out;
}

Vector aamr_reference_step(const Operator& a, const Operator& b, double gamma, double eta,
                           double kappa, const Vector& r, const Vector& x)
{
    const Vector ya = 2.0 * eta * resolvent(a, gamma, x + r) - 2.0 * eta * r - x;
    const Vector yb = 2.0 * eta * resolvent(b, gamma, ya + r) - 2.0 * eta * r - ya;
    return (1.0 - kappa) * x + kappa * yb;
}

Vector averaged_reference_step(const Operator& a, const Operator& b, double eta, double kappa,
                               const Vector& r, const Vector& x)
{
    const Vector ya = 2.0 * eta * resolvent(a, 1.0, x) + 2.0 * (1.0 - eta) * r - x;
    const Vector yb = 2.0 * eta * resolvent(b, 1.0, ya) + 2.0 * (1.0 - eta) * r - ya;
    return (1.0 - kappa) * x + kappa * yb;
}

Vector default_quadratic_solver(const Operator& a, const Operator& b, const SplitConfig& c)
{
    return solve_resolvent(a, b, c).result.solution;
}

std::vector<OracleReport> quadratic_reports(std::uint64_t seed, const QuadraticSolver& solver)
{
    std::mt19937_64 rng(seed);
    const std::array<double, 3> omegas{0.5, 1.0, 2.0};
    std::vector<OracleReport> out;
    for (std::size_t i = 0; i < 50; ++i) {
        const auto dim = static_cast<Eigen::Index>(1 + pick(rng, 10));
        const double omega = omegas[i % omegas.size()];
        const QuadraticInstance inst = random_quadratic_instance(rng, dim, omega);
        const Operator a = affine_quadratic(inst.m1, inst.b1);
        const Operator b = affine_quadratic(inst.m2, inst.b2);
        BalanceOptions opts;
        opts.tol = 1e-9;
        const SplitConfig c = balanced_config(omega, inst.r, a.modulus(), b.modulus(), opts);
        Vector engine = solver(a, b, c);
        Vector oracle = quadratic_resolvent_oracle(inst.m1, inst.b1, inst.m2, inst.b2, omega, inst.r);
        out.push_back(make_report(instance_name("quadratic", "affine-pair", i), std::move(engine),
                                  std::move(oracle), 1e-7));
    }
    return out;
}

namespace {

ProxFunction shifted_half_sq(const Vector& a)
{
    // 0.5 |x - a|^2 = 0.5 x^T x - <a, x> + 0.5 |a|^2
    const auto dim = a.size();
    return quadratic(Matrix::Identity(dim, dim), -a, 0.5 * a.squaredNorm());
}

/// f + g known only through values; for brute-force minimization.
ProxFunction value_sum(const ProxFunction& f, const ProxFunction& g)
{
    return ProxFunction(
        f.name() + "+" + g.name(),
        [](double, const Vector&) -> Vector { throw DomainError("value_sum: no prox"); },
        f.modulus() + g.modulus(), [f, g](const Vector& z) { return f.value(z) + g.value(z); });
}

constexpr double kGridTolerance = 1e-6;

/// Unconstrained objectives are zoomed to kGridTolerance. A constrained minimizer
/// can sit O(sqrt(h)) from the best grid point along the boundary, so those get a
/// single refinement and a tolerance of twice its spacing.
OracleReport grid_report(const std::string& id, const ProxFunction& f, double gamma, const Vector& x,
                         bool constrained = false)
{
    constexpr double radius = 2.5;
    constexpr std::size_t resolution = 81;
    const Vector engine = prox(f, gamma, x);
    if (!constrained) {
        return make_report(id, engine, grid_prox_oracle(f, gamma, x, radius, resolution), kGridTolerance);
    }
    const double target = 2.0 * radius / static_cast<double>(resolution - 1) / 5.0;
    const Vector oracle = grid_prox_oracle(f, gamma, x, radius, resolution, target);
    return make_report(id, engine, oracle, 2.0 * grid_oracle_spacing(radius, resolution, target));
}

std::vector<OracleReport> prox_reports(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<OracleReport> out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto dim = static_cast<Eigen::Index>(1 + i % 3);
        const Vector x = random_vector(rng, dim);
        const double gamma = uniform(rng, 0.3, 1.0);
        // eigenvalues in [-0.3/gamma, 1/gamma]: curvature ratio of the prox objective <= 2/0.7
        const Matrix m = random_symmetric(rng, dim, -0.3 / gamma, 1.0 / gamma);
        out.push_back(grid_report(instance_name("prox", "grid-quadratic", k++),
                                  quadratic(m, 0.2 * random_vector(rng, dim), 0.0), gamma, x));
        const double c = uniform(rng, 0.0, 0.5) / gamma;
        out.push_back(grid_report(instance_name("prox", "grid-neg-sq-norm", k++), neg_sq_norm(c),
                                  gamma, x));
        out.push_back(grid_report(instance_name("prox", "grid-one-norm", k++),
                                  one_norm(uniform(rng, 0.2, 1.0)), gamma, x));
        const Vector center = random_vector(rng, dim, 0.5);
        out.push_back(grid_report(instance_name("prox", "grid-indicator-ball", k++),
                                  indicator(ball(center, uniform(rng, 0.2, 0.8))), gamma, x, true));
    }

    // closed forms for sums
    for (std::size_t i = 0; i < 6; ++i) {
        const auto dim = static_cast<Eigen::Index>(1 + pick(rng, 5));
        const double omega = std::array<double, 3>{0.5, 1.0, 2.0}[i % 3];
        const Vector r = random_vector(rng, dim, 2.0);
        BalanceOptions opts;
        opts.tol = 1e-10;

        const Vector a = random_vector(rng, dim);
        const Vector b = random_vector(rng, dim);
        {
            const auto f = shifted_half_sq(a);
            const auto g = shifted_half_sq(b);
            const auto cfg = balanced_config(omega, r, f.modulus(), g.modulus(), opts);
            const Vector expect = (r + omega * (a + b)) / (1.0 + 2.0 * omega);
            out.push_back(make_report(instance_name("prox", "sum-two-quadratics", k++),
                                      prox_of_sum(f, g, omega, r, cfg).result.solution, expect, 1e-7));
        }
        {
            // weakly convex f: kappa - c > -1/omega
            const double c = uniform(rng, 0.1, 1.0);
            const double kap = c - 1.0 / omega + uniform(rng, 0.2, 1.0) / omega;
            if (kap >= 0.0) {
                const auto f = neg_sq_norm(c);
                const auto g = quadratic(kap * Matrix::Identity(dim, dim), Vector::Zero(dim));
                const auto cfg = balanced_config(omega, r, f.modulus(), g.modulus(), opts);
                const Vector expect = r / (1.0 + omega * (kap - c));
                out.push_back(make_report(instance_name("prox", "sum-weakly-convex", k++),
                                          prox_of_sum(f, g, omega, r, cfg).result.solution, expect,
                                          1e-7));
            }
        }
        {
            // omega |z|_1 + (omega/2)|z - a|^2 + |z - r|^2/2: coordinatewise soft threshold
            const auto f = one_norm(1.0);
            const auto g = shifted_half_sq(a);
            const auto cfg = balanced_config(omega, r, f.modulus(), g.modulus(), opts);
            const Vector center = (r + omega * a) / (1.0 + omega);
            const double t = omega / (1.0 + omega);
            const Vector expect = center.unaryExpr([t](double v) {
                return std::abs(v) > t ? std::copysign(std::abs(v) - t, v) : 0.0;
            });
            out.push_back(make_report(instance_name("prox", "sum-one-norm-quadratic", k++),
                                      prox_of_sum(f, g, omega, r, cfg).result.solution, expect, 1e-7));
        }
    }

    // brute force for a weakly convex sum in low dimension
    for (std::size_t i = 0; i < 3; ++i) {
        const auto dim = static_cast<Eigen::Index>(1 + i);
        const double omega = 1.0;
        const Vector r = random_vector(rng, dim);
        const auto f = neg_sq_norm(0.5);
        const auto g = quadratic(1.2 * Matrix::Identity(dim, dim), 0.3 * random_vector(rng, dim));
        BalanceOptions opts;
        opts.tol = 1e-10;
        const auto cfg = balanced_config(omega, r, f.modulus(), g.modulus(), opts);
        const Vector engine = prox_of_sum(f, g, omega, r, cfg).result.solution;
        constexpr double radius = 2.5;
        constexpr std::size_t resolution = 81;
        const Vector oracle = grid_prox_oracle(value_sum(f, g), omega, r, radius, resolution);
        out.push_back(make_report(instance_name("prox", "grid-weakly-convex-sum", k++), engine, oracle,
                                  kGridTolerance));
    }
    return out;
}

std::vector<OracleReport> projection_reports(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<OracleReport> out;
    for (std::size_t i = 0; i < 50; ++i) {
        const auto dim = static_cast<Eigen::Index>(1 + pick(rng, 5));
        SetPair pair = random_feasible_pair(rng, dim);
        const Vector r = pair.anchor + random_vector(rng, dim, 2.0);
        ProjectionParams params;
        params.tol = 1e-9;
        params.max_iter = 200000;
        const Vector engine = project_intersection(pair.c, pair.d, r, params).result.solution;
        const Vector oracle = dykstra_project(pair.c, pair.d, r, 1e-13, 2000000).point;
        out.push_back(make_report(
            instance_name("projection", pair.c.name() + "-" + pair.d.name(), i), engine, oracle, 1e-6));
    }
    return out;
}

std::vector<OracleReport> rate_reports(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<OracleReport> out;
    std::size_t k = 0;
    for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
        const auto dim = static_cast<Eigen::Index>(2 + pick(rng, 4));
        const Vector r = random_vector(rng, dim, 2.0);
        const Matrix m = random_symmetric(rng, dim, 0.0, 2.0);
        const std::array<std::pair<std::string, Operator>, 3> partners{
            std::pair{std::string("zero"), zero_operator()},
            std::pair{std::string("scaled-identity"), scaled_identity(0.5)},
            std::pair{std::string("affine-psd"), affine_quadratic(m, random_vector(rng, dim), 0.0)},
        };
        for (const auto& [label, b] : partners) {
            const Operator a = scaled_identity(lambda);
            const double omega = 1.0;
            // gamma chosen so the reflections contract at a moderate, measurable pace
            const double margin = (a.modulus() + b.modulus() + 1.0 / omega) / 2.0;
            const double split = std::abs(b.modulus() - a.modulus()) / 2.0 - 1.0 / (2.0 * omega);
            BalanceOptions opts;
            opts.gamma = 3.0 / margin;
            if (split > 0.0) {
                opts.gamma = std::min(opts.gamma, 0.5 / split);
            }
            opts.tol = 1e-12;
            const SplitConfig c = balanced_config(omega, r, a.modulus(), b.modulus(), opts);
            const SolveOutcome run = solve_resolvent(a, b, c);
            const auto fit = fit_residual_decay(run.trace);
            OracleReport rep;
            rep.instance_id = instance_name("rate", "scaled-identity-" + label, k++);
            rep.tolerance = 0.0;
            rep.oracle_value = Vector(2);
            rep.oracle_value << 1.0, 0.99;
            if (!fit) {
                rep.engine_value = Vector();
                rep.discrepancy = std::numeric_limits<double>::infinity();
            } else {
                rep.engine_value = Vector(2);
                rep.engine_value << fit->rate, fit->r_squared;
                const double rate_excess = fit->rate < 1.0 ? 0.0 : fit->rate - 1.0 + 1e-16;
                rep.discrepancy = std::max(rate_excess, std::max(0.0, 0.99 - fit->r_squared));
            }
            rep.passed = rep.discrepancy <= rep.tolerance;
            out.push_back(std::move(rep));
        }
    }
    return out;
}

/// Largest per-iteration gap between two governing sequences, relative to
/// max(|x_n|, |r|).
double sequence_gap(const std::vector<Vector>& engine, const std::vector<Vector>& reference,
                    const Vector& r)
{
    if (engine.empty() || reference.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    // a run that stopped early sits at an exact fixed point; hold it there
    double worst = 0.0;
    const std::size_t n = std::max(engine.size(), reference.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Vector& e = engine[std::min(i, engine.size() - 1)];
        const Vector& ref = reference[std::min(i, reference.size() - 1)];
        const double scale = std::max({ref.norm(), r.norm(), 1e-300});
        worst = std::max(worst, (e - ref).norm() / scale);
    }
    return worst;
}

std::vector<Vector> governing_points(const IterationTrace& t)
{
    std::vector<Vector> out;
    out.reserve(t.size());
    for (const auto& rec : t.records) {
        out.push_back(rec.x);
    }
    return out;
}

OracleReport sequence_report(std::string id, const std::vector<Vector>& engine,
                             const std::vector<Vector>& reference, const Vector& r)
{
    OracleReport rep;
    rep.instance_id = std::move(id);
    rep.engine_value = engine.empty() ? Vector() : engine.back();
    rep.oracle_value = reference.empty() ? Vector() : reference.back();
    rep.tolerance = 1e-12;
    rep.discrepancy = sequence_gap(engine, reference, r);
    rep.passed = rep.discrepancy <= rep.tolerance;
    return rep;
}

struct MonotonePair {
    std::string label;
    Operator a;
    Operator b;
};

std::vector<MonotonePair> monotone_pairs(std::mt19937_64& rng, Eigen::Index dim)
{
    const Vector anchor = random_vector(rng, dim);
    const Vector n1 = random_vector(rng, dim);
    std::vector<MonotonePair> out;
    out.push_back({"affine-psd",
                   affine_quadratic(random_symmetric(rng, dim, 0.0, 2.0), random_vector(rng, dim), 0.0),
                   affine_quadratic(random_symmetric(rng, dim, 0.0, 2.0), random_vector(rng, dim), 0.0)});
    out.push_back({"normal-cones", normal_cone_of(ball(anchor, 0.8)),
                   normal_cone_of(halfspace(n1, n1.dot(anchor)))});
    out.push_back({"one-norm-affine", subdifferential_of(one_norm(0.7)),
                   affine_quadratic(random_symmetric(rng, dim, 0.0, 1.5), random_vector(rng, dim), 0.0)});
    return out;
}

std::vector<OracleReport> specialization_reports(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<OracleReport> out;
    constexpr std::size_t steps = 100;
    constexpr double tiny_tol = std::numeric_limits<double>::min();
    std::size_t k = 0;
    for (std::size_t trial = 0; trial < 3; ++trial) {
        const auto dim = static_cast<Eigen::Index>(2 + trial);
        for (const auto& pair : monotone_pairs(rng, dim)) {
            const Vector r = random_vector(rng, dim, 2.0);
            const Vector x0 = random_vector(rng, dim);
            const double kappa = trial == 1 ? 1.0 : 0.5;

            // maxmono path vs general engine with the equivalent configuration
            {
                MaxMonoOptions opts;
                opts.theta = 1.5;
                opts.q = random_vector(rng, dim, 0.5);
                opts.kappa = kappa;
                opts.tol = tiny_tol;
                opts.max_iter = steps;
                opts.x0 = x0;
                const double omega = 0.8 + 0.5 * static_cast<double>(trial);
                const auto special = maxmono_resolvent(pair.a, pair.b, omega, r, opts);
                const auto general = solve_resolvent(pair.a, pair.b, maxmono_config(omega, r, opts), x0);
                out.push_back(sequence_report(instance_name("specializations", "maxmono-" + pair.label, k++),
                                              governing_points(special.trace),
                                              governing_points(general.trace), r));
            }
            // AAMR-style mapping vs its direct iteration
            {
                const double gamma = 0.7 + 0.4 * static_cast<double>(trial);
                const double eta = 0.3 + 0.2 * static_cast<double>(trial);
                const auto cfg = aamr_params(gamma, eta, r, kappa, tiny_tol, steps);
                const auto run = solve_resolvent(pair.a, pair.b, cfg, x0);
                std::vector<Vector> ref{x0};
                while (ref.size() < run.trace.size()) {
                    ref.push_back(aamr_reference_step(pair.a, pair.b, gamma, eta, kappa, r, ref.back()));
                }
                out.push_back(sequence_report(instance_name("specializations", "aamr-" + pair.label, k++),
                                              governing_points(run.trace), ref, r));
            }
            // averaged variant through the maxmono path vs its direct iteration
            {
                const double eta = 0.25 + 0.25 * static_cast<double>(trial);
                const auto p = avg_variant_params(eta, r);
                MaxMonoOptions opts;
                opts.theta = p.theta;
                opts.q = p.q;
                opts.kappa = kappa;
                opts.tol = tiny_tol;
                opts.max_iter = steps;
                opts.x0 = x0;
                const auto run = maxmono_resolvent(pair.a, pair.b, p.omega, r, opts);
                std::vector<Vector> ref{x0};
                while (ref.size() < run.trace.size()) {
                    ref.push_back(averaged_reference_step(pair.a, pair.b, eta, kappa, r, ref.back()));
                }
                out.push_back(sequence_report(instance_name("specializations", "averaged-" + pair.label, k++),
                                              governing_points(run.trace), ref, r));
            }
        }
    }
    return out;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"quadratic", "prox", "projection", "rate",
                                                "specializations"};
    return names;
}

std::vector<OracleReport> run_suite(const std::string& name, std::uint64_t seed)
{
    std::vector<OracleReport> reports;
    if (name == "quadratic") {
        reports = quadratic_reports(seed, default_quadratic_solver);
    } else if (name == "prox") {
        reports = prox_reports(seed);
    } else if (name == "projection") {
        reports = projection_reports(seed);
    } else if (name == "rate") {
        reports = rate_reports(seed);
    } else if (name == "specializations") {
        reports = specialization_reports(seed);
    } else {
        std::string msg = "unknown suite '" + name + "'; valid suites:";
        for (const auto& s : suite_names()) {
            msg += " " + s;
        }
        throw ParameterError(msg);
    }
    std::stable_sort(reports.begin(), reports.end(),
                     [](const OracleReport& a, const OracleReport& b) { return a.instance_id < b.instance_id; });
    return reports;
}

bool all_passed(const std::vector<OracleReport>& reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) { return r.passed; });
}

nlohmann::json to_json(const OracleReport& report)
{
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) {
            return v;
        }
        return nullptr;
    };
    return {
        {"instance_id", report.instance_id},
        {"engine_value", vector_to_json(report.engine_value)},
        {"oracle_value", vector_to_json(report.oracle_value)},
        {"discrepancy", num(report.discrepancy)},
        {"passed", report.passed},
        {"tolerance", report.tolerance},
    };
}

nlohmann::json reports_to_json(const std::vector<OracleReport>& reports, std::uint64_t seed)
{
    auto arr = nlohmann::json::array();
    for (const auto& rep : reports) {
        auto j = to_json(rep);
        j["seed"] = seed;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace rsplit
