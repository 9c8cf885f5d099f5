#pragma once

#include "rsplit/best_approx.hpp"
#include "rsplit/engine.hpp"
#include "rsplit/prox.hpp"
#include "rsplit/sets.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace rsplit {

inline constexpr std::uint64_t kDefaultSeed = 0xDA0;

struct OracleReport {
    std::string instance_id;
    Vector engine_value;
    Vector oracle_value;
    double discrepancy = 0.0;
    bool passed = false;
    double tolerance = 0.0;
};

OracleReport make_report(std::string instance_id, Vector engine_value, Vector oracle_value,
                         double tolerance);

/// Exact J_{omega(A+B)}(r) for A = M1 x + b1, B = M2 x + b2 by a direct solve of
/// (I + omega(M1 + M2)) p = r - omega(b1 + b2).
Vector quadratic_resolvent_oracle(const Matrix& m1, const Vector& b1, const Matrix& m2,
                                  const Vector& b2, double omega, const Vector& r);

/// Brute-force prox: exhaustive search of f(z) + |z - x|^2/(2 gamma) over a
/// uniform grid with `resolution` points per axis spanning [x - radius, x + radius],
/// then repeated zooms (21 points per axis over +-2 previous steps) until the
/// spacing is at most `target`. dim <= 3. The objective must be strongly
/// convex (1 + gamma * modulus > 0) for the zoom to stay on the minimizer.
Vector grid_prox_oracle(const ProxFunction& f, double gamma, const Vector& x, double radius,
                        std::size_t resolution, double target = 1e-8);

/// Final spacing reached by grid_prox_oracle.
double grid_oracle_spacing(double radius, std::size_t resolution, double target = 1e-8);

// Random instances ------------------------------------------------------

/// Symmetric matrix with eigenvalues drawn uniformly from [lo, hi].
Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index dim, double lo, double hi);
Vector random_vector(std::mt19937_64& rng, Eigen::Index dim, double scale = 1.0);

struct QuadraticInstance {
    Matrix m1;
    Vector b1;
    Matrix m2;
    Vector b2;
    double omega = 1.0;
    Vector r;
};

/// Random affine pair with alpha + beta > -1/omega (alpha may be negative).
QuadraticInstance random_quadratic_instance(std::mt19937_64& rng, Eigen::Index dim, double omega);

struct SetPair {
    ConvexSet c;
    ConvexSet d;
    Vector anchor;   // a common point of both sets
};

/// Two random catalog sets built around a shared anchor point, so the
/// intersection is nonempty.
SetPair random_feasible_pair(std::mt19937_64& rng, Eigen::Index dim);

/// Points of C cap D obtained by projecting random points (alternating until
/// membership in both up to tol). Points that fail to settle are skipped.
std::vector<Vector> sample_intersection(const ConvexSet& c, const ConvexSet& d,
                                        std::mt19937_64& rng, std::size_t count, double tol = 1e-12);

// Direct reference iterations for parameter-mapped variants -------------

/// x+ = (1-kappa) x + kappa (2 eta J_{gamma B}(. + r) - 2 eta r - Id)(2 eta J_{gamma A}(. + r) - 2 eta r - Id) x
Vector aamr_reference_step(const Operator& a, const Operator& b, double gamma, double eta,
                           double kappa, const Vector& r, const Vector& x);

/// x+ = (1-kappa) x + kappa (2 eta J_B + 2(1-eta) r - Id)(2 eta J_A + 2(1-eta) r - Id) x
Vector averaged_reference_step(const Operator& a, const Operator& b, double eta, double kappa,
                               const Vector& r, const Vector& x);

// Suites ----------------------------------------------------------------

using QuadraticSolver = std::function<Vector(const Operator& a, const Operator& b, const SplitConfig& c)>;

/// The default engine path used by the quadratic suite.
Vector default_quadratic_solver(const Operator& a, const Operator& b, const SplitConfig& c);

/// Quadratic oracle battery with a pluggable solver (used for mutation checks).
std::vector<OracleReport> quadratic_reports(std::uint64_t seed, const QuadraticSolver& solver);

const std::vector<std::string>& suite_names();

/// Deterministic battery for one of suite_names(); reports sorted by id.
/// Throws ParameterError for unknown names.
std::vector<OracleReport> run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

nlohmann::json to_json(const OracleReport& report);
nlohmann::json reports_to_json(const std::vector<OracleReport>& reports, std::uint64_t seed);

bool all_passed(const std::vector<OracleReport>& reports);

} // namespace rsplit
