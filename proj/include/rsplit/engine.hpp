#pragma once

#include "rsplit/errors.hpp"
#include "rsplit/linalg.hpp"
#include "rsplit/operator.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rsplit {

/// Parameters of the relaxed reflected-resolvent iteration computing
/// J_{omega(A+B)}(r).
///
/// The problem is reformulated as finding a zero z of A_sigma + B_tau with
///
///   A_sigma = A o (theta Id - q) + sigma Id - r_a
///   B_tau   = B o (theta Id - q) + tau Id   - r_b
///
/// and then J_{omega(A+B)}(r) = theta z - q. Admissible parameters satisfy
///
///   sigma + tau = theta / omega,   r_a + r_b = (q + r) / omega,
///   theta alpha + sigma > 0,       theta beta + tau >= 0,
///   1 + gamma sigma > 0,           1 + gamma tau > 0,
///   alpha + beta > -1 / omega,
///
/// where alpha, beta are the moduli of A and B. validate_config reports every
/// failed condition.
struct SplitConfig {
    double omega = 1.0;
    Vector r;
    double theta = 1.0;
    Vector q;
    double sigma = 0.5;
    double tau = 0.5;
    Vector r_a;
    Vector r_b;
    double gamma = 1.0;
    double kappa = 0.5;
    double tol = 1e-8;
    std::size_t max_iter = 100000;

    Eigen::Index dim() const { return r.size(); }
};

struct Violation {
    std::string constraint;
    double residual = 0.0;
    std::string message;
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

struct TraceRecord {
    std::size_t n = 0;
    Vector x;                    // governing point x_n
    Vector p;                    // shadow point
    double fp_residual = 0.0;    // |x_{n+1} - x_n|
    double shadow_residual = 0.0; // |p_n - p_{n-1}|, +inf at n = 0
};

struct IterationTrace {
    std::vector<TraceRecord> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

struct SolveResult {
    Vector solution;
    Vector governing;
    std::size_t iterations = 0;
    bool converged = false;
    std::optional<double> rate_estimate;
};

struct SolveOutcome {
    SolveResult result;
    IterationTrace trace;
};

/// Optional knobs shared by the configuration builders.
struct BalanceOptions {
    double theta = 1.0;
    Vector q;               // empty means zero
    double gamma = 1.0;
    double kappa = 0.5;
    double tol = 1e-8;
    std::size_t max_iter = 100000;
};

inline constexpr std::size_t kDefaultBurnIn = 20;

/// Split 1/omega symmetrically after offsetting the moduli:
///   sigma = theta/(2 omega) + theta (beta - alpha)/2
///   tau   = theta/(2 omega) - theta (beta - alpha)/2
///   r_a = r_b = (q + r)/(2 omega)
/// so that theta alpha + sigma = theta beta + tau = theta (alpha + beta + 1/omega)/2.
///
/// Throws InfeasibleError if alpha + beta <= -1/omega and ParameterError if
/// the resulting sigma or tau is incompatible with gamma.
SplitConfig balanced_config(double omega, const Vector& r, double alpha, double beta,
                            const BalanceOptions& opts = {});

/// Empty iff every admissibility condition holds for moduli (alpha, beta).
std::vector<Violation> validate_config(const SplitConfig& c, double alpha, double beta);

/// Throws ConfigError when validate_config reports anything.
void require_valid(const SplitConfig& c, double alpha, double beta);

/// Exchange the roles of the two operators: sigma <-> tau, r_a <-> r_b.
/// Running solve_resolvent(B, A, swap_roles(c)) handles configurations where
/// the strict inequality holds on the B side instead of the A side.
SplitConfig swap_roles(const SplitConfig& c);

/// J_{gamma A_sigma}(x).
Vector resolvent_A_sigma(const SplitConfig& c, const Operator& a, const Vector& x);
/// J_{gamma B_tau}(x).
Vector resolvent_B_tau(const SplitConfig& c, const Operator& b, const Vector& x);

/// Shadow point J_{mu A}((theta/(1+gamma sigma)) x + mu r_a - q), mu = gamma theta/(1+gamma sigma).
Vector shadow_point(const SplitConfig& c, const Operator& a, const Vector& x);

/// x -> (1-kappa) x + kappa (2 J_{gamma B_tau} - Id)(2 J_{gamma A_sigma} - Id) x.
/// One A-resolvent and one B-resolvent evaluation.
Vector dr_step(const SplitConfig& c, const Operator& a, const Operator& b, const Vector& x);

/// Run the iteration from x0 (default r) until the shadow residual and the
/// fixed-point residual both fall below tol, or max_iter steps. The returned
/// solution is the last shadow point. Non-convergence is reported through
/// SolveResult::converged, never thrown.
SolveOutcome solve_resolvent(const Operator& a, const Operator& b, const SplitConfig& c,
                             const std::optional<Vector>& x0 = std::nullopt);

struct MaxMonoOptions {
    double theta = 1.0;
    Vector q;              // empty means zero
    double kappa = 0.5;
    double tol = 1e-8;
    std::size_t max_iter = 100000;
    std::optional<Vector> x0;
};

/// The general configuration that maxmono_resolvent realizes:
/// sigma = tau = theta/(2 omega), r_a = r_b = (q + r)/(2 omega),
/// gamma = 2 omega / (theta (2 omega - 1)). Requires omega > 1/2.
SplitConfig maxmono_config(double omega, const Vector& r, const MaxMonoOptions& opts = {});

/// J_{omega(A+B)}(r) for maximally monotone A, B and omega > 1/2, iterating
/// with unscaled resolvents J_A and J_B only:
///
///   J_Abar(x) = (1/theta)( J_A((1 - 1/(2 omega))(theta x - q) + r/(2 omega)) + q ).
SolveOutcome maxmono_resolvent(const Operator& a, const Operator& b, double omega, const Vector& r,
                               const MaxMonoOptions& opts = {});

/// Configuration whose iteration reads
///   x+ = (1-kappa) x + kappa (2 eta J_{gamma B}(. + r) - 2 eta r - Id)(2 eta J_{gamma A}(. + r) - 2 eta r - Id) x
/// and whose shadow sequence J_{gamma A}(x_n + r) tends to J_{gamma/(2(1-eta)) (A+B)}(r).
SplitConfig aamr_params(double gamma, double eta, const Vector& r, double kappa = 0.5,
                        double tol = 1e-8, std::size_t max_iter = 100000);

struct AveragedParams {
    double omega = 1.0;
    double theta = 1.0;
    Vector q;
};

/// (omega, theta, q) = (1/(2(1-eta)), 1/eta, ((1-eta)/eta) r). Fed to
/// maxmono_resolvent, the iteration becomes
///   x+ = (1-kappa) x + kappa (2 eta J_B + 2(1-eta) r - Id)(2 eta J_A + 2(1-eta) r - Id) x
/// with shadow J_A(x_n).
AveragedParams avg_variant_params(double eta, const Vector& r);

struct RateFit {
    double rate = 1.0;      // exp(slope)
    double slope = 0.0;
    double r_squared = 0.0;
    std::size_t samples = 0;
};

/// Least-squares fit of log(fp_residual_n) against n over records after
/// burn_in (records with zero residual are skipped). Needs >= 10 samples.
std::optional<RateFit> fit_residual_decay(const IterationTrace& t,
                                          std::size_t burn_in = kDefaultBurnIn);

/// exp(slope) of the fit when it is below one.
std::optional<double> estimate_rate(const IterationTrace& t, std::size_t burn_in = kDefaultBurnIn);

namespace detail {

/// One step of a splitting iteration: next governing point and the shadow
/// point of the current one.
struct Step {
    Vector next;
    Vector shadow;
};

using StepFn = std::function<Step(const Vector& x)>;

/// Shared driver: applies the stopping rule and builds the trace.
SolveOutcome iterate(const StepFn& step, Vector x0, double tol, std::size_t max_iter);

} // namespace detail

} // namespace rsplit
