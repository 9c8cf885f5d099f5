#pragma once

#include "rsplit/engine.hpp"
#include "rsplit/sets.hpp"

#include <cstddef>
#include <optional>

namespace rsplit {

/// Parameters of the two-set projection iteration. The implied scale is
/// omega = theta / (sigma + tau); r_c + r_d must equal (sigma + tau)(q + r)/theta.
/// Empty vectors take defaults: q = 0 and r_c = r_d = (sigma + tau)(q + r)/(2 theta).
struct ProjectionParams {
    double theta = 1.0;
    Vector q;
    double sigma = 0.5;
    double tau = 0.5;
    Vector r_c;
    Vector r_d;
    double gamma = 1.0;
    double kappa = 0.5;
    double tol = 1e-8;
    std::size_t max_iter = 100000;
};

/// The engine configuration equivalent to `params` for target point r.
/// Throws ConfigError on any violated constraint (including sigma > 0, tau >= 0).
SplitConfig projection_config(const Vector& r, const ProjectionParams& params);

/// P_{C cap D}(r) via the splitting iteration on the normal cones of C and D.
/// Each step evaluates P_C and P_D once. The intersection is assumed
/// nonempty; otherwise the result reports converged = false.
SolveOutcome project_intersection(const ConvexSet& c, const ConvexSet& d, const Vector& r,
                                  const ProjectionParams& params = {},
                                  const std::optional<Vector>& x0 = std::nullopt);

/// theta = 1/eta, sigma = tau = (1 - eta)/(gamma eta), q = -r, r_c = r_d = 0.
ProjectionParams aamr_projection_params(const Vector& r, double eta, double gamma, double kappa = 0.5,
                                        double tol = 1e-8, std::size_t max_iter = 100000);

SolveOutcome aamr_project(const ConvexSet& c, const ConvexSet& d, const Vector& r, double eta,
                          double gamma, double kappa = 0.5, double tol = 1e-8,
                          std::size_t max_iter = 100000,
                          const std::optional<Vector>& x0 = std::nullopt);

struct DykstraResult {
    Vector point;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Boyle-Dykstra alternating projections with correction terms. Stops when
/// successive iterates and the two half-step points all move by at most tol.
DykstraResult dykstra_project(const ConvexSet& c, const ConvexSet& d, const Vector& r,
                              double tol = 1e-10, std::size_t max_iter = 1000000);

} // namespace rsplit
