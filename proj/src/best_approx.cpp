#include "rsplit/best_approx.hpp"

#include "rsplit/errors.hpp"

#include <sstream>

namespace rsplit {

SplitConfig projection_config(const Vector& r, const ProjectionParams& params)
{
    std::vector<Violation> extra;
    if (!(params.sigma > 0.0)) {
        std::ostringstream msg;
        msg << "sigma > 0 violated: sigma = " << params.sigma;
        extra.push_back({"sigma-positive", params.sigma, msg.str()});
    }
    if (!(params.tau >= 0.0)) {
        std::ostringstream msg;
        msg << "tau >= 0 violated: tau = " << params.tau;
        extra.push_back({"tau-nonnegative", params.tau, msg.str()});
    }
    if (!(params.theta > 0.0)) {
        std::ostringstream msg;
        msg << "theta must be positive, got " << params.theta;
        extra.push_back({"theta-positive", params.theta, msg.str()});
    }
    if (!extra.empty()) {
        throw ConfigError(std::move(extra));
    }

    const double total = params.sigma + params.tau;
    SplitConfig c;
    c.theta = params.theta;
    c.omega = params.theta / total;
    c.r = r;
    c.q = params.q.size() == 0 ? Vector::Zero(r.size()) : params.q;
    c.sigma = params.sigma;
    c.tau = params.tau;
    if (c.q.size() == r.size()) {
        const Vector half = total * (c.q + r) / (2.0 * params.theta);
        c.r_a = params.r_c.size() == 0 ? half : params.r_c;
        c.r_b = params.r_d.size() == 0 ? half : params.r_d;
    } else {
        c.r_a = params.r_c;
        c.r_b = params.r_d;
    }
    c.gamma = params.gamma;
    c.kappa = params.kappa;
    c.tol = params.tol;
    c.max_iter = params.max_iter;
    require_valid(c, 0.0, 0.0);
    return c;
}

SolveOutcome project_intersection(const ConvexSet& c, const ConvexSet& d, const Vector& r,
                                  const ProjectionParams& params, const std::optional<Vector>& x0)
{
    if (c.dim() != d.dim()) {
        throw DimensionError("project_intersection: sets live in different dimensions");
    }
    require_dim(r, c.dim(), "project_intersection r");
    return solve_resolvent(normal_cone_of(c), normal_cone_of(d), projection_config(r, params), x0);
}

ProjectionParams aamr_projection_params(const Vector& r, double eta, double gamma, double kappa,
                                        double tol, std::size_t max_iter)
{
    if (!(eta > 0.0 && eta < 1.0)) {
        throw ParameterError("aamr_project: eta must lie in (0, 1)");
    }
    if (!(gamma > 0.0)) {
        throw ParameterError("aamr_project: gamma must be positive");
    }
    ProjectionParams p;
    p.theta = 1.0 / eta;
    p.sigma = (1.0 - eta) / (gamma * eta);
    p.tau = p.sigma;
    p.q = -r;
    p.r_c = Vector::Zero(r.size());
    p.r_d = Vector::Zero(r.size());
    p.gamma = gamma;
    p.kappa = kappa;
    p.tol = tol;
    p.max_iter = max_iter;
    return p;
}

SolveOutcome aamr_project(const ConvexSet& c, const ConvexSet& d, const Vector& r, double eta,
                          double gamma, double kappa, double tol, std::size_t max_iter,
                          const std::optional<Vector>& x0)
{
    return project_intersection(c, d, r, aamr_projection_params(r, eta, gamma, kappa, tol, max_iter),
                                x0);
}

DykstraResult dykstra_project(const ConvexSet& c, const ConvexSet& d, const Vector& r, double tol,
                              std::size_t max_iter)
{
    if (c.dim() != d.dim()) {
        throw DimensionError("dykstra_project: sets live in different dimensions");
    }
    require_dim(r, c.dim(), "dykstra_project r");
    if (!(tol > 0.0)) {
        throw ParameterError("dykstra_project: tol must be positive");
    }
    const auto dim = r.size();
    Vector x = r;
    Vector y = r;
    Vector pc = Vector::Zero(dim);
    Vector pd = Vector::Zero(dim);
    DykstraResult out;
    for (std::size_t k = 1; k <= max_iter; ++k) {
        const Vector y_new = c.project(x + pc);
        pc = x + pc - y_new;
        const Vector x_new = d.project(y_new + pd);
        pd = y_new + pd - x_new;
        const double dx = (x_new - x).norm();
        const double dy = (y_new - y).norm();
        const double gap = (x_new - y_new).norm();
        x = x_new;
        y = y_new;
        out.iterations = k;
        if (dx <= tol && dy <= tol && gap <= tol) {
            out.converged = true;
            break;
        }
    }
    out.point = x;
    return out;
}

} // namespace rsplit
