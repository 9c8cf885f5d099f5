#include "rsplit/best_approx.hpp"
#include "rsplit/engine.hpp"
#include "rsplit/export.hpp"
#include "rsplit/problem.hpp"
#include "rsplit/prox.hpp"
#include "rsplit/sets.hpp"
#include "rsplit/verification.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace rsplit;

namespace {

py::dict report_dict(const OracleReport& r)
{
    py::dict d;
    d["instance_id"] = r.instance_id;
    d["engine_value"] = r.engine_value;
    d["oracle_value"] = r.oracle_value;
    d["discrepancy"] = r.discrepancy;
    d["passed"] = r.passed;
    d["tolerance"] = r.tolerance;
    return d;
}

} // namespace

PYBIND11_MODULE(_rsplit, m)
{
    m.doc() = "Resolvents of sums of weakly monotone operators by relaxed reflected-resolvent splitting";

    auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", error.ptr());
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", error.ptr());
    py::register_exception<NotPositiveDefiniteError>(m, "NotPositiveDefiniteError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<SpecError>(m, "SpecError", error.ptr());

    // sets
    py::class_<ConvexSet>(m, "ConvexSet")
        .def("project", &ConvexSet::project, py::arg("x"))
        .def("contains", &ConvexSet::contains, py::arg("x"), py::arg("tol") = 1e-9)
        .def("distance", &ConvexSet::distance, py::arg("x"))
        .def_property_readonly("dim", &ConvexSet::dim)
        .def_property_readonly("name", &ConvexSet::name)
        .def("__repr__", [](const ConvexSet& c) { return "<ConvexSet " + c.name() + ">"; });
    m.def("halfspace", &halfspace, py::arg("a"), py::arg("b"));
    m.def("hyperplane", &hyperplane, py::arg("a"), py::arg("b"));
    m.def("ball", &ball, py::arg("center"), py::arg("radius"));
    m.def("box", &box, py::arg("lo"), py::arg("hi"));
    m.def("affine_subspace", &affine_subspace, py::arg("G"), py::arg("h"));

    // functions
    py::class_<ProxFunction>(m, "ProxFunction")
        .def_property_readonly("name", &ProxFunction::name)
        .def_property_readonly("modulus", &ProxFunction::modulus)
        .def("value", &ProxFunction::value, py::arg("x"))
        .def("gradient", &ProxFunction::gradient, py::arg("x"))
        .def("__repr__", [](const ProxFunction& f) { return "<ProxFunction " + f.name() + ">"; });
    m.def("prox", &prox, py::arg("f"), py::arg("gamma"), py::arg("x"));
    m.def("zero_function", &zero_function);
    m.def("quadratic", &quadratic, py::arg("M"), py::arg("b"), py::arg("c0") = 0.0);
    m.def("neg_sq_norm", &neg_sq_norm, py::arg("c"));
    m.def("one_norm", &one_norm, py::arg("w") = 1.0);
    m.def("indicator", &indicator, py::arg("C"));

    // operators
    py::class_<Operator>(m, "Operator")
        .def(py::init<std::string, Operator::ResolventFn, double, std::optional<double>, bool, Operator::ApplyFn,
                      std::optional<Eigen::Index>>(),
             py::arg("name"), py::arg("resolvent"), py::arg("modulus"), py::arg("lipschitz") = std::nullopt,
             py::arg("maximal") = true, py::arg("apply") = Operator::ApplyFn{}, py::arg("dim") = std::nullopt)
        .def_property_readonly("name", &Operator::name)
        .def_property_readonly("modulus", &Operator::modulus)
        .def_property_readonly("lipschitz", &Operator::lipschitz)
        .def_property_readonly("single_valued", &Operator::single_valued)
        .def("apply", &Operator::apply, py::arg("x"))
        .def("__repr__", [](const Operator& a) { return "<Operator " + a.name() + ">"; });
    m.def("resolvent", &resolvent, py::arg("A"), py::arg("gamma"), py::arg("x"));
    m.def("reflected_resolvent", &reflected_resolvent, py::arg("A"), py::arg("gamma"), py::arg("x"));
    m.def("zero_operator", &zero_operator);
    m.def("scaled_identity", &scaled_identity, py::arg("lam"));
    m.def("affine_quadratic", &affine_quadratic, py::arg("M"), py::arg("b"), py::arg("modulus") = std::nullopt);
    m.def("subdifferential", &subdifferential_of, py::arg("f"));
    m.def("normal_cone", &normal_cone_of, py::arg("C"));

    // engine
    py::class_<SplitConfig>(m, "SplitConfig")
        .def(py::init<>())
        .def_readwrite("omega", &SplitConfig::omega)
        .def_readwrite("r", &SplitConfig::r)
        .def_readwrite("theta", &SplitConfig::theta)
        .def_readwrite("q", &SplitConfig::q)
        .def_readwrite("sigma", &SplitConfig::sigma)
        .def_readwrite("tau", &SplitConfig::tau)
        .def_readwrite("r_a", &SplitConfig::r_a)
        .def_readwrite("r_b", &SplitConfig::r_b)
        .def_readwrite("gamma", &SplitConfig::gamma)
        .def_readwrite("kappa", &SplitConfig::kappa)
        .def_readwrite("tol", &SplitConfig::tol)
        .def_readwrite("max_iter", &SplitConfig::max_iter);

    py::class_<Violation>(m, "Violation")
        .def_readonly("constraint", &Violation::constraint)
        .def_readonly("residual", &Violation::residual)
        .def_readonly("message", &Violation::message)
        .def("__repr__", [](const Violation& v) { return "<Violation " + v.constraint + ">"; });

    py::class_<TraceRecord>(m, "TraceRecord")
        .def_readonly("n", &TraceRecord::n)
        .def_readonly("x", &TraceRecord::x)
        .def_readonly("p", &TraceRecord::p)
        .def_readonly("fp_residual", &TraceRecord::fp_residual)
        .def_readonly("shadow_residual", &TraceRecord::shadow_residual);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("solution", &SolveResult::solution)
        .def_readonly("governing", &SolveResult::governing)
        .def_readonly("iterations", &SolveResult::iterations)
        .def_readonly("converged", &SolveResult::converged)
        .def_readonly("rate_estimate", &SolveResult::rate_estimate);

    py::class_<SolveOutcome>(m, "SolveOutcome")
        .def_readonly("result", &SolveOutcome::result)
        .def_property_readonly("trace", [](const SolveOutcome& o) { return o.trace.records; })
        .def_property_readonly("solution", [](const SolveOutcome& o) { return o.result.solution; })
        .def_property_readonly("converged", [](const SolveOutcome& o) { return o.result.converged; })
        .def_property_readonly("iterations", [](const SolveOutcome& o) { return o.result.iterations; })
        .def("trace_csv", [](const SolveOutcome& o) {
            std::ostringstream os;
            write_trace_csv(os, o.trace);
            return os.str();
        });

    m.def(
        "balanced_config",
        [](double omega, const Vector& r, double alpha, double beta, double theta, std::optional<Vector> q,
           double gamma, double kappa, double tol, std::size_t max_iter) {
            BalanceOptions o;
            o.theta = theta;
            o.q = q.value_or(Vector());
            o.gamma = gamma;
            o.kappa = kappa;
            o.tol = tol;
            o.max_iter = max_iter;
            return balanced_config(omega, r, alpha, beta, o);
        },
        py::arg("omega"), py::arg("r"), py::arg("alpha"), py::arg("beta"), py::arg("theta") = 1.0,
        py::arg("q") = std::nullopt, py::arg("gamma") = 1.0, py::arg("kappa") = 0.5, py::arg("tol") = 1e-8,
        py::arg("max_iter") = 100000);
    m.def("validate_config", &validate_config, py::arg("config"), py::arg("alpha"), py::arg("beta"));
    m.def("swap_roles", &swap_roles, py::arg("config"));
    m.def("dr_step", &dr_step, py::arg("config"), py::arg("A"), py::arg("B"), py::arg("x"));
    m.def("solve_resolvent", &solve_resolvent, py::arg("A"), py::arg("B"), py::arg("config"),
          py::arg("x0") = std::nullopt);
    m.def(
        "maxmono_resolvent",
        [](const Operator& a, const Operator& b, double omega, const Vector& r, double theta,
           std::optional<Vector> q, double kappa, double tol, std::size_t max_iter, std::optional<Vector> x0) {
            MaxMonoOptions o;
            o.theta = theta;
            o.q = q.value_or(Vector());
            o.kappa = kappa;
            o.tol = tol;
            o.max_iter = max_iter;
            o.x0 = std::move(x0);
            return maxmono_resolvent(a, b, omega, r, o);
        },
        py::arg("A"), py::arg("B"), py::arg("omega"), py::arg("r"), py::arg("theta") = 1.0,
        py::arg("q") = std::nullopt, py::arg("kappa") = 0.5, py::arg("tol") = 1e-8, py::arg("max_iter") = 100000,
        py::arg("x0") = std::nullopt);
    m.def("aamr_params", &aamr_params, py::arg("gamma"), py::arg("eta"), py::arg("r"), py::arg("kappa") = 0.5,
          py::arg("tol") = 1e-8, py::arg("max_iter") = 100000);
    m.def(
        "avg_variant_params",
        [](double eta, const Vector& r) {
            const AveragedParams p = avg_variant_params(eta, r);
            return py::make_tuple(p.omega, p.theta, p.q);
        },
        py::arg("eta"), py::arg("r"), "Returns (omega, theta, q).");
    m.def(
        "estimate_rate",
        [](const std::vector<double>& residuals, std::size_t burn_in) {
            IterationTrace t;
            for (std::size_t n = 0; n < residuals.size(); ++n) {
                TraceRecord rec;
                rec.n = n;
                rec.fp_residual = residuals[n];
                t.records.push_back(std::move(rec));
            }
            return estimate_rate(t, burn_in);
        },
        py::arg("residuals"), py::arg("burn_in") = kDefaultBurnIn,
        "exp(slope) of a log-linear fit of fixed-point residuals, or None when they do not decay.");

    // applications
    m.def("prox_of_sum", &prox_of_sum, py::arg("f"), py::arg("g"), py::arg("omega"), py::arg("r"),
          py::arg("config") = std::nullopt, py::arg("x0") = std::nullopt);
    m.def(
        "project_intersection",
        [](const ConvexSet& c, const ConvexSet& d, const Vector& r, double theta, double sigma, double tau,
           double gamma, double kappa, double tol, std::size_t max_iter, std::optional<Vector> x0) {
            ProjectionParams p;
            p.theta = theta;
            p.sigma = sigma;
            p.tau = tau;
            p.gamma = gamma;
            p.kappa = kappa;
            p.tol = tol;
            p.max_iter = max_iter;
            return project_intersection(c, d, r, p, x0);
        },
        py::arg("C"), py::arg("D"), py::arg("r"), py::arg("theta") = 1.0, py::arg("sigma") = 0.5,
        py::arg("tau") = 0.5, py::arg("gamma") = 1.0, py::arg("kappa") = 0.5, py::arg("tol") = 1e-8,
        py::arg("max_iter") = 100000, py::arg("x0") = std::nullopt);
    m.def("aamr_project", &aamr_project, py::arg("C"), py::arg("D"), py::arg("r"), py::arg("eta"),
          py::arg("gamma"), py::arg("kappa") = 0.5, py::arg("tol") = 1e-8, py::arg("max_iter") = 100000,
          py::arg("x0") = std::nullopt);
    m.def(
        "dykstra_project",
        [](const ConvexSet& c, const ConvexSet& d, const Vector& r, double tol, std::size_t max_iter) {
            const DykstraResult res = dykstra_project(c, d, r, tol, max_iter);
            return py::make_tuple(res.point, res.iterations, res.converged);
        },
        py::arg("C"), py::arg("D"), py::arg("r"), py::arg("tol") = 1e-10, py::arg("max_iter") = 1000000,
        "Returns (point, iterations, converged).");

    // problem files and verification
    m.def(
        "solve_spec",
        [](const std::string& text) { return solve_problem(parse_problem_spec_text(text)); },
        py::arg("text"), "Solve a JSON problem document.");
    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& name, std::uint64_t seed) {
            py::list out;
            for (const auto& r : run_suite(name, seed)) {
                out.append(report_dict(r));
            }
            return out;
        },
        py::arg("name"), py::arg("seed") = kDefaultSeed);
    m.attr("DEFAULT_SEED") = kDefaultSeed;
}
