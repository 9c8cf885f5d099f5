// rsplit: file-driven front end for the splitting solvers.
//
//   rsplit resolvent <spec.json>
//   rsplit prox <spec.json>
//   rsplit project <spec.json> [--oracle dykstra]
//   rsplit sweep <spec.json> --gamma 0.5,1,2 --kappa 0.5,1 [--eta 0.5]
//   rsplit verify <suite> [--json report.json]
//
// Exit status: 0 converged / all checks passed, 2 no convergence or failed
// checks, 1 malformed input or invalid parameters.

#include "rsplit/best_approx.hpp"
#include "rsplit/export.hpp"
#include "rsplit/problem.hpp"
#include "rsplit/verification.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace rsplit;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kNoConvergence = 2;
constexpr double kSweepAgreement = 1e-6;

void write_trace(const OutputSpec& out, const IterationTrace& trace)
{
    if (!out.trace) {
        return;
    }
    std::ofstream f(*out.trace);
    if (!f) {
        throw Error("cannot open trace file " + *out.trace);
    }
    if (out.format == "jsonl") {
        write_trace_jsonl(f, trace);
    } else {
        write_trace_csv(f, trace);
    }
}

void write_result(const OutputSpec& out, const SolveResult& result)
{
    if (!out.result) {
        return;
    }
    std::ofstream f(*out.result);
    if (!f) {
        throw Error("cannot open result file " + *out.result);
    }
    f << to_json(result).dump(2) << '\n';
}

void print_result(const SolveResult& result)
{
    std::cout << "solution: " << format_vector(result.solution) << '\n'
              << "iterations: " << result.iterations << '\n'
              << "converged: " << (result.converged ? "true" : "false") << '\n'
              << "rate: " << (result.rate_estimate ? format_number(*result.rate_estimate) : "none") << '\n';
}

ProblemSpec load_kind(const std::string& path, ProblemKind expected)
{
    ProblemSpec spec = load_problem_spec(path);
    if (spec.kind != expected) {
        throw SpecError(path + ": /kind: expected \"" + to_string(expected) + "\", got \""
                        + to_string(spec.kind) + "\"");
    }
    return spec;
}

int cmd_solve(const std::string& path, ProblemKind kind, bool dykstra)
{
    const ProblemSpec spec = load_kind(path, kind);
    const SolveOutcome out = solve_problem(spec);
    print_result(out.result);
    write_trace(spec.output, out.trace);
    write_result(spec.output, out.result);
    if (dykstra) {
        const DykstraResult d = dykstra_project(build_set(spec.sets.at(0)), build_set(spec.sets.at(1)), spec.r);
        std::cout << "dykstra: " << format_vector(d.point) << '\n'
                  << "dykstra_iterations: " << d.iterations << '\n'
                  << "discrepancy: " << format_number(norm(out.result.solution - d.point)) << '\n';
        if (!d.converged) {
            std::cerr << "warning: Dykstra reference did not converge\n";
        }
    }
    return out.result.converged ? kOk : kNoConvergence;
}

struct GridPoint {
    double gamma;
    double kappa;
    std::optional<double> eta;
};

int cmd_sweep(const std::string& path, std::vector<double> gammas, std::vector<double> kappas,
              const std::vector<double>& etas)
{
    const ProblemSpec base = load_problem_spec(path);
    if (!etas.empty() && base.kind != ProblemKind::project) {
        throw SpecError("--eta applies to project problems only");
    }
    if (gammas.empty()) {
        gammas.push_back(base.algorithm.gamma.value_or(1.0));
    }
    if (kappas.empty()) {
        kappas.push_back(base.algorithm.kappa.value_or(0.5));
    }
    std::vector<GridPoint> grid;
    for (double g : gammas) {
        for (double k : kappas) {
            if (etas.empty()) {
                grid.push_back({g, k, base.algorithm.eta});
            } else {
                for (double e : etas) {
                    grid.push_back({g, k, e});
                }
            }
        }
    }

    std::cout << "gamma,kappa,eta,iterations,converged,rate\n";
    std::vector<Vector> solutions;
    for (const GridPoint& pt : grid) {
        ProblemSpec spec = base;
        spec.algorithm.gamma = pt.gamma;
        spec.algorithm.kappa = pt.kappa;
        spec.algorithm.eta = pt.eta;
        std::optional<SolveResult> result;
        try {
            result = solve_problem(spec).result;
        } catch (const SpecError&) {
            throw;
        } catch (const Error& e) {
            std::cerr << "gamma=" << format_number(pt.gamma) << " kappa=" << format_number(pt.kappa)
                      << ": " << e.what() << '\n';
        }
        std::cout << format_number(pt.gamma) << ',' << format_number(pt.kappa) << ','
                  << (pt.eta ? format_number(*pt.eta) : "") << ','
                  << (result ? result->iterations : 0) << ','
                  << (result && result->converged ? "true" : "false") << ','
                  << (result && result->rate_estimate ? format_number(*result->rate_estimate) : "")
                  << '\n';
        if (result && result->converged) {
            solutions.push_back(result->solution);
        }
    }

    double gap = 0.0;
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        for (std::size_t j = i + 1; j < solutions.size(); ++j) {
            gap = std::max(gap, norm(solutions[i] - solutions[j]));
        }
    }
    const bool agree = gap <= kSweepAgreement;
    std::cout << "# converged " << solutions.size() << '/' << grid.size()
              << ", max solution gap " << format_number(gap) << (agree ? " (agree)" : " (DISAGREE)") << '\n';
    if (!solutions.empty()) {
        std::cout << "# solution " << format_vector(solutions.front()) << '\n';
    }
    return solutions.empty() || !agree ? kNoConvergence : kOk;
}

std::uint64_t seed_from_env()
{
    const char* raw = std::getenv("RS_SEED");
    if (raw == nullptr || *raw == '\0') {
        return kDefaultSeed;
    }
    std::size_t used = 0;
    std::uint64_t seed = 0;
    try {
        seed = std::stoull(raw, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || raw[used] != '\0') {
        throw ParameterError(std::string("RS_SEED must be an integer, got '") + raw + "'");
    }
    return seed;
}

int cmd_verify(const std::string& suite, const std::string& json_path)
{
    const std::uint64_t seed = seed_from_env();
    const std::vector<OracleReport> reports = run_suite(suite, seed);
    std::size_t passed = 0;
    for (const OracleReport& r : reports) {
        passed += r.passed ? 1 : 0;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.instance_id
                  << " engine=" << format_vector(r.engine_value)
                  << " oracle=" << format_vector(r.oracle_value)
                  << " discrepancy=" << format_number(r.discrepancy)
                  << " tolerance=" << format_number(r.tolerance) << '\n';
    }
    std::cout << suite << ": " << passed << '/' << reports.size() << " passed (seed " << seed << ")\n";
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) {
            throw Error("cannot open report file " + json_path);
        }
        f << reports_to_json(reports, seed).dump(2) << '\n';
    }
    return passed == reports.size() ? kOk : kNoConvergence;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Resolvents, proximity operators and projections by relaxed reflected-resolvent splitting"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string oracle;
    std::string suite;
    std::string json_path;
    std::vector<double> gammas;
    std::vector<double> kappas;
    std::vector<double> etas;

    auto* resolvent = app.add_subcommand("resolvent", "Resolvent of omega(A+B) at r");
    resolvent->add_option("spec", spec_path, "Problem file (JSON)")->required();
    auto* prox = app.add_subcommand("prox", "Proximity operator of omega(f+g) at r");
    prox->add_option("spec", spec_path, "Problem file (JSON)")->required();
    auto* project = app.add_subcommand("project", "Projection of r onto C cap D");
    project->add_option("spec", spec_path, "Problem file (JSON)")->required();
    project->add_option("--oracle", oracle, "Cross-check against a reference algorithm")
        ->check(CLI::IsMember({"dykstra"}));
    auto* sweep = app.add_subcommand("sweep", "Solve over a grid of gamma, kappa (and eta)");
    sweep->add_option("spec", spec_path, "Problem file (JSON)")->required();
    sweep->add_option("--gamma", gammas, "Step sizes")->delimiter(',')->check(CLI::PositiveNumber);
    sweep->add_option("--kappa", kappas, "Relaxation parameters in (0, 1]")->delimiter(',');
    sweep->add_option("--eta", etas, "AAMR parameters in (0, 1), project problems only")->delimiter(',');
    auto* verify = app.add_subcommand("verify", "Run a verification suite (seed from RS_SEED)");
    verify->add_option("suite", suite, "Suite name")->required();
    verify->add_option("--json", json_path, "Write the reports as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kFailure;
    }

    try {
        if (*resolvent) {
            return cmd_solve(spec_path, ProblemKind::resolvent, false);
        }
        if (*prox) {
            return cmd_solve(spec_path, ProblemKind::prox, false);
        }
        if (*project) {
            return cmd_solve(spec_path, ProblemKind::project, oracle == "dykstra");
        }
        if (*sweep) {
            return cmd_sweep(spec_path, gammas, kappas, etas);
        }
        if (*verify) {
            return cmd_verify(suite, json_path);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: invalid parameters\n" << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
