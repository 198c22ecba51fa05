// Command-line front end: loads matrices from JSON files, runs the analyses,
// and emits deterministic machine-readable reports on standard output.
//
// Exit codes: 0 success, 2 input error, 3 mathematical infeasibility.

#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhqm/errors.hpp"
#include "qhqm/linalg.hpp"
#include "qhqm/tolerance.hpp"
#include "qhqm/matrix_json.hpp"
#include "qhqm/metric_solver.hpp"
#include "qhqm/observable_fixer.hpp"
#include "qhqm/spectral.hpp"
#include "qhqm/symmetry.hpp"
#include "qhqm/toy_model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitInfeasible = 3;

void emit(const std::string& json) {
    std::fputs(json.c_str(), stdout);
    std::fputc('\n', stdout);
}

void run_spectrum(const std::string& input, const qhqm::Tolerance& tol) {
    const qhqm::ComplexMatrix h = qhqm::read_matrix_file(input);
    emit(qhqm::spectrum_report_to_json(qhqm::classify_spectrum(h, tol)));
}

void run_metrics(const std::string& input, const std::vector<double>& weights,
                 const qhqm::Tolerance& tol) {
    const qhqm::ComplexMatrix h = qhqm::read_matrix_file(input);
    const qhqm::MetricSpace space = qhqm::solve_metric_space(h, tol);

    qhqm::JsonWriter w;
    w.begin_object();
    w.key("dimension").value(space.dimension);
    w.key("residual").value(space.residual);
    w.key("basis").begin_array();
    for (const auto& b : space.basis) qhqm::write_matrix(w, b);
    w.end_array();

    if (!weights.empty()) {
        const auto sys = qhqm::biorthogonal_system(h, tol);
        const qhqm::ComplexMatrix theta =
            qhqm::metric_from_weights(sys, qhqm::MetricWeights(weights));
        // reported metrics are normalized to trace N
        const double tr = qhqm::trace(theta).real();
        const auto n = static_cast<double>(theta.rows());
        const qhqm::ComplexMatrix reported = theta * qhqm::Complex(n / tr, 0.0);
        const auto eigs = qhqm::eig_hermitian(reported, tol);
        w.key("metric");
        qhqm::write_matrix(w, reported);
        w.key("positive").value(eigs.eigenvalues.front() > tol.abs_eps);
        w.key("min_eigenvalue").value(eigs.eigenvalues.front());
    }
    w.end_object();
    emit(w.str());
}

void run_charge(const std::string& input, const std::string& metric, const std::string& parity,
                const qhqm::Tolerance& tol) {
    const qhqm::ComplexMatrix h = qhqm::read_matrix_file(input);
    const qhqm::ComplexMatrix theta = qhqm::read_matrix_file(metric);
    const qhqm::ComplexMatrix p = qhqm::read_matrix_file(parity);
    if (!h.is_square() || h.rows() != theta.rows() || h.rows() != p.rows())
        throw qhqm::DimensionError("charge: matrices must share one square dimension");
    emit(qhqm::charge_report_to_json(qhqm::charge_factorization(theta, p, tol)));
}

void run_fix(const std::string& input, const std::string& observables,
             const qhqm::Tolerance& tol) {
    const qhqm::ComplexMatrix h = qhqm::read_matrix_file(input);
    const std::vector<qhqm::ComplexMatrix> obs = qhqm::read_matrix_list_file(observables);
    const qhqm::MetricSpace space = qhqm::solve_metric_space(h, tol);
    const qhqm::ConstrainResult result = qhqm::constrain_metric(space, obs, tol);

    qhqm::JsonWriter w;
    w.begin_object();
    w.key("dimension").value(result.reduced.dimension);
    w.key("unique_ray").value(result.unique_ray);
    w.key("residual").value(result.reduced.residual);
    w.key("basis").begin_array();
    for (const auto& b : result.reduced.basis) qhqm::write_matrix(w, b);
    w.end_array();
    w.key("theta_phys");
    if (result.theta_phys)
        qhqm::write_matrix(w, *result.theta_phys);
    else
        w.null();
    w.key("diagnostic").value(std::string_view(result.diagnostic));
    w.end_object();
    emit(w.str());
}

struct Model2x2Args {
    double alpha = 0.0;
    std::optional<double> xi;
    std::optional<double> gamma;
    int grid = 101;
};

qhqm::ToyParameters make_params(const Model2x2Args& args, bool degrees) {
    const double to_rad = degrees ? std::numbers::pi / 180.0 : 1.0;
    const double alpha = args.alpha * to_rad;
    if (args.gamma) return qhqm::ToyParameters::from_gamma(alpha, *args.gamma * to_rad);
    return qhqm::ToyParameters::from_xi(alpha, args.xi.value_or(0.0));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-Hermitian matrix-model workbench"};
    app.require_subcommand(1);

    qhqm::Tolerance tol;
    bool degrees = false;
    app.add_option("--tol-abs", tol.abs_eps, "absolute tolerance (default 1e-10)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tol-rel", tol.rel_eps, "relative tolerance (default 1e-10)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--degrees", degrees, "interpret angles as degrees");

    auto* spectrum = app.add_subcommand("spectrum", "classify the spectrum of a matrix");
    spectrum->fallthrough();
    std::string spectrum_input;
    spectrum->add_option("input", spectrum_input, "matrix JSON file")->required();

    auto* metrics = app.add_subcommand(
        "metrics", "solve the Hermitian intertwining kernel, optionally build a weighted metric");
    metrics->fallthrough();
    std::string metrics_input;
    std::vector<double> weights;
    metrics->add_option("input", metrics_input, "matrix JSON file")->required();
    metrics->add_option("--weights", weights, "positive spectral weights, one per eigenvalue")
        ->delimiter(',');

    auto* charge = app.add_subcommand("charge", "factorize a metric through a parity");
    charge->fallthrough();
    std::string charge_input, charge_metric, charge_parity;
    charge->add_option("input", charge_input, "Hamiltonian matrix JSON file")->required();
    charge->add_option("metric", charge_metric, "metric matrix JSON file")->required();
    charge->add_option("parity", charge_parity, "parity matrix JSON file")->required();

    auto* fix = app.add_subcommand("fix", "constrain the metric space by observables");
    fix->fallthrough();
    std::string fix_input, fix_observables;
    fix->add_option("input", fix_input, "Hamiltonian matrix JSON file")->required();
    fix->add_option("observables", fix_observables, "JSON array of matrix objects")->required();

    auto* model = app.add_subcommand("model2x2", "closed forms of the exactly solvable 2x2 family");
    model->fallthrough();
    model->require_subcommand(1);
    Model2x2Args margs;
    const char* const leaf_names[] = {"hamiltonian", "metric", "energies", "charge-scan"};
    const char* const leaf_help[] = {"the 2x2 Hamiltonian", "the general metric",
                                     "the energy doublet", "scan ||C^2 - I|| over admissible xi"};
    CLI::App* leaves[4];
    for (int i = 0; i < 4; ++i) {
        CLI::App* leaf = model->add_subcommand(leaf_names[i], leaf_help[i]);
        leaf->fallthrough();
        leaf->add_option("--alpha", margs.alpha, "angle in (0, pi)")->required();
        auto* xi_opt = leaf->add_option("--xi", margs.xi, "metric asymmetry parameter");
        leaf->add_option("--gamma", margs.gamma, "admissible parametrization, in [0, pi/2)")
            ->excludes(xi_opt);
        if (std::string(leaf_names[i]) == "charge-scan")
            leaf->add_option("--grid", margs.grid, "grid size (default 101)");
        leaves[i] = leaf;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (!qhqm::tolerance_valid(tol)) {
        std::fprintf(stderr, "error: at least one of --tol-abs/--tol-rel must be positive\n");
        return kExitInputError;
    }

    try {
        if (spectrum->parsed()) {
            run_spectrum(spectrum_input, tol);
        } else if (metrics->parsed()) {
            run_metrics(metrics_input, weights, tol);
        } else if (charge->parsed()) {
            run_charge(charge_input, charge_metric, charge_parity, tol);
        } else if (fix->parsed()) {
            run_fix(fix_input, fix_observables, tol);
        } else if (model->parsed()) {
            if (leaves[0]->parsed()) {
                emit(qhqm::matrix_to_json(qhqm::toy_hamiltonian(make_params(margs, degrees))));
            } else if (leaves[1]->parsed()) {
                emit(qhqm::matrix_to_json(qhqm::toy_metric(make_params(margs, degrees))));
            } else if (leaves[2]->parsed()) {
                const auto e = qhqm::toy_energies(make_params(margs, degrees));
                qhqm::JsonWriter w;
                w.begin_object();
                w.key("e_minus").value(e.e_minus);
                w.key("e_plus").value(e.e_plus);
                w.end_object();
                emit(w.str());
            } else if (leaves[3]->parsed()) {
                const auto params = make_params(margs, degrees);  // validates alpha
                const auto scan = qhqm::charge_nonexistence_scan(params.alpha(), margs.grid);
                qhqm::JsonWriter w;
                w.begin_object();
                w.key("alpha").value(params.alpha());
                w.key("grid").value(static_cast<std::int64_t>(margs.grid));
                w.key("min_residual").value(scan.min_residual);
                w.key("witness_xi").value(scan.witness_xi);
                w.end_object();
                emit(w.str());
            }
        }
    } catch (const qhqm::NoPositiveMetricError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const qhqm::ExceptionalPointError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const qhqm::ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const qhqm::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitOk;
}
