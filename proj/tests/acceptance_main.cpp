// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] must point at the qhqm CLI binary (used by the
// determinism criterion).

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "qhqm/linalg.hpp"
#include "qhqm/matrix_json.hpp"
#include "qhqm/metric_solver.hpp"
#include "qhqm/observable_fixer.hpp"
#include "qhqm/spectral.hpp"
#include "qhqm/symmetry.hpp"
#include "qhqm/toy_model.hpp"

using namespace qhqm;

namespace {

constexpr double kPi = std::numbers::pi;

struct CriterionResult {
    bool pass = true;
    std::string detail;

    void fail(const std::string& message) {
        if (pass) detail = message;  // keep the first failure
        pass = false;
    }
};

ComplexMatrix toy_h(double alpha) { return toy_hamiltonian(ToyParameters::from_xi(alpha, 0.0)); }
ComplexMatrix toy_theta(double alpha, double xi) {
    return toy_metric(ToyParameters::from_xi(alpha, xi));
}

double projection_residual(const MetricSpace& space, const ComplexMatrix& m) {
    const auto coords = span_coordinates(space, m);
    ComplexMatrix projected(m.rows(), m.cols());
    for (std::size_t k = 0; k < space.dimension; ++k)
        projected += space.basis[k] * Complex(coords[k], 0.0);
    return frobenius_norm(m - projected);
}

// ---- shared random ensemble for the spectral-construction criteria ----

ComplexMatrix random_complex(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

double condition_2(const ComplexMatrix& m) {
    const auto gram = eig_hermitian(adjoint(m) * m);
    const double lo = gram.eigenvalues.front();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(gram.eigenvalues.back() / lo);
}

const std::vector<ComplexMatrix>& random_real_spectrum_ensemble() {
    static const std::vector<ComplexMatrix> cache = [] {
        std::mt19937 rng(20240818);
        std::uniform_real_distribution<double> value(-3.0, 3.0);
        std::vector<ComplexMatrix> out;
        for (int i = 0; i < 50; ++i) {
            const std::size_t n = 2 + static_cast<std::size_t>(i % 7);
            std::vector<double> spectrum;
            while (spectrum.size() < n) {
                const double candidate = value(rng);
                bool ok = true;
                for (double v : spectrum)
                    if (std::abs(candidate - v) < 0.2) ok = false;
                if (ok) spectrum.push_back(candidate);
            }
            ComplexMatrix v(n, n);
            do {
                v = random_complex(n, rng);
            } while (condition_2(v) >= 1e3);
            ComplexMatrix d(n, n);
            for (std::size_t k = 0; k < n; ++k) d(k, k) = spectrum[k];
            out.push_back(v * d * inverse(v));
        }
        return out;
    }();
    return cache;
}

// ---- criteria ----

CriterionResult general_metric_family() {
    CriterionResult result;
    for (int i = 0; i < 50; ++i) {
        const double alpha = 0.05 + (kPi - 0.10) * (i + 0.5) / 50.0;
        const auto space = solve_metric_space(toy_h(alpha));
        if (space.dimension != 2) {
            result.fail("kernel dimension != 2 at alpha = " + format_double(alpha));
            continue;
        }
        for (double xi : {-0.5, 0.0, 0.5}) {
            const double resid = projection_residual(space, toy_theta(alpha, xi));
            if (!(resid < 1e-10))
                result.fail("projection residual " + format_double(resid) + " at alpha = " +
                            format_double(alpha) + ", xi = " + format_double(xi));
        }
    }
    return result;
}

CriterionResult positivity_criterion() {
    CriterionResult result;
    for (int i = 0; i < 100; ++i) {
        const double alpha = 0.05 + (kPi - 0.10) * (i + 0.5) / 100.0;
        const double c = std::cos(alpha);
        for (int j = 0; j < 100; ++j) {
            const double xi = -1.2 + 2.4 * j / 99.0;
            const double radius = std::sqrt(xi * xi + c * c);
            if (std::abs(radius - 1.0) <= 1e-8) continue;  // excluded boundary band
            const bool predicted = xi * xi + c * c < 1.0;
            const bool verdict = is_positive_definite(toy_theta(alpha, xi));
            if (verdict != predicted)
                result.fail("verdict mismatch at alpha = " + format_double(alpha) +
                            ", xi = " + format_double(xi));
        }
    }
    return result;
}

CriterionResult metric_eigenvalues() {
    CriterionResult result;
    for (int i = 0; i < 100; ++i) {
        const double alpha = 0.05 + (kPi - 0.10) * (i + 0.5) / 100.0;
        const double c = std::cos(alpha);
        for (int j = 0; j < 100; ++j) {
            const double xi = -1.2 + 2.4 * j / 99.0;
            if (!(xi * xi + c * c < 1.0)) continue;  // admissible region only
            const double root = std::sqrt(xi * xi + c * c);
            const auto sys = eig_hermitian(toy_theta(alpha, xi));
            if (!(std::abs(sys.eigenvalues[0] - (1.0 - root)) < 1e-12) ||
                !(std::abs(sys.eigenvalues[1] - (1.0 + root)) < 1e-12))
                result.fail("eigenvalue error above 1e-12 at alpha = " + format_double(alpha) +
                            ", xi = " + format_double(xi));
        }
    }
    return result;
}

CriterionResult charge_nonexistence() {
    CriterionResult result;
    const ComplexMatrix parity{{1.0, 0.0}, {0.0, -1.0}};

    for (int i = 0; i < 100; ++i) {
        const double alpha = 0.05 + (kPi - 0.10) * (i + 0.5) / 100.0;
        if (std::abs(std::cos(alpha)) < 0.1) continue;
        const auto scan = charge_nonexistence_scan(alpha, 100);
        if (!(scan.min_residual >= 0.01))
            result.fail("scan minimum " + format_double(scan.min_residual) + " at alpha = " +
                        format_double(alpha));
    }

    const auto hermitian_point = charge_factorization(toy_theta(kPi / 2, 0.0), parity);
    if (!(hermitian_point.involution_residual_c <= 1e-12))
        result.fail("residual above 1e-12 at the Hermitian point");

    const auto report = charge_factorization(toy_theta(kPi / 3, 0.3), parity);
    const ComplexMatrix c_squared = report.charge * report.charge;
    const ComplexMatrix pinned{{1.44, 0.3}, {-0.3, 0.24}};
    if (!(frobenius_norm(c_squared - pinned) < 1e-12))
        result.fail("pinned C^2 value not reproduced to 1e-12");
    return result;
}

CriterionResult observable_fixing() {
    CriterionResult result;
    std::mt19937 rng(20240819);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    std::uniform_real_distribution<double> angle(0.1, kPi - 0.1);

    for (int rep = 0; rep < 100; ++rep) {
        const double alpha = angle(rng);
        const double a = entry(rng);
        const double d = entry(rng);
        double b = entry(rng);
        while (std::abs(b) < 0.05) b = entry(rng);
        const ComplexMatrix obs{{a, b}, {b, d}};

        const auto space = solve_metric_space(toy_h(alpha));
        const auto fixed = constrain_metric(space, {obs});
        if (!fixed.unique_ray) {
            result.fail("no unique ray at sample " + std::to_string(rep));
            continue;
        }
        const ComplexMatrix& ray = fixed.reduced.basis.front();
        const double ray_xi =
            (ray(0, 0).real() - ray(1, 1).real()) / (ray(0, 0).real() + ray(1, 1).real());
        const double expected = (d - a) / (2.0 * b) * std::cos(alpha);
        if (!(std::abs(ray_xi - expected) < 1e-10))
            result.fail("ray parameter off by " + format_double(std::abs(ray_xi - expected)) +
                        " at sample " + std::to_string(rep));
        if (fixed.theta_phys) {
            const double against_h =
                check_quasi_hermiticity(toy_h(alpha), *fixed.theta_phys).residual;
            const double against_obs = check_quasi_hermiticity(obs, *fixed.theta_phys).residual;
            if (!(against_h < 1e-10) || !(against_obs < 1e-10))
                result.fail("theta_phys residual above 1e-10 at sample " + std::to_string(rep));
        }
    }
    return result;
}

CriterionResult spectral_construction() {
    CriterionResult result;
    std::mt19937 rng(20240820);
    std::uniform_real_distribution<double> weight(0.5, 2.0);

    for (const ComplexMatrix& h : random_real_spectrum_ensemble()) {
        const auto sys = biorthogonal_system(h);
        std::vector<double> weights(sys.dimension);
        for (double& w : weights) w = weight(rng);
        const ComplexMatrix theta = metric_from_weights(sys, MetricWeights(weights));

        if (!is_hermitian(theta)) result.fail("weighted metric is not Hermitian");
        if (!is_positive_definite(theta)) result.fail("weighted metric is not positive definite");
        const double resid = check_quasi_hermiticity(h, theta).residual;
        if (!(resid < 1e-8))
            result.fail("intertwining residual " + format_double(resid));
        const double reconstruct =
            frobenius_norm(spectral_reconstruct(sys) - h) / frobenius_norm(h);
        if (!(reconstruct < 1e-8))
            result.fail("reconstruction error " + format_double(reconstruct));
    }
    return result;
}

// brute-force row-reduction oracle, independent of the SVD path
std::size_t oracle_dimension(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    const ComplexMatrix hdag = adjoint(h);
    std::vector<std::vector<double>> rows;
    const auto add_direction = [&](const ComplexMatrix& dir) {
        ComplexMatrix image(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Complex sum = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    sum += dir(i, k) * h(k, j) - hdag(i, k) * dir(k, j);
                image(i, j) = sum;
            }
        std::vector<double> row;
        row.reserve(2 * n * n);
        for (const Complex& z : image.data()) {
            row.push_back(z.real());
            row.push_back(z.imag());
        }
        rows.push_back(std::move(row));
    };
    for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix e(n, n);
        e(i, i) = 1.0;
        add_direction(e);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ComplexMatrix s(n, n);
            s(i, j) = 1.0;
            s(j, i) = 1.0;
            add_direction(s);
            ComplexMatrix k(n, n);
            k(i, j) = Complex(0.0, 1.0);
            k(j, i) = Complex(0.0, -1.0);
            add_direction(k);
        }

    double largest = 0.0;
    for (const auto& row : rows)
        for (double v : row) largest = std::max(largest, std::abs(v));
    if (largest == 0.0) return rows.size();
    const double threshold = 1e-7 * largest;
    const std::size_t ncols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows.size(); ++r)
            if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
        if (std::abs(rows[pivot][col]) <= threshold) continue;
        std::swap(rows[rank], rows[pivot]);
        const double inv = 1.0 / rows[rank][col];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            const double factor = rows[r][col] * inv;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        ++rank;
    }
    return rows.size() - rank;
}

CriterionResult dimension_law() {
    CriterionResult result;
    for (const ComplexMatrix& h : random_real_spectrum_ensemble()) {
        const std::size_t n = h.rows();
        const std::size_t computed = solve_metric_space(h).dimension;
        const std::size_t brute_force = oracle_dimension(h);
        if (computed != n || brute_force != n)
            result.fail("dimension " + std::to_string(computed) + " vs oracle " +
                        std::to_string(brute_force) + " for n = " + std::to_string(n));
    }
    return result;
}

CriterionResult exceptional_points() {
    CriterionResult result;
    const ComplexMatrix at_zero{{-1.0, 1.0}, {-1.0, 1.0}};
    const ComplexMatrix at_pi{{-1.0, -1.0}, {1.0, 1.0}};
    if (!classify_spectrum(at_zero).exceptional) result.fail("alpha = 0 not flagged");
    if (!classify_spectrum(at_pi).exceptional) result.fail("alpha = pi not flagged");
    for (double alpha : {1e-2, kPi / 4, kPi / 2, kPi - 1e-2})
        if (classify_spectrum(toy_h(alpha)).exceptional)
            result.fail("false exceptional flag at alpha = " + format_double(alpha));
    for (const ComplexMatrix& endpoint : {at_zero, at_pi}) {
        bool threw = false;
        try {
            (void)biorthogonal_system(endpoint);
        } catch (const ExceptionalPointError&) {
            threw = true;
        }
        if (!threw) result.fail("biorthogonal_system accepted an exceptional endpoint");
    }
    return result;
}

CriterionResult pseudo_hermiticity() {
    CriterionResult result;
    const ComplexMatrix parity{{1.0, 0.0}, {0.0, -1.0}};
    for (int i = 0; i < 50; ++i) {
        const double alpha = 1e-2 + (kPi - 2e-2) * (i + 0.5) / 50.0;
        if (!check_pseudo_hermiticity(toy_h(alpha), parity).holds)
            result.fail("parity pseudo-metric fails at alpha = " + format_double(alpha));
    }
    std::mt19937 rng(20240821);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix eta =
            hermitian_part(random_complex(3, rng)) + ComplexMatrix::identity(3) * Complex(3.0, 0.0);
        const auto sym = check_eta_symmetry(random_complex(3, rng), eta);
        if (!(frobenius_norm(sym.s_matrix - ComplexMatrix::identity(3)) <= 1e-12))
            result.fail("Hermitian eta left a nontrivial symmetry");
    }
    return result;
}

// ---- CLI determinism ----

struct RunOutput {
    int exit_code = -1;
    std::string stdout_text;
};

RunOutput run_command(const std::string& command) {
    RunOutput out;
    const std::string full = command + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return out;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.stdout_text.append(buffer, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) out.exit_code = WEXITSTATUS(status);
    return out;
}

CriterionResult cli_determinism(const std::string& cli) {
    CriterionResult result;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("qhqm_acceptance_" + std::to_string(getpid()));
    fs::create_directories(dir);

    const auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        out << text;
        return (dir / name).string();
    };
    const auto write_matrix_file = [&](const std::string& name, const ComplexMatrix& m) {
        return write(name, matrix_to_json(m));
    };

    ComplexMatrix diag12(2, 2);
    diag12(0, 0) = 1.0;
    diag12(1, 1) = 2.0;
    const std::string h_pi3 = write_matrix_file("h_pi3.json", toy_h(kPi / 3));
    const std::string h_pi2 = write_matrix_file("h_pi2.json", toy_h(kPi / 2));
    const std::string h_zero =
        write_matrix_file("h_alpha0.json", ComplexMatrix{{-1.0, 1.0}, {-1.0, 1.0}});
    const std::string h_complex =
        write_matrix_file("h_b15.json", ComplexMatrix{{-1.0, 1.5}, {-1.5, 1.0}});
    const std::string d12 = write_matrix_file("diag12.json", diag12);
    const std::string theta03 = write_matrix_file("theta03.json", toy_theta(kPi / 3, 0.3));
    const std::string eye = write_matrix_file("identity.json", ComplexMatrix::identity(2));
    const std::string parity =
        write_matrix_file("parity.json", ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}});
    const std::string obs_a =
        write("obs_a.json", "[" + matrix_to_json(ComplexMatrix{{1.0, 1.0}, {1.0, 3.0}}) + "]");
    const std::string obs_empty = write("obs_empty.json", "[]");
    const std::string obs_id =
        write("obs_id.json", "[" + matrix_to_json(ComplexMatrix::identity(2)) + "]");

    const std::string alpha_pi3 = format_double(kPi / 3);
    const std::string alpha_pi2 = format_double(kPi / 2);

    struct Case {
        std::string args;
        int expected_exit;
        std::function<void(const nlohmann::json&, CriterionResult&)> semantic;
    };
    const std::vector<Case> cases = {
        {"spectrum " + h_pi3, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (!j.at("all_real").get<bool>() || j.at("exceptional").get<bool>())
                 r.fail("spectrum report wrong for the interior Hamiltonian");
         }},
        {"spectrum " + d12, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (!j.at("all_real").get<bool>()) r.fail("diagonal spectrum not real");
         }},
        {"spectrum " + h_zero, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (!j.at("exceptional").get<bool>()) r.fail("endpoint not flagged exceptional");
         }},
        {"metrics " + h_pi3, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (j.at("dimension") != 2) r.fail("metrics dimension != 2");
         }},
        {"metrics " + h_pi3 + " --weights 1,1", 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (!j.at("positive").get<bool>()) r.fail("weighted metric not positive");
             const auto& data = j.at("metric").at("data");
             const double c = std::cos(kPi / 3);
             if (std::abs(data[0][0].get<double>() - 1.0) > 1e-10 ||
                 std::abs(data[1][0].get<double>() + c) > 1e-10)
                 r.fail("weighted metric is not the PT-even ray");
         }},
        {"metrics " + h_complex + " --weights 1,1", 3, nullptr},
        {"charge " + h_pi3 + " " + theta03 + " " + parity, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (j.at("involutive").get<bool>()) r.fail("charge involutive where none exists");
         }},
        {"charge " + d12 + " " + eye + " " + eye, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (!j.at("involutive").get<bool>()) r.fail("identity factorization not involutive");
         }},
        {"charge " + h_pi2 + " " + eye + " " + parity, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (!j.at("involutive").get<bool>()) r.fail("Hermitian-point charge not involutive");
         }},
        {"fix " + h_pi3 + " " + obs_a, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (!j.at("unique_ray").get<bool>()) r.fail("fix did not produce a unique ray");
             const auto& theta = j.at("theta_phys");
             if (theta.is_null()) {
                 r.fail("theta_phys missing");
                 return;
             }
             const double t00 = theta.at("data")[0][0].get<double>();
             const double t11 = theta.at("data")[3][0].get<double>();
             if (std::abs((t00 - t11) / (t00 + t11) - 0.5) > 1e-10)
                 r.fail("fixed ray parameter is not 0.5");
         }},
        {"fix " + h_pi3 + " " + obs_empty, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (j.at("dimension") != 2) r.fail("empty observable list changed the space");
         }},
        {"fix " + h_pi3 + " " + obs_id, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (j.at("dimension") != 2) r.fail("identity observable reduced the space");
         }},
        {"model2x2 energies --alpha " + alpha_pi3, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (std::abs(j.at("e_plus").get<double>() - 0.8660254037844386) > 1e-12)
                 r.fail("energies do not match the closed form");
         }},
        {"model2x2 metric --alpha " + alpha_pi2 + " --xi 0", 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             const auto& data = j.at("data");
             if (std::abs(data[0][0].get<double>() - 1.0) > 1e-12 ||
                 std::abs(data[1][0].get<double>()) > 1e-12)
                 r.fail("metric at the Hermitian point is not the identity");
         }},
        {"model2x2 charge-scan --alpha " + alpha_pi3, 0,
         [](const nlohmann::json& j, CriterionResult& r) {
             if (std::abs(j.at("min_residual").get<double>() - 0.3535533905932738) > 1e-6)
                 r.fail("scan minimum off the closed-form value");
             if (std::abs(j.at("witness_xi").get<double>()) > 1e-12)
                 r.fail("scan witness is not the PT-even point");
         }},
    };

    for (const Case& c : cases) {
        const std::string command = cli + " " + c.args;
        const RunOutput first = run_command(command);
        const RunOutput second = run_command(command);
        if (first.exit_code != c.expected_exit)
            result.fail("exit code " + std::to_string(first.exit_code) + " for: " + c.args);
        if (first.stdout_text != second.stdout_text || first.exit_code != second.exit_code)
            result.fail("output not byte-identical for: " + c.args);
        if (c.semantic && c.expected_exit == 0) {
            try {
                c.semantic(nlohmann::json::parse(first.stdout_text), result);
            } catch (const std::exception& e) {
                result.fail(std::string("unparseable output: ") + e.what());
            }
        }
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-qhqm-cli>\n");
        return 2;
    }
    const std::string cli = argv[1];

    struct Criterion {
        const char* name;
        std::function<CriterionResult()> run;
    };
    const std::vector<Criterion> criteria = {
        {"general metric family: kernel dimension 2, family projects into the kernel",
         general_metric_family},
        {"positivity criterion: numerical verdict matches xi^2 + cos^2(alpha) < 1",
         positivity_criterion},
        {"metric eigenvalues match 1 -/+ sqrt(xi^2 + cos^2(alpha)) to 1e-12", metric_eigenvalues},
        {"charge non-existence: ||C^2 - I|| bounded below off the Hermitian point",
         charge_nonexistence},
        {"observable fixing: unique ray matches (d-a)/(2b) cos(alpha)", observable_fixing},
        {"spectral construction: weighted metrics are positive with small residuals",
         spectral_construction},
        {"dimension law: kernel dimension equals N, confirmed by the brute-force oracle",
         dimension_law},
        {"exceptional points flagged at the endpoints and nowhere inside", exceptional_points},
        {"pseudo-Hermiticity under parity; Hermitian eta leaves S = I", pseudo_hermiticity},
        {"CLI determinism: byte-identical reports across consecutive runs",
         [&cli] { return cli_determinism(cli); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CriterionResult result;
        try {
            result = criteria[i].run();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        if (result.pass) {
            std::printf("[PASS] criterion %zu: %s\n", i + 1, criteria[i].name);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %zu: %s: %s\n", i + 1, criteria[i].name,
                        result.detail.c_str());
        }
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
