#include "qhqm/symmetry.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qhqm/errors.hpp"
#include "qhqm/linalg.hpp"
#include "qhqm/matrix_json.hpp"
#include "qhqm/toy_model.hpp"

namespace qhqm {

namespace {

constexpr int kScanParallelCutoff = 512;

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw DimensionError(std::string(who) + ": dimensions must match");
}

void require_invertible(const ComplexMatrix& eta, const Tolerance& tol, const char* who) {
    if (smallest_singular_value(eta) <= tol.abs_eps)
        throw SingularMatrixError(std::string(who) + ": eta is singular to working precision");
}

ChargeScanResult scan_impl(double alpha, int grid, bool threaded) {
    if (!(alpha > 0.0) || !(alpha < std::numbers::pi))
        throw DomainError("charge_nonexistence_scan: alpha must lie strictly inside (0, pi)");
    if (grid < 3) throw DomainError("charge_nonexistence_scan: grid must be at least 3");

    const double half_width = std::sin(alpha);
    const double step = 2.0 * half_width / grid;
    const ComplexMatrix parity{{1.0, 0.0}, {0.0, -1.0}};
    std::vector<double> residuals(static_cast<std::size_t>(grid));

#pragma omp parallel for if (threaded)
    for (std::int64_t i = 0; i < grid; ++i) {
        const double xi = -half_width + (static_cast<double>(i) + 0.5) * step;
        const ComplexMatrix theta = toy_metric(ToyParameters::from_xi(alpha, xi));
        residuals[static_cast<std::size_t>(i)] =
            charge_factorization(theta, parity).involution_residual_c;
    }

    // deterministic reduction; strict improvement keeps the smallest xi on ties
    ChargeScanResult result;
    result.min_residual = residuals[0];
    std::int64_t best = 0;
    for (std::int64_t i = 1; i < grid; ++i)
        if (residuals[static_cast<std::size_t>(i)] < result.min_residual) {
            result.min_residual = residuals[static_cast<std::size_t>(i)];
            best = i;
        }
    result.witness_xi = -half_width + (static_cast<double>(best) + 0.5) * step;
    return result;
}

}  // namespace

PseudoHermiticityCheck check_pseudo_hermiticity(const ComplexMatrix& h, const ComplexMatrix& eta,
                                                const Tolerance& tol) {
    require_same_square(h, eta, "check_pseudo_hermiticity");
    require_invertible(eta, tol, "check_pseudo_hermiticity");

    PseudoHermiticityCheck check;
    const double num = frobenius_norm(eta * h - adjoint(h) * eta);
    const double den = frobenius_norm(eta) * frobenius_norm(h);
    check.residual = den > 0.0 ? num / den : 0.0;
    check.holds = check.residual <= tol.rel_eps;
    check.eta_hermitian = is_hermitian(eta, tol);
    return check;
}

EtaSymmetryCheck check_eta_symmetry(const ComplexMatrix& h, const ComplexMatrix& eta,
                                    const Tolerance& tol) {
    require_same_square(h, eta, "check_eta_symmetry");
    require_invertible(eta, tol, "check_eta_symmetry");

    EtaSymmetryCheck check;
    check.s_matrix = adjoint(inverse(eta)) * eta;
    const double comm = frobenius_norm(check.s_matrix * h - h * check.s_matrix);
    const double scale = frobenius_norm(check.s_matrix) * frobenius_norm(h);
    check.commutes = comm <= tol.rel_eps * std::max(scale, 1e-300);
    const double dist = frobenius_norm(check.s_matrix - ComplexMatrix::identity(h.rows()));
    check.nontrivial = dist > tol.abs_eps + tol.rel_eps * frobenius_norm(check.s_matrix);
    return check;
}

ChargeReport charge_factorization(const ComplexMatrix& theta, const ComplexMatrix& parity,
                                  const Tolerance& tol) {
    require_same_square(theta, parity, "charge_factorization");
    if (!is_hermitian(theta, tol))
        throw PreconditionError("charge_factorization: theta must be Hermitian");
    const std::size_t n = parity.rows();
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const double parity_scale = frobenius_norm(parity);
    if (frobenius_norm(parity * parity - eye) >
        tol.abs_eps + tol.rel_eps * parity_scale * parity_scale)
        throw PreconditionError("charge_factorization: parity must be an involution");

    const ComplexMatrix parity_inv = inverse(parity);

    ChargeReport report;
    report.charge = theta * parity_inv;
    report.quasi_parity = parity_inv * theta;
    report.involution_residual_c = frobenius_norm(report.charge * report.charge - eye);
    report.involution_residual_q = frobenius_norm(report.quasi_parity * report.quasi_parity - eye);
    const double c_scale = frobenius_norm(report.charge);
    report.involutive =
        report.involution_residual_c <= tol.abs_eps + tol.rel_eps * c_scale * c_scale;
    return report;
}

ChargeScanResult charge_nonexistence_scan(double alpha, int grid) {
    return scan_impl(alpha, grid, grid >= kScanParallelCutoff);
}

ChargeScanResult serial::charge_nonexistence_scan(double alpha, int grid) {
    return scan_impl(alpha, grid, false);
}

std::string charge_report_to_json(const ChargeReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("charge");
    write_matrix(w, report.charge);
    w.key("quasi_parity");
    write_matrix(w, report.quasi_parity);
    w.key("involution_residual_c").value(report.involution_residual_c);
    w.key("involution_residual_q").value(report.involution_residual_q);
    w.key("involutive").value(report.involutive);
    w.end_object();
    return w.str();
}

}  // namespace qhqm
