#pragma once

#include <string>

#include "qhqm/complex_matrix.hpp"
#include "qhqm/tolerance.hpp"

namespace qhqm {

struct PseudoHermiticityCheck {
    double residual = 0.0;
    bool holds = false;
    bool eta_hermitian = false;
};

/// residual = ||eta h - h^dag eta||_F / (||eta||_F ||h||_F); holds iff
/// residual <= tol.rel_eps. Throws SingularMatrixError when the smallest
/// singular value of eta is at or below tol.abs_eps.
PseudoHermiticityCheck check_pseudo_hermiticity(const ComplexMatrix& h, const ComplexMatrix& eta,
                                                const Tolerance& tol = {});

struct EtaSymmetryCheck {
    ComplexMatrix s_matrix;  // (eta^-1)^dag eta
    bool commutes = false;
    bool nontrivial = false;
};

/// The symmetry S = (eta^-1)^dag eta left behind by a non-Hermitian eta;
/// S = I exactly when eta is Hermitian.
EtaSymmetryCheck check_eta_symmetry(const ComplexMatrix& h, const ComplexMatrix& eta,
                                    const Tolerance& tol = {});

/// Factorization theta = C * parity with C = theta * parity^-1 and the
/// quasi-parity Q = parity^-1 * theta, plus the involution residuals.
struct ChargeReport {
    ComplexMatrix charge;
    ComplexMatrix quasi_parity;
    double involution_residual_c = 0.0;  // ||C^2 - I||_F
    double involution_residual_q = 0.0;
    bool involutive = false;
};

/// Requires theta Hermitian and parity an involution (||P^2 - I||_F within
/// tolerance); throws PreconditionError otherwise.
ChargeReport charge_factorization(const ComplexMatrix& theta, const ComplexMatrix& parity,
                                  const Tolerance& tol = {});

struct ChargeScanResult {
    double min_residual = 0.0;
    double witness_xi = 0.0;
};

/// Scans ||C^2 - I||_F over the open admissible interval |xi| < sin(alpha)
/// on a uniform grid offset by half a step from the endpoints; reduction is
/// deterministic with a smallest-xi tie-break. Threads over grid points.
/// Throws DomainError for alpha outside (0, pi) or grid < 3.
ChargeScanResult charge_nonexistence_scan(double alpha, int grid);

namespace serial {
ChargeScanResult charge_nonexistence_scan(double alpha, int grid);
}

std::string charge_report_to_json(const ChargeReport& report);

}  // namespace qhqm
