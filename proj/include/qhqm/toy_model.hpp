#pragma once

#include <optional>

#include "qhqm/complex_matrix.hpp"

namespace qhqm {

/// Parameters of the exactly solvable 2x2 family
///   H = d * [[-1, cos a], [-cos a, 1]],
/// the closed-form oracle behind every numerical path. alpha must lie
/// strictly inside (0, pi); the endpoints are the exceptional points.
/// Constructing from gamma in [0, pi/2) sets xi = sin(alpha) sin(gamma),
/// which is always inside the positivity region; constructing from xi
/// directly permits deliberately inadmissible metrics.
class ToyParameters {
public:
    static ToyParameters from_xi(double alpha, double xi, double d_scale = 1.0);
    static ToyParameters from_gamma(double alpha, double gamma, double d_scale = 1.0);

    double alpha() const noexcept { return alpha_; }
    double xi() const noexcept { return xi_; }
    double d_scale() const noexcept { return d_scale_; }
    std::optional<double> gamma() const noexcept { return gamma_; }

private:
    ToyParameters(double alpha, double xi, std::optional<double> gamma, double d_scale);

    double alpha_;
    double xi_;
    std::optional<double> gamma_;
    double d_scale_;
};

ComplexMatrix toy_hamiltonian(const ToyParameters& p);

struct EnergyPair {
    double e_minus = 0.0;
    double e_plus = 0.0;
};

/// (-d sin a, +d sin a).
EnergyPair toy_energies(const ToyParameters& p);

/// [[1 + xi, -cos a], [-cos a, 1 - xi]]; independent of d_scale.
ComplexMatrix toy_metric(const ToyParameters& p);

struct MetricEigenvalues {
    double theta_minus = 0.0;
    double theta_plus = 0.0;
};

/// 1 -/+ sqrt(xi^2 + cos^2 a).
MetricEigenvalues toy_metric_eigenvalues(const ToyParameters& p);

/// Closed form of C^2 for C = theta * P^-1 with P = diag(1, -1):
/// [[(1+xi)^2 - cos^2 a, 2 xi cos a], [-2 xi cos a, (1-xi)^2 - cos^2 a]].
ComplexMatrix toy_charge_squared(const ToyParameters& p);

}  // namespace qhqm
