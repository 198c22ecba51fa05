#include "qhqm/toy_model.hpp"

#include <cmath>
#include <numbers>

#include "qhqm/errors.hpp"

namespace qhqm {

namespace {

void require_alpha(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha < std::numbers::pi))
        throw DomainError("toy model: alpha must lie strictly inside (0, pi)");
}

void require_d_scale(double d) {
    if (!std::isfinite(d) || !(d > 0.0))
        throw DomainError("toy model: d_scale must be positive and finite");
}

}  // namespace

ToyParameters::ToyParameters(double alpha, double xi, std::optional<double> gamma, double d_scale)
    : alpha_(alpha), xi_(xi), gamma_(gamma), d_scale_(d_scale) {}

ToyParameters ToyParameters::from_xi(double alpha, double xi, double d_scale) {
    require_alpha(alpha);
    require_d_scale(d_scale);
    if (!std::isfinite(xi)) throw DomainError("toy model: xi must be finite");
    return ToyParameters(alpha, xi, std::nullopt, d_scale);
}

ToyParameters ToyParameters::from_gamma(double alpha, double gamma, double d_scale) {
    require_alpha(alpha);
    require_d_scale(d_scale);
    if (!std::isfinite(gamma) || gamma < 0.0 || !(gamma < std::numbers::pi / 2.0))
        throw DomainError("toy model: gamma must lie in [0, pi/2)");
    return ToyParameters(alpha, std::sin(alpha) * std::sin(gamma), gamma, d_scale);
}

ComplexMatrix toy_hamiltonian(const ToyParameters& p) {
    const double c = std::cos(p.alpha());
    const double d = p.d_scale();
    return ComplexMatrix{{-d, d * c}, {-d * c, d}};
}

EnergyPair toy_energies(const ToyParameters& p) {
    const double e = p.d_scale() * std::sin(p.alpha());
    return EnergyPair{-e, e};
}

ComplexMatrix toy_metric(const ToyParameters& p) {
    const double c = std::cos(p.alpha());
    return ComplexMatrix{{1.0 + p.xi(), -c}, {-c, 1.0 - p.xi()}};
}

MetricEigenvalues toy_metric_eigenvalues(const ToyParameters& p) {
    const double c = std::cos(p.alpha());
    const double root = std::sqrt(p.xi() * p.xi() + c * c);
    return MetricEigenvalues{1.0 - root, 1.0 + root};
}

ComplexMatrix toy_charge_squared(const ToyParameters& p) {
    const double c = std::cos(p.alpha());
    const double xi = p.xi();
    return ComplexMatrix{{(1.0 + xi) * (1.0 + xi) - c * c, 2.0 * xi * c},
                         {-2.0 * xi * c, (1.0 - xi) * (1.0 - xi) - c * c}};
}

}  // namespace qhqm
