#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qhqm/complex_matrix.hpp"
#include "qhqm/spectral.hpp"
#include "qhqm/tolerance.hpp"

namespace qhqm {

/// Real-linear span of the Hermitian solutions of theta * h = h^dag * theta.
/// Basis elements are Hermitian and orthonormal under Re tr(A^dag B);
/// residual is the largest relative intertwining residual
/// ||B h - h^dag B||_F / (||h||_F ||B||_F) over the basis.
struct MetricSpace {
    std::size_t dimension = 0;
    std::vector<ComplexMatrix> basis;
    ComplexMatrix hamiltonian;
    double residual = 0.0;
};

/// Strictly positive, finite spectral weights, one per eigenvalue index.
class MetricWeights {
public:
    explicit MetricWeights(std::vector<double> weights);

    const std::vector<double>& values() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }

private:
    std::vector<double> weights_;
};

/// Kernel of the intertwining map over Hermitian matrices, computed by
/// singular-value thresholding at 1e-10 * sigma_max. An empty kernel is
/// reported as dimension 0, never thrown. Dimension is capped at 64.
MetricSpace solve_metric_space(const ComplexMatrix& h, const Tolerance& tol = {});

/// sum_m s_m |m>><<m| over the normalized left vectors; Hermitian positive
/// definite by construction. Throws NoPositiveMetricError for complex or
/// degenerate spectra and DimensionError on a weight-count mismatch.
ComplexMatrix metric_from_weights(const BiorthogonalSystem& sys, const MetricWeights& weights);

struct PositivityProbe {
    ComplexMatrix theta;
    bool positive = false;
    double min_eigenvalue = 0.0;
};

/// Evaluates theta = sum_k coefficients[k] * basis[k] and its positivity.
PositivityProbe positivity_region(const MetricSpace& space, std::span<const double> coefficients);

struct QuasiHermiticityCheck {
    double residual = 0.0;
    bool holds = false;
};

/// residual = ||theta h - h^dag theta||_F / (||theta||_F ||h||_F);
/// holds iff residual <= tol.rel_eps.
QuasiHermiticityCheck check_quasi_hermiticity(const ComplexMatrix& h, const ComplexMatrix& theta,
                                              const Tolerance& tol = {});

/// Coordinates Re tr(B_k^dag m) of m over the space basis; the projection
/// of m onto the span is positivity_region(space, coords).theta.
std::vector<double> span_coordinates(const MetricSpace& space, const ComplexMatrix& m);

std::string metric_space_to_json(const MetricSpace& space);

}  // namespace qhqm
