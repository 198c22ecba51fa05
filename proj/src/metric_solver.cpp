#include "qhqm/metric_solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qhqm/errors.hpp"
#include "qhqm/kernels.hpp"
#include "qhqm/linalg.hpp"
#include "qhqm/matrix_json.hpp"

namespace qhqm {

namespace {

constexpr double kRankThreshold = 1e-10;   // singular values below this * sigma_max are zero
constexpr std::size_t kMaxDimension = 64;
constexpr double kDegeneracyGap = 1e-8;
constexpr double kRealityEps = 1e-10;

double relative_intertwining_residual(const ComplexMatrix& h, const ComplexMatrix& theta) {
    const double num = frobenius_norm(theta * h - adjoint(h) * theta);
    const double den = frobenius_norm(theta) * frobenius_norm(h);
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

MetricWeights::MetricWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    for (double w : weights_)
        if (!std::isfinite(w) || w <= 0.0)
            throw DomainError("MetricWeights: weights must be strictly positive and finite");
}

MetricSpace solve_metric_space(const ComplexMatrix& h, const Tolerance&) {
    if (!h.is_square()) throw DimensionError("solve_metric_space: matrix must be square");
    const std::size_t n = h.rows();
    if (n > kMaxDimension)
        throw DimensionError("solve_metric_space: dimension exceeds the supported cap of 64");

    const kernels::RealBuffer buf = kernels::intertwining_matrix(h);
    const auto kernel = real_kernel_basis(buf.data, buf.rows, buf.cols, kRankThreshold);

    MetricSpace space;
    space.hamiltonian = h;
    space.dimension = kernel.size();
    space.basis.reserve(kernel.size());
    for (const auto& coords : kernel)
        space.basis.push_back(kernels::from_hermitian_coordinates(n, coords));

    for (const ComplexMatrix& b : space.basis)
        space.residual = std::max(space.residual, relative_intertwining_residual(h, b));
    if (space.residual > 1e-6)
        throw ConvergenceError("solve_metric_space: kernel residual too large", space.residual);
    return space;
}

ComplexMatrix metric_from_weights(const BiorthogonalSystem& sys, const MetricWeights& weights) {
    const std::size_t n = sys.dimension;
    if (weights.size() != n)
        throw DimensionError("metric_from_weights: one weight per eigenvalue required");

    double max_abs_e = 0.0;
    for (const Complex& e : sys.eigenvalues) max_abs_e = std::max(max_abs_e, std::abs(e));
    for (const Complex& e : sys.eigenvalues)
        if (std::abs(e.imag()) > kRealityEps * (1.0 + max_abs_e))
            throw NoPositiveMetricError(
                "metric_from_weights: complex spectrum, no positive metric exists");
    const double gap = kDegeneracyGap * (1.0 + max_abs_e);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(sys.eigenvalues[i] - sys.eigenvalues[j]) <= gap)
                throw NoPositiveMetricError(
                    "metric_from_weights: degenerate spectrum, diagonal reduction unavailable");

    // upper triangle of sum_m s_m |m>><<m|, mirrored to stay exactly Hermitian
    ComplexMatrix theta(n, n);
    const auto& s = weights.values();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex sum = 0.0;
            for (std::size_t m = 0; m < n; ++m)
                sum += s[m] * sys.left_vectors(i, m) * std::conj(sys.left_vectors(j, m));
            theta(i, j) = i == j ? Complex(sum.real(), 0.0) : sum;
            if (i != j) theta(j, i) = std::conj(sum);
        }
    return theta;
}

PositivityProbe positivity_region(const MetricSpace& space, std::span<const double> coefficients) {
    if (coefficients.size() != space.dimension)
        throw DimensionError("positivity_region: one coefficient per basis element required");
    const std::size_t n = space.hamiltonian.rows();
    if (n == 0) throw DimensionError("positivity_region: empty metric space");

    PositivityProbe probe;
    probe.theta = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < space.dimension; ++k) {
        const ComplexMatrix& b = space.basis[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                probe.theta(i, j) += coefficients[k] * b(i, j);
    }

    const HermitianEigenSystem sys = eig_hermitian(probe.theta);
    probe.min_eigenvalue = sys.eigenvalues.front();
    probe.positive = probe.min_eigenvalue > Tolerance{}.abs_eps;
    return probe;
}

QuasiHermiticityCheck check_quasi_hermiticity(const ComplexMatrix& h, const ComplexMatrix& theta,
                                              const Tolerance& tol) {
    if (!h.is_square() || !theta.is_square() || h.rows() != theta.rows())
        throw DimensionError("check_quasi_hermiticity: dimensions must match");
    QuasiHermiticityCheck check;
    check.residual = relative_intertwining_residual(h, theta);
    check.holds = check.residual <= tol.rel_eps;
    return check;
}

std::vector<double> span_coordinates(const MetricSpace& space, const ComplexMatrix& m) {
    if (m.rows() != space.hamiltonian.rows() || !m.is_square())
        throw DimensionError("span_coordinates: dimension mismatch");
    std::vector<double> coords(space.dimension);
    for (std::size_t k = 0; k < space.dimension; ++k) {
        const ComplexMatrix& b = space.basis[k];
        Complex dot = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) dot += std::conj(b(i, j)) * m(i, j);
        coords[k] = dot.real();
    }
    return coords;
}

std::string metric_space_to_json(const MetricSpace& space) {
    JsonWriter w;
    w.begin_object();
    w.key("dimension").value(space.dimension);
    w.key("residual").value(space.residual);
    w.key("basis").begin_array();
    for (const ComplexMatrix& b : space.basis) write_matrix(w, b);
    w.end_array();
    w.end_object();
    return w.str();
}

}  // namespace qhqm
