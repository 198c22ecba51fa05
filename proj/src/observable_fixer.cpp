#include "qhqm/observable_fixer.hpp"

#include <cmath>
#include <numbers>

#include "qhqm/errors.hpp"
#include "qhqm/linalg.hpp"
#include "qhqm/matrix_json.hpp"

namespace qhqm {

namespace {

constexpr double kRankThreshold = 1e-10;

double relative_residual(const ComplexMatrix& h, const ComplexMatrix& theta) {
    const double num = frobenius_norm(theta * h - adjoint(h) * theta);
    const double den = frobenius_norm(theta) * frobenius_norm(h);
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

ConstrainResult constrain_metric(const MetricSpace& space,
                                 const std::vector<ComplexMatrix>& observables,
                                 const Tolerance& tol) {
    const std::size_t n = space.hamiltonian.rows();
    if (n == 0) throw DimensionError("constrain_metric: empty metric space");
    for (const ComplexMatrix& a : observables)
        if (!a.is_square() || a.rows() != n)
            throw DimensionError("constrain_metric: observable dimension mismatch");

    ConstrainResult result;
    const std::size_t dim = space.dimension;
    if (observables.empty() || dim == 0) {
        result.reduced = space;
    } else {
        // each observable contributes 2 n^2 real rows: Re/Im of B_k A - A^dag B_k
        const std::size_t block = 2 * n * n;
        const std::size_t rows = block * observables.size();
        std::vector<double> constraint(rows * dim);
        for (std::size_t k = 0; k < dim; ++k) {
            double* col = constraint.data() + k * rows;
            for (std::size_t j = 0; j < observables.size(); ++j) {
                const ComplexMatrix& a = observables[j];
                const ComplexMatrix image = space.basis[k] * a - adjoint(a) * space.basis[k];
                const auto entries = image.data();
                double* blk = col + j * block;
                for (std::size_t idx = 0; idx < n * n; ++idx) {
                    blk[idx] = entries[idx].real();
                    blk[n * n + idx] = entries[idx].imag();
                }
            }
        }

        const auto kernel = real_kernel_basis(constraint, rows, dim, kRankThreshold);
        result.reduced.hamiltonian = space.hamiltonian;
        result.reduced.dimension = kernel.size();
        result.reduced.basis.reserve(kernel.size());
        for (const auto& coords : kernel) {
            ComplexMatrix b(n, n);
            for (std::size_t k = 0; k < dim; ++k) {
                const ComplexMatrix& old = space.basis[k];
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) b(r, c) += coords[k] * old(r, c);
            }
            result.reduced.basis.push_back(std::move(b));
        }
        for (const ComplexMatrix& b : result.reduced.basis)
            result.reduced.residual =
                std::max(result.reduced.residual, relative_residual(space.hamiltonian, b));
    }

    result.unique_ray = result.reduced.dimension == 1;
    if (result.unique_ray) {
        const ComplexMatrix& ray = result.reduced.basis.front();
        ComplexMatrix candidate = ray;
        bool positive = is_positive_definite(candidate, tol);
        if (!positive) {
            candidate = -ray;
            positive = is_positive_definite(candidate, tol);
        }
        if (positive) {
            const double tr = trace(candidate).real();
            result.theta_phys = candidate * Complex(static_cast<double>(n) / tr, 0.0);
        } else {
            const auto eigs = eig_hermitian(ray, tol);
            result.diagnostic =
                "unique ray has no positive-definite representative; ray eigenvalues span [" +
                format_double(eigs.eigenvalues.front()) + ", " +
                format_double(eigs.eigenvalues.back()) + "]";
        }
    }
    return result;
}

double fix_xi_closed_form(double a, double b, double d, double alpha) {
    if (!(alpha > 0.0) || !(alpha < std::numbers::pi))
        throw DomainError("fix_xi_closed_form: alpha must lie strictly inside (0, pi)");
    if (b == 0.0)
        throw TrivialityError(
            "fix_xi_closed_form: b = 0 makes the observable a multiple of the identity plus a "
            "diagonal shift, which imposes no constraint");
    return (d - a) / (2.0 * b) * std::cos(alpha);
}

}  // namespace qhqm
