#include "qhqm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "qhqm/errors.hpp"

namespace qhqm {

namespace {

constexpr double kEigResidualRel = 1e-8;       // eig_general per-pair bound
constexpr double kHermReconstructRel = 1e-12;  // internal sanity bound

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return out;
}

void require_square(const ComplexMatrix& m, const char* who) {
    if (!m.is_square()) throw DimensionError(std::string(who) + ": matrix must be square");
}

// Rotate the entry of largest modulus (first on ties) to be real positive.
void fix_column_phase(Eigen::MatrixXcd& vectors, Eigen::Index col) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        const double a = std::abs(vectors(i, col));
        if (a > best) {
            best = a;
            imax = i;
        }
    }
    if (best <= 0.0) return;
    const Complex phase = vectors(imax, col) / best;
    vectors.col(col) *= std::conj(phase);
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
    require_square(m, "is_hermitian");
    double diff = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            diff += std::norm(m(i, j) - std::conj(m(j, i)));
    return std::sqrt(diff) <= tol.abs_eps + tol.rel_eps * frobenius_norm(m);
}

EigenSystem eig_general(const ComplexMatrix& m) {
    require_square(m, "eig_general");
    const Eigen::MatrixXcd a = to_eigen(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eig_general: eigensolver did not converge",
                               std::numeric_limits<double>::infinity());

    const std::size_t n = m.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& raw_values = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        const Complex a_ = raw_values(static_cast<Eigen::Index>(lhs));
        const Complex b_ = raw_values(static_cast<Eigen::Index>(rhs));
        if (a_.real() != b_.real()) return a_.real() < b_.real();
        return a_.imag() < b_.imag();
    });

    EigenSystem sys;
    sys.eigenvalues.resize(n);
    Eigen::MatrixXcd vectors(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto src = static_cast<Eigen::Index>(order[k]);
        sys.eigenvalues[k] = raw_values(src);
        vectors.col(static_cast<Eigen::Index>(k)) =
            solver.eigenvectors().col(src).normalized();
        fix_column_phase(vectors, static_cast<Eigen::Index>(k));
    }

    const double scale = frobenius_norm(m);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto col = static_cast<Eigen::Index>(k);
        worst = std::max(worst, (a * vectors.col(col) - sys.eigenvalues[k] * vectors.col(col)).norm());
    }
    if (worst > kEigResidualRel * std::max(scale, 1e-300))
        throw ConvergenceError("eig_general: eigenpair residual too large", worst);

    sys.right_vectors = from_eigen(vectors);
    return sys;
}

HermitianEigenSystem eig_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
    if (!is_hermitian(m, tol))
        throw PreconditionError("eig_hermitian: matrix is not Hermitian within tolerance");

    const ComplexMatrix sym = hermitian_part(m);
    const Eigen::MatrixXcd a = to_eigen(sym);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eig_hermitian: eigensolver did not converge",
                               std::numeric_limits<double>::infinity());

    HermitianEigenSystem sys;
    const std::size_t n = m.rows();
    sys.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    Eigen::MatrixXcd vectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < vectors.cols(); ++k) fix_column_phase(vectors, k);

    const double reconstruct =
        (vectors * solver.eigenvalues().asDiagonal() * vectors.adjoint() - a).norm();
    const double scale = std::max(frobenius_norm(sym), 1.0);
    if (reconstruct > kHermReconstructRel * scale)
        throw ConvergenceError("eig_hermitian: reconstruction residual too large", reconstruct);

    sys.vectors = from_eigen(vectors);
    return sys;
}

bool is_positive_definite(const ComplexMatrix& m, const Tolerance& tol) {
    const HermitianEigenSystem sys = eig_hermitian(m, tol);
    return !sys.eigenvalues.empty() && sys.eigenvalues.front() > tol.abs_eps;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    require_square(m, "inverse");
    return from_eigen(to_eigen(m).partialPivLu().inverse());
}

double smallest_singular_value(const ComplexMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    const auto& sv = svd.singularValues();
    return sv.size() ? sv(sv.size() - 1) : 0.0;
}

Complex determinant(const ComplexMatrix& m) {
    require_square(m, "determinant");
    return to_eigen(m).partialPivLu().determinant();
}

std::vector<std::vector<double>> real_kernel_basis(std::span<const double> a, std::size_t rows,
                                                   std::size_t cols, double rel_threshold) {
    if (a.size() != rows * cols)
        throw DimensionError("real_kernel_basis: buffer size mismatch");
    Eigen::Map<const Eigen::MatrixXd> m(a.data(), static_cast<Eigen::Index>(rows),
                                        static_cast<Eigen::Index>(cols));
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() ? sv(0) : 0.0;

    std::vector<std::vector<double>> kernel;
    for (std::size_t j = 0; j < cols; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const bool in_kernel = sigma_max == 0.0 || jj >= sv.size() ||
                               sv(jj) < rel_threshold * sigma_max;
        if (!in_kernel) continue;
        std::vector<double> v(cols);
        for (std::size_t i = 0; i < cols; ++i)
            v[i] = svd.matrixV()(static_cast<Eigen::Index>(i), jj);
        kernel.push_back(std::move(v));
    }
    return kernel;
}

}  // namespace qhqm
