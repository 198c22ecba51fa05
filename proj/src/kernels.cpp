#include "qhqm/kernels.hpp"

#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qhqm/errors.hpp"

namespace qhqm::kernels {

namespace {

constexpr std::size_t kMatmulParallelCutoff = 4096;  // output elements
constexpr std::size_t kAssemblyParallelCutoff = 8;   // matrix dimension

ComplexMatrix matmul_impl(const ComplexMatrix& a, const ComplexMatrix& b, bool threaded) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    const auto rows = static_cast<std::int64_t>(a.rows());
    const std::size_t inner = a.cols();
    const std::size_t ncols = b.cols();
#pragma omp parallel for if (threaded)
    for (std::int64_t i = 0; i < rows; ++i) {
        const auto r = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < ncols; ++j) {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < inner; ++k) sum += a(r, k) * b(k, j);
            out(r, j) = sum;
        }
    }
    return out;
}

RealBuffer intertwining_matrix_impl(const ComplexMatrix& h, bool threaded) {
    if (!h.is_square()) throw DimensionError("intertwining_matrix: matrix must be square");
    const std::size_t n = h.rows();
    const std::size_t dim = n * n;
    const ComplexMatrix hdag = adjoint(h);
    RealBuffer buf{2 * dim, dim, std::vector<double>(2 * dim * dim)};
    const auto cols = static_cast<std::int64_t>(dim);
#pragma omp parallel for if (threaded)
    for (std::int64_t k = 0; k < cols; ++k) {
        const ComplexMatrix gen = hermitian_generator(n, static_cast<std::size_t>(k));
        const ComplexMatrix image =
            serial::matmul(gen, h) - serial::matmul(hdag, gen);
        double* col = buf.data.data() + static_cast<std::size_t>(k) * 2 * dim;
        const auto entries = image.data();
        for (std::size_t idx = 0; idx < dim; ++idx) {
            col[idx] = entries[idx].real();
            col[dim + idx] = entries[idx].imag();
        }
    }
    return buf;
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul_impl(a, b, a.rows() * b.cols() >= kMatmulParallelCutoff);
}

ComplexMatrix serial::matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul_impl(a, b, false);
}

std::size_t hermitian_basis_size(std::size_t n) { return n * n; }

ComplexMatrix hermitian_generator(std::size_t n, std::size_t k) {
    if (k >= n * n) throw DimensionError("hermitian_generator: index out of range");
    ComplexMatrix g(n, n);
    if (k < n) {
        g(k, k) = 1.0;
        return g;
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::size_t pair = k - n;
    const std::size_t npairs = n * (n - 1) / 2;
    const bool imag_part = pair >= npairs;
    if (imag_part) pair -= npairs;
    // walk the upper triangle in lexicographic order
    std::size_t i = 0;
    std::size_t row_len = n - 1;
    while (pair >= row_len) {
        pair -= row_len;
        ++i;
        --row_len;
    }
    const std::size_t j = i + 1 + pair;
    if (imag_part) {
        g(i, j) = Complex(0.0, inv_sqrt2);
        g(j, i) = Complex(0.0, -inv_sqrt2);
    } else {
        g(i, j) = inv_sqrt2;
        g(j, i) = inv_sqrt2;
    }
    return g;
}

std::vector<double> hermitian_coordinates(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("hermitian_coordinates: matrix must be square");
    const std::size_t n = m.rows();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<double> coords(n * n);
    for (std::size_t k = 0; k < n; ++k) coords[k] = m(k, k).real();
    std::size_t pos = n;
    const std::size_t npairs = n * (n - 1) / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            // Re tr(S_ij m) and Re tr(K_ij m)
            coords[pos] = (m(i, j).real() + m(j, i).real()) * inv_sqrt2;
            coords[pos + npairs] = (m(i, j).imag() - m(j, i).imag()) * inv_sqrt2;
            ++pos;
        }
    return coords;
}

ComplexMatrix from_hermitian_coordinates(std::size_t n, std::span<const double> coords) {
    if (coords.size() != n * n)
        throw DimensionError("from_hermitian_coordinates: coordinate count must be n^2");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = coords[k];
    std::size_t pos = n;
    const std::size_t npairs = n * (n - 1) / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double re = coords[pos] * inv_sqrt2;
            const double im = coords[pos + npairs] * inv_sqrt2;
            m(i, j) = Complex(re, im);
            m(j, i) = Complex(re, -im);
            ++pos;
        }
    return m;
}

RealBuffer intertwining_matrix(const ComplexMatrix& h) {
    return intertwining_matrix_impl(h, h.rows() >= kAssemblyParallelCutoff);
}

RealBuffer serial::intertwining_matrix(const ComplexMatrix& h) {
    return intertwining_matrix_impl(h, false);
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace qhqm::kernels
