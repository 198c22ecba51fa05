#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qhqm/complex_matrix.hpp"

namespace qhqm::kernels {

/// Column-major real buffer produced by the assembly kernels and consumed by
/// the rank-revealing decompositions.
struct RealBuffer {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // column-major, rows * cols entries
};

/// Dense product; threads over output rows once the output is large enough.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Orthonormal Hermitian generator basis under Re tr(A^dag B):
/// e_kk for k < n, then (e_ij + e_ji)/sqrt(2) for i < j in lexicographic
/// order, then (i e_ij - i e_ji)/sqrt(2) for i < j.
std::size_t hermitian_basis_size(std::size_t n);
ComplexMatrix hermitian_generator(std::size_t n, std::size_t k);

/// Coordinates x_k = Re tr(G_k^dag m) of m in the generator basis.
std::vector<double> hermitian_coordinates(const ComplexMatrix& m);

/// Hermitian matrix sum_k coords[k] * G_k (exactly conjugate-symmetric).
ComplexMatrix from_hermitian_coordinates(std::size_t n, std::span<const double> coords);

/// Matrix of the real-linear map X -> X h - h^dag X on the Hermitian
/// generator basis: column k holds the real parts of the image of G_k in
/// row-major order followed by the imaginary parts (2 n^2 rows, n^2 columns).
/// Threads over columns for larger n.
RealBuffer intertwining_matrix(const ComplexMatrix& h);

/// Serial reference implementations, kept for equivalence tests and the
/// benchmark target.
namespace serial {
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
RealBuffer intertwining_matrix(const ComplexMatrix& h);
}  // namespace serial

/// Number of OpenMP threads available to the kernels (1 without OpenMP).
int max_threads();

}  // namespace qhqm::kernels
