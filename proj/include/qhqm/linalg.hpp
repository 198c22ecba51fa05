#pragma once

#include <cstddef>
#include <vector>

#include "qhqm/complex_matrix.hpp"
#include "qhqm/tolerance.hpp"

namespace qhqm {

/// General (possibly non-Hermitian) eigendecomposition. Eigenvalues are
/// sorted by (Re, Im) ascending; columns of right_vectors are unit-norm
/// right eigenvectors paired index-wise, with the entry of largest modulus
/// rotated to be real and positive.
struct EigenSystem {
    std::vector<Complex> eigenvalues;
    ComplexMatrix right_vectors;
};

/// Hermitian eigendecomposition: real ascending eigenvalues, orthonormal
/// columns with the same deterministic phase convention.
struct HermitianEigenSystem {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;
};

/// True iff ||m - m^dag||_F <= abs_eps + rel_eps * ||m||_F.
bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol = {});

/// Never fails on defective input; near-parallel eigenvector columns are the
/// downstream signal for exceptional points. Throws ConvergenceError if the
/// per-pair residual ||m v - lambda v|| exceeds 1e-8 * ||m||_F.
EigenSystem eig_general(const ComplexMatrix& m);

/// Requires is_hermitian(m, tol); throws PreconditionError otherwise.
HermitianEigenSystem eig_hermitian(const ComplexMatrix& m, const Tolerance& tol = {});

/// True iff the smallest eigenvalue from eig_hermitian exceeds tol.abs_eps.
bool is_positive_definite(const ComplexMatrix& m, const Tolerance& tol = {});

/// LU-based inverse; callers are expected to have established invertibility.
ComplexMatrix inverse(const ComplexMatrix& m);

double smallest_singular_value(const ComplexMatrix& m);

Complex determinant(const ComplexMatrix& m);

/// Orthonormal basis of the kernel of a real column-major matrix, with
/// singular values below rel_threshold * sigma_max counting as zero.
std::vector<std::vector<double>> real_kernel_basis(std::span<const double> a,
                                                   std::size_t rows, std::size_t cols,
                                                   double rel_threshold);

}  // namespace qhqm
