#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qhqm/complex_matrix.hpp"
#include "qhqm/linalg.hpp"
#include "qhqm/tolerance.hpp"

namespace qhqm {

/// Paired right/left eigensystem of a non-Hermitian matrix. Columns of
/// right_vectors are the unit-norm kets of h, columns of left_vectors the
/// eigenvectors of h^dag rescaled so that left^dag * right = I; the
/// rescaling factor (modulus and phase) is absorbed into the left vectors.
struct BiorthogonalSystem {
    std::size_t dimension = 0;
    std::vector<Complex> eigenvalues;
    ComplexMatrix right_vectors;
    ComplexMatrix left_vectors;
};

/// Reality/degeneracy/exceptional-point classification of a spectrum.
struct SpectrumReport {
    bool all_real = false;
    double max_imag = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> degenerate_pairs;
    bool exceptional = false;
    /// Reciprocal of the smallest |<<n|n>| over unit-norm pairs, clamped to
    /// stay finite at an exact Jordan block.
    double condition_estimate = 1.0;
};

/// Builds the normalized biorthogonal system. Pairing matches each right
/// eigenvalue with the nearest conjugated left eigenvalue, which reproduces
/// the lexicographic (Re, Im) order on real spectra and stays robust for
/// complex-conjugate pairs. Throws ExceptionalPointError when any
/// pre-rescaling overlap |<<n|n>| falls below the exceptional threshold of
/// 1e-6.
BiorthogonalSystem biorthogonal_system(const ComplexMatrix& h, const Tolerance& tol = {});

/// Reports reality, degenerate pairs (gap 1e-8 * (1 + max|E|)) and the
/// exceptional flag; never throws on defective input.
SpectrumReport classify_spectrum(const ComplexMatrix& h, const Tolerance& tol = {});

/// sum_n E_n |n><<n| ; equals the matrix that produced sys up to solver
/// residuals.
ComplexMatrix spectral_reconstruct(const BiorthogonalSystem& sys);

std::string spectrum_report_to_json(const SpectrumReport& report);

}  // namespace qhqm
