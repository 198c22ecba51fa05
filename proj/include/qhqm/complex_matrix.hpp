#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qhqm/errors.hpp"

namespace qhqm {

using Complex = std::complex<double>;

/// Dense row-major complex matrix, the carrier for every operator in the
/// workbench (Hamiltonians, metrics, parities, charges, observables).
/// Entries are validated to be finite at construction from external data.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero-filled rows x cols matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);

    /// From row-major data; throws DimensionError on a size mismatch and
    /// DomainError if any entry is non-finite.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

    /// Row-of-rows initializer, mostly for tests and fixtures.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }
    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }

    bool operator==(const ComplexMatrix& other) const = default;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose; an exact involution.
ComplexMatrix adjoint(const ComplexMatrix& m);

Complex trace(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);

/// (m + m^dag) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

std::vector<Complex> column(const ComplexMatrix& m, std::size_t j);

}  // namespace qhqm
