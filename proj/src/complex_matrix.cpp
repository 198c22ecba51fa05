#include "qhqm/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "qhqm/kernels.hpp"

namespace qhqm {

namespace {

void require_positive_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw DimensionError("ComplexMatrix: dimensions must be positive");
}

void require_finite(const std::vector<Complex>& data) {
    for (const Complex& z : data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DomainError("ComplexMatrix: non-finite entry");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    require_positive_dims(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    require_positive_dims(rows, cols);
    if (data_.size() != rows * cols)
        throw DimensionError("ComplexMatrix: entry count does not match rows * cols");
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    require_positive_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw DimensionError("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix addition: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix subtraction: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (Complex& z : data_) z *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex(-1.0, 0.0); }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return kernels::matmul(a, b);
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    if (m.size() == 0) return {};
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

Complex trace(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("trace: matrix must be square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (const Complex& z : m.data()) sum += std::norm(z);
    return std::sqrt(sum);
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const Complex& z : m.data()) best = std::max(best, std::abs(z));
    return best;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("hermitian_part: matrix must be square");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

std::vector<Complex> column(const ComplexMatrix& m, std::size_t j) {
    std::vector<Complex> col(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, j);
    return col;
}

}  // namespace qhqm
