#include "qhqm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhqm/errors.hpp"
#include "qhqm/matrix_json.hpp"

namespace qhqm {

namespace {

// Pre-rescaling overlap below this flags a (near-)Jordan block.
constexpr double kExceptionalOverlap = 1e-6;
// Degeneracy gap: |E_i - E_j| <= kDegeneracyGap * (1 + max|E|).
constexpr double kDegeneracyGap = 1e-8;

struct RawSystem {
    std::vector<Complex> eigenvalues;
    ComplexMatrix right;
    ComplexMatrix left;              // unit-norm columns, paired index-wise
    std::vector<Complex> overlaps;   // <<n|n> before rescaling
};

// Diagonalizes h and h^dag and pairs the systems: each right eigenvalue E_n
// takes the unused left eigenvalue whose conjugate is nearest. For real
// spectra this coincides with sorting the conjugated left eigenvalues by
// (Re, Im); for complex-conjugate pairs it stays correct when round-off
// noise in the real parts would derail a pure lexicographic sort.
RawSystem raw_biorthogonal(const ComplexMatrix& h) {
    const EigenSystem right = eig_general(h);
    const EigenSystem left = eig_general(adjoint(h));
    const std::size_t n = h.rows();

    std::vector<std::size_t> order(n);
    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = n;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < n; ++m) {
            if (used[m]) continue;
            const double d = std::abs(std::conj(left.eigenvalues[m]) - right.eigenvalues[k]);
            if (d < gap) {
                gap = d;
                best = m;
            }
        }
        order[k] = best;
        used[best] = true;
    }

    RawSystem raw;
    raw.eigenvalues = right.eigenvalues;
    raw.right = right.right_vectors;
    raw.left = ComplexMatrix(n, n);
    raw.overlaps.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            raw.left(i, k) = left.right_vectors(i, src);
            overlap += std::conj(raw.left(i, k)) * raw.right(i, k);
        }
        raw.overlaps[k] = overlap;
    }
    return raw;
}

std::size_t nearest_partner(const std::vector<Complex>& values, std::size_t n) {
    std::size_t best = n;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < values.size(); ++m) {
        if (m == n) continue;
        const double d = std::abs(values[m] - values[n]);
        if (d < gap) {
            gap = d;
            best = m;
        }
    }
    return best;
}

}  // namespace

BiorthogonalSystem biorthogonal_system(const ComplexMatrix& h, const Tolerance& tol) {
    if (!h.is_square()) throw DimensionError("biorthogonal_system: matrix must be square");
    RawSystem raw = raw_biorthogonal(h);
    const std::size_t n = h.rows();

    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(raw.overlaps[k]) < kExceptionalOverlap) {
            const std::size_t partner = nearest_partner(raw.eigenvalues, k);
            throw ExceptionalPointError(
                "biorthogonal_system: (near-)defective spectrum, overlap " +
                    std::to_string(std::abs(raw.overlaps[k])) + " at index " + std::to_string(k),
                k, partner);
        }
    }

    BiorthogonalSystem sys;
    sys.dimension = n;
    sys.eigenvalues = std::move(raw.eigenvalues);
    sys.right_vectors = std::move(raw.right);
    sys.left_vectors = std::move(raw.left);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex scale = 1.0 / std::conj(raw.overlaps[k]);
        for (std::size_t i = 0; i < n; ++i) sys.left_vectors(i, k) *= scale;
    }

    // verify <<n|m> = delta_nm at the caller's tolerance
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dot += std::conj(sys.left_vectors(i, a)) * sys.right_vectors(i, b);
            worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    if (worst > std::max(tol.abs_eps + tol.rel_eps, 1e-8))
        throw ConvergenceError("biorthogonal_system: normalization residual too large", worst);

    return sys;
}

SpectrumReport classify_spectrum(const ComplexMatrix& h, const Tolerance& tol) {
    if (!h.is_square()) throw DimensionError("classify_spectrum: matrix must be square");
    const RawSystem raw = raw_biorthogonal(h);
    const std::size_t n = h.rows();

    SpectrumReport report;
    double max_abs_e = 0.0;
    for (const Complex& e : raw.eigenvalues) {
        report.max_imag = std::max(report.max_imag, std::abs(e.imag()));
        max_abs_e = std::max(max_abs_e, std::abs(e));
    }
    report.all_real = report.max_imag <= tol.abs_eps + tol.rel_eps * max_abs_e;

    const double gap = kDegeneracyGap * (1.0 + max_abs_e);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(raw.eigenvalues[i] - raw.eigenvalues[j]) <= gap)
                report.degenerate_pairs.emplace_back(i, j);

    double min_overlap = std::numeric_limits<double>::infinity();
    for (const Complex& o : raw.overlaps) min_overlap = std::min(min_overlap, std::abs(o));
    if (n == 0) min_overlap = 1.0;
    report.exceptional = min_overlap < kExceptionalOverlap;
    report.condition_estimate = 1.0 / std::max(min_overlap, 1e-300);
    return report;
}

ComplexMatrix spectral_reconstruct(const BiorthogonalSystem& sys) {
    const std::size_t n = sys.dimension;
    if (n == 0) throw DimensionError("spectral_reconstruct: empty system");
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const Complex lhs = sys.eigenvalues[k] * sys.right_vectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += lhs * std::conj(sys.left_vectors(j, k));
        }
    return out;
}

std::string spectrum_report_to_json(const SpectrumReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("all_real").value(report.all_real);
    w.key("max_imag").value(report.max_imag);
    w.key("degenerate_pairs").begin_array();
    for (const auto& [i, j] : report.degenerate_pairs) {
        w.begin_array();
        w.value(i);
        w.value(j);
        w.end_array();
    }
    w.end_array();
    w.key("exceptional").value(report.exceptional);
    w.key("condition_estimate").value(report.condition_estimate);
    w.end_object();
    return w.str();
}

}  // namespace qhqm
