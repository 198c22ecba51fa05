#pragma once

#include <cmath>

namespace qhqm {

/// Absolute/relative blend applied by every equality and positivity verdict.
/// A quantity x of scale s counts as zero when |x| <= abs_eps + rel_eps * s.
struct Tolerance {
    double abs_eps = 1e-10;
    double rel_eps = 1e-10;
};

inline bool tolerance_valid(const Tolerance& tol) {
    if (!std::isfinite(tol.abs_eps) || !std::isfinite(tol.rel_eps)) return false;
    if (tol.abs_eps < 0.0 || tol.rel_eps < 0.0) return false;
    return tol.abs_eps > 0.0 || tol.rel_eps > 0.0;
}

}  // namespace qhqm
