#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhqm/complex_matrix.hpp"
#include "qhqm/metric_solver.hpp"
#include "qhqm/tolerance.hpp"

namespace qhqm {

struct ConstrainResult {
    MetricSpace reduced;
    bool unique_ray = false;
    /// Present when the ray is unique and one of its signs is positive
    /// definite; normalized to trace N.
    std::optional<ComplexMatrix> theta_phys;
    /// Non-empty when the unique ray has no positive representative.
    std::string diagnostic;
};

/// Intersects the metric space with the kernel of every constraint
/// theta * A_j - A_j^dag * theta = 0, expressed over the coefficient space of
/// the precomputed basis. Observables may be non-Hermitian; A_j^dag is used
/// as given. An observable proportional to the identity imposes no
/// constraint and leaves the space unchanged.
ConstrainResult constrain_metric(const MetricSpace& space,
                                 const std::vector<ComplexMatrix>& observables,
                                 const Tolerance& tol = {});

/// (d - a) / (2 b) * cos(alpha). Throws TrivialityError when b = 0 and
/// DomainError for alpha outside (0, pi).
double fix_xi_closed_form(double a, double b, double d, double alpha);

}  // namespace qhqm
