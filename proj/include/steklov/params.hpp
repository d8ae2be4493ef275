#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Thrown when physical parameters leave the admissible range.
struct AdmissibilityError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when a discrete solve cannot be completed (indefinite forms,
// rank collapse, eigensolver failure).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a verification run finds a certified inequality violated
// beyond tolerance.  Callers that want a report instead of an exception
// use the check_* entry points which return structured results.
struct TheoremViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Physical parameters of the plate model: tension tau, Poisson ratio
// sigma, space dimension n, boundary density rho (constant).
struct PlateParams {
    int    dim   = 2;
    double tau   = 1.0;
    double sigma = 0.3;
    double rho   = 1.0;
};

// Admissible window: tau > 0 and -1/(n-1) < sigma < 1.  The lower edge
// is where the boundary energy loses coercivity.
inline bool is_admissible(const PlateParams& p) noexcept {
    if (p.dim < 2) return false;
    if (!(p.tau > 0.0)) return false;
    if (!(p.rho > 0.0)) return false;
    const double lo = -1.0 / (p.dim - 1);
    return p.sigma > lo && p.sigma < 1.0;
}

// Validates and throws AdmissibilityError with a specific message.
inline void require_admissible(const PlateParams& p) {
    if (p.dim < 2)
        throw AdmissibilityError("dimension must be at least 2, got " + std::to_string(p.dim));
    if (!(p.tau > 0.0))
        throw AdmissibilityError("tension tau must be positive, got " + std::to_string(p.tau));
    if (!(p.rho > 0.0))
        throw AdmissibilityError("density rho must be positive, got " + std::to_string(p.rho));
    const double lo = -1.0 / (p.dim - 1);
    if (!(p.sigma > lo && p.sigma < 1.0))
        throw AdmissibilityError("sigma = " + std::to_string(p.sigma) +
                                 " outside (" + std::to_string(lo) + ", 1)");
}

} // namespace steklov
