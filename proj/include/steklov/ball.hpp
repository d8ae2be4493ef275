#pragma once

#include "steklov/params.hpp"
#include "steklov/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace steklov {

// One separated mode on the unit ball: angular order l, eigenvalue,
// spherical-harmonic multiplicity, and the coefficient b of the radial
// profile R_l(r) = r^l + b * i_l(sqrt(tau) r) (leading coefficient fixed
// to 1).
struct BallMode {
    int    l            = 0;
    double lambda       = 0.0;
    std::int64_t multiplicity = 1;
    double b_coeff      = 0.0;
};

// Dimension of the space of degree-l spherical harmonics on S^{n-1}:
// C(n+l-1, l) - C(n+l-3, l-2).
std::int64_t harmonic_multiplicity(int n, int l);

// Eigenvalue of the order-l mode as the untransformed ratio of the long
// bracket expressions in i_l, i_l', i_l'', i_l''' at sqrt(tau).  Exists
// as an independent cross-check for the reduced form below; the two must
// agree to roundoff.
double mode_eigenvalue_raw(const PlateParams& p, int l);

// Same eigenvalue after reduction to the two-term form
//
//   lambda_l = tau*l + (1-sigma)l(l-1) *
//       [B * i_{l+1} + sqrt(tau)(2l+n-2) * i_{l+2}]
//     / [(2l+1+sigma(n-1)) * i_{l+1} + sqrt(tau) * i_{l+2}],
//   B = (l+n-2)(sigma(n+l-1)+1) + 3l^2 + 2l(n-1),
//
// evaluated through the ratio i_{l+2}/i_{l+1} so it stays finite for
// large l.  Every factor in the correction is nonnegative on the
// admissible window, hence lambda_l >= tau*l; the spectrum scan below
// relies on that lower bound to terminate.
double mode_eigenvalue(const PlateParams& p, int l);

// Radial profile coefficient b for the order-l mode (0 for l = 0, 1).
double mode_b_coefficient(const PlateParams& p, int l);

// Residuals of the two natural boundary conditions for the order-l
// profile at r = 1, each scaled by the size of its constituent terms.
// Both vanish to roundoff when b and lambda are consistent.
struct ProfileResiduals {
    double second_order;  // (1-sigma) u_nn + sigma Lap u
    double third_order;   // flux condition minus lambda * rho * u
};
ProfileResiduals boundary_residuals(const PlateParams& p, int l);

// Radial profile R_l and derivatives at radius r in (0, 1].
struct RadialProfile {
    double value;
    double d1;
    double d2;
    double d3;
};
RadialProfile radial_profile(const PlateParams& p, int l, double r);

// First `count` eigenvalues of the unit ball, sorted ascending with
// multiplicities expanded, plus the contributing modes.  The scan over l
// stops once tau*l exceeds the provisional count-th eigenvalue, which the
// lower bound lambda_l >= tau*l makes safe.
struct BallSpectrum {
    std::vector<BallMode> modes;   // by ascending l, only modes that contribute
    Spectrum spectrum;             // flattened, length == count
};
BallSpectrum ball_spectrum(const PlateParams& p, int count);

} // namespace steklov
