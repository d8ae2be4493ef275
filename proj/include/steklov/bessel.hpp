#pragma once

namespace steklov {

// Radial profile of the modified Bessel family rescaled for dimension n:
//
//   i_l(z) = z^(1-n/2) * I_(n/2-1+l)(z)
//          = sum_{k>=0} z^(l+2k) / (2^(nu+2k) * k! * Gamma(k+nu+1)),
//
// with nu = n/2 - 1 + l.  All series terms are positive, so the sum is
// free of cancellation.  Requires n >= 2, l >= 0, z > 0.
double bessel_i(int n, int l, double z);

// i_l and its first three z-derivatives.  Values come from the series;
// derivatives are formed from the recursion ladder
//   i_l'   = (l/z) i_l + i_{l+1}
//   i_l''  = l(l-1)/z^2 i_l + (2l+1)/z i_{l+1} + i_{l+2}
//   i_l''' = l(l-1)(l-2)/z^3 i_l + 3l^2/z^2 i_{l+1} + (3l+3)/z i_{l+2} + i_{l+3}
// so no finite differencing is involved anywhere.
struct BesselDerivs {
    double f;   // i_l(z)
    double d1;  // i_l'(z)
    double d2;  // i_l''(z)
    double d3;  // i_l'''(z)
};
BesselDerivs bessel_i_derivs(int n, int l, double z);

// Ratio i_{l+1}(z) / i_l(z) by the continued fraction obtained from the
// three-term recursion i_l = ((n+2l)/z) i_{l+1} + i_{l+2}.  Stable for
// large l where the individual values underflow.
double bessel_i_ratio(int n, int l, double z);

// Relative residuals of the identities the evaluator relies on, with
// every ingredient recomputed independently from the series (derivative
// sides use the term-by-term differentiated series, not the recursion):
//   value : i_l - ((n+2l)/z i_{l+1} + i_{l+2})
//   d1    : i_l' - ((l/z) i_l + i_{l+1})
//   d2    : i_l'' - (l(l-1)/z^2 i_l + (2l+1)/z i_{l+1} + i_{l+2})
//   d3    : i_l''' - (...)
// Each residual is scaled by the magnitude of its left-hand side.
struct RecursionResiduals {
    double value;
    double d1;
    double d2;
    double d3;
};
RecursionResiduals bessel_recursion_residuals(int n, int l, double z);

} // namespace steklov
