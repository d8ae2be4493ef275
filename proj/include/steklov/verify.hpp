#pragma once

#include "steklov/domain.hpp"
#include "steklov/params.hpp"
#include "steklov/solver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace steklov {

// Lower bound for 1/lambda_2 + 1/lambda_3 from coordinate trial functions
// centered at the boundary centroid, against the numerically computed sum.
// Density 1 on the boundary; `gap = sum - bound` is nonnegative up to
// solver error and zero exactly on disks.
struct ReciprocalSumResult {
    double bound = 0.0;  // int_dOmega |x - xbar|^2 dS / (tau |Omega|)
    double sum = 0.0;    // 1/lambda_2 + 1/lambda_3
    double gap = 0.0;
};
ReciprocalSumResult reciprocal_sum_bound(const Domain& d, PlateParams p, int degree = 12,
                                         const SolveOptions& opt = {});

// Relative defect of lambda_2(tau, sigma, Omega) = s^3 lambda_2(tau/s^2, sigma, s*Omega),
// both sides solved with geometrically corresponding bases and quadratures.
double scaling_check(const Domain& d, PlateParams p, double s, int degree = 10,
                     const SolveOptions& opt = {});

// One row of the stability sweep.  Shapes are rescaled to area pi first, so
// the comparison ball is always the unit disk and its lambda_2 is closed
// form.  `tol` is max(1e-3 * lambda2_ball, degree-to-degree change); the
// inequality check is margin >= -tol.
struct IsoperimetricReport {
    std::string id;
    double area = 0.0;             // after normalization (== pi up to quadrature)
    double scale = 1.0;            // applied normalization factor
    double asymmetry = 0.0;
    double asymmetry_err = 0.0;
    double lambda2 = 0.0;          // Ritz value on the normalized shape
    double lambda2_ball = 0.0;     // closed form on the unit disk
    double bound = 0.0;            // lambda2_ball * (1 - delta_2 * asymmetry^2)
    double margin = 0.0;           // bound - lambda2
    double weak_margin = 0.0;      // lambda2_ball - lambda2
    double tol = 0.0;
    int degree = 0;
    bool ok = false;               // margin >= -tol
    std::string error;             // per-shape failure, sweep continues
};

std::vector<IsoperimetricReport> isoperimetric_sweep(
    const std::vector<std::pair<std::string, DomainSpec>>& family, PlateParams p,
    int degree = 12, int asym_resolution = 2048, int threads = 1);

// Eigenvalues of the free plate with the eps-concentrated density against
// the boundary-density problem at rho = mass / |dOmega|.
struct MassConcentrationRow {
    double eps = 0.0;
    double lambda2 = 0.0;
    double gap = 0.0;           // |lambda2 - lambda2_ref|
    double mass_defect = 0.0;
    bool shell_warning = false;
};
struct MassConcentrationReport {
    double rho_ref = 0.0;          // mass / perimeter
    double lambda2_ref = 0.0;      // boundary-density solve at rho_ref
    std::vector<MassConcentrationRow> rows;
    bool gaps_decreasing = false;  // strict, across the full eps list
};
MassConcentrationReport mass_concentration_sweep(const Domain& d, PlateParams p, double mass,
                                                 const std::vector<double>& eps_list,
                                                 int degree = 10);

} // namespace steklov
