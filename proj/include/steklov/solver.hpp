#pragma once

#include "steklov/domain.hpp"
#include "steklov/params.hpp"
#include "steklov/spectrum.hpp"

#include <Eigen/Dense>

#include <vector>

namespace steklov {

// Polynomial trial space: monomials ((x-cx)/h)^i ((y-cy)/h)^j with
// i + j <= degree, ordered so index 0 is the constant.  The center is the
// boundary centroid (trial functions then have zero boundary mean once the
// constant is deflated) and h is a characteristic radius; the scaling
// changes conditioning only, not the span.
struct RitzBasis {
    int degree = 2;
    Vec2 center;
    double scale = 1.0;

    int size() const { return (degree + 1) * (degree + 2) / 2; }
};

RitzBasis make_basis(const Domain& d, const Quadrature& q, int degree);

// Discrete bilinear forms on the trial space:
//   stiffness[i][j]     = int_Omega [(1-s) D2phi_i : D2phi_j + s Lap phi_i Lap phi_j
//                                    + tau grad phi_i . grad phi_j] dx
//   boundary_mass[i][j] = rho * int_dOmega phi_i phi_j dS
// Assembled by symmetric rank updates of sqrt-weight-scaled node matrices,
// so both matrices are exactly symmetric.  Admissibility of sigma is NOT
// enforced here (the solver validates first; an out-of-window sigma shows
// up as an indefinite stiffness and is caught at factorization time).
struct DiscreteOperator {
    Eigen::MatrixXd stiffness;
    Eigen::MatrixXd boundary_mass;
};

DiscreteOperator assemble(const Domain& d, const Quadrature& q, const PlateParams& p,
                          const RitzBasis& basis);

// Largest-to-smallest positive eigenvalue ratio of the stiffness restricted
// to the complement of the constant.
double stiffness_condition(const DiscreteOperator& op);

struct SolveOptions {
    int n_radial   = 64;
    int n_angular  = 256;
    int n_boundary = 1024;
    double cluster_tol = 1e-6;   // relative gap classed as a multiplicity cluster
    double rank_tol    = 1e-10;  // mu below rank_tol * mu_max discarded as lambda = inf
};

// Solver output: the spectrum (lambda_1 = 0 first) plus diagnostics.
struct RitzSpectrum {
    Spectrum spectrum;
    RitzBasis basis;
    int degree = 0;
    int n_radial = 0, n_angular = 0, n_boundary = 0;
    double stiffness_cond = 0.0;
    bool conditioning_warning = false;   // cond > 1e12: consider a lower degree
    std::vector<double> residuals;       // pencil residual per positive eigenvalue
    Eigen::MatrixXd vectors;             // basis coefficients, one column per eigenvalue
    // concentration-run diagnostics
    double mass_defect = 0.0;            // |quadrature mass - M| / M
    bool shell_warning = false;          // fewer than 8 radial nodes in the shell
    double eps = 0.0;
};

// Steklov pencil: deflates the constant direction, inverts the stiffness on
// the complement (symmetric eigenfactorization with small-eigenvalue
// truncation), and diagonalizes the boundary-mass form in that inner
// product.  Eigenvalues are 1/mu for the retained mu, prepended with 0.
RitzSpectrum solve_steklov(const Domain& d, PlateParams p, double rho, int degree,
                           const SolveOptions& opt = {});

// Same pencil with the eps-concentrated interior density in place of the
// boundary mass: rho_eps = eps on {dist > eps}, and the value that brings
// the total mass to M on the shell {dist <= eps}.  Shell geometry comes
// from per-ray splitting of the radial rule at the inner parallel curve.
RitzSpectrum solve_neumann_eps(const Domain& d, PlateParams p, double mass, double eps,
                               int degree, const SolveOptions& opt = {});

// Energy over boundary-mass quotient for a trial function given by basis
// coefficients.  Degree is inferred from the coefficient count.
double rayleigh_quotient(const Domain& d, const Quadrature& q, const PlateParams& p,
                         const std::vector<double>& coeffs, double rho);

} // namespace steklov
