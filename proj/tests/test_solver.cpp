#include "doctest.h"

#include "steklov/ball.hpp"
#include "steklov/solver.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"

using namespace steklov;

namespace {
constexpr double kPi = 3.14159265358979323846;

PlateParams params2(double tau, double sigma) {
    PlateParams p;
    p.dim = 2;
    p.tau = tau;
    p.sigma = sigma;
    return p;
}
}  // namespace

TEST_CASE("degree-1 disk forms match hand integration") {
    // basis {1, x, y}: gradients are constant, Hessians vanish, so the
    // stiffness is tau * diag(0, |Omega|, |Omega|) and the boundary mass
    // comes from circle moments
    for (Vec2 c : {Vec2{0.0, 0.0}, Vec2{1.0, 3.0}}) {
        Domain disk{DomainSpec::disk(1.0, c)};
        Quadrature q = make_quadrature(disk);
        RitzBasis basis = make_basis(disk, q, 1);
        CHECK(basis.scale == doctest::Approx(1.0));
        CHECK(std::abs(basis.center.x - c.x) < 1e-12);
        DiscreteOperator op = assemble(disk, q, params2(1.0, 0.3), basis);
        REQUIRE(op.stiffness.rows() == 3);
        CHECK(std::abs(op.stiffness(0, 0)) < 1e-14);
        CHECK(std::abs(op.stiffness(1, 0)) < 1e-14);
        CHECK(op.stiffness(1, 1) == doctest::Approx(kPi).epsilon(1e-10));
        CHECK(op.stiffness(2, 2) == doctest::Approx(kPi).epsilon(1e-10));
        CHECK(std::abs(op.stiffness(2, 1)) < 1e-10);
        CHECK(op.boundary_mass(0, 0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
        CHECK(op.boundary_mass(1, 1) ==
              doctest::Approx(oracle::circle_moment(2, 0)).epsilon(1e-12));
        CHECK(op.boundary_mass(2, 2) ==
              doctest::Approx(oracle::circle_moment(0, 2)).epsilon(1e-12));
        CHECK(std::abs(op.boundary_mass(1, 0)) < 1e-10);
        CHECK(std::abs(op.boundary_mass(2, 1)) < 1e-10);
        CHECK(op.stiffness.isApprox(op.stiffness.transpose()));
    }
}

TEST_CASE("quadratic trial energy matches hand integration") {
    // u = x^2 + y^2 on the unit disk: |D2 u|^2 = 8, (Lap u)^2 = 16,
    // |grad u|^2 = 4 r^2
    Domain disk{DomainSpec::disk(1.0)};
    Quadrature q = make_quadrature(disk);
    RitzBasis basis = make_basis(disk, q, 2);
    const double tau = 2.0, sigma = 0.3;
    DiscreteOperator op = assemble(disk, q, params2(tau, sigma), basis);
    REQUIRE(op.stiffness.rows() == 6);
    Eigen::VectorXd c(6);
    c << 0, 0, 0, 1, 0, 1;  // ordering: 1, x, y, x^2, xy, y^2
    const double grad_term = 4.0 * (oracle::disk_moment(2, 0) + oracle::disk_moment(0, 2));
    const double expect = 8.0 * kPi * (1.0 - sigma) + 16.0 * kPi * sigma + tau * grad_term;
    CHECK(c.dot(op.stiffness * c) == doctest::Approx(expect).epsilon(1e-12));
    // trace of u on the unit circle is 1
    CHECK(c.dot(op.boundary_mass * c) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("hessian form dominates half the laplacian form") {
    // A(sigma, tau) = (1-sigma) H + sigma L + tau G; recover H, L, G by
    // differencing and check the pointwise inequality |D2u|^2 >= (Lap u)^2 / 2
    // survives integration
    Domain ell{DomainSpec::ellipse(1.3, 0.9)};
    Quadrature q = make_quadrature(ell);
    RitzBasis basis = make_basis(ell, q, 5);
    const Eigen::MatrixXd A01 = assemble(ell, q, params2(1.0, 0.0), basis).stiffness;
    const Eigen::MatrixXd A02 = assemble(ell, q, params2(2.0, 0.0), basis).stiffness;
    const Eigen::MatrixXd A11 = assemble(ell, q, params2(1.0, 1.0), basis).stiffness;
    const Eigen::MatrixXd G = A02 - A01;
    const Eigen::MatrixXd H = A01 - G;
    const Eigen::MatrixXd L = A11 - G;
    std::mt19937 rng(7771);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 25; ++trial) {
        Eigen::VectorXd c(basis.size());
        for (int i = 0; i < c.size(); ++i) c(i) = nd(rng);
        const double qh = c.dot(H * c);
        const double ql = c.dot(L * c);
        const double qg = c.dot(G * c);
        CHECK(qh >= -1e-10);
        CHECK(ql >= -1e-10);
        CHECK(qg >= -1e-10);
        CHECK(qh >= 0.5 * ql - 1e-10 * (qh + 1.0));
    }
}

TEST_CASE("disk spectrum reproduces closed-form eigenvalues") {
    // the first nonconstant modes of the unit disk are the coordinate
    // functions themselves, so the Ritz values are exact up to roundoff
    Domain disk{DomainSpec::disk(1.0)};
    for (double tau : {0.5, 5.0}) {
        for (double sigma : {-0.3, 0.5}) {
            PlateParams p = params2(tau, sigma);
            RitzSpectrum rs = solve_steklov(disk, p, 1.0, 10);
            REQUIRE(rs.spectrum.eigenvalues.size() >= 5);
            CHECK(rs.spectrum.eigenvalues[0] == 0.0);
            PlateParams pb = p;
            pb.rho = 1.0;
            const double l1 = mode_eigenvalue(pb, 1);
            CHECK(std::abs(rs.spectrum.eigenvalues[1] - l1) / l1 < 1e-12);
            CHECK(std::abs(rs.spectrum.eigenvalues[2] - l1) / l1 < 1e-12);
            REQUIRE(rs.spectrum.clusters.size() >= 2);
            CHECK(rs.spectrum.clusters[0].count == 1);
            CHECK(rs.spectrum.clusters[1].count == 2);
            // next cluster approximates the second angular mode
            const double l2 = mode_eigenvalue(pb, 2);
            CHECK(std::abs(rs.spectrum.eigenvalues[3] - l2) / l2 < 1e-6);
            CHECK(std::abs(rs.spectrum.eigenvalues[4] - l2) / l2 < 1e-6);
            CHECK_FALSE(rs.conditioning_warning);
        }
    }
}

TEST_CASE("ritz values shrink as the trial space grows") {
    Domain ell{DomainSpec::ellipse(1.3, 1.0 / 1.3)};
    PlateParams p = params2(1.0, 0.3);
    double prev = 1e300;
    for (int deg : {6, 8, 10}) {
        RitzSpectrum rs = solve_steklov(ell, p, 1.0, deg);
        const double l2 = rs.spectrum.eigenvalues.at(1);
        CHECK(l2 <= prev + 1e-9 * std::abs(prev));
        prev = l2;
    }
    // converged value, regression-pinned from degree-10/12 agreement
    CHECK(prev == doctest::Approx(0.6426868492).epsilon(1e-8));
}

TEST_CASE("boundary density scales eigenvalues reciprocally") {
    Domain ell{DomainSpec::ellipse(1.3, 1.0 / 1.3)};
    PlateParams p = params2(1.0, 0.3);
    RitzSpectrum r1 = solve_steklov(ell, p, 1.0, 8);
    RitzSpectrum r4 = solve_steklov(ell, p, 4.0, 8);
    REQUIRE(r1.spectrum.eigenvalues.size() >= 6);
    for (std::size_t i = 1; i < 6; ++i) {
        const double a = r1.spectrum.eigenvalues[i];
        const double b = r4.spectrum.eigenvalues[i];
        CHECK(std::abs(4.0 * b - a) / a < 1e-12);
    }
}

TEST_CASE("eigenvector coefficients reproduce their rayleigh quotient") {
    Domain star{DomainSpec::star(1.0, {0.0, 0.0, 0.2}, {})};
    PlateParams p = params2(1.0, 0.0);
    RitzSpectrum rs = solve_steklov(star, p, 1.0, 8);
    Quadrature q = make_quadrature(star);
    REQUIRE(rs.spectrum.eigenvalues.size() >= 3);
    for (std::size_t k = 1; k <= 2; ++k) {
        const Eigen::VectorXd col = rs.vectors.col(static_cast<int>(k));
        std::vector<double> coeffs(col.data(), col.data() + col.size());
        const double rq = rayleigh_quotient(star, q, p, coeffs, 1.0);
        const double lam = rs.spectrum.eigenvalues[k];
        CHECK(std::abs(rq - lam) / lam < 1e-8);
    }
}

TEST_CASE("rayleigh quotient on explicit trial functions") {
    Domain disk{DomainSpec::disk(1.0)};
    Quadrature q = make_quadrature(disk);
    PlateParams p = params2(3.0, 0.2);
    // u = x: no Hessian, unit gradient; equality case of the reciprocal bound
    CHECK(rayleigh_quotient(disk, q, p, {0.0, 1.0, 0.0}, 1.0) ==
          doctest::Approx(3.0).epsilon(1e-12));
    // constants lie in the kernel
    CHECK(rayleigh_quotient(disk, q, p, {1.0, 0.0, 0.0}, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(rayleigh_quotient(disk, q, p, {0.0, 0.0, 0.0}, 1.0), SolverError);
    CHECK_THROWS_AS(rayleigh_quotient(disk, q, p, {1.0, 0.0, 0.0, 0.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("inadmissible parameters are rejected before assembly") {
    Domain disk{DomainSpec::disk(1.0)};
    PlateParams p = params2(1.0, 1.5);
    CHECK_THROWS_AS(solve_steklov(disk, p, 1.0, 8), AdmissibilityError);
    p.sigma = -1.5;
    CHECK_THROWS_AS(solve_steklov(disk, p, 1.0, 8), AdmissibilityError);
    p.sigma = 0.3;
    p.tau = -1.0;
    CHECK_THROWS_AS(solve_steklov(disk, p, 1.0, 8), AdmissibilityError);
    p.tau = 1.0;
    CHECK_THROWS_AS(solve_steklov(disk, p, -2.0, 8), AdmissibilityError);
    CHECK_THROWS_AS(solve_steklov(disk, p, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(solve_steklov(disk, p, 1.0, 99), std::invalid_argument);
    p.dim = 3;
    CHECK_THROWS_AS(solve_steklov(disk, p, 1.0, 8), std::invalid_argument);
}

TEST_CASE("out-of-window sigma makes the quotient stiffness indefinite") {
    // assemble() itself accepts any sigma; the energy then loses coercivity
    // and the smallest quotient eigenvalue goes negative, which is what the
    // solver's factorization guard detects
    Domain disk{DomainSpec::disk(1.0)};
    Quadrature q = make_quadrature(disk);
    RitzBasis basis = make_basis(disk, q, 6);
    DiscreteOperator op = assemble(disk, q, params2(1.0, 3.0), basis);
    const int m = basis.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        op.stiffness.bottomRightCorner(m - 1, m - 1), Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues()(0) < -1e-6);
    // inside the window the same quotient is positive definite
    DiscreteOperator ok = assemble(disk, q, params2(1.0, 0.5), basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(
        ok.stiffness.bottomRightCorner(m - 1, m - 1), Eigen::EigenvaluesOnly);
    CHECK(es2.eigenvalues()(0) > 0.0);
}

TEST_CASE("stiffness conditioning grows with degree and is reported") {
    Domain ell{DomainSpec::ellipse(1.3, 0.9)};
    Quadrature q = make_quadrature(ell);
    PlateParams p = params2(1.0, 0.3);
    DiscreteOperator lo = assemble(ell, q, p, make_basis(ell, q, 4));
    DiscreteOperator hi = assemble(ell, q, p, make_basis(ell, q, 10));
    const double c_lo = stiffness_condition(lo);
    const double c_hi = stiffness_condition(hi);
    CHECK(c_lo > 1.0);
    CHECK(std::isfinite(c_lo));
    CHECK(c_hi > 10.0 * c_lo);
}

TEST_CASE("concentrated interior density approximates the boundary problem") {
    Domain disk{DomainSpec::disk(1.0)};
    PlateParams p = params2(1.0, 0.0);
    const double mass = 2.0 * kPi;  // mass per unit arc = 1 in the limit
    double prev_gap = 1e300;
    for (double eps : {0.2, 0.1}) {
        RitzSpectrum rn = solve_neumann_eps(disk, p, mass, eps, 8);
        CHECK(rn.spectrum.eigenvalues.at(0) == 0.0);
        CHECK(rn.mass_defect <= 1e-6);
        CHECK_FALSE(rn.shell_warning);
        CHECK(rn.eps == eps);
        const double gap = std::abs(rn.spectrum.eigenvalues.at(1) - 1.0);
        CHECK(gap < 0.5);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("shell solver validates its geometry inputs") {
    Domain disk{DomainSpec::disk(1.0)};
    PlateParams p = params2(1.0, 0.0);
    // max shell width of the unit disk is 0.5
    CHECK_THROWS_AS(solve_neumann_eps(disk, p, 2.0 * kPi, 0.6, 8), std::invalid_argument);
    CHECK_THROWS_AS(solve_neumann_eps(disk, p, 2.0 * kPi, 0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(solve_neumann_eps(disk, p, 0.01, 0.2, 8), std::invalid_argument);
    CHECK_THROWS_AS(solve_neumann_eps(disk, p, 2.0 * kPi, 0.2, 1), std::invalid_argument);
}
