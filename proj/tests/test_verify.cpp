#include "doctest.h"

#include "steklov/verify.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

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

TEST_CASE("reciprocal sum is tight on disks") {
    Domain disk{DomainSpec::disk(1.0)};
    auto r1 = reciprocal_sum_bound(disk, params2(1.0, 0.2), 12);
    CHECK(r1.bound == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r1.sum == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(r1.gap) < 1e-9);

    auto r2 = reciprocal_sum_bound(disk, params2(4.0, 0.0), 12);
    CHECK(r2.bound == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r2.sum == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("reciprocal sum is strict off the disk") {
    Domain ell{DomainSpec::ellipse(1.3, 1.0 / 1.3)};
    auto r = reciprocal_sum_bound(ell, params2(1.0, 0.3), 12);
    CHECK(r.gap > 1e-4);
    CHECK(r.sum > r.bound);
    CHECK(std::isfinite(r.sum));
    CHECK(std::isfinite(r.bound));
}

TEST_CASE("eigenvalues obey the cubic scaling law") {
    Domain disk{DomainSpec::disk(1.0)};
    Domain ell{DomainSpec::ellipse(1.3, 1.0 / 1.3)};
    CHECK(scaling_check(disk, params2(1.0, 0.0), 1.0, 8) == 0.0);
    CHECK(scaling_check(ell, params2(1.0, 0.3), 1.0, 8) == 0.0);
    for (double s : {0.5, 2.0}) {
        CHECK(scaling_check(disk, params2(1.0, 0.0), s, 10) < 1e-10);
        CHECK(scaling_check(ell, params2(1.0, 0.3), s, 10) < 1e-10);
    }
    CHECK(scaling_check(ell, params2(3.0, 0.4), 0.5, 10) < 1e-8);
    CHECK_THROWS_AS(scaling_check(disk, params2(1.0, 0.0), 0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(scaling_check(disk, params2(1.0, 0.0), -2.0, 8), std::invalid_argument);
}

TEST_CASE("stability sweep holds across a shape family") {
    std::vector<std::pair<std::string, DomainSpec>> fam = {
        {"disk", DomainSpec::disk(1.0)},
        {"disk_r2", DomainSpec::disk(2.0)},
        {"ellipse", DomainSpec::ellipse(1.2, 1.0 / 1.2)},
        {"star3", DomainSpec::star(1.0, {0.0, 0.0, 0.25}, {})},
    };
    auto reports = isoperimetric_sweep(fam, params2(1.0, 0.3), 12, 2048, 1);
    REQUIRE(reports.size() == 4);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto& r = reports[i];
        CHECK(r.id == fam[i].first);  // input order preserved
        CHECK(r.error.empty());
        CHECK(r.ok);
        CHECK(r.area == doctest::Approx(kPi).epsilon(1e-9));
        CHECK(r.lambda2_ball == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.margin >= -r.tol);
        CHECK(r.weak_margin >= -r.tol);
        CHECK(r.lambda2 > 0.0);
    }
    // equality case: the disk itself
    CHECK(std::abs(reports[0].margin) < 1e-3);
    CHECK(reports[0].asymmetry < 5e-3);
    CHECK(reports[1].scale == doctest::Approx(0.5).epsilon(1e-12));
    // strictly away from the ball the weaker comparison is also strict
    CHECK(reports[2].margin > 0.05);
    CHECK(reports[3].margin > 0.05);
    CHECK(reports[2].weak_margin > 0.05);
}

TEST_CASE("sweep runs items concurrently with identical results") {
    std::vector<std::pair<std::string, DomainSpec>> fam = {
        {"a", DomainSpec::ellipse(1.1, 1.0 / 1.1)},
        {"b", DomainSpec::ellipse(1.3, 1.0 / 1.3)},
        {"c", DomainSpec::star(1.0, {0.0, 0.15}, {})},
    };
    auto serial = isoperimetric_sweep(fam, params2(1.0, 0.0), 10, 1024, 1);
    auto parallel = isoperimetric_sweep(fam, params2(1.0, 0.0), 10, 1024, 3);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].id == parallel[i].id);
        CHECK(serial[i].lambda2 == parallel[i].lambda2);  // same arithmetic, same bits
        CHECK(serial[i].asymmetry == parallel[i].asymmetry);
        CHECK(parallel[i].ok);
    }
}

TEST_CASE("sweep records per-shape failures and continues") {
    std::vector<std::pair<std::string, DomainSpec>> fam = {
        {"good", DomainSpec::disk(1.0)},
        {"bad", DomainSpec::star(1.0, {1.2}, {})},  // radius dips negative
        {"also_good", DomainSpec::ellipse(1.2, 1.0 / 1.2)},
    };
    auto reports = isoperimetric_sweep(fam, params2(1.0, 0.0), 10, 1024, 1);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].ok);
    CHECK_FALSE(reports[1].ok);
    CHECK_FALSE(reports[1].error.empty());
    CHECK(reports[2].ok);
}

TEST_CASE("concentrated densities converge to the boundary problem") {
    Domain disk{DomainSpec::disk(1.0)};
    auto rep = mass_concentration_sweep(disk, params2(1.0, 0.0), 2.0 * kPi,
                                        {0.2, 0.1, 0.05}, 8);
    CHECK(rep.rho_ref == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.lambda2_ref == doctest::Approx(1.0).epsilon(1e-10));
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.gaps_decreasing);
    for (const auto& row : rep.rows) {
        CHECK(row.mass_defect <= 1e-6);
        CHECK_FALSE(row.shell_warning);
    }
    CHECK(rep.rows[1].gap < rep.rows[0].gap);
    CHECK(rep.rows[2].gap < rep.rows[1].gap);
}

TEST_CASE("concentration sweep validates its eps list") {
    Domain disk{DomainSpec::disk(1.0)};
    PlateParams p = params2(1.0, 0.0);
    CHECK_THROWS_AS(mass_concentration_sweep(disk, p, 2.0 * kPi, {}, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(mass_concentration_sweep(disk, p, 2.0 * kPi, {0.1, 0.2}, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(mass_concentration_sweep(disk, p, 2.0 * kPi, {0.1, 0.1}, 8),
                    std::invalid_argument);
}
