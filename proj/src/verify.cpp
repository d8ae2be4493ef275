#include "steklov/verify.hpp"

#include "steklov/asymmetry.hpp"
#include "steklov/ball.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace steklov {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ReciprocalSumResult reciprocal_sum_bound(const Domain& d, PlateParams p, int degree,
                                         const SolveOptions& opt) {
    p.dim = 2;
    p.rho = 1.0;
    require_admissible(p);
    const Quadrature q = make_quadrature(d, opt.n_radial, opt.n_angular, opt.n_boundary);
    const Vec2 xbar = centroid_shift(d, q);
    const double moment = boundary_moment(d, q, 2.0, xbar).value;
    const double ar = area(d);

    ReciprocalSumResult out;
    out.bound = moment / (p.tau * ar);
    RitzSpectrum rs = solve_steklov(d, p, 1.0, degree, opt);
    if (rs.spectrum.eigenvalues.size() < 3)
        throw SolverError("spectrum too short for the reciprocal sum");
    out.sum = 1.0 / rs.spectrum.eigenvalues[1] + 1.0 / rs.spectrum.eigenvalues[2];
    out.gap = out.sum - out.bound;
    if (out.gap < -1e-6 * std::max(out.bound, 1.0))
        throw TheoremViolation("reciprocal eigenvalue sum fell below its trial-function bound");
    return out;
}

double scaling_check(const Domain& d, PlateParams p, double s, int degree,
                     const SolveOptions& opt) {
    if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
    p.dim = 2;
    p.rho = 1.0;
    require_admissible(p);

    RitzSpectrum base = solve_steklov(d, p, 1.0, degree, opt);
    const double lam = base.spectrum.eigenvalues.at(1);

    Domain scaled{DomainSpec::scaled(d.spec(), s)};
    PlateParams ps = p;
    ps.tau = p.tau / (s * s);
    RitzSpectrum sc = solve_steklov(scaled, ps, 1.0, degree, opt);
    const double lam_s = s * s * s * sc.spectrum.eigenvalues.at(1);
    return std::abs(lam - lam_s) / std::abs(lam);
}

namespace {

IsoperimetricReport sweep_item(const std::string& id, const DomainSpec& spec,
                               const PlateParams& p, int degree, int asym_resolution) {
    IsoperimetricReport rep;
    rep.id = id;
    rep.degree = degree;
    try {
        Domain raw{spec};
        const double a0 = area(raw);
        rep.scale = std::sqrt(kPi / a0);
        Domain dom{DomainSpec::scaled(spec, rep.scale)};
        rep.area = area(dom);

        PlateParams pb = p;
        pb.dim = 2;
        pb.rho = 1.0;
        rep.lambda2_ball = mode_eigenvalue(pb, 1);

        AsymmetryResult asym = fraenkel_asymmetry(dom, asym_resolution);
        rep.asymmetry = asym.value;
        rep.asymmetry_err = asym.est_error;

        const double delta2 = stability_constants(2, 2.0).delta_n;
        rep.bound = rep.lambda2_ball * (1.0 - delta2 * rep.asymmetry * rep.asymmetry);

        RitzSpectrum lo = solve_steklov(dom, pb, 1.0, degree - 2);
        RitzSpectrum hi = solve_steklov(dom, pb, 1.0, degree);
        rep.lambda2 = hi.spectrum.eigenvalues.at(1);
        const double change = std::abs(rep.lambda2 - lo.spectrum.eigenvalues.at(1));
        rep.tol = std::max(1e-3 * rep.lambda2_ball, change);
        rep.margin = rep.bound - rep.lambda2;
        rep.weak_margin = rep.lambda2_ball - rep.lambda2;
        rep.ok = rep.margin >= -rep.tol;
    } catch (const std::exception& e) {
        rep.error = e.what();
        rep.ok = false;
    }
    return rep;
}

} // namespace

std::vector<IsoperimetricReport> isoperimetric_sweep(
    const std::vector<std::pair<std::string, DomainSpec>>& family, PlateParams p, int degree,
    int asym_resolution, int threads) {
    if (degree < 4) throw std::invalid_argument("sweep degree must be >= 4");
    std::vector<IsoperimetricReport> out(family.size());
    const int nthreads =
        std::max(1, std::min<int>(threads, static_cast<int>(family.size())));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < family.size(); ++i)
            out[i] = sweep_item(family[i].first, family[i].second, p, degree, asym_resolution);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= family.size()) return;
                out[i] =
                    sweep_item(family[i].first, family[i].second, p, degree, asym_resolution);
            }
        });
    for (auto& th : pool) th.join();
    return out;  // slots are indexed, so input order survives any schedule
}

MassConcentrationReport mass_concentration_sweep(const Domain& d, PlateParams p, double mass,
                                                 const std::vector<double>& eps_list,
                                                 int degree) {
    if (eps_list.empty()) throw std::invalid_argument("empty eps list");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("eps list must be strictly decreasing");
    p.dim = 2;
    p.rho = 1.0;
    require_admissible(p);

    MassConcentrationReport rep;
    rep.rho_ref = mass / perimeter(d);
    RitzSpectrum ref = solve_steklov(d, p, rep.rho_ref, degree);
    rep.lambda2_ref = ref.spectrum.eigenvalues.at(1);

    for (double eps : eps_list) {
        RitzSpectrum rn = solve_neumann_eps(d, p, mass, eps, degree);
        MassConcentrationRow row;
        row.eps = eps;
        row.lambda2 = rn.spectrum.eigenvalues.at(1);
        row.gap = std::abs(row.lambda2 - rep.lambda2_ref);
        row.mass_defect = rn.mass_defect;
        row.shell_warning = rn.shell_warning;
        rep.rows.push_back(row);
    }
    rep.gaps_decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].gap < rep.rows[i - 1].gap)) rep.gaps_decreasing = false;
    return rep;
}

} // namespace steklov
