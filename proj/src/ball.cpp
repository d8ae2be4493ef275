#include "steklov/ball.hpp"
#include "steklov/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace steklov {

namespace {

// Exact binomial coefficient with overflow detection.
std::int64_t binom(int a, int b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    __int128 r = 1;
    for (int i = 1; i <= b; ++i) {
        r = r * (a - b + i) / i;  // divides exactly at every step
        if (r > std::numeric_limits<std::int64_t>::max())
            throw std::overflow_error("harmonic_multiplicity: value exceeds 64 bits");
    }
    return static_cast<std::int64_t>(r);
}

} // namespace

std::int64_t harmonic_multiplicity(int n, int l) {
    if (n < 2) throw std::domain_error("harmonic_multiplicity: n must be >= 2");
    if (l < 0) throw std::domain_error("harmonic_multiplicity: l must be >= 0");
    if (l == 0) return 1;
    return binom(n + l - 1, l) - binom(n + l - 3, l - 2);
}

double mode_eigenvalue_raw(const PlateParams& p, int l) {
    require_admissible(p);
    if (l < 0) throw std::domain_error("mode_eigenvalue_raw: l must be >= 0");
    const int    n  = p.dim;
    const double s  = p.sigma;
    const double t  = p.tau;
    const double z  = std::sqrt(t);
    const BesselDerivs d = bessel_i_derivs(n, l, z);
    const double ld = l;

    const double den = t * d.d2 + z * s * (n - 1) * d.d1 - s * ld * (ld + n - 2) * d.f +
                       (1.0 - s) * ld * (1.0 - ld) * d.f;

    const double c0 = -ld * ld * (ld + n - 2) *
                      (s * t + (1.0 - s) * (ld - 1) * (s * ld + s * n - 3.0 - s));
    const double c1 = t * z * ld * (s * n + ld * s - 2.0 * s - ld + 1.0) +
                      z * (1.0 - s) * ld * (ld - 1) *
                          ((ld + n - 2) * (s * n - s - 2.0 * ld + s * ld) - n + 1.0);
    const double c2 = t * ld * (t + (1.0 - s) * (ld + 2.0 * n - 3.0) * (ld - 1));
    const double c3 = t * z * (1.0 - s) * ld * (ld - 1);

    const double num = c0 * d.f + c1 * d.d1 + c2 * d.d2 + c3 * d.d3;
    return num / den / p.rho;
}

double mode_eigenvalue(const PlateParams& p, int l) {
    require_admissible(p);
    if (l < 0) throw std::domain_error("mode_eigenvalue: l must be >= 0");
    if (l == 0) return 0.0;
    if (l == 1) return p.tau / p.rho;
    const int    n = p.dim;
    const double s = p.sigma;
    const double z = std::sqrt(p.tau);
    const double ld = l;
    const double x = bessel_i_ratio(n, l + 1, z);  // i_{l+2}/i_{l+1}
    const double bracket = (ld + n - 2) * (s * (n + ld - 1) + 1.0) + 3.0 * ld * ld +
                           2.0 * ld * (n - 1);
    const double num = bracket + z * (2.0 * ld + n - 2) * x;
    const double den = 2.0 * ld + 1.0 + s * (n - 1) + z * x;
    return (p.tau * ld + (1.0 - s) * ld * (ld - 1) * num / den) / p.rho;
}

double mode_b_coefficient(const PlateParams& p, int l) {
    require_admissible(p);
    if (l < 0) throw std::domain_error("mode_b_coefficient: l must be >= 0");
    if (l <= 1) return 0.0;
    const int    n = p.dim;
    const double s = p.sigma;
    const double z = std::sqrt(p.tau);
    const BesselDerivs d = bessel_i_derivs(n, l, z);
    const double ld = l;
    const double den = p.tau * d.d2 + z * s * (n - 1) * d.d1 - s * ld * (ld + n - 2) * d.f;
    return (1.0 - s) * ld * (1.0 - ld) / den;
}

RadialProfile radial_profile(const PlateParams& p, int l, double r) {
    require_admissible(p);
    if (l < 0) throw std::domain_error("radial_profile: l must be >= 0");
    if (!(r > 0.0 && r <= 1.0))
        throw std::domain_error("radial_profile: r must lie in (0, 1]");
    const double z = std::sqrt(p.tau);
    const double b = mode_b_coefficient(p, l);
    const BesselDerivs d = bessel_i_derivs(p.dim, l, z * r);
    const double ld = l;
    RadialProfile out;
    out.value = std::pow(r, l) + b * d.f;
    out.d1 = (l >= 1 ? ld * std::pow(r, l - 1) : 0.0) + b * z * d.d1;
    out.d2 = (l >= 2 ? ld * (ld - 1) * std::pow(r, l - 2) : 0.0) + b * z * z * d.d2;
    out.d3 = (l >= 3 ? ld * (ld - 1) * (ld - 2) * std::pow(r, l - 3) : 0.0) + b * z * z * z * d.d3;
    return out;
}

ProfileResiduals boundary_residuals(const PlateParams& p, int l) {
    const RadialProfile R = radial_profile(p, l, 1.0);
    const int    n  = p.dim;
    const double s  = p.sigma;
    const double ld = l;
    const double kappa  = ld * (ld + n - 2);
    const double lambda = mode_eigenvalue(p, l);

    // (1-sigma) d^2u/dnu^2 + sigma Lap u, with Lap u = R'' + (n-1)R' - kappa R at r=1
    const double r1 = R.d2 + s * (n - 1) * R.d1 - s * kappa * R.value;
    const double s1 = std::abs(R.d2) + std::abs(s * (n - 1) * R.d1) +
                      std::abs(s * kappa * R.value) + 1.0;

    // tau u_nu - (1-sigma) div_T(P[(D^2u)nu]) - (Lap u)_nu - lambda rho u, where the
    // tangential term reduces to -(1-sigma) kappa (R' - R) and
    // (Lap u)_nu = R''' + (n-1)(R'' - R') - kappa(R' - 2R) at r=1.
    const double flux = p.tau * R.d1 + (1.0 - s) * kappa * (R.d1 - R.value) -
                        (R.d3 + (n - 1) * (R.d2 - R.d1) - kappa * (R.d1 - 2.0 * R.value));
    const double r2 = flux - lambda * p.rho * R.value;
    const double s2 = std::abs(p.tau * R.d1) + std::abs((1.0 - s) * kappa * R.d1) +
                      std::abs((1.0 - s) * kappa * R.value) + std::abs(R.d3) +
                      std::abs((n - 1) * R.d2) + std::abs((n - 1) * R.d1) +
                      std::abs(kappa * R.d1) + std::abs(2.0 * kappa * R.value) +
                      std::abs(lambda * p.rho * R.value) + 1.0;

    return ProfileResiduals{r1 / s1, r2 / s2};
}

BallSpectrum ball_spectrum(const PlateParams& p, int count) {
    require_admissible(p);
    if (count < 1) throw std::invalid_argument("ball_spectrum: count must be >= 1");
    if (count > 100000) throw std::invalid_argument("ball_spectrum: count too large");

    BallSpectrum out;
    std::vector<double> all;
    all.reserve(2 * count);

    for (int l = 0;; ++l) {
        if (l > 100000)
            throw SolverError("ball_spectrum: mode scan failed to terminate");
        BallMode m;
        m.l            = l;
        m.lambda       = mode_eigenvalue(p, l);
        m.multiplicity = harmonic_multiplicity(p.dim, l);
        m.b_coeff      = mode_b_coefficient(p, l);
        out.modes.push_back(m);
        // at most `count` copies of one value can reach the final list
        const std::int64_t copies = std::min<std::int64_t>(m.multiplicity, count);
        all.insert(all.end(), static_cast<std::size_t>(copies), m.lambda);

        if (static_cast<int>(all.size()) >= count) {
            std::nth_element(all.begin(), all.begin() + (count - 1), all.end());
            const double kth = all[count - 1];
            // every later mode obeys lambda >= tau*(l+1)/rho
            if (p.tau * (l + 1.0) / p.rho > kth) break;
        }
    }

    std::sort(all.begin(), all.end());
    all.resize(count);
    // drop trailing modes that cannot appear in the truncated list
    while (out.modes.size() > 1 && out.modes.back().lambda > all.back())
        out.modes.pop_back();

    out.spectrum.eigenvalues = std::move(all);
    out.spectrum.clusters    = find_clusters(out.spectrum.eigenvalues, 1e-6);
    return out;
}

} // namespace steklov
