#pragma once

// Reference implementations used only by the tests.  Deliberately written
// differently from the library: long double accumulation, per-term lgammal
// coefficients (no ratio recurrence), brute-force finite differences.

#include <cmath>
#include <functional>

namespace oracle {

// Series for d^m/dz^m of the rescaled radial Bessel profile, every term
// coefficient formed independently in log space.
inline long double bessel_series(int n, int l, long double z, int m = 0) {
    const long double nu = 0.5L * n - 1.0L + l;
    long double sum = 0.0L;
    for (int k = 0; k <= 200; ++k) {
        const long double p = l + 2.0L * k;
        long double fac = 1.0L;
        for (int j = 0; j < m; ++j) fac *= (p - j);
        if (fac == 0.0L) continue;
        const long double logc = (p - m) * std::log(z) - (nu + 2.0L * k) * std::log(2.0L) -
                                 std::lgamma((long double)(k + 1)) - std::lgamma(k + nu + 1.0L);
        sum += fac * std::exp(logc);
    }
    return sum;
}

// Central differences on a scalar function, O(h^2).
inline double fd1(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}
inline double fd2(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}
inline double fd3(const std::function<double(double)>& f, double x, double h) {
    return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
}

// Exact integral of x^a y^b over the unit disk (0 unless both even):
//   2 pi (a-1)!! (b-1)!! / ((a+b+2)!!)
// and over the unit circle: 2 pi (a-1)!! (b-1)!! / (a+b)!!.
inline double dfact(int k) {  // (-1)!! = 1
    double r = 1.0;
    for (int v = k; v >= 2; v -= 2) r *= v;
    return r;
}
inline double disk_moment(int a, int b) {
    if (a % 2 || b % 2) return 0.0;
    constexpr double pi = 3.14159265358979323846;
    return 2.0 * pi * dfact(a - 1) * dfact(b - 1) / dfact(a + b + 2);
}
inline double circle_moment(int a, int b) {
    if (a % 2 || b % 2) return 0.0;
    constexpr double pi = 3.14159265358979323846;
    return 2.0 * pi * dfact(a - 1) * dfact(b - 1) / dfact(a + b);
}

} // namespace oracle
