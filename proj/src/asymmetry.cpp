#include "steklov/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace steklov {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Grid {
    int N = 0;
    double x0 = 0, y0 = 0;   // lower-left corner of the box
    double hx = 0, hy = 0;   // cell sizes
    std::vector<std::int32_t> prefix;  // (N+1) per row, row-major
    std::int64_t count_domain = 0;

    double cx(int j) const { return x0 + (j + 0.5) * hx; }
    double cy(int i) const { return y0 + (i + 0.5) * hy; }
};

Grid build_grid(const Domain& d, int N) {
    // bounding box from boundary samples
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    const int M = 4096;
    for (int i = 0; i < M; ++i) {
        const Vec2 b = d.boundary_point(2.0 * kPi * i / M);
        xmin = std::min(xmin, b.x);
        xmax = std::max(xmax, b.x);
        ymin = std::min(ymin, b.y);
        ymax = std::max(ymax, b.y);
    }
    // pad by two cells so boundary cells are never clipped
    const double padx = 2.0 * (xmax - xmin) / N, pady = 2.0 * (ymax - ymin) / N;
    Grid g;
    g.N  = N;
    g.x0 = xmin - padx;
    g.y0 = ymin - pady;
    g.hx = (xmax - xmin + 2.0 * padx) / N;
    g.hy = (ymax - ymin + 2.0 * pady) / N;
    g.prefix.assign(static_cast<std::size_t>(N) * (N + 1), 0);

    const Vec2 c = d.center();
    for (int i = 0; i < N; ++i) {
        std::int32_t run = 0;
        std::int32_t* row = &g.prefix[static_cast<std::size_t>(i) * (N + 1)];
        const double y = g.cy(i) - c.y;
        for (int j = 0; j < N; ++j) {
            const double x = g.cx(j) - c.x;
            const double rho = std::hypot(x, y);
            const bool inside = rho <= d.radius(std::atan2(y, x));
            run += inside ? 1 : 0;
            row[j + 1] = run;
        }
        g.count_domain += run;
    }
    return g;
}

// cells of the full lattice inside B(c, r), and cells inside both B and Omega
void ball_counts(const Grid& g, Vec2 c, double r, std::int64_t& in_ball,
                 std::int64_t& in_both) {
    in_ball = 0;
    in_both = 0;
    const double r2 = r * r;
    // lattice rows intersecting the ball (unclamped for in_ball)
    const int ilo = static_cast<int>(std::ceil((c.y - r - g.y0) / g.hy - 0.5));
    const int ihi = static_cast<int>(std::floor((c.y + r - g.y0) / g.hy - 0.5));
    for (int i = ilo; i <= ihi; ++i) {
        const double dy = g.cy(i) - c.y;
        const double w2 = r2 - dy * dy;
        if (w2 < 0.0) continue;
        const double w = std::sqrt(w2);
        const int jlo = static_cast<int>(std::ceil((c.x - w - g.x0) / g.hx - 0.5));
        const int jhi = static_cast<int>(std::floor((c.x + w - g.x0) / g.hx - 0.5));
        if (jhi < jlo) continue;
        in_ball += jhi - jlo + 1;
        if (i < 0 || i >= g.N) continue;
        const int ja = std::max(jlo, 0), jb = std::min(jhi, g.N - 1);
        if (jb < ja) continue;
        const std::int32_t* row = &g.prefix[static_cast<std::size_t>(i) * (g.N + 1)];
        in_both += row[jb + 1] - row[ja];
    }
}

double objective(const Grid& g, Vec2 c, double r) {
    std::int64_t nb = 0, nboth = 0;
    ball_counts(g, c, r, nb, nboth);
    return static_cast<double>(g.count_domain + nb - 2 * nboth) /
           static_cast<double>(g.count_domain);
}

} // namespace

AsymmetryResult fraenkel_asymmetry(const Domain& d, int resolution) {
    if (resolution < 64 || resolution > 16384)
        throw std::invalid_argument("fraenkel_asymmetry: resolution out of range [64, 16384]");

    const double A    = area(d);
    const double rho  = std::sqrt(A / kPi);
    const Grid g      = build_grid(d, resolution);
    const Vec2 seed   = area_centroid(d);

    const Vec2 starts[3] = {
        seed,
        Vec2{seed.x + 0.05 * rho, seed.y + 0.02 * rho},
        Vec2{seed.x - 0.03 * rho, seed.y - 0.04 * rho},
    };

    double best_val = 1e300;
    Vec2 best_c = seed;
    for (const Vec2& s0 : starts) {
        Vec2 c = s0;
        double val = objective(g, c, rho);
        double step = 0.1 * rho;
        int evals = 0;
        while (step > 1e-5 * rho && evals < 4000) {
            bool moved = false;
            evals += 4;
            const Vec2 cand[4] = {Vec2{c.x + step, c.y}, Vec2{c.x - step, c.y},
                                  Vec2{c.x, c.y + step}, Vec2{c.x, c.y - step}};
            for (const Vec2& cc : cand) {
                const double v = objective(g, cc, rho);
                if (v < val) {
                    val = v;
                    c = cc;
                    moved = true;
                }
            }
            if (!moved) step *= 0.5;
        }
        if (val < best_val) {
            best_val = val;
            best_c = c;
        }
    }

    AsymmetryResult res;
    res.value       = std::max(0.0, best_val);
    res.best_center = best_c;
    res.resolution  = resolution;
    const double cell = std::max(g.hx, g.hy);
    res.est_error = (perimeter(d) + 2.0 * kPi * rho) * cell / A;
    return res;
}

} // namespace steklov
