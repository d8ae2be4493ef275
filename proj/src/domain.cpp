#include "steklov/domain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace steklov {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DomainSpec DomainSpec::disk(double R, Vec2 c) {
    DomainSpec s;
    s.kind = "disk";
    s.R = R;
    s.center = c;
    return s;
}

DomainSpec DomainSpec::ellipse(double a, double b, Vec2 c) {
    DomainSpec s;
    s.kind = "ellipse";
    s.a = a;
    s.b = b;
    s.center = c;
    return s;
}

DomainSpec DomainSpec::star(double base, std::vector<double> cos_k, std::vector<double> sin_k,
                            Vec2 c) {
    DomainSpec s;
    s.kind = "star";
    s.base = base;
    s.fourier_cos = std::move(cos_k);
    s.fourier_sin = std::move(sin_k);
    s.center = c;
    return s;
}

DomainSpec DomainSpec::scaled(DomainSpec inner, double s) {
    DomainSpec out;
    out.kind = "scaled";
    out.s = s;
    out.inner = std::make_shared<DomainSpec>(std::move(inner));
    return out;
}

namespace {

// Flattens nested scalings: s * (r(theta) about c) = s*r(theta) about s*c.
DomainSpec flatten(const DomainSpec& in) {
    if (in.kind != "scaled") return in;
    if (!in.inner) throw std::invalid_argument("scaled domain lacks an inner description");
    if (!(in.s > 0.0) || !std::isfinite(in.s))
        throw std::invalid_argument("scale factor must be positive and finite");
    DomainSpec base = flatten(*in.inner);
    const double s = in.s;
    base.center = Vec2{s * base.center.x, s * base.center.y};
    if (base.kind == "disk") {
        base.R *= s;
    } else if (base.kind == "ellipse") {
        base.a *= s;
        base.b *= s;
    } else if (base.kind == "star") {
        base.base *= s;
        for (double& c : base.fourier_cos) c *= s;
        for (double& c : base.fourier_sin) c *= s;
    }
    return base;
}

} // namespace

Domain::Domain(DomainSpec spec) : spec_(spec) {
    DomainSpec flat = flatten(spec);
    center_ = flat.center;
    if (flat.kind == "disk") {
        kind_ = Kind::Disk;
        R_ = flat.R;
        if (!(R_ > 0.0)) throw std::invalid_argument("disk radius must be positive");
    } else if (flat.kind == "ellipse") {
        kind_ = Kind::Ellipse;
        a_ = flat.a;
        b_ = flat.b;
        if (!(a_ > 0.0 && b_ > 0.0))
            throw std::invalid_argument("ellipse semi-axes must be positive");
    } else if (flat.kind == "star") {
        kind_ = Kind::Star;
        base_ = flat.base;
        ck_ = flat.fourier_cos;
        sk_ = flat.fourier_sin;
    } else {
        throw std::invalid_argument("unknown domain kind: " + flat.kind);
    }

    min_radius_ = std::numeric_limits<double>::infinity();
    max_radius_ = 0.0;
    const int N = 8192;
    for (int i = 0; i < N; ++i) {
        const double r = radius(2.0 * kPi * i / N);
        min_radius_ = std::min(min_radius_, r);
        max_radius_ = std::max(max_radius_, r);
    }
    if (!(min_radius_ > 0.0))
        throw std::invalid_argument(
            "radius function must stay positive (domain star-shaped about its center)");
}

double Domain::radius(double t) const {
    switch (kind_) {
    case Kind::Disk:
        return R_;
    case Kind::Ellipse: {
        const double c = std::cos(t), s = std::sin(t);
        return a_ * b_ / std::sqrt(b_ * b_ * c * c + a_ * a_ * s * s);
    }
    case Kind::Star: {
        double r = base_;
        for (std::size_t k = 0; k < ck_.size(); ++k) r += ck_[k] * std::cos((k + 1.0) * t);
        for (std::size_t k = 0; k < sk_.size(); ++k) r += sk_[k] * std::sin((k + 1.0) * t);
        return r;
    }
    }
    return 0.0;
}

double Domain::radius_d1(double t) const {
    switch (kind_) {
    case Kind::Disk:
        return 0.0;
    case Kind::Ellipse: {
        const double c = std::cos(t), s = std::sin(t);
        const double g  = b_ * b_ * c * c + a_ * a_ * s * s;
        const double gp = (a_ * a_ - b_ * b_) * 2.0 * s * c;
        return -0.5 * a_ * b_ * gp / (g * std::sqrt(g));
    }
    case Kind::Star: {
        double r = 0.0;
        for (std::size_t k = 0; k < ck_.size(); ++k)
            r -= (k + 1.0) * ck_[k] * std::sin((k + 1.0) * t);
        for (std::size_t k = 0; k < sk_.size(); ++k)
            r += (k + 1.0) * sk_[k] * std::cos((k + 1.0) * t);
        return r;
    }
    }
    return 0.0;
}

double Domain::radius_d2(double t) const {
    switch (kind_) {
    case Kind::Disk:
        return 0.0;
    case Kind::Ellipse: {
        const double c = std::cos(t), s = std::sin(t);
        const double g   = b_ * b_ * c * c + a_ * a_ * s * s;
        const double gp  = (a_ * a_ - b_ * b_) * 2.0 * s * c;
        const double gpp = (a_ * a_ - b_ * b_) * 2.0 * (c * c - s * s);
        return a_ * b_ * (0.75 * gp * gp / (g * g * std::sqrt(g)) - 0.5 * gpp / (g * std::sqrt(g)));
    }
    case Kind::Star: {
        double r = 0.0;
        for (std::size_t k = 0; k < ck_.size(); ++k)
            r -= (k + 1.0) * (k + 1.0) * ck_[k] * std::cos((k + 1.0) * t);
        for (std::size_t k = 0; k < sk_.size(); ++k)
            r -= (k + 1.0) * (k + 1.0) * sk_[k] * std::sin((k + 1.0) * t);
        return r;
    }
    }
    return 0.0;
}

Vec2 Domain::boundary_point(double t) const {
    const double r = radius(t);
    return Vec2{center_.x + r * std::cos(t), center_.y + r * std::sin(t)};
}

Vec2 Domain::boundary_tangent(double t) const {
    const double r = radius(t), rp = radius_d1(t);
    const double c = std::cos(t), s = std::sin(t);
    return Vec2{rp * c - r * s, rp * s + r * c};
}

// -------- quadrature --------

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_n(x) and derivative by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i]           = -x;
        nodes[n - 1 - i]   = x;
        const double w     = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i]         = w;
        weights[n - 1 - i] = w;
    }
    if (n == 1) {
        nodes[0] = 0.0;
        weights[0] = 2.0;
    }
}

Quadrature make_quadrature(const Domain& d, int n_radial, int n_angular, int n_boundary) {
    if (n_radial < 1 || n_angular < 4 || n_boundary < 4)
        throw std::invalid_argument("make_quadrature: node counts too small");
    Quadrature q;
    q.n_boundary = n_boundary;

    q.boundary.theta.resize(n_boundary);
    q.boundary.x.resize(n_boundary);
    q.boundary.y.resize(n_boundary);
    q.boundary.w.resize(n_boundary);
    const double dtb = 2.0 * kPi / n_boundary;
    for (int i = 0; i < n_boundary; ++i) {
        const double t = i * dtb;
        const double r = d.radius(t), rp = d.radius_d1(t);
        q.boundary.theta[i] = t;
        q.boundary.x[i] = d.center().x + r * std::cos(t);
        q.boundary.y[i] = d.center().y + r * std::sin(t);
        q.boundary.w[i] = std::sqrt(r * r + rp * rp) * dtb;
    }

    std::vector<double> gn, gw;
    gauss_legendre(n_radial, gn, gw);
    q.interior.n_radial  = n_radial;
    q.interior.n_angular = n_angular;
    q.interior.x.reserve(static_cast<std::size_t>(n_radial) * n_angular);
    q.interior.y.reserve(static_cast<std::size_t>(n_radial) * n_angular);
    q.interior.w.reserve(static_cast<std::size_t>(n_radial) * n_angular);
    const double dta = 2.0 * kPi / n_angular;
    for (int j = 0; j < n_angular; ++j) {
        const double t = j * dta;
        const double R = d.radius(t);
        const double c = std::cos(t), s = std::sin(t);
        for (int i = 0; i < n_radial; ++i) {
            const double rr = 0.5 * R * (gn[i] + 1.0);       // map [-1,1] -> [0,R]
            const double ww = 0.5 * R * gw[i] * rr * dta;    // polar Jacobian r dr dtheta
            q.interior.x.push_back(d.center().x + rr * c);
            q.interior.y.push_back(d.center().y + rr * s);
            q.interior.w.push_back(ww);
        }
    }
    return q;
}

// -------- measures --------

double area(const Domain& d, int n_theta) {
    double acc = 0.0;
    const double dt = 2.0 * kPi / n_theta;
    for (int i = 0; i < n_theta; ++i) {
        const double r = d.radius(i * dt);
        acc += 0.5 * r * r;
    }
    return acc * dt;
}

double perimeter(const Domain& d, int n_theta) {
    double acc = 0.0;
    const double dt = 2.0 * kPi / n_theta;
    for (int i = 0; i < n_theta; ++i) {
        const double t = i * dt;
        const double r = d.radius(t), rp = d.radius_d1(t);
        acc += std::sqrt(r * r + rp * rp);
    }
    return acc * dt;
}

Vec2 area_centroid(const Domain& d, int n_theta) {
    double ax = 0.0, ay = 0.0, a = 0.0;
    const double dt = 2.0 * kPi / n_theta;
    for (int i = 0; i < n_theta; ++i) {
        const double t = i * dt;
        const double r = d.radius(t);
        a += 0.5 * r * r;
        ax += r * r * r / 3.0 * std::cos(t);
        ay += r * r * r / 3.0 * std::sin(t);
    }
    return Vec2{d.center().x + ax / a, d.center().y + ay / a};
}

Vec2 centroid_shift(const Domain& d, const Quadrature& q) {
    double sx = 0.0, sy = 0.0, sw = 0.0;
    for (std::size_t i = 0; i < q.boundary.w.size(); ++i) {
        sx += q.boundary.w[i] * q.boundary.x[i];
        sy += q.boundary.w[i] * q.boundary.y[i];
        sw += q.boundary.w[i];
    }
    return Vec2{sx / sw, sy / sw};
}

namespace {

double moment_at(const Domain& d, int n_nodes, double p, Vec2 about) {
    double acc = 0.0;
    const double dt = 2.0 * kPi / n_nodes;
    for (int i = 0; i < n_nodes; ++i) {
        const double t = i * dt;
        const double r = d.radius(t), rp = d.radius_d1(t);
        const double x = d.center().x + r * std::cos(t) - about.x;
        const double y = d.center().y + r * std::sin(t) - about.y;
        acc += std::pow(x * x + y * y, 0.5 * p) * std::sqrt(r * r + rp * rp);
    }
    return acc * dt;
}

} // namespace

MomentResult boundary_moment(const Domain& d, const Quadrature& q, double p, Vec2 about) {
    if (!(p > 1.0)) throw std::invalid_argument("boundary_moment: p must exceed 1");
    MomentResult mr;
    mr.value = moment_at(d, q.n_boundary, p, about);
    const double refined = moment_at(d, 2 * q.n_boundary, p, about);
    mr.resolution_warning =
        std::abs(refined - mr.value) > 1e-8 * std::max(std::abs(refined), 1e-300);
    return mr;
}

// -------- stability constants --------

StabilityConstants stability_constants(int n, double p) {
    if (n < 2) throw std::invalid_argument("stability_constants: n must be >= 2");
    if (!(p > 1.0)) throw std::invalid_argument("stability_constants: p must exceed 1");
    const double root = std::pow(2.0, 1.0 / n);
    // t^(p-1) is increasing on [1, 2^(1/n)] for p > 1, so the min sits at t = 1
    const double tmin = std::min(1.0, std::pow(root, p - 1.0));
    StabilityConstants sc;
    sc.c_np    = (n + p - 1.0) * (p - 1.0) / 4.0 * (root - 1.0) / n * tmin;
    sc.delta_n = (n + 1.0) / (8.0 * n) * (root - 1.0);
    return sc;
}

// -------- boundary proximity --------

double boundary_distance(const Domain& d, Vec2 q, int scan) {
    // coarse scan for the nearest boundary sample
    double best = std::numeric_limits<double>::infinity();
    double tb = 0.0;
    for (int i = 0; i < scan; ++i) {
        const double t = 2.0 * kPi * i / scan;
        const Vec2 b = d.boundary_point(t);
        const double dx = q.x - b.x, dy = q.y - b.y;
        const double dd = dx * dx + dy * dy;
        if (dd < best) {
            best = dd;
            tb = t;
        }
    }
    // Newton refinement on F(t) = (q - b(t)) . b'(t) = 0
    double t = tb;
    for (int it = 0; it < 30; ++it) {
        const Vec2 b  = d.boundary_point(t);
        const Vec2 bp = d.boundary_tangent(t);
        const double ex = q.x - b.x, ey = q.y - b.y;
        const double F = ex * bp.x + ey * bp.y;
        // b'' components
        const double r = d.radius(t), rp = d.radius_d1(t), rpp = d.radius_d2(t);
        const double c = std::cos(t), s = std::sin(t);
        const double bppx = (rpp - r) * c - 2.0 * rp * s;
        const double bppy = (rpp - r) * s + 2.0 * rp * c;
        const double Fp = -(bp.x * bp.x + bp.y * bp.y) + ex * bppx + ey * bppy;
        if (Fp == 0.0) break;
        const double step = F / Fp;
        t -= step;
        if (std::abs(step) < 1e-14) break;
    }
    const Vec2 b = d.boundary_point(t);
    const double refined = std::hypot(q.x - b.x, q.y - b.y);
    return std::min(refined, std::sqrt(best));
}

double min_curvature_radius(const Domain& d, int scan) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan; ++i) {
        const double t = 2.0 * kPi * i / scan;
        const double r = d.radius(t), rp = d.radius_d1(t), rpp = d.radius_d2(t);
        const double num = std::pow(r * r + rp * rp, 1.5);
        const double den = std::abs(r * r + 2.0 * rp * rp - r * rpp);
        if (den > 0.0) best = std::min(best, num / den);
    }
    return best;
}

double max_shell_width(const Domain& d) {
    return 0.5 * std::min(min_curvature_radius(d), d.min_radius());
}

} // namespace steklov
