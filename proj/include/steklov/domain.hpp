#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace steklov {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Declarative description of a planar star-shaped domain.  This is the
// serialized form; `scaled` nests another description and is flattened
// when the runtime Domain is built.
struct DomainSpec {
    std::string kind;  // "disk" | "ellipse" | "star" | "scaled"
    double R = 1.0;                                  // disk radius
    double a = 1.0, b = 1.0;                         // ellipse semi-axes
    double base = 1.0;                               // star constant term
    std::vector<double> fourier_cos, fourier_sin;    // star coefficients, k = 1,2,...
    double s = 1.0;                                  // scale factor
    std::shared_ptr<DomainSpec> inner;               // scaled target
    Vec2 center;

    static DomainSpec disk(double R, Vec2 c = {});
    static DomainSpec ellipse(double a, double b, Vec2 c = {});
    static DomainSpec star(double base, std::vector<double> cos_k,
                           std::vector<double> sin_k, Vec2 c = {});
    static DomainSpec scaled(DomainSpec inner, double s);
};

// Runtime domain: polar radius function r(theta) about a fixed center,
// with analytic first and second derivatives.  Positivity of r is checked
// at construction; the boundary is C-infinity by construction.
class Domain {
public:
    explicit Domain(DomainSpec spec);

    double radius(double theta) const;
    double radius_d1(double theta) const;
    double radius_d2(double theta) const;
    Vec2 center() const { return center_; }
    const DomainSpec& spec() const { return spec_; }

    // boundary point and its theta-derivative
    Vec2 boundary_point(double theta) const;
    Vec2 boundary_tangent(double theta) const;

    double min_radius() const { return min_radius_; }
    double max_radius() const { return max_radius_; }

private:
    enum class Kind { Disk, Ellipse, Star } kind_;
    DomainSpec spec_;      // original description, kept for serialization
    Vec2 center_;
    double R_ = 1.0;       // disk
    double a_ = 1.0, b_ = 1.0;  // ellipse
    double base_ = 1.0;    // star
    std::vector<double> ck_, sk_;
    double min_radius_ = 0.0, max_radius_ = 0.0;
};

// -------- quadrature --------

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct BoundaryRule {
    std::vector<double> theta;
    std::vector<double> x, y;    // absolute coordinates
    std::vector<double> w;       // arc-length weights, sum = |dOmega|
};

struct InteriorRule {
    std::vector<double> x, y;    // absolute coordinates
    std::vector<double> w;       // area weights, sum = |Omega|
    int n_radial = 0, n_angular = 0;
};

struct Quadrature {
    BoundaryRule boundary;
    InteriorRule interior;
    int n_boundary = 0;
};

// Interior rule: per angular node, Gauss-Legendre on [0, r(theta)] with the
// polar Jacobian; uniform (trapezoid) in theta, spectrally accurate for the
// smooth periodic integrands here.  Boundary rule: uniform in theta with
// Jacobian sqrt(r^2 + r'^2).
Quadrature make_quadrature(const Domain& d, int n_radial = 64, int n_angular = 256,
                           int n_boundary = 1024);

// -------- measures and moments --------

double area(const Domain& d, int n_theta = 4096);
double perimeter(const Domain& d, int n_theta = 4096);
Vec2 area_centroid(const Domain& d, int n_theta = 4096);

// Boundary centroid (1/|dOmega|) * integral of x over dOmega; trial
// functions downstream are centered here so their boundary mean vanishes.
Vec2 centroid_shift(const Domain& d, const Quadrature& q);

// Integral of |x - about|^p over the boundary.  `resolution_warning` is set
// when doubling the node count moves the value by more than 1e-8 relative.
struct MomentResult {
    double value = 0.0;
    bool resolution_warning = false;
};
MomentResult boundary_moment(const Domain& d, const Quadrature& q, double p,
                             Vec2 about = {});

// -------- stability constants --------

// c_{n,p} = ((n+p-1)(p-1)/4) * ((2^{1/n}-1)/n) * min_{t in [1, 2^{1/n}]} t^{p-1}
// delta_n = ((n+1)/(8n)) * (2^{1/n}-1)
struct StabilityConstants {
    double c_np = 0.0;
    double delta_n = 0.0;
};
StabilityConstants stability_constants(int n, double p);

// -------- boundary proximity (used by the concentrating-density solver) --------

// Distance from an interior point to the boundary curve.
double boundary_distance(const Domain& d, Vec2 q, int scan = 512);

// Minimum over theta of the radius of curvature (r^2+r'^2)^{3/2} / |r^2+2r'^2-rr''|.
double min_curvature_radius(const Domain& d, int scan = 4096);

// Largest shell thickness for which the inner parallel curve stays smooth
// and star-shaped: half of min(curvature radius, minimal polar radius).
double max_shell_width(const Domain& d);

} // namespace steklov
