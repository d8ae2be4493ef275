#include "steklov/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace steklov {

namespace {

constexpr double kPi        = 3.14159265358979323846;
constexpr double kWhitenTol = 1e-13;  // stiffness eigenvalue truncation
constexpr double kCondWarn  = 1e12;
constexpr int    kChunk     = 4096;

// Monomial evaluation at a block of points.  Column c of each matrix holds
// the values of all basis functions at point c.  Second-derivative outputs
// are optional.
void eval_basis(const RitzBasis& b, const double* xs, const double* ys, int k,
                Eigen::MatrixXd& P, Eigen::MatrixXd& Px, Eigen::MatrixXd& Py,
                Eigen::MatrixXd* Pxx, Eigen::MatrixXd* Pxy, Eigen::MatrixXd* Pyy) {
    const int d = b.degree, m = b.size();
    P.setZero(m, k);
    Px.setZero(m, k);
    Py.setZero(m, k);
    if (Pxx) {
        Pxx->setZero(m, k);
        Pxy->setZero(m, k);
        Pyy->setZero(m, k);
    }
    const double invh = 1.0 / b.scale;
    std::vector<double> XP(d + 1), YP(d + 1);
    for (int c = 0; c < k; ++c) {
        const double X = (xs[c] - b.center.x) * invh;
        const double Y = (ys[c] - b.center.y) * invh;
        XP[0] = 1.0;
        YP[0] = 1.0;
        for (int i = 1; i <= d; ++i) {
            XP[i] = XP[i - 1] * X;
            YP[i] = YP[i - 1] * Y;
        }
        int idx = 0;
        for (int g = 0; g <= d; ++g)
            for (int i = g; i >= 0; --i, ++idx) {
                const int j = g - i;
                P(idx, c)  = XP[i] * YP[j];
                Px(idx, c) = i > 0 ? i * invh * XP[i - 1] * YP[j] : 0.0;
                Py(idx, c) = j > 0 ? j * invh * XP[i] * YP[j - 1] : 0.0;
                if (Pxx) {
                    (*Pxx)(idx, c) = i > 1 ? i * (i - 1.0) * invh * invh * XP[i - 2] * YP[j] : 0.0;
                    (*Pyy)(idx, c) = j > 1 ? j * (j - 1.0) * invh * invh * XP[i] * YP[j - 2] : 0.0;
                    (*Pxy)(idx, c) =
                        (i > 0 && j > 0) ? i * j * invh * invh * XP[i - 1] * YP[j - 1] : 0.0;
                }
            }
    }
}

// stiffness += chunk contribution, accumulated in the lower triangle
void stiffness_chunk(Eigen::MatrixXd& A, const PlateParams& p, const RitzBasis& basis,
                     const double* xs, const double* ys, const double* ws, int k) {
    Eigen::MatrixXd P, Px, Py, Pxx, Pxy, Pyy;
    eval_basis(basis, xs, ys, k, P, Px, Py, &Pxx, &Pxy, &Pyy);
    Eigen::VectorXd sw(k);
    for (int c = 0; c < k; ++c) sw(c) = std::sqrt(ws[c]);
    Px.array().rowwise() *= sw.transpose().array();
    Py.array().rowwise() *= sw.transpose().array();
    Pxx.array().rowwise() *= sw.transpose().array();
    Pxy.array().rowwise() *= sw.transpose().array();
    Pyy.array().rowwise() *= sw.transpose().array();
    const Eigen::MatrixXd L = Pxx + Pyy;
    auto Alow = A.selfadjointView<Eigen::Lower>();
    Alow.rankUpdate(Pxx, 1.0 - p.sigma);
    Alow.rankUpdate(Pxy, 2.0 * (1.0 - p.sigma));
    Alow.rankUpdate(Pyy, 1.0 - p.sigma);
    Alow.rankUpdate(L, p.sigma);
    Alow.rankUpdate(Px, p.tau);
    Alow.rankUpdate(Py, p.tau);
}

Eigen::MatrixXd weighted_gram(const RitzBasis& basis, const std::vector<double>& xs,
                              const std::vector<double>& ys, const std::vector<double>& w) {
    const int m = basis.size();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd P, Px, Py;
    for (std::size_t start = 0; start < xs.size(); start += kChunk) {
        const int k = static_cast<int>(std::min<std::size_t>(kChunk, xs.size() - start));
        eval_basis(basis, xs.data() + start, ys.data() + start, k, P, Px, Py, nullptr, nullptr,
                   nullptr);
        Eigen::VectorXd sw(k);
        for (int c = 0; c < k; ++c) {
            if (w[start + c] < 0.0)
                throw SolverError("negative quadrature weight in mass assembly");
            sw(c) = std::sqrt(w[start + c]);
        }
        P.array().rowwise() *= sw.transpose().array();
        G.selfadjointView<Eigen::Lower>().rankUpdate(P, 1.0);
    }
    return G.selfadjointView<Eigen::Lower>();
}

struct PencilResult {
    std::vector<double> eigenvalues;  // ascending, with leading 0
    std::vector<double> residuals;    // for the positive eigenvalues
    Eigen::MatrixXd vectors;          // full-basis coefficients per column
    double cond = 0.0;
};

// Deflates the constant (index 0), whitens the reduced stiffness, and
// diagonalizes the reduced mass form.  mass_mat is the boundary or the
// rho_eps-weighted interior Gram; its (0,0) entry is the total mass and
// must be positive.
PencilResult pencil_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& mass_mat,
                          double rank_tol) {
    const int m = static_cast<int>(A.rows());
    if (m < 2) throw SolverError("trial space too small");
    const Eigen::MatrixXd A1 = A.bottomRightCorner(m - 1, m - 1);
    const double b00 = mass_mat(0, 0);
    if (!(b00 > 0.0)) throw SolverError("mass form vanishes on constants");
    const Eigen::VectorXd b0 = mass_mat.col(0).tail(m - 1);
    const Eigen::MatrixXd M1 =
        mass_mat.bottomRightCorner(m - 1, m - 1) - (b0 * b0.transpose()) / b00;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA(A1);
    if (esA.info() != Eigen::Success) throw SolverError("stiffness eigenfactorization failed");
    const Eigen::VectorXd lam = esA.eigenvalues();  // ascending
    const double lmax = lam(m - 2);
    if (!(lmax > 0.0)) throw SolverError("stiffness form vanishes on the quotient");
    if (lam(0) < -1e-10 * lmax)
        throw SolverError(
            "stiffness form indefinite on the constant-complement (smallest eigenvalue " +
            std::to_string(lam(0)) + "); sigma outside the admissible window?");

    double lmin_pos = lmax;
    int first_kept = m - 1;
    for (int i = 0; i < m - 1; ++i)
        if (lam(i) > 0.0) {
            lmin_pos = lam(i);
            break;
        }
    for (int i = 0; i < m - 1; ++i)
        if (lam(i) > kWhitenTol * lmax) {
            first_kept = i;
            break;
        }
    const int kkeep = m - 1 - first_kept;
    if (kkeep < 1) throw SolverError("stiffness rank collapsed after truncation");

    Eigen::MatrixXd S(m - 1, kkeep);
    for (int i = 0; i < kkeep; ++i)
        S.col(i) = esA.eigenvectors().col(first_kept + i) / std::sqrt(lam(first_kept + i));

    Eigen::MatrixXd C = S.transpose() * M1 * S;
    C = 0.5 * (C + C.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esC(C);
    if (esC.info() != Eigen::Success) throw SolverError("pencil eigenfactorization failed");
    const Eigen::VectorXd mu = esC.eigenvalues();  // ascending
    const double mumax = mu(kkeep - 1);
    // M1 is a Schur complement of a Gram matrix, hence PSD up to roundoff
    if (mu(0) < -1e-8 * std::max(std::abs(mumax), 1e-30))
        throw SolverError("mass form indefinite in the energy inner product");

    PencilResult out;
    out.cond = lmax / lmin_pos;
    std::vector<Eigen::VectorXd> full_cols;
    out.eigenvalues.push_back(0.0);
    Eigen::VectorXd const_col = Eigen::VectorXd::Zero(m);
    const_col(0) = 1.0 / std::sqrt(b00);
    full_cols.push_back(const_col);

    if (mumax > 0.0) {
        for (int i = kkeep - 1; i >= 0; --i) {  // descending mu -> ascending lambda
            if (!(mu(i) > rank_tol * mumax)) break;
            const double lambda = 1.0 / mu(i);
            const Eigen::VectorXd u1 = S * esC.eigenvectors().col(i);
            const Eigen::VectorXd r  = M1 * u1 - mu(i) * (A1 * u1);
            const double scale = (M1 * u1).norm() + mu(i) * (A1 * u1).norm();
            out.residuals.push_back(scale > 0.0 ? r.norm() / scale : 0.0);
            Eigen::VectorXd full(m);
            full(0) = -b0.dot(u1) / b00;
            full.tail(m - 1) = u1;
            const double nrm = std::sqrt(full.dot(mass_mat * full));
            if (nrm > 0.0) full /= nrm;
            full_cols.push_back(full);
            out.eigenvalues.push_back(lambda);
        }
    }
    out.vectors.resize(m, static_cast<int>(full_cols.size()));
    for (std::size_t i = 0; i < full_cols.size(); ++i)
        out.vectors.col(static_cast<int>(i)) = full_cols[i];
    return out;
}

void check_planar(const PlateParams& p) {
    if (p.dim != 2)
        throw std::invalid_argument("the Ritz solver is planar: params.dim must be 2");
}

} // namespace

RitzBasis make_basis(const Domain& d, const Quadrature& q, int degree) {
    if (degree < 1) throw std::invalid_argument("basis degree must be >= 1");
    if (degree > 16)
        throw std::invalid_argument("basis degree capped at 16 (conditioning)");
    RitzBasis b;
    b.degree = degree;
    b.center = centroid_shift(d, q);
    b.scale  = d.max_radius();
    return b;
}

DiscreteOperator assemble(const Domain& d, const Quadrature& q, const PlateParams& p,
                          const RitzBasis& basis) {
    if (!(p.tau > 0.0)) throw AdmissibilityError("tension tau must be positive");
    if (!(p.rho > 0.0)) throw AdmissibilityError("density rho must be positive");
    const int m = basis.size();
    DiscreteOperator op;
    op.stiffness = Eigen::MatrixXd::Zero(m, m);

    const std::size_t n = q.interior.x.size();
    for (std::size_t start = 0; start < n; start += kChunk) {
        const int k = static_cast<int>(std::min<std::size_t>(kChunk, n - start));
        stiffness_chunk(op.stiffness, p, basis, q.interior.x.data() + start,
                        q.interior.y.data() + start, q.interior.w.data() + start, k);
    }
    op.stiffness = op.stiffness.selfadjointView<Eigen::Lower>();

    std::vector<double> bw(q.boundary.w);
    for (double& v : bw) v *= p.rho;
    op.boundary_mass = weighted_gram(basis, q.boundary.x, q.boundary.y, bw);
    return op;
}

double stiffness_condition(const DiscreteOperator& op) {
    const int m = static_cast<int>(op.stiffness.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        op.stiffness.bottomRightCorner(m - 1, m - 1), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lam = es.eigenvalues();
    const double lmax = lam(m - 2);
    for (int i = 0; i < m - 1; ++i)
        if (lam(i) > 0.0) return lmax / lam(i);
    return std::numeric_limits<double>::infinity();
}

RitzSpectrum solve_steklov(const Domain& d, PlateParams p, double rho, int degree,
                           const SolveOptions& opt) {
    check_planar(p);
    if (degree < 2) throw std::invalid_argument("solve_steklov: degree must be >= 2");
    if (!(rho > 0.0)) throw AdmissibilityError("boundary density rho must be positive");
    p.rho = rho;
    require_admissible(p);

    const Quadrature q = make_quadrature(d, opt.n_radial, opt.n_angular, opt.n_boundary);
    const RitzBasis basis = make_basis(d, q, degree);
    const DiscreteOperator op = assemble(d, q, p, basis);
    PencilResult pr = pencil_solve(op.stiffness, op.boundary_mass, opt.rank_tol);

    RitzSpectrum out;
    out.spectrum.eigenvalues = std::move(pr.eigenvalues);
    out.spectrum.clusters    = find_clusters(out.spectrum.eigenvalues, opt.cluster_tol);
    out.basis      = basis;
    out.degree     = degree;
    out.n_radial   = opt.n_radial;
    out.n_angular  = opt.n_angular;
    out.n_boundary = opt.n_boundary;
    out.stiffness_cond = pr.cond;
    out.conditioning_warning = pr.cond > kCondWarn;
    out.residuals  = std::move(pr.residuals);
    out.vectors    = std::move(pr.vectors);
    return out;
}

RitzSpectrum solve_neumann_eps(const Domain& d, PlateParams p, double mass, double eps,
                               int degree, const SolveOptions& opt) {
    check_planar(p);
    if (degree < 2) throw std::invalid_argument("solve_neumann_eps: degree must be >= 2");
    p.rho = 1.0;
    require_admissible(p);
    const double eps0 = max_shell_width(d);
    if (!(eps > 0.0 && eps < eps0))
        throw std::invalid_argument("shell width eps must lie in (0, " + std::to_string(eps0) +
                                    ") for this domain");

    const double A_om  = area(d);
    const double P_om  = perimeter(d);
    // inner-parallel-curve areas (exact for smooth boundaries with eps below
    // the focal distance)
    const double A_in  = A_om - eps * P_om + kPi * eps * eps;
    const double A_sh  = A_om - A_in;
    if (!(A_sh > 0.0)) throw std::invalid_argument("empty boundary shell");
    if (!(mass > eps * A_in))
        throw std::invalid_argument("total mass too small for a positive shell density");
    const double rho_shell = (mass - eps * A_in) / A_sh;

    // doubled radial/angular resolution, radial rule split at the inner
    // parallel curve so the density jump never crosses a quadrature panel
    const int n_rad   = 2 * opt.n_radial;
    const int n_ang   = 2 * opt.n_angular;
    const int n_shell = std::max(n_rad / 4, 8);
    const int n_inner = n_rad - n_shell;

    // dense boundary sample table for fast distance queries
    const int nb = 2048;
    std::vector<double> bx(nb), by(nb);
    for (int i = 0; i < nb; ++i) {
        const Vec2 b = d.boundary_point(2.0 * kPi * i / nb);
        bx[i] = b.x;
        by[i] = b.y;
    }
    auto dist = [&](double x, double y) {
        double best = 1e300;
        int ib = 0;
        for (int i = 0; i < nb; ++i) {
            const double dx = x - bx[i], dy = y - by[i];
            const double dd = dx * dx + dy * dy;
            if (dd < best) {
                best = dd;
                ib = i;
            }
        }
        // Newton refine on the foot-point condition
        double t = 2.0 * kPi * ib / nb;
        for (int it = 0; it < 12; ++it) {
            const Vec2 b  = d.boundary_point(t);
            const Vec2 bp = d.boundary_tangent(t);
            const double ex = x - b.x, ey = y - b.y;
            const double r = d.radius(t), rp = d.radius_d1(t), rpp = d.radius_d2(t);
            const double c = std::cos(t), s = std::sin(t);
            const double bppx = (rpp - r) * c - 2.0 * rp * s;
            const double bppy = (rpp - r) * s + 2.0 * rp * c;
            const double F  = ex * bp.x + ey * bp.y;
            const double Fp = -(bp.x * bp.x + bp.y * bp.y) + ex * bppx + ey * bppy;
            if (Fp == 0.0) break;
            const double step = F / Fp;
            t -= step;
            if (std::abs(step) < 1e-14) break;
        }
        const Vec2 b = d.boundary_point(t);
        return std::min(std::sqrt(best), std::hypot(x - b.x, y - b.y));
    };

    std::vector<double> gn_i, gw_i, gn_s, gw_s;
    gauss_legendre(n_inner, gn_i, gw_i);
    gauss_legendre(n_shell, gn_s, gw_s);

    std::vector<double> xs, ys, ws, dens;
    xs.reserve(static_cast<std::size_t>(n_rad) * n_ang);
    ys.reserve(xs.capacity());
    ws.reserve(xs.capacity());
    dens.reserve(xs.capacity());
    const Vec2 ctr = d.center();
    const double dta = 2.0 * kPi / n_ang;
    for (int j = 0; j < n_ang; ++j) {
        const double t = j * dta;
        const double R = d.radius(t);
        const double c = std::cos(t), s = std::sin(t);
        // radial coordinate of the inner parallel curve along this ray
        double lo = 0.0, hi = R;
        for (int it = 0; it < 80 && (hi - lo) > 1e-14 * R; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (dist(ctr.x + mid * c, ctr.y + mid * s) > eps)
                lo = mid;
            else
                hi = mid;
        }
        const double sc = 0.5 * (lo + hi);
        for (int i = 0; i < n_inner; ++i) {
            const double rr = 0.5 * sc * (gn_i[i] + 1.0);
            xs.push_back(ctr.x + rr * c);
            ys.push_back(ctr.y + rr * s);
            ws.push_back(0.5 * sc * gw_i[i] * rr * dta);
            dens.push_back(eps);
        }
        for (int i = 0; i < n_shell; ++i) {
            const double rr = sc + 0.5 * (R - sc) * (gn_s[i] + 1.0);
            xs.push_back(ctr.x + rr * c);
            ys.push_back(ctr.y + rr * s);
            ws.push_back(0.5 * (R - sc) * gw_s[i] * rr * dta);
            dens.push_back(rho_shell);
        }
    }

    double mass_quad = 0.0;
    for (std::size_t i = 0; i < ws.size(); ++i) mass_quad += ws[i] * dens[i];
    const double defect = std::abs(mass_quad - mass) / mass;
    if (defect > 1e-6)
        throw SolverError("concentrated density integrates to " + std::to_string(mass_quad) +
                          " instead of " + std::to_string(mass) +
                          " (shell geometry inconsistent)");

    // basis centered at the boundary centroid, as in the Steklov path
    const Quadrature qb = make_quadrature(d, 8, 16, opt.n_boundary);
    const RitzBasis basis = make_basis(d, qb, degree);

    const int mdim = basis.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(mdim, mdim);
    for (std::size_t start = 0; start < xs.size(); start += kChunk) {
        const int k = static_cast<int>(std::min<std::size_t>(kChunk, xs.size() - start));
        stiffness_chunk(A, p, basis, xs.data() + start, ys.data() + start, ws.data() + start,
                        k);
    }
    A = A.selfadjointView<Eigen::Lower>();

    std::vector<double> wdens(ws);
    for (std::size_t i = 0; i < wdens.size(); ++i) wdens[i] *= dens[i];
    const Eigen::MatrixXd Mint = weighted_gram(basis, xs, ys, wdens);

    PencilResult pr = pencil_solve(A, Mint, opt.rank_tol);

    RitzSpectrum out;
    out.spectrum.eigenvalues = std::move(pr.eigenvalues);
    out.spectrum.clusters    = find_clusters(out.spectrum.eigenvalues, opt.cluster_tol);
    out.basis      = basis;
    out.degree     = degree;
    out.n_radial   = n_rad;
    out.n_angular  = n_ang;
    out.n_boundary = opt.n_boundary;
    out.stiffness_cond = pr.cond;
    out.conditioning_warning = pr.cond > kCondWarn;
    out.residuals  = std::move(pr.residuals);
    out.vectors    = std::move(pr.vectors);
    out.mass_defect = defect;
    out.shell_warning = n_shell < 8;
    out.eps = eps;
    return out;
}

double rayleigh_quotient(const Domain& d, const Quadrature& q, const PlateParams& p,
                         const std::vector<double>& coeffs, double rho) {
    int degree = -1;
    for (int g = 1; g <= 16; ++g)
        if (static_cast<std::size_t>((g + 1) * (g + 2) / 2) == coeffs.size()) degree = g;
    if (degree < 0)
        throw std::invalid_argument("coefficient count is not a triangular number <= 153");
    if (!(rho > 0.0)) throw AdmissibilityError("boundary density rho must be positive");
    PlateParams pp = p;
    pp.rho = rho;
    const RitzBasis basis = make_basis(d, q, degree);
    const DiscreteOperator op = assemble(d, q, pp, basis);
    Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), coeffs.size());
    const double num = c.dot(op.stiffness * c);
    const double den = c.dot(op.boundary_mass * c);
    const double bscale = op.boundary_mass.diagonal().maxCoeff() * c.squaredNorm();
    if (!(den > 1e-14 * bscale))
        throw SolverError("trial function has numerically zero boundary trace");
    return num / den;
}

} // namespace steklov
