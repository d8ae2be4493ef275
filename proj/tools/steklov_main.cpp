// Command-line front end: every computation in the library as a subcommand,
// with JSON output for single runs and CSV for sweeps.  Exit codes:
//   0 success (all assertions held)
//   1 file I/O failure
//   2 validation error (flags, JSON schema, inadmissible parameters)
//   3 solver failure
//   4 a verified inequality failed its assertion
#include "CLI11.hpp"

#include "steklov/asymmetry.hpp"
#include "steklov/ball.hpp"
#include "steklov/jsonio.hpp"
#include "steklov/solver.hpp"
#include "steklov/verify.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace steklov;
using nlohmann::json;

namespace {

int g_exit = 0;

std::string join_doubles(const std::vector<double>& v, std::size_t limit = 0) {
    std::string out;
    const std::size_t n = limit ? std::min(limit, v.size()) : v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    if (n < v.size()) out += ", ...";
    return out;
}

std::string cluster_summary(const Spectrum& sp) {
    std::string out;
    for (const auto& c : sp.clusters) {
        if (!out.empty()) out += " ";
        out += format_double(sp.eigenvalues[static_cast<std::size_t>(c.first)]) + " x" +
               std::to_string(c.count);
    }
    return out;
}

void write_json_report(const std::string& path, const RunConfig& cfg, const json& result) {
    json doc;
    doc["config"] = config_to_json(cfg);
    doc["result"] = result;
    write_text_file(path, doc.dump(2) + "\n");
}

struct CommonFlags {
    double tau = 1.0;
    double sigma = 0.3;
    int n_radial = 64, n_angular = 256, n_boundary = 1024;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tau", tau, "lateral tension tau > 0")->capture_default_str();
        cmd->add_option("--sigma", sigma, "Poisson ratio, in (-1/(n-1), 1)")
            ->capture_default_str();
        cmd->add_option("--n-radial", n_radial, "radial quadrature nodes per angle")
            ->capture_default_str();
        cmd->add_option("--n-angular", n_angular, "angular quadrature nodes")
            ->capture_default_str();
        cmd->add_option("--n-boundary", n_boundary, "boundary quadrature nodes")
            ->capture_default_str();
    }

    SolveOptions solve_options() const {
        SolveOptions opt;
        opt.n_radial = n_radial;
        opt.n_angular = n_angular;
        opt.n_boundary = n_boundary;
        return opt;
    }

    void fill(RunConfig& cfg) const {
        cfg.tau = tau;
        cfg.sigma = sigma;
        cfg.n_radial = n_radial;
        cfg.n_angular = n_angular;
        cfg.n_boundary = n_boundary;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Spectra of a tension-loaded thin plate whose boundary carries the mass:\n"
        "closed-form spectra on balls, a polynomial Ritz solver on star-shaped\n"
        "planar domains, and verification sweeps for the supporting inequalities."};
    app.require_subcommand(1);

    // ---- ball-spectrum ----
    auto* ball = app.add_subcommand(
        "ball-spectrum", "Closed-form spectrum of the unit ball in dimension n");
    struct {
        int n = 2;
        double tau = 1.0, sigma = 0.3, rho = 1.0;
        int count = 8;
        std::string out;
    } bs;
    ball->add_option("--n", bs.n, "space dimension n >= 2")->capture_default_str();
    ball->add_option("--tau", bs.tau, "lateral tension tau > 0")->capture_default_str();
    ball->add_option("--sigma", bs.sigma, "Poisson ratio, in (-1/(n-1), 1)")
        ->capture_default_str();
    ball->add_option("--rho", bs.rho, "constant boundary density rho > 0")
        ->capture_default_str();
    ball->add_option("--count", bs.count, "number of eigenvalues")->capture_default_str();
    ball->add_option("--out", bs.out, "write the spectrum as JSON to this path");
    ball->callback([&] {
        PlateParams p;
        p.dim = bs.n;
        p.tau = bs.tau;
        p.sigma = bs.sigma;
        p.rho = bs.rho;
        BallSpectrum spec = ball_spectrum(p, bs.count);
        std::printf("%s\n", join_doubles(spec.spectrum.eigenvalues).c_str());
        std::printf("clusters: %s\n", cluster_summary(spec.spectrum).c_str());
        for (const auto& m : spec.modes)
            std::printf("mode l=%d multiplicity=%lld lambda=%s\n", m.l,
                        static_cast<long long>(m.multiplicity),
                        format_double(m.lambda).c_str());
        if (!bs.out.empty()) {
            RunConfig cfg;
            cfg.subcommand = "ball-spectrum";
            cfg.dim = bs.n;
            cfg.tau = bs.tau;
            cfg.sigma = bs.sigma;
            cfg.rho = bs.rho;
            cfg.count = bs.count;
            write_json_report(bs.out, cfg, ball_to_json(spec));
        }
    });

    // ---- solve ----
    auto* solve = app.add_subcommand(
        "solve", "Ritz spectrum of a planar domain given as a JSON DomainSpec");
    struct {
        std::string domain;
        double rho = 1.0;
        int degree = 12;
        double neumann_eps = 0.0;
        double mass = 0.0;
        std::string out;
    } so;
    CommonFlags so_common;
    solve->add_option("--domain", so.domain, "path to the domain JSON file")->required();
    so_common.attach(solve);
    solve->add_option("--degree", so.degree, "polynomial degree of the trial space")
        ->capture_default_str();
    auto* rho_opt =
        solve->add_option("--rho", so.rho, "constant boundary density rho > 0")
            ->capture_default_str();
    auto* eps_opt = solve->add_option(
        "--neumann-eps", so.neumann_eps,
        "solve with the eps-concentrated interior density instead of boundary mass");
    auto* mass_opt =
        solve->add_option("--mass", so.mass, "total mass M of the concentrated density");
    eps_opt->excludes(rho_opt);
    eps_opt->needs(mass_opt);
    mass_opt->needs(eps_opt);
    solve->add_option("--out", so.out, "write the spectrum as JSON to this path");
    solve->callback([&] {
        Domain dom{load_domain_file(so.domain)};
        PlateParams p;
        p.dim = 2;
        p.tau = so_common.tau;
        p.sigma = so_common.sigma;
        RitzSpectrum rs;
        RunConfig cfg;
        so_common.fill(cfg);
        cfg.subcommand = "solve";
        cfg.has_domain = true;
        cfg.domain = dom.spec();
        cfg.degree = so.degree;
        if (*eps_opt) {
            rs = solve_neumann_eps(dom, p, so.mass, so.neumann_eps, so.degree,
                                   so_common.solve_options());
            cfg.neumann = true;
            cfg.mass = so.mass;
            cfg.eps = so.neumann_eps;
            cfg.rho = 0.0;
        } else {
            rs = solve_steklov(dom, p, so.rho, so.degree, so_common.solve_options());
            cfg.rho = so.rho;
        }
        const auto& ev = rs.spectrum.eigenvalues;
        std::printf("lambda_2 = %s\n",
                    ev.size() > 1 ? format_double(ev[1]).c_str() : "unavailable");
        std::printf("eigenvalues: %s\n", join_doubles(ev, 12).c_str());
        std::printf("clusters: %s\n", cluster_summary(rs.spectrum).c_str());
        if (rs.conditioning_warning)
            std::printf("warning: stiffness condition %.3e; consider a lower degree\n",
                        rs.stiffness_cond);
        if (rs.eps > 0.0)
            std::printf("mass defect: %s\n", format_double(rs.mass_defect).c_str());
        if (!so.out.empty()) write_json_report(so.out, cfg, ritz_to_json(rs));
    });

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Verification sweeps and bound checks");
    verify->require_subcommand(1);

    // verify isoperimetric
    auto* iso = verify->add_subcommand(
        "isoperimetric",
        "Check lambda_2(Omega) <= lambda_2(ball)*(1 - delta*A(Omega)^2) over a shape\n"
        "family (A = Fraenkel asymmetry; shapes normalized to the unit-disk area;\n"
        "the comparison ball is the equal-area disk)");
    struct {
        std::string family;
        int degree = 12;
        int resolution = 2048;
        int threads = 1;
        std::string out, json_out;
    } is;
    CommonFlags iso_common;
    iso->add_option("--family", is.family, "path to the shape-family JSON file")->required();
    iso_common.attach(iso);
    iso->add_option("--degree", is.degree, "Ritz degree per shape")->capture_default_str();
    iso->add_option("--resolution", is.resolution, "asymmetry grid resolution")
        ->capture_default_str();
    iso->add_option("--threads", is.threads, "concurrent sweep workers")
        ->envname("STEKLOV_THREADS")
        ->capture_default_str();
    iso->add_option("--out", is.out,
                    "write a CSV report (columns: id,area,asymmetry,asymmetry_err,"
                    "lambda2,lambda2_ball,bound,margin,weak_margin,tol,degree,ok,error)");
    iso->add_option("--json", is.json_out, "write the same report as JSON");
    iso->callback([&] {
        auto family = load_family_file(is.family);
        PlateParams p;
        p.dim = 2;
        p.tau = iso_common.tau;
        p.sigma = iso_common.sigma;
        auto reports = isoperimetric_sweep(family, p, is.degree, is.resolution, is.threads);

        RunConfig cfg;
        iso_common.fill(cfg);
        cfg.subcommand = "verify isoperimetric";
        cfg.degree = is.degree;
        cfg.family = is.family;
        cfg.asym_resolution = is.resolution;
        cfg.threads = is.threads;

        std::vector<std::vector<std::string>> rows;
        json jrows = json::array();
        bool any_error = false, any_violation = false;
        for (const auto& r : reports) {
            std::printf("%-12s A=%.4f lambda2=%s bound=%s margin=%+.3e %s%s\n",
                        r.id.c_str(), r.asymmetry, format_double(r.lambda2).c_str(),
                        format_double(r.bound).c_str(), r.margin, r.ok ? "ok" : "VIOLATED",
                        r.error.empty() ? "" : (" error: " + r.error).c_str());
            if (!r.error.empty()) any_error = true;
            else if (!r.ok) any_violation = true;
            rows.push_back({r.id, format_double(r.area), format_double(r.asymmetry),
                            format_double(r.asymmetry_err), format_double(r.lambda2),
                            format_double(r.lambda2_ball), format_double(r.bound),
                            format_double(r.margin), format_double(r.weak_margin),
                            format_double(r.tol), std::to_string(r.degree),
                            r.ok ? "1" : "0", r.error});
            jrows.push_back({{"id", r.id},
                             {"area", r.area},
                             {"asymmetry", r.asymmetry},
                             {"asymmetry_err", r.asymmetry_err},
                             {"lambda2", r.lambda2},
                             {"lambda2_ball", r.lambda2_ball},
                             {"bound", r.bound},
                             {"margin", r.margin},
                             {"weak_margin", r.weak_margin},
                             {"tol", r.tol},
                             {"degree", r.degree},
                             {"ok", r.ok},
                             {"error", r.error}});
        }
        if (!is.out.empty())
            write_text_file(
                is.out, csv_document(cfg,
                                     {"id", "area", "asymmetry", "asymmetry_err", "lambda2",
                                      "lambda2_ball", "bound", "margin", "weak_margin",
                                      "tol", "degree", "ok", "error"},
                                     rows));
        if (!is.json_out.empty()) write_json_report(is.json_out, cfg, jrows);
        if (any_error) {
            std::printf("sweep finished with per-shape solver failures\n");
            g_exit = 3;
        } else if (any_violation) {
            std::printf("stability margin violated: inequality assertion failed\n");
            g_exit = 4;
        } else {
            std::printf("all margins within tolerance\n");
        }
    });

    // verify reciprocal-sum
    auto* rec = verify->add_subcommand(
        "reciprocal-sum",
        "Check 1/lambda_2 + 1/lambda_3 >= int_dOmega |x-xbar|^2 dS / (tau |Omega|),\n"
        "with equality on disks");
    struct {
        std::string domain;
        int degree = 12;
        std::string out;
    } rc;
    CommonFlags rec_common;
    rec->add_option("--domain", rc.domain, "path to the domain JSON file")->required();
    rec_common.attach(rec);
    rec->add_option("--degree", rc.degree, "Ritz degree")->capture_default_str();
    rec->add_option("--out", rc.out, "write {bound, sum, gap} as JSON");
    rec->callback([&] {
        Domain dom{load_domain_file(rc.domain)};
        PlateParams p;
        p.dim = 2;
        p.tau = rec_common.tau;
        p.sigma = rec_common.sigma;
        auto res = reciprocal_sum_bound(dom, p, rc.degree, rec_common.solve_options());
        std::printf("bound = %s\nsum = %s\ngap = %s\n", format_double(res.bound).c_str(),
                    format_double(res.sum).c_str(), format_double(res.gap).c_str());
        if (!rc.out.empty()) {
            RunConfig cfg;
            rec_common.fill(cfg);
            cfg.subcommand = "verify reciprocal-sum";
            cfg.has_domain = true;
            cfg.domain = dom.spec();
            cfg.degree = rc.degree;
            write_json_report(rc.out, cfg,
                              json{{"bound", res.bound}, {"sum", res.sum}, {"gap", res.gap}});
        }
    });

    // verify scaling
    auto* sca = verify->add_subcommand(
        "scaling",
        "Check lambda_2(tau, sigma, Omega) = s^3 lambda_2(tau/s^2, sigma, s*Omega)");
    struct {
        std::string domain;
        double s = 2.0;
        int degree = 10;
        double tol = 1e-6;
        std::string out;
    } sc;
    CommonFlags sca_common;
    sca->add_option("--domain", sc.domain, "path to the domain JSON file")->required();
    sca->add_option("--s", sc.s, "scale factor s > 0")->capture_default_str();
    sca_common.attach(sca);
    sca->add_option("--degree", sc.degree, "Ritz degree")->capture_default_str();
    sca->add_option("--tol", sc.tol, "assertion threshold on the relative defect")
        ->capture_default_str();
    sca->add_option("--out", sc.out, "write {s, rel_err} as JSON");
    sca->callback([&] {
        Domain dom{load_domain_file(sc.domain)};
        PlateParams p;
        p.dim = 2;
        p.tau = sca_common.tau;
        p.sigma = sca_common.sigma;
        const double rel = scaling_check(dom, p, sc.s, sc.degree, sca_common.solve_options());
        std::printf("rel. err = %s\n", format_double(rel).c_str());
        if (!sc.out.empty()) {
            RunConfig cfg;
            sca_common.fill(cfg);
            cfg.subcommand = "verify scaling";
            cfg.has_domain = true;
            cfg.domain = dom.spec();
            cfg.degree = sc.degree;
            cfg.s = sc.s;
            write_json_report(sc.out, cfg, json{{"s", sc.s}, {"rel_err", rel}});
        }
        if (!(rel <= sc.tol)) {
            std::printf("scaling defect exceeds %s: assertion failed\n",
                        format_double(sc.tol).c_str());
            g_exit = 4;
        }
    });

    // verify mass-concentration
    auto* mcc = verify->add_subcommand(
        "mass-concentration",
        "Compare the eps-concentrated interior density against the boundary-density\n"
        "problem at rho = M/|dOmega|; the gap must shrink as eps decreases");
    struct {
        std::string domain;
        double mass = 0.0;
        std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
        int degree = 10;
        std::string out;
    } mc;
    CommonFlags mcc_common;
    mcc->add_option("--domain", mc.domain, "path to the domain JSON file")->required();
    auto* mass_flag = mcc->add_option(
        "--mass", mc.mass, "total mass M (default: |dOmega|, giving rho_ref = 1)");
    mcc->add_option("--eps", mc.eps_list, "decreasing shell widths")
        ->capture_default_str()
        ->expected(-1);
    mcc_common.attach(mcc);
    mcc->add_option("--degree", mc.degree, "Ritz degree")->capture_default_str();
    mcc->add_option("--out", mc.out,
                    "write a CSV report (columns: eps,lambda2,gap,mass_defect,shell_warning)");
    mcc->callback([&] {
        Domain dom{load_domain_file(mc.domain)};
        PlateParams p;
        p.dim = 2;
        p.tau = mcc_common.tau;
        p.sigma = mcc_common.sigma;
        const double mass = *mass_flag ? mc.mass : perimeter(dom);
        auto rep = mass_concentration_sweep(dom, p, mass, mc.eps_list, mc.degree);
        std::printf("rho_ref = %s, lambda_2 ref = %s\n", format_double(rep.rho_ref).c_str(),
                    format_double(rep.lambda2_ref).c_str());
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : rep.rows) {
            std::printf("eps=%s lambda2=%s gap=%s\n", format_double(row.eps).c_str(),
                        format_double(row.lambda2).c_str(), format_double(row.gap).c_str());
            rows.push_back({format_double(row.eps), format_double(row.lambda2),
                            format_double(row.gap), format_double(row.mass_defect),
                            row.shell_warning ? "1" : "0"});
        }
        if (!mc.out.empty()) {
            RunConfig cfg;
            mcc_common.fill(cfg);
            cfg.subcommand = "verify mass-concentration";
            cfg.has_domain = true;
            cfg.domain = dom.spec();
            cfg.degree = mc.degree;
            cfg.mass = mass;
            cfg.eps_list = mc.eps_list;
            write_text_file(mc.out,
                            csv_document(cfg,
                                         {"eps", "lambda2", "gap", "mass_defect",
                                          "shell_warning"},
                                         rows));
        }
        if (!rep.gaps_decreasing) {
            std::printf("gap sequence is not strictly decreasing: assertion failed\n");
            g_exit = 4;
        } else {
            std::printf("gaps strictly decreasing\n");
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const TheoremViolation& e) {
        std::fprintf(stderr, "inequality assertion failed: %s\n", e.what());
        return 4;
    } catch (const AdmissibilityError& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 1;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "JSON error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return g_exit;
}
