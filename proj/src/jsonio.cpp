#include "steklov/jsonio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace steklov {

using nlohmann::json;

namespace {

json center_to_json(const Vec2& c) { return json::array({c.x, c.y}); }

Vec2 center_from_json(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(std::string(where) + ": center must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

double need_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw std::invalid_argument(std::string("domain JSON: missing numeric field '") + key +
                                    "'");
    return j[key].get<double>();
}

std::vector<double> opt_number_array(const json& j, const char* key) {
    if (!j.contains(key)) return {};
    if (!j[key].is_array())
        throw std::invalid_argument(std::string("domain JSON: '") + key +
                                    "' must be a number array");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number())
            throw std::invalid_argument(std::string("domain JSON: '") + key +
                                        "' must be a number array");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

json domain_to_json(const DomainSpec& s) {
    json j;
    j["kind"] = s.kind;
    if (s.kind == "disk") {
        j["R"] = s.R;
        j["center"] = center_to_json(s.center);
    } else if (s.kind == "ellipse") {
        j["a"] = s.a;
        j["b"] = s.b;
        j["center"] = center_to_json(s.center);
    } else if (s.kind == "star") {
        j["base"] = s.base;
        j["fourier_cos"] = s.fourier_cos;
        j["fourier_sin"] = s.fourier_sin;
        j["center"] = center_to_json(s.center);
    } else if (s.kind == "scaled") {
        j["s"] = s.s;
        if (!s.inner) throw std::invalid_argument("scaled domain without an inner domain");
        j["inner"] = domain_to_json(*s.inner);
    } else {
        throw std::invalid_argument("unknown domain kind '" + s.kind + "'");
    }
    return j;
}

DomainSpec domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("domain JSON: expected an object with a 'kind' string");
    const std::string kind = j["kind"].get<std::string>();
    DomainSpec s;
    if (kind == "disk") {
        s = DomainSpec::disk(need_number(j, "R"));
    } else if (kind == "ellipse") {
        s = DomainSpec::ellipse(need_number(j, "a"), need_number(j, "b"));
    } else if (kind == "star") {
        s = DomainSpec::star(j.contains("base") ? need_number(j, "base") : 1.0,
                             opt_number_array(j, "fourier_cos"),
                             opt_number_array(j, "fourier_sin"));
    } else if (kind == "scaled") {
        if (!j.contains("inner"))
            throw std::invalid_argument("domain JSON: scaled needs an 'inner' domain");
        s = DomainSpec::scaled(domain_from_json(j["inner"]), need_number(j, "s"));
    } else {
        throw std::invalid_argument("domain JSON: unknown kind '" + kind + "'");
    }
    if (j.contains("center")) s.center = center_from_json(j["center"], "domain JSON");
    return s;
}

DomainSpec load_domain_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("cannot parse " + path + ": " + e.what());
    }
    return domain_from_json(j);
}

std::vector<std::pair<std::string, DomainSpec>> parse_family(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("family JSON: expected a nonempty array");
    std::vector<std::pair<std::string, DomainSpec>> out;
    int index = 0;
    for (const auto& el : j) {
        if (el.is_object() && el.contains("kind")) {
            out.emplace_back("shape_" + std::to_string(index), domain_from_json(el));
        } else if (el.is_object() && el.contains("domain")) {
            std::string id = el.contains("id") && el["id"].is_string()
                                 ? el["id"].get<std::string>()
                                 : "shape_" + std::to_string(index);
            out.emplace_back(std::move(id), domain_from_json(el["domain"]));
        } else {
            throw std::invalid_argument(
                "family JSON: entries must be domain objects or {id, domain}");
        }
        ++index;
    }
    return out;
}

std::vector<std::pair<std::string, DomainSpec>> load_family_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("cannot parse " + path + ": " + e.what());
    }
    return parse_family(j);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["dim"] = c.dim;
    j["tau"] = c.tau;
    j["sigma"] = c.sigma;
    j["rho"] = c.rho;
    if (c.subcommand == "ball-spectrum") j["count"] = c.count;
    if (c.has_domain) j["domain"] = domain_to_json(c.domain);
    j["degree"] = c.degree;
    j["n_radial"] = c.n_radial;
    j["n_angular"] = c.n_angular;
    j["n_boundary"] = c.n_boundary;
    if (c.s != 1.0) j["s"] = c.s;
    if (c.neumann) {
        j["neumann"] = true;
        j["mass"] = c.mass;
        j["eps"] = c.eps;
    }
    if (!c.eps_list.empty()) {
        j["mass"] = c.mass;
        j["eps_list"] = c.eps_list;
    }
    if (!c.family.empty()) {
        j["family"] = c.family;
        j["asym_resolution"] = c.asym_resolution;
        j["threads"] = c.threads;
    }
    j["seed"] = c.seed;
    return j;
}

json spectrum_to_json(const Spectrum& sp) {
    json j;
    j["eigenvalues"] = sp.eigenvalues;
    json cl = json::array();
    for (const auto& c : sp.clusters) cl.push_back({{"first", c.first}, {"count", c.count}});
    j["clusters"] = cl;
    return j;
}

json ritz_to_json(const RitzSpectrum& rs) {
    json j = spectrum_to_json(rs.spectrum);
    j["degree"] = rs.degree;
    j["n_radial"] = rs.n_radial;
    j["n_angular"] = rs.n_angular;
    j["n_boundary"] = rs.n_boundary;
    j["stiffness_cond"] = rs.stiffness_cond;
    j["conditioning_warning"] = rs.conditioning_warning;
    j["residuals"] = rs.residuals;
    j["basis"] = {{"degree", rs.basis.degree},
                  {"center", center_to_json(rs.basis.center)},
                  {"scale", rs.basis.scale}};
    if (rs.eps > 0.0) {
        j["eps"] = rs.eps;
        j["mass_defect"] = rs.mass_defect;
        j["shell_warning"] = rs.shell_warning;
    }
    return j;
}

json ball_to_json(const BallSpectrum& bs) {
    json j;
    std::vector<double> eig;
    json modes = json::array();
    for (const auto& mode : bs.modes) {
        modes.push_back({{"l", mode.l},
                         {"lambda", mode.lambda},
                         {"multiplicity", mode.multiplicity},
                         {"b_coeff", mode.b_coeff}});
    }
    j["eigenvalues"] = bs.spectrum.eigenvalues;
    json cl = json::array();
    for (const auto& c : bs.spectrum.clusters)
        cl.push_back({{"first", c.first}, {"count", c.count}});
    j["clusters"] = cl;
    j["modes"] = modes;
    return j;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    const bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

std::string csv_document(const RunConfig& config, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::string out = "# config " + config_to_json(config).dump() + "\r\n";
    out += csv_line(header);
    for (const auto& row : rows) out += csv_line(row);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("read failed for " + path);
    return ss.str();
}

} // namespace steklov
