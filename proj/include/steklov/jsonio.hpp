#pragma once

#include "steklov/ball.hpp"
#include "steklov/domain.hpp"
#include "steklov/solver.hpp"
#include "steklov/verify.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace steklov {

// filesystem failures (distinct from validation errors for exit-code mapping)
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// DomainSpec <-> JSON.  Schema by kind:
//   {"kind":"disk","R":1.0,"center":[0,0]}
//   {"kind":"ellipse","a":2.0,"b":0.5,"center":[0,0]}
//   {"kind":"star","base":1.0,"fourier_cos":[...],"fourier_sin":[...],"center":[0,0]}
//   {"kind":"scaled","s":2.0,"inner":{...}}
// center is optional (defaults to the origin); kind-specific size fields are
// required.  Unknown kinds and malformed fields raise std::invalid_argument.
nlohmann::json domain_to_json(const DomainSpec& s);
DomainSpec domain_from_json(const nlohmann::json& j);
DomainSpec load_domain_file(const std::string& path);

// Shape family file: a JSON array whose elements are either bare domain
// objects (ids generated as shape_0, shape_1, ...) or {"id": ..., "domain": {...}}.
std::vector<std::pair<std::string, DomainSpec>> parse_family(const nlohmann::json& j);
std::vector<std::pair<std::string, DomainSpec>> load_family_file(const std::string& path);

// Everything needed to reproduce a run; embedded in every output file.
struct RunConfig {
    std::string subcommand;
    int dim = 2;
    double tau = 1.0;
    double sigma = 0.3;
    double rho = 1.0;
    int count = 8;
    bool has_domain = false;
    DomainSpec domain;
    int degree = 12;
    int n_radial = 64, n_angular = 256, n_boundary = 1024;
    double s = 1.0;
    bool neumann = false;
    double mass = 0.0;
    double eps = 0.0;
    std::vector<double> eps_list;
    int asym_resolution = 2048;
    int threads = 1;
    std::string family;
    std::uint64_t seed = 0;
};
nlohmann::json config_to_json(const RunConfig& c);

nlohmann::json spectrum_to_json(const Spectrum& sp);
nlohmann::json ritz_to_json(const RitzSpectrum& rs);
nlohmann::json ball_to_json(const BallSpectrum& bs);

// Shortest round-trip decimal form of a double (CSV cells; JSON handles its
// own numbers).
std::string format_double(double v);

// RFC-4180: fields holding commas, quotes, or newlines are quoted with
// embedded quotes doubled.
std::string csv_field(const std::string& s);
std::string csv_line(const std::vector<std::string>& fields);

// CSV document: "# config <json>" first, then the header row, then data.
std::string csv_document(const RunConfig& config, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace steklov
