#include "doctest.h"

#include "steklov/jsonio.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>

using namespace steklov;
using nlohmann::json;

TEST_CASE("domain specs survive a json round trip") {
    auto roundtrip = [](const DomainSpec& s) {
        const json j = domain_to_json(s);
        return domain_to_json(domain_from_json(j)) == j;
    };
    CHECK(roundtrip(DomainSpec::disk(2.5, {1.0, -3.0})));
    CHECK(roundtrip(DomainSpec::ellipse(2.0, 0.5)));
    CHECK(roundtrip(DomainSpec::star(1.1, {0.0, 0.2}, {0.05}, {0.5, 0.5})));
    CHECK(roundtrip(DomainSpec::scaled(DomainSpec::ellipse(1.3, 0.7), 2.0)));
    CHECK(roundtrip(
        DomainSpec::scaled(DomainSpec::scaled(DomainSpec::disk(1.0), 0.5), 3.0)));
}

TEST_CASE("domain json parsing validates its schema") {
    CHECK_THROWS_AS(domain_from_json(json::parse("{\"kind\":\"pentagon\"}")),
                    std::invalid_argument);
    CHECK_THROWS_AS(domain_from_json(json::parse("{\"kind\":\"disk\"}")),
                    std::invalid_argument);  // R missing
    CHECK_THROWS_AS(domain_from_json(json::parse("{\"kind\":\"ellipse\",\"a\":1.0}")),
                    std::invalid_argument);  // b missing
    CHECK_THROWS_AS(domain_from_json(json::parse("[1,2,3]")), std::invalid_argument);
    CHECK_THROWS_AS(
        domain_from_json(json::parse("{\"kind\":\"disk\",\"R\":1.0,\"center\":[1]}")),
        std::invalid_argument);
    CHECK_THROWS_AS(domain_from_json(json::parse("{\"kind\":\"scaled\",\"s\":2.0}")),
                    std::invalid_argument);  // inner missing
    // star with no Fourier coefficients is a circle; center defaults to origin
    const DomainSpec star = domain_from_json(json::parse("{\"kind\":\"star\"}"));
    CHECK(star.base == 1.0);
    CHECK(star.center.x == 0.0);
    const DomainSpec d = domain_from_json(json::parse("{\"kind\":\"disk\",\"R\":3.0}"));
    CHECK(d.R == 3.0);
}

TEST_CASE("family files accept bare domains and id-wrapped entries") {
    const json fam = json::parse(
        "[{\"kind\":\"disk\",\"R\":1.0},"
        " {\"id\":\"egg\",\"domain\":{\"kind\":\"ellipse\",\"a\":1.2,\"b\":0.8}},"
        " {\"domain\":{\"kind\":\"disk\",\"R\":2.0}}]");
    auto parsed = parse_family(fam);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0].first == "shape_0");
    CHECK(parsed[1].first == "egg");
    CHECK(parsed[2].first == "shape_2");
    CHECK(parsed[1].second.kind == "ellipse");
    CHECK_THROWS_AS(parse_family(json::parse("[]")), std::invalid_argument);
    CHECK_THROWS_AS(parse_family(json::parse("[42]")), std::invalid_argument);
    CHECK_THROWS_AS(parse_family(json::parse("{\"kind\":\"disk\"}")),
                    std::invalid_argument);
}

TEST_CASE("csv quoting follows rfc 4180") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("with,comma") == "\"with,comma\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("line\nbreak") == "\"line\nbreak\"");
    CHECK(csv_line({"a", "b,c", "d"}) == "a,\"b,c\",d\r\n");
}

TEST_CASE("doubles format to shortest round-trip decimals") {
    for (double v : {1.0, 1.0 / 3.0, 3.14159265358979323846, -2.5e-17, 1e300, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv documents start with their embedded config") {
    RunConfig cfg;
    cfg.subcommand = "verify scaling";
    cfg.tau = 2.0;
    const std::string doc = csv_document(cfg, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    CHECK(doc.substr(0, 9) == "# config ");
    CHECK(doc.find("\"tau\":2.0") != std::string::npos);
    CHECK(doc.find("a,b\r\n1,2\r\n3,4\r\n") != std::string::npos);
}

TEST_CASE("text file helpers raise io errors") {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "steklov_io_test.txt").string();
    write_text_file(path, "contents\n");
    CHECK(read_text_file(path) == "contents\n");
    fs::remove(path);
    CHECK_THROWS_AS(read_text_file("/nonexistent/steklov/file"), IoError);
    CHECK_THROWS_AS(write_text_file("/nonexistent/steklov/file", "x"), IoError);
}
