#include "doctest.h"

#include <sstream>

#include "necklace/errors.hpp"
#include "necklace/io.hpp"

using namespace necklace;

TEST_CASE("FNV-1a reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
    CHECK(config_hash(json{{"a", 0.3}}) == config_hash(json::parse(R"({"a":0.3})")));
    CHECK(config_hash(json{{"a", 0.3}}) != config_hash(json{{"a", 0.31}}));
}

TEST_CASE("CSV follows RFC 4180 quoting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CsvTable t({"x", "y"});
    t.add_row(std::vector<double>{0.1, 2.0});
    std::ostringstream os;
    t.write(os, {"meta"});
    CHECK(os.str() == "# meta\r\nx,y\r\n0.1,2\r\n");
    CHECK_THROWS(t.add_row(std::vector<double>{1.0}));
}

TEST_CASE("numbers round-trip through their decimal form") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("profile, chart and field round-trip through JSON") {
    const DelaunayProfile p = solve_profile(0.3, kDefaultTol, 256);
    const DelaunayProfile q = json(p).get<DelaunayProfile>();
    CHECK(q.f == p.f);
    CHECK(q.T == p.T);
    const ConformalChart c = build_chart(0.3, kDefaultTol, 64);
    const ConformalChart d = json::parse(json(c).dump()).get<ConformalChart>();
    CHECK(d.x == c.x);
    CHECK(d.tau == c.tau);
    SymmetricField f(3, 16, c.tau);
    f.set_mode(2, std::vector<double>(16, 0.25));
    const SymmetricField g = json::parse(json(f).dump()).get<SymmetricField>();
    CHECK(g.mode(2) == f.mode(2));
    CHECK_THROWS_AS(json::parse(R"({"kmax":1,"N":4,"tau":1.0,"even_y2":false,"modes":[[0,0,0,0]]})").get<SymmetricField>(),
                    GridMismatch);
}
