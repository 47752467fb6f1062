#include "doctest.h"
#include <nlohmann/json.hpp>
#include "polarkit/body_io.hpp"
#include "polarkit/records.hpp"

using namespace polarkit;
using json = nlohmann::json;

TEST_CASE("bs record carries every field and writes infinities as strings") {
  const auto r = verify_bs(ConvexBody::cube(2));
  const auto j = json::parse(bs_record(r));
  CHECK(j["record"] == "bs");
  CHECK(j["body_hash"] == body_hash(ConvexBody::cube(2)));
  CHECK(j["method"] == "exact");
  CHECK(j["ratio"].get<double>() == r.ratio);
  CHECK(j["product"].get<double>() == 8.0);
  CHECK(j["margin_std_errors"] == "inf");
  CHECK(j["verdict"] == "satisfied");
}

TEST_CASE("bandlimited record reproduces nodes and weights exactly") {
  const auto f = extremal_rho_function(ConvexBody::ball(2), 6);
  const auto j = json::parse(bandlimited_record(f));
  CHECK(j["spectrum_body_hash"] == body_hash(ConvexBody::ball(2)));
  CHECK(body_hash(parse_body(j["spectrum_body"].get<std::string>())) == body_hash(f.spectrum_body));
  CHECK(j["cell_measure"].get<double>() == f.cell_measure);
  REQUIRE(j["nodes"].size() == f.freq_nodes.size());
  for (std::size_t i = 0; i < f.freq_nodes.size(); ++i) {
    for (int d = 0; d < 2; ++d) CHECK(j["nodes"][i][d].get<double>() == f.freq_nodes[i][d]);
    CHECK(j["weights"][i][0].get<double>() == f.weights[i].real());
    CHECK(j["weights"][i][1].get<double>() == f.weights[i].imag());
  }
}

TEST_CASE("extremal record keeps provenance") {
  const auto e = rho_solve(ConvexBody::cube(2), 8, 3);
  const auto j = json::parse(extremal_record("h", e));
  CHECK(j["quantity"] == "rho");
  CHECK(j["seed"] == 3);
  CHECK(j["grid_spec"][0] == 8);
  CHECK(j["certificate"] == "constant_density");
  CHECK(j["lower"].is_null());
  CHECK(j["diagnostics"].contains("iterative_value"));
}

TEST_CASE("csv table") {
  CsvTable t({"a", "b"});
  t.comment("a: first");
  t.add_row(std::vector<double>{0.1, std::numeric_limits<double>::infinity()});
  t.add_row(std::vector<std::string>{"x", "y"});
  CHECK(t.rows() == 2);
  CHECK(t.str() == "# a: first\na,b\n0.1,inf\nx,y\n");
  CHECK_THROWS_AS(t.add_row(std::vector<double>{1.0}), ValidationError);

  const auto p = radon_profile(ConvexBody::cube(2), Direction(Vec::Unit(2, 1)), 3);
  const auto s = radon_table("abc", p);
  CHECK(s.find("# body_hash = abc\n") != std::string::npos);
  CHECK(s.find("# theta = 0 1\n") != std::string::npos);
  CHECK(s.find("t,S\n-1,0\n0,2\n1,0\n") != std::string::npos);
}
