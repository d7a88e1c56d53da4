#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "support.hpp"
#include "tradecone/errors.hpp"
#include "tradecone/io.hpp"

using namespace tradecone;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

std::string k33_scenario(const std::string& rate) {
  return R"({"countries":["A","B","C","D","E","F"],"labor":[1,1,1,1,1,1],)" + rate +
         R"(,"t":0.75,"metric":{"kind":"bipartite","n":3,"m":3}})";
}

}  // namespace

TEST_CASE("metric specs round trip") {
  CombinationSpec mix;
  mix.terms.push_back({0.25, {CutSpec{6, {5}}}});
  mix.terms.push_back({0.75, {BipartiteSpec{4, 2}}});
  const std::vector<MetricSpec> specs{
      {BipartiteSpec{3, 2}},
      {CutSpec{5, {0, 3}}},
      {DiscreteSpec{4}},
      {GraphSpec{3, {{0, 1, 1.5}, {1, 2, 0.25}}}},
      {ExplicitSpec{Matrix{{0, 1.1, 2}, {1.1, 0, 0.9}, {2, 0.9, 0}}}},
      {mix},
  };
  for (const auto& s : specs) {
    const std::string text = write_metric_spec(s);
    const auto back = parse_metric_spec(text);
    CHECK(write_metric_spec(back) == text);
    CHECK(resolve_metric(back) == resolve_metric(s));
  }
}

TEST_CASE("explicit documents keep their source") {
  const auto m = bipartite_metric(3, 3);
  const std::string doc = write_metric_document(m, MetricSpec{BipartiteSpec{3, 3}});
  CHECK(doc.find("\"source\"") != std::string::npos);
  CHECK(resolve_metric(parse_metric_spec(doc)) == m);
  CHECK(write_metric_document(m).find("source") == std::string::npos);
}

TEST_CASE("metric parse errors") {
  CHECK_THROWS_AS(parse_metric_spec("{"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec("[]"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"n":3})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"sphere","n":3})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"bipartite","n":3})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"bipartite","n":-1,"m":2})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"discrete","n":"4"})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"graph","n":3,"edges":[[0,1]]})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"explicit","matrix":[]})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"explicit","matrix":[[0,1],[1]]})"), ParseError);
  CHECK_THROWS_AS(parse_metric_spec(R"({"kind":"combination","terms":[{"coeff":1}]})"), ParseError);
}

TEST_CASE("scenario documents") {
  const auto s = parse_scenario(k33_scenario(R"("epsilon":40)"));
  CHECK(s.eps() == 40.0);
  CHECK(s.names().size() == 6);
  CHECK(s.metric() == bipartite_metric(3, 3));

  const auto viasigma = parse_scenario(k33_scenario(R"("sigma":5)"));
  CHECK(viasigma.eps() == doctest::Approx(eps_from_sigma(5.0)));

  CHECK_THROWS_AS(parse_scenario(k33_scenario(R"("epsilon":40,"sigma":5)")), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"countries":["A"],"labor":[1],"t":0.5,"metric":{"kind":"discrete","n":1}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario(k33_scenario(R"("epsilon":0.5)")), InvalidInput);
  CHECK_THROWS_AS(
      parse_scenario(R"({"countries":["A",2],"labor":[1,1],"epsilon":3,"t":0.5,"metric":{"kind":"discrete","n":2}})"),
      ParseError);

  const std::string text = write_scenario(s);
  const auto back = parse_scenario(text);
  CHECK(write_scenario(back) == text);
  CHECK(back.names() == s.names());
  CHECK(back.labor() == s.labor());
  CHECK(back.t() == s.t());
}

TEST_CASE("grid CSV") {
  const auto grid = scan_triangle(cut_metric(6, {5}), bipartite_metric(4, 2), bipartite_metric(3, 3), 6);
  const std::string csv = write_grid_csv(grid);
  CHECK(csv.rfind("alpha,beta,gamma,stable,index\n", 0) == 0);
  CHECK(count_of(csv, "\n") == 1 + 28);

  const auto back = read_grid_csv(csv);
  CHECK(back.resolution == 6);
  CHECK(back.vertices.empty());
  REQUIRE(back.cells.size() == grid.cells.size());
  for (std::size_t k = 0; k < grid.cells.size(); ++k) {
    CHECK(back.cells[k].stable == grid.cells[k].stable);
    CHECK(std::fabs(back.cells[k].index - grid.cells[k].index) < 1e-8);
  }
  CHECK(write_grid_csv(back) == csv);

  CHECK_THROWS_AS(read_grid_csv("a,b,c\n"), ParseError);
  CHECK_THROWS_AS(read_grid_csv("alpha,beta,gamma,stable,index\n1,0,0,2,1\n"), ParseError);
  CHECK_THROWS_AS(read_grid_csv("alpha,beta,gamma,stable,index\n1,0,0,1\n"), ParseError);
  CHECK_THROWS_AS(read_grid_csv("alpha,beta,gamma,stable,index\nx,0,0,1,1\n"), ParseError);
  CHECK_THROWS_AS(read_grid_csv("alpha,beta,gamma,stable,index\n1,0,0,1,1\n0,1,0,1,1\n"), ParseError);
}

TEST_CASE("SVG rendering") {
  const auto grid = scan_triangle(cut_metric(6, {5}), bipartite_metric(4, 2), bipartite_metric(3, 3), 10);
  std::size_t stable = 0;
  for (const auto& c : grid.cells) stable += c.stable ? 1 : 0;
  const std::string svg = render_svg(grid, {"C51", "K<4,2>", "K33 & co"});
  CHECK(count_of(svg, "<circle") == 66);
  CHECK(count_of(svg, "fill=\"blue\"") == stable);
  CHECK(count_of(svg, "fill=\"red\"") == 66 - stable);
  CHECK(svg.find("K&lt;4,2&gt;") != std::string::npos);
  CHECK(svg.find("K33 &amp; co") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::path(TRADECONE_TEST_DATA_DIR) / "io_tmp";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  CHECK(read_text_file(path) == "second\n");
  CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  CHECK_THROWS_AS(read_text_file(dir / "missing.txt"), InvalidInput);
  CHECK_THROWS(write_file_atomic(dir / "no_such_dir" / "x.txt", "x"));
}
