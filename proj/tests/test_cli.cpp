#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "tradecone/io.hpp"

using namespace tradecone;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::path(TRADECONE_TEST_DATA_DIR) / "cli_tmp";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string put(const std::string& name, const std::string& content) {
  const auto path = work_dir() / name;
  write_file_atomic(path, content);
  return path.string();
}

std::string generated(const std::string& name, const std::vector<std::string>& args) {
  const Run r = run(args);
  REQUIRE(r.code == 0);
  return put(name, r.out);
}

std::string k33_scenario(double eps) {
  return put("k33_eps" + std::to_string(static_cast<int>(eps)) + ".json",
             R"({"countries":["A","B","C","D","E","F"],"labor":[1,1,1,1,1,1],"epsilon":)" + std::to_string(eps) +
                 R"(,"t":0.75,"metric":{"kind":"bipartite","n":3,"m":3}})");
}

}  // namespace

TEST_CASE("generate writes explicit documents") {
  const Run r = run({"generate", "bipartite", "--n", "2", "--m", "1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "explicit");
  CHECK(j["matrix"][0][1] == 2.0);
  CHECK(j["source"]["kind"] == "bipartite");

  CHECK(run({"generate", "cut", "--n", "4", "--set", "0,2"}).code == 0);
  CHECK(run({"generate", "discrete", "--n", "3"}).code == 0);
  const Run g = run({"generate", "graph", "--n", "3", "--edge", "0,1,1", "--edge", "1,2,2"});
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["matrix"][0][2] == 3.0);
}

TEST_CASE("stability lines") {
  const auto k33 = generated("k33.json", {"generate", "bipartite", "--n", "3", "--m", "3"});
  const auto k42 = generated("k42.json", {"generate", "bipartite", "--n", "4", "--m", "2"});
  const auto d6 = generated("d6.json", {"generate", "discrete", "--n", "6"});

  CHECK(run({"stability", k33}).out ==
        "stable=false index=0.500000000 witness_t=0.500000000 min_eigenvalue=-3.361848137e-10\n");
  CHECK(run({"stability", d6}).out == "stable=true index=1.0\n");
  CHECK(run({"stability", k42}).out.rfind("stable=false index=0.577350269 ", 0) == 0);

  const auto j = nlohmann::json::parse(run({"--json", "stability", k33}).out);
  CHECK(j["stable"] == false);
  CHECK(j["index"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));

  const Run spec = run({"spectrum", k33, "--t", "0.5"});
  CHECK(spec.code == 0);
  CHECK(spec.out.rfind("t=0.5 psd=", 0) == 0);
}

TEST_CASE("exit codes") {
  const auto k33 = generated("k33.json", {"generate", "bipartite", "--n", "3", "--m", "3"});
  CHECK(run({"generate", "sphere", "--n", "2"}).code == kExitUsage);
  CHECK(run({"stability", "--bogus", k33}).code == kExitUsage);
  CHECK(run({"stability", (work_dir() / "missing.json").string()}).code == kExitUsage);
  CHECK(run({"stability", put("broken.json", "{\"kind\":")}).code == kExitUsage);
  CHECK(run({"--tol", "0", "stability", k33}).code == kExitUsage);
  CHECK(run({"validate", put("tri.json", R"({"kind":"explicit","matrix":[[0,1,3],[1,0,1],[3,1,0]]})")}).code ==
        kExitValidation);
  CHECK(run({"--tol", "0", "equilibrium", k33_scenario(40)}).code == kExitNoConvergence);

  const Run embed = run({"embed", k33});
  CHECK(embed.code == kExitNotNegativeType);
  CHECK(embed.err.find("witness_eigenvalue=") != std::string::npos);
  CHECK(run({"scan", k33, k33, k33}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("small inputs") {
  const auto one = put("one.json", R"({"kind":"discrete","n":1})");
  const Run e = run({"embed", one});
  CHECK(e.code == 0);
  CHECK(e.out == "0\n");
  CHECK(run({"validate", one}).out == "valid metric n=1 degenerate=false\n");

  const auto single =
      put("single.json", R"({"countries":["A"],"labor":[1],"epsilon":5,"t":0.5,"metric":{"kind":"discrete","n":1}})");
  const Run q = run({"--json", "equilibrium", single});
  CHECK(q.code == 0);
  const auto j = nlohmann::json::parse(q.out);
  CHECK(j["count"] == 1);
  CHECK(j["equilibria"][0]["v"][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("equilibrium counts") {
  const auto s40 = k33_scenario(40);
  const auto s30 = k33_scenario(30);
  CHECK(run({"equilibrium", s40, "--starts", "200"}).out.rfind("equilibria=3 method=search", 0) == 0);
  CHECK(run({"equilibrium", s40, "--analytic"}).out.rfind("equilibria=3 method=analytic", 0) == 0);
  CHECK(run({"equilibrium", s30, "--starts", "100"}).out.rfind("equilibria=1 ", 0) == 0);
  CHECK(run({"validate", s40}).out == "valid scenario n=6 epsilon=40\n");
}

TEST_CASE("seeded runs are byte-identical") {
  const auto s40 = k33_scenario(40);
  const std::vector<std::string> args{"--seed", "17", "equilibrium", s40, "--starts", "64"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto out = (work_dir() / "eq.txt").string();
  CHECK(run({"--seed", "17", "--out", out, "equilibrium", s40, "--starts", "64"}).code == 0);
  CHECK(read_text_file(out) == a.out);
}

TEST_CASE("scan writes CSV and SVG") {
  const auto c51 = generated("c51.json", {"generate", "cut", "--n", "6", "--set", "5"});
  const auto k42 = generated("k42.json", {"generate", "bipartite", "--n", "4", "--m", "2"});
  const auto k33 = generated("k33.json", {"generate", "bipartite", "--n", "3", "--m", "3"});
  const auto csv = (work_dir() / "grid.csv").string();
  const auto svg = (work_dir() / "grid.svg").string();
  const Run r = run({"--out", csv, "scan", c51, k42, k33, "--r", "8", "--svg", svg});
  CHECK(r.code == 0);
  const auto grid = read_grid_csv(read_text_file(csv));
  CHECK(grid.resolution == 8);
  CHECK(grid.cells.size() == 45);
  const std::string picture = read_text_file(svg);
  CHECK(picture.find(">c51</text>") != std::string::npos);
}
