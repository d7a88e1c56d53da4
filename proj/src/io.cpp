#include "tradecone/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <type_traits>

#include <json.hpp>

#include "tradecone/equilibrium.hpp"
#include "tradecone/errors.hpp"

namespace tradecone {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + " is missing '" + key + "'");
  return *it;
}

double as_real(const json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + " must be a number");
  return j.get<double>();
}

std::size_t as_count(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(what + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> as_reals(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_real(j[k], what + "[" + std::to_string(k) + "]"));
  return out;
}

MetricSpec spec_from_json(const json& j, const std::string& where) {
  const json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) throw ParseError(where + ".kind must be a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "bipartite")
    return {BipartiteSpec{as_count(field(j, "n", where), where + ".n"), as_count(field(j, "m", where), where + ".m")}};
  if (kind == "cut") {
    const json& set = field(j, "set", where);
    if (!set.is_array()) throw ParseError(where + ".set must be an array");
    CutSpec s{as_count(field(j, "n", where), where + ".n"), {}};
    for (const auto& x : set) s.set.push_back(as_count(x, where + ".set entry"));
    return {s};
  }
  if (kind == "discrete") return {DiscreteSpec{as_count(field(j, "n", where), where + ".n")}};
  if (kind == "graph") {
    GraphSpec g{as_count(field(j, "n", where), where + ".n"), {}};
    const json& edges = field(j, "edges", where);
    if (!edges.is_array()) throw ParseError(where + ".edges must be an array");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 3) throw ParseError(where + ".edges entries must be [i, j, weight]");
      g.edges.push_back({as_count(e[0], "edge vertex"), as_count(e[1], "edge vertex"), as_real(e[2], "edge weight")});
    }
    return {g};
  }
  if (kind == "explicit") {
    const json& rows = field(j, "matrix", where);
    if (!rows.is_array() || rows.empty()) throw ParseError(where + ".matrix must be a nonempty array of rows");
    std::vector<std::vector<double>> data;
    for (const auto& row : rows) data.push_back(as_reals(row, where + ".matrix row"));
    try {
      return {ExplicitSpec{Matrix::from_rows(data)}};
    } catch (const InvalidInput& e) {
      throw ParseError(where + ".matrix: " + e.what());
    }
  }
  if (kind == "combination") {
    const json& terms = field(j, "terms", where);
    if (!terms.is_array()) throw ParseError(where + ".terms must be an array");
    CombinationSpec c;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string at = where + ".terms[" + std::to_string(k) + "]";
      c.terms.push_back({as_real(field(terms[k], "coeff", at), at + ".coeff"),
                         spec_from_json(field(terms[k], "metric", at), at + ".metric")});
    }
    return {std::move(c)};
  }
  throw ParseError(where + ": unknown metric kind '" + kind + "'");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(json(std::vector<double>(m.row(i).begin(), m.row(i).end())));
  return rows;
}

json spec_to_json(const MetricSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BipartiteSpec>) {
          return {{"kind", "bipartite"}, {"n", s.n}, {"m", s.m}};
        } else if constexpr (std::is_same_v<T, CutSpec>) {
          return {{"kind", "cut"}, {"n", s.n}, {"set", s.set}};
        } else if constexpr (std::is_same_v<T, DiscreteSpec>) {
          return {{"kind", "discrete"}, {"n", s.n}};
        } else if constexpr (std::is_same_v<T, GraphSpec>) {
          json edges = json::array();
          for (const auto& e : s.edges) edges.push_back(json::array({e.i, e.j, e.weight}));
          return {{"kind", "graph"}, {"n", s.n}, {"edges", edges}};
        } else if constexpr (std::is_same_v<T, ExplicitSpec>) {
          return {{"kind", "explicit"}, {"matrix", matrix_to_json(s.matrix)}};
        } else {
          json terms = json::array();
          for (const auto& t : s.terms) terms.push_back({{"coeff", t.coeff}, {"metric", spec_to_json(t.metric)}});
          return {{"kind", "combination"}, {"terms", terms}};
        }
      },
      spec.value);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double parse_real(std::string_view s, std::size_t line) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("line " + std::to_string(line) + ": '" + std::string(s) + "' is not a number");
  return x;
}

}  // namespace

MetricSpec parse_metric_spec(const std::string& text) { return spec_from_json(parse_json(text), "metric"); }

std::string write_metric_spec(const MetricSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

std::string write_metric_document(const MetricMatrix& m, const std::optional<MetricSpec>& source) {
  json j = {{"kind", "explicit"}, {"matrix", matrix_to_json(m.matrix())}};
  if (source) j["source"] = spec_to_json(*source);
  return j.dump(2) + "\n";
}

Scenario parse_scenario(const std::string& text) {
  const json j = parse_json(text);
  const std::string where = "scenario";
  const json& countries = field(j, "countries", where);
  if (!countries.is_array()) throw ParseError("scenario.countries must be an array of strings");
  std::vector<std::string> names;
  for (const auto& c : countries) {
    if (!c.is_string()) throw ParseError("scenario.countries must be an array of strings");
    names.push_back(c.get<std::string>());
  }
  const bool has_eps = j.contains("epsilon");
  const bool has_sigma = j.contains("sigma");
  if (has_eps == has_sigma) throw ParseError("scenario needs exactly one of 'epsilon' and 'sigma'");
  const double eps = has_eps ? as_real(j["epsilon"], "scenario.epsilon")
                             : eps_from_sigma(as_real(j["sigma"], "scenario.sigma"));
  return Scenario(std::move(names), spec_from_json(field(j, "metric", where), "scenario.metric"),
                  as_reals(field(j, "labor", where), "scenario.labor"), eps, as_real(field(j, "t", where), "scenario.t"));
}

std::string write_scenario(const Scenario& s) {
  json j = {{"countries", s.names()},
            {"labor", s.labor()},
            {"epsilon", s.eps()},
            {"t", s.t()},
            {"metric", spec_to_json(s.metric_spec())}};
  return j.dump(2) + "\n";
}

std::string write_grid_csv(const StabilityGrid& grid) {
  std::string out = "alpha,beta,gamma,stable,index\n";
  for (const auto& c : grid.cells)
    out += fmt9(c.alpha) + "," + fmt9(c.beta) + "," + fmt9(c.gamma) + "," + (c.stable ? "1" : "0") + "," +
           fmt9(c.index) + "\n";
  return out;
}

StabilityGrid read_grid_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "alpha,beta,gamma,stable,index")
    throw ParseError("grid CSV must start with the header alpha,beta,gamma,stable,index");
  StabilityGrid grid;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
      f.push_back(rest.substr(0, pos));
    f.push_back(rest);
    if (f.size() != 5) throw ParseError("line " + std::to_string(lineno) + ": expected 5 fields");
    if (f[3] != "0" && f[3] != "1") throw ParseError("line " + std::to_string(lineno) + ": stable must be 0 or 1");
    grid.cells.push_back({parse_real(f[0], lineno), parse_real(f[1], lineno), parse_real(f[2], lineno), f[3] == "1",
                          parse_real(f[4], lineno)});
  }
  const std::size_t rows = grid.cells.size();
  std::size_t r = 1;
  while ((r + 1) * (r + 2) / 2 < rows) ++r;
  if ((r + 1) * (r + 2) / 2 != rows)
    throw ParseError(std::to_string(rows) + " rows is not a triangular grid size");
  grid.resolution = r;
  return grid;
}

std::string render_svg(const StabilityGrid& grid, const std::array<std::string, 3>& labels) {
  constexpr double kSide = 500.0;
  constexpr double kMargin = 50.0;
  const double height = kSide * std::sqrt(3.0) / 2.0;
  const double p1[2] = {kMargin, kMargin + height};
  const double p2[2] = {kMargin + kSide / 2.0, kMargin};
  const double p3[2] = {kMargin + kSide, kMargin + height};
  const double radius = std::fmax(1.0, 0.4 * kSide / static_cast<double>(std::max<std::size_t>(grid.resolution, 1)));

  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return std::string(buf);
  };
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
      }
    }
    return out;
  };

  const double w = 2 * kMargin + kSide;
  const double h = 2 * kMargin + height;
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w) + "\" height=\"" + num(h) +
       "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
  s += "<polygon points=\"" + num(p1[0]) + "," + num(p1[1]) + " " + num(p2[0]) + "," + num(p2[1]) + " " + num(p3[0]) +
       "," + num(p3[1]) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& c : grid.cells) {
    const double x = c.alpha * p1[0] + c.beta * p2[0] + c.gamma * p3[0];
    const double y = c.alpha * p1[1] + c.beta * p2[1] + c.gamma * p3[1];
    s += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(radius) + "\" fill=\"" +
         (c.stable ? "blue" : "red") + "\"/>\n";
  }
  s += "<text x=\"" + num(p1[0]) + "\" y=\"" + num(p1[1] + 25) + "\" text-anchor=\"middle\">" + escape(labels[0]) +
       "</text>\n";
  s += "<text x=\"" + num(p2[0]) + "\" y=\"" + num(p2[1] - 15) + "\" text-anchor=\"middle\">" + escape(labels[1]) +
       "</text>\n";
  s += "<text x=\"" + num(p3[0]) + "\" y=\"" + num(p3[1] + 25) + "\" text-anchor=\"middle\">" + escape(labels[2]) +
       "</text>\n";
  s += "</svg>\n";
  return s;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace tradecone
