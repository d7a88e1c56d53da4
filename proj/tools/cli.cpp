#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tradecone/equilibrium.hpp"
#include "tradecone/errors.hpp"
#include "tradecone/freeness.hpp"
#include "tradecone/io.hpp"
#include "tradecone/metric.hpp"
#include "tradecone/scenario.hpp"
#include "tradecone/spectral.hpp"

namespace tradecone {

namespace {

using nlohmann::json;

// Bisection width for printed indices, finer than the 9 decimals shown.
constexpr double kReportTol = 1e-12;

struct Globals {
  std::optional<double> tol;
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

/// Rounded down, so the printed t is itself certified PSD.
std::string fmt_index(double x) { return fmt("%.9f", std::floor(x * 1e9) / 1e9); }

std::string join(const std::vector<double>& xs, const char* spec) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += fmt(spec, xs[i]);
  }
  return s;
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty())
    out << text;
  else
    write_file_atomic(g.out, text);
}

MetricMatrix load_metric(const std::string& path) { return resolve_metric(parse_metric_spec(read_text_file(path))); }

struct GenerateArgs {
  std::string kind;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> set;
  std::vector<std::string> edges;
};

int cmd_generate(const Globals& g, const GenerateArgs& a, std::ostream& out) {
  MetricSpec spec;
  if (a.kind == "bipartite") {
    spec.value = BipartiteSpec{a.n, a.m};
  } else if (a.kind == "cut") {
    spec.value = CutSpec{a.n, a.set};
  } else if (a.kind == "discrete") {
    spec.value = DiscreteSpec{a.n};
  } else if (a.kind == "graph") {
    GraphSpec gs{a.n, {}};
    for (const auto& e : a.edges) {
      std::size_t i = 0;
      std::size_t j = 0;
      double w = 0.0;
      char tail = 0;
      if (std::sscanf(e.c_str(), "%zu,%zu,%lf%c", &i, &j, &w, &tail) != 3)
        throw ParseError("edge '" + e + "' must look like i,j,weight");
      gs.edges.push_back({i, j, w});
    }
    spec.value = std::move(gs);
  } else {
    throw InvalidInput("unknown metric kind '" + a.kind + "' (bipartite, cut, discrete, graph)");
  }
  emit(g, out, write_metric_document(resolve_metric(spec), spec));
  return kExitOk;
}

int cmd_validate(const Globals& g, const std::string& path, std::ostream& out) {
  const std::string text = read_text_file(path);
  bool scenario = false;
  try {
    scenario = json::parse(text).contains("countries");
  } catch (const json::exception&) {
  }
  std::string report;
  if (scenario) {
    const Scenario s = parse_scenario(text);
    if (g.json)
      report = json{{"valid", true}, {"kind", "scenario"}, {"n", s.metric().size()}, {"epsilon", s.eps()}}.dump() + "\n";
    else
      report = "valid scenario n=" + std::to_string(s.metric().size()) + " epsilon=" + fmt("%.9g", s.eps()) + "\n";
  } else {
    const MetricMatrix m = resolve_metric(parse_metric_spec(text));
    if (g.json)
      report = json{{"valid", true}, {"kind", "metric"}, {"n", m.size()}, {"degenerate", m.degenerate()}}.dump() + "\n";
    else
      report = std::string("valid metric n=") + std::to_string(m.size()) +
               " degenerate=" + (m.degenerate() ? "true" : "false") + "\n";
  }
  emit(g, out, report);
  return kExitOk;
}

int cmd_spectrum(const Globals& g, const std::string& path, double t, std::ostream& out) {
  const MetricMatrix m = load_metric(path);
  const auto report = eigenvalues_sym(freeness_from_metric(m, t).matrix());
  std::string text;
  if (g.json)
    text = json{{"t", t}, {"eigenvalues", report.eigenvalues}, {"min_eigenvalue", report.min_eigenvalue},
                {"psd", report.psd}}.dump() + "\n";
  else
    text = "t=" + fmt("%.9g", t) + " psd=" + (report.psd ? "true" : "false") +
           " min_eigenvalue=" + fmt("%.9e", report.min_eigenvalue) + "\neigenvalues " +
           join(report.eigenvalues, "%.12g") + "\n";
  emit(g, out, text);
  return kExitOk;
}

int cmd_stability(const Globals& g, const std::string& path, std::ostream& out) {
  const MetricMatrix m = load_metric(path);
  StabilityOptions opts;
  opts.tol = g.tol.value_or(kReportTol);
  const auto r = mt_stability(m, opts);
  std::string text;
  if (g.json) {
    json j = {{"stable", r.stable}, {"index", r.index}};
    if (r.witness_t) j["witness_t"] = *r.witness_t;
    if (r.witness_eigenvalue) j["min_eigenvalue"] = *r.witness_eigenvalue;
    text = j.dump() + "\n";
  } else if (r.stable) {
    text = "stable=true index=1.0\n";
  } else {
    text = "stable=false index=" + fmt_index(r.index) + " witness_t=" + fmt("%.9f", *r.witness_t) +
           " min_eigenvalue=" + fmt("%.9e", *r.witness_eigenvalue) + "\n";
  }
  emit(g, out, text);
  return kExitOk;
}

int cmd_embed(const Globals& g, const std::string& path, std::ostream& out) {
  const MetricMatrix m = load_metric(path);
  const Embedding e = schoenberg_embedding(m);
  std::string text;
  if (g.json) {
    text = json{{"dimension", e.dimension()}, {"points", e.points}, {"error", embedding_error(e, m)}}.dump() + "\n";
  } else {
    for (const auto& p : e.points) text += join(p, "%.12g") + "\n";
  }
  emit(g, out, text);
  return kExitOk;
}

int cmd_equilibrium(const Globals& g, const std::string& path, std::size_t starts, bool analytic, std::ostream& out,
                    std::ostream& err) {
  const Scenario s = parse_scenario(read_text_file(path));
  const Economy e = s.to_economy();
  std::vector<Equilibrium> eqs;
  std::size_t failures = 0;
  std::string method = "search";
  if (analytic && bloc_structure(e)) {
    eqs = bloc_symmetric_equilibria(e);
    method = "analytic";
  } else {
    if (analytic) err << "no bloc structure detected; falling back to the multi-start search\n";
    SearchOptions opts;
    opts.starts = starts;
    opts.seed = g.seed;
    if (g.tol) opts.solver.tol = *g.tol;
    auto found = find_all_equilibria(e, opts);
    eqs = std::move(found.equilibria);
    failures = found.failures.size();
  }
  const double sigma = sigma_from_eps(s.eps());
  auto wages = [&](const std::vector<double>& v) {
    std::vector<double> w(v.size());
    std::transform(v.begin(), v.end(), w.begin(), [&](double x) { return wage_from_v(x, sigma); });
    return w;
  };

  std::string text;
  if (g.json) {
    json list = json::array();
    for (const auto& eq : eqs)
      list.push_back({{"v", eq.v}, {"omega", wages(eq.v)}, {"residual", eq.residual_inf}, {"kind", to_string(eq.kind)}});
    text = json{{"method", method}, {"count", eqs.size()}, {"failed_starts", failures}, {"countries", s.names()},
                {"equilibria", list}}.dump() + "\n";
  } else {
    text = "equilibria=" + std::to_string(eqs.size()) + " method=" + method +
           " failed_starts=" + std::to_string(failures) + "\n";
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      const auto& eq = eqs[k];
      text += "[" + std::to_string(k) + "] kind=" + to_string(eq.kind) + " residual=" + fmt("%.3e", eq.residual_inf) +
              "\n  v=" + join(eq.v, "%.12g") + "\n  omega=" + join(wages(eq.v), "%.12g") + "\n";
    }
  }
  emit(g, out, text);
  return kExitOk;
}

int cmd_scan(const Globals& g, const std::vector<std::string>& files, std::size_t r, const std::string& svg,
             std::ostream& out) {
  const MetricMatrix m1 = load_metric(files[0]);
  const MetricMatrix m2 = load_metric(files[1]);
  const MetricMatrix m3 = load_metric(files[2]);
  StabilityOptions opts;
  if (g.tol) opts.tol = *g.tol;
  const StabilityGrid grid = scan_triangle(m1, m2, m3, r, opts);
  emit(g, out, write_grid_csv(grid));
  if (!svg.empty()) {
    std::array<std::string, 3> labels;
    for (int k = 0; k < 3; ++k) labels[k] = std::filesystem::path(files[k]).stem().string();
    write_file_atomic(svg, render_svg(grid, labels));
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trade-cone toolkit: metric stability, equilibria and triangle scans", "tradecone"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Tolerance (stability bisection width or solver residual)");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for random solver starts");
  app.add_option("--out", g.out, "Write the result to this file instead of stdout");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a metric document");
  generate->add_option("kind", gen.kind, "bipartite | cut | discrete | graph")->required();
  generate->add_option("--n", gen.n, "Number of points (first bloc for bipartite)")->required();
  generate->add_option("--m", gen.m, "Second bloc size (bipartite)");
  generate->add_option("--set", gen.set, "Cut subset (cut)")->delimiter(',');
  generate->add_option("--edge", gen.edges, "Edge i,j,weight (graph, repeatable)");

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check a metric or scenario document");
  validate->add_option("file", file)->required()->check(CLI::ExistingFile);

  double t = 0.0;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the freeness matrix at t");
  spectrum->add_option("file", file)->required()->check(CLI::ExistingFile);
  spectrum->add_option("--t", t, "Freeness parameter in (0, 1)")->required();

  auto* stability = app.add_subcommand("stability", "Stability flag and index of a metric");
  stability->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* embed = app.add_subcommand("embed", "Euclidean points realising a negative-type metric");
  embed->add_option("file", file)->required()->check(CLI::ExistingFile);

  std::size_t starts = 50;
  bool analytic = false;
  auto* equilibrium = app.add_subcommand("equilibrium", "Solve the wage equation of a scenario");
  equilibrium->add_option("file", file)->required()->check(CLI::ExistingFile);
  equilibrium->add_option("--starts", starts, "Number of solver starts")->check(CLI::PositiveNumber);
  equilibrium->add_flag("--analytic", analytic, "Use the two-bloc construction when available");

  std::vector<std::string> vertices;
  std::size_t r = 100;
  std::string svg;
  auto* scan = app.add_subcommand("scan", "Stability over the triangle spanned by three metrics");
  scan->add_option("files", vertices, "Three vertex metric files")->required()->expected(3)->check(CLI::ExistingFile);
  scan->add_option("--r", r, "Grid resolution")->check(CLI::PositiveNumber);
  scan->add_option("--svg", svg, "Also render the grid to this SVG file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(g, gen, out);
    if (*validate) return cmd_validate(g, file, out);
    if (*spectrum) return cmd_spectrum(g, file, t, out);
    if (*stability) return cmd_stability(g, file, out);
    if (*embed) return cmd_embed(g, file, out);
    if (*equilibrium) return cmd_equilibrium(g, file, starts, analytic, out, err);
    if (*scan) {
      if (g.out.empty()) {
        err << "error: scan needs --out for the CSV file\n";
        return kExitUsage;
      }
      return cmd_scan(g, vertices, r, svg, out);
    }
  } catch (const NotNegativeType& e) {
    err << "error: " << e.what() << "\nwitness_eigenvalue=" << fmt("%.9e", e.witness_eigenvalue) << "\n";
    return kExitNotNegativeType;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace tradecone
