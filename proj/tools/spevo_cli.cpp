// spevo: command-line front end.
//
//   spevo ingest   <edges> --out <edges>            parse, LCC, stats
//   spevo verify   <edges> --out-dir <dir>          assumption diagnostics
//   spevo predict  <edges> --out-dir <dir>          forecast + scores
//   spevo evaluate <edges>... --out <report.json>   AUC benchmark
//   spevo generate --out <edges>                    synthetic fixture
//
// Exit codes: 0 success, 2 usage or domain error, 3 numerical failure,
// 4 I/O or parse error. Errors are one JSON line on stderr.

#include "spevo/diagnostics.hpp"
#include "spevo/error.hpp"
#include "spevo/evaluation.hpp"
#include "spevo/growth_kernels.hpp"
#include "spevo/synthetic.hpp"
#include "spevo/temporal_graph.hpp"
#include "spevo/trajectory.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spevo;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kThreadsVariable = "SPEVO_THREADS";

struct InputOptions {
  std::string delimiter;
  bool lcc = true;
};

struct SnapshotOptions {
  std::size_t steps = 10;
  bool by_timestamp = false;
  std::vector<double> cuts;
};

struct IngestConfig {
  std::string input;
  std::string out;
  std::string stats;
  InputOptions in;
};

struct VerifyConfig {
  std::string input;
  std::string out_dir;
  InputOptions in;
  SnapshotOptions snap;
  VerifyOptions options;
  std::size_t earlier_step = 0;
};

struct PredictConfig {
  std::string input;
  std::string out_dir;
  InputOptions in;
  SnapshotOptions snap;
  std::string method = "linreg";
  std::string alpha = "auto";
  double fraction = 0.08;
  std::string unselected = "keep";
  std::optional<double> delta;
  std::size_t earlier_step = 0;
};

struct EvaluateConfig {
  std::vector<std::string> inputs;
  std::string out;
  std::string csv;
  InputOptions in;
  std::vector<double> ratios{0.75, 0.8};
  std::vector<std::string> methods{"triangle", "exp:auto", "neumann:auto",
                                   "extrapolate", "linreg", "quadreg"};
  std::string alpha = "auto";
  std::size_t steps = 10;
  double fraction = 0.08;
  std::string unselected = "zero";
  std::uint64_t seed = 1;
  std::size_t negatives = 0;
  bool runtime = false;
};

struct GenerateConfig {
  std::string out;
  std::string truth;
  std::size_t n = 100;
  std::size_t steps = 10;
  std::string trajectory = "linear:0.02";
  double density = 0.05;
  double decay = 0.7;
  std::uint64_t seed = 1;
  std::size_t rotate_at = 0;
  double max_repair = 0.1;
  bool include_basis = false;
};

// Exit code and error kind for the one-line error report.
struct Failure {
  int code;
  const char* kind;
};

Failure classify(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return {4, "parse"};
  if (dynamic_cast<const IoError*>(&e)) return {4, "io"};
  if (dynamic_cast<const NumericalError*>(&e)) return {3, "numerical"};
  if (dynamic_cast<const DomainError*>(&e)) return {2, "domain"};
  return {3, "internal"};
}

void report_error(const char* kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

void write_json(const fs::path& path, const json& doc) {
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
}

void write_matrix(const fs::path& path, const Matrix& m) {
  auto out = open_output(path);
  write_csv(out, m);
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
    rows.push_back(std::move(row));
  }
  return rows;
}

ParseOptions parse_options(const InputOptions& in) {
  ParseOptions opts;
  if (in.delimiter == "tab") {
    opts.delimiter = '\t';
  } else if (in.delimiter.size() == 1) {
    opts.delimiter = in.delimiter[0];
  } else if (!in.delimiter.empty()) {
    throw DomainError("delimiter must be a single character or 'tab'");
  }
  return opts;
}

json input_json(const InputOptions& in) {
  return {{"delimiter", in.delimiter.empty() ? "auto" : in.delimiter}, {"lcc", in.lcc}};
}

json snapshot_json(const SnapshotOptions& s) {
  return {{"steps", s.steps}, {"by_timestamp", s.by_timestamp}, {"cuts", s.cuts}};
}

struct LoadedGraph {
  TemporalGraph graph;
  json stats;
};

LoadedGraph load_graph(const std::string& path, const InputOptions& in) {
  auto parsed = read_edge_list(path, parse_options(in));
  LoadedGraph out;
  out.stats = {{"input_vertices", parsed.graph.vertex_count()},
               {"input_edges", parsed.graph.edge_count()},
               {"self_loops_dropped", parsed.self_loops_dropped},
               {"duplicates_merged", parsed.duplicates_merged}};
  out.graph = in.lcc ? largest_connected_component(parsed.graph) : std::move(parsed.graph);
  out.stats["vertices"] = out.graph.vertex_count();
  out.stats["edges"] = out.graph.edge_count();
  return out;
}

SnapshotSequence make_snapshots(const TemporalGraph& g, const SnapshotOptions& s) {
  if (!s.cuts.empty()) return build_snapshots_at(g, s.cuts);
  if (s.by_timestamp) {
    std::set<double> stamps;
    for (const auto& e : g.edges()) stamps.insert(e.timestamp);
    const std::vector<double> cuts(stamps.begin(), stamps.end());
    return build_snapshots_at(g, cuts);
  }
  return build_snapshots(g, s.steps);
}

ForecastMethod resolve_method(const std::string& spec, const std::string& alpha) {
  auto method = ForecastMethod::parse(spec);
  const bool explicit_alpha = spec.find(':') != std::string::npos && spec.find(":auto") == std::string::npos;
  if (method.is_kernel() && method.transform.kind != SpectralTransform::Kind::triangle_closing &&
      !explicit_alpha && alpha != "auto") {
    const auto name = method.transform.kind == SpectralTransform::Kind::exponential ? "exp:" : "neumann:";
    method.transform = SpectralTransform::parse(name + alpha);
  }
  return method;
}

void write_manifest(const fs::path& path, const std::string& subcommand, const json& config,
                    const std::string& started, double elapsed, const json& extra = json::object()) {
  json doc = {{"tool", "spevo"},
              {"version", kVersion},
              {"subcommand", subcommand},
              {"config", config},
              {"threads", omp_get_max_threads()},
              {"timing", {{"started_at", started}, {"elapsed_s", elapsed}}}};
  if (!extra.empty()) doc["timing"].update(extra);
  write_json(path, doc);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void add_input_options(CLI::App* app, InputOptions& in) {
  app->add_option("--delimiter", in.delimiter, "Field delimiter (single character or 'tab'); default whitespace or comma");
  app->add_flag("!--no-lcc", in.lcc, "Keep every component instead of the largest connected one");
}

void add_snapshot_options(CLI::App* app, SnapshotOptions& s) {
  app->add_option("--steps,-t", s.steps, "Number of equal-size cumulative snapshots")->check(CLI::PositiveNumber);
  app->add_flag("--by-timestamp", s.by_timestamp, "One snapshot per distinct timestamp (overrides --steps)");
  app->add_option("--cuts", s.cuts, "Snapshot i holds edges with timestamp <= cut i (overrides --steps)")
      ->delimiter(',');
}

int run_ingest(const IngestConfig& c) {
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const auto loaded = load_graph(c.input, c.in);
  {
    auto out = open_output(c.out);
    write_edge_list(out, loaded.graph);
  }
  json stats = loaded.stats;
  const auto edges = loaded.graph.edges_by_time();
  if (!edges.empty()) {
    stats["first_timestamp"] = edges.front().timestamp;
    stats["last_timestamp"] = edges.back().timestamp;
  }
  std::set<double> stamps;
  for (const auto& e : edges) stamps.insert(e.timestamp);
  stats["distinct_timestamps"] = stamps.size();
  const double n = static_cast<double>(loaded.graph.vertex_count());
  stats["density"] = n > 1 ? 2.0 * static_cast<double>(edges.size()) / (n * (n - 1)) : 0.0;
  if (!c.stats.empty()) write_json(c.stats, stats);
  std::cout << stats.dump() << '\n';
  write_manifest(c.out + ".manifest.json", "ingest",
                 {{"input", c.input}, {"out", c.out}, {"stats", c.stats}, {"input_options", input_json(c.in)}},
                 started, seconds_since(t0));
  return 0;
}

int run_verify(VerifyConfig c) {
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = prepare_dir(c.out_dir);
  const auto loaded = load_graph(c.input, c.in);
  const auto s = make_snapshots(loaded.graph, c.snap);
  if (c.earlier_step > 0) c.options.earlier_step = c.earlier_step;
  const auto r = verify_assumptions(s, c.options);

  std::vector<std::size_t> dims;
  for (const auto j : r.evolution.dimensions) dims.push_back(static_cast<std::size_t>(j) + 1);
  json doc = {{"steps", s.step_count()},
              {"snapshot_edges", s.edge_counts},
              {"earlier_step", r.earlier_step},
              {"dimensions", dims},
              {"spectral_evolution", to_json(r.spectral_evolution)},
              {"eigenvector_evolution", to_json(r.evolution.similarity)},
              {"diagonality_score", r.diagonality.score},
              {"verdict",
               {{"dimensions", r.verdict_dimensions},
                {"diagonality_score", r.verdict_score},
                {"min_similarity", r.min_similarity},
                {"threshold", c.options.pass_threshold},
                {"pass", r.pass}}}};
  write_json(dir / "diagnostics.json", doc);
  write_matrix(dir / "spectral_evolution.csv", r.spectral_evolution);
  write_matrix(dir / "eigenvector_evolution.csv", r.evolution.similarity);
  write_matrix(dir / "stability.csv", r.stability);
  write_matrix(dir / "delta.csv", r.diagonality.delta);

  std::printf("spectral-evolution-assumption: %s (score=%.4f)\n", r.pass ? "PASS" : "FAIL", r.verdict_score);
  std::printf("eigenvector-similarity: min=%.4f over top %lld dimensions\n", r.min_similarity,
              static_cast<long long>(r.verdict_dimensions));
  json config = {{"input", c.input},
                 {"out_dir", c.out_dir},
                 {"input_options", input_json(c.in)},
                 {"snapshots", snapshot_json(c.snap)},
                 {"fraction", c.options.fraction},
                 {"verdict_dims", c.options.verdict_dimensions},
                 {"threshold", c.options.pass_threshold},
                 {"earlier_step", r.earlier_step}};
  write_manifest(dir / "manifest.json", "verify", config, started, seconds_since(t0));
  return 0;
}

int run_predict(const PredictConfig& c) {
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = prepare_dir(c.out_dir);
  const auto loaded = load_graph(c.input, c.in);
  const auto s = make_snapshots(loaded.graph, c.snap);
  const auto method = resolve_method(c.method, c.alpha);
  const auto policy = parse_unselected_policy(c.unselected);

  const auto d = decompose(s.final());
  ForecastOptions options;
  options.fraction = c.fraction;
  if (c.earlier_step > 0) options.earlier_step = c.earlier_step;
  const auto forecast = forecast_spectrum(s, d, method, options);
  const Matrix scores = predict_scores(d, forecast, policy);
  write_matrix(dir / "scores.csv", scores);

  json predicted = json::array();
  for (const auto& [j, value] : forecast.predicted) {
    predicted.push_back({{"dimension", j + 1}, {"current", d.value(j)}, {"predicted", value}});
  }
  std::vector<std::string> labels;
  for (VertexId v = 1; v <= loaded.graph.vertex_count(); ++v) labels.push_back(loaded.graph.label(v));
  json doc = {{"method", method.to_string()},
              {"fraction", c.fraction},
              {"unselected", to_string(policy)},
              {"steps", s.step_count()},
              {"snapshot_edges", s.edge_counts},
              {"forecast", predicted},
              {"vertices", labels}};
  if (method.is_kernel() && method.transform.kind != SpectralTransform::Kind::triangle_closing) {
    doc["alpha"] = method.transform.resolved_alpha(d);
  }
  const double change = (scores - s.final()).cwiseAbs().maxCoeff();
  doc["max_abs_diff_from_current"] = change;
  if (c.delta) {
    if (scores_constant(scores)) {
      std::cerr << "warning: score matrix is constant; thresholded adjacency is degenerate\n";
    }
    write_matrix(dir / "adjacency.csv", threshold_predict(scores, *c.delta));
    doc["delta"] = *c.delta;
  }
  write_json(dir / "forecast.json", doc);
  std::printf("scores-vs-current: max_abs_diff=%.3e\n", change);

  json config = {{"input", c.input},
                 {"out_dir", c.out_dir},
                 {"input_options", input_json(c.in)},
                 {"snapshots", snapshot_json(c.snap)},
                 {"method", method.to_string()},
                 {"alpha", c.alpha},
                 {"fraction", c.fraction},
                 {"unselected", to_string(policy)},
                 {"delta", c.delta ? json(*c.delta) : json(nullptr)},
                 {"earlier_step", c.earlier_step > 0 ? json(c.earlier_step) : json("auto")}};
  write_manifest(dir / "manifest.json", "predict", config, started, seconds_since(t0));
  return 0;
}

int run_evaluate(const EvaluateConfig& c) {
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  BenchmarkConfig config;
  for (const auto& m : c.methods) config.methods.push_back(resolve_method(m, c.alpha));
  config.ratios = c.ratios;
  config.seed = c.seed;
  config.steps = c.steps;
  config.fraction = c.fraction;
  config.policy = parse_unselected_policy(c.unselected);
  if (c.negatives > 0) config.negatives = c.negatives;

  EvaluationReport report;
  report.config = config;
  json runtimes = json::array();
  json networks = json::array();
  for (const auto& input : c.inputs) {
    config.network = fs::path(input).stem().string();
    const auto loaded = load_graph(input, c.in);
    const auto part = run_benchmark(loaded.graph, config);
    for (const auto& cell : part.cells) {
      runtimes.push_back({{"network", cell.network}, {"ratio", cell.ratio}, {"method", cell.method},
                          {"runtime_s", cell.runtime_s}});
      if (cell.error) report_error("method", cell.network + " " + cell.method + ": " + *cell.error);
    }
    report.append(part);
    json stats = loaded.stats;
    stats["network"] = config.network;
    stats["input"] = input;
    networks.push_back(std::move(stats));
  }
  {
    auto out = open_output(c.out);
    write_report_json(out, report, c.runtime);
  }
  if (!c.csv.empty()) {
    auto out = open_output(c.csv);
    write_report_csv(out, report);
  }
  for (const auto& cell : report.cells) {
    std::printf("%s ratio=%.2f %-14s auc=%s\n", cell.network.c_str(), cell.ratio, cell.method.c_str(),
                cell.auc ? std::to_string(*cell.auc).c_str() : "error");
  }

  std::vector<std::string> methods;
  for (const auto& m : config.methods) methods.push_back(m.to_string());
  json manifest_config = {{"inputs", c.inputs},
                          {"networks", networks},
                          {"out", c.out},
                          {"csv", c.csv},
                          {"input_options", input_json(c.in)},
                          {"ratios", c.ratios},
                          {"methods", methods},
                          {"alpha", c.alpha},
                          {"steps", c.steps},
                          {"fraction", c.fraction},
                          {"unselected", to_string(config.policy)},
                          {"seed", c.seed},
                          {"negatives", c.negatives > 0 ? json(c.negatives) : json("auto")},
                          {"runtime_in_report", c.runtime}};
  write_manifest(c.out + ".manifest.json", "evaluate", manifest_config, started, seconds_since(t0),
                 {{"cells", runtimes}});
  return report.any_failed() ? 3 : 0;
}

int run_generate(const GenerateConfig& c) {
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  SpectralScenario sc;
  sc.n = c.n;
  sc.steps = c.steps;
  sc.seed = c.seed;
  sc.trajectory = TrajectorySpec::parse(c.trajectory);
  sc.density = c.density;
  sc.decay = c.decay;
  if (c.rotate_at > 0) sc.rotate_at = c.rotate_at;
  sc.max_repair_fraction = c.max_repair;
  const auto net = generate_spectral_network(sc);
  {
    auto out = open_output(c.out);
    write_edge_list(out, net.graph);
  }
  const std::string truth = c.truth.empty() ? c.out + ".truth.json" : c.truth;
  {
    auto out = open_output(truth);
    write_ground_truth_json(out, sc, net.truth, c.include_basis);
  }
  std::printf("generated %zu edges over %zu steps (%zu repaired)\n", net.graph.edge_count(), sc.steps,
              net.truth.repaired_edges);
  json config = {{"out", c.out},
                 {"truth", truth},
                 {"n", c.n},
                 {"steps", c.steps},
                 {"trajectory", sc.trajectory.to_string()},
                 {"density", c.density},
                 {"decay", c.decay},
                 {"seed", c.seed},
                 {"rotate_at", c.rotate_at > 0 ? json(c.rotate_at) : json(nullptr)},
                 {"max_repair_fraction", c.max_repair},
                 {"include_basis", c.include_basis}};
  write_manifest(c.out + ".manifest.json", "generate", config, started, seconds_since(t0));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv(kThreadsVariable)) {
    const int count = std::atoi(threads);
    if (count > 0) omp_set_num_threads(count);
  }

  CLI::App app{"Temporal link prediction by spectral evolution"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  IngestConfig ingest;
  auto* ing = app.add_subcommand("ingest", "Parse an edge list, keep the largest component, print stats");
  ing->add_option("input", ingest.input, "Edge list (source target timestamp)")->required();
  ing->add_option("--out,-o", ingest.out, "Canonical edge list to write")->required();
  ing->add_option("--stats", ingest.stats, "Also write the stats JSON here");
  add_input_options(ing, ingest.in);

  VerifyConfig verify;
  auto* ver = app.add_subcommand("verify", "Check the spectral evolution assumptions");
  ver->add_option("input", verify.input, "Edge list")->required();
  ver->add_option("--out-dir,-o", verify.out_dir, "Directory for JSON and CSV output")->required();
  add_input_options(ver, verify.in);
  add_snapshot_options(ver, verify.snap);
  ver->add_option("--fraction", verify.options.fraction, "Dimensions in the evolution series")
      ->check(CLI::Range(0.0, 1.0));
  ver->add_option("--verdict-dims", verify.options.verdict_dimensions, "Dominant dimensions judged by the verdict")
      ->check(CLI::PositiveNumber);
  ver->add_option("--threshold", verify.options.pass_threshold, "Pass threshold for score and similarity")
      ->check(CLI::Range(0.0, 1.0));
  ver->add_option("--earlier-step", verify.earlier_step, "1-based earlier snapshot (default ceil(0.75 t))");

  PredictConfig predict;
  auto* pre = app.add_subcommand("predict", "Forecast the next spectrum and write link scores");
  pre->add_option("input", predict.input, "Edge list")->required();
  pre->add_option("--out-dir,-o", predict.out_dir, "Directory for scores and forecast")->required();
  add_input_options(pre, predict.in);
  add_snapshot_options(pre, predict.snap);
  pre->add_option("--method,-m", predict.method,
                  "extrapolate | linreg | quadreg (optionally :exact) | triangle | exp:<a|auto> | neumann:<a|auto>");
  pre->add_option("--alpha", predict.alpha, "Kernel alpha for methods without one (number or auto)");
  pre->add_option("--fraction", predict.fraction, "Top fraction of dimensions to forecast")
      ->check(CLI::Range(0.0, 1.0));
  pre->add_option("--unselected", predict.unselected, "Unforecast dimensions: keep | zero");
  pre->add_option("--delta", predict.delta, "Also write the adjacency thresholded at delta")
      ->check(CLI::Range(0.0, 1.0));
  pre->add_option("--earlier-step", predict.earlier_step, "Earlier snapshot for extrapolate (1-based)");

  EvaluateConfig evaluate;
  auto* eva = app.add_subcommand("evaluate", "Benchmark methods by AUC on temporal splits");
  eva->add_option("inputs", evaluate.inputs, "Edge lists, one network each")->required();
  eva->add_option("--out,-o", evaluate.out, "Report JSON")->required();
  eva->add_option("--csv", evaluate.csv, "Also write the report as CSV");
  add_input_options(eva, evaluate.in);
  eva->add_option("--ratios", evaluate.ratios, "Train ratios")->delimiter(',');
  eva->add_option("--methods", evaluate.methods, "Method specs")->delimiter(',');
  eva->add_option("--alpha", evaluate.alpha, "Kernel alpha for methods without one (number or auto)");
  eva->add_option("--steps,-t", evaluate.steps, "Snapshots built from the train edges")->check(CLI::PositiveNumber);
  eva->add_option("--fraction", evaluate.fraction, "Top fraction forecast by every method")
      ->check(CLI::Range(0.0, 1.0));
  eva->add_option("--unselected", evaluate.unselected, "Unforecast dimensions: keep | zero");
  eva->add_option("--seed", evaluate.seed, "Negative sampling seed");
  eva->add_option("--negatives", evaluate.negatives, "Negatives per split (default: number of test edges)");
  eva->add_flag("--runtime", evaluate.runtime, "Include runtime_s in the report (breaks byte-identical reruns)");

  GenerateConfig generate;
  auto* gen = app.add_subcommand("generate", "Write a synthetic network with known spectral evolution");
  gen->add_option("--out,-o", generate.out, "Edge list to write")->required();
  gen->add_option("--truth", generate.truth, "Ground-truth JSON (default <out>.truth.json)");
  gen->add_option("--n", generate.n, "Vertices");
  gen->add_option("--steps,-t", generate.steps, "Observed steps");
  gen->add_option("--trajectory", generate.trajectory, "constant | linear:<s> | quadratic:<c> | irregular:<r>");
  gen->add_option("--density", generate.density, "Edge density of the held-out step");
  gen->add_option("--decay", generate.decay, "|lambda_j| = decay^j");
  gen->add_option("--seed", generate.seed, "Basis and trajectory seed");
  gen->add_option("--rotate-at", generate.rotate_at, "Switch to a second basis from this step on");
  gen->add_option("--max-repair", generate.max_repair, "Allowed fraction of union-repaired edges");
  gen->add_flag("--include-basis", generate.include_basis, "Write the basis into the ground truth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 2;
  }

  try {
    if (*ing) return run_ingest(ingest);
    if (*ver) return run_verify(verify);
    if (*pre) return run_predict(predict);
    if (*eva) return run_evaluate(evaluate);
    if (*gen) return run_generate(generate);
  } catch (const std::exception& e) {
    const auto f = classify(e);
    report_error(f.kind, e.what());
    return f.code;
  }
  return 2;
}
