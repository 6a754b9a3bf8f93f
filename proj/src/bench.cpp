#include "smbo/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "smbo/functionals.hpp"

namespace smbo {

namespace {

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("bad " + what + " '" + s + "'");
  }
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

SweepSpec SweepSpec::parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ValidationError("sweep must look like K=START:STOP:STEP");
  SweepSpec s;
  const std::string name = text.substr(0, eq);
  if (name == "K") {
    s.parameter = Parameter::kK;
  } else if (name == "tau") {
    s.parameter = Parameter::kTau;
  } else {
    throw ValidationError("sweep parameter must be K or tau, got '" + name + "'");
  }
  std::vector<std::string> parts;
  std::istringstream in(text.substr(eq + 1));
  for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw ValidationError("sweep must look like " + name + "=START:STOP:STEP");
  s.start = parse_double(parts[0], "sweep start");
  s.stop = parse_double(parts[1], "sweep stop");
  s.step = parse_double(parts[2], "sweep step");
  if (!(s.step > 0.0)) throw ValidationError("sweep step must be positive");
  if (s.stop < s.start) throw ValidationError("sweep range must be increasing");
  if (s.parameter == Parameter::kK) {
    for (double v : {s.start, s.stop, s.step}) {
      if (v != std::floor(v)) throw ValidationError("K sweep needs integer bounds and step");
    }
    if (s.start < 1) throw ValidationError("K sweep must start at 1 or more");
  } else if (!(s.start > 0.0)) {
    throw ValidationError("tau sweep must start above 0");
  }
  return s;
}

std::vector<double> SweepSpec::values() const {
  const auto count = static_cast<Index>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

std::string SweepSpec::to_string() const {
  return std::string(parameter == Parameter::kK ? "K" : "tau") + "=" + format_number(start) + ":" +
         format_number(stop) + ":" + format_number(step);
}

void RunManifest::validate() const {
  if (input_path.has_value() == generator.has_value()) {
    throw ValidationError("give exactly one of an input file and a generator");
  }
  if (runs < 1) throw ValidationError("runs must be at least 1");
  if (config.tau && !(*config.tau > 0.0)) throw ValidationError("tau must be positive");
  if (config.M < 1) throw ValidationError("M must be at least 1");
  if (!(config.eta > 0.0)) throw ValidationError("eta must be positive");
  if (config.K && *config.K < 1) throw ValidationError("K must be at least 1");
  if (!config.kind.is_signless()) throw ValidationError("the operator must be signless");
  if (sweep && sweep->parameter == SweepSpec::Parameter::kK &&
      config.solver != SolverKind::kSpectral) {
    throw ValidationError("a K sweep needs the spectral solver");
  }
}

RunManifest RunManifest::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("manifest: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("manifest must be a JSON object");
  static const char* known[] = {"input", "gen",     "merge_policy", "graph_id", "laplacian", "solver",
                                "tau",   "K",       "M",            "eta",      "runs",      "seed",
                                "sweep", "max_iter", "epsilon",     "dense_cap", "threads"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ValidationError("manifest: unknown key '" + key + "'");
    }
  }
  RunManifest m;
  try {
    if (j.contains("seed")) m.config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("input")) m.input_path = j["input"].get<std::string>();
    if (j.contains("gen")) m.generator = GenSpec::parse(j["gen"].get<std::string>(), m.config.seed);
    if (j.contains("merge_policy")) m.merge_policy = parse_merge_policy(j["merge_policy"].get<std::string>());
    if (j.contains("graph_id")) m.graph_id = j["graph_id"].get<std::string>();
    if (j.contains("laplacian")) m.config.kind = parse_operator_kind(j["laplacian"].get<std::string>());
    if (j.contains("solver")) m.config.solver = parse_solver_kind(j["solver"].get<std::string>());
    if (j.contains("tau")) m.config.tau = j["tau"].get<double>();
    if (j.contains("K")) m.config.K = j["K"].get<Index>();
    if (j.contains("M")) m.config.M = j["M"].get<Index>();
    if (j.contains("eta")) m.config.eta = j["eta"].get<double>();
    if (j.contains("runs")) m.runs = j["runs"].get<Index>();
    if (j.contains("sweep")) m.sweep = SweepSpec::parse(j["sweep"].get<std::string>());
    if (j.contains("max_iter")) m.config.max_iterations = j["max_iter"].get<int>();
    if (j.contains("epsilon")) m.config.epsilon = j["epsilon"].get<double>();
    if (j.contains("dense_cap")) m.config.dense_cap = j["dense_cap"].get<Index>();
    if (j.contains("threads")) m.threads = j["threads"].get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_row(const ResultRow& r) {
  if (!(r.best >= r.avg && r.avg >= r.least)) {
    throw NumericalError("result row violates best >= avg >= least");
  }
  std::ostringstream os;
  os << csv_field(r.graph) << ',' << r.n << ',' << r.m << ',' << r.op << ',' << r.solver << ','
     << format_number(r.tau) << ',' << r.K << ',' << r.M << ',' << r.seed << ','
     << format_number(r.best) << ',' << format_number(r.avg) << ',' << format_number(r.least)
     << ',' << format_number(r.iters) << ',' << format_number(r.time_s) << ',' << r.reason;
  return os.str();
}

InputGraph load_input(const RunManifest& manifest, bool drop_isolated) {
  InputGraph out;
  if (manifest.input_path) {
    LoadedGraph loaded = load_edge_list_file(*manifest.input_path, manifest.merge_policy);
    out.graph = std::move(loaded.graph);
    out.original_ids = std::move(loaded.original_ids);
    out.id = std::filesystem::path(*manifest.input_path).filename().string();
  } else if (manifest.generator) {
    out.graph = generate(*manifest.generator);
    out.original_ids.resize(static_cast<std::size_t>(out.graph.num_vertices()));
    std::iota(out.original_ids.begin(), out.original_ids.end(), std::uint64_t{0});
    out.id = manifest.generator->to_string();
  } else {
    throw ValidationError("no input graph");
  }
  if (!manifest.graph_id.empty()) out.id = manifest.graph_id;
  if (drop_isolated && out.graph.has_isolated_vertices()) {
    std::vector<Index> kept;
    out.graph = remove_isolated_nodes(out.graph, &kept);
    std::vector<std::uint64_t> ids;
    ids.reserve(kept.size());
    for (Index v : kept) ids.push_back(out.original_ids[v]);
    out.original_ids = std::move(ids);
  }
  return out;
}

RunOutput cmd_run(const RunManifest& manifest, const InputGraph& input) {
  manifest.validate();
  std::vector<std::optional<double>> points{std::nullopt};
  if (manifest.sweep) {
    points.clear();
    for (double v : manifest.sweep->values()) points.emplace_back(v);
  }

  RunOutput out;
  for (const auto& point : points) {
    MboConfig config = manifest.config;
    if (point) {
      if (manifest.sweep->parameter == SweepSpec::Parameter::kK) {
        config.K = static_cast<Index>(*point);
      } else {
        config.tau = *point;
      }
    }
    const auto start = std::chrono::steady_clock::now();
    const MboSolver solver(input.graph, config);
    MultiRunSummary s = multi_run(solver, manifest.runs, manifest.threads);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const MboConfig& used = solver.config();
    const bool spectral = used.solver == SolverKind::kSpectral;
    ResultRow row;
    row.graph = input.id;
    row.n = input.graph.num_vertices();
    row.m = input.graph.num_edges();
    row.op = used.kind.name();
    row.solver = solver_name(used.solver);
    row.tau = *used.tau;
    row.K = spectral ? *used.K : 0;
    row.M = spectral ? 0 : used.M;
    row.seed = used.seed;
    row.best = s.best;
    row.avg = s.avg;
    row.least = s.least;
    row.iters = static_cast<double>(std::accumulate(s.iterations.begin(), s.iterations.end(), Index{0})) /
                static_cast<double>(s.iterations.size());
    row.time_s = seconds;
    row.reason = termination_name(s.reasons[s.best_run]);
    out.rows.push_back(row);
    out.best_trace = std::move(s.best_trace);
  }
  return out;
}

void write_trace(std::ostream& out, const MboTrace& trace) {
  out << "iteration,energy\n";
  out << 0 << ',' << format_number(trace.initial_energy) << '\n';
  for (const auto& rec : trace.records) out << rec.iteration << ',' << format_number(rec.energy) << '\n';
}

CsvAppender::CsvAppender(std::string path) : path_(std::move(path)) {}

void CsvAppender::append(const ResultRow& row) {
  const std::string line = format_row(row);
  std::lock_guard lock(mutex_);
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path_, ec) || std::filesystem::file_size(path_, ec) == 0;
  std::ofstream f(path_, std::ios::app);
  if (!f) throw IoError("cannot write '" + path_ + "'");
  if (fresh) f << kCsvHeader << '\n';
  f << line << '\n';
  if (!f) throw IoError("write to '" + path_ + "' failed");
}

OracleOutput cmd_oracle(const InputGraph& input, Index cap, unsigned threads) {
  OracleOutput out;
  out.result = brute_force_maxcut(input.graph, 0, threads, cap);
  out.original_ids = input.original_ids;
  return out;
}

void write_witness(std::ostream& out, const OracleOutput& oracle) {
  out << "vertex,side\n";
  const auto& w = oracle.result.witness;
  for (Index i = 0; i < w.size(); ++i) {
    out << oracle.original_ids[i] << ',' << (w[i] > 0.0 ? 1 : -1) << '\n';
  }
}

Graph cmd_generate(const GenSpec& spec, std::ostream& out, bool allow_empty) {
  Graph g = generate(spec);
  if (g.num_edges() == 0 && !allow_empty) {
    throw ValidationError("generated graph has no edges (pass --allow-empty to write it anyway)");
  }
  write_edge_list(out, g);
  if (!out) throw IoError("writing the edge list failed");
  return g;
}

}  // namespace smbo
