#pragma once

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "smbo/generators.hpp"
#include "smbo/mbo.hpp"
#include "smbo/oracle.hpp"

namespace smbo {

/// "K=5:100:5" or "tau=5:500:5": start, stop (inclusive), step.
struct SweepSpec {
  enum class Parameter { kK, kTau };
  Parameter parameter = Parameter::kK;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  static SweepSpec parse(const std::string& text);
  std::vector<double> values() const;
  std::string to_string() const;
};

struct RunManifest {
  std::optional<std::string> input_path;
  std::optional<GenSpec> generator;
  MergePolicy merge_policy = MergePolicy::kError;
  std::string graph_id;  // empty: derived from the input
  MboConfig config;
  Index runs = 50;
  std::optional<SweepSpec> sweep;
  unsigned threads = 0;

  void validate() const;

  /// Keys: input, gen, merge_policy, graph_id, laplacian, solver, tau, K, M,
  /// eta, runs, seed, sweep, max_iter, epsilon, dense_cap, threads.
  static RunManifest from_json_text(const std::string& text);
};

struct ResultRow {
  std::string graph;
  Index n = 0;
  Index m = 0;
  std::string op;
  std::string solver;
  double tau = 0.0;
  Index K = 0;
  Index M = 0;
  std::uint64_t seed = 0;
  double best = 0.0;
  double avg = 0.0;
  double least = 0.0;
  double iters = 0.0;  // mean iteration count over runs
  double time_s = 0.0;
  std::string reason;  // termination of the run that produced `best`
};

inline constexpr const char* kCsvHeader =
    "graph,n,m,operator,solver,tau,K,M,seed,best,avg,least,iters,time_s,reason";

/// Shortest decimal that round-trips.
std::string format_number(double x);

/// One CSV line without the newline. Throws if best >= avg >= least fails.
std::string format_row(const ResultRow& row);

struct InputGraph {
  Graph graph;
  std::string id;
  std::vector<std::uint64_t> original_ids;  // per vertex of `graph`
};

/// Reads or generates the manifest's graph. With `drop_isolated`, vertices of
/// degree zero are removed (and `original_ids` follows).
InputGraph load_input(const RunManifest& manifest, bool drop_isolated);

struct RunOutput {
  std::vector<ResultRow> rows;
  MboTrace best_trace;  // of the last row
};

/// Runs the manifest on `input`: one row, or one per sweep value.
RunOutput cmd_run(const RunManifest& manifest, const InputGraph& input);

/// "iteration,energy" rows for j = 0..N.
void write_trace(std::ostream& out, const MboTrace& trace);

/// Appends rows to a CSV file, writing the header when the file is new or
/// empty. Safe to share between threads.
class CsvAppender {
 public:
  explicit CsvAppender(std::string path);
  void append(const ResultRow& row);

 private:
  std::string path_;
  std::mutex mutex_;
};

struct OracleOutput {
  OracleResult result;
  std::vector<std::uint64_t> original_ids;
};

OracleOutput cmd_oracle(const InputGraph& input, Index cap, unsigned threads);

/// "vertex,side" rows using original ids.
void write_witness(std::ostream& out, const OracleOutput& oracle);

/// Generates the graph and writes it as an edge list. An edgeless result is
/// an error unless `allow_empty`.
Graph cmd_generate(const GenSpec& spec, std::ostream& out, bool allow_empty);

}  // namespace smbo
