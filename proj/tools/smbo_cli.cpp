// smbo: approximate maximum cuts with signless MBO threshold dynamics.
//
//   smbo run --input graph.txt --laplacian l1plus --runs 50 --out results.csv
//   smbo run --gen er:200:0.1 --sweep K=5:100:5
//   smbo oracle --input small.txt --witness-out cut.csv
//   smbo generate --gen modular:100:4:0.1:0.9 --seed 3 --out g.txt

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "smbo/bench.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct InputFlags {
  std::string input;
  std::string gen;
  std::string merge = "error";
  std::string graph_id;
  std::uint64_t seed = 0;
};

void add_input_flags(CLI::App* cmd, InputFlags& f) {
  auto* in = cmd->add_option("--input", f.input, "edge-list file");
  auto* gen = cmd->add_option("--gen", f.gen, "generator, e.g. er:N:P or modular:N:C:P:R[+reweight:LO:HI]");
  in->excludes(gen);
  cmd->add_option("--merge-policy", f.merge, "duplicate edges: error, sum or max")
      ->check(CLI::IsMember({"error", "sum", "max"}));
  cmd->add_option("--graph-id", f.graph_id, "graph column in the results");
  cmd->add_option("--seed", f.seed, "seed for generators and initial conditions");
}

void apply_input_flags(const CLI::App* cmd, const InputFlags& f, smbo::RunManifest& m) {
  if (cmd->count("--seed")) m.config.seed = f.seed;
  if (cmd->count("--input")) {
    m.input_path = f.input;
    m.generator.reset();
  }
  if (cmd->count("--gen")) {
    m.generator = smbo::GenSpec::parse(f.gen, m.config.seed);
    m.input_path.reset();
  } else if (m.generator && cmd->count("--seed")) {
    m.generator->seed = m.config.seed;
  }
  if (cmd->count("--merge-policy")) m.merge_policy = smbo::parse_merge_policy(f.merge);
  if (cmd->count("--graph-id")) m.graph_id = f.graph_id;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw smbo::IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw smbo::IoError("cannot write '" + path + "'");
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate maximum cuts with signless MBO threshold dynamics"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run the MBO scheme and emit CSV results");
  InputFlags run_in;
  add_input_flags(run, run_in);
  std::string manifest_path, laplacian = "l1plus", solver = "spectral", sweep, trace_out, out_path;
  double tau = 0, eta = 1e-8, epsilon = 1;
  smbo::Index K = 0, M = 100, runs = 50, dense_cap = smbo::kDefaultDenseCap;
  int max_iter = 300;
  unsigned threads = 0;
  run->add_option("--manifest", manifest_path, "JSON run manifest; flags given here override it");
  run->add_option("--laplacian", laplacian, "signless operator")
      ->check(CLI::IsMember({"l0plus", "l1plus", "lsplus"}));
  run->add_option("--solver", solver, "diffusion solver")
      ->check(CLI::IsMember({"spectral", "euler", "implicit"}));
  run->add_option("--tau", tau, "diffusion time (default 20, or 40/lambda_n for l0plus)");
  run->add_option("--K", K, "number of eigenpairs (default floor(n/100))");
  run->add_option("--M", M, "Euler steps per diffusion");
  run->add_option("--eta", eta, "stopping tolerance");
  run->add_option("--runs", runs, "random initial conditions");
  run->add_option("--sweep", sweep, "K=START:STOP:STEP or tau=START:STOP:STEP");
  run->add_option("--trace-out", trace_out, "energy trace CSV of the best run");
  run->add_option("--out", out_path, "append rows to this CSV (default: stdout)");
  run->add_option("--max-iter", max_iter, "iteration cap per run");
  run->add_option("--epsilon", epsilon, "epsilon of the reported energy");
  run->add_option("--dense-cap", dense_cap, "largest n for dense eigensolves");
  run->add_option("--threads", threads, "worker threads (0: all cores)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact maximum cut by enumeration");
  InputFlags oracle_in;
  add_input_flags(oracle, oracle_in);
  smbo::Index cap = smbo::kBruteForceCap;
  std::string witness_out;
  unsigned oracle_threads = 0;
  oracle->add_option("--cap", cap, "largest n accepted");
  oracle->add_option("--witness-out", witness_out, "write the optimal partition as CSV");
  oracle->add_option("--threads", oracle_threads, "worker threads (0: all cores)");

  // generate
  auto* gen = app.add_subcommand("generate", "write a random graph as an edge list");
  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 0;
  bool allow_empty = false;
  gen->add_option("--gen", gen_spec, "generator spec")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output file (default: stdout)");
  gen->add_flag("--allow-empty", allow_empty, "write edgeless graphs instead of failing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) {
      smbo::RunManifest m;
      if (!manifest_path.empty()) m = smbo::RunManifest::from_json_text(read_file(manifest_path));
      apply_input_flags(run, run_in, m);
      if (run->count("--laplacian")) m.config.kind = smbo::parse_operator_kind(laplacian);
      if (run->count("--solver")) m.config.solver = smbo::parse_solver_kind(solver);
      if (run->count("--tau")) m.config.tau = tau;
      if (run->count("--K")) m.config.K = K;
      if (run->count("--M")) m.config.M = M;
      if (run->count("--eta")) m.config.eta = eta;
      if (run->count("--runs")) m.runs = runs;
      if (run->count("--sweep")) m.sweep = smbo::SweepSpec::parse(sweep);
      if (run->count("--max-iter")) m.config.max_iterations = max_iter;
      if (run->count("--epsilon")) m.config.epsilon = epsilon;
      if (run->count("--dense-cap")) m.config.dense_cap = dense_cap;
      if (run->count("--threads")) m.threads = threads;
      m.validate();

      const smbo::InputGraph input = smbo::load_input(m, true);
      const smbo::RunOutput result = smbo::cmd_run(m, input);
      if (out_path.empty()) {
        std::cout << smbo::kCsvHeader << '\n';
        for (const auto& row : result.rows) std::cout << smbo::format_row(row) << '\n';
      } else {
        smbo::CsvAppender csv(out_path);
        for (const auto& row : result.rows) csv.append(row);
      }
      if (!trace_out.empty()) {
        auto f = open_out(trace_out);
        smbo::write_trace(f, result.best_trace);
      }
    } else if (oracle->parsed()) {
      smbo::RunManifest m;
      apply_input_flags(oracle, oracle_in, m);
      if (m.input_path.has_value() == m.generator.has_value()) {
        throw smbo::ValidationError("give exactly one of --input and --gen");
      }
      const smbo::InputGraph input = smbo::load_input(m, false);
      const smbo::OracleOutput result = smbo::cmd_oracle(input, cap, oracle_threads);
      std::cout << "optimum " << smbo::format_number(result.result.optimum) << '\n'
                << "enumerated " << result.result.enumerated << '\n';
      if (!witness_out.empty()) {
        auto f = open_out(witness_out);
        smbo::write_witness(f, result);
      }
    } else if (gen->parsed()) {
      const smbo::GenSpec spec = smbo::GenSpec::parse(gen_spec, gen_seed);
      if (gen_out.empty()) {
        smbo::cmd_generate(spec, std::cout, allow_empty);
      } else {
        auto f = open_out(gen_out);
        smbo::cmd_generate(spec, f, allow_empty);
      }
    }
  } catch (const smbo::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
