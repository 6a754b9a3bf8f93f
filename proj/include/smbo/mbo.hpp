#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smbo/diffusion.hpp"

namespace smbo {

/// Parameters of one thresholding run. Unset optionals take the defaults
/// documented on `resolve_defaults`.
struct MboConfig {
  OperatorKind kind = kL1Plus;
  SolverKind solver = SolverKind::kSpectral;
  std::optional<double> tau;
  std::optional<Index> K;
  Index M = 100;
  double eta = 1e-8;
  int max_iterations = 300;
  std::uint64_t seed = 0;
  double epsilon = 1.0;  // only used for the reported energy
  Index dense_cap = kDefaultDenseCap;
  bool record_iterates = false;
  LanczosOptions lanczos;
};

enum class Termination { kTolerance, kMaxIterations, kTrivial, kPinned };

std::string termination_name(Termination t);

struct IterationRecord {
  Index iteration = 0;
  double cut = 0.0;
  double energy = 0.0;           // f_eps^+(mu^j)
  double relative_change = 0.0;  // ||mu^j - mu^{j-1}||^2 / ||mu^j||^2
};

struct MboTrace {
  double initial_cut = 0.0;
  double initial_energy = 0.0;
  std::vector<IterationRecord> records;  // j = 1..N
  std::vector<NodeFunction> iterates;    // mu^1..mu^N when recording is on
  NodeFunction best;                     // mu^j achieving best_cut
  NodeFunction last;                     // mu^N
  double best_cut = 0.0;
  Index best_iteration = 0;
  Termination reason = Termination::kMaxIterations;

  Index iterations() const noexcept { return static_cast<Index>(records.size()); }
};

/// T(x) = 1 if x > 0, -1 if x <= 0, componentwise.
NodeFunction threshold(const NodeFunction& u);

/// True when ||u||_inf <= tol: the diffused state collapsed to zero.
bool detect_trivial(const NodeFunction& u, double tol = 1e-13);

/// Right-hand side of the pinning condition,
///   lambda_n^{-1} log(1 + d_-^{r/2} / ||chi_V||_V);
/// tau below it leaves every binary initial condition unchanged.
/// Uses r = 1 for the symmetric normalisation. lambda_n is 2 for Delta_1^+ and
/// Delta_s^+; for other operators it is computed unless supplied.
double pinning_bound(const Graph& g, const OperatorKind& kind,
                     std::optional<double> lambda_n = std::nullopt);

/// Fills in K = clamp(floor(n/100), 1, n) and tau = 20 for Delta_1^+/Delta_s^+,
/// tau = 40 / lambda_n for other operators (lambda_n computed if needed).
MboConfig resolve_defaults(const Graph& g, MboConfig config,
                           std::optional<double> lambda_n = std::nullopt);

/// Prepared solver: eigenpairs or operators are built once and shared by
/// every run. `run` is const and safe to call concurrently.
class MboSolver {
 public:
  MboSolver(const Graph& g, MboConfig config);

  const Graph& graph() const noexcept { return *graph_; }
  const MboConfig& config() const noexcept { return config_; }
  const DiffusionSolver& diffusion() const noexcept { return *diffusion_; }
  std::optional<double> largest_eigenvalue() const noexcept { return lambda_n_; }

  MboTrace run(const NodeFunction& mu0) const;

 private:
  const Graph* graph_;
  MboConfig config_;
  std::optional<double> lambda_n_;
  std::unique_ptr<DiffusionSolver> diffusion_;
};

/// One run from a binary initial condition.
MboTrace mbo_run(const Graph& g, const MboConfig& config, const NodeFunction& mu0);

/// Uniform random element of {-1,1}^n, a pure function of (seed, run).
NodeFunction random_initial_condition(Index n, std::uint64_t seed, Index run);

struct MultiRunSummary {
  double best = 0.0;
  double avg = 0.0;
  double least = 0.0;
  std::vector<double> sizes;  // s* per run
  std::vector<Index> iterations;
  std::vector<Termination> reasons;
  Index best_run = 0;
  MboTrace best_trace;
  double wall_seconds = 0.0;
  std::string warning;
};

/// `runs` independent runs from random initial conditions, executed on
/// `threads` workers (0: hardware concurrency). Results do not depend on the
/// thread count.
MultiRunSummary multi_run(const Graph& g, const MboConfig& config, Index runs,
                          unsigned threads = 0);
MultiRunSummary multi_run(const MboSolver& solver, Index runs, unsigned threads = 0);

}  // namespace smbo
