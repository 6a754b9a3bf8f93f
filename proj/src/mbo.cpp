#include "smbo/mbo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "smbo/functionals.hpp"
#include "smbo/random.hpp"

namespace smbo {

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::kTolerance:
      return "tolerance";
    case Termination::kMaxIterations:
      return "max_iterations";
    case Termination::kTrivial:
      return "trivial";
    case Termination::kPinned:
      return "pinned";
  }
  return "unknown";
}

NodeFunction threshold(const NodeFunction& u) {
  return u.unaryExpr([](double x) { return x > 0.0 ? 1.0 : -1.0; });
}

bool detect_trivial(const NodeFunction& u, double tol) {
  return u.size() == 0 || u.lpNorm<Eigen::Infinity>() <= tol;
}

namespace {

bool has_unit_spectrum_bound(const OperatorKind& kind) {
  return kind.is_signless() && (kind.is_symmetric() || kind.r == 1.0);
}

double resolve_lambda_n(const Graph& g, const OperatorKind& kind, std::optional<double> given,
                        const LanczosOptions& lanczos) {
  if (given) return *given;
  if (has_unit_spectrum_bound(kind)) return 2.0;
  return largest_eigenvalue(g, kind, lanczos);
}

}  // namespace

double pinning_bound(const Graph& g, const OperatorKind& kind, std::optional<double> lambda_n) {
  const double lam = resolve_lambda_n(g, kind, lambda_n, {});
  const double r = kind.is_symmetric() ? 1.0 : kind.r;
  double chi_norm_sq = 0.0;
  for (Index i = 0; i < g.num_vertices(); ++i) {
    chi_norm_sq += r == 0.0 ? 1.0 : std::pow(g.degree(i), r);
  }
  const double d_min = g.min_degree();
  const double dr2 = r == 0.0 ? 1.0 : std::pow(d_min, 0.5 * r);
  return std::log1p(dr2 / std::sqrt(chi_norm_sq)) / lam;
}

MboConfig resolve_defaults(const Graph& g, MboConfig config, std::optional<double> lambda_n) {
  const Index n = g.num_vertices();
  if (!config.K) config.K = std::clamp<Index>(n / 100, 1, std::max<Index>(n, 1));
  if (!config.tau) {
    config.tau = has_unit_spectrum_bound(config.kind)
                     ? 20.0
                     : 40.0 / resolve_lambda_n(g, config.kind, lambda_n, config.lanczos);
  }
  return config;
}

MboSolver::MboSolver(const Graph& g, MboConfig config) : graph_(&g), config_(std::move(config)) {
  if (g.num_vertices() == 0) throw ValidationError("graph has no vertices");
  if (g.has_isolated_vertices()) {
    throw ValidationError("graph has isolated vertices; remove them before running");
  }
  config_.kind.validate();
  if (!config_.kind.is_signless()) {
    throw ValidationError("the thresholding scheme needs a signless operator");
  }
  if (!(config_.eta > 0.0)) throw ValidationError("stopping tolerance eta must be positive");
  if (config_.max_iterations < 1) throw ValidationError("max iterations must be at least 1");
  if (!(config_.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (config_.lanczos.seed == 0) config_.lanczos.seed = config_.seed;

  const Index n = g.num_vertices();
  if (config_.K && (*config_.K < 1 || *config_.K > n)) {
    throw ValidationError("K must lie in [1, n]");
  }
  if (has_unit_spectrum_bound(config_.kind)) lambda_n_ = 2.0;

  if (config_.solver == SolverKind::kSpectral) {
    const Index k = config_.K.value_or(std::clamp<Index>(n / 100, 1, n));
    SpectralBasis basis;
    if (has_unit_spectrum_bound(config_.kind)) {
      basis = smallest_signless_eigenpairs(g, config_.kind, k, config_.lanczos);
    } else if (n <= config_.dense_cap) {
      basis = truncate(dense_signless_eigenpairs(g, config_.kind, config_.dense_cap), k);
      lambda_n_ = basis.largest_eigenvalue;
    } else {
      basis = smallest_eigenpairs(g, config_.kind, k, config_.lanczos);
    }
    if (!lambda_n_ && !config_.tau) lambda_n_ = smbo::largest_eigenvalue(g, config_.kind, config_.lanczos);
    config_ = resolve_defaults(g, config_, lambda_n_);
    diffusion_ = std::make_unique<SpectralDiffusion>(g, std::move(basis), *config_.tau);
    return;
  }

  if (!config_.tau && !lambda_n_) lambda_n_ = smbo::largest_eigenvalue(g, config_.kind, config_.lanczos);
  config_ = resolve_defaults(g, config_, lambda_n_);
  if (config_.solver == SolverKind::kEulerExplicit) {
    diffusion_ = std::make_unique<ExplicitEulerDiffusion>(g, config_.kind, *config_.tau, config_.M,
                                                          lambda_n_);
  } else {
    diffusion_ = std::make_unique<ImplicitEulerDiffusion>(g, config_.kind, *config_.tau, config_.M);
  }
}

MboTrace MboSolver::run(const NodeFunction& mu0) const {
  const Graph& g = *graph_;
  if (mu0.size() != g.num_vertices()) throw ValidationError("initial condition length mismatch");
  if (!is_binary(mu0, 0.0)) throw ValidationError("initial condition must lie in {-1,1}^n");

  MboTrace trace;
  trace.initial_cut = cut_from_function(g, mu0).size;
  trace.initial_energy = signless_gl_energy(g, mu0, config_.epsilon);
  trace.best_cut = -1.0;

  NodeFunction previous = mu0;
  const double norm_sq = static_cast<double>(g.num_vertices());  // ||mu||^2 for binary mu
  for (int j = 1; j <= config_.max_iterations; ++j) {
    NodeFunction diffused;
    try {
      diffused = diffusion_->diffuse(previous);
    } catch (const NumericalError& e) {
      throw NumericalError("iteration " + std::to_string(j) + ": " + e.what());
    }
    const bool trivial = detect_trivial(diffused);
    NodeFunction mu = threshold(diffused);

    IterationRecord rec;
    rec.iteration = j;
    rec.cut = cut_from_function(g, mu).size;
    rec.energy = signless_gl_energy(g, mu, config_.epsilon);
    rec.relative_change = (mu - previous).squaredNorm() / norm_sq;
    trace.records.push_back(rec);
    if (config_.record_iterates) trace.iterates.push_back(mu);
    if (rec.cut > trace.best_cut) {
      trace.best_cut = rec.cut;
      trace.best_iteration = j;
      trace.best = mu;
    }

    if (trivial) {
      trace.reason = Termination::kTrivial;
      trace.last = std::move(mu);
      return trace;
    }
    if (rec.relative_change < config_.eta) {
      trace.reason = (j == 1 && mu == mu0) ? Termination::kPinned : Termination::kTolerance;
      trace.last = std::move(mu);
      return trace;
    }
    previous = std::move(mu);
  }
  trace.reason = Termination::kMaxIterations;
  trace.last = std::move(previous);
  return trace;
}

MboTrace mbo_run(const Graph& g, const MboConfig& config, const NodeFunction& mu0) {
  return MboSolver(g, config).run(mu0);
}

NodeFunction random_initial_condition(Index n, std::uint64_t seed, Index run) {
  const CounterRng rng(hash64(seed, streams::kInitialCondition, static_cast<std::uint64_t>(run)),
                       streams::kInitialCondition);
  NodeFunction mu(n);
  for (Index i = 0; i < n; ++i) mu[i] = rng.sign(static_cast<std::uint64_t>(i));
  return mu;
}

MultiRunSummary multi_run(const MboSolver& solver, Index runs, unsigned threads) {
  if (runs < 1) throw ValidationError("runs must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const Index n = solver.graph().num_vertices();
  const std::uint64_t seed = solver.config().seed;

  std::vector<MboTrace> traces(static_cast<std::size_t>(runs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(runs));
  std::atomic<Index> next{0};
  auto worker = [&] {
    for (Index r = next++; r < runs; r = next++) {
      try {
        traces[r] = solver.run(random_initial_condition(n, seed, r));
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<Index>(threads, runs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MultiRunSummary s;
  s.warning = solver.diffusion().warning();
  double total = 0.0;
  for (Index r = 0; r < runs; ++r) {
    const MboTrace& t = traces[r];
    s.sizes.push_back(t.best_cut);
    s.iterations.push_back(t.iterations());
    s.reasons.push_back(t.reason);
    total += t.best_cut;
  }
  s.best_run = std::max_element(s.sizes.begin(), s.sizes.end()) - s.sizes.begin();
  s.best = s.sizes[s.best_run];
  s.least = *std::min_element(s.sizes.begin(), s.sizes.end());
  s.avg = total / static_cast<double>(runs);
  // Guard the ordering best >= avg >= least against summation rounding.
  s.avg = std::clamp(s.avg, s.least, s.best);
  s.best_trace = std::move(traces[s.best_run]);
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

MultiRunSummary multi_run(const Graph& g, const MboConfig& config, Index runs, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const MboSolver solver(g, config);
  MultiRunSummary s = multi_run(solver, runs, threads);
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace smbo
