// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>

#include "smbo/functionals.hpp"
#include "smbo/generators.hpp"
#include "smbo/mbo.hpp"
#include "smbo/oracle.hpp"
#include "support.hpp"

using namespace smbo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 20 graphs, n <= 200, p in {0.1, 0.5}, isolated vertices removed.
std::vector<Graph> spectral_corpus() {
  std::mt19937_64 rng(20240601);
  std::vector<Graph> out;
  for (int t = 0; t < 20; ++t) {
    const Index n = 40 + 16 * (t % 10) + (t % 3);  // 40..185
    out.push_back(fixtures::random_graph(rng, n, t % 2 == 0 ? 0.1 : 0.5, t % 4 >= 2));
  }
  return out;
}

Outcome spectral_mirror() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const Graph& g : spectral_corpus()) {
    for (auto [plus, minus] : {std::pair{kL1Plus, kL1}, std::pair{kLsPlus, kLs}}) {
      const Eigen::VectorXd a = dense_eigenpairs(g, plus).lambdas;
      const Eigen::VectorXd b = dense_eigenpairs(g, minus).lambdas;
      const Index n = a.size();
      for (Index k = 0; k < n; ++k) worst = std::max(worst, std::abs(a[k] - (2.0 - b[n - 1 - k])));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && secs < 10.0, fmt("max |lambda+ - (2 - lambda)| = %.2e, %.2f s (limit 1e-8, 10 s)", worst, secs)};
}

Outcome eigenvalue_range() {
  double lo = 1e300, hi = -1e300;
  for (const Graph& g : spectral_corpus()) {
    for (const auto& kind : {kL1, kL1Plus, kLs, kLsPlus}) {
      const Eigen::VectorXd l = dense_eigenpairs(g, kind).lambdas;
      lo = std::min(lo, l.minCoeff());
      hi = std::max(hi, l.maxCoeff());
    }
  }
  return {lo >= -1e-8 && hi <= 2.0 + 1e-8, fmt("eigenvalues in [%.3e, %.15f]", lo, hi)};
}

Outcome structure_detection() {
  std::mt19937_64 rng(77);
  int ok = 0;
  std::string first_failure;
  for (int t = 0; t < 50; ++t) {
    std::vector<Graph> parts;
    Index expected_bipartite = 0;
    const int count = 2 + static_cast<int>(rng() % 4);
    for (int c = 0; c < count; ++c) {
      switch (rng() % 5) {
        case 0:
          parts.push_back(fixtures::cycle(2 * (2 + static_cast<Index>(rng() % 8))));
          ++expected_bipartite;
          break;
        case 1:
          parts.push_back(fixtures::random_bipartite(rng, 2 + rng() % 6, 2 + rng() % 6, 0.5));
          ++expected_bipartite;
          break;
        case 2:
          parts.push_back(fixtures::path(2 + static_cast<Index>(rng() % 7)));
          ++expected_bipartite;
          break;
        case 3:
          parts.push_back(fixtures::cycle(2 * (1 + static_cast<Index>(rng() % 8)) + 1));
          break;
        default: {
          // Odd cycle with chords.
          const Index n = 5 + 2 * static_cast<Index>(rng() % 4);
          std::vector<WeightedEdge> e;
          for (Index i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
          e.push_back({0, 2, 1.0});
          parts.push_back(Graph::from_edges(n, e));
        }
      }
    }
    const Graph g = fixtures::disjoint_union(parts);
    const auto bfs = fixtures::count_components(g);
    const Index plus = count_zero_modes(dense_eigenpairs(g, kL1Plus), 1e-8);
    const Index standard = count_zero_modes(dense_eigenpairs(g, kL1), 1e-8);
    const bool good = plus == expected_bipartite && bfs.bipartite == expected_bipartite &&
                      standard == static_cast<Index>(parts.size()) && bfs.components == standard;
    if (good) {
      ++ok;
    } else if (first_failure.empty()) {
      first_failure = fmt("; graph %d: zero modes %lld/%lld, expected %lld/%zu", t, (long long)plus,
                          (long long)standard, (long long)expected_bipartite, parts.size());
    }
  }
  return {ok == 50, fmt("%d/50 graphs with exact zero-mode counts", ok) + first_failure};
}

Outcome cut_identities() {
  std::mt19937_64 rng(4242);
  double worst_lap = 0, worst_f = 0, worst_tv = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = 5 + static_cast<Index>(rng() % 60);
    const Graph g = fixtures::random_graph(rng, n, 0.05 + 0.5 * static_cast<double>(rng() % 100) / 100.0, t % 2 == 1);
    const NodeFunction u = fixtures::random_binary(rng, g.num_vertices());
    const double s = fixtures::naive_cut(g, u);
    double ordered = 0.0;
    for (auto e : g.edge_list()) ordered += 2.0 * e.weight;
    const double scale = std::max(1.0, ordered);
    for (double r : {0.0, 0.5, 1.0}) {
      worst_lap = std::max(worst_lap, std::abs(cut_size_via_laplacian(g, u, r) - s) / std::max(1.0, s));
    }
    worst_f = std::max(worst_f, std::abs(signless_gl_energy(g, u, 0.7) - (2 * ordered - 4 * s)) / scale);
    worst_tv = std::max(worst_tv, std::abs(signless_total_variation(g, u) - (ordered - 2 * s)) / scale);
  }
  return {worst_lap <= 1e-10 && worst_f <= 1e-10 && worst_tv <= 1e-10,
          fmt("relative errors: laplacian cut %.1e, f_eps+ %.1e, TV+ %.1e (limit 1e-10)", worst_lap, worst_f, worst_tv)};
}

std::vector<Graph> pinning_fixtures() {
  std::mt19937_64 rng(5);
  return {fixtures::complete(2),
          fixtures::cycle(7),
          fixtures::petersen(),
          fixtures::complete_bipartite(3, 6),
          fixtures::random_graph(rng, 30, 0.2),
          fixtures::random_graph(rng, 60, 0.1, true),
          fixtures::random_graph(rng, 80, 0.3),
          fixtures::random_bipartite(rng, 20, 25, 0.2),
          fixtures::disjoint_union({fixtures::cycle(5), fixtures::complete(4)}),
          fixtures::random_graph(rng, 100, 0.05, true)};
}

Outcome pinning() {
  const auto t0 = std::chrono::steady_clock::now();
  int pinned = 0, total = 0;
  for (const Graph& g : pinning_fixtures()) {
    for (const auto& kind : {kL1Plus, kLsPlus, kL0Plus}) {
      MboConfig c;
      c.kind = kind;
      c.K = g.num_vertices();
      c.tau = 0.9 * pinning_bound(g, kind);
      c.max_iterations = 1;
      const MboSolver solver(g, c);
      for (Index run = 0; run < 100; ++run) {
        const NodeFunction mu0 = random_initial_condition(g.num_vertices(), 1234, run);
        const MboTrace t = solver.run(mu0);
        ++total;
        if (t.last == mu0 && t.reason == Termination::kPinned) ++pinned;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {pinned == total && secs < 30.0, fmt("%d/%d runs with mu1 == mu0, %.2f s (limit 30 s)", pinned, total, secs)};
}

Outcome bipartite_exactness() {
  std::mt19937_64 rng(66);
  std::vector<Graph> corpus;
  for (int t = 0; t < 8; ++t) corpus.push_back(fixtures::random_bipartite(rng, 5 + rng() % 60, 5 + rng() % 60, 0.1 + 0.1 * (t % 4)));
  for (Index n : {4, 10, 36, 64, 98, 150}) corpus.push_back(fixtures::cycle(n));
  for (auto [a, b] : {std::pair<Index, Index>{1, 5}, {2, 2}, {3, 7}, {10, 10}, {15, 40}, {50, 60}}) {
    corpus.push_back(fixtures::complete_bipartite(a, b));
  }
  int exact = 0, runs = 0, skipped = 0;
  for (const Graph& g : corpus) {
    const MboSolver solver(g, {});
    const SpectralBasis phi1 = smallest_signless_eigenpairs(g, kL1Plus, 1);
    for (Index run = 0; run < 10; ++run) {
      const NodeFunction mu0 = random_initial_condition(g.num_vertices(), 99, run);
      if (std::abs(phi1.coefficients(g, mu0)[0]) <= 1e-9) {
        ++skipped;
        continue;
      }
      ++runs;
      if (solver.run(mu0).best_cut == static_cast<double>(g.num_edges())) ++exact;
    }
  }
  return {exact == runs && corpus.size() == 20,
          fmt("%d/%d runs on %zu fixtures reach s* = |E| (%d orthogonal starts skipped)", exact, runs, corpus.size(), skipped)};
}

Outcome oracle_proximity() {
  double ratio_sum = 0.0;
  int beats = 0, ties = 0;
  for (int t = 0; t < 30; ++t) {
    const Graph g = remove_isolated_nodes(erdos_renyi(12, 0.5, 1000 + t));
    MboConfig c;
    c.K = g.num_vertices();
    c.seed = static_cast<std::uint64_t>(t);
    const MultiRunSummary s = multi_run(g, c, 50, 1);
    const double opt = brute_force_maxcut(g).optimum;
    const BaselineSummary base = random_cut_baseline(g, 50, static_cast<std::uint64_t>(t));
    ratio_sum += s.best / opt;
    if (s.best > base.best) ++beats;
    if (s.best == base.best) ++ties;
  }
  const double mean = ratio_sum / 30.0;
  return {mean >= 0.95 && beats >= 27,
          fmt("mean best/optimum %.4f (need >= 0.95); MBO best > baseline best on %d/30 (need >= 27), ties %d",
              mean, beats, ties)};
}

Outcome solver_agreement() {
  std::mt19937_64 rng(88);
  double worst_gap = 0.0, lo_ratio = 1e300, hi_ratio = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Graph g = fixtures::random_graph(rng, 10 + static_cast<Index>(rng() % 41), 0.15 + 0.05 * (t % 5), t % 2 == 0);
    const OperatorKind kind = t % 3 == 0 ? kL1Plus : (t % 3 == 1 ? kLsPlus : kL0Plus);
    const NodeFunction u0 = fixtures::random_binary(rng, g.num_vertices());
    const SpectralBasis full = dense_eigenpairs(g, kind);
    const NodeFunction ref = diffuse_spectral(full, g, u0, 1.0);
    const NodeFunction ex = diffuse_euler_explicit(kind, g, u0, 1.0, 10000);
    const NodeFunction im = diffuse_euler_implicit(kind, g, u0, 1.0, 10000);
    worst_gap = std::max({worst_gap, (ex - ref).cwiseAbs().maxCoeff(), (im - ref).cwiseAbs().maxCoeff(),
                          (ex - im).cwiseAbs().maxCoeff()});
    if (kind.is_signless() && full.lambdas.maxCoeff() * 1.0 / 100 < 2.0) {
      const double e100 = (diffuse_euler_explicit(kind, g, u0, 1.0, 100) - ref).cwiseAbs().maxCoeff();
      const double e1000 = (diffuse_euler_explicit(kind, g, u0, 1.0, 1000) - ref).cwiseAbs().maxCoeff();
      lo_ratio = std::min(lo_ratio, e100 / e1000);
      hi_ratio = std::max(hi_ratio, e100 / e1000);
    }
  }
  return {worst_gap <= 1e-3 && lo_ratio >= 8.0 && hi_ratio <= 12.0,
          fmt("max inf-norm gap %.2e at M = 1e4 (limit 1e-3); explicit error ratio M=100/M=1000 in [%.2f, %.2f] (need [8, 12])",
              worst_gap, lo_ratio, hi_ratio)};
}

Outcome adjointness() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit;
  double worst = 0.0, min_energy = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); };
  for (int t = 0; t < 100; ++t) {
    const Graph g = fixtures::random_graph(rng, 5 + static_cast<Index>(rng() % 40), 0.1 + 0.4 * unit(rng), t % 2 == 0);
    const Index n = g.num_vertices();
    const double r = t % 3 == 0 ? 0.0 : (t % 3 == 1 ? 1.0 : unit(rng));
    const double q = t % 2 == 0 ? 1.0 : unit(rng);
    const NodeFunction u = fixtures::random_vector(rng, n), v = fixtures::random_vector(rng, n);
    const EdgeFunction phi{fixtures::random_vector(rng, g.num_arcs())};

    worst = std::max(worst, rel(inner_product_e(g, gradient(g, u, q), phi, q), inner_product_v(g, u, divergence(g, phi, q, r), r)));
    worst = std::max(worst, rel(inner_product_e(g, signless_gradient(g, u, q), phi, q),
                                inner_product_v(g, u, signless_divergence(g, phi, q, r), r)));
    for (const auto& kind : {OperatorKind::standard(r), OperatorKind::signless(r)}) {
      const NodeFunction lu = apply(kind, g, u), lv = apply(kind, g, v);
      const auto grad = kind.is_signless() ? signless_gradient : gradient;
      const double uv = inner_product_v(g, u, lv, r), vu = inner_product_v(g, lu, v, r);
      const double e = inner_product_e(g, grad(g, u, q), grad(g, v, q), q);
      // Laplacians built with the same q as the gradients.
      const auto div = kind.is_signless() ? signless_divergence : divergence;
      const NodeFunction lq = div(g, grad(g, v, q), q, r);
      worst = std::max({worst, rel(uv, vu), rel(inner_product_v(g, u, lq, r), e)});
      min_energy = std::min(min_energy, inner_product_v(g, u, lu, r));
    }
    for (const auto& kind : {kLs, kLsPlus}) {
      const NodeFunction lu = apply(kind, g, u), lv = apply(kind, g, v);
      worst = std::max(worst, rel(u.dot(lv), lu.dot(v)));
      min_energy = std::min(min_energy, u.dot(lu));
    }
  }
  return {worst <= 1e-10 && min_energy >= -1e-10,
          fmt("max relative adjointness defect %.1e (limit 1e-10), min <u, Lu> = %.1e", worst, min_energy)};
}

Outcome linear_scaling() {
  struct Case {
    Graph graph;
    std::unique_ptr<ExplicitEulerDiffusion> solver;
    NodeFunction u0;
    double best = 1e300;
  };
  // Solvers point at their graph, so cases are built in place.
  std::vector<Case> cases;
  cases.reserve(3);
  for (Index n : {2000, 4000, 8000}) {
    Case& c = cases.emplace_back();
    c.graph = remove_isolated_nodes(erdos_renyi(n, 10.0 / static_cast<double>(n - 1), 5));
    c.solver = std::make_unique<ExplicitEulerDiffusion>(c.graph, kL1Plus, 20.0, 100, 2.0);
    c.u0 = random_initial_condition(c.graph.num_vertices(), 3, 0);
  }
  // Sizes interleaved within each repetition so clock drift hits all of them.
  for (int rep = 0; rep < 5; ++rep) {
    for (Case& c : cases) {
      const auto t0 = std::chrono::steady_clock::now();
      const NodeFunction u = c.solver->diffuse(c.u0);
      c.best = std::min(c.best, seconds_since(t0));
      if (!std::isfinite(u.sum())) return {false, "non-finite diffusion output"};
    }
  }
  const double r1 = cases[1].best / cases[0].best, r2 = cases[2].best / cases[1].best;
  return {r1 <= 3.0 && r2 <= 3.0,
          fmt("|E| = %lld/%lld/%lld: %.2f/%.2f/%.2f ms per diffusion, growth %.2f and %.2f per doubling (limit 3)",
              (long long)cases[0].graph.num_edges(), (long long)cases[1].graph.num_edges(),
              (long long)cases[2].graph.num_edges(), 1e3 * cases[0].best, 1e3 * cases[1].best,
              1e3 * cases[2].best, r1, r2)};
}

Outcome er_statistics() {
  std::vector<double> m;
  for (std::uint64_t seed = 0; seed < 100; ++seed) m.push_back(static_cast<double>(erdos_renyi(1000, 0.01, seed).num_edges()));
  double mean = 0;
  for (double x : m) mean += x;
  mean /= 100.0;
  double var = 0;
  for (double x : m) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / 99.0);
  const bool within = std::abs(mean - 4995.0) <= 0.01 * 4995.0;
  const bool band = std::abs(4919.0 - mean) <= 4 * sd && std::abs(4939.0 - mean) <= 4 * sd;
  return {within && band, fmt("mean |E| %.1f (4995 +- 1%%), sd %.1f, 4sigma band [%.0f, %.0f] contains 4919 and 4939: %s",
                              mean, sd, mean - 4 * sd, mean + 4 * sd, band ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"spectral mirror", spectral_mirror},
      {"eigenvalue range", eigenvalue_range},
      {"structure detection", structure_detection},
      {"cut identities", cut_identities},
      {"pinning", pinning},
      {"bipartite exactness", bipartite_exactness},
      {"oracle proximity", oracle_proximity},
      {"solver agreement", solver_agreement},
      {"adjointness", adjointness},
      {"linear scaling", linear_scaling},
      {"ER statistics", er_statistics},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("AC%02d %s %s: %s\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
