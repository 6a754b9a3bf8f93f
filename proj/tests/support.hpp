#pragma once

// Fixtures and independent reference computations shared by the tests.

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "smbo/graph.hpp"
#include "smbo/operators.hpp"

namespace fixtures {

using smbo::Graph;
using smbo::Index;
using smbo::NodeFunction;
using smbo::WeightedEdge;

inline Graph from_pairs(Index n, std::initializer_list<std::pair<Index, Index>> pairs) {
  std::vector<WeightedEdge> e;
  for (auto [u, v] : pairs) e.push_back({u, v, 1.0});
  return Graph::from_edges(n, e);
}

inline Graph complete(Index n) {
  std::vector<WeightedEdge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return Graph::from_edges(n, e);
}

inline Graph cycle(Index n) {
  std::vector<WeightedEdge> e;
  for (Index i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return Graph::from_edges(n, e);
}

inline Graph path(Index n) {
  std::vector<WeightedEdge> e;
  for (Index i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return Graph::from_edges(n, e);
}

inline Graph complete_bipartite(Index a, Index b) {
  std::vector<WeightedEdge> e;
  for (Index i = 0; i < a; ++i)
    for (Index j = 0; j < b; ++j) e.push_back({i, a + j, 1.0});
  return Graph::from_edges(a + b, e);
}

inline Graph petersen() {
  std::vector<WeightedEdge> e;
  for (Index i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5, 1.0});          // outer cycle
    e.push_back({i, 5 + i, 1.0});                // spokes
    e.push_back({5 + i, 5 + (i + 2) % 5, 1.0});  // inner pentagram
  }
  return Graph::from_edges(10, e);
}

inline Graph disjoint_union(const std::vector<Graph>& parts) {
  std::vector<WeightedEdge> e;
  Index offset = 0;
  for (const auto& g : parts) {
    for (auto edge : g.edge_list()) e.push_back({edge.u + offset, edge.v + offset, edge.weight});
    offset += g.num_vertices();
  }
  return Graph::from_edges(offset, e);
}

/// G(n,p) from the standard library generator, optionally weighted in
/// [0.1, 2], with isolated vertices removed. Not the library's generator.
inline Graph random_graph(std::mt19937_64& rng, Index n, double p, bool weighted = false) {
  std::bernoulli_distribution keep(p);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::vector<WeightedEdge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (keep(rng)) e.push_back({i, j, weighted ? weight(rng) : 1.0});
  if (e.empty()) e.push_back({0, 1, 1.0});
  const Graph g = Graph::from_edges(n, e);
  return g.has_isolated_vertices() ? smbo::remove_isolated_nodes(g) : g;
}

/// Random bipartite graph on a + b vertices with the given cross probability,
/// made connected by a spanning zig-zag path between the sides.
inline Graph random_bipartite(std::mt19937_64& rng, Index a, Index b, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<WeightedEdge> e;
  std::vector<std::vector<bool>> have(a, std::vector<bool>(b, false));
  for (Index i = 0; i < a; ++i)
    for (Index j = 0; j < b; ++j)
      if (keep(rng)) have[i][j] = true;
  for (Index k = 0; k < std::max(a, b); ++k) {
    have[std::min(k, a - 1)][std::min(k, b - 1)] = true;
    if (k + 1 < std::max(a, b)) have[std::min(k + 1, a - 1)][std::min(k, b - 1)] = true;
  }
  for (Index i = 0; i < a; ++i)
    for (Index j = 0; j < b; ++j)
      if (have[i][j]) e.push_back({i, a + j, 1.0});
  return Graph::from_edges(a + b, e);
}

inline NodeFunction random_binary(std::mt19937_64& rng, Index n) {
  std::bernoulli_distribution coin(0.5);
  NodeFunction u(n);
  for (Index i = 0; i < n; ++i) u[i] = coin(rng) ? 1.0 : -1.0;
  return u;
}

inline NodeFunction random_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> gauss;
  NodeFunction u(n);
  for (Index i = 0; i < n; ++i) u[i] = gauss(rng);
  return u;
}

inline Eigen::MatrixXd adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (auto e : g.edge_list()) a(e.u, e.v) = a(e.v, e.u) = e.weight;
  return a;
}

/// Reference Laplacian matrix built from A and D with textbook formulas.
inline Eigen::MatrixXd reference_matrix(const smbo::OperatorKind& kind, const Graph& g) {
  const Eigen::MatrixXd a = adjacency(g);
  const Eigen::VectorXd d = a.rowwise().sum();
  const double sign = kind.is_signless() ? 1.0 : -1.0;
  const Index n = g.num_vertices();
  Eigen::MatrixXd l(n, n);
  if (kind.is_symmetric()) {
    const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
    l = Eigen::MatrixXd::Identity(n, n) + sign * s.asDiagonal() * a * s.asDiagonal();
  } else {
    const Eigen::VectorXd dr = d.array().pow(-kind.r).matrix();
    const Eigen::VectorXd d1r = d.array().pow(1.0 - kind.r).matrix();
    l = Eigen::MatrixXd(d1r.asDiagonal()) + sign * dr.asDiagonal() * a;
  }
  return l;
}

/// Exhaustive maximum cut over all 2^n labellings (no symmetry reduction).
inline double naive_maxcut(const Graph& g) {
  const Index n = g.num_vertices();
  const auto edges = g.edge_list();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double s = 0.0;
    for (auto e : edges)
      if (((mask >> e.u) ^ (mask >> e.v)) & 1u) s += e.weight;
    best = std::max(best, s);
  }
  return best;
}

/// Direct edge count of a labelling.
inline double naive_cut(const Graph& g, const NodeFunction& u) {
  double s = 0.0;
  for (auto e : g.edge_list())
    if ((u[e.u] > 0) != (u[e.v] > 0)) s += e.weight;
  return s;
}

/// Number of connected components and of bipartite ones, by BFS 2-colouring.
struct ComponentCount {
  Index components = 0;
  Index bipartite = 0;
};

inline ComponentCount count_components(const Graph& g) {
  const Index n = g.num_vertices();
  std::vector<int> colour(n, -1);
  ComponentCount c;
  for (Index s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    ++c.components;
    bool ok = true;
    std::vector<Index> stack{s};
    colour[s] = 0;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (Index w : g.neighbours(v)) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          stack.push_back(w);
        } else if (colour[w] == colour[v]) {
          ok = false;
        }
      }
    }
    if (ok) ++c.bipartite;
  }
  return c;
}

}  // namespace fixtures
