#pragma once

#include <cstdint>
#include <vector>

#include "smbo/graph.hpp"

namespace smbo {

inline constexpr Index kBruteForceCap = 24;

struct OracleResult {
  double optimum = 0.0;
  NodeFunction witness;   // in {-1,1}^n
  std::uint64_t enumerated = 0;
};

/// Exact maximum cut by enumerating all 2^{n-1} sign patterns with
/// `fixed_vertex` held at +1. Patterns are visited in Gray-code order so each
/// step is one vertex flip; the work is split into prefix blocks run on
/// `threads` workers (0: hardware concurrency). Among equal values the
/// pattern with the smallest mask wins, where bit k of the mask says that
/// the k-th free vertex is on side -1.
OracleResult brute_force_maxcut(const Graph& g, Index fixed_vertex = 0, unsigned threads = 0,
                                Index cap = kBruteForceCap);

struct BaselineSummary {
  double best = 0.0;
  double avg = 0.0;
  double least = 0.0;
  std::vector<double> sizes;
};

/// Cut sizes of `runs` uniformly random partitions.
BaselineSummary random_cut_baseline(const Graph& g, Index runs, std::uint64_t seed);

/// Single-vertex-flip hill climbing from `start` (binary) to a local optimum.
Cut greedy_local_search(const Graph& g, const NodeFunction& start);

}  // namespace smbo
