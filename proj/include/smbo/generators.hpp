#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smbo/graph.hpp"

namespace smbo {

/// G(n, p): every unordered pair present independently with probability p.
/// Isolated vertices are kept.
Graph erdos_renyi(Index n, double p, std::uint64_t seed);

struct ModularGraph {
  Graph graph;
  std::vector<Index> community;  // label per vertex, 0..c-1
};

/// R(n, c, p, r): c near-equal communities (the first n mod c get one extra
/// vertex). The expected edge count is p n(n-1)/2, of which a fraction r is
/// expected inside communities; pair probabilities are clamped to [0, 1].
ModularGraph modular(Index n, Index c, double p, double r, std::uint64_t seed);

/// Multiplies every edge weight by an independent uniform draw from [lo, hi]
/// (lo == hi allowed). Edges whose weight becomes zero are removed.
Graph reweight(const Graph& g, double lo, double hi, std::uint64_t seed);

/// Generator description, written as
///   er:N:P | modular:N:C:P:R, optionally followed by +reweight:LO:HI
struct GenSpec {
  enum class Family { kErdosRenyi, kModular };
  Family family = Family::kErdosRenyi;
  Index n = 0;
  Index c = 1;
  double p = 0.0;
  double r = 0.0;
  std::optional<std::pair<double, double>> weight_range;
  std::uint64_t seed = 0;

  static GenSpec parse(const std::string& text, std::uint64_t seed);
  std::string to_string() const;
};

Graph generate(const GenSpec& spec);

}  // namespace smbo
