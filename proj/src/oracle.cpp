#include "smbo/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "smbo/random.hpp"

namespace smbo {

namespace {

struct Candidate {
  double value = -1.0;
  std::uint64_t mask = 0;
};

struct Enumerator {
  const Graph& g;
  std::vector<Index> free_vertices;
  double tol;

  bool better(const Candidate& a, const Candidate& b) const {
    if (a.value > b.value + tol) return true;
    if (a.value < b.value - tol) return false;
    return a.mask < b.mask;
  }

  Candidate run_block(std::uint64_t first, std::uint64_t count) const {
    std::vector<signed char> side(static_cast<std::size_t>(g.num_vertices()), 1);
    std::uint64_t mask = first ^ (first >> 1);
    for (std::size_t k = 0; k < free_vertices.size(); ++k) {
      if ((mask >> k) & 1u) side[free_vertices[k]] = -1;
    }
    double value = cut_size(g, side);
    Candidate best{value, mask};
    for (std::uint64_t i = first; i + 1 < first + count; ++i) {
      const int k = std::countr_zero(i + 1);
      const Index v = free_vertices[k];
      double gain = 0.0;
      for (Index a = g.row_begin(v); a < g.row_end(v); ++a) {
        gain += side[g.head(a)] == side[v] ? g.weight(a) : -g.weight(a);
      }
      side[v] = static_cast<signed char>(-side[v]);
      value += gain;
      mask ^= std::uint64_t{1} << k;
      const Candidate c{value, mask};
      if (better(c, best)) best = c;
    }
    return best;
  }
};

}  // namespace

OracleResult brute_force_maxcut(const Graph& g, Index fixed_vertex, unsigned threads, Index cap) {
  const Index n = g.num_vertices();
  if (n < 1) throw ValidationError("brute force needs at least one vertex");
  if (n > cap || n > 63) {
    throw ValidationError("brute force limited to " + std::to_string(cap) + " vertices, graph has " +
                          std::to_string(n));
  }
  if (fixed_vertex < 0 || fixed_vertex >= n) throw ValidationError("fixed vertex out of range");

  Enumerator en{g, {}, 1e-9 * std::max(1.0, g.total_weight())};
  for (Index v = 0; v < n; ++v) {
    if (v != fixed_vertex) en.free_vertices.push_back(v);
  }
  const int free_bits = static_cast<int>(en.free_vertices.size());
  const std::uint64_t total = std::uint64_t{1} << free_bits;
  const int block_bits = std::min(free_bits, 6);
  const std::uint64_t blocks = std::uint64_t{1} << block_bits;
  const std::uint64_t per_block = total / blocks;

  std::vector<Candidate> results(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) results[b] = en.run_block(b * per_block, per_block);
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || total < 4096) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < std::min<std::uint64_t>(threads, blocks); ++t) pool.emplace_back(worker);
  }

  Candidate best = results[0];
  for (const auto& c : results) {
    if (en.better(c, best)) best = c;
  }

  OracleResult out;
  out.witness = NodeFunction::Ones(n);
  for (int k = 0; k < free_bits; ++k) {
    if ((best.mask >> k) & 1u) out.witness[en.free_vertices[k]] = -1.0;
  }
  out.optimum = cut_from_function(g, out.witness).size;
  out.enumerated = total;
  return out;
}

BaselineSummary random_cut_baseline(const Graph& g, Index runs, std::uint64_t seed) {
  if (runs < 1) throw ValidationError("runs must be at least 1");
  BaselineSummary s;
  const Index n = g.num_vertices();
  std::vector<signed char> side(static_cast<std::size_t>(n));
  double total = 0.0;
  for (Index r = 0; r < runs; ++r) {
    const CounterRng rng(hash64(seed, streams::kBaseline, static_cast<std::uint64_t>(r)),
                         streams::kBaseline);
    for (Index i = 0; i < n; ++i) side[i] = rng.sign(static_cast<std::uint64_t>(i)) > 0 ? 1 : -1;
    const double size = cut_size(g, side);
    s.sizes.push_back(size);
    total += size;
  }
  s.best = *std::max_element(s.sizes.begin(), s.sizes.end());
  s.least = *std::min_element(s.sizes.begin(), s.sizes.end());
  s.avg = std::clamp(total / static_cast<double>(runs), s.least, s.best);
  return s;
}

Cut greedy_local_search(const Graph& g, const NodeFunction& start) {
  if (start.size() != g.num_vertices()) throw ValidationError("start length mismatch");
  if (!is_binary(start)) throw ValidationError("greedy local search needs a binary start");
  const Index n = g.num_vertices();
  Cut c;
  c.side.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) c.side[i] = start[i] > 0.0 ? 1 : -1;

  // gain[v] = weight to same side - weight to other side (cut change if v flips)
  std::vector<double> gain(static_cast<std::size_t>(n), 0.0);
  for (Index v = 0; v < n; ++v) {
    for (Index a = g.row_begin(v); a < g.row_end(v); ++a) {
      gain[v] += c.side[g.head(a)] == c.side[v] ? g.weight(a) : -g.weight(a);
    }
  }
  const double tol = 1e-12 * std::max(1.0, g.total_weight());
  bool improved = true;
  while (improved) {
    improved = false;
    for (Index v = 0; v < n; ++v) {
      if (gain[v] <= tol) continue;
      c.side[v] = static_cast<signed char>(-c.side[v]);
      gain[v] = -gain[v];
      for (Index a = g.row_begin(v); a < g.row_end(v); ++a) {
        const Index j = g.head(a);
        // Edge (v,j) switched between cut and uncut; j's view changes by 2w.
        gain[j] += c.side[j] == c.side[v] ? 2.0 * g.weight(a) : -2.0 * g.weight(a);
      }
      improved = true;
    }
  }
  c.size = cut_size(g, c.side);
  return c;
}

}  // namespace smbo
