#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "smbo/types.hpp"

namespace smbo {

/// One undirected edge, as given to Graph::from_edges.
struct WeightedEdge {
  Index u = 0;
  Index v = 0;
  double weight = 1.0;
};

/// Immutable simple undirected weighted graph in compressed sparse row form.
///
/// Each undirected edge {i,j} is stored twice (as arcs i->j and j->i) so a
/// vertex's neighbourhood is a contiguous range. `reverse_arc(a)` gives the
/// slot of the opposite direction, which edge functions need.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on `n` vertices. Rejects self-loops, duplicate pairs,
  /// out-of-range endpoints and non-positive weights.
  static Graph from_edges(Index n, std::span<const WeightedEdge> edges);

  Index num_vertices() const noexcept { return n_; }
  Index num_edges() const noexcept { return static_cast<Index>(col_.size()) / 2; }
  Index num_arcs() const noexcept { return static_cast<Index>(col_.size()); }

  /// Arc slots [row_begin(i), row_end(i)) belong to vertex i.
  Index row_begin(Index i) const noexcept { return row_[i]; }
  Index row_end(Index i) const noexcept { return row_[i + 1]; }
  Index head(Index arc) const noexcept { return col_[arc]; }
  double weight(Index arc) const noexcept { return w_[arc]; }
  Index reverse_arc(Index arc) const noexcept { return rev_[arc]; }

  std::span<const Index> neighbours(Index i) const noexcept {
    return {col_.data() + row_[i], col_.data() + row_[i + 1]};
  }
  std::span<const double> neighbour_weights(Index i) const noexcept {
    return {w_.data() + row_[i], w_.data() + row_[i + 1]};
  }

  double degree(Index i) const noexcept { return deg_[i]; }
  const NodeFunction& degrees() const noexcept { return deg_; }
  double min_degree() const noexcept;
  double max_degree() const noexcept;

  /// Sum over unordered edges of the weight, i.e. half the sum of degrees.
  double total_weight() const noexcept { return total_weight_; }

  bool has_isolated_vertices() const noexcept;
  bool is_unweighted() const noexcept;

  /// Each undirected edge once, with u < v, sorted lexicographically.
  std::vector<WeightedEdge> edge_list() const;

  /// Recomputes symmetry, loop-freeness and the degree cache from scratch.
  bool check_invariants() const;

 private:
  Index n_ = 0;
  std::vector<Index> row_{0};
  std::vector<Index> col_;
  std::vector<double> w_;
  std::vector<Index> rev_;
  NodeFunction deg_;
  double total_weight_ = 0.0;
};

/// Binary partition V_{-1} | V_{+1} with its size.
struct Cut {
  std::vector<signed char> side;  // -1 or +1 per vertex
  double size = 0.0;

  NodeFunction as_function() const;
};

enum class MergePolicy { kError, kSum, kMax };

MergePolicy parse_merge_policy(const std::string& name);

/// Result of reading an edge list: the graph plus the original id of every
/// dense vertex index (first-appearance order).
struct LoadedGraph {
  Graph graph;
  std::vector<std::uint64_t> original_ids;
};

/// Reads "i j" / "i j w" lines; '#' and '%' lines are comments.
/// Self-loops are dropped; duplicates are resolved by `policy`. Ids are
/// remapped by first appearance, unless the first comment is a "# n=N" header
/// and every id is below N, in which case ids are kept as indices.
LoadedGraph load_edge_list(std::istream& in, MergePolicy policy = MergePolicy::kError);
LoadedGraph load_edge_list_file(const std::string& path,
                                MergePolicy policy = MergePolicy::kError);

/// Writes the graph in the format `load_edge_list` reads: one "# n=.. m=.."
/// comment, then "i j" for unit weights and "i j w" otherwise.
void write_edge_list(std::ostream& out, const Graph& g);

/// Drops vertices of degree zero. If `kept` is given it receives, for each new
/// vertex, its index in `g`. Throws ValidationError if nothing is left.
Graph remove_isolated_nodes(const Graph& g, std::vector<Index>* kept = nullptr);

/// u_i > 0 goes to side +1, u_i <= 0 to side -1.
Cut cut_from_function(const Graph& g, const NodeFunction& u);

/// Edge-scan cut size of a side vector, pairwise-summed over vertices.
double cut_size(const Graph& g, std::span<const signed char> side);

/// Cut size computed as (1/4) <u, Delta_r u>_V. Requires u in {-1,1}^n.
double cut_size_via_laplacian(const Graph& g, const NodeFunction& u, double r);

/// <u,v>_V = sum_i u_i v_i d_i^r.
double inner_product_v(const Graph& g, const NodeFunction& u, const NodeFunction& v,
                       double r);

/// P(j) = |{i : d_i = j}| / n for an unweighted graph.
std::map<Index, double> degree_distribution(const Graph& g);

/// True when every entry is within `tol` of -1 or +1.
bool is_binary(const NodeFunction& u, double tol = 1e-12);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

}  // namespace smbo
