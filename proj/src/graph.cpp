#include "smbo/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "smbo/operators.hpp"

namespace smbo {

namespace {

// Sorted by (u, v); u < v.
std::vector<WeightedEdge> canonical(std::span<const WeightedEdge> edges) {
  std::vector<WeightedEdge> out(edges.begin(), edges.end());
  for (auto& e : out) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(out.begin(), out.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

}  // namespace

Graph Graph::from_edges(Index n, std::span<const WeightedEdge> edges) {
  if (n < 0) throw ValidationError("negative vertex count");
  auto sorted = canonical(edges);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const auto& e = sorted[k];
    if (e.u < 0 || e.v >= n) throw ValidationError("edge endpoint out of range");
    if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ValidationError("edge weights must be positive and finite");
    }
    if (k > 0 && sorted[k - 1].u == e.u && sorted[k - 1].v == e.v) {
      throw ValidationError("duplicate edge {" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + "}");
    }
  }

  Graph g;
  g.n_ = n;
  std::vector<Index> count(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : sorted) {
    ++count[e.u + 1];
    ++count[e.v + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  g.row_ = count;
  g.col_.assign(2 * sorted.size(), 0);
  g.w_.assign(2 * sorted.size(), 0.0);
  g.rev_.assign(2 * sorted.size(), 0);

  // Canonical order fills each row sorted by neighbour: edges (j,i) with
  // j < i are visited before edges (i,j) with j > i.
  std::vector<Index> fill(g.row_.begin(), g.row_.end() - 1);
  for (const auto& e : sorted) {
    const Index a = fill[e.u]++;
    const Index b = fill[e.v]++;
    g.col_[a] = e.v;
    g.w_[a] = e.weight;
    g.col_[b] = e.u;
    g.w_[b] = e.weight;
    g.rev_[a] = b;
    g.rev_[b] = a;
  }

  g.deg_ = NodeFunction::Zero(n);
  std::vector<double> row_sums(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index a = g.row_[i]; a < g.row_[i + 1]; ++a) s += g.w_[a];
    g.deg_[i] = s;
    row_sums[i] = s;
  }
  g.total_weight_ = 0.5 * pairwise_sum(row_sums);
  return g;
}

double Graph::min_degree() const noexcept { return n_ == 0 ? 0.0 : deg_.minCoeff(); }
double Graph::max_degree() const noexcept { return n_ == 0 ? 0.0 : deg_.maxCoeff(); }

bool Graph::has_isolated_vertices() const noexcept {
  for (Index i = 0; i < n_; ++i) {
    if (row_[i] == row_[i + 1]) return true;
  }
  return false;
}

bool Graph::is_unweighted() const noexcept {
  return std::all_of(w_.begin(), w_.end(), [](double w) { return w == 1.0; });
}

std::vector<WeightedEdge> Graph::edge_list() const {
  std::vector<WeightedEdge> out;
  out.reserve(static_cast<std::size_t>(num_edges()));
  for (Index i = 0; i < n_; ++i) {
    for (Index a = row_[i]; a < row_[i + 1]; ++a) {
      if (col_[a] > i) out.push_back({i, col_[a], w_[a]});
    }
  }
  return out;
}

bool Graph::check_invariants() const {
  for (Index i = 0; i < n_; ++i) {
    double s = 0.0;
    for (Index a = row_[i]; a < row_[i + 1]; ++a) {
      const Index j = col_[a];
      if (j == i || j < 0 || j >= n_) return false;
      const Index b = rev_[a];
      if (col_[b] != i || w_[b] != w_[a] || rev_[b] != a) return false;
      if (!(w_[a] > 0.0)) return false;
      s += w_[a];
    }
    if (s != deg_[i]) return false;
  }
  return true;
}

NodeFunction Cut::as_function() const {
  NodeFunction u(static_cast<Index>(side.size()));
  for (std::size_t i = 0; i < side.size(); ++i) u[static_cast<Index>(i)] = side[i];
  return u;
}

MergePolicy parse_merge_policy(const std::string& name) {
  if (name == "error") return MergePolicy::kError;
  if (name == "sum") return MergePolicy::kSum;
  if (name == "max") return MergePolicy::kMax;
  throw ValidationError("unknown merge policy '" + name + "' (expected error, sum or max)");
}

namespace {

std::string_view skip_space(std::string_view s) {
  std::size_t k = 0;
  while (k < s.size() && (s[k] == ' ' || s[k] == '\t' || s[k] == '\r' || s[k] == ',')) ++k;
  return s.substr(k);
}

template <typename T>
bool take_number(std::string_view& s, T& value) {
  s = skip_space(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr == s.data()) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return s.empty() || s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
         s.front() == ',';
}

// "# n=N ..." -> N
std::optional<Index> header_vertex_count(std::string_view s) {
  s.remove_prefix(1);
  s = skip_space(s);
  if (!s.starts_with("n=")) return std::nullopt;
  s.remove_prefix(2);
  Index n = 0;
  if (!take_number(s, n) || n < 0) return std::nullopt;
  return n;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, MergePolicy policy) {
  std::unordered_map<std::uint64_t, Index> index_of;
  std::vector<std::uint64_t> ids;
  std::vector<WeightedEdge> raw;
  std::vector<std::size_t> raw_line;

  auto dense = [&](std::uint64_t id) {
    auto [it, inserted] = index_of.try_emplace(id, static_cast<Index>(ids.size()));
    if (inserted) ids.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  std::optional<Index> declared_n;
  bool seen_edge = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = skip_space(line);
    if (s.empty() || s.front() == '%') continue;
    if (s.front() == '#') {
      if (!seen_edge && !declared_n) declared_n = header_vertex_count(s);
      continue;
    }
    seen_edge = true;

    std::uint64_t a = 0, b = 0;
    if (s.front() == '-') throw ParseError(lineno, "vertex ids must be non-negative integers");
    if (!take_number(s, a)) throw ParseError(lineno, "expected vertex id");
    s = skip_space(s);
    if (!s.empty() && s.front() == '-') {
      throw ParseError(lineno, "vertex ids must be non-negative integers");
    }
    if (!take_number(s, b)) throw ParseError(lineno, "expected second vertex id");
    double w = 1.0;
    s = skip_space(s);
    if (!s.empty()) {
      if (!take_number(s, w)) throw ParseError(lineno, "malformed weight");
      s = skip_space(s);
      if (!s.empty()) throw ParseError(lineno, "trailing characters");
      if (!std::isfinite(w)) throw ValidationError("line " + std::to_string(lineno) + ": weight is not finite");
      if (w < 0.0) throw ValidationError("line " + std::to_string(lineno) + ": negative weight");
      if (w == 0.0) throw ValidationError("line " + std::to_string(lineno) + ": zero weight");
    }
    const Index u = dense(a);
    const Index v = dense(b);
    if (u == v) continue;
    raw.push_back({std::min(u, v), std::max(u, v), w});
    raw_line.push_back(lineno);
  }

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return raw[x].u != raw[y].u ? raw[x].u < raw[y].u : raw[x].v < raw[y].v;
  });
  std::vector<WeightedEdge> merged;
  merged.reserve(raw.size());
  for (std::size_t k : order) {
    const auto& e = raw[k];
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      switch (policy) {
        case MergePolicy::kError:
          throw ValidationError("line " + std::to_string(raw_line[k]) + ": duplicate edge " +
                                std::to_string(ids[e.u]) + " " + std::to_string(ids[e.v]));
        case MergePolicy::kSum:
          merged.back().weight += e.weight;
          break;
        case MergePolicy::kMax:
          merged.back().weight = std::max(merged.back().weight, e.weight);
          break;
      }
      continue;
    }
    merged.push_back(e);
  }

  // A leading "# n=N" header with ids 0..N-1 keeps ids as indices, which
  // preserves vertex order and isolated vertices on a write/read round trip.
  if (declared_n && std::all_of(ids.begin(), ids.end(), [&](std::uint64_t id) {
        return id < static_cast<std::uint64_t>(*declared_n);
      })) {
    for (auto& e : merged) {
      const auto a = static_cast<Index>(ids[e.u]), b = static_cast<Index>(ids[e.v]);
      e = {std::min(a, b), std::max(a, b), e.weight};
    }
    ids.resize(static_cast<std::size_t>(*declared_n));
    std::iota(ids.begin(), ids.end(), std::uint64_t{0});
  }

  LoadedGraph out;
  out.graph = Graph::from_edges(static_cast<Index>(ids.size()), merged);
  out.original_ids = std::move(ids);
  return out;
}

LoadedGraph load_edge_list_file(const std::string& path, MergePolicy policy) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return load_edge_list(in, policy);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  for (const auto& e : g.edge_list()) {
    out << e.u << ' ' << e.v;
    if (e.weight != 1.0) out << ' ' << e.weight;
    out << '\n';
  }
  out.precision(old_precision);
}

Graph remove_isolated_nodes(const Graph& g, std::vector<Index>* kept) {
  std::vector<Index> new_index(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<Index> keep;
  for (Index i = 0; i < g.num_vertices(); ++i) {
    if (g.row_end(i) > g.row_begin(i)) {
      new_index[i] = static_cast<Index>(keep.size());
      keep.push_back(i);
    }
  }
  if (keep.empty()) throw ValidationError("graph has no edges: no nodes left to cut");
  std::vector<WeightedEdge> edges = g.edge_list();
  for (auto& e : edges) {
    e.u = new_index[e.u];
    e.v = new_index[e.v];
  }
  Graph out = Graph::from_edges(static_cast<Index>(keep.size()), edges);
  if (kept) *kept = std::move(keep);
  return out;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 128;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double cut_size(const Graph& g, std::span<const signed char> side) {
  const Index n = g.num_vertices();
  if (static_cast<Index>(side.size()) != n) throw ValidationError("side vector length mismatch");
  std::vector<double> per_vertex(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index a = g.row_begin(i); a < g.row_end(i); ++a) {
      const Index j = g.head(a);
      if (j > i && side[i] != side[j]) s += g.weight(a);
    }
    per_vertex[i] = s;
  }
  return pairwise_sum(per_vertex);
}

Cut cut_from_function(const Graph& g, const NodeFunction& u) {
  if (u.size() != g.num_vertices()) throw ValidationError("node function length mismatch");
  Cut c;
  c.side.resize(static_cast<std::size_t>(u.size()));
  for (Index i = 0; i < u.size(); ++i) c.side[i] = u[i] > 0.0 ? 1 : -1;
  c.size = cut_size(g, c.side);
  return c;
}

bool is_binary(const NodeFunction& u, double tol) {
  for (Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i] - 1.0) > tol && std::abs(u[i] + 1.0) > tol) return false;
  }
  return true;
}

double inner_product_v(const Graph& g, const NodeFunction& u, const NodeFunction& v, double r) {
  const Index n = g.num_vertices();
  if (u.size() != n || v.size() != n) throw ValidationError("node function length mismatch");
  std::vector<double> terms(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double d = g.degree(i);
    const double dr = r == 0.0 ? 1.0 : (d == 0.0 ? 0.0 : std::pow(d, r));
    terms[i] = u[i] * v[i] * dr;
  }
  return pairwise_sum(terms);
}

double cut_size_via_laplacian(const Graph& g, const NodeFunction& u, double r) {
  if (u.size() != g.num_vertices()) throw ValidationError("node function length mismatch");
  if (!is_binary(u)) throw ValidationError("cut_size_via_laplacian needs u in {-1,1}^n");
  const NodeFunction lu = apply(OperatorKind::standard(r), g, u);
  return 0.25 * inner_product_v(g, u, lu, r);
}

std::map<Index, double> degree_distribution(const Graph& g) {
  if (!g.is_unweighted()) throw ValidationError("degree distribution needs an unweighted graph");
  std::map<Index, Index> counts;
  for (Index i = 0; i < g.num_vertices(); ++i) ++counts[g.row_end(i) - g.row_begin(i)];
  std::map<Index, double> p;
  const double n = static_cast<double>(g.num_vertices());
  for (auto [deg, c] : counts) p[deg] = static_cast<double>(c) / n;
  return p;
}

}  // namespace smbo
