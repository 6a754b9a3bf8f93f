#include "smbo/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "smbo/random.hpp"

namespace smbo {

namespace {

// Integer threshold so that P(bits < t) = p for uniformly random 64-bit bits.
struct Bernoulli {
  explicit Bernoulli(double p) {
    if (p <= 0.0) {
      never = true;
    } else if (p >= 1.0) {
      always = true;
    } else {
      threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
    }
  }
  bool operator()(std::uint64_t bits) const noexcept {
    return always || (!never && bits < threshold);
  }
  bool always = false;
  bool never = false;
  std::uint64_t threshold = 0;
};

std::uint64_t pair_counter(Index n, Index i, Index j) {
  return static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) +
         static_cast<std::uint64_t>(j);
}

}  // namespace

Graph erdos_renyi(Index n, double p, std::uint64_t seed) {
  if (n < 1) throw ValidationError("G(n,p) needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("G(n,p) needs p in [0,1]");
  const CounterRng rng(seed, streams::kErdosRenyi);
  const Bernoulli keep(p);
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(p * 0.5 * static_cast<double>(n) * (n - 1) * 1.05) + 16);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (keep(rng.bits(pair_counter(n, i, j)))) edges.push_back({i, j, 1.0});
    }
  }
  return Graph::from_edges(n, edges);
}

ModularGraph modular(Index n, Index c, double p, double r, std::uint64_t seed) {
  if (n < 1) throw ValidationError("R(n,c,p,r) needs n >= 1");
  if (c < 1 || c > n) throw ValidationError("R(n,c,p,r) needs 1 <= c <= n");
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("R(n,c,p,r) needs p in (0,1]");
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("R(n,c,p,r) needs r in [0,1]");

  ModularGraph out;
  out.community.resize(static_cast<std::size_t>(n));
  const Index base = n / c, extra = n % c;
  double intra_pairs = 0.0;
  Index v = 0;
  for (Index k = 0; k < c; ++k) {
    const Index size = base + (k < extra ? 1 : 0);
    for (Index s = 0; s < size; ++s) out.community[v++] = k;
    intra_pairs += 0.5 * static_cast<double>(size) * static_cast<double>(size - 1);
  }
  const double all_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double inter_pairs = all_pairs - intra_pairs;
  const double expected_edges = p * all_pairs;

  double p_in = 0.0, p_out = 0.0;
  if (inter_pairs <= 0.0) {
    p_in = p;
  } else if (intra_pairs <= 0.0) {
    p_out = p;
  } else {
    p_in = std::min(1.0, r * expected_edges / intra_pairs);
    p_out = std::min(1.0, (1.0 - r) * expected_edges / inter_pairs);
  }

  const CounterRng rng(seed, streams::kModular);
  const Bernoulli in(p_in), across(p_out);
  std::vector<WeightedEdge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const std::uint64_t bits = rng.bits(pair_counter(n, i, j));
      const bool same = out.community[i] == out.community[j];
      if (same ? in(bits) : across(bits)) edges.push_back({i, j, 1.0});
    }
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

Graph reweight(const Graph& g, double lo, double hi, std::uint64_t seed) {
  if (!(lo >= 0.0) || !(hi >= lo) || !(hi > 0.0)) {
    throw ValidationError("reweight range needs 0 <= lo <= hi and hi > 0");
  }
  const CounterRng rng(seed, streams::kReweight);
  std::vector<WeightedEdge> edges = g.edge_list();
  std::vector<WeightedEdge> kept;
  kept.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double factor = lo + (hi - lo) * rng.uniform(static_cast<std::uint64_t>(k));
    const double w = edges[k].weight * factor;
    if (w > 0.0) kept.push_back({edges[k].u, edges[k].v, w});
  }
  return Graph::from_edges(g.num_vertices(), kept);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

template <typename T>
T number(const std::string& s, const std::string& what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("generator spec: bad " + what + " '" + s + "'");
  }
  return value;
}

}  // namespace

GenSpec GenSpec::parse(const std::string& text, std::uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  const auto plus = text.find('+');
  const std::string head = text.substr(0, plus);
  const auto fields = split(head, ':');
  if (fields.empty()) throw ValidationError("empty generator spec");
  if (fields[0] == "er") {
    if (fields.size() != 3) throw ValidationError("expected er:N:P");
    spec.family = Family::kErdosRenyi;
    spec.n = number<Index>(fields[1], "N");
    spec.p = number<double>(fields[2], "P");
  } else if (fields[0] == "modular") {
    if (fields.size() != 5) throw ValidationError("expected modular:N:C:P:R");
    spec.family = Family::kModular;
    spec.n = number<Index>(fields[1], "N");
    spec.c = number<Index>(fields[2], "C");
    spec.p = number<double>(fields[3], "P");
    spec.r = number<double>(fields[4], "R");
  } else {
    throw ValidationError("unknown generator family '" + fields[0] + "' (expected er or modular)");
  }
  if (plus != std::string::npos) {
    const auto tail = split(text.substr(plus + 1), ':');
    if (tail.size() != 3 || tail[0] != "reweight") {
      throw ValidationError("expected +reweight:LO:HI after the generator");
    }
    spec.weight_range = {number<double>(tail[1], "LO"), number<double>(tail[2], "HI")};
  }
  return spec;
}

std::string GenSpec::to_string() const {
  std::ostringstream os;
  os << std::setprecision(12);
  if (family == Family::kErdosRenyi) {
    os << "er:" << n << ':' << p;
  } else {
    os << "modular:" << n << ':' << c << ':' << p << ':' << r;
  }
  if (weight_range) os << "+reweight:" << weight_range->first << ':' << weight_range->second;
  return os.str();
}

Graph generate(const GenSpec& spec) {
  Graph g = spec.family == GenSpec::Family::kErdosRenyi
                ? erdos_renyi(spec.n, spec.p, spec.seed)
                : modular(spec.n, spec.c, spec.p, spec.r, spec.seed).graph;
  if (spec.weight_range) g = reweight(g, spec.weight_range->first, spec.weight_range->second, spec.seed);
  return g;
}

}  // namespace smbo
