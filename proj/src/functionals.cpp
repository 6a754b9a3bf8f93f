#include "smbo/functionals.hpp"

#include <cmath>
#include <vector>

namespace smbo {

namespace {

// 1/2 sum over ordered pairs of w^q * f(u_i, u_j), pairwise-summed per vertex.
template <typename PairTerm>
double half_pair_sum(const Graph& g, const NodeFunction& u, double q, PairTerm term) {
  if (u.size() != g.num_vertices()) throw ValidationError("node function length mismatch");
  std::vector<double> rows(static_cast<std::size_t>(g.num_vertices()));
  for (Index i = 0; i < g.num_vertices(); ++i) {
    double s = 0.0;
    for (Index a = g.row_begin(i); a < g.row_end(i); ++a) {
      const double w = q == 1.0 ? g.weight(a) : std::pow(g.weight(a), q);
      s += w * term(u[i], u[g.head(a)]);
    }
    rows[i] = s;
  }
  return 0.5 * pairwise_sum(rows);
}

double well_sum(const NodeFunction& u) {
  std::vector<double> w(static_cast<std::size_t>(u.size()));
  for (Index i = 0; i < u.size(); ++i) w[i] = double_well(u[i]);
  return pairwise_sum(w);
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
}

}  // namespace

double gl_energy(const Graph& g, const NodeFunction& u, double epsilon) {
  check_epsilon(epsilon);
  const double dirichlet =
      half_pair_sum(g, u, 1.0, [](double a, double b) { return (a - b) * (a - b); });
  return dirichlet + well_sum(u) / epsilon;
}

double signless_gl_energy(const Graph& g, const NodeFunction& u, double epsilon) {
  check_epsilon(epsilon);
  const double dirichlet =
      half_pair_sum(g, u, 1.0, [](double a, double b) { return (a + b) * (a + b); });
  return dirichlet + well_sum(u) / epsilon;
}

double total_variation(const Graph& g, const NodeFunction& u, double q) {
  return half_pair_sum(g, u, q, [](double a, double b) { return std::abs(a - b); });
}

double signless_total_variation(const Graph& g, const NodeFunction& u, double q) {
  return half_pair_sum(g, u, q, [](double a, double b) { return std::abs(a + b); });
}

ExtendedReal gamma_limit(const Graph& g, const NodeFunction& u) {
  if (u.size() != g.num_vertices()) throw ValidationError("node function length mismatch");
  if (!is_binary(u, 1e-12)) return Infinite{};
  return 2.0 * signless_total_variation(g, u, 1.0);
}

double ordered_weight_sum(const Graph& g) { return 2.0 * g.total_weight(); }

}  // namespace smbo
