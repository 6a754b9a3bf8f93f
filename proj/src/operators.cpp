#include "smbo/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace smbo {

namespace {

// d^p with the conventions d^0 = 1 and (0)^p = 0 for p != 0; isolated
// vertices get an all-zero row.
double degree_power(double d, double p) {
  if (p == 0.0) return 1.0;
  if (d == 0.0) return 0.0;
  if (p == 1.0) return d;
  if (p == -1.0) return 1.0 / d;
  if (p == 0.5) return std::sqrt(d);
  if (p == -0.5) return 1.0 / std::sqrt(d);
  return std::pow(d, p);
}

}  // namespace

std::string OperatorKind::name() const {
  std::string base;
  if (is_symmetric()) {
    base = "ls";
  } else if (r == 0.0) {
    base = "l0";
  } else if (r == 1.0) {
    base = "l1";
  } else {
    std::ostringstream os;
    os << "l" << r;
    base = os.str();
  }
  return is_signless() ? base + "plus" : base;
}

void OperatorKind::validate() const {
  if (!is_symmetric() && !(r >= 0.0 && r <= 1.0)) {
    throw ValidationError("operator parameter r must lie in [0,1]");
  }
}

OperatorKind parse_operator_kind(const std::string& name) {
  if (name == "l0") return kL0;
  if (name == "l1") return kL1;
  if (name == "ls") return kLs;
  if (name == "l0plus") return kL0Plus;
  if (name == "l1plus") return kL1Plus;
  if (name == "lsplus") return kLsPlus;
  throw ValidationError("unknown laplacian '" + name +
                        "' (expected l0, l1, ls, l0plus, l1plus or lsplus)");
}

GraphOperator::GraphOperator(const Graph& g, OperatorKind kind)
    : graph_(&g), kind_(kind), sign_(kind.is_signless() ? 1.0 : -1.0) {
  kind.validate();
  const Index n = g.num_vertices();
  if (g.num_arcs() > std::numeric_limits<std::int32_t>::max() || n > std::numeric_limits<std::int32_t>::max()) {
    throw ValidationError("graph too large for the operator kernels");
  }
  heads_.resize(static_cast<std::size_t>(g.num_arcs()));
  unit_weights_ = true;
  for (Index a = 0; a < g.num_arcs(); ++a) unit_weights_ = unit_weights_ && g.weight(a) == 1.0;
  for (Index a = 0; a < g.num_arcs(); ++a) heads_[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(g.head(a));
  diag_.resize(n);
  row_scale_.resize(n);
  col_scale_.resize(n);
  sym_scale_.resize(n);
  half_scale_.resize(n);
  inv_half_scale_.resize(n);
  v_weight_.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double d = g.degree(i);
    if (kind.is_symmetric()) {
      diag_[i] = d == 0.0 ? 0.0 : 1.0;
      row_scale_[i] = degree_power(d, -0.5);
      col_scale_[i] = row_scale_[i];
      sym_scale_[i] = row_scale_[i];
      half_scale_[i] = 1.0;
      v_weight_[i] = 1.0;
    } else {
      const double r = kind.r;
      diag_[i] = d == 0.0 ? 0.0 : degree_power(d, 1.0 - r);
      row_scale_[i] = degree_power(d, -r);
      col_scale_[i] = 1.0;
      sym_scale_[i] = degree_power(d, -0.5 * r);
      half_scale_[i] = d == 0.0 ? 1.0 : degree_power(d, 0.5 * r);
      v_weight_[i] = degree_power(d, r);
      if (d == 0.0 && r == 0.0) v_weight_[i] = 1.0;
    }
    inv_half_scale_[i] = 1.0 / half_scale_[i];
  }
}

template <bool kScaledColumns, bool kUnitWeights, typename Sink>
void GraphOperator::for_each_row(const NodeFunction& u, Sink&& sink) const {
  const Graph& g = *graph_;
  const Index n = g.num_vertices();
  const std::int32_t* heads = heads_.data();
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    const Index end = g.row_end(i);
    for (Index a = g.row_begin(i); a < end; ++a) {
      const Index j = heads[a];
      if constexpr (kScaledColumns && kUnitWeights) {
        acc += col_scale_[j] * u[j];
      } else if constexpr (kScaledColumns) {
        acc += g.weight(a) * col_scale_[j] * u[j];
      } else if constexpr (kUnitWeights) {
        acc += u[j];
      } else {
        acc += g.weight(a) * u[j];
      }
    }
    sink(i, diag_[i] * u[i] + sign_ * row_scale_[i] * acc);
  }
}

template <typename Sink>
void GraphOperator::dispatch(const NodeFunction& u, Sink&& sink) const {
  const bool scaled = kind_.is_symmetric();
  if (scaled && unit_weights_) {
    for_each_row<true, true>(u, sink);
  } else if (scaled) {
    for_each_row<true, false>(u, sink);
  } else if (unit_weights_) {
    for_each_row<false, true>(u, sink);
  } else {
    for_each_row<false, false>(u, sink);
  }
}

void GraphOperator::apply(const NodeFunction& u, NodeFunction& out) const {
  out.resize(size());
  dispatch(u, [&out](Index i, double lu) { out[i] = lu; });
}

double GraphOperator::euler_step(const NodeFunction& u, NodeFunction& next, double dt) const {
  next.resize(size());
  double sup = 0.0;
  bool finite = true;
  auto step = [&](Index i, double lu) {
    const double x = u[i] - dt * lu;
    next[i] = x;
    finite = finite && std::isfinite(x);
    sup = std::max(sup, std::abs(x));
  };
  dispatch(u, step);
  return finite ? sup : std::numeric_limits<double>::quiet_NaN();
}

NodeFunction GraphOperator::operator()(const NodeFunction& u) const {
  NodeFunction out;
  apply(u, out);
  return out;
}

void GraphOperator::apply_symmetric(const NodeFunction& y, NodeFunction& out) const {
  const Graph& g = *graph_;
  const Index n = g.num_vertices();
  out.resize(n);
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    const Index end = g.row_end(i);
    for (Index a = g.row_begin(i); a < end; ++a) {
      const Index j = g.head(a);
      acc += g.weight(a) * sym_scale_[j] * y[j];
    }
    out[i] = diag_[i] * y[i] + sign_ * sym_scale_[i] * acc;
  }
}

double GraphOperator::inner_product(const NodeFunction& u, const NodeFunction& v) const {
  return (u.array() * v.array() * v_weight_.array()).sum();
}

NodeFunction apply(const OperatorKind& kind, const Graph& g, const NodeFunction& u) {
  if (u.size() != g.num_vertices()) throw ValidationError("node function length mismatch");
  return GraphOperator(g, kind)(u);
}

EdgeFunction gradient(const Graph& g, const NodeFunction& u, double q) {
  EdgeFunction phi{Eigen::VectorXd::Zero(g.num_arcs())};
  for (Index i = 0; i < g.num_vertices(); ++i) {
    for (Index a = g.row_begin(i); a < g.row_end(i); ++a) {
      phi.values[a] = degree_power(g.weight(a), 1.0 - q) * (u[g.head(a)] - u[i]);
    }
  }
  return phi;
}

EdgeFunction signless_gradient(const Graph& g, const NodeFunction& u, double q) {
  EdgeFunction phi{Eigen::VectorXd::Zero(g.num_arcs())};
  for (Index i = 0; i < g.num_vertices(); ++i) {
    for (Index a = g.row_begin(i); a < g.row_end(i); ++a) {
      phi.values[a] = degree_power(g.weight(a), 1.0 - q) * (u[g.head(a)] + u[i]);
    }
  }
  return phi;
}

namespace {

NodeFunction divergence_impl(const Graph& g, const EdgeFunction& phi, double q, double r,
                             double sign) {
  if (phi.values.size() != g.num_arcs()) throw ValidationError("edge function size mismatch");
  NodeFunction out = NodeFunction::Zero(g.num_vertices());
  for (Index i = 0; i < g.num_vertices(); ++i) {
    double acc = 0.0;
    for (Index a = g.row_begin(i); a < g.row_end(i); ++a) {
      const double ji = phi.values[g.reverse_arc(a)];
      const double ij = phi.values[a];
      acc += degree_power(g.weight(a), q) * (ji + sign * ij);
    }
    out[i] = 0.5 * degree_power(g.degree(i), -r) * acc;
  }
  return out;
}

}  // namespace

NodeFunction divergence(const Graph& g, const EdgeFunction& phi, double q, double r) {
  return divergence_impl(g, phi, q, r, -1.0);
}

NodeFunction signless_divergence(const Graph& g, const EdgeFunction& phi, double q, double r) {
  return divergence_impl(g, phi, q, r, 1.0);
}

double inner_product_e(const Graph& g, const EdgeFunction& phi, const EdgeFunction& psi,
                       double q) {
  if (phi.values.size() != g.num_arcs() || psi.values.size() != g.num_arcs()) {
    throw ValidationError("edge function size mismatch");
  }
  double s = 0.0;
  for (Index a = 0; a < g.num_arcs(); ++a) {
    s += phi.values[a] * psi.values[a] * degree_power(g.weight(a), 2.0 * q - 1.0);
  }
  return 0.5 * s;
}

double rayleigh(const OperatorKind& kind, const Graph& g, const NodeFunction& u) {
  GraphOperator op(g, kind);
  const double denom = op.inner_product(u, u);
  if (!(denom > 0.0)) throw ValidationError("Rayleigh quotient of a zero function");
  return op.inner_product(u, op(u)) / denom;
}

Eigen::MatrixXd dense_matrix(const OperatorKind& kind, const Graph& g) {
  const GraphOperator op(g, kind);
  const Index n = g.num_vertices();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  NodeFunction e = NodeFunction::Zero(n), col;
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

Eigen::MatrixXd dense_symmetric_matrix(const OperatorKind& kind, const Graph& g) {
  kind.validate();
  const Index n = g.num_vertices();
  const double sign = kind.is_signless() ? 1.0 : -1.0;
  const double half = kind.is_symmetric() ? -0.5 : -0.5 * kind.r;
  NodeFunction scale(n);
  for (Index i = 0; i < n; ++i) scale[i] = degree_power(g.degree(i), half);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const double d = g.degree(i);
    if (d > 0.0) m(i, i) = kind.is_symmetric() ? 1.0 : degree_power(d, 1.0 - kind.r);
    for (Index a = g.row_begin(i); a < g.row_end(i); ++a) {
      const Index j = g.head(a);
      m(i, j) = sign * scale[i] * g.weight(a) * scale[j];
    }
  }
  return m;
}

}  // namespace smbo
