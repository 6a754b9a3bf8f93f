#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smbo/graph.hpp"

namespace smbo {

enum class Family { kStandard, kSignless };
enum class Normalization { kParametric, kSymmetric };

/// Which graph Laplacian: Delta_r / Delta_r^+ (parametric in r) or
/// Delta_s / Delta_s^+ (symmetric normalisation).
///
/// Matrix forms: L_r = D^{1-r} - D^{-r}A, L_r^+ = D^{1-r} + D^{-r}A,
/// L_s = I - D^{-1/2}AD^{-1/2}, L_s^+ = I + D^{-1/2}AD^{-1/2}.
struct OperatorKind {
  Family family = Family::kSignless;
  Normalization normalization = Normalization::kParametric;
  double r = 1.0;  // ignored for symmetric normalisation

  static OperatorKind standard(double r) { return {Family::kStandard, Normalization::kParametric, r}; }
  static OperatorKind signless(double r) { return {Family::kSignless, Normalization::kParametric, r}; }
  static OperatorKind standard_symmetric() { return {Family::kStandard, Normalization::kSymmetric, 0.5}; }
  static OperatorKind signless_symmetric() { return {Family::kSignless, Normalization::kSymmetric, 0.5}; }

  bool is_signless() const noexcept { return family == Family::kSignless; }
  bool is_symmetric() const noexcept { return normalization == Normalization::kSymmetric; }

  /// The kind with the opposite sign in front of the adjacency term.
  OperatorKind mirrored() const noexcept {
    OperatorKind k = *this;
    k.family = is_signless() ? Family::kStandard : Family::kSignless;
    return k;
  }

  /// Short name: l0, l1, ls, l0plus, l1plus, lsplus, or l<r>/l<r>plus.
  std::string name() const;

  /// Validates r in [0,1].
  void validate() const;

  friend bool operator==(const OperatorKind& a, const OperatorKind& b) noexcept {
    return a.family == b.family && a.normalization == b.normalization &&
           (a.is_symmetric() || a.r == b.r);
  }
};

// The six operators the command line exposes.
inline const OperatorKind kL0 = OperatorKind::standard(0.0);
inline const OperatorKind kL1 = OperatorKind::standard(1.0);
inline const OperatorKind kLs = OperatorKind::standard_symmetric();
inline const OperatorKind kL0Plus = OperatorKind::signless(0.0);
inline const OperatorKind kL1Plus = OperatorKind::signless(1.0);
inline const OperatorKind kLsPlus = OperatorKind::signless_symmetric();

/// Parses "l0", "l1", "ls", "l0plus", "l1plus", "lsplus".
OperatorKind parse_operator_kind(const std::string& name);

/// Matrix-free application of a Laplacian, bound to one graph.
/// Vertex scalings are precomputed; one apply is a single pass over the arcs.
class GraphOperator {
 public:
  GraphOperator(const Graph& g, OperatorKind kind);
  GraphOperator(Graph&&, OperatorKind) = delete;  // keeps a pointer to the graph

  const Graph& graph() const noexcept { return *graph_; }
  OperatorKind kind() const noexcept { return kind_; }
  Index size() const noexcept { return graph_->num_vertices(); }

  /// out = Delta u. `out` must not alias `u`.
  void apply(const NodeFunction& u, NodeFunction& out) const;
  NodeFunction operator()(const NodeFunction& u) const;

  /// next = u - dt Delta u in one pass; returns |next|_inf.
  double euler_step(const NodeFunction& u, NodeFunction& next, double dt) const;

  /// out = S y where S is the symmetric matrix similar to this operator:
  /// S = D^{r/2} L D^{-r/2} for parametric kinds and S = L for symmetric ones.
  void apply_symmetric(const NodeFunction& y, NodeFunction& out) const;

  /// Diagonal of the symmetric form (d_i^{1-r}, or 1 for symmetric kinds).
  const NodeFunction& symmetric_diagonal() const noexcept { return diag_; }

  /// D^{r/2} (ones for symmetric kinds): x -> to_symmetric(x) maps node
  /// functions of L to vectors for S, preserving the operator's inner product
  /// as the Euclidean one.
  NodeFunction to_symmetric(const NodeFunction& x) const { return x.cwiseProduct(half_scale_); }
  NodeFunction from_symmetric(const NodeFunction& y) const { return y.cwiseProduct(inv_half_scale_); }

  /// Inner product in which the operator is self-adjoint: V with this r for
  /// parametric kinds, Euclidean for symmetric ones.
  double inner_product(const NodeFunction& u, const NodeFunction& v) const;

 private:
  template <bool kScaledColumns, bool kUnitWeights, typename Sink>
  void for_each_row(const NodeFunction& u, Sink&& sink) const;
  template <typename Sink>
  void dispatch(const NodeFunction& u, Sink&& sink) const;

  const Graph* graph_;
  OperatorKind kind_;
  std::vector<std::int32_t> heads_;  // compact copy of the arc heads
  bool unit_weights_ = false;
  double sign_;             // +1 signless, -1 standard
  NodeFunction diag_;       // diagonal of the matrix (symmetric form equals it)
  NodeFunction row_scale_;  // d_i^{-r} or d_i^{-1/2}
  NodeFunction col_scale_;  // 1 or d_j^{-1/2}
  NodeFunction sym_scale_;  // d_i^{-r/2} (parametric) or d_i^{-1/2}
  NodeFunction half_scale_;
  NodeFunction inv_half_scale_;
  NodeFunction v_weight_;   // d_i^r for parametric kinds, ones otherwise
};

/// Delta u for the given kind.
NodeFunction apply(const OperatorKind& kind, const Graph& g, const NodeFunction& u);

/// Function on arcs, indexed like the graph's arc slots; zero off E.
struct EdgeFunction {
  Eigen::VectorXd values;
};

/// (grad u)_ij = w_ij^{1-q} (u_j - u_i).
EdgeFunction gradient(const Graph& g, const NodeFunction& u, double q = 1.0);
/// (grad+ u)_ij = w_ij^{1-q} (u_j + u_i).
EdgeFunction signless_gradient(const Graph& g, const NodeFunction& u, double q = 1.0);
/// (div phi)_i = 1/2 d_i^{-r} sum_j w_ij^q (phi_ji - phi_ij).
NodeFunction divergence(const Graph& g, const EdgeFunction& phi, double q = 1.0, double r = 0.0);
/// (div+ phi)_i = 1/2 d_i^{-r} sum_j w_ij^q (phi_ji + phi_ij).
NodeFunction signless_divergence(const Graph& g, const EdgeFunction& phi, double q = 1.0,
                                 double r = 0.0);

/// <phi,psi>_E = 1/2 sum_ij phi_ij psi_ij w_ij^{2q-1}.
double inner_product_e(const Graph& g, const EdgeFunction& phi, const EdgeFunction& psi,
                       double q = 1.0);

/// Rayleigh quotient <u, Delta u> / <u, u> in the operator's inner product.
double rayleigh(const OperatorKind& kind, const Graph& g, const NodeFunction& u);

/// Dense matrix of the operator (tests and the dense eigensolver only).
Eigen::MatrixXd dense_matrix(const OperatorKind& kind, const Graph& g);

/// Dense symmetric form S (see GraphOperator::apply_symmetric).
Eigen::MatrixXd dense_symmetric_matrix(const OperatorKind& kind, const Graph& g);

}  // namespace smbo
