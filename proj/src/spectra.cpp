#include "smbo/spectra.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace smbo {

namespace {

BasisInnerProduct inner_product_for(const OperatorKind& kind) {
  return kind.is_symmetric() ? BasisInnerProduct::kEuclidean : BasisInnerProduct::kVertex;
}

BlockOperator symmetric_block(const GraphOperator& op) {
  return [&op](const Eigen::MatrixXd& in, Eigen::MatrixXd& out) {
    out.resize(in.rows(), in.cols());
    NodeFunction y, z;
    for (Index c = 0; c < in.cols(); ++c) {
      y = in.col(c);
      op.apply_symmetric(y, z);
      out.col(c) = z;
    }
  };
}

// Turns eigenvectors of the symmetric form S into eigenfunctions of `kind`.
Eigen::MatrixXd from_symmetric(const GraphOperator& op, const Eigen::MatrixXd& vectors) {
  Eigen::MatrixXd phis(vectors.rows(), vectors.cols());
  for (Index c = 0; c < vectors.cols(); ++c) phis.col(c) = op.from_symmetric(vectors.col(c));
  return phis;
}

void check_no_isolated(const Graph& g) {
  if (g.num_vertices() == 0) throw ValidationError("empty graph");
  if (g.has_isolated_vertices()) {
    throw ValidationError("eigenpairs need a graph without isolated vertices");
  }
}

}  // namespace

double SpectralBasis::inner(const Graph& g, const NodeFunction& u, const NodeFunction& v) const {
  if (inner_product == BasisInnerProduct::kEuclidean) return u.dot(v);
  return inner_product_v(g, u, v, kind.r);
}

Eigen::VectorXd SpectralBasis::coefficients(const Graph& g, const NodeFunction& u) const {
  if (u.size() != phis.rows()) throw ValidationError("node function length mismatch");
  if (inner_product == BasisInnerProduct::kEuclidean || kind.r == 0.0) {
    return phis.transpose() * u;
  }
  NodeFunction weighted(u.size());
  for (Index i = 0; i < u.size(); ++i) weighted[i] = u[i] * std::pow(g.degree(i), kind.r);
  return phis.transpose() * weighted;
}

SpectralBasis smallest_signless_eigenpairs(const Graph& g, const OperatorKind& kind, Index k,
                                           const LanczosOptions& options) {
  const bool supported = kind.is_signless() && (kind.is_symmetric() || kind.r == 1.0);
  if (!supported) {
    throw ValidationError("mirrored eigensolver supports l1plus and lsplus only");
  }
  check_no_isolated(g);
  const Index n = g.num_vertices();
  if (k < 1 || k > n) throw ValidationError("K must lie in [1, n]");

  // L_s carries the spectrum of both L_1 and L_s; its K largest pairs mirror
  // to the K smallest of L_1^+ and L_s^+.
  const GraphOperator standard(g, kLs);
  const EigenResult res = block_lanczos(symmetric_block(standard), n, k, Which::kLargest, options);

  const GraphOperator target(g, kind);
  SpectralBasis basis;
  basis.kind = kind;
  basis.inner_product = inner_product_for(kind);
  basis.lambdas.resize(k);
  basis.phis.resize(n, k);
  for (Index c = 0; c < k; ++c) {
    const Index src = k - 1 - c;  // largest standard eigenvalue first
    basis.lambdas[c] = 2.0 - res.values[src];
    basis.phis.col(c) = res.vectors.col(src);
  }
  // Symmetric form of L_1^+ is L_s^+, so phi = D^{-1/2} v.
  basis.phis = from_symmetric(target, basis.phis);
  basis.largest_eigenvalue = 2.0;
  return basis;
}

SpectralBasis smallest_eigenpairs(const Graph& g, const OperatorKind& kind, Index k,
                                  const LanczosOptions& options) {
  if (kind.is_signless() && (kind.is_symmetric() || kind.r == 1.0)) {
    return smallest_signless_eigenpairs(g, kind, k, options);
  }
  check_no_isolated(g);
  const Index n = g.num_vertices();
  if (k < 1 || k > n) throw ValidationError("K must lie in [1, n]");
  const GraphOperator op(g, kind);
  const EigenResult res = block_lanczos(symmetric_block(op), n, k, Which::kSmallest, options);
  SpectralBasis basis;
  basis.kind = kind;
  basis.inner_product = inner_product_for(kind);
  basis.lambdas = res.values;
  basis.phis = from_symmetric(op, res.vectors);
  return basis;
}

SpectralBasis dense_eigenpairs(const Graph& g, const OperatorKind& kind, Index dense_cap) {
  check_no_isolated(g);
  const Index n = g.num_vertices();
  if (n > dense_cap) {
    throw ValidationError("graph has " + std::to_string(n) + " vertices, above the dense cap of " +
                          std::to_string(dense_cap) +
                          "; use the iterative eigensolver or raise the cap explicitly");
  }
  const Eigen::MatrixXd s = dense_symmetric_matrix(kind, g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  const GraphOperator op(g, kind);
  SpectralBasis basis;
  basis.kind = kind;
  basis.inner_product = inner_product_for(kind);
  basis.lambdas = es.eigenvalues();
  basis.phis = from_symmetric(op, es.eigenvectors());
  basis.largest_eigenvalue = es.eigenvalues()[n - 1];
  return basis;
}

SpectralBasis dense_signless_eigenpairs(const Graph& g, const OperatorKind& kind, Index dense_cap) {
  if (!kind.is_signless()) throw ValidationError("dense_signless_eigenpairs needs a signless operator");
  return dense_eigenpairs(g, kind, dense_cap);
}

double largest_eigenvalue(const Graph& g, const OperatorKind& kind, const LanczosOptions& options) {
  check_no_isolated(g);
  const GraphOperator op(g, kind);
  const EigenResult res =
      block_lanczos(symmetric_block(op), g.num_vertices(), 1, Which::kLargest, options);
  return res.values[0];
}

Index count_zero_modes(const SpectralBasis& basis, double tol) {
  Index count = 0;
  for (Index k = 0; k < basis.size(); ++k) {
    if (basis.lambdas[k] <= tol) ++count;
  }
  return count;
}

double max_residual(const Graph& g, const SpectralBasis& basis) {
  const GraphOperator op(g, basis.kind);
  double worst = 0.0;
  NodeFunction out;
  for (Index k = 0; k < basis.size(); ++k) {
    const NodeFunction phi = basis.phis.col(k);
    op.apply(phi, out);
    const double res = (out - basis.lambdas[k] * phi).norm() / std::max(1.0, basis.lambdas[k]);
    worst = std::max(worst, res);
  }
  return worst;
}

SpectralBasis truncate(const SpectralBasis& basis, Index k) {
  if (k < 1 || k > basis.size()) throw ValidationError("truncation K out of range");
  SpectralBasis out = basis;
  out.lambdas = basis.lambdas.head(k);
  out.phis = basis.phis.leftCols(k);
  return out;
}

}  // namespace smbo
