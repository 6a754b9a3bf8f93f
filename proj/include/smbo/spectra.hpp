#pragma once

#include <optional>

#include "smbo/lanczos.hpp"
#include "smbo/operators.hpp"

namespace smbo {

/// Inner product in which a basis is orthonormal.
enum class BasisInnerProduct {
  kVertex,     // <u,v>_V with the operator's r
  kEuclidean,  // symmetric normalisations
};

/// K eigenpairs (lambda_k, phi_k) of one operator, ascending in lambda.
struct SpectralBasis {
  OperatorKind kind;
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd phis;  // n x K, column k is phi_k
  BasisInnerProduct inner_product = BasisInnerProduct::kVertex;
  std::optional<double> largest_eigenvalue;  // lambda_n when known

  Index size() const noexcept { return lambdas.size(); }
  Index dimension() const noexcept { return phis.rows(); }

  /// <u,v> in the basis' declared inner product.
  double inner(const Graph& g, const NodeFunction& u, const NodeFunction& v) const;
  /// Coefficients <phi_k, u> for all k.
  Eigen::VectorXd coefficients(const Graph& g, const NodeFunction& u) const;
};

/// K smallest eigenpairs of Delta_1^+ or Delta_s^+, computed as the K largest
/// pairs of the symmetric standard Laplacian L_s and mirrored lambda -> 2 - lambda.
/// Delta_1^+ eigenfunctions are D^{-1/2} v, orthonormal in V with r = 1.
SpectralBasis smallest_signless_eigenpairs(const Graph& g, const OperatorKind& kind, Index k,
                                           const LanczosOptions& options = {});

/// K smallest eigenpairs of any operator by Lanczos on its symmetric form.
/// Delta_1^+ / Delta_s^+ go through the mirror above.
SpectralBasis smallest_eigenpairs(const Graph& g, const OperatorKind& kind, Index k,
                                  const LanczosOptions& options = {});

inline constexpr Index kDefaultDenseCap = 5000;

/// All n eigenpairs of any operator by a dense symmetric eigensolver.
/// Throws ValidationError above `dense_cap` vertices.
SpectralBasis dense_eigenpairs(const Graph& g, const OperatorKind& kind,
                               Index dense_cap = kDefaultDenseCap);

/// Dense decomposition of a signless operator (Delta_0^+ by default).
SpectralBasis dense_signless_eigenpairs(const Graph& g, const OperatorKind& kind = kL0Plus,
                                        Index dense_cap = kDefaultDenseCap);

/// Largest eigenvalue of an operator (Lanczos on the symmetric form).
double largest_eigenvalue(const Graph& g, const OperatorKind& kind,
                          const LanczosOptions& options = {});

/// Number of eigenvalues <= tol in the basis.
Index count_zero_modes(const SpectralBasis& basis, double tol = 1e-8);

/// max_k ||Delta phi_k - lambda_k phi_k||_2 / max(1, lambda_k).
double max_residual(const Graph& g, const SpectralBasis& basis);

/// The first K pairs of a basis.
SpectralBasis truncate(const SpectralBasis& basis, Index k);

}  // namespace smbo
