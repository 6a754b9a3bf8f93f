#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "smbo/types.hpp"

namespace smbo {

enum class Which { kLargest, kSmallest };

/// Knobs of the restarted block Lanczos solver.
struct LanczosOptions {
  Index block_size = 0;     // 0: clamp(K / 10, 4, 16); never above K or 32
  Index subspace_size = 0;  // 0: 2K + 40, at least K + 2b
  double tolerance = 1e-10; // residual <= tolerance * max(1, |theta|)
  int max_restarts = 2000;
  std::uint64_t seed = 0;   // start block
};

/// Block matvec: out = A * in for a symmetric A (columns are vectors).
using BlockOperator = std::function<void(const Eigen::MatrixXd& in, Eigen::MatrixXd& out)>;

struct EigenResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // Euclidean-orthonormal columns
  int restarts = 0;
  Index matvecs = 0;
  double max_residual = 0.0;
};

class LanczosError : public NumericalError {
 public:
  LanczosError(const std::string& what, int restarts, Index matvecs, double residual)
      : NumericalError(what), restarts_(restarts), matvecs_(matvecs), residual_(residual) {}
  int restarts() const noexcept { return restarts_; }
  Index matvecs() const noexcept { return matvecs_; }
  double residual() const noexcept { return residual_; }

 private:
  int restarts_;
  Index matvecs_;
  double residual_;
};

/// K extreme eigenpairs of a symmetric n x n operator.
///
/// Thick-restart block Lanczos with full reorthogonalisation and an explicit
/// Rayleigh-Ritz step on V^T A V, so residuals are true residuals. Restarts
/// keep the best Ritz vectors and continue from their residual block.
/// Eigenvalues of multiplicity up to the block size are resolved. When the
/// subspace would cover the whole space the problem is solved densely.
EigenResult block_lanczos(const BlockOperator& op, Index n, Index k, Which which,
                          const LanczosOptions& options = {});

}  // namespace smbo
