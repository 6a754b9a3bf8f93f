#pragma once

#include <memory>
#include <optional>
#include <string>

#include "smbo/operators.hpp"
#include "smbo/spectra.hpp"

namespace smbo {

enum class SolverKind { kSpectral, kEulerExplicit, kEulerImplicit };

/// "spectral", "euler", "implicit".
SolverKind parse_solver_kind(const std::string& name);
std::string solver_name(SolverKind kind);

/// Solves du/dt = -Delta u on [0, tau] for one fixed operator and tau.
class DiffusionSolver {
 public:
  virtual ~DiffusionSolver() = default;
  virtual NodeFunction diffuse(const NodeFunction& u0) const = 0;
  virtual double tau() const noexcept = 0;
  /// Non-empty when the configuration is numerically questionable.
  virtual std::string warning() const { return {}; }
};

/// u(tau) = sum_k exp(-lambda_k tau) <phi_k, u0> phi_k over the basis.
class SpectralDiffusion final : public DiffusionSolver {
 public:
  SpectralDiffusion(const Graph& g, SpectralBasis basis, double tau);
  NodeFunction diffuse(const NodeFunction& u0) const override;
  double tau() const noexcept override { return tau_; }
  const SpectralBasis& basis() const noexcept { return basis_; }

 private:
  const Graph* graph_;
  SpectralBasis basis_;
  double tau_;
  Eigen::VectorXd decay_;
  Eigen::MatrixXd weighted_phis_;  // phi_k scaled by d^r, so coefficients are one product
};

/// u^{m+1} = u^m - dt Delta u^m, dt = tau / M.
class ExplicitEulerDiffusion final : public DiffusionSolver {
 public:
  /// `lambda_max`, when known, is checked against the stability limit
  /// dt * lambda_max < 2 (violations throw). Otherwise it is estimated with
  /// 20 power iterations and a violation only produces a warning.
  ExplicitEulerDiffusion(const Graph& g, OperatorKind kind, double tau, Index steps,
                         std::optional<double> lambda_max = std::nullopt);
  NodeFunction diffuse(const NodeFunction& u0) const override;
  double tau() const noexcept override { return tau_; }
  std::string warning() const override { return warning_; }
  double dt() const noexcept { return tau_ / static_cast<double>(steps_); }

 private:
  GraphOperator op_;
  double tau_;
  Index steps_;
  std::string warning_;
};

struct CgOptions {
  double relative_tolerance = 1e-10;
  Index max_iterations = 0;  // 0: 10 n + 100
};

/// (I + dt Delta) u^{m+1} = u^m, each step by Jacobi-preconditioned conjugate
/// gradients on the symmetrised system.
class ImplicitEulerDiffusion final : public DiffusionSolver {
 public:
  ImplicitEulerDiffusion(const Graph& g, OperatorKind kind, double tau, Index steps,
                         CgOptions cg = {});
  NodeFunction diffuse(const NodeFunction& u0) const override;
  double tau() const noexcept override { return tau_; }

 private:
  GraphOperator op_;
  double tau_;
  Index steps_;
  CgOptions cg_;
  NodeFunction inv_diag_;
};

/// Rayleigh-quotient estimate of lambda_max from `iterations` power steps.
double estimate_lambda_max(const Graph& g, const OperatorKind& kind, int iterations = 20,
                           std::uint64_t seed = 0);

NodeFunction diffuse_spectral(const SpectralBasis& basis, const Graph& g, const NodeFunction& u0,
                              double tau);
NodeFunction diffuse_euler_explicit(const OperatorKind& kind, const Graph& g,
                                    const NodeFunction& u0, double tau, Index steps);
NodeFunction diffuse_euler_implicit(const OperatorKind& kind, const Graph& g,
                                    const NodeFunction& u0, double tau, Index steps);

}  // namespace smbo
