#include "smbo/diffusion.hpp"

#include <cmath>
#include <sstream>

#include "smbo/random.hpp"

namespace smbo {

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "spectral") return SolverKind::kSpectral;
  if (name == "euler") return SolverKind::kEulerExplicit;
  if (name == "implicit") return SolverKind::kEulerImplicit;
  throw ValidationError("unknown solver '" + name + "' (expected spectral, euler or implicit)");
}

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kSpectral:
      return "spectral";
    case SolverKind::kEulerExplicit:
      return "euler";
    case SolverKind::kEulerImplicit:
      return "implicit";
  }
  return "unknown";
}

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("diffusion time tau must be positive");
}

void check_steps(Index steps) {
  if (steps < 1) throw ValidationError("number of time steps M must be at least 1");
}

}  // namespace

SpectralDiffusion::SpectralDiffusion(const Graph& g, SpectralBasis basis, double tau)
    : graph_(&g), basis_(std::move(basis)), tau_(tau) {
  check_tau(tau);
  if (basis_.dimension() != g.num_vertices()) {
    throw ValidationError("spectral basis does not belong to this graph");
  }
  const BasisInnerProduct expected =
      basis_.kind.is_symmetric() ? BasisInnerProduct::kEuclidean : BasisInnerProduct::kVertex;
  if (basis_.inner_product != expected) {
    throw ValidationError("spectral basis inner product does not match operator " +
                          basis_.kind.name());
  }
  decay_ = (-tau * basis_.lambdas.array()).exp().matrix();
  weighted_phis_ = basis_.phis;
  if (expected == BasisInnerProduct::kVertex && basis_.kind.r != 0.0) {
    for (Index i = 0; i < g.num_vertices(); ++i) {
      weighted_phis_.row(i) *= std::pow(g.degree(i), basis_.kind.r);
    }
  }
}

NodeFunction SpectralDiffusion::diffuse(const NodeFunction& u0) const {
  if (u0.size() != basis_.dimension()) throw ValidationError("node function length mismatch");
  const Eigen::VectorXd coeff = (weighted_phis_.transpose() * u0).cwiseProduct(decay_);
  return basis_.phis * coeff;
}

double estimate_lambda_max(const Graph& g, const OperatorKind& kind, int iterations,
                           std::uint64_t seed) {
  const GraphOperator op(g, kind);
  const Index n = g.num_vertices();
  const CounterRng rng(seed, streams::kPowerIteration);
  NodeFunction y(n), z;
  for (Index i = 0; i < n; ++i) y[i] = 2.0 * rng.uniform(static_cast<std::uint64_t>(i)) - 1.0;
  y.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    op.apply_symmetric(y, z);
    lambda = y.dot(z);
    const double norm = z.norm();
    if (norm == 0.0) break;
    y = z / norm;
  }
  return lambda;
}

ExplicitEulerDiffusion::ExplicitEulerDiffusion(const Graph& g, OperatorKind kind, double tau,
                                               Index steps, std::optional<double> lambda_max)
    : op_(g, kind), tau_(tau), steps_(steps) {
  check_tau(tau);
  check_steps(steps);
  const double step = dt();
  if (lambda_max) {
    if (step * *lambda_max >= 2.0) {
      std::ostringstream os;
      os << "explicit Euler unstable: dt*lambda_max = " << step * *lambda_max
         << " >= 2 (dt = " << step << ", lambda_max = " << *lambda_max << ")";
      throw ValidationError(os.str());
    }
  } else {
    const double estimate = estimate_lambda_max(g, kind);
    if (step * estimate >= 2.0) {
      std::ostringstream os;
      os << "explicit Euler likely unstable: dt*lambda_max ~ " << step * estimate
         << " >= 2 (dt = " << step << ", estimated lambda_max = " << estimate << ")";
      warning_ = os.str();
    }
  }
}

NodeFunction ExplicitEulerDiffusion::diffuse(const NodeFunction& u0) const {
  if (u0.size() != op_.size()) throw ValidationError("node function length mismatch");
  const double step = dt();
  NodeFunction u = u0, next;
  for (Index m = 0; m < steps_; ++m) {
    const double sup = op_.euler_step(u, next, step);
    u.swap(next);
    if (!(sup <= 1e12)) {
      std::ostringstream os;
      os << "explicit Euler blew up at step " << m + 1 << " of " << steps_ << " (dt = " << step
         << ", |u|_inf = " << sup << ")";
      throw NumericalError(os.str());
    }
  }
  return u;
}

ImplicitEulerDiffusion::ImplicitEulerDiffusion(const Graph& g, OperatorKind kind, double tau,
                                               Index steps, CgOptions cg)
    : op_(g, kind), tau_(tau), steps_(steps), cg_(cg) {
  check_tau(tau);
  check_steps(steps);
  if (cg_.max_iterations <= 0) cg_.max_iterations = 10 * g.num_vertices() + 100;
  const double step = tau / static_cast<double>(steps);
  inv_diag_ = (1.0 + step * op_.symmetric_diagonal().array()).inverse().matrix();
}

NodeFunction ImplicitEulerDiffusion::diffuse(const NodeFunction& u0) const {
  if (u0.size() != op_.size()) throw ValidationError("node function length mismatch");
  // The system matrix I + dt Delta is self-adjoint and positive definite in
  // the operator's own inner product, so CG runs in that inner product on the
  // original coordinates (equivalent to CG on the D^{r/2}-symmetrised system).
  const double step = tau_ / static_cast<double>(steps_);
  auto ip = [this](const NodeFunction& a, const NodeFunction& b) { return op_.inner_product(a, b); };
  NodeFunction x = u0, rhs, r, z, p, ap, lp;
  for (Index m = 0; m < steps_; ++m) {
    rhs = x;
    op_.apply(x, lp);
    r = rhs - (x + step * lp);  // warm start from the previous iterate
    const double rhs_norm = std::sqrt(ip(rhs, rhs));
    if (rhs_norm == 0.0) continue;
    double res = std::sqrt(ip(r, r));
    if (res <= cg_.relative_tolerance * rhs_norm) continue;
    z = r.cwiseProduct(inv_diag_);
    p = z;
    double rz = ip(r, z);
    Index it = 0;
    for (; it < cg_.max_iterations; ++it) {
      op_.apply(p, lp);
      ap = p + step * lp;
      const double pap = ip(p, ap);
      if (!(pap > 0.0)) break;
      const double alpha = rz / pap;
      x += alpha * p;
      r -= alpha * ap;
      res = std::sqrt(ip(r, r));
      if (res <= cg_.relative_tolerance * rhs_norm) break;
      z = r.cwiseProduct(inv_diag_);
      const double rz_next = ip(r, z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    if (!(res <= cg_.relative_tolerance * rhs_norm)) {
      std::ostringstream os;
      os << "implicit Euler: CG stagnated at step " << m + 1 << " after " << it
         << " iterations (relative residual " << res / rhs_norm << ", tolerance "
         << cg_.relative_tolerance << ")";
      throw NumericalError(os.str());
    }
  }
  return x;
}

NodeFunction diffuse_spectral(const SpectralBasis& basis, const Graph& g, const NodeFunction& u0,
                              double tau) {
  return SpectralDiffusion(g, basis, tau).diffuse(u0);
}

NodeFunction diffuse_euler_explicit(const OperatorKind& kind, const Graph& g,
                                    const NodeFunction& u0, double tau, Index steps) {
  return ExplicitEulerDiffusion(g, kind, tau, steps).diffuse(u0);
}

NodeFunction diffuse_euler_implicit(const OperatorKind& kind, const Graph& g,
                                    const NodeFunction& u0, double tau, Index steps) {
  return ImplicitEulerDiffusion(g, kind, tau, steps).diffuse(u0);
}

}  // namespace smbo
