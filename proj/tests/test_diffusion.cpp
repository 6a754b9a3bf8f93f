#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "smbo/diffusion.hpp"
#include "support.hpp"

using namespace smbo;
using doctest::Approx;

namespace {

// exp(-tau L) u0 from the dense reference matrix.
NodeFunction reference_diffusion(const OperatorKind& kind, const Graph& g, const NodeFunction& u0, double tau) {
  const Eigen::MatrixXd e = (-tau * fixtures::reference_matrix(kind, g)).exp();
  return e * u0;
}

}  // namespace

TEST_CASE("solver names") {
  CHECK(parse_solver_kind("spectral") == SolverKind::kSpectral);
  CHECK(parse_solver_kind("euler") == SolverKind::kEulerExplicit);
  CHECK(parse_solver_kind("implicit") == SolverKind::kEulerImplicit);
  CHECK(solver_name(SolverKind::kEulerImplicit) == "implicit");
  CHECK_THROWS_AS(parse_solver_kind("rk4"), ValidationError);
}

TEST_CASE("K2 single steps") {
  const Graph k2 = fixtures::complete(2);
  const NodeFunction ex = diffuse_euler_explicit(kL1Plus, k2, NodeFunction{{1, 1}}, 1.0, 1);
  CHECK(ex[0] == -1.0);
  CHECK(ex[1] == -1.0);
  const NodeFunction im = diffuse_euler_implicit(kL1Plus, k2, NodeFunction{{1, 1}}, 1.0, 1);
  CHECK(im[0] == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(im[1] == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("zero modes are stationary for every solver") {
  std::mt19937_64 rng(4);
  const Graph g = fixtures::random_bipartite(rng, 6, 7, 0.4);
  NodeFunction mode(13);
  for (Index i = 0; i < 13; ++i) mode[i] = i < 6 ? 1.0 : -1.0;
  for (const auto& kind : {kL1Plus, kL0Plus}) {
    const SpectralBasis b = dense_eigenpairs(g, kind);
    for (double tau : {0.1, 5.0, 100.0}) {
      CHECK(diffuse_euler_explicit(kind, g, mode, tau, tau < 1 ? 10 : Index(tau * 100)) == mode);
      CHECK(diffuse_euler_implicit(kind, g, mode, tau, 7) == mode);
      CHECK((diffuse_spectral(b, g, mode, tau) - mode).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  // The symmetric normalisation's zero mode carries a D^{1/2} factor.
  const NodeFunction smode = mode.cwiseProduct(g.degrees().cwiseSqrt());
  const SpectralBasis bs = dense_eigenpairs(g, kLsPlus);
  for (double tau : {0.1, 5.0, 100.0}) {
    CHECK((diffuse_euler_explicit(kLsPlus, g, smode, tau, Index(tau * 100) + 10) - smode).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((diffuse_euler_implicit(kLsPlus, g, smode, tau, 7) - smode).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((diffuse_spectral(bs, g, smode, tau) - smode).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("eigenfunctions decay by exp(-lambda tau)") {
  std::mt19937_64 rng(9);
  const Graph g = fixtures::random_graph(rng, 25, 0.2, true);
  const SpectralBasis b = dense_eigenpairs(g, kL1Plus);
  for (Index k : {0, 3, 10}) {
    const NodeFunction phi = b.phis.col(k);
    const NodeFunction out = diffuse_spectral(b, g, phi, 0.7);
    CHECK((out - std::exp(-b.lambdas[k] * 0.7) * phi).norm() <= 1e-10 * phi.norm());
  }
}

TEST_CASE("full spectral diffusion matches the matrix exponential") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 4; ++t) {
    const Graph g = fixtures::random_graph(rng, 20, 0.3, t % 2 == 0);
    const NodeFunction u0 = fixtures::random_binary(rng, g.num_vertices());
    for (const auto& kind : {kL1Plus, kL0Plus, kLsPlus}) {
      const SpectralBasis b = dense_eigenpairs(g, kind);
      const NodeFunction ref = reference_diffusion(kind, g, u0, 1.3);
      CHECK((diffuse_spectral(b, g, u0, 1.3) - ref).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("Euler solvers converge to the exponential at first order") {
  std::mt19937_64 rng(11);
  const Graph g = fixtures::random_graph(rng, 20, 0.3);
  const NodeFunction u0 = fixtures::random_binary(rng, g.num_vertices());
  const NodeFunction ref = reference_diffusion(kL1Plus, g, u0, 1.0);
  const double e1 = (diffuse_euler_explicit(kL1Plus, g, u0, 1.0, 100) - ref).cwiseAbs().maxCoeff();
  const double e2 = (diffuse_euler_explicit(kL1Plus, g, u0, 1.0, 1000) - ref).cwiseAbs().maxCoeff();
  CHECK(e1 / e2 == Approx(10.0).epsilon(0.1));
  const double i1 = (diffuse_euler_implicit(kL1Plus, g, u0, 1.0, 100) - ref).cwiseAbs().maxCoeff();
  const double i2 = (diffuse_euler_implicit(kL1Plus, g, u0, 1.0, 1000) - ref).cwiseAbs().maxCoeff();
  CHECK(i1 / i2 == Approx(10.0).epsilon(0.1));
}

TEST_CASE("semigroup decay bound on a connected non-bipartite graph") {
  const Graph g = fixtures::petersen();
  const SpectralBasis b = dense_eigenpairs(g, kL1Plus);
  std::mt19937_64 rng(12);
  const NodeFunction u0 = fixtures::random_vector(rng, 10);
  const double n0 = std::sqrt(b.inner(g, u0, u0));
  double previous = n0;
  for (double tau : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const NodeFunction u = diffuse_spectral(b, g, u0, tau);
    const double nu = std::sqrt(b.inner(g, u, u));
    CHECK(nu <= std::exp(-b.lambdas[0] * tau) * n0 + 1e-8);
    CHECK(nu <= previous + 1e-12);
    previous = nu;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("spectral basis must match the graph") {
  const SpectralBasis b = dense_eigenpairs(fixtures::complete(3), kL1Plus);
  CHECK_THROWS_AS(SpectralDiffusion(fixtures::complete(4), b, 1.0), ValidationError);
  CHECK_THROWS_AS(SpectralDiffusion(fixtures::complete(3), b, -1.0), ValidationError);
  SpectralBasis wrong = b;
  wrong.inner_product = BasisInnerProduct::kEuclidean;
  CHECK_THROWS_AS(SpectralDiffusion(fixtures::complete(3), wrong, 1.0), ValidationError);
}

TEST_CASE("explicit Euler stability checks") {
  const Graph k3 = fixtures::complete(3);
  CHECK_THROWS_AS(ExplicitEulerDiffusion(k3, kL1Plus, 10.0, 2, 2.0), ValidationError);
  const ExplicitEulerDiffusion warned(k3, kL1Plus, 10.0, 2);
  CHECK_FALSE(warned.warning().empty());
  const ExplicitEulerDiffusion fine(k3, kL1Plus, 1.0, 100);
  CHECK(fine.warning().empty());
  CHECK(fine.dt() == 0.01);

  // dt * lambda = 40 amplifies the top mode by 39 per step.
  const ExplicitEulerDiffusion blowup(k3, kL1Plus, 800.0, 40);
  try {
    blowup.diffuse(NodeFunction{{1, 1, -1}});
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("dt") != std::string::npos);
  }
}

TEST_CASE("implicit Euler reports CG stagnation") {
  std::mt19937_64 rng(13);
  const Graph g = fixtures::random_graph(rng, 60, 0.1, true);
  CgOptions cg;
  cg.max_iterations = 1;
  cg.relative_tolerance = 1e-15;
  const ImplicitEulerDiffusion solver(g, kL0Plus, 50.0, 1, cg);
  CHECK_THROWS_AS(solver.diffuse(fixtures::random_binary(rng, g.num_vertices())), NumericalError);
}

TEST_CASE("lambda_max estimate") {
  // L_0^+ of K_4 has top eigenvalue 3 + 3 = 6.
  const double est = estimate_lambda_max(fixtures::complete(4), kL0Plus, 50);
  CHECK(est == Approx(6.0).epsilon(1e-6));
}
