#include "smbo/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "smbo/random.hpp"

namespace smbo {

namespace {

class StartVectors {
 public:
  StartVectors(std::uint64_t seed, Index n) : rng_(seed, streams::kLanczosStart), n_(n) {}

  void fill(Eigen::Ref<Eigen::VectorXd> v) {
    for (Index i = 0; i < n_; ++i) v[i] = 2.0 * rng_.uniform(counter_++) - 1.0;
  }

 private:
  CounterRng rng_;
  Index n_;
  std::uint64_t counter_ = 0;
};

// Orthonormalises the columns of `p` against basis.leftCols(cur) and among
// themselves (two passes of classical Gram-Schmidt per column). Columns that
// collapse are replaced with fresh random vectors.
void orthonormalise_block(const Eigen::MatrixXd& basis, Index cur, Eigen::MatrixXd& p,
                          StartVectors& random) {
  const Index n = p.rows();
  for (Index c = 0; c < p.cols(); ++c) {
    for (int attempt = 0;; ++attempt) {
      Eigen::VectorXd v = p.col(c);
      const double before = v.norm();
      for (int pass = 0; pass < 2; ++pass) {
        if (cur > 0) v -= basis.leftCols(cur) * (basis.leftCols(cur).transpose() * v);
        if (c > 0) v -= p.leftCols(c) * (p.leftCols(c).transpose() * v);
      }
      const double after = v.norm();
      if (before > 0.0 && after > 1e-10 * before && after > 1e-300) {
        p.col(c) = v / after;
        break;
      }
      if (attempt > 10) throw NumericalError("Lanczos: cannot extend the Krylov basis");
      Eigen::VectorXd fresh(n);
      random.fill(fresh);
      p.col(c) = fresh;
    }
  }
}

EigenResult dense_solve(const BlockOperator& op, Index n, Index k, Which which) {
  Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd a(n, n);
  op(identity, a);
  a = 0.5 * (a + a.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  EigenResult out;
  const Index first = which == Which::kSmallest ? 0 : n - k;
  out.values = es.eigenvalues().segment(first, k);
  out.vectors = es.eigenvectors().middleCols(first, k);
  out.matvecs = n;
  Eigen::MatrixXd av(n, k);
  op(out.vectors, av);
  out.max_residual =
      (av - out.vectors * out.values.asDiagonal()).colwise().norm().maxCoeff();
  return out;
}

}  // namespace

EigenResult block_lanczos(const BlockOperator& op, Index n, Index k, Which which,
                          const LanczosOptions& options) {
  if (k < 1 || k > n) throw ValidationError("number of eigenpairs must lie in [1, n]");
  const Index b = std::min(k, options.block_size > 0 ? std::min<Index>(options.block_size, 32)
                                                    : std::clamp<Index>(k / 10, 4, 16));
  Index m = options.subspace_size > 0 ? options.subspace_size : 2 * k + 40;
  // Round up to whole blocks past the kept part.
  if (m < k + 2 * b) m = k + 2 * b;
  if (m >= n || n <= 64) return dense_solve(op, n, k, which);

  StartVectors random(options.seed, n);
  Eigen::MatrixXd v(n, m), av(n, m), t = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd p(n, b), ap(n, b);
  for (Index c = 0; c < b; ++c) random.fill(p.col(c));

  Index cur = 0;
  Index matvecs = 0;
  double worst = 0.0;
  const double sign = which == Which::kLargest ? -1.0 : 1.0;  // sort key sign

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    while (cur + b <= m) {
      orthonormalise_block(v, cur, p, random);
      v.middleCols(cur, b) = p;
      op(p, ap);
      matvecs += b;
      av.middleCols(cur, b) = ap;
      const Eigen::MatrixXd coupling = v.leftCols(cur + b).transpose() * ap;
      t.block(0, cur, cur + b, b) = coupling;
      t.block(cur, 0, b, cur + b) = coupling.transpose();
      cur += b;
      p = ap;
    }

    const Eigen::MatrixXd projected = 0.5 * (t.topLeftCorner(cur, cur) +
                                             t.topLeftCorner(cur, cur).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projected);
    if (es.info() != Eigen::Success) throw NumericalError("Lanczos: projected eigensolve failed");

    // Most wanted first; stable so equal values keep iteration order.
    std::vector<Index> order(static_cast<std::size_t>(cur));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
      return sign * es.eigenvalues()[x] < sign * es.eigenvalues()[y];
    });

    const Index keep = std::max(k, std::min(m - 2 * b, (k + m) / 2));
    Eigen::MatrixXd y(cur, keep);
    Eigen::VectorXd theta(keep);
    for (Index c = 0; c < keep; ++c) {
      y.col(c) = es.eigenvectors().col(order[c]);
      theta[c] = es.eigenvalues()[order[c]];
    }
    Eigen::MatrixXd x = v.leftCols(cur) * y;
    Eigen::MatrixXd ax = av.leftCols(cur) * y;
    Eigen::MatrixXd resid = ax - x * theta.asDiagonal();

    worst = 0.0;
    std::vector<Index> unconverged;
    for (Index c = 0; c < k; ++c) {
      const double rn = resid.col(c).norm();
      const double scaled = rn / std::max(1.0, std::abs(theta[c]));
      worst = std::max(worst, scaled);
      if (scaled > options.tolerance) unconverged.push_back(c);
    }

    if (unconverged.empty()) {
      EigenResult out;
      out.restarts = restart;
      out.matvecs = matvecs;
      out.max_residual = worst;
      // Ascending by value.
      std::vector<Index> idx(static_cast<std::size_t>(k));
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](Index a1, Index a2) { return theta[a1] < theta[a2]; });
      out.values.resize(k);
      out.vectors.resize(n, k);
      for (Index c = 0; c < k; ++c) {
        out.values[c] = theta[idx[c]];
        out.vectors.col(c) = x.col(idx[c]);
      }
      return out;
    }

    // Thick restart: keep the leading Ritz vectors, continue from residuals
    // of the unconverged wanted pairs (then any other kept ones).
    v.leftCols(keep) = x;
    av.leftCols(keep) = ax;
    t.setZero();
    t.topLeftCorner(keep, keep) = theta.asDiagonal();
    cur = keep;
    std::vector<Index> next = unconverged;
    for (Index c = 0; c < keep && static_cast<Index>(next.size()) < b; ++c) {
      if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(c);
    }
    for (Index c = 0; c < b; ++c) p.col(c) = resid.col(next[c % next.size()]);
  }

  std::ostringstream msg;
  msg << "Lanczos did not converge after " << options.max_restarts << " restarts (" << matvecs
      << " matvecs, worst scaled residual " << worst << ", tolerance " << options.tolerance << ")";
  throw LanczosError(msg.str(), options.max_restarts, matvecs, worst);
}

}  // namespace smbo
