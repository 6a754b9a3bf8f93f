#pragma once

#include <variant>

#include "smbo/graph.hpp"

namespace smbo {

/// Double-well potential W(x) = (x^2 - 1)^2.
constexpr double double_well(double x) noexcept {
  const double t = x * x - 1.0;
  return t * t;
}

/// Ginzburg-Landau f_eps(u) = 1/2 sum_ij w_ij (u_i - u_j)^2 + (1/eps) sum_i W(u_i).
double gl_energy(const Graph& g, const NodeFunction& u, double epsilon);

/// Signless variant f_eps^+(u) = 1/2 sum_ij w_ij (u_i + u_j)^2 + (1/eps) sum_i W(u_i).
double signless_gl_energy(const Graph& g, const NodeFunction& u, double epsilon);

/// TV(u) = 1/2 sum_ij w_ij^q |u_i - u_j|.
double total_variation(const Graph& g, const NodeFunction& u, double q = 1.0);

/// TV^+(u) = 1/2 sum_ij w_ij^q |u_i + u_j|.
double signless_total_variation(const Graph& g, const NodeFunction& u, double q = 1.0);

struct Infinite {
  friend bool operator==(Infinite, Infinite) noexcept { return true; }
};

/// A real number or +infinity.
class ExtendedReal {
 public:
  ExtendedReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtendedReal(Infinite) : value_(Infinite{}) {}  // NOLINT

  bool is_finite() const noexcept { return std::holds_alternative<double>(value_); }
  /// Throws std::bad_variant_access when infinite.
  double value() const { return std::get<double>(value_); }

 private:
  std::variant<double, Infinite> value_;
};

/// f_0^+(u) = sum_ij w_ij |u_i + u_j| for binary u, +infinity otherwise.
/// Binary means every |u_i -/+ 1| <= 1e-12.
ExtendedReal gamma_limit(const Graph& g, const NodeFunction& u);

/// Sum over ordered pairs of w_ij, i.e. 2 x total edge weight.
double ordered_weight_sum(const Graph& g);

}  // namespace smbo
