#pragma once

// Optimal-transport and information-geometric readings of generated
// portfolios: cyclical monotonicity of the generated maps, the dually flat
// Bregman geometry, the Pythagorean rebalancing comparison, and the ODE that
// characterizes admissible scale functions.

#include "fgp/genfun.hpp"
#include "fgp/market.hpp"
#include "fgp/strategy.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fgp {

// Transport ------------------------------------------------------------------

enum class CostTag { LogDot, InnerProduct };

/// LogDot: c(p, q) = log(p . q), q in the closed simplex.
/// InnerProduct: c(p, v) = p . v, v arbitrary.
struct CostFunction {
  CostTag tag = CostTag::LogDot;

  static CostFunction log_dot() { return {CostTag::LogDot}; }
  static CostFunction inner_product() { return {CostTag::InnerProduct}; }

  double operator()(const Vector& x, const Vector& y) const;
};

/// Pairs x_k -> y_k of a transport plan.
struct TransportSample {
  std::vector<SimplexPoint> sources;
  std::vector<Vector> targets;

  TransportSample(std::vector<SimplexPoint> sources, std::vector<Vector> targets);
  std::size_t size() const noexcept { return sources.size(); }
};

/// T_i(p) = (pi_i(p) / p_i) / sum_j (pi_j(p) / p_j).
Vector multiplicative_transport_map(const GeneratingFunction& phi, const SimplexPoint& p);

/// Images of `sources` under the map generated by phi for this cost:
/// the multiplicative transport map for LogDot, grad phi for InnerProduct.
TransportSample generated_sample(const CostFunction& cost, const GeneratingFunction& phi,
                                 std::vector<SimplexPoint> sources);

struct CycleMonotonicity {
  bool passed = true;
  std::size_t cycles_checked = 0;
  /// min over cycles of sum c(x_k, y_{k+1}) - sum c(x_k, y_k).
  double worst_slack = 0.0;
  std::vector<std::size_t> worst_cycle;
};

inline constexpr double kCycleSlackTolerance = 1e-12;
inline constexpr std::size_t kMaxEnumeration = 8;

/// Exhaustive check over every index cycle of length 2..max_cycle.
CycleMonotonicity check_cyclical_monotonicity(const CostFunction& cost, const TransportSample& sample,
                                              std::size_t max_cycle);

struct Assignment {
  /// targets[permutation[k]] is assigned to sources[k].
  std::vector<std::size_t> permutation;
  double cost = 0.0;
  double identity_cost = 0.0;
  /// Identity cost within 1e-12 of the optimum.
  bool identity_optimal = false;
};

/// Minimal-cost assignment by enumerating all N! permutations (N <= 8).
Assignment brute_force_assignment(const CostFunction& cost, const std::vector<SimplexPoint>& sources,
                                  const std::vector<Vector>& targets);

// Dual coordinates ---------------------------------------------------------------

/// Dual coordinate system p* = grad phi(p) of a strictly concave phi.
class DualChart {
 public:
  explicit DualChart(GeneratingFunction phi);

  const GeneratingFunction& phi() const noexcept { return phi_; }

  Vector dual_coordinates(const SimplexPoint& p) const;

  /// Inverse of dual_coordinates: closed form when the function provides one,
  /// else newton_inverse.
  SimplexPoint primal_from_dual(const Vector& dual) const;

  /// Damped Newton solve of grad phi(x) = dual over the positive orthant
  /// (in log coordinates). Throws DomainError on non-convergence.
  Vector newton_inverse(const Vector& dual) const;

  /// Jacobian of the inverse gradient map at q*: (Hess phi(q))^{-1}.
  Matrix inverse_jacobian(const SimplexPoint& q) const;

 private:
  GeneratingFunction phi_;
};

/// u^T (-Hess phi(p)) v.
double riemannian_inner_product(const GeneratingFunction& phi, const SimplexPoint& p,
                                const TangentVector& u, const TangentVector& v);

inline constexpr double kPythagoreanTolerance = 1e-10;

struct PythagoreanResult {
  double d_rq = 0.0;  // D_B[r : q]
  double d_qp = 0.0;  // D_B[q : p]
  double d_rp = 0.0;  // D_B[r : p]
  /// D_B[r:q] + D_B[q:p] - D_B[r:p].
  double delta = 0.0;
  /// Angle at q between the primal geodesic q -> r and the dual geodesic
  /// q -> p (pushed to primal coordinates). Equals delta identically.
  double angle_term = 0.0;
  /// Angle at q between the primal geodesic q -> p and the dual geodesic
  /// q -> r. Agrees with delta for quadratic phi, to second order otherwise.
  double swapped_angle_term = 0.0;
  bool inequality_holds = false;  // delta >= 0
  bool equality = false;          // |delta| <= 1e-10
  bool signs_agree = false;       // sign(delta) == sign(angle_term), zeros within 1e-10
};

/// Generalized Pythagorean relation for the triplet (p, q, r) =
/// (mu(t0), mu(t1), mu(t2)) in the Bregman geometry of phi.
PythagoreanResult pythagorean_check(const GeneratingFunction& phi, const SimplexPoint& p,
                                    const SimplexPoint& q, const SimplexPoint& r);

enum class Better { A, B, Tie };

struct RebalancingComparison {
  double value_a = 0.0;  // trade once: p -> r
  double value_b = 0.0;  // rebalance at q: p -> q -> r
  Better better = Better::Tie;
};

/// Value of an additively generated strategy over p -> r against p -> q -> r.
RebalancingComparison rebalancing_comparison(const GenerationScheme& scheme, const SimplexPoint& p,
                                             const SimplexPoint& q, const SimplexPoint& r);

// Scale functions ------------------------------------------------------------------

struct ScaleFunction {
  std::string name;
  std::function<double(double)> g;
  /// Derivatives; when empty, central finite differences of g are used.
  std::function<double(double)> d1, d2, d3;
};

ScaleFunction affine_scale(double c1, double c2);                       // c1 x + c2
ScaleFunction shifted_log_scale(double c1, double c2, double c3);       // c2 log(c1 + x) + c3
ScaleFunction square_foil();                                            // x^2
ScaleFunction exp_foil();                                               // e^x
ScaleFunction sqrt_foil();                                              // sqrt(x)
ScaleFunction numeric_scale(std::string name, std::function<double(double)> g);

/// g'(x) g'''(x) - 2 g''(x)^2. Throws DomainError when g'(x) <= 0 or x <= 0.
double scale_ode_residual(const ScaleFunction& g, double x);

}  // namespace fgp
