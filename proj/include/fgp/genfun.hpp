#pragma once

#include "fgp/market.hpp"
#include "fgp/sampling.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace fgp {

/// A smooth generating function phi on the simplex.
///
/// Callbacks are evaluated on the ambient positive orthant: the gradient is
/// the ordinary Euclidean gradient of the defining formula, not a projection
/// onto the tangent space. Callbacks must be pure so a GeneratingFunction can
/// be shared across threads.
class GeneratingFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;
  /// Solves grad phi(x) = y for x in closed form.
  using InverseGradientFn = std::function<Vector(const Vector&)>;

  struct Callbacks {
    ValueFn value;
    GradientFn gradient;
    HessianFn hessian;                  // optional; finite differences otherwise
    InverseGradientFn inverse_gradient;  // optional
  };

  struct Traits {
    /// Largest alpha for which e^{alpha phi} is claimed concave; +inf when
    /// unbounded, 0 when phi is merely concave.
    double declared_alpha_max = 1.0;
    bool concave = true;
    /// Whether the induced divergences vanish only on the diagonal.
    bool strict = true;
    /// Fixed dimension, if the function is only defined for one n.
    std::optional<std::size_t> dimension;
  };

  GeneratingFunction(std::string name, Vector params, Callbacks callbacks, Traits traits);

  const std::string& name() const noexcept { return name_; }
  const Vector& params() const noexcept { return params_; }
  double declared_alpha_max() const noexcept { return traits_.declared_alpha_max; }
  bool concave() const noexcept { return traits_.concave; }
  bool strict() const noexcept { return traits_.strict; }
  std::optional<std::size_t> dimension() const noexcept { return traits_.dimension; }
  bool has_analytic_hessian() const noexcept { return static_cast<bool>(cb_.hessian); }
  bool has_analytic_inverse_gradient() const noexcept {
    return static_cast<bool>(cb_.inverse_gradient);
  }

  double value(const SimplexPoint& p) const { return value_at(p.weights()); }
  Vector gradient(const SimplexPoint& p) const { return gradient_at(p.weights()); }
  Matrix hessian(const SimplexPoint& p) const { return hessian_at(p.weights()); }

  double value_at(const Vector& x) const;
  Vector gradient_at(const Vector& x) const;
  /// Analytic when supplied, else central differences of the gradient with
  /// step 1e-5 (a warning is issued once per function).
  Matrix hessian_at(const Vector& x) const;
  std::optional<Vector> inverse_gradient(const Vector& y) const;

  /// The function a * phi, with declared_alpha_max rescaled to alpha_max / a.
  GeneratingFunction scaled(double a) const;

 private:
  void check_dim(const Vector& x) const;

  std::string name_;
  Vector params_;
  Callbacks cb_;
  Traits traits_;
  std::shared_ptr<std::once_flag> fd_warning_;
};

// Builtin catalog ------------------------------------------------------------

/// phi(p) = sum_i pi_i log p_i, pi in the closed simplex. Generates the
/// constant-weighted portfolio pi multiplicatively.
GeneratingFunction cross_entropy(const Vector& pi);
GeneratingFunction cross_entropy_equal(std::size_t n);

/// phi(p) = -|p|^2 / 2.
GeneratingFunction neg_half_sq_norm();

/// phi(p) = (1/lambda) log sum_i p_i^lambda, 0 < lambda < 1.
GeneratingFunction diversity(double lambda);

/// Builtin lookup by name: "cross_entropy" (params = pi, empty means equal
/// weights in dimension n), "neg_half_sq_norm", "diversity" (params = {lambda}).
GeneratingFunction make_builtin(const std::string& name, const Vector& params, std::size_t n);

// Operations -------------------------------------------------------------------

/// D_{e_i - p} phi(p) = grad phi(p) . (e_i - p), i zero-based.
double directional_derivative(const GeneratingFunction& phi, const SimplexPoint& p, std::size_t i);

/// All n directional derivatives at p.
Vector directional_derivatives(const GeneratingFunction& phi, const SimplexPoint& p);

/// Central finite-difference gradient in the ambient coordinates.
Vector finite_difference_gradient(const GeneratingFunction& phi, const Vector& x,
                                  double step = 1e-6);

struct ConcavityWitness {
  enum class Kind { Midpoint, Hessian };
  Kind kind;
  Vector p;
  Vector q;  // only for midpoint witnesses
  double margin;
};

struct ConcavityCheck {
  bool passed = true;
  std::size_t checks = 0;
  /// Smallest midpoint slack seen (negative on failure).
  double worst_midpoint_margin = std::numeric_limits<double>::infinity();
  /// Largest tangent eigenvalue of Hess e^{alpha phi} relative to its scale.
  double worst_hessian_eigenvalue = -std::numeric_limits<double>::infinity();
  std::optional<ConcavityWitness> witness;
};

/// Sampling test of concavity of e^{alpha phi} on the n-simplex: midpoint
/// inequality on random pairs plus negative semidefiniteness of the Hessian
/// on the tangent space at each sampled point.
ConcavityCheck check_alpha_exp_concavity(const GeneratingFunction& phi, double alpha,
                                         std::size_t samples, std::size_t n,
                                         std::uint64_t seed = 0x5eed);

}  // namespace fgp
