#pragma once

// Functionally generated trading strategies: multiplicative, additive and
// (alpha, C) generation, their execution along a market path and the
// pathwise decomposition of their value.

#include "fgp/divergence.hpp"
#include "fgp/genfun.hpp"
#include "fgp/market.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fgp {

enum class SchemeKind { Multiplicative, Additive, AlphaC };

/// How shares are produced from (mu(t), V(t)). Multiplicative generation is
/// the (alpha, C) = (1, 0) member of the AlphaC family and is executed that way.
class GenerationScheme {
 public:
  static GenerationScheme multiplicative(GeneratingFunction phi, double v0 = 1.0);
  static GenerationScheme additive(GeneratingFunction phi, double v0 = 1.0);
  static GenerationScheme alpha_c(GeneratingFunction phi, double alpha, double C, double v0 = 1.0);

  SchemeKind kind() const noexcept { return kind_; }
  const GeneratingFunction& phi() const noexcept { return phi_; }
  /// Effective alpha: 1 for Multiplicative, unused (0) for Additive.
  double alpha() const noexcept { return alpha_; }
  double C() const noexcept { return C_; }
  double v0() const noexcept { return v0_; }

  /// L for Multiplicative, Bregman for Additive, L^(alpha) for AlphaC.
  DivergenceKind divergence_kind(LAlphaSign sign = LAlphaSign::Corrected) const;

  /// Scale function g applied to the value: log x, x, or log(C + x) / alpha.
  /// Returns nullopt where g is undefined.
  std::optional<double> scale(double v) const;

  std::string label() const;

 private:
  GenerationScheme(SchemeKind kind, GeneratingFunction phi, double alpha, double C, double v0);

  SchemeKind kind_;
  GeneratingFunction phi_;
  double alpha_;
  double C_;
  double v0_;
};

struct StrategyState {
  ShareVector eta;
  double value;
  std::size_t time;
  /// V(t) > -C, the region where the AlphaC decomposition is defined.
  bool above_floor;
};

struct StrategyRun {
  std::vector<StrategyState> states;
  ValueSeries values;

  std::vector<ShareVector> shares() const;
};

struct DecompositionReport {
  std::string scheme;
  /// g(V(t)) - g(V(0)), t = 0..valid length - 1.
  std::vector<double> lhs;
  /// phi(mu(t)) - phi(mu(0)).
  std::vector<double> drift;
  /// D[mu(s+1) : mu(s)], s = 0..lhs.size() - 2.
  std::vector<double> divergence_increments;
  /// Sum of increments up to t (cumulative[0] = 0).
  std::vector<double> cumulative_divergence;
  /// lhs - drift - cumulative, per t.
  std::vector<double> residuals;
  double max_abs_residual = 0.0;
  /// max_t |residual| / max(1, |lhs|, |drift|, cumulative).
  double max_rel_residual = 0.0;
  /// First time at which g(V(t)) is undefined; the report stops before it.
  std::optional<std::size_t> truncated_at;
  ValueSeries values;
};

struct DecomposeOptions {
  LAlphaSign l_alpha_sign = LAlphaSign::Corrected;
};

/// pi_i(p) = p_i (1 + D_{e_i - p} phi(p)).
Vector multiplicative_portfolio_map(const GeneratingFunction& phi, const SimplexPoint& p);

/// Same map from the tangent hyperplane q -> sum c_i q_i of Phi = e^phi at p:
/// pi_i = c_i p_i / sum_j c_j p_j.
Vector multiplicative_map_via_tangent_plane(const GeneratingFunction& phi, const SimplexPoint& p);

/// eta_i = D_{e_i - mu} phi(mu) + v.
ShareVector additive_shares(const GeneratingFunction& phi, const SimplexPoint& mu, double v);

/// eta_i = alpha (C + v) D_{e_i - mu} phi(mu) + v.
ShareVector alpha_c_shares(const GeneratingFunction& phi, double alpha, double C,
                           const SimplexPoint& mu, double v);

/// ((C + v) / v) pi^(alpha)(mu) - (C / v) mu, where pi^(alpha) is the
/// multiplicative map of alpha * phi.
Vector alpha_c_weights(const GeneratingFunction& phi, double alpha, double C,
                       const SimplexPoint& mu, double v);

/// Shares the scheme holds at market state mu with current value v.
ShareVector scheme_shares(const GenerationScheme& scheme, const SimplexPoint& mu, double v);

/// Alternates shares-from-state and value_step along the path.
StrategyRun run_strategy(const GenerationScheme& scheme, const MarketPath& path);

DecompositionReport decompose(const GenerationScheme& scheme, const MarketPath& path,
                              const DecomposeOptions& options = {});

}  // namespace fgp
