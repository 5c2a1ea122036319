#include "fgp/strategy.hpp"

#include "fgp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fgp {
namespace {

constexpr double kLogGuard = 1e-14;
constexpr double kWeightFloor = -1e-10;
constexpr double kMapSumTolerance = 1e-12;

void require_exp_concave(const GeneratingFunction& phi, const char* who) {
  if (phi.declared_alpha_max() < 1.0) {
    std::ostringstream os;
    os << who << ": " << phi.name() << " is not declared exponentially concave";
    throw DomainError(os.str());
  }
}

void require_alpha(const GeneratingFunction& phi, double alpha, double C) {
  if (!(alpha > 0.0) || alpha > phi.declared_alpha_max()) {
    std::ostringstream os;
    os << "alpha = " << alpha << " outside (0, " << phi.declared_alpha_max() << "] for " << phi.name();
    throw DomainError(os.str());
  }
  if (!(C >= 0.0) || !std::isfinite(C)) throw DomainError("C must be a finite nonnegative number");
}

}  // namespace

GenerationScheme::GenerationScheme(SchemeKind kind, GeneratingFunction phi, double alpha, double C,
                                   double v0)
    : kind_(kind), phi_(std::move(phi)), alpha_(alpha), C_(C), v0_(v0) {
  if (!std::isfinite(v0_)) throw DomainError("initial value must be finite");
}

GenerationScheme GenerationScheme::multiplicative(GeneratingFunction phi, double v0) {
  require_exp_concave(phi, "multiplicative generation");
  if (!(v0 > 0.0)) throw DomainError("multiplicative generation needs a positive initial value");
  return GenerationScheme(SchemeKind::Multiplicative, std::move(phi), 1.0, 0.0, v0);
}

GenerationScheme GenerationScheme::additive(GeneratingFunction phi, double v0) {
  if (!phi.concave()) throw DomainError("additive generation needs a concave generating function");
  return GenerationScheme(SchemeKind::Additive, std::move(phi), 0.0, 0.0, v0);
}

GenerationScheme GenerationScheme::alpha_c(GeneratingFunction phi, double alpha, double C, double v0) {
  require_alpha(phi, alpha, C);
  return GenerationScheme(SchemeKind::AlphaC, std::move(phi), alpha, C, v0);
}

DivergenceKind GenerationScheme::divergence_kind(LAlphaSign sign) const {
  switch (kind_) {
    case SchemeKind::Multiplicative:
      return DivergenceKind::l();
    case SchemeKind::Additive:
      return DivergenceKind::bregman();
    case SchemeKind::AlphaC:
      return DivergenceKind::l_alpha(alpha_, sign);
  }
  throw std::logic_error("unknown scheme");
}

std::optional<double> GenerationScheme::scale(double v) const {
  switch (kind_) {
    case SchemeKind::Multiplicative:
      if (!(v > 0.0)) return std::nullopt;
      return std::log(v);
    case SchemeKind::Additive:
      return v;
    case SchemeKind::AlphaC:
      if (!(C_ + v > 0.0)) return std::nullopt;
      return std::log(C_ + v) / alpha_;
  }
  return std::nullopt;
}

std::string GenerationScheme::label() const {
  std::ostringstream os;
  switch (kind_) {
    case SchemeKind::Multiplicative:
      os << "multiplicative";
      break;
    case SchemeKind::Additive:
      os << "additive";
      break;
    case SchemeKind::AlphaC:
      os << "alpha_c(" << alpha_ << "," << C_ << ")";
      break;
  }
  os << "[" << phi_.name() << "]";
  return os.str();
}

std::vector<ShareVector> StrategyRun::shares() const {
  std::vector<ShareVector> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.eta);
  return out;
}

Vector multiplicative_portfolio_map(const GeneratingFunction& phi, const SimplexPoint& p) {
  require_exp_concave(phi, "multiplicative portfolio map");
  const Vector d = directional_derivatives(phi, p);
  Vector pi = p.weights().array() * (1.0 + d.array());
  if (pi.minCoeff() < kWeightFloor) {
    std::ostringstream os;
    os << "portfolio map has negative weight " << pi.minCoeff() << " at p = [" << p.weights().transpose()
       << "]; " << phi.name() << " is not exponentially concave there";
    throw ConcavityError(os.str());
  }
  if (std::abs(pi.sum() - 1.0) > kMapSumTolerance * std::max(1.0, d.cwiseAbs().maxCoeff())) {
    throw ConcavityError("portfolio map weights do not sum to one");
  }
  return pi;
}

Vector multiplicative_map_via_tangent_plane(const GeneratingFunction& phi, const SimplexPoint& p) {
  require_exp_concave(phi, "tangent-plane portfolio map");
  const double big_phi = std::exp(phi.value(p));
  const Vector grad_big_phi = big_phi * phi.gradient(p);
  const Vector c = grad_big_phi.array() + (big_phi - grad_big_phi.dot(p.weights()));
  const Vector weighted = c.cwiseProduct(p.weights());
  const double total = weighted.sum();
  if (!(total > 0.0)) throw ConcavityError("degenerate tangent plane: sum c_j p_j <= 0");
  return weighted / total;
}

ShareVector additive_shares(const GeneratingFunction& phi, const SimplexPoint& mu, double v) {
  if (!phi.concave()) throw DomainError("additive shares need a concave generating function");
  return ShareVector(Vector(directional_derivatives(phi, mu).array() + v));
}

ShareVector alpha_c_shares(const GeneratingFunction& phi, double alpha, double C,
                           const SimplexPoint& mu, double v) {
  require_alpha(phi, alpha, C);
  return ShareVector(Vector(alpha * (C + v) * directional_derivatives(phi, mu).array() + v));
}

Vector alpha_c_weights(const GeneratingFunction& phi, double alpha, double C,
                       const SimplexPoint& mu, double v) {
  require_alpha(phi, alpha, C);
  if (v == 0.0) throw DomainError("alpha_c_weights: portfolio weights undefined at zero value");
  const Vector pi_alpha = multiplicative_portfolio_map(phi.scaled(alpha), mu);
  return ((C + v) / v) * pi_alpha - (C / v) * mu.weights();
}

ShareVector scheme_shares(const GenerationScheme& scheme, const SimplexPoint& mu, double v) {
  if (scheme.kind() == SchemeKind::Additive) return additive_shares(scheme.phi(), mu, v);
  return alpha_c_shares(scheme.phi(), scheme.alpha(), scheme.C(), mu, v);
}

StrategyRun run_strategy(const GenerationScheme& scheme, const MarketPath& path) {
  if (scheme.phi().dimension() && *scheme.phi().dimension() != path.dim()) {
    throw DimensionError("generating function dimension does not match the market path");
  }
  StrategyRun run;
  run.states.reserve(path.size());
  run.values.values.reserve(path.size());
  double v = scheme.v0();
  for (std::size_t t = 0; t < path.size(); ++t) {
    ShareVector eta = scheme_shares(scheme, path[t], v);
    run.values.values.push_back(v);
    run.states.push_back(StrategyState{eta, v, t, scheme.C() + v > 0.0});
    if (t + 1 == path.size()) break;

    if (scheme.kind() != SchemeKind::Additive) {
      const Vector step = path[t + 1].weights() - path[t].weights();
      const double arg = 1.0 + scheme.alpha() * scheme.phi().gradient(path[t]).dot(step);
      if (!(arg > kLogGuard)) {
        std::ostringstream os;
        os << "step " << t << ": 1 + alpha grad phi . dmu = " << arg << " <= " << kLogGuard
           << "; " << scheme.phi().name() << " is not " << scheme.alpha()
           << "-exponentially concave along this move";
        throw ConcavityError(os.str());
      }
    }
    v = value_step(eta, path[t], path[t + 1], v);
    if (scheme.kind() == SchemeKind::Multiplicative && !(v > 0.0)) {
      std::ostringstream os;
      os << "multiplicative run: value " << v << " <= 0 at step " << t + 1 << ", weights undefined";
      throw StrategyError(os.str());
    }
  }
  return run;
}

DecompositionReport decompose(const GenerationScheme& scheme, const MarketPath& path,
                              const DecomposeOptions& options) {
  const StrategyRun run = run_strategy(scheme, path);
  const DivergenceKind kind = scheme.divergence_kind(options.l_alpha_sign);
  const GeneratingFunction& phi = scheme.phi();

  DecompositionReport report;
  report.scheme = scheme.label();
  report.values = run.values;

  const auto g0 = scheme.scale(run.values[0]);
  if (!g0) {
    report.truncated_at = 0;
    return report;
  }
  const double phi0 = phi.value(path[0]);
  double cumulative = 0.0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    const auto gt = scheme.scale(run.values[t]);
    if (!gt) {
      report.truncated_at = t;
      break;
    }
    if (t > 0) {
      const double d = divergence(kind, phi, path[t], path[t - 1]);
      report.divergence_increments.push_back(d);
      cumulative += d;
    }
    double lhs = *gt - *g0;
    if (scheme.kind() == SchemeKind::AlphaC) {
      // log of the ratio keeps precision when C + V is large
      lhs = std::log((scheme.C() + run.values[t]) / (scheme.C() + run.values[0])) / scheme.alpha();
    } else if (scheme.kind() == SchemeKind::Multiplicative) {
      lhs = std::log(run.values[t] / run.values[0]);
    }
    const double drift = phi.value(path[t]) - phi0;
    const double residual = lhs - drift - cumulative;
    report.lhs.push_back(lhs);
    report.drift.push_back(drift);
    report.cumulative_divergence.push_back(cumulative);
    report.residuals.push_back(residual);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(drift), std::abs(cumulative)});
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(residual));
    report.max_rel_residual = std::max(report.max_rel_residual, std::abs(residual) / scale);
  }
  return report;
}

}  // namespace fgp
