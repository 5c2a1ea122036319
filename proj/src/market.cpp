#include "fgp/market.hpp"

#include "fgp/diagnostics.hpp"
#include "fgp/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace fgp {
namespace {

Vector to_vector(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(os.str());
  }
}

}  // namespace

SimplexPoint::SimplexPoint(Vector weights) : w_(std::move(weights)) {
  if (w_.size() < 2) throw DomainError("simplex point needs at least 2 components");
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_(i)) || w_(i) <= 0.0) {
      std::ostringstream os;
      os << "simplex point component " << i << " is not strictly positive (" << w_(i) << ")";
      throw DomainError(os.str());
    }
  }
  const double gap = std::abs(w_.sum() - 1.0);
  if (gap <= kSimplexTolerance) return;
  if (gap <= kRenormalizeTolerance) {
    std::ostringstream os;
    os << "renormalizing simplex point with sum deviation " << gap;
    warn(os.str());
    w_ /= w_.sum();
    return;
  }
  std::ostringstream os;
  os << "weights sum to " << w_.sum() << ", not 1";
  throw DomainError(os.str());
}

SimplexPoint::SimplexPoint(std::initializer_list<double> weights)
    : SimplexPoint(to_vector(weights)) {}

SimplexPoint SimplexPoint::barycenter(std::size_t n) {
  return SimplexPoint(Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

TangentVector::TangentVector(Vector components) : v_(std::move(components)) {
  if (v_.size() < 2) throw DomainError("tangent vector needs at least 2 components");
  if (!v_.allFinite()) throw DomainError("tangent vector has non-finite components");
  // absolute tolerance, scaled up for large vectors
  const double scale = std::max(1.0, v_.cwiseAbs().maxCoeff());
  if (std::abs(v_.sum()) > kSimplexTolerance * scale) {
    std::ostringstream os;
    os << "tangent vector components sum to " << v_.sum() << ", not 0";
    throw DomainError(os.str());
  }
}

TangentVector::TangentVector(std::initializer_list<double> components)
    : TangentVector(to_vector(components)) {}

TangentVector TangentVector::between(const SimplexPoint& q, const SimplexPoint& p) {
  require_same_dim(q.dim(), p.dim(), "tangent vector");
  return TangentVector(q.weights() - p.weights());
}

ShareVector::ShareVector(Vector shares) : eta_(std::move(shares)) {
  if (!eta_.allFinite()) throw DomainError("share vector has non-finite components");
}

ShareVector::ShareVector(std::initializer_list<double> shares) : ShareVector(to_vector(shares)) {}

MarketPath::MarketPath(std::vector<SimplexPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("market path must contain at least one point");
  for (const auto& p : points_) require_same_dim(p.dim(), points_.front().dim(), "market path");
}

MarketPath MarketPath::suffix(std::size_t first) const {
  if (first >= points_.size()) throw DomainError("suffix start beyond end of path");
  return MarketPath(std::vector<SimplexPoint>(points_.begin() + static_cast<std::ptrdiff_t>(first),
                                              points_.end()));
}

SimplexPoint market_weights_from_caps(std::span<const double> caps) {
  Vector x(static_cast<Eigen::Index>(caps.size()));
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (!std::isfinite(caps[i]) || caps[i] <= 0.0) {
      std::ostringstream os;
      os << "capitalization at index " << i << " is not strictly positive (" << caps[i] << ")";
      throw DomainError(os.str());
    }
    x(static_cast<Eigen::Index>(i)) = caps[i];
  }
  if (x.size() < 2) throw DomainError("need at least 2 assets");
  return SimplexPoint(Vector(x / x.sum()));
}

SimplexPoint market_weights_from_caps(const Vector& caps) {
  return market_weights_from_caps(std::span<const double>(caps.data(), static_cast<std::size_t>(caps.size())));
}

double value_step(const ShareVector& eta, const SimplexPoint& mu_now, const SimplexPoint& mu_next,
                  double v_now) {
  require_same_dim(eta.dim(), mu_now.dim(), "value_step");
  require_same_dim(mu_now.dim(), mu_next.dim(), "value_step");
  return v_now + eta.shares().dot(mu_next.weights() - mu_now.weights());
}

Vector weights_from_strategy(const ShareVector& eta, const SimplexPoint& mu, double v) {
  require_same_dim(eta.dim(), mu.dim(), "weights_from_strategy");
  if (v == 0.0) throw DomainError("portfolio weights undefined at zero value");
  Vector pi = eta.shares().cwiseProduct(mu.weights()) / v;
  const double gap = std::abs(pi.sum() - 1.0);
  if (gap > kPortfolioSumTolerance) {
    std::ostringstream os;
    os << "portfolio weights sum to " << pi.sum() << " (eta . mu != V): strategy is not self-financing";
    throw SelfFinancingError(os.str());
  }
  return pi;
}

MultiplicativeValue value_multiplicative(const MarketPath& path, std::span<const Vector> weights,
                                         double v0) {
  if (!(v0 > 0.0)) throw DomainError("multiplicative value requires v0 > 0");
  if (weights.size() < path.steps()) {
    throw DimensionError("value_multiplicative: fewer weight vectors than steps");
  }
  MultiplicativeValue out;
  out.series.values.reserve(path.size());
  out.series.values.push_back(v0);
  double v = v0;
  for (std::size_t s = 0; s < path.steps(); ++s) {
    const Vector& pi = weights[s];
    require_same_dim(static_cast<std::size_t>(pi.size()), path.dim(), "value_multiplicative");
    if (std::abs(pi.sum() - 1.0) > kPortfolioSumTolerance) {
      std::ostringstream os;
      os << "portfolio weights at step " << s << " sum to " << pi.sum();
      throw DomainError(os.str());
    }
    const Vector ratio = path[s + 1].weights().cwiseQuotient(path[s].weights());
    v *= pi.dot(ratio);
    if (v <= 0.0 && !out.nonpositive_at) out.nonpositive_at = s + 1;
    out.series.values.push_back(v);
  }
  return out;
}

ValueSeries value_additive(std::span<const ShareVector> shares, const MarketPath& path) {
  if (shares.size() < path.steps() || shares.empty()) {
    throw DimensionError("value_additive: fewer share vectors than steps");
  }
  ValueSeries out;
  out.values.reserve(path.size());
  double v = shares[0].shares().dot(path[0].weights());
  out.values.push_back(v);
  for (std::size_t s = 0; s < path.steps(); ++s) {
    v = value_step(shares[s], path[s], path[s + 1], v);
    out.values.push_back(v);
  }
  return out;
}

std::vector<double> self_financing_defect(std::span<const ShareVector> raw,
                                          const MarketPath& path) {
  require_same_dim(raw.size(), path.size(), "self_financing_defect (time)");
  std::vector<double> q(raw.size());
  const double initial = raw[0].shares().dot(path[0].weights());
  double gains = 0.0;
  for (std::size_t t = 0; t < raw.size(); ++t) {
    require_same_dim(raw[t].dim(), path.dim(), "self_financing_defect");
    q[t] = raw[t].shares().dot(path[t].weights()) - initial - gains;
    if (t + 1 < raw.size()) gains += raw[t].shares().dot(path[t + 1].weights() - path[t].weights());
  }
  return q;
}

std::vector<ShareVector> self_financing_correction(std::span<const ShareVector> raw,
                                                   const MarketPath& path, double C) {
  const std::vector<double> q = self_financing_defect(raw, path);
  std::vector<ShareVector> out;
  out.reserve(raw.size());
  for (std::size_t t = 0; t < raw.size(); ++t) {
    out.emplace_back(Vector(raw[t].shares().array() - q[t] - C));
  }
  return out;
}

double check_self_financing(std::span<const ShareVector> shares, const MarketPath& path) {
  require_same_dim(shares.size(), path.size(), "check_self_financing (time)");
  double worst = 0.0;
  for (std::size_t t = 0; t + 1 < shares.size(); ++t) {
    const Vector& next = path[t + 1].weights();
    const double gap = shares[t].shares().dot(next) - shares[t + 1].shares().dot(next);
    worst = std::max(worst, std::abs(gap));
  }
  return worst;
}

}  // namespace fgp
