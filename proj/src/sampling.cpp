#include "fgp/sampling.hpp"

#include "fgp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fgp {

SimplexPoint random_simplex_point(Rng& rng, std::size_t n, double concentration, double shrink) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  Vector x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::max(gamma(rng), 1e-300);
  x /= x.sum();
  const double bary = 1.0 / static_cast<double>(n);
  x = (1.0 - shrink) * x.array() + shrink * bary;
  // keep every coordinate comfortably representable relative to 1
  x = x.cwiseMax(1e-12);
  x /= x.sum();
  return SimplexPoint(std::move(x));
}

SimplexPoint random_interior_point(Rng& rng, std::size_t n, double min_weight) {
  const double nn = static_cast<double>(n);
  if (!(min_weight >= 0.0 && min_weight * nn < 1.0)) {
    throw DomainError("random_interior_point: min_weight must be below 1/n");
  }
  const SimplexPoint raw = random_simplex_point(rng, n);
  Vector x = min_weight + (1.0 - nn * min_weight) * raw.weights().array();
  x /= x.sum();
  return SimplexPoint(std::move(x));
}

TangentVector random_unit_tangent(Rng& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(n));
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    v.array() -= v.mean();
  } while (v.norm() < 1e-8);
  v /= v.norm();
  v.array() -= v.mean();
  return TangentVector(std::move(v));
}

MarketPath random_market_path(Rng& rng, std::size_t n, std::size_t steps, double vol,
                              const SimplexPoint* start) {
  std::normal_distribution<double> normal;
  std::vector<SimplexPoint> points;
  points.reserve(steps + 1);
  Vector logx = start ? Vector(start->weights().array().log())
                      : Vector::Zero(static_cast<Eigen::Index>(n));
  auto to_point = [](const Vector& lx) {
    Vector x = (lx.array() - lx.maxCoeff()).exp();
    return SimplexPoint(Vector(x / x.sum()));
  };
  points.push_back(start ? *start : to_point(logx));
  for (std::size_t t = 0; t < steps; ++t) {
    for (Eigen::Index i = 0; i < logx.size(); ++i) logx(i) += vol * normal(rng);
    // recentre so the log-caps stay bounded; weights are unaffected
    logx.array() -= logx.mean();
    points.push_back(to_point(logx));
  }
  return MarketPath(std::move(points));
}

MarketPath random_cycle(Rng& rng, std::size_t n, std::size_t half_length, double vol) {
  const MarketPath out = random_market_path(rng, n, half_length, vol);
  std::vector<SimplexPoint> points(out.begin(), out.end());
  for (std::size_t t = half_length; t-- > 0;) points.push_back(out[t]);
  return MarketPath(std::move(points));
}

}  // namespace fgp
