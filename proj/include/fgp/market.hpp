#pragma once

// Discrete-time market model on the open unit simplex. All values are
// measured relative to the market portfolio, so the relative price of stock i
// at time t is its market weight mu_i(t).

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fgp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kSimplexTolerance = 1e-12;
inline constexpr double kRenormalizeTolerance = 1e-9;
inline constexpr double kPortfolioSumTolerance = 1e-8;

/// Strictly positive weight vector summing to one, n >= 2.
///
/// Inputs whose sum is within 1e-9 of one (but not within 1e-12) are
/// renormalized with a warning; anything further off is rejected.
class SimplexPoint {
 public:
  explicit SimplexPoint(Vector weights);
  SimplexPoint(std::initializer_list<double> weights);

  static SimplexPoint barycenter(std::size_t n);

  const Vector& weights() const noexcept { return w_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(w_.size()); }
  double operator[](std::size_t i) const { return w_(static_cast<Eigen::Index>(i)); }

  friend bool operator==(const SimplexPoint& a, const SimplexPoint& b) { return a.w_ == b.w_; }

 private:
  Vector w_;
};

/// Vector whose components sum to zero: a direction inside the simplex.
class TangentVector {
 public:
  explicit TangentVector(Vector components);
  TangentVector(std::initializer_list<double> components);

  /// q - p for two points of equal dimension.
  static TangentVector between(const SimplexPoint& q, const SimplexPoint& p);

  const Vector& components() const noexcept { return v_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }

 private:
  Vector v_;
};

/// Number of shares held in each stock; negative entries are short positions.
class ShareVector {
 public:
  explicit ShareVector(Vector shares);
  ShareVector(std::initializer_list<double> shares);

  const Vector& shares() const noexcept { return eta_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(eta_.size()); }
  double operator[](std::size_t i) const { return eta_(static_cast<Eigen::Index>(i)); }

 private:
  Vector eta_;
};

/// The path {mu(t)}, t = 0..T, of market weights.
class MarketPath {
 public:
  explicit MarketPath(std::vector<SimplexPoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  /// Number of trading periods T = size() - 1.
  std::size_t steps() const noexcept { return points_.size() - 1; }
  std::size_t dim() const noexcept { return points_.front().dim(); }

  const SimplexPoint& operator[](std::size_t t) const { return points_[t]; }
  const SimplexPoint& front() const { return points_.front(); }
  const SimplexPoint& back() const { return points_.back(); }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Path restricted to times first..size()-1, re-indexed from zero.
  MarketPath suffix(std::size_t first) const;

 private:
  std::vector<SimplexPoint> points_;
};

/// Relative value process V(0), ..., V(T). May be negative for long-short
/// strategies.
struct ValueSeries {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t t) const { return values[t]; }
  double front() const { return values.front(); }
  double back() const { return values.back(); }
};

/// Value series from portfolio weights, together with the first time the
/// value became nonpositive (after which weights-from-value is meaningless).
struct MultiplicativeValue {
  ValueSeries series;
  std::optional<std::size_t> nonpositive_at;
};

/// mu_i = X_i / sum_j X_j.
SimplexPoint market_weights_from_caps(std::span<const double> caps);
SimplexPoint market_weights_from_caps(const Vector& caps);

/// One step of the additive value recursion: v + eta . (mu_next - mu_now).
double value_step(const ShareVector& eta, const SimplexPoint& mu_now, const SimplexPoint& mu_next,
                  double v_now);

/// Portfolio weights pi_i = eta_i mu_i / v. Throws SelfFinancingError when the
/// weights do not sum to one within 1e-8 (i.e. eta . mu != v).
Vector weights_from_strategy(const ShareVector& eta, const SimplexPoint& mu, double v);

/// V(t) = v0 prod_s pi(s) . (mu(s+1) / mu(s)). The weight sequence must have
/// at least path.steps() entries, each summing to one.
MultiplicativeValue value_multiplicative(const MarketPath& path, std::span<const Vector> weights,
                                         double v0);

/// Additive value recursion with V(0) = eta(0) . mu(0).
ValueSeries value_additive(std::span<const ShareVector> shares, const MarketPath& path);

/// Turns an arbitrary share sequence into a self-financing one by subtracting
/// the defect of self-financibility Q(t) and the constant C from every
/// component. Per-step gains eta(t) . (mu(t+1) - mu(t)) are unchanged.
std::vector<ShareVector> self_financing_correction(std::span<const ShareVector> raw,
                                                   const MarketPath& path, double C);

/// Defect Q(t) of a raw share sequence, t = 0..T.
std::vector<double> self_financing_defect(std::span<const ShareVector> raw,
                                          const MarketPath& path);

/// max_t |eta(t) . mu(t+1) - eta(t+1) . mu(t+1)|.
double check_self_financing(std::span<const ShareVector> shares, const MarketPath& path);

}  // namespace fgp
