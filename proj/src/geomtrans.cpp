#include "fgp/geomtrans.hpp"

#include "fgp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace fgp {
namespace {

Matrix cost_matrix(const CostFunction& cost, const std::vector<SimplexPoint>& xs,
                   const std::vector<Vector>& ys) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  Matrix m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      m(a, b) = cost(xs[static_cast<std::size_t>(a)].weights(), ys[static_cast<std::size_t>(b)]);
    }
  }
  return m;
}

struct CycleSearch {
  const Matrix& m;
  std::size_t max_len;
  CycleMonotonicity& out;
  std::vector<std::size_t> cycle;
  std::vector<bool> used;

  void close() {
    double diagonal = 0.0;
    double shifted = 0.0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const auto a = static_cast<Eigen::Index>(cycle[k]);
      const auto b = static_cast<Eigen::Index>(cycle[(k + 1) % cycle.size()]);
      diagonal += m(a, a);
      shifted += m(a, b);
    }
    const double slack = shifted - diagonal;
    ++out.cycles_checked;
    if (out.worst_cycle.empty() || slack < out.worst_slack) {
      out.worst_slack = slack;
      out.worst_cycle = cycle;
    }
  }

  // The first index is the smallest in the cycle, so each cycle is visited
  // once per orientation rather than once per rotation.
  void extend() {
    if (cycle.size() >= 2) close();
    if (cycle.size() == max_len) return;
    for (std::size_t j = cycle.front() + 1; j < used.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      cycle.push_back(j);
      extend();
      cycle.pop_back();
      used[j] = false;
    }
  }
};

template <class F>
double derivative_or_fd(const F& f, const std::function<double(double)>& g, double x, int order) {
  if (f) return f(x);
  // central stencils; steps balance truncation against rounding
  switch (order) {
    case 1: {
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      return (g(x + h) - g(x - h)) / (2 * h);
    }
    case 2: {
      const double h = 1e-4 * std::max(1.0, std::abs(x));
      return (g(x + h) - 2 * g(x) + g(x - h)) / (h * h);
    }
    default: {
      const double h = 1e-3 * std::max(1.0, std::abs(x));
      return (g(x + 2 * h) - 2 * g(x + h) + 2 * g(x - h) - g(x - 2 * h)) / (2 * h * h * h);
    }
  }
}

}  // namespace

double CostFunction::operator()(const Vector& x, const Vector& y) const {
  if (x.size() != y.size()) throw DimensionError("cost: dimension mismatch");
  const double dot = x.dot(y);
  if (tag == CostTag::InnerProduct) return dot;
  if (!(dot > 0.0)) {
    std::ostringstream os;
    os << "log-dot cost undefined: p . q = " << dot << " <= 0";
    throw DomainError(os.str());
  }
  return std::log(dot);
}

TransportSample::TransportSample(std::vector<SimplexPoint> xs, std::vector<Vector> ys)
    : sources(std::move(xs)), targets(std::move(ys)) {
  if (sources.size() != targets.size()) {
    throw DimensionError("transport sample: sources and targets differ in length");
  }
  for (std::size_t k = 0; k < sources.size(); ++k) {
    if (static_cast<std::size_t>(targets[k].size()) != sources[k].dim()) {
      throw DimensionError("transport sample: target dimension differs from source");
    }
  }
}

Vector multiplicative_transport_map(const GeneratingFunction& phi, const SimplexPoint& p) {
  // tiny negative weights tolerated by the portfolio map are boundary zeros
  const Vector pi = multiplicative_portfolio_map(phi, p).cwiseMax(0.0);
  const Vector ratio = pi.cwiseQuotient(p.weights());
  const double total = ratio.sum();
  if (!(total > 0.0)) throw DomainError("transport map: zero denominator");
  return ratio / total;
}

TransportSample generated_sample(const CostFunction& cost, const GeneratingFunction& phi,
                                 std::vector<SimplexPoint> sources) {
  std::vector<Vector> targets;
  targets.reserve(sources.size());
  for (const auto& x : sources) {
    targets.push_back(cost.tag == CostTag::LogDot ? multiplicative_transport_map(phi, x)
                                                   : phi.gradient(x));
  }
  return TransportSample(std::move(sources), std::move(targets));
}

CycleMonotonicity check_cyclical_monotonicity(const CostFunction& cost, const TransportSample& sample,
                                              std::size_t max_cycle) {
  if (max_cycle > sample.size()) throw DomainError("max_cycle exceeds sample size");
  if (sample.size() > kMaxEnumeration) throw DomainError("sample too large for exhaustive cycles");
  CycleMonotonicity out;
  if (sample.size() < 2 || max_cycle < 2) return out;
  const Matrix m = cost_matrix(cost, sample.sources, sample.targets);
  CycleSearch search{m, max_cycle, out, {}, std::vector<bool>(sample.size(), false)};
  for (std::size_t first = 0; first < sample.size(); ++first) {
    search.cycle = {first};
    search.used.assign(sample.size(), false);
    search.used[first] = true;
    search.extend();
  }
  out.passed = out.worst_slack >= -kCycleSlackTolerance;
  return out;
}

Assignment brute_force_assignment(const CostFunction& cost, const std::vector<SimplexPoint>& sources,
                                  const std::vector<Vector>& targets) {
  if (sources.size() != targets.size()) throw DimensionError("assignment: size mismatch");
  if (sources.empty()) throw DomainError("assignment: empty input");
  if (sources.size() > kMaxEnumeration) throw DomainError("assignment: N > 8");
  const Matrix m = cost_matrix(cost, sources, targets);
  std::vector<std::size_t> perm(sources.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto total = [&](const std::vector<std::size_t>& s) {
    double c = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      c += m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s[k]));
    }
    return c;
  };
  Assignment best;
  best.permutation = perm;
  best.identity_cost = best.cost = total(perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double c = total(perm);
    if (c < best.cost) {
      best.cost = c;
      best.permutation = perm;
    }
  }
  best.identity_optimal = best.identity_cost <= best.cost + kCycleSlackTolerance;
  return best;
}

DualChart::DualChart(GeneratingFunction phi) : phi_(std::move(phi)) {
  if (!phi_.concave() || !phi_.strict()) {
    throw DomainError("dual chart needs a strictly concave generating function");
  }
}

Vector DualChart::dual_coordinates(const SimplexPoint& p) const { return phi_.gradient(p); }

Vector DualChart::newton_inverse(const Vector& dual) const {
  const auto n = dual.size();
  Vector z = Vector::Constant(n, -std::log(static_cast<double>(n)));
  auto residual = [&](const Vector& zz) { return Vector(phi_.gradient_at(zz.array().exp().matrix()) - dual); };
  Vector f = residual(z);
  const double tol = 1e-13 * std::max(1.0, dual.cwiseAbs().maxCoeff());
  for (int it = 0; it < 100; ++it) {
    if (f.cwiseAbs().maxCoeff() <= tol) return z.array().exp().matrix();
    const Vector x = z.array().exp().matrix();
    // d grad phi(e^z) / dz = Hess phi(x) diag(x)
    const Matrix jac = phi_.hessian_at(x) * x.asDiagonal();
    const Vector step = jac.fullPivLu().solve(f);
    if (!step.allFinite()) break;
    double t = 1.0;
    const double f_norm = f.norm();
    Vector z_next = z - step;
    Vector f_next = residual(z_next);
    while (!(f_next.allFinite() && f_next.norm() < f_norm) && t > 1e-8) {
      t *= 0.5;
      z_next = z - t * step;
      f_next = residual(z_next);
    }
    if (!(f_next.allFinite() && f_next.norm() <= f_norm)) break;
    z = z_next;
    f = f_next;
  }
  if (f.cwiseAbs().maxCoeff() <= tol) return z.array().exp().matrix();
  std::ostringstream os;
  os << "dual inversion for " << phi_.name() << " did not converge (residual " << f.cwiseAbs().maxCoeff()
     << ")";
  throw DomainError(os.str());
}

SimplexPoint DualChart::primal_from_dual(const Vector& dual) const {
  Vector x;
  if (auto inv = phi_.inverse_gradient(dual)) {
    x = *inv;
  } else {
    x = newton_inverse(dual);
  }
  const double s = x.sum();
  if (!(x.minCoeff() > 0.0) || std::abs(s - 1.0) > kRenormalizeTolerance) {
    throw DomainError("dual point is not the image of a simplex point");
  }
  return SimplexPoint(Vector(x / s));
}

Matrix DualChart::inverse_jacobian(const SimplexPoint& q) const {
  const Matrix h = phi_.hessian(q);
  Eigen::FullPivLU<Matrix> lu(h);
  if (!lu.isInvertible()) throw DomainError("Hessian is singular: dual chart not invertible here");
  return lu.inverse();
}

double riemannian_inner_product(const GeneratingFunction& phi, const SimplexPoint& p,
                                const TangentVector& u, const TangentVector& v) {
  if (u.dim() != p.dim() || v.dim() != p.dim()) throw DimensionError("inner product: dimension mismatch");
  return -u.components().dot(phi.hessian(p) * v.components());
}

PythagoreanResult pythagorean_check(const GeneratingFunction& phi, const SimplexPoint& p,
                                    const SimplexPoint& q, const SimplexPoint& r) {
  if (p == q || q == r || p == r) throw DomainError("pythagorean_check: coincident points");
  const DualChart chart(phi);
  PythagoreanResult out;
  out.d_rq = bregman(phi, r, q);
  out.d_qp = bregman(phi, q, p);
  out.d_rp = bregman(phi, r, p);
  out.delta = out.d_rq + out.d_qp - out.d_rp;

  const Vector ps = chart.dual_coordinates(p);
  const Vector qs = chart.dual_coordinates(q);
  const Vector rs = chart.dual_coordinates(r);
  const Matrix h = phi.hessian(q);
  const Matrix jinv = chart.inverse_jacobian(q);
  auto angle = [&](const Vector& primal_velocity, const Vector& dual_velocity) {
    const Vector pushed = jinv * dual_velocity;
    return -primal_velocity.dot(h * pushed);
  };
  out.angle_term = angle(r.weights() - q.weights(), ps - qs);
  out.swapped_angle_term = angle(p.weights() - q.weights(), rs - qs);

  out.inequality_holds = out.delta >= -kPythagoreanTolerance;
  out.equality = std::abs(out.delta) <= kPythagoreanTolerance;
  const bool delta_zero = out.equality;
  const bool angle_zero = std::abs(out.angle_term) <= kPythagoreanTolerance;
  out.signs_agree = (delta_zero && angle_zero) ||
                    (!delta_zero && !angle_zero && (out.delta > 0) == (out.angle_term > 0));
  return out;
}

RebalancingComparison rebalancing_comparison(const GenerationScheme& scheme, const SimplexPoint& p,
                                             const SimplexPoint& q, const SimplexPoint& r) {
  if (scheme.kind() != SchemeKind::Additive) {
    throw DomainError("rebalancing comparison is implemented for additive generation only");
  }
  const StrategyRun a = run_strategy(scheme, MarketPath({p, r}));
  const StrategyRun b = run_strategy(scheme, MarketPath({p, q, r}));
  RebalancingComparison out;
  out.value_a = a.values.back();
  out.value_b = b.values.back();
  const double gap = out.value_b - out.value_a;
  out.better = std::abs(gap) <= 1e-12 ? Better::Tie : (gap > 0 ? Better::B : Better::A);
  return out;
}

ScaleFunction affine_scale(double c1, double c2) {
  return {"affine",
          [=](double x) { return c1 * x + c2; },
          [=](double) { return c1; },
          [](double) { return 0.0; },
          [](double) { return 0.0; }};
}

ScaleFunction shifted_log_scale(double c1, double c2, double c3) {
  return {"shifted_log",
          [=](double x) { return c2 * std::log(c1 + x) + c3; },
          [=](double x) { return c2 / (c1 + x); },
          [=](double x) { return -c2 / ((c1 + x) * (c1 + x)); },
          [=](double x) { return 2 * c2 / ((c1 + x) * (c1 + x) * (c1 + x)); }};
}

ScaleFunction square_foil() {
  return {"square",
          [](double x) { return x * x; },
          [](double x) { return 2 * x; },
          [](double) { return 2.0; },
          [](double) { return 0.0; }};
}

ScaleFunction exp_foil() {
  auto e = [](double x) { return std::exp(x); };
  return {"exp", e, e, e, e};
}

ScaleFunction sqrt_foil() {
  return {"sqrt",
          [](double x) { return std::sqrt(x); },
          [](double x) { return 0.5 / std::sqrt(x); },
          [](double x) { return -0.25 * std::pow(x, -1.5); },
          [](double x) { return 0.375 * std::pow(x, -2.5); }};
}

ScaleFunction numeric_scale(std::string name, std::function<double(double)> g) {
  return {std::move(name), std::move(g), {}, {}, {}};
}

double scale_ode_residual(const ScaleFunction& g, double x) {
  if (!(x > 0.0)) throw DomainError("scale function argument must be positive");
  const double d1 = derivative_or_fd(g.d1, g.g, x, 1);
  if (!(d1 > 0.0)) {
    std::ostringstream os;
    os << g.name << ": g'(" << x << ") = " << d1 << " <= 0, not a valid scale function";
    throw DomainError(os.str());
  }
  const double d2 = derivative_or_fd(g.d2, g.g, x, 2);
  const double d3 = derivative_or_fd(g.d3, g.g, x, 3);
  return d1 * d3 - 2 * d2 * d2;
}

}  // namespace fgp
