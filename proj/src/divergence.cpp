#include "fgp/divergence.hpp"

#include "fgp/errors.hpp"

#include <cmath>
#include <sstream>

namespace fgp {
namespace {

void require_same_dim(const SimplexPoint& q, const SimplexPoint& p) {
  if (q.dim() != p.dim()) throw DimensionError("divergence: points of different dimension");
}

double checked_nonnegative(double d, const char* what, const SimplexPoint& q, const SimplexPoint& p) {
  if (d < kNonnegativeTolerance) {
    std::ostringstream os;
    os << what << " divergence is negative (" << d << ") between q = [" << q.weights().transpose()
       << "] and p = [" << p.weights().transpose() << "]; the generating function is not concave enough";
    throw ConcavityError(os.str());
  }
  return d;
}

// log(1 + a x) / a, with the domain check shared by L and L^(alpha).
double scaled_log1p(double a, double x, const char* what) {
  const double arg = a * x;
  if (!(1.0 + arg > 0.0)) {
    std::ostringstream os;
    os << what << ": log argument 1 + " << arg << " is not positive";
    throw DomainError(os.str());
  }
  return std::log1p(arg) / a;
}

}  // namespace

void validate_divergence(const DivergenceKind& kind, const GeneratingFunction& phi) {
  switch (kind.tag) {
    case DivergenceTag::L:
      if (phi.declared_alpha_max() < 1.0) {
        throw DomainError("L-divergence requires an exponentially concave function (" + phi.name() + ")");
      }
      break;
    case DivergenceTag::LAlpha:
      if (!(kind.alpha > 0.0) || kind.alpha > phi.declared_alpha_max()) {
        std::ostringstream os;
        os << "L^(alpha)-divergence with alpha = " << kind.alpha << " requires 0 < alpha <= "
           << phi.declared_alpha_max() << " for " << phi.name();
        throw DomainError(os.str());
      }
      break;
    case DivergenceTag::Bregman:
      if (!phi.concave()) throw DomainError("Bregman divergence requires a concave function");
      break;
  }
}

double bregman(const GeneratingFunction& phi, const SimplexPoint& q, const SimplexPoint& p) {
  require_same_dim(q, p);
  const Vector dq = q.weights() - p.weights();
  const double d = phi.gradient(p).dot(dq) - (phi.value(q) - phi.value(p));
  return checked_nonnegative(d, "Bregman", q, p);
}

double l_divergence(const GeneratingFunction& phi, const SimplexPoint& q, const SimplexPoint& p) {
  require_same_dim(q, p);
  const Vector dq = q.weights() - p.weights();
  const double d = scaled_log1p(1.0, phi.gradient(p).dot(dq), "L-divergence") -
                   (phi.value(q) - phi.value(p));
  return checked_nonnegative(d, "L", q, p);
}

double excess_growth(const Vector& pi, const SimplexPoint& q, const SimplexPoint& p) {
  require_same_dim(q, p);
  if (static_cast<std::size_t>(pi.size()) != p.dim()) {
    throw DimensionError("excess_growth: weight vector of wrong dimension");
  }
  if ((pi.array() < 0.0).any() || std::abs(pi.sum() - 1.0) > kRenormalizeTolerance) {
    throw DomainError("excess_growth: weights must lie in the closed simplex");
  }
  const Vector ratio = q.weights().cwiseQuotient(p.weights());
  double log_mean = 0.0;
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    if (pi(i) > 0.0) log_mean += pi(i) * std::log(ratio(i));
  }
  return std::log(pi.dot(ratio)) - log_mean;
}

double l_alpha(const GeneratingFunction& phi, double alpha, const SimplexPoint& q,
               const SimplexPoint& p, LAlphaSign sign) {
  require_same_dim(q, p);
  validate_divergence(DivergenceKind::l_alpha(alpha), phi);
  const Vector dq = q.weights() - p.weights();
  const double log_term = scaled_log1p(alpha, phi.gradient(p).dot(dq), "L^(alpha)-divergence");
  const double drift = phi.value(q) - phi.value(p);
  if (sign == LAlphaSign::AsPrinted) return log_term + drift;
  return checked_nonnegative(log_term - drift, "L^(alpha)", q, p);
}

double divergence(const DivergenceKind& kind, const GeneratingFunction& phi, const SimplexPoint& q,
                  const SimplexPoint& p) {
  switch (kind.tag) {
    case DivergenceTag::L:
      return l_divergence(phi, q, p);
    case DivergenceTag::Bregman:
      return bregman(phi, q, p);
    case DivergenceTag::LAlpha:
      return l_alpha(phi, kind.alpha, q, p, kind.sign);
  }
  throw std::logic_error("unknown divergence kind");
}

MetricMatrix metric_matrix(const DivergenceKind& kind, const GeneratingFunction& phi,
                           const SimplexPoint& p) {
  Matrix g = -phi.hessian(p);
  if (kind.tag != DivergenceTag::Bregman) {
    const double a = kind.tag == DivergenceTag::L ? 1.0 : kind.alpha;
    const Vector grad = phi.gradient(p);
    g -= a * grad * grad.transpose();
  }
  return MetricMatrix{0.5 * (g + g.transpose())};
}

double quadratic_approximation_residual(const DivergenceKind& kind, const GeneratingFunction& phi,
                                        const SimplexPoint& p, const TangentVector& v, double eps) {
  const SimplexPoint moved(Vector(p.weights() + eps * v.components()));
  const double d = divergence(kind, phi, moved, p);
  const double quad = 0.5 * eps * eps * metric_matrix(kind, phi, p).quadratic_form(v);
  return std::abs(d - quad);
}

}  // namespace fgp
