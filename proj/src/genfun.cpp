#include "fgp/genfun.hpp"

#include "fgp/diagnostics.hpp"
#include "fgp/errors.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

namespace fgp {
namespace {

constexpr double kHessianStep = 1e-5;
constexpr double kMidpointTolerance = 1e-12;
constexpr double kHessianTolerance = 1e-8;

void require_positive(const Vector& x, const char* who) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x(i) > 0.0)) {
      std::ostringstream os;
      os << who << ": component " << i << " = " << x(i) << " outside the positive orthant";
      throw DomainError(os.str());
    }
  }
}

Matrix fd_hessian(const GeneratingFunction& phi, const Vector& x) {
  const Eigen::Index n = x.size();
  Matrix h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector up = x, down = x;
    up(j) += kHessianStep;
    down(j) -= kHessianStep;
    h.col(j) = (phi.gradient_at(up) - phi.gradient_at(down)) / (2.0 * kHessianStep);
  }
  return 0.5 * (h + h.transpose());
}

}  // namespace

GeneratingFunction::GeneratingFunction(std::string name, Vector params, Callbacks callbacks,
                                       Traits traits)
    : name_(std::move(name)),
      params_(std::move(params)),
      cb_(std::move(callbacks)),
      traits_(traits),
      fd_warning_(std::make_shared<std::once_flag>()) {
  if (!cb_.value || !cb_.gradient) {
    throw std::invalid_argument("generating function needs value and gradient callbacks");
  }
  if (!(traits_.declared_alpha_max >= 0.0)) {
    throw std::invalid_argument("declared_alpha_max must be nonnegative");
  }
}

void GeneratingFunction::check_dim(const Vector& x) const {
  if (traits_.dimension && static_cast<std::size_t>(x.size()) != *traits_.dimension) {
    std::ostringstream os;
    os << name_ << " is defined for n = " << *traits_.dimension << ", got " << x.size();
    throw DimensionError(os.str());
  }
}

double GeneratingFunction::value_at(const Vector& x) const {
  check_dim(x);
  const double v = cb_.value(x);
  if (!std::isfinite(v)) throw DomainError(name_ + ": non-finite value");
  return v;
}

Vector GeneratingFunction::gradient_at(const Vector& x) const {
  check_dim(x);
  Vector g = cb_.gradient(x);
  if (!g.allFinite()) throw DomainError(name_ + ": non-finite gradient");
  return g;
}

Matrix GeneratingFunction::hessian_at(const Vector& x) const {
  check_dim(x);
  if (cb_.hessian) return cb_.hessian(x);
  std::call_once(*fd_warning_, [this] {
    warn(name_ + ": no analytic Hessian, using finite differences");
  });
  return fd_hessian(*this, x);
}

std::optional<Vector> GeneratingFunction::inverse_gradient(const Vector& y) const {
  if (!cb_.inverse_gradient) return std::nullopt;
  return cb_.inverse_gradient(y);
}

GeneratingFunction GeneratingFunction::scaled(double a) const {
  if (!(a > 0.0)) throw DomainError("generating functions may only be scaled by a > 0");
  Callbacks cb;
  cb.value = [f = cb_.value, a](const Vector& x) { return a * f(x); };
  cb.gradient = [f = cb_.gradient, a](const Vector& x) -> Vector { return a * f(x); };
  if (cb_.hessian) {
    cb.hessian = [f = cb_.hessian, a](const Vector& x) -> Matrix { return a * f(x); };
  }
  if (cb_.inverse_gradient) {
    cb.inverse_gradient = [f = cb_.inverse_gradient, a](const Vector& y) -> Vector {
      return f(y / a);
    };
  }
  Traits t = traits_;
  t.declared_alpha_max = traits_.declared_alpha_max / a;
  std::ostringstream os;
  os << a << "*" << name_;
  return GeneratingFunction(os.str(), params_, std::move(cb), t);
}

GeneratingFunction cross_entropy(const Vector& pi) {
  if (pi.size() < 2) throw DomainError("cross_entropy: need at least 2 weights");
  if ((pi.array() < 0.0).any() || std::abs(pi.sum() - 1.0) > kRenormalizeTolerance) {
    throw DomainError("cross_entropy: weights must lie in the closed simplex");
  }
  GeneratingFunction::Callbacks cb;
  cb.value = [pi](const Vector& x) {
    require_positive(x, "cross_entropy");
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (pi(i) > 0.0) s += pi(i) * std::log(x(i));
    }
    return s;
  };
  cb.gradient = [pi](const Vector& x) -> Vector {
    require_positive(x, "cross_entropy");
    return pi.cwiseQuotient(x);
  };
  cb.hessian = [pi](const Vector& x) -> Matrix {
    require_positive(x, "cross_entropy");
    return Matrix((-(pi.array() / x.array().square())).matrix().asDiagonal());
  };
  const bool interior = (pi.array() > 0.0).all();
  if (interior) {
    cb.inverse_gradient = [pi](const Vector& y) -> Vector {
      require_positive(y, "cross_entropy inverse gradient");
      return pi.cwiseQuotient(y);
    };
  }
  GeneratingFunction::Traits t;
  t.declared_alpha_max = 1.0;
  t.strict = interior;
  t.dimension = static_cast<std::size_t>(pi.size());
  return GeneratingFunction("cross_entropy", pi, std::move(cb), t);
}

GeneratingFunction cross_entropy_equal(std::size_t n) {
  return cross_entropy(Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

GeneratingFunction neg_half_sq_norm() {
  GeneratingFunction::Callbacks cb;
  cb.value = [](const Vector& x) { return -0.5 * x.squaredNorm(); };
  cb.gradient = [](const Vector& x) -> Vector { return -x; };
  cb.hessian = [](const Vector& x) -> Matrix { return -Matrix::Identity(x.size(), x.size()); };
  cb.inverse_gradient = [](const Vector& y) -> Vector { return -y; };
  // e^{-alpha|p|^2/2} has tangent curvature |v|^2 (alpha (p.v)^2/|v|^2 - 1) <= 0
  // for alpha <= 1 because |p| < 1 on the open simplex.
  GeneratingFunction::Traits t;
  t.declared_alpha_max = 1.0;
  return GeneratingFunction("neg_half_sq_norm", Vector(), std::move(cb), t);
}

GeneratingFunction diversity(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("diversity: lambda must lie in (0, 1)");
  GeneratingFunction::Callbacks cb;
  cb.value = [lambda](const Vector& x) {
    require_positive(x, "diversity");
    return std::log(x.array().pow(lambda).sum()) / lambda;
  };
  cb.gradient = [lambda](const Vector& x) -> Vector {
    require_positive(x, "diversity");
    const double s = x.array().pow(lambda).sum();
    return x.array().pow(lambda - 1.0) / s;
  };
  cb.hessian = [lambda](const Vector& x) -> Matrix {
    require_positive(x, "diversity");
    const double s = x.array().pow(lambda).sum();
    const Vector u = x.array().pow(lambda - 1.0);
    Matrix h = -lambda * (u * u.transpose()) / (s * s);
    h.diagonal().array() += (lambda - 1.0) * x.array().pow(lambda - 2.0) / s;
    return h;
  };
  GeneratingFunction::Traits t;
  t.declared_alpha_max = 1.0;
  Vector params(1);
  params << lambda;
  return GeneratingFunction("diversity", params, std::move(cb), t);
}

GeneratingFunction make_builtin(const std::string& name, const Vector& params, std::size_t n) {
  if (name == "cross_entropy") {
    if (params.size() == 0) return cross_entropy_equal(n);
    if (static_cast<std::size_t>(params.size()) != n) {
      throw DimensionError("cross_entropy: weight vector does not match the number of assets");
    }
    return cross_entropy(params);
  }
  if (name == "neg_half_sq_norm") return neg_half_sq_norm();
  if (name == "diversity") {
    if (params.size() != 1) throw DomainError("diversity takes exactly one parameter (lambda)");
    return diversity(params(0));
  }
  throw DomainError("unknown generating function '" + name + "'");
}

double directional_derivative(const GeneratingFunction& phi, const SimplexPoint& p, std::size_t i) {
  if (i >= p.dim()) {
    std::ostringstream os;
    os << "directional derivative index " << i << " out of range for n = " << p.dim();
    throw DomainError(os.str());
  }
  const Vector g = phi.gradient(p);
  return g(static_cast<Eigen::Index>(i)) - g.dot(p.weights());
}

Vector directional_derivatives(const GeneratingFunction& phi, const SimplexPoint& p) {
  const Vector g = phi.gradient(p);
  return g.array() - g.dot(p.weights());
}

Vector finite_difference_gradient(const GeneratingFunction& phi, const Vector& x, double step) {
  Vector g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector up = x, down = x;
    up(j) += step;
    down(j) -= step;
    g(j) = (phi.value_at(up) - phi.value_at(down)) / (2.0 * step);
  }
  return g;
}

ConcavityCheck check_alpha_exp_concavity(const GeneratingFunction& phi, double alpha,
                                         std::size_t samples, std::size_t n,
                                         std::uint64_t seed) {
  if (!(alpha > 0.0)) throw DomainError("concavity check needs alpha > 0");
  if (samples == 0) throw DomainError("concavity check needs at least one sample");
  if (phi.dimension() && *phi.dimension() != n) {
    throw DimensionError("concavity check dimension does not match the generating function");
  }

  Rng rng(seed);
  std::normal_distribution<double> normal;
  const double concentrations[] = {0.3, 1.0, 3.0};
  const Eigen::Index dim = static_cast<Eigen::Index>(n);
  const Matrix projector = Matrix::Identity(dim, dim) - Matrix::Constant(dim, dim, 1.0 / static_cast<double>(n));
  auto psi = [&](const Vector& x) { return std::exp(alpha * phi.value_at(x)); };

  ConcavityCheck out;
  for (std::size_t k = 0; k < samples; ++k) {
    const SimplexPoint p = random_simplex_point(rng, n, concentrations[k % 3]);
    Vector q;
    if (k % 2 == 0) {
      q = random_simplex_point(rng, n).weights();
    } else {
      q = p.weights();
      for (Eigen::Index i = 0; i < dim; ++i) q(i) *= std::exp(0.2 * normal(rng));
      q /= q.sum();
    }

    const Vector mid = 0.5 * (p.weights() + q);
    const double margin = psi(mid) - 0.5 * (psi(p.weights()) + psi(q));
    ++out.checks;
    out.worst_midpoint_margin = std::min(out.worst_midpoint_margin, margin);
    if (margin < -kMidpointTolerance && !out.witness) {
      out.passed = false;
      out.witness = ConcavityWitness{ConcavityWitness::Kind::Midpoint, p.weights(), q, margin};
    }

    // Hess e^{alpha phi} = alpha e^{alpha phi} (Hess phi + alpha grad grad^T)
    const Vector g = phi.gradient(p);
    const Matrix h = phi.hessian(p);
    const double psi_p = psi(p.weights());
    const Matrix hpsi = alpha * psi_p * (h + alpha * g * g.transpose());
    const double scale = alpha * psi_p * (h.norm() + alpha * g.squaredNorm());
    const Matrix tangent = projector * hpsi * projector;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (tangent + tangent.transpose()),
                                              Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double relative = scale > 0.0 ? lmax / scale : lmax;
    ++out.checks;
    out.worst_hessian_eigenvalue = std::max(out.worst_hessian_eigenvalue, relative);
    if (relative > kHessianTolerance && !out.witness) {
      out.passed = false;
      out.witness = ConcavityWitness{ConcavityWitness::Kind::Hessian, p.weights(), Vector(), relative};
    }
  }
  return out;
}

}  // namespace fgp
