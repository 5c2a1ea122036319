#pragma once

// Divergence functionals on the simplex induced by a generating function,
// and the Riemannian metrics that give their local quadratic behavior.
// Argument order follows D[q : p]: q is the new point, p the base point.

#include "fgp/genfun.hpp"
#include "fgp/market.hpp"

namespace fgp {

/// Divergences below this are treated as rounding noise around zero.
inline constexpr double kNonnegativeTolerance = -1e-12;

enum class DivergenceTag { L, Bregman, LAlpha };

/// Sign of the (phi(q) - phi(p)) term of the L^(alpha)-divergence.
/// `Corrected` subtracts it, which is the only choice consistent with the
/// scaling identity, the Bregman limit and the pathwise decomposition.
/// `AsPrinted` adds it and exists to demonstrate that consistency.
enum class LAlphaSign { Corrected, AsPrinted };

struct DivergenceKind {
  DivergenceTag tag = DivergenceTag::Bregman;
  double alpha = 1.0;
  LAlphaSign sign = LAlphaSign::Corrected;

  static DivergenceKind l() { return {DivergenceTag::L, 1.0, LAlphaSign::Corrected}; }
  static DivergenceKind bregman() { return {DivergenceTag::Bregman, 0.0, LAlphaSign::Corrected}; }
  static DivergenceKind l_alpha(double alpha, LAlphaSign sign = LAlphaSign::Corrected) {
    return {DivergenceTag::LAlpha, alpha, sign};
  }
};

/// Throws DomainError unless phi is admissible for the kind: L needs
/// declared_alpha_max >= 1, L^(alpha) needs 0 < alpha <= declared_alpha_max,
/// Bregman needs a concave phi.
void validate_divergence(const DivergenceKind& kind, const GeneratingFunction& phi);

/// grad phi(p) . (q - p) - (phi(q) - phi(p)).
double bregman(const GeneratingFunction& phi, const SimplexPoint& q, const SimplexPoint& p);

/// log(1 + grad phi(p) . (q - p)) - (phi(q) - phi(p)).
double l_divergence(const GeneratingFunction& phi, const SimplexPoint& q, const SimplexPoint& p);

/// log(pi . (q/p)) - pi . log(q/p); pi in the closed simplex.
double excess_growth(const Vector& pi, const SimplexPoint& q, const SimplexPoint& p);

/// (1/alpha) log(1 + alpha grad phi(p) . (q - p)) - (phi(q) - phi(p)).
double l_alpha(const GeneratingFunction& phi, double alpha, const SimplexPoint& q,
               const SimplexPoint& p, LAlphaSign sign = LAlphaSign::Corrected);

double divergence(const DivergenceKind& kind, const GeneratingFunction& phi, const SimplexPoint& q,
                  const SimplexPoint& p);

/// Symmetric matrix G(p) with D[p + dp : p] = dp^T G dp / 2 + O(|dp|^3).
struct MetricMatrix {
  Matrix entries;

  double quadratic_form(const Vector& v) const { return v.dot(entries * v); }
  double quadratic_form(const TangentVector& v) const { return quadratic_form(v.components()); }
  double inner(const Vector& u, const Vector& v) const { return u.dot(entries * v); }
};

/// Bregman: -Hess phi. L / L^(alpha): -(Hess phi + alpha grad grad^T), alpha = 1 for L.
MetricMatrix metric_matrix(const DivergenceKind& kind, const GeneratingFunction& phi,
                           const SimplexPoint& p);

/// |D[p + eps v : p] - eps^2 v^T G(p) v / 2|.
double quadratic_approximation_residual(const DivergenceKind& kind, const GeneratingFunction& phi,
                                        const SimplexPoint& p, const TangentVector& v, double eps);

}  // namespace fgp
