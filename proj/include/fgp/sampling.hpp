#pragma once

// Seeded generators of interior simplex points, tangent directions and
// random market paths. All draws go through std::mt19937_64 so a seed fully
// determines the output on a given standard library.

#include "fgp/market.hpp"

#include <cstdint>
#include <random>

namespace fgp {

using Rng = std::mt19937_64;

/// Dirichlet(concentration, ..., concentration) draw, blended with the
/// barycenter by `shrink` (0 = pure Dirichlet) and floored away from zero.
SimplexPoint random_simplex_point(Rng& rng, std::size_t n, double concentration = 1.0,
                                  double shrink = 0.0);

/// Point whose smallest component is at least `min_weight` (requires
/// min_weight < 1/n).
SimplexPoint random_interior_point(Rng& rng, std::size_t n, double min_weight);

/// Gaussian tangent vector with unit Euclidean norm.
TangentVector random_unit_tangent(Rng& rng, std::size_t n);

/// Geometric random walk of capitalizations: log X_i(t+1) = log X_i(t) +
/// vol * Z, mapped to market weights. Starts at `start` when given, else at
/// the barycenter.
MarketPath random_market_path(Rng& rng, std::size_t n, std::size_t steps, double vol,
                              const SimplexPoint* start = nullptr);

/// Closed path: a random walk followed by the same points in reverse, so
/// mu(2k) = mu(0).
MarketPath random_cycle(Rng& rng, std::size_t n, std::size_t half_length, double vol);

}  // namespace fgp
