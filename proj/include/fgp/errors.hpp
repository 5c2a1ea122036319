#pragma once

#include <stdexcept>
#include <string>

namespace fgp {

/// Input outside the domain of an operation (boundary points, nonpositive
/// capitalizations, log arguments <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A share sequence that does not satisfy the self-financing identity.
class SelfFinancingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical consequence of (exponential) concavity fails:
/// a negative divergence, a negative portfolio weight, a log guard.
class ConcavityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strategy execution left the region where its weights are defined.
class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fgp
