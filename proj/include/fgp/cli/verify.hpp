#pragma once

#include "fgp/divergence.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fgp::cli {

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Sign of the drift term in the L^(alpha)-divergence. Flipping it is a
  /// debugging aid: the Bregman-limit and decomposition checks then fail.
  LAlphaSign l_alpha_sign = LAlphaSign::Corrected;
  /// When set, the concavity check tests e^{alpha phi} for two-asset equal
  /// cross entropy at this alpha instead of the builtin catalog at alpha = 1.
  std::optional<double> concavity_alpha;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t count = 0;
  /// Worst observed value of the check's margin statistic (see detail).
  double worst = 0.0;
  std::string detail;
};

struct VerifySummary {
  std::vector<CheckResult> checks;

  bool passed() const;
};

VerifySummary verify_suite(const VerifyOptions& options);

void print_summary(std::ostream& out, const VerifySummary& summary);

}  // namespace fgp::cli
