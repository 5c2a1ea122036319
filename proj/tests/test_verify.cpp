#include "fgp/cli/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace fgp;
using namespace fgp::cli;

namespace {

const CheckResult& find(const VerifySummary& s, const std::string& name) {
  const auto it = std::find_if(s.checks.begin(), s.checks.end(), [&](const CheckResult& c) { return c.name == name; });
  if (it == s.checks.end()) throw std::runtime_error("missing check " + name);
  return *it;
}

}  // namespace

TEST(VerifySuite, Seed42Passes) {
  const auto s = verify_suite({});
  std::ostringstream out;
  print_summary(out, s);
  EXPECT_TRUE(s.passed()) << out.str();
  EXPECT_EQ(s.checks.size(), 9u);
  for (const auto& c : s.checks) EXPECT_GT(c.count, 0u) << c.name;
}

TEST(VerifySuite, Deterministic) {
  VerifyOptions o;
  o.seed = 7;
  std::ostringstream a, b;
  print_summary(a, verify_suite(o));
  print_summary(b, verify_suite(o));
  EXPECT_EQ(a.str(), b.str());
}

TEST(VerifySuite, FlippedLAlphaSignFails) {
  VerifyOptions o;
  o.l_alpha_sign = LAlphaSign::AsPrinted;
  const auto s = verify_suite(o);
  EXPECT_FALSE(s.passed());
  EXPECT_FALSE(find(s, "bregman_limit").passed);
  EXPECT_FALSE(find(s, "decomposition").passed);
  EXPECT_TRUE(find(s, "transport").passed);
}

TEST(VerifySuite, AlphaThreeConcavityFailsWithWitness) {
  VerifyOptions o;
  o.concavity_alpha = 3.0;
  const auto s = verify_suite(o);
  const auto& c = find(s, "concavity");
  EXPECT_FALSE(c.passed);
  EXPECT_NE(c.detail.find("fails at p"), std::string::npos);
  EXPECT_FALSE(s.passed());
}
