#include <gtest/gtest.h>

#include "oracles.hpp"
#include "strobo/echo.hpp"
#include "strobo/errors.hpp"

using namespace strobo;

namespace {

SystemParams resonant() {
  SystemParams p;
  p.ratio = 0.3710;
  p.kick = 2.0;
  p.z0 = Complex(1.0, 1.0) / std::sqrt(2.0);
  return p;
}

}  // namespace

TEST(PerturbedParams, RescalesKickByDefault) {
  const auto p = resonant();
  const auto q = perturbed_params(p, 0.01);
  EXPECT_DOUBLE_EQ(q.ratio, 0.381);
  EXPECT_DOUBLE_EQ(q.kick, 2.0 * 0.3710 / 0.381);
  EXPECT_EQ(q.z0, p.z0);
  EXPECT_DOUBLE_EQ(perturbed_params(p, 0.01, true).kick, 2.0);
  EXPECT_THROW(perturbed_params(p, -0.5), Error);
}

TEST(Echo, UnperturbedIsOne) {
  const auto seq = OutcomeSequence::parse("+--+-++-");
  for (double l : loschmidt_echo(resonant(), 0.0, seq)) EXPECT_NEAR(l, 1.0, 1e-12);
}

TEST(Echo, EmptyRecordGivesNoSteps) {
  EXPECT_TRUE(loschmidt_echo(resonant(), 0.01, OutcomeSequence{}).empty());
}

TEST(Echo, SymmetricInTheTwoParameterSets) {
  oracle::Draws d(41);
  for (int t = 0; t < 5; ++t) {
    const auto a = d.params(0.1, 0.9);
    const auto b = perturbed_params(a, 0.01);
    const auto seq = OutcomeSequence::parse("+-+--+");
    const auto ab = loschmidt_echo_between(a, b, seq);
    const auto ba = loschmidt_echo_between(b, a, seq);
    for (std::size_t n = 0; n < ab.size(); ++n) {
      EXPECT_GE(ab[n], 0.0);
      EXPECT_LE(ab[n], 1.0);
      EXPECT_NEAR(ab[n], ba[n], 1e-12);
    }
  }
}

TEST(Echo, GlobalSignDoesNotMatter) {
  const auto a = replay(resonant(), OutcomeSequence::parse("+-++-"));
  auto b = replay(perturbed_params(resonant(), 0.005), OutcomeSequence::parse("+-++-"));
  const double before = echo_fidelity(a, b);
  b.branches = b.branches.negated();
  EXPECT_NEAR(echo_fidelity(a, b), before, 1e-14);
}

TEST(Echo, DecaysAtResonance) {
  const auto seq = OutcomeSequence::parse("+-+-++--+-");
  const auto l = loschmidt_echo(resonant(), 0.01, seq);
  EXPECT_GT(l.front(), 0.9);
  EXPECT_LT(*std::min_element(l.begin(), l.end()), 1e-2);
}

TEST(Echo, UnreachableRecordIsImpossible) {
  auto p = resonant();
  p.kick = 0.0;
  try {
    loschmidt_echo(p, 0.01, OutcomeSequence::parse("+-"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::impossible_outcome);
  }
}
