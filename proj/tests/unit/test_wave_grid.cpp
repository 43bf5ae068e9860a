#include <gtest/gtest.h>

#include "oracles.hpp"
#include "strobo/echo.hpp"
#include "strobo/errors.hpp"
#include "strobo/trajectory.hpp"
#include "strobo/wave_grid.hpp"

using namespace strobo;

TEST(GridLayout, PowerOfTwoWithSelfDualSpacing) {
  SystemParams p;
  p.ratio = 0.3710;
  p.kick = 2.0;
  const auto l = GridLayout::for_steps(p, 10);
  EXPECT_EQ(l.points & (l.points - 1), 0U);
  EXPECT_GE(l.points, 256U);
  EXPECT_DOUBLE_EQ(l.spacing * l.spacing * static_cast<double>(l.points), 2 * oracle::kPi);
  EXPECT_THROW(GridLayout::with_points(1000), Error);
}

TEST(GridLayout, HugeRecordsHitCapacity) {
  SystemParams p;
  p.ratio = 0.3710;
  p.kick = 2.0;
  try {
    GridLayout::for_steps(p, 5000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::capacity);
  }
}

TEST(WavefunctionTrajectory, AgreesWithBranchEngine) {
  oracle::Draws d(71);
  for (int t = 0; t < 6; ++t) {
    const auto p = d.params();
    const OutcomeSequence seq{t % 2 ? 1 : -1, {1, -1, -1, 1, 1}};
    const auto grid = grid_replay_records(p, seq, true);
    const auto branch = replay_records(p, seq, true);
    ASSERT_EQ(grid.size(), branch.size());
    for (std::size_t n = 0; n < grid.size(); ++n) {
      EXPECT_NEAR(grid[n].cond_prob, branch[n].cond_prob, 1e-9);
      EXPECT_NEAR(grid[n].cum_prob, branch[n].cum_prob, 1e-9);
      EXPECT_NEAR(grid[n].energy, branch[n].energy, 1e-8 * branch[n].energy);
    }
  }
}

TEST(WavefunctionTrajectory, HusimiAndAmplitudeMatchBranchEngine) {
  SystemParams p;
  p.ratio = 0.106;
  p.kick = 2.0;
  p.z0 = Complex(1.0, 1.0) / std::sqrt(2.0);
  const auto seq = OutcomeSequence::parse("+--+");
  WavefunctionTrajectory w(p, 1, GridLayout::for_steps(p, 4));
  for (int s : seq.outcomes) w.advance(s);
  const auto st = replay(p, seq);
  const HusimiGrid g = HusimiGrid::from_steps(-6, 6, 0.5, -6, 6, 0.5);
  const auto a = w.husimi(g);
  const auto b = trajectory_husimi(st, g);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(a.values()[k], b.values()[k], 1e-9);
}

TEST(WavefunctionTrajectory, EchoMatchesBranchEngine) {
  SystemParams p;
  p.ratio = 0.3710;
  p.kick = 2.0;
  p.z0 = Complex(1.0, 1.0) / std::sqrt(2.0);
  const auto seq = OutcomeSequence::parse("+-+--+-");
  const auto a = grid_loschmidt_echo(p, 0.01, seq);
  const auto b = loschmidt_echo(p, 0.01, seq);
  for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(a[n], b[n], 1e-9);
}

TEST(WavefunctionTrajectory, SamplingIsDeterministic) {
  SystemParams p;
  p.ratio = 0.3710;
  p.kick = 2.0;
  UniformSource a(5), b(5);
  OutcomeSequence ra, rb;
  const auto x = grid_sample_records(p, 1, 18, a, true, &ra);
  const auto y = grid_sample_records(p, 1, 18, b, true, &rb);
  EXPECT_EQ(ra, rb);
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_EQ(x[n].energy, y[n].energy);
}

TEST(WavefunctionTrajectory, RejectsDroppedPhases) {
  SystemParams p;
  p.ratio = 0.2;
  p.kick = 1.0;
  p.phases = PhaseConvention::dropped;
  EXPECT_THROW(WavefunctionTrajectory(p, 1, GridLayout::with_points(256)), Error);
}

TEST(WavefunctionTrajectory, ImpossibleOutcome) {
  SystemParams p;
  p.ratio = 0.2;
  WavefunctionTrajectory w(p, 1, GridLayout::with_points(256));
  try {
    w.advance(-1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::impossible_outcome);
  }
}
