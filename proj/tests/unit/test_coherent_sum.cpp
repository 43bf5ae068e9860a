#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "strobo/coherent_sum.hpp"
#include "strobo/maps.hpp"

using namespace strobo;

namespace {

SignedCoherentSum random_sum(oracle::Draws& d, int n, double spread) {
  SignedCoherentSum s;
  for (int i = 0; i < n; ++i) {
    s.push_back(d.uniform(0, 1) < 0.5 ? 1 : -1, d.uniform(-3.14, 3.14),
                Complex(d.uniform(-spread, spread), d.uniform(-spread, spread)));
  }
  return s;
}

std::vector<Complex> weights(const SignedCoherentSum& s) {
  std::vector<Complex> w;
  for (std::size_t i = 0; i < s.size(); ++i) w.push_back(s.weight(i));
  return w;
}

std::vector<Complex> centers(const SignedCoherentSum& s) {
  return {s.centers().begin(), s.centers().end()};
}

}  // namespace

TEST(SumNormSq, SingleBranchIsOne) {
  EXPECT_DOUBLE_EQ(sum_norm_sq(SignedCoherentSum::single(Complex(2.0, -1.0))), 1.0);
}

TEST(SumNormSq, OppositeSignsCancel) {
  SignedCoherentSum s;
  s.push_back(1, 0.0, Complex(0.4, 0.2));
  s.push_back(-1, 0.0, Complex(0.4, 0.2));
  EXPECT_EQ(sum_norm_sq(s), 0.0);
}

TEST(SumNormSq, TwoBranchesMatchNumberBasis) {
  oracle::Draws d(21);
  for (int t = 0; t < 20; ++t) {
    const Complex z(d.uniform(-2, 2), d.uniform(-2, 2));
    const Complex w(d.uniform(-2, 2), d.uniform(-2, 2));
    SignedCoherentSum s;
    s.push_back(1, 0.0, z);
    s.push_back(1, 0.0, w);
    const double closed = 2.0 * (1.0 + coherent_overlap(z, w).real());
    const auto v = oracle::fock_superposition({1.0, 1.0}, {z, w}, 150);
    EXPECT_NEAR(sum_norm_sq(s), closed, 1e-13);
    EXPECT_NEAR(sum_norm_sq(s), oracle::fock_inner(v, v).real(), 1e-10);
  }
}

TEST(SumNormSq, PhasedSumsMatchNumberBasis) {
  oracle::Draws d(22);
  for (int t = 0; t < 10; ++t) {
    const auto s = random_sum(d, 12, 2.5);
    const auto v = oracle::fock_superposition(weights(s), centers(s), 160);
    EXPECT_NEAR(sum_norm_sq(s), oracle::fock_inner(v, v).real(), 1e-9);
  }
}

TEST(SumNormSq, PermutationInvariant) {
  oracle::Draws d(23);
  std::mt19937_64 gen(5);
  for (int t = 0; t < 10; ++t) {
    const auto s = random_sum(d, 64, 1.5);
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen);
    SignedCoherentSum shuffled;
    for (std::size_t i : order) shuffled.push_back(s.sign(i), s.phase(i), s.center(i));
    EXPECT_NEAR(sum_norm_sq(s), sum_norm_sq(shuffled), 1e-12 * std::max(1.0, sum_norm_sq(s)));
  }
}

TEST(SumOverlap, MatchesNumberBasis) {
  oracle::Draws d(24);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_sum(d, 6, 2.0);
    const auto b = random_sum(d, 9, 2.0);
    const auto va = oracle::fock_superposition(weights(a), centers(a), 150);
    const auto vb = oracle::fock_superposition(weights(b), centers(b), 150);
    EXPECT_NEAR(std::abs(sum_overlap(a, b) - oracle::fock_inner(va, vb)), 0.0, 1e-10);
  }
}

TEST(SumNumberExpectation, MatchesNumberBasis) {
  oracle::Draws d(25);
  for (int t = 0; t < 10; ++t) {
    const auto s = random_sum(d, 8, 2.0);
    const auto v = oracle::fock_superposition(weights(s), centers(s), 160);
    auto hv = v;
    for (std::size_t n = 0; n < hv.size(); ++n) hv[n] *= static_cast<double>(n) + 0.5;
    EXPECT_NEAR(sum_number_expectation(s), oracle::fock_inner(v, hv).real(), 1e-9);
  }
}

TEST(KickCrossTerm, EqualsOverlapOfKickedImages) {
  oracle::Draws d(26);
  for (int t = 0; t < 20; ++t) {
    const auto p = d.params();
    const auto s = random_sum(d, 8, 2.0);
    const double direct =
        sum_overlap(apply_kick(s, 1, p), apply_kick(s, -1, p)).real();
    EXPECT_NEAR(kick_cross_term(s, p), direct, 1e-12);
  }
}

TEST(KickAndProject, LayoutIsPlusImagesThenSignedMinusImages) {
  SystemParams p;
  p.ratio = 0.3;
  p.kick = 1.2;
  SignedCoherentSum s;
  s.push_back(1, 0.0, Complex(0.5, 0.1));
  s.push_back(-1, 0.4, Complex(-0.2, 0.3));
  const auto out = kick_and_project(s, -1, p);
  ASSERT_EQ(out.size(), 4U);
  EXPECT_EQ(out.sign(0), 1);
  EXPECT_EQ(out.sign(1), -1);
  EXPECT_EQ(out.sign(2), -1);
  EXPECT_EQ(out.sign(3), 1);
  EXPECT_EQ(out.center(0), map_apply(s.center(0), 1, p));
  EXPECT_EQ(out.center(3), map_apply(s.center(1), -1, p));
}

TEST(SumAmplitude, MatchesNumberBasis) {
  oracle::Draws d(27);
  const auto s = random_sum(d, 5, 2.0);
  const auto v = oracle::fock_superposition(weights(s), centers(s), 150);
  const Complex z(0.7, -0.3);
  EXPECT_NEAR(std::abs(sum_amplitude_at(s, z) - oracle::fock_inner(oracle::fock_coherent(z, 150), v)),
              0.0, 1e-10);
}

TEST(Pruning, FarPairsDropOnly) {
  SignedCoherentSum s;
  s.push_back(1, 0.0, Complex(0.0, 0.0));
  s.push_back(1, 0.0, Complex(0.5, 0.0));
  s.push_back(1, 0.0, Complex(30.0, 0.0));
  EXPECT_NEAR(sum_norm_sq(s, -50.0), sum_norm_sq(s), 1e-15);
}
