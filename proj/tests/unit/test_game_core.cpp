// Copyright 2026 The privcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "privcorr/game_core.hpp"
#include "privcorr/game_suite.hpp"

using namespace privcorr;

namespace {

// u_i(j, a_other) = [j == a_other] on two players.
GameInstance MatchingGame() {
  std::vector<std::vector<double>> payoffs(2, std::vector<double>(4));
  for (uint32_t a0 = 0; a0 < 2; ++a0) {
    for (uint32_t a1 = 0; a1 < 2; ++a1) {
      const double match = a0 == a1 ? 1.0 : 0.0;
      payoffs[0][a0 + 2 * a1] = match;
      payoffs[1][a0 + 2 * a1] = match;
    }
  }
  return TableGame(2, 2, payoffs);
}

std::vector<MixedStrategy> RandomProfile(size_t n, size_t k, Rng& rng) {
  std::vector<MixedStrategy> out;
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> w(k);
    for (double& x : w) x = rng.Uniform();
    out.push_back(MixedStrategy::FromWeights(w));
  }
  return out;
}

}  // namespace

TEST_CASE("mixed strategy validation") {
  CHECK_THROWS_AS(MixedStrategy({0.5, 0.6}), ContractError);
  CHECK_THROWS_AS(MixedStrategy({-0.1, 1.1}), ContractError);
  const MixedStrategy u = MixedStrategy::Uniform(4);
  for (size_t j = 0; j < 4; ++j) CHECK(u[j] == doctest::Approx(0.25));
  const MixedStrategy p = MixedStrategy::PointMass(3, ActionId{2});
  CHECK(p[2] == 1.0);
  CHECK(p[0] == 0.0);
}

TEST_CASE("expected loss against a point mass") {
  const GameInstance game = MatchingGame();
  const std::vector<MixedStrategy> profile{MixedStrategy::Uniform(2),
                                           MixedStrategy::PointMass(2, ActionId{0})};
  const LossEstimate est = ExpectedLoss(game, 0, profile, LossMode::Exact());
  CHECK(est.losses[0] == 0.0);
  CHECK(est.losses[1] == 1.0);
}

TEST_CASE("beach player facing an all-beach crowd has zero loss at the beach") {
  const GameInstance game = BeachMountainGame(100, 0);
  std::vector<MixedStrategy> profile(100, MixedStrategy::PointMass(2, ActionId{kBeach}));
  for (LossMode mode : {LossMode::Exact(), LossMode::Anonymous()}) {
    if (mode.backend == LossBackend::kExact) continue;  // 2^99 profiles
    const LossEstimate est = ExpectedLoss(game, 0, profile, mode);
    CHECK(est.losses[kBeach] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(est.losses[kMountain] == doctest::Approx(1.0));
  }
}

TEST_CASE("anonymous and affine backends agree with enumeration") {
  Rng rng(7);
  const GameInstance game = BeachMountainGame(7, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto profile = RandomProfile(7, 2, rng);
    const auto all = ExpectedLossesAll(game, profile, LossMode::Anonymous());
    for (size_t i = 0; i < 7; ++i) {
      const auto truth = oracle::EnumeratedLoss(game, i, profile);
      const auto anon = ExpectedLoss(game, i, profile, LossMode::Anonymous()).losses;
      const auto exact = ExpectedLoss(game, i, profile, LossMode::Exact()).losses;
      for (size_t j = 0; j < 2; ++j) {
        CHECK(anon[j] == doctest::Approx(truth[j]).epsilon(1e-12));
        CHECK(exact[j] == doctest::Approx(truth[j]).epsilon(1e-12));
        CHECK(all[i][j] == doctest::Approx(truth[j]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("monte carlo loss within three standard errors of exact") {
  Rng rng(11);
  const GameInstance game = RandomGame(3, 2, 1, 5, {"t0", "t0", "t0"});
  const auto profile = RandomProfile(3, 2, rng);
  Rng mc(99);
  for (size_t i = 0; i < 3; ++i) {
    const auto truth = oracle::EnumeratedLoss(game, i, profile);
    const LossEstimate est =
        ExpectedLoss(game, i, profile, LossMode::MonteCarlo(100000), &mc);
    REQUIRE(est.stderrs.size() == 2);
    for (size_t j = 0; j < 2; ++j) {
      CHECK(std::abs(est.losses[j] - truth[j]) <= 3.0 * est.stderrs[j] + 1e-12);
    }
  }
}

TEST_CASE("sensitivity probes") {
  SUBCASE("beach game with n=101 is 1/100 sensitive") {
    const GameInstance game = BeachMountainGame(101, 50);
    const SensitivityReport r = CheckSensitivity(game, 20000, 3);
    CHECK(r.max_observed <= 1.0 / 100 + 1e-12);
    CHECK_FALSE(r.violation.has_value());
  }
  SUBCASE("a declared gamma below the true sensitivity is rejected") {
    GameSpec spec = MatchingGame().spec();
    CHECK(spec.gamma == doctest::Approx(1.0));
    spec.gamma = 0.5;
    CHECK_THROWS_AS(MakeGame(spec), ContractError);
  }
}

TEST_CASE("utilities outside the unit interval are rejected") {
  CHECK_THROWS_AS(TableGame(2, 2, {{1.5, 0, 0, 1}, {1, 0, 0, 1}}), ContractError);
}
