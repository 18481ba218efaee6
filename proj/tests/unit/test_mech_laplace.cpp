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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "privcorr/game_suite.hpp"
#include "privcorr/mech_laplace.hpp"

using namespace privcorr;

namespace {

// Each player's payoff depends on its own action only.
GameInstance IndependentGame() {
  const size_t n = 3;
  const size_t k = 2;
  std::vector<std::vector<double>> payoffs(n, std::vector<double>(8));
  for (size_t code = 0; code < 8; ++code) {
    for (size_t i = 0; i < n; ++i) {
      const size_t own = (code >> i) & 1;
      payoffs[i][code] = own == 0 ? 0.3 + 0.1 * i : 0.6;
    }
  }
  return TableGame(n, k, payoffs);
}

MechanismRun Run(const GameInstance& game, MechanismParams p,
                 const RunOptions& options = {}) {
  MechanismOutcome out = RunNrLaplace(game, p, options);
  REQUIRE(std::holds_alternative<MechanismRun>(out));
  return std::get<MechanismRun>(std::move(out));
}

MechanismParams Params(uint64_t rounds, uint64_t seed, double eps = 1.0) {
  MechanismParams p;
  p.budget = {eps, 1e-6, PrivacyKind::kJoint};
  p.rounds = rounds;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("zero-sensitivity game runs noiselessly") {
  const GameInstance game = IndependentGame();
  CHECK(game.gamma() == 0.0);
  const MechanismRun run = Run(game, Params(64, 1));
  CHECK(run.manifest.sigma == 0.0);
  for (size_t i = 0; i < game.n(); ++i) {
    const PlaySequence plain = RunLearner(LearnerKind::kSwap, RescaleLosses(run.true_losses[i]));
    REQUIRE(plain.states.size() == run.sequences[i].states.size());
    for (size_t t = 0; t < plain.states.size(); ++t) {
      CHECK(plain.states[t] == run.sequences[i].states[t]);
    }
  }
}

TEST_CASE("runs are deterministic in the seed") {
  const GameInstance game = BeachMountainGame(10, 4);
  const MechanismRun a = Run(game, Params(30, 9));
  const MechanismRun b = Run(game, Params(30, 9));
  const MechanismRun c = Run(game, Params(30, 10));
  CHECK(a.noisy_losses == b.noisy_losses);
  CHECK(a.Distribution() == b.Distribution());
  CHECK(ToJson(a.manifest) == ToJson(b.manifest));
  CHECK(a.noisy_losses != c.noisy_losses);
}

TEST_CASE("each player's play is a function of its own noisy losses") {
  const GameInstance game = BeachMountainGame(8, 3);
  const MechanismRun run = Run(game, Params(25, 4));
  for (size_t i = 0; i < game.n(); ++i) {
    Learner learner(LearnerKind::kSwap, game.k(), 25);
    CHECK(learner.current() == run.sequences[i].states[0]);
    for (size_t t = 0; t < 25; ++t) {
      LossVector clipped = run.noisy_losses[i][t];
      for (double& x : clipped) x = std::clamp(x, 0.0, 1.0);
      learner.Observe(clipped);
      CHECK(learner.current() == run.sequences[i].states[t + 1]);
    }
  }
}

TEST_CASE("joint view and ledger counts") {
  const GameInstance game = BeachMountainGame(5, 2);
  const uint64_t T = 12;
  const MechanismRun run = Run(game, Params(T, 2));
  CHECK(run.ledger.draws() == 5 * 2 * T);
  CHECK(run.manifest.ledger_draws == 5 * 2 * T);
  const auto view = JointView(run, 1);
  CHECK(view.size() == 4);
  size_t others = 0;
  for (size_t i = 0; i < 5; ++i) {
    if (i == 1) continue;
    for (const auto& row : run.noisy_losses[i]) others += row.size();
  }
  CHECK(others == 5 * 2 * T - 2 * T);

  const GameInstance two = BeachMountainGame(2, 1);
  const MechanismRun r2 = Run(two, Params(T, 3));
  const auto v = JointView(r2, 0);
  REQUIRE(v.size() == 1);
  CHECK(v[0].states == r2.sequences[1].states);
}

TEST_CASE("explicit T beyond the constraint warns") {
  const GameInstance game = BeachMountainGame(20, 10);
  const MechanismRun run = Run(game, Params(50, 1, 1.0));
  CHECK_FALSE(run.manifest.t_auto);
  CHECK(run.manifest.warnings.size() == 1);
}

TEST_CASE("auto T is infeasible at unit epsilon on the beach game") {
  const GameInstance game = BeachMountainGame(200, 100);
  MechanismParams p;
  p.budget = {1.0, 1e-6, PrivacyKind::kJoint};
  const MechanismOutcome out = RunNrLaplace(game, p);
  CHECK(std::holds_alternative<Infeasibility>(out));
}

TEST_CASE("opted-out players play the null action and get no noise") {
  const GameInstance game = BeachMountainGame(6, 3);
  RunOptions options;
  options.opted_out.assign(6, false);
  options.opted_out[2] = true;
  const MechanismRun run = Run(game, Params(10, 5), options);
  CHECK(run.noisy_losses[2].empty());
  CHECK(run.ledger.draws() == 5 * 2 * 10);
  for (const auto& s : run.sequences[2].states) CHECK(s == OptOutStrategy(game));
}

TEST_CASE("manifest JSON") {
  const GameInstance game = BeachMountainGame(5, 2);
  const MechanismRun run = Run(game, Params(8, 1));
  const auto j = ToJson(run.manifest);
  CHECK(j["mechanism"] == "laplace");
  CHECK(j["status"] == "ok");
  CHECK(j["T"] == 8);
  CHECK(j["learner"] == "swap");
}
