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

// NRLaplace: every round each player's expected losses are rescaled to
// [1/3, 2/3], perturbed with Laplace noise, clamped, and fed to the player's
// no-regret learner.

#ifndef PRIVCORR_MECH_LAPLACE_HPP_
#define PRIVCORR_MECH_LAPLACE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "privcorr/equilibrium.hpp"
#include "privcorr/game_core.hpp"
#include "privcorr/noregret.hpp"
#include "privcorr/privacy.hpp"

namespace privcorr {

struct MechanismParams {
  PrivacyBudget budget;
  double beta = 0.05;
  LearnerKind learner = LearnerKind::kSwap;
  uint64_t seed = 0;
  // Explicit round count; std::nullopt plans T from the constraint.
  std::optional<uint64_t> rounds;
  uint64_t t_cap = kDefaultRoundCap;
  std::optional<LossMode> loss_mode;
};

struct RunOptions {
  // Players marked here opted out: they play the null action (uniform when
  // the game has none), run no learner, and receive no noise.
  std::vector<bool> opted_out;
};

struct RunManifest {
  std::string mechanism;
  std::string status = "ok";
  double epsilon = 0.0;
  double delta = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  size_t n = 0;
  size_t k = 0;
  uint64_t T = 0;
  bool t_auto = true;
  bool t_capped = false;
  double sigma = 0.0;
  double per_step_epsilon = 0.0;
  uint64_t ledger_draws = 0;
  std::string learner;
  std::string loss_backend;
  uint64_t loss_samples = 0;
  uint64_t seed = 0;
  uint64_t clamped_entries = 0;
  double predicted_alpha = 0.0;
  std::vector<std::string> warnings;
  // Median mechanism only.
  std::optional<double> alpha_mm;
  std::optional<uint64_t> hard_queries;
  std::optional<uint64_t> hard_query_cap;
  std::optional<uint64_t> failure_round;
};

struct MechanismRun {
  // T + 1 states per player.
  std::vector<PlaySequence> sequences;
  // [player][round], rescaled and before clamping; empty for opted-out
  // players.
  std::vector<LossMatrix> noisy_losses;
  // [player][round], exact losses in [0, 1].
  std::vector<LossMatrix> true_losses;
  // [player][round] number of clamped entries.
  std::vector<std::vector<uint32_t>> clamped;
  RunManifest manifest;
  BudgetLedger ledger{0.0, 0.0, 0.5};
  double predicted_alpha = 0.0;

  bool failed() const { return manifest.status != "ok"; }
  CorrelatedDistribution Distribution() const;
};

using MechanismOutcome = std::variant<MechanismRun, Infeasibility>;

MechanismOutcome RunNrLaplace(const GameInstance& game,
                              const MechanismParams& params,
                              const RunOptions& options = {});

// Every player's sequence except `player`'s, in player order.
std::vector<PlaySequence> JointView(const MechanismRun& run, size_t player);

// Strategy of an opted-out player.
MixedStrategy OptOutStrategy(const GameInstance& game);

nlohmann::ordered_json ToJson(const RunManifest& manifest);

}  // namespace privcorr

#endif  // PRIVCORR_MECH_LAPLACE_HPP_
