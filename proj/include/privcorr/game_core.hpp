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

// Core abstractions for n-player, k-action games with type-dependent
// utilities in [0, 1] and a declared sensitivity bound gamma: the largest
// amount by which one player's action can move any *other* player's utility.

#ifndef PRIVCORR_GAME_CORE_HPP_
#define PRIVCORR_GAME_CORE_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "privcorr/common.hpp"

namespace privcorr {

struct ActionId {
  uint32_t value = 0;
  friend auto operator<=>(const ActionId&, const ActionId&) = default;
};

// Index into a game's type universe.
struct PlayerType {
  uint32_t id = 0;
  friend auto operator<=>(const PlayerType&, const PlayerType&) = default;
};

using ActionProfile = std::vector<ActionId>;
using LossVector = std::vector<double>;

// A probability distribution over k actions. Construction validates
// non-negativity and renormalises; the total must already be within 1e-9
// of one.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Uniform(size_t k);
  static MixedStrategy PointMass(size_t k, ActionId action);
  // Builds from arbitrary non-negative weights. Entries whose normalised
  // mass is below 1e-12 are set to zero before the final renormalisation.
  static MixedStrategy FromWeights(std::vector<double> weights);

  size_t size() const { return probs_.size(); }
  double operator[](size_t j) const { return probs_[j]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

// Optional structure of games whose utilities depend only on the player's
// own action, own type, and how many players in a fixed neighbourhood chose
// each action. Every anonymous game is the special case "neighbourhood =
// all other players".
class AggregateStructure {
 public:
  virtual ~AggregateStructure() = default;

  // Opponents whose actions the utility of `player` (holding `type`)
  // depends on, in increasing order; std::nullopt means every other player.
  virtual std::optional<std::vector<size_t>> Neighbourhood(
      size_t player, PlayerType type) const {
    (void)player;
    (void)type;
    return std::nullopt;
  }

  // `counts[a]` is the number of neighbourhood members playing action a.
  // When AffineInCounts() is true, counts may be fractional expected counts.
  virtual double UtilityFromCounts(size_t player, PlayerType type,
                                   ActionId own,
                                   std::span<const double> counts) const = 0;

  // True when utility is an affine function of the count vector, so that
  // the expectation over opponents equals the utility at expected counts.
  virtual bool AffineInCounts() const { return false; }
};

class UtilityModel {
 public:
  virtual ~UtilityModel() = default;

  virtual double Utility(size_t player, PlayerType type,
                         std::span<const ActionId> profile) const = 0;

  virtual const AggregateStructure* Aggregate() const { return nullptr; }
};

// Language-neutral description of a game, as stored in game files.
struct GameSpec {
  std::string family;
  size_t n = 0;
  size_t k = 0;
  double gamma = 0.0;
  std::vector<std::string> types;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<uint32_t> null_action;

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

class GameInstance {
 public:
  GameInstance(GameSpec spec, std::vector<std::string> type_universe,
               std::shared_ptr<const UtilityModel> model);

  const GameSpec& spec() const { return spec_; }
  size_t n() const { return spec_.n; }
  size_t k() const { return spec_.k; }
  double gamma() const { return spec_.gamma; }
  std::optional<ActionId> null_action() const;

  const std::vector<std::string>& type_universe() const { return universe_; }
  size_t universe_size() const { return universe_.size(); }
  PlayerType TypeId(const std::string& name) const;

  PlayerType type(size_t player) const { return types_[player]; }
  std::span<const PlayerType> types() const { return types_; }

  const UtilityModel& model() const { return *model_; }
  const AggregateStructure* aggregate() const { return model_->Aggregate(); }

  // Utility of `player` under its own type. Throws ContractError if the
  // family returns a value outside [0, 1].
  double Utility(size_t player, std::span<const ActionId> profile) const;
  double UtilityAs(size_t player, PlayerType type,
                   std::span<const ActionId> profile) const;

  // Same game with a different type assignment.
  GameInstance WithTypes(std::vector<PlayerType> types) const;

 private:
  GameSpec spec_;
  std::vector<std::string> universe_;
  std::vector<PlayerType> types_;
  std::shared_ptr<const UtilityModel> model_;
};

enum class LossBackend { kExact, kAnonymous, kMonteCarlo };

const char* ToString(LossBackend backend);

struct LossMode {
  LossBackend backend = LossBackend::kExact;
  uint64_t samples = 0;

  static LossMode Exact() { return {LossBackend::kExact, 0}; }
  static LossMode Anonymous() { return {LossBackend::kAnonymous, 0}; }
  static LossMode MonteCarlo(uint64_t samples) {
    return {LossBackend::kMonteCarlo, samples};
  }
};

// Exact enumeration refuses opponent profile spaces above this size.
inline constexpr double kExactProfileBudget = 1e7;
// DefaultLossMode picks exact enumeration up to this size.
inline constexpr double kDefaultExactThreshold = 1e5;
inline constexpr uint64_t kDefaultMonteCarloSamples = 10000;

// Anonymous backend for aggregative games, exact enumeration when small,
// Monte Carlo otherwise.
LossMode DefaultLossMode(const GameInstance& game);

struct LossEstimate {
  LossVector losses;
  LossBackend backend = LossBackend::kExact;
  // Per-action standard errors; empty for the exact backends.
  std::vector<double> stderrs;
};

// l^j = 1 - E[u_i(j, a_{-i})] for every action j, where a_{-i} is drawn
// from the product of the opponents' strategies. `profile` holds a strategy
// for every player; the entry at `player` is ignored. `as_type` overrides
// the player's own type. Monte Carlo mode requires `rng`.
LossEstimate ExpectedLoss(const GameInstance& game, size_t player,
                          std::span<const MixedStrategy> profile,
                          LossMode mode, Rng* rng = nullptr,
                          std::optional<PlayerType> as_type = std::nullopt);

// Overload taking only the n-1 opponents, in player order.
LossEstimate ExpectedLossAgainst(const GameInstance& game, size_t player,
                                 std::span<const MixedStrategy> others,
                                 LossMode mode, Rng* rng = nullptr);

// Losses of every player against the same profile. Equivalent to calling
// ExpectedLoss per player, with shared work for affine anonymous games.
std::vector<LossVector> ExpectedLossesAll(
    const GameInstance& game, std::span<const MixedStrategy> profile,
    LossMode mode, Rng* rng = nullptr);

struct SensitivityWitness {
  size_t deviator = 0;
  size_t observer = 0;
  ActionId from;
  ActionId to;
  ActionProfile profile;
  double difference = 0.0;
};

struct SensitivityReport {
  double max_observed = 0.0;
  std::optional<SensitivityWitness> violation;
};

// Probes random (deviator, observer, action pair, background profile)
// tuples and reports the largest change in the observer's utility. A
// change above the declared gamma is returned as a witness.
SensitivityReport CheckSensitivity(const GameInstance& game, uint64_t probes,
                                   uint64_t seed);

}  // namespace privcorr

#endif  // PRIVCORR_GAME_CORE_HPP_
