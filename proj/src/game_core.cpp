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

#include "privcorr/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace privcorr {
namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kUtilitySlack = 1e-12;

double ProfileSpaceSize(size_t k, size_t opponents) {
  return std::pow(static_cast<double>(k), static_cast<double>(opponents));
}

std::vector<size_t> Opponents(const GameInstance& game, size_t player,
                              PlayerType type) {
  if (const auto* agg = game.aggregate()) {
    if (auto hood = agg->Neighbourhood(player, type)) return *hood;
  }
  std::vector<size_t> out;
  out.reserve(game.n() - 1);
  for (size_t i = 0; i < game.n(); ++i) {
    if (i != player) out.push_back(i);
  }
  return out;
}

void CheckProfile(const GameInstance& game, size_t player,
                  std::span<const MixedStrategy> profile) {
  Require(player < game.n(), "player index out of range");
  Require(profile.size() == game.n(),
          "profile must hold one strategy per player");
  for (size_t i = 0; i < profile.size(); ++i) {
    if (i == player) continue;
    Require(profile[i].size() == game.k(),
            "strategy length differs from the action count");
  }
}

// Depth-first enumeration of every opponent profile with positive
// probability.
class ExactEnumerator {
 public:
  ExactEnumerator(const GameInstance& game, size_t player, PlayerType type,
                  std::span<const MixedStrategy> profile)
      : game_(game),
        player_(player),
        type_(type),
        profile_(profile),
        actions_(game.n()),
        expected_(game.k(), 0.0) {}

  std::vector<double> Run() {
    Visit(0, 1.0);
    return expected_;
  }

 private:
  void Visit(size_t i, double mass) {
    if (i == game_.n()) {
      for (uint32_t j = 0; j < game_.k(); ++j) {
        actions_[player_] = ActionId{j};
        expected_[j] += mass * game_.UtilityAs(player_, type_, actions_);
      }
      return;
    }
    if (i == player_) {
      Visit(i + 1, mass);
      return;
    }
    const MixedStrategy& s = profile_[i];
    for (uint32_t a = 0; a < game_.k(); ++a) {
      if (s[a] == 0.0) continue;
      actions_[i] = ActionId{a};
      Visit(i + 1, mass * s[a]);
    }
  }

  const GameInstance& game_;
  size_t player_;
  PlayerType type_;
  std::span<const MixedStrategy> profile_;
  ActionProfile actions_;
  std::vector<double> expected_;
};

std::vector<double> ExactUtilities(const GameInstance& game, size_t player,
                                   PlayerType type,
                                   std::span<const MixedStrategy> profile) {
  if (ProfileSpaceSize(game.k(), game.n() - 1) > kExactProfileBudget) {
    std::ostringstream msg;
    msg << "exact loss enumeration over " << game.k() << "^" << game.n() - 1
        << " opponent profiles exceeds the budget of " << kExactProfileBudget;
    throw ResourceError(msg.str());
  }
  return ExactEnumerator(game, player, type, profile).Run();
}

// Distribution of the per-action counts among `members`, as a dense table
// indexed by the mixed-radix code of (c_1, ..., c_{k-1}); c_0 is implied.
struct CountDistribution {
  size_t members = 0;
  size_t k = 0;
  std::vector<double> mass;

  std::vector<double> Decode(size_t code) const {
    std::vector<double> counts(k, 0.0);
    double rest = static_cast<double>(members);
    for (size_t a = 1; a < k; ++a) {
      counts[a] = static_cast<double>(code % (members + 1));
      code /= members + 1;
      rest -= counts[a];
    }
    counts[0] = rest;
    return counts;
  }
};

CountDistribution CountsOf(std::span<const size_t> members,
                           std::span<const MixedStrategy> profile, size_t k) {
  const size_t radix = members.size() + 1;
  const double states =
      std::pow(static_cast<double>(radix), static_cast<double>(k - 1));
  if (states > kExactProfileBudget) {
    throw ResourceError("count distribution has too many states");
  }
  std::vector<size_t> stride(k, 0);
  size_t s = 1;
  for (size_t a = 1; a < k; ++a) {
    stride[a] = s;
    s *= radix;
  }
  CountDistribution dist{members.size(), k, std::vector<double>(s, 0.0)};
  dist.mass[0] = 1.0;
  std::vector<double> next(s);
  for (size_t m = 0; m < members.size(); ++m) {
    const MixedStrategy& strat = profile[members[m]];
    std::fill(next.begin(), next.end(), 0.0);
    for (size_t code = 0; code < s; ++code) {
      const double p = dist.mass[code];
      if (p == 0.0) continue;
      next[code] += p * strat[0];
      for (size_t a = 1; a < k; ++a) {
        if (strat[a] == 0.0) continue;
        next[code + stride[a]] += p * strat[a];
      }
    }
    dist.mass.swap(next);
  }
  return dist;
}

std::vector<double> AnonymousUtilities(const GameInstance& game,
                                       const AggregateStructure& agg,
                                       size_t player, PlayerType type,
                                       std::span<const MixedStrategy> profile) {
  const std::vector<size_t> members = Opponents(game, player, type);
  std::vector<double> expected(game.k(), 0.0);
  if (agg.AffineInCounts()) {
    std::vector<double> counts(game.k(), 0.0);
    for (size_t m : members) {
      for (size_t a = 0; a < game.k(); ++a) counts[a] += profile[m][a];
    }
    for (uint32_t j = 0; j < game.k(); ++j) {
      expected[j] = agg.UtilityFromCounts(player, type, ActionId{j}, counts);
    }
    return expected;
  }
  const CountDistribution dist = CountsOf(members, profile, game.k());
  for (size_t code = 0; code < dist.mass.size(); ++code) {
    const double p = dist.mass[code];
    if (p == 0.0) continue;
    const std::vector<double> counts = dist.Decode(code);
    for (uint32_t j = 0; j < game.k(); ++j) {
      expected[j] +=
          p * agg.UtilityFromCounts(player, type, ActionId{j}, counts);
    }
  }
  return expected;
}

LossEstimate MonteCarloLoss(const GameInstance& game, size_t player,
                            PlayerType type,
                            std::span<const MixedStrategy> profile,
                            uint64_t samples, Rng& rng) {
  Require(samples >= 2, "monte carlo mode needs at least two samples");
  const size_t k = game.k();
  std::vector<double> sum(k, 0.0);
  std::vector<double> sum_sq(k, 0.0);
  ActionProfile actions(game.n());
  for (uint64_t s = 0; s < samples; ++s) {
    for (size_t i = 0; i < game.n(); ++i) {
      if (i == player) continue;
      actions[i] = ActionId{static_cast<uint32_t>(
          rng.Categorical(profile[i].probs()))};
    }
    for (uint32_t j = 0; j < k; ++j) {
      actions[player] = ActionId{j};
      const double u = game.UtilityAs(player, type, actions);
      sum[j] += u;
      sum_sq[j] += u * u;
    }
  }
  LossEstimate out;
  out.backend = LossBackend::kMonteCarlo;
  out.losses.resize(k);
  out.stderrs.resize(k);
  const double count = static_cast<double>(samples);
  for (size_t j = 0; j < k; ++j) {
    const double mean = sum[j] / count;
    const double var =
        std::max(0.0, (sum_sq[j] - count * mean * mean) / (count - 1.0));
    out.losses[j] = 1.0 - mean;
    out.stderrs[j] = std::sqrt(var / count);
  }
  return out;
}

}  // namespace

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  Require(!probs_.empty(), "a mixed strategy needs at least one action");
  double total = 0.0;
  for (double p : probs_) {
    Require(std::isfinite(p) && p >= 0.0,
            "mixed strategy entries must be finite and non-negative");
    total += p;
  }
  Require(std::abs(total - 1.0) <= kSumTolerance,
          "mixed strategy entries must sum to one");
  for (double& p : probs_) p /= total;
}

MixedStrategy MixedStrategy::Uniform(size_t k) {
  Require(k >= 1, "uniform strategy needs k >= 1");
  return MixedStrategy(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

MixedStrategy MixedStrategy::PointMass(size_t k, ActionId action) {
  Require(action.value < k, "point mass action out of range");
  std::vector<double> probs(k, 0.0);
  probs[action.value] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::FromWeights(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    Require(std::isfinite(w) && w >= 0.0, "weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw NumericError("all strategy weights are zero");
  for (double& w : weights) {
    w /= total;
    if (w < 1e-12) w = 0.0;
  }
  total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return MixedStrategy(std::move(weights));
}

GameInstance::GameInstance(GameSpec spec, std::vector<std::string> universe,
                           std::shared_ptr<const UtilityModel> model)
    : spec_(std::move(spec)),
      universe_(std::move(universe)),
      model_(std::move(model)) {
  Require(model_ != nullptr, "game needs a utility model");
  Require(spec_.n >= 1, "game needs at least one player");
  Require(spec_.k >= 1, "game needs at least one action");
  Require(spec_.gamma >= 0.0, "gamma must be non-negative");
  Require(!universe_.empty(), "type universe must be non-empty");
  Require(spec_.types.size() == spec_.n, "types must list one entry per player");
  if (spec_.null_action) {
    Require(*spec_.null_action < spec_.k, "null action out of range");
  }
  types_.reserve(spec_.n);
  for (const std::string& name : spec_.types) types_.push_back(TypeId(name));
}

std::optional<ActionId> GameInstance::null_action() const {
  if (!spec_.null_action) return std::nullopt;
  return ActionId{*spec_.null_action};
}

PlayerType GameInstance::TypeId(const std::string& name) const {
  auto it = std::find(universe_.begin(), universe_.end(), name);
  if (it == universe_.end()) {
    throw ContractError("type '" + name + "' is not in the " + spec_.family +
                        " type universe");
  }
  return PlayerType{static_cast<uint32_t>(it - universe_.begin())};
}

double GameInstance::Utility(size_t player,
                             std::span<const ActionId> profile) const {
  return UtilityAs(player, types_[player], profile);
}

double GameInstance::UtilityAs(size_t player, PlayerType type,
                               std::span<const ActionId> profile) const {
  const double u = model_->Utility(player, type, profile);
  if (!(u >= -kUtilitySlack && u <= 1.0 + kUtilitySlack)) {
    std::ostringstream msg;
    msg << spec_.family << " utility " << u << " for player " << player
        << " lies outside [0, 1]";
    throw ContractError(msg.str());
  }
  return std::clamp(u, 0.0, 1.0);
}

GameInstance GameInstance::WithTypes(std::vector<PlayerType> types) const {
  Require(types.size() == spec_.n, "type assignment has the wrong length");
  GameSpec spec = spec_;
  for (size_t i = 0; i < types.size(); ++i) {
    Require(types[i].id < universe_.size(), "type id out of range");
    spec.types[i] = universe_[types[i].id];
  }
  return GameInstance(std::move(spec), universe_, model_);
}

const char* ToString(LossBackend backend) {
  switch (backend) {
    case LossBackend::kExact:
      return "exact";
    case LossBackend::kAnonymous:
      return "anonymous";
    case LossBackend::kMonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

LossMode DefaultLossMode(const GameInstance& game) {
  if (game.aggregate() != nullptr) return LossMode::Anonymous();
  if (ProfileSpaceSize(game.k(), game.n() - 1) <= kDefaultExactThreshold) {
    return LossMode::Exact();
  }
  return LossMode::MonteCarlo(kDefaultMonteCarloSamples);
}

LossEstimate ExpectedLoss(const GameInstance& game, size_t player,
                          std::span<const MixedStrategy> profile,
                          LossMode mode, Rng* rng,
                          std::optional<PlayerType> as_type) {
  CheckProfile(game, player, profile);
  const PlayerType type = as_type.value_or(game.type(player));
  std::vector<double> utilities;
  switch (mode.backend) {
    case LossBackend::kExact:
      utilities = ExactUtilities(game, player, type, profile);
      break;
    case LossBackend::kAnonymous: {
      const AggregateStructure* agg = game.aggregate();
      if (agg == nullptr) {
        throw ContractError("anonymous loss mode needs an aggregative game; " +
                            game.spec().family + " declares none");
      }
      utilities = AnonymousUtilities(game, *agg, player, type, profile);
      break;
    }
    case LossBackend::kMonteCarlo:
      Require(rng != nullptr, "monte carlo mode needs a random stream");
      return MonteCarloLoss(game, player, type, profile, mode.samples, *rng);
  }
  LossEstimate out;
  out.backend = mode.backend;
  out.losses.resize(game.k());
  for (size_t j = 0; j < game.k(); ++j) {
    out.losses[j] = std::clamp(1.0 - utilities[j], 0.0, 1.0);
  }
  return out;
}

LossEstimate ExpectedLossAgainst(const GameInstance& game, size_t player,
                                 std::span<const MixedStrategy> others,
                                 LossMode mode, Rng* rng) {
  Require(player < game.n(), "player index out of range");
  Require(others.size() + 1 == game.n(),
          "expected one strategy for each of the n-1 opponents");
  std::vector<MixedStrategy> profile;
  profile.reserve(game.n());
  for (size_t i = 0, o = 0; i < game.n(); ++i) {
    if (i == player) {
      profile.push_back(MixedStrategy::Uniform(game.k()));
    } else {
      profile.push_back(others[o++]);
    }
  }
  return ExpectedLoss(game, player, profile, mode, rng);
}

std::vector<LossVector> ExpectedLossesAll(
    const GameInstance& game, std::span<const MixedStrategy> profile,
    LossMode mode, Rng* rng) {
  std::vector<LossVector> out(game.n());
  const AggregateStructure* agg = game.aggregate();
  const bool affine = mode.backend == LossBackend::kAnonymous &&
                      agg != nullptr && agg->AffineInCounts();
  if (!affine) {
    for (size_t i = 0; i < game.n(); ++i) {
      out[i] = ExpectedLoss(game, i, profile, mode, rng).losses;
    }
    return out;
  }
  // Players whose neighbourhood is "all others" share the population total
  // and subtract their own mass.
  Require(profile.size() == game.n(),
          "profile must hold one strategy per player");
  const size_t k = game.k();
  std::vector<double> total(k, 0.0);
  for (const MixedStrategy& s : profile) {
    Require(s.size() == k, "strategy length differs from the action count");
    for (size_t a = 0; a < k; ++a) total[a] += s[a];
  }
  std::vector<double> counts(k);
  for (size_t i = 0; i < game.n(); ++i) {
    if (agg->Neighbourhood(i, game.type(i))) {
      out[i] = ExpectedLoss(game, i, profile, mode, rng).losses;
      continue;
    }
    for (size_t a = 0; a < k; ++a) {
      counts[a] = std::max(0.0, total[a] - profile[i][a]);
    }
    out[i].resize(k);
    for (uint32_t j = 0; j < k; ++j) {
      const double u =
          agg->UtilityFromCounts(i, game.type(i), ActionId{j}, counts);
      out[i][j] = std::clamp(1.0 - u, 0.0, 1.0);
    }
  }
  return out;
}

SensitivityReport CheckSensitivity(const GameInstance& game, uint64_t probes,
                                   uint64_t seed) {
  Require(probes >= 1, "sensitivity check needs at least one probe");
  Require(game.n() >= 2, "sensitivity needs at least two players");
  Rng rng(seed);
  SensitivityReport report;
  ActionProfile profile(game.n());
  for (uint64_t p = 0; p < probes; ++p) {
    const size_t deviator = rng.Index(game.n());
    size_t observer = rng.Index(game.n() - 1);
    if (observer >= deviator) ++observer;
    for (auto& a : profile) a = ActionId{static_cast<uint32_t>(rng.Index(game.k()))};
    const ActionId from{static_cast<uint32_t>(rng.Index(game.k()))};
    const ActionId to{static_cast<uint32_t>(rng.Index(game.k()))};
    profile[deviator] = from;
    const double before = game.Utility(observer, profile);
    profile[deviator] = to;
    const double after = game.Utility(observer, profile);
    const double diff = std::abs(after - before);
    if (diff > report.max_observed) report.max_observed = diff;
    if (diff > game.gamma() + 1e-12 && !report.violation) {
      profile[deviator] = from;
      report.violation =
          SensitivityWitness{deviator, observer, from, to, profile, diff};
    }
  }
  return report;
}

}  // namespace privcorr
