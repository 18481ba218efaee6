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

// Monte Carlo audit of the proxy game: the best unilateral deviation gain
// (a swap after opting in, or opting out and playing a fixed action)
// against everyone else opting in and following recommendations.

#ifndef PRIVCORR_PROXY_AUDIT_HPP_
#define PRIVCORR_PROXY_AUDIT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "privcorr/equilibrium.hpp"
#include "privcorr/game_core.hpp"
#include "privcorr/mech_laplace.hpp"

namespace privcorr {

struct TypePrior {
  std::string description;
  std::function<std::vector<PlayerType>(size_t n, Rng& rng)> sampler;

  std::vector<PlayerType> Sample(size_t n, Rng& rng) const { return sampler(n, rng); }

  // Each player independently has type 1 with probability p, else type 0.
  static TypePrior Bernoulli(double p);
  // Exactly `count` players of type 1, in shuffled positions.
  static TypePrior FixedCount(size_t count);
  // ceil(n / 2) players of type 1, shuffled.
  static TypePrior NearCritical();
  static TypePrior Constant(PlayerType type);
  // "bernoulli:P", "count:C", "critical", "constant:ID".
  static TypePrior Parse(const std::string& text);
};

enum class AuditMechanism { kLaplace, kMedian, kExactOracle, kNaiveRule };

const char* ToString(AuditMechanism mechanism);

struct AuditConfig {
  AuditMechanism mechanism = AuditMechanism::kLaplace;
  MechanismParams params;
  uint64_t trials = 1;
  uint64_t seed = 0;
};

struct AuditTrial {
  size_t focal = 0;
  PlayerType focal_type;
  double utility = 0.0;
  double swap_gain = 0.0;
  double fixed_gain = 0.0;
  double optout_gain = 0.0;
  double alpha_ce = 0.0;
};

struct DeviationSummary {
  double mean = 0.0;
  double stderr_value = 0.0;
};

struct AuditReport {
  std::string mechanism;
  std::string prior;
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double eta_claimed = 0.0;
  double max_deviation_gain = 0.0;
  double stderr_value = 0.0;
  DeviationSummary swap;
  DeviationSummary optout;
  uint64_t trials = 0;
  uint64_t discarded = 0;
  std::vector<AuditTrial> per_trial;

  bool passes() const {
    return max_deviation_gain <= eta_claimed + 3.0 * stderr_value;
  }
  double discard_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(discarded) / trials;
  }
};

// Recommended play of a mechanism as a correlated distribution; nullopt on
// a mechanism failure.
struct MechanismOutput {
  std::optional<CorrelatedDistribution> dist;
  double alpha_ce = 0.0;
};

// Runs `mechanism` on `game` (types as reported) with `opted_out` players
// removed from the input.
MechanismOutput RunAuditedMechanism(const GameInstance& game,
                                    const AuditConfig& config,
                                    const std::vector<bool>& opted_out,
                                    uint64_t seed);

// `base` fixes the family and n; each trial replaces its types.
AuditReport Audit(const GameInstance& base, const TypePrior& prior,
                  const AuditConfig& config);

// Focal player's expected utility from action a against the other players'
// per-round strategies, averaged over rounds.
std::vector<double> FixedActionUtilities(const GameInstance& game,
                                         const CorrelatedDistribution& dist,
                                         size_t focal);

// Everyone to the beach when fewer than half of the opted-in players are
// Beach types, otherwise everyone to the mountain.
CorrelatedDistribution NaiveRule(const GameInstance& beach_game,
                                 const std::vector<bool>& opted_out);

// First pure Nash equilibrium found by exhaustive search, as a single-round
// distribution; types and participation are ignored.
CorrelatedDistribution ExactPureOracle(const GameInstance& game);

struct CounterexampleResult {
  size_t focal = 0;
  double truthful_utility = 0.0;
  double optout_utility = 0.0;
  double gain = 0.0;
};

// Exact opt-out gain of a Mountain player (Beach if there are none) under
// the naive rule with `mountain_count` Mountain types among n.
CounterexampleResult BeachCounterexample(size_t n, size_t mountain_count);

nlohmann::ordered_json ToJson(const AuditReport& report);

}  // namespace privcorr

#endif  // PRIVCORR_PROXY_AUDIT_HPP_
