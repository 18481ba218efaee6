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

// The correlated distribution Pi_S induced by per-round mixed strategies,
// and exact / sampled verification of approximate (coarse) correlated
// equilibria.

#ifndef PRIVCORR_EQUILIBRIUM_HPP_
#define PRIVCORR_EQUILIBRIUM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privcorr/game_core.hpp"
#include "privcorr/noregret.hpp"

namespace privcorr {

// Mixture of products: pick a round uniformly, then every player draws
// independently from that round's strategy.
struct CorrelatedDistribution {
  // rounds[t][i].
  std::vector<std::vector<MixedStrategy>> rounds;

  size_t T() const { return rounds.size(); }
  size_t n() const { return rounds.empty() ? 0 : rounds.front().size(); }
  size_t k() const;

  // Uses states 0 .. T-1 of each sequence (the strategies actually played).
  static CorrelatedDistribution FromSequences(
      const std::vector<PlaySequence>& sequences);

  // Player i's strategies, extended by `final_state` into a PlaySequence.
  PlaySequence Sequence(size_t player, const MixedStrategy& final_state) const;

  // Average of player i's strategies over rounds.
  MixedStrategy Marginal(size_t player) const;

  friend bool operator==(const CorrelatedDistribution&,
                         const CorrelatedDistribution&) = default;
};

enum class VerifyBackend { kExact, kMonteCarlo };

struct VerifyMode {
  VerifyBackend backend = VerifyBackend::kExact;
  uint64_t samples = 0;
  uint64_t seed = 0;

  static VerifyMode Exact() { return {}; }
  static VerifyMode MonteCarlo(uint64_t samples, uint64_t seed) {
    return {VerifyBackend::kMonteCarlo, samples, seed};
  }
};

struct PlayerRegret {
  double fixed = 0.0;
  double swap = 0.0;
  // Expected utility under Pi_S.
  double utility = 0.0;
  std::vector<uint32_t> best_swap;
  // Standard errors of the two gains (Monte Carlo only).
  double fixed_stderr = 0.0;
  double swap_stderr = 0.0;
};

struct EquilibriumCertificate {
  std::vector<PlayerRegret> per_player;
  double alpha_cce = 0.0;
  double alpha_ce = 0.0;
  std::string mode;
  std::optional<double> stderr_value;
};

// Exact mode evaluates per-round expected utilities with the anonymous
// backend when the game has aggregate structure and by enumeration
// otherwise. Monte Carlo mode draws `samples` profiles, chooses deviations
// on the first half, and estimates their gains on the second.
EquilibriumCertificate Verify(const CorrelatedDistribution& dist,
                              const GameInstance& game, VerifyMode mode);

ActionProfile SampleProfile(const CorrelatedDistribution& dist, Rng& rng);

}  // namespace privcorr

#endif  // PRIVCORR_EQUILIBRIUM_HPP_
