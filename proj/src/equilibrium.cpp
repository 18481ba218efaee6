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

#include "privcorr/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace privcorr {
namespace {

void CheckDistribution(const CorrelatedDistribution& dist,
                       const GameInstance& game) {
  Require(dist.T() >= 1, "distribution has no rounds");
  for (const auto& round : dist.rounds) {
    Require(round.size() == game.n(), "round must hold one strategy per player");
    for (const MixedStrategy& s : round) {
      Require(s.size() == game.k(), "strategy length differs from k");
    }
  }
}

LossMode ExactLossMode(const GameInstance& game) {
  return game.aggregate() != nullptr ? LossMode::Anonymous() : LossMode::Exact();
}

// u[j * k + a] accumulates sum_t pi^j_t E[u(a, .)].
PlayerRegret FromConditional(const std::vector<double>& u, size_t k,
                             double rounds) {
  PlayerRegret r;
  double on_path = 0.0;
  for (size_t j = 0; j < k; ++j) on_path += u[j * k + j];
  double best_fixed = -std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < k; ++a) {
    double v = 0.0;
    for (size_t j = 0; j < k; ++j) v += u[j * k + a];
    best_fixed = std::max(best_fixed, v);
  }
  double best_swap = 0.0;
  r.best_swap.resize(k);
  for (size_t j = 0; j < k; ++j) {
    size_t arg = j;
    for (size_t a = 0; a < k; ++a) {
      if (u[j * k + a] > u[j * k + arg]) arg = a;
    }
    r.best_swap[j] = static_cast<uint32_t>(arg);
    best_swap += u[j * k + arg];
  }
  r.utility = on_path / rounds;
  r.fixed = (best_fixed - on_path) / rounds;
  r.swap = (best_swap - on_path) / rounds;
  return r;
}

EquilibriumCertificate VerifyExact(const CorrelatedDistribution& dist,
                                   const GameInstance& game) {
  const size_t n = game.n();
  const size_t k = game.k();
  const LossMode mode = ExactLossMode(game);
  std::vector<std::vector<double>> u(n, std::vector<double>(k * k, 0.0));
  for (const auto& round : dist.rounds) {
    const std::vector<LossVector> losses = ExpectedLossesAll(game, round, mode);
    for (size_t i = 0; i < n; ++i) {
      const MixedStrategy& pi = round[i];
      for (size_t j = 0; j < k; ++j) {
        if (pi[j] == 0.0) continue;
        for (size_t a = 0; a < k; ++a) {
          u[i][j * k + a] += pi[j] * (1.0 - losses[i][a]);
        }
      }
    }
  }
  EquilibriumCertificate cert;
  cert.mode = "exact";
  for (size_t i = 0; i < n; ++i) {
    cert.per_player.push_back(
        FromConditional(u[i], k, static_cast<double>(dist.T())));
  }
  return cert;
}

struct MeanVar {
  double sum = 0.0;
  double sum_sq = 0.0;
  uint64_t count = 0;

  void Add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double Mean() const { return count == 0 ? 0.0 : sum / count; }
  double Stderr() const {
    if (count < 2) return 0.0;
    const double m = Mean();
    const double var = std::max(0.0, (sum_sq - count * m * m) / (count - 1.0));
    return std::sqrt(var / count);
  }
};

EquilibriumCertificate VerifyMonteCarlo(const CorrelatedDistribution& dist,
                                        const GameInstance& game,
                                        uint64_t samples, uint64_t seed) {
  Require(samples >= 4, "monte carlo verification needs at least 4 samples");
  const size_t n = game.n();
  const size_t k = game.k();
  Rng rng(seed);
  const uint64_t select = samples / 2;
  // Selection half: conditional utility sums per player.
  std::vector<std::vector<double>> u(n, std::vector<double>(k * k, 0.0));
  ActionProfile profile;
  ActionProfile scratch;
  // Estimation-half records: per sample, per player, recommended action and
  // the k counterfactual utilities.
  std::vector<std::vector<uint32_t>> rec(samples - select,
                                         std::vector<uint32_t>(n));
  std::vector<std::vector<double>> util(samples - select,
                                        std::vector<double>(n * k));
  for (uint64_t s = 0; s < samples; ++s) {
    profile = SampleProfile(dist, rng);
    scratch = profile;
    for (size_t i = 0; i < n; ++i) {
      const uint32_t j = profile[i].value;
      for (uint32_t a = 0; a < k; ++a) {
        scratch[i] = ActionId{a};
        const double v = game.Utility(i, scratch);
        if (s < select) {
          u[i][j * k + a] += v;
        } else {
          util[s - select][i * k + a] = v;
        }
      }
      scratch[i] = profile[i];
      if (s >= select) rec[s - select][i] = j;
    }
  }
  EquilibriumCertificate cert;
  cert.mode = "monte_carlo";
  double worst_stderr = 0.0;
  for (size_t i = 0; i < n; ++i) {
    PlayerRegret chosen =
        FromConditional(u[i], k, static_cast<double>(select));
    uint32_t fixed_target = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < k; ++a) {
      double v = 0.0;
      for (size_t j = 0; j < k; ++j) v += u[i][j * k + a];
      if (v > best) {
        best = v;
        fixed_target = static_cast<uint32_t>(a);
      }
    }
    MeanVar fixed_gain;
    MeanVar swap_gain;
    MeanVar on_path;
    for (size_t s = 0; s < rec.size(); ++s) {
      const uint32_t j = rec[s][i];
      const double* row = &util[s][i * k];
      on_path.Add(row[j]);
      fixed_gain.Add(row[fixed_target] - row[j]);
      swap_gain.Add(row[chosen.best_swap[j]] - row[j]);
    }
    PlayerRegret r;
    r.best_swap = chosen.best_swap;
    r.utility = on_path.Mean();
    r.fixed = fixed_gain.Mean();
    r.swap = swap_gain.Mean();
    r.fixed_stderr = fixed_gain.Stderr();
    r.swap_stderr = swap_gain.Stderr();
    worst_stderr = std::max({worst_stderr, r.fixed_stderr, r.swap_stderr});
    cert.per_player.push_back(std::move(r));
  }
  cert.stderr_value = worst_stderr;
  return cert;
}

}  // namespace

size_t CorrelatedDistribution::k() const {
  return rounds.empty() || rounds.front().empty() ? 0
                                                  : rounds.front().front().size();
}

CorrelatedDistribution CorrelatedDistribution::FromSequences(
    const std::vector<PlaySequence>& sequences) {
  Require(!sequences.empty(), "need at least one sequence");
  const size_t T = sequences.front().rounds();
  Require(T >= 1, "sequences need at least one round");
  CorrelatedDistribution dist;
  dist.rounds.assign(T, {});
  for (const PlaySequence& seq : sequences) {
    Require(seq.rounds() == T, "sequences differ in length");
    for (size_t t = 0; t < T; ++t) dist.rounds[t].push_back(seq.states[t]);
  }
  return dist;
}

PlaySequence CorrelatedDistribution::Sequence(
    size_t player, const MixedStrategy& final_state) const {
  Require(player < n(), "player index out of range");
  PlaySequence seq;
  seq.states.reserve(T() + 1);
  for (const auto& round : rounds) seq.states.push_back(round[player]);
  seq.states.push_back(final_state);
  return seq;
}

MixedStrategy CorrelatedDistribution::Marginal(size_t player) const {
  Require(player < n(), "player index out of range");
  std::vector<double> avg(k(), 0.0);
  for (const auto& round : rounds) {
    for (size_t j = 0; j < avg.size(); ++j) avg[j] += round[player][j];
  }
  for (double& v : avg) v /= static_cast<double>(T());
  return MixedStrategy(std::move(avg));
}

EquilibriumCertificate Verify(const CorrelatedDistribution& dist,
                              const GameInstance& game, VerifyMode mode) {
  CheckDistribution(dist, game);
  EquilibriumCertificate cert =
      mode.backend == VerifyBackend::kExact
          ? VerifyExact(dist, game)
          : VerifyMonteCarlo(dist, game, mode.samples, mode.seed);
  cert.alpha_cce = -std::numeric_limits<double>::infinity();
  cert.alpha_ce = -std::numeric_limits<double>::infinity();
  for (const PlayerRegret& r : cert.per_player) {
    cert.alpha_cce = std::max(cert.alpha_cce, r.fixed);
    cert.alpha_ce = std::max(cert.alpha_ce, r.swap);
  }
  return cert;
}

ActionProfile SampleProfile(const CorrelatedDistribution& dist, Rng& rng) {
  Require(dist.T() >= 1, "distribution has no rounds");
  const auto& round = dist.rounds[rng.Index(dist.T())];
  ActionProfile profile(round.size());
  for (size_t i = 0; i < round.size(); ++i) {
    profile[i] = ActionId{static_cast<uint32_t>(rng.Categorical(round[i].probs()))};
  }
  return profile;
}

}  // namespace privcorr
