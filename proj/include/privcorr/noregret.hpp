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

// Online learners (Hedge and the Blum-Mansour swap construction) and the
// lambda / rho regret functionals over strategy sequences.

#ifndef PRIVCORR_NOREGRET_HPP_
#define PRIVCORR_NOREGRET_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "privcorr/game_core.hpp"

namespace privcorr {

// T rows of k losses.
using LossMatrix = std::vector<LossVector>;

enum class NoiseKind { kBounded, kLaplace };

struct NoiseMatrix {
  NoiseKind kind = NoiseKind::kBounded;
  // b for bounded noise, sigma for Laplace noise.
  double scale = 0.0;
  uint64_t seed = 0;
  std::vector<LossVector> rows;
};

// pi_0 .. pi_T. The strategy played in round t (1-based) is states[t - 1];
// states[T] is the learner's state after the last update.
struct PlaySequence {
  std::vector<MixedStrategy> states;

  size_t rounds() const { return states.empty() ? 0 : states.size() - 1; }
  size_t k() const { return states.empty() ? 0 : states.front().size(); }
};

class DeviationMap {
 public:
  explicit DeviationMap(std::vector<uint32_t> map);

  static DeviationMap Identity(size_t k);
  static DeviationMap Constant(size_t k, uint32_t target);

  size_t size() const { return map_.size(); }
  uint32_t operator()(size_t j) const { return map_[j]; }
  std::span<const uint32_t> table() const { return map_; }

  // (f o pi)^j = sum over j' with f(j') = j of pi^{j'}.
  MixedStrategy Apply(const MixedStrategy& pi) const;

  friend bool operator==(const DeviationMap&, const DeviationMap&) = default;

 private:
  std::vector<uint32_t> map_;
};

enum class DeviationFamily { kFixed, kSwap };
enum class LearnerKind { kFixed, kSwap };

const char* ToString(DeviationFamily family);
const char* ToString(LearnerKind kind);

// sqrt(2 ln k / T).
double HedgeRate(size_t k, uint64_t T);

MixedStrategy HedgeStep(const MixedStrategy& state, std::span<const double> loss,
                        double eta);

struct SwapLearnerState {
  double eta = 0.0;
  // Expert j proposes a distribution over actions; column j of the
  // column-stochastic matrix whose stationary distribution is played.
  std::vector<MixedStrategy> experts;
  MixedStrategy played;

  static SwapLearnerState Start(size_t k, double eta);
};

struct StationaryResult {
  MixedStrategy distribution;
  double residual = 0.0;
  bool damped = false;
};

// Stationary distribution q = P q of the column-stochastic matrix with
// column j equal to columns[j]. Throws NumericError if the residual
// ||Pq - q||_1 exceeds 1e-10.
StationaryResult StationaryDistribution(std::span<const MixedStrategy> columns);

std::pair<SwapLearnerState, MixedStrategy> SwapStep(
    const SwapLearnerState& state, std::span<const double> loss);

// Either learner behind one interface, sized for a T-round horizon.
class Learner {
 public:
  Learner(LearnerKind kind, size_t k, uint64_t horizon);

  LearnerKind kind() const { return kind_; }
  const MixedStrategy& current() const { return current_; }
  void Observe(std::span<const double> loss);

 private:
  LearnerKind kind_;
  double eta_;
  MixedStrategy current_;
  SwapLearnerState swap_;
};

// Runs a learner on a fixed loss matrix (entries in [0, 1]).
PlaySequence RunLearner(LearnerKind kind, const LossMatrix& losses);

// Adaptive adversary: the loss of round t may depend on the strategy the
// learner is about to play.
using AdaptiveLoss =
    std::function<LossVector(uint64_t round, const MixedStrategy& current)>;
std::pair<PlaySequence, LossMatrix> RunLearnerAdaptive(LearnerKind kind,
                                                       size_t k, uint64_t T,
                                                       const AdaptiveLoss& adversary);

double Lambda(const PlaySequence& seq, const LossMatrix& losses);
// lambda(f o states, L).
double LambdaDeviated(const PlaySequence& seq, const LossMatrix& losses,
                      const DeviationMap& f);
// lambda(states, L) - lambda(f o states, L).
double DeviationGain(const PlaySequence& seq, const LossMatrix& losses,
                     const DeviationMap& f);

struct RegretResult {
  double value = 0.0;
  DeviationMap best = DeviationMap::Identity(0);
};

RegretResult Regret(const PlaySequence& seq, const LossMatrix& losses,
                    DeviationFamily family);

// (L + 1) / 3 and its inverse. Rescale requires entries in [0, 1].
LossMatrix RescaleLosses(const LossMatrix& losses);
LossMatrix UnscaleLosses(const LossMatrix& losses);
LossVector RescaleLoss(std::span<const double> loss);

struct NoiseCheck {
  // rho(states, L) - rho(states, L + Z).
  double gap = 0.0;
  double bound = 0.0;
};

// For Laplace noise, `beta` sets the tail threshold; it is ignored for
// bounded noise.
NoiseCheck NoiseToleranceCheck(const PlaySequence& seq, const LossMatrix& losses,
                               const NoiseMatrix& noise, DeviationFamily family,
                               double beta = 0.05);

// Running lambda / rho for one player as rounds arrive.
class RegretTracker {
 public:
  explicit RegretTracker(size_t k);

  void Add(const MixedStrategy& played, std::span<const double> loss);

  uint64_t rounds() const { return rounds_; }
  double lambda() const;
  double rho_fixed() const;
  double rho_swap() const;

 private:
  size_t k_;
  uint64_t rounds_ = 0;
  double lambda_sum_ = 0.0;
  // weighted_[j * k + a] = sum_t pi_t^j l_t^a.
  std::vector<double> weighted_;
};

}  // namespace privcorr

#endif  // PRIVCORR_NOREGRET_HPP_
