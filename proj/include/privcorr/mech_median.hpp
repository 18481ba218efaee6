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

// Desk-scale NRMedian: a median mechanism over the net of all type tuples
// answers every player's loss query for every hypothetical type, producing a
// shared noisy loss table; each player then learns on the slice for its own
// type.

#ifndef PRIVCORR_MECH_MEDIAN_HPP_
#define PRIVCORR_MECH_MEDIAN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "privcorr/mech_laplace.hpp"

namespace privcorr {

inline constexpr double kMaxNetSize = 1e6;

// All U^n type tuples in lexicographic order (player 0 most significant).
class CandidateNet {
 public:
  CandidateNet(size_t n, size_t universe);

  size_t size() const { return live_.size(); }
  size_t n() const { return n_; }
  size_t universe() const { return universe_; }

  std::vector<PlayerType> Tuple(size_t index) const;
  size_t IndexOf(std::span<const PlayerType> types) const;

  bool live(size_t index) const { return live_[index]; }
  size_t live_count() const;
  void Prune(size_t index) { live_[index] = false; }

 private:
  size_t n_;
  size_t universe_;
  std::vector<bool> live_;
};

// rounds[t - 1][(i * k + j) * U + v] = noisy rescaled loss.
struct SharedLossTable {
  size_t n = 0;
  size_t k = 0;
  size_t universe = 0;
  std::vector<std::vector<double>> rounds;

  double at(size_t round, size_t i, size_t j, size_t v) const {
    return rounds[round - 1][(i * k + j) * universe + v];
  }
  LossVector Slice(size_t round, size_t i, size_t v) const;

  friend bool operator==(const SharedLossTable&, const SharedLossTable&) = default;
};

// book[i][v]: strategy player i would play in round t had it type v,
// replayed from table rounds 1 .. t-1. Throws ContractError on a history
// gap.
std::vector<std::vector<MixedStrategy>> ReconstructStrategies(
    const SharedLossTable& table, uint64_t t, LearnerKind learner,
    uint64_t horizon);

// Rescaled losses of player i under hypothetical type v when every other
// player i' plays book[i'][types[i']]. types[i] is ignored.
LossVector QueryValues(const GameInstance& game,
                       const std::vector<std::vector<MixedStrategy>>& book,
                       size_t player, PlayerType v,
                       std::span<const PlayerType> types, LossMode mode);

struct MedianAnswer {
  double value = 0.0;
  bool hard = false;
  bool failed = false;
};

// Sparse-vector style median mechanism over a candidate net.
class MedianMechanism {
 public:
  // `threshold` is the pruning / easy-query distance, `scale` the base
  // Laplace scale b (threshold noise 2b, comparison noise 4b, answers b).
  MedianMechanism(CandidateNet* net, double threshold, double scale,
                  uint64_t hard_cap, uint64_t seed);

  // candidate_values[c] is the query's value on candidate c (read for live
  // candidates only).
  MedianAnswer Ask(std::span<const double> candidate_values, double true_value);

  uint64_t hard_queries() const { return hard_; }
  uint64_t hard_cap() const { return cap_; }

 private:
  void RefreshThreshold();

  CandidateNet* net_;
  double threshold_;
  double scale_;
  uint64_t cap_;
  uint64_t hard_ = 0;
  Rng rng_;
  double noisy_threshold_ = 0.0;
};

struct MedianStats {
  uint64_t queries = 0;
  uint64_t easy = 0;
  uint64_t hard = 0;
  uint64_t hard_cap = 0;
  double alpha_mm = 0.0;
  double max_error = 0.0;
  uint64_t within_alpha = 0;
  bool true_tuple_live = true;
  std::optional<uint64_t> failure_round;
};

struct MedianRun {
  MechanismRun run;
  SharedLossTable table;
  MedianStats stats;
};

using MedianOutcome = std::variant<MedianRun, Infeasibility>;

MedianOutcome RunNrMedian(const GameInstance& game, const MechanismParams& params);

}  // namespace privcorr

#endif  // PRIVCORR_MECH_MEDIAN_HPP_
