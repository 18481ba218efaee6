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

// Concrete game families: the beach/mountain anonymous game, explicit
// payoff tables, seeded random games, and the subset-sum lower-bound game
// with its interval-halving decoder.

#ifndef PRIVCORR_GAME_SUITE_HPP_
#define PRIVCORR_GAME_SUITE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privcorr/equilibrium.hpp"
#include "privcorr/game_core.hpp"

namespace privcorr {

inline constexpr char kBeachFamily[] = "beach_mountain";
inline constexpr char kTableFamily[] = "table";
inline constexpr char kRandomFamily[] = "random";
inline constexpr char kLowerBoundFamily[] = "lowerbound";

// Builds a game from its file description, dispatching on `family`.
GameInstance MakeGame(const GameSpec& spec);

// Beach/mountain: k = 2 (0 = Beach, 1 = Mountain), types "Beach" and
// "Mountain". With p the fraction of the other players at the beach, a
// Beach type earns 10p at the beach and 5(1 - p) at the mountain; a
// Mountain type earns 5p at the beach and 10(1 - p) at the mountain. Payoffs
// are divided by 10 and gamma = 1/(n - 1).
inline constexpr uint32_t kBeach = 0;
inline constexpr uint32_t kMountain = 1;
GameInstance BeachMountainGame(const std::vector<std::string>& types);
GameInstance BeachMountainGame(size_t n, size_t mountain_count);

// payoffs[i][code] with code = sum_i a_i k^i. Single type "default";
// gamma is computed exactly.
GameInstance TableGame(size_t n, size_t k,
                       const std::vector<std::vector<double>>& payoffs,
                       std::optional<uint32_t> null_action = std::nullopt);
// Exact sensitivity of a table game.
double TableSensitivity(size_t n, size_t k,
                        const std::vector<std::vector<double>>& payoffs);

// Utilities hashed from (seed, type, player, profile); universe "t0".."t{U-1}";
// declared gamma 1.
GameInstance RandomGame(size_t n, size_t k, size_t universe, uint64_t seed,
                        const std::vector<std::string>& types);

// The two 1-Lipschitz sawtooth families of the lower-bound game.
double SawtoothF(int h, double x);
double SawtoothG(int h, double x);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool Contains(double x) const { return lo <= x && x <= hi; }
};

// Closed regions where f_h (resp. g_h) leads by at least 2 beta.
std::vector<Interval> FRegion(int h, double beta);
std::vector<Interval> GRegion(int h, double beta);

struct SubsetSumInstance {
  std::vector<uint8_t> database;
  // 0-based member indices.
  std::vector<std::vector<size_t>> queries;

  double Answer(size_t query) const;
};

struct LowerBoundLayout {
  size_t n = 0;
  size_t m = 0;
  // ceil(log2 n).
  size_t levels = 0;

  size_t players() const { return n + m * levels; }
  // h is 1-based.
  size_t QueryPlayer(size_t j, size_t h) const { return n + j * levels + h - 1; }
};

size_t LowerBoundLevels(size_t n);

GameInstance BuildLowerBoundGame(const SubsetSumInstance& instance);
SubsetSumInstance InstanceOf(const GameInstance& lowerbound_game);
LowerBoundLayout LayoutOf(const GameInstance& lowerbound_game);

// Single-round distribution: data players play their bits, each query
// player plays the action whose sawtooth is larger at q_j(D), and mixes
// evenly on ties.
CorrelatedDistribution PlantedEquilibrium(const GameInstance& lowerbound_game);

class DecodeError : public std::runtime_error {
 public:
  DecodeError(size_t query, size_t level, const std::string& what)
      : std::runtime_error(what), query_(query), level_(level) {}
  size_t query() const { return query_; }
  size_t level() const { return level_; }

 private:
  size_t query_;
  size_t level_;
};

struct DecodedAnswer {
  double answer = 0.0;
  double halfwidth = 0.0;
  size_t levels_used = 0;
  std::optional<std::string> error;
};

// Interval-halving decoder for one query from player (j, h)'s probability
// of action 0 (indexed by h - 1). Throws DecodeError on an empty
// intersection.
DecodedAnswer DecodeQuery(size_t query, std::span<const double> prob_zero,
                          double alpha);

// Decodes every query from the empirical marginals of `dist`; decode
// errors are reported per query.
std::vector<DecodedAnswer> DecodeAnswers(const GameInstance& lowerbound_game,
                                         const CorrelatedDistribution& dist,
                                         double alpha);

}  // namespace privcorr

#endif  // PRIVCORR_GAME_SUITE_HPP_
