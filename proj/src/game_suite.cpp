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

#include "privcorr/game_suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace privcorr {
namespace {

constexpr double kTie = 1e-12;
constexpr double kMajority = 2.0 / 3.0;

// ---------------------------------------------------------------- beach

class BeachMountainModel final : public UtilityModel, public AggregateStructure {
 public:
  explicit BeachMountainModel(size_t n) : n_(n) {}

  double Utility(size_t player, PlayerType type,
                 std::span<const ActionId> profile) const override {
    double beach = 0.0;
    for (size_t i = 0; i < profile.size(); ++i) {
      if (i != player && profile[i].value == kBeach) beach += 1.0;
    }
    const double counts[2] = {beach, static_cast<double>(n_ - 1) - beach};
    return UtilityFromCounts(player, type, profile[player], counts);
  }

  const AggregateStructure* Aggregate() const override { return this; }

  double UtilityFromCounts(size_t, PlayerType type, ActionId own,
                           std::span<const double> counts) const override {
    const double p = counts[kBeach] / static_cast<double>(n_ - 1);
    const bool beach_type = type.id == kBeach;
    if (own.value == kBeach) return beach_type ? p : 0.5 * p;
    return beach_type ? 0.5 * (1.0 - p) : 1.0 - p;
  }

  bool AffineInCounts() const override { return true; }

 private:
  size_t n_;
};

// ---------------------------------------------------------------- table

size_t ProfileCount(size_t n, size_t k) {
  const double count = std::pow(static_cast<double>(k), static_cast<double>(n));
  Require(count <= kExactProfileBudget, "table game is too large");
  return static_cast<size_t>(count);
}

size_t ProfileCode(std::span<const ActionId> profile, size_t k) {
  size_t code = 0;
  for (size_t i = profile.size(); i-- > 0;) code = code * k + profile[i].value;
  return code;
}

class TableModel final : public UtilityModel {
 public:
  TableModel(size_t k, std::vector<std::vector<double>> payoffs)
      : k_(k), payoffs_(std::move(payoffs)) {}

  double Utility(size_t player, PlayerType,
                 std::span<const ActionId> profile) const override {
    return payoffs_[player][ProfileCode(profile, k_)];
  }

 private:
  size_t k_;
  std::vector<std::vector<double>> payoffs_;
};

// ---------------------------------------------------------------- random

class RandomModel final : public UtilityModel {
 public:
  explicit RandomModel(uint64_t seed) : seed_(seed) {}

  double Utility(size_t player, PlayerType type,
                 std::span<const ActionId> profile) const override {
    uint64_t h = SubstreamSeed(seed_, type.id, player);
    for (const ActionId& a : profile) {
      h = Mix64(h ^ (a.value + 0x51ed270b27e4f9d5ULL));
    }
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t seed_;
};

// ---------------------------------------------------------------- lower bound

struct QueryType {
  bool data = true;
  uint32_t bit = 0;
  size_t query = 0;
  int level = 0;
};

class LowerBoundModel final : public UtilityModel, public AggregateStructure {
 public:
  LowerBoundModel(SubsetSumInstance instance, LowerBoundLayout layout)
      : instance_(std::move(instance)), layout_(layout) {
    kinds_.push_back({true, 0, 0, 0});
    kinds_.push_back({true, 1, 0, 0});
    for (size_t j = 0; j < layout_.m; ++j) {
      for (size_t h = 1; h <= layout_.levels; ++h) {
        kinds_.push_back({false, 0, j, static_cast<int>(h)});
      }
    }
  }

  static std::vector<std::string> Universe(const LowerBoundLayout& layout) {
    std::vector<std::string> names = {"data:0", "data:1"};
    for (size_t j = 0; j < layout.m; ++j) {
      for (size_t h = 1; h <= layout.levels; ++h) {
        names.push_back("query:" + std::to_string(j + 1) + ":" +
                        std::to_string(h));
      }
    }
    return names;
  }

  double Utility(size_t player, PlayerType type,
                 std::span<const ActionId> profile) const override {
    const QueryType& kind = kinds_.at(type.id);
    if (kind.data) return profile[player].value == kind.bit ? 1.0 : 0.0;
    double ones = 0.0;
    for (size_t i : instance_.queries[kind.query]) ones += profile[i].value;
    const double x = ones / static_cast<double>(layout_.n);
    return profile[player].value == 0 ? SawtoothF(kind.level, x)
                                      : SawtoothG(kind.level, x);
  }

  const AggregateStructure* Aggregate() const override { return this; }

  std::optional<std::vector<size_t>> Neighbourhood(
      size_t player, PlayerType type) const override {
    const QueryType& kind = kinds_.at(type.id);
    if (kind.data) return std::vector<size_t>{};
    const std::vector<size_t>& members = instance_.queries[kind.query];
    if (std::find(members.begin(), members.end(), player) != members.end()) {
      throw ContractError("query type assigned to a member of its own query");
    }
    return members;
  }

  double UtilityFromCounts(size_t, PlayerType type, ActionId own,
                           std::span<const double> counts) const override {
    const QueryType& kind = kinds_.at(type.id);
    if (kind.data) return own.value == kind.bit ? 1.0 : 0.0;
    const double x = counts[1] / static_cast<double>(layout_.n);
    return own.value == 0 ? SawtoothF(kind.level, x) : SawtoothG(kind.level, x);
  }

  const SubsetSumInstance& instance() const { return instance_; }
  const LowerBoundLayout& layout() const { return layout_; }

 private:
  SubsetSumInstance instance_;
  LowerBoundLayout layout_;
  std::vector<QueryType> kinds_;
};

double Sawtooth(int h, double x, double first_centre) {
  Require(h >= 1, "sawtooth level must be >= 1");
  const double step = std::ldexp(1.0, -(h - 1));
  double best = 1.0;
  const size_t teeth = size_t{1} << (h - 1);
  for (size_t r = 0; r < teeth; ++r) {
    best = std::min(best, std::abs(x - (first_centre + r * step)));
  }
  return 1.0 - best;
}

std::vector<Interval> Region(int h, double beta, bool f) {
  Require(h >= 1, "region level must be >= 1");
  Require(beta >= 0.0, "region margin must be non-negative");
  const double w = std::ldexp(1.0, -h);
  const size_t halves = size_t{1} << h;
  std::vector<Interval> out;
  for (size_t c = f ? 0 : 1; c < halves; c += 2) {
    const double lo = c * w + (c == 0 ? 0.0 : beta);
    const double hi = (c + 1) * w - (c + 1 == halves ? 0.0 : beta);
    if (lo <= hi) out.push_back({lo, hi});
  }
  return out;
}

// Components of cur intersected with the union of `parts`.
std::vector<Interval> Intersect(const Interval& cur,
                                const std::vector<Interval>& parts) {
  std::vector<Interval> out;
  for (const Interval& p : parts) {
    const double lo = std::max(cur.lo, p.lo);
    const double hi = std::min(cur.hi, p.hi);
    if (lo <= hi) out.push_back({lo, hi});
  }
  return out;
}

const LowerBoundModel& LowerBoundOf(const GameInstance& game) {
  const auto* model = dynamic_cast<const LowerBoundModel*>(&game.model());
  Require(model != nullptr, "game is not a lower-bound game");
  return *model;
}

SubsetSumInstance InstanceFromParams(const nlohmann::ordered_json& params) {
  Require(params.contains("database") && params.contains("queries"),
          "lowerbound params need database and queries");
  const int base = params.value("index_base", 1);
  SubsetSumInstance inst;
  for (const auto& bit : params.at("database")) {
    inst.database.push_back(static_cast<uint8_t>(bit.get<int>()));
  }
  for (const auto& q : params.at("queries")) {
    std::vector<size_t> members;
    for (const auto& idx : q) {
      const long v = idx.get<long>() - base;
      Require(v >= 0, "query index below the index base");
      members.push_back(static_cast<size_t>(v));
    }
    inst.queries.push_back(std::move(members));
  }
  return inst;
}

nlohmann::ordered_json ParamsFromInstance(const SubsetSumInstance& inst) {
  nlohmann::ordered_json params;
  params["database"] = nlohmann::ordered_json::array();
  for (uint8_t b : inst.database) params["database"].push_back(int{b});
  params["queries"] = nlohmann::ordered_json::array();
  for (const auto& q : inst.queries) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (size_t i : q) row.push_back(i + 1);
    params["queries"].push_back(std::move(row));
  }
  params["index_base"] = 1;
  return params;
}

void ValidateInstance(const SubsetSumInstance& inst) {
  const size_t n = inst.database.size();
  Require(n >= 2, "subset-sum instance needs at least two data bits");
  for (uint8_t b : inst.database) Require(b <= 1, "database entries must be bits");
  for (size_t j = 0; j < inst.queries.size(); ++j) {
    const auto& q = inst.queries[j];
    if (q.empty()) {
      throw ContractError("query " + std::to_string(j + 1) + " is empty");
    }
    std::vector<size_t> sorted = q;
    std::sort(sorted.begin(), sorted.end());
    Require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "query lists an index twice");
    Require(sorted.back() < n, "query index outside the database");
  }
}

void RequireGammaAtLeast(const GameSpec& spec, double gamma) {
  if (spec.gamma + 1e-12 < gamma) {
    std::ostringstream msg;
    msg << spec.family << " game declares gamma " << spec.gamma
        << " below its sensitivity " << gamma;
    throw ContractError(msg.str());
  }
}

}  // namespace

GameInstance MakeGame(const GameSpec& spec) {
  if (spec.family == kBeachFamily) {
    Require(spec.k == 2, "beach_mountain games have k = 2");
    Require(spec.n >= 2, "beach_mountain games need n >= 2");
    RequireGammaAtLeast(spec, 1.0 / static_cast<double>(spec.n - 1));
    return GameInstance(spec, {"Beach", "Mountain"},
                        std::make_shared<BeachMountainModel>(spec.n));
  }
  if (spec.family == kTableFamily) {
    Require(spec.params.contains("payoffs"), "table params need payoffs");
    auto payoffs =
        spec.params.at("payoffs").get<std::vector<std::vector<double>>>();
    Require(payoffs.size() == spec.n, "table needs one payoff row per player");
    const size_t count = ProfileCount(spec.n, spec.k);
    for (const auto& row : payoffs) {
      Require(row.size() == count, "payoff row must cover every profile");
      for (double u : row) {
        Require(u >= 0.0 && u <= 1.0, "table payoffs must lie in [0, 1]");
      }
    }
    RequireGammaAtLeast(spec, TableSensitivity(spec.n, spec.k, payoffs));
    return GameInstance(spec, {"default"},
                        std::make_shared<TableModel>(spec.k, std::move(payoffs)));
  }
  if (spec.family == kRandomFamily) {
    const size_t universe = spec.params.value("universe", size_t{1});
    const uint64_t seed = spec.params.value("seed", uint64_t{0});
    Require(universe >= 1, "random games need a non-empty universe");
    RequireGammaAtLeast(spec, 1.0);
    std::vector<std::string> names;
    for (size_t u = 0; u < universe; ++u) names.push_back("t" + std::to_string(u));
    return GameInstance(spec, std::move(names),
                        std::make_shared<RandomModel>(seed));
  }
  if (spec.family == kLowerBoundFamily) {
    SubsetSumInstance inst = InstanceFromParams(spec.params);
    ValidateInstance(inst);
    Require(!inst.queries.empty(), "lowerbound game needs at least one query");
    LowerBoundLayout layout{inst.database.size(), inst.queries.size(),
                            LowerBoundLevels(inst.database.size())};
    Require(spec.k == 2, "lowerbound games have k = 2");
    Require(spec.n == layout.players(),
            "lowerbound n must equal data plus query players");
    RequireGammaAtLeast(spec, 1.0 / static_cast<double>(layout.n));
    auto universe = LowerBoundModel::Universe(layout);
    return GameInstance(spec, std::move(universe),
                        std::make_shared<LowerBoundModel>(std::move(inst), layout));
  }
  throw ContractError("unknown game family '" + spec.family + "'");
}

GameInstance BeachMountainGame(const std::vector<std::string>& types) {
  GameSpec spec;
  spec.family = kBeachFamily;
  spec.n = types.size();
  spec.k = 2;
  Require(spec.n >= 2, "beach_mountain games need n >= 2");
  spec.gamma = 1.0 / static_cast<double>(spec.n - 1);
  spec.types = types;
  return MakeGame(spec);
}

GameInstance BeachMountainGame(size_t n, size_t mountain_count) {
  Require(mountain_count <= n, "more mountain types than players");
  std::vector<std::string> types(n, "Beach");
  for (size_t i = 0; i < mountain_count; ++i) types[n - 1 - i] = "Mountain";
  return BeachMountainGame(types);
}

double TableSensitivity(size_t n, size_t k,
                        const std::vector<std::vector<double>>& payoffs) {
  const size_t count = ProfileCount(n, k);
  double worst = 0.0;
  size_t stride = 1;
  for (size_t dev = 0; dev < n; ++dev, stride *= k) {
    for (size_t code = 0; code < count; ++code) {
      const size_t own = (code / stride) % k;
      if (own != 0) continue;
      for (size_t b = 1; b < k; ++b) {
        const size_t other = code + b * stride;
        for (size_t obs = 0; obs < n; ++obs) {
          if (obs == dev) continue;
          worst = std::max(worst,
                           std::abs(payoffs[obs][code] - payoffs[obs][other]));
        }
      }
    }
  }
  return worst;
}

GameInstance TableGame(size_t n, size_t k,
                       const std::vector<std::vector<double>>& payoffs,
                       std::optional<uint32_t> null_action) {
  GameSpec spec;
  spec.family = kTableFamily;
  spec.n = n;
  spec.k = k;
  spec.types.assign(n, "default");
  spec.params["payoffs"] = payoffs;
  spec.null_action = null_action;
  spec.gamma = TableSensitivity(n, k, payoffs);
  return MakeGame(spec);
}

GameInstance RandomGame(size_t n, size_t k, size_t universe, uint64_t seed,
                        const std::vector<std::string>& types) {
  GameSpec spec;
  spec.family = kRandomFamily;
  spec.n = n;
  spec.k = k;
  spec.gamma = 1.0;
  spec.types = types;
  spec.params["seed"] = seed;
  spec.params["universe"] = universe;
  return MakeGame(spec);
}

double SawtoothF(int h, double x) {
  return Sawtooth(h, x, std::ldexp(1.0, -(h + 1)));
}

double SawtoothG(int h, double x) {
  return Sawtooth(h, x, std::ldexp(3.0, -(h + 1)));
}

std::vector<Interval> FRegion(int h, double beta) { return Region(h, beta, true); }
std::vector<Interval> GRegion(int h, double beta) { return Region(h, beta, false); }

double SubsetSumInstance::Answer(size_t query) const {
  Require(query < queries.size(), "query index out of range");
  double ones = 0.0;
  for (size_t i : queries[query]) ones += database.at(i);
  return ones / static_cast<double>(database.size());
}

size_t LowerBoundLevels(size_t n) {
  Require(n >= 2, "lower-bound game needs n >= 2");
  size_t levels = 0;
  while ((size_t{1} << levels) < n) ++levels;
  return levels;
}

GameInstance BuildLowerBoundGame(const SubsetSumInstance& instance) {
  ValidateInstance(instance);
  Require(!instance.queries.empty(), "lowerbound game needs at least one query");
  const LowerBoundLayout layout{instance.database.size(),
                                instance.queries.size(),
                                LowerBoundLevels(instance.database.size())};
  GameSpec spec;
  spec.family = kLowerBoundFamily;
  spec.n = layout.players();
  spec.k = 2;
  spec.gamma = 1.0 / static_cast<double>(layout.n);
  for (uint8_t b : instance.database) spec.types.push_back("data:" + std::to_string(b));
  for (size_t j = 0; j < layout.m; ++j) {
    for (size_t h = 1; h <= layout.levels; ++h) {
      spec.types.push_back("query:" + std::to_string(j + 1) + ":" +
                           std::to_string(h));
    }
  }
  spec.params = ParamsFromInstance(instance);
  return MakeGame(spec);
}

SubsetSumInstance InstanceOf(const GameInstance& game) {
  return LowerBoundOf(game).instance();
}

LowerBoundLayout LayoutOf(const GameInstance& game) {
  return LowerBoundOf(game).layout();
}

CorrelatedDistribution PlantedEquilibrium(const GameInstance& game) {
  const LowerBoundModel& model = LowerBoundOf(game);
  const SubsetSumInstance& inst = model.instance();
  const LowerBoundLayout& layout = model.layout();
  std::vector<MixedStrategy> round;
  for (uint8_t b : inst.database) {
    round.push_back(MixedStrategy::PointMass(2, ActionId{b}));
  }
  for (size_t j = 0; j < layout.m; ++j) {
    const double x = inst.Answer(j);
    for (size_t h = 1; h <= layout.levels; ++h) {
      const int level = static_cast<int>(h);
      const double diff = SawtoothF(level, x) - SawtoothG(level, x);
      if (diff > kTie) {
        round.push_back(MixedStrategy::PointMass(2, ActionId{0}));
      } else if (diff < -kTie) {
        round.push_back(MixedStrategy::PointMass(2, ActionId{1}));
      } else {
        round.push_back(MixedStrategy::Uniform(2));
      }
    }
  }
  CorrelatedDistribution dist;
  dist.rounds.push_back(std::move(round));
  return dist;
}

DecodedAnswer DecodeQuery(size_t query, std::span<const double> prob_zero,
                          double alpha) {
  Require(alpha > 0.0, "decoder needs alpha > 0");
  const double margin = 9.0 * alpha;
  Interval cur{0.0, 1.0};
  DecodedAnswer out;
  for (size_t h = 1; h <= prob_zero.size(); ++h) {
    const int level = static_cast<int>(h);
    if (std::ldexp(1.0, -level) < 18.0 * alpha) break;
    const double p0 = prob_zero[h - 1];
    std::vector<Interval> region;
    bool last = false;
    if (p0 >= kMajority - kTie) {
      region = FRegion(level, margin);
    } else if (1.0 - p0 >= kMajority - kTie) {
      region = GRegion(level, margin);
    } else {
      const size_t marks = size_t{1} << h;
      for (size_t m = 1; m < marks; ++m) {
        const double b = std::ldexp(static_cast<double>(m), -level);
        region.push_back({b - margin, b + margin});
      }
      last = true;
    }
    const std::vector<Interval> parts = Intersect(cur, region);
    if (parts.empty()) {
      std::ostringstream msg;
      msg << "query " << query + 1 << ": empty interval at level " << h;
      throw DecodeError(query, h, msg.str());
    }
    cur = *std::max_element(parts.begin(), parts.end(),
                            [](const Interval& a, const Interval& b) {
                              return a.width() < b.width();
                            });
    out.levels_used = h;
    if (last) break;
  }
  out.answer = 0.5 * (cur.lo + cur.hi);
  out.halfwidth = 0.5 * cur.width();
  return out;
}

std::vector<DecodedAnswer> DecodeAnswers(const GameInstance& game,
                                         const CorrelatedDistribution& dist,
                                         double alpha) {
  const LowerBoundLayout layout = LayoutOf(game);
  Require(dist.n() == layout.players(), "distribution does not match the game");
  std::vector<DecodedAnswer> out;
  std::vector<double> p0(layout.levels);
  for (size_t j = 0; j < layout.m; ++j) {
    for (size_t h = 1; h <= layout.levels; ++h) {
      p0[h - 1] = dist.Marginal(layout.QueryPlayer(j, h))[0];
    }
    try {
      out.push_back(DecodeQuery(j, p0, alpha));
    } catch (const DecodeError& e) {
      DecodedAnswer failed;
      failed.levels_used = e.level();
      failed.error = e.what();
      failed.answer = std::nan("");
      failed.halfwidth = std::nan("");
      out.push_back(std::move(failed));
    }
  }
  return out;
}

}  // namespace privcorr
