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

#include "privcorr/proxy_audit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "privcorr/game_suite.hpp"
#include "privcorr/mech_median.hpp"

namespace privcorr {
namespace {

constexpr uint64_t kTrialStream = 1;
constexpr uint64_t kMechanismStream = 2;

std::vector<PlayerType> Shuffled(size_t n, size_t ones, Rng& rng) {
  Require(ones <= n, "more type-1 players than players");
  std::vector<PlayerType> types(n, PlayerType{0});
  for (size_t i = 0; i < ones; ++i) types[i] = PlayerType{1};
  for (size_t i = n; i > 1; --i) {
    std::swap(types[i - 1], types[rng.Index(i)]);
  }
  return types;
}

LossMode ExactMode(const GameInstance& game) {
  return game.aggregate() != nullptr ? LossMode::Anonymous() : LossMode::Exact();
}

DeviationSummary Summarize(const std::vector<AuditTrial>& trials,
                           double AuditTrial::*field) {
  DeviationSummary s;
  if (trials.empty()) return s;
  const double count = static_cast<double>(trials.size());
  double sum = 0.0;
  for (const AuditTrial& t : trials) sum += t.*field;
  s.mean = sum / count;
  if (trials.size() >= 2) {
    double ss = 0.0;
    for (const AuditTrial& t : trials) ss += (t.*field - s.mean) * (t.*field - s.mean);
    s.stderr_value = std::sqrt(ss / (count - 1.0) / count);
  }
  return s;
}

}  // namespace

TypePrior TypePrior::Bernoulli(double p) {
  Require(p >= 0.0 && p <= 1.0, "bernoulli prior needs p in [0, 1]");
  TypePrior prior;
  prior.description = "bernoulli:" + nlohmann::json(p).dump();
  prior.sampler = [p](size_t n, Rng& rng) {
    std::vector<PlayerType> types(n);
    for (PlayerType& t : types) t = PlayerType{rng.Uniform() < p ? 1u : 0u};
    return types;
  };
  return prior;
}

TypePrior TypePrior::FixedCount(size_t count) {
  TypePrior prior;
  prior.description = "count:" + std::to_string(count);
  prior.sampler = [count](size_t n, Rng& rng) { return Shuffled(n, count, rng); };
  return prior;
}

TypePrior TypePrior::NearCritical() {
  TypePrior prior;
  prior.description = "critical";
  prior.sampler = [](size_t n, Rng& rng) { return Shuffled(n, (n + 1) / 2, rng); };
  return prior;
}

TypePrior TypePrior::Constant(PlayerType type) {
  TypePrior prior;
  prior.description = "constant:" + std::to_string(type.id);
  prior.sampler = [type](size_t n, Rng&) {
    return std::vector<PlayerType>(n, type);
  };
  return prior;
}

TypePrior TypePrior::Parse(const std::string& text) {
  const size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "bernoulli") return Bernoulli(std::stod(arg));
    if (kind == "count") return FixedCount(std::stoul(arg));
    if (kind == "constant") {
      return Constant(PlayerType{static_cast<uint32_t>(std::stoul(arg))});
    }
  } catch (const std::logic_error&) {
    throw ContractError("bad prior argument in '" + text + "'");
  }
  if (kind == "critical") return NearCritical();
  throw ContractError("unknown prior '" + text + "'");
}

const char* ToString(AuditMechanism mechanism) {
  switch (mechanism) {
    case AuditMechanism::kLaplace:
      return "laplace";
    case AuditMechanism::kMedian:
      return "median";
    case AuditMechanism::kExactOracle:
      return "exact_oracle";
    case AuditMechanism::kNaiveRule:
      return "naive_rule";
  }
  return "unknown";
}

MechanismOutput RunAuditedMechanism(const GameInstance& game,
                                    const AuditConfig& config,
                                    const std::vector<bool>& opted_out,
                                    uint64_t seed) {
  MechanismOutput out;
  MechanismParams params = config.params;
  params.seed = seed;
  switch (config.mechanism) {
    case AuditMechanism::kLaplace: {
      MechanismOutcome r = RunNrLaplace(game, params, RunOptions{opted_out});
      if (auto* bad = std::get_if<Infeasibility>(&r)) {
        throw ContractError("audited mechanism is infeasible: " + bad->Message());
      }
      const MechanismRun& run = std::get<MechanismRun>(r);
      if (!run.failed()) out.dist = run.Distribution();
      break;
    }
    case AuditMechanism::kMedian: {
      // An opted-out player is reported to the net with type 0.
      std::vector<PlayerType> types(game.types().begin(), game.types().end());
      for (size_t i = 0; i < opted_out.size(); ++i) {
        if (opted_out[i]) types[i] = PlayerType{0};
      }
      MedianOutcome r = RunNrMedian(game.WithTypes(types), params);
      if (auto* bad = std::get_if<Infeasibility>(&r)) {
        throw ContractError("audited mechanism is infeasible: " + bad->Message());
      }
      const MedianRun& run = std::get<MedianRun>(r);
      if (!run.run.failed()) out.dist = run.run.Distribution();
      break;
    }
    case AuditMechanism::kExactOracle:
      out.dist = ExactPureOracle(game);
      break;
    case AuditMechanism::kNaiveRule:
      out.dist = NaiveRule(game, opted_out);
      break;
  }
  return out;
}

std::vector<double> FixedActionUtilities(const GameInstance& game,
                                         const CorrelatedDistribution& dist,
                                         size_t focal) {
  Require(dist.T() >= 1, "distribution has no rounds");
  const LossMode mode = ExactMode(game);
  std::vector<double> u(game.k(), 0.0);
  for (const auto& round : dist.rounds) {
    const LossEstimate est = ExpectedLoss(game, focal, round, mode);
    for (size_t a = 0; a < game.k(); ++a) u[a] += 1.0 - est.losses[a];
  }
  for (double& v : u) v /= static_cast<double>(dist.T());
  return u;
}

AuditReport Audit(const GameInstance& base, const TypePrior& prior,
                  const AuditConfig& config) {
  Require(config.trials >= 1, "audit needs at least one trial");
  const size_t n = base.n();
  AuditReport report;
  report.mechanism = ToString(config.mechanism);
  report.prior = prior.description;
  const bool private_mechanism = config.mechanism == AuditMechanism::kLaplace ||
                                 config.mechanism == AuditMechanism::kMedian;
  report.epsilon = private_mechanism ? config.params.budget.epsilon : 0.0;
  report.delta = private_mechanism ? config.params.budget.delta : 0.0;
  report.trials = config.trials;
  for (uint64_t trial = 0; trial < config.trials; ++trial) {
    Rng rng(SubstreamSeed(config.seed, trial, kTrialStream));
    const std::vector<PlayerType> types = prior.Sample(n, rng);
    Require(types.size() == n, "prior returned the wrong number of types");
    for (const PlayerType& t : types) {
      Require(t.id < base.universe_size(), "prior type outside the universe");
    }
    const size_t focal = static_cast<size_t>(rng.Index(n));
    const GameInstance game = base.WithTypes(types);
    const uint64_t mseed = SubstreamSeed(config.seed, trial, kMechanismStream);

    const MechanismOutput truthful = RunAuditedMechanism(game, config, {}, mseed);
    if (!truthful.dist) {
      ++report.discarded;
      continue;
    }
    std::vector<bool> mask(n, false);
    mask[focal] = true;
    const MechanismOutput deviated = RunAuditedMechanism(game, config, mask, mseed);
    if (!deviated.dist) {
      ++report.discarded;
      continue;
    }
    const EquilibriumCertificate cert =
        Verify(*truthful.dist, game, VerifyMode::Exact());
    AuditTrial rec;
    rec.focal = focal;
    rec.focal_type = types[focal];
    rec.utility = cert.per_player[focal].utility;
    rec.swap_gain = cert.per_player[focal].swap;
    rec.fixed_gain = cert.per_player[focal].fixed;
    rec.alpha_ce = cert.alpha_ce;
    const std::vector<double> fixed =
        FixedActionUtilities(game, *deviated.dist, focal);
    rec.optout_gain = *std::max_element(fixed.begin(), fixed.end()) - rec.utility;
    report.per_trial.push_back(rec);
  }
  report.swap = Summarize(report.per_trial, &AuditTrial::swap_gain);
  report.optout = Summarize(report.per_trial, &AuditTrial::optout_gain);
  if (!report.per_trial.empty()) {
    double alpha = 0.0;
    for (const AuditTrial& t : report.per_trial) alpha += t.alpha_ce;
    report.alpha = alpha / static_cast<double>(report.per_trial.size());
  }
  report.eta_claimed = report.epsilon + report.delta + report.alpha;
  const DeviationSummary& worst =
      report.swap.mean >= report.optout.mean ? report.swap : report.optout;
  report.max_deviation_gain = worst.mean;
  report.stderr_value = worst.stderr_value;
  return report;
}

CorrelatedDistribution NaiveRule(const GameInstance& game,
                                 const std::vector<bool>& opted_out) {
  Require(game.spec().family == kBeachFamily,
          "the naive rule is defined for beach_mountain games");
  size_t population = 0;
  size_t beach = 0;
  for (size_t i = 0; i < game.n(); ++i) {
    if (i < opted_out.size() && opted_out[i]) continue;
    ++population;
    if (game.type(i).id == kBeach) ++beach;
  }
  const uint32_t target = 2 * beach < population ? kBeach : kMountain;
  CorrelatedDistribution dist;
  dist.rounds.emplace_back(game.n(), MixedStrategy::PointMass(2, ActionId{target}));
  return dist;
}

CorrelatedDistribution ExactPureOracle(const GameInstance& game) {
  const size_t n = game.n();
  const size_t k = game.k();
  const double count = std::pow(static_cast<double>(k), static_cast<double>(n));
  if (count > kExactProfileBudget) {
    throw ResourceError("exact oracle profile space exceeds the budget");
  }
  ActionProfile profile(n, ActionId{0});
  for (size_t code = 0; code < static_cast<size_t>(count); ++code) {
    size_t c = code;
    for (size_t i = 0; i < n; ++i) {
      profile[i] = ActionId{static_cast<uint32_t>(c % k)};
      c /= k;
    }
    bool stable = true;
    ActionProfile dev = profile;
    for (size_t i = 0; i < n && stable; ++i) {
      const double u = game.Utility(i, profile);
      for (uint32_t a = 0; a < k && stable; ++a) {
        dev[i] = ActionId{a};
        if (game.Utility(i, dev) > u + 1e-12) stable = false;
      }
      dev[i] = profile[i];
    }
    if (!stable) continue;
    CorrelatedDistribution dist;
    dist.rounds.emplace_back();
    for (size_t i = 0; i < n; ++i) {
      dist.rounds.back().push_back(MixedStrategy::PointMass(k, profile[i]));
    }
    return dist;
  }
  throw ContractError("game has no pure equilibrium");
}

CounterexampleResult BeachCounterexample(size_t n, size_t mountain_count) {
  Require(n >= 3 && n % 2 == 1, "the counterexample needs odd n >= 3");
  const GameInstance game = BeachMountainGame(n, mountain_count);
  CounterexampleResult r;
  r.focal = 0;
  for (size_t i = 0; i < n; ++i) {
    if (game.type(i).id == kMountain) {
      r.focal = i;
      break;
    }
  }
  const CorrelatedDistribution truthful = NaiveRule(game, {});
  const uint32_t rec = static_cast<uint32_t>(
      std::max_element(truthful.rounds[0][r.focal].probs().begin(),
                       truthful.rounds[0][r.focal].probs().end()) -
      truthful.rounds[0][r.focal].probs().begin());
  r.truthful_utility = FixedActionUtilities(game, truthful, r.focal)[rec];
  std::vector<bool> mask(n, false);
  mask[r.focal] = true;
  const std::vector<double> out =
      FixedActionUtilities(game, NaiveRule(game, mask), r.focal);
  r.optout_utility = *std::max_element(out.begin(), out.end());
  r.gain = r.optout_utility - r.truthful_utility;
  return r;
}

nlohmann::ordered_json ToJson(const AuditReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["mechanism"] = r.mechanism;
  j["prior"] = r.prior;
  j["epsilon"] = r.epsilon;
  j["delta"] = r.delta;
  j["alpha"] = r.alpha;
  j["eta_claimed"] = r.eta_claimed;
  j["max_deviation_gain"] = r.max_deviation_gain;
  j["stderr"] = r.stderr_value;
  j["passes"] = r.passes();
  j["trials"] = r.trials;
  j["discarded"] = r.discarded;
  j["discard_rate"] = r.discard_rate();
  j["deviations"] = {
      {"swap", {{"mean_gain", r.swap.mean}, {"stderr", r.swap.stderr_value}}},
      {"opt_out", {{"mean_gain", r.optout.mean}, {"stderr", r.optout.stderr_value}}}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const AuditTrial& t : r.per_trial) {
    rows.push_back({{"focal", t.focal},
                    {"focal_type", t.focal_type.id},
                    {"utility", t.utility},
                    {"swap_gain", t.swap_gain},
                    {"fixed_gain", t.fixed_gain},
                    {"optout_gain", t.optout_gain},
                    {"alpha_ce", t.alpha_ce}});
  }
  j["per_trial"] = std::move(rows);
  return j;
}

}  // namespace privcorr
