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

#include "privcorr/mech_median.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace privcorr {
namespace {

constexpr uint64_t kMedianStream = 0x6d656469616eULL;
constexpr double kZeroSpread = 1e-15;

}  // namespace

CandidateNet::CandidateNet(size_t n, size_t universe)
    : n_(n), universe_(universe) {
  Require(n >= 1 && universe >= 1, "net needs n >= 1 and U >= 1");
  const double size =
      std::pow(static_cast<double>(universe), static_cast<double>(n));
  if (size > kMaxNetSize) {
    std::ostringstream msg;
    msg << "candidate net of " << universe << "^" << n
        << " tuples exceeds the cap of " << kMaxNetSize;
    throw ResourceError(msg.str());
  }
  live_.assign(static_cast<size_t>(size), true);
}

std::vector<PlayerType> CandidateNet::Tuple(size_t index) const {
  Require(index < live_.size(), "candidate index out of range");
  std::vector<PlayerType> types(n_);
  for (size_t i = n_; i-- > 0;) {
    types[i] = PlayerType{static_cast<uint32_t>(index % universe_)};
    index /= universe_;
  }
  return types;
}

size_t CandidateNet::IndexOf(std::span<const PlayerType> types) const {
  Require(types.size() == n_, "type tuple has the wrong length");
  size_t index = 0;
  for (const PlayerType& t : types) {
    Require(t.id < universe_, "type outside the universe");
    index = index * universe_ + t.id;
  }
  return index;
}

size_t CandidateNet::live_count() const {
  return static_cast<size_t>(std::count(live_.begin(), live_.end(), true));
}

LossVector SharedLossTable::Slice(size_t round, size_t i, size_t v) const {
  LossVector out(k);
  for (size_t j = 0; j < k; ++j) out[j] = at(round, i, j, v);
  return out;
}

std::vector<std::vector<MixedStrategy>> ReconstructStrategies(
    const SharedLossTable& table, uint64_t t, LearnerKind learner,
    uint64_t horizon) {
  Require(t >= 1, "rounds are numbered from 1");
  if (table.rounds.size() + 1 < t) {
    std::ostringstream msg;
    msg << "loss table covers " << table.rounds.size()
        << " rounds; round " << t << " needs " << t - 1;
    throw ContractError(msg.str());
  }
  std::vector<std::vector<MixedStrategy>> book(table.n);
  LossVector row(table.k);
  for (size_t i = 0; i < table.n; ++i) {
    for (size_t v = 0; v < table.universe; ++v) {
      Learner l(learner, table.k, horizon);
      for (uint64_t s = 1; s < t; ++s) {
        for (size_t j = 0; j < table.k; ++j) {
          row[j] = std::clamp(table.at(s, i, j, v), 0.0, 1.0);
        }
        l.Observe(row);
      }
      book[i].push_back(l.current());
    }
  }
  return book;
}

LossVector QueryValues(const GameInstance& game,
                       const std::vector<std::vector<MixedStrategy>>& book,
                       size_t player, PlayerType v,
                       std::span<const PlayerType> types, LossMode mode) {
  Require(book.size() == game.n() && types.size() == game.n(),
          "book and type tuple must cover every player");
  std::vector<MixedStrategy> profile(game.n());
  for (size_t i = 0; i < game.n(); ++i) {
    profile[i] = i == player ? book[i][v.id] : book[i].at(types[i].id);
  }
  const LossEstimate est = ExpectedLoss(game, player, profile, mode, nullptr, v);
  return RescaleLoss(est.losses);
}

MedianMechanism::MedianMechanism(CandidateNet* net, double threshold,
                                 double scale, uint64_t hard_cap, uint64_t seed)
    : net_(net),
      threshold_(threshold),
      scale_(scale),
      cap_(hard_cap),
      rng_(seed) {
  Require(net_ != nullptr, "median mechanism needs a net");
  RefreshThreshold();
}

void MedianMechanism::RefreshThreshold() {
  noisy_threshold_ = threshold_ + LaplaceSample(2.0 * scale_, rng_);
}

MedianAnswer MedianMechanism::Ask(std::span<const double> values,
                                  double true_value) {
  Require(values.size() == net_->size(), "one value per candidate expected");
  std::vector<double> live;
  for (size_t c = 0; c < values.size(); ++c) {
    if (net_->live(c)) live.push_back(values[c]);
  }
  MedianAnswer out;
  if (live.empty()) {
    out.failed = true;
    return out;
  }
  std::sort(live.begin(), live.end());
  const double median = live[(live.size() - 1) / 2];
  if (live.back() - live.front() <= kZeroSpread) {
    out.value = median;
    return out;
  }
  const double distance =
      std::abs(median - true_value) + LaplaceSample(4.0 * scale_, rng_);
  if (distance < noisy_threshold_) {
    out.value = median;
    return out;
  }
  out.hard = true;
  ++hard_;
  if (hard_ > cap_) {
    out.failed = true;
    out.value = median;
    return out;
  }
  out.value = true_value + LaplaceSample(scale_, rng_);
  for (size_t c = 0; c < values.size(); ++c) {
    if (net_->live(c) && std::abs(values[c] - out.value) > threshold_) {
      net_->Prune(c);
    }
  }
  RefreshThreshold();
  return out;
}

MedianOutcome RunNrMedian(const GameInstance& game,
                          const MechanismParams& params) {
  const size_t n = game.n();
  const size_t k = game.k();
  const size_t U = game.universe_size();
  const double eps = params.budget.epsilon;
  const double delta = params.budget.delta;
  const double beta = params.beta;

  const double net_size = std::pow(static_cast<double>(U), static_cast<double>(n));
  if (net_size > kMaxNetSize) {
    return Infeasibility{"U^n <= 1e6", 0, net_size, kMaxNetSize,
                         "candidate net too large"};
  }

  RunManifest manifest;
  manifest.mechanism = "median";
  manifest.epsilon = eps;
  manifest.delta = delta;
  manifest.beta = beta;
  manifest.gamma = game.gamma();
  manifest.n = n;
  manifest.k = k;
  manifest.learner = ToString(params.learner);
  manifest.seed = params.seed;

  uint64_t T = 0;
  if (params.rounds) {
    T = *params.rounds;
    Require(T >= 1, "T must be >= 1");
    if (!(eps > 0.0)) {
      return Infeasibility{"alpha_MM <= 1/6", T, 0.0, 1.0 / 6.0,
                           "epsilon must be positive"};
    }
    manifest.t_auto = false;
    const ConstraintValue c =
        NrMedianConstraint(n, k, U, game.gamma(), eps, delta, beta, T);
    if (!c.ok()) {
      std::ostringstream msg;
      msg << "explicit T=" << T << " violates alpha_MM <= 1/6: " << c.lhs
          << " > " << c.rhs;
      manifest.warnings.push_back(msg.str());
    }
  } else {
    MedianPlanResult planned = PlanForNrMedian(
        n, k, U, game.gamma(), eps, delta, beta,
        params.t_cap == kDefaultRoundCap ? 0 : params.t_cap);
    if (auto* bad = std::get_if<Infeasibility>(&planned)) return *bad;
    T = std::get<MedianPlan>(planned).T;
    manifest.t_capped = std::get<MedianPlan>(planned).capped;
  }
  const double alpha_mm = MedianAccuracy(n, k, U, game.gamma(), eps, delta, beta, T);
  const uint64_t cap = MedianHardQueryCap(n, U);
  // Per-hard-query budget by advanced composition over the cap; queries on
  // rescaled losses are gamma/3-sensitive.
  const double eps_hard = PerStepEpsilon(eps, delta, cap);
  const double scale = (game.gamma() / 3.0) / eps_hard;
  const double threshold = alpha_mm / 2.0;

  manifest.T = T;
  manifest.sigma = scale;
  manifest.per_step_epsilon = eps_hard;
  manifest.alpha_mm = alpha_mm;
  manifest.hard_query_cap = cap;
  manifest.predicted_alpha =
      PredictedAlphaMedian(n, k, U, game.gamma(), eps, delta, beta, T);

  const LossMode mode = params.loss_mode.value_or(DefaultLossMode(game));
  manifest.loss_backend = ToString(mode.backend);
  manifest.loss_samples = mode.samples;

  CandidateNet net(n, U);
  const std::vector<PlayerType> truth(game.types().begin(), game.types().end());
  const size_t true_index = net.IndexOf(truth);
  MedianMechanism median(&net, threshold, scale, cap,
                         SubstreamSeed(params.seed, kMedianStream));

  MedianRun out;
  out.table = {n, k, U, {}};
  out.stats.hard_cap = cap;
  out.stats.alpha_mm = alpha_mm;
  MechanismRun& run = out.run;
  run.ledger = BudgetLedger(eps_hard, eps, delta);
  run.sequences.resize(n);
  run.noisy_losses.resize(n);
  run.true_losses.resize(n);
  run.clamped.resize(n);

  // book[i][v] learners over the shared table.
  std::vector<std::vector<Learner>> learners(n);
  std::vector<std::vector<MixedStrategy>> book(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t v = 0; v < U; ++v) {
      learners[i].emplace_back(params.learner, k, T);
      book[i].push_back(learners[i].back().current());
    }
    run.sequences[i].states.push_back(book[i][truth[i].id]);
  }

  std::vector<std::vector<double>> values(net.size());
  std::vector<double> column(net.size());
  for (uint64_t t = 1; t <= T && !out.stats.failure_round; ++t) {
    std::vector<double> row(n * k * U);
    for (size_t i = 0; i < n; ++i) {
      for (size_t v = 0; v < U; ++v) {
        const PlayerType type{static_cast<uint32_t>(v)};
        for (size_t c = 0; c < net.size(); ++c) {
          if (!net.live(c) && c != true_index) continue;
          values[c] = QueryValues(game, book, i, type, net.Tuple(c), mode);
        }
        for (size_t j = 0; j < k; ++j) {
          for (size_t c = 0; c < net.size(); ++c) {
            column[c] = net.live(c) || c == true_index ? values[c][j] : 0.0;
          }
          const double truth_value = values[true_index][j];
          const MedianAnswer a = median.Ask(column, truth_value);
          ++out.stats.queries;
          if (a.failed) {
            out.stats.failure_round = t;
            break;
          }
          if (a.hard) {
            run.ledger.Record();
            ++out.stats.hard;
          } else {
            ++out.stats.easy;
          }
          const double err = std::abs(a.value - truth_value);
          out.stats.max_error = std::max(out.stats.max_error, err);
          if (err <= alpha_mm) ++out.stats.within_alpha;
          row[(i * k + j) * U + v] = a.value;
        }
        if (out.stats.failure_round) break;
      }
      if (out.stats.failure_round) break;
    }
    if (out.stats.failure_round) break;
    out.table.rounds.push_back(row);

    // True losses of the actual play this round.
    std::vector<MixedStrategy> current(n);
    for (size_t i = 0; i < n; ++i) current[i] = book[i][truth[i].id];
    const std::vector<LossVector> losses = ExpectedLossesAll(game, current, mode);

    LossVector slice(k);
    for (size_t i = 0; i < n; ++i) {
      run.true_losses[i].push_back(losses[i]);
      for (size_t v = 0; v < U; ++v) {
        uint32_t clamps = 0;
        for (size_t j = 0; j < k; ++j) {
          const double raw = row[(i * k + j) * U + v];
          slice[j] = std::clamp(raw, 0.0, 1.0);
          if (slice[j] != raw) ++clamps;
        }
        if (v == truth[i].id) {
          run.noisy_losses[i].push_back(out.table.Slice(t, i, v));
          run.clamped[i].push_back(clamps);
          manifest.clamped_entries += clamps;
        }
        learners[i][v].Observe(slice);
        book[i][v] = learners[i][v].current();
      }
      run.sequences[i].states.push_back(book[i][truth[i].id]);
    }
  }
  out.stats.true_tuple_live = net.live(true_index);
  manifest.hard_queries = out.stats.hard;
  manifest.ledger_draws = run.ledger.draws();
  if (out.stats.failure_round) {
    manifest.status = "median_failure";
    manifest.failure_round = out.stats.failure_round;
  }
  run.predicted_alpha = manifest.predicted_alpha;
  run.manifest = std::move(manifest);
  return out;
}

}  // namespace privcorr
