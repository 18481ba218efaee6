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

#include "privcorr/mech_laplace.hpp"

#include <algorithm>
#include <sstream>

namespace privcorr {
namespace {

constexpr uint64_t kLossStream = 0x6c6f7373ULL;

bool OptedOut(const RunOptions& options, size_t player) {
  return player < options.opted_out.size() && options.opted_out[player];
}

}  // namespace

CorrelatedDistribution MechanismRun::Distribution() const {
  return CorrelatedDistribution::FromSequences(sequences);
}

MixedStrategy OptOutStrategy(const GameInstance& game) {
  if (auto null = game.null_action()) return MixedStrategy::PointMass(game.k(), *null);
  return MixedStrategy::Uniform(game.k());
}

MechanismOutcome RunNrLaplace(const GameInstance& game,
                              const MechanismParams& params,
                              const RunOptions& options) {
  const size_t n = game.n();
  const size_t k = game.k();
  const double eps = params.budget.epsilon;
  const double delta = params.budget.delta;
  Require(options.opted_out.empty() || options.opted_out.size() == n,
          "opt-out mask must list every player");

  RunManifest manifest;
  manifest.mechanism = "laplace";
  manifest.epsilon = eps;
  manifest.delta = delta;
  manifest.beta = params.beta;
  manifest.gamma = game.gamma();
  manifest.n = n;
  manifest.k = k;
  manifest.learner = ToString(params.learner);
  manifest.seed = params.seed;

  NoisePlan plan;
  if (params.rounds) {
    if (!(eps > 0.0)) {
      return Infeasibility{"sigma <= 1/(6 ln(4nkT/beta))", *params.rounds, 0.0,
                           0.0, "epsilon must be positive"};
    }
    plan = NoisePlanAt(n, k, game.gamma(), eps, delta, *params.rounds);
    const ConstraintValue c = NrLaplaceConstraint(
        n, k, game.gamma(), eps, delta, params.beta, plan.T);
    manifest.t_auto = false;
    if (!c.ok()) {
      std::ostringstream msg;
      msg << "explicit T=" << plan.T
          << " violates sigma <= 1/(6 ln(4nkT/beta)): " << c.lhs << " > "
          << c.rhs;
      manifest.warnings.push_back(msg.str());
    }
  } else {
    PlanResult planned = PlanForNrLaplace(n, k, game.gamma(), eps, delta,
                                          params.beta, params.t_cap);
    if (auto* bad = std::get_if<Infeasibility>(&planned)) return *bad;
    plan = std::get<NoisePlan>(planned);
    manifest.t_capped = plan.capped;
  }
  const uint64_t T = plan.T;
  manifest.T = T;
  manifest.sigma = plan.sigma;
  manifest.per_step_epsilon = plan.per_step_epsilon;
  manifest.predicted_alpha =
      PredictedAlphaLaplace(n, k, game.gamma(), eps, delta, params.beta, T);

  const LossMode mode = params.loss_mode.value_or(DefaultLossMode(game));
  manifest.loss_backend = ToString(mode.backend);
  manifest.loss_samples = mode.samples;

  MechanismRun run;
  run.ledger = BudgetLedger(plan.per_step_epsilon, eps, delta);
  run.sequences.resize(n);
  run.noisy_losses.resize(n);
  run.true_losses.resize(n);
  run.clamped.resize(n);

  std::vector<std::optional<Learner>> learners(n);
  std::vector<MixedStrategy> current(n);
  for (size_t i = 0; i < n; ++i) {
    if (OptedOut(options, i)) {
      current[i] = OptOutStrategy(game);
    } else {
      learners[i].emplace(params.learner, k, T);
      current[i] = learners[i]->current();
    }
    run.sequences[i].states.reserve(T + 1);
    run.sequences[i].states.push_back(current[i]);
  }

  LossVector noisy(k);
  LossVector clipped(k);
  for (uint64_t t = 1; t <= T; ++t) {
    Rng loss_rng(SubstreamSeed(params.seed ^ kLossStream, t, n));
    std::vector<LossVector> losses;
    try {
      losses = ExpectedLossesAll(game, current, mode, &loss_rng);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "loss oracle failed in round " << t << ": " << e.what();
      throw ResourceError(msg.str());
    }
    for (size_t i = 0; i < n; ++i) {
      run.true_losses[i].push_back(losses[i]);
      if (!learners[i]) {
        run.clamped[i].push_back(0);
        run.sequences[i].states.push_back(current[i]);
        continue;
      }
      Rng rng(SubstreamSeed(params.seed, i, t));
      const LossVector scaled = RescaleLoss(losses[i]);
      uint32_t clamps = 0;
      for (size_t j = 0; j < k; ++j) {
        noisy[j] = scaled[j] + LaplaceSample(plan.sigma, rng);
        run.ledger.Record();
        clipped[j] = std::clamp(noisy[j], 0.0, 1.0);
        if (clipped[j] != noisy[j]) ++clamps;
      }
      run.noisy_losses[i].push_back(noisy);
      run.clamped[i].push_back(clamps);
      manifest.clamped_entries += clamps;
      learners[i]->Observe(clipped);
      current[i] = learners[i]->current();
      run.sequences[i].states.push_back(current[i]);
    }
  }
  manifest.ledger_draws = run.ledger.draws();
  run.predicted_alpha = manifest.predicted_alpha;
  run.manifest = std::move(manifest);
  return run;
}

std::vector<PlaySequence> JointView(const MechanismRun& run, size_t player) {
  Require(player < run.sequences.size(), "player index out of range");
  std::vector<PlaySequence> out;
  out.reserve(run.sequences.size() - 1);
  for (size_t i = 0; i < run.sequences.size(); ++i) {
    if (i != player) out.push_back(run.sequences[i]);
  }
  return out;
}

nlohmann::ordered_json ToJson(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["mechanism"] = m.mechanism;
  j["status"] = m.status;
  j["epsilon"] = m.epsilon;
  j["delta"] = m.delta;
  j["beta"] = m.beta;
  j["gamma"] = m.gamma;
  j["n"] = m.n;
  j["k"] = m.k;
  j["T"] = m.T;
  j["T_auto"] = m.t_auto;
  j["T_capped"] = m.t_capped;
  j["sigma"] = m.sigma;
  j["per_step_epsilon"] = m.per_step_epsilon;
  j["ledger_draws"] = m.ledger_draws;
  j["learner"] = m.learner;
  j["loss_backend"] = m.loss_backend;
  j["loss_samples"] = m.loss_samples;
  j["log_base"] = "e";
  j["seed"] = m.seed;
  j["clamped_entries"] = m.clamped_entries;
  j["predicted_alpha"] = m.predicted_alpha;
  j["warnings"] = m.warnings;
  if (m.alpha_mm) j["alpha_mm"] = *m.alpha_mm;
  if (m.hard_queries) j["hard_queries"] = *m.hard_queries;
  if (m.hard_query_cap) j["hard_query_cap"] = *m.hard_query_cap;
  if (m.failure_round) j["failure_round"] = *m.failure_round;
  return j;
}

}  // namespace privcorr
