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

// Acceptance checks. One line per criterion; exit status 0 when it passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>

#include "../unit/oracles.hpp"
#include "privcorr/equilibrium.hpp"
#include "privcorr/game_suite.hpp"
#include "privcorr/io.hpp"
#include "privcorr/mech_laplace.hpp"
#include "privcorr/mech_median.hpp"
#include "privcorr/noregret.hpp"
#include "privcorr/privacy.hpp"
#include "privcorr/proxy_audit.hpp"

using namespace privcorr;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

LossMatrix RandomLosses(size_t T, size_t k, Rng& rng) {
  LossMatrix L(T, LossVector(k));
  for (auto& row : L) {
    for (double& x : row) x = rng.Uniform();
  }
  return L;
}

// Puts loss 1 on the currently heaviest action, 0 elsewhere.
AdaptiveLoss Adversary(size_t k) {
  return [k](uint64_t, const MixedStrategy& pi) {
    LossVector l(k, 0.0);
    size_t arg = 0;
    for (size_t j = 1; j < k; ++j) {
      if (pi[j] > pi[arg]) arg = j;
    }
    l[arg] = 1.0;
    return l;
  };
}

// Regret of every (T, k) learner over random and adaptive losses; returns
// the worst excess over `bound(k, T)`.
double WorstExcess(LearnerKind kind, DeviationFamily family,
                   const std::function<double(size_t, uint64_t)>& bound, int per_cell,
                   int* checked) {
  double worst = -1e300;
  for (uint64_t T : {256u, 1024u, 4096u}) {
    for (size_t k : {2u, 4u, 8u}) {
      for (int m = 0; m < per_cell; ++m) {
        Rng rng(SubstreamSeed(T * 131 + k, static_cast<uint64_t>(m), 1));
        PlaySequence seq;
        LossMatrix L;
        if (m % 2 == 0) {
          L = RandomLosses(T, k, rng);
          seq = RunLearner(kind, L);
        } else {
          std::tie(seq, L) = RunLearnerAdaptive(kind, k, T, Adversary(k));
        }
        worst = std::max(worst, Regret(seq, L, family).value - bound(k, T));
        ++*checked;
      }
    }
  }
  return worst;
}

Outcome Criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int checked = 0;
  const double excess = WorstExcess(
      LearnerKind::kFixed, DeviationFamily::kFixed,
      [](size_t k, uint64_t T) { return std::sqrt(2.0 * std::log(double(k)) / double(T)); },
      56, &checked);
  const double secs = Seconds(start);
  o.Require(excess <= 1e-9, "rho_fixed above sqrt(2 ln k / T)");
  o.Require(secs < 60.0, "runtime");
  o.detail << checked << " matrices, worst rho_fixed - bound = " << excess << ", " << secs << " s";
  return o;
}

Outcome Criterion2() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int checked = 0;
  const double excess = WorstExcess(
      LearnerKind::kSwap, DeviationFamily::kSwap,
      [](size_t k, uint64_t T) {
        return double(k) * std::sqrt(2.0 * std::log(double(k)) / double(T));
      },
      56, &checked);
  o.Require(excess <= 1e-9, "rho_swap above k sqrt(2 ln k / T)");

  double max_gap = 0.0;
  for (uint64_t i = 0; i < 200; ++i) {
    Rng rng(SubstreamSeed(77, i, 2));
    const LossMatrix L = RandomLosses(5, 3, rng);
    PlaySequence seq;
    for (int t = 0; t <= 5; ++t) {
      std::vector<double> w(3);
      for (double& x : w) x = rng.Uniform();
      seq.states.push_back(MixedStrategy::FromWeights(w));
    }
    const std::vector<MixedStrategy> played(seq.states.begin(), seq.states.end() - 1);
    const double fast = Regret(seq, L, DeviationFamily::kSwap).value;
    max_gap = std::max(max_gap, std::abs(fast - oracle::ExhaustiveSwapRegret(played, L)));
  }
  // Both sides sum the same products in a different order.
  o.Require(max_gap <= 1e-12, "coordinate-wise optimum differs from k^k search");
  const double secs = Seconds(start);
  o.Require(secs < 120.0, "runtime");
  o.detail << checked << " matrices, worst rho_swap - bound = " << excess
           << "; 200 k^k checks, max |diff| = " << max_gap << ", " << secs << " s";
  return o;
}

Outcome Criterion3() {
  Outcome o;
  int violations = 0;
  for (double b : {0.01, 0.05}) {
    for (uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(SubstreamSeed(3, seed, static_cast<uint64_t>(b * 1000)));
      const size_t k = 4;
      const LossMatrix L = RandomLosses(500, k, rng);
      NoiseMatrix Z{NoiseKind::kBounded, b, seed, {}};
      LossMatrix fed = L;
      for (size_t t = 0; t < L.size(); ++t) {
        LossVector z(k);
        for (size_t j = 0; j < k; ++j) {
          z[j] = (2.0 * rng.Uniform() - 1.0) * b;
          fed[t][j] = std::clamp(L[t][j] + z[j], 0.0, 1.0);
        }
        Z.rows.push_back(z);
      }
      const LearnerKind kind = seed % 2 ? LearnerKind::kSwap : LearnerKind::kFixed;
      const PlaySequence seq = RunLearner(kind, fed);
      for (auto fam : {DeviationFamily::kFixed, DeviationFamily::kSwap}) {
        const NoiseCheck c = NoiseToleranceCheck(seq, L, Z, fam);
        if (!(std::abs(c.gap) <= 2 * b)) ++violations;
      }
    }
  }
  o.Require(violations == 0, "bounded-noise gap above 2b");

  int below = 0;
  const double sigma = 0.02;
  const size_t T = 10000;
  const size_t k = 4;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(SubstreamSeed(33, seed, 0));
    const LossMatrix L = RandomLosses(T, k, rng);
    NoiseMatrix Z{NoiseKind::kLaplace, sigma, seed, {}};
    LossMatrix fed = L;
    for (size_t t = 0; t < T; ++t) {
      LossVector z(k);
      for (size_t j = 0; j < k; ++j) {
        z[j] = LaplaceSample(sigma, rng);
        fed[t][j] = std::clamp(L[t][j] + z[j], 0.0, 1.0);
      }
      Z.rows.push_back(z);
    }
    const PlaySequence seq = RunLearner(LearnerKind::kSwap, fed);
    const NoiseCheck c = NoiseToleranceCheck(seq, L, Z, DeviationFamily::kSwap, 0.05);
    if (std::abs(c.gap) <= c.bound) ++below;
  }
  o.Require(below >= 95, "laplace gap below threshold in fewer than 95/100");
  o.detail << "bounded: " << violations << " violations in 400 checks; laplace: "
           << below << "/100 below sigma sqrt(24 k ln(4k/beta)/T)";
  return o;
}

Outcome Criterion4() {
  Outcome o;
  double worst = 0.0;
  for (uint64_t i = 0; i < 100; ++i) {
    Rng rng(SubstreamSeed(4, i, 0));
    const size_t k = 2 + rng.Index(4);
    const size_t T = 1 + rng.Index(50);
    const LossMatrix L = RandomLosses(T, k, rng);
    PlaySequence seq;
    for (size_t t = 0; t <= T; ++t) {
      std::vector<double> w(k);
      for (double& x : w) x = rng.Uniform();
      seq.states.push_back(MixedStrategy::FromWeights(w));
    }
    std::vector<uint32_t> f(k);
    for (auto& x : f) x = static_cast<uint32_t>(rng.Index(k));
    const DeviationMap map(f);
    const double raw = DeviationGain(seq, L, map);
    const double scaled = DeviationGain(seq, RescaleLosses(L), map);
    worst = std::max(worst, std::abs(raw - 3.0 * scaled));
  }
  o.Require(worst <= 1e-9, "rho(L) != 3 rho(L~)");
  o.detail << "100 triples, max |rho(L) - 3 rho(L~)| = " << worst;
  return o;
}

// Stored runs for the consistency check.
std::vector<std::pair<GameInstance, MechanismRun>>& StoredRuns() {
  static std::vector<std::pair<GameInstance, MechanismRun>> runs;
  return runs;
}

Outcome Criterion5() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const size_t n = 200;
  const double gamma = 1.0 / 199;
  const PlanResult plan = PlanForNrLaplace(n, 2, gamma, 1.0, 1e-6, 0.05);
  if (const auto* bad = std::get_if<Infeasibility>(&plan)) {
    o.Require(false, "auto-T infeasible");
    o.detail << "auto-T: " << bad->Message() << "; ";
  }
  // Heuristic horizon, sqrt(T) = 1 / (gamma sqrt(nk)).
  const uint64_t T = static_cast<uint64_t>(std::llround(1.0 / (gamma * gamma * n * 2)));
  const GameInstance base = BeachMountainGame(n, n / 2);
  int within = 0;
  double worst_ledger = 0.0;
  double max_alpha = -1.0;
  double predicted = 0.0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    MechanismParams p;
    p.budget = {1.0, 1e-6, PrivacyKind::kJoint};
    p.rounds = T;
    p.seed = seed;
    MechanismOutcome out = RunNrLaplace(base, p);
    const MechanismRun& run = std::get<MechanismRun>(out);
    const EquilibriumCertificate cert = Verify(run.Distribution(), base, VerifyMode::Exact());
    predicted = run.predicted_alpha;
    max_alpha = std::max(max_alpha, cert.alpha_ce);
    if (cert.alpha_ce <= run.predicted_alpha) ++within;
    const Composition c = run.ledger.Certified();
    worst_ledger = std::max({worst_ledger, std::abs(c.epsilon - 1.0), std::abs(c.delta - 1e-6)});
    if (seed < 5) StoredRuns().emplace_back(base, run);
  }
  o.Require(within >= 95, "alpha_ce <= predicted_alpha in fewer than 95/100");
  o.Require(worst_ledger <= 1e-12, "ledger does not compose to (1, 1e-6)");
  const double secs = Seconds(start);
  o.Require(secs < 600.0, "runtime");
  o.detail << "heuristic T=" << T << ": " << within << "/100 with alpha_ce <= predicted ("
           << predicted << "), max alpha_ce " << max_alpha << "; ledger max deviation "
           << worst_ledger << "; " << secs << " s";
  return o;
}

Outcome Criterion6() {
  Outcome o;
  auto& runs = StoredRuns();
  // Small runs where losses can be recomputed by enumeration as well.
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const GameInstance g = RandomGame(3, 3, 1, 50 + seed, {"t0", "t0", "t0"});
    MechanismParams p;
    p.budget = {20.0, 1e-6, PrivacyKind::kJoint};
    p.rounds = 60;
    p.seed = seed;
    runs.emplace_back(g, std::get<MechanismRun>(RunNrLaplace(g, p)));
    const GameInstance b = BeachMountainGame(4, 2);
    p.budget = {5000.0, 1e-3, PrivacyKind::kJoint};
    p.rounds.reset();
    MedianOutcome m = RunNrMedian(b, p);
    if (auto* r = std::get_if<MedianRun>(&m); r && !r->run.failed()) runs.emplace_back(b, r->run);
  }
  if (runs.size() < 10) {
    const GameInstance base = BeachMountainGame(200, 100);
    for (uint64_t seed = 0; seed < 3; ++seed) {
      MechanismParams p;
      p.budget = {1.0, 1e-6, PrivacyKind::kJoint};
      p.rounds = 99;
      p.seed = seed;
      runs.emplace_back(base, std::get<MechanismRun>(RunNrLaplace(base, p)));
    }
  }
  double worst = 0.0;
  double worst_enum = 0.0;
  for (const auto& [game, run] : runs) {
    // Through the stored artifact.
    const CorrelatedDistribution dist =
        DistributionFromJson(Json::parse(Dump(ToJson(run.Distribution()))));
    const EquilibriumCertificate cert = Verify(dist, game, VerifyMode::Exact());
    double fixed = -1e300;
    double swap = -1e300;
    for (size_t i = 0; i < game.n(); ++i) {
      fixed = std::max(fixed, Regret(run.sequences[i], run.true_losses[i], DeviationFamily::kFixed).value);
      swap = std::max(swap, Regret(run.sequences[i], run.true_losses[i], DeviationFamily::kSwap).value);
    }
    worst = std::max({worst, std::abs(cert.alpha_cce - fixed), std::abs(cert.alpha_ce - swap)});
    if (game.n() <= 4) {
      double efixed = -1e300;
      double eswap = -1e300;
      for (size_t i = 0; i < game.n(); ++i) {
        std::vector<MixedStrategy> played;
        std::vector<std::vector<double>> losses;
        for (const auto& round : dist.rounds) {
          played.push_back(round[i]);
          losses.push_back(oracle::EnumeratedLoss(game, i, round));
        }
        efixed = std::max(efixed, oracle::ExhaustiveFixedRegret(played, losses));
        eswap = std::max(eswap, oracle::ExhaustiveSwapRegret(played, losses));
      }
      worst_enum = std::max({worst_enum, std::abs(cert.alpha_cce - efixed),
                             std::abs(cert.alpha_ce - eswap)});
    }
  }
  o.Require(!runs.empty(), "no stored runs");
  o.Require(worst <= 1e-9, "certificate differs from regret functional");
  o.Require(worst_enum <= 1e-9, "certificate differs from enumeration oracle");
  o.detail << runs.size() << " stored runs, max |cert - rho| = " << worst
           << ", max |cert - enumeration| = " << worst_enum;
  return o;
}

Outcome Criterion7() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();

  AuditConfig exact;
  exact.mechanism = AuditMechanism::kExactOracle;
  exact.trials = 200;
  exact.seed = 1;
  const AuditReport r0 = Audit(BeachMountainGame(5, 0), TypePrior::Bernoulli(0.5), exact);
  o.Require(r0.max_deviation_gain <= 3 * r0.stderr_value + 1e-12, "exact oracle gain");

  const size_t n = 100;
  const double gamma = 1.0 / (n - 1);
  AuditConfig lap;
  lap.mechanism = AuditMechanism::kLaplace;
  lap.params.budget = {1.0, 1e-6, PrivacyKind::kJoint};
  lap.params.rounds = static_cast<uint64_t>(std::llround(1.0 / (gamma * gamma * n * 2)));
  lap.trials = 200;
  lap.seed = 2;
  const AuditReport r1 = Audit(BeachMountainGame(n, 0), TypePrior::Bernoulli(0.5), lap);
  o.Require(r1.passes(), "NRLaplace gain above eta + 3 stderr");

  AuditConfig naive;
  naive.mechanism = AuditMechanism::kNaiveRule;
  naive.trials = 200;
  naive.seed = 3;
  const AuditReport rn = Audit(BeachMountainGame(101, 0), TypePrior::NearCritical(), naive);
  AuditConfig priv = lap;
  priv.params.rounds = static_cast<uint64_t>(std::llround(100.0 * 100.0 / (101 * 2)));
  priv.seed = 3;
  const AuditReport rp = Audit(BeachMountainGame(101, 0), TypePrior::NearCritical(), priv);
  o.Require(rn.optout.mean >= 5 * std::max(rp.optout.mean, 0.0), "naive opt-out gain under 5x");
  o.Require(rp.max_deviation_gain <= rp.eta_claimed + 3 * rp.stderr_value, "near-critical NRLaplace");

  o.detail << "exact oracle gain " << r0.max_deviation_gain << " (stderr " << r0.stderr_value
           << "); NRLaplace n=100 T=" << *lap.params.rounds << ": gain " << r1.max_deviation_gain
           << " vs eta " << r1.eta_claimed << " + 3*" << r1.stderr_value
           << "; opt-out gain naive " << rn.optout.mean << " vs private " << rp.optout.mean
           << "; " << Seconds(start) << " s";
  return o;
}

Outcome Criterion8() {
  Outcome o;
  const double alpha = 0.001;
  double worst = 0.0;
  int decoded = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(SubstreamSeed(8, seed, 0));
    SubsetSumInstance inst;
    for (int i = 0; i < 32; ++i) inst.database.push_back(rng.Index(2) ? 1 : 0);
    for (int j = 0; j < 4; ++j) {
      std::vector<size_t> q;
      for (size_t i = 0; i < 32; ++i) {
        if (rng.Index(2)) q.push_back(i);
      }
      inst.queries.push_back(q);
    }
    const GameInstance game = BuildLowerBoundGame(inst);
    const auto answers = DecodeAnswers(game, PlantedEquilibrium(game), alpha);
    for (size_t j = 0; j < answers.size(); ++j) {
      o.Require(!answers[j].error.has_value(), "decode error");
      double truth = 0.0;
      for (size_t i : inst.queries[j]) truth += inst.database[i];
      truth /= 32.0;
      worst = std::max(worst, std::abs(answers[j].answer - truth));
      ++decoded;
    }
  }
  o.Require(worst <= 36 * alpha, "planted decode beyond 36 alpha");

  // Exhaustive region and Lipschitz suites on a dyadic grid plus the
  // region endpoints.
  int separation_failures = 0;
  int lipschitz_failures = 0;
  const int grid = 1 << 14;
  for (int h = 1; h <= 6; ++h) {
    for (double beta : {0.0, 0.001, 0.01, 0.03}) {
      std::vector<double> xs;
      for (int s = 0; s <= grid; ++s) xs.push_back(static_cast<double>(s) / grid);
      for (const auto& parts : {FRegion(h, beta), GRegion(h, beta)}) {
        for (const Interval& iv : parts) {
          xs.push_back(iv.lo);
          xs.push_back(iv.hi);
        }
      }
      const auto fr = FRegion(h, beta);
      const auto gr = GRegion(h, beta);
      for (double x : xs) {
        const double diff = SawtoothF(h, x) - SawtoothG(h, x);
        for (const Interval& iv : fr) {
          if (iv.Contains(x) && !(diff >= beta - 1e-12)) ++separation_failures;
        }
        for (const Interval& iv : gr) {
          if (iv.Contains(x) && !(-diff >= beta - 1e-12)) ++separation_failures;
        }
      }
    }
    for (int s = 0; s < grid; ++s) {
      const double x = static_cast<double>(s) / grid;
      const double y = static_cast<double>(s + 1) / grid;
      if (std::abs(SawtoothF(h, x) - SawtoothF(h, y)) > y - x + 1e-15) ++lipschitz_failures;
      if (std::abs(SawtoothG(h, x) - SawtoothG(h, y)) > y - x + 1e-15) ++lipschitz_failures;
    }
  }
  o.Require(separation_failures == 0, "region separation");
  o.Require(lipschitz_failures == 0, "Lipschitz");
  o.detail << decoded << " planted answers, max error " << worst << " (limit " << 36 * alpha
           << "); separation failures " << separation_failures << ", Lipschitz failures "
           << lipschitz_failures;
  return o;
}

Outcome Criterion9() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const GameInstance game = BeachMountainGame(4, 2);
  int good = 0;
  int failed = 0;
  int pruned_truth = 0;
  int over_cap = 0;
  double alpha_mm = 0.0;
  double predicted = 0.0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    MechanismParams p;
    p.budget = {5000.0, 1e-3, PrivacyKind::kJoint};
    p.seed = seed;
    MedianOutcome out = RunNrMedian(game, p);
    if (std::holds_alternative<Infeasibility>(out)) {
      o.Require(false, std::get<Infeasibility>(out).Message());
      break;
    }
    const MedianRun& r = std::get<MedianRun>(out);
    alpha_mm = r.stats.alpha_mm;
    predicted = r.run.predicted_alpha;
    if (r.stats.hard > r.stats.hard_cap) ++over_cap;
    if (r.run.failed()) {
      ++failed;
      continue;
    }
    if (!r.stats.true_tuple_live) ++pruned_truth;
    const EquilibriumCertificate cert = Verify(r.run.Distribution(), game, VerifyMode::Exact());
    if (r.stats.within_alpha == r.stats.queries && cert.alpha_ce <= r.run.predicted_alpha) ++good;
  }
  o.Require(good >= 95, "fewer than 95/100 seeds accurate");
  o.Require(pruned_truth == 0, "true tuple pruned");
  o.Require(over_cap == 0, "hard queries above cap");
  const double secs = Seconds(start);
  o.Require(secs < 300.0, "runtime");
  o.detail << "eps=5000 delta=1e-3: " << good << "/100 seeds with all answers within alpha_MM="
           << alpha_mm << " and alpha_ce <= " << predicted << "; failures " << failed
           << ", truth pruned " << pruned_truth << ", over cap " << over_cap << "; " << secs << " s";
  return o;
}

bool SameSig(double a, double b) {
  return std::abs(a - b) <= 5e-7 * std::max(std::abs(a), std::abs(b));
}

Outcome Criterion10() {
  Outcome o;
  int mismatches = 0;
  auto check = [&](double got, double hand, const char* name) {
    if (!SameSig(got, hand)) {
      ++mismatches;
      o.detail << name << " " << got << " vs " << hand << "; ";
    }
  };
  const double l6 = std::log(1e6);
  check(ComposeAdvanced(0.1, 0.0, 100, 1e-6).epsilon,
        0.1 * std::sqrt(200 * l6) + 100 * 0.1 * (std::exp(0.1) - 1), "compose");

  check(PerStepEpsilon(1.0, 1e-6, 100), 1 / std::sqrt(800 * l6), "per-step");
  // Reference values quoted to 5 significant figures.
  if (std::abs(ComposeAdvanced(0.1, 0.0, 100, 1e-6).epsilon - 6.3082) > 5e-5) ++mismatches;
  if (std::abs(PerStepEpsilon(1.0, 1e-6, 100) - 0.009512) > 5e-7) ++mismatches;
  check(NrLaplaceSigma(1000, 2, 0.001, 1.0, 1e-6, 50),
        0.001 * std::sqrt(8.0 * 1000 * 2 * 50 * l6), "sigma");
  check(MedianAccuracy(4, 2, 2, 1.0 / 3, 5000, 1e-3, 0.05, 9),
        16 * (1.0 / 3) / 5000 * std::sqrt(4 * std::log(2.0)) * std::log(2 * 4 * 2 * 9 * 2 / 0.05) *
            std::log(4000.0),
        "alpha_MM");
  check(PredictedAlphaLaplace(200, 2, 1.0 / 199, 1.0, 1e-6, 0.05, 99),
        3 * (std::sqrt(2 * std::log(2.0) / 99) +
             (1.0 / 199) * 2 * std::sqrt(192 * 200 * l6 * std::log(4 * 200 * 2 / 0.05))),
        "predicted alpha (laplace)");
  const double amm = 16 * (1.0 / 3) / 5000 * std::sqrt(4 * std::log(2.0)) *
                     std::log(2 * 4 * 2 * 9 * 2 / 0.05) * std::log(4000.0);
  check(PredictedAlphaMedian(4, 2, 2, 1.0 / 3, 5000, 1e-3, 0.05, 9),
        3 * (std::sqrt(2 * 2 * std::log(2.0) / 9) + 2 * amm), "predicted alpha (median)");
  o.Require(mismatches == 0, "formula mismatch");

  // The bounds calculator's scaling row at gamma = 1/n.
  const size_t n = 1000000;
  const OptimizedEta a = OptimizeEtaLaplace(n, 2, 1.0 / n, 1e-6, 0.05);
  const OptimizedEta b = OptimizeEtaLaplace(2 * n, 2, 1.0 / (2 * n), 1e-6, 0.05);
  const double ratio = a.eta / b.eta;
  const double rel = std::abs(ratio / std::pow(2.0, 0.25) - 1.0);
  o.Require(rel <= 0.01, "eta(n)/eta(2n) not within 1% of 2^(1/4)");
  o.detail << "6 formulas to 6 significant figures, 2 reference values, " << mismatches << " mismatches; eta(n)/eta(2n) at n="
           << n << " = " << ratio << " vs 2^(1/4) = " << std::pow(2.0, 0.25) << " (rel "
           << rel << ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
  }
  const std::function<Outcome()> criteria[] = {Criterion1, Criterion2, Criterion3, Criterion4,
                                               Criterion5, Criterion6, Criterion7, Criterion8,
                                               Criterion9, Criterion10};
  bool all = true;
  for (int c = 1; c <= 10; ++c) {
    if (only != 0 && c != only) continue;
    Outcome o;
    try {
      o = criteria[c - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("criterion %d: %s: %s\n", c, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
