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

#include "privcorr/noregret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace privcorr {
namespace {

constexpr double kStationaryTolerance = 1e-10;
constexpr double kDamping = 1e-8;

void CheckLossRow(std::span<const double> loss, size_t k) {
  Require(loss.size() == k, "loss vector length differs from the action count");
  for (double l : loss) {
    Require(std::isfinite(l) && l >= 0.0 && l <= 1.0,
            "learner losses must lie in [0, 1]");
  }
}

void CheckShapes(const PlaySequence& seq, const LossMatrix& losses) {
  Require(!seq.states.empty(), "play sequence is empty");
  Require(seq.rounds() == losses.size(),
          "play sequence must hold one more state than loss rows");
  Require(!losses.empty(), "loss matrix has no rows");
  const size_t k = seq.k();
  for (const LossVector& row : losses) {
    Require(row.size() == k, "loss row length differs from the action count");
  }
}

// GTH elimination on the row-stochastic transition matrix a (n x n).
std::vector<double> Gth(std::vector<double> a, size_t n, bool* zero_pivot) {
  auto at = [&](size_t i, size_t j) -> double& { return a[i * n + j]; };
  for (size_t m = n - 1; m >= 1; --m) {
    double s = 0.0;
    for (size_t j = 0; j < m; ++j) s += at(m, j);
    if (!(s > 0.0)) {
      *zero_pivot = true;
      return {};
    }
    for (size_t i = 0; i < m; ++i) at(i, m) /= s;
    for (size_t i = 0; i < m; ++i) {
      const double aim = at(i, m);
      if (aim == 0.0) continue;
      for (size_t j = 0; j < m; ++j) at(i, j) += aim * at(m, j);
    }
  }
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  for (size_t m = 1; m < n; ++m) {
    double v = 0.0;
    for (size_t i = 0; i < m; ++i) v += x[i] * at(i, m);
    x[m] = v;
  }
  double total = 0.0;
  for (double v : x) total += v;
  for (double& v : x) v /= total;
  return x;
}

// States reachable from `from` along positive transitions, including itself.
std::vector<bool> Reachable(std::span<const double> a, size_t n, size_t from) {
  std::vector<bool> seen(n, false);
  std::vector<size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const size_t j = stack.back();
    stack.pop_back();
    for (size_t i = 0; i < n; ++i) {
      if (!seen[i] && a[j * n + i] > 0.0) {
        seen[i] = true;
        stack.push_back(i);
      }
    }
  }
  return seen;
}

// Stationary distribution supported on the first closed communicating class.
std::vector<double> ClosedClassStationary(std::span<const double> a, size_t n,
                                          bool* zero_pivot) {
  std::vector<std::vector<bool>> reach(n);
  for (size_t s = 0; s < n; ++s) reach[s] = Reachable(a, n, s);
  for (size_t s = 0; s < n; ++s) {
    bool closed = true;
    for (size_t t = 0; t < n && closed; ++t) {
      if (reach[s][t] && !reach[t][s]) closed = false;
    }
    if (!closed) continue;
    std::vector<size_t> members;
    for (size_t t = 0; t < n; ++t) {
      if (reach[s][t]) members.push_back(t);
    }
    const size_t m = members.size();
    std::vector<double> x(n, 0.0);
    if (m == 1) {
      x[members[0]] = 1.0;
      return x;
    }
    std::vector<double> sub(m * m);
    for (size_t r = 0; r < m; ++r) {
      for (size_t c = 0; c < m; ++c) sub[r * m + c] = a[members[r] * n + members[c]];
    }
    const std::vector<double> y = Gth(std::move(sub), m, zero_pivot);
    if (*zero_pivot) return {};
    for (size_t r = 0; r < m; ++r) x[members[r]] = y[r];
    return x;
  }
  *zero_pivot = true;
  return {};
}

double Residual(std::span<const double> a, size_t n, std::span<const double> x) {
  double r = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (size_t j = 0; j < n; ++j) v += x[j] * a[j * n + i];
    r += std::abs(v - x[i]);
  }
  return r;
}

}  // namespace

DeviationMap::DeviationMap(std::vector<uint32_t> map) : map_(std::move(map)) {
  for (uint32_t target : map_) {
    Require(target < map_.size(), "deviation target out of range");
  }
}

DeviationMap DeviationMap::Identity(size_t k) {
  std::vector<uint32_t> map(k);
  for (size_t j = 0; j < k; ++j) map[j] = static_cast<uint32_t>(j);
  return DeviationMap(std::move(map));
}

DeviationMap DeviationMap::Constant(size_t k, uint32_t target) {
  return DeviationMap(std::vector<uint32_t>(k, target));
}

MixedStrategy DeviationMap::Apply(const MixedStrategy& pi) const {
  Require(pi.size() == map_.size(), "deviation and strategy sizes differ");
  std::vector<double> out(map_.size(), 0.0);
  for (size_t j = 0; j < map_.size(); ++j) out[map_[j]] += pi[j];
  return MixedStrategy(std::move(out));
}

const char* ToString(DeviationFamily family) {
  return family == DeviationFamily::kFixed ? "fixed" : "swap";
}

const char* ToString(LearnerKind kind) {
  return kind == LearnerKind::kFixed ? "fixed" : "swap";
}

double HedgeRate(size_t k, uint64_t T) {
  Require(k >= 1 && T >= 1, "hedge rate needs k >= 1 and T >= 1");
  if (k == 1) return 1.0;
  return std::sqrt(2.0 * std::log(static_cast<double>(k)) /
                   static_cast<double>(T));
}

MixedStrategy HedgeStep(const MixedStrategy& state, std::span<const double> loss,
                        double eta) {
  Require(eta > 0.0 && std::isfinite(eta), "hedge learning rate must be positive");
  CheckLossRow(loss, state.size());
  std::vector<double> w(state.size());
  double total = 0.0;
  for (size_t j = 0; j < w.size(); ++j) {
    w[j] = state[j] * std::exp(-eta * loss[j]);
    total += w[j];
  }
  if (!(total > 0.0)) throw NumericError("hedge weights vanished");
  for (double& x : w) x /= total;
  return MixedStrategy(std::move(w));
}

SwapLearnerState SwapLearnerState::Start(size_t k, double eta) {
  SwapLearnerState s;
  s.eta = eta;
  s.experts.assign(k, MixedStrategy::Uniform(k));
  s.played = MixedStrategy::Uniform(k);
  return s;
}

StationaryResult StationaryDistribution(std::span<const MixedStrategy> columns) {
  const size_t n = columns.size();
  Require(n >= 1, "stationary distribution needs at least one state");
  // Row-stochastic transition matrix: from j to i with probability column j.
  std::vector<double> a(n * n);
  for (size_t j = 0; j < n; ++j) {
    Require(columns[j].size() == n, "matrix must be square");
    for (size_t i = 0; i < n; ++i) a[j * n + i] = columns[j][i];
  }
  StationaryResult out;
  if (n == 1) {
    out.distribution = MixedStrategy::Uniform(1);
    return out;
  }
  bool zero_pivot = false;
  std::vector<double> x = Gth(a, n, &zero_pivot);
  if (zero_pivot) {
    // Reducible chain: solve on a closed class.
    zero_pivot = false;
    x = ClosedClassStationary(a, n, &zero_pivot);
  }
  if (zero_pivot) {
    out.damped = true;
    const double u = 1.0 / static_cast<double>(n);
    for (double& v : a) v = (1.0 - kDamping) * v + kDamping * u;
    zero_pivot = false;
    x = Gth(a, n, &zero_pivot);
    if (zero_pivot) throw NumericError("stationary solver hit a zero pivot");
  }
  out.residual = Residual(a, n, x);
  if (!(out.residual <= kStationaryTolerance)) {
    std::ostringstream msg;
    msg << "stationary distribution residual " << out.residual
        << " exceeds " << kStationaryTolerance;
    throw NumericError(msg.str());
  }
  out.distribution = MixedStrategy(std::move(x));
  return out;
}

std::pair<SwapLearnerState, MixedStrategy> SwapStep(
    const SwapLearnerState& state, std::span<const double> loss) {
  const size_t k = state.experts.size();
  CheckLossRow(loss, k);
  SwapLearnerState next;
  next.eta = state.eta;
  next.experts.reserve(k);
  std::vector<double> scaled(k);
  for (size_t j = 0; j < k; ++j) {
    const double q = state.played[j];
    for (size_t a = 0; a < k; ++a) scaled[a] = q * loss[a];
    next.experts.push_back(HedgeStep(state.experts[j], scaled, state.eta));
  }
  next.played = StationaryDistribution(next.experts).distribution;
  MixedStrategy played = next.played;
  return {std::move(next), std::move(played)};
}

Learner::Learner(LearnerKind kind, size_t k, uint64_t horizon)
    : kind_(kind),
      eta_(HedgeRate(k, horizon)),
      current_(MixedStrategy::Uniform(k)) {
  if (kind_ == LearnerKind::kSwap) swap_ = SwapLearnerState::Start(k, eta_);
}

void Learner::Observe(std::span<const double> loss) {
  if (kind_ == LearnerKind::kFixed) {
    current_ = HedgeStep(current_, loss, eta_);
  } else {
    auto [next, played] = SwapStep(swap_, loss);
    swap_ = std::move(next);
    current_ = std::move(played);
  }
}

PlaySequence RunLearner(LearnerKind kind, const LossMatrix& losses) {
  Require(!losses.empty(), "loss matrix has no rows");
  const size_t k = losses.front().size();
  Learner learner(kind, k, losses.size());
  PlaySequence seq;
  seq.states.reserve(losses.size() + 1);
  seq.states.push_back(learner.current());
  for (const LossVector& row : losses) {
    learner.Observe(row);
    seq.states.push_back(learner.current());
  }
  return seq;
}

std::pair<PlaySequence, LossMatrix> RunLearnerAdaptive(
    LearnerKind kind, size_t k, uint64_t T, const AdaptiveLoss& adversary) {
  Learner learner(kind, k, T);
  PlaySequence seq;
  LossMatrix losses;
  seq.states.push_back(learner.current());
  for (uint64_t t = 1; t <= T; ++t) {
    losses.push_back(adversary(t, learner.current()));
    learner.Observe(losses.back());
    seq.states.push_back(learner.current());
  }
  return {std::move(seq), std::move(losses)};
}

double Lambda(const PlaySequence& seq, const LossMatrix& losses) {
  return LambdaDeviated(seq, losses, DeviationMap::Identity(seq.k()));
}

double LambdaDeviated(const PlaySequence& seq, const LossMatrix& losses,
                      const DeviationMap& f) {
  CheckShapes(seq, losses);
  Require(f.size() == seq.k(), "deviation size differs from the action count");
  double total = 0.0;
  for (size_t t = 0; t < losses.size(); ++t) {
    const MixedStrategy& pi = seq.states[t];
    for (size_t j = 0; j < pi.size(); ++j) total += pi[j] * losses[t][f(j)];
  }
  return total / static_cast<double>(losses.size());
}

double DeviationGain(const PlaySequence& seq, const LossMatrix& losses,
                     const DeviationMap& f) {
  return Lambda(seq, losses) - LambdaDeviated(seq, losses, f);
}

RegretResult Regret(const PlaySequence& seq, const LossMatrix& losses,
                    DeviationFamily family) {
  CheckShapes(seq, losses);
  RegretTracker tracker(seq.k());
  for (size_t t = 0; t < losses.size(); ++t) {
    tracker.Add(seq.states[t], losses[t]);
  }
  const size_t k = seq.k();
  // Recompute the argmin so the caller gets the optimal map.
  std::vector<double> m(k * k, 0.0);
  for (size_t t = 0; t < losses.size(); ++t) {
    for (size_t j = 0; j < k; ++j) {
      const double p = seq.states[t][j];
      if (p == 0.0) continue;
      for (size_t a = 0; a < k; ++a) m[j * k + a] += p * losses[t][a];
    }
  }
  RegretResult out;
  if (family == DeviationFamily::kFixed) {
    uint32_t best = 0;
    double best_loss = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < k; ++a) {
      double col = 0.0;
      for (size_t j = 0; j < k; ++j) col += m[j * k + a];
      if (col < best_loss) {
        best_loss = col;
        best = static_cast<uint32_t>(a);
      }
    }
    out.best = DeviationMap::Constant(k, best);
    out.value = tracker.rho_fixed();
  } else {
    std::vector<uint32_t> map(k);
    for (size_t j = 0; j < k; ++j) {
      uint32_t arg = static_cast<uint32_t>(j);
      double low = m[j * k + j];
      for (size_t a = 0; a < k; ++a) {
        if (m[j * k + a] < low) {
          low = m[j * k + a];
          arg = static_cast<uint32_t>(a);
        }
      }
      map[j] = arg;
    }
    out.best = DeviationMap(std::move(map));
    out.value = tracker.rho_swap();
  }
  return out;
}

LossVector RescaleLoss(std::span<const double> loss) {
  LossVector out(loss.size());
  for (size_t j = 0; j < loss.size(); ++j) {
    Require(loss[j] >= 0.0 && loss[j] <= 1.0,
            "losses to rescale must lie in [0, 1]");
    out[j] = (loss[j] + 1.0) / 3.0;
  }
  return out;
}

LossMatrix RescaleLosses(const LossMatrix& losses) {
  LossMatrix out;
  out.reserve(losses.size());
  for (const LossVector& row : losses) out.push_back(RescaleLoss(row));
  return out;
}

LossMatrix UnscaleLosses(const LossMatrix& losses) {
  LossMatrix out = losses;
  for (LossVector& row : out) {
    for (double& l : row) l = 3.0 * l - 1.0;
  }
  return out;
}

NoiseCheck NoiseToleranceCheck(const PlaySequence& seq, const LossMatrix& losses,
                               const NoiseMatrix& noise, DeviationFamily family,
                               double beta) {
  CheckShapes(seq, losses);
  Require(noise.rows.size() == losses.size(),
          "noise matrix and loss matrix differ in rows");
  LossMatrix noisy = losses;
  for (size_t t = 0; t < noisy.size(); ++t) {
    Require(noise.rows[t].size() == noisy[t].size(),
            "noise row length differs from the action count");
    for (size_t j = 0; j < noisy[t].size(); ++j) noisy[t][j] += noise.rows[t][j];
  }
  NoiseCheck out;
  out.gap = Regret(seq, losses, family).value - Regret(seq, noisy, family).value;
  if (noise.kind == NoiseKind::kBounded) {
    out.bound = 2.0 * noise.scale;
  } else {
    Require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    const double k = static_cast<double>(seq.k());
    const double T = static_cast<double>(losses.size());
    const double spread = family == DeviationFamily::kFixed ? 1.0 : k;
    out.bound =
        noise.scale * std::sqrt(24.0 * spread * std::log(4.0 * k / beta) / T);
  }
  return out;
}

RegretTracker::RegretTracker(size_t k) : k_(k), weighted_(k * k, 0.0) {
  Require(k >= 1, "tracker needs k >= 1");
}

void RegretTracker::Add(const MixedStrategy& played,
                        std::span<const double> loss) {
  Require(played.size() == k_ && loss.size() == k_,
          "tracker input has the wrong length");
  for (size_t j = 0; j < k_; ++j) {
    const double p = played[j];
    if (p == 0.0) continue;
    lambda_sum_ += p * loss[j];
    for (size_t a = 0; a < k_; ++a) weighted_[j * k_ + a] += p * loss[a];
  }
  ++rounds_;
}

double RegretTracker::lambda() const {
  return rounds_ == 0 ? 0.0 : lambda_sum_ / static_cast<double>(rounds_);
}

double RegretTracker::rho_fixed() const {
  if (rounds_ == 0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < k_; ++a) {
    double col = 0.0;
    for (size_t j = 0; j < k_; ++j) col += weighted_[j * k_ + a];
    best = std::min(best, col);
  }
  return (lambda_sum_ - best) / static_cast<double>(rounds_);
}

double RegretTracker::rho_swap() const {
  if (rounds_ == 0) return 0.0;
  double best = 0.0;
  for (size_t j = 0; j < k_; ++j) {
    double low = weighted_[j * k_ + j];
    for (size_t a = 0; a < k_; ++a) low = std::min(low, weighted_[j * k_ + a]);
    best += low;
  }
  return (lambda_sum_ - best) / static_cast<double>(rounds_);
}

}  // namespace privcorr
