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

#include "privcorr/privacy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace privcorr {
namespace {

void CheckUnit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw ContractError(std::string(name) + " must lie in (0, 1)");
  }
}

// Largest T in [1, cap] with ok(T), given ok(1) and monotone ok.
template <typename Ok>
uint64_t LargestFeasible(uint64_t cap, Ok ok, bool* capped) {
  uint64_t lo = 1;
  while (lo < cap) {
    const uint64_t next = lo > cap / 2 ? cap : lo * 2;
    if (!ok(next)) break;
    lo = next;
  }
  if (lo == cap) {
    *capped = true;
    return lo;
  }
  uint64_t hi = std::min(cap, lo * 2);
  if (ok(hi)) {
    *capped = hi == cap;
    return hi;
  }
  // ok(lo), !ok(hi).
  while (hi - lo > 1) {
    const uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  *capped = false;
  return lo;
}

}  // namespace

double LaplaceSample(double scale, Rng& rng) {
  Require(scale >= 0.0 && std::isfinite(scale),
          "laplace scale must be finite and non-negative");
  const double u = rng.Uniform();
  if (scale == 0.0) return 0.0;
  if (u < 0.5) return scale * std::log(2.0 * u);
  return -scale * std::log(2.0 * (1.0 - u));
}

Composition ComposeAdvanced(double eps0, double delta0, uint64_t T,
                            double delta_prime) {
  Require(eps0 >= 0.0 && delta0 >= 0.0, "composition inputs must be >= 0");
  Require(T >= 1, "composition needs T >= 1");
  CheckUnit(delta_prime, "delta'");
  const double t = static_cast<double>(T);
  Composition out;
  out.epsilon = eps0 * std::sqrt(2.0 * t * std::log(1.0 / delta_prime)) +
                t * eps0 * std::expm1(eps0);
  out.delta = t * delta0 + delta_prime;
  return out;
}

double PerStepEpsilon(double epsilon, double delta, uint64_t T) {
  Require(epsilon >= 0.0, "epsilon must be non-negative");
  CheckUnit(delta, "delta");
  Require(T >= 1, "T must be >= 1");
  return epsilon /
         std::sqrt(8.0 * static_cast<double>(T) * std::log(1.0 / delta));
}

double ConcentrationBound(double sigma, uint64_t T, double alpha) {
  Require(sigma > 0.0, "sigma must be positive");
  Require(alpha > 0.0, "alpha must be positive");
  Require(alpha <= sigma, "concentration bound needs alpha <= sigma");
  return std::exp(-alpha * alpha * static_cast<double>(T) /
                  (6.0 * sigma * sigma));
}

std::string Infeasibility::Message() const {
  std::ostringstream msg;
  msg.precision(6);
  msg << constraint << " violated at T=" << T << ": lhs " << lhs << " > rhs "
      << rhs;
  if (!reason.empty()) msg << " (" << reason << ")";
  return msg.str();
}

double NrLaplaceSigma(size_t n, size_t k, double gamma, double epsilon,
                      double delta, uint64_t T) {
  Require(epsilon > 0.0, "epsilon must be positive");
  CheckUnit(delta, "delta");
  const double steps = static_cast<double>(n) * static_cast<double>(k) *
                       static_cast<double>(T);
  return gamma / epsilon * std::sqrt(8.0 * steps * std::log(1.0 / delta));
}

ConstraintValue NrLaplaceConstraint(size_t n, size_t k, double gamma,
                                    double epsilon, double delta, double beta,
                                    uint64_t T) {
  CheckUnit(beta, "beta");
  const double steps = static_cast<double>(n) * static_cast<double>(k) *
                       static_cast<double>(T);
  return {NrLaplaceSigma(n, k, gamma, epsilon, delta, T),
          1.0 / (6.0 * std::log(4.0 * steps / beta))};
}

NoisePlan NoisePlanAt(size_t n, size_t k, double gamma, double epsilon,
                      double delta, uint64_t T) {
  Require(T >= 1, "T must be >= 1");
  NoisePlan plan;
  plan.T = T;
  plan.sigma = NrLaplaceSigma(n, k, gamma, epsilon, delta, T);
  plan.steps = static_cast<uint64_t>(n) * k * T;
  plan.per_step_epsilon = PerStepEpsilon(epsilon, delta, plan.steps);
  return plan;
}

PlanResult PlanForNrLaplace(size_t n, size_t k, double gamma, double epsilon,
                            double delta, double beta, uint64_t t_cap) {
  Require(n >= 1 && k >= 1, "n and k must be positive");
  Require(gamma >= 0.0, "gamma must be non-negative");
  CheckUnit(delta, "delta");
  CheckUnit(beta, "beta");
  Require(t_cap >= 1, "round cap must be >= 1");
  const char* kName = "sigma <= 1/(6 ln(4nkT/beta))";
  if (!(epsilon > 0.0)) {
    return Infeasibility{kName, 1, std::numeric_limits<double>::infinity(),
                         0.0, "epsilon must be positive"};
  }
  auto ok = [&](uint64_t T) {
    return NrLaplaceConstraint(n, k, gamma, epsilon, delta, beta, T).ok();
  };
  if (!ok(1)) {
    const ConstraintValue c =
        NrLaplaceConstraint(n, k, gamma, epsilon, delta, beta, 1);
    return Infeasibility{kName, 1, c.lhs, c.rhs, "even T=1 violates it"};
  }
  bool capped = false;
  const uint64_t T = gamma == 0.0 ? (capped = true, t_cap)
                                  : LargestFeasible(t_cap, ok, &capped);
  NoisePlan plan = NoisePlanAt(n, k, gamma, epsilon, delta, T);
  plan.capped = capped;
  return plan;
}

double LaplaceNoiseCoefficient(size_t n, size_t k, double gamma, double delta,
                               double beta) {
  CheckUnit(delta, "delta");
  CheckUnit(beta, "beta");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return 3.0 * gamma * kd *
         std::sqrt(192.0 * nd * std::log(1.0 / delta) *
                   std::log(4.0 * nd * kd / beta));
}

double PredictedAlphaLaplace(size_t n, size_t k, double gamma, double epsilon,
                             double delta, double beta, uint64_t T) {
  Require(epsilon > 0.0, "epsilon must be positive");
  Require(T >= 1, "T must be >= 1");
  const double learn = std::sqrt(2.0 * std::log(static_cast<double>(k)) /
                                 static_cast<double>(T));
  return 3.0 * learn + LaplaceNoiseCoefficient(n, k, gamma, delta, beta) / epsilon;
}

OptimizedEta OptimizeEtaLaplace(size_t n, size_t k, double gamma, double delta,
                                double beta) {
  const double a = LaplaceNoiseCoefficient(n, k, gamma, delta, beta);
  OptimizedEta out;
  out.epsilon = std::sqrt(a);
  out.alpha = a / out.epsilon;
  out.eta = out.epsilon + delta + out.alpha;
  return out;
}

double MedianAccuracy(size_t n, size_t k, size_t U, double gamma,
                      double epsilon, double delta, double beta, uint64_t T) {
  Require(epsilon > 0.0, "epsilon must be positive");
  CheckUnit(delta, "delta");
  CheckUnit(beta, "beta");
  Require(U >= 1 && T >= 1, "U and T must be >= 1");
  const double R = static_cast<double>(n) * static_cast<double>(k) *
                   static_cast<double>(T) * static_cast<double>(U);
  return 16.0 * gamma / epsilon *
         std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(U))) *
         std::log(2.0 * R / beta) * std::log(4.0 / delta);
}

ConstraintValue NrMedianConstraint(size_t n, size_t k, size_t U, double gamma,
                                   double epsilon, double delta, double beta,
                                   uint64_t T) {
  return {MedianAccuracy(n, k, U, gamma, epsilon, delta, beta, T), 1.0 / 6.0};
}

uint64_t MedianRoundTarget(size_t n, size_t k, double gamma) {
  if (!(gamma > 0.0)) return kDefaultRoundCap;
  const double t = static_cast<double>(k) * static_cast<double>(k) /
                   (gamma * gamma * static_cast<double>(n));
  if (t >= static_cast<double>(kDefaultRoundCap)) return kDefaultRoundCap;
  return std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(t)));
}

MedianPlanResult PlanForNrMedian(size_t n, size_t k, size_t U, double gamma,
                                 double epsilon, double delta, double beta,
                                 uint64_t t_cap) {
  Require(n >= 1 && k >= 1 && U >= 1, "n, k, U must be positive");
  Require(gamma >= 0.0, "gamma must be non-negative");
  CheckUnit(delta, "delta");
  CheckUnit(beta, "beta");
  const char* kName = "alpha_MM <= 1/6";
  if (!(epsilon > 0.0)) {
    return Infeasibility{kName, 1, std::numeric_limits<double>::infinity(),
                         1.0 / 6.0, "epsilon must be positive"};
  }
  if (t_cap == 0) t_cap = MedianRoundTarget(n, k, gamma);
  auto ok = [&](uint64_t T) {
    return NrMedianConstraint(n, k, U, gamma, epsilon, delta, beta, T).ok();
  };
  if (!ok(1)) {
    const ConstraintValue c =
        NrMedianConstraint(n, k, U, gamma, epsilon, delta, beta, 1);
    return Infeasibility{kName, 1, c.lhs, c.rhs, "even T=1 violates it"};
  }
  MedianPlan plan;
  plan.T = LargestFeasible(t_cap, ok, &plan.capped);
  plan.alpha_mm = MedianAccuracy(n, k, U, gamma, epsilon, delta, beta, plan.T);
  return plan;
}

double PredictedAlphaMedian(size_t n, size_t k, size_t U, double gamma,
                            double epsilon, double delta, double beta,
                            uint64_t T) {
  const double kd = static_cast<double>(k);
  const double learn =
      std::sqrt(2.0 * kd * std::log(kd) / static_cast<double>(T));
  return 3.0 *
         (learn + 2.0 * MedianAccuracy(n, k, U, gamma, epsilon, delta, beta, T));
}

uint64_t MedianHardQueryCap(size_t n, size_t U) {
  Require(U >= 1, "U must be >= 1");
  return static_cast<uint64_t>(std::ceil(
             20.0 * static_cast<double>(n) * std::log(static_cast<double>(U)))) +
         1;
}

BudgetLedger::BudgetLedger(double per_step_epsilon, double target_epsilon,
                           double target_delta)
    : per_step_epsilon_(per_step_epsilon),
      target_epsilon_(target_epsilon),
      target_delta_(target_delta) {
  CheckUnit(target_delta_, "delta");
}

Composition BudgetLedger::Certified() const {
  if (draws_ == 0) return {0.0, 0.0};
  return {per_step_epsilon_ * std::sqrt(8.0 * static_cast<double>(draws_) *
                                        std::log(1.0 / target_delta_)),
          target_delta_};
}

Composition BudgetLedger::Advanced() const {
  if (draws_ == 0) return {0.0, 0.0};
  return ComposeAdvanced(per_step_epsilon_, 0.0, draws_, target_delta_);
}

nlohmann::ordered_json BudgetLedger::ToJson() const {
  nlohmann::ordered_json j;
  j["draws"] = draws_;
  j["per_step_epsilon"] = per_step_epsilon_;
  j["target_epsilon"] = target_epsilon_;
  j["target_delta"] = target_delta_;
  const Composition c = Certified();
  j["certified_epsilon"] = c.epsilon;
  j["certified_delta"] = c.delta;
  const Composition a = Advanced();
  j["advanced_epsilon"] = a.epsilon;
  j["advanced_delta"] = a.delta;
  return j;
}

}  // namespace privcorr
