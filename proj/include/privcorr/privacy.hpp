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

// Laplace noise, composition accounting, and round-count planning for the
// private no-regret mechanisms. All logarithms are natural.

#ifndef PRIVCORR_PRIVACY_HPP_
#define PRIVCORR_PRIVACY_HPP_

#include <cstdint>
#include <string>
#include <variant>

#include "json.hpp"
#include "privcorr/common.hpp"

namespace privcorr {

enum class PrivacyKind { kStandard, kJoint };

struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 1e-6;
  PrivacyKind kind = PrivacyKind::kJoint;
};

// Inverse-CDF draw from Lap(scale); scale 0 returns 0.
double LaplaceSample(double scale, Rng& rng);

struct Composition {
  double epsilon = 0.0;
  double delta = 0.0;
};

// (eps0 sqrt(2T ln(1/delta')) + T eps0 (e^eps0 - 1), T delta0 + delta').
Composition ComposeAdvanced(double eps0, double delta0, uint64_t T,
                            double delta_prime);

// eps / sqrt(8 T ln(1/delta)).
double PerStepEpsilon(double epsilon, double delta, uint64_t T);

// exp(-alpha^2 T / (6 sigma^2)); requires 0 < alpha <= sigma.
double ConcentrationBound(double sigma, uint64_t T, double alpha);

struct ConstraintValue {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok() const { return lhs <= rhs; }
};

struct NoisePlan {
  uint64_t T = 0;
  double sigma = 0.0;
  double per_step_epsilon = 0.0;
  // Number of noise draws, n k T.
  uint64_t steps = 0;
  // True when the planner stopped at the caller's cap.
  bool capped = false;
};

struct Infeasibility {
  std::string constraint;
  uint64_t T = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string reason;

  std::string Message() const;
};

using PlanResult = std::variant<NoisePlan, Infeasibility>;

inline constexpr uint64_t kDefaultRoundCap = uint64_t{1} << 20;

// sigma = gamma / eps * sqrt(8 n k T ln(1/delta)).
double NrLaplaceSigma(size_t n, size_t k, double gamma, double epsilon,
                      double delta, uint64_t T);

// sigma(T) <= 1 / (6 ln(4 n k T / beta)).
ConstraintValue NrLaplaceConstraint(size_t n, size_t k, double gamma,
                                    double epsilon, double delta, double beta,
                                    uint64_t T);

// Largest T <= t_cap satisfying the constraint (doubling, then bisection).
PlanResult PlanForNrLaplace(size_t n, size_t k, double gamma, double epsilon,
                            double delta, double beta,
                            uint64_t t_cap = kDefaultRoundCap);

// Plan for an explicit T; infeasible if the constraint fails.
NoisePlan NoisePlanAt(size_t n, size_t k, double gamma, double epsilon,
                      double delta, uint64_t T);

// 3 (sqrt(2 ln k / T) + gamma k sqrt(192 n ln(1/delta) ln(4nk/beta)) / eps).
// c such that the noise part of the predicted alpha equals c / epsilon.
double LaplaceNoiseCoefficient(size_t n, size_t k, double gamma, double delta,
                               double beta);

double PredictedAlphaLaplace(size_t n, size_t k, double gamma, double epsilon,
                             double delta, double beta, uint64_t T);

struct OptimizedEta {
  double epsilon = 0.0;
  double alpha = 0.0;
  double eta = 0.0;
};

// Minimizes epsilon + delta + c / epsilon, the learning term taken to zero.
OptimizedEta OptimizeEtaLaplace(size_t n, size_t k, double gamma, double delta,
                                double beta);

// 16 gamma / eps sqrt(n ln U) ln(2R/beta) ln(4/delta), R = n k T U.
double MedianAccuracy(size_t n, size_t k, size_t U, double gamma,
                      double epsilon, double delta, double beta, uint64_t T);

// MedianAccuracy(T) <= 1/6.
ConstraintValue NrMedianConstraint(size_t n, size_t k, size_t U, double gamma,
                                   double epsilon, double delta, double beta,
                                   uint64_t T);

// round(k^2 / (gamma^2 n)), at least 1.
uint64_t MedianRoundTarget(size_t n, size_t k, double gamma);

struct MedianPlan {
  uint64_t T = 0;
  double alpha_mm = 0.0;
  bool capped = false;
};

using MedianPlanResult = std::variant<MedianPlan, Infeasibility>;

// Largest T <= t_cap meeting the median constraint. A zero cap means
// MedianRoundTarget.
MedianPlanResult PlanForNrMedian(size_t n, size_t k, size_t U, double gamma,
                                 double epsilon, double delta, double beta,
                                 uint64_t t_cap = 0);

// 3 (sqrt(2 k ln k / T) + 2 alpha_MM).
double PredictedAlphaMedian(size_t n, size_t k, size_t U, double gamma,
                            double epsilon, double delta, double beta,
                            uint64_t T);

// Hard-query cap ceil(20 n ln U) + 1.
uint64_t MedianHardQueryCap(size_t n, size_t U);

// Record of the noise draws a mechanism run consumed.
class BudgetLedger {
 public:
  BudgetLedger(double per_step_epsilon, double target_epsilon,
               double target_delta);

  void Record(uint64_t draws = 1) { draws_ += draws; }

  uint64_t draws() const { return draws_; }
  double per_step_epsilon() const { return per_step_epsilon_; }

  // Simplified composition: draws steps at eps0 each are
  // (eps0 sqrt(8 m ln(1/delta)), delta)-private.
  Composition Certified() const;
  // ComposeAdvanced(eps0, 0, draws, delta).
  Composition Advanced() const;

  nlohmann::ordered_json ToJson() const;

 private:
  double per_step_epsilon_;
  double target_epsilon_;
  double target_delta_;
  uint64_t draws_ = 0;
};

}  // namespace privcorr

#endif  // PRIVCORR_PRIVACY_HPP_
