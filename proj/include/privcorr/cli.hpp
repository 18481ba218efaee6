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

// Subcommands of the privcorr command-line tool.

#ifndef PRIVCORR_CLI_HPP_
#define PRIVCORR_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "privcorr/io.hpp"
#include "privcorr/mech_laplace.hpp"

namespace privcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitMechanismFailure = 3;

struct RunConfig {
  std::string game_path;
  // Resolved game description; loaded from game_path when absent.
  std::optional<GameSpec> game;
  std::string mechanism = "laplace";
  double epsilon = 1.0;
  double delta = 1e-6;
  double beta = 0.05;
  std::string learner = "swap";
  // "auto" or a round count.
  std::string rounds = "auto";
  uint64_t t_cap = kDefaultRoundCap;
  uint64_t seed = 0;
  // "auto", "exact", "anonymous" or "monte_carlo".
  std::string loss_mode = "auto";
  uint64_t loss_samples = 2000;
  std::optional<std::vector<std::string>> type_universe;
  // "auto", "exact" or "monte_carlo".
  std::string verify_mode = "auto";
  uint64_t verify_samples = 20000;
  // Not part of the embedded configuration.
  std::string out_dir;
};

Json ToJson(const RunConfig& config);
// Reads the object written by ToJson (or a manifest embedding it).
RunConfig RunConfigFromJson(const Json& j);

MechanismParams ResolveParams(const RunConfig& config, const GameInstance& game);
VerifyMode ResolveVerifyMode(const RunConfig& config, const GameInstance& game);

int CmdRun(RunConfig config, std::ostream& out, std::ostream& err);

struct VerifyConfig {
  std::string dist_path;
  std::string game_path;
  std::string mode = "exact";
  uint64_t samples = 20000;
  uint64_t seed = 0;
  std::string out_path;
};

int CmdVerify(const VerifyConfig& config, std::ostream& out, std::ostream& err);

struct AuditCliConfig {
  std::string game_family = "beach";
  std::string game_path;
  size_t n = 100;
  std::string prior = "bernoulli:0.5";
  std::string mechanism = "laplace";
  double epsilon = 1.0;
  double delta = 1e-6;
  double beta = 0.05;
  std::string learner = "swap";
  std::string rounds = "auto";
  uint64_t t_cap = kDefaultRoundCap;
  uint64_t trials = 200;
  uint64_t seed = 0;
  std::string out_path;
};

int CmdAudit(const AuditCliConfig& config, std::ostream& out, std::ostream& err);

struct LowerBoundConfig {
  std::string instance_path;
  std::optional<double> alpha;
  bool planted = false;
  double epsilon = 1.0;
  double delta = 1e-6;
  double beta = 0.05;
  std::string rounds = "auto";
  uint64_t t_cap = kDefaultRoundCap;
  uint64_t seed = 0;
  std::string out_path;
};

int CmdLowerBound(const LowerBoundConfig& config, std::ostream& out,
                  std::ostream& err);

struct BoundsConfig {
  size_t n = 100;
  size_t k = 2;
  // Defaults to 1 / n.
  std::optional<double> gamma;
  double epsilon = 1.0;
  double delta = 1e-6;
  double beta = 0.05;
  size_t universe = 2;
  std::optional<uint64_t> rounds;
  uint64_t t_cap = kDefaultRoundCap;
  bool json = false;
};

Json BoundsReport(const BoundsConfig& config);
int CmdBounds(const BoundsConfig& config, std::ostream& out, std::ostream& err);

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace privcorr::cli

#endif  // PRIVCORR_CLI_HPP_
