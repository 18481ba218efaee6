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

// JSON / CSV serialization of games, instances, distributions, certificates
// and run artifacts.

#ifndef PRIVCORR_IO_HPP_
#define PRIVCORR_IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "privcorr/equilibrium.hpp"
#include "privcorr/game_core.hpp"
#include "privcorr/game_suite.hpp"
#include "privcorr/mech_laplace.hpp"

namespace privcorr {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// git-describe style identifier of this build.
const char* BuildId();

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);
Json LoadJson(const std::string& path);
// Two-space indentation and a trailing newline.
std::string Dump(const Json& j);

// Keys in the order family, n, k, gamma, types, params, null_action.
Json ToJson(const GameSpec& spec);
GameSpec GameSpecFromJson(const Json& j);
GameSpec LoadGameSpec(const std::string& path);
std::string SerializeGameSpec(const GameSpec& spec);

// Queries are written 1-indexed.
Json ToJson(const SubsetSumInstance& instance);
SubsetSumInstance InstanceFromJson(const Json& j);

Json ToJson(const CorrelatedDistribution& dist);
CorrelatedDistribution DistributionFromJson(const Json& j);

Json ToJson(const EquilibriumCertificate& cert);

Json ToJson(const std::vector<DecodedAnswer>& answers,
            const SubsetSumInstance& instance);

// Columns round, player, lambda, rho_fixed, rho_swap, clamped_entries,
// computed cumulatively on the exact losses.
std::string RegretTraceCsv(const MechanismRun& run);

// Shortest round-trip decimal form.
std::string FormatDouble(double x);

}  // namespace privcorr

#endif  // PRIVCORR_IO_HPP_
