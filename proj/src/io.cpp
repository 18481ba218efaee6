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

#include "privcorr/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#ifndef PRIVCORR_BUILD_ID
#define PRIVCORR_BUILD_ID "unknown"
#endif

namespace privcorr {

const char* BuildId() { return PRIVCORR_BUILD_ID; }

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write " + path);
  out << contents;
  if (!out) throw ContractError("failed writing " + path);
}

Json LoadJson(const std::string& path) {
  try {
    return Json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ContractError(path + ": " + e.what());
  }
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

std::string FormatDouble(double x) { return nlohmann::json(x).dump(); }

Json ToJson(const GameSpec& spec) {
  Json j;
  j["family"] = spec.family;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["gamma"] = spec.gamma;
  j["types"] = spec.types;
  j["params"] = spec.params;
  if (spec.null_action) {
    j["null_action"] = *spec.null_action;
  } else {
    j["null_action"] = nullptr;
  }
  return j;
}

GameSpec GameSpecFromJson(const Json& j) {
  GameSpec spec;
  try {
    spec.family = j.at("family").get<std::string>();
    spec.n = j.at("n").get<size_t>();
    spec.k = j.at("k").get<size_t>();
    spec.gamma = j.at("gamma").get<double>();
    spec.types = j.at("types").get<std::vector<std::string>>();
    spec.params = j.value("params", Json::object());
    if (j.contains("null_action") && !j.at("null_action").is_null()) {
      spec.null_action = j.at("null_action").get<uint32_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed game spec: ") + e.what());
  }
  return spec;
}

GameSpec LoadGameSpec(const std::string& path) {
  return GameSpecFromJson(LoadJson(path));
}

std::string SerializeGameSpec(const GameSpec& spec) { return Dump(ToJson(spec)); }

Json ToJson(const SubsetSumInstance& instance) {
  Json j;
  j["database"] = Json::array();
  for (uint8_t b : instance.database) j["database"].push_back(int{b});
  j["queries"] = Json::array();
  for (const auto& q : instance.queries) {
    Json row = Json::array();
    for (size_t i : q) row.push_back(i + 1);
    j["queries"].push_back(std::move(row));
  }
  return j;
}

SubsetSumInstance InstanceFromJson(const Json& j) {
  SubsetSumInstance inst;
  try {
    for (const auto& b : j.at("database")) {
      const int bit = b.get<int>();
      Require(bit == 0 || bit == 1, "database entries must be 0 or 1");
      inst.database.push_back(static_cast<uint8_t>(bit));
    }
    for (const auto& q : j.at("queries")) {
      std::vector<size_t> members;
      for (const auto& idx : q) {
        const long v = idx.get<long>();
        Require(v >= 1, "query indices are 1-based");
        members.push_back(static_cast<size_t>(v - 1));
      }
      inst.queries.push_back(std::move(members));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed subset-sum instance: ") + e.what());
  }
  return inst;
}

Json ToJson(const CorrelatedDistribution& dist) {
  Json j;
  j["T"] = dist.T();
  j["n"] = dist.n();
  j["k"] = dist.k();
  Json rounds = Json::array();
  for (const auto& round : dist.rounds) {
    Json r = Json::array();
    for (const MixedStrategy& s : round) {
      r.push_back(std::vector<double>(s.probs().begin(), s.probs().end()));
    }
    rounds.push_back(std::move(r));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

CorrelatedDistribution DistributionFromJson(const Json& j) {
  CorrelatedDistribution dist;
  try {
    for (const auto& round : j.at("rounds")) {
      std::vector<MixedStrategy> r;
      for (const auto& s : round) r.emplace_back(s.get<std::vector<double>>());
      dist.rounds.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed distribution: ") + e.what());
  }
  Require(dist.T() >= 1, "distribution has no rounds");
  return dist;
}

Json ToJson(const EquilibriumCertificate& cert) {
  Json j;
  j["alpha_cce"] = cert.alpha_cce;
  j["alpha_ce"] = cert.alpha_ce;
  Json rows = Json::array();
  for (size_t i = 0; i < cert.per_player.size(); ++i) {
    const PlayerRegret& r = cert.per_player[i];
    Json row;
    row["player"] = i;
    row["fixed_regret"] = r.fixed;
    row["swap_regret"] = r.swap;
    row["utility"] = r.utility;
    row["best_swap"] = r.best_swap;
    if (cert.stderr_value) {
      row["fixed_stderr"] = r.fixed_stderr;
      row["swap_stderr"] = r.swap_stderr;
    }
    rows.push_back(std::move(row));
  }
  j["per_player"] = std::move(rows);
  j["mode"] = cert.mode;
  if (cert.stderr_value) {
    j["stderr"] = *cert.stderr_value;
  } else {
    j["stderr"] = nullptr;
  }
  return j;
}

Json ToJson(const std::vector<DecodedAnswer>& answers,
            const SubsetSumInstance& instance) {
  Json rows = Json::array();
  for (size_t q = 0; q < answers.size(); ++q) {
    const DecodedAnswer& a = answers[q];
    Json row;
    row["query"] = q + 1;
    row["true_answer"] = instance.Answer(q);
    row["levels_used"] = a.levels_used;
    if (a.error) {
      row["answer"] = nullptr;
      row["halfwidth"] = nullptr;
      row["error"] = nullptr;
      row["decode_error"] = *a.error;
    } else {
      row["answer"] = a.answer;
      row["halfwidth"] = a.halfwidth;
      row["error"] = std::abs(a.answer - instance.Answer(q));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string RegretTraceCsv(const MechanismRun& run) {
  std::ostringstream out;
  out << "round,player,lambda,rho_fixed,rho_swap,clamped_entries\n";
  const size_t n = run.sequences.size();
  if (n == 0) return out.str();
  std::vector<RegretTracker> trackers;
  for (size_t i = 0; i < n; ++i) trackers.emplace_back(run.sequences[i].k());
  const size_t T = run.true_losses[0].size();
  for (size_t t = 0; t < T; ++t) {
    for (size_t i = 0; i < n; ++i) {
      trackers[i].Add(run.sequences[i].states[t], run.true_losses[i][t]);
      out << t + 1 << ',' << i << ',' << FormatDouble(trackers[i].lambda()) << ','
          << FormatDouble(trackers[i].rho_fixed()) << ','
          << FormatDouble(trackers[i].rho_swap()) << ','
          << (t < run.clamped[i].size() ? run.clamped[i][t] : 0) << '\n';
    }
  }
  return out.str();
}

}  // namespace privcorr
