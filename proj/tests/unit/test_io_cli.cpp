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

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "privcorr/cli.hpp"
#include "privcorr/game_suite.hpp"

using namespace privcorr;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"privcorr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path Scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("privcorr_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string WriteGame(const fs::path& dir, const GameInstance& game) {
  const std::string path = (dir / "game.json").string();
  WriteFile(path, SerializeGameSpec(game.spec()));
  return path;
}

}  // namespace

TEST_CASE("game spec files round-trip byte for byte") {
  const fs::path dir = Scratch("spec");
  const std::string path = WriteGame(dir, BeachMountainGame(7, 3));
  const std::string text = ReadFile(path);
  CHECK(SerializeGameSpec(LoadGameSpec(path)) == text);
}

TEST_CASE("regret trace columns") {
  const GameInstance game = BeachMountainGame(4, 2);
  MechanismParams p;
  p.budget = {1.0, 1e-6, PrivacyKind::kJoint};
  p.rounds = 5;
  MechanismOutcome out = RunNrLaplace(game, p);
  const std::string csv = RegretTraceCsv(std::get<MechanismRun>(out));
  CHECK(csv.rfind("round,player,lambda,rho_fixed,rho_swap,clamped_entries\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5 * 4);
}

TEST_CASE("run is deterministic and verify reproduces the certificate") {
  const fs::path dir = Scratch("run");
  const std::string game = WriteGame(dir, BeachMountainGame(10, 4));
  const std::vector<std::string> base{"run", "--game", game, "--epsilon", "1",
                                      "--delta", "1e-6", "--beta", "0.05", "--T", "30",
                                      "--seed", "5"};
  auto a = base;
  a.insert(a.end(), {"--out", (dir / "a").string()});
  auto b = base;
  b.insert(b.end(), {"--out", (dir / "b").string()});
  const CliResult ra = Cli(a);
  REQUIRE(ra.code == cli::kExitOk);
  REQUIRE(Cli(b).code == cli::kExitOk);
  for (const char* f : {"manifest.json", "regret_trace.csv", "distribution.json", "certificate.json"}) {
    CHECK(ReadFile((dir / "a" / f).string()) == ReadFile((dir / "b" / f).string()));
  }
  const Json manifest = LoadJson((dir / "a" / "manifest.json").string());
  CHECK(manifest["schema"] == 1);
  CHECK(manifest["build"] == BuildId());
  CHECK(manifest["config"]["seed"] == 5);

  const CliResult v = Cli({"verify", "--dist", (dir / "a" / "distribution.json").string(),
                           "--game", game});
  REQUIRE(v.code == cli::kExitOk);
  const Json cert = Json::parse(v.out);
  const Json stored = LoadJson((dir / "a" / "certificate.json").string());
  CHECK(cert["certificate"] == stored["certificate"]);

  const CliResult again = Cli({"run", "--from-config", (dir / "a" / "manifest.json").string(),
                               "--out", (dir / "c").string()});
  REQUIRE(again.code == cli::kExitOk);
  for (const char* f : {"manifest.json", "regret_trace.csv", "distribution.json", "certificate.json"}) {
    CHECK(ReadFile((dir / "a" / f).string()) == ReadFile((dir / "c" / f).string()));
  }
}

TEST_CASE("infeasible run exits 2 and quotes the constraint") {
  const fs::path dir = Scratch("infeasible");
  const std::string game = WriteGame(dir, BeachMountainGame(200, 100));
  const CliResult r = Cli({"run", "--game", game, "--epsilon", "1", "--delta", "1e-6",
                           "--out", (dir / "o").string()});
  CHECK(r.code == cli::kExitInfeasible);
  const ConstraintValue c = NrLaplaceConstraint(200, 2, 1.0 / 199, 1.0, 1e-6, 0.05, 1);
  CHECK(r.err.find("sigma <= 1/(6 ln(4nkT/beta))") != std::string::npos);
  std::ostringstream lhs;
  lhs.precision(6);
  lhs << c.lhs;
  CHECK(r.err.find(lhs.str()) != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(Cli({"run"}).code == cli::kExitUsage);
  CHECK(Cli({"nonsense"}).code == cli::kExitUsage);
  CHECK(Cli({"verify", "--dist", "/nonexistent", "--game", "/nonexistent"}).code == cli::kExitUsage);
}

TEST_CASE("lowerbound subcommand") {
  const fs::path dir = Scratch("lowerbound");
  SubsetSumInstance inst;
  inst.database = {1, 0, 1, 1, 0, 0, 1, 1};
  inst.queries = {{0, 2, 5}, {1, 3, 4, 6, 7}};
  const std::string path = (dir / "inst.json").string();
  WriteFile(path, Dump(ToJson(inst)));
  const CliResult r = Cli({"lowerbound", "--instance", path, "--alpha", "0.001", "--planted"});
  REQUIRE(r.code == cli::kExitOk);
  const Json report = Json::parse(r.out);
  REQUIRE(report["queries"].size() == 2);
  for (size_t j = 0; j < 2; ++j) {
    CHECK(report["queries"][j]["error"].get<double>() <= 0.036);
    CHECK(report["queries"][j]["true_answer"].get<double>() == doctest::Approx(inst.Answer(j)));
  }

  SubsetSumInstance empty;
  empty.database = {1, 0};
  const std::string epath = (dir / "empty.json").string();
  WriteFile(epath, Dump(ToJson(empty)));
  const CliResult e = Cli({"lowerbound", "--instance", epath, "--alpha", "0.01", "--planted"});
  CHECK(e.code == cli::kExitOk);
  CHECK(Json::parse(e.out)["queries"].empty());
}

TEST_CASE("bounds subcommand") {
  const CliResult j = Cli({"bounds", "--n", "1000", "--k", "2", "--epsilon", "100", "--json"});
  REQUIRE(j.code == cli::kExitOk);
  const Json report = Json::parse(j.out);
  CHECK(report["schema"] == 1);
  CHECK(report["rows"][0]["feasible"] == true);
  const CliResult t = Cli({"bounds", "--n", "1000", "--k", "2", "--epsilon", "100"});
  REQUIRE(t.code == cli::kExitOk);
  for (const Json& row : report["rows"]) {
    for (const auto& [key, value] : row.items()) {
      if (value.is_number_float()) {
        CHECK(t.out.find(FormatDouble(value.get<double>())) != std::string::npos);
      }
    }
  }
  const Json zero = Json::parse(Cli({"bounds", "--epsilon", "0", "--json"}).out);
  CHECK(zero["rows"][0]["feasible"] == false);
  CHECK(zero["rows"][1]["feasible"] == false);
}
