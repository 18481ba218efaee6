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

#include "privcorr/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "privcorr/game_suite.hpp"
#include "privcorr/mech_median.hpp"
#include "privcorr/proxy_audit.hpp"

namespace privcorr::cli {
namespace {

namespace fs = std::filesystem;

Json Envelope(const Json& config) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["build"] = BuildId();
  j["config"] = config;
  return j;
}

std::optional<uint64_t> ParseRounds(const std::string& text) {
  if (text == "auto") return std::nullopt;
  size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v == 0) {
    throw ContractError("T must be \"auto\" or a positive integer, got " + text);
  }
  return v;
}

LearnerKind ParseLearner(const std::string& text) {
  if (text == "swap") return LearnerKind::kSwap;
  if (text == "fixed" || text == "hedge") return LearnerKind::kFixed;
  throw ContractError("unknown learner " + text);
}

std::optional<LossMode> ParseLossMode(const std::string& text, uint64_t samples) {
  if (text == "auto") return std::nullopt;
  if (text == "exact") return LossMode::Exact();
  if (text == "anonymous") return LossMode::Anonymous();
  if (text == "monte_carlo") return LossMode::MonteCarlo(samples);
  throw ContractError("unknown loss mode " + text);
}

Json Json64(std::optional<uint64_t> v) { return v ? Json(*v) : Json(nullptr); }

void WriteArtifact(const fs::path& path, const Json& j) {
  WriteFile(path.string(), Dump(j));
}

int ReportInfeasible(const Infeasibility& bad, std::ostream& err) {
  err << "infeasible: " << bad.Message() << "\n";
  return kExitInfeasible;
}

void CheckUniverse(const GameInstance& game, const std::vector<std::string>& names) {
  if (names != game.type_universe()) {
    std::string have;
    for (const auto& s : game.type_universe()) have += (have.empty() ? "" : ",") + s;
    throw ContractError("type universe does not match the game's (" + have + ")");
  }
}

}  // namespace

Json ToJson(const RunConfig& c) {
  Json j;
  j["subcommand"] = "run";
  j["game_path"] = c.game_path;
  j["game"] = c.game ? privcorr::ToJson(*c.game) : Json(nullptr);
  j["mechanism"] = c.mechanism;
  j["epsilon"] = c.epsilon;
  j["delta"] = c.delta;
  j["beta"] = c.beta;
  j["learner"] = c.learner;
  j["T"] = c.rounds;
  j["t_cap"] = c.t_cap;
  j["seed"] = c.seed;
  j["loss_mode"] = c.loss_mode;
  j["loss_samples"] = c.loss_samples;
  j["type_universe"] = c.type_universe ? Json(*c.type_universe) : Json(nullptr);
  j["verify_mode"] = c.verify_mode;
  j["verify_samples"] = c.verify_samples;
  return j;
}

RunConfig RunConfigFromJson(const Json& source) {
  const Json& j = source.contains("config") ? source.at("config") : source;
  RunConfig c;
  try {
    c.game_path = j.value("game_path", "");
    if (j.contains("game") && !j.at("game").is_null()) {
      c.game = GameSpecFromJson(j.at("game"));
    }
    c.mechanism = j.value("mechanism", c.mechanism);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.delta = j.value("delta", c.delta);
    c.beta = j.value("beta", c.beta);
    c.learner = j.value("learner", c.learner);
    if (j.contains("T")) {
      c.rounds = j.at("T").is_string() ? j.at("T").get<std::string>()
                                       : std::to_string(j.at("T").get<uint64_t>());
    }
    c.t_cap = j.value("t_cap", c.t_cap);
    c.seed = j.value("seed", c.seed);
    c.loss_mode = j.value("loss_mode", c.loss_mode);
    c.loss_samples = j.value("loss_samples", c.loss_samples);
    if (j.contains("type_universe") && !j.at("type_universe").is_null()) {
      c.type_universe = j.at("type_universe").get<std::vector<std::string>>();
    }
    c.verify_mode = j.value("verify_mode", c.verify_mode);
    c.verify_samples = j.value("verify_samples", c.verify_samples);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed run config: ") + e.what());
  }
  return c;
}

MechanismParams ResolveParams(const RunConfig& c, const GameInstance& game) {
  (void)game;
  MechanismParams p;
  p.budget = PrivacyBudget{c.epsilon, c.delta, PrivacyKind::kJoint};
  p.beta = c.beta;
  p.learner = ParseLearner(c.learner);
  p.seed = c.seed;
  p.rounds = ParseRounds(c.rounds);
  p.t_cap = c.t_cap;
  p.loss_mode = ParseLossMode(c.loss_mode, c.loss_samples);
  return p;
}

VerifyMode ResolveVerifyMode(const RunConfig& c, const GameInstance& game) {
  const uint64_t mc_seed = SubstreamSeed(c.seed, 0x76657269, 0);
  if (c.verify_mode == "exact") return VerifyMode::Exact();
  if (c.verify_mode == "monte_carlo") {
    return VerifyMode::MonteCarlo(c.verify_samples, mc_seed);
  }
  Require(c.verify_mode == "auto", "unknown verify mode " + c.verify_mode);
  if (game.aggregate() != nullptr) return VerifyMode::Exact();
  const double profiles =
      std::pow(static_cast<double>(game.k()), static_cast<double>(game.n()));
  if (profiles <= kExactProfileBudget) return VerifyMode::Exact();
  return VerifyMode::MonteCarlo(c.verify_samples, mc_seed);
}

int CmdRun(RunConfig config, std::ostream& out, std::ostream& err) {
  if (!config.game) config.game = LoadGameSpec(config.game_path);
  const GameInstance game = MakeGame(*config.game);
  if (config.type_universe) CheckUniverse(game, *config.type_universe);
  const MechanismParams params = ResolveParams(config, game);
  const Json cfg = ToJson(config);

  MechanismRun run;
  Json extra;
  if (config.mechanism == "laplace") {
    MechanismOutcome outcome = RunNrLaplace(game, params);
    if (auto* bad = std::get_if<Infeasibility>(&outcome)) {
      return ReportInfeasible(*bad, err);
    }
    run = std::move(std::get<MechanismRun>(outcome));
  } else if (config.mechanism == "median") {
    MedianOutcome outcome = RunNrMedian(game, params);
    if (auto* bad = std::get_if<Infeasibility>(&outcome)) {
      return ReportInfeasible(*bad, err);
    }
    MedianRun& m = std::get<MedianRun>(outcome);
    extra["queries"] = m.stats.queries;
    extra["easy"] = m.stats.easy;
    extra["hard"] = m.stats.hard;
    extra["max_answer_error"] = m.stats.max_error;
    extra["true_tuple_live"] = m.stats.true_tuple_live;
    run = std::move(m.run);
  } else {
    throw ContractError("unknown mechanism " + config.mechanism);
  }

  fs::path dir(config.out_dir.empty() ? "." : config.out_dir);
  fs::create_directories(dir);

  Json manifest = Envelope(cfg);
  manifest["manifest"] = privcorr::ToJson(run.manifest);
  manifest["ledger"] = run.ledger.ToJson();
  if (!extra.is_null()) manifest["median"] = extra;

  if (run.failed()) {
    WriteArtifact(dir / "manifest.json", manifest);
    WriteFile((dir / "regret_trace.csv").string(), RegretTraceCsv(run));
    err << "mechanism failure: " << run.manifest.status << " at round "
        << run.manifest.failure_round.value_or(0) << "\n";
    return kExitMechanismFailure;
  }

  const CorrelatedDistribution dist = run.Distribution();
  const EquilibriumCertificate cert = Verify(dist, game, ResolveVerifyMode(config, game));
  manifest["certificate"] = privcorr::ToJson(cert);

  Json dist_json = Envelope(cfg);
  dist_json.update(privcorr::ToJson(dist));
  Json cert_json = Envelope(cfg);
  cert_json["certificate"] = privcorr::ToJson(cert);

  WriteArtifact(dir / "manifest.json", manifest);
  WriteFile((dir / "regret_trace.csv").string(), RegretTraceCsv(run));
  WriteArtifact(dir / "distribution.json", dist_json);
  WriteArtifact(dir / "certificate.json", cert_json);

  for (const auto& w : run.manifest.warnings) err << "warning: " << w << "\n";
  out << "T=" << run.manifest.T << " alpha_cce=" << FormatDouble(cert.alpha_cce)
      << " alpha_ce=" << FormatDouble(cert.alpha_ce)
      << " predicted_alpha=" << FormatDouble(run.predicted_alpha) << "\n";
  return kExitOk;
}

int CmdVerify(const VerifyConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  const CorrelatedDistribution dist = DistributionFromJson(LoadJson(config.dist_path));
  const GameInstance game = MakeGame(LoadGameSpec(config.game_path));
  VerifyMode mode;
  if (config.mode == "exact") {
    mode = VerifyMode::Exact();
  } else if (config.mode == "monte_carlo") {
    mode = VerifyMode::MonteCarlo(config.samples, config.seed);
  } else {
    throw ContractError("unknown verify mode " + config.mode);
  }
  const EquilibriumCertificate cert = Verify(dist, game, mode);
  Json cfg;
  cfg["subcommand"] = "verify";
  cfg["dist"] = config.dist_path;
  cfg["game"] = config.game_path;
  cfg["mode"] = config.mode;
  cfg["samples"] = config.samples;
  cfg["seed"] = config.seed;
  Json j = Envelope(cfg);
  j["certificate"] = privcorr::ToJson(cert);
  if (config.out_path.empty()) {
    out << Dump(j);
  } else {
    WriteArtifact(config.out_path, j);
  }
  return kExitOk;
}

int CmdAudit(const AuditCliConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  AuditConfig ac;
  if (config.mechanism == "laplace") {
    ac.mechanism = AuditMechanism::kLaplace;
  } else if (config.mechanism == "median") {
    ac.mechanism = AuditMechanism::kMedian;
  } else if (config.mechanism == "exact") {
    ac.mechanism = AuditMechanism::kExactOracle;
  } else if (config.mechanism == "naive") {
    ac.mechanism = AuditMechanism::kNaiveRule;
  } else {
    throw ContractError("unknown mechanism " + config.mechanism);
  }
  ac.params.budget = PrivacyBudget{config.epsilon, config.delta, PrivacyKind::kJoint};
  ac.params.beta = config.beta;
  ac.params.learner = ParseLearner(config.learner);
  ac.params.rounds = ParseRounds(config.rounds);
  ac.params.t_cap = config.t_cap;
  ac.params.seed = config.seed;
  ac.trials = config.trials;
  ac.seed = config.seed;

  std::optional<GameInstance> base;
  if (!config.game_path.empty()) {
    base.emplace(MakeGame(LoadGameSpec(config.game_path)));
  } else if (config.game_family == "beach" || config.game_family == kBeachFamily) {
    base.emplace(BeachMountainGame(config.n, 0));
  } else {
    throw ContractError("audit supports --game-family beach or --game PATH");
  }
  const AuditReport report = Audit(*base, TypePrior::Parse(config.prior), ac);

  Json cfg;
  cfg["subcommand"] = "audit";
  cfg["game_family"] = config.game_path.empty() ? Json(config.game_family) : Json(nullptr);
  cfg["game_path"] = config.game_path;
  cfg["n"] = base->n();
  cfg["prior"] = config.prior;
  cfg["mechanism"] = config.mechanism;
  cfg["epsilon"] = config.epsilon;
  cfg["delta"] = config.delta;
  cfg["beta"] = config.beta;
  cfg["learner"] = config.learner;
  cfg["T"] = config.rounds;
  cfg["t_cap"] = config.t_cap;
  cfg["trials"] = config.trials;
  cfg["seed"] = config.seed;
  Json j = Envelope(cfg);
  j.update(privcorr::ToJson(report));
  if (config.out_path.empty()) {
    out << Dump(j);
  } else {
    WriteArtifact(config.out_path, j);
  }
  return kExitOk;
}

int CmdLowerBound(const LowerBoundConfig& config, std::ostream& out,
                  std::ostream& err) {
  const SubsetSumInstance instance = InstanceFromJson(LoadJson(config.instance_path));
  Json cfg;
  cfg["subcommand"] = "lowerbound";
  cfg["instance"] = config.instance_path;
  cfg["alpha"] = config.alpha ? Json(*config.alpha) : Json(nullptr);
  cfg["planted"] = config.planted;
  cfg["epsilon"] = config.epsilon;
  cfg["delta"] = config.delta;
  cfg["beta"] = config.beta;
  cfg["T"] = config.rounds;
  cfg["t_cap"] = config.t_cap;
  cfg["seed"] = config.seed;
  Json report = Envelope(cfg);
  report["mode"] = config.planted ? "planted" : "mechanism";

  auto emit = [&](const Json& j) {
    if (config.out_path.empty()) {
      out << Dump(j);
    } else {
      WriteArtifact(config.out_path, j);
    }
  };

  if (instance.queries.empty()) {
    report["alpha"] = config.alpha ? Json(*config.alpha) : Json(nullptr);
    report["queries"] = Json::array();
    emit(report);
    return kExitOk;
  }

  const GameInstance game = BuildLowerBoundGame(instance);
  CorrelatedDistribution dist;
  double alpha = 0.0;
  if (config.planted) {
    if (!config.alpha) throw ContractError("--planted requires --alpha");
    dist = PlantedEquilibrium(game);
    alpha = *config.alpha;
  } else {
    MechanismParams p;
    p.budget = PrivacyBudget{config.epsilon, config.delta, PrivacyKind::kJoint};
    p.beta = config.beta;
    p.seed = config.seed;
    p.rounds = ParseRounds(config.rounds);
    p.t_cap = config.t_cap;
    MechanismOutcome outcome = RunNrLaplace(game, p);
    if (auto* bad = std::get_if<Infeasibility>(&outcome)) {
      return ReportInfeasible(*bad, err);
    }
    const MechanismRun& run = std::get<MechanismRun>(outcome);
    dist = run.Distribution();
    RunConfig rc;
    rc.seed = config.seed;
    const EquilibriumCertificate cert = Verify(dist, game, ResolveVerifyMode(rc, game));
    report["manifest"] = privcorr::ToJson(run.manifest);
    report["certificate"] = privcorr::ToJson(cert);
    alpha = config.alpha ? *config.alpha : cert.alpha_cce;
  }
  report["alpha"] = alpha;
  report["queries"] = privcorr::ToJson(DecodeAnswers(game, dist, alpha), instance);
  emit(report);
  return kExitOk;
}

Json BoundsReport(const BoundsConfig& c) {
  const double gamma = c.gamma.value_or(1.0 / static_cast<double>(c.n));
  Json cfg;
  cfg["subcommand"] = "bounds";
  cfg["n"] = c.n;
  cfg["k"] = c.k;
  cfg["gamma"] = gamma;
  cfg["epsilon"] = c.epsilon;
  cfg["delta"] = c.delta;
  cfg["beta"] = c.beta;
  cfg["U"] = c.universe;
  cfg["T"] = Json64(c.rounds);
  cfg["t_cap"] = c.t_cap;
  Json j = Envelope(cfg);

  Json lap;
  lap["mechanism"] = "laplace";
  try {
    NoisePlan plan;
    std::optional<Infeasibility> bad;
    if (c.rounds) {
      Require(c.epsilon > 0.0, "epsilon must be positive");
      plan = NoisePlanAt(c.n, c.k, gamma, c.epsilon, c.delta, *c.rounds);
      const ConstraintValue cv =
          NrLaplaceConstraint(c.n, c.k, gamma, c.epsilon, c.delta, c.beta, plan.T);
      if (!cv.ok()) {
        bad = Infeasibility{"sigma <= 1/(6 ln(4nkT/beta))", plan.T, cv.lhs, cv.rhs, ""};
      }
    } else {
      PlanResult r = PlanForNrLaplace(c.n, c.k, gamma, c.epsilon, c.delta, c.beta,
                                      c.t_cap);
      if (auto* b = std::get_if<Infeasibility>(&r)) {
        bad = *b;
      } else {
        plan = std::get<NoisePlan>(r);
      }
    }
    if (bad) {
      lap["feasible"] = false;
      lap["reason"] = bad->Message();
    } else {
      const Composition comp = ComposeAdvanced(plan.per_step_epsilon, 0.0,
                                               plan.steps, c.delta);
      lap["feasible"] = true;
      lap["T"] = plan.T;
      lap["sigma"] = plan.sigma;
      lap["per_step_epsilon"] = plan.per_step_epsilon;
      lap["predicted_alpha"] =
          PredictedAlphaLaplace(c.n, c.k, gamma, c.epsilon, c.delta, c.beta, plan.T);
      lap["composed_epsilon"] = comp.epsilon;
      lap["composed_delta"] = comp.delta;
    }
  } catch (const ContractError& e) {
    lap["feasible"] = false;
    lap["reason"] = e.what();
  }

  Json med;
  med["mechanism"] = "median";
  try {
    MedianPlanResult r = PlanForNrMedian(c.n, c.k, c.universe, gamma, c.epsilon,
                                         c.delta, c.beta, c.rounds.value_or(0));
    if (auto* b = std::get_if<Infeasibility>(&r)) {
      med["feasible"] = false;
      med["reason"] = b->Message();
    } else {
      const MedianPlan& plan = std::get<MedianPlan>(r);
      const uint64_t cap = MedianHardQueryCap(c.n, c.universe);
      const double eps_hard = PerStepEpsilon(c.epsilon, c.delta, cap);
      const Composition comp = ComposeAdvanced(eps_hard, 0.0, cap, c.delta);
      med["feasible"] = true;
      med["T"] = plan.T;
      med["alpha_mm"] = plan.alpha_mm;
      med["predicted_alpha"] = PredictedAlphaMedian(c.n, c.k, c.universe, gamma,
                                                    c.epsilon, c.delta, c.beta, plan.T);
      med["hard_query_cap"] = cap;
      med["per_step_epsilon"] = eps_hard;
      med["composed_epsilon"] = comp.epsilon;
      med["composed_delta"] = comp.delta;
    }
  } catch (const ContractError& e) {
    med["feasible"] = false;
    med["reason"] = e.what();
  }

  Json scaling;
  try {
    const size_t n2 = 2 * c.n;
    const OptimizedEta a = OptimizeEtaLaplace(c.n, c.k, 1.0 / c.n, c.delta, c.beta);
    const OptimizedEta b = OptimizeEtaLaplace(n2, c.k, 1.0 / n2, c.delta, c.beta);
    scaling["n"] = c.n;
    scaling["eta"] = a.eta;
    scaling["epsilon_opt"] = a.epsilon;
    scaling["eta_2n"] = b.eta;
    scaling["epsilon_opt_2n"] = b.epsilon;
    scaling["ratio"] = a.eta / b.eta;
    scaling["expected_ratio"] = std::pow(2.0, 0.25);
  } catch (const ContractError& e) {
    scaling["reason"] = e.what();
  }

  j["rows"] = Json::array({lap, med});
  j["scaling"] = scaling;
  return j;
}

int CmdBounds(const BoundsConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  const Json report = BoundsReport(config);
  if (config.json) {
    out << Dump(report);
    return kExitOk;
  }
  auto cell = [](const Json& v) {
    if (v.is_number_float()) return FormatDouble(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  for (const Json& row : report["rows"]) {
    out << row["mechanism"].get<std::string>() << "\n";
    for (const auto& [key, value] : row.items()) {
      if (key == "mechanism") continue;
      out << "  " << std::left << std::setw(18) << key << cell(value) << "\n";
    }
  }
  out << "scaling (gamma = 1/n, epsilon optimized)\n";
  for (const auto& [key, value] : report["scaling"].items()) {
    out << "  " << std::left << std::setw(18) << key << cell(value) << "\n";
  }
  return kExitOk;
}

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Private correlated equilibria of large games", "privcorr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(BuildId()));

  RunConfig run;
  std::string from_config;
  std::string universe_path;
  CLI::App* run_cmd = app.add_subcommand("run", "run a mechanism, verify, write artifacts");
  run_cmd->add_option("--game", run.game_path, "game spec JSON");
  run_cmd->add_option("--from-config", from_config, "rerun the config embedded in an artifact");
  run_cmd->add_option("--mechanism", run.mechanism)->check(CLI::IsMember({"laplace", "median"}));
  run_cmd->add_option("--epsilon", run.epsilon);
  run_cmd->add_option("--delta", run.delta);
  run_cmd->add_option("--beta", run.beta);
  run_cmd->add_option("--learner", run.learner)->check(CLI::IsMember({"swap", "fixed", "hedge"}));
  run_cmd->add_option("--T", run.rounds, "\"auto\" or a round count");
  run_cmd->add_option("--t-cap", run.t_cap);
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--loss-mode", run.loss_mode)
      ->check(CLI::IsMember({"auto", "exact", "anonymous", "monte_carlo"}));
  run_cmd->add_option("--loss-samples", run.loss_samples);
  run_cmd->add_option("--type-universe", universe_path, "JSON list of type names");
  run_cmd->add_option("--verify-mode", run.verify_mode)
      ->check(CLI::IsMember({"auto", "exact", "monte_carlo"}));
  run_cmd->add_option("--verify-samples", run.verify_samples);
  run_cmd->add_option("--out", run.out_dir, "output directory")->required();

  VerifyConfig verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "certify a correlated distribution");
  verify_cmd->add_option("--dist", verify.dist_path)->required();
  verify_cmd->add_option("--game", verify.game_path)->required();
  verify_cmd->add_option("--mode", verify.mode)->check(CLI::IsMember({"exact", "monte_carlo"}));
  verify_cmd->add_option("--samples", verify.samples);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--out", verify.out_path);

  AuditCliConfig audit;
  CLI::App* audit_cmd = app.add_subcommand("audit", "measure deviation gains of a mechanism");
  audit_cmd->add_option("--game-family", audit.game_family);
  audit_cmd->add_option("--game", audit.game_path);
  audit_cmd->add_option("--n", audit.n);
  audit_cmd->add_option("--prior", audit.prior);
  audit_cmd->add_option("--mechanism", audit.mechanism)
      ->check(CLI::IsMember({"laplace", "median", "exact", "naive"}));
  audit_cmd->add_option("--epsilon", audit.epsilon);
  audit_cmd->add_option("--delta", audit.delta);
  audit_cmd->add_option("--beta", audit.beta);
  audit_cmd->add_option("--learner", audit.learner);
  audit_cmd->add_option("--T", audit.rounds);
  audit_cmd->add_option("--t-cap", audit.t_cap);
  audit_cmd->add_option("--trials", audit.trials);
  audit_cmd->add_option("--seed", audit.seed);
  audit_cmd->add_option("--out", audit.out_path);

  LowerBoundConfig lb;
  double lb_alpha = 0.0;
  CLI::App* lb_cmd = app.add_subcommand("lowerbound", "decode subset-sum answers from an equilibrium");
  lb_cmd->add_option("--instance", lb.instance_path)->required();
  CLI::Option* lb_alpha_opt = lb_cmd->add_option("--alpha", lb_alpha);
  lb_cmd->add_flag("--planted", lb.planted);
  lb_cmd->add_option("--epsilon", lb.epsilon);
  lb_cmd->add_option("--delta", lb.delta);
  lb_cmd->add_option("--beta", lb.beta);
  lb_cmd->add_option("--T", lb.rounds);
  lb_cmd->add_option("--t-cap", lb.t_cap);
  lb_cmd->add_option("--seed", lb.seed);
  lb_cmd->add_option("--out", lb.out_path);

  BoundsConfig bounds;
  double bounds_gamma = 0.0;
  uint64_t bounds_rounds = 0;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "evaluate the accuracy and privacy formulas");
  bounds_cmd->add_option("--n", bounds.n);
  bounds_cmd->add_option("--k", bounds.k);
  CLI::Option* gamma_opt = bounds_cmd->add_option("--gamma", bounds_gamma);
  bounds_cmd->add_option("--epsilon", bounds.epsilon);
  bounds_cmd->add_option("--delta", bounds.delta);
  bounds_cmd->add_option("--beta", bounds.beta);
  bounds_cmd->add_option("--U", bounds.universe);
  CLI::Option* rounds_opt = bounds_cmd->add_option("--T", bounds_rounds);
  bounds_cmd->add_option("--t-cap", bounds.t_cap);
  bounds_cmd->add_flag("--json", bounds.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) {
      if (!from_config.empty()) {
        const std::string out_dir = run.out_dir;
        run = RunConfigFromJson(LoadJson(from_config));
        run.out_dir = out_dir;
      } else if (run.game_path.empty()) {
        throw ContractError("run needs --game or --from-config");
      }
      if (!universe_path.empty()) {
        const Json u = LoadJson(universe_path);
        run.type_universe = (u.is_object() ? u.at("types") : u).get<std::vector<std::string>>();
      }
      return CmdRun(run, out, err);
    }
    if (*verify_cmd) return CmdVerify(verify, out, err);
    if (*audit_cmd) return CmdAudit(audit, out, err);
    if (*lb_cmd) {
      if (*lb_alpha_opt) lb.alpha = lb_alpha;
      return CmdLowerBound(lb, out, err);
    }
    if (*bounds_cmd) {
      if (*gamma_opt) bounds.gamma = bounds_gamma;
      if (*rounds_opt) bounds.rounds = bounds_rounds;
      return CmdBounds(bounds, out, err);
    }
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace privcorr::cli
