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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "privcorr/cli.hpp"
#include "privcorr/game_suite.hpp"
#include "privcorr/io.hpp"
#include "privcorr/noregret.hpp"
#include "privcorr/privacy.hpp"

namespace py = pybind11;

namespace {

py::tuple RunCli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"privcorr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = privcorr::cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_privcorr, m) {
  m.doc() = "Private correlated equilibria of large games";

  py::register_exception<privcorr::ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<privcorr::ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<privcorr::NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("build_id", [] { return std::string(privcorr::BuildId()); });
  m.def("run_cli", &RunCli, py::arg("args"),
        "Run a subcommand; returns (exit_code, stdout, stderr).");

  m.def("hedge_step",
        [](const std::vector<double>& probs, const std::vector<double>& loss, double eta) {
          const auto next = privcorr::HedgeStep(privcorr::MixedStrategy(probs), loss, eta);
          return std::vector<double>(next.probs().begin(), next.probs().end());
        },
        py::arg("probs"), py::arg("loss"), py::arg("eta"));
  m.def("hedge_rate", &privcorr::HedgeRate, py::arg("k"), py::arg("T"));

  m.def("compose_advanced",
        [](double eps0, double delta0, uint64_t T, double delta_prime) {
          const auto c = privcorr::ComposeAdvanced(eps0, delta0, T, delta_prime);
          return py::make_tuple(c.epsilon, c.delta);
        },
        py::arg("eps0"), py::arg("delta0"), py::arg("T"), py::arg("delta_prime"));
  m.def("per_step_epsilon", &privcorr::PerStepEpsilon, py::arg("epsilon"),
        py::arg("delta"), py::arg("T"));
  m.def("nrlaplace_sigma", &privcorr::NrLaplaceSigma, py::arg("n"), py::arg("k"),
        py::arg("gamma"), py::arg("epsilon"), py::arg("delta"), py::arg("T"));
  m.def("predicted_alpha_laplace", &privcorr::PredictedAlphaLaplace, py::arg("n"),
        py::arg("k"), py::arg("gamma"), py::arg("epsilon"), py::arg("delta"),
        py::arg("beta"), py::arg("T"));
  m.def("median_accuracy", &privcorr::MedianAccuracy, py::arg("n"), py::arg("k"),
        py::arg("U"), py::arg("gamma"), py::arg("epsilon"), py::arg("delta"),
        py::arg("beta"), py::arg("T"));
  m.def("predicted_alpha_median", &privcorr::PredictedAlphaMedian, py::arg("n"),
        py::arg("k"), py::arg("U"), py::arg("gamma"), py::arg("epsilon"),
        py::arg("delta"), py::arg("beta"), py::arg("T"));

  m.def("sawtooth_f", &privcorr::SawtoothF, py::arg("h"), py::arg("x"));
  m.def("sawtooth_g", &privcorr::SawtoothG, py::arg("h"), py::arg("x"));

  m.def("canonical_game_spec",
        [](const std::string& text) {
          privcorr::Json j;
          try {
            j = privcorr::Json::parse(text);
          } catch (const nlohmann::json::parse_error& e) {
            throw privcorr::ContractError(std::string("malformed game spec: ") + e.what());
          }
          return privcorr::SerializeGameSpec(privcorr::GameSpecFromJson(j));
        },
        py::arg("text"));
}
