# Copyright 2026 The privcorr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Private correlated equilibria of large games."""

import json

from ._privcorr import (
    ContractError,
    NumericError,
    ResourceError,
    build_id,
    canonical_game_spec,
    compose_advanced,
    hedge_rate,
    hedge_step,
    median_accuracy,
    nrlaplace_sigma,
    per_step_epsilon,
    predicted_alpha_laplace,
    predicted_alpha_median,
    run_cli,
    sawtooth_f,
    sawtooth_g,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_MECHANISM_FAILURE = 3


def bounds(**params):
    """Evaluate the bound calculators; keyword names follow the CLI flags."""
    args = ["bounds", "--json"]
    for key, value in params.items():
        args += ["--" + key.replace("_", "-"), str(value)]
    code, out, err = run_cli(args)
    if code != EXIT_OK:
        raise ContractError(err.strip())
    return json.loads(out)


__all__ = [
    "ContractError",
    "NumericError",
    "ResourceError",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_INFEASIBLE",
    "EXIT_MECHANISM_FAILURE",
    "bounds",
    "build_id",
    "canonical_game_spec",
    "compose_advanced",
    "hedge_rate",
    "hedge_step",
    "median_accuracy",
    "nrlaplace_sigma",
    "per_step_epsilon",
    "predicted_alpha_laplace",
    "predicted_alpha_median",
    "run_cli",
    "sawtooth_f",
    "sawtooth_g",
]
