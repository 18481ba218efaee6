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

import json
import math
import os
import subprocess

import pytest

import privcorr


def test_build_id():
    assert isinstance(privcorr.build_id(), str)


def test_hedge_step():
    p = privcorr.hedge_step([0.5, 0.5], [0.0, 1.0], math.log(2))
    assert p == pytest.approx([2 / 3, 1 / 3], abs=1e-12)


def test_formulas():
    assert privcorr.per_step_epsilon(1.0, 1e-6, 100) == pytest.approx(0.009512, abs=5e-7)
    eps, _ = privcorr.compose_advanced(0.1, 0.0, 100, 1e-6)
    assert eps == pytest.approx(6.3082, abs=5e-5)
    assert privcorr.sawtooth_f(1, 0.25) == pytest.approx(1.0)


def test_bounds_json():
    report = privcorr.bounds(n=200, k=2, gamma=1 / 199, epsilon=1, delta=1e-6)
    assert report["schema"] == 1
    names = [row["mechanism"] for row in report["rows"]]
    assert names == ["laplace", "median"]


def test_bad_game_spec():
    with pytest.raises(privcorr.ContractError):
        privcorr.canonical_game_spec("{not json")


def test_usage_error():
    code, _, _ = privcorr.run_cli(["nosuch"])
    assert code == privcorr.EXIT_USAGE


@pytest.mark.skipif("PRIVCORR_CLI" not in os.environ, reason="CLI path not set")
def test_cli_run(tmp_path):
    cli = os.environ["PRIVCORR_CLI"]
    game = tmp_path / "game.json"
    game.write_text(json.dumps({
        "family": "beach_mountain", "n": 6, "k": 2, "gamma": 0.2,
        "types": ["Beach", "Beach", "Beach", "Mountain", "Mountain", "Mountain"],
    }))
    out = tmp_path / "out"
    proc = subprocess.run(
        [cli, "run", "--game", str(game), "--mechanism", "laplace", "--epsilon", "50",
         "--T", "40", "--seed", "1", "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == privcorr.EXIT_OK, proc.stderr
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["schema"] == 1
    assert cert["certificate"]["alpha_ce"] >= cert["certificate"]["alpha_cce"] - 1e-12
