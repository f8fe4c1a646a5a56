import os
import subprocess
from fractions import Fraction

import pytest

import branchdecide as bd


def game(*pairs, name=""):
    return bd.Game([(Fraction(r), Fraction(w)) for r, w in pairs], name)


A = game((2, "1/2"), (3, "1/2"), name="A")
B = game((1, "1/2"), (4, "1/2"), name="B")
ROOT = game((0, "1/2"), (0, "1/2"), name="root")


def test_compare():
    assert bd.compare("egalitarian", A, B) == "PrefersLeft"
    assert bd.compare("dtbr", A, B) == "Indifferent"
    assert bd.expected_value(A) == Fraction(5, 2)
    assert bd.reward_range(B) == 3


def test_game_validation():
    with pytest.raises(bd.BranchDecideError) as err:
        game((1, "1/2"), (0, "1/3"))
    assert err.value.kind == "WeightSumError"
    with pytest.raises(TypeError):
        bd.Game([(1, 0.5), (0, 0.5)])


def test_diachronic():
    r = bd.check_diachronic("optimist", ROOT, [(game((2, 1)), game((1, 1))), (game((3, 1)), game((3, 1)))])
    assert r["verdict"] == "violated"
    assert r["witness"]["clause"] == "ii"


def test_fit():
    b0 = game((1, 0), (0, 1), name="B_0")
    bh = game((1, "1/2"), (0, "1/2"), name="B_half")
    a = game((1, 1), name="A")
    out = bd.fit_utility("optimist", [a, b0, bh], [0, 1])
    assert out["verdict"] == "infeasible"
    assert sorted(out["certificate"]) == ["A>B_0", "A~B_half"]


def test_gallery_and_search():
    records = bd.gallery()
    assert records and all(r["verdict"] != "error" for r in records)
    hit = bd.find_violation("egalitarian", [0, 3, 4, 5], ["1/2", 1], 2, 2)["hit"]
    assert hit is not None


def test_cli_machine_output():
    cli = os.environ.get("BRANCHDECIDE_CLI")
    if not cli:
        pytest.skip("BRANCHDECIDE_CLI not set")
    first = subprocess.run([cli, "gallery", "--machine"], capture_output=True, text=True, check=True).stdout
    second = subprocess.run([cli, "gallery", "--machine"], capture_output=True, text=True, check=True).stdout
    assert first == second
