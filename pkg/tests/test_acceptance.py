"""The ten acceptance criteria, each with its runtime bound.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary lists
one PASS/FAIL line per criterion.
"""

import json
import subprocess
import sys
import time

import pytest

from bicirc.bicircular import EXCLUDED_MINORS, named_matroid
from bicirc.verify import (
    check_commutation,
    check_decomposition,
    check_excluded_minors,
    check_free_swirls,
    check_sporadic_extensions,
    check_main_theorem,
    check_oracle_agreement,
    check_k4pp_equivalence,
    check_representation_catalogs,
    check_self_dualities,
    check_wagner,
    general_corpus,
    negative_controls,
)


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    rep = fn(*args, **kwargs)
    return rep, time.perf_counter() - t0


@pytest.mark.criterion(1, "self-dualities of the sporadic graphs")
def test_self_dualities():
    rep, secs = timed(check_self_dualities)
    assert rep.passed, rep.counterexample
    assert secs < 5


@pytest.mark.criterion(2, "free swirls identically self-dual and 3-connected, n = 3..7")
def test_free_swirls():
    rep, secs = timed(check_free_swirls, 7)
    assert rep.passed, rep.counterexample
    assert len(rep.witnesses) == 5
    assert secs < 10


@pytest.mark.criterion(3, "representation catalogs")
def test_representation_catalogs():
    rep, secs = timed(check_representation_catalogs)
    assert rep.passed, rep.counterexample
    assert secs < 60


@pytest.mark.criterion(4, "nine excluded minors are minimally non-cobicircular")
def test_excluded_minors():
    rep, secs = timed(check_excluded_minors)
    assert rep.passed, rep.counterexample
    # one representation per matroid plus a witness for each of its 2n minors
    expected = sum(1 + 2 * named_matroid(k).n for k in EXCLUDED_MINORS)
    assert len(rep.witnesses) == expected
    assert secs < 300


@pytest.mark.criterion(5, "K4++ minor equivalence on 3-connected graphs")
def test_k4pp_equivalence():
    rep, secs = timed(check_k4pp_equivalence)
    assert rep.passed, rep.counterexample
    assert secs < 120


@pytest.mark.criterion(6, "single-edge extensions of the sporadic graphs")
def test_sporadic_extensions():
    rep, secs = timed(check_sporadic_extensions)
    assert rep.passed, rep.counterexample
    assert secs < 120


@pytest.mark.criterion(7, "main theorem over |E| <= 9, single-threaded and in four shards")
def test_main_theorem():
    rep, secs = timed(check_main_theorem, 9)
    assert rep.passed, rep.counterexample
    assert secs < 30 * 60


@pytest.mark.criterion(7, "main theorem over |E| <= 9, single-threaded and in four shards")
def test_main_theorem_sharded(tmp_path):
    # a fresh interpreter, so no cache warmed by the other tests is inherited
    report = tmp_path / "main.json"
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "bicirc.cli", "verify", "--suite", "check_main_theorem", "--jobs", "4",
         "--report", str(report)],
        capture_output=True, text=True,
    )
    secs = time.perf_counter() - t0
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert json.loads(report.read_text())[0]["status"] == "pass"
    assert secs < 10 * 60


@pytest.mark.criterion(8, "combinatorial and matrix constructions agree for |E| <= 8")
def test_oracle_agreement():
    assert max(len(g) for g in general_corpus()) == 8
    rep, secs = timed(check_oracle_agreement)
    assert rep.passed, rep.counterexample
    assert secs < 300


@pytest.mark.criterion(9, "commutation, Wagner criterion and decomposition suites")
@pytest.mark.parametrize("check", [check_commutation, check_wagner, check_decomposition], ids=lambda c: c.__name__)
def test_structural(check):
    rep = check()
    assert rep.passed, rep.counterexample


@pytest.mark.criterion(10, "every suite fails on its corrupted fixture")
@pytest.mark.parametrize("name", sorted(negative_controls()))
def test_negative_control(name):
    rep = negative_controls()[name]()
    assert rep.failed
    assert rep.counterexample
