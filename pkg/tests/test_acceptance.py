"""Runs every acceptance criterion at full size and prints one line per criterion.

Run alone with `pytest tests/test_acceptance.py -v -s`, or without pytest via
`python3 scripts/run_acceptance.py`.
"""
import pytest

from loadcolor.acceptance import MUTANTS, AcceptanceConfig, run_acceptance

CRITERIA = range(1, 9)


@pytest.fixture(scope="module")
def report():
    results = run_acceptance(AcceptanceConfig())
    return {r.number: r for r in results}


@pytest.mark.slow
@pytest.mark.parametrize("number", CRITERIA)
def test_criterion(report, number, capsys):
    result = report[number]
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


def test_every_criterion_reported(report):
    assert sorted(report) == list(CRITERIA)


@pytest.mark.slow
def test_broken_join_fails_with_counterexample():
    config = AcceptanceConfig(random_samples=60, join=MUTANTS["join-no-offset"])
    (result,) = run_acceptance(config, only={2})
    assert not result.passed
    assert result.counterexample is not None
    assert "n=" in result.counterexample[0]
