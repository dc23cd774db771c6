"""Acceptance suite: one pass/fail line per criterion (run with ``pytest -s`` to see them)."""

from __future__ import annotations

import pytest

from dnls_scattering import acceptance
from dnls_scattering.cli import run


@pytest.mark.parametrize("number", [n for n, _, _ in acceptance.CRITERIA],
                         ids=[f"criterion_{n:02d}" for n, _, _ in acceptance.CRITERIA])
def test_criterion(number):
    result = acceptance.run_criterion(number, suite="full")
    print(result.line())
    assert result.passed, result.line()


def test_verify_command(capsys):
    code = run(["verify", "--suite", "fast"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip().splitlines()[-1] == "14/14 criteria passed"
