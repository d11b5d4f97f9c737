"""Acceptance suite: one line per criterion at the default policy, zero tolerance."""

import subprocess
import sys

import pytest

from conftest import ACCEPTANCE_LINES
from halfder.acceptance import CRITERIA, criterion_lines, run_acceptance
from halfder.repder.sampling import DEFAULT_POLICY


@pytest.fixture(scope="module")
def report():
    rep = run_acceptance(DEFAULT_POLICY)
    lines = criterion_lines(rep)
    ACCEPTANCE_LINES[:] = lines
    for line in lines:
        print(line)
    return rep


def test_every_criterion_reports(report):
    assert {c.criterion for c in report.checks} == set(CRITERIA)
    assert len(criterion_lines(report)) == len(CRITERIA) == 9


@pytest.mark.parametrize("n", sorted(CRITERIA), ids=lambda n: f"criterion{n}")
def test_criterion(report, n):
    checks = [c for c in report.checks if c.criterion == n]
    assert checks
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, failed


def test_corpus_command_is_byte_identical():
    cmd = [sys.executable, "-m", "halfder.cli", "corpus", "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
    assert first.stdout.count(b"criterion ") >= 9
