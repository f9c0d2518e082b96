"""Runs ``ssplift selftest`` once and checks each acceptance criterion.

Every criterion prints one PASS/FAIL line in the terminal summary.  The
2DDP construction in the catalog is known to be unsound, so criterion 1
fails on exactly that reduction and the self-test exits 1; the tests
below pin that outcome rather than hide it.
"""

import contextlib
import io
import re
import time

import pytest

from ssplift.cli import main

from conftest import ACCEPTANCE_LINES

KNOWN_UNSOUND = {"3sat_to_2ddp"}
WALL_LIMIT_SECONDS = 20 * 60


@pytest.fixture(scope="module")
def selftest():
    out = io.StringIO()
    start = time.perf_counter()
    with contextlib.redirect_stdout(out):
        code = main(["selftest"])
    seconds = time.perf_counter() - start
    report = {}
    for line in out.getvalue().splitlines():
        key, _, value = line.partition(": ")
        report[key] = value
    return code, seconds, report


def criterion_line(report, number):
    return f"criterion {number}: {report[f'criterion-{number}']}"


def record(line):
    ACCEPTANCE_LINES.append(line)
    print(line)


def failing_reductions(line):
    return set(re.findall(r"(\S+) fails on \d+/50", line))


def test_criterion_1_only_the_unsound_construction_fails(selftest):
    _, _, report = selftest
    line = criterion_line(report, 1)
    record(line)
    if "PASS" in line.split()[2]:
        return
    assert failing_reductions(line) == KNOWN_UNSOUND, line
    assert "envelope" not in line


@pytest.mark.parametrize("number", range(2, 9))
def test_criterion(selftest, number):
    _, _, report = selftest
    line = criterion_line(report, number)
    record(line)
    assert line.split()[2] == "PASS", line


def test_criterion_9_selftest(selftest):
    code, seconds, report = selftest
    passed = all(report[f"criterion-{n}"].startswith("PASS") for n in range(1, 9))
    verdict = "PASS" if code == 0 and seconds < WALL_LIMIT_SECONDS else "FAIL"
    reason = "" if verdict == "PASS" else " (exit status follows the criterion 1 failure)"
    record(f"criterion 9: {verdict} selftest exit {code}, {seconds:.1f}s wall{reason}")
    # the exit status must be honest about the criteria and the run must fit the envelope
    assert code == (0 if passed else 1)
    assert report["status"] == ("ok" if passed else "failed")
    assert seconds < WALL_LIMIT_SECONDS
