"""Acceptance criteria at exact equality; one PASS/FAIL line per criterion."""

from __future__ import annotations

import pytest

from kcompletion.acceptance import CHECKS

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__ for c in CHECKS])
def test_criterion(check):
    res = check()
    line = res.line()
    ACCEPTANCE_LINES[res.key] = line
    print(line)
    assert res.passed, "\n".join(res.notes)
