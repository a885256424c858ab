from __future__ import annotations

import pytest

from detachkit import constructions as C
from detachkit.connectivity import is_3_connected, lambda_
from detachkit.errors import PreconditionError
from detachkit.example import build_example, example_readings, paper_example_augmented_quad
from detachkit.minors import detachable_pairs, has_minor


@pytest.fixture(scope="module")
def readings():
    return example_readings()


def test_both_readings_build(readings):
    for r, ex in readings.items():
        assert ex.M.n == 11 and is_3_connected(ex.M)
        assert ex.M.is_circuit_mask(ex.Q) and ex.M.is_cocircuit_mask(ex.Q)
        assert ex.M.labels[ex.h] == "h"


def test_checks_agree_with_direct_computation(readings):
    N = C.fano()
    for ex in readings.values():
        M, hb = ex.M, 1 << ex.h
        assert ex.checks["Q+h exactly 3-separating"] == (lambda_(M, ex.Q | hb) == 2)
        assert ex.checks["M\\h has an F7-minor"] == (has_minor(M.delete(hb), N) is not None)
        assert ex.checks["M/h has no F7-minor"] == (has_minor(M.contract(hb), N) is None)
        assert ex.checks["no F7-detachable pairs"] == (not detachable_pairs(M, N))
        assert ex.checks["|E(M)|-|E(F7)| = 5"] == (M.n - 7 == 5)


def test_reading_b_findings(readings):
    ex = readings["B"]
    assert len(ex.pairs) == 4
    assert ex.failures() == ["no F7-detachable pairs", "|E(M)|-|E(F7)| = 5"]
    assert not ex.passed


def test_reading_a_findings(readings):
    ex = readings["A"]
    assert "h in cocl(Q)" in ex.failures()
    assert not ex.passed


def test_unknown_reading():
    with pytest.raises(PreconditionError):
        build_example("C")
    with pytest.raises(PreconditionError):
        paper_example_augmented_quad("C")
