from __future__ import annotations

import numpy as np
import pytest

from detachkit import constructions as C
from detachkit.errors import DetachkitError
from detachkit.minors import detachable_pairs
from detachkit.reports import dumps, load, loads, make_report, save, summary


def test_round_trip_is_identity(tmp_path):
    M = C.uniform(3, 7)
    pairs = detachable_pairs(M, C.uniform(2, 4))
    rep = make_report("pairs", {"M": "U3,7", "ranks": (1, 2)}, [p.to_dict(M) for p in pairs], {"t": np.float64(0.5)})
    assert loads(dumps(rep)) == rep
    p = tmp_path / "r.json"
    save(rep, p)
    assert load(p) == rep
    assert rep["timings"]["t"] == 0.5 and rep["inputs"]["ranks"] == [1, 2]
    assert summary(rep).startswith("pairs:")


def test_sets_and_objects_are_serialised():
    rep = make_report("x", {"s": {3, 1, 2}}, detachable_pairs(C.uniform(3, 7), first_only=True))
    assert rep["inputs"]["s"] == [1, 2, 3]
    assert rep["result"][0]["kind"] == "delete"
    with pytest.raises(TypeError):
        make_report("x", {}, object())


def test_schema_errors():
    with pytest.raises(DetachkitError):
        loads('{"schema": "other", "version": 1}')
    with pytest.raises(DetachkitError):
        loads('{"schema": "detachkit-report", "version": 99}')
