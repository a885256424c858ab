from __future__ import annotations

import pytest

from detachkit import constructions as C
from detachkit.connectivity import is_3_connected
from detachkit.errors import PreconditionError
from detachkit.minors import detachable_pairs, has_minor
from detachkit.verify import (
    GAP_BOUNDS,
    chain_scan,
    classify_no_pair,
    gap_ok,
    is_spike,
    parallel_map,
    threads,
    validate_outcome_certificate,
    verify_catalog,
    verify_graphic_theorem,
    verify_main_theorem,
)


def test_gap_bounds():
    assert gap_ok("QUAD", 5) and not gap_ok("QUAD", 6)
    assert gap_ok("VAMOS_LIKE_PRIMAL", 5) and not gap_ok("VAMOS_LIKE_DUAL", 4)
    assert gap_ok("TWISTED", 7) and not gap_ok("QUAD_PLUS_PAIR", 8)
    assert gap_ok("DOUBLE_QUAD_SPIDER", 9) and not gap_ok("DOUBLE_QUAD_SPIDER", 10)
    assert gap_ok("SPIKE_LIKE", 40) and GAP_BOUNDS["SPIKE_LIKE"] is None


def test_theorem_preconditions():
    with pytest.raises(PreconditionError):
        verify_main_theorem(C.spike(4, True, True), C.spike(3, True, True))  # gap 2
    with pytest.raises(PreconditionError):
        verify_main_theorem(C.uniform(3, 9), C.uniform(1, 3))  # N too small
    with pytest.raises(PreconditionError):
        verify_main_theorem(C.wheel(6), C.uniform(2, 4))  # no N-minor
    with pytest.raises(PreconditionError):
        verify_main_theorem(C.uniform(1, 10), C.uniform(2, 4))  # not 3-connected and no minor


def test_detachable_pair_outcome():
    M, N = C.uniform(3, 9), C.uniform(2, 4)
    out = verify_main_theorem(M, N)
    assert out.case == "DETACHABLE_PAIR"
    pair = out.evidence["pair"]
    m = sum(1 << M.index(x) for x in pair["pair"])
    R = M.contract(m) if pair["kind"] == "contract" else M.delete(m)
    assert is_3_connected(R) and has_minor(R, N) is not None


def test_delta_y_outcome():
    M, N = C.wheel(6), C.wheel(3)
    assert detachable_pairs(M, N) == []
    out = verify_main_theorem(M, N)
    assert out.case == "DELTA_Y_DETACHABLE"
    site = [M.index(x) for x in out.evidence["site"]]
    M2 = C.delta_y(M, site) if out.evidence["op"] == "delta_y" else C.y_delta(M, site)
    p = out.evidence["pair"]
    m = sum(1 << M2.index(x) for x in p["pair"])
    R = M2.contract(m) if p["kind"] == "contract" else M2.delete(m)
    assert is_3_connected(R) and has_minor(R, N) is not None


def test_separator_outcome_in_a_spike():
    M, N = C.spike(5), C.uniform(2, 4)
    out = verify_main_theorem(M, N)
    assert out.case == "SEPARATOR" and out.kind == "SPIKE_LIKE"
    assert out.readings["theorem"] and out.readings["containment"]
    assert validate_outcome_certificate(M, out)
    # dropping a leg element breaks the certificate
    cert = out.evidence["separator"]["certificate"]
    cert["elements"] = cert["elements"][:-1]
    assert not validate_outcome_certificate(M, out)


def test_all_witnesses_collects_more():
    out = verify_main_theorem(C.uniform(3, 9), C.uniform(2, 4), all_witnesses=True)
    assert out.case == "DETACHABLE_PAIR" and len(out.witnesses) >= 1


def test_graphic_theorem_on_wheels():
    out = verify_graphic_theorem(C.wheel_graph(6), C.wheel_graph(3))
    assert out.case == "DELTA_Y_DETACHABLE" and out.conjecture_case == "DELTA_Y_DETACHABLE"
    assert out.separator_bug == []
    with pytest.raises(PreconditionError):
        verify_graphic_theorem(C.GraphSpec(4, ((0, 1), (1, 2), (2, 3), (3, 0))), C.wheel_graph(3))


def test_is_spike():
    assert is_spike(C.spike(4)) and is_spike(C.spike(3))
    assert not is_spike(C.spike(4, tip=True))
    assert not is_spike(C.wheel(4))  # right size, no quads


def test_classify_no_pair():
    assert classify_no_pair(C.wheel(4)) == [{"family": "wheel_or_whirl", "params": {"r": 4}}]
    fams = {f["family"] for f in classify_no_pair(C.spike(4, True, True))}
    assert fams == {"wheels_on_spike"}
    assert {f["family"] for f in classify_no_pair(C.spike(5))} >= {"spike"}
    assert classify_no_pair(C.uniform(3, 7)) == []


def test_chain_scan_small(catalog):
    res = chain_scan(7, catalog)
    assert res["scanned"] == len(catalog.select(max_n=7, min_n=4))
    ids = {r["id"] for r in res["no_plain_pair"]}
    for e in catalog.select(max_n=7):
        assert (e.id in ids) == (not detachable_pairs(e.matroid))
    for r in res["no_plain_pair"]:
        assert r["unclassified"] == (r["id"] in res["unclassified"])
    with pytest.raises(PreconditionError):
        chain_scan(13, catalog)


def test_verify_catalog_fixed_minor(catalog):
    from detachkit.catalog import Catalog

    small = Catalog(catalog.select(max_n=10, min_n=9))
    res = verify_catalog(small, C.uniform(2, 4), max_m=10)
    assert res and all(r["outcome"]["case"] != "COUNTEREXAMPLE" for r in res)


def test_threads_and_parallel_map(monkeypatch):
    monkeypatch.setenv("DETACHKIT_THREADS", "junk")
    assert threads() == 1
    monkeypatch.setenv("DETACHKIT_THREADS", "2")
    assert threads() == 2
    assert parallel_map(abs, [-3, 2, -1], 2) == [3, 2, 1]
    assert parallel_map(abs, [-3, 2, -1], 1) == [3, 2, 1]
