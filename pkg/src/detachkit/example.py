"""The Fano / non-Fano augmented-quad construction, with every claimed property checked.

Taken literally, the construction adds ``a``, which is already an element
of the non-Fano copy, freely on the Fano triangle ``{x, y, z}``.  That is
not well defined, so two readings are built:

* reading ``"A"``: add a new element ``a`` freely on the line ``{x, y, z}``
  of the Fano copy, 2-sum with the non-Fano copy along ``a``, add ``h``
  freely on the line ``{x, c}``, then delete ``{x, y, z}``;
* reading ``"B"``: the mirror image, with the new element ``x`` added
  freely on the line ``{a, b, c}`` of the non-Fano copy, 2-sum with the
  Fano copy along ``x``, ``h`` added freely on ``{a, z}``, then
  ``{a, b, c}`` deleted.

The claimed behaviour of the removed element is tested on ``h``, the
augmenting element, since ``z`` is deleted in reading A and is an element
of the minor in reading B.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .connectivity import is_3_connected, lambda_
from .constructions import fano, free_extension, non_fano, two_sum
from .errors import PreconditionError
from .extensions import principal_extension
from .matroid import Matroid
from .minors import DetachablePair, detachable_pairs, has_minor

FANO_COPY_LABELS = ("x", "y", "f1", "z", "f2", "f3", "f4")
NON_FANO_COPY_LABELS = ("a", "b", "q1", "c", "q2", "q3", "q4")
QUAD_LABELS = ("q1", "q2", "q3", "q4")


@dataclass
class ExampleConstruction:
    reading: str
    M: Matroid
    N: Matroid
    Q: int
    h: int
    checks: dict[str, bool] = field(default_factory=dict)
    pairs: list[DetachablePair] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def _line(M: Matroid, u: str, v: str) -> int:
    return M.closure_mask(1 << M.index(u) | 1 << M.index(v))


def build_example(reading: str = "B") -> tuple[Matroid, int, int]:
    """The matroid ``M``, the quad mask ``Q`` and the index of ``h``."""
    F = fano().relabel(FANO_COPY_LABELS, "F7")
    G = non_fano().relabel(NON_FANO_COPY_LABELS, "F7-")
    if reading == "A":
        Fp = free_extension(F, _line(F, "x", "y"), "a")
        Mp = two_sum(G, Fp, "a")
        h_line, drop = ("x", "c"), ("x", "y", "z")
    elif reading == "B":
        Gp = free_extension(G, _line(G, "a", "b"), "x")
        Mp = two_sum(Gp, F, "x")
        h_line, drop = ("a", "z"), ("a", "b", "c")
    else:
        raise PreconditionError("reading must be 'A' or 'B'")
    Mh = principal_extension(Mp, _line(Mp, *h_line), "h")
    M = Mh.delete(sum(1 << Mh.index(x) for x in drop)).renamed(f"example-{reading}")
    Q = sum(1 << M.index(x) for x in QUAD_LABELS)
    return M, Q, M.index("h")


def paper_example_augmented_quad(reading: str = "B") -> ExampleConstruction:
    """Build one reading and machine-check each claimed property."""
    M, Q, h = build_example(reading)
    N = fano()
    hb = 1 << h
    pairs = detachable_pairs(M, N) if is_3_connected(M) else []
    checks = {
        "3-connected": is_3_connected(M),
        "Q is a quad": M.is_circuit_mask(Q) and M.is_cocircuit_mask(Q),
        "Q+h exactly 3-separating": lambda_(M, Q | hb) == 2,
        "h in cocl(Q)": bool(M.coclosure_mask(Q) & hb) and not M.closure_mask(Q) & hb,
        "no F7-detachable pairs": not pairs,
        "M\\h has an F7-minor": has_minor(M.delete(hb), N) is not None,
        "M/h has no F7-minor": has_minor(M.contract(hb), N) is None,
        "|E(M)|-|E(F7)| = 5": M.n - N.n == 5,
    }
    return ExampleConstruction(reading, M, N, Q, h, checks, pairs)


def example_readings() -> dict[str, ExampleConstruction]:
    return {r: paper_example_augmented_quad(r) for r in ("A", "B")}


__all__ = [
    "ExampleConstruction",
    "build_example",
    "example_readings",
    "paper_example_augmented_quad",
]
