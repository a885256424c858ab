"""Detection and certification of the named 3-separator families.

Each family is pinned by a template: its size, rank, corank, and the exact
lists of circuits and cocircuits of ``M`` inside ``P``.  A set ``P`` matches
when some labelling of ``P`` by the template roles carries the template
lists onto the circuits and cocircuits of ``M`` contained in ``P``.  The
named quads of a family are circuits and cocircuits inside ``P`` and are
part of those lists.

Detectors seed candidates from pairs of 4-element circuits or cocircuits
(disjoint quads for the double-quad family, the leg graph of quads for the
spike-like family).  The ``*_oracle`` functions scan every subset of the
right size instead and are kept as test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .bits import bits_of, masks_of_size, to_mask
from .connectivity import is_3_connected, lambda_, triangles
from .errors import PreconditionError
from .matroid import Matroid, check_limit, cosimplify, simplify
from .minors import classify_elements, minor_search


KINDS = (
    "QUAD",
    "SPIKE_LIKE",
    "TWISTED",
    "QUAD_PLUS_PAIR",
    "DOUBLE_QUAD_SPIDER",
    "VAMOS_LIKE_PRIMAL",
    "VAMOS_LIKE_DUAL",
    "PLANE_SPIKE",
    "COPLANE_SPIKE",
)

# kinds that cannot occur in graphic matroids
NON_GRAPHIC_KINDS = ("SPIKE_LIKE", "TWISTED", "QUAD_PLUS_PAIR", "DOUBLE_QUAD_SPIDER", "VAMOS_LIKE_PRIMAL", "VAMOS_LIKE_DUAL")

# kinds for which the per-element connectivity statement needs |E - P| >= 3
SIZE_CONDITION_KINDS = ("TWISTED", "QUAD_PLUS_PAIR", "VAMOS_LIKE_PRIMAL", "VAMOS_LIKE_DUAL")

# template kinds whose dual is the same kind with different role labels
SELF_DUAL_TEMPLATE_KINDS = ("TWISTED", "QUAD_PLUS_PAIR", "DOUBLE_QUAD_SPIDER")

DUAL_KIND = {
    "VAMOS_LIKE_PRIMAL": "VAMOS_LIKE_DUAL",
    "VAMOS_LIKE_DUAL": "VAMOS_LIKE_PRIMAL",
    "PLANE_SPIKE": "COPLANE_SPIKE",
    "COPLANE_SPIKE": "PLANE_SPIKE",
}


@dataclass(frozen=True)
class Template:
    kind: str
    roles: tuple[str, ...]
    rank: int
    circuits: tuple[tuple[str, ...], ...]
    cocircuits: tuple[tuple[str, ...], ...]


TWISTED = Template(
    "TWISTED",
    ("s1", "s2", "t1", "t2", "u1", "u2"),
    4,
    (("s1", "s2", "t2", "u1"), ("s1", "t1", "t2", "u2"), ("s2", "t1", "u1", "u2")),
    (("s1", "s2", "t1", "t2"), ("s1", "s2", "u1", "u2"), ("t1", "t2", "u1", "u2")),
)

QUAD_PLUS_PAIR = Template(
    "QUAD_PLUS_PAIR",
    ("p1", "p2", "q1", "q2", "q3", "q4"),
    4,
    (("q1", "q2", "q3", "q4"), ("p1", "p2", "q1", "q2"), ("p1", "p2", "q3", "q4")),
    (("q1", "q2", "q3", "q4"), ("p1", "p2", "q1", "q3"), ("p1", "p2", "q2", "q4")),
)

DOUBLE_QUAD_SPIDER = Template(
    "DOUBLE_QUAD_SPIDER",
    ("p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4"),
    5,
    (
        ("p1", "p2", "p3", "p4"),
        ("q1", "q2", "q3", "q4"),
        ("p1", "p2", "q1", "q2"),
        ("p1", "p2", "q3", "q4"),
        ("p3", "p4", "q1", "q2"),
        ("p3", "p4", "q3", "q4"),
    ),
    (
        ("p1", "p2", "p3", "p4"),
        ("q1", "q2", "q3", "q4"),
        ("p1", "p3", "q1", "q3"),
        ("p1", "p3", "q2", "q4"),
        ("p2", "p4", "q1", "q3"),
        ("p2", "p4", "q2", "q4"),
    ),
)

VAMOS_LIKE = Template(
    "VAMOS_LIKE_PRIMAL",
    ("p1", "p2", "q1", "q2", "s1", "s2"),
    4,
    (("p1", "p2", "s1", "s2"), ("q1", "q2", "s1", "s2"), ("p1", "p2", "q1", "q2")),
    (
        ("p1", "q1", "s1", "s2"),
        ("p2", "q2", "s1", "s2"),
        ("p1", "p2", "q1", "q2", "s1"),
        ("p1", "p2", "q1", "q2", "s2"),
    ),
)

TEMPLATES = {t.kind: t for t in (TWISTED, QUAD_PLUS_PAIR, DOUBLE_QUAD_SPIDER, VAMOS_LIKE)}


@dataclass(frozen=True)
class SeparatorCertificate:
    kind: str
    elements: frozenset[int]
    roles: tuple[tuple[str, int], ...] = field(default=(), compare=False)
    legs: tuple[tuple[int, int], ...] = field(default=(), compare=False)
    aug: int | None = None
    aug_side: str | None = None  # "closure" | "coclosure"
    problematic: bool | None = field(default=None, compare=False)
    extended: bool = False

    @property
    def mask(self) -> int:
        return to_mask(self.elements)

    def role_map(self) -> dict[str, int]:
        return dict(self.roles)

    def augmented(self, z: int, side: str) -> "SeparatorCertificate":
        return SeparatorCertificate(self.kind, self.elements, self.roles, self.legs, z, side, None, self.extended)

    def validate(self, M: Matroid) -> bool:
        return validate_certificate(M, self)

    def dual_kind(self) -> str:
        return DUAL_KIND.get(self.kind, self.kind)

    def to_dict(self, M: Matroid | None = None) -> dict:
        lab = (lambda e: M.labels[e]) if M is not None else (lambda e: e)
        out = {
            "kind": self.kind,
            "elements": sorted(lab(e) for e in self.elements),
            "roles": {k: lab(v) for k, v in self.roles},
        }
        if self.legs:
            out["legs"] = [[lab(a), lab(b)] for a, b in self.legs]
        if self.aug is not None:
            out["aug"] = lab(self.aug)
            out["aug_side"] = self.aug_side
        if self.problematic is not None:
            out["problematic"] = self.problematic
        if self.extended:
            out["extended"] = True
        return out


# -- template matching ------------------------------------------------------------------


def _inside(masks, P: int) -> frozenset[int]:
    return frozenset(c for c in masks if c & P == c)


def _basic_ok(M: Matroid, P: int, rank: int) -> bool:
    return M.rank_mask(P) == rank and M.corank_mask(P) == rank and lambda_(M, P) == 2


def match_template(M: Matroid, P: int, T: Template) -> dict[str, int] | None:
    """A labelling of ``P`` realising template ``T`` exactly, or ``None``."""
    if P.bit_count() != len(T.roles) or not _basic_ok(M, P, T.rank):
        return None
    circ = _inside(M.circuit_masks(), P)
    coc = _inside(M.cocircuit_masks(), P)
    if len(circ) != len(T.circuits) or len(coc) != len(T.cocircuits):
        return None
    if sorted(c.bit_count() for c in circ) != sorted(len(c) for c in T.circuits):
        return None
    if sorted(c.bit_count() for c in coc) != sorted(len(c) for c in T.cocircuits):
        return None
    idx = {r: i for i, r in enumerate(T.roles)}
    tc = [tuple(idx[x] for x in c) for c in T.circuits]
    tk = [tuple(idx[x] for x in c) for c in T.cocircuits]
    els = bits_of(P)
    # assign roles position by position, checking sets as soon as they are complete
    k = len(T.roles)
    done_c = [[c for c in tc if max(c) == i] for i in range(k)]
    done_k = [[c for c in tk if max(c) == i] for i in range(k)]
    img = [0] * k

    def rec(i: int, used: int) -> bool:
        if i == k:
            return True
        for e in els:
            if used >> e & 1:
                continue
            img[i] = e
            if all(sum(1 << img[j] for j in c) in circ for c in done_c[i]) and all(
                sum(1 << img[j] for j in c) in coc for c in done_k[i]
            ):
                if rec(i + 1, used | 1 << e):
                    return True
        return False

    if rec(0, 0):
        return {r: img[i] for i, r in enumerate(T.roles)}
    return None


def _cert(kind: str, P: int, roles: dict[str, int]) -> SeparatorCertificate:
    return SeparatorCertificate(kind, frozenset(bits_of(P)), tuple(sorted(roles.items())))


def quads(M: Matroid) -> list[int]:
    coc = M.cocircuit_set()
    return [c for c in M.circuit_masks() if c.bit_count() == 4 and c in coc]


def find_quads(M: Matroid) -> list[frozenset[int]]:
    return [frozenset(bits_of(q)) for q in quads(M)]


def _find_by_template(M: Matroid, T: Template, candidates) -> list[SeparatorCertificate]:
    out = []
    for P in sorted(set(candidates)):
        roles = match_template(M, P, T)
        if roles is not None:
            out.append(_cert(T.kind, P, roles))
    return out


def _four_sets(masks) -> list[int]:
    return [c for c in masks if c.bit_count() == 4]


def _pair_unions(sets: list[int], size: int = 6, meet: int = 2) -> set[int]:
    out = set()
    for a, b in combinations(sets, 2):
        if (a & b).bit_count() == meet:
            u = a | b
            if u.bit_count() == size:
                out.add(u)
    return out


def find_twisted(M: Matroid) -> list[SeparatorCertificate]:
    return _find_by_template(M, TWISTED, _pair_unions(_four_sets(M.cocircuit_masks())))


def find_quad_plus_pair(M: Matroid) -> list[SeparatorCertificate]:
    return _find_by_template(M, QUAD_PLUS_PAIR, _pair_unions(_four_sets(M.circuit_masks())))


def find_double_quad_spider(M: Matroid) -> list[SeparatorCertificate]:
    qs = quads(M)
    cands = {a | b for a, b in combinations(qs, 2) if not a & b}
    return _find_by_template(M, DOUBLE_QUAD_SPIDER, cands)


def find_vamos_like(M: Matroid) -> list[SeparatorCertificate]:
    """Vamos-like separators of ``M`` and (as ``VAMOS_LIKE_DUAL``) of ``M*``."""
    out = _find_by_template(M, VAMOS_LIKE, _pair_unions(_four_sets(M.circuit_masks())))
    D = M.dual()
    for c in _find_by_template(D, VAMOS_LIKE, _pair_unions(_four_sets(D.circuit_masks()))):
        out.append(SeparatorCertificate("VAMOS_LIKE_DUAL", c.elements, c.roles))
    return out


# -- spike-like ----------------------------------------------------------------------


def _leg_graph(M: Matroid) -> tuple[list[int], dict[int, set[int]]]:
    adj: dict[int, set[int]] = {}
    for q in quads(M):
        a, b, c, d = bits_of(q)
        for x, y in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            lx = 1 << x[0] | 1 << x[1]
            ly = 1 << y[0] | 1 << y[1]
            adj.setdefault(lx, set()).add(ly)
            adj.setdefault(ly, set()).add(lx)
    return sorted(adj), adj


def _spike_like_ok(M: Matroid, P: int) -> bool:
    t = P.bit_count() // 2
    return t >= 3 and _basic_ok(M, P, t + 1)


def find_spike_like(M: Matroid, maximal_only: bool = False) -> list[SeparatorCertificate]:
    """Spike-like separators, found as cliques of pairwise quad-forming disjoint legs."""
    legs, adj = _leg_graph(M)
    found: dict[int, tuple[int, ...]] = {}

    def grow(clique: list[int], union: int, cands: list[int]):
        if len(clique) >= 3 and union not in found and _spike_like_ok(M, union):
            found[union] = tuple(clique)
        for i, L in enumerate(cands):
            if L & union:
                continue
            nxt = [x for x in cands[i + 1:] if x in adj[L] and not x & (union | L)]
            grow(clique + [L], union | L, nxt)

    for i, L in enumerate(legs):
        grow([L], L, [x for x in legs[i + 1:] if x in adj[L]])
    return _spike_certs(found, maximal_only)


def _spike_certs(found: dict[int, tuple[int, ...]], maximal_only: bool) -> list[SeparatorCertificate]:
    keys = sorted(found)
    out = []
    for P in keys:
        if maximal_only and any(o != P and o & P == P for o in keys):
            continue
        legs = tuple(sorted(bits_of(L) for L in found[P]))
        roles = tuple((f"L{i + 1}_{j + 1}", e) for i, leg in enumerate(legs) for j, e in enumerate(leg))
        out.append(SeparatorCertificate("SPIKE_LIKE", frozenset(bits_of(P)), roles, legs))
    return out


def _perfect_matchings(els: tuple[int, ...]):
    if not els:
        yield ()
        return
    a = els[0]
    for i in range(1, len(els)):
        b = els[i]
        rest = els[1:i] + els[i + 1:]
        for m in _perfect_matchings(rest):
            yield ((a, b),) + m


def find_spike_like_oracle(M: Matroid, maximal_only: bool = False) -> list[SeparatorCertificate]:
    check_limit(M.n, "spike-like oracle")
    qset = set(quads(M))
    found = {}
    for size in range(6, M.n + 1, 2):
        for P in masks_of_size(M.n, size):
            if not _spike_like_ok(M, P):
                continue
            for m in _perfect_matchings(bits_of(P)):
                Ls = [1 << a | 1 << b for a, b in m]
                if all(a | b in qset for a, b in combinations(Ls, 2)):
                    found[P] = tuple(sorted(Ls))
                    break
    return _spike_certs(found, maximal_only)


# -- planes and coplanes containing a quad -----------------------------------------


def _is_uniform_rank3(M: Matroid, X: int) -> bool:
    if M.rank_mask(X) != 3:
        return False
    return all(M.rank_mask(T) == 3 for T in _subsets_of(X, 3))


def _subsets_of(X: int, k: int):
    for c in combinations(bits_of(X), k):
        yield sum(1 << e for e in c)


def _plane_cert(kind: str, q: int, z: int | None, P: int) -> SeparatorCertificate:
    roles = tuple((f"q{i + 1}", e) for i, e in enumerate(bits_of(q)))
    if z is not None:
        roles += (("z", z),)
    return SeparatorCertificate(kind, frozenset(bits_of(P)), roles, extended=z is None)


def _dedupe(certs) -> list[SeparatorCertificate]:
    seen = {}
    for c in certs:
        seen.setdefault((c.kind, c.extended, c.mask), c)
    return sorted(seen.values(), key=lambda c: (c.kind, c.extended, sorted(c.elements)))


def find_plane_spikes(M: Matroid, include_extended: bool = True) -> list[SeparatorCertificate]:
    """Quads ``Q`` and elements ``z`` with ``Q + z`` a free 5-point plane (or, dually, coplane).

    With ``include_extended``, the whole closure of such a ``Q`` is reported
    too when it has more than five elements, flagged ``extended``.
    """
    out = []
    D = M.dual()
    for kind, A in (("PLANE_SPIKE", M), ("COPLANE_SPIKE", D)):
        for q in quads(M):
            F = A.closure_mask(q)
            hit = False
            for z in bits_of(F & ~q):
                if _is_uniform_rank3(A, q | 1 << z):
                    out.append(_plane_cert(kind, q, z, q | 1 << z))
                    hit = True
            if include_extended and hit and F.bit_count() > 5:
                out.append(_plane_cert(kind, q, None, F))
    return _dedupe(out)


def find_plane_spikes_oracle(M: Matroid) -> list[SeparatorCertificate]:
    out = []
    D = M.dual()
    qs = set(quads(M))
    for kind, A in (("PLANE_SPIKE", M), ("COPLANE_SPIKE", D)):
        for P in masks_of_size(M.n, 5):
            if not _is_uniform_rank3(A, P):
                continue
            for q in _subsets_of(P, 4):
                if q in qs:
                    (z,) = bits_of(P & ~q)
                    out.append(_plane_cert(kind, q, z, P))
    return _dedupe(out)


# -- brute-force oracles ---------------------------------------------------------------


def _oracle_by_template(M: Matroid, T: Template) -> list[SeparatorCertificate]:
    check_limit(M.n, "template oracle")
    return _find_by_template(M, T, masks_of_size(M.n, len(T.roles)))


def find_twisted_oracle(M: Matroid) -> list[SeparatorCertificate]:
    return _oracle_by_template(M, TWISTED)


def find_quad_plus_pair_oracle(M: Matroid) -> list[SeparatorCertificate]:
    return _oracle_by_template(M, QUAD_PLUS_PAIR)


def find_double_quad_spider_oracle(M: Matroid) -> list[SeparatorCertificate]:
    return _oracle_by_template(M, DOUBLE_QUAD_SPIDER)


def find_vamos_like_oracle(M: Matroid) -> list[SeparatorCertificate]:
    out = _oracle_by_template(M, VAMOS_LIKE)
    for c in _oracle_by_template(M.dual(), VAMOS_LIKE):
        out.append(SeparatorCertificate("VAMOS_LIKE_DUAL", c.elements, c.roles))
    return out


def find_quads_oracle(M: Matroid) -> list[frozenset[int]]:
    out = []
    for q in masks_of_size(M.n, 4):
        if M.is_circuit_mask(q) and M.is_cocircuit_mask(q):
            out.append(frozenset(bits_of(q)))
    return out


DETECTORS = {
    "SPIKE_LIKE": lambda M: find_spike_like(M),
    "TWISTED": find_twisted,
    "QUAD_PLUS_PAIR": find_quad_plus_pair,
    "DOUBLE_QUAD_SPIDER": find_double_quad_spider,
    "VAMOS_LIKE": find_vamos_like,
    "PLANE_SPIKE": lambda M: find_plane_spikes(M, include_extended=False),
}

ORACLES = {
    "SPIKE_LIKE": lambda M: find_spike_like_oracle(M),
    "TWISTED": find_twisted_oracle,
    "QUAD_PLUS_PAIR": find_quad_plus_pair_oracle,
    "DOUBLE_QUAD_SPIDER": find_double_quad_spider_oracle,
    "VAMOS_LIKE": find_vamos_like_oracle,
    "PLANE_SPIKE": find_plane_spikes_oracle,
}


def quad_certificates(M: Matroid) -> list[SeparatorCertificate]:
    return [
        SeparatorCertificate("QUAD", frozenset(bits_of(q)), tuple((f"q{i + 1}", e) for i, e in enumerate(bits_of(q))))
        for q in quads(M)
    ]


def detect_all(M: Matroid, kinds=None, maximal_spikes: bool = False) -> list[SeparatorCertificate]:
    """Every certificate of the requested kinds (all kinds by default)."""
    kinds = set(kinds or KINDS)
    out: list[SeparatorCertificate] = []
    if "QUAD" in kinds:
        out += quad_certificates(M)
    if "SPIKE_LIKE" in kinds:
        out += find_spike_like(M, maximal_only=maximal_spikes)
    if "TWISTED" in kinds:
        out += find_twisted(M)
    if "QUAD_PLUS_PAIR" in kinds:
        out += find_quad_plus_pair(M)
    if "DOUBLE_QUAD_SPIDER" in kinds:
        out += find_double_quad_spider(M)
    if kinds & {"VAMOS_LIKE_PRIMAL", "VAMOS_LIKE_DUAL"}:
        out += [c for c in find_vamos_like(M) if c.kind in kinds]
    if kinds & {"PLANE_SPIKE", "COPLANE_SPIKE"}:
        out += [c for c in find_plane_spikes(M) if c.kind in kinds]
    return out


# -- certificate validation -----------------------------------------------------------


def validate_certificate(M: Matroid, cert: SeparatorCertificate) -> bool:
    """Re-check the defining clauses of ``cert`` directly against ``M``."""
    P = cert.mask
    roles = cert.role_map()
    if cert.kind == "QUAD":
        ok = P.bit_count() == 4 and M.is_circuit_mask(P) and M.is_cocircuit_mask(P)
    elif cert.kind == "SPIKE_LIKE":
        Ls = [1 << a | 1 << b for a, b in cert.legs]
        ok = (
            sum(Ls) == P
            and len(Ls) * 2 == P.bit_count()
            and _spike_like_ok(M, P)
            and all(M.is_circuit_mask(a | b) and M.is_cocircuit_mask(a | b) for a, b in combinations(Ls, 2))
        )
    elif cert.kind in ("PLANE_SPIKE", "COPLANE_SPIKE"):
        A = M if cert.kind == "PLANE_SPIKE" else M.dual()
        q = sum(1 << roles[f"q{i}"] for i in range(1, 5))
        ok = M.is_circuit_mask(q) and M.is_cocircuit_mask(q) and q & P == q
        if cert.extended:
            ok = ok and A.closure_mask(q) == P and P.bit_count() > 5
        else:
            ok = ok and P.bit_count() == 5 and _is_uniform_rank3(A, P)
    else:
        if cert.kind == "VAMOS_LIKE_DUAL":
            A, T = M.dual(), VAMOS_LIKE
        else:
            A, T = M, TEMPLATES[cert.kind]
        ok = set(roles) == set(T.roles) and sum(1 << e for e in roles.values()) == P and _basic_ok(A, P, T.rank)
        if ok:
            circ = _inside(A.circuit_masks(), P)
            coc = _inside(A.cocircuit_masks(), P)
            want_c = {sum(1 << roles[x] for x in c) for c in T.circuits}
            want_k = {sum(1 << roles[x] for x in c) for c in T.cocircuits}
            ok = circ == want_c and coc == want_k
    if ok and cert.aug is not None:
        z = cert.aug
        in_cl = bool(M.closure_mask(P) >> z & 1)
        in_co = bool(M.coclosure_mask(P) >> z & 1)
        ok = not P >> z & 1 and lambda_(M, P | 1 << z) == 2 and in_cl != in_co
        ok = ok and cert.aug_side == ("closure" if in_cl else "coclosure")
    return ok


def dual_certificate(cert: SeparatorCertificate, M: Matroid | None = None) -> SeparatorCertificate:
    """The certificate read in the dual matroid.

    Circuit and cocircuit roles swap.  The twisted, quad-plus-pair and
    double-quad kinds are closed under duality but their role labels are
    not, so for those ``M`` is needed and the roles are matched again in
    ``M*``.
    """
    side = {"closure": "coclosure", "coclosure": "closure"}.get(cert.aug_side, cert.aug_side)
    roles = cert.roles
    if cert.kind in SELF_DUAL_TEMPLATE_KINDS:
        if M is None:
            raise PreconditionError(f"dualising a {cert.kind} certificate needs the matroid")
        found = match_template(M.dual(), cert.mask, TEMPLATES[cert.kind])
        if found is None:
            raise PreconditionError("certificate does not hold in M")
        roles = tuple(sorted(found.items()))
    return SeparatorCertificate(cert.dual_kind(), cert.elements, roles, cert.legs, cert.aug, side, None, cert.extended)


# -- augmentations -----------------------------------------------------------------------


def augmentations(M: Matroid, cert: SeparatorCertificate) -> list[tuple[int, str]]:
    """Elements ``z`` outside ``P`` with ``P + z`` exactly 3-separating, with their side."""
    P = cert.mask
    if not validate_certificate(M, cert):
        raise PreconditionError("certificate does not hold in M")
    if M.n - P.bit_count() < 3:
        raise PreconditionError("need |E - P| >= 3")
    cl = M.closure_mask(P)
    co = M.coclosure_mask(P)
    out = []
    for z in range(M.n):
        if P >> z & 1 or lambda_(M, P | 1 << z) != 2:
            continue
        a, b = bool(cl >> z & 1), bool(co >> z & 1)
        assert a != b, "an augmenting element lies in exactly one of cl(P), cocl(P)"
        out.append((z, "closure" if a else "coclosure"))
    return out


def has_minor_within(M: Matroid, N: Matroid, allowed: int) -> bool:
    """Whether some N-labelling removes only elements of ``allowed``."""
    return minor_search(N).find(M, allowed=allowed) is not None


def is_problematic_augmentation(M: Matroid, N: Matroid, cert: SeparatorCertificate, z: int) -> bool:
    P = cert.mask
    sides = dict(augmentations(M, cert))
    if z not in sides:
        raise PreconditionError("z does not augment P")
    flags = classify_elements(M, N)[z]
    if sides[z] == "closure":
        a = flags.contractible and not flags.deletable
    else:
        a = flags.deletable and not flags.contractible
    return a and has_minor_within(M, N, P | 1 << z)


# -- per-element connectivity and triangle checks ---------------------------------------


@dataclass
class ConnectivityReport:
    per_element: dict[int, tuple[bool, bool]]

    @property
    def ok(self) -> bool:
        return all(a and b for a, b in self.per_element.values())

    def failures(self) -> list[int]:
        return [p for p, (a, b) in self.per_element.items() if not (a and b)]


def separator_connectivity_check(M: Matroid, cert: SeparatorCertificate) -> ConnectivityReport:
    """``si(M/p)`` and ``co(M\\p)`` for each ``p`` in ``P``; failures are findings."""
    if not is_3_connected(M):
        raise PreconditionError("M must be 3-connected")
    if not validate_certificate(M, cert):
        raise PreconditionError("certificate does not hold in M")
    if cert.kind in SIZE_CONDITION_KINDS and M.n - len(cert.elements) < 3:
        raise PreconditionError("need |E - P| >= 3 for this kind")
    out = {}
    for p in sorted(cert.elements):
        s, _ = simplify(M.contract(1 << p))
        c, _ = cosimplify(M.delete(1 << p))
        out[p] = (is_3_connected(s), is_3_connected(c))
    return ConnectivityReport(out)


@dataclass
class TriangleLegReport:
    violations: list[tuple[int, int]]  # (triangle mask, leg index)

    @property
    def ok(self) -> bool:
        return not self.violations


def triangle_leg_check(M: Matroid, P, legs) -> TriangleLegReport:
    """Every triangle meeting a leg contains it (legs: pairs whose unions are cocircuits)."""
    P = M._mask(P)
    Ls = [to_mask(L) for L in legs]
    if len(Ls) < 3 or any(L.bit_count() != 2 for L in Ls) or sum(Ls) != P:
        raise PreconditionError("legs must partition P into at least three pairs")
    tris = triangles(M)
    if any(T & P == T for T in tris):
        raise PreconditionError("P must contain no triangles")
    for i, j in combinations(range(len(Ls)), 2):
        if (i, j) == (0, 1):
            continue
        if not M.is_cocircuit_mask(Ls[i] | Ls[j]):
            raise PreconditionError("leg unions must be cocircuits")
    bad = []
    for T in tris:
        for i, L in enumerate(Ls):
            if T & L and T & L != L:
                bad.append((T, i))
    return TriangleLegReport(bad)


__all__ = [
    "DETECTORS",
    "KINDS",
    "NON_GRAPHIC_KINDS",
    "ORACLES",
    "SeparatorCertificate",
    "augmentations",
    "detect_all",
    "dual_certificate",
    "find_double_quad_spider",
    "find_plane_spikes",
    "find_quad_plus_pair",
    "find_quads",
    "find_spike_like",
    "find_twisted",
    "find_vamos_like",
    "is_problematic_augmentation",
    "match_template",
    "separator_connectivity_check",
    "triangle_leg_check",
    "validate_certificate",
]
