"""Recursive recognition of contractible graphs and discrete spheres.

The definitions are the inductive graph-theoretic ones: the empty graph is the
(-1)-sphere; a k-sphere is a graph all of whose unit spheres are (k-1)-spheres
and which loses contractibility-obstruction after deleting one vertex; a graph
is contractible when some vertex has a contractible unit sphere and deleting it
leaves a contractible graph (one point is contractible, the empty graph is not).

Exact recursion is exponential, so verdicts are memoized on the literal vertex
subset inside a fixed ambient graph (the same subsets recur constantly in
filtrations), pruned by screens that are theorems of the definition:

* a contractible graph is connected;
* a cone (some vertex adjacent to all others) is contractible;
* deleting a vertex whose subset-link is a cone preserves Betti numbers, and a
  contractible graph has the Betti numbers of a point.

Above the configured recursion cap only certificate-based answers are given
(greedy collapse to a point, disconnection, a non-point Betti vector); anything
still ambiguous raises ResourceLimitError rather than guessing.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import betti_numbers, whitney_complex
from .errors import ResourceLimitError
from .graphs import Graph, induced_subgraph

DEFAULT_RECURSION_CAP = 25
_BETTI_SCREEN_MIN = 10

_memo_by_ambient: "weakref.WeakKeyDictionary[Graph, dict]" = weakref.WeakKeyDictionary()


@dataclass(frozen=True)
class SphereVerdict:
    """Outcome of sphere recognition.

    status is one of "sphere", "contractible", "neither", "unknown"; dim is set
    for spheres (>= -1).  method records whether the literal recursion ran
    ("exact") or the screened large-graph path ("fast").
    """

    status: str
    dim: int | None
    method: str

    @property
    def is_sphere(self) -> bool:
        return self.status == "sphere"


def _memo(amb: Graph) -> dict:
    m = _memo_by_ambient.get(amb)
    if m is None:
        m = {"contract": {}, "sphere": {}, "dim": {}}
        _memo_by_ambient[amb] = m
    return m


def _link(amb: Graph, sub: frozenset, v: int) -> frozenset:
    return amb.neighbor_set(v) & sub


def _connected(amb: Graph, sub: frozenset) -> bool:
    if not sub:
        return False
    start = next(iter(sub))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in amb.neighbor_set(u):
            if w in sub and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(sub)


def _cone_apex(amb: Graph, sub: frozenset) -> int | None:
    want = len(sub) - 1
    for v in sub:
        if len(amb.neighbor_set(v) & sub) == want:
            return v
    return None


def _betti_of_subset(amb: Graph, sub: frozenset):
    K = whitney_complex(induced_subgraph(amb, sub))
    return tuple(betti_numbers(K).b)


def _is_point_pattern(b: tuple[int, ...]) -> bool:
    return len(b) >= 1 and b[0] == 1 and all(x == 0 for x in b[1:])


def _sphere_pattern(b: tuple[int, ...], k: int) -> bool:
    if k == 0:
        return b[0] == 2 and all(x == 0 for x in b[1:])
    want = [1] + [0] * (k - 1) + [1]
    got = list(b) + [0] * max(0, k + 1 - len(b))
    return got[: k + 1] == want and all(x == 0 for x in got[k + 1 :])


def _greedy_collapse(amb: Graph, sub: frozenset) -> frozenset:
    """Delete vertices whose subset-link is a point or a cone, until stuck.

    Every deletion is a certified contractible-link removal, so reaching a
    single vertex certifies contractibility of the input.
    """
    current = set(sub)
    changed = True
    while changed and len(current) > 1:
        changed = False
        for v in sorted(current):
            link = amb.neighbor_set(v) & current
            if not link:
                continue
            if len(link) == 1 or _cone_apex(amb, frozenset(link)) is not None:
                current.remove(v)
                changed = True
                break
    return frozenset(current)


def _contractible(amb: Graph, sub: frozenset, cap: int) -> bool:
    if not sub:
        return False
    if len(sub) == 1:
        return True
    memo = _memo(amb)["contract"]
    if sub in memo:
        return memo[sub]
    result = _contractible_uncached(amb, sub, cap)
    memo[sub] = result
    return result


def _contractible_uncached(amb: Graph, sub: frozenset, cap: int) -> bool:
    if not _connected(amb, sub):
        return False
    if _cone_apex(amb, sub) is not None:
        return True
    if len(sub) > cap:
        return _contractible_large(amb, sub, cap)
    if len(sub) >= _BETTI_SCREEN_MIN and not _is_point_pattern(_betti_of_subset(amb, sub)):
        return False
    for v in sorted(sub):
        link = _link(amb, sub, v)
        if _contractible(amb, link, cap) and _contractible(amb, sub - {v}, cap):
            return True
    return False


def _contractible_large(amb: Graph, sub: frozenset, cap: int) -> bool:
    reduced = _greedy_collapse(amb, sub)
    if len(reduced) == 1:
        return True
    if not _connected(amb, reduced):
        return False
    if not _is_point_pattern(_betti_of_subset(amb, reduced)):
        return False
    if len(reduced) <= cap and _contractible(amb, reduced, cap):
        return True
    raise ResourceLimitError(
        f"contractibility undecided for {len(sub)} vertices (cap {cap}): "
        "collapse stalled with point-like Betti vector"
    )


def is_contractible(G: Graph, cap: int = DEFAULT_RECURSION_CAP) -> bool:
    """Exact answer to the recursive contractibility definition."""
    return _contractible(G, frozenset(G.labels), cap)


def _sphere(amb: Graph, sub: frozenset, cap: int) -> SphereVerdict:
    if not sub:
        return SphereVerdict("sphere", -1, "exact")
    memo = _memo(amb)["sphere"]
    if sub in memo:
        return memo[sub]
    if len(sub) <= cap:
        verdict = _sphere_exact(amb, sub, cap)
    else:
        verdict = _sphere_fast(amb, sub, cap)
    memo[sub] = verdict
    return verdict


def _unit_sphere_dims(amb: Graph, sub: frozenset, cap: int) -> int | None:
    """Common sphere dimension of all subset-links, or None if not a k-graph."""
    kdim: int | None = None
    for v in sorted(sub):
        verd = _sphere(amb, _link(amb, sub, v), cap)
        if not verd.is_sphere:
            return None
        if kdim is None:
            kdim = verd.dim
        elif verd.dim != kdim:
            return None
    return kdim


def _sphere_exact(amb: Graph, sub: frozenset, cap: int) -> SphereVerdict:
    kdim = _unit_sphere_dims(amb, sub, cap)
    if kdim is not None:
        k = kdim + 1
        for v in sorted(sub):
            if _contractible(amb, sub - {v}, cap):
                return SphereVerdict("sphere", k, "exact")
    status = "contractible" if _contractible(amb, sub, cap) else "neither"
    return SphereVerdict(status, None, "exact")


def _sphere_fast(amb: Graph, sub: frozenset, cap: int) -> SphereVerdict:
    try:
        kdim = _unit_sphere_dims(amb, sub, cap)
        if kdim is not None:
            k = kdim + 1
            if _sphere_pattern(_betti_of_subset(amb, sub), k):
                return SphereVerdict("sphere", k, "fast")
        status = "contractible" if _contractible(amb, sub, cap) else "neither"
        return SphereVerdict(status, None, "fast")
    except ResourceLimitError:
        return SphereVerdict("unknown", None, "fast")


def sphere_dimension(G: Graph, cap: int = DEFAULT_RECURSION_CAP) -> SphereVerdict:
    """Recognize G as a discrete sphere, a contractible graph, or neither.

    Never raises: resource exhaustion degrades to an "unknown" verdict.
    """
    try:
        return _sphere(G, frozenset(G.labels), cap)
    except ResourceLimitError:
        return SphereVerdict("unknown", None, "fast")


def sphere_dimension_within(G: Graph, labels, cap: int = DEFAULT_RECURSION_CAP) -> SphereVerdict:
    """Sphere recognition of an induced subgraph, sharing G's memo tables."""
    try:
        return _sphere(G, frozenset(labels), cap)
    except ResourceLimitError:
        return SphereVerdict("unknown", None, "fast")


def inductive_dimension(G: Graph, within=None) -> Fraction:
    """Exact rational inductive dimension: dim(G) = 1 + avg over unit-sphere dims."""
    sub = frozenset(G.labels if within is None else within)
    return _dim(G, sub)


def _dim(amb: Graph, sub: frozenset) -> Fraction:
    if not sub:
        return Fraction(-1)
    memo = _memo(amb)["dim"]
    if sub in memo:
        return memo[sub]
    total = Fraction(0)
    for v in sub:
        total += _dim(amb, _link(amb, sub, v))
    result = 1 + total / len(sub)
    memo[sub] = result
    return result


def homotopy_reduce(G: Graph, cap: int = DEFAULT_RECURSION_CAP) -> Graph:
    """Delete vertices with contractible unit spheres until none remains.

    Deletions scan labels in ascending order and restart after every removal,
    so the result is deterministic.  Betti numbers are preserved.
    """
    sub = set(G.labels)
    changed = True
    while changed:
        changed = False
        for v in sorted(sub):
            link = G.neighbor_set(v) & sub
            if _contractible(G, frozenset(link), cap):
                sub.remove(v)
                changed = True
                break
    return induced_subgraph(G, sub)
