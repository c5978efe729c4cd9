"""Whitney complexes, boundary operators, exact Betti numbers, Hodge blocks.

Rank strategy: sparse Gaussian elimination over GF(p) (default p = 2^31 - 1)
is the fast path; on small complexes an exact fraction-free integer
elimination recomputes every rank and any disagreement raises, it is never
silently ignored.  Floating point appears only in the Hodge/Witten spectral
cross-checks and in the Lefschetz supertrace, each of which has an exact
counterpart elsewhere in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import InvalidArgumentError, RankDiscrepancyError, ResourceLimitError
from .graphs import Graph, cliques

DEFAULT_FIELD_PRIME = 2**31 - 1
DEFAULT_RATIONAL_BUDGET = 2000
DEFAULT_DENSE_BUDGET = 6000
DEFAULT_WU_BUDGET = 50_000_000
HODGE_TOL = 1e-8
WITTEN_TOL = 1e-6

Column = dict[int, int]


class SimplicialComplex:
    """Simplices grouped by dimension, each an ascending vertex tuple."""

    def __init__(self, simplices_by_dim: list[list[tuple[int, ...]]]):
        self.simplices = tuple(tuple(dim) for dim in simplices_by_dim)
        self.index: dict[tuple[int, ...], tuple[int, int]] = {}
        for k, dim in enumerate(self.simplices):
            for pos, s in enumerate(dim):
                self.index[s] = (k, pos)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(dim) for dim in self.simplices)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def total(self) -> int:
        return sum(self.f_vector)

    def contains(self, s: tuple[int, ...]) -> bool:
        return s in self.index

    def all_simplices(self):
        for dim in self.simplices:
            yield from dim

    def to_json_dict(self) -> dict:
        return {
            "fvector": list(self.f_vector),
            "simplices": [list(s) for s in self.all_simplices()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector})"


@dataclass
class ChainComplex:
    """Sparse boundary matrices; boundaries[k] maps k-chains to (k-1)-chains.

    Each matrix is a list of columns (one per k-simplex); a column maps the
    row position of a face to the sign (-1)^i of the omitted vertex.
    """

    shapes: list[tuple[int, int]]
    boundaries: list[list[Column]]

    def dense(self, k: int) -> np.ndarray:
        """Boundary matrix of dimension k as a dense int64 array."""
        rows, cols = self.shapes[k - 1]
        out = np.zeros((rows, cols), dtype=np.int64)
        for j, col in enumerate(self.boundaries[k - 1]):
            for i, v in col.items():
                out[i, j] = v
        return out


def whitney_complex(G: Graph, dim_cap: int | None = None, max_simplices: int | None = None) -> SimplicialComplex:
    """Clique complex of G up to dim_cap (default unbounded)."""
    by_dim = cliques(G, dim_cap=dim_cap)
    total = sum(len(d) for d in by_dim)
    if max_simplices is not None and total > max_simplices:
        raise ResourceLimitError(f"{total} simplices exceed budget {max_simplices}")
    return SimplicialComplex(by_dim)


def euler_characteristic(K: SimplicialComplex) -> int:
    """Alternating sum of the f-vector."""
    return sum((-1) ** k * v for k, v in enumerate(K.f_vector))


def boundary_matrices(K: SimplicialComplex) -> ChainComplex:
    """Boundary operators with ascending-vertex orientation."""
    shapes = []
    boundaries = []
    for k in range(1, K.dim + 1):
        cols = []
        for s in K.simplices[k]:
            col: Column = {}
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                row = K.index[face][1]
                col[row] = -1 if i % 2 else 1
            cols.append(col)
        shapes.append((len(K.simplices[k - 1]), len(K.simplices[k])))
        boundaries.append(cols)
    return ChainComplex(shapes=shapes, boundaries=boundaries)


# --- rank engines -----------------------------------------------------------


def rank_gf(columns: list[Column], p: int) -> int:
    """Rank over GF(p) by sparse column elimination (pivot = largest row)."""
    pivots: dict[int, Column] = {}
    rank = 0
    for col in columns:
        col = {i: v % p for i, v in col.items() if v % p}
        while col:
            r = max(col)
            piv = pivots.get(r)
            if piv is None:
                inv = pow(col[r], p - 2, p)
                pivots[r] = {i: (v * inv) % p for i, v in col.items()}
                rank += 1
                break
            c = col[r]
            for i, v in piv.items():
                nv = (col.get(i, 0) - c * v) % p
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
        # a column that empties out is dependent; move on
    return rank


def rank_exact(columns: list[Column]) -> int:
    """Exact rank over the rationals via fraction-free integer elimination."""
    pivots: dict[int, Column] = {}
    rank = 0
    for col in columns:
        col = {i: v for i, v in col.items() if v}
        while col:
            r = max(col)
            piv = pivots.get(r)
            if piv is None:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                pivots[r] = {i: v // g for i, v in col.items()}
                rank += 1
                break
            a, b = piv[r], col[r]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new: Column = {}
            for i in set(col) | set(piv):
                nv = ma * col.get(i, 0) - mb * piv.get(i, 0)
                if nv:
                    new[i] = nv
            col = new
            if col:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                if g > 1:
                    col = {i: v // g for i, v in col.items()}
    return rank


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers with provenance of the rank computation."""

    b: tuple[int, ...]
    field_prime: int
    verified_rational: bool

    def padded(self, length: int) -> tuple[int, ...]:
        return self.b + (0,) * (length - len(self.b))

    def __iter__(self):
        return iter(self.b)

    def __getitem__(self, k: int) -> int:
        return self.b[k] if 0 <= k < len(self.b) else 0


def betti_numbers(
    K: SimplicialComplex,
    field_prime: int = DEFAULT_FIELD_PRIME,
    rational_budget: int = DEFAULT_RATIONAL_BUDGET,
) -> BettiVector:
    """b_k = v_k - rank(d_k) - rank(d_{k+1}) over GF(field_prime).

    Complexes with at most rational_budget simplices are recomputed with the
    exact integer elimination; a disagreement raises RankDiscrepancyError so
    the caller can retry with a different prime.
    """
    fv = K.f_vector
    if not fv:
        return BettiVector(b=(), field_prime=field_prime, verified_rational=True)
    chain = boundary_matrices(K)
    ranks = [0] + [rank_gf(cols, field_prime) for cols in chain.boundaries] + [0]
    verified = False
    if K.total <= rational_budget:
        exact = [0] + [rank_exact(cols) for cols in chain.boundaries] + [0]
        if exact != ranks:
            raise RankDiscrepancyError(
                f"rank over GF({field_prime}) disagrees with exact rational rank", field_prime
            )
        verified = True
    b = tuple(fv[k] - ranks[k] - ranks[k + 1] for k in range(len(fv)))
    if sum((-1) ** k * v for k, v in enumerate(b)) != euler_characteristic(K):
        raise RankDiscrepancyError("Betti numbers violate Euler-Poincare", field_prime)
    return BettiVector(b=b, field_prime=field_prime, verified_rational=verified)


# --- spectral cross-checks --------------------------------------------------


def _derivative_dense(K: SimplicialComplex, chain: ChainComplex, k: int) -> np.ndarray:
    """Exterior derivative d_k: k-forms -> (k+1)-forms, as a dense float array."""
    if k + 1 > K.dim:
        return np.zeros((0, K.f_vector[k] if k <= K.dim else 0))
    return chain.dense(k + 1).T.astype(float)


def _laplacian_block(K: SimplicialComplex, chain: ChainComplex, k: int) -> np.ndarray:
    dk = _derivative_dense(K, chain, k)
    lk = dk.T @ dk
    if k >= 1:
        dkm = _derivative_dense(K, chain, k - 1)
        lk = lk + dkm @ dkm.T
    return lk


def _nullity(mat: np.ndarray, tol: float) -> int:
    if mat.shape[0] == 0:
        return 0
    eigs = np.linalg.eigvalsh(mat)
    cutoff = tol * max(1.0, float(eigs[-1]))
    return int(np.sum(eigs < cutoff))


def hodge_nullity(K: SimplicialComplex, k: int, tol: float = HODGE_TOL, dense_budget: int = DEFAULT_DENSE_BUDGET) -> int:
    """Nullity of the Hodge block L_k = d_k^* d_k + d_{k-1} d_{k-1}^*."""
    if K.total > dense_budget:
        raise ResourceLimitError(f"{K.total} simplices exceed dense budget {dense_budget}")
    if k > K.dim or k < 0:
        return 0
    chain = boundary_matrices(K)
    return _nullity(_laplacian_block(K, chain, k), tol)


def simplex_function(K: SimplicialComplex, f: dict[int, float]) -> list[np.ndarray]:
    """Extend a vertex function to all simplices by taking the max vertex value."""
    out = []
    for dim in K.simplices:
        out.append(np.array([max(f[v] for v in s) for s in dim], dtype=float))
    return out


def witten_nullity(
    K: SimplicialComplex,
    f: dict[int, float],
    s: float,
    tol: float = WITTEN_TOL,
    dense_budget: int = DEFAULT_DENSE_BUDGET,
) -> list[int]:
    """Nullities of all blocks of the deformed Laplacian (e^{-sf} d e^{sf}).

    The kernel dimensions are independent of s; that contract is what the
    cross-checks assert.
    """
    if K.total > dense_budget:
        raise ResourceLimitError(f"{K.total} simplices exceed dense budget {dense_budget}")
    for v in K.simplices[0] if K.simplices else []:
        if v[0] not in f:
            raise InvalidArgumentError(f"f undefined on vertex {v[0]}")
    if not K.simplices:
        return []
    chain = boundary_matrices(K)
    fs = simplex_function(K, f)
    deformed = []
    for k in range(K.dim + 1):
        dk = _derivative_dense(K, chain, k)
        if dk.shape[0]:
            dk = np.exp(-s * fs[k + 1])[:, None] * dk * np.exp(s * fs[k])[None, :]
        deformed.append(dk)
    out = []
    for k in range(K.dim + 1):
        lk = deformed[k].T @ deformed[k]
        if k >= 1:
            lk = lk + deformed[k - 1] @ deformed[k - 1].T
        out.append(_nullity(lk, tol))
    return out


# --- Wu characteristic ------------------------------------------------------


def wu_characteristic(K: SimplicialComplex, budget: int = DEFAULT_WU_BUDGET) -> int:
    """Sum of (-1)^(dim x + dim y) over ordered pairs of intersecting simplices.

    Computed exactly through the common-face expansion
        sum_S (-1)^(|S|+1) W(S)^2,   W(S) = sum_{x >= S} (-1)^dim(x),
    where S runs over nonempty simplices; inclusion-exclusion over the shared
    vertex set makes this linear in the number of (simplex, subset) pairs.
    """
    work = sum((2 ** len(s) - 1) for s in K.all_simplices())
    if work > budget:
        raise ResourceLimitError(f"{work} subset terms exceed budget {budget}")
    weight: dict[tuple[int, ...], int] = {}
    for x in K.all_simplices():
        sign = -1 if (len(x) - 1) % 2 else 1
        m = len(x)
        for mask in range(1, 2**m):
            sub = tuple(x[i] for i in range(m) if mask >> i & 1)
            weight[sub] = weight.get(sub, 0) + sign
    total = 0
    for sub, w in weight.items():
        total += (-1) ** (len(sub) + 1) * w * w
    return total


def wu_characteristic_bruteforce(K: SimplicialComplex) -> int:
    """Literal ordered-pair enumeration; quadratic, used as an oracle."""
    sims = [(frozenset(s), len(s) - 1) for s in K.all_simplices()]
    total = 0
    for sx, dx in sims:
        for sy, dy in sims:
            if sx & sy:
                total += (-1) ** (dx + dy)
    return total


# --- Lefschetz numbers ------------------------------------------------------


def _perm_sign(values: list[int]) -> int:
    """Parity of the permutation sorting the given distinct values."""
    sign = 1
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] > vals[j]:
                sign = -sign
    return sign


def _automorphism_matrices(K: SimplicialComplex, T: dict[int, int]) -> list[np.ndarray]:
    """Signed permutation matrices of the induced chain map, one per dimension."""
    mats = []
    for k, dim in enumerate(K.simplices):
        n = len(dim)
        U = np.zeros((n, n))
        for j, s in enumerate(dim):
            image = [T[v] for v in s]
            target = tuple(sorted(image))
            if target not in K.index or K.index[target][0] != k:
                raise InvalidArgumentError(f"T does not map simplex {s} to a simplex")
            U[K.index[target][1], j] = _perm_sign(image)
        mats.append(U)
    return mats


def lefschetz_number(K: SimplicialComplex, T: dict[int, int]) -> tuple[int, int]:
    """(supertrace of the induced map on cohomology, fixed-simplex Brouwer sum).

    The first entry projects the chain map onto harmonic representatives
    (kernels of the Hodge blocks) and supertraces it; the second sums
    (-1)^dim(x) sign(T|x) over setwise-fixed simplices.  The two agree for
    every simplicial automorphism.
    """
    for s in K.all_simplices():
        if any(v not in T for v in s):
            raise InvalidArgumentError("T is not defined on every vertex")
    mats = _automorphism_matrices(K, T)
    if not K.simplices:
        return (0, 0)
    chain = boundary_matrices(K)
    supertrace = 0.0
    for k in range(K.dim + 1):
        lk = _laplacian_block(K, chain, k)
        if lk.shape[0] == 0:
            continue
        eigs, vecs = np.linalg.eigh(lk)
        cutoff = HODGE_TOL * max(1.0, float(eigs[-1]))
        harmonic = vecs[:, eigs < cutoff]
        supertrace += (-1) ** k * float(np.trace(harmonic.T @ mats[k] @ harmonic))
    brouwer = 0
    for k, dim in enumerate(K.simplices):
        for s in dim:
            image = [T[v] for v in s]
            if tuple(sorted(image)) == s:
                brouwer += (-1) ** k * _perm_sign(image)
    return (int(round(supertrace)), brouwer)
