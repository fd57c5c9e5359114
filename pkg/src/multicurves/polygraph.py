"""Planar multigraphs on m points of a circle and their generating functions.

Vertices are ``1..m`` in counterclockwise order.  Two vertices are contiguous
when ``i - j`` is ``0`` or ``+-1`` mod m.  Edges are stored as a mapping from
sorted pairs ``(i, j)``, ``i < j``, to multiplicities.

* ``A_m``: planar multigraphs with no edge between contiguous vertices;
  the simple ones (``A_m^s``) are the dissections of the m-gon.
* ``B_m``: planar multigraphs without self-loops in which every vertex has
  even degree; ``B_m^s`` are the simple ones.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .genfun import IntPoly, RationalGF
from .surface import SurfaceSig

Edge = tuple[int, int]


@dataclass(frozen=True)
class ChordMultigraph:
    m: int
    edges: tuple[tuple[Edge, int], ...] = field(default=())

    def __post_init__(self):
        acc: Counter = Counter()
        for (i, j), mult in self.edges:
            if i == j:
                raise ValueError("self-loops are not allowed")
            if not (1 <= i <= self.m and 1 <= j <= self.m):
                raise ValueError(f"vertex out of range in {(i, j)}")
            acc[(min(i, j), max(i, j))] += mult
        object.__setattr__(self, "edges", tuple(sorted((e, k) for e, k in acc.items() if k > 0)))

    @classmethod
    def simple(cls, m: int, pairs: Iterable[Edge]) -> "ChordMultigraph":
        return cls(m, tuple((p, 1) for p in pairs))

    @classmethod
    def from_mapping(cls, m: int, mult: Mapping[Edge, int]) -> "ChordMultigraph":
        return cls(m, tuple(mult.items()))

    @property
    def support(self) -> tuple[Edge, ...]:
        return tuple(e for e, _ in self.edges)

    @property
    def e(self) -> int:
        return sum(k for _, k in self.edges)

    @property
    def eo(self) -> int:
        """Edge count between non-contiguous vertices."""
        return sum(k for (i, j), k in self.edges if not contiguous(i, j, self.m))

    def degree(self, v: int) -> int:
        return sum(k for (i, j), k in self.edges if v in (i, j))

    def is_simple(self) -> bool:
        return all(k == 1 for _, k in self.edges)

    def is_noncrossing(self) -> bool:
        return all(not crosses(a, b) for a, b in itertools.combinations(self.support, 2))

    def is_even(self) -> bool:
        return all(self.degree(v) % 2 == 0 for v in range(1, self.m + 1))

    def __str__(self):
        parts = [f"p{i}p{j}" + (f"^{k}" if k > 1 else "") for (i, j), k in self.edges]
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class FaceDecomposition:
    face_sizes: tuple[int, ...]
    eo: int

    def check(self, m: int) -> bool:
        return sum(s - 3 for s in self.face_sizes) + self.eo == m - 3


def contiguous(i: int, j: int, m: int) -> bool:
    return (i - j) % m in (0, 1, m - 1)


def crosses(e: Edge, f: Edge) -> bool:
    (a, b), (c, d) = sorted(e), sorted(f)
    return a < c < b < d or c < a < d < b


def _require_m(m: int, least: int = 3):
    if m < least:
        raise ValueError(f"need m >= {least}, got {m}")


@lru_cache(maxsize=None)
def diagonals(m: int) -> tuple[Edge, ...]:
    return tuple((i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1) if not contiguous(i, j, m))


@lru_cache(maxsize=None)
def _all_dissections(m: int) -> tuple[tuple[Edge, ...], ...]:
    diags = diagonals(m)
    out: list[tuple[Edge, ...]] = []

    def rec(start: int, chosen: list[Edge]):
        out.append(tuple(chosen))
        for idx in range(start, len(diags)):
            d = diags[idx]
            if all(not crosses(d, c) for c in chosen):
                chosen.append(d)
                rec(idx + 1, chosen)
                chosen.pop()

    rec(0, [])
    return tuple(out)


def enumerate_dissections(m: int, r: int) -> list[ChordMultigraph]:
    """``A_m^s(r)``: sets of r pairwise non-crossing diagonals of the m-gon."""
    _require_m(m)
    return [ChordMultigraph.simple(m, d) for d in _all_dissections(m) if len(d) == r]


def dissection_counts(m: int) -> list[int]:
    """``|A_m^s(r)|`` for r = 0..m-3.

    Decomposes along the face that contains the side ``p1 pm``: its other
    sides are polygon sides or diagonals cutting off smaller polygons.
    ``T[k]`` counts dissections of a (k+1)-gon by diagonals (as a polynomial
    in the number of diagonals), ``C[k]`` counts chains of k sides.
    """
    _require_m(m)
    x = IntPoly((0, 1))
    T = {1: IntPoly((1,))}
    C = {0: IntPoly((1,))}

    def w(k: int) -> IntPoly:
        return IntPoly((1,)) if k == 1 else x * T[k]

    for k in range(1, m):
        if k >= 2:
            T[k] = sum((w(a) * C[k - a] for a in range(1, k)), IntPoly())
        C[k] = sum((w(a) * C[k - a] for a in range(1, k + 1)), IntPoly())
    return [T[m - 1][r] for r in range(m - 2)]


def dissection_counts_brute(m: int) -> list[int]:
    """Same as :func:`dissection_counts`, by listing every dissection."""
    _require_m(m)
    counts = [0] * (m - 2)
    for d in _all_dissections(m):
        counts[len(d)] += 1
    return counts


def _count_positive_compositions(total: int, parts: int) -> int:
    # ways to write total as an ordered sum of `parts` positive integers, by DP
    ways = [1] + [0] * total
    for _ in range(parts):
        nxt = [0] * (total + 1)
        for s, w in enumerate(ways):
            if w:
                for add in range(1, total - s + 1):
                    nxt[s + add] += w
        ways = nxt
    return ways[total]


def count_A_multigraphs(m: int, r: int) -> int:
    """``|A_m(r)|`` by brute force over supports and multiplicities."""
    _require_m(m)
    return sum(_count_positive_compositions(r, len(d)) for d in _all_dissections(m) if len(d) <= r)


def f_poly(m: int) -> IntPoly:
    """``sum_r |A_m^s(r)| t^r (1-t)^(m-3-r)``."""
    _require_m(m)
    one_minus_t = IntPoly((1, -1))
    total = IntPoly()
    for r, a in enumerate(dissection_counts(m)):
        total = total + (IntPoly((1,)).shift(r) * one_minus_t ** (m - 3 - r)) * a
    return total


def F_gf(m: int) -> RationalGF:
    _require_m(m)
    return RationalGF(f_poly(m), ((1, m - 3),) if m > 3 else ())


def euler_altsum(m: int) -> int:
    """``sum_{r>=1} (-1)^(r-1) |A_m^s(r)|``; equals ``1 + (-1)^(m-4)``."""
    _require_m(m)
    return sum((-1) ** (r - 1) * a for r, a in enumerate(dissection_counts(m)) if r >= 1)


def altsum_containing(m: int, gamma0: ChordMultigraph) -> int:
    """Alternating count of dissections containing ``gamma0``, signed from its size."""
    _require_m(m)
    base = set(gamma0.support)
    if not gamma0.is_simple() or any(e not in diagonals(m) for e in base) or not gamma0.is_noncrossing():
        raise ValueError(f"{gamma0} is not a dissection of the {m}-gon")
    r0 = len(base)
    return sum((-1) ** (len(d) - r0) for d in _all_dissections(m) if base.issubset(d))


@lru_cache(maxsize=None)
def _all_pairs(m: int) -> tuple[Edge, ...]:
    return tuple((i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1))


def _noncrossing_graphs(m: int, even: bool) -> Iterator[tuple[Edge, ...]]:
    # pairs in lexicographic order; once row i is done, vertex i's degree is final
    pairs = _all_pairs(m)
    deg = [0] * (m + 1)
    chosen: list[Edge] = []

    def rec(idx: int):
        if idx == len(pairs):
            if not even or all(d % 2 == 0 for d in deg):
                yield tuple(chosen)
            return
        i, j = pairs[idx]
        nxt_i = pairs[idx + 1][0] if idx + 1 < len(pairs) else m + 1
        # skip
        if not (even and nxt_i != i and deg[i] % 2):
            yield from rec(idx + 1)
        if all(not crosses((i, j), c) for c in chosen):
            if not (even and nxt_i != i and (deg[i] + 1) % 2):
                chosen.append((i, j))
                deg[i] += 1
                deg[j] += 1
                yield from rec(idx + 1)
                chosen.pop()
                deg[i] -= 1
                deg[j] -= 1

    yield from rec(0)


@lru_cache(maxsize=None)
def _b_simple(m: int) -> tuple[tuple[Edge, ...], ...]:
    return tuple(_noncrossing_graphs(m, even=True))


def enumerate_B_simple(m: int) -> list[ChordMultigraph]:
    """``B_m^s``: simple planar graphs on the m circle points with even degrees."""
    _require_m(m, 2)
    return [ChordMultigraph.simple(m, g) for g in _b_simple(m)]


def count_B(m: int, r: int) -> int:
    """``|B_m(r)|`` by brute force over planar multigraphs with r edges."""
    _require_m(m, 2)
    pairs = _all_pairs(m)
    deg = [0] * (m + 1)
    support: list[Edge] = []
    total = 0

    def rec(idx: int, left: int):
        nonlocal total
        if idx == len(pairs):
            if left == 0 and all(d % 2 == 0 for d in deg):
                total += 1
            return
        i, j = pairs[idx]
        row_done = idx + 1 == len(pairs) or pairs[idx + 1][0] != i
        ok = all(not crosses((i, j), c) for c in support)
        top = left if ok else 0
        for k in range(top + 1):
            if row_done and (deg[i] + k) % 2:
                continue
            deg[i] += k
            deg[j] += k
            if k:
                support.append((i, j))
            rec(idx + 1, left - k)
            if k:
                support.pop()
            deg[i] -= k
            deg[j] -= k

    rec(0, r)
    return total


def faces(gamma_s: ChordMultigraph, m: int) -> FaceDecomposition:
    """Polygons cut out of the m-gon by the non-contiguous edges of ``gamma_s``."""
    polys: list[list[int]] = [list(range(1, m + 1))]
    cuts = [e for e in gamma_s.support if not contiguous(*e, m)]
    for i, j in cuts:
        for idx, poly in enumerate(polys):
            if i in poly and j in poly:
                a, b = sorted((poly.index(i), poly.index(j)))
                polys[idx] = poly[a : b + 1]
                polys.append(poly[b:] + poly[: a + 1])
                break
        else:
            raise ValueError(f"edge {(i, j)} crosses another edge")
    return FaceDecomposition(tuple(sorted(len(p) for p in polys)), len(cuts))


def g_poly(gamma_s: ChordMultigraph, m: int) -> IntPoly:
    """``prod_k f_{m_k}(t^2)`` over faces; the constant 1 when m == 2."""
    if m == 2:
        return IntPoly((1,))
    out = IntPoly((1,))
    for size in faces(gamma_s, m).face_sizes:
        out = out * f_poly(size).substitute_power(2)
    return out


def d_value(gamma_s: ChordMultigraph, m: int) -> int:
    """Degree window of ``g_poly``: ``2 * sum (m_k - 3)`` (0 for m == 2)."""
    if m == 2:
        return 0
    return 2 * sum(s - 3 for s in faces(gamma_s, m).face_sizes)


def contribution_gf(gamma_s: ChordMultigraph, m: int) -> RationalGF:
    """Generating function of all B_m multigraphs whose bigon reduction is ``gamma_s``."""
    if m == 2:
        return RationalGF(IntPoly((1,)).shift(gamma_s.e), ((2, 1),))
    return RationalGF(g_poly(gamma_s, m).shift(gamma_s.e), ((2, 2 * m - 3),))


@lru_cache(maxsize=None)
def G_gf(m: int) -> RationalGF:
    """``sum_r |B_m(r)| t^r`` in closed form."""
    _require_m(m, 2)
    if m == 2:
        return RationalGF(IntPoly((1,)), ((2, 1),))
    num = IntPoly()
    for gamma in enumerate_B_simple(m):
        num = num + g_poly(gamma, m).shift(gamma.e)
    return RationalGF(num, ((2, 2 * m - 3),))


def dual(gamma_s: ChordMultigraph, m: int) -> ChordMultigraph:
    """Toggle every side of the m-gon, keep the diagonals.

    For m == 2 both sides join p1 and p2; toggling both on the empty graph
    yields a bigon, which reduces back to the empty graph.
    """
    if m == 2:
        return ChordMultigraph(2)
    present = set(gamma_s.support)
    sides = {tuple(sorted((i, i % m + 1))) for i in range(1, m + 1)}
    kept = {e for e in present if e not in sides}
    toggled = {s for s in sides if s not in present}
    return ChordMultigraph.simple(m, kept | toggled)


def Z_gf(m: int) -> RationalGF:
    """Non-peripheral multicurve series of the sphere with m+1 holes."""
    return G_gf(m).mul_poly(IntPoly.one_minus_t_pow(m))


def H_gf(g: int, n: int) -> RationalGF:
    """Hilbert series of the word filtration for rank ``m = 2g+n-1``.

    Built from the genus-zero surface of the same rank:
    ``H = Z_m / ((1-t)^(m+1) (1-t^m))``.
    """
    m = SurfaceSig(g, n).m
    return H_gf_m(m)


def H_gf_m(m: int) -> RationalGF:
    _require_m(m, 2)
    G = Z_gf(m).div_factor(m, 1, from_numerator=True)
    return G.div_factor(1, m + 1)


def h_gf(m: int) -> RationalGF:
    """``H_m (1-t) / (1-t^2)^m``."""
    return H_gf_m(m).mul_factor(1, 1).div_factor(2, m)


def Zgn_gf(g: int, n: int) -> RationalGF:
    """Non-peripheral series of S_{g,n}: ``(1-t)^n (1-t^(4g+n-1)) H_m``."""
    sig = SurfaceSig(g, n)
    return H_gf_m(sig.m).mul_factor(1, sig.n).mul_factor(sig.long_boundary_length, 1)


def c_all_gf(m: int) -> RationalGF:
    """All-multicurve series ``(1-t) H_m``."""
    return H_gf_m(m).mul_factor(1, 1)


def binomial_sum_check(m: int, r: int) -> int:
    """``sum_s |A_m^s(s)| C(r-1, s-1)``; closed-form count of A_m(r) used as an extra oracle."""
    counts = dissection_counts(m)
    if r == 0:
        return 1
    return sum(a * math.comb(r - 1, s - 1) for s, a in enumerate(counts) if s >= 1)
