"""Disk-with-strips model of S_{g,n}: chord diagrams and the multicurves they carry.

The boundary circle of the disk carries 2m intervals, one pair ``(I'_k, I''_k)``
per free generator; strip k glues ``I'_k`` to ``I''_k``.  A diagram is a
non-crossing perfect matching of vertices placed on those intervals, balanced
so that ``|I'_k| == |I''_k|``.  Following a chord and then a strip arc, and
repeating, traces closed curves; a strip traversal ``I' -> I''`` reads ``a_k``
and ``I'' -> I'`` reads ``a_k^-1``.

Strip arcs pair the j-th vertex of ``I'_k`` (counterclockwise) with the j-th
from last vertex of ``I''_k``, i.e. the band is untwisted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .genfun import IntPoly
from .surface import (
    CyclicClass,
    SurfaceSig,
    Word,
    boundary_classes,
    canonical_class,
    word_key,
)

PRIME, DPRIME = 1, 2  # interval sides I'_k and I''_k

Interval = tuple[int, int]  # (generator index k, side)


@dataclass(frozen=True)
class ChordDiagram:
    sig: SurfaceSig
    counts: tuple[int, ...]  # vertex count per interval, in layout order
    matching: tuple[tuple[int, int], ...]  # pairs of vertex positions, p < q

    @property
    def size(self) -> int:
        return len(self.matching)

    def vertex_labels(self) -> list[Interval]:
        lay = layout(self.sig)
        labels: list[Interval] = []
        for slot, c in zip(lay, self.counts):
            labels.extend([slot] * c)
        return labels

    def is_balanced(self) -> bool:
        per: dict[Interval, int] = {}
        for slot, c in zip(layout(self.sig), self.counts):
            per[slot] = c
        return all(per[(k, PRIME)] == per[(k, DPRIME)] for k in range(1, self.sig.m + 1))

    def is_noncrossing(self) -> bool:
        return all(not _interleave(e, f) for e, f in itertools.combinations(self.matching, 2))

    def is_reduced(self) -> bool:
        labels = self.vertex_labels()
        return all(labels[p] != labels[q] for p, q in self.matching)

    def to_json(self) -> dict:
        return {"counts": list(self.counts), "matching": [list(e) for e in self.matching]}

    @classmethod
    def from_json(cls, sig: SurfaceSig, data: dict) -> "ChordDiagram":
        return cls(sig, tuple(data["counts"]), tuple(tuple(e) for e in data["matching"]))


@dataclass(frozen=True)
class Multicurve:
    """Multiset of nontrivial reduced homotopy classes, kept sorted."""

    components: tuple[CyclicClass, ...] = ()

    def __post_init__(self):
        if any(c.length == 0 for c in self.components):
            raise ValueError("multicurve components must be nontrivial")
        object.__setattr__(self, "components", tuple(sorted(self.components, key=_class_sort_key)))

    @classmethod
    def of(cls, *words: Word) -> "Multicurve":
        return cls(tuple(canonical_class(w) for w in words))

    @property
    def length(self) -> int:
        return sum(c.length for c in self.components)

    def __str__(self):
        if not self.components:
            return "{}"
        return "{" + ", ".join(f"[{c}]" for c in self.components) + "}"


def _class_sort_key(c: CyclicClass):
    return c.length, word_key(c.canon)


def _interleave(e: tuple[int, int], f: tuple[int, int]) -> bool:
    (a, b), (c, d) = sorted(e), sorted(f)
    return a < c < b < d or c < a < d < b


@lru_cache(maxsize=None)
def layout(sig: SurfaceSig) -> tuple[Interval, ...]:
    """Counterclockwise order of the 2m intervals on the boundary circle."""
    slots: list[Interval] = []
    for i in range(1, sig.g + 1):
        a, b = 2 * i - 1, 2 * i
        slots += [(a, PRIME), (b, DPRIME), (a, DPRIME), (b, PRIME)]
    for k in range(2 * sig.g + 1, sig.m + 1):
        slots += [(k, PRIME), (k, DPRIME)]
    return tuple(slots)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for c in range(total + 1):
        for rest in _compositions(total - c, parts - 1):
            yield (c,) + rest


def _reduced_matchings(lo: int, hi: int, comp: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    # non-crossing perfect matchings of positions lo..hi-1, no chord inside one interval
    if lo == hi:
        yield ()
        return
    for j in range(lo + 1, hi, 2):
        if comp[j] == comp[lo]:
            continue
        for inner in _reduced_matchings(lo + 1, j, comp):
            for outer in _reduced_matchings(j + 1, hi, comp):
                yield ((lo, j),) + inner + outer


def enumerate_reduced(sig: SurfaceSig, r: int) -> list[ChordDiagram]:
    """All reduced, balanced, non-crossing diagrams with r chords.

    Ordered by generator counts (lexicographic), then by the first-vertex
    recursion over matchings.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    lay = layout(sig)
    out = []
    for per_gen in _compositions(r, sig.m):
        counts = tuple(per_gen[k - 1] for k, _ in lay)
        comp: list[int] = []
        for idx, c in enumerate(counts):
            comp += [idx] * c
        comp_t = tuple(comp)
        for matching in _reduced_matchings(0, 2 * r, comp_t):
            out.append(ChordDiagram(sig, counts, matching))
    return out


def component_words(diagram: ChordDiagram) -> list[Word]:
    """Raw words of the closed components, before canonicalization."""
    labels = diagram.vertex_labels()
    partner: dict[int, int] = {}
    for p, q in diagram.matching:
        partner[p] = q
        partner[q] = p
    positions: dict[Interval, list[int]] = {}
    for pos, lab in enumerate(labels):
        positions.setdefault(lab, []).append(pos)
    strip: dict[int, tuple[int, int]] = {}  # vertex -> (other end of strip arc, letter)
    for k in range(1, diagram.sig.m + 1):
        src = positions.get((k, PRIME), [])
        dst = positions.get((k, DPRIME), [])
        if len(src) != len(dst):
            raise ValueError(f"unbalanced strip {k}")
        for j, v in enumerate(src):
            w = dst[len(dst) - 1 - j]
            strip[v] = (w, k)
            strip[w] = (v, -k)
    seen: set[int] = set()
    words: list[Word] = []
    for start in range(len(labels)):
        if start in seen:
            continue
        word: list[int] = []
        v = start
        while True:
            w, letter = strip[v]
            seen.add(v)
            seen.add(w)
            word.append(letter)
            v = partner[w]
            if v == start:
                break
        words.append(tuple(word))
    return words


def extract_multicurve(diagram: ChordDiagram) -> Multicurve:
    return Multicurve(tuple(canonical_class(w) for w in component_words(diagram)))


def series_all(sig: SurfaceSig, N: int) -> list[int]:
    """c'(0..N): number of multicurves of each length."""
    return [len(enumerate_reduced(sig, r)) for r in range(N + 1)]


def peripheral_set(sig: SurfaceSig) -> frozenset[CyclicClass]:
    return frozenset(c for c, _ in boundary_classes(sig))


def is_nonperipheral(mc: Multicurve, sig: SurfaceSig) -> bool:
    periph = peripheral_set(sig)
    return not any(c in periph for c in mc.components)


def nonperipheral_from_all(sig: SurfaceSig, c_all: list[int]) -> list[int]:
    """Coefficients of ``(1-t)^(n-1) (1-t^(4g+n-1)) sum c'(r) t^r``."""
    factor = IntPoly((1, -1)) ** (sig.n - 1) * IntPoly.one_minus_t_pow(sig.long_boundary_length)
    prod = IntPoly(tuple(c_all)) * factor
    return [prod[r] for r in range(len(c_all))]


def series_nonperipheral(sig: SurfaceSig, N: int) -> list[int]:
    """c(0..N) obtained from c' by stripping boundary-parallel components."""
    return nonperipheral_from_all(sig, series_all(sig, N))


def count_nonperipheral_direct(sig: SurfaceSig, r: int) -> int:
    periph = peripheral_set(sig)
    return sum(
        1
        for d in enumerate_reduced(sig, r)
        if not any(c in periph for c in extract_multicurve(d).components)
    )
