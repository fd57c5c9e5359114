"""Surface signatures and words in the free fundamental group.

A word is a tuple of nonzero ints: ``k`` stands for the generator ``a_k`` and
``-k`` for its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

Word = tuple[int, ...]


@dataclass(frozen=True)
class SurfaceSig:
    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 1:
            raise ValueError(f"need g >= 0 and n >= 1, got ({self.g}, {self.n})")
        if self.chi >= 0:
            raise ValueError(f"S_({self.g},{self.n}) has Euler characteristic {self.chi} >= 0")

    @property
    def m(self) -> int:
        """Rank of the free fundamental group."""
        return 2 * self.g + self.n - 1

    @property
    def chi(self) -> int:
        return 2 - 2 * self.g - self.n

    @property
    def long_boundary_length(self) -> int:
        return 4 * self.g + self.n - 1

    def __str__(self):
        return f"S_{{{self.g},{self.n}}}"


def make_sig(g: int, n: int) -> SurfaceSig:
    return SurfaceSig(g, n)


def genus_zero(m: int) -> SurfaceSig:
    """The sphere with ``m + 1`` holes, whose group has rank ``m``."""
    return SurfaceSig(0, m + 1)


def inverse(word: Iterable[int]) -> Word:
    return tuple(-x for x in reversed(tuple(word)))


def reduce(word: Iterable[int], mode: str = "free") -> Word:
    """Free reduction, or cyclic reduction with ``mode="cyclic"``."""
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("0 is not a generator index")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    if mode == "free":
        return tuple(out)
    if mode != "cyclic":
        raise ValueError(f"unknown reduction mode {mode!r}")
    lo, hi = 0, len(out)
    while hi - lo >= 2 and out[lo] == -out[hi - 1]:
        lo += 1
        hi -= 1
    return tuple(out[lo:hi])


def is_cyclically_reduced(word: Word) -> bool:
    n = len(word)
    return all(word[i] != -word[(i + 1) % n] for i in range(n)) if n > 1 else True


def class_length(word: Iterable[int]) -> int:
    """Minimal word length in the conjugacy class (= cyclically reduced length)."""
    return len(reduce(word, "cyclic"))


def _letter_key(x: int) -> tuple[int, int]:
    # a1 < a1^-1 < a2 < a2^-1 < ...
    return abs(x), 1 if x < 0 else 0


def word_key(word: Word) -> tuple:
    return tuple(_letter_key(x) for x in word)


@dataclass(frozen=True, order=True)
class CyclicClass:
    """A conjugacy class up to inversion, stored by its canonical word."""

    canon: Word

    @property
    def length(self) -> int:
        return len(self.canon)

    def __str__(self):
        return format_word(self.canon)


def canonical_class(word: Iterable[int]) -> CyclicClass:
    w = reduce(word, "cyclic")
    if not w:
        return CyclicClass(())
    cands = []
    for u in (w, inverse(w)):
        cands.extend(u[i:] + u[:i] for i in range(len(u)))
    return CyclicClass(min(cands, key=word_key))


def boundary_word(sig: SurfaceSig) -> Word:
    """``a_{2g+n}`` written in the free generators.

    From the relator ``<a1,a2>...<a_{2g-1},a_{2g}> a_{2g+1}...a_{2g+n} = 1``
    with ``<a,b> = a b a^-1 b^-1``.
    """
    w: list[int] = []
    for i in range(1, sig.g + 1):
        a, b = 2 * i - 1, 2 * i
        w += [a, b, -a, -b]
    w += list(range(2 * sig.g + 1, sig.m + 1))
    return inverse(w)


def boundary_classes(sig: SurfaceSig) -> list[tuple[CyclicClass, int]]:
    """The n peripheral classes with their lengths, the long boundary last."""
    out = [(canonical_class((k,)), 1) for k in range(2 * sig.g + 1, sig.m + 1)]
    long = canonical_class(boundary_word(sig))
    out.append((long, long.length))
    return out


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(f"a{abs(x)}" + ("^-1" if x < 0 else "") for x in word)


def parse_word(text: str) -> Word:
    """Parse e.g. ``"a1 a2^-1"`` or ``"1 -2"``."""
    out = []
    for tok in text.replace(",", " ").split():
        if tok.lstrip("-").isdigit():
            out.append(int(tok))
            continue
        if not tok.startswith("a"):
            raise ValueError(f"bad letter {tok!r}")
        body = tok[1:]
        neg = body.endswith("^-1")
        if neg:
            body = body[:-3]
        out.append(-int(body) if neg else int(body))
    return tuple(out)
