"""Trace functions on SL2 representations over a prime field.

Rank computations here use random points of SL2(F_p)^m: a set of trace
functions is linearly independent over Q with overwhelming probability iff
its evaluation matrix at enough random points has full rank mod a large p.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .diagrams import Multicurve, enumerate_reduced, extract_multicurve
from .surface import SurfaceSig, Word, class_length, format_word

DEFAULT_PRIME = 2**31 - 1


class RankDeficientError(ArithmeticError):
    """The sampled evaluation matrix does not have full column rank."""


class ValidationError(AssertionError):
    """A solved expansion fails on fresh sample points."""


# --- matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix ``[[a, b], [c, d]]`` over F_p."""

    a: int
    b: int
    c: int
    d: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.p
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % p)

    @classmethod
    def identity(cls, p: int = DEFAULT_PRIME) -> "Mat2":
        return cls(1, 0, 0, 1, p)

    @classmethod
    def zero(cls, p: int = DEFAULT_PRIME) -> "Mat2":
        return cls(0, 0, 0, 0, p)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.p,
        )

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.p)

    def scale(self, k: int) -> "Mat2":
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d, self.p)

    @property
    def tr(self) -> int:
        return (self.a + self.d) % self.p

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    @property
    def adj(self) -> "Mat2":
        """Adjugate: ``x x* = det(x) 1``; the inverse when det = 1."""
        return Mat2(self.d, -self.b, -self.c, self.a, self.p)

    def is_zero(self) -> bool:
        return self.a == self.b == self.c == self.d == 0


def mat_op(kind: str, *args):
    if kind == "mul":
        x, y = args
        return x @ y
    if kind == "tr":
        return args[0].tr
    if kind == "det":
        return args[0].det
    if kind == "adjugate":
        return args[0].adj
    raise ValueError(f"unknown matrix op {kind!r}")


# --- randomness ---------------------------------------------------------------


class Prng:
    """Counter-based generator: block i of stream s under seed k is
    ``blake2b(k, s, i)``, so results do not depend on platform or call order
    across streams."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed & 0xFFFFFFFFFFFFFFFF
        self.stream = stream
        self.counter = 0

    def next_u64(self) -> int:
        msg = struct.pack("<QQQ", self.seed, self.stream & 0xFFFFFFFFFFFFFFFF, self.counter)
        self.counter += 1
        return int.from_bytes(hashlib.blake2b(msg, digest_size=8).digest(), "little")

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


def random_sl2(prng: Prng, p: int = DEFAULT_PRIME) -> Mat2:
    """Sample a, b, c and solve ``ad - bc = 1`` for d; resample when a = 0."""
    while True:
        a = prng.below(p)
        if a == 0:
            continue
        b, c = prng.below(p), prng.below(p)
        d = (1 + b * c) * pow(a, -1, p) % p
        return Mat2(a, b, c, d, p)


def random_mat(prng: Prng, p: int = DEFAULT_PRIME) -> Mat2:
    return Mat2(prng.below(p), prng.below(p), prng.below(p), prng.below(p), p)


def random_tuple(m: int, seed: int, index: int, p: int = DEFAULT_PRIME) -> tuple[Mat2, ...]:
    """The ``index``-th sample point of SL2^m for ``seed``."""
    prng = Prng(seed, index)
    return tuple(random_sl2(prng, p) for _ in range(m))


# --- trace evaluation ---------------------------------------------------------


def word_matrix(word: Word, mats: Sequence[Mat2]) -> Mat2:
    p = mats[0].p if mats else DEFAULT_PRIME
    out = Mat2.identity(p)
    for x in word:
        k = abs(x)
        if not 1 <= k <= len(mats):
            raise IndexError(f"generator a{k} outside a tuple of {len(mats)} matrices")
        out = out @ (mats[k - 1] if x > 0 else mats[k - 1].adj)
    return out


def eval_word(word: Word, mats: Sequence[Mat2]) -> int:
    return word_matrix(word, mats).tr


def eval_multicurve(mc: Multicurve, mats: Sequence[Mat2]) -> int:
    p = mats[0].p if mats else DEFAULT_PRIME
    acc = 1
    for comp in mc.components:
        acc = acc * eval_word(comp.canon, mats) % p
    return acc


# --- linear algebra mod p -------------------------------------------------------


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Gaussian elimination; pivot = first nonzero entry in the column."""
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        prow = [x * inv % p for x in mat[rank]]
        mat[rank] = prow
        for i in range(rank + 1, len(mat)):
            f = mat[i][col]
            if f:
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], prow)]
        rank += 1
    return rank


def solve_mod_p(A: Sequence[Sequence[int]], b: Sequence[int], p: int) -> list[int]:
    """Unique solution of ``A x = b`` (A has full column rank); raises if the
    system is rank deficient or inconsistent."""
    n = len(A[0])
    aug = [[x % p for x in row] + [y % p] for row, y in zip(A, b)]
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(aug)) if aug[i][col]), None)
        if piv is None:
            raise RankDeficientError(f"column {col} has no pivot")
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = pow(aug[rank][col], -1, p)
        aug[rank] = [x * inv % p for x in aug[rank]]
        for i in range(len(aug)):
            if i != rank and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[rank])]
        rank += 1
    if any(row[n] for row in aug[rank:]):
        raise ValidationError("inconsistent system")
    return [aug[i][n] for i in range(n)]


def symmetric_residue(x: int, p: int) -> int:
    x %= p
    return x - p if x > p // 2 else x


# --- filtration basis ---------------------------------------------------------


@lru_cache(maxsize=None)
def multicurves_up_to(sig: SurfaceSig, r: int) -> tuple[Multicurve, ...]:
    """All multicurves of length <= r, shortest first."""
    out: list[Multicurve] = []
    for s in range(r + 1):
        out.extend(extract_multicurve(d) for d in enumerate_reduced(sig, s))
    return tuple(out)


def eval_matrix(
    rows: Sequence[Multicurve], sig: SurfaceSig, prime: int, seed: int, indices: Iterable[int]
) -> list[list[int]]:
    """``out[i][j]`` = value of ``rows[j]`` at sample ``indices[i]``."""
    out = []
    for idx in indices:
        mats = random_tuple(sig.m, seed, idx, prime)
        out.append([eval_multicurve(mc, mats) for mc in rows])
    return out


def dim_fil(sig: SurfaceSig, r: int, prime: int = DEFAULT_PRIME, samples: int | None = None, seed: int = 0) -> int:
    """Rank of the multicurves of length <= r as functions on SL2(F_p)^m."""
    rows = multicurves_up_to(sig, r)
    if samples is None:
        samples = len(rows) + 20
    if samples < len(rows):
        raise ValueError(f"need at least {len(rows)} samples, got {samples}")
    return rank_mod_p(eval_matrix(rows, sig, prime, seed, range(samples)), prime)


@dataclass
class Expansion:
    word: Word
    coeffs: dict[Multicurve, int]  # nonzero coefficients as symmetric residues mod p
    basis_size: int
    validated_on: int = 0
    residual: list[int] = field(default_factory=list)

    def __str__(self):
        terms = " ".join(f"{c:+d}*{mc}" for mc, c in self.coeffs.items())
        return f"[{format_word(self.word)}] = {terms}"


def invert_mod_p(M: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    n = len(M)
    aug = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise RankDeficientError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def independent_rows(rows: Sequence[Sequence[int]], p: int) -> list[int]:
    """Indices of a maximal set of linearly independent rows, greedily in order."""
    basis: list[tuple[int, list[int]]] = []  # (pivot column, reduced row)
    picked = []
    for idx, row in enumerate(rows):
        v = [x % p for x in row]
        for col, b in basis:
            f = v[col]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, b)]
        lead = next((c for c, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], -1, p)
        basis.append((lead, [x * inv % p for x in v]))
        picked.append(idx)
    return picked


@dataclass(frozen=True)
class _BasisSystem:
    basis: tuple[Multicurve, ...]
    A: tuple[tuple[int, ...], ...]
    pivot_rows: tuple[int, ...]
    inverse: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=64)
def _basis_system(sig: SurfaceSig, r: int, prime: int, samples: int, seed: int) -> _BasisSystem:
    basis = multicurves_up_to(sig, r)
    if samples < len(basis):
        raise ValueError(f"need at least {len(basis)} samples, got {samples}")
    A = eval_matrix(basis, sig, prime, seed, range(samples))
    piv = independent_rows(A, prime)
    if len(piv) < len(basis):
        raise RankDeficientError(f"rank {len(piv)} < {len(basis)} on {samples} samples; retry with another seed")
    inv = invert_mod_p([A[i] for i in piv], prime)
    return _BasisSystem(basis, tuple(map(tuple, A)), tuple(piv), tuple(map(tuple, inv)))


def express_in_basis(
    word: Word,
    sig: SurfaceSig,
    prime: int = DEFAULT_PRIME,
    samples: int | None = None,
    seed: int = 0,
    validation: int = 10,
) -> Expansion:
    """Write the trace function of ``word`` in the multicurve basis of length <= |word|.

    The coefficient vector is solved on ``samples`` points and must then
    reproduce the word's trace on ``validation`` points from a disjoint
    stream range.  Raises :class:`RankDeficientError` when the samples do not
    separate the basis, :class:`ValidationError` on a nonzero residual.
    """
    if any(abs(x) > sig.m or x == 0 for x in word):
        raise IndexError(f"word {word} uses generators outside rank {sig.m}")
    r = class_length(word)
    if samples is None:
        samples = len(multicurves_up_to(sig, r)) + 20
    system = _basis_system(sig, r, prime, samples, seed)
    b = [eval_word(word, random_tuple(sig.m, seed, i, prime)) for i in range(samples)]
    rhs = [b[i] for i in system.pivot_rows]
    x = [sum(c * y for c, y in zip(row, rhs)) % prime for row in system.inverse]
    for row, want in zip(system.A, b):
        if sum(c * v for c, v in zip(x, row)) % prime != want:
            raise ValidationError(f"{format_word(word)} is not in the span on the solve samples")
    fresh = range(samples, samples + validation)
    V = eval_matrix(system.basis, sig, prime, seed, fresh)
    residual = []
    for row, idx in zip(V, fresh):
        got = sum(c * v for c, v in zip(x, row)) % prime
        want = eval_word(word, random_tuple(sig.m, seed, idx, prime))
        residual.append((got - want) % prime)
    if any(residual):
        raise ValidationError(f"nonzero residual for {format_word(word)}: model bug")
    coeffs = {mc: symmetric_residue(c, prime) for mc, c in zip(system.basis, x) if c}
    return Expansion(tuple(word), coeffs, len(system.basis), validation, residual)


# --- identity suites ---------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    trials: int = 0
    failures: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, detail: Callable[[], str] | None = None):
        self.trials += 1
        if not ok:
            self.failures += 1
            if detail is not None and len(self.examples) < 5:
                self.examples.append(detail())

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "failures": self.failures, "pass": self.passed}


def _tr(x: Mat2) -> int:
    return x.tr


def commutator(a: Mat2, b: Mat2) -> Mat2:
    """``<a, b> = a b a* b*``."""
    return a @ b @ a.adj @ b.adj


def fricke_rhs(a: Mat2, b: Mat2) -> int:
    p = a.p
    x, y, z = a.tr, b.tr, (a @ b).tr
    return (x * x + y * y + z * z - x * y * z - 2) % p


def commutator_trace_formula(a: Mat2, b: Mat2) -> int:
    """``tr <a,b>`` through traces and determinants, valid for any det."""
    p = a.p
    x, y, z = a.tr, b.tr, (a @ b).tr
    da, db = a.det, b.det
    return (x * x * db + y * y * da + z * z - x * y * z - 2 * da * db) % p


def verify_fricke(prime: int = DEFAULT_PRIME, trials: int = 1000, seed: int = 0) -> list[CheckReport]:
    fr = CheckReport("fricke")
    gen = CheckReport("commutator_trace")
    prng = Prng(seed, 1)
    for _ in range(trials):
        a, b = random_sl2(prng, prime), random_sl2(prng, prime)
        fr.record(commutator(a, b).tr == fricke_rhs(a, b))
        a, b = random_mat(prng, prime), random_mat(prng, prime)
        gen.record(commutator(a, b).tr == commutator_trace_formula(a, b))
    return [fr, gen]


def lemma_sum(a: Mat2, b: Mat2, c: Mat2) -> tuple[int, int]:
    p = a.p
    lhs = _tr(a @ b @ c) + _tr(a @ c @ b)
    rhs = _tr(a @ b) * c.tr + _tr(a @ c) * b.tr + _tr(b @ c) * a.tr - a.tr * b.tr * c.tr
    return lhs % p, rhs % p


def lemma_product(a: Mat2, b: Mat2, c: Mat2) -> tuple[int, int]:
    p = a.p
    A, B, C = a.tr, b.tr, c.tr
    AB, BC, AC = _tr(a @ b), _tr(b @ c), _tr(a @ c)
    lhs = _tr(a @ b @ c) * _tr(a @ c @ b)
    rhs = (A * A + B * B + C * C) + (AB * AB + BC * BC + AC * AC)
    rhs -= A * B * AB + B * C * BC + A * C * AC
    rhs += AB * BC * AC - 4
    return lhs % p, rhs % p


def vogt(a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> tuple[int, int]:
    p = a.p
    t = _tr
    lhs = 2 * t(a @ b @ c @ d)
    rhs = (
        a.tr * b.tr * c.tr * d.tr
        + a.tr * t(b @ c @ d)
        + b.tr * t(c @ d @ a)
        + c.tr * t(d @ a @ b)
        + d.tr * t(a @ b @ c)
        + t(a @ b) * t(c @ d)
        + t(d @ a) * t(b @ c)
        - t(a @ c) * t(b @ d)
        - a.tr * b.tr * t(c @ d)
        - t(a @ b) * c.tr * d.tr
        - d.tr * a.tr * t(b @ c)
        - t(d @ a) * b.tr * c.tr
    )
    return lhs % p, rhs % p


def verify_trace_identities(prime: int = DEFAULT_PRIME, trials: int = 1000, seed: int = 0) -> list[CheckReport]:
    """Adjugate identities on arbitrary matrices; three-variable and Vogt
    four-variable trace identities on SL2."""
    if prime == 2:
        raise ValueError("need an odd prime")
    adj_rep = CheckReport("adjugate_identities")
    sum_rep = CheckReport("three_variable_sum")
    prod_rep = CheckReport("three_variable_product")
    vogt_rep = CheckReport("vogt_four_variable")
    prng = Prng(seed, 2)
    for _ in range(trials):
        x, y = random_mat(prng, prime), random_mat(prng, prime)
        ok = (
            x + x.adj == Mat2.identity(prime).scale(x.tr)
            and x @ x.adj == Mat2.identity(prime).scale(x.det)
            and x.adj @ x == Mat2.identity(prime).scale(x.det)
            and (x.tr * y.tr - (x @ y).tr - (x @ y.adj).tr) % prime == 0
        )
        adj_rep.record(ok)
        a, b, c, d = (random_sl2(prng, prime) for _ in range(4))
        sum_rep.record(len(set(lemma_sum(a, b, c))) == 1)
        prod_rep.record(len(set(lemma_product(a, b, c))) == 1)
        vogt_rep.record(len(set(vogt(a, b, c, d))) == 1)
        # degenerate slot d = 1 exercises the reduction to three variables
        vogt_rep.record(len(set(vogt(a, b, c, Mat2.identity(prime)))) == 1)
    return [adj_rep, sum_rep, prod_rep, vogt_rep]


def random_singular(prng: Prng, p: int = DEFAULT_PRIME) -> Mat2:
    """Rank <= 1 matrix as an outer product ``u v^T``."""
    u = (prng.below(p), prng.below(p))
    v = (prng.below(p), prng.below(p))
    return Mat2(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1], p)


def _singular_pair(prng: Prng, p: int) -> tuple[Mat2, Mat2]:
    # a = u v^T, b = x y^T, so a* = v' u'^T and b* = y' x'^T with w' = (w1, -w0).
    # ab = 0 iff v.x = 0; b a* = 0 iff y.v' = 0; a* b* = 0 iff u.y = 0.
    # Each mode forces one of these so both sides of the biconditionals occur.
    u = (prng.below(p), prng.below(p))
    v = (prng.below(p), prng.below(p))
    a = Mat2(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1], p)
    mode = prng.below(5)
    x = (prng.below(p), prng.below(p))
    y = (prng.below(p), prng.below(p))
    if mode == 1:
        x = (v[1], -v[0])
    elif mode == 2:
        y = v
    elif mode == 3:
        y = (u[1], -u[0])
    elif mode == 4:
        return a, Mat2.zero(p)
    b = Mat2(x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1], p)
    return a, b


def verify_singular_products(prime: int = DEFAULT_PRIME, trials: int = 1000, seed: int = 0) -> list[CheckReport]:
    """For det a = det b = 0: ``a b a* = 0`` iff ``ab = 0`` or ``b a* = 0``;
    ``<a,b> = 0`` iff one of ``ab, b a*, a* b*`` vanishes."""
    one = CheckReport("singular_aba_star")
    two = CheckReport("singular_commutator")
    prng = Prng(seed, 3)
    for _ in range(trials):
        a, b = _singular_pair(prng, prime)
        ab, bas, asbs = a @ b, b @ a.adj, a.adj @ b.adj
        one.record((a @ b @ a.adj).is_zero() == (ab.is_zero() or bas.is_zero()))
        two.record(commutator(a, b).is_zero() == (ab.is_zero() or bas.is_zero() or asbs.is_zero()))
    return [one, two]
