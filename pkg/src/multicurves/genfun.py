"""Integer polynomials and rational generating functions with cyclotomic-style denominators.

Every series handled here has the shape ``num(t) / prod (1 - t^a)^e`` with an
integer polynomial numerator.  Denominators stay factored; they are only
expanded transiently when two functions are compared.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, ``coeffs[k]`` is the coefficient of ``t**k``.

    Trailing zeros are stripped on construction, so the zero polynomial has
    ``coeffs == ()`` and degree ``-1``.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "IntPoly":
        if not terms:
            return cls()
        out = [0] * (max(terms) + 1)
        for k, v in terms.items():
            if k < 0:
                raise ValueError("negative exponent")
            out[k] += v
        return cls(tuple(out))

    @classmethod
    def one_minus_t_pow(cls, a: int) -> "IntPoly":
        """The polynomial ``1 - t**a``."""
        if a < 1:
            raise ValueError("exponent must be positive")
        return cls.from_terms({0: 1, a: -1})

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``t**k`` (k >= 0)."""
        if self.is_zero():
            return self
        return IntPoly((0,) * k + self.coeffs)

    def substitute_power(self, q: int) -> "IntPoly":
        """Return ``p(t**q)``."""
        return IntPoly.from_terms({q * k: c for k, c in enumerate(self.coeffs) if c})

    def reversed(self, d: int) -> "IntPoly":
        """``t**d * p(1/t)``; requires ``deg p <= d``."""
        if self.degree > d:
            raise ValueError(f"degree {self.degree} exceeds window {d}")
        return IntPoly(tuple(self[d - k] for k in range(d + 1)))

    def divmod(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Long division; the divisor must have leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPoly(), self
        quot = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return IntPoly(tuple(quot)), IntPoly(tuple(rem))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self)


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    raise TypeError(f"cannot treat {type(x).__name__} as IntPoly")


def poly_op(kind: str, p: IntPoly, q: Union[IntPoly, int]) -> IntPoly:
    """Dispatch ``add``, ``mul`` or ``scale`` on integer polynomials."""
    if kind == "add":
        return p + _as_poly(q)
    if kind == "mul":
        return p * _as_poly(q)
    if kind == "scale":
        if not isinstance(q, int):
            raise TypeError("scale expects an integer")
        return p * q
    raise ValueError(f"unknown polynomial op {kind!r}")


def format_poly(p: IntPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            mono = str(mag)
        else:
            base = var if k == 1 else f"{var}^{k}"
            mono = base if mag == 1 else f"{mag}*{base}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, mono in parts[1:]:
        out += f" {sign} {mono}"
    return out


def _normalize_den(factors: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    acc: Counter = Counter()
    for a, e in factors:
        if a < 1 or e < 0:
            raise ValueError(f"bad denominator factor (1-t^{a})^{e}")
        acc[int(a)] += int(e)
    return tuple(sorted((a, e) for a, e in acc.items() if e))


@dataclass(frozen=True)
class RationalGF:
    """``num(t) / prod_(a,e) (1 - t^a)^e`` as a formal power series.

    ``den`` is a sorted tuple of ``(a, e)`` pairs with distinct ``a``.  No
    cancellation happens implicitly; use :meth:`equals` to compare.
    """

    num: IntPoly
    den: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.num, IntPoly):
            object.__setattr__(self, "num", _as_poly(self.num))
        object.__setattr__(self, "den", _normalize_den(self.den))

    @classmethod
    def make(cls, num: Union[IntPoly, Sequence[int], int], den: Iterable[tuple[int, int]] = ()) -> "RationalGF":
        if isinstance(num, int):
            num = IntPoly((num,))
        elif not isinstance(num, IntPoly):
            num = IntPoly(tuple(num))
        return cls(num, tuple(den))

    def den_poly(self) -> IntPoly:
        out = IntPoly((1,))
        for a, e in self.den:
            out = out * IntPoly.one_minus_t_pow(a) ** e
        return out

    def den_weight(self) -> tuple[int, int]:
        """``(sum e, sum a*e)`` of the denominator."""
        return sum(e for _, e in self.den), sum(a * e for a, e in self.den)

    def series(self, N: int) -> list[int]:
        return series_coeffs(self, N)

    def mul_poly(self, p: Union[IntPoly, int]) -> "RationalGF":
        return RationalGF(self.num * _as_poly(p), self.den)

    def mul_factor(self, a: int, e: int = 1) -> "RationalGF":
        """Multiply by ``(1 - t^a)^e``, cancelling against the denominator first."""
        den = dict(self.den)
        have = den.get(a, 0)
        cancel = min(have, e)
        den[a] = have - cancel
        num = self.num
        if e - cancel:
            num = num * IntPoly.one_minus_t_pow(a) ** (e - cancel)
        return RationalGF(num, tuple(den.items()))

    def div_factor(self, a: int, e: int = 1, *, from_numerator: bool = False) -> "RationalGF":
        """Divide by ``(1 - t^a)^e``.

        By default the factor joins the denominator.  With ``from_numerator``
        the numerator must be exactly divisible, otherwise ``ArithmeticError``.
        """
        if not from_numerator:
            return RationalGF(self.num, self.den + ((a, e),))
        q, rem = self.num.divmod(IntPoly.one_minus_t_pow(a) ** e)
        if not rem.is_zero():
            raise ArithmeticError(f"(1-t^{a})^{e} does not divide the numerator")
        return RationalGF(q, self.den)

    def __mul__(self, other):
        if isinstance(other, RationalGF):
            return RationalGF(self.num * other.num, self.den + other.den)
        if isinstance(other, (IntPoly, int)):
            return self.mul_poly(other)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other: "RationalGF") -> "RationalGF":
        # common denominator = factorwise max
        d1, d2 = dict(self.den), dict(other.den)
        common = {a: max(d1.get(a, 0), d2.get(a, 0)) for a in set(d1) | set(d2)}
        n1, n2 = self.num, other.num
        for a, e in common.items():
            if e - d1.get(a, 0):
                n1 = n1 * IntPoly.one_minus_t_pow(a) ** (e - d1.get(a, 0))
            if e - d2.get(a, 0):
                n2 = n2 * IntPoly.one_minus_t_pow(a) ** (e - d2.get(a, 0))
        return RationalGF(n1 + n2, tuple(common.items()))

    def equals(self, other: "RationalGF") -> bool:
        return gf_equal(self, other)

    def evaluate(self, x: Fraction) -> Fraction:
        """Value at a rational point away from the poles."""
        x = Fraction(x)
        d = Fraction(1)
        for a, e in self.den:
            d *= (1 - x**a) ** e
        return Fraction(self.num(x)) / d

    def __str__(self):
        num = format_poly(self.num)
        if not self.den:
            return num
        dens = []
        for a, e in self.den:
            base = "(1 - t)" if a == 1 else f"(1 - t^{a})"
            dens.append(base if e == 1 else f"{base}^{e}")
        return f"({num}) / ({' * '.join(dens)})"


def series_coeffs(gf: RationalGF, N: int) -> list[int]:
    """Coefficients of ``t^0 .. t^N`` of the power series of ``gf``."""
    if N < 0:
        return []
    c = [gf.num[k] for k in range(N + 1)]
    for a, e in gf.den:
        for _ in range(e):
            # multiply by 1/(1 - t^a): running sum with stride a
            for k in range(a, N + 1):
                c[k] += c[k - a]
    return c


def is_palindromic(p: IntPoly, d: int) -> bool:
    """True iff ``t**d * p(1/t) == p`` (and ``deg p <= d``)."""
    if p.degree > d:
        return False
    return all(p[k] == p[d - k] for k in range(d + 1))


def check_reciprocal_symmetry(gf: RationalGF, sign: int, k: int) -> bool:
    """Decide exactly whether ``gf(1/t) == sign * t**k * gf(t)``.

    Uses ``1 - t^-a = -t^-a (1 - t^a)`` on each denominator factor, so
    ``gf(1/t) = (-1)^E t^(A - deg num) rev(num) / den`` with ``E = sum e``
    and ``A = sum a*e``; the identity reduces to a polynomial comparison.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    num = gf.num
    if num.is_zero():
        return True
    E, A = gf.den_weight()
    lhs = num.reversed(num.degree) * ((-1) ** E)
    rhs = num * sign
    shift = A - num.degree - k
    if shift >= 0:
        lhs = lhs.shift(shift)
    else:
        rhs = rhs.shift(-shift)
    return lhs == rhs


def gf_equal(f: RationalGF, g: RationalGF) -> bool:
    """Equality as rational functions, by cross-multiplying denominators."""
    d1, d2 = Counter(dict(f.den)), Counter(dict(g.den))
    common = d1 & d2
    rest1 = RationalGF(IntPoly((1,)), tuple((d1 - common).items())).den_poly()
    rest2 = RationalGF(IntPoly((1,)), tuple((d2 - common).items())).den_poly()
    return f.num * rest2 == g.num * rest1


def gf_op(kind: str, *args):
    """Dispatcher mirroring the method API: ``mul_poly``, ``mul_factor``,
    ``div_factor`` and ``equal``."""
    if kind == "mul_poly":
        gf, p = args
        return gf.mul_poly(p)
    if kind == "mul_factor":
        gf, a, *e = args
        return gf.mul_factor(a, *e)
    if kind == "div_factor":
        gf, a, *e = args
        return gf.div_factor(a, *e, from_numerator=True)
    if kind == "equal":
        f, g = args
        return gf_equal(f, g)
    raise ValueError(f"unknown gf op {kind!r}")
