"""Exact p-adic valuations on rational numbers.

Everything in this package is built on exact rationals: a scalar is a
``fractions.Fraction`` together with a prime p, and its p-adic valuation
(normalized by v_p(p) = 1) is always derivable exactly.  There is no
floating point anywhere.  The distinguished value +infinity (valuation of
zero) is the module-level singleton ``INF``.

Besides the scalar type, this module provides the two arithmetic functions
that control convergence of divided-power series:

* ``factorial_valuation(i, p)`` = v_p(i!) = (i - s_p(i)) / (p - 1) where
  s_p(i) is the digit sum of i in radix p, and
* ``nu(i, p)``, the smallest n with v_p(n!) + i >= 0 (and 0 for i >= 0),
  which has the erratic O(log|i|) overshoot over -i(p-1) that makes these
  computations worth automating.

Finally, ``poly_newton_polygon`` computes the slopes of the lower convex
hull of (index, valuation of coefficient) for a polynomial; the slope
multiset is the negative of the root-valuation multiset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union


class _Infinity:
    """The single +infinity used for valuations of zero.

    Compares strictly greater than every Fraction/int, is absorbing for
    addition, and equal only to itself.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("period-lab-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __neg__(self):
        raise ArithmeticError("negative infinity is not a valuation here")


INF = _Infinity()

#: A valuation: exact rational or +infinity.
Valuation = Union[Fraction, _Infinity]


def _is_probable_prime(n: int) -> bool:
    # deterministic Miller-Rabin; the witness set covers all n < 3.3 * 10^24
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Prime:
    """A verified prime number; the residue characteristic of everything."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_probable_prime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")

    def __int__(self):
        return self.p

    def __repr__(self):
        return f"Prime({self.p})"


def int_valuation(n: int, p: int) -> Valuation:
    """v_p of a plain integer (INF for 0)."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return Fraction(v)


def rational_valuation(x, p: int) -> Valuation:
    """v_p of an exact rational, normalized by v_p(p) = 1."""
    x = Fraction(x)
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


@dataclass(frozen=True)
class PadicScalar:
    """An exact rational viewed inside Q_p.

    The value is stored in lowest terms (``Fraction`` guarantees this), so
    the valuation is always exact.  Instances are immutable and hashable;
    mixed arithmetic with ints and Fractions coerces to the scalar's prime.
    """

    value: Fraction
    prime: Prime

    def __init__(self, value, prime):
        if isinstance(prime, int):
            prime = Prime(prime)
        object.__setattr__(self, "value", Fraction(value))
        object.__setattr__(self, "prime", prime)

    @property
    def p(self) -> int:
        return self.prime.p

    def valuation(self) -> Valuation:
        return rational_valuation(self.value, self.p)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise ValueError("mixed primes")
            return other
        return PadicScalar(other, self.prime)

    def __add__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.value + other.value, self.prime)

    __radd__ = __add__

    def __neg__(self):
        return PadicScalar(-self.value, self.prime)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.value * other.value, self.prime)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.value / other.value, self.prime)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        return PadicScalar(self.value ** n, self.prime)

    def __eq__(self, other):
        if isinstance(other, PadicScalar):
            return self.prime == other.prime and self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash((self.value, self.prime))

    def __repr__(self):
        return f"PadicScalar({self.value}, p={self.p})"

    def serialize(self) -> str:
        """Decimal-free string form "num/den" (or "num" for integers)."""
        return format_rational(self.value)

    @classmethod
    def parse(cls, text: str, prime) -> "PadicScalar":
        return cls(parse_rational(text), prime)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"cannot parse rational from {text!r}")


def valuation(x, p=None) -> Valuation:
    """p-adic valuation of a PadicScalar, or of a rational given p."""
    if isinstance(x, PadicScalar):
        return x.valuation()
    if p is None:
        raise ValueError("valuation of a bare rational needs a prime")
    return rational_valuation(x, int(p))


def digit_sum(i: int, p: int) -> int:
    s = 0
    while i:
        i, r = divmod(i, p)
        s += r
    return s


def factorial_valuation(i: int, p) -> int:
    """v_p(i!) = (i - s_p(i)) / (p - 1), an exact nonnegative integer."""
    if i < 0:
        raise ValueError("factorial of a negative integer")
    p = int(p)
    num = i - digit_sum(i, p)
    assert num % (p - 1) == 0
    return num // (p - 1)


def nu(i: int, p) -> int:
    """Smallest n with v_p(n!) + i >= 0; zero for i >= 0.

    Computed by incremental scan (v_p(n!) only jumps at multiples of p),
    not by a closed form: the overshoot above -i(p-1) genuinely oscillates
    on the scale of (p-1) log_p|i| and is not bounded.
    """
    if i >= 0:
        return 0
    p = int(p)
    target = -i
    n, vfact = 0, 0
    while vfact < target:
        n += p
        vfact += 1 + int(int_valuation(n // p, p))
    # v_p(n!) only jumps at multiples of p, so the minimal n is the
    # multiple of p at which the threshold was first reached
    return n


@dataclass(frozen=True)
class PolyValuationProfile:
    """Valuations of a polynomial's coefficients, indexed 0..degree.

    Missing indices mean +infinity (zero coefficient); the leading
    coefficient must have finite valuation.
    """

    degree: int
    coeff_valuations: tuple

    def __init__(self, degree: int, coeff_valuations):
        items = []
        seen = set()
        for idx, v in coeff_valuations:
            if not 0 <= idx <= degree:
                raise ValueError(f"index {idx} outside [0, {degree}]")
            if idx in seen:
                raise ValueError(f"duplicate index {idx}")
            seen.add(idx)
            items.append((idx, v if v is INF else Fraction(v)))
        items.sort()
        finite = [iv for iv in items if iv[1] is not INF]
        if not finite:
            raise ValueError("profile has no finite valuation")
        if degree not in {idx for idx, v in finite}:
            raise ValueError("leading coefficient valuation must be finite")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeff_valuations", tuple(items))

    def finite_points(self):
        return [(Fraction(i), v) for i, v in self.coeff_valuations if v is not INF]


def lower_hull(points: Iterable) -> list:
    """Lower convex hull of finite points, by Andrew's monotone chain.

    Points are (x, y) with exact rational coordinates; the result is the
    vertex chain left to right with strictly increasing slopes.
    """
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    # keep only the lowest point for each abscissa
    best = {}
    for x, y in pts:
        if x not in best or y < best[x]:
            best[x] = y
    pts = sorted(best.items())
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop x2 if it lies on or above the segment x1 -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def poly_newton_polygon(profile: PolyValuationProfile) -> list:
    """Slopes-with-multiplicities of the polynomial's Newton polygon.

    Returns [(slope, length)] in increasing slope order; the slopes are
    the negatives of the root valuations, lengths count roots.
    """
    hull = lower_hull(profile.finite_points())
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y2 - y1) / (x2 - x1)
        length = x2 - x1
        if out and out[-1][0] == slope:
            out[-1] = (slope, out[-1][1] + length)
        else:
            out.append((slope, length))
    return [(s, int(l)) for s, l in out]
