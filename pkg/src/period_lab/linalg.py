"""Exact linear algebra over Q and over the model field Q[x]/(E).

The base field K of a filtered Frobenius module is presented by a monic
integer polynomial E of degree e, Eisenstein at p (degree 1 gives K = Q_p
itself, modeled by Q).  Elements are polynomials in the uniformizer pi of
degree < e with Fraction coefficients; {1, pi, ..., pi^(e-1)} is a basis
over Q_p, so an element lies in Q_p exactly when its higher coordinates
vanish — the test the admissibility checker uses for "is this line
rational".  The valuation is exact: v_p(sum b_i pi^i) =
min_i (v_p(b_i) + i/e), the minimum being attained uniquely (integer part
vs fractional part).

Matrices are plain lists of lists; everything is Gaussian elimination with
exact field arithmetic.  Characteristic polynomials come from the Faddeev-
LeVerrier recurrence (division-free apart from exact integer divisions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .padic import INF, Valuation, rational_valuation


@dataclass(frozen=True)
class BaseFieldK:
    """A totally ramified extension of Q_p presented by an Eisenstein
    polynomial (monic, integer coefficients; degree 1 means K = Q_p)."""

    p: int
    eisenstein: tuple

    def __init__(self, p: int, eisenstein):
        coeffs = tuple(int(c) for c in eisenstein)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("need a monic polynomial of degree >= 1")
        e = len(coeffs) - 1
        if e > 1:
            if any(c % p for c in coeffs[:-1]):
                raise ValueError("non-leading coefficients must be divisible by p")
            if coeffs[0] % (p * p) == 0:
                raise ValueError("constant term must not be divisible by p^2")
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "eisenstein", coeffs)

    @classmethod
    def qp(cls, p: int) -> "BaseFieldK":
        return cls(p, (-p, 1))

    @property
    def e(self) -> int:
        return len(self.eisenstein) - 1

    def zero(self) -> "KElement":
        return KElement(self, ())

    def one(self) -> "KElement":
        return KElement(self, (Fraction(1),))

    def scalar(self, q) -> "KElement":
        return KElement(self, (Fraction(q),))

    def pi(self) -> "KElement":
        if self.e == 1:
            # degree 1: pi is the rational root itself
            return self.scalar(-self.eisenstein[0])
        return KElement(self, (Fraction(0), Fraction(1)))

    def element(self, coords) -> "KElement":
        return KElement(self, tuple(Fraction(c) for c in coords))


class KElement:
    """A polynomial in the uniformizer, reduced to degree < e."""

    __slots__ = ("field", "coords")

    def __init__(self, field: BaseFieldK, coords):
        coords = [Fraction(c) for c in coords]
        e = field.e
        # reduce degree >= e via the monic relation pi^e = -(lower terms)
        while len(coords) > e:
            top = coords.pop()
            if top:
                for i, c in enumerate(field.eisenstein[:-1]):
                    coords[len(coords) - e + i] -= top * c
        while coords and coords[-1] == 0:
            coords.pop()
        self.field = field
        self.coords = tuple(coords)

    def is_zero(self) -> bool:
        return not self.coords

    def is_rational(self) -> bool:
        """True when the element lies in Q_p (all higher coordinates 0)."""
        return len(self.coords) <= 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0] if self.coords else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.scalar(other)
        if not isinstance(other, KElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def _coerce(self, other) -> "KElement":
        if isinstance(other, KElement):
            if other.field != self.field:
                raise ValueError("mixed base fields")
            return other
        return self.field.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coords), len(other.coords))
        a = list(self.coords) + [Fraction(0)] * (n - len(self.coords))
        for i, c in enumerate(other.coords):
            a[i] += c
        return KElement(self.field, a)

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.field, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return self.field.zero()
        out = [Fraction(0)] * (len(self.coords) + len(other.coords) - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    out[i + j] += a * b
        return KElement(self.field, out)

    __rmul__ = __mul__

    def inverse(self) -> "KElement":
        """Extended Euclid against the (irreducible) defining polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.field.e == 1 or self.is_rational():
            return self.field.scalar(1 / self.rational_value())
        # work in Q[x]: r0 = E, r1 = self
        r0 = [Fraction(c) for c in self.field.eisenstein]
        r1 = list(self.coords)
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = _poly_divmod_q(r0, r1)
            if not r:
                break
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, s0, r1, s1 = r1, s1, r, s
        # r1 is a nonzero constant gcd (E is irreducible)
        assert len(r1) == 1
        inv_const = 1 / r1[0]
        return KElement(self.field, [c * inv_const for c in s1])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def valuation(self) -> Valuation:
        """v_p, normalized by v_p(p) = 1, via the unique-minimum formula."""
        if self.is_zero():
            return INF
        f = self.field
        if f.e == 1:
            return rational_valuation(self.coords[0], f.p)
        best: Valuation = INF
        for i, c in enumerate(self.coords):
            if c:
                cand = rational_valuation(c, f.p) + Fraction(i, f.e)
                if cand < best:
                    best = cand
        return best

    def __repr__(self):
        if not self.coords:
            return "K(0)"
        return "K(" + ", ".join(str(c) for c in self.coords) + ")"


def _poly_divmod_q(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        coef = a[-1] * inv
        deg = len(a) - len(b)
        q[deg] = coef
        for i, bc in enumerate(b):
            a[deg + i] -= coef * bc
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# matrices over a field with .is_zero / arithmetic (KElement or Fraction)
# ---------------------------------------------------------------------------


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return [
        [sum((A[i][t] * B[t][j] for t in range(k)), _zero_like(A[i][0]))
         for j in range(m)]
        for i in range(n)
    ]


def _zero_like(x):
    if isinstance(x, KElement):
        return x.field.zero()
    return Fraction(0)


def _is_zero(x):
    return x.is_zero() if isinstance(x, KElement) else x == 0


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not _is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = (
            rows[r][c].inverse() if isinstance(rows[r][c], KElement)
            else 1 / rows[r][c]
        )
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def intersect_rowspaces(A, B):
    """Basis of rowspace(A) ∩ rowspace(B) (Zassenhaus)."""
    if not A or not B:
        return []
    n = len(A[0])
    zero = _zero_like(A[0][0])
    stacked = []
    for a in A:
        stacked.append(list(a) + list(a))
    for b in B:
        stacked.append(list(b) + [zero] * n)
    echelon, pivots = rref(stacked)
    out = []
    for row, pivot in zip(echelon, pivots):
        if pivot >= n:
            out.append(row[n:])
    return out


def solve_right(A, b):
    """One solution x of A x = b, or None."""
    n, m = len(A), len(A[0])
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    echelon, pivots = rref(aug)
    if m in pivots:
        return None
    zero = _zero_like(A[0][0])
    x = [zero] * m
    for row, pivot in zip(echelon, pivots):
        x[pivot] = row[-1]
    return x


def char_poly(A) -> list:
    """Characteristic polynomial det(XI - A) of a rational matrix, monic,
    lowest degree first, by the Faddeev-LeVerrier recurrence."""
    n = len(A)
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            M[i][i] += c[n - k + 1]
        M = mat_mul(A, M)
        tr = sum((M[i][i] for i in range(n)), Fraction(0))
        c[n - k] = -tr / Fraction(k)
    return c


def det(A) -> Fraction:
    return char_poly(A)[0] * (-1) ** len(A)


def poly_eval_matrix(coeffs, A):
    """coeffs(A) for a rational polynomial, lowest degree first."""
    n = len(A)
    out = [[Fraction(0)] * n for _ in range(n)]
    power = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for k, ck in enumerate(coeffs):
        if ck:
            for i in range(n):
                for j in range(n):
                    out[i][j] += ck * power[i][j]
        if k + 1 < len(coeffs):
            power = mat_mul(power, A)
    return out


def nullspace(A) -> list:
    """Basis of the right kernel (works over Q and over K)."""
    m = len(A[0]) if A else 0
    echelon, pivots = rref(A)
    zero = _zero_like(A[0][0]) if A else Fraction(0)
    one = A[0][0].field.one() if A and isinstance(A[0][0], KElement) else Fraction(1)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * m
        v[fc] = one
        for row, pivot in zip(echelon, pivots):
            v[pivot] = -row[fc]
        basis.append(v)
    return basis


def poly_gcd_q(a, b) -> list:
    """Monic gcd of rational polynomials (lowest degree first)."""
    a, b = list(a), list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_derivative(a) -> list:
    return [c * i for i, c in enumerate(a)][1:]


def is_squarefree(a) -> bool:
    return len(poly_gcd_q(a, poly_derivative(a))) <= 1


def rational_roots(coeffs) -> list:
    """All rational roots (with multiplicity) of a rational polynomial.

    Clears denominators and runs the rational root search on the integer
    polynomial, deflating as roots are found.
    """
    a = list(coeffs)
    while a and a[-1] == 0:
        a.pop()
    if not a:
        raise ValueError("zero polynomial")
    roots = []
    # strip roots at zero
    while a and a[0] == 0:
        roots.append(Fraction(0))
        a = a[1:]
    denom = lcm(*[c.denominator for c in a]) if len(a) > 1 else 1
    ai = [int(c * denom) for c in a]
    while len(ai) > 1:
        root = _find_rational_root(ai)
        if root is None:
            break
        roots.append(root)
        ai = _deflate_int(ai, root)
    return roots


def _divisors(n: int) -> list:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _find_rational_root(ai):
    # candidates p/q with p | const, q | lead
    const, lead = ai[0], ai[-1]
    if const == 0:
        return Fraction(0)
    for q in _divisors(lead):
        for pnum in _divisors(const):
            for sign in (1, -1):
                cand = Fraction(sign * pnum, q)
                if _eval_int_poly(ai, cand) == 0:
                    return cand
    return None


def _eval_int_poly(ai, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ai):
        acc = acc * x + c
    return acc


def _deflate_int(ai, root: Fraction):
    # synthetic division by (x - root), then clear denominators
    coeffs = [Fraction(c) for c in ai]
    out = []
    acc = Fraction(0)
    for c in reversed(coeffs[1:]):
        acc = acc * root + c
        out.append(acc)
    out.reverse()
    denom = lcm(*[c.denominator for c in out]) if out else 1
    return [int(c * denom) for c in out]
