"""Formal model of distinguished elements of the tilt and its Witt ring.

An expression is a finite integer combination of monomials

    eps^a * (pflat)^c * [u]   scaled by   p^i

where eps is the pinned compatible system of p-power roots of unity
(depth-n component a primitive p^n-th root, so v_p(component_n - 1) =
1/(p^{n-1}(p-1)), the standard normalization), pflat is one pinned
compatible system of p-power roots of p, and [u] is the Teichmueller part
of an element of a finite field F_{p^f}.  Sums are FORMAL: Witt-vector
addition with carries is deliberately not modeled, which is enough for all
the identities handled here (the degree-one generator omega, the infinite
product factorizations, the evaluation map theta and the tilt valuation).

Exponent domains: ``a`` is any exact rational (the Galois action sends
a to chi*a + c(g)*c, and chi may carry a prime-to-p denominator); ``c`` is
a nonnegative rational with p-power denominator.  Evaluation stays exact
because prime-to-p denominators are invertible modulo p^N.

theta sends eps^a (pflat)^c [u] p^i to z^(p^N a) * p^(c+i) * [u] with z a
primitive p^N-th root of unity.  Values live in a graded module keyed by
the fractional part of the p-exponent: distinct fractional p-powers of p
are linearly independent over the cyclotomic field (Kummer theory), so the
per-piece zero test is sound and complete.  Teichmueller parts are exactly
representable only for u in {0, 1, -1}; any other u is carried as a formal
key and poisons definiteness (reported, never silently asserted) — the
(p-1)-st roots of unity of order > 2 do not lie in the p^N-th cyclotomic
field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cyclotomic import CycElt, CyclotomicContext
from .padic import (
    INF,
    Prime,
    Valuation,
    format_rational,
    parse_rational,
    rational_valuation,
)


class InexactTeichmullerError(ValueError):
    """A zero test touched a Teichmueller part with no exact model."""


class ExponentTooFineError(ValueError):
    """A monomial exponent has p-part finer than the evaluation level."""


# ---------------------------------------------------------------------------
# finite fields F_{p^f} (Teichmueller parts)
# ---------------------------------------------------------------------------


def _poly_trim(v):
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1 or 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_divmod(out, mod, p)


def _poly_divmod(a, mod, p):
    a = list(a)
    d = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, d - 1, -1):
        if a[i]:
            q = a[i] * inv_lead % p
            for j, m in enumerate(mod):
                a[i - d + j] = (a[i - d + j] - q * m) % p
    return _poly_trim(a[:d])


def _poly_powmod(base, n, mod, p):
    result = (1,)
    base = _poly_divmod(base, mod, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _poly_mod(a, b, p):
    a = list(_poly_trim(a))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        q = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for j, m in enumerate(b):
            a[shift + j] = (a[shift + j] - q * m) % p
        a = list(_poly_trim(a))
    return tuple(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _is_irreducible(poly, p):
    f = len(poly) - 1
    x = (0, 1)
    if _poly_powmod(x, p**f, poly, p) != _poly_divmod(x, poly, p):
        return False
    for q in _prime_factors(f):
        probe = _poly_powmod(x, p ** (f // q), poly, p)
        diff = list(probe) + [0] * (2 - len(probe))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(diff, poly, p)) > 1:
            return False
    return True


_MODULUS_CACHE: dict = {}


def field_modulus(p: int, f: int) -> tuple:
    """The canonical irreducible of degree f over F_p (smallest by the
    integer encoding of its non-leading coefficients)."""
    key = (p, f)
    if key in _MODULUS_CACHE:
        return _MODULUS_CACHE[key]
    if f == 1:
        mod = (0, 1)
    else:
        mod = None
        for code in range(p**f):
            coeffs = []
            c = code
            for _ in range(f):
                c, r = divmod(c, p)
                coeffs.append(r)
            cand = tuple(coeffs) + (1,)
            if _is_irreducible(cand, p):
                mod = cand
                break
        assert mod is not None
    _MODULUS_CACHE[key] = mod
    return mod


@dataclass(frozen=True)
class FqElement:
    """An element of F_{p^f}, as a reduced polynomial representative."""

    p: int
    f: int
    poly: tuple

    def __init__(self, p: int, f: int, poly):
        p, f = int(p), int(f)
        if f < 1:
            raise ValueError("field degree must be >= 1")
        mod = field_modulus(p, f)
        red = _poly_divmod(tuple(int(x) % p for x in poly), mod, p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "poly", red)

    @classmethod
    def one(cls, p: int, f: int = 1) -> "FqElement":
        return cls(p, f, (1,))

    @classmethod
    def scalar(cls, p: int, value: int, f: int = 1) -> "FqElement":
        return cls(p, f, (value,))

    def is_zero(self) -> bool:
        return not self.poly

    def is_one(self) -> bool:
        return self.poly == (1,)

    def __mul__(self, other: "FqElement") -> "FqElement":
        if (self.p, self.f) != (other.p, other.f):
            raise ValueError("mixed finite fields")
        mod = field_modulus(self.p, self.f)
        return FqElement(
            self.p, self.f, _poly_mulmod(self.poly or (0,), other.poly or (0,), mod, self.p)
        )

    def power(self, n: int) -> "FqElement":
        """u^n for any integer n (negative allowed on nonzero elements)."""
        if self.is_zero():
            if n <= 0:
                raise ZeroDivisionError("0 has no nonpositive powers")
            return self
        group = self.p**self.f - 1
        n %= group
        mod = field_modulus(self.p, self.f)
        return FqElement(self.p, self.f, _poly_powmod(self.poly, n, mod, self.p))

    def frobenius(self, n: int = 1) -> "FqElement":
        """u -> u^(p^n); negative n inverts (Frobenius is bijective here)."""
        if self.is_zero():
            return self
        group = self.p**self.f - 1
        exp = pow(self.p, n % self.f, group) if group > 1 else 1
        return self.power(exp)

    def to_json(self):
        return {"f": self.f, "poly": list(self.poly)}


# ---------------------------------------------------------------------------
# monomials and expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TiltMonomial:
    """eps^a * (pflat)^c * [u]; a rational, c >= 0 with p-power denominator,
    u a nonzero finite-field element."""

    a: Fraction
    c: Fraction
    u: FqElement

    def __init__(self, a, c, u: FqElement):
        a, c = Fraction(a), Fraction(c)
        if c < 0:
            raise ValueError("pflat exponent must be nonnegative")
        if not _is_p_power(c.denominator, u.p):
            raise ValueError("pflat exponent denominator must be a power of p")
        if u.is_zero():
            raise ValueError("Teichmueller part must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "u", u)

    def key(self):
        return (self.a, self.c, self.u.poly, self.u.f)

    def vflat(self) -> Fraction:
        """v_flat of the monomial: the pflat exponent (units contribute 0)."""
        return self.c


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class GaloisElement:
    """(chi, c, frob): the cyclotomic-character value (a rational p-adic
    unit), the Kummer cocycle value (rational with p-free denominator) and
    a power of the residue Frobenius."""

    chi: Fraction
    c: Fraction
    frob: int

    def __init__(self, chi, c, frob=0, *, p: Optional[int] = None):
        chi, c = Fraction(chi), Fraction(c)
        if p is not None:
            if rational_valuation(chi, p) != 0:
                raise ValueError("chi must be a p-adic unit")
            if c != 0 and rational_valuation(c, p) < 0:
                raise ValueError("cocycle value must be p-integral")
        object.__setattr__(self, "chi", chi)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "frob", int(frob))

    @classmethod
    def identity(cls) -> "GaloisElement":
        return cls(1, 0, 0)

    def compose(self, other: "GaloisElement") -> "GaloisElement":
        """Group law: chi multiplies, the cocycle law
        c(gh) = c(g) + chi(g) c(h), Frobenius powers add."""
        return GaloisElement(
            self.chi * other.chi,
            self.c + self.chi * other.c,
            self.frob + other.frob,
        )

    def to_json(self):
        return {
            "chi": format_rational(self.chi),
            "c": format_rational(self.c),
            "frob": self.frob,
        }


class TiltExpr:
    """A finite formal integer combination of monomials times powers of p.

    Terms are kept sorted and merged; the p-power index i must be >= 0 for
    expressions asserted to be integral (checked by the operations that
    need integrality, not at construction).
    """

    __slots__ = ("prime", "terms")

    def __init__(self, prime, terms):
        if isinstance(prime, int):
            prime = Prime(prime)
        merged: dict = {}
        for coeff, mono, ppow in terms:
            if mono.u.p != prime.p:
                raise ValueError("monomial field characteristic mismatch")
            k = (ppow, mono.key())
            cur_coeff, cur_mono = merged.get(k, (0, mono))
            merged[k] = (cur_coeff + int(coeff), mono)
        self.prime = prime
        self.terms = tuple(
            (c, m, ppow)
            for (ppow, _), (c, m) in sorted(merged.items())
            if c != 0
        )

    @property
    def p(self) -> int:
        return self.prime.p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p) -> "TiltExpr":
        return cls(p, [])

    @classmethod
    def one(cls, p) -> "TiltExpr":
        p_int = int(p) if isinstance(p, int) else p.p
        return cls(p, [(1, TiltMonomial(0, 0, FqElement.one(p_int)), 0)])

    @classmethod
    def epsilon_power(cls, p, a) -> "TiltExpr":
        """[eps^a] as a one-term expression."""
        p_int = int(p) if isinstance(p, int) else p.p
        return cls(p, [(1, TiltMonomial(a, 0, FqElement.one(p_int)), 0)])

    @classmethod
    def p_flat_power(cls, p, c=1) -> "TiltExpr":
        """[(pflat)^c]."""
        p_int = int(p) if isinstance(p, int) else p.p
        return cls(p, [(1, TiltMonomial(0, c, FqElement.one(p_int)), 0)])

    @classmethod
    def teichmuller(cls, u: FqElement) -> "TiltExpr":
        return cls(u.p, [(1, TiltMonomial(0, 0, u), 0)])

    @classmethod
    def p_scalar(cls, p, i=1) -> "TiltExpr":
        """p^i as an expression (i >= 0)."""
        p_int = int(p) if isinstance(p, int) else p.p
        return cls(p, [(1, TiltMonomial(0, 0, FqElement.one(p_int)), i)])

    @classmethod
    def epsilon_minus_one(cls, p) -> "TiltExpr":
        return cls.epsilon_power(p, 1) - cls.one(p)

    @classmethod
    def p_flat_minus_p(cls, p) -> "TiltExpr":
        """The simplest degree-one generator of the evaluation kernel."""
        return cls.p_flat_power(p, 1) - cls.p_scalar(p, 1)

    @classmethod
    def omega(cls, p) -> "TiltExpr":
        """omega = ([eps]-1)/([eps^{1/p}]-1) = sum_{j<p} [eps^{j/p}]."""
        p_int = int(p) if isinstance(p, int) else p.p
        return cls(
            p,
            [
                (1, TiltMonomial(Fraction(j, p_int), 0, FqElement.one(p_int)), 0)
                for j in range(p_int)
            ],
        )

    # -- ring structure ------------------------------------------------------

    def __add__(self, other: "TiltExpr") -> "TiltExpr":
        self._check(other)
        return TiltExpr(self.prime, list(self.terms) + list(other.terms))

    def __neg__(self) -> "TiltExpr":
        return TiltExpr(self.prime, [(-c, m, i) for c, m, i in self.terms])

    def __sub__(self, other: "TiltExpr") -> "TiltExpr":
        return self + (-other)

    def __mul__(self, other: "TiltExpr") -> "TiltExpr":
        self._check(other)
        out = []
        for c1, m1, i1 in self.terms:
            for c2, m2, i2 in other.terms:
                mono = TiltMonomial(m1.a + m2.a, m1.c + m2.c, m1.u * m2.u)
                out.append((c1 * c2, mono, i1 + i2))
        return TiltExpr(self.prime, out)

    def _check(self, other):
        if not isinstance(other, TiltExpr) or other.prime != self.prime:
            raise ValueError("mixed expressions")

    def __eq__(self, other):
        return (
            isinstance(other, TiltExpr)
            and self.prime == other.prime
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "TiltExpr(0)"
        bits = []
        for c, m, i in self.terms:
            part = f"{c}"
            if m.a:
                part += f"*eps^{m.a}"
            if m.c:
                part += f"*pflat^{m.c}"
            if not m.u.is_one():
                part += f"*[{list(m.u.poly)}]"
            if i:
                part += f"*p^{i}"
            bits.append(part)
        return "TiltExpr(" + " + ".join(bits) + ")"

    # -- semilinear structure -----------------------------------------------

    def frobenius(self, n: int = 1) -> "TiltExpr":
        """Witt Frobenius: multiplies both exponents by p^n, raises the
        Teichmueller part to the p^n, fixes the p-power index."""
        scale = Fraction(self.p) ** n
        return TiltExpr(
            self.prime,
            [
                (c, TiltMonomial(m.a * scale, m.c * scale, m.u.frobenius(n)), i)
                for c, m, i in self.terms
            ],
        )

    def galois_act(self, g: GaloisElement) -> "TiltExpr":
        """g(eps^a (pflat)^c [u]) = eps^(chi a + c(g) c) (pflat)^c [Frob^k u]."""
        return TiltExpr(
            self.prime,
            [
                (
                    c,
                    TiltMonomial(g.chi * m.a + g.c * m.c, m.c, m.u.frobenius(g.frob)),
                    i,
                )
                for c, m, i in self.terms
            ],
        )

    # -- serialization --------------------------------------------------------

    def to_json(self):
        return [
            {
                "coeff": c,
                "a": format_rational(m.a),
                "c": format_rational(m.c),
                "u": m.u.to_json(),
                "p_power": i,
            }
            for c, m, i in self.terms
        ]

    @classmethod
    def from_json(cls, p, items) -> "TiltExpr":
        p_int = int(p) if isinstance(p, int) else p.p
        terms = []
        for it in items:
            u = it.get("u")
            uel = (
                FqElement(p_int, u["f"], tuple(u["poly"]))
                if u
                else FqElement.one(p_int)
            )
            terms.append(
                (
                    int(it["coeff"]),
                    TiltMonomial(parse_rational(it["a"]), parse_rational(it["c"]), uel),
                    int(it.get("p_power", 0)),
                )
            )
        return cls(p, terms)


def vflat_monomial(m: TiltMonomial) -> Fraction:
    """v_flat of a single monomial: the pflat exponent."""
    return m.vflat()


# ---------------------------------------------------------------------------
# evaluation (theta) and the graded value model
# ---------------------------------------------------------------------------


def _p_denominator_exponent(x: Fraction, p: int) -> int:
    d, k = x.denominator, 0
    while d % p == 0:
        d //= p
        k += 1
    return k


def _root_exponent(a: Fraction, p: int, N: int) -> int:
    """(p^N * a) as an integer mod p^N; the prime-to-p denominator part is
    inverted modulo p^N.  Requires the p-part of a's denominator <= p^N."""
    scaled = a * Fraction(p) ** N
    if rational_valuation(scaled, p) < 0:
        raise ExponentTooFineError(
            f"exponent {a} is finer than the evaluation level {N}"
        )
    num, den = scaled.numerator, scaled.denominator  # den prime to p now
    modulus = p**N
    if modulus == 1:
        return 0
    return num * pow(den, -1, modulus) % modulus


@dataclass
class GradedThetaValue:
    """theta value in the Kummer-graded cyclotomic module.

    ``pieces`` maps (fractional p-exponent, teich key) to an exact
    cyclotomic element; integer p-powers are folded into the coefficients.
    The teich key is None when the Teichmueller part was exactly
    representable (u in {1, -1}); otherwise it is the reduced finite-field
    data and the value is only formally graded (``exact`` is False).
    """

    context: CyclotomicContext
    pieces: dict
    exact: bool = True

    def _nonzero_pieces(self):
        return {k: v for k, v in self.pieces.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        live = self._nonzero_pieces()
        if any(key[1] is not None for key in live):
            raise InexactTeichmullerError(
                "zero test with inexactly represented Teichmueller parts"
            )
        return not live

    def equals_rational(self, q) -> bool:
        diff = dict(self._nonzero_pieces())
        key = (Fraction(0), None)
        diff[key] = diff.get(key, self.context.zero()) - self.context.rational(q)
        return GradedThetaValue(self.context, diff, self.exact).is_zero()

    def single_cyclotomic(self) -> CycElt:
        """The value as one cyclotomic number, when it has no Kummer or
        formal Teichmueller part."""
        live = self._nonzero_pieces()
        if not live:
            return self.context.zero()
        if set(live) != {(Fraction(0), None)}:
            raise InexactTeichmullerError(
                "value has Kummer or formal Teichmueller pieces"
            )
        return live[(Fraction(0), None)]

    def substitute_root(self, m: int) -> "GradedThetaValue":
        """Apply z -> z^m to every piece (the Galois action on values)."""
        return GradedThetaValue(
            self.context,
            {k: v.substitute(m) for k, v in self.pieces.items()},
            self.exact,
        )


def _teich_contribution(u: FqElement):
    """(sign, key): exact sign for u = +-1, else a formal key."""
    if u.is_one():
        return 1, None
    if u.f == 1 and u.poly == ((u.p - 1),) and u.p != 2:
        return -1, None
    return 1, (u.f, u.poly)


def theta(x: TiltExpr, N: int) -> GradedThetaValue:
    """Evaluate at level N: monomial eps^a (pflat)^c [u] p^i contributes
    z^(p^N a) p^(c+i) [u] with z of order p^N.

    Rejects eps-exponents finer than p^N; flags Teichmueller parts without
    an exact cyclotomic image.
    """
    ctx = CyclotomicContext(x.p, N)
    pieces: dict = {}
    exact = True
    for coeff, m, i in x.terms:
        E = _root_exponent(m.a, x.p, N)
        frac = m.c - int(m.c)  # c >= 0, so int() is the floor
        sign, key = _teich_contribution(m.u)
        if key is not None:
            exact = False
        scale = Fraction(coeff * sign) * Fraction(x.p) ** (int(m.c) + i)
        piece_key = (frac, key)
        cur = pieces.get(piece_key, ctx.zero())
        pieces[piece_key] = cur + ctx.root_power(E).scale(scale)
    return GradedThetaValue(ctx, pieces, exact)


def rational_unit_mod(q, p: int, N: int) -> int:
    """A rational p-adic unit reduced mod p^N (denominator inverted)."""
    q = Fraction(q)
    if rational_valuation(q, p) != 0:
        raise ValueError(f"{q} is not a p-adic unit")
    modulus = p**N
    if modulus == 1:
        return 0
    return q.numerator * pow(q.denominator, -1, modulus) % modulus


def ker_theta_orbit_probe(x: TiltExpr, N: int, n_max: int) -> list:
    """[theta(phi^n(x)) == 0 for n = 0..n_max]."""
    out = []
    for n in range(n_max + 1):
        out.append(theta(x.frobenius(n), N).is_zero())
    return out


# ---------------------------------------------------------------------------
# the tilt valuation of formal sums
# ---------------------------------------------------------------------------


@dataclass
class VflatResult:
    """Depth-indexed values p^n v_p(component_n) with a stabilization flag.

    ``values[n]`` is the exact value at depth n (INF for a vanishing
    component), or None when that depth was inconclusive (a valuation tie
    across independent graded pieces, or a formal Teichmueller part on the
    minimal piece).  ``stabilized`` means the last two depths agree and are
    conclusive; only then does ``value`` assert v_flat.
    """

    values: list
    conclusive: bool
    stabilized: bool
    value: Optional[Valuation]


def _component_value(x: TiltExpr, n: int):
    """(value, conclusive) for p^n * v_p of the depth-n component of a
    p-power-index-0 expression.

    The depth-n component of eps^a (pflat)^c [u] is the n-fold Frobenius
    shift: a p^{n+k}-th root of unity (k the p-part of a's denominator)
    times p^(c/p^n) times [u^(1/p^n)].  A lift valuation >= 1 means the
    component vanishes mod p (the residue ring truncates there).
    """
    p = x.p
    k_max = max(
        (_p_denominator_exponent(m.a, p) for _, m, _ in x.terms), default=0
    )
    M = n + k_max
    ctx = CyclotomicContext(p, M)
    pieces: dict = {}
    for coeff, m, _ in x.terms:
        E = _root_exponent(m.a / Fraction(p) ** n, p, M)
        scale_exp = m.c / Fraction(p) ** n  # v_p of the pflat component
        frac = scale_exp - int(scale_exp)
        sign, key = _teich_contribution(m.u.frobenius(-n))
        piece_key = (frac, key)
        scale = Fraction(coeff * sign) * Fraction(p) ** int(scale_exp)
        cur = pieces.get(piece_key, ctx.zero())
        pieces[piece_key] = cur + ctx.root_power(E).scale(scale)
    candidates = []
    for (frac, key), elt in pieces.items():
        v = elt.vp()
        if v is INF:
            continue
        candidates.append((v + frac, key))
    candidates = [c for c in candidates if c[0] < 1]  # vanishes mod p beyond
    if not candidates:
        return INF, True
    candidates.sort(key=lambda t: t[0])
    best_v, best_key = candidates[0]
    tied = len(candidates) > 1 and candidates[1][0] == best_v
    conclusive = (not tied) and best_key is None
    return Fraction(p) ** n * best_v, conclusive


def vflat_sum(x: TiltExpr, depth: int) -> VflatResult:
    """Exact tilt valuation of a formal sum with p-power index 0, evaluated
    depth by depth.

    The depth-n component is an exact element of the cyclotomic-Kummer
    graded model; its valuation is the unique minimum over graded pieces
    when that minimum is unique (always true within a piece).  Ties across
    pieces are reported as inconclusive, never resolved by fiat.
    """
    if any(i != 0 for _, _, i in x.terms):
        raise ValueError("v_flat applies to expressions with p-power index 0")
    values = []
    all_ok = True
    for n in range(depth + 1):
        v, ok = _component_value(x, n)
        values.append(v if ok else None)
        all_ok = all_ok and ok
    stabilized = (
        len(values) >= 2
        and values[-1] is not None
        and values[-2] is not None
        and values[-1] == values[-2]
    )
    value = values[-1] if stabilized else None
    return VflatResult(values, all_ok, stabilized, value)


# ---------------------------------------------------------------------------
# generator condition
# ---------------------------------------------------------------------------


@dataclass
class GeneratorReport:
    """Checks for 'z generates the evaluation kernel': theta(z) = 0 and
    v_flat(z mod p) = 1."""

    theta_is_zero: bool
    vflat: VflatResult
    vflat_is_one: Optional[bool]

    @property
    def passes(self) -> Optional[bool]:
        if self.vflat_is_one is None:
            return None if self.theta_is_zero else False
        return self.theta_is_zero and self.vflat_is_one


def generator_condition_check(x: TiltExpr, N: int, depth: int) -> GeneratorReport:
    """Both conditions of the degree-one-generator criterion, exactly.

    The mod-p reduction of x is its p-power-index-0 part (formal sums do
    not carry Witt addition, so dropping the p multiples is the reduction).
    """
    t_zero = theta(x, N).is_zero()
    reduced = TiltExpr(x.prime, [(c, m, i) for c, m, i in x.terms if i == 0])
    vf = vflat_sum(reduced, depth)
    v_one = (vf.value == 1) if vf.stabilized else None
    return GeneratorReport(t_zero, vf, v_one)


# ---------------------------------------------------------------------------
# Newton profiles of formal series (bridge to the polygon module)
# ---------------------------------------------------------------------------


def newton_profile(x: TiltExpr, depth: int = 4):
    """(index, v_flat) profile of a formal series, one point per p-power.

    Single-monomial coefficients are exact; composite coefficients use the
    stabilized depth valuation and raise if it is inconclusive (a formal
    sum cannot decide valuation ties without Witt arithmetic).
    """
    from .polygons import SeriesProfile

    by_index: dict = {}
    for c, m, i in x.terms:
        by_index.setdefault(i, []).append((c, m, 0))
    points = []
    for i, terms in sorted(by_index.items()):
        if len(terms) == 1:
            points.append((Fraction(i), terms[0][1].vflat()))
            continue
        sub = TiltExpr(x.prime, terms)
        vf = vflat_sum(sub, depth)
        if not vf.stabilized:
            raise ValueError(
                f"valuation of the coefficient of p^{i} did not stabilize"
            )
        points.append((Fraction(i), vf.value))
    return SeriesProfile(points)
