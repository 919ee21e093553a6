"""Characters of the absolute Galois group of Q_p, and Sen operators.

For p > 2 a character decomposes uniquely as an unramified part (sending
Frobenius to a unit lambda), an exact-exponent power of the cyclotomic
character, and a finite-order tame twist with exponent mod p - 1.  The
triple (lambda, a, b) carries the whole admissibility classification:

    unramified       a = 0 and b = 0
    C_p-admissible   a = 0
    Hodge-Tate       a integral   (weight a)
    de Rham          a integral   (1-dimensional: same as Hodge-Tate)
    crystalline      a integral and b = 0

so crystalline implies de Rham implies Hodge-Tate structurally, and a
character that is both crystalline and C_p-admissible is unramified by
pure triple algebra.

The "a integral" test is decidable because exponents here are exact
rationals with p-free denominator (callers approximate arbitrary p-adic
exponents by rationals of their choosing).

Sen operators: for a matrix A giving the action of the level-r generator
of the Z_p-quotient (A close enough to the identity for the logarithm),
the operator is log(A)/p^r, computed by the truncated matrix-log series
with an explicit p-adic precision.  Its eigenvalues are the generalized
weights; the representation is trivial iff the operator vanishes, and
Hodge-Tate iff the operator is semi-simple with integer eigenvalues
(semi-simple read for the classical phrasing "semi-stable", which this
module interprets as squarefree minimal polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .linalg import (
    char_poly,
    is_squarefree,
    mat_mul,
    poly_eval_matrix,
    poly_gcd_q,
)
from .padic import (
    Prime,
    format_rational,
    parse_rational,
    rational_valuation,
)


@dataclass(frozen=True)
class CharacterTriple:
    """(lambda, a, b): unramified part, cyclotomic exponent, tame exponent.

    lambda is a rational p-adic unit; a has p-free denominator; b is a
    residue mod p - 1.  Requires p > 2 (the unit group splits only then).
    """

    prime: Prime
    lam: Fraction
    a: Fraction
    b: int

    def __init__(self, prime, lam, a, b):
        if isinstance(prime, int):
            prime = Prime(prime)
        if prime.p == 2:
            raise ValueError("character triples need p > 2")
        lam, a = Fraction(lam), Fraction(a)
        if rational_valuation(lam, prime.p) != 0:
            raise ValueError("unramified part must be a p-adic unit")
        if a.denominator % prime.p == 0:
            raise ValueError("cyclotomic exponent must be p-integral")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(b) % (prime.p - 1))

    @property
    def p(self) -> int:
        return self.prime.p

    def multiply(self, other: "CharacterTriple") -> "CharacterTriple":
        if other.prime != self.prime:
            raise ValueError("mixed primes")
        return CharacterTriple(
            self.prime, self.lam * other.lam, self.a + other.a, self.b + other.b
        )

    def inverse(self) -> "CharacterTriple":
        return CharacterTriple(self.prime, 1 / self.lam, -self.a, -self.b)

    def is_trivial(self) -> bool:
        return self.lam == 1 and self.a == 0 and self.b == 0

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "lambda": format_rational(self.lam),
            "a": format_rational(self.a),
            "b": self.b,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CharacterTriple":
        return cls(
            obj["p"],
            parse_rational(obj["lambda"]),
            parse_rational(obj["a"]),
            obj.get("b", 0),
        )


@dataclass(frozen=True)
class ClassificationFlags:
    unramified: bool
    cp_admissible: bool
    hodge_tate: bool
    de_rham: bool
    crystalline: bool
    hodge_tate_weight: Optional[Fraction]

    def to_json(self) -> dict:
        out = {
            "unramified": self.unramified,
            "cp_admissible": self.cp_admissible,
            "hodge_tate": self.hodge_tate,
            "de_rham": self.de_rham,
            "crystalline": self.crystalline,
        }
        if self.hodge_tate_weight is not None:
            out["hodge_tate_weight"] = format_rational(self.hodge_tate_weight)
        return out


def classify(chi: CharacterTriple) -> ClassificationFlags:
    """The admissibility flags of a character triple.

    The implication chain crystalline => de Rham => Hodge-Tate and
    unramified => crystalline and C_p-admissible holds by construction;
    conversely crystalline plus C_p-admissible collapses to unramified
    identically in the triple coordinates.
    """
    a_integral = chi.a.denominator == 1
    b_zero = chi.b == 0
    return ClassificationFlags(
        unramified=chi.a == 0 and b_zero,
        cp_admissible=chi.a == 0,
        hodge_tate=a_integral,
        de_rham=a_integral,
        crystalline=a_integral and b_zero,
        hodge_tate_weight=chi.a if a_integral else None,
    )


def multiply(chi1: CharacterTriple, chi2: CharacterTriple) -> CharacterTriple:
    return chi1.multiply(chi2)


# ---------------------------------------------------------------------------
# Sen operators
# ---------------------------------------------------------------------------


def _log_margin(p: int) -> int:
    # the series for log converges for v(A - I) > 1/(p-1); the integral
    # margin floor(1/(p-1)) + 1 is the classical sufficient bound
    return (1 // (p - 1)) + 1


@dataclass(frozen=True)
class SenInput:
    """Level r and the exact matrix by which the level-r generator acts."""

    prime: Prime
    level: int
    matrix: tuple

    def __init__(self, prime, level: int, matrix):
        if isinstance(prime, int):
            prime = Prime(prime)
        if level < 0:
            raise ValueError("level must be nonnegative")
        mat = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        d = len(mat)
        if any(len(row) != d for row in mat):
            raise ValueError("matrix must be square")
        margin = _log_margin(prime.p)
        for i in range(d):
            for j in range(d):
                delta = mat[i][j] - (1 if i == j else 0)
                if delta != 0 and rational_valuation(delta, prime.p) < margin:
                    raise ValueError(
                        "matrix is not close enough to the identity for the "
                        f"logarithm (need entrywise valuation >= {margin})"
                    )
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "matrix", mat)

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def dim(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class SenOperator:
    """Truncated log(A)/p^level with its stated p-adic precision."""

    prime: Prime
    matrix: tuple
    precision: int

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "matrix": [[format_rational(x) for x in row] for row in self.matrix],
            "precision": self.precision,
        }


def sen_operator(inp: SenInput, precision: int = 20) -> SenOperator:
    """log(A)/p^r by the truncated series sum (-1)^(i-1) (A-I)^i / i.

    Terms are included until margin*i - v_p(i) exceeds the working
    precision, so the dropped tail has entrywise valuation above it; the
    stated precision of the output accounts for the division by p^r.
    """
    p = inp.p
    r = inp.level
    margin = _log_margin(p)
    d = inp.dim
    delta = [
        [inp.matrix[i][j] - (1 if i == j else 0) for j in range(d)]
        for i in range(d)
    ]
    acc = [[Fraction(0)] * d for _ in range(d)]
    power = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    i = 0
    while True:
        i += 1
        tail_bound = margin * i - rational_valuation(Fraction(i), p)
        if tail_bound > precision:
            break
        power = mat_mul(power, delta)
        if all(x == 0 for row in power for x in row):
            break
        coeff = Fraction((-1) ** (i - 1), i)
        for a in range(d):
            for b in range(d):
                acc[a][b] += coeff * power[a][b]
    scale = Fraction(1, p**r) if r >= 0 else Fraction(p ** (-r))
    out = tuple(tuple(x * scale for x in row) for row in acc)
    return SenOperator(inp.prime, out, precision - r)


def matrix_exp_truncated(prime, M, precision: int = 20):
    """exp(M) by the truncated series, for v_p(M) above the margin; the
    reconstruction partner of the operator (action of the level-s
    generator is exp(p^s * operator) for s large)."""
    if isinstance(prime, int):
        prime = Prime(prime)
    p = prime.p
    margin = _log_margin(p)
    d = len(M)
    M = [[Fraction(x) for x in row] for row in M]
    for i in range(d):
        for j in range(d):
            if M[i][j] != 0 and rational_valuation(M[i][j], p) < margin:
                raise ValueError("entries too large for the exponential")
    acc = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    power = [row[:] for row in acc]
    fact = 1
    i = 0
    while True:
        i += 1
        fact *= i
        # v(M^i / i!) >= margin*i - v(i!) >= i (margin - 1/(p-1)) grows
        tail = margin * i - rational_valuation(Fraction(fact), p)
        if tail > precision:
            break
        power = mat_mul(power, M)
        if all(x == 0 for row in power for x in row):
            break
        inv_fact = Fraction(1, fact)
        for a in range(d):
            for b in range(d):
                acc[a][b] += inv_fact * power[a][b]
    return [row[:] for row in acc]


def is_trivial_via_sen(op: SenOperator) -> bool:
    """True iff the operator vanishes to its stated precision; decides
    triviality of the underlying semilinear representation."""
    for row in op.matrix:
        for x in row:
            if x != 0 and rational_valuation(x, op.p) < op.precision:
                return False
    return True


@dataclass(frozen=True)
class HodgeTateVerdict:
    """Generalized weights plus the integrality/semisimplicity verdict."""

    status: str  # "hodge-tate" | "not-hodge-tate" | "indeterminate"
    generalized_weights: Optional[tuple]  # exact eigenvalues when computable
    integer_weights: Optional[tuple]

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.generalized_weights is not None:
            out["generalized_weights"] = [
                format_rational(w) for w in self.generalized_weights
            ]
        if self.integer_weights is not None:
            out["integer_weights"] = list(self.integer_weights)
        return out


def _minimal_polynomial(A) -> list:
    """Minimal polynomial of a rational matrix: strip factors shared with
    the derivative while the quotient still annihilates the matrix."""
    from .linalg import _poly_divmod_q, poly_derivative

    m = list(char_poly(A))
    while True:
        g = poly_gcd_q(m, poly_derivative(m))
        if len(g) <= 1:
            break
        candidate, rem = _poly_divmod_q(m, g)
        if rem:
            break
        zero = poly_eval_matrix(candidate, A)
        if all(x == 0 for row in zero for x in row):
            m = candidate
        else:
            break
    return m


_SMALL_ROOT_BOUND = 64


def _eval_poly(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, root: Fraction) -> list:
    out = []
    acc = Fraction(0)
    for c in reversed(coeffs[1:]):
        acc = acc * root + c
        out.append(acc)
    out.reverse()
    return out


def _hensel_integer_roots(coeffs, p: int, precision: int) -> Optional[list]:
    """Centered integer representatives of the simple Z_p-roots of a
    p-integral polynomial, certified to p^precision by Hensel lifting.

    Returns None when the coefficients are not p-integral or some residue
    root mod p is not simple (no certification possible there)."""
    if any(rational_valuation(c, p) < 0 for c in coeffs if c):
        return None
    modulus = p ** max(precision, 1)
    ints = [c.numerator * pow(c.denominator, -1, modulus) % modulus for c in coeffs]
    deriv = [(i * c) % modulus for i, c in enumerate(ints)][1:]

    def ev(poly, x, mod):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % mod
        return acc

    roots = []
    for r in range(p):
        if ev(ints, r, p) != 0:
            continue
        if ev(deriv, r, p) == 0:
            return None  # multiple residue root: cannot lift simply
        x, mod = r, p
        while mod < modulus:
            mod = min(mod * mod, modulus)
            fx = ev(ints, x, mod)
            dx = ev(deriv, x, mod)
            x = (x - fx * pow(dx, -1, mod)) % mod
        centered = x if x <= modulus // 2 else x - modulus
        roots.append(centered)
    return roots


def hodge_tate_via_sen(op: SenOperator) -> HodgeTateVerdict:
    """Eigenvalue analysis of the operator.

    Exact rational roots of the characteristic polynomial are taken by
    small-integer/small-rational deflation (covers operators built in
    closed form, e.g. nilpotent ones); the remaining eigenvalues are
    detected as integers modulo p^precision by Hensel lifting of simple
    residue roots.  The verdict is positive iff the operator is semi-simple
    (squarefree minimal polynomial) and all eigenvalues are integral to the
    stated precision; undetectable eigenvalues give 'indeterminate'.
    """
    A = [list(row) for row in op.matrix]
    d = len(A)
    cp = char_poly(A)
    exact_roots = []
    work = list(cp)
    found = True
    while found and len(work) > 1:
        found = False
        for m in range(-_SMALL_ROOT_BOUND, _SMALL_ROOT_BOUND + 1):
            if _eval_poly(work, Fraction(m)) == 0:
                exact_roots.append(Fraction(m))
                work = _deflate(work, Fraction(m))
                found = True
                break
    weights = [int(r) for r in exact_roots]
    if len(work) > 1:
        lifted = _hensel_integer_roots(work, op.p, op.precision)
        if lifted is None or len(lifted) != len(work) - 1:
            return HodgeTateVerdict("indeterminate", None, None)
        weights.extend(lifted)
    if len(weights) != d:
        return HodgeTateVerdict("indeterminate", None, None)
    # simplicity: exact part via the minimal polynomial; the Hensel part
    # consists of simple roots by construction
    if exact_roots and len(set(exact_roots)) < len(exact_roots):
        minimal = _minimal_polynomial(A)
        semisimple = is_squarefree(minimal)
    else:
        semisimple = True
    status = "hodge-tate" if semisimple else "not-hodge-tate"
    generalized = tuple(exact_roots) if len(exact_roots) == d else None
    return HodgeTateVerdict(status, generalized, tuple(sorted(weights)))
