"""Filtered Frobenius modules over K with linear Frobenius, and the
weak-admissibility decision procedure.

A module is a d-dimensional Q_p-space (modeled over Q) with an invertible
rational Frobenius matrix and a nonincreasing exhaustive separated
filtration on the scalar extension to K, given as strictly increasing
jumps with strictly decreasing K-subspaces (the first one full).  The two
integers that decide everything are

    t_H = sum of jumps weighted by graded dimensions,
    t_N = v_p(det Frobenius),

and the criterion: admissible iff t_H = t_N and t_H(D') <= t_N(D') for
every Frobenius-stable subspace D' with the induced (intersection)
filtration.

Decision coverage:

* dimension 1: admissible iff v_p(eigenvalue) = jump;
* dimension 2: complete closed-form case analysis.  Eigenvalue valuations
  come from the characteristic polynomial's Newton polygon; whether an
  eigenvalue actually lives in Q_p (and hence spans a stable line) is
  decided by an exact p-adic square test on the discriminant; whether the
  middle filtration line is defined over Q_p is read off its coordinates
  (the uniformizer powers form a Q_p-basis of K);
* dimension >= 3 with squarefree characteristic polynomial (factored over
  Q by rational-root deflation, complete through cubic remainders): the
  stable subspaces are exactly the sums of primary components, a finite
  scan.  Q-irreducible factors are not refined p-adically, so the scan's
  subobject lattice is the Q-rational one;
* everything else: undecided, a first-class outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .characters import CharacterTriple
from .linalg import (
    BaseFieldK,
    KElement,
    char_poly,
    det,
    intersect_rowspaces,
    is_squarefree,
    mat_mul,
    nullspace,
    poly_eval_matrix,
    rank,
    rational_roots,
    rref,
    solve_right,
)
from .padic import format_rational, parse_rational, rational_valuation

ADMISSIBLE = "admissible"
NOT_ADMISSIBLE = "not-admissible"
UNDECIDED = "undecided"


@dataclass
class AdmissibilityVerdict:
    status: str
    hodge_number: int
    newton_number: Fraction
    witness: Optional[dict] = None

    @property
    def is_admissible(self) -> bool:
        if self.status == UNDECIDED:
            raise ValueError("verdict is undecided")
        return self.status == ADMISSIBLE

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "t_H": self.hodge_number,
            "t_N": format_rational(self.newton_number),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class FilteredPhiModule:
    """Frobenius matrix over Q plus filtration jumps over K.

    ``filtration`` is a list of (jump, basis) with strictly increasing
    integer jumps and strictly decreasing nested K-subspaces, the first
    full: the filtration equals the i-th subspace up to and including its
    jump, and drops to the next one after it (zero after the last).
    """

    def __init__(self, base: BaseFieldK, frobenius, filtration):
        self.base = base
        self.frobenius = [[Fraction(x) for x in row] for row in frobenius]
        d = len(self.frobenius)
        if any(len(row) != d for row in self.frobenius):
            raise ValueError("Frobenius matrix must be square")
        if det(self.frobenius) == 0:
            raise ValueError("Frobenius must be invertible")
        steps = []
        for jump, basis in filtration:
            vecs = [self._coerce_vector(v) for v in basis]
            if not vecs:
                raise ValueError("filtration subspaces must be nonzero")
            steps.append((int(jump), vecs))
        if not steps:
            raise ValueError("filtration needs at least one step")
        if any(a[0] >= b[0] for a, b in zip(steps, steps[1:])):
            raise ValueError("jumps must be strictly increasing")
        dims = [rank(vecs) for _, vecs in steps]
        if dims[0] != d:
            raise ValueError("first filtration subspace must be the full space")
        if any(da <= db for da, db in zip(dims, dims[1:])):
            raise ValueError("filtration subspaces must strictly decrease")
        for (_, big), (_, small) in zip(steps, steps[1:]):
            if rank(big + small) != rank(big):
                raise ValueError("filtration subspaces must be nested")
        self.filtration = steps
        self._dims = dims

    def _coerce_vector(self, v):
        return [
            x if isinstance(x, KElement) else self.base.scalar(x) for x in v
        ]

    @property
    def dim(self) -> int:
        return len(self.frobenius)

    def jumps(self) -> list:
        return [j for j, _ in self.filtration]

    def graded_dims(self) -> list:
        """[(jump, dim gr^jump)] over the filtration jumps."""
        dims = self._dims + [0]
        return [
            (j, dims[i] - dims[i + 1]) for i, (j, _) in enumerate(self.filtration)
        ]

    # -- the two numbers ------------------------------------------------------

    def hodge_number(self) -> int:
        return sum(j * g for j, g in self.graded_dims())

    def newton_number(self) -> Fraction:
        v = rational_valuation(det(self.frobenius), self.base.p)
        return Fraction(v)

    def hodge_tate_weights(self) -> list:
        """Sorted multiset of weights: -jump with multiplicity dim gr^jump."""
        out = []
        for j, g in self.graded_dims():
            out.extend([-j] * g)
        return sorted(out)

    # -- induced data on rational subspaces -----------------------------------

    def _k_rows(self, rational_rows):
        return [self._coerce_vector(r) for r in rational_rows]

    def induced_hodge_number(self, subspace_rows) -> int:
        """t_H of a rational Frobenius-stable subspace with the
        intersection filtration over K."""
        W = self._k_rows(subspace_rows)
        dims = [rank(intersect_rowspaces(W, vecs)) for _, vecs in self.filtration]
        dims.append(0)
        return sum(
            j * (dims[i] - dims[i + 1]) for i, (j, _) in enumerate(self.filtration)
        )

    def restricted_newton_number(self, subspace_rows) -> Fraction:
        """t_N of a stable rational subspace: v_p(det Frobenius|_W)."""
        W = [list(map(Fraction, r)) for r in subspace_rows]
        images = [_apply(self.frobenius, w) for w in W]
        coords = []
        for img in images:
            sol = solve_right(_transpose(W), img)
            if sol is None:
                raise ValueError("subspace is not Frobenius-stable")
            coords.append(sol)
        restricted = _transpose(coords)
        return Fraction(rational_valuation(det(restricted), self.base.p))

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        def k_json(x: KElement):
            return [format_rational(c) for c in x.coords] or ["0"]

        return {
            "p": self.base.p,
            "eisenstein": list(self.base.eisenstein),
            "dim": self.dim,
            "frobenius": [[format_rational(x) for x in row] for row in self.frobenius],
            "filtration": [
                {"jump": j, "basis": [[*map(k_json, vec)] for vec in vecs]}
                for j, vecs in self.filtration
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FilteredPhiModule":
        base = BaseFieldK(obj["p"], obj["eisenstein"])
        frob = [[parse_rational(x) for x in row] for row in obj["frobenius"]]
        filtration = []
        for step in obj["filtration"]:
            vecs = []
            for vec in step["basis"]:
                vecs.append(
                    [
                        base.element([parse_rational(c) for c in entry])
                        for entry in vec
                    ]
                )
            filtration.append((step["jump"], vecs))
        return cls(base, frob, filtration)


def _apply(A, v):
    return [sum((A[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(A))]


def _transpose(rows):
    return [list(col) for col in zip(*rows)]


# ---------------------------------------------------------------------------
# constructors used everywhere in tests and demos
# ---------------------------------------------------------------------------


def dim1_module(p, lam, r: int) -> FilteredPhiModule:
    base = BaseFieldK.qp(int(p))
    return FilteredPhiModule(base, [[Fraction(lam)]], [(r, [[base.one()]])])


def dim2_module(p, frobenius, r: int, s: int, line=None) -> FilteredPhiModule:
    """Two jumps r < s with middle line ``line``, or a single jump r = s."""
    base = BaseFieldK.qp(int(p))
    full = [
        [base.one(), base.zero()],
        [base.zero(), base.one()],
    ]
    if r == s:
        filtration = [(r, full)]
    else:
        if line is None:
            raise ValueError("a middle line is required when r < s")
        filtration = [(r, full), (s, [[_as_k(base, x) for x in line]])]
    return FilteredPhiModule(base, frobenius, filtration)


def _as_k(base: BaseFieldK, x):
    return x if isinstance(x, KElement) else base.scalar(x)


# ---------------------------------------------------------------------------
# the admissibility decision procedure
# ---------------------------------------------------------------------------


def is_padic_square(x: Fraction, p: int) -> bool:
    """Exact test for x being a square in Q_p (x != 0)."""
    x = Fraction(x)
    if x == 0:
        return True
    v = rational_valuation(x, p)
    if v % 2:
        return False
    unit = x / Fraction(p) ** int(v)
    num, den = unit.numerator, unit.denominator
    if p == 2:
        u8 = num * pow(den, -1, 8) % 8
        return u8 == 1
    up = num * pow(den, -1, p) % p
    return pow(up, (p - 1) // 2, p) == 1


def _quadratic_newton_valuations(cp, p):
    """Root valuations (v1 <= v2) of a monic rational quadratic, off the
    Newton polygon of (0, v(c0)), (1, v(c1)), (2, 0)."""
    c0, c1 = cp[0], cp[1]
    v0 = rational_valuation(c0, p)
    v1 = rational_valuation(c1, p)
    # lower hull; v1 may be INF (c1 = 0)
    if v1 is not None and v1 != float("inf") and c1 != 0 and 2 * v1 < v0:
        return v0 - v1, v1  # two slopes: keep (small, large) ordering below
    half = Fraction(v0, 2)
    return half, half


def _qp_eigenvalue_below(cp, p, threshold) -> Optional[dict]:
    """A witness that some Q_p-rational eigenvalue of the quadratic cp has
    valuation < threshold, or None."""
    c0, c1 = cp[0], cp[1]
    v_small, v_large = sorted(_quadratic_newton_valuations(cp, p))
    if v_small >= threshold:
        return None
    if v_small != v_large:
        # two distinct integer slopes: the polynomial splits over Q_p
        return {"type": "padic_eigenvalue", "valuation": format_rational(v_small)}
    # equal valuations: roots live in Q_p iff the discriminant is a square
    if v_small.denominator != 1:
        return None  # non-integral valuation: no Q_p roots at all
    disc = c1 * c1 - 4 * c0
    if disc == 0 or is_padic_square(disc, p):
        return {"type": "padic_eigenvalue", "valuation": format_rational(v_small)}
    return None


def _line_is_rational(vecs) -> Optional[list]:
    """A rational direction vector of a K-line, or None.

    Valid because the uniformizer powers are a Q_p-basis of K: a K-line
    descends to Q_p iff, after scaling by a nonzero coordinate, all
    coordinates are rational.
    """
    (w,) = vecs
    pivot = next((x for x in w if not x.is_zero()), None)
    if pivot is None:
        return None
    scaled = [x / pivot for x in w]
    if all(x.is_rational() for x in scaled):
        return [x.rational_value() for x in scaled]
    return None


def _dim2_admissible(D: FilteredPhiModule, tH, tN) -> AdmissibilityVerdict:
    p = D.base.p
    cp = char_poly(D.frobenius)
    jumps = D.graded_dims()
    if len(jumps) == 1:
        r = s = jumps[0][0]
        line_vec = None
    else:
        (r, _), (s, _) = jumps
        line_vec = _line_is_rational(D.filtration[1][1])
        if line_vec is not None:
            # is the (rational) filtration line Frobenius-stable?
            img = _apply(D.frobenius, line_vec)
            sol = solve_right(_transpose([line_vec]), img)
            if sol is not None:
                alpha = sol[0]
                return _dim2_stable_line(D, tH, tN, r, s, line_vec, alpha)
    # every Q_p-stable line carries induced jump r (none can equal the
    # middle line), so the only constraint is on eigenvalue valuations
    witness = _qp_eigenvalue_below(cp, p, Fraction(r))
    if witness is not None:
        return AdmissibilityVerdict(NOT_ADMISSIBLE, tH, tN, witness)
    return AdmissibilityVerdict(ADMISSIBLE, tH, tN)


def _dim2_stable_line(D, tH, tN, r, s, line_vec, alpha) -> AdmissibilityVerdict:
    """The filtration line is rational and Frobenius-stable with rational
    eigenvalue alpha; the complementary eigenvalue is det/alpha."""
    p = D.base.p
    va = rational_valuation(alpha, p)
    beta = det(D.frobenius) / alpha
    vb = rational_valuation(beta, p)
    line_witness = {
        "type": "subobject",
        "basis": [[format_rational(x) for x in line_vec]],
    }
    if alpha == beta:
        # single eigenvalue; t_N = 2 v(alpha) = r + s forces v(alpha)
        # strictly below s, so the line subobject always violates
        if va >= s:
            raise AssertionError(
                "stable-line branch contradiction: double eigenvalue of "
                "valuation >= s cannot satisfy t_H = t_N with r < s"
            )
        return AdmissibilityVerdict(NOT_ADMISSIBLE, tH, tN, line_witness)
    if va < s:
        return AdmissibilityVerdict(NOT_ADMISSIBLE, tH, tN, line_witness)
    if vb < r:
        return AdmissibilityVerdict(
            NOT_ADMISSIBLE,
            tH,
            tN,
            {"type": "padic_eigenvalue", "valuation": format_rational(Fraction(vb))},
        )
    # with t_H = t_N these force v(alpha) = s, v(beta) = r exactly
    assert va == s and vb == r
    return AdmissibilityVerdict(ADMISSIBLE, tH, tN)


def _factor_over_q(cp) -> Optional[list]:
    """Monic irreducible factors over Q (lowest degree first), or None when
    the elementary method (root deflation + 'degree <= 3 without rational
    roots is irreducible') cannot certify the factorization."""
    from .linalg import _poly_divmod_q

    work = [Fraction(c) for c in cp]
    factors = []
    for root in rational_roots(work):
        factors.append([-root, Fraction(1)])
        work, rem = _poly_divmod_q(work, [-root, Fraction(1)])
        assert not rem
    deg = len(work) - 1
    if deg == 0:
        return factors
    if deg <= 3:
        lead = work[-1]
        factors.append([c / lead for c in work])
        return factors
    return None


def is_admissible(D: FilteredPhiModule) -> AdmissibilityVerdict:
    """Decide weak admissibility; see the module docstring for coverage."""
    tH = D.hodge_number()
    tN = D.newton_number()
    if tH != tN:
        return AdmissibilityVerdict(
            NOT_ADMISSIBLE, tH, tN, {"type": "hodge_newton_mismatch"}
        )
    d = D.dim
    if d == 1:
        return AdmissibilityVerdict(ADMISSIBLE, tH, tN)
    if d == 2:
        return _dim2_admissible(D, tH, tN)
    cp = char_poly(D.frobenius)
    if not is_squarefree(cp):
        return AdmissibilityVerdict(
            UNDECIDED,
            tH,
            tN,
            {"type": "repeated_eigenvalues"},
        )
    factors = _factor_over_q(cp)
    if factors is None:
        return AdmissibilityVerdict(
            UNDECIDED, tH, tN, {"type": "unfactored_characteristic_polynomial"}
        )
    components = [nullspace(poly_eval_matrix(f, D.frobenius)) for f in factors]
    assert all(len(c) == len(f) - 1 for c, f in zip(components, factors))
    k = len(components)
    for mask in range(1, 2**k - 1):
        rows = []
        for i in range(k):
            if mask >> i & 1:
                rows.extend(components[i])
        sub_tH = D.induced_hodge_number(rows)
        sub_tN = sum(
            (
                Fraction(rational_valuation(factors[i][0], D.base.p))
                for i in range(k)
                if mask >> i & 1
            ),
            Fraction(0),
        )
        if sub_tH > sub_tN:
            return AdmissibilityVerdict(
                NOT_ADMISSIBLE,
                tH,
                tN,
                {
                    "type": "subobject",
                    "basis": [[format_rational(x) for x in row] for row in rows],
                },
            )
    return AdmissibilityVerdict(ADMISSIBLE, tH, tN)


# ---------------------------------------------------------------------------
# duals, tensors, direct sums
# ---------------------------------------------------------------------------


def _matrix_inverse(A):
    n = len(A)
    aug = [list(map(Fraction, A[i])) + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    echelon, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in echelon]


def _fil_steps(D: FilteredPhiModule):
    """[(jump, basis)] plus a sentinel for the zero tail."""
    return list(D.filtration)


def dual(D: FilteredPhiModule) -> FilteredPhiModule:
    """Dual module: inverse-transpose Frobenius; the m-th dual filtration
    step annihilates the (1-m)-th original one."""
    frob = _transpose(_matrix_inverse(D.frobenius))
    steps = _fil_steps(D)
    base = D.base
    d = D.dim
    full = [[base.one() if i == j else base.zero() for j in range(d)] for i in range(d)]
    out = []
    # dual jumps are -m_k < ... < -m_1 with subspaces ann(W_{i+1})
    for idx in range(len(steps) - 1, -1, -1):
        jump_i = steps[idx][0]
        if idx + 1 < len(steps):
            ann = nullspace(steps[idx + 1][1])
        else:
            ann = full
        out.append((-jump_i, ann))
    return FilteredPhiModule(base, frob, out)


def _kronecker(A, B):
    n, m = len(A), len(B)
    out = []
    for i in range(n):
        for k in range(m):
            row = []
            for j in range(n):
                for l in range(m):
                    row.append(A[i][j] * B[k][l])
            out.append(row)
    return out


def _vec_kron(v, w):
    return [a * b for a in v for b in w]


def tensor(D1: FilteredPhiModule, D2: FilteredPhiModule) -> FilteredPhiModule:
    """Tensor product: Kronecker Frobenius, convolution filtration
    Fil^m = sum over a + b = m of Fil^a tensor Fil^b."""
    if D1.base != D2.base:
        raise ValueError("mixed base fields")
    base = D1.base
    frob = _kronecker(D1.frobenius, D2.frobenius)
    steps1, steps2 = _fil_steps(D1), _fil_steps(D2)
    candidates = sorted({j1 + j2 for j1, _ in steps1 for j2, _ in steps2})
    raw = []
    for mu in candidates:
        rows = []
        for j1, vecs1 in steps1:
            for j2, vecs2 in steps2:
                if j1 + j2 >= mu:
                    rows.extend(_vec_kron(v, w) for v in vecs1 for w in vecs2)
        raw.append((mu, rows, rank(rows)))
    out = []
    for i, (mu, rows, rk) in enumerate(raw):
        nxt_rank = raw[i + 1][2] if i + 1 < len(raw) else 0
        if rk > nxt_rank:
            out.append((mu, rows))
    return FilteredPhiModule(base, frob, out)


def direct_sum(D1: FilteredPhiModule, D2: FilteredPhiModule) -> FilteredPhiModule:
    if D1.base != D2.base:
        raise ValueError("mixed base fields")
    base = D1.base
    d1, d2 = D1.dim, D2.dim
    frob = [
        [D1.frobenius[i][j] if i < d1 and j < d1 else Fraction(0) for j in range(d1 + d2)]
        for i in range(d1)
    ] + [
        [D2.frobenius[i - d1][j - d1] if i >= d1 and j >= d1 else Fraction(0) for j in range(d1 + d2)]
        for i in range(d1, d1 + d2)
    ]
    zero1 = [base.zero()] * d1
    zero2 = [base.zero()] * d2

    def fil_at(steps, m):
        # the subspace at level m: smallest jump >= m (None past the last)
        for j, vecs in steps:
            if j >= m:
                return vecs
        return None

    candidates = sorted({j for j, _ in D1.filtration} | {j for j, _ in D2.filtration})
    collected = []
    for mu in candidates:
        rows = []
        f1 = fil_at(D1.filtration, mu)
        f2 = fil_at(D2.filtration, mu)
        if f1:
            rows.extend([list(v) + zero2 for v in f1])
        if f2:
            rows.extend([zero1 + list(v) for v in f2])
        collected.append((mu, rows, rank(rows) if rows else 0))
    out = []
    for i, (mu, rows, rk) in enumerate(collected):
        nxt = collected[i + 1][2] if i + 1 < len(collected) else 0
        if rk > nxt and rows:
            out.append((mu, rows))
    return FilteredPhiModule(base, frob, out)


def change_of_basis(D: FilteredPhiModule, P) -> FilteredPhiModule:
    """Transport the module along an invertible rational matrix P (new
    coordinates = P^{-1} old): conjugated Frobenius, transformed bases."""
    P = [[Fraction(x) for x in row] for row in P]
    Pinv = _matrix_inverse(P)
    frob = mat_mul(Pinv, mat_mul(D.frobenius, P))
    base = D.base
    pinv_k = [[base.scalar(x) for x in row] for row in Pinv]
    steps = []
    for j, vecs in D.filtration:
        steps.append(
            (j, [[_k_dot(pinv_k[i], v) for i in range(D.dim)] for v in vecs])
        )
    return FilteredPhiModule(base, frob, steps)


def _k_dot(row, v):
    acc = row[0] * v[0]
    for a, b in zip(row[1:], v[1:]):
        acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# the dimension-1 dictionary
# ---------------------------------------------------------------------------


def dim1_correspondence(p, lam, r: int) -> CharacterTriple:
    """The character attached to an admissible rank-1 module: for
    eigenvalue lambda with v_p(lambda) = r, the character is the inverse
    unramified twist by p^{-r} lambda times the (-r)-th cyclotomic power."""
    lam = Fraction(lam)
    p = int(p)
    if rational_valuation(lam, p) != r:
        raise ValueError("not admissible: v_p(eigenvalue) must equal the jump")
    alpha = lam / Fraction(p) ** r
    return CharacterTriple(p, 1 / alpha, -r, 0)
