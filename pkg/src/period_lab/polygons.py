"""Lower-convex Newton polygons in the plane, with rays at infinity.

A polygon here is the boundary of the convex hull of finitely many points
(i, v) plus two points at infinity.  In the canonical case (series in the
Witt-vector variable) the infinite directions are straight up on the left
and horizontal on the right, so the finite boundary is a vertex chain of
strictly increasing negative slopes.  Windowed views of genuinely infinite
polygons carry sloped rays that record the continuation direction at the
cut; those views are end products and cannot be Minkowski-summed.

Minkowski sums are computed by merging segment slope lists (the leftmost
points add componentwise); the plane Frobenius sends (i, v) to (i, p^n v).
The two window constructors assemble the polygons of the two standard
infinite products

    product_{n >= 0} phi^{-n}(w0)          (the p-power-roots-of-unity series)
    product_{n >= 0} phi^{-n}(w0) * product_{n >= 1} phi^{n}(w0)/p

for w0 the distinguished degree-one generator with vertices (0,1), (1,0),
using an exact geometric tail correction for the factors beyond the window.
The leftmost ordinate of the first polygon is p/(p-1) = sum of p^{-n}; the
often-quoted 1/(p-1) drops the n = 0 factor and is inconsistent with the
product formula, so it is not used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .padic import INF, format_rational, lower_hull, parse_rational

VERTICAL = "vertical"
HORIZONTAL = "horizontal"


@dataclass(frozen=True)
class Polygon:
    """Vertex chain with strictly increasing slopes plus boundary rays.

    ``left_ray`` is VERTICAL (straight up from the leftmost vertex) or an
    exact slope strictly below the first segment slope; ``right_ray`` is
    HORIZONTAL or an exact slope strictly above the last one.  Sloped rays
    mark windowed views.
    """

    vertices: tuple
    left_ray: object = VERTICAL
    right_ray: object = HORIZONTAL

    def __init__(self, vertices, left_ray=VERTICAL, right_ray=HORIZONTAL):
        verts = tuple((Fraction(x), Fraction(y)) for x, y in vertices)
        if not verts:
            raise ValueError("a polygon needs at least one vertex")
        if any(verts[i][0] >= verts[i + 1][0] for i in range(len(verts) - 1)):
            raise ValueError("vertices must have strictly increasing abscissas")
        slopes = _chain_slopes(verts)
        if any(s1 >= s2 for s1, s2 in zip(slopes, slopes[1:])):
            raise ValueError("vertex chain must be strictly convex")
        if left_ray is not VERTICAL:
            left_ray = Fraction(left_ray)
            if slopes and left_ray >= slopes[0]:
                raise ValueError("left ray must be steeper than the first segment")
        if right_ray is not HORIZONTAL:
            right_ray = Fraction(right_ray)
            if slopes and right_ray <= slopes[-1]:
                raise ValueError("right ray must be flatter than the last segment")
        if right_ray is HORIZONTAL and slopes and slopes[-1] >= 0:
            raise ValueError("segments must stay below the horizontal right ray")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "left_ray", left_ray)
        object.__setattr__(self, "right_ray", right_ray)

    @property
    def is_canonical(self) -> bool:
        """True for vertical-left / horizontal-right polygons (series hulls)."""
        return self.left_ray is VERTICAL and self.right_ray is HORIZONTAL

    def slopes(self) -> list:
        """[(slope, horizontal length)] of the finite segments, increasing."""
        return [
            ((y2 - y1) / (x2 - x1), x2 - x1)
            for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:])
        ]

    def leftmost(self):
        return self.vertices[0]

    def ordinate_at(self, x) -> Fraction:
        """Height of the boundary above abscissa x (within the vertex span)."""
        x = Fraction(x)
        verts = self.vertices
        if not verts[0][0] <= x <= verts[-1][0]:
            raise ValueError(f"abscissa {x} outside the polygon window")
        for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
            if x1 <= x <= x2:
                return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        return verts[0][1]

    def to_json(self) -> dict:
        def ray(r):
            return r if isinstance(r, str) else format_rational(r)

        return {
            "vertices": [[format_rational(x), format_rational(y)]
                         for x, y in self.vertices],
            "left_ray": ray(self.left_ray),
            "right_ray": ray(self.right_ray),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Polygon":
        def ray(r, name):
            if r == name:
                return r
            return parse_rational(r)

        return cls(
            [(parse_rational(x), parse_rational(y)) for x, y in obj["vertices"]],
            ray(obj["left_ray"], VERTICAL),
            ray(obj["right_ray"], HORIZONTAL),
        )


def _chain_slopes(verts) -> list:
    return [
        (y2 - y1) / (x2 - x1)
        for (x1, y1), (x2, y2) in zip(verts, verts[1:])
    ]


@dataclass(frozen=True)
class SeriesProfile:
    """Finitely many (abscissa, valuation-or-INF) points of a series.

    Abscissas may be rationals (i/e in the ramified convention); at least
    one valuation must be finite for a hull to exist.
    """

    terms: tuple

    def __init__(self, terms):
        cleaned = []
        for i, v in terms:
            cleaned.append((Fraction(i), v if v is INF else Fraction(v)))
        object.__setattr__(self, "terms", tuple(cleaned))

    def finite_points(self):
        return [(i, v) for i, v in self.terms if v is not INF]


def hull(profile: SeriesProfile) -> Polygon:
    """Canonical polygon of a series profile: lower hull of the finite
    points, vertical ray up on the left, horizontal ray on the right.

    Vertices on the strictly descending part of the hull survive; anything
    at or above the running minimum to the right is swallowed by the
    horizontal ray.
    """
    pts = profile.finite_points()
    if not pts:
        raise ValueError("no finite valuation in the profile")
    chain = lower_hull(pts)
    verts = [chain[0]]
    for x, y in chain[1:]:
        if y < verts[-1][1]:
            verts.append((x, y))
        else:
            break
    return Polygon(verts)


def minkowski_sum(P: Polygon, Q: Polygon) -> Polygon:
    """Minkowski sum of two canonical polygons.

    Leftmost points add componentwise; the segment multiset is the merge
    of both slope lists, with equal slopes coalescing into one segment.
    """
    if not (P.is_canonical and Q.is_canonical):
        raise ValueError("Minkowski sums need canonical (unwindowed) polygons")
    merged = []
    for slope, length in sorted(P.slopes() + Q.slopes()):
        if merged and merged[-1][0] == slope:
            merged[-1] = (slope, merged[-1][1] + length)
        else:
            merged.append((slope, length))
    x = P.leftmost()[0] + Q.leftmost()[0]
    y = P.leftmost()[1] + Q.leftmost()[1]
    verts = [(x, y)]
    for slope, length in merged:
        x, y = x + length, y + slope * length
        verts.append((x, y))
    return Polygon(verts)


def frobenius_transform(P: Polygon, n: int, p) -> Polygon:
    """The plane Frobenius: every vertex (i, v) goes to (i, p^n v)."""
    scale = Fraction(int(p)) ** n

    def ray(r):
        return r if isinstance(r, str) else r * scale

    return Polygon(
        [(x, y * scale) for x, y in P.vertices], ray(P.left_ray), ray(P.right_ray)
    )


def degree_one_generator_polygon() -> Polygon:
    """Vertices (0, 1), (1, 0): the polygon shared by every normalized
    degree-one generator of the evaluation kernel."""
    return Polygon([(0, 1), (1, 0)])


def epsilon_minus_one_polygon(p, x_window) -> Polygon:
    """Windowed polygon of the series with factorization
    product_{n>=0} phi^{-n}(w0): leftmost point (0, p/(p-1)), then for each
    n >= 0 a segment of horizontal length 1 and slope -p^{-n}.

    Assembled as a finite Minkowski sum of transformed degree-one polygons
    plus the exact geometric tail sum_{n > N} p^{-n} added to every
    ordinate (each omitted factor translates the window by its leftmost
    point).  The returned view is truncated at ``x_window``; its right ray
    records the continuation slope.
    """
    p = int(p)
    x_window = Fraction(x_window)
    if x_window < 1:
        raise ValueError("window must extend at least to 1")
    n_max = int(x_window) if x_window.denominator == 1 else int(x_window) + 1
    acc = degree_one_generator_polygon()
    for n in range(1, n_max + 1):
        acc = minkowski_sum(acc, frobenius_transform(degree_one_generator_polygon(), -n, p))
    tail = Fraction(1, p**n_max * (p - 1))  # sum_{n > n_max} p^{-n}
    verts = [(x, y + tail) for x, y in acc.vertices]
    return _window(verts, None, x_window, p)


def t_polygon(p, x_window_left, x_window_right) -> Polygon:
    """Windowed polygon of the series with factorization
    product_{n>=0} phi^{-n}(w0) * product_{n>=1} phi^{n}(w0)/p.

    The polygon is invariant under (i, v) -> (i - 1, p v); its vertices sit
    at the integer abscissas n with ordinate (p/(p-1)) p^{-n}, so slopes
    grow without bound to the left.  Factors beyond the right edge lift the
    window by an exact geometric tail; factors beyond the left edge
    contribute only their rightmost point (0, 0) and need no correction.
    """
    p = int(p)
    lo, hi = Fraction(x_window_left), Fraction(x_window_right)
    if lo >= hi:
        raise ValueError("empty window")
    n_right = int(hi) if hi.denominator == 1 else int(hi) + 1
    n_right = max(n_right, 0)
    n_left = max(0, -(int(lo) if lo.denominator == 1 else int(lo) - 1))
    acc = degree_one_generator_polygon()
    for n in range(1, n_right + 1):
        acc = minkowski_sum(acc, frobenius_transform(degree_one_generator_polygon(), -n, p))
    # one factor beyond the left edge so the cut records its continuation slope
    for n in range(1, n_left + 2):
        # phi^n(w0)/p: vertices (-1, p^n), (0, 0)
        acc = minkowski_sum(acc, Polygon([(-1, Fraction(p) ** n), (0, 0)]))
    tail = Fraction(1, p**n_right * (p - 1))
    verts = [(x, y + tail) for x, y in acc.vertices]
    return _window(verts, lo, hi, p)


def _window(verts, lo: Optional[Fraction], hi: Fraction, p: int) -> Polygon:
    """Cut a vertex chain to [lo, hi], interpolating boundary vertices.

    The rays record the slope of the first whole segment beyond each cut
    (a ray equal to a partially kept segment's own slope would break the
    strict-convexity invariant).
    """
    slopes = _chain_slopes(verts)
    kept = []
    left_ray = VERTICAL
    right_ray = HORIZONTAL
    for x, y in verts:
        if (lo is None or x >= lo) and x <= hi:
            kept.append((x, y))
    if not kept:
        raise ValueError("window contains no vertex")
    first_idx = verts.index(kept[0])
    last_idx = verts.index(kept[-1])
    if lo is not None and kept[0][0] > lo and first_idx > 0:
        # interpolate the entry point on the incoming segment
        s = slopes[first_idx - 1]
        x0, y0 = kept[0]
        kept.insert(0, (lo, y0 + s * (lo - x0)))
        left_ray = _continuation(slopes, first_idx - 2)
    elif lo is not None and first_idx > 0:
        left_ray = slopes[first_idx - 1]
    if kept[-1][0] < hi and last_idx < len(slopes):
        s = slopes[last_idx]
        x1, y1 = kept[-1]
        kept.append((hi, y1 + s * (hi - x1)))
        right_ray = _continuation_right(slopes, last_idx + 1)
    elif last_idx < len(slopes):
        right_ray = slopes[last_idx]
    return Polygon(kept, left_ray, right_ray)


def _continuation(slopes, idx):
    return slopes[idx] if 0 <= idx < len(slopes) else VERTICAL


def _continuation_right(slopes, idx):
    return slopes[idx] if 0 <= idx < len(slopes) else HORIZONTAL


def ascii_sketch(P: Polygon, width: int = 60, height: int = 20) -> str:
    """Plain-text sketch of a polygon window (vertices marked with 'o')."""
    xs = [x for x, _ in P.vertices]
    ys = [y for _, y in P.vertices]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo or y_hi == y_lo:
        return "o"
    grid = [[" "] * width for _ in range(height)]

    def place(x, y, ch):
        col = int((x - x_lo) * (width - 1) / (x_hi - x_lo))
        row = int((y_hi - y) * (height - 1) / (y_hi - y_lo))
        grid[row][col] = ch

    steps = width * 2
    for (x1, y1), (x2, y2) in zip(P.vertices, P.vertices[1:]):
        for k in range(steps + 1):
            t = Fraction(k, steps)
            place(x1 + (x2 - x1) * t, y1 + (y2 - y1) * t, ".")
    for x, y in P.vertices:
        place(x, y, "o")
    labels = " ".join(
        f"({format_rational(x)},{format_rational(y)})" for x, y in P.vertices
    )
    return "\n".join("".join(row) for row in grid) + "\n" + labels
