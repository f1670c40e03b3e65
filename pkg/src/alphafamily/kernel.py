"""Exact geometry kernel: perturbed sign predicates and squared circumradii.

Coordinates are exact integers.  Sign predicates never return zero: ties in
the raw data are broken deterministically by the symbolic perturbation in
:mod:`alphafamily.sos`, and each returned :class:`Sign` carries the depth
at which its schedule resolved.  Radius computations return exact
``Fraction`` values of the unperturbed input.

All functions are pure; a :class:`KernelStats` instance can be threaded
through to collect operation counts (safe under the GIL; use one instance
per thread and :meth:`KernelStats.merge` for parallel callers).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import sos
from .errors import DegenerateSimplexError, PredicateError

#: Exact squared radius.  ``math.inf`` serves as the formal top element
#: where an unbounded interval end is needed.
RadiusSq = Fraction


@dataclass(frozen=True, slots=True)
class ExactPoint:
    """A labeled input point with exact integer coordinates.

    ``lifted`` caches the square-sum coordinate used by the sphere tests;
    it is always derived from the coordinates, never supplied.
    """

    index: int
    x: int
    y: int
    z: int
    lifted: int = field(init=False)

    def __post_init__(self):
        if self.index <= 0:
            raise ValueError("point labels are 1-based and positive")
        object.__setattr__(
            self, "lifted", self.x * self.x + self.y * self.y + self.z * self.z
        )

    @property
    def coords(self):
        return (self.x, self.y, self.z)


@dataclass(frozen=True, slots=True)
class Sign:
    """A nonzero predicate sign plus the schedule depth that decided it."""

    value: int  # +1 or -1, never 0
    depth: int

    @property
    def positive(self):
        return self.value > 0

    @property
    def negative(self):
        return self.value < 0

    def __neg__(self):
        return Sign(-self.value, self.depth)


class KernelStats:
    """Monotone counters over kernel activity.

    Arithmetic counts are charged from the known cost of each evaluation
    routine (an n-by-n expansion costs MULS[n]/ADDS[n]) rather than by
    instrumenting every integer operation.
    """

    _MULS = {1: 0, 2: 2, 3: 9, 4: 40, 5: 205}
    _ADDS = {1: 0, 2: 1, 3: 5, 4: 23, 5: 119}

    def __init__(self):
        self.orientation_calls = 0
        self.in_sphere_calls = 0
        self.edge_attached_calls = 0
        self.triangle_attached_calls = 0
        self.rho_edge_calls = 0
        self.rho_triangle_calls = 0
        self.rho_tetrahedron_calls = 0
        self.depth_histogram = {}
        self.muls = 0
        self.adds = 0

    def count_det(self, n, times=1):
        self.muls += self._MULS[n] * times
        self.adds += self._ADDS[n] * times

    def record_depth(self, depth):
        self.depth_histogram[depth] = self.depth_histogram.get(depth, 0) + 1

    def merge(self, other):
        for name in (
            "orientation_calls",
            "in_sphere_calls",
            "edge_attached_calls",
            "triangle_attached_calls",
            "rho_edge_calls",
            "rho_triangle_calls",
            "rho_tetrahedron_calls",
            "muls",
            "adds",
        ):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for depth, count in other.depth_histogram.items():
            self.depth_histogram[depth] = self.depth_histogram.get(depth, 0) + count

    def as_dict(self):
        return {
            "orientation_calls": self.orientation_calls,
            "in_sphere_calls": self.in_sphere_calls,
            "edge_attached_calls": self.edge_attached_calls,
            "triangle_attached_calls": self.triangle_attached_calls,
            "rho_edge_calls": self.rho_edge_calls,
            "rho_triangle_calls": self.rho_triangle_calls,
            "rho_tetrahedron_calls": self.rho_tetrahedron_calls,
            "depth_histogram": {str(k): v for k, v in sorted(self.depth_histogram.items())},
            "long_integer_muls": self.muls,
            "long_integer_adds": self.adds,
        }


def sos_sign(schedule):
    """Resolve an explicit coefficient schedule: the shared sign engine.

    ``schedule`` is a finite ordered sequence of ints or callables; the
    first nonvanishing coefficient decides value and depth.
    """
    value, depth = sos.walk_schedule(schedule)
    return Sign(value, depth)


def _require_distinct(points):
    labels = [p.index for p in points]
    if len(set(labels)) != len(labels):
        raise PredicateError(f"point labels must be pairwise distinct, got {labels}")


def _det3(ax, ay, az, bx, by, bz, cx, cy, cz):
    return (
        ax * (by * cz - bz * cy)
        - ay * (bx * cz - bz * cx)
        + az * (bx * cy - by * cx)
    )


def _orient_raw(pi, pj, pk, pu):
    # Subtracting the last row reduces the 4x4 with a ones column to a 3x3
    # of differences; the value is identical, not merely of the same sign.
    return _det3(
        pi.x - pu.x, pi.y - pu.y, pi.z - pu.z,
        pj.x - pu.x, pj.y - pu.y, pj.z - pu.z,
        pk.x - pu.x, pk.y - pu.y, pk.z - pu.z,
    )


def _lifted_raw(pi, pj, pk, pu, pv):
    # Same row/column reduction applied to the 5x5 with the square-sum
    # column: rows become (p - pv, |p - pv|^2).
    rows = []
    for p in (pi, pj, pk, pu):
        dx = p.x - pv.x
        dy = p.y - pv.y
        dz = p.z - pv.z
        rows.append((dx, dy, dz, dx * dx + dy * dy + dz * dz))
    (a0, a1, a2, a3), (b0, b1, b2, b3), (c0, c1, c2, c3), (d0, d1, d2, d3) = rows
    # Expansion by 2x2 minors of the first two rows.
    m01 = a0 * b1 - a1 * b0
    m02 = a0 * b2 - a2 * b0
    m03 = a0 * b3 - a3 * b0
    m12 = a1 * b2 - a2 * b1
    m13 = a1 * b3 - a3 * b1
    m23 = a2 * b3 - a3 * b2
    n01 = c0 * d1 - c1 * d0
    n02 = c0 * d2 - c2 * d0
    n03 = c0 * d3 - c3 * d0
    n12 = c1 * d2 - c2 * d1
    n13 = c1 * d3 - c3 * d1
    n23 = c2 * d3 - c3 * d2
    return m01 * n23 - m02 * n13 + m03 * n12 + m12 * n03 - m13 * n02 + m23 * n01


_ORIENT_COLS = (1, 2, 3, 0)
_SPHERE_COLS = (1, 2, 3, 4, 0)


def orientation(pi, pj, pk, pu, stats=None):
    """Side of the oriented plane through (pi, pj, pk) that pu lies on.

    Negative means pu sits on the side the right-hand normal of the stored
    vertex order points to.  Antisymmetric under argument transpositions.
    """
    _require_distinct((pi, pj, pk, pu))
    raw = _orient_raw(pi, pj, pk, pu)
    if stats is not None:
        stats.orientation_calls += 1
        stats.count_det(3)
    if raw:
        sign, depth = (1 if raw > 0 else -1), 0
    else:
        sign, depth = sos.perturbed_det_sign((pi, pj, pk, pu), _ORIENT_COLS, 0, stats)
    if stats is not None:
        stats.record_depth(depth)
    return Sign(sign, depth)


def in_sphere(pi, pj, pk, pu, pv, stats=None):
    """Positive iff pv lies inside the sphere through pi, pj, pk, pu.

    The plane-side factor makes the result invariant under permutations of
    the first four arguments.  Depth reports the deeper of the two factor
    resolutions.
    """
    _require_distinct((pi, pj, pk, pu, pv))
    if stats is not None:
        stats.in_sphere_calls += 1
        stats.count_det(3)
        stats.count_det(4)
    raw4 = _orient_raw(pi, pj, pk, pu)
    if raw4:
        s4, d4 = (1 if raw4 > 0 else -1), 0
    else:
        s4, d4 = sos.perturbed_det_sign((pi, pj, pk, pu), _ORIENT_COLS, 0, stats)
    raw5 = _lifted_raw(pi, pj, pk, pu, pv)
    if raw5:
        s5, d5 = (1 if raw5 > 0 else -1), 0
    else:
        s5, d5 = sos.perturbed_det_sign(
            (pi, pj, pk, pu, pv), _SPHERE_COLS, 0, stats
        )
    depth = max(d4, d5)
    if stats is not None:
        stats.record_depth(depth)
    return Sign(s4 * s5, depth)


def rho_sq_edge(pi, pj, stats=None):
    """Exact squared radius of the smallest sphere through two points."""
    _require_distinct((pi, pj))
    if stats is not None:
        stats.rho_edge_calls += 1
        stats.count_det(2, 3)
    dx = pi.x - pj.x
    dy = pi.y - pj.y
    dz = pi.z - pj.z
    return Fraction(dx * dx + dy * dy + dz * dz, 4)


def _cross_sq_terms(pi, pj, pk):
    ux, uy, uz = pj.x - pi.x, pj.y - pi.y, pj.z - pi.z
    vx, vy, vz = pk.x - pi.x, pk.y - pi.y, pk.z - pi.z
    cx = uy * vz - uz * vy
    cy = uz * vx - ux * vz
    cz = ux * vy - uy * vx
    return cx, cy, cz


def rho_sq_triangle(pi, pj, pk, stats=None):
    """Exact squared circumradius of a triangle.

    Raises :class:`DegenerateSimplexError` on exactly collinear raw input;
    the perturbed pipeline never produces such a call.
    """
    _require_distinct((pi, pj, pk))
    if stats is not None:
        stats.rho_triangle_calls += 1
        stats.count_det(3, 4)
    cx, cy, cz = _cross_sq_terms(pi, pj, pk)
    den = cx * cx + cy * cy + cz * cz
    if den == 0:
        raise DegenerateSimplexError("collinear points have no circumcircle")

    def edge_sq(a, b):
        return (a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2

    num = edge_sq(pi, pj) * edge_sq(pj, pk) * edge_sq(pk, pi)
    return Fraction(num, 4 * den)


def _minor4(points, cols):
    rows = [[sos._entry(p, c) for c in cols] for p in points]
    return sos._det(rows)


def rho_sq_tetrahedron(pi, pj, pk, pu, stats=None):
    """Exact squared circumradius of a tetrahedron.

    Raises :class:`DegenerateSimplexError` on exactly coplanar raw input.
    """
    _require_distinct((pi, pj, pk, pu))
    if stats is not None:
        stats.rho_tetrahedron_calls += 1
        stats.count_det(4, 5)
    pts = (pi, pj, pk, pu)
    d0 = _orient_raw(pi, pj, pk, pu)
    if d0 == 0:
        raise DegenerateSimplexError("coplanar points have no circumsphere")
    dx = _minor4(pts, (2, 3, 4, 0))
    dy = _minor4(pts, (1, 3, 4, 0))
    dz = _minor4(pts, (1, 2, 4, 0))
    dl = _minor4(pts, (1, 2, 3, 4))
    num = dx * dx + dy * dy + dz * dz + 4 * d0 * dl
    return Fraction(num, 4 * d0 * d0)


def _edge_attached_raw(pi, pj, pk):
    total = 0
    for a, b, c in (
        (pi.x, pj.x, pk.x),
        (pi.y, pj.y, pk.y),
        (pi.z, pj.z, pk.z),
    ):
        d = a - b
        s = a + b - 2 * c
        total += d * d - s * s
    return total


def edge_attached(pi, pj, pk, stats=None):
    """Positive iff pk lies inside the open diametral ball of edge (pi, pj).

    Symmetric in pi and pj; ties (pk exactly on the sphere) are broken by
    the perturbation schedule.
    """
    _require_distinct((pi, pj, pk))
    raw = _edge_attached_raw(pi, pj, pk)
    if stats is not None:
        stats.edge_attached_calls += 1
        stats.count_det(2, 9)
    if raw:
        sign, depth = (1 if raw > 0 else -1), 0
    else:
        sign, depth = _edge_attached_deep(pi, pj, pk, stats)
    if stats is not None:
        stats.record_depth(depth)
    return Sign(sign, depth)


def _edge_attached_deep(pi, pj, pk, stats):
    spts = sorted((pi, pj, pk), key=lambda p: p.index)
    k_slot = spts.index(pk)
    si, sj = (s for s in range(3) if s != k_slot)
    # (a-b)^2 - ((a-c)+(b-c))^2 expanded into determinant products over
    # label-sorted rows.  Squared factors absorb their own row flips; the
    # cross term keeps one flip per factor whose sorted order reverses the
    # (endpoint, apex) row order.
    flip_ik = 1 if si < k_slot else -1
    flip_jk = 1 if sj < k_slot else -1
    cross = -2 * flip_ik * flip_jk
    specs = []
    terms = []
    for axis in (1, 2, 3):
        cols = (axis, 0)
        d_ij = len(specs); specs.append((cols, (si, sj)))
        d_ik = len(specs); specs.append((cols, tuple(sorted((si, k_slot)))))
        d_jk = len(specs); specs.append((cols, tuple(sorted((sj, k_slot)))))
        terms += [(1, d_ij, d_ij), (-1, d_ik, d_ik), (-1, d_jk, d_jk), (cross, d_ik, d_jk)]
    return sos.product_sign(spts, tuple(specs), tuple(terms), 0, stats)


def _triangle_attached_raw(pi, pj, pk, pu):
    pts = (pi, pj, pk, pu)
    tri = (pi, pj, pk)
    dx = _minor4(pts, (2, 3, 4, 0))
    dy = _minor4(pts, (1, 3, 4, 0))
    dz = _minor4(pts, (1, 2, 4, 0))
    d0 = _minor4(pts, (1, 2, 3, 0))
    ex = _minor4(tri, (2, 3, 0))
    ey = _minor4(tri, (1, 3, 0))
    ez = _minor4(tri, (1, 2, 0))
    el = _minor4(tri, (1, 2, 3))
    return dx * ex + dy * ey + dz * ez - 2 * d0 * el


def triangle_attached(pi, pj, pk, pu, stats=None):
    """Positive iff pu lies inside the open smallest circumsphere of the
    triangle (pi, pj, pk).

    Symmetric in the three triangle arguments.  Raises
    :class:`DegenerateSimplexError` when the raw triangle is collinear.
    """
    _require_distinct((pi, pj, pk, pu))
    cx, cy, cz = _cross_sq_terms(pi, pj, pk)
    if cx == 0 and cy == 0 and cz == 0:
        raise DegenerateSimplexError("collinear base triangle")
    raw = _triangle_attached_raw(pi, pj, pk, pu)
    if stats is not None:
        stats.triangle_attached_calls += 1
        stats.count_det(4, 4)
        stats.count_det(3, 4)
    if raw:
        sign, depth = (1 if raw > 0 else -1), 0
    else:
        sign, depth = _triangle_attached_deep(pi, pj, pk, pu, stats)
    if stats is not None:
        stats.record_depth(depth)
    return Sign(sign, depth)


def _triangle_attached_deep(pi, pj, pk, pu, stats):
    spts = sorted((pi, pj, pk, pu), key=lambda p: p.index)
    u_slot = spts.index(pu)
    tri_slots = tuple(s for s in range(4) if s != u_slot)
    # The four-row minors are written with pu last; sorting its row into
    # place flips their sign by the displacement parity.
    parity = -1 if (3 - u_slot) % 2 else 1
    all_slots = (0, 1, 2, 3)
    specs = [
        ((2, 3, 4, 0), all_slots),
        ((1, 3, 4, 0), all_slots),
        ((1, 2, 4, 0), all_slots),
        ((1, 2, 3, 0), all_slots),
        ((2, 3, 0), tri_slots),
        ((1, 3, 0), tri_slots),
        ((1, 2, 0), tri_slots),
        ((1, 2, 3), tri_slots),
    ]
    terms = (
        (parity, 0, 4),
        (parity, 1, 5),
        (parity, 2, 6),
        (-2 * parity, 3, 7),
    )
    return sos.product_sign(spts, tuple(specs), terms, 0, stats)
