"""Membership intervals, the threshold spectrum, and per-alpha family queries.

Every simplex of the triangulation owns one contiguous membership
interval, split into singular / regular / interior parts controlled by
its squared radius, its attachment flag, and the two derived bounds
``mu_lo`` (first membership) and ``mu_hi`` (where it sinks into the
interior).  All interval ends are squared radii of unattached simplices,
so the sorted spectrum of those radii indexes the entire family: queries
resolve to the open interval between consecutive thresholds and every
comparison reduces to comparing interval indices.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlphaFamilyError, OnThresholdError
from .kernel import (
    edge_attached,
    orientation,
    rho_sq_edge,
    rho_sq_tetrahedron,
    rho_sq_triangle,
    triangle_attached,
)

INTERIOR = "interior"
REGULAR = "regular"
SINGULAR = "singular"


@dataclass(frozen=True)
class IntervalRecord:
    """Membership data for one simplex of the triangulation."""

    key: tuple
    dim: int
    rho_sq: Fraction | None  # None for vertices
    attached: bool
    on_hull: bool
    mu_lo_sq: Fraction
    mu_hi_sq: object  # Fraction, or math.inf on the hull


class Spectrum:
    """Sorted distinct squared thresholds with 0 and infinity sentinels."""

    def __init__(self, thresholds):
        self.values = [Fraction(0)] + sorted(thresholds) + [math.inf]
        self.alphas = [
            math.sqrt(v) if v is not math.inf else math.inf for v in self.values
        ]
        self._index = {v: i for i, v in enumerate(self.values)}

    def __len__(self):
        return len(self.values)

    @property
    def interval_count(self):
        return len(self.values) - 1

    def position(self, value):
        """Exact spectrum index of a threshold value (or the top sentinel)."""
        try:
            return self._index[value]
        except KeyError:
            raise AlphaFamilyError(
                f"value {value} is not a spectrum threshold"
            ) from None

    def interval_of_alpha_sq(self, alpha_sq):
        """Open interval index containing a squared alpha.

        Raises :class:`OnThresholdError` when the value hits a threshold
        exactly (sentinels excepted: 0 maps to the first interval and
        infinity to the last).
        """
        if alpha_sq == 0:
            return 0
        if alpha_sq == math.inf:
            return self.interval_count - 1
        if alpha_sq in self._index:
            raise OnThresholdError(
                f"alpha^2 = {alpha_sq} is a threshold; query an interval index"
            )
        i = bisect_left(self.values, alpha_sq, 1, len(self.values) - 1)
        return i - 1


@dataclass
class ComplexView:
    """Classified simplices at one open spectrum interval."""

    interval: int
    members: dict  # dim -> list of (key, class)

    def keys(self):
        out = set()
        for entries in self.members.values():
            out.update(key for key, _ in entries)
        return out

    def counts(self):
        table = {}
        for dim, entries in self.members.items():
            for _, cls in entries:
                table[(dim, cls)] = table.get((dim, cls), 0) + 1
        return table


@dataclass
class BoundaryView:
    """Faces of the shape boundary at one interval, ready for export."""

    interval: int
    triangles: list  # (oriented vertex tuple, class)
    edges: list  # singular edges
    vertices: list  # singular vertices


def _up1_maps(enum):
    tri_tets = {}
    for tet in enum.tetrahedra:
        for skip in range(4):
            tri_tets.setdefault(tet[:skip] + tet[skip + 1 :], []).append(tet)
    edge_tris = {}
    for tri in enum.triangles:
        a, b, c = tri
        for e in ((a, b), (a, c), (b, c)):
            edge_tris.setdefault(e, []).append(tri)
    vert_edges = {}
    for e in enum.edges:
        for v in e:
            vert_edges.setdefault((v,), []).append(e)
    return tri_tets, edge_tris, vert_edges


def classify_all(t, stats=None):
    """Interval record for every simplex of the (postprocessed) complex.

    Processes cells, then triangles, then edges, then vertices, so each
    bound is a one-step reduction over the simplices one dimension up.
    """
    stats = stats if stats is not None else t.stats
    enum = t.enumerate()
    tri_tets, edge_tris, vert_edges = _up1_maps(enum)
    pts = t.points
    records = {}

    for tet in enum.tetrahedra:
        rho = rho_sq_tetrahedron(*(pts[i] for i in tet), stats)
        records[tet] = IntervalRecord(
            key=tet, dim=3, rho_sq=rho, attached=False, on_hull=False,
            mu_lo_sq=rho, mu_hi_sq=rho,
        )

    for tri in enum.triangles:
        p = [pts[i] for i in tri]
        rho = rho_sq_triangle(*p, stats)
        attached = False
        for tet in tri_tets[tri]:
            apex = next(i for i in tet if i not in tri)
            if triangle_attached(*p, pts[apex], stats).positive:
                attached = True
                break
        ups = [records[tet] for tet in tri_tets[tri]]
        on_hull = tri in enum.hull
        records[tri] = IntervalRecord(
            key=tri, dim=2, rho_sq=rho, attached=attached, on_hull=on_hull,
            mu_lo_sq=min(u.rho_sq for u in ups),
            mu_hi_sq=math.inf if on_hull else max(u.mu_hi_sq for u in ups),
        )

    for edge in enum.edges:
        p = [pts[i] for i in edge]
        rho = rho_sq_edge(*p, stats)
        attached = False
        for tri in edge_tris[edge]:
            apex = next(i for i in tri if i not in edge)
            if edge_attached(*p, pts[apex], stats).positive:
                attached = True
                break
        ups = [records[tri] for tri in edge_tris[edge]]
        on_hull = edge in enum.hull
        records[edge] = IntervalRecord(
            key=edge, dim=1, rho_sq=rho, attached=attached, on_hull=on_hull,
            mu_lo_sq=min(
                u.mu_lo_sq if u.attached else u.rho_sq for u in ups
            ),
            mu_hi_sq=math.inf if on_hull else max(u.mu_hi_sq for u in ups),
        )

    for vert in enum.vertices:
        ups = [records[e] for e in vert_edges[vert]]
        on_hull = vert in enum.hull
        records[vert] = IntervalRecord(
            key=vert, dim=0, rho_sq=None, attached=False, on_hull=on_hull,
            mu_lo_sq=min(
                u.mu_lo_sq if u.attached else u.rho_sq for u in ups
            ),
            mu_hi_sq=math.inf if on_hull else max(u.mu_hi_sq for u in ups),
        )

    for rec in records.values():
        assert rec.mu_lo_sq <= rec.mu_hi_sq
        if rec.dim in (1, 2) and not rec.attached:
            assert rec.rho_sq <= rec.mu_lo_sq
    return records


def spectrum(records):
    """Sorted deduplicated squared thresholds with sentinels attached.

    The thresholds are exactly the squared radii of unattached simplices
    of dimension one and up.
    """
    return Spectrum(
        {
            rec.rho_sq
            for rec in records.values()
            if rec.dim >= 1 and not rec.attached
        }
    )


def class_ranges(rec, spec):
    """Half-open interval-index ranges (singular, regular, interior).

    ``None`` marks an empty part.  These ranges drive every family query,
    so viewers replaying them from threshold indices agree exactly.
    """
    last = spec.interval_count
    if rec.dim == 3:
        return None, None, (spec.position(rec.rho_sq), last)
    # the infinity sentinel sits at index `last`, so hull simplices get an
    # unbounded regular range and an empty interior range uniformly
    lo = spec.position(rec.mu_lo_sq)
    hi = spec.position(rec.mu_hi_sq)
    if rec.dim == 0:
        singular = (0, lo)
    elif not rec.attached:
        singular = (spec.position(rec.rho_sq), lo)
    else:
        singular = None
    return singular, (lo, hi), (hi, last)


def _classify_one(rec, i, spec):
    singular, regular, interior = class_ranges(rec, spec)
    if singular and singular[0] <= i < singular[1]:
        return SINGULAR
    if regular and regular[0] <= i < regular[1]:
        return REGULAR
    if interior and interior[0] <= i < interior[1]:
        return INTERIOR
    return None


def complex_at(target, records, spec):
    """Classified complex at a spectrum interval.

    ``target`` is either an interval index or a (non-threshold) alpha
    value, which is squared and located by binary search.
    """
    if isinstance(target, bool):
        raise AlphaFamilyError("interval index must be an integer")
    if isinstance(target, int):
        if not 0 <= target < spec.interval_count:
            raise AlphaFamilyError(
                f"interval index {target} out of range [0, {spec.interval_count})"
            )
        i = target
    else:
        alpha_sq = Fraction(target) ** 2 if target != math.inf else math.inf
        i = spec.interval_of_alpha_sq(alpha_sq)
    members = {0: [], 1: [], 2: [], 3: []}
    for key, rec in records.items():
        cls = _classify_one(rec, i, spec)
        if cls is not None:
            members[rec.dim].append((key, cls))
    for entries in members.values():
        entries.sort()
    return ComplexView(interval=i, members=members)


def shape_boundary(view, records, spec, t):
    """Boundary faces of the shape at a view's interval.

    Regular triangles are oriented so their vertex cycle faces away from
    the one incident cell inside the complex; singular triangles keep
    index order (both of their sides are exposed).  Singular edges and
    vertices ride along for export as lines and points.
    """
    i = view.interval
    tri_tets = {}
    for tet in t.retained_tetrahedra():
        for skip in range(4):
            tri_tets.setdefault(tet[:skip] + tet[skip + 1 :], []).append(tet)
    triangles = []
    for key, cls in view.members[2]:
        if cls == INTERIOR:
            continue
        if cls == REGULAR:
            inside = [
                tet
                for tet in tri_tets[key]
                if i >= spec.position(records[tet].rho_sq)
            ]
            assert len(inside) == 1, "regular triangle must bound one cell"
            apex = next(x for x in inside[0] if x not in key)
            a, b, c = key
            s = orientation(
                t.points[a], t.points[b], t.points[c], t.points[apex], t.stats
            )
            oriented = (a, b, c) if s.positive else (b, a, c)
            triangles.append((oriented, cls))
        else:
            triangles.append((key, cls))
    edges = [key for key, cls in view.members[1] if cls == SINGULAR]
    vertices = [key for key, cls in view.members[0] if cls == SINGULAR]
    return BoundaryView(
        interval=view.interval, triangles=triangles, edges=edges, vertices=vertices
    )
