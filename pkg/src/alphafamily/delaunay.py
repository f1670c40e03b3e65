"""Incremental-flip Delaunay triangulation over a packed triangle-edge mesh.

The mesh stores one fixed-size record per triangle: three vertex labels
plus six ring links, one per directed edge, packed into a flat int32
array (36 bytes per record).  A *triangle-edge pair* ``(t, v)`` with
``v in 0..5`` names one directed edge of triangle ``t``; versions 0..2
run the stored vertex cycle, versions 3..5 its reversal.  Following a
pair's ring link walks the triangles around that directed edge in a
fixed rotational order, and the two directions of an edge traverse the
same triangles in opposite orders.  Tetrahedra are implicit: the gap
between consecutive ring members is the tetrahedron they share, and the
gap ahead of a version in 0..2 is always the cell on the positive side
of the stored vertex cycle.

Hull adjacency is uniform: a ghost vertex (label 0) caps every hull
triangle with a ghost cell, so all rings close.  Construction inserts
points in lexicographic order, cones each new point over the hull faces
visible from it, and restores local Delaunayhood with triangle-to-edge
and edge-to-triangle flips.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    AlphaFamilyError,
    DegenerateInputError,
    InputError,
    NotApplicableError,
)
from .kernel import KernelStats, _orient_raw, in_sphere, orientation

#: vertex-slot tables per version: origin, destination, apex
_ORG = (0, 1, 2, 1, 2, 0)
_DEST = (1, 2, 0, 0, 1, 2)
_APEX = (2, 0, 1, 2, 0, 1)
_VERSION = {(0, 1): 0, (1, 2): 1, (2, 0): 2, (1, 0): 3, (2, 1): 4, (0, 2): 5}

_REC = 9  # ints per record: 3 vertices + 6 ring links
_FLIP_GUARD = 10_000_000


class TriangleEdgePair(NamedTuple):
    """One of the six directed edges of a triangle."""

    triangle: int
    version: int


def _sym(v):
    return v - 3 if v >= 3 else v + 3


@dataclass
class Enumeration:
    """Simplices of the retained complex per dimension, with hull marks."""

    vertices: list
    edges: list
    triangles: list
    tetrahedra: list
    hull: set

    def by_dim(self, k):
        return (self.vertices, self.edges, self.triangles, self.tetrahedra)[k]

    def counts(self):
        return (
            len(self.vertices),
            len(self.edges),
            len(self.triangles),
            len(self.tetrahedra),
        )


class Triangulation:
    """Delaunay triangulation of a labeled exact point set.

    Mutable only during :func:`build`; afterwards treat as immutable (a
    finished instance may be read from any number of threads).
    ``points[0]`` is the ghost-vertex slot.
    """

    def __init__(self, points, stats=None):
        self.points = [None] + list(points)  # 1-based labels; 0 = ghost
        self.stats = stats if stats is not None else KernelStats()
        self._recs = array("i")
        self._free = []
        self._tri_by_key = {}
        self.flips_triangle_to_edge = 0
        self.flips_edge_to_triangle = 0
        self._stack = []
        self._last_vertex = 0
        self._last_hull_tri = -1
        self.removed_flat = set()  # cells dropped by postprocessing
        self.postprocessed = False
        self._retained = None

    # -- packed record primitives ----------------------------------------

    @property
    def record_bytes(self):
        """Bytes per triangle record in the packed store."""
        return self._recs.itemsize * _REC

    def _new_tri(self, a, b, c):
        key = self._key3(a, b, c)
        assert key not in self._tri_by_key, f"triangle {key} already present"
        if self._free:
            t = self._free.pop()
            base = t * _REC
            self._recs[base] = a
            self._recs[base + 1] = b
            self._recs[base + 2] = c
            for i in range(3, 9):
                self._recs[base + i] = -1
        else:
            t = len(self._recs) // _REC
            self._recs.extend((a, b, c, -1, -1, -1, -1, -1, -1))
        self._tri_by_key[key] = t
        return t

    def _kill_tri(self, t):
        base = t * _REC
        a, b, c = self._recs[base], self._recs[base + 1], self._recs[base + 2]
        del self._tri_by_key[self._key3(a, b, c)]
        self._recs[base] = -1
        self._free.append(t)

    def _relabel_ghost(self, t, label):
        # ghost records keep the ghost vertex in slot 2
        base = t * _REC
        a, b, c = self._recs[base], self._recs[base + 1], self._recs[base + 2]
        assert c == 0, "relabel target is not a ghost triangle"
        del self._tri_by_key[self._key3(a, b, c)]
        self._recs[base + 2] = label
        self._tri_by_key[self._key3(a, b, label)] = t

    @staticmethod
    def _key3(a, b, c):
        if a > b:
            a, b = b, a
        if b > c:
            b, c = c, b
            if a > b:
                a, b = b, a
        return (a, b, c)

    def _alive(self, t):
        return 0 <= t * _REC < len(self._recs) and self._recs[t * _REC] != -1

    def _verts(self, t):
        base = t * _REC
        return self._recs[base], self._recs[base + 1], self._recs[base + 2]

    def _version_for(self, t, o, d):
        base = t * _REC
        vs = (self._recs[base], self._recs[base + 1], self._recs[base + 2])
        return _VERSION[(vs.index(o), vs.index(d))]

    # pair encoding: 6*t + v
    def _org(self, pair):
        t, v = divmod(pair, 6)
        return self._recs[t * _REC + _ORG[v]]

    def _dest(self, pair):
        t, v = divmod(pair, 6)
        return self._recs[t * _REC + _DEST[v]]

    def _apex(self, pair):
        t, v = divmod(pair, 6)
        return self._recs[t * _REC + _APEX[v]]

    def _fnext(self, pair):
        t, v = divmod(pair, 6)
        return self._recs[t * _REC + 3 + v]

    def _set_fnext(self, pair, target):
        t, v = divmod(pair, 6)
        self._recs[t * _REC + 3 + v] = target

    @staticmethod
    def _sym_pair(pair):
        t, v = divmod(pair, 6)
        return 6 * t + _sym(v)

    # -- ring surgery ------------------------------------------------------

    def _build_ring(self, pairs):
        """Wire a full ring cycle (both directions) from an ordered list."""
        n = len(pairs)
        for i in range(n):
            a = pairs[i]
            b = pairs[(i + 1) % n]
            self._set_fnext(a, b)
            self._set_fnext(self._sym_pair(b), self._sym_pair(a))

    def _ring_insert_after(self, at, new):
        nxt = self._fnext(at)
        self._set_fnext(at, new)
        self._set_fnext(new, nxt)
        self._set_fnext(self._sym_pair(nxt), self._sym_pair(new))
        self._set_fnext(self._sym_pair(new), self._sym_pair(at))

    def _ring_remove(self, pair):
        nxt = self._fnext(pair)
        prev_s = self._fnext(self._sym_pair(pair))
        self._set_fnext(self._sym_pair(prev_s), nxt)
        self._set_fnext(self._sym_pair(nxt), prev_s)

    def _ring_pairs(self, start):
        out = [start]
        p = self._fnext(start)
        guard = len(self._recs)
        while p != start:
            out.append(p)
            p = self._fnext(p)
            guard -= 1
            if guard < 0:
                raise AlphaFamilyError("unclosed triangle ring")
        return out

    def _splice_between(self, left_t, right_t, new_t, o, d):
        """Insert new_t into the ring of edge {o, d} at the gap between
        left_t and right_t (direction detected from the existing links)."""
        pl = 6 * left_t + self._version_for(left_t, o, d)
        if self._fnext(pl) // 6 == right_t:
            self._ring_insert_after(pl, 6 * new_t + self._version_for(new_t, o, d))
            return
        pl = self._sym_pair(pl)
        assert self._fnext(pl) // 6 == right_t, "gap is not adjacent"
        self._ring_insert_after(pl, 6 * new_t + self._version_for(new_t, d, o))

    # -- public navigation (triangle-edge pair API) -------------------------

    def org(self, pair: TriangleEdgePair):
        return self._org(6 * pair.triangle + pair.version)

    def dest(self, pair: TriangleEdgePair):
        return self._dest(6 * pair.triangle + pair.version)

    def apex(self, pair: TriangleEdgePair):
        return self._apex(6 * pair.triangle + pair.version)

    def sym(self, pair: TriangleEdgePair):
        return TriangleEdgePair(pair.triangle, _sym(pair.version))

    def enext(self, pair: TriangleEdgePair):
        """Next directed edge of the same triangle, same rotation sense."""
        v = pair.version
        nv = (v + 1) % 3 if v < 3 else 3 + ((v - 3 + 2) % 3)
        return TriangleEdgePair(pair.triangle, nv)

    def fnext(self, pair: TriangleEdgePair):
        q = self._fnext(6 * pair.triangle + pair.version)
        return TriangleEdgePair(q // 6, q % 6)

    def live_triangles(self):
        return [t for t in range(len(self._recs) // _REC) if self._alive(t)]

    def triangle_id(self, key):
        return self._tri_by_key.get(tuple(sorted(key)))

    def triangle_vertices(self, t):
        return self._verts(t)

    # -- geometry helpers ----------------------------------------------------

    def _pt(self, label):
        return self.points[label]

    def _visible(self, t, p):
        a, b, c = self._verts(t)
        return orientation(self._pt(a), self._pt(b), self._pt(c), p, self.stats).negative

    def _hull_neighbor(self, t, o, d):
        """(adjacent hull face, ghost triangle) across edge {o, d} of hull
        face t.  Hull faces are stored outward, so stepping twice along the
        ring in the stored-cycle direction lands on the neighbor."""
        v = self._version_for(t, o, d)
        if v >= 3:
            v = _sym(v)
        ghost_pair = self._fnext(6 * t + v)
        return self._fnext(ghost_pair) // 6, ghost_pair // 6

    def _is_hull_tri(self, t):
        return (
            self._apex(self._fnext(6 * t + 0)) == 0
            or self._apex(self._fnext(6 * t + 3)) == 0
        )

    def _hull_faces_at(self, label, start_tri):
        """All current hull faces incident to a hull vertex, by fan walk."""
        faces = []
        seen = {start_tri}
        stack = [start_tri]
        while stack:
            t = stack.pop()
            faces.append(t)
            vs = self._verts(t)
            for d in vs:
                if d == label:
                    continue
                n, _ = self._hull_neighbor(t, label, d)
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return faces

    # -- construction ---------------------------------------------------------

    def _seed(self, q1, q2, q3, q4):
        pts = [self._pt(q) for q in (q1, q2, q3, q4)]
        s = orientation(*pts, self.stats).value

        def outward(a, b, c, flip):
            return (b, a, c) if flip else (a, b, c)

        # store each face so its cycle faces away from the opposite vertex
        f123 = self._new_tri(*outward(q1, q2, q3, s < 0))
        f124 = self._new_tri(*outward(q1, q2, q4, s > 0))
        f134 = self._new_tri(*outward(q1, q3, q4, s < 0))
        f234 = self._new_tri(*outward(q2, q3, q4, s > 0))
        finite = (f123, f124, f134, f234)

        edges = ((q1, q2), (q1, q3), (q1, q4), (q2, q3), (q2, q4), (q3, q4))
        ghosts = {}
        for a, b in edges:
            ghosts[tuple(sorted((a, b)))] = self._new_tri(a, b, 0)

        def ghost_of(a, b):
            return ghosts[tuple(sorted((a, b)))]

        # ring around each finite edge: the face whose stored cycle contains
        # (a -> b) is followed by its own ghost cell, then the other face
        for a, b in edges:
            pair_faces = [
                t for t in finite if a in self._verts(t) and b in self._verts(t)
            ]
            first = next(t for t in pair_faces if self._version_for(t, a, b) < 3)
            second = pair_faces[0] if pair_faces[1] == first else pair_faces[1]
            g = ghost_of(a, b)
            self._build_ring(
                [
                    6 * first + self._version_for(first, a, b),
                    6 * g + self._version_for(g, a, b),
                    6 * second + self._version_for(second, a, b),
                ]
            )

        # ring around each ghost edge (a -> ghost): the forward gap of each
        # member must match the side cell already fixed by the finite-edge
        # rings, read back through the wired hull-edge versions
        for a in (q1, q2, q3, q4):
            others = [q for q in (q1, q2, q3, q4) if q != a]
            x, y, z = others
            gx = ghost_of(a, x)
            px = 6 * gx + self._version_for(gx, a, 0)
            cls = (px % 6) // 3
            probe = 0 if cls == 0 else 3
            w = self._apex(self._fnext(6 * gx + probe))
            mid = ghost_of(a, w)
            last = ghost_of(a, next(q for q in (x, y, z) if q not in (x, w)))
            ring = [
                px,
                6 * mid + self._version_for(mid, a, 0),
                6 * last + self._version_for(last, a, 0),
            ]
            self._build_ring(ring)

        self._stack = []
        self._last_vertex = q4
        self._last_hull_tri = f124

    def _insert(self, qi):
        p = self._pt(qi)
        vis_cache = {}

        def visible(t):
            flag = vis_cache.get(t)
            if flag is None:
                flag = self._visible(t, p)
                vis_cache[t] = flag
            return flag

        # a visible hull face always exists at the latest hull vertex when
        # points arrive in lexicographic order
        seed = None
        for t in self._hull_faces_at(self._last_vertex, self._last_hull_tri):
            if visible(t):
                seed = t
                break
        if seed is None:
            for t in self.live_triangles():  # defensive fallback
                if (
                    0 not in self._verts(t)
                    and self._is_hull_tri(t)
                    and visible(t)
                ):
                    seed = t
                    break
        if seed is None:
            raise AlphaFamilyError("no hull face visible from new point")

        # flood the visible disk; classify its edges
        vis_set = {seed}
        stack = [seed]
        while stack:
            t = stack.pop()
            a, b, c = self._verts(t)
            for o, d in ((a, b), (b, c), (c, a)):
                n, _ = self._hull_neighbor(t, o, d)
                if n not in vis_set and visible(n):
                    vis_set.add(n)
                    stack.append(n)

        horizon = {}
        relabel = set()
        for t in vis_set:
            a, b, c = self._verts(t)
            for o, d in ((a, b), (b, c), (c, a)):
                n, g = self._hull_neighbor(t, o, d)
                if n in vis_set:
                    relabel.add(g)
                else:
                    if o in horizon:
                        raise AlphaFamilyError("horizon is not a simple cycle")
                    horizon[o] = (o, d, t, g)
        cycle = []
        o0 = next(iter(horizon))
        o = o0
        while True:
            rec = horizon[o]
            cycle.append(rec)
            o = rec[1]
            if o == o0:
                break
        if len(cycle) != len(horizon):
            raise AlphaFamilyError("horizon is not a simple cycle")

        # record the ghost-edge rings at horizon vertices before mutating
        ghost_rings = {}
        for o, d, t, g in cycle:
            ghost_rings[o] = self._ring_pairs(6 * g + self._version_for(g, o, 0))

        in_ghost = {rec[1]: rec[3] for rec in cycle}

        # mutate: relabel interior ghosts, create the new faces and ghosts
        for g in relabel:
            self._relabel_ghost(g, qi)
        new_face = {}
        new_ghost = {}
        for o, d, t, g in cycle:
            new_face[tuple(sorted((o, d)))] = self._new_tri(o, d, qi)
            new_ghost[o] = self._new_tri(o, qi, 0)

        def face_pair(old_pair, o):
            """New hull face standing in for a horizon-edge ghost, as a
            pair along (o -> qi)."""
            tri = old_pair // 6
            other = next(x for x in self._verts(tri) if x not in (o, 0))
            nf = new_face[tuple(sorted((o, other)))]
            return 6 * nf + self._version_for(nf, o, qi)

        # splice each new hull face into its horizon edge ring, right after
        # the visible face (their shared gap becomes the new cone cell)
        for o, d, t, g in cycle:
            nf = new_face[tuple(sorted((o, d)))]
            pv = 6 * t + self._version_for(t, o, d)
            assert pv % 6 < 3, "horizon edges follow the visible face cycle"
            self._ring_insert_after(pv, 6 * nf + self._version_for(nf, o, d))

        # rebuild the two rings at each horizon vertex
        for o, d, t, g in cycle:
            old = ghost_rings[o]
            n = len(old)
            run_lo = run_hi = -1
            for idx, p_old in enumerate(old):
                if self._verts(p_old // 6)[2] == qi:  # relabeled this round
                    if run_lo < 0:
                        run_lo = idx
                    run_hi = idx
            ng = new_ghost[o]
            ng_a0 = 6 * ng + self._version_for(ng, o, 0)
            ng_aq = 6 * ng + self._version_for(ng, o, qi)
            if run_lo >= 0:
                # the relabeled run sits inside the old cycle, flanked by
                # the two horizon-edge ghosts; the recorded list starts at a
                # kept ghost so the run cannot wrap
                ring_a0 = old[:run_lo] + [ng_a0] + old[run_hi + 1 :]
                members = [face_pair(old[run_lo - 1], o)]
                members += old[run_lo : run_hi + 1]
                members.append(face_pair(old[(run_hi + 1) % n], o))
                members.append(ng_aq)
            else:
                # bare horizon vertex: single visible face, the two
                # horizon-edge ghosts are adjacent and the new ghost slots
                # into that unique adjacency
                gi = in_ghost[o]
                k = next(i for i, q in enumerate(old) if q // 6 == gi)
                if k == 1:
                    ring_a0 = old[:1] + [ng_a0] + old[1:]
                    first, second = old[0], old[1]
                elif k == n - 1:
                    ring_a0 = old + [ng_a0]
                    first, second = old[-1], old[0]
                else:
                    raise AlphaFamilyError("horizon ghosts not adjacent")
                members = [face_pair(first, o), face_pair(second, o), ng_aq]
            self._build_ring(ring_a0)
            self._build_ring(members)

        # ring around {qi, ghost}: chain through the fresh {o, qi} rings
        start = cycle[0][0]
        chain = []
        a = start
        while True:
            ng = new_ghost[a]
            chain.append(6 * ng + self._version_for(ng, qi, 0))
            nxt = self._fnext(6 * ng + self._version_for(ng, a, qi))
            a = next(x for x in self._verts(nxt // 6) if x not in (a, qi, 0))
            if a == start:
                break
        if len(chain) != len(cycle):
            raise AlphaFamilyError("ghost ring around new vertex not closed")
        self._build_ring(chain)

        for t in vis_set:
            self._push_suspect(t)
        self._last_vertex = qi
        rec0 = cycle[0]
        self._last_hull_tri = new_face[tuple(sorted((rec0[0], rec0[1])))]

    def _push_suspect(self, t):
        if self._alive(t):
            self._stack.append((t, self._verts(t)))

    def _restore(self, audit_each_flip=False):
        guard = _FLIP_GUARD
        while self._stack:
            t, vs = self._stack.pop()
            if not self._alive(t) or self._verts(t) != vs:
                continue
            a, b, c = vs
            if a == 0 or b == 0 or c == 0:
                continue
            u = self._apex(self._fnext(6 * t + 0))
            v = self._apex(self._fnext(6 * t + 3))
            if u == 0 or v == 0:
                continue
            pa, pb, pc = self._pt(a), self._pt(b), self._pt(c)
            pu, pv = self._pt(u), self._pt(v)
            if in_sphere(pa, pb, pc, pu, pv, self.stats).negative:
                continue
            s1 = orientation(pu, pv, pa, pb, self.stats).value
            s2 = orientation(pu, pv, pb, pc, self.stats).value
            s3 = orientation(pu, pv, pc, pa, self.stats).value
            if s1 == s2 == s3:
                self._flip23(t, u, v, s1)
            elif s1 != s2 and s1 != s3:
                self._try_flip32(t, (a, b))
            elif s2 != s1 and s2 != s3:
                self._try_flip32(t, (b, c))
            else:
                self._try_flip32(t, (c, a))
            guard -= 1
            if guard < 0:
                raise AlphaFamilyError("flip budget exceeded; structure bug")
            if audit_each_flip:
                self.audit_structure()

    def _flip23(self, t, u, v, s):
        a, b, c = self._verts(t)
        n0 = self._fnext(6 * t + 0) // 6  # {a,b,u}
        n1 = self._fnext(6 * t + 1) // 6  # {b,c,u}
        n2 = self._fnext(6 * t + 2) // 6  # {c,a,u}
        n3 = self._fnext(6 * t + 3) // 6  # {a,b,v}
        n4 = self._fnext(6 * t + 4) // 6  # {b,c,v}
        n5 = self._fnext(6 * t + 5) // 6  # {c,a,v}
        self._ring_remove(6 * t + 0)
        self._ring_remove(6 * t + 1)
        self._ring_remove(6 * t + 2)
        self._kill_tri(t)

        ta = self._new_tri(u, v, a)
        tb = self._new_tri(u, v, b)
        tc = self._new_tri(u, v, c)
        # Rotation around the new edge: the gap ahead of (u,v,x) along
        # (u -> v) is its positive-side cell, holding the neighbor y with
        # orientation(u,v,x,y) negative; the common convexity sign fixes it.
        order = (ta, tb, tc) if s < 0 else (ta, tc, tb)
        self._build_ring([6 * x + 0 for x in order])
        self._splice_between(n0, n2, ta, u, a)
        self._splice_between(n3, n5, ta, v, a)
        self._splice_between(n0, n1, tb, u, b)
        self._splice_between(n3, n4, tb, v, b)
        self._splice_between(n1, n2, tc, u, c)
        self._splice_between(n4, n5, tc, v, c)

        self.flips_triangle_to_edge += 1
        for x in (ta, tb, tc, n0, n1, n2, n3, n4, n5):
            self._push_suspect(x)

    def _try_flip32(self, t, edge):
        x, y = edge
        p0 = 6 * t + self._version_for(t, x, y)
        r1 = self._fnext(p0)
        r2 = self._fnext(r1)
        if self._fnext(r2) != p0:
            return False  # more than three cells around the edge
        k = self._apex(p0)
        w1 = self._apex(r1)
        w2 = self._apex(r2)
        if w1 == 0 or w2 == 0:
            return False  # the third cell is a ghost
        t1, t2 = r1 // 6, r2 // 6

        def side_pair(tri, o, d, cls):
            v = self._version_for(tri, o, d)
            if v // 3 != cls:
                v = _sym(v)
            return 6 * tri + v

        cls_a = (p0 % 6) // 3  # side of t holding the cell {x,y,k,w1}
        f_xkw1 = self._fnext(side_pair(t, x, k, cls_a)) // 6
        f_ykw1 = self._fnext(side_pair(t, y, k, cls_a)) // 6
        f_xkw2 = self._fnext(side_pair(t, x, k, 1 - cls_a)) // 6
        f_ykw2 = self._fnext(side_pair(t, y, k, 1 - cls_a)) // 6
        cls_b = (r1 % 6) // 3  # side of t1 holding the cell {x,y,w1,w2}
        f_xw1w2 = self._fnext(side_pair(t1, x, w1, cls_b)) // 6
        f_yw1w2 = self._fnext(side_pair(t1, y, w1, cls_b)) // 6

        self._ring_remove(6 * t + self._version_for(t, x, k))
        self._ring_remove(6 * t + self._version_for(t, y, k))
        self._ring_remove(6 * t1 + self._version_for(t1, x, w1))
        self._ring_remove(6 * t1 + self._version_for(t1, y, w1))
        self._ring_remove(6 * t2 + self._version_for(t2, x, w2))
        self._ring_remove(6 * t2 + self._version_for(t2, y, w2))
        self._kill_tri(t)
        self._kill_tri(t1)
        self._kill_tri(t2)

        n = self._new_tri(k, w1, w2)
        self._splice_between(f_xkw1, f_ykw1, n, k, w1)
        self._splice_between(f_xw1w2, f_yw1w2, n, w1, w2)
        self._splice_between(f_xkw2, f_ykw2, n, w2, k)

        self.flips_edge_to_triangle += 1
        for s in (n, f_xkw1, f_ykw1, f_xkw2, f_ykw2, f_xw1w2, f_yw1w2):
            self._push_suspect(s)
        return True

    # -- audits and enumeration ------------------------------------------------

    def audit_structure(self):
        """Verify ring closure, link inverses, and per-side cell consistency.

        Returns the number of live triangle-edge pairs checked."""
        live = self.live_triangles()
        pair_count = 0
        for t in live:
            sides = []
            for base in (0, 3):
                cells = set()
                for v in (base, base + 1, base + 2):
                    p = 6 * t + v
                    q = self._fnext(p)
                    assert q >= 0, f"unset link on triangle {t} version {v}"
                    assert self._alive(q // 6), "link to dead triangle"
                    assert (
                        self._org(p) == self._org(q)
                        and self._dest(p) == self._dest(q)
                    ), "ring link changes directed edge"
                    assert self._fnext(self._sym_pair(q)) == self._sym_pair(p), (
                        "reverse ring is not the inverse cycle"
                    )
                    cells.add(tuple(sorted(set(self._verts(t)) | {self._apex(q)})))
                    pair_count += 1
                assert len(cells) == 1, f"inconsistent side cells on triangle {t}"
                sides.append(cells.pop())
            assert sides[0] != sides[1], "both sides of a triangle give one cell"
        for t in live:
            for v in range(6):
                self._ring_pairs(6 * t + v)
        return pair_count

    def tetrahedra(self):
        """All finite tetrahedra of the as-built structure (pre-peel)."""
        tets = set()
        for t in self.live_triangles():
            vs = self._verts(t)
            if 0 in vs:
                continue
            for side in (0, 3):
                w = self._apex(self._fnext(6 * t + side))
                if w != 0:
                    tets.add(tuple(sorted(vs + (w,))))
        return tets

    def retained_tetrahedra(self):
        if self._retained is not None:
            return self._retained
        return self.tetrahedra()

    def locally_delaunay(self, tri):
        """True iff the opposite vertices of the two incident tetrahedra lie
        outside each other's circumspheres.  Raises for hull triangles."""
        key = tuple(sorted(tri))
        t = self._tri_by_key.get(key)
        if t is None:
            raise NotApplicableError(f"no such triangle {key}")
        a, b, c = self._verts(t)
        u = self._apex(self._fnext(6 * t + 0))
        v = self._apex(self._fnext(6 * t + 3))
        if u == 0 or v == 0:
            raise NotApplicableError("hull triangles have a single tetrahedron")
        if self.postprocessed:
            retained = self.retained_tetrahedra()
            if (
                tuple(sorted((a, b, c, u))) not in retained
                or tuple(sorted((a, b, c, v))) not in retained
            ):
                raise NotApplicableError("triangle is on the retained boundary")
        return in_sphere(
            self._pt(a), self._pt(b), self._pt(c), self._pt(u), self._pt(v), self.stats
        ).negative

    def enumerate(self):
        """Retained simplices by dimension with hull marks."""
        tets = sorted(self.retained_tetrahedra())
        tri_owners = {}
        for tet in tets:
            for skip in range(4):
                face = tet[:skip] + tet[skip + 1 :]
                tri_owners.setdefault(face, []).append(tet)
        hull = {face for face, owners in tri_owners.items() if len(owners) == 1}
        edges = set()
        for face in tri_owners:
            a, b, c = face
            edges.update(((a, b), (a, c), (b, c)))
            if face in hull:
                hull.update(((a,), (b,), (c,), (a, b), (a, c), (b, c)))
        return Enumeration(
            vertices=[(i,) for i in range(1, len(self.points))],
            edges=sorted(edges),
            triangles=sorted(tri_owners),
            tetrahedra=tets,
            hull=hull,
        )


def _affine_rank(points):
    """Dimension of the affine hull of raw coordinates (0..3)."""
    base = points[0]
    indep = []
    for p in points[1:]:
        d = (p.x - base.x, p.y - base.y, p.z - base.z)
        if len(indep) == 0:
            if any(d):
                indep.append(d)
        elif len(indep) == 1:
            a = indep[0]
            cross = (
                a[1] * d[2] - a[2] * d[1],
                a[2] * d[0] - a[0] * d[2],
                a[0] * d[1] - a[1] * d[0],
            )
            if any(cross):
                indep.append(d)
        else:
            a, b = indep
            det = (
                a[0] * (b[1] * d[2] - b[2] * d[1])
                - a[1] * (b[0] * d[2] - b[2] * d[0])
                + a[2] * (b[0] * d[1] - b[1] * d[0])
            )
            if det != 0:
                return 3
    return len(indep)


def build(points, stats=None, audit_each_flip=False):
    """Delaunay triangulation of the (symbolically perturbed) point set.

    Points are inserted in lexicographic coordinate order; each insertion
    cones the new point over the visible hull faces and restores local
    Delaunayhood by flips.  Raises :class:`InputError` for fewer than four
    points or duplicate coordinate triples.
    """
    pts = list(getattr(points, "points", points))
    if len(pts) < 4:
        raise InputError(f"need at least 4 points, got {len(pts)}")
    seen = {}
    for p in pts:
        if p.coords in seen:
            raise InputError(
                f"duplicate point {p.coords} (labels {seen[p.coords]} and {p.index})"
            )
        seen[p.coords] = p.index
    t = Triangulation(pts, stats)
    order = sorted(range(1, len(t.points)), key=lambda i: t.points[i].coords)
    t._seed(*order[:4])
    if audit_each_flip:
        t.audit_structure()
    for qi in order[4:]:
        t._insert(qi)
        if audit_each_flip:
            t.audit_structure()
        t._restore(audit_each_flip=audit_each_flip)
    return t


def locally_delaunay(tri, t):
    return t.locally_delaunay(tri)


def flip_triangle_to_edge(tri, t):
    """Replace an interior non-Delaunay triangle whose two tetrahedra form
    a convex union by the opposite edge (two cells become three)."""
    tid = t.triangle_id(tri)
    if tid is None:
        raise AlphaFamilyError(f"no such triangle {tri}")
    a, b, c = t._verts(tid)
    u = t._apex(t._fnext(6 * tid + 0))
    v = t._apex(t._fnext(6 * tid + 3))
    if u == 0 or v == 0:
        raise AlphaFamilyError("cannot flip a hull triangle")
    pa, pb, pc = t._pt(a), t._pt(b), t._pt(c)
    pu, pv = t._pt(u), t._pt(v)
    if in_sphere(pa, pb, pc, pu, pv, t.stats).negative:
        raise AlphaFamilyError("triangle is locally Delaunay; nothing to repair")
    s1 = orientation(pu, pv, pa, pb, t.stats).value
    s2 = orientation(pu, pv, pb, pc, t.stats).value
    s3 = orientation(pu, pv, pc, pa, t.stats).value
    if not (s1 == s2 == s3):
        raise AlphaFamilyError("tetrahedra union is not convex")
    t._flip23(tid, u, v, s1)


def flip_edge_to_triangle(edge, t):
    """Replace the three triangles around an edge with exactly three
    incident tetrahedra by their common link triangle (three cells to two)."""
    x, y = edge
    probe = None
    for key, tid in t._tri_by_key.items():
        if x in key and y in key and 0 not in key:
            probe = tid
            break
    if probe is None:
        raise AlphaFamilyError(f"no triangle on edge {edge}")
    if not t._try_flip32(probe, (x, y)):
        raise AlphaFamilyError("edge does not have exactly three tetrahedra")


def postprocess_flat_tets(t):
    """Drop zero-volume tetrahedra; keep the positive-volume complex.

    Coplanar input runs (hull layers, but also interior cocircular
    quadruples on gridded data) survive the perturbed construction as
    cells of infinitesimal thickness.  They are exactly the cells whose
    raw orientation determinant vanishes; the retained complex is the
    remaining cells plus their faces, with hull marks recomputed from
    single-sided triangles.  Raises :class:`DegenerateInputError` when
    nothing would remain (raw input of affine rank below 3).
    """
    tets = t.tetrahedra()
    retained = set()
    for tet in tets:
        pa, pb, pc, pd = (t._pt(i) for i in tet)
        if _orient_raw(pa, pb, pc, pd) != 0:
            retained.add(tet)
    if not retained:
        raise DegenerateInputError(_affine_rank(t.points[1:]))
    t.removed_flat = tets - retained
    t._retained = retained
    t.postprocessed = True
    return t


def enumerate_complex(t):
    return t.enumerate()
