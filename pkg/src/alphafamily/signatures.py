"""Family signatures: step functions over the spectrum intervals.

Each signature holds one value per open interval (components, volume,
boundary area, per-class face counts).  Values are accumulated through
difference arrays over the interval indices carried by the records, so a
run over the whole family costs one pass over the simplices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .alpha import class_ranges
from .kernel import _orient_raw


@dataclass
class SignatureSeries:
    """A named step function with one value per spectrum interval."""

    name: str
    values: list

    def __len__(self):
        return len(self.values)

    def floats(self):
        return [float(v) for v in self.values]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n + 1))
        self.count = n

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.count -= 1


def _entry_index(rec, spec):
    """Interval index at which a simplex first joins the complex."""
    if rec.attached:
        return spec.position(rec.mu_lo_sq)
    return spec.position(rec.rho_sq)


def components_signature(records, spec, t=None):
    """Connected component count per interval, via union-find replay.

    All vertices are present from the first interval; each later simplex
    unions its vertex set when it first enters.
    """
    n = sum(1 for rec in records.values() if rec.dim == 0)
    buckets = {}
    for rec in records.values():
        if rec.dim >= 1:
            buckets.setdefault(_entry_index(rec, spec), []).append(rec.key)
    uf = _UnionFind(n)
    values = [n]
    for i in range(1, spec.interval_count):
        for key in buckets.get(i, ()):
            for a, b in zip(key, key[1:]):
                uf.union(a, b)
        values.append(uf.count)
    return SignatureSeries("components", values)


def volume_signature(records, spec, points):
    """Exact volume per interval: cells contribute |det|/6 once entered."""
    intervals = spec.interval_count
    diffs = [Fraction(0)] * (intervals + 1)
    for rec in records.values():
        if rec.dim != 3:
            continue
        a, b, c, d = (points[i] for i in rec.key)
        vol = Fraction(abs(_orient_raw(a, b, c, d)), 6)
        diffs[spec.position(rec.rho_sq)] += vol
    values = []
    acc = Fraction(0)
    for i in range(intervals):
        acc += diffs[i]
        values.append(acc)
    return SignatureSeries("volume", values)


def area_signature(records, spec, t, points):
    """Boundary area per interval.

    Regular triangles count once, singular triangles twice (both sides
    exposed); areas come from the exact squared cross-product norm and
    are emitted as floats.
    """
    intervals = spec.interval_count
    diffs = [0.0] * (intervals + 1)
    for rec in records.values():
        if rec.dim != 2:
            continue
        pa, pb, pc = (points[i] for i in rec.key)
        ux, uy, uz = pb.x - pa.x, pb.y - pa.y, pb.z - pa.z
        vx, vy, vz = pc.x - pa.x, pc.y - pa.y, pc.z - pa.z
        cx = uy * vz - uz * vy
        cy = uz * vx - ux * vz
        cz = ux * vy - uy * vx
        area = math.sqrt(cx * cx + cy * cy + cz * cz) / 2.0
        singular, regular, _ = class_ranges(rec, spec)
        if singular and singular[0] < singular[1]:
            diffs[singular[0]] += 2.0 * area
            diffs[singular[1]] -= 2.0 * area
        if regular and regular[0] < regular[1]:
            diffs[regular[0]] += area
            diffs[regular[1]] -= area
    values = []
    acc = 0.0
    for i in range(intervals):
        acc += diffs[i]
        values.append(acc)
    return SignatureSeries("area", values)


_DIM_NAMES = ("vertices", "edges", "triangles", "tetrahedra")


def face_count_signature(records, spec):
    """Count series per (class, dimension); cells are interior-only."""
    intervals = spec.interval_count
    series = {}
    for cls in ("singular", "regular", "interior"):
        for dim, dim_name in enumerate(_DIM_NAMES):
            if cls != "interior" and dim == 3:
                continue
            series[f"{cls}_{dim_name}"] = [0] * (intervals + 1)
    for rec in records.values():
        singular, regular, interior = class_ranges(rec, spec)
        dim_name = _DIM_NAMES[rec.dim]
        for cls, rng in (
            ("singular", singular),
            ("regular", regular),
            ("interior", interior),
        ):
            if rng and rng[0] < rng[1]:
                diffs = series[f"{cls}_{dim_name}"]
                diffs[rng[0]] += 1
                diffs[rng[1]] -= 1
    out = {}
    for name, diffs in series.items():
        values = []
        acc = 0
        for i in range(intervals):
            acc += diffs[i]
            values.append(acc)
        out[name] = SignatureSeries(name, values)
    return out
