"""Ingestion, family serialization, and mesh export.

The family bundle is a single JSON document carrying everything a
consumer needs to classify any simplex at any spectrum interval: the
points, the exact spectrum (numerator/denominator strings plus float
radii), per-simplex threshold indices, and the precomputed signature
series.  Exact values are string-encoded so round-trips are lossless.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import alpha as alpha_mod
from . import delaunay, signatures
from .errors import AlphaFamilyError, InputError
from .kernel import ExactPoint, KernelStats

FORMAT_NAME = "alphafamily-bundle"
FORMAT_VERSION = 1

#: scaled coordinates must fit the packed mesh's index-friendly width
COORD_LIMIT = 2**31


@dataclass
class PointSet:
    """Ordered exact points plus the decimal scale applied at parse time."""

    points: list
    scale: int = 0
    source: str = ""

    def __len__(self):
        return len(self.points)


def parse_points(text, scale=0, source=""):
    """Parse lines of three decimal numbers into exact integer points.

    ``scale`` shifts each coordinate by that power of ten before requiring
    integrality.  Comments start with ``#``; duplicate coordinate triples
    and non-integral scaled values are rejected with their line numbers.
    """
    if scale < 0:
        raise InputError("scale must be non-negative")
    factor = Decimal(10) ** scale
    points = []
    seen = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 3 coordinates, got {len(parts)}")
        coords = []
        for token in parts:
            try:
                value = Decimal(token) * factor
            except InvalidOperation:
                raise InputError(f"line {lineno}: bad number {token!r}") from None
            if value != value.to_integral_value():
                raise InputError(
                    f"line {lineno}: {token} is not integral at scale {scale}"
                )
            ivalue = int(value)
            if not -COORD_LIMIT < ivalue < COORD_LIMIT:
                raise InputError(f"line {lineno}: coordinate {token} overflows")
            coords.append(ivalue)
        triple = tuple(coords)
        if triple in seen:
            raise InputError(
                f"line {lineno}: duplicate point (first seen on line {seen[triple]})"
            )
        seen[triple] = lineno
        points.append(ExactPoint(len(points) + 1, *triple))
    if len(points) < 4:
        raise InputError(f"need at least 4 points, got {len(points)}")
    return PointSet(points=points, scale=scale, source=source)


@dataclass
class FamilyBundle:
    """Serialized family: the contract between the pipeline and viewers."""

    n: int
    scale: int
    source: str
    points_int: list  # exact integer triples
    spectrum_exact: list  # Fractions, then math.inf at the end (0 included)
    spectrum_alpha: list  # float radii, math.inf at the end
    simplices: list  # dicts with verts/dim/hull/attached/threshold indices
    signature_data: dict
    stats: dict

    @property
    def interval_count(self):
        return len(self.spectrum_exact) - 1

    def to_json(self):
        scale_div = 10**self.scale
        entries = []
        for value, a in zip(self.spectrum_exact, self.spectrum_alpha):
            if value is math.inf:
                entries.append({"num": None, "den": None, "alpha": None})
            else:
                f = Fraction(value)
                entries.append(
                    {"num": str(f.numerator), "den": str(f.denominator),
                     "alpha": a if a is not math.inf else None}
                )
        doc = {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "n": self.n,
            "scale": self.scale,
            "source": self.source,
            "points": [
                [x / scale_div, y / scale_div, z / scale_div]
                for x, y, z in self.points_int
            ],
            "points_int": [list(p) for p in self.points_int],
            "spectrum": entries,
            "simplices": self.simplices,
            "signatures": self.signature_data,
            "stats": self.stats,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        if doc.get("format") != FORMAT_NAME:
            raise InputError("not a family bundle")
        if doc.get("version") != FORMAT_VERSION:
            raise InputError(f"unsupported bundle version {doc.get('version')}")
        exact = []
        alphas = []
        for entry in doc["spectrum"]:
            if entry["num"] is None:
                exact.append(math.inf)
                alphas.append(math.inf)
            else:
                exact.append(Fraction(int(entry["num"]), int(entry["den"])))
                alphas.append(entry["alpha"])
        return cls(
            n=doc["n"],
            scale=doc["scale"],
            source=doc.get("source", ""),
            points_int=[tuple(p) for p in doc["points_int"]],
            spectrum_exact=exact,
            spectrum_alpha=alphas,
            simplices=doc["simplices"],
            signature_data=doc["signatures"],
            stats=doc.get("stats", {}),
        )


def build_bundle(points):
    """Run the full pipeline and assemble the family bundle.

    Deterministic for a given point set and scale: triangulate, drop flat
    cells, classify every simplex, sort the spectrum, and precompute the
    signature series.
    """
    pset = points if isinstance(points, PointSet) else PointSet(list(points))
    build_stats = KernelStats()
    t = delaunay.build(pset.points, build_stats)
    delaunay.postprocess_flat_tets(t)
    interval_stats = KernelStats()
    records = alpha_mod.classify_all(t, interval_stats)
    spec = alpha_mod.spectrum(records)

    simplices = []
    for key in sorted(records, key=lambda k: (len(k), k)):
        rec = records[key]
        entry = {
            "verts": list(key),
            "dim": rec.dim,
            "hull": rec.on_hull,
            "attached": rec.attached,
            "mu_lo_index": spec.position(rec.mu_lo_sq),
            "mu_hi_index": spec.position(rec.mu_hi_sq),
        }
        if rec.dim >= 1 and not rec.attached:
            entry["rho_index"] = spec.position(rec.rho_sq)
        simplices.append(entry)

    comp = signatures.components_signature(records, spec)
    vol = signatures.volume_signature(records, spec, t.points)
    area = signatures.area_signature(records, spec, t, t.points)
    counts = signatures.face_count_signature(records, spec)
    signature_data = {
        "components": comp.values,
        "volume": {
            "exact": [f"{v.numerator}/{v.denominator}" for v in vol.values],
            "float": vol.floats(),
        },
        "area": area.values,
        "face_counts": {name: s.values for name, s in counts.items()},
    }

    enum = t.enumerate()
    stats = {
        "triangulation": build_stats.as_dict(),
        "intervals": interval_stats.as_dict(),
        "flips": {
            "triangle_to_edge": t.flips_triangle_to_edge,
            "edge_to_triangle": t.flips_edge_to_triangle,
        },
        "simplices": {
            "vertices": len(enum.vertices),
            "edges": len(enum.edges),
            "triangles": len(enum.triangles),
            "tetrahedra": len(enum.tetrahedra),
            "removed_flat": len(t.removed_flat),
        },
        "record_bytes": t.record_bytes,
    }

    return FamilyBundle(
        n=len(pset.points),
        scale=pset.scale,
        source=pset.source,
        points_int=[p.coords for p in pset.points],
        spectrum_exact=list(spec.values),
        spectrum_alpha=list(spec.alphas),
        simplices=simplices,
        signature_data=signature_data,
        stats=stats,
    )


def _ranges_from_entry(entry, last):
    """(singular, regular, interior) index ranges from bundle indices."""
    if entry["dim"] == 3:
        return None, None, (entry["rho_index"], last)
    lo = entry["mu_lo_index"]
    hi = entry["mu_hi_index"]
    if entry["dim"] == 0:
        singular = (0, lo)
    elif not entry["attached"]:
        singular = (entry["rho_index"], lo)
    else:
        singular = None
    return singular, (lo, hi), (hi, last)


def classify_entry(entry, interval, last):
    """Class of a bundle simplex at an interval, or None when absent."""
    singular, regular, interior = _ranges_from_entry(entry, last)
    for cls, rng in (
        ("singular", singular),
        ("regular", regular),
        ("interior", interior),
    ):
        if rng and rng[0] <= interval < rng[1]:
            return cls
    return None


def _orient_outward(bundle, tri, apex):
    from .kernel import _orient_raw

    pts = {}
    for label in (*tri, apex):
        x, y, z = bundle.points_int[label - 1]
        pts[label] = ExactPoint(label, x, y, z)
    a, b, c = tri
    raw = _orient_raw(pts[a], pts[b], pts[c], pts[apex])
    # raw-zero cannot occur: retained cells have positive volume
    return (a, b, c) if raw > 0 else (b, a, c)


def export_mesh(bundle, index, fmt="off", classes=("regular", "singular"),
                closed_singular=False):
    """Mesh of the selected classes at one interval, as OFF or OBJ text.

    Regular triangles are oriented away from their interior cell.  With
    ``closed_singular`` each singular triangle is emitted twice with
    opposite orientations (closed-orientation consumers); otherwise once.
    OBJ output also carries singular edges as lines and singular vertices
    as points; OFF has no such primitives and omits them.
    """
    last = bundle.interval_count
    if not 0 <= index < last:
        raise AlphaFamilyError(f"interval index {index} out of range [0, {last})")
    fmt = fmt.lower()
    if fmt not in ("off", "obj"):
        raise AlphaFamilyError(f"unknown mesh format {fmt!r}")
    wanted = set(classes)
    unknown = wanted - {"regular", "singular", "interior"}
    if unknown:
        raise AlphaFamilyError(f"unknown classes {sorted(unknown)}")

    tets_in = set()
    tri_entries = []
    edge_entries = []
    vert_entries = []
    for entry in bundle.simplices:
        cls = classify_entry(entry, index, last)
        if cls is None:
            continue
        if entry["dim"] == 3:
            tets_in.add(tuple(entry["verts"]))
        elif entry["dim"] == 2:
            tri_entries.append((tuple(entry["verts"]), cls))
        elif entry["dim"] == 1 and cls == "singular":
            edge_entries.append(tuple(entry["verts"]))
        elif entry["dim"] == 0 and cls == "singular":
            vert_entries.append(entry["verts"][0])

    tri_owner = {}
    for tet in tets_in:
        for skip in range(4):
            face = tet[:skip] + tet[skip + 1 :]
            tri_owner.setdefault(face, []).append(tet)

    faces = []
    for tri, cls in tri_entries:
        if cls not in wanted:
            continue
        if cls == "regular":
            owners = tri_owner.get(tri, [])
            apex = next(x for x in owners[0] if x not in tri)
            faces.append(_orient_outward(bundle, tri, apex))
        elif cls == "singular":
            faces.append(tri)
            if closed_singular:
                a, b, c = tri
                faces.append((b, a, c))
        else:  # interior, by request
            faces.append(tri)

    lines = edge_entries if "singular" in wanted else []
    points = vert_entries if "singular" in wanted else []

    coords = [f"{x} {y} {z}" for x, y, z in (
        tuple(c) for c in _float_points(bundle)
    )]
    if fmt == "off":
        out = ["OFF", f"{bundle.n} {len(faces)} 0"]
        out += coords
        out += [f"3 {a - 1} {b - 1} {c - 1}" for a, b, c in faces]
        return "\n".join(out) + "\n"
    out = [f"# alpha-family export, interval {index}"]
    out += [f"v {c}" for c in coords]
    out += [f"f {a} {b} {c}" for a, b, c in faces]
    out += [f"l {a} {b}" for a, b in lines]
    out += [f"p {v}" for v in points]
    return "\n".join(out) + "\n"


def _float_points(bundle):
    div = 10**bundle.scale
    return [(x / div, y / div, z / div) for x, y, z in bundle.points_int]


def spectrum_csv(bundle):
    """CSV rows of the spectrum: index, exact squared radius, float radius."""
    out = ["index,alpha_sq,alpha"]
    for i, (v, a) in enumerate(zip(bundle.spectrum_exact, bundle.spectrum_alpha)):
        if v is math.inf:
            out.append(f"{i},inf,inf")
        else:
            f = Fraction(v)
            out.append(f"{i},{f.numerator}/{f.denominator},{a!r}")
    return "\n".join(out) + "\n"


def signatures_csv(bundle):
    """CSV rows of every signature series, one line per interval."""
    sig = bundle.signature_data
    count_names = sorted(sig["face_counts"])
    header = ["interval", "alpha_lo", "alpha_hi", "components", "volume", "area"]
    header += count_names
    out = [",".join(header)]
    alphas = bundle.spectrum_alpha
    for i in range(bundle.interval_count):
        hi = alphas[i + 1]
        row = [
            str(i),
            repr(alphas[i]),
            "inf" if hi is math.inf else repr(hi),
            str(sig["components"][i]),
            repr(sig["volume"]["float"][i]),
            repr(sig["area"][i]),
        ]
        row += [str(sig["face_counts"][name][i]) for name in count_names]
        out.append(",".join(row))
    return "\n".join(out) + "\n"
