"""Exactness under fire: grids, cospherical corners, ties everywhere.

Integer grids put many points on shared planes, circles, and spheres;
every tie is broken deterministically by the symbolic perturbation, and
zero-volume cells are dropped afterwards.  The depth histogram shows how
often the tie-breaker had to dig past the raw coordinates.
"""

from fractions import Fraction

from alphafamily import alpha, delaunay, signatures
from alphafamily.kernel import ExactPoint, KernelStats, _orient_raw

inputs = {
    "cube corners {0,4}^3": [
        (x, y, z) for x in (0, 4) for y in (0, 4) for z in (0, 4)
    ],
    "4x4x4 grid": [
        (x, y, z) for x in range(4) for y in range(4) for z in range(4)
    ],
}

for tag, coords in inputs.items():
    pts = [ExactPoint(i + 1, *c) for i, c in enumerate(coords)]
    stats = KernelStats()
    t = delaunay.build(pts, stats)
    delaunay.postprocess_flat_tets(t)
    records = alpha.classify_all(t, stats)
    spec = alpha.spectrum(records)
    vol = signatures.volume_signature(records, spec, t.points)

    deep = sum(v for d, v in stats.depth_histogram.items() if d > 0)
    total = sum(stats.depth_histogram.values())
    max_depth = max(stats.depth_histogram)
    exact_volume = vol.values[-1]
    hull_volume = Fraction(
        (max(c[0] for c in coords) - min(c[0] for c in coords)) ** 3
    )
    print(f"{tag}:")
    print(
        f"  {len(t.retained_tetrahedra())} cells kept, "
        f"{len(t.removed_flat)} flat cells removed, "
        f"{spec.interval_count} family members"
    )
    print(
        f"  tie-breaks: {deep}/{total} evaluations needed perturbation, "
        f"max depth {max_depth}"
    )
    print(f"  final volume {exact_volume} (cube volume {hull_volume})")
    assert exact_volume == hull_volume
    assert all(
        _orient_raw(*(t.points[i] for i in tet)) != 0
        for tet in t.retained_tetrahedra()
    )
    print("  every retained cell has positive volume\n")
