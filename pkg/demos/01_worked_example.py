"""Walk the whole family of a four-point set, by hand.

A single tetrahedron is small enough to check every number: the eleven
thresholds, which simplex enters where, and how the signatures step.
"""

from alphafamily import alpha, delaunay, signatures
from alphafamily.kernel import ExactPoint

points = [
    ExactPoint(1, 0, 0, 0),
    ExactPoint(2, 6, 0, 0),
    ExactPoint(3, 1, 4, 0),
    ExactPoint(4, 2, 1, 7),
]

t = delaunay.build(points)
delaunay.postprocess_flat_tets(t)
records = alpha.classify_all(t)
spec = alpha.spectrum(records)

print("simplices and their membership intervals (squared radii):")
for key in sorted(records, key=lambda k: (len(k), k)):
    rec = records[key]
    rho = "-" if rec.rho_sq is None else str(rec.rho_sq)
    print(
        f"  {str(key):>14}  rho^2={rho:>12}  mu^2={rec.mu_lo_sq}"
        f"  mu_bar^2={rec.mu_hi_sq}  hull={rec.on_hull}"
    )

print("\nspectrum (0, eleven thresholds, infinity):")
for i, (v, a) in enumerate(zip(spec.values, spec.alphas)):
    print(f"  [{i:2d}] alpha^2 = {v}   alpha = {a}")

comp = signatures.components_signature(records, spec)
vol = signatures.volume_signature(records, spec, t.points)
area = signatures.area_signature(records, spec, t, t.points)
print("\ninterval  components  volume  area")
for i in range(spec.interval_count):
    print(f"  {i:6d}  {comp.values[i]:10d}  {float(vol.values[i]):6.1f}  {area.values[i]:7.3f}")

print("\nthe shape at three stations:")
for i in (0, spec.position(records[(1, 2, 3)].rho_sq), spec.interval_count - 1):
    view = alpha.complex_at(i, records, spec)
    bd = alpha.shape_boundary(view, records, spec, t)
    print(
        f"  interval {i:2d}: {len(bd.triangles)} boundary triangles, "
        f"{len(bd.edges)} singular edges, {len(bd.vertices)} singular vertices"
    )
