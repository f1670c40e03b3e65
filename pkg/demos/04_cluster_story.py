"""Two clusters and a bridge: reading the component signature.

Builds two separated blobs, watches the component count step from "many
dust points" to "two solids" to "one hull", and writes the bundle so the
browser viewer can replay the same story interactively.
"""

from pathlib import Path

import numpy as np

from alphafamily.shell import build_bundle, parse_points

rng = np.random.default_rng(11)
blob_a = rng.normal(0, 12, size=(60, 3))
blob_b = rng.normal(0, 12, size=(60, 3)) + [220, 0, 0]
xyz = np.unique(np.round(np.vstack([blob_a, blob_b])).astype(int), axis=0)

text = "\n".join(" ".join(map(str, row)) for row in xyz)
bundle = build_bundle(parse_points(text))
comp = bundle.signature_data["components"]
alphas = bundle.spectrum_alpha

print(f"{bundle.n} points in two blobs, {bundle.interval_count} family members")
milestones = []
for value in (bundle.n, 10, 2, 1):
    idx = next((i for i, c in enumerate(comp) if c <= value), None)
    if idx is not None and (not milestones or milestones[-1][0] != idx):
        milestones.append((idx, comp[idx]))
for idx, c in milestones:
    lo = alphas[idx]
    print(f"  interval {idx:5d} (alpha just above {lo:7.2f}): {c:3d} component(s)")

two = [i for i, c in enumerate(comp) if c == 2]
if two:
    print(
        f"  the two blobs stay separate across {len(two)} intervals "
        f"(alpha {alphas[two[0]]:.1f} .. {alphas[two[-1] + 1]:.1f})"
    )

out = Path(__file__).resolve().parent / "out"
out.mkdir(exist_ok=True)
bundle_path = out / "clusters.bundle.json"
bundle_path.write_text(bundle.to_json())
print(f"bundle for the viewer: {bundle_path}")
