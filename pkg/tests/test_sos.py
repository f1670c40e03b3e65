"""The lazy term schedules against full sparse symbolic expansion.

The generator orders coefficients by exact exponent bookkeeping; the
oracle expands every predicate polynomial completely in one magnitude
symbol and reads off the lowest-order nonvanishing term.  Agreement on
sign and on the exponent of the deciding term pins the schedule order.
"""

import random

import pytest

from alphafamily import sos
from alphafamily.errors import DegenerateSimplexError, ScheduleExhaustedError
from alphafamily.kernel import (
    ExactPoint,
    edge_attached,
    in_sphere,
    orientation,
    triangle_attached,
)

import oracles


def degenerate_heavy_points(rng, k, span):
    idx = rng.sample(range(1, 10), k)
    return [
        ExactPoint(i, rng.randint(0, span), rng.randint(0, span), rng.randint(0, span))
        for i in idx
    ]


def test_orientation_matches_symbolic_expansion():
    rng = random.Random(17)
    for _ in range(150):
        pts = degenerate_heavy_points(rng, 4, rng.choice((1, 2, 3)))
        sign, exp = oracles.orient_sym(pts)
        assert orientation(*pts).value == sign


def test_in_sphere_matches_symbolic_expansion():
    rng = random.Random(18)
    for _ in range(120):
        pts = degenerate_heavy_points(rng, 5, rng.choice((1, 2, 3)))
        assert in_sphere(*pts).value == oracles.insphere_sym(pts[:4], pts[4])


def test_edge_attachment_matches_symbolic_expansion():
    rng = random.Random(19)
    for _ in range(150):
        pts = degenerate_heavy_points(rng, 3, rng.choice((1, 2, 3)))
        assert edge_attached(*pts).value == oracles.edge_attached_sym(*pts)


def test_triangle_attachment_matches_symbolic_expansion():
    rng = random.Random(20)
    checked = 0
    while checked < 120:
        pts = degenerate_heavy_points(rng, 4, rng.choice((2, 3)))
        try:
            got = triangle_attached(*pts).value
        except DegenerateSimplexError:
            continue
        assert got == oracles.triangle_attached_sym(*pts)
        checked += 1


def test_identical_points_still_resolve():
    # total degeneracy: every coefficient of the unperturbed data vanishes
    for labels in ((1, 2, 3, 4, 5), (9, 4, 7, 2, 5)):
        pts = [ExactPoint(i, 1, 1, 1) for i in labels]
        assert orientation(*pts[:4]).value == oracles.orient_sym(pts[:4])[0]
        assert in_sphere(*pts).value == oracles.insphere_sym(pts[:4], pts[4])
        assert edge_attached(*pts[:3]).value == oracles.edge_attached_sym(*pts[:3])


def test_deciding_term_has_minimal_exponent():
    # the engine's reported depth counts schedule groups; the group it
    # stops at must carry the same exponent the full expansion selects
    rng = random.Random(21)
    checked = 0
    while checked < 60:
        pts = degenerate_heavy_points(rng, 4, 1)
        sign, exp = oracles.orient_sym(pts)
        spts = sorted(pts, key=lambda p: p.index)
        keys, by_key = sos.det_groups((1, 2, 3, 0), (0, 1, 2, 3))
        result = orientation(*pts)
        if result.depth == 0:
            assert exp == 0
        else:
            key = keys[result.depth - 1]
            # translate the slot-ranked key to a label-based exponent
            label_exp = 0
            for slot, p in enumerate(spts):
                for off in range(4):
                    if key & (1 << (4 * (slot + 1) - off)):
                        label_exp += 1 << (4 * p.index - off)
            assert label_exp == exp
        checked += 1


def test_smaller_labels_perturb_first():
    # coplanar square: the deciding coefficient perturbs the smallest label
    pts = [
        ExactPoint(1, 0, 0, 0),
        ExactPoint(2, 1, 0, 0),
        ExactPoint(3, 0, 1, 0),
        ExactPoint(4, 1, 1, 0),
    ]
    assert orientation(*pts).depth == 1
    relabeled = [ExactPoint(5 - p.index, p.x, p.y, p.z) for p in pts]
    assert orientation(*relabeled).depth >= 1


def test_walk_schedule_exhaustion():
    with pytest.raises(ScheduleExhaustedError):
        sos.walk_schedule(iter([0, 0]))


def test_group_tables_are_cached_and_sorted():
    keys, by_key = sos.det_groups((1, 2, 3, 4, 0), (0, 1, 2, 3, 4))
    assert list(keys) == sorted(keys)
    assert 0 not in by_key
    again, _ = sos.det_groups((1, 2, 3, 4, 0), (0, 1, 2, 3, 4))
    assert again is keys
