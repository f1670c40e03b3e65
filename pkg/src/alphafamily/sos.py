"""Symbolic-perturbation sign resolution for the geometric predicates.

Each input coordinate is treated as shifted by a symbolic amount
``e(i, j)`` (point label ``i``, axis ``j``) with magnitudes

    e(i, j) = eps ** (2 ** (4*i - j))

for an arbitrarily small positive ``eps``.  Smaller labels get far larger
shifts.  A predicate polynomial evaluated at the shifted coordinates is a
finite sum ``c_m * eps^(E_m)``; the term with the smallest exponent whose
integer coefficient does not vanish decides the sign, and the number of
vanishing terms examined before it is the *depth* of the evaluation.

Exponent bookkeeping is exact.  ``E_m`` is a sum of powers of two, stored
as a Python int; integer comparison reproduces the symbolic magnitude
order.  Slot ranks (0-based position of a point in the label-sorted
argument list) stand in for raw labels: each slot owns a disjoint window
of four bit positions and within-window sums never carry across windows,
so rank-keyed exponents order exactly like label-keyed ones.  This keeps
the term schedules cacheable per predicate shape instead of per call.

Matrix rows are expanded multilinearly: a row either stays unperturbed,
or is replaced by the coefficient vector of one shift factor.  Column ids
are 1..3 for the coordinate axes, 4 for the cached square-sum coordinate
(whose perturbation is induced by the axis shifts: ``2*coord*e`` linear
terms plus ``e^2`` terms), and 0 for the constant-one column.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import ScheduleExhaustedError

# A row variant is None (unperturbed) or a pair (kind, axis) where kind is
# "p" for a linear shift factor e(i, axis) and "q" for a squared factor
# e(i, axis)^2 (the latter only arises through column 4).


def walk_schedule(schedule):
    """Evaluate coefficients in schedule order; return (sign, depth).

    ``schedule`` yields ints or zero-argument callables returning ints.
    The first nonvanishing coefficient decides; its position is the depth.
    """
    depth = 0
    for term in schedule:
        value = term() if callable(term) else term
        if value:
            return (1 if value > 0 else -1), depth
        depth += 1
    raise ScheduleExhaustedError(
        "perturbation schedule exhausted with all coefficients zero"
    )


def permutation_sign(order):
    """Parity of the permutation that produced ``order`` (list of ranks)."""
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def _coord(pt, j):
    if j == 1:
        return pt.x
    if j == 2:
        return pt.y
    return pt.z


def _entry(pt, c):
    if c == 0:
        return 1
    if c == 4:
        return pt.lifted
    return _coord(pt, c)


def _variant_row(pt, cols, variant):
    if variant is None:
        return [_entry(pt, c) for c in cols]
    kind, j = variant
    if kind == "p":
        return [
            1 if c == j else (2 * _coord(pt, j) if c == 4 else 0) for c in cols
        ]
    return [1 if c == 4 else 0 for c in cols]


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = 0
    top = rows[0]
    rest = rows[1:]
    for col, a in enumerate(top):
        if a:
            minor = [r[:col] + r[col + 1 :] for r in rest]
            sub = _det(minor)
            total += a * sub if col % 2 == 0 else -a * sub
    return total


def _row_variants(cols):
    """Variants available for one row, grouped by exponent offset.

    Offset ``o`` means the factor's exponent bit sits at ``4*(slot+1) - o``.
    A linear factor on axis j has offset j; a squared factor has offset
    j - 1 (doubling a power of two shifts its bit up by one).
    """
    lifted = 4 in cols
    by_offset = {}
    for j in (1, 2, 3):
        if j in cols or lifted:
            by_offset.setdefault(j, []).append(("p", j))
        if lifted:
            by_offset.setdefault(j - 1, []).append(("q", j))
    return {o: tuple(v) for o, v in sorted(by_offset.items())}


def _structural_zero(cols, combo):
    """True when the substituted matrix is singular for every input.

    Two rows reduced to (multiples of) the same unit column vector force a
    zero determinant no matter what the coordinates are.
    """
    lifted = 4 in cols
    dirs = []
    for variant in combo:
        if variant is None:
            continue
        kind, j = variant
        if kind == "q":
            dirs.append(4)
        elif j in cols:
            if not lifted:
                dirs.append(j)  # a pure unit column
        else:
            dirs.append(4)  # 2*coord in column 4 only
    return len(dirs) != len(set(dirs))


@lru_cache(maxsize=None)
def det_groups(cols, slots):
    """Term schedule of a perturbed determinant, excluding the lead term.

    ``cols`` are the column ids, ``slots`` the 0-based global slot rank of
    each row.  Returns (sorted_keys, {key: (combo, ...)}) where a key is
    the exact exponent integer and each combo assigns a variant per row.
    """
    nrows = len(slots)
    variants = _row_variants(cols)
    offsets = [None] + sorted(variants)
    groups = {}
    for selection in itertools.product(offsets, repeat=nrows):
        if all(o is None for o in selection):
            continue
        key = 0
        choice_lists = []
        for slot, off in zip(slots, selection):
            if off is None:
                choice_lists.append((None,))
            else:
                key += 1 << (4 * (slot + 1) - off)
                choice_lists.append(variants[off])
        combos = [
            combo
            for combo in itertools.product(*choice_lists)
            if not _structural_zero(cols, combo)
        ]
        if combos:
            groups.setdefault(key, []).extend(combos)
    by_key = {k: tuple(v) for k, v in groups.items()}
    return tuple(sorted(by_key)), by_key


def _group_coefficient(points, cols, combos, stats=None):
    total = 0
    for combo in combos:
        rows = [_variant_row(p, cols, v) for p, v in zip(points, combo)]
        total += _det(rows)
    if stats is not None:
        stats.count_det(len(points), len(combos))
    return total


def perturbed_det_sign(points, cols, raw, stats=None):
    """Sign and depth of a perturbed determinant.

    ``points`` are the matrix rows in caller order; ``raw`` must be the
    exact unperturbed determinant for that order.
    """
    order = sorted(range(len(points)), key=lambda r: points[r].index)
    parity = permutation_sign(order)
    spts = [points[r] for r in order]

    def schedule():
        yield raw * parity
        keys, by_key = det_groups(cols, tuple(range(len(points))))
        for key in keys:
            combos = by_key[key]
            yield lambda c=combos: _group_coefficient(spts, cols, c, stats)

    sign, depth = walk_schedule(schedule())
    return sign * parity, depth


# --- products of determinants (the diametral-ball membership tests) -----

# Term lists describe a polynomial as sum of mult * detA * detB.  Support
# schedules enumerate the exponent keys of the product polynomial in
# magnitude order; a key's coefficient convolves the factor coefficients.


@lru_cache(maxsize=None)
def _product_schedule(specs, terms):
    """specs: tuple of (cols, slots); terms: tuple of (mult, a_id, b_id).

    Returns (sorted_keys, {key: ((mult, a_id, a_key, b_id, b_key), ...)}).
    """
    tables = [det_groups(cols, slots) for cols, slots in specs]
    support = {}
    for mult, a_id, b_id in terms:
        a_keys = (0,) + tables[a_id][0]
        b_keys = (0,) + tables[b_id][0]
        for ka in a_keys:
            for kb in b_keys:
                key = ka + kb
                if key == 0:
                    continue
                support.setdefault(key, []).append((mult, a_id, ka, b_id, kb))
    by_key = {k: tuple(v) for k, v in support.items()}
    return tuple(sorted(by_key)), by_key


def product_sign(points_sorted, specs, terms, raw, stats=None):
    """Sign and depth of ``sum mult * detA * detB`` over perturbed points.

    ``points_sorted`` must already be in ascending label order; slot ids in
    ``specs`` index into it.  ``raw`` is the exact unperturbed value.
    """
    tables = [det_groups(cols, slots) for cols, slots in specs]
    caches = [dict() for _ in specs]

    def coefficient(det_id, key):
        cache = caches[det_id]
        if key in cache:
            return cache[key]
        cols, slots = specs[det_id]
        pts = [points_sorted[s] for s in slots]
        if key == 0:
            value = _det([_variant_row(p, cols, None) for p in pts])
            if stats is not None:
                stats.count_det(len(pts), 1)
        else:
            value = _group_coefficient(pts, cols, tables[det_id][1][key], stats)
        cache[key] = value
        return value

    def schedule():
        yield raw
        keys, by_key = _product_schedule(specs, terms)
        for key in keys:
            entries = by_key[key]
            yield lambda es=entries: sum(
                mult * coefficient(a, ka) * coefficient(b, kb)
                for mult, a, ka, b, kb in es
            )

    return walk_schedule(schedule())
