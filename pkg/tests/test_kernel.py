"""Kernel predicates and radius computations against independent oracles."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphafamily.errors import (
    DegenerateSimplexError,
    PredicateError,
    ScheduleExhaustedError,
)
from alphafamily.kernel import (
    ExactPoint,
    KernelStats,
    Sign,
    edge_attached,
    in_sphere,
    orientation,
    rho_sq_edge,
    rho_sq_tetrahedron,
    rho_sq_triangle,
    sos_sign,
    triangle_attached,
)

import oracles


def P(i, x, y, z):
    return ExactPoint(i, x, y, z)


coord = st.integers(min_value=-50, max_value=50)


def points_strategy(k):
    return st.lists(
        st.tuples(coord, coord, coord), min_size=k, max_size=k, unique=True
    ).map(lambda cs: [P(i + 1, *c) for i, c in enumerate(cs)])


class TestOrientation:
    def test_basic_negative(self):
        s = orientation(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1))
        assert s == Sign(-1, 0)

    def test_swap_flips(self):
        s = orientation(P(2, 1, 0, 0), P(1, 0, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1))
        assert s == Sign(1, 0)

    def test_coplanar_resolved_at_depth_one(self):
        # the first perturbation coefficient is the minor det[[1,0,1],[0,1,1],[1,1,1]] = -1
        s = orientation(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 0, 1, 0), P(4, 1, 1, 0))
        assert s == Sign(-1, 1)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(PredicateError):
            orientation(P(1, 0, 0, 0), P(1, 1, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1))

    @settings(max_examples=60, deadline=None)
    @given(points_strategy(4))
    def test_antisymmetry(self, pts):
        base = orientation(*pts)
        for i, j in itertools.combinations(range(4), 2):
            swapped = list(pts)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            assert orientation(*swapped).value == -base.value
        # even permutation: two transpositions
        rolled = [pts[1], pts[0], pts[3], pts[2]]
        assert orientation(*rolled).value == base.value

    @settings(max_examples=60, deadline=None)
    @given(points_strategy(4))
    def test_depth_zero_matches_raw_determinant(self, pts):
        from alphafamily.kernel import _orient_raw

        raw = _orient_raw(*pts)
        s = orientation(*pts)
        if raw != 0:
            assert s.depth == 0
            assert s.value == (1 if raw > 0 else -1)
        else:
            assert s.depth >= 1


class TestInSphere:
    def setup_method(self):
        self.sphere = [P(1, 1, 0, 0), P(2, -1, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1)]

    def test_inside(self):
        assert in_sphere(*self.sphere, P(5, 0, 0, 0)) == Sign(1, 0)

    def test_outside(self):
        assert in_sphere(*self.sphere, P(5, 3, 0, 0)) == Sign(-1, 0)

    def test_on_sphere_deterministic(self):
        first = in_sphere(*self.sphere, P(5, 0, -1, 0))
        assert first.depth >= 1
        for _ in range(3):
            again = in_sphere(*self.sphere, P(5, 0, -1, 0))
            assert again == first

    @settings(max_examples=40, deadline=None)
    @given(points_strategy(5))
    def test_permutation_invariance(self, pts):
        base = in_sphere(*pts)
        for perm in itertools.permutations(pts[:4]):
            assert in_sphere(*perm, pts[4]).value == base.value

    @settings(max_examples=40, deadline=None)
    @given(points_strategy(5), st.integers(min_value=1, max_value=7))
    def test_scale_covariance_of_sign(self, pts, s):
        base = in_sphere(*pts)
        scaled = [P(p.index, p.x * s, p.y * s, p.z * s) for p in pts]
        if base.depth == 0:
            assert in_sphere(*scaled).value == base.value


class TestRadii:
    def test_edge_examples(self):
        assert rho_sq_edge(P(1, 0, 0, 0), P(2, 2, 0, 0)) == 1
        assert rho_sq_edge(P(1, 0, 0, 0), P(2, 6, 0, 0)) == 9
        assert rho_sq_edge(P(1, 1, 4, 0), P(2, 2, 1, 7)) == Fraction(59, 4)

    def test_triangle_examples(self):
        assert rho_sq_triangle(P(1, 0, 0, 0), P(2, 6, 0, 0), P(3, 1, 4, 0)) == Fraction(697, 64)
        assert rho_sq_triangle(P(1, 0, 0, 0), P(2, 2, 0, 0), P(3, 1, 1, 0)) == 1
        assert rho_sq_triangle(P(1, 0, 0, 0), P(2, 6, 0, 0), P(3, 2, 1, 7)) == Fraction(891, 50)

    def test_tetrahedron_examples(self):
        assert rho_sq_tetrahedron(P(1, 1, 0, 0), P(2, -1, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1)) == 1
        assert rho_sq_tetrahedron(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1)) == Fraction(3, 4)
        assert rho_sq_tetrahedron(P(1, 0, 0, 0), P(2, 6, 0, 0), P(3, 1, 4, 0), P(4, 2, 1, 7)) == Fraction(29401, 1568)

    def test_collinear_triangle_raises(self):
        with pytest.raises(DegenerateSimplexError):
            rho_sq_triangle(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 2, 0, 0))

    def test_coplanar_tetrahedron_raises(self):
        with pytest.raises(DegenerateSimplexError):
            rho_sq_tetrahedron(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 0, 1, 0), P(4, 1, 1, 0))

    def test_oracle_agreement_bulk(self):
        # quarter squared length / squared-product over area / linear solve
        rng = random.Random(11)
        for _ in range(1000):
            pts = oracles.random_points(rng, 4, span=30)
            a, b, c, d = pts
            assert rho_sq_edge(a, b) == oracles.rho_sq_oracle([a.coords, b.coords])
            try:
                got = rho_sq_triangle(a, b, c)
            except DegenerateSimplexError:
                continue
            assert got == oracles.rho_sq_oracle([a.coords, b.coords, c.coords])
            try:
                got = rho_sq_tetrahedron(a, b, c, d)
            except DegenerateSimplexError:
                continue
            assert got == oracles.rho_sq_oracle([p.coords for p in pts])

    @settings(max_examples=40, deadline=None)
    @given(points_strategy(4), st.integers(min_value=1, max_value=9))
    def test_scale_covariance(self, pts, s):
        a, b, c, d = pts
        scaled = [P(p.index, p.x * s, p.y * s, p.z * s) for p in pts]
        assert rho_sq_edge(*scaled[:2]) == s * s * rho_sq_edge(a, b)
        try:
            base = rho_sq_tetrahedron(a, b, c, d)
        except DegenerateSimplexError:
            return
        assert rho_sq_tetrahedron(*scaled) == s * s * base


class TestAttachment:
    def test_edge_examples(self):
        e1, e2 = P(1, 0, 0, 0), P(2, 4, 0, 0)
        assert edge_attached(e1, e2, P(3, 2, 1, 0)).positive
        assert edge_attached(e1, e2, P(3, 7, 0, 0)).negative
        tied = edge_attached(e1, e2, P(3, 2, 2, 0))
        assert tied.depth >= 1
        assert edge_attached(e1, e2, P(3, 2, 2, 0)) == tied

    def test_triangle_examples(self):
        assert triangle_attached(
            P(1, 0, 0, 0), P(2, 6, 0, 0), P(3, 2, 1, 7), P(4, 1, 4, 0)
        ).negative
        assert triangle_attached(
            P(1, 0, 0, 0), P(2, 2, 0, 0), P(3, 1, 1, 0), P(4, 1, 0, 0)
        ).positive
        assert triangle_attached(
            P(1, 0, 0, 0), P(2, 2, 0, 0), P(3, 1, 1, 0), P(4, 0, 0, 9)
        ).negative

    def test_collinear_base_raises(self):
        with pytest.raises(DegenerateSimplexError):
            triangle_attached(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 2, 0, 0), P(4, 0, 1, 0))

    def test_strict_distance_oracle_agreement(self):
        rng = random.Random(5)
        checked = 0
        while checked < 400:
            pts = oracles.random_points(rng, 4, span=40)
            a, b, c, d = pts
            ball = [a.coords, b.coords]
            strict = oracles.in_open_ball(ball, c.coords)
            on_boundary = (
                oracles.rho_sq_oracle(ball)
                == sum(
                    (x - y) ** 2
                    for x, y in zip(oracles.circumcenter(ball), c.coords)
                )
            )
            if not on_boundary:
                assert edge_attached(a, b, c).positive == strict
                checked += 1
            try:
                tri = [a.coords, b.coords, c.coords]
                strict = oracles.in_open_ball(tri, d.coords)
                center = oracles.circumcenter(tri)
                on_boundary = oracles.rho_sq_oracle(tri) == sum(
                    (x - y) ** 2 for x, y in zip(center, d.coords)
                )
                if not on_boundary:
                    assert triangle_attached(a, b, c, d).positive == strict
            except DegenerateSimplexError:
                pass

    @settings(max_examples=40, deadline=None)
    @given(points_strategy(4))
    def test_triangle_symmetric_in_base(self, pts):
        a, b, c, d = pts
        try:
            base = triangle_attached(a, b, c, d)
        except DegenerateSimplexError:
            return
        for perm in itertools.permutations((a, b, c)):
            assert triangle_attached(*perm, d).value == base.value


class TestSosSign:
    def test_first_nonzero(self):
        assert sos_sign([5, 1, 1]) == Sign(1, 0)

    def test_skips_zeros(self):
        assert sos_sign([0, 0, -2, 1]) == Sign(-1, 2)

    def test_constant_tail(self):
        assert sos_sign([0, 0, 0, 1]) == Sign(1, 3)

    def test_callables_are_lazy(self):
        calls = []

        def coeff(v):
            def f():
                calls.append(v)
                return v

            return f

        assert sos_sign([coeff(0), coeff(7), coeff(9)]) == Sign(1, 1)
        assert calls == [0, 7]

    def test_exhaustion_is_an_error(self):
        with pytest.raises(ScheduleExhaustedError):
            sos_sign([0, 0, 0])


class TestStats:
    def test_counters_accumulate(self):
        stats = KernelStats()
        pts = [P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1), P(5, 2, 2, 2)]
        orientation(*pts[:4], stats)
        in_sphere(*pts, stats)
        rho_sq_edge(pts[0], pts[1], stats)
        assert stats.orientation_calls == 1
        assert stats.in_sphere_calls == 1
        assert stats.rho_edge_calls == 1
        assert stats.depth_histogram.get(0) == 2
        assert stats.muls > 0

    def test_merge(self):
        a, b = KernelStats(), KernelStats()
        orientation(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 0, 1, 0), P(4, 0, 0, 1), a)
        orientation(P(1, 0, 0, 0), P(2, 1, 0, 0), P(3, 0, 1, 0), P(4, 1, 1, 0), b)
        a.merge(b)
        assert a.orientation_calls == 2
        assert a.depth_histogram == {0: 1, 1: 1}
