"""Finite-field enumeration: point counts, fibres, and chart-union totals."""

import pytest

from unisvar.errors import BudgetExceededError
from unisvar.enumeration import (
    EnumerationError,
    count_uniserial_subspaces,
    enumerate_points,
    fibres,
)
from unisvar.fields import PrimeField
from unisvar.poly import DetourVar
from unisvar.uniserial import SimpleSequence, masts, variety_equations

from conftest import build_fix_a, build_fix_b, build_fix_c, build_fix_d


def the_mast(sys, vertices, text):
    for mast in masts(sys, SimpleSequence(tuple(vertices))):
        if mast.text() == text:
            return mast
    raise AssertionError(f"no mast {text}")


class TestEnumerate:
    def test_fix_a_line(self):
        sys = build_fix_a(PrimeField(2))
        points = enumerate_points(sys, the_mast(sys, ("1", "2"), "a"))
        assert points == [{}, {DetourVar(1, "b", 0): 1}]

    def test_fix_c_single_point(self):
        for q in (2, 3, 5):
            sys = build_fix_c(PrimeField(q))
            points = enumerate_points(sys, the_mast(sys, ("1", "2", "3"), "b*c"))
            assert points == [{}]

    def test_fix_d_no_variables(self):
        sys = build_fix_d(PrimeField(2))
        points = enumerate_points(sys, the_mast(sys, ("1", "1", "1"), "a*a"))
        assert points == [{}]

    def test_relation_free_counts_are_powers(self):
        for q in (2, 3):
            sys = build_fix_b(PrimeField(q))
            for mast in masts(sys, SimpleSequence(("1", "2", "3"))):
                nvars = len(variety_equations(sys, mast).variables)
                points = enumerate_points(sys, mast)
                assert len(points) == q**nvars

    def test_budget_exceeded(self):
        sys = build_fix_b(PrimeField(3))
        mast = the_mast(sys, ("1", "2", "3"), "c*a")
        with pytest.raises(BudgetExceededError) as info:
            enumerate_points(sys, mast, budget=10)
        assert info.value.size == 27

    def test_rational_field_rejected(self, fix_a):
        with pytest.raises(EnumerationError):
            enumerate_points(fix_a, the_mast(fix_a, ("1", "2"), "a"))

    def test_wrong_modulus_rejected(self):
        sys = build_fix_a(PrimeField(2))
        with pytest.raises(EnumerationError):
            enumerate_points(sys, the_mast(sys, ("1", "2"), "a"), q=3)

    def test_jobs_do_not_change_output(self):
        sys = build_fix_b(PrimeField(3))
        mast = the_mast(sys, ("1", "2", "3"), "c*a")
        solo = enumerate_points(sys, mast, jobs=1)
        multi = enumerate_points(sys, mast, jobs=4)
        assert solo == multi


class TestFibres:
    def test_fix_a_singletons(self):
        sys = build_fix_a(PrimeField(3))
        partition = fibres(sys, the_mast(sys, ("1", "2"), "a"))
        assert partition.sizes() == [1, 1, 1]

    def test_fix_b_singletons(self):
        sys = build_fix_b(PrimeField(2))
        for mast in masts(sys, SimpleSequence(("1", "2", "3"))):
            assert fibres(sys, mast).all_singletons()

    def test_fix_d_single_fibre(self):
        sys = build_fix_d(PrimeField(2))
        partition = fibres(sys, the_mast(sys, ("1", "1", "1"), "a*a"))
        assert partition.sizes() == [1]


class TestFibreConsistency:
    def test_partition_agrees_between_coordinates_and_subspaces(self):
        # Group points by isomorphism of the slice modules, then again by
        # isomorphism of the chart-subspace quotients: same partition.
        from unisvar.grassmann import (
            UniserialQuotient,
            submodule_from_point,
            uniserial_quotient,
        )
        from unisvar.modvar import is_isomorphic

        sys = build_fix_b(PrimeField(2))
        series = SimpleSequence(("1", "2", "3"))
        for mast in masts(sys, series):
            direct = fibres(sys, mast)
            groups = []
            for point in enumerate_points(sys, mast):
                space = submodule_from_point(sys, mast, point, check=False)
                result = uniserial_quotient(sys, mast.source, space, series)
                assert isinstance(result, UniserialQuotient)
                for group in groups:
                    if is_isomorphic(group[0], result.module):
                        group[1].append(point)
                        break
                else:
                    groups.append((result.module, [point]))
            direct_sets = {
                frozenset(tuple(sorted((v.name, x) for v, x in p.items())) for p in f.points)
                for f in direct.fibres
            }
            quotient_sets = {
                frozenset(tuple(sorted((v.name, x) for v, x in p.items())) for p in points)
                for _, points in groups
            }
            assert direct_sets == quotient_sets


class TestChartUnion:
    def test_fix_a_projective_line(self):
        for q in (2, 3, 5):
            sys = build_fix_a(PrimeField(q))
            result = count_uniserial_subspaces(sys, SimpleSequence(("1", "2")))
            assert result.total == q + 1
            assert [size for _, size in result.charts] == [q, q]
            assert result.overlaps == [("a", "b", q - 1)]

    def test_fix_b_multiprojective(self):
        sys = build_fix_b(PrimeField(2))
        result = count_uniserial_subspaces(sys, SimpleSequence(("1", "2", "3")))
        assert result.total == 21
        assert len(result.charts) == 6
        assert all(size == 8 for _, size in result.charts)

    def test_fix_b_product_formula_all_small_primes(self):
        for q in (2, 3, 5):
            sys = build_fix_b(PrimeField(q))
            result = count_uniserial_subspaces(sys, SimpleSequence(("1", "2", "3")))
            assert result.total == (q + 1) * (q * q + q + 1)
            assert all(size == q**3 for _, size in result.charts)

    def test_fix_c_one_point(self):
        for q in (2, 3):
            sys = build_fix_c(PrimeField(q))
            result = count_uniserial_subspaces(sys, SimpleSequence(("1", "2", "3")))
            assert result.total == 1
