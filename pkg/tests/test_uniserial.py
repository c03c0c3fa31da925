"""Masts, detours, routes, the special basis, symbolic route reduction, and
the variety equations, against the hand-derived fixture values."""

import pytest

from unisvar.fields import QQ
from unisvar.poly import DetourVar, MultiPoly
from unisvar.uniserial import (
    Detour,
    SimpleSequence,
    UniserialError,
    classify_route,
    detours,
    evaluate_point,
    masts,
    reduce_route_symbolic,
    special_basis,
    variety_equations,
)

from conftest import FIXTURES


def the_mast(sys, vertices, text):
    for mast in masts(sys, SimpleSequence(tuple(vertices))):
        if mast.text() == text:
            return mast
    raise AssertionError(f"no mast {text}")


class TestMasts:
    def test_fix_a(self, fix_a):
        found = masts(fix_a, SimpleSequence(("1", "2")))
        assert [m.text() for m in found] == ["a", "b"]

    def test_fix_c_excludes_ideal(self, fix_c):
        found = masts(fix_c, SimpleSequence(("1", "2", "3")))
        assert [m.text() for m in found] == ["b*c"]

    def test_fix_a_no_backwards(self, fix_a):
        assert masts(fix_a, SimpleSequence(("2", "1"))) == []

    def test_relation_free_count_is_arrow_product(self, fix_b):
        found = masts(fix_b, SimpleSequence(("1", "2", "3")))
        assert len(found) == 2 * 3
        assert [m.text() for m in found] == [
            "c*a", "d*a", "e*a", "c*b", "d*b", "e*b",
        ]


class TestDetours:
    def test_fix_a(self, fix_a):
        mast = the_mast(fix_a, ("1", "2"), "a")
        assert detours(fix_a, mast) == [Detour("b", 0, (1,))]

    def test_fix_c(self, fix_c):
        mast = the_mast(fix_c, ("1", "2", "3"), "b*c")
        assert detours(fix_c, mast) == [Detour("a", 0, (1,))]

    def test_fix_d_loop_has_none(self, fix_d):
        mast = the_mast(fix_d, ("1", "1", "1"), "a*a")
        assert detours(fix_d, mast) == []

    def test_fix_b_mast_ca(self, fix_b):
        mast = the_mast(fix_b, ("1", "2", "3"), "c*a")
        assert detours(fix_b, mast) == [
            Detour("b", 0, (1,)),
            Detour("d", 1, (2,)),
            Detour("e", 1, (2,)),
        ]

    def test_index_targets_match(self):
        for build in FIXTURES.values():
            sys = build()
            for series in all_series(sys):
                for mast in masts(sys, series):
                    for detour in mast.detours:
                        arrow = sys.quiver.arrow(detour.arrow)
                        for s in detour.indices:
                            assert s > detour.position
                            assert mast.subpaths[s].target == arrow.target


from conftest import all_series  # noqa: E402


class TestRoutes:
    def test_fix_c_a_is_route(self, fix_c):
        mast = the_mast(fix_c, ("1", "2", "3"), "b*c")
        assert classify_route(mast, fix_c.quiver.path(("a",)))

    def test_fix_e_cycle_is_not(self, fix_e):
        mast = the_mast(fix_e, ("1", "2"), "a")
        back = fix_e.quiver.path(("a", "b"))
        assert not classify_route(mast, back)

    def test_trivial_path_is_route(self, fix_a):
        mast = the_mast(fix_a, ("1", "2"), "a")
        assert classify_route(mast, fix_a.quiver.trivial_path("1"))

    def test_source_mismatch(self, fix_c):
        mast = the_mast(fix_c, ("1", "2", "3"), "b*c")
        with pytest.raises(UniserialError):
            classify_route(mast, fix_c.quiver.path(("b",)))


class TestSpecialBasis:
    def test_fix_a(self, fix_a):
        basis = special_basis(fix_a, the_mast(fix_a, ("1", "2"), "a"))
        assert basis.size == 1 and basis.m1 == 1
        assert basis.entries[0].label.text() == "b"
        assert basis.entries[0].stage == 1

    def test_fix_d_empty(self, fix_d):
        basis = special_basis(fix_d, the_mast(fix_d, ("1", "1", "1"), "a*a"))
        assert basis.size == 0

    def test_fix_c(self, fix_c):
        basis = special_basis(fix_c, the_mast(fix_c, ("1", "2", "3"), "b*c"))
        assert basis.size == 1 and basis.m1 == 1
        assert basis.entries[0].label.text() == "a"

    def test_fix_b_length_maximality(self, fix_b):
        basis = special_basis(fix_b, the_mast(fix_b, ("1", "2", "3"), "c*a"))
        labels = [entry.label.text() for entry in basis.entries]
        # Longest detour subpaths first, then the short product, then routes.
        assert labels == ["d*a", "e*a", "b", "c*b", "d*b", "e*b"]
        assert basis.m1 == 3 and basis.m2 == 3 and basis.size == 6


class TestRouteReduction:
    def test_fix_a_detour_route(self, fix_a):
        mast = the_mast(fix_a, ("1", "2"), "a")
        polys = reduce_route_symbolic(fix_a, mast, fix_a.quiver.path(("b",)))
        assert polys[0].is_zero()
        assert polys[1] == MultiPoly.variable(QQ, DetourVar(1, "b", 0))

    def test_fix_c(self, fix_c):
        mast = the_mast(fix_c, ("1", "2", "3"), "b*c")
        polys = reduce_route_symbolic(fix_c, mast, fix_c.quiver.path(("a",)))
        assert [p.is_zero() for p in polys] == [True, False, True]
        assert polys[1] == MultiPoly.variable(QQ, DetourVar(1, "a", 0))

    def test_mast_itself(self, fix_d):
        mast = the_mast(fix_d, ("1", "1", "1"), "a*a")
        polys = reduce_route_symbolic(fix_d, mast, mast.path)
        assert [p.is_zero() for p in polys] == [True, True, False]
        assert polys[2] == MultiPoly.constant(QQ, QQ.one)

    def test_ideal_path_reduces_to_zero_vector(self, fix_e):
        mast = the_mast(fix_e, ("1", "2"), "a")
        # a*b*a has the right endpoints but lies in the ideal at N=2.
        word = fix_e.quiver.path(("a", "b", "a"))
        polys = reduce_route_symbolic(fix_e, mast, word)
        assert all(p.is_zero() for p in polys)

    def test_non_route_rejected(self):
        from unisvar.quiver import Quiver
        from unisvar.rewriting import ReductionSystem

        quiver = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "1", "3")])
        sys = ReductionSystem(quiver, [], 2, QQ)
        mast = the_mast(sys, ("1", "2"), "a")
        with pytest.raises(UniserialError):
            reduce_route_symbolic(sys, mast, quiver.path(("b",)))


class TestVarietyEquations:
    def test_fix_a_affine_line(self, fix_a):
        system = variety_equations(fix_a, the_mast(fix_a, ("1", "2"), "a"))
        assert [v.name for v in system.variables] == ["k[1;b;0]"]
        assert system.polynomials == ()

    def test_fix_c_single_equation(self, fix_c):
        system = variety_equations(fix_c, the_mast(fix_c, ("1", "2", "3"), "b*c"))
        assert [v.name for v in system.variables] == ["k[1;a;0]"]
        assert list(system.polynomials) == [
            MultiPoly.variable(QQ, DetourVar(1, "a", 0))
        ]

    def test_fix_d_one_point(self, fix_d):
        system = variety_equations(fix_d, the_mast(fix_d, ("1", "1", "1"), "a*a"))
        assert system.variables == ()
        assert system.polynomials == ()

    def test_evaluate_point(self, fix_c):
        system = variety_equations(fix_c, the_mast(fix_c, ("1", "2", "3"), "b*c"))
        var = DetourVar(1, "a", 0)
        assert evaluate_point(system, {var: QQ.zero})
        assert not evaluate_point(system, {var: QQ.one})
        assert evaluate_point(system, {})

    def test_unknown_variable_rejected(self, fix_c):
        system = variety_equations(fix_c, the_mast(fix_c, ("1", "2", "3"), "b*c"))
        with pytest.raises(UniserialError):
            evaluate_point(system, {DetourVar(9, "a", 0): QQ.zero})


class TestCurvedVariety:
    """The two-term relation b*a = d*c gives the hyperbola k k' = 1."""

    def test_all_four_masts_survive(self, fix_f):
        found = masts(fix_f, SimpleSequence(("1", "2", "3")))
        assert [m.text() for m in found] == ["b*a", "d*a", "b*c", "d*c"]

    def test_hyperbola_equation(self, fix_f):
        mast = the_mast(fix_f, ("1", "2", "3"), "b*a")
        system = variety_equations(fix_f, mast)
        assert [v.name for v in system.variables] == ["k[1;c;0]", "k[2;d;1]"]
        (poly,) = system.polynomials
        product = MultiPoly.variable(QQ, DetourVar(1, "c", 0)) * MultiPoly.variable(
            QQ, DetourVar(2, "d", 1)
        )
        one = MultiPoly.constant(QQ, QQ.one)
        assert poly in (product - one, one - product)

    def test_points_satisfy_iff_product_is_one(self, fix_f):
        mast = the_mast(fix_f, ("1", "2", "3"), "b*a")
        system = variety_equations(fix_f, mast)
        k1, k2 = system.variables
        assert evaluate_point(system, {k1: QQ.from_int(2), k2: QQ.parse("1/2")})
        assert not evaluate_point(system, {k1: QQ.one, k2: QQ.from_int(2)})
        assert not evaluate_point(system, {})

    def test_equations_agree_with_relation_checking(self):
        # Evaluating the system at k agrees with evaluating the relations
        # on the slice module of k, over the whole coefficient cube.
        import itertools

        from unisvar.fields import PrimeField
        from unisvar.modvar import module_from_point, satisfies_relations
        from conftest import build_fix_f

        sys = build_fix_f(PrimeField(3))
        mast = the_mast(sys, ("1", "2", "3"), "b*a")
        system = variety_equations(sys, mast)
        variables = system.variables
        hits = 0
        for values in itertools.product(range(3), repeat=len(variables)):
            point = {
                var: value for var, value in zip(variables, values) if value
            }
            direct = satisfies_relations(
                sys, module_from_point(sys, mast, point)
            )
            assert evaluate_point(system, point) == direct
            hits += direct
        assert hits == 2  # (1,1) and (2,2) solve k k' = 1 over GF(3)

    def test_reducible_mast_reduction(self, fix_f):
        # The mast d*c is a reducible path with nonzero normal form; the
        # route b*a reduces over it with polynomial weight k[1;a;0]k[2;b;1].
        mast = the_mast(fix_f, ("1", "2", "3"), "d*c")
        polys = reduce_route_symbolic(fix_f, mast, fix_f.quiver.path(("a", "b")))
        assert polys[0].is_zero() and polys[1].is_zero()
        expected = MultiPoly.variable(QQ, DetourVar(1, "a", 0)) * MultiPoly.variable(
            QQ, DetourVar(2, "b", 1)
        )
        assert polys[2] == expected
