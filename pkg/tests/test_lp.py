import random
from dataclasses import replace
from fractions import Fraction

import pytest

from helpers import brute_force_lp, ex1, ints
from polyset.lp import LinearProgram, Status, certify, is_feasible_system, lp_solve, lp_solve_objectives
from polyset.setopt import build_lp


def test_ex1_lp_at_origin_is_optimal_with_value_zero():
    lp = build_lp(ex1(), (0, 0))
    out = lp_solve(lp)
    assert out.status is Status.OPTIMAL
    assert out.value == 0
    assert certify(lp, out)


def test_unbounded_ray():
    lp = LinearProgram(c=(-1,), G=((1,),), h=(0,))
    out = lp_solve(lp)
    assert out.status is Status.UNBOUNDED
    assert out.ray[0] > 0
    assert certify(lp, out)


def test_infeasible_farkas_certificate():
    lp = LinearProgram(c=(0,), G=((1,), (-1,)), h=(1, 0))
    out = lp_solve(lp)
    assert out.status is Status.INFEASIBLE
    assert out.duals == (1, 1)
    assert certify(lp, out)


def test_tampered_value_rejected():
    lp = LinearProgram(c=(1, 1), G=((1, 0), (0, 1)), h=(1, 2))
    out = lp_solve(lp)
    assert out.value == 3 and certify(lp, out)
    assert not certify(lp, replace(out, value=out.value + 1))


def test_tampered_dual_sign_rejected():
    lp = LinearProgram(c=(1, 1), G=((1, 0), (0, 1)), h=(1, 2))
    out = lp_solve(lp)
    flipped = tuple(-d for d in out.duals)
    assert not certify(lp, replace(out, duals=flipped))


def test_tampered_ray_rejected():
    lp = LinearProgram(c=(-1,), G=((1,),), h=(0,))
    out = lp_solve(lp)
    assert not certify(lp, replace(out, ray=(-out.ray[0],)))


def test_equalities_and_bounds():
    # min x + 2y  s.t. x + y = 3, x <= 2, x, y >= 0
    lp = LinearProgram(c=(1, 2), G=((-1, 0),), h=(-2,), E=((1, 1),), f=(3,), nonneg={0, 1})
    out = lp_solve(lp)
    assert out.status is Status.OPTIMAL
    assert out.x == (2, 1) and out.value == 4
    assert certify(lp, out)


def test_no_constraints():
    assert lp_solve(LinearProgram(c=(0, 0))).status is Status.OPTIMAL
    assert lp_solve(LinearProgram(c=(0, 1))).status is Status.UNBOUNDED


def test_exact_rational_optimum():
    lp = LinearProgram(c=(1, 1), G=((3, 1), (1, 3)), h=(1, 1))
    out = lp_solve(lp)
    assert out.value == Fraction(1, 2)
    assert out.x == (Fraction(1, 4), Fraction(1, 4))


def test_degenerate_vertex_terminates():
    # many constraints tight at the origin; Bland's rule must not cycle
    G = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1), (-1, -1, -1))
    lp = LinearProgram(c=(1, 2, 3), G=G, h=(0,) * 7 + (-5,))
    out = lp_solve(lp)
    assert out.status is Status.OPTIMAL and out.value == 0
    assert certify(lp, out)


def test_multi_objective_warm_start_matches_single_solves():
    rng = random.Random(11)
    G = tuple(ints(rng, 3) for _ in range(6)) + ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    h = ints(rng, 6) + (-3, -3, -3)
    G += ((-1, 0, 0), (0, -1, 0), (0, 0, -1))
    h += (-3, -3, -3)
    base = LinearProgram(c=(0, 0, 0), G=G, h=h)
    objs = [ints(rng, 3) for _ in range(5)]
    for obj, out in zip(objs, lp_solve_objectives(base, objs)):
        single = lp_solve(replace(base, c=obj))
        assert out.status is single.status
        assert out.value == single.value


def test_is_feasible_system():
    assert is_feasible_system(((1,),), (0,), 1)
    assert not is_feasible_system(((1,), (-1,)), (1, 0), 1)


@pytest.mark.parametrize("seed", range(4))
def test_agrees_with_basic_solution_enumeration(seed):
    rng = random.Random(seed)
    for _ in range(40):
        n = rng.randint(1, 4)
        k = rng.randint(0, 6)
        lp = LinearProgram(c=ints(rng, n), G=tuple(ints(rng, n) for _ in range(k)), h=ints(rng, k))
        out = lp_solve(lp)
        status, value = brute_force_lp(lp)
        assert out.status is status
        if status is Status.OPTIMAL:
            assert out.value == value
        assert certify(lp, out)


@pytest.mark.parametrize("seed", range(3))
def test_equalities_and_sign_bounds_certify(seed):
    # artificial rows that stay basic at zero level force the cleanup pivots
    rng = random.Random(50 + seed)
    seen = set()
    for _ in range(40):
        n = rng.randint(1, 5)
        k, e = rng.randint(0, 4), rng.randint(1, 3)
        lp = LinearProgram(
            c=ints(rng, n),
            G=tuple(ints(rng, n) for _ in range(k)), h=ints(rng, k),
            E=tuple(ints(rng, n) for _ in range(e)), f=ints(rng, e),
            nonneg={j for j in range(n) if rng.random() < 0.5},
        )
        out = lp_solve(lp)
        seen.add(out.status)
        assert certify(lp, out)
    assert len(seen) == 3


def test_fully_degenerate_homogeneous_lp():
    # every vertex is the origin; the lexicographic ratio test must still terminate quickly
    rng = random.Random(99)
    G = tuple(ints(rng, 6) for _ in range(40))
    lp = LinearProgram(c=ints(rng, 6), G=G, h=(0,) * 40)
    out = lp_solve(lp)
    assert out.status in (Status.OPTIMAL, Status.UNBOUNDED)
    assert certify(lp, out)
