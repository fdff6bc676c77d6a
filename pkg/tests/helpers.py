"""Seeded generators of small random instances shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from polyset.exact import nullspace, rank, solve_square
from polyset.lp import LinearProgram, Status
from polyset.polyhedra import Cone, HRep
from polyset.setopt import Problem, from_graph, is_bounded, is_feasible
from polyset.vlp import VlpProblem

EX1 = dict(A=[[1], [-1], [1]], B=[[1, 0], [0, 1], [0, 0]], b=[0, 0, 0])
EX5 = dict(A=[[1], [0], [0], [1]], B=[[0, 0], [1, 0], [1, 2], [0, 1]], b=[0, 0, 0, 0])


def ex1() -> Problem:
    return Problem(**EX1, C=Cone.orthant(2))


def ex5() -> Problem:
    return Problem(**EX5, C=Cone.orthant(2))


def ints(rng: random.Random, k: int, lo: int = -3, hi: int = 3) -> tuple:
    return tuple(rng.randint(lo, hi) for _ in range(k))


def random_cone(rng: random.Random, q: int) -> Cone:
    kind = rng.random()
    if kind < 0.45:
        return Cone.orthant(q)
    if kind < 0.55:
        return Cone.zero(q)
    gens = [ints(rng, q, -2, 2) for _ in range(rng.randint(1, q + 1))]
    gens = [g for g in gens if any(g)] or [tuple(1 for _ in range(q))]
    return Cone(tuple(gens), q)


def dual_row(rng: random.Random, C: Cone) -> tuple:
    """A random integer row ``B_i`` in [-3, 3]^q with ``B_i c >= 0`` on the generators of ``C``."""
    q = C.dim
    while True:
        row = ints(rng, q)
        if all(sum(a * g for a, g in zip(row, gen)) >= 0 for gen in C.generators):
            return row


def random_problem(rng: random.Random, max_n: int = 3, max_q: int = 3, max_m: int = 6,
                   cone: Cone | None = None, absorb: bool = False) -> Problem:
    """A feasible problem with integer data in [-3, 3] and at most ``max_m`` rows.

    By default the rows of ``B`` are drawn from the dual of ``C`` so the data
    is invariant under ``C`` as given.  With ``absorb=True`` arbitrary data is
    drawn and ``C`` is absorbed by projection, which may add rows.
    """
    while True:
        n, q = rng.randint(1, max_n), rng.randint(1, max_q)
        m = rng.randint(1, max_m)
        C = cone if cone is not None and cone.dim == q else random_cone(rng, q)
        A = [ints(rng, n) for _ in range(m)]
        b = ints(rng, m)
        if absorb:
            B = [ints(rng, q) for _ in range(m)]
            p = from_graph(A, B, b, C, n=n)
        else:
            B = [dual_row(rng, C) for _ in range(m)]
            p = Problem(A, B, b, C, n=n)
        if is_feasible(p):
            return p


def random_bounded_problem(rng: random.Random) -> Problem:
    """Feasible and bounded: x lives in a box and every image is pushed above an affine floor."""
    while True:
        n, q = rng.randint(1, 3), rng.randint(1, 3)
        C = Cone.orthant(q) if rng.random() < 0.7 else random_cone(rng, q)
        A, B, b = [], [], []
        for j in range(n):
            e = tuple(1 if i == j else 0 for i in range(n))
            A += [e, tuple(-v for v in e)]
            B += [(0,) * q, (0,) * q]
            b += [-rng.randint(0, 3), -rng.randint(0, 3)]
        for i in range(q):
            e = tuple(1 if k == i else 0 for k in range(q))
            A.append(ints(rng, n))
            B.append(e)
            b.append(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 3)):
            A.append(ints(rng, n))
            B.append(ints(rng, q))
            b.append(rng.randint(-3, 3))
        p = from_graph(A, B, b, C, n=n)
        if is_feasible(p) and is_bounded(p):
            return p


def random_vlp(rng: random.Random) -> VlpProblem:
    n, q = rng.randint(1, 3), rng.randint(1, 3)
    m = rng.randint(0, 4)
    C = random_cone(rng, q)
    M = [ints(rng, n) for _ in range(q)]
    A = [ints(rng, n) for _ in range(m)]
    b = ints(rng, m)
    return VlpProblem(M, A, b, C, n=n)


def random_hrep(rng: random.Random, dim: int | None = None, rows: int | None = None) -> HRep:
    d = dim or rng.randint(1, 3)
    k = rows if rows is not None else rng.randint(0, 6)
    return HRep(tuple(ints(rng, d) for _ in range(k)), ints(rng, k), d)


def brute_force_lp(lp: LinearProgram):
    """Enumerate basic solutions of ``min c.z, G z >= h`` (free variables, no equalities).

    Returns ``(status, value)``.  A rank-deficient ``G`` is first pinned to its
    row space, which preserves feasibility.  For a pointed feasible system the
    LP is unbounded iff an extreme ray of ``{d : G d >= 0}`` improves ``c``.
    """
    n = lp.nvars
    G, h, c = list(lp.G), list(lp.h), lp.c
    null = nullspace(G, n) if G else [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    for d in null:
        G += [tuple(d), tuple(-v for v in d)]
        h += [0, 0]
    rows = range(len(G))
    best = None
    for S in combinations(rows, n):
        sub = [G[i] for i in S]
        if rank(sub, n) < n:
            continue
        z = solve_square(sub, [h[i] for i in S])
        if all(_dot(G[i], z) >= h[i] for i in rows):
            val = _dot(c, z)
            best = val if best is None else min(best, val)
    if best is None:
        return Status.INFEASIBLE, None
    if any(_dot(c, d) != 0 for d in null):
        return Status.UNBOUNDED, None
    for S in combinations(rows, n - 1):
        sub = [G[i] for i in S]
        if rank(sub, n) < n - 1:
            continue
        (d,) = nullspace(sub, n)
        for s in (1, -1):
            dd = tuple(s * v for v in d)
            if all(_dot(g, dd) >= 0 for g in G) and _dot(c, dd) < 0:
                return Status.UNBOUNDED, None
    return Status.OPTIMAL, Fraction(best)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))
