"""Exact two-phase simplex with primal and dual certificates.

Problems have the form::

    minimize    c.z
    subject to  G z >= h
                E z  = f
                z_k >= 0   for k in nonneg

with every other variable free.  The entering column is the most negative
reduced cost and the ratio test breaks ties lexicographically, so degenerate
problems terminate.  The tableau runs on ``gmpy2.mpq`` when available and
falls back to :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import DimensionError, Matrix, Vector, matrix, rat, vector

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

# consecutive degenerate pivots tolerated before Bland's rule takes over
STALL = 20


class Status(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LinearProgram:
    c: Vector
    G: Matrix = ()
    h: Vector = ()
    E: Matrix = ()
    f: Vector = ()
    nonneg: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        n = len(self.c)
        object.__setattr__(self, "c", vector(self.c))
        object.__setattr__(self, "G", matrix(self.G, n))
        object.__setattr__(self, "h", vector(self.h, len(self.G)))
        object.__setattr__(self, "E", matrix(self.E, n))
        object.__setattr__(self, "f", vector(self.f, len(self.E)))
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        if any(not 0 <= k < n for k in self.nonneg):
            raise DimensionError("nonneg index out of range")

    @property
    def nvars(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class LpOutcome:
    """Result of :func:`lp_solve`.

    * ``OPTIMAL``: ``x`` optimal, ``value`` = c.x, ``duals`` (>= 0, one per
      inequality row) and ``eq_duals`` prove optimality.
    * ``UNBOUNDED``: ``x`` feasible and ``ray`` an improving recession direction.
    * ``INFEASIBLE``: ``duals``/``eq_duals`` form a Farkas certificate.
    """

    status: Status
    x: Vector | None = None
    value: Fraction | None = None
    duals: Vector | None = None
    eq_duals: Vector | None = None
    ray: Vector | None = None


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class _Tableau:
    """Standard-form tableau ``A w = r, w >= 0`` built from a LinearProgram.

    Free variables are written as ``z_k = w_k - t`` with one shared ``t >= 0``.
    Each row remembers the column that formed the initial identity basis so
    that simplex multipliers can be read off the reduced-cost row.
    """

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = lp.nvars
        self.n = n
        self.free = [k for k in range(n) if k not in lp.nonneg]
        ncol = n
        self.tcol = None
        if self.free:
            self.tcol = ncol
            ncol += 1
        rows_spec = []  # (coeffs over z, rhs, is_ineq)
        for g, hi in zip(lp.G, lp.h):
            rows_spec.append((g, hi, True))
        for e, fi in zip(lp.E, lp.f):
            rows_spec.append((e, fi, False))
        nrows = len(rows_spec)
        self.n_ineq = len(lp.G)
        slack0 = ncol
        ncol += self.n_ineq
        # decide artificials
        self.sigma = []
        self.unit = []
        needs_art = []
        for i, (coef, rhs, is_ineq) in enumerate(rows_spec):
            if is_ineq and rhs <= 0:
                self.sigma.append(-1)
                needs_art.append(False)
            else:
                self.sigma.append(-1 if rhs < 0 else 1)
                needs_art.append(True)
        self.art_cols = set()
        for i in range(nrows):
            if needs_art[i]:
                self.art_cols.add(ncol)
                self.unit.append(ncol)
                ncol += 1
            else:
                self.unit.append(slack0 + i)
        self.ncol = ncol
        zero = _Q(0)
        T = []
        for i, (coef, rhs, is_ineq) in enumerate(rows_spec):
            s = self.sigma[i]
            row = [zero] * (ncol + 1)
            for k in range(n):
                if coef[k]:
                    row[k] = _Q(s * coef[k])
            if self.tcol is not None:
                tot = sum((coef[k] for k in self.free), Fraction(0))
                if tot:
                    row[self.tcol] = _Q(-s * tot)
            if is_ineq:
                row[slack0 + i] = _Q(-s)
            if needs_art[i]:
                row[self.unit[i]] = _Q(1)
            row[ncol] = _Q(s * rhs)
            T.append(row)
        self.T = T
        self.basis = list(self.unit)
        self.allowed = [j for j in range(ncol) if j not in self.art_cols]
        self.obj = None

    # -- pivoting ---------------------------------------------------------

    def pivot(self, r: int, s: int) -> None:
        T = self.T
        row = T[r]
        p = row[s]
        if p != 1:
            row = [v / p for v in row]
            T[r] = row
        nz = [(j, v) for j, v in enumerate(row) if v]
        for i, other in enumerate(T):
            if i != r:
                f = other[s]
                if f:
                    for j, v in nz:
                        other[j] -= f * v
        obj = self.obj
        f = obj[s]
        if f:
            for j, v in nz:
                obj[j] -= f * v
        self.basis[r] = s

    def run(self):
        """Primal simplex on the current objective row.

        Dantzig's rule picks the entering column.  While every row is
        lexicographically positive the ratio test breaks ties
        lexicographically, which rules out cycling.  Otherwise (only after
        artificials were pivoted out at zero level) ``STALL`` consecutive
        degenerate pivots hand over to Bland's rule until the objective moves.
        Returns None at optimality or the entering column of an unbounded ray.
        """
        T, obj, basis = self.T, self.obj, self.basis
        lex = self._lex_positive()
        stall = 0
        while True:
            if lex or stall < STALL:
                s, best_rc = None, 0
                for j in self.allowed:
                    if obj[j] < best_rc:
                        s, best_rc = j, obj[j]
            else:
                s = next((j for j in self.allowed if obj[j] < 0), None)
            if s is None:
                return None
            best, best_ratio, ties = None, None, []
            for i, row in enumerate(T):
                a = row[s]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best_ratio:
                        best, best_ratio, ties = i, ratio, [i]
                    elif ratio == best_ratio:
                        ties.append(i)
            if best is None:
                return s
            if len(ties) > 1:
                if lex:
                    best = min(ties, key=lambda i: [T[i][u] / T[i][s] for u in self.unit])
                else:
                    best = min(ties, key=lambda i: basis[i])
            stall = stall + 1 if best_ratio == 0 else 0
            self.pivot(best, s)

    def _lex_positive(self) -> bool:
        """Whether each row ``(rhs, row restricted to the initial basis)`` is lex-positive."""
        for row in self.T:
            if row[-1] > 0:
                continue
            lead = next((row[u] for u in self.unit if row[u]), 0)
            if lead <= 0:
                return False
        return True

    def set_objective(self, costs: Sequence) -> None:
        obj = list(costs) + [_Q(0)]
        for i, b in enumerate(self.basis):
            cb = obj[b]
            if cb:
                obj = [o - cb * t for o, t in zip(obj, self.T[i])]
        self.obj = obj

    # -- phases -----------------------------------------------------------

    def phase_one(self) -> bool:
        """Find a feasible basis; returns False if the system is infeasible."""
        if not self.art_cols:
            return True
        one, zero = _Q(1), _Q(0)
        self.costs1 = [one if j in self.art_cols else zero for j in range(self.ncol)]
        self.set_objective(self.costs1)
        self.run()
        if self.obj[-1] != 0:
            return False
        for i, b in enumerate(self.basis):
            if b in self.art_cols:
                j = next((j for j in self.allowed if self.T[i][j]), None)
                if j is not None:
                    self.pivot(i, j)
        return True

    def phase_two_costs(self, c: Sequence) -> list:
        costs = [_Q(0)] * self.ncol
        for k in range(self.n):
            if c[k]:
                costs[k] = _Q(c[k])
        if self.tcol is not None:
            tot = sum((c[k] for k in self.free), Fraction(0))
            costs[self.tcol] = _Q(-tot)
        return costs

    def multipliers(self, costs: Sequence) -> list[Fraction]:
        """Simplex multipliers mapped back to the original row orientation."""
        return [
            _frac(self.sigma[i] * (costs[u] - self.obj[u]))
            for i, u in enumerate(self.unit)
        ]

    def primal(self) -> list:
        w = [_Q(0)] * self.ncol
        for i, b in enumerate(self.basis):
            w[b] = self.T[i][-1]
        return w

    def to_z(self, w: Sequence) -> Vector:
        t = w[self.tcol] if self.tcol is not None else 0
        return tuple(
            _frac(w[k] - t) if k in self.lp_free_set else _frac(w[k])
            for k in range(self.n)
        )

    @property
    def lp_free_set(self):
        if not hasattr(self, "_free_set"):
            self._free_set = set(self.free)
        return self._free_set


def _split(y: Sequence[Fraction], n_ineq: int) -> tuple[Vector, Vector]:
    return tuple(y[:n_ineq]), tuple(y[n_ineq:])


def lp_solve_objectives(lp: LinearProgram, objectives: Sequence[Sequence]) -> list[LpOutcome]:
    """Solve ``lp`` once per objective, sharing phase one.

    ``lp.c`` is ignored; each entry of ``objectives`` is used in turn, warm
    started from the previous optimal (or last feasible) basis.
    """
    tab = _Tableau(lp)
    if not tab.phase_one():
        y = tab.multipliers(tab.costs1)
        lam, mu = _split(y, tab.n_ineq)
        out = LpOutcome(Status.INFEASIBLE, duals=lam, eq_duals=mu)
        return [out for _ in objectives]
    results = []
    for c in objectives:
        c = vector(c, lp.nvars)
        costs = tab.phase_two_costs(c)
        tab.set_objective(costs)
        s = tab.run()
        w = tab.primal()
        x = tab.to_z(w)
        value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
        if s is None:
            lam, mu = _split(tab.multipliers(costs), tab.n_ineq)
            results.append(LpOutcome(Status.OPTIMAL, x=x, value=value, duals=lam, eq_duals=mu))
        else:
            d = [_Q(0)] * tab.ncol
            d[s] = _Q(1)
            for i, b in enumerate(tab.basis):
                d[b] = -tab.T[i][s]
            results.append(LpOutcome(Status.UNBOUNDED, x=x, value=value, ray=tab.to_z(d)))
    return results


def lp_solve(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp`` exactly; the outcome carries a checkable certificate."""
    return lp_solve_objectives(lp, [lp.c])[0]


def certify(lp: LinearProgram, outcome: LpOutcome) -> bool:
    """Re-check an outcome's certificate with plain Fraction arithmetic."""
    n = lp.nvars
    G, h, E, f, c = lp.G, lp.h, lp.E, lp.f, lp.c
    nonneg = lp.nonneg

    def primal_feasible(x):
        if x is None or len(x) != n:
            return False
        x = [rat(v) for v in x]
        if any(x[k] < 0 for k in nonneg):
            return False
        if any(sum(a * b for a, b in zip(g, x)) < hi for g, hi in zip(G, h)):
            return False
        return all(sum(a * b for a, b in zip(e, x)) == fi for e, fi in zip(E, f))

    def combined(lam, mu):
        # G^T lam + E^T mu
        out = [Fraction(0)] * n
        for g, l in zip(G, lam):
            if l:
                for k in range(n):
                    out[k] += l * g[k]
        for e, m in zip(E, mu):
            if m:
                for k in range(n):
                    out[k] += m * e[k]
        return out

    def dual_shapes_ok(lam, mu):
        return lam is not None and mu is not None and len(lam) == len(G) and len(mu) == len(E)

    if outcome.status is Status.OPTIMAL:
        x, lam, mu = outcome.x, outcome.duals, outcome.eq_duals
        if not primal_feasible(x) or not dual_shapes_ok(lam, mu):
            return False
        if any(l < 0 for l in lam):
            return False
        d = [ck - gk for ck, gk in zip(c, combined(lam, mu))]
        for k in range(n):
            if k in nonneg:
                if d[k] < 0 or d[k] * x[k] != 0:
                    return False
            elif d[k] != 0:
                return False
        for g, hi, l in zip(G, h, lam):
            if l * (sum(a * b for a, b in zip(g, x)) - hi) != 0:
                return False
        primal_value = sum((a * b for a, b in zip(c, x)), Fraction(0))
        dual_value = sum((a * b for a, b in zip(h, lam)), Fraction(0)) + sum(
            (a * b for a, b in zip(f, mu)), Fraction(0)
        )
        return outcome.value == primal_value == dual_value

    if outcome.status is Status.UNBOUNDED:
        x, r = outcome.x, outcome.ray
        if not primal_feasible(x) or r is None or len(r) != n:
            return False
        if any(r[k] < 0 for k in nonneg):
            return False
        if any(sum(a * b for a, b in zip(g, r)) < 0 for g in G):
            return False
        if any(sum(a * b for a, b in zip(e, r)) != 0 for e in E):
            return False
        return sum((a * b for a, b in zip(c, r)), Fraction(0)) < 0

    if outcome.status is Status.INFEASIBLE:
        lam, mu = outcome.duals, outcome.eq_duals
        if not dual_shapes_ok(lam, mu) or any(l < 0 for l in lam):
            return False
        comb = combined(lam, mu)
        for k in range(n):
            if k in nonneg:
                if comb[k] > 0:
                    return False
            elif comb[k] != 0:
                return False
        rhs = sum((a * b for a, b in zip(h, lam)), Fraction(0)) + sum(
            (a * b for a, b in zip(f, mu)), Fraction(0)
        )
        return rhs > 0

    return False


def is_feasible_system(G: Sequence[Sequence], h: Sequence, nvars: int) -> bool:
    """Whether ``{z : G z >= h}`` is nonempty."""
    lp = LinearProgram(c=(0,) * nvars, G=G, h=h)
    return lp_solve(lp).status is not Status.INFEASIBLE
