"""Polyhedral convex set optimization.

A problem is given by ``(A, B, b)`` and an ordering cone ``C`` such that
``y in F_C(x)  <=>  A x + B y >= b``.  The functions here compute the upper
image, decide existence of solutions, build solutions from the vertices and
extreme directions of the upper image, and verify candidate solutions.
"""

from __future__ import annotations

import enum
import functools
import logging
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    DimensionError,
    Matrix,
    Vector,
    canonical_ray,
    dot,
    hstack,
    is_zero,
    mat_vec,
    matrix,
    neg,
    sub,
    vector,
    zeros,
)
from .lp import LinearProgram, LpOutcome, Status, lp_solve, lp_solve_objectives
from .polyhedra import (
    Cone,
    HRep,
    PreconditionError,
    VRep,
    equal,
    h_to_v,
    minkowski_and_hulls,
    project,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Problem:
    """Minimize ``F_C`` with respect to set inclusion.

    ``A`` is m x n, ``B`` is m x q, ``b`` has length m and ``C`` lives in R^q.
    The graph of ``F_C`` must be invariant under ``{0} x C``; a system whose
    rows violate ``B c >= 0`` for some generator ``c`` is accepted only when
    it is infeasible (it cannot describe a nonempty ``F_C`` otherwise).
    Use :func:`from_graph` to absorb ``C`` into an arbitrary graph.
    """

    A: Matrix
    B: Matrix
    b: Vector
    C: Cone
    n: int = None

    def __post_init__(self):
        q = self.C.dim
        A = matrix(self.A)
        n = self.n
        if n is None:
            if not A:
                raise DimensionError("n is required when the problem has no rows")
            n = len(A[0])
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "A", matrix(A, n))
        object.__setattr__(self, "B", matrix(self.B, q))
        object.__setattr__(self, "b", vector(self.b))
        m = len(self.b)
        if len(self.A) != m or len(self.B) != m:
            raise DimensionError(f"A, B, b have {len(self.A)}, {len(self.B)}, {m} rows")
        if not self.c_invariant and is_feasible(self, _skip_check=True):
            raise ValueError("graph is not invariant under the ordering cone (B c >= 0 fails for a generator)")

    @property
    def q(self) -> int:
        return self.C.dim

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def c_invariant(self) -> bool:
        return all(all(dot(row, c) >= 0 for row in self.B) for c in self.C.generators)

    def graph(self) -> HRep:
        """``gr F_C`` as a polyhedron in R^(n+q), coordinates ``(x, y)``."""
        return HRep(hstack(self.A, self.B) if self.m else (), self.b, self.n + self.q)


@dataclass(frozen=True)
class SolutionPair:
    """Minimizing points ``S_bar`` and nonzero minimizing directions ``S_hat``."""

    S_bar: tuple
    S_hat: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "S_bar", tuple(vector(x) for x in self.S_bar))
        object.__setattr__(self, "S_hat", tuple(vector(x) for x in self.S_hat))


class SolveStatus(enum.Enum):
    INFEASIBLE = "infeasible"
    NO_SOLUTION = "no_solution"
    SOLUTION = "solution"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    pair: SolutionPair | None = None
    upper_h: HRep | None = None
    upper_v: VRep | None = None
    witness: Vector | None = None


# -- construction --------------------------------------------------------------

def from_prep(Mx, My, Mz, c, C: Cone, n: int | None = None, k: int | None = None) -> Problem:
    """Problem from a lifted system ``Mx x + My y + Mz z >= c`` by projecting out ``z``."""
    Mx, My, Mz, c = matrix(Mx), matrix(My, C.dim), matrix(Mz), vector(c)
    m = len(c)
    if n is None:
        if not Mx:
            raise DimensionError("n is required for an empty system")
        n = len(Mx[0])
    if k is None:
        k = len(Mz[0]) if Mz else 0
    if not (len(Mx) == len(My) == m and (len(Mz) == m or k == 0 and not Mz)):
        raise DimensionError("Mx, My, Mz, c must have the same number of rows")
    q = C.dim
    if k == 0:
        return Problem(Mx, My, c, C, n=n)
    lifted = HRep(hstack(matrix(Mx, n), My, matrix(Mz, k)), c, n + q + k)
    H = project(lifted, range(n + q))
    if H.nrows == 1 and is_zero(H.M[0]) and H.v[0] > 0:
        # canonical empty system
        return Problem(((0,) * n,), ((0,) * q,), (1,), C, n=n)
    return Problem(tuple(r[:n] for r in H.M), tuple(r[n:] for r in H.M), H.v, C, n=n)


def from_graph(A, B, b, C: Cone, n: int | None = None) -> Problem:
    """Problem for ``F_C = F + C`` where ``gr F = {(x, y) : A x + B y >= b}``."""
    A, B, b = matrix(A), matrix(B, C.dim), vector(b)
    if n is None:
        n = len(A[0]) if A else 0
    gens = C.generators
    if not gens:
        return Problem(A, B, b, C, n=n)
    # y = y' + sum mu_k c_k with mu >= 0:  A x + B y - (B c_k) mu_k >= b
    Mz = tuple(tuple(-dot(row, g) for g in gens) for row in B)
    K = len(gens)
    nonneg = tuple(tuple(1 if i == j else 0 for j in range(K)) for i in range(K))
    Mx = A + tuple((0,) * n for _ in range(K))
    My = B + tuple((0,) * C.dim for _ in range(K))
    return from_prep(Mx, My, Mz + nonneg, b + (0,) * K, C, n=n, k=K)


def with_constraints(problem: Problem, A_c, b_c) -> Problem:
    """Restrict the domain to ``A_c x >= b_c`` (the mapping is empty elsewhere)."""
    A_c, b_c = matrix(A_c, problem.n), vector(b_c)
    zero_rows = tuple(zeros(problem.q) for _ in b_c)
    return Problem(problem.A + A_c, problem.B + zero_rows, problem.b + b_c, problem.C, n=problem.n)


def homogeneous(problem: Problem) -> Problem:
    """The recession problem: same ``A``, ``B``, ``C`` with right-hand side zero."""
    return Problem(problem.A, problem.B, zeros(problem.m), problem.C, n=problem.n)


# -- evaluation and the upper image ----------------------------------------------

def _check_x(problem: Problem, x) -> Vector:
    x = vector(x)
    if len(x) != problem.n:
        raise DimensionError(f"x has length {len(x)}, expected {problem.n}")
    return x


def evaluate(problem: Problem, x) -> HRep:
    """``F_C(x) = {y : B y >= b - A x}``."""
    x = _check_x(problem, x)
    rhs = sub(problem.b, mat_vec(problem.A, x)) if problem.m else ()
    return HRep(problem.B, rhs, problem.q)


def in_domain(problem: Problem, x) -> bool:
    return not evaluate(problem, x).is_empty()


def is_feasible(problem: Problem, _skip_check: bool = False) -> bool:
    """Whether ``dom F`` is nonempty."""
    if not _skip_check and not problem.c_invariant:
        return False
    return not problem.graph().is_empty()


@functools.lru_cache(maxsize=256)
def upper_image(problem: Problem) -> tuple[HRep, VRep]:
    """``C + union of F(x)``: projection of the graph onto the y-coordinates."""
    H = project(problem.graph(), range(problem.n, problem.n + problem.q))
    return H, h_to_v(H)


def lower_bound(problem: Problem) -> Vector | None:
    """A point ``l`` with ``{l} + C`` containing the upper image, or None if unbounded.

    Solves one LP per facet of ``C`` over the graph and then one LP for ``l``.
    """
    if not is_feasible(problem):
        raise PreconditionError("boundedness is defined for feasible problems only")
    n, q = problem.n, problem.q
    G = problem.C.hrep.M
    graph = problem.graph()
    objectives = [(0,) * n + tuple(g) for g in G]
    lp = LinearProgram(c=(0,) * (n + q), G=graph.M, h=graph.v)
    mins = []
    for out in lp_solve_objectives(lp, objectives) if objectives else []:
        if out.status is not Status.OPTIMAL:
            return None
        mins.append(out.value)
    # G l <= mins
    out = lp_solve(LinearProgram(c=zeros(q), G=tuple(neg(g) for g in G), h=tuple(-v for v in mins)))
    if out.status is not Status.OPTIMAL:
        return None
    return out.x


def is_bounded(problem: Problem) -> bool:
    return lower_bound(problem) is not None


# -- LP(ybar) ------------------------------------------------------------------

def build_lp(problem: Problem, ybar) -> LinearProgram:
    """The linear program over ``(x, y^1, ..., y^m)`` attached to ``ybar``.

    Rows ``A x + B y^i >= b`` for every block ``i`` and ``A x >= b - B ybar``;
    objective ``sum_i B_i y^i``.
    """
    ybar = vector(ybar, problem.q)
    n, q, m = problem.n, problem.q, problem.m
    A, B, b = problem.A, problem.B, problem.b
    N = n + m * q
    G, h = [], []
    for i in range(m):
        for k in range(m):
            row = [Fraction(0)] * N
            row[:n] = A[k]
            row[n + i * q:n + (i + 1) * q] = B[k]
            G.append(tuple(row))
            h.append(b[k])
    Bybar = mat_vec(B, ybar)
    for k in range(m):
        G.append(tuple(A[k]) + zeros(m * q))
        h.append(b[k] - Bybar[k])
    c = zeros(n) + tuple(x for i in range(m) for x in B[i])
    return LinearProgram(c=c, G=tuple(G), h=tuple(h))


def lp_x_part(problem: Problem, outcome: LpOutcome) -> Vector:
    return outcome.x[:problem.n]


# -- minimality -----------------------------------------------------------------

@dataclass(frozen=True)
class MinimalityCertificate:
    """Outcome of a minimality test.

    When ``minimal`` is False, ``dominating_x`` satisfies
    ``F_C(dominating_x) ⊋ F_C(xbar)`` and ``escaping_y`` lies in the former but
    not the latter.
    """

    minimal: bool
    dominating_x: Vector | None = None
    escaping_y: Vector | None = None


def minimality_certificate(problem: Problem, xbar) -> MinimalityCertificate:
    """Decide whether some ``x`` has ``F_C(x)`` strictly containing ``F_C(xbar)``.

    By LP duality ``F_C(x)`` contains ``F_C(xbar) = {y : B y >= r}`` iff
    ``A_i x >= b_i - phi_i`` for every row, where ``phi_i`` is the support value
    ``min {B_i y : B y >= r}`` (attained with dual multipliers ``lam_i >= 0``,
    ``lam_i B = B_i``).  Over that system joined with ``A x + B y >= b`` each
    row ``j`` is minimized; a value below ``r_j`` (or unboundedness) exhibits a
    strict superset.
    """
    xbar = _check_x(problem, xbar)
    if not in_domain(problem, xbar):
        raise PreconditionError("xbar is not in the domain of F")
    n, q, m = problem.n, problem.q, problem.m
    if m == 0:
        return MinimalityCertificate(True)
    A, B, b = problem.A, problem.B, problem.b
    r = sub(b, mat_vec(A, xbar))
    phi = []
    for out in lp_solve_objectives(LinearProgram(c=zeros(q), G=B, h=r), list(B)):
        if out.status is not Status.OPTIMAL:
            raise RuntimeError("support value of a nonempty image is not attained")
        phi.append(out.value)
    # variables (x, y): containment rows A x >= b - phi, graph rows A x + B y >= b
    G = [tuple(A[i]) + zeros(q) for i in range(m)] + [tuple(A[k]) + tuple(B[k]) for k in range(m)]
    h = [b[i] - phi[i] for i in range(m)] + list(b)
    lp = LinearProgram(c=zeros(n + q), G=tuple(G), h=tuple(h))
    # rows with B_j = 0 constrain only x; they can never separate y
    rows = [j for j in range(m) if any(B[j])]
    objectives = [zeros(n) + tuple(B[j]) for j in rows]
    for out, j in zip(lp_solve_objectives(lp, objectives), rows):
        if out.status is Status.INFEASIBLE:
            raise RuntimeError("containment system infeasible although xbar itself is feasible")
        if out.status is Status.UNBOUNDED:
            x, y = _escape_along_ray(problem, out, r, n)
            return MinimalityCertificate(False, x, y)
        if out.value < r[j]:
            return MinimalityCertificate(False, out.x[:n], out.x[n:])
    return MinimalityCertificate(True)


def _escape_along_ray(problem: Problem, out: LpOutcome, r: Vector, y0: int):
    n = problem.n
    x, ray = out.x, out.ray
    t = Fraction(1)
    while True:
        z = tuple(a + t * d for a, d in zip(x, ray))
        y = z[y0:]
        if any(dot(Bj, y) < rj for Bj, rj in zip(problem.B, r)):
            return z[:n], y
        t *= 2


def is_minimizing_point(problem: Problem, xbar) -> bool:
    """True iff no ``x`` gives ``F_C(x)`` strictly containing ``F_C(xbar)``."""
    return minimality_certificate(problem, xbar).minimal


def is_minimizing_direction(problem: Problem, xhat) -> bool:
    """Minimality of a nonzero ``xhat`` for the recession problem."""
    xhat = _check_x(problem, xhat)
    if is_zero(xhat):
        raise PreconditionError("a minimizing direction must be nonzero")
    hom = homogeneous(problem)
    if not in_domain(hom, xhat):
        raise PreconditionError("direction is not in the domain of the recession mapping")
    return is_minimizing_point(hom, xhat)


def strictly_dominates(problem: Problem, x, xbar) -> bool:
    """Direct check of ``F_C(x) ⊋ F_C(xbar)`` for two fixed arguments."""
    Fx, Fbar = evaluate(problem, x), evaluate(problem, xbar)
    if Fbar.is_empty():
        return not Fx.is_empty()
    if Fx.is_empty():
        return False
    q = problem.q
    contain = lp_solve_objectives(LinearProgram(c=zeros(q), G=Fbar.M, h=Fbar.v), list(Fx.M))
    for out, rhs in zip(contain, Fx.v):
        if out.status is not Status.OPTIMAL or out.value < rhs:
            return False
    escape = lp_solve_objectives(LinearProgram(c=zeros(q), G=Fx.M, h=Fx.v), list(Fbar.M))
    return any(out.status is Status.UNBOUNDED or out.value < rhs for out, rhs in zip(escape, Fbar.v))


# -- existence --------------------------------------------------------------------

@dataclass(frozen=True)
class ExistenceFlags:
    """The six equivalent existence conditions, each computed by its own route.

    ``minimizer_covers_some`` / ``minimizer_covers_all``: a minimizer whose
    image contains a vertex of the upper image exists for some / every vertex
    (extracted from optimal LP(ybar) outcomes and confirmed by the duality
    test).  ``lp_optimal_some`` / ``lp_optimal_all``: LP(ybar) attains its
    optimum at some / every vertex.  ``lp_hom_optimal``: the homogeneous LP at
    ``ybar = 0`` is optimal.  ``zero_minimal_hom``: ``0`` minimizes the
    recession problem.
    """

    minimizer_covers_some: bool
    minimizer_covers_all: bool
    lp_optimal_some: bool
    lp_optimal_all: bool
    lp_hom_optimal: bool
    zero_minimal_hom: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "minimizer_covers_some": self.minimizer_covers_some,
            "minimizer_covers_all": self.minimizer_covers_all,
            "lp_optimal_some": self.lp_optimal_some,
            "lp_optimal_all": self.lp_optimal_all,
            "lp_hom_optimal": self.lp_hom_optimal,
            "zero_minimal_hom": self.zero_minimal_hom,
        }

    @property
    def agree(self) -> bool:
        return len(set(self.as_dict().values())) == 1

    @property
    def value(self) -> bool:
        if not self.agree:
            raise RuntimeError(f"existence conditions disagree: {self.as_dict()}")
        return self.lp_hom_optimal


def existence_flags(problem: Problem) -> ExistenceFlags:
    if not is_feasible(problem):
        raise PreconditionError("existence conditions are stated for feasible problems")
    n, q = problem.n, problem.q
    _, V = upper_image(problem)
    outcomes = [lp_solve(build_lp(problem, y)) for y in V.points]
    optimal = [o.status is Status.OPTIMAL for o in outcomes]
    cache: dict[Vector, bool] = {}
    covers = []
    for y, out in zip(V.points, outcomes):
        if out.status is not Status.OPTIMAL:
            covers.append(False)
            continue
        xbar = lp_x_part(problem, out)
        if xbar not in cache:
            cache[xbar] = is_minimizing_point(problem, xbar)
        covers.append(cache[xbar] and evaluate(problem, xbar).contains_point(y))
    hom = homogeneous(problem)
    lp_hom = lp_solve(build_lp(hom, zeros(q)))
    return ExistenceFlags(
        minimizer_covers_some=any(covers),
        minimizer_covers_all=all(covers),
        lp_optimal_some=any(optimal),
        lp_optimal_all=all(optimal),
        lp_hom_optimal=lp_hom.status is Status.OPTIMAL,
        zero_minimal_hom=is_minimizing_point(hom, zeros(n)),
    )


prop4 = existence_flags


def solve(problem: Problem) -> SolveResult:
    """Decide existence and, if possible, build a solution ``(S_bar, S_hat)``.

    Points come from LP(ybar) at each vertex of the upper image, directions
    from the homogeneous LP at each extreme direction (lines count in both
    orientations); zero directions are dropped.
    """
    if not is_feasible(problem):
        return SolveResult(SolveStatus.INFEASIBLE)
    n, q = problem.n, problem.q
    hom = homogeneous(problem)
    out = lp_solve(build_lp(hom, zeros(q)))
    H, V = upper_image(problem)
    if out.status is Status.UNBOUNDED:
        witness = canonical_ray(out.ray[:n])
        if not strictly_dominates(hom, witness, zeros(n)):
            raise RuntimeError("unbounded homogeneous LP produced an invalid witness")
        return SolveResult(SolveStatus.NO_SOLUTION, upper_h=H, upper_v=V, witness=witness)
    S_bar: list[Vector] = []
    for y in V.points:
        res = lp_solve(build_lp(problem, y))
        if res.status is not Status.OPTIMAL:
            raise RuntimeError(f"LP at vertex {y} is {res.status.value} although the homogeneous LP is optimal")
        x = lp_x_part(problem, res)
        if x not in S_bar:
            S_bar.append(x)
    S_hat: list[Vector] = []
    directions = list(V.rays) + [d for l in V.lines for d in (l, neg(l))]
    for y in directions:
        res = lp_solve(build_lp(hom, y))
        if res.status is not Status.OPTIMAL:
            raise RuntimeError(f"homogeneous LP at direction {y} is {res.status.value}")
        x = lp_x_part(hom, res)
        if is_zero(x):
            continue
        x = canonical_ray(x)
        if x not in S_hat:
            S_hat.append(x)
    return SolveResult(SolveStatus.SOLUTION, SolutionPair(tuple(S_bar), tuple(S_hat)), H, V)


# -- verification ------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    message: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Three separately reported checks; ``passed`` requires all of them."""

    infimizer: CheckResult
    points: tuple = ()      # CheckResult per element of S_bar
    directions: tuple = ()  # CheckResult per element of S_hat

    @property
    def points_ok(self) -> bool:
        return all(c.ok for c in self.points)

    @property
    def directions_ok(self) -> bool:
        return all(c.ok for c in self.directions)

    @property
    def passed(self) -> bool:
        return self.infimizer.ok and self.points_ok and self.directions_ok

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "infimizer": {"ok": self.infimizer.ok, "message": self.infimizer.message},
            "points": [{"ok": c.ok, "message": c.message} for c in self.points],
            "directions": [{"ok": c.ok, "message": c.message} for c in self.directions],
        }


def _check_infimizer(problem: Problem, pair: SolutionPair) -> CheckResult:
    n, q = problem.n, problem.q
    if not pair.S_bar:
        return CheckResult(False, "S_bar is empty")
    parts = []
    for x in pair.S_bar:
        if len(x) != n:
            return CheckResult(False, f"point {x} has wrong length")
        V = h_to_v(evaluate(problem, x))
        if V.is_empty:
            return CheckResult(False, f"point {x} is outside dom F")
        parts.append(V)
    hom = homogeneous(problem)
    gens = list(problem.C.generators)
    for xh in pair.S_hat:
        if len(xh) != n:
            return CheckResult(False, f"direction {xh} has wrong length")
        V = h_to_v(evaluate(hom, xh))
        if V.is_empty:
            return CheckResult(False, f"direction {xh} is outside dom of the recession mapping")
        gens += [p for p in V.points if not is_zero(p)]
        gens += list(V.rays) + [d for l in V.lines for d in (l, neg(l))]
    rhs = minkowski_and_hulls(parts, gens, dim=q)
    H, _ = upper_image(problem)
    if equal(H, rhs):
        return CheckResult(True, "infimum attained")
    return CheckResult(False, "infimum not attained")


def verify(problem: Problem, pair: SolutionPair) -> VerificationReport:
    """Check that ``pair`` is a finite infimizer of minimizing points and directions."""
    infimizer = _check_infimizer(problem, pair)
    points = []
    for x in pair.S_bar:
        try:
            ok = is_minimizing_point(problem, x)
            points.append(CheckResult(ok, "minimizing point" if ok else "not a minimizing point"))
        except (PreconditionError, DimensionError) as exc:
            points.append(CheckResult(False, str(exc)))
    directions = []
    for x in pair.S_hat:
        try:
            ok = is_minimizing_direction(problem, x)
            directions.append(CheckResult(ok, "minimizing direction" if ok else "not a minimizing direction"))
        except (PreconditionError, DimensionError) as exc:
            directions.append(CheckResult(False, str(exc)))
    return VerificationReport(infimizer, tuple(points), tuple(directions))
