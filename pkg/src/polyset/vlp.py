"""Vector linear programs ``min_C M x  s.t.  A x >= b`` as set optimization problems."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import DimensionError, Matrix, Vector, matrix, neg, vector, zeros
from .polyhedra import Cone, HRep, PreconditionError, contains, h_to_v, lineality_space, subspace_hrep
from .setopt import Problem, is_feasible, upper_image


@dataclass(frozen=True)
class VlpProblem:
    M: Matrix  # q x n
    A: Matrix  # m x n
    b: Vector
    C: Cone
    n: int = None

    def __post_init__(self):
        q = self.C.dim
        M = matrix(self.M)
        n = self.n if self.n is not None else (len(M[0]) if M else None)
        if n is None:
            raise DimensionError("n is required when M has no rows")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "M", matrix(M, n))
        object.__setattr__(self, "A", matrix(self.A, n))
        object.__setattr__(self, "b", vector(self.b, len(self.A)))
        if len(self.M) != q:
            raise DimensionError(f"M has {len(self.M)} rows but the cone lives in R^{q}")

    @property
    def q(self) -> int:
        return self.C.dim


def to_setopt(v: VlpProblem) -> Problem:
    """``F(x) = {M x}`` on ``A x >= b`` (empty elsewhere), with ``C`` absorbed.

    Rows are ``A x >= b`` followed by ``G (y - M x) >= 0`` for the facets ``G``
    of ``C``.
    """
    n, q = v.n, v.q
    G = v.C.hrep.M
    A_rows = list(v.A)
    B_rows = [zeros(q) for _ in v.A]
    rhs = list(v.b)
    for g in G:
        A_rows.append(neg(tuple(sum(g[k] * v.M[k][j] for k in range(q)) for j in range(n))))
        B_rows.append(tuple(g))
        rhs.append(0)
    return Problem(tuple(A_rows), tuple(B_rows), tuple(rhs), v.C, n=n)


def homogenized(v: VlpProblem) -> VlpProblem:
    return VlpProblem(v.M, v.A, zeros(len(v.b)), v.C, n=v.n)


def lineality_condition(P_upper: HRep, C: Cone) -> bool:
    """Whether the lineality space of ``P_upper`` meets ``-C`` only inside ``C``."""
    if P_upper.is_empty():
        raise PreconditionError("condition (L(P) ∩ -C ⊆ C) needs a nonempty upper image")
    L = lineality_space(P_upper)
    q = P_upper.dim
    S = subspace_hrep(L, q)
    minus_C = HRep(tuple(neg(g) for g in C.hrep.M), C.hrep.v, q)
    meet = h_to_v(S.intersect(minus_C))
    return contains(C.hrep, meet)


def vlp_solution_exists(v: VlpProblem) -> bool:
    """Existence of a solution: feasibility together with :func:`lineality_condition`."""
    p = to_setopt(v)
    if not is_feasible(p):
        return False
    H, _ = upper_image(p)
    return lineality_condition(H, v.C)


condition3 = lineality_condition
cor2_exists = vlp_solution_exists
