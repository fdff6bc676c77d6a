"""Convex polyhedra in inequality (H) and generator (V) form.

Conversions use the double description method on the homogenized cone,
projection uses Fourier-Motzkin elimination with LP-based redundancy removal.
All arithmetic is exact.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exact import (
    DimensionError,
    Matrix,
    Vector,
    canonical_basis,
    canonical_ray,
    dot,
    integer_scaled,
    is_zero,
    matrix,
    neg,
    nullspace,
    primitive,
    project_out,
    rank_int,
    vector,
    zeros,
)
from .lp import LinearProgram, Status, is_feasible_system, lp_solve

log = logging.getLogger(__name__)


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class EmptyPolyhedronWarning(UserWarning):
    pass


@dataclass(frozen=True)
class HRep:
    """The polyhedron ``{z in R^dim : M z >= v}``."""

    M: Matrix
    v: Vector
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionError("negative dimension")
        object.__setattr__(self, "M", matrix(self.M, self.dim))
        object.__setattr__(self, "v", vector(self.v, len(self.M)))

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[Sequence, object]], dim: int) -> "HRep":
        rows = list(rows)
        return cls(tuple(a for a, _ in rows), tuple(b for _, b in rows), dim)

    @classmethod
    def empty(cls, dim: int) -> "HRep":
        return cls((zeros(dim),), (Fraction(1),), dim)

    @classmethod
    def universe(cls, dim: int) -> "HRep":
        return cls((), (), dim)

    @property
    def nrows(self) -> int:
        return len(self.M)

    def rows(self):
        return zip(self.M, self.v)

    def contains_point(self, z: Sequence) -> bool:
        if len(z) != self.dim:
            raise DimensionError(f"point of length {len(z)} in dimension {self.dim}")
        return all(dot(a, z) >= b for a, b in zip(self.M, self.v))

    def is_empty(self) -> bool:
        return not is_feasible_system(self.M, self.v, self.dim)

    def intersect(self, other: "HRep") -> "HRep":
        _same_dim(self.dim, other.dim)
        return HRep(self.M + other.M, self.v + other.v, self.dim)


@dataclass(frozen=True)
class VRep:
    """``conv(points) + cone(rays) + span(lines)``; no points means empty."""

    points: tuple = ()
    rays: tuple = ()
    lines: tuple = ()
    dim: int = 0

    def __post_init__(self):
        d = self.dim
        object.__setattr__(self, "points", tuple(vector(p, d) for p in self.points))
        object.__setattr__(self, "rays", tuple(vector(r, d) for r in self.rays))
        object.__setattr__(self, "lines", tuple(vector(l, d) for l in self.lines))
        if any(is_zero(r) for r in self.rays + self.lines):
            raise ValueError("rays and lines must be nonzero")

    @classmethod
    def empty(cls, dim: int) -> "VRep":
        return cls((), (), (), dim)

    @property
    def is_empty(self) -> bool:
        return not self.points


@dataclass(frozen=True)
class Cone:
    """Polyhedral convex cone ``cone(generators)`` with a cached H-representation."""

    generators: tuple
    dim: int
    hrep: HRep = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        gens = []
        seen = set()
        for g in self.generators:
            g = vector(g, self.dim)
            if is_zero(g):
                continue
            g = canonical_ray(g)
            if g not in seen:
                seen.add(g)
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        if self.hrep is None:
            object.__setattr__(self, "hrep", v_to_h(VRep((zeros(self.dim),), tuple(gens), (), self.dim)))

    @classmethod
    def from_hrep(cls, G: Sequence[Sequence], dim: int) -> "Cone":
        """Cone ``{y : G y >= 0}``."""
        P = HRep(G, zeros(len(G)), dim)
        V = h_to_v(P)
        gens = list(V.rays) + [g for l in V.lines for g in (l, neg(l))]
        return cls(tuple(gens), dim)

    @classmethod
    def orthant(cls, dim: int) -> "Cone":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)), dim)

    @classmethod
    def zero(cls, dim: int) -> "Cone":
        return cls((), dim)

    @classmethod
    def whole(cls, dim: int) -> "Cone":
        gens = []
        for i in range(dim):
            e = tuple(1 if i == j else 0 for j in range(dim))
            gens += [e, neg(e)]
        return cls(tuple(gens), dim)

    def contains(self, y: Sequence) -> bool:
        return self.hrep.contains_point(y)

    def as_vrep(self) -> VRep:
        return VRep((zeros(self.dim),), self.generators, (), self.dim)


def _same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionError(f"dimension mismatch: {a} vs {b}")


# -- double description ------------------------------------------------------

def _dd(constraints: Sequence[Sequence[int]], D: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Extreme rays and lineality basis of ``{w in R^D : a.w >= 0}``.

    Constraints are integer rows processed in the given order.  Two rays are
    combined only if they are adjacent, decided by the rank of the
    constraints active at both.
    """
    lines = [tuple(1 if i == j else 0 for j in range(D)) for i in range(D)]
    rays: list[tuple[tuple[int, ...], int]] = []  # (vector, zero-set bitmask)
    processed: list[Sequence[int]] = []

    def idot(a, w):
        return sum(x * y for x, y in zip(a, w))

    for a in constraints:
        if not any(a):
            continue
        idx = len(processed)
        processed.append(a)
        bit = 1 << idx
        vals = [idot(a, l) for l in lines]
        k = next((i for i, val in enumerate(vals) if val), None)
        if k is not None:
            l = lines.pop(k)
            al = vals.pop(k)
            if al < 0:
                l = tuple(-x for x in l)
                al = -al
            lines = [primitive([al * x - v2 * y for x, y in zip(l2, l)]) for l2, v2 in zip(lines, vals)]
            new_rays = []
            for r, z in rays:
                ar = idot(a, r)
                if ar:
                    r = primitive([al * x - ar * y for x, y in zip(r, l)])
                new_rays.append((r, z | bit))
            old_mask = bit - 1
            new_rays.append((primitive(l), old_mask))
            rays = new_rays
            continue
        pos, zer, negs = [], [], []
        for r, z in rays:
            ar = idot(a, r)
            if ar > 0:
                pos.append((r, z, ar))
            elif ar < 0:
                negs.append((r, z, ar))
            else:
                zer.append((r, z | bit))
        if not negs:
            rays = [(r, z) for r, z, _ in pos] + zer
            continue
        target = D - len(lines) - 2
        new = [(r, z) for r, z, _ in pos] + zer
        for p, zp, ap in pos:
            for q, zq, aq in negs:
                common = zp & zq
                if bin(common).count("1") < target:
                    continue
                active = [processed[i] for i in range(idx) if common >> i & 1]
                if rank_int(active) != target:
                    continue
                w = primitive([ap * x - aq * y for x, y in zip(q, p)])
                new.append((w, common | bit))
        rays = new
    seen = set()
    out = []
    for r, _ in rays:
        if r not in seen and any(r):
            seen.add(r)
            out.append(r)
    return out, lines


def _int_row(a: Sequence, beta) -> list[int]:
    """Integer row ``[a, -beta]`` up to positive scaling."""
    return list(integer_scaled(list(a) + [-Fraction(beta)]))


def _canonical_vrep(points, rays, lines, dim: int) -> VRep:
    if not points:
        return VRep.empty(dim)
    L = canonical_basis(lines, dim) if lines else []
    pts = sorted({project_out(p, L) for p in points})
    rs = set()
    for r in rays:
        r = project_out(r, L)
        if not is_zero(r):
            rs.add(canonical_ray(r))
    return VRep(tuple(pts), tuple(sorted(rs)), tuple(L), dim)


def h_to_v(P: HRep) -> VRep:
    """Generator form of ``P``; empty ``points`` iff ``P`` is infeasible."""
    d = P.dim
    cons = [[0] * d + [1]] + [_int_row(a, b) for a, b in P.rows()]
    rays, lines = _dd(cons, d + 1)
    points, recs = [], []
    for r in rays:
        t = r[d]
        if t > 0:
            points.append(tuple(Fraction(x, t) for x in r[:d]))
        else:
            recs.append(tuple(Fraction(x) for x in r[:d]))
    lin = [tuple(Fraction(x) for x in l[:d]) for l in lines if any(l[:d])]
    return _canonical_vrep(points, recs, lin, d)


def _canonical_rows(rows: Iterable[tuple[Sequence, object]]) -> list[tuple[Vector, Fraction]] | None:
    """Scale rows to coprime integer normals, drop trivial rows, keep the tightest duplicate.

    Returns None when some row reads ``0 >= positive``.
    """
    best: dict[tuple, Fraction] = {}
    infeasible = False
    for a, b in rows:
        ints = integer_scaled(list(a) + [-Fraction(b)])
        a_int, nb = ints[:-1], ints[-1]
        if not any(a_int):
            infeasible |= nb < 0
            continue
        g = gcd(*a_int)
        key = tuple(x // g for x in a_int)
        rhs = Fraction(-nb, g)
        if key not in best or rhs > best[key]:
            best[key] = rhs
    if infeasible:
        return None
    return [(tuple(Fraction(x) for x in k), v) for k, v in best.items()]


def _sort_rows(rows):
    return sorted(rows, key=lambda r: (tuple(-x for x in r[0]), r[1]))


def v_to_h(V: VRep) -> HRep:
    """Irredundant inequality form of ``V``."""
    d = V.dim
    if V.is_empty:
        return HRep.empty(d)
    cons = [list(integer_scaled(list(p) + [1])) for p in V.points]
    cons += [list(integer_scaled(list(r) + [0])) for r in V.rays]
    for l in V.lines:
        li = list(integer_scaled(list(l) + [0]))
        cons += [li, [-x for x in li]]
    rays, lines = _dd(cons, d + 1)
    rows = []
    for w in rays:
        a = w[:d]
        if any(a):
            rows.append((tuple(Fraction(x) for x in a), Fraction(-w[d])))
    lin_rows = []
    for w in lines:
        a = w[:d]
        if any(a):
            lin_rows.append(tuple(Fraction(x) for x in w))
    for w in canonical_basis(lin_rows, d + 1) if lin_rows else []:
        a, a0 = w[:d], w[d]
        rows.append((a, -a0))
        rows.append((neg(a), a0))
    rows = _canonical_rows(rows)
    return HRep.from_rows(_sort_rows(rows), d)


# -- projection --------------------------------------------------------------

def remove_redundant(P: HRep) -> HRep:
    """Drop rows implied by the others (one LP per row); empty input gives the canonical empty HRep."""
    rows = _canonical_rows(P.rows())
    if rows is None or P.is_empty():
        return HRep.empty(P.dim)
    kept = _sort_rows(rows)
    i = 0
    while i < len(kept):
        a, beta = kept[i]
        others = kept[:i] + kept[i + 1:]
        lp = LinearProgram(c=a, G=tuple(o[0] for o in others), h=tuple(o[1] for o in others))
        out = lp_solve(lp)
        if out.status is Status.OPTIMAL and out.value >= beta:
            kept.pop(i)
        else:
            i += 1
    return HRep.from_rows(kept, P.dim)


def project(P: HRep, keep: Iterable[int]) -> HRep:
    """H-representation of the coordinate projection of ``P`` onto ``keep``.

    The result lives in ``R^len(keep)`` with coordinates in increasing index order.
    """
    keep = sorted(set(keep))
    if any(not 0 <= k < P.dim for k in keep):
        raise DimensionError(f"keep indices out of range for dimension {P.dim}")
    if P.is_empty():
        return HRep.empty(len(keep))
    cols = list(range(P.dim))
    cur = remove_redundant(P)
    rows = list(cur.rows())
    elim = [c for c in cols if c not in keep]
    while elim:
        def cost(c):
            i = cols.index(c)
            npos = sum(1 for a, _ in rows if a[i] > 0)
            nneg = sum(1 for a, _ in rows if a[i] < 0)
            return npos * nneg - npos - nneg, c

        c = min(elim, key=cost)
        elim.remove(c)
        i = cols.index(c)
        pos = [(a, b) for a, b in rows if a[i] > 0]
        negs = [(a, b) for a, b in rows if a[i] < 0]
        new = [(a, b) for a, b in rows if a[i] == 0]
        for ap, bp in pos:
            for an, bn in negs:
                s, t = -an[i], ap[i]
                new.append((tuple(s * x + t * y for x, y in zip(ap, an)), s * bp + t * bn))
        cols.pop(i)
        new = [(a[:i] + a[i + 1:], b) for a, b in new]
        rows = list(remove_redundant(HRep.from_rows(new, len(cols))).rows()) if new else []
    return HRep.from_rows(rows, len(cols))


def project_via_generators(P: HRep, keep: Iterable[int]) -> HRep:
    """Projection by dropping coordinates of generators; an independent route to :func:`project`."""
    keep = sorted(set(keep))
    V = h_to_v(P)
    if V.is_empty:
        return HRep.empty(len(keep))
    pick = lambda v: tuple(v[k] for k in keep)
    rays = [pick(r) for r in V.rays if not is_zero(pick(r))]
    lines = [pick(l) for l in V.lines if not is_zero(pick(l))]
    return v_to_h(VRep(tuple(pick(p) for p in V.points), tuple(rays), tuple(lines), len(keep)))


# -- cones and subspaces -------------------------------------------------------

def recession_cone(P: HRep) -> HRep:
    """``{z : M z >= 0}``; for empty ``P`` the zero cone is returned with a warning."""
    if P.is_empty():
        warnings.warn("recession cone of an empty polyhedron; returning {0}", EmptyPolyhedronWarning, stacklevel=2)
        I = [tuple(1 if i == j else 0 for j in range(P.dim)) for i in range(P.dim)]
        return HRep(tuple(I) + tuple(neg(r) for r in I), zeros(2 * P.dim), P.dim)
    return HRep(P.M, zeros(P.nrows), P.dim)


def lineality_space(P: HRep) -> list[Vector]:
    """Canonical basis of ``0+P`` intersected with ``-0+P``, i.e. of ``{z : M z = 0}``."""
    if P.is_empty():
        raise PreconditionError("lineality space of an empty polyhedron")
    return nullspace(P.M, P.dim)


def subspace_hrep(basis: Sequence[Sequence], dim: int) -> HRep:
    """Inequality form ``N z >= 0, -N z >= 0`` of ``span(basis)``."""
    normals = nullspace(basis, dim) if basis else [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rows = list(normals) + [neg(r) for r in normals]
    return HRep(tuple(rows), zeros(len(rows)), dim)


# -- containment and hulls -----------------------------------------------------

def contains(P: HRep, Q: VRep) -> bool:
    """Whether ``Q`` is a subset of ``P``, checked generator by generator."""
    _same_dim(P.dim, Q.dim)
    if Q.is_empty:
        return True
    for p in Q.points:
        if not P.contains_point(p):
            return False
    for r in Q.rays:
        if any(dot(a, r) < 0 for a in P.M):
            return False
    for l in Q.lines:
        if any(dot(a, l) != 0 for a in P.M):
            return False
    return True


def _both(X) -> tuple[HRep, VRep]:
    if isinstance(X, HRep):
        return X, h_to_v(X)
    if isinstance(X, VRep):
        return v_to_h(X), X
    raise TypeError(f"expected HRep or VRep, got {type(X).__name__}")


def equal(P, Q) -> bool:
    """Set equality of two polyhedra given in either form, by mutual containment."""
    Ph, Pv = _both(P)
    Qh, Qv = _both(Q)
    _same_dim(Ph.dim, Qh.dim)
    return contains(Ph, Qv) and contains(Qh, Pv)


def minkowski_and_hulls(parts: Sequence[VRep], extra_cone_gens: Sequence[Sequence] = (), dim: int | None = None) -> VRep:
    """``conv`` of the parts' points plus ``cone`` of their rays and ``extra_cone_gens``.

    Parts without points are empty sets and contribute nothing.  An empty
    ``extra_cone_gens`` adds only the origin.
    """
    dims = {p.dim for p in parts}
    if dim is not None:
        dims.add(dim)
    if len(dims) != 1:
        raise DimensionError(f"parts have dimensions {sorted(dims)}")
    d = dims.pop()
    nonempty = [p for p in parts if not p.is_empty]
    if not nonempty:
        raise PreconditionError("Minkowski sum with no nonempty part is empty")
    points = [pt for p in nonempty for pt in p.points]
    rays = [r for p in nonempty for r in p.rays]
    rays += [vector(g, d) for g in extra_cone_gens if not is_zero(vector(g, d))]
    lines = [l for p in nonempty for l in p.lines]
    return VRep(tuple(points), tuple(rays), tuple(lines), d)


def reduce_vrep(V: VRep) -> VRep:
    """Minimal generator set of the same polyhedron."""
    return h_to_v(v_to_h(V))


def plus_cone(A: VRep, C: Cone) -> VRep:
    _same_dim(A.dim, C.dim)
    if A.is_empty:
        return A
    return VRep(A.points, A.rays + C.generators, A.lines, A.dim)


def set_dominates(A1: VRep, A2: VRep, C: Cone) -> bool:
    """``A1 + C`` contains ``A2 + C``: the lifted ordering on sets."""
    _same_dim(A1.dim, A2.dim)
    return contains(v_to_h(plus_cone(A1, C)), plus_cone(A2, C))


def c_minimal_in_family(family: Sequence[VRep], C: Cone, i: int) -> bool:
    """Whether every member dominating ``family[i]`` is also dominated by it."""
    if not 0 <= i < len(family):
        raise IndexError(i)
    Ai = family[i]
    return all(
        set_dominates(Ai, Aj, C)
        for Aj in family
        if set_dominates(Aj, Ai, C)
    )
