"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row tuples.  Matrices with zero rows carry no column
count, so the containers that hold them (``HRep``, ``Problem``) store their
dimensions explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def rat(value) -> Fraction:
    """Convert ``value`` to a canonical Fraction.

    Accepts ints, Fractions, other exact rationals (e.g. ``gmpy2.mpq``) and
    strings of the form ``"p"`` or ``"p/q"``.  Floats are rejected so binary
    rounding never leaks into a decision.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, Fraction or 'p/q' string")
    if isinstance(value, _RationalABC) or (hasattr(value, "numerator") and hasattr(value, "denominator")):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def rat_str(value: Fraction) -> str:
    """Serialize as ``"p"`` or ``"p/q"``."""
    value = rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rat_add(a, b) -> Fraction:
    return rat(a) + rat(b)


def rat_mul(a, b) -> Fraction:
    return rat(a) * rat(b)


def rat_cmp(a, b) -> int:
    """-1, 0 or 1 as ``a`` is below, equal to or above ``b``."""
    a, b = rat(a), rat(b)
    return (a > b) - (a < b)


def vector(values: Iterable, dim: int | None = None) -> Vector:
    out = tuple(rat(v) for v in values)
    if dim is not None and len(out) != dim:
        raise DimensionError(f"expected a vector of length {dim}, got {len(out)}")
    return out


def matrix(rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
    out = tuple(vector(r) for r in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise DimensionError(f"ragged matrix with row lengths {sorted(widths)}")
    if ncols is not None and out and len(out[0]) != ncols:
        raise DimensionError(f"expected {ncols} columns, got {len(out[0])}")
    return out


def zeros(dim: int) -> Vector:
    return (ZERO,) * dim


def unit(dim: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(dim))


def identity(dim: int) -> Matrix:
    return tuple(unit(dim, i) for i in range(dim))


def _check_same(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")


def add(u: Sequence, v: Sequence) -> Vector:
    _check_same(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    _check_same(u, v)
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence) -> Vector:
    return tuple(-a for a in u)


def scale(alpha, u: Sequence) -> Vector:
    return tuple(alpha * a for a in u)


def dot(u: Sequence, v: Sequence):
    _check_same(u, v)
    return sum((a * b for a, b in zip(u, v)), ZERO)


def mat_vec(M: Sequence[Sequence], v: Sequence) -> Vector:
    """Exact product ``M v``; every row must have ``len(v)`` entries."""
    for row in M:
        if len(row) != len(v):
            raise DimensionError(f"matrix has {len(row)} columns but vector has length {len(v)}")
    return tuple(dot(row, v) for row in M)


def transpose(M: Sequence[Sequence], ncols: int) -> Matrix:
    return tuple(tuple(row[j] for row in M) for j in range(ncols))


def hstack(*blocks: Sequence[Sequence]) -> Matrix:
    """Concatenate matrices with equal row counts side by side."""
    heights = {len(b) for b in blocks}
    if len(heights) > 1:
        raise DimensionError(f"row counts differ: {sorted(heights)}")
    return tuple(tuple(x for b in blocks for x in b[i]) for i in range(heights.pop() if heights else 0))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def geq(u: Sequence, v: Sequence) -> bool:
    """Componentwise ``u >= v``."""
    _check_same(u, v)
    return all(a >= b for a, b in zip(u, v))


# -- integer scaling -------------------------------------------------------

def integer_scaled(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries (zero stays zero)."""
    fr = [rat(x) for x in v]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = gcd(*ints) if ints else 0
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def primitive(ints: Sequence[int]) -> tuple[int, ...]:
    g = gcd(*ints) if ints else 0
    if g > 1:
        return tuple(x // g for x in ints)
    return tuple(ints)


def canonical_ray(v: Sequence) -> Vector:
    """Coprime integer representative of the ray spanned by ``v``."""
    return tuple(Fraction(x) for x in integer_scaled(v))


def canonical_line(v: Sequence) -> Vector:
    """Like :func:`canonical_ray` but also fixes the sign: first nonzero entry positive."""
    ints = integer_scaled(v)
    for x in ints:
        if x:
            if x < 0:
                ints = tuple(-y for y in ints)
            break
    return tuple(Fraction(x) for x in ints)


# -- elimination -----------------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    R = [[rat(x) for x in r] for r in rows]
    for r in R:
        if len(r) != ncols:
            raise DimensionError(f"row of length {len(r)} in a {ncols}-column system")
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(R)) if R[i][col]), None)
        if piv is None:
            continue
        R[top], R[piv] = R[piv], R[top]
        p = R[top][col]
        R[top] = [x / p for x in R[top]]
        for i in range(len(R)):
            if i != top and R[i][col]:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[top])]
        pivots.append(col)
        top += 1
        if top == len(R):
            break
    return R[:top], pivots


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    R = [list(r) for r in rows]
    if not R:
        return 0
    ncols = len(R[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(R)) if R[i][col]), None)
        if piv is None:
            continue
        R[rank], R[piv] = R[piv], R[rank]
        prow = R[rank]
        p = prow[col]
        for i in range(rank + 1, len(R)):
            f = R[i][col]
            if f:
                R[i] = [p * a - f * b for a, b in zip(R[i], prow)]
        rank += 1
        if rank == len(R):
            break
    return rank


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{z : rows z = 0}`` in canonical (reduced echelon) form."""
    R, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        z = [ZERO] * ncols
        z[f] = ONE
        for r, p in zip(R, pivots):
            z[p] = -r[f]
        basis.append(tuple(z))
    return canonical_basis(basis, ncols)


def canonical_basis(vectors: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Canonical basis of ``span(vectors)``: RREF rows scaled to coprime integers."""
    R, _ = rref(vectors, ncols)
    return [canonical_line(r) for r in R]


def solve_square(M: Sequence[Sequence], rhs: Sequence) -> Vector:
    """Solve a nonsingular square system exactly."""
    n = len(M)
    aug = [list(row) + [r] for row, r in zip(M, rhs)]
    R, pivots = rref(aug, n + 1)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(r[n] for r in R)


def project_out(v: Sequence, basis: Sequence[Sequence]) -> Vector:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    if not basis:
        return tuple(v)
    gram = [[dot(a, b) for b in basis] for a in basis]
    coeff = solve_square(gram, [dot(a, v) for a in basis])
    out = list(v)
    for c, b in zip(coeff, basis):
        if c:
            out = [x - c * y for x, y in zip(out, b)]
    return tuple(out)
