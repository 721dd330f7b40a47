"""Projective points and r-planes over a finite field.

Points of P^n are canonical coordinate tuples: the first nonzero coordinate
is scaled to 1.  Enumeration lists them in ascending lexicographic order of
the full tuple, so (0, ..., 0, 1) is first and (1, q-1, ..., q-1) is last.

An r-plane is the row space of a full-rank (r+1) x (n+1) matrix; its
canonical representative is the reduced row echelon form, which is unique per
row space, so Plane equality is matrix equality.  Enumeration walks pivot
column sets in lexicographic order and, within a pivot set, the free entries
as a base-q odometer in row-major position order with the last free position
varying fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

import numpy as np

from .errors import NotProjectivePointError, RankDeficientError
from .gf import FieldSpec

Point = tuple[int, ...]


def canonical_point(vec, field: FieldSpec) -> Point:
    """Scale so the first nonzero coordinate is 1."""
    vec = tuple(vec)
    for i, v in enumerate(vec):
        if v:
            if v == 1:
                return vec
            s = field.inv(v)
            return vec[:i] + tuple(field.mul(s, x) for x in vec[i:])
    raise NotProjectivePointError("the zero vector is not a projective point")


def num_points(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def enumerate_points(n: int, field: FieldSpec) -> Iterator[Point]:
    """Canonical points of P^n in ascending lex order of coordinates."""
    q = field.q
    for lead in range(n, -1, -1):
        zeros = (0,) * lead
        for tail in product(range(q), repeat=n - lead):
            yield zeros + (1,) + tail


def points_array(n: int, field: FieldSpec, lead: int) -> np.ndarray:
    """The block of canonical points with leading 1 at position lead,
    in enumeration order, as an (q^(n-lead), n+1) int16 array."""
    q = field.q
    m = n - lead
    count = q ** m
    out = np.zeros((count, n + 1), dtype=np.int16)
    out[:, lead] = 1
    rest = np.arange(count)
    for j in range(n, lead, -1):
        out[:, j] = rest % q
        rest //= q
    return out


@dataclass(frozen=True)
class Plane:
    """r-plane in P^n as its unique RREF spanning matrix (tuples of encodings)."""

    mat: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.mat) - 1

    @property
    def n(self) -> int:
        return len(self.mat[0]) - 1

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.mat)

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.mat]


def rref(rows, field: FieldSpec) -> Plane:
    """Reduce a spanning matrix to RREF; raises if the rows are dependent."""
    m = [list(r) for r in rows]
    if not m:
        raise RankDeficientError("empty matrix")
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        if inv != 1:
            m[rank] = [field.mul(inv, v) for v in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col]:
                c = m[i][col]
                m[i] = [field.sub(a, field.mul(c, b)) for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    if rank < nrows:
        raise RankDeficientError(
            f"matrix has rank {rank}, expected {nrows} independent rows")
    return Plane(tuple(tuple(row) for row in m))


def plane_from_rows(rows, field: FieldSpec) -> Plane:
    return rref(rows, field)


def line_through(a: Point, b: Point, field: FieldSpec) -> Plane:
    return rref([a, b], field)


def in_row_space(plane: Plane, vec, field: FieldSpec) -> bool:
    """Membership of a vector in the plane's row space (RREF elimination)."""
    v = list(vec)
    for row in plane.mat:
        piv = next(j for j, x in enumerate(row) if x)
        if v[piv]:
            c = v[piv]
            v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, row)]
    return not any(v)


def contains_plane(outer: Plane, inner: Plane, field: FieldSpec) -> bool:
    return all(in_row_space(outer, row, field) for row in inner.mat)


def gaussian_binomial(a: int, b: int, q: int) -> int:
    """Number of b-dimensional subspaces of F_q^a (exact integer)."""
    if b < 0 or b > a:
        return 0
    num = 1
    den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def num_planes(r: int, n: int, q: int) -> int:
    return gaussian_binomial(n + 1, r + 1, q)


def enumerate_planes(r: int, n: int, field: FieldSpec) -> Iterator[Plane]:
    """All r-planes of P^n: pivot sets in lex order, then free entries as a
    base-q odometer (row-major positions, last position fastest)."""
    q = field.q
    k = r + 1
    ncols = n + 1
    for pivots in combinations(range(ncols), k):
        pivset = set(pivots)
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, ncols)
                if j not in pivset]
        base = [[0] * ncols for _ in range(k)]
        for i, p in enumerate(pivots):
            base[i][p] = 1
        if not free:
            yield Plane(tuple(tuple(row) for row in base))
            continue
        for vals in product(range(q), repeat=len(free)):
            m = [row[:] for row in base]
            for (i, j), v in zip(free, vals):
                m[i][j] = v
            yield Plane(tuple(tuple(row) for row in m))


def complete_to_basis(plane: Plane, field: FieldSpec) -> tuple[tuple[int, ...], ...]:
    """Extend the plane's rows to a basis of F_q^(n+1): the plane rows first,
    then standard basis vectors at the non-pivot columns in ascending order."""
    ncols = plane.n + 1
    pivots = set(plane.pivots)
    rows = list(plane.mat)
    for j in range(ncols):
        if j not in pivots:
            rows.append(tuple(1 if c == j else 0 for c in range(ncols)))
    return tuple(rows)
