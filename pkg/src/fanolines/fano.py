"""Rational lines and planes on a hypersurface, and the constructive lift.

Containment of a plane in V(f) always means the coefficient identity: the
substitution of the plane's spanning rows into f is the zero form.  Testing
all rational points of the plane is weaker over small fields (x0^2*x1 +
x0*x1^2 over F_2 kills every point of P^1 without vanishing as a form), so
point data is never used as a containment criterion, only as a search guide.

Line counting runs over the full line enumeration.  For each line with rows
u, v the coefficients of f(s*u + t*v) are d+1 linear functionals of the
coefficient vector of f; stacking them for all lines gives one matrix L over
F_p whose zero groups are exactly the lines on V(f).  L is built once per
(q, n, d) by vectorized binomial convolution (table mode, memory capped,
cached) or in fixed-size chunks (stream mode); tiny inputs can also use naive
per-line substitution.  Extension fields are handled by expanding every F_q
entry into an e x e block of prime-field digits, so the kernels only ever see
F_p arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from math import comb
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import (FormValueError, GuaranteeViolatedError, LiftNotFoundError,
                     NotContainedError)
from .formring import Form, decompose, monomials, substitute_linear
from .gf import FieldSpec
from .projgeom import (Plane, complete_to_basis, enumerate_planes,
                       enumerate_points, line_through, num_planes,
                       points_array, rref)

DEFAULT_MEMORY_CAP = 2 << 30
STREAM_CHUNK = 8192

_table_cache: dict[tuple[int, int, int], "_LineTable"] = {}


def plane_contained(f: Form, plane: Plane) -> bool:
    """Coefficient test: substitution of the plane's rows is the zero form."""
    if plane.n != f.nvars - 1:
        raise FormValueError("plane and form live in different spaces")
    return substitute_linear(f, plane.mat).is_zero()


# -- line functionals ---------------------------------------------------------


def lines_array(n: int, field: FieldSpec) -> np.ndarray:
    """All lines of P^n as an (N, 2, n+1) int16 array in enumeration order.

    Vectorized mirror of enumerate_planes(1, n, field); the equality of the
    two is pinned by tests.
    """
    q = field.q
    ncols = n + 1
    blocks = []
    for p0 in range(ncols - 1):
        for p1 in range(p0 + 1, ncols):
            free = [(0, j) for j in range(p0 + 1, ncols) if j != p1]
            free += [(1, j) for j in range(p1 + 1, ncols)]
            nf = len(free)
            cnt = q ** nf
            block = np.zeros((cnt, 2, ncols), dtype=np.int16)
            block[:, 0, p0] = 1
            block[:, 1, p1] = 1
            ar = np.arange(cnt)
            for i, (row, col) in enumerate(free):
                block[:, row, col] = (ar // q ** (nf - 1 - i)) % q
            blocks.append(block)
    return np.concatenate(blocks, axis=0)


def _functionals_for_lines(field: FieldSpec, d: int, mats: np.ndarray) -> np.ndarray:
    """(m, d+1, K) encoded coefficients of f(s*u + t*v) per line and monomial.

    Entry [l, k, t] is the coefficient of s^(d-k) t^k in the substitution of
    monomial t (canonical order) along line l.  Built by convolving the
    binomials (u_j s + v_j t) exponent by exponent, vectorized over lines.
    """
    m = mats.shape[0]
    nvars = mats.shape[2]
    monos = monomials(nvars, d)
    u = mats[:, 0, :].astype(np.int64)
    v = mats[:, 1, :].astype(np.int64)
    out = np.zeros((m, d + 1, len(monos)), dtype=np.int64)
    prime = field.e == 1
    p = field.p
    for t, exps in enumerate(monos):
        cur = np.ones((m, 1), dtype=np.int64)
        for j, e in enumerate(exps):
            for _ in range(e):
                w = cur.shape[1]
                nxt = np.zeros((m, w + 1), dtype=np.int64)
                if prime:
                    nxt[:, :w] = cur * u[:, j:j + 1]
                    nxt[:, 1:] += cur * v[:, j:j + 1]
                    nxt %= p
                else:
                    a = field.np_mul(cur, u[:, j:j + 1])
                    b = field.np_mul(cur, v[:, j:j + 1])
                    nxt[:, :w] = a
                    nxt[:, 1:] = field.np_add(nxt[:, 1:], b)
                cur = nxt
        out[:, :cur.shape[1], t] = cur
    return out


def _expand_fp_matrix(field: FieldSpec, F: np.ndarray) -> np.ndarray:
    """Flatten encoded functionals to a prime-field matrix for the kernels.

    Returns (m * (d+1) * e, K * e) int16: each F_q entry becomes the e x e
    matrix of multiplication by it, written in base-p digits.
    """
    m, rows, K = F.shape
    p, e = field.p, field.e
    if e == 1:
        return F.reshape(m * rows, K).astype(np.int16)
    blocks = np.empty((m, rows, e, K, e), dtype=np.int16)
    for j in range(e):
        prod = field.np_mul(F, p ** j)  # encoded F * t^j
        rest = prod
        for i in range(e):
            blocks[:, :, i, :, j] = (rest % p).astype(np.int16)
            rest = rest // p
    return blocks.reshape(m * rows * e, K * e)


def _coeff_digits(field: FieldSpec, vecs: np.ndarray) -> np.ndarray:
    """Coefficient encodings (K, B) -> prime-field digits (K*e, B) int16."""
    if field.e == 1:
        # astype(order='K') would keep a transposed input Fortran-ordered,
        # which the compiled kernel rejects
        return np.ascontiguousarray(vecs.astype(np.int16))
    p, e = field.p, field.e
    K, B = vecs.shape
    out = np.empty((K, e, B), dtype=np.int16)
    rest = vecs.astype(np.int64)
    for i in range(e):
        out[:, i, :] = (rest % p).astype(np.int16)
        rest = rest // p
    return out.reshape(K * e, B)


class _LineTable:
    """Cached functional matrix for all lines of P^n against degree-d forms."""

    __slots__ = ("field", "n", "d", "L", "group", "nlines")

    def __init__(self, field: FieldSpec, n: int, d: int):
        self.field = field
        self.n = n
        self.d = d
        mats = lines_array(n, field)
        self.nlines = mats.shape[0]
        F = _functionals_for_lines(field, d, mats)
        self.L = np.ascontiguousarray(_expand_fp_matrix(field, F))
        self.group = (d + 1) * field.e


def table_bytes_estimate(q: int, n: int, d: int) -> int:
    from .gf import field_make
    field = field_make(q)
    K = comb(d + n, n)
    return num_planes(1, n, q) * (d + 1) * field.e * K * field.e * 2


def get_line_table(field: FieldSpec, n: int, d: int) -> _LineTable:
    key = (field.q, n, d)
    tab = _table_cache.get(key)
    if tab is None:
        tab = _LineTable(field, n, d)
        _table_cache[key] = tab
    return tab


def clear_cache():
    _table_cache.clear()


# -- counting -----------------------------------------------------------------


@dataclass(frozen=True)
class LineCountResult:
    count: int
    mode: str
    total_lines: int
    lines: tuple[Plane, ...] | None = None


def _choose_mode(field: FieldSpec, n: int, d: int, memory_cap: int) -> str:
    if (field.q, n, d) in _table_cache:
        return "table"
    if table_bytes_estimate(field.q, n, d) <= memory_cap:
        return "table"
    return "stream"


def count_lines(f: Form, *, mode: str = "auto", list_lines: bool = False,
                memory_cap: int = DEFAULT_MEMORY_CAP,
                chunk: int = STREAM_CHUNK) -> LineCountResult:
    """Count (optionally list) the lines of P^n contained in V(f)."""
    field = f.field
    n = f.nvars - 1
    if n < 1:
        raise FormValueError("lines need an ambient P^n with n >= 1")
    if mode == "auto":
        mode = _choose_mode(field, n, d=f.degree, memory_cap=memory_cap)
    total = num_planes(1, n, field.q)

    if mode == "naive":
        found = []
        cnt = 0
        for pl in enumerate_planes(1, n, field):
            if plane_contained(f, pl):
                cnt += 1
                if list_lines:
                    found.append(pl)
        return LineCountResult(cnt, mode, total, tuple(found) if list_lines else None)

    digits = _coeff_digits(field, np.array([f.coeff_vector()], dtype=np.int64).T)

    if mode == "table":
        tab = get_line_table(field, n, f.degree)
        if list_lines:
            mask = _kernels.zero_group_mask(tab.L, digits[:, 0], tab.group, field.p)
            found = _planes_from_mask(field, n, mask)
            return LineCountResult(int(mask.sum()), mode, total, tuple(found))
        cnt = int(_kernels.count_zero_groups(tab.L, digits, tab.group, field.p)[0])
        return LineCountResult(cnt, mode, total, None)

    if mode != "stream":
        raise FormValueError(f"unknown counting mode {mode!r}")

    group = (f.degree + 1) * field.e
    cnt = 0
    found = []
    it = enumerate_planes(1, n, field)
    while True:
        planes = list(islice(it, chunk))
        if not planes:
            break
        mats = np.array([pl.mat for pl in planes], dtype=np.int16)
        F = _functionals_for_lines(field, f.degree, mats)
        L = np.ascontiguousarray(_expand_fp_matrix(field, F))
        if list_lines:
            mask = _kernels.zero_group_mask(L, digits[:, 0], group, field.p)
            cnt += int(mask.sum())
            found.extend(pl for pl, hit in zip(planes, mask) if hit)
        else:
            cnt += int(_kernels.count_zero_groups(L, digits, group, field.p)[0])
    return LineCountResult(cnt, mode, total, tuple(found) if list_lines else None)


def _planes_from_mask(field: FieldSpec, n: int, mask: np.ndarray) -> list[Plane]:
    hits = set(np.flatnonzero(mask).tolist())
    out = []
    for idx, pl in enumerate(enumerate_planes(1, n, field)):
        if idx in hits:
            out.append(pl)
            if len(out) == len(hits):
                break
    return out


def count_lines_batch(field: FieldSpec, n: int, d: int, coeff_cols: np.ndarray,
                      *, memory_cap: int = DEFAULT_MEMORY_CAP,
                      chunk: int = STREAM_CHUNK) -> np.ndarray:
    """Line counts for a batch of coefficient vectors ((K, B) encodings)."""
    digits = _coeff_digits(field, coeff_cols)
    if _choose_mode(field, n, d, memory_cap) == "table":
        tab = get_line_table(field, n, d)
        return _kernels.count_zero_groups(tab.L, digits, tab.group, field.p)
    group = (d + 1) * field.e
    counts = np.zeros(coeff_cols.shape[1], dtype=np.int64)
    it = enumerate_planes(1, n, field)
    while True:
        planes = list(islice(it, chunk))
        if not planes:
            break
        mats = np.array([pl.mat for pl in planes], dtype=np.int16)
        F = _functionals_for_lines(field, d, mats)
        L = np.ascontiguousarray(_expand_fp_matrix(field, F))
        counts += _kernels.count_zero_groups(L, digits, group, field.p)
    return counts


# -- independent oracle ---------------------------------------------------------


def count_lines_pointpair(f: Form) -> int:
    """Second counting route: candidate lines through pairs of rational zeros,
    deduplicated by canonical form, then filtered by the coefficient test.
    Agrees with count_lines because a contained line carries q+1 >= 2 zeros."""
    field = f.field
    n = f.nvars - 1
    zeros = [pt for pt in enumerate_points(n, field) if f.evaluate(pt) == 0]
    candidates: set[Plane] = set()
    for i in range(len(zeros)):
        for j in range(i + 1, len(zeros)):
            candidates.add(line_through(zeros[i], zeros[j], field))
    return sum(1 for pl in candidates if plane_contained(f, pl))


# -- point search ----------------------------------------------------------------


def _eval_block(f: Form, pts: np.ndarray) -> np.ndarray:
    field = f.field
    if field.q > (1 << 12):
        return np.array([f.evaluate(tuple(int(x) for x in row)) for row in pts],
                        dtype=np.int64)
    add_tab, mul_tab, _ = field.np_tables()
    pow_tab = field.np_pow_table(max(f.degree, 1))
    monos = sorted(f.terms, key=lambda m: m, reverse=True)
    exps = np.array(monos, dtype=np.int16).reshape(len(monos), f.nvars)
    coeffs = np.array([f.terms[m] for m in monos], dtype=np.int16)
    return _kernels.eval_form_at_points(
        np.ascontiguousarray(exps), coeffs, np.ascontiguousarray(pts.astype(np.int16)),
        pow_tab, mul_tab, add_tab)


def find_point(f: Form):
    """First rational point of V(f) in enumeration order, or None."""
    field = f.field
    n = f.nvars - 1
    for lead in range(n, -1, -1):
        pts = points_array(n, field, lead)
        vals = _eval_block(f, pts)
        hit = np.flatnonzero(vals == 0)
        if hit.size:
            return tuple(int(x) for x in pts[hit[0]])
    return None


def point_count(f: Form) -> int:
    """Number of rational points of V(f) in P^n."""
    field = f.field
    n = f.nvars - 1
    total = 0
    for lead in range(n, -1, -1):
        pts = points_array(n, field, lead)
        vals = _eval_block(f, pts)
        total += int((vals == 0).sum())
    return total


# -- plane lifting -----------------------------------------------------------------


def lift_step_guaranteed(n: int, d: int, rp: int) -> bool:
    """Chevalley-Warning guarantee for one lift step from an rp-plane: more
    tail variables than the total degree of the imposed conditions."""
    return n - (rp + 1) >= comb(d + rp + 1, rp + 2)


def lift_plane(f: Form, plane: Plane, r: int) -> Plane:
    """Extend a contained rp-plane to a contained r-plane, one dimension at a
    time, scanning tail space for a common zero of the decomposition parts.

    Raises NotContainedError when the input plane is not on V(f),
    LiftNotFoundError when some step has no rational solution, and
    GuaranteeViolatedError instead when that step's counting inequality
    promised one.
    """
    field = f.field
    n = f.nvars - 1
    d = f.degree
    if plane.n != n:
        raise FormValueError("plane and form live in different spaces")
    if not plane.r < r <= n:
        raise FormValueError(f"target dimension {r} not in ({plane.r}, {n}]")
    cur = plane
    while cur.r < r:
        cur = _lift_one(f, cur, field, n, d)
    return cur


def _lift_one(f: Form, plane: Plane, field: FieldSpec, n: int, d: int) -> Plane:
    rp = plane.r
    basis = complete_to_basis(plane, field)
    G = substitute_linear(f, basis)
    dec = decompose(G, rp + 1)
    conditions = []
    for head, part in dec.parts.items():
        if part.degree == 0:
            raise NotContainedError(
                "input plane is not contained in the hypersurface")
        conditions.append(part)
    tail_n = n - rp - 1  # dimension of the tail projective space
    v = _common_zero(conditions, tail_n, field)
    if v is None:
        if lift_step_guaranteed(n, d, rp):
            raise GuaranteeViolatedError(
                f"step {rp} -> {rp + 1}: no rational solution although "
                f"n - {rp + 1} >= C({d + rp + 1}, {rp + 2}) holds")
        raise LiftNotFoundError(
            f"step {rp} -> {rp + 1}: no rational solution in the tail space")
    new_row = [0] * (n + 1)
    for k, c in enumerate(v):
        if c:
            brow = basis[rp + 1 + k]
            new_row = [field.add(a, field.mul(c, b)) for a, b in zip(new_row, brow)]
    return rref(list(plane.mat) + [tuple(new_row)], field)


def _common_zero(conditions: list[Form], tail_n: int, field: FieldSpec):
    """First point of P^tail_n (enumeration order) killing every condition."""
    if not conditions:
        first = (0,) * tail_n + (1,)
        return first
    for lead in range(tail_n, -1, -1):
        pts = points_array(tail_n, field, lead)
        mask = None
        for part in conditions:
            vals = _eval_block(part, pts)
            good = vals == 0
            mask = good if mask is None else (mask & good)
            if not mask.any():
                break
        hit = np.flatnonzero(mask)
        if hit.size:
            return tuple(int(x) for x in pts[hit[0]])
    return None
