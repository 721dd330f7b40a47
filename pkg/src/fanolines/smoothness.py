"""Smoothness of projective hypersurfaces via Groebner bases.

The Jacobian ideal of a form f is (f, all nonzero partials); f itself is kept
because in characteristic p | d the partials alone can cut a strictly smaller
scheme.  V(f) is smooth over the algebraic closure iff that homogeneous ideal
cuts nothing in P^n, and with a degrevlex Groebner basis that emptiness test
is purely combinatorial: every variable must head a basis element whose
leading monomial is a pure power (a constant leading monomial makes the ideal
the unit ideal, which counts as empty).

Buchberger runs with the normal selection strategy (lowest lcm degree first,
ties by lexicographic pair index) plus the product and chain criteria, and is
deterministic.  Monomials are packed into single integers whose natural order
is degrevlex, so leading-term extraction is a plain max(); coefficients over
F_2 degenerate to presence/absence and polynomials become key sets, which is
the hot path for the census smoothness filter.

Resource caps guard against runaway bases: exceeding them raises
ResourceCapExceeded, a distinct error, never a wrong answer.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import FormValueError, ResourceCapExceeded
from .formring import Form, degrevlex_key
from .gf import FieldSpec, field_make
from .projgeom import points_array

DEFAULT_MAX_BASIS = 10_000
DEFAULT_MAX_DEGREE = 60


def jacobian_ideal(f: Form) -> tuple[Form, ...]:
    """f together with its nonzero partials, duplicates removed."""
    gens = [f] if not f.is_zero() else []
    for i in range(f.nvars):
        g = f.partial(i)
        if not g.is_zero():
            gens.append(g)
    return tuple(dict.fromkeys(gens))


class _Ring:
    """Packing context: degrevlex-ordered integer keys for monomials."""

    __slots__ = ("field", "nvars", "bits", "base", "mask", "_unpack")

    def __init__(self, field: FieldSpec, nvars: int, max_exp: int):
        self.field = field
        self.nvars = nvars
        # digits hold complemented exponents up to 2*max_exp (S-polynomial
        # degrees), and key arithmetic is plain integer add/subtract because
        # the packing is affine in the exponent vector
        self.bits = max(4, (2 * max_exp + 2).bit_length())
        self.base = 1 << self.bits
        self.mask = self.base - 1
        self._unpack: dict[int, tuple[int, ...]] = {}

    def pack(self, exps) -> int:
        m = self.base - 1
        key = sum(exps)
        for j in range(self.nvars - 1, -1, -1):
            key = (key << self.bits) | (m - exps[j])
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        got = self._unpack.get(key)
        if got is None:
            m = self.base - 1
            k = key
            out = []
            for _ in range(self.nvars):
                out.append(m - (k & self.mask))
                k >>= self.bits
            got = tuple(out)
            self._unpack[key] = got
        return got

    def deg(self, key: int) -> int:
        return key >> (self.bits * self.nvars)


def _to_packed(f: Form, ring: _Ring):
    if ring.field.p == 2 and ring.field.e == 1:
        return {ring.pack(exps) for exps in f.terms}
    return {ring.pack(exps): c for exps, c in f.terms.items()}


def _to_form(poly, ring: _Ring, degree: int) -> Form:
    fld = ring.field
    if isinstance(poly, set):
        terms = {ring.unpack(k): 1 for k in poly}
    else:
        terms = {ring.unpack(k): c for k, c in poly.items()}
    return Form(fld, ring.nvars, degree, terms, _checked=True)


def _monic(poly, ring: _Ring):
    if isinstance(poly, set):
        return poly
    fld = ring.field
    c = poly[max(poly)]
    if c == 1:
        return poly
    inv = fld.inv(c)
    return {k: fld.mul(inv, v) for k, v in poly.items()}


def _reduce_full(h, basis_lms, basis_exps, basis_polys, ring: _Ring):
    """Full normal form of h against a monic basis; h is consumed."""
    nb = len(basis_lms)
    unpack = ring.unpack
    if isinstance(h, set):
        rem = set()
        while h:
            m = max(h)
            me = unpack(m)
            for i in range(nb):
                be = basis_exps[i]
                hit = True
                for a, b in zip(be, me):
                    if a > b:
                        hit = False
                        break
                if hit:
                    shift = m - basis_lms[i]
                    h ^= {t + shift for t in basis_polys[i]}
                    break
            else:
                h.discard(m)
                rem.add(m)
        return rem
    fld = ring.field
    prime = fld.e == 1
    p = fld.p
    rem = {}
    while h:
        m = max(h)
        me = unpack(m)
        c = h[m]
        for i in range(nb):
            be = basis_exps[i]
            hit = True
            for a, b in zip(be, me):
                if a > b:
                    hit = False
                    break
            if hit:
                shift = m - basis_lms[i]
                g = basis_polys[i]
                if prime:
                    for t, gc in g.items():
                        k = t + shift
                        v = (h.get(k, 0) - c * gc) % p
                        if v:
                            h[k] = v
                        else:
                            h.pop(k, None)
                else:
                    for t, gc in g.items():
                        k = t + shift
                        v = fld.sub(h.get(k, 0), fld.mul(c, gc))
                        if v:
                            h[k] = v
                        else:
                            h.pop(k, None)
                break
        else:
            del h[m]
            rem[m] = c
    return rem


def _spoly(fi, lmi, fj, lmj, lcm_key, ring: _Ring):
    si = lcm_key - lmi
    sj = lcm_key - lmj
    if isinstance(fi, set):
        return {t + si for t in fi} ^ {t + sj for t in fj}
    fld = ring.field
    out = {}
    for t, c in fi.items():
        out[t + si] = c
    for t, c in fj.items():
        k = t + sj
        v = fld.sub(out.get(k, 0), c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def buchberger(gens, *, max_basis: int = DEFAULT_MAX_BASIS,
               max_degree: int = DEFAULT_MAX_DEGREE) -> tuple[Form, ...]:
    """Reduced degrevlex Groebner basis of the ideal the forms generate.

    The result is the unique reduced basis: monic elements, none of whose
    terms is divisible by another element's leading monomial, sorted by
    ascending leading monomial.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ()
    field = gens[0].field
    nvars = gens[0].nvars
    for g in gens:
        if g.field.q != field.q or g.nvars != nvars:
            raise FormValueError("generators live in different rings")
        if g.degree > max_degree:
            raise ResourceCapExceeded(
                f"generator degree {g.degree} exceeds cap {max_degree}")
    ring = _Ring(field, nvars, max_degree)

    lms: list[int] = []
    exps: list[tuple[int, ...]] = []
    polys: list = []
    pending: set[tuple[int, int]] = set()
    heap: list[tuple[int, int, int]] = []

    def push(poly):
        if len(polys) >= max_basis:
            raise ResourceCapExceeded(f"basis size exceeds cap {max_basis}")
        lm = max(poly)
        if ring.deg(lm) > max_degree:
            raise ResourceCapExceeded(
                f"basis element degree {ring.deg(lm)} exceeds cap {max_degree}")
        lms.append(lm)
        exps.append(ring.unpack(lm))
        polys.append(_monic(poly, ring))
        t = len(polys) - 1
        for k in range(t):
            lcm_deg = sum(max(a, b) for a, b in zip(exps[k], exps[t]))
            pending.add((k, t))
            heapq.heappush(heap, (lcm_deg, k, t))

    for g in sorted(gens, key=lambda g: g.degree):
        poly = _reduce_full(_to_packed(g, ring), lms, exps, polys, ring)
        if poly:
            push(poly)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        ei, ej = exps[i], exps[j]
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # product criterion: coprime leading monomials
        lcm_exps = tuple(max(a, b) for a, b in zip(ei, ej))
        skip = False
        for k in range(len(polys)):
            if k == i or k == j:
                continue
            ek = exps[k]
            if all(a <= b for a, b in zip(ek, lcm_exps)):
                pi = (min(i, k), max(i, k))
                pj = (min(j, k), max(j, k))
                if pi not in pending and pj not in pending:
                    skip = True  # chain criterion
                    break
        if skip:
            continue
        lcm_key = ring.pack(lcm_exps)
        s = _spoly(polys[i], lms[i], polys[j], lms[j], lcm_key, ring)
        rem = _reduce_full(s, lms, exps, polys, ring)
        if rem:
            push(rem)

    return _interreduce(lms, exps, polys, ring)


def _interreduce(lms, exps, polys, ring: _Ring) -> tuple[Form, ...]:
    order = sorted(range(len(polys)), key=lambda i: lms[i])
    kept: list[int] = []
    for i in order:
        ei = exps[i]
        if any(all(a <= b for a, b in zip(exps[k], ei)) for k in kept):
            continue
        kept.append(i)
    out_lms = [lms[i] for i in kept]
    out_exps = [exps[i] for i in kept]
    out_polys = [polys[i] for i in kept]
    final = []
    for pos in range(len(kept)):
        others_lms = out_lms[:pos] + out_lms[pos + 1:]
        others_exps = out_exps[:pos] + out_exps[pos + 1:]
        others_polys = out_polys[:pos] + out_polys[pos + 1:]
        poly = out_polys[pos]
        h = set(poly) if isinstance(poly, set) else dict(poly)
        red = _reduce_full(h, others_lms, others_exps, others_polys, ring)
        final.append((out_lms[pos], red))
    final.sort(key=lambda t: t[0])
    return tuple(_to_form(poly, ring, ring.deg(max(poly))) for _, poly in final)


def normal_form(f: Form, gb) -> Form:
    """Full remainder of f on division by the basis (basis order, leading
    term checked first)."""
    if f.is_zero():
        return f
    gb = [g for g in gb if not g.is_zero()]
    max_exp = max([f.degree] + [g.degree for g in gb])
    ring = _Ring(f.field, f.nvars, max_exp)
    lms, exps, polys = [], [], []
    for g in gb:
        poly = _monic(_to_packed(g, ring), ring)
        lm = max(poly)
        lms.append(lm)
        exps.append(ring.unpack(lm))
        polys.append(poly)
    rem = _reduce_full(_to_packed(f, ring), lms, exps, polys, ring)
    fld = f.field
    if isinstance(rem, set):
        terms = {ring.unpack(k): 1 for k in rem}
    else:
        terms = {ring.unpack(k): c for k, c in rem.items()}
    return Form(fld, f.nvars, f.degree, terms, _checked=True)


def is_projectively_empty(gb, nvars: int) -> bool:
    """Does the basis cut the empty subscheme of P^(nvars-1)?  True iff every
    variable has a basis element with a pure-power leading monomial."""
    covered = [False] * nvars
    for g in gb:
        if g.is_zero():
            continue
        lm = max(g.terms, key=degrevlex_key)
        support = [j for j, e in enumerate(lm) if e]
        if not support:
            return True  # unit ideal
        if len(support) == 1:
            covered[support[0]] = True
    return all(covered)


def is_smooth(f: Form, *, max_basis: int = DEFAULT_MAX_BASIS,
              max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    """Smoothness of V(f) over the algebraic closure."""
    if f.is_zero():
        return False
    gb = buchberger(jacobian_ideal(f), max_basis=max_basis, max_degree=max_degree)
    return is_projectively_empty(gb, f.nvars)


def singular_point_search(f: Form, k_max: int):
    """Scan P^n(F_{q^k}) for k = 1..k_max for a common zero of the Jacobian
    generators; returns (point, k) for the first hit in enumeration order,
    None if every scan comes up empty."""
    from .fano import _eval_block

    base = f.field
    gens = jacobian_ideal(f)
    n = f.nvars - 1
    for k in range(1, k_max + 1):
        big = field_make(base.q ** k)
        big_gens = []
        for g in gens:
            terms = {e: base.embed_into(big, c) for e, c in g.terms.items()}
            big_gens.append(Form(big, g.nvars, g.degree, terms, _checked=True))
        for lead in range(n, -1, -1):
            pts = points_array(n, big, lead)
            mask = None
            for g in big_gens:
                good = _eval_block(g, pts) == 0
                mask = good if mask is None else (mask & good)
                if not mask.any():
                    break
            hit = np.flatnonzero(mask)
            if hit.size:
                return tuple(int(x) for x in pts[hit[0]]), k
    return None
