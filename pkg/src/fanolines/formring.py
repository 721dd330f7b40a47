"""Sparse homogeneous forms over a finite field.

A Form is a degree-d homogeneous polynomial in variables x0..x{n} stored as a
map from exponent tuples to nonzero coefficients (field encodings).  The zero
form is the empty map with a declared degree, so degree is meaningful even
when all coefficients cancel.

Monomial order is degrevlex throughout: higher total degree wins, ties are
broken by the rightmost nonzero entry of the exponent difference being
negative.  The canonical coefficient vector, the renderer, and random draws
all walk monomials in descending degrevlex, leading monomial first.

Text grammar (ASCII, whitespace insignificant):

    form   := term (('+' | '-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := 'x' digits ['^' digits]
    coeff  := digits | '(' tpoly ')'
    tpoly  := tterm (('+' | '-') tterm)*
    tterm  := digits ['*' tfactor] | tfactor
    tfactor:= 't' ['^' digits]

Parenthesized t-polynomials denote extension field coefficients in the
generator t.  The renderer emits terms in descending degrevlex joined by
' + ', least nonnegative residue coefficients, and extension coefficients as
parenthesized t-polynomials in descending powers.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import FormParseError, FormValueError
from .gf import FieldSpec
from .rng import SplitMix64

Exponents = tuple[int, ...]


def degrevlex_key(exps: Exponents):
    """Sort key monotone for degrevlex: bigger key = bigger monomial."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Exponents, ...]:
    """All exponent tuples of the given total degree, descending degrevlex."""
    if nvars == 0:
        return ((),) if degree == 0 else ()

    def gen(rest: int, deg: int):
        if rest == 1:
            yield (deg,)
            return
        for first in range(deg, -1, -1):
            for tail in gen(rest - 1, deg - first):
                yield (first,) + tail

    out = sorted(gen(nvars, degree), key=degrevlex_key, reverse=True)
    return tuple(out)


def num_monomials(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1)


class Form:
    """Homogeneous polynomial with canonical integer-encoded coefficients."""

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field: FieldSpec, nvars: int, degree: int,
                 terms: dict[Exponents, int], *, _checked: bool = False):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms = terms
        if not _checked:
            self._validate()

    def _validate(self):
        if self.nvars < 1:
            raise FormValueError("a form needs at least one variable")
        if self.degree < 0:
            raise FormValueError("degree must be nonnegative")
        for exps, c in self.terms.items():
            if len(exps) != self.nvars:
                raise FormValueError(f"exponent tuple {exps} has wrong length")
            if any(e < 0 for e in exps) or sum(exps) != self.degree:
                raise FormValueError(
                    f"monomial {exps} is not homogeneous of degree {self.degree}")
            if not 1 <= c < self.field.q:
                raise FormValueError(f"coefficient {c} outside [1, q)")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, nvars: int, degree: int) -> "Form":
        return cls(field, nvars, degree, {}, _checked=True)

    @classmethod
    def from_coeffs(cls, field: FieldSpec, nvars: int, degree: int,
                    coeffs) -> "Form":
        """Build from a coefficient vector in canonical monomial order."""
        monos = monomials(nvars, degree)
        if len(coeffs) != len(monos):
            raise FormValueError(
                f"expected {len(monos)} coefficients, got {len(coeffs)}")
        terms = {m: c for m, c in zip(monos, coeffs) if c}
        return cls(field, nvars, degree, terms)

    def coeff_vector(self) -> list[int]:
        return [self.terms.get(m, 0) for m in monomials(self.nvars, self.degree)]

    def is_zero(self) -> bool:
        return not self.terms

    # -- basic algebra --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Form) and self.field.q == other.field.q
                and self.nvars == other.nvars and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field.q, self.nvars, self.degree,
                     frozenset(self.terms.items())))

    def __repr__(self):
        return f"Form(F_{self.field.q}, {render_form(self)!r})"

    def scaled(self, c: int) -> "Form":
        fld = self.field
        c = c % fld.q if fld.e == 1 else c
        if c == 0:
            return Form.zero(fld, self.nvars, self.degree)
        terms = {m: fld.mul(v, c) for m, v in self.terms.items()}
        return Form(fld, self.nvars, self.degree, terms, _checked=True)

    def plus(self, other: "Form") -> "Form":
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise FormValueError("can only add forms of equal shape")
        fld = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = fld.add(terms.get(m, 0), c)
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Form(fld, self.nvars, self.degree, terms, _checked=True)

    def evaluate(self, point) -> int:
        """Value at a point given as a tuple of field encodings."""
        if len(point) != self.nvars:
            raise FormValueError("point arity mismatch")
        fld = self.field
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    if x == 0:
                        v = 0
                        break
                    v = fld.mul(v, fld.pow_(x, e))
            if v:
                acc = fld.add(acc, v)
        return acc

    def partial(self, i: int) -> "Form":
        """Formal partial derivative with respect to x_i (degree drops by 1)."""
        if not 0 <= i < self.nvars:
            raise FormValueError(f"variable index {i} out of range")
        if self.degree == 0:
            return Form.zero(self.field, self.nvars, 0)
        fld = self.field
        terms: dict[Exponents, int] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if not e:
                continue
            v = fld.scale_int(e, c)
            if v:
                m = exps[:i] + (e - 1,) + exps[i + 1:]
                terms[m] = v
        return Form(fld, self.nvars, self.degree - 1, terms, _checked=True)


# -- linear substitution ------------------------------------------------------


def _poly_mul(a: dict, b: dict, fld: FieldSpec) -> dict:
    out: dict[Exponents, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = fld.add(out.get(m, 0), fld.mul(ca, cb))
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def substitute_linear(f: Form, rows) -> Form:
    """Compose f with the linear map sending new variable s_i to row i.

    rows is an (r+1) x (n+1) matrix of field encodings whose j-th column
    gives the coefficient of x_j as a linear form in s_0..s_r; the result is
    a form of the same degree in r+1 variables.  Composition satisfies
    substitute_linear(substitute_linear(f, A), B) ==
    substitute_linear(f, B @ A).
    """
    fld = f.field
    nrows = len(rows)
    if nrows < 1 or any(len(row) != f.nvars for row in rows):
        raise FormValueError("substitution matrix shape mismatch")
    one = (0,) * nrows
    lin = []
    for j in range(f.nvars):
        col = {}
        for i in range(nrows):
            c = rows[i][j]
            if c:
                col[one[:i] + (1,) + one[i + 1:]] = c
        lin.append(col)
    power_cache: dict[tuple[int, int], dict] = {}

    def lin_power(j: int, e: int) -> dict:
        key = (j, e)
        got = power_cache.get(key)
        if got is None:
            got = {one: 1} if e == 0 else _poly_mul(lin_power(j, e - 1), lin[j], fld)
            power_cache[key] = got
        return got

    acc: dict[Exponents, int] = {}
    for exps, c in f.terms.items():
        prod = {one: c}
        for j, e in enumerate(exps):
            if e:
                if not lin[j]:
                    prod = {}
                    break
                prod = _poly_mul(prod, lin_power(j, e), fld)
        for m, v in prod.items():
            w = fld.add(acc.get(m, 0), v)
            if w:
                acc[m] = w
            else:
                acc.pop(m, None)
    return Form(fld, nrows, f.degree, acc, _checked=True)


# -- head/tail decomposition ---------------------------------------------------


class Decomposition:
    """Split of a form along the first r variables.

    parts maps a head exponent tuple (d_0, ..., d_{r-1}) to the form in the
    remaining variables multiplying x_0^{d_0} ... x_{r-1}^{d_{r-1}}; heads
    whose part is zero are omitted.  reassemble() is an exact inverse.
    """

    __slots__ = ("field", "nvars", "degree", "r", "parts")

    def __init__(self, field, nvars, degree, r, parts):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.r = r
        self.parts = parts

    def part(self, head: Exponents) -> Form:
        got = self.parts.get(tuple(head))
        if got is None:
            return Form.zero(self.field, self.nvars - self.r,
                             self.degree - sum(head))
        return got

    def reassemble(self) -> Form:
        terms: dict[Exponents, int] = {}
        for head, part in self.parts.items():
            for tail, c in part.terms.items():
                terms[head + tail] = c
        return Form(self.field, self.nvars, self.degree, terms, _checked=True)


def decompose(f: Form, r: int) -> Decomposition:
    if not 1 <= r < f.nvars:
        raise FormValueError(f"decomposition level {r} out of range")
    buckets: dict[Exponents, dict[Exponents, int]] = {}
    for exps, c in f.terms.items():
        head, tail = exps[:r], exps[r:]
        buckets.setdefault(head, {})[tail] = c
    parts = {
        head: Form(f.field, f.nvars - r, f.degree - sum(head), tails, _checked=True)
        for head, tails in buckets.items()
    }
    return Decomposition(f.field, f.nvars, f.degree, r, parts)


# -- random draws ---------------------------------------------------------------


def random_form(field: FieldSpec, nvars: int, degree: int,
                rng: SplitMix64) -> Form:
    """Uniform nonzero form: every coefficient drawn mod q in canonical
    monomial order, the all-zero vector rejected and redrawn."""
    monos = monomials(nvars, degree)
    q = field.q
    while True:
        coeffs = [rng.next_u64() % q for _ in monos]
        if any(coeffs):
            terms = {m: c for m, c in zip(monos, coeffs) if c}
            return Form(field, nvars, degree, terms, _checked=True)


# -- text format -----------------------------------------------------------------


def _render_coeff(c: int, field: FieldSpec) -> str:
    if field.e == 1 or c < field.p:
        return str(c)
    parts = []
    for i, d in reversed(list(enumerate(field.coords(c)))):
        if not d:
            continue
        if i == 0:
            parts.append(str(d))
        else:
            tpow = "t" if i == 1 else f"t^{i}"
            parts.append(tpow if d == 1 else f"{d}*{tpow}")
    return "(" + "+".join(parts) + ")"


def render_form(f: Form) -> str:
    """Canonical text: descending degrevlex, ' + ' separators, '*' products."""
    if not f.terms:
        return "0"
    chunks = []
    for exps in sorted(f.terms, key=degrevlex_key, reverse=True):
        c = f.terms[exps]
        factors = []
        for j, e in enumerate(exps):
            if e:
                factors.append(f"x{j}" if e == 1 else f"x{j}^{e}")
        if not factors:
            chunks.append(_render_coeff(c, f.field))
        elif c == 1:
            chunks.append("*".join(factors))
        else:
            chunks.append("*".join([_render_coeff(c, f.field)] + factors))
    return " + ".join(chunks)


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.pos = 0

    def error(self, message: str) -> FormParseError:
        return FormParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected '{ch}'")
        self.pos += 1

    def digits(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected digits")
        return int(self.text[start:self.pos])

    def tfactor(self) -> int:
        # t power as a field encoding
        self.take("t")
        e = 1
        if self.peek() == "^":
            self.take("^")
            e = self.digits()
        return self.field.pow_(self.field.p, e)

    def tpoly(self) -> int:
        fld = self.field
        acc = 0
        sign = 1
        while True:
            ch = self.peek()
            if ch == "t":
                v = self.tfactor()
            elif ch.isdigit():
                v = self.digits() % fld.p
                if self.peek() == "*":
                    self.take("*")
                    v = fld.mul(v, self.tfactor())
            else:
                raise self.error("expected coefficient term")
            acc = fld.add(acc, v if sign == 1 else fld.neg(v))
            ch = self.peek()
            if ch == "+":
                self.take("+")
                sign = 1
            elif ch == "-":
                self.take("-")
                sign = -1
            else:
                return acc

    def factor(self) -> tuple[int, int]:
        # returns (variable index, exponent)
        self.take("x")
        if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
            raise self.error("expected variable index after 'x'")
        j = self.digits()
        e = 1
        if self.peek() == "^":
            self.take("^")
            e = self.digits()
        return j, e

    def term(self) -> tuple[dict[int, int], int]:
        # returns (var -> exponent, coefficient encoding)
        fld = self.field
        coeff = 1
        ch = self.peek()
        saw_coeff = False
        if ch.isdigit():
            coeff = self.digits() % fld.p
            saw_coeff = True
        elif ch == "(":
            self.take("(")
            coeff = self.tpoly()
            self.take(")")
            saw_coeff = True
        exps: dict[int, int] = {}
        first = True
        while True:
            ch = self.peek()
            if first and saw_coeff:
                if ch != "*":
                    return exps, coeff
                self.take("*")
            elif not first:
                if ch != "*":
                    return exps, coeff
                self.take("*")
            j, e = self.factor()
            exps[j] = exps.get(j, 0) + e
            first = False

    def form(self, nvars: int | None) -> Form:
        fld = self.field
        entries = []  # (exps dict, coeff, sign)
        sign = 1
        while True:
            exps, coeff = self.term()
            entries.append((exps, coeff, sign))
            ch = self.peek()
            if ch == "+":
                self.take("+")
                sign = 1
            elif ch == "-":
                self.take("-")
                sign = -1
            elif ch == "":
                break
            else:
                raise self.error(f"unexpected character {ch!r}")
        max_idx = max((j for exps, _, _ in entries for j in exps), default=-1)
        if nvars is None:
            nvars = max_idx + 1
        if max_idx >= nvars:
            raise self.error(f"variable x{max_idx} outside the {nvars}-variable ring")
        if nvars < 1:
            raise self.error("no variables present and none declared")
        degrees = {sum(exps.values()) for exps, _, _ in entries}
        if len(degrees) > 1:
            raise FormValueError(
                f"form is not homogeneous: term degrees {sorted(degrees)}")
        degree = degrees.pop()
        terms: dict[Exponents, int] = {}
        for exps, coeff, sgn in entries:
            m = tuple(exps.get(j, 0) for j in range(nvars))
            v = coeff if sgn == 1 else fld.neg(coeff)
            w = fld.add(terms.get(m, 0), v)
            if w:
                terms[m] = w
            else:
                terms.pop(m, None)
        return Form(fld, nvars, degree, terms, _checked=True)


def parse_form(text: str, field: FieldSpec, nvars: int | None = None) -> Form:
    """Parse the ASCII grammar into a Form.

    nvars fixes the ambient variable count (indices must stay below it);
    when omitted it is inferred as 1 + the largest index present.
    """
    p = _Parser(text, field)
    f = p.form(nvars)
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("trailing input")
    return f
