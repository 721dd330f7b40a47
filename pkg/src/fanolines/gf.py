"""Finite field arithmetic on canonically encoded elements.

Elements of F_q, q = p^e, are plain ints in [0, q): the element with power
basis coordinates (c_0, ..., c_{e-1}) over F_p is encoded as sum c_i p^i.
For prime fields this is the least nonnegative residue.  The basis generator
t (encoding p) is a root of the stored modulus, which for extension fields is
the Conway polynomial of F_q, so encodings are identical across runs, across
machines, and compatible between a field and its extensions.

Extension fields are supported for q <= 512 (the range the modulus table
covers); prime fields up to q <= 2^16.  Nothing in the package needs more:
large prime fields appear only in bound evaluations, which are integer
arithmetic, not field arithmetic.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import UnsupportedFieldError, ZeroDivisionInField

FIELD_CAP = 1 << 16
TABLE_CAP = 512

# Conway polynomials C_{p,e}, ascending coefficients (constant term first,
# leading 1 last), for every prime power p^e <= 512 with e >= 2.  Computed
# offline from the defining minimality property (primitive, norm-compatible
# with all proper subfields, minimal in the alternating-sign word order) and
# pinned here so element encodings are stable.
_CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
    (17, 2): (3, 16, 1),
    (19, 2): (2, 18, 1),
}


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    k = 3
    while k * k <= m:
        if m % k == 0:
            return False
        k += 2
    return True


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise UnsupportedFieldError(f"q = {q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1 or not _is_prime(p):
                raise UnsupportedFieldError(f"q = {q} is not a prime power")
            return p, e
    raise UnsupportedFieldError(f"q = {q} is not a prime power")


def _min_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fac = []
    m = p - 1
    k = 2
    while k * k <= m:
        if m % k == 0:
            fac.append(k)
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        fac.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in fac):
            return g
    raise AssertionError("no primitive root found")


class FieldSpec:
    """Immutable description of F_q plus arithmetic on encoded elements.

    Construct through field_make; instances are cached per q.
    """

    __slots__ = ("p", "e", "q", "modulus", "_mul_rows", "_add_rows", "_inv_list",
                 "_np_mul", "_np_add", "_np_inv")

    def __init__(self, p: int, e: int):
        self.p = p
        self.e = e
        self.q = p ** e
        if e == 1:
            # degree-1 Conway polynomial: x - (least primitive root)
            g = _min_primitive_root(p)
            self.modulus = ((-g) % p, 1)
        else:
            try:
                self.modulus = _CONWAY[(p, e)]
            except KeyError:
                raise UnsupportedFieldError(
                    f"no modulus table entry for q = {p}^{e}; extension fields "
                    f"are supported up to q = {TABLE_CAP}") from None
        self._mul_rows = None
        self._add_rows = None
        self._inv_list = None
        self._np_mul = None
        self._np_add = None
        self._np_inv = None
        if e > 1:
            self._build_tables()

    # -- encoding helpers ---------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        """Power basis coordinates (c_0, ..., c_{e-1}) of an encoded element."""
        p = self.p
        out = []
        for _ in range(self.e):
            a, c = divmod(a, p)
            out.append(c)
        return tuple(out)

    def from_coords(self, cs) -> int:
        a = 0
        for c in reversed(cs):
            a = a * self.p + c % self.p
        return a

    def elements(self) -> range:
        return range(self.q)

    @property
    def generator(self) -> int:
        """A fixed multiplicative generator: the modulus root t for e > 1,
        the least primitive root for prime fields."""
        return self.p if self.e > 1 else _min_primitive_root(self.p)

    # -- table construction (extension fields only) -------------------------

    def _build_tables(self):
        # exp/log of the generator t, then full q x q tables via numpy.
        # t is primitive (the modulus is a Conway polynomial), so its powers
        # sweep all units.
        p, e, q = self.p, self.e, self.q
        exp = [0] * (q - 1)
        cur = (1,) + (0,) * (e - 1)
        for k in range(q - 1):
            exp[k] = self.from_coords(cur)
            # multiply by t: shift, reduce by the monic modulus
            lead = cur[e - 1]
            cur = tuple((0,) + cur[:e - 1])
            if lead:
                cur = tuple((c - lead * m) % p for c, m in zip(cur, self.modulus[:e]))
        log = [0] * q
        for k, a in enumerate(exp):
            log[a] = k
        assert sorted(exp) == list(range(1, q)), "modulus root is not primitive"

        exp_np = np.array(exp, dtype=np.int64)
        log_np = np.array(log, dtype=np.int64)
        units = np.arange(1, q)
        mul = np.zeros((q, q), dtype=np.int16)
        mul[1:, 1:] = exp_np[(log_np[units][:, None] + log_np[units][None, :]) % (q - 1)]

        digits = np.empty((q, e), dtype=np.int64)
        rest = np.arange(q)
        for i in range(e):
            digits[:, i] = rest % p
            rest = rest // p
        sums = (digits[:, None, :] + digits[None, :, :]) % p
        weights = np.array([p ** i for i in range(e)], dtype=np.int64)
        add = (sums @ weights).astype(np.int16)

        inv = np.zeros(q, dtype=np.int16)
        inv[1:] = exp_np[(q - 1 - log_np[units]) % (q - 1)]

        self._mul_rows = mul.tolist()
        self._add_rows = add.tolist()
        self._inv_list = inv.tolist()
        self._np_mul = mul
        self._np_add = add
        self._np_inv = inv

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._add_rows[a][b]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coords([(-c) % self.p for c in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self._mul_rows[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionInField(f"inverse of 0 in F_{self.q}")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_list[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow_(self.inv(a), -k)
        if self.e == 1:
            return pow(a, k, self.p)
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow_(a, self.p)

    def scale_int(self, c: int, a: int) -> int:
        """Multiply by an integer scalar (image of c in the prime field)."""
        return self.mul(c % self.p, a)

    # -- vector arithmetic on numpy arrays of encodings ----------------------

    def np_tables(self):
        """(add, mul, inv) tables as numpy arrays; built on first use."""
        if self._np_mul is None:
            if self.e == 1:
                p = self.p
                ar = np.arange(p, dtype=np.int64)
                self._np_add = ((ar[:, None] + ar[None, :]) % p).astype(np.int16)
                self._np_mul = ((ar[:, None] * ar[None, :]) % p).astype(np.int16)
                inv = np.zeros(p, dtype=np.int16)
                for a in range(1, p):
                    inv[a] = pow(a, p - 2, p)
                self._np_inv = inv
            else:
                self._np_add = np.array(self._add_rows, dtype=np.int16)
                self._np_mul = np.array(self._mul_rows, dtype=np.int16)
                self._np_inv = np.array(self._inv_list, dtype=np.int16)
        return self._np_add, self._np_mul, self._np_inv

    def np_add(self, a: np.ndarray, b) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        tab = self.np_tables()[0]
        return tab[a, b]

    def np_mul(self, a: np.ndarray, b) -> np.ndarray:
        if self.e == 1:
            return (a * b) % self.p
        tab = self.np_tables()[1]
        return tab[a, b]

    def np_pow_table(self, max_exp: int) -> np.ndarray:
        """pow_table[a, k] = a^k for 0 <= k <= max_exp (0^0 = 1)."""
        q = self.q
        out = np.empty((q, max_exp + 1), dtype=np.int16)
        out[:, 0] = 1
        ar = np.arange(q, dtype=np.int64)
        for k in range(1, max_exp + 1):
            out[:, k] = self.np_mul(out[:, k - 1].astype(np.int64), ar).astype(np.int16)
        return out

    # -- subfield embedding ---------------------------------------------------

    def embed_into(self, big: "FieldSpec", a: int) -> int:
        """Image of a under the canonical embedding F_q -> F_{q^k}.

        Requires big.p == p and e | big.e.  The Conway compatibility of the
        moduli makes t |-> T^((P^E-1)/(p^e-1)) a field embedding, where T is
        big's generator.
        """
        if big.p != self.p or big.e % self.e != 0:
            raise UnsupportedFieldError(
                f"F_{self.q} does not embed into F_{big.q}")
        if big.e == self.e:
            return a
        if self.e == 1:
            return a % self.p  # constants encode identically
        beta = big.pow_(big.p, (big.q - 1) // (self.q - 1))
        acc = 0
        power = 1
        for c in self.coords(a):
            if c:
                acc = big.add(acc, big.mul(c, power))
            power = big.mul(power, beta)
        return acc


@lru_cache(maxsize=None)
def _field_cached(p: int, e: int) -> FieldSpec:
    return FieldSpec(p, e)


def field_make(q: int) -> FieldSpec:
    """FieldSpec for F_q.  q must be a prime power <= 2^16; extension fields
    (e >= 2) are available for q <= 512."""
    if q > FIELD_CAP:
        raise UnsupportedFieldError(f"q = {q} exceeds the supported cap 2^16")
    p, e = _factor_prime_power(q)
    if e > 1 and q > TABLE_CAP:
        raise UnsupportedFieldError(
            f"extension field F_{q} is beyond the modulus table (q <= {TABLE_CAP})")
    return _field_cached(p, e)
