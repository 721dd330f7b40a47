"""Reference kernels (numpy).

These are the fallback implementations of the two hot loops; the compiled
module in speed.pyx mirrors their contracts exactly and the test suite checks
the lanes agree on random inputs.

count_zero_groups: L is a stack of G groups of `group` linear functionals
over F_p (one group per candidate line), C a (K, B) batch of coefficient
vectors in F_p digits.  Output b counts the groups whose functionals all
vanish on column b.

eval_form_at_points: evaluate one form (exponent rows + encoded coefficients)
at a batch of points through field lookup tables, returning encoded values.
"""

from __future__ import annotations

import numpy as np


def _exact_matmul(L: np.ndarray, C: np.ndarray, p: int) -> np.ndarray:
    # products fit float32 when K*(p-1)^2 < 2^24 (BLAS, exact in that range)
    bound = L.shape[1] * (p - 1) * (p - 1)
    if bound < (1 << 24):
        prod = L.astype(np.float32) @ C.astype(np.float32)
    elif bound < (1 << 53):
        prod = L.astype(np.float64) @ C.astype(np.float64)
    else:
        return (L.astype(np.int64) @ C.astype(np.int64)) % p
    return prod.astype(np.int64) % p


def count_zero_groups(L: np.ndarray, C: np.ndarray, group: int, p: int) -> np.ndarray:
    """Per-column count of all-zero functional groups; (B,) int64."""
    ngroups = L.shape[0] // group
    res = _exact_matmul(L, C, p)
    zero = (res == 0).reshape(ngroups, group, -1).all(axis=1)
    return zero.sum(axis=0, dtype=np.int64)


def zero_group_mask(L: np.ndarray, c: np.ndarray, group: int, p: int) -> np.ndarray:
    """Boolean mask over groups for a single coefficient vector."""
    res = _exact_matmul(L, c.reshape(-1, 1), p)[:, 0]
    return (res == 0).reshape(-1, group).all(axis=1)


def eval_form_at_points(exps: np.ndarray, coeffs: np.ndarray, pts: np.ndarray,
                        pow_tab: np.ndarray, mul_tab: np.ndarray,
                        add_tab: np.ndarray) -> np.ndarray:
    """Encoded values of the form at each point row; (N,) int16."""
    npts = pts.shape[0]
    acc = np.zeros(npts, dtype=np.int16)
    for t in range(exps.shape[0]):
        val = np.full(npts, coeffs[t], dtype=np.int16)
        for v in range(exps.shape[1]):
            e = exps[t, v]
            if e:
                val = mul_tab[val, pow_tab[pts[:, v], e]]
        acc = add_tab[acc, val]
    return acc
