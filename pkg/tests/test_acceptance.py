"""End-to-end acceptance battery.

Each test covers one external guarantee of the package and reports a single
PASS/FAIL line (collected by conftest and printed in the terminal summary).
Statistical checks are seeded; when a tolerance check misses, the census is
rerun once with a fixed fresh seed before the criterion is declared failed.
"""

import json
import os
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from conftest import record_criterion
from fanolines import cli
from fanolines.bounds import (binomial, effective_guarantee, gl_contains,
                              hockey_stick_lhs, min_admissible_q)
from fanolines.census import CensusConfig, run_census
from fanolines.errors import GuaranteeViolatedError, RankDeficientError
from fanolines.fano import (count_lines, count_lines_pointpair, find_point,
                            lift_plane, lift_step_guaranteed, point_count)
from fanolines.formring import Form, monomials, random_form, substitute_linear
from fanolines.gf import field_make
from fanolines.projgeom import (enumerate_planes, enumerate_points,
                                gaussian_binomial, plane_from_rows, rref)
from fanolines.rng import SplitMix64, substream_seed
from fanolines.smoothness import is_smooth, jacobian_ideal, singular_point_search

F2 = field_make(2)
F3 = field_make(3)
F7 = field_make(7)

SEED = 20260814
FRESH_SEED = 987654321


@contextmanager
def criterion(name):
    info = {"detail": ""}
    try:
        yield info
    except BaseException:
        line = f"FAIL {name}: {info['detail'] or 'exception'}"
        record_criterion(line)
        print(line)
        raise
    line = f"PASS {name}" + (f": {info['detail']}" if info["detail"] else "")
    record_criterion(line)
    print(line)


# ---------------------------------------------------------------------------
# censuses are shared between criteria, with the rerun-once-on-fresh-seed rule
# ---------------------------------------------------------------------------

_census_memo = {}


def _tolerant_census(key, cfg_kwargs, predicates):
    """Run once with the battery seed; if any tolerance misses, rerun once
    with the fresh seed.  Returns (report, seed_used, first_try_ok)."""
    if key in _census_memo:
        return _census_memo[key]
    threads = min(4, os.cpu_count() or 1)
    rep = run_census(CensusConfig(master_seed=SEED, threads=threads, **cfg_kwargs))
    ok = all(p(rep) for p in predicates)
    seed = SEED
    if not ok:
        rep = run_census(CensusConfig(master_seed=FRESH_SEED, threads=threads,
                                      **cfg_kwargs))
        seed = FRESH_SEED
    _census_memo[key] = (rep, seed, ok)
    return _census_memo[key]


def _q2_plain_census():
    preds = [
        lambda r: abs(float(r.stats.mean) - 9.697) <= 0.20,
        lambda r: abs(float(r.stats.sd) - 5.835) <= 0.25,
        lambda r: r.stats.min == 0,
        lambda r: abs(float(r.stats.mean) - float(Fraction(155, 16))) <= 0.20,
    ]
    return _tolerant_census("q2", dict(q=2, n=4, d=3, samples=10_000), preds)


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def test_a1_golden_appendix(capsys):
    with criterion("A1 golden appendix cubic") as info:
        t0 = time.perf_counter()
        code = cli.main(["verify", "appendix"])
        out = capsys.readouterr().out
        dt = time.perf_counter() - t0
        data = json.loads(out)
        info["detail"] = (f"smooth={data['smooth']} lines={data['line_count']} "
                          f"in {dt:.1f}s")
        assert code == 0
        assert data["smooth"] is True
        assert data["line_count"] == 8
        assert dt < 300


def test_a2_enumeration_totals():
    with criterion("A2 enumeration totals") as info:
        t0 = time.perf_counter()
        expect = {2: 155, 3: 1210, 5: 20306, 7: 140050}
        got = {}
        for q, want in expect.items():
            field = field_make(q)
            streamed = sum(1 for _ in enumerate_planes(1, 4, field))
            assert streamed == want == gaussian_binomial(5, 2, q), q
            res = count_lines(Form.from_coeffs(field, 5, 1, [1, 0, 0, 0, 0]),
                              mode="stream")
            assert res.total_lines == want, q
            # lines inside the hyperplane x0 = 0 form a P^3 line set
            assert res.count == gaussian_binomial(4, 2, q), q
            got[q] = streamed
        dt = time.perf_counter() - t0
        info["detail"] = f"{got} in {dt:.1f}s"
        assert dt < 60


def test_a3_oracle_equivalence():
    with criterion("A3 oracle equivalence") as info:
        t0 = time.perf_counter()
        checked = 0
        for field in (F2, F3):
            for i in range(50):
                rng = SplitMix64(substream_seed(SEED, 1000 + checked))
                f = random_form(field, 5, 3, rng)
                assert count_lines(f).count == count_lines_pointpair(f), (field.q, i)
                checked += 1
        dt = time.perf_counter() - t0
        info["detail"] = f"{checked} cubics agree in {dt:.1f}s"
        assert dt < 120


def test_a4_census_tables():
    with criterion("A4 census reference statistics") as info:
        t0 = time.perf_counter()
        rep2, seed2, first2 = _q2_plain_census()
        mean2, sd2 = float(rep2.stats.mean), float(rep2.stats.sd)
        assert abs(mean2 - 9.697) <= 0.20
        assert abs(sd2 - 5.835) <= 0.25
        assert rep2.stats.min == 0

        preds_s = [lambda r: abs(float(r.stats.mean) - 6.9778) <= 0.15]
        reps, seeds, _ = _tolerant_census(
            "q2smooth", dict(q=2, n=4, d=3, samples=10_000, smooth_only=True),
            preds_s)
        means = float(reps.stats.mean)
        assert abs(means - 6.9778) <= 0.15

        preds3 = [lambda r: abs(float(r.stats.mean) - 14.966) <= 0.9]
        rep3, seed3, _ = _tolerant_census(
            "q3", dict(q=3, n=4, d=3, samples=1000), preds3)
        mean3 = float(rep3.stats.mean)
        assert abs(mean3 - 14.966) <= 0.9

        dt = time.perf_counter() - t0
        info["detail"] = (f"q2 mean {mean2:.3f} sd {sd2:.3f} min 0, "
                          f"q2smooth mean {means:.4f}, q3 mean {mean3:.3f} "
                          f"in {dt:.0f}s (seeds {seed2}/{seeds}/{seed3})")
        assert dt < 600


def test_a5_formula_mean():
    with criterion("A5 heuristic mean agreement") as info:
        rep, seed, _ = _q2_plain_census()
        dev = float(rep.stats.mean) - float(Fraction(155, 16))
        info["detail"] = f"mean {float(rep.stats.mean):.4f} vs 9.6875, dev {dev:+.4f}"
        assert abs(dev) <= 0.20


def _line_points(plane, field):
    r0, r1 = plane.mat
    for a, b in enumerate_points(1, field):
        yield tuple(field.add(field.mul(a, x), field.mul(b, y))
                    for x, y in zip(r0, r1))


def test_a6_constructive_lifting():
    with criterion("A6 constructive point-to-line lifting") as info:
        t0 = time.perf_counter()
        assert lift_step_guaranteed(7, 3, 0)
        done = 0
        violations = 0
        for field, reps in ((F2, 100), (F3, 50)):
            for i in range(reps):
                rng = SplitMix64(substream_seed(SEED, 5000 + done))
                f = random_form(field, 8, 3, rng)
                pt = find_point(f)
                assert pt is not None, (field.q, i)  # d=3 < 8 variables
                start = plane_from_rows([list(pt)], field)
                try:
                    line = lift_plane(f, start, 1)
                except GuaranteeViolatedError:
                    violations += 1
                    continue
                assert line.r == 1
                for p in _line_points(line, field):
                    assert f.evaluate(p) == 0, (field.q, i, p)
                done += 1
        dt = time.perf_counter() - t0
        info["detail"] = f"{done} lifts verified, {violations} violations in {dt:.1f}s"
        assert violations == 0
        assert done == 150
        assert dt < 600


def test_a7_hockey_stick():
    with criterion("A7 hockey-stick identity") as info:
        pairs = 0
        for d in range(1, 11):
            for r in range(1, 6):
                assert hockey_stick_lhs(d, r) == binomial(d + r, r + 1), (d, r)
                pairs += 1
        info["detail"] = f"{pairs} (d, r) pairs exact"


def test_a8_effective_bounds():
    import mpmath

    with criterion("A8 effective existence bounds") as info:
        t0 = time.perf_counter()
        mpmath.mp.prec = 200
        rng = SplitMix64(SEED)
        for case in range(1000):
            d = 2 + rng.next_below(4)
            n = 1 + binomial(d + 1, 2) + rng.next_below(4)
            a = (d - 1) * (d - 2)
            b = 18 * (d + 3) ** (n + 1) - 1
            if case % 2:
                q = max(2, b + rng.next_below(4 * (a + 1) * (b.bit_length() + 2)))
            else:
                q = 2 + rng.next_below(1 << 40)
            float_verdict = mpmath.sqrt(q) > (a + mpmath.sqrt(a * a + 4 * b)) / 2
            assert effective_guarantee(q, n, d, 1) == float_verdict, (q, n, d)
        assert min_admissible_q(4, 2, 1) == 56250
        for n, d, r in [(4, 2, 1), (7, 3, 1), (11, 4, 1)]:
            m = min_admissible_q(n, d, r)
            assert effective_guarantee(m, n, d, r)
            assert not effective_guarantee(m - 1, n, d, r)
        dt = time.perf_counter() - t0
        info["detail"] = (f"1000 float cross-checks, threshold 56250, "
                         f"bracketing on 3 triples in {dt:.1f}s")
        assert dt < 60


def _restricted_singular_form(field, nvars, degree, rng):
    """Random form whose monomials all have degree >= 2 in x_1..x_{n}; such a
    form and its whole Jacobian vanish at (1, 0, ..., 0)."""
    allowed = [e for e in monomials(nvars, degree) if sum(e[1:]) >= 2]
    while True:
        terms = {e: rng.next_below(field.q) for e in allowed}
        terms = {e: c for e, c in terms.items() if c}
        if terms:
            return Form(field, nvars, degree, terms)


def _random_gl(field, size, rng):
    while True:
        rows = [[rng.next_below(field.q) for _ in range(size)]
                for _ in range(size)]
        try:
            rref(rows, field)
        except RankDeficientError:
            continue
        return rows


def test_a9_smoothness_battery():
    with criterion("A9 smoothness verdicts") as info:
        t0 = time.perf_counter()
        fermat = Form(F7, 5, 3, {tuple(3 if j == i else 0 for j in range(5)): 1
                                 for i in range(5)})
        assert is_smooth(fermat)
        fermat3 = Form(F3, 5, 3, {tuple(3 if j == i else 0 for j in range(5)): 1
                                  for i in range(5)})
        assert not is_smooth(fermat3)

        for i in range(20):
            rng = SplitMix64(substream_seed(SEED, 7000 + i))
            field = (F2, F3, field_make(5))[i % 3]
            f = _restricted_singular_form(field, 5, 3, rng)
            assert not is_smooth(f), i
            hit = singular_point_search(f, 1)
            assert hit is not None and hit[1] == 1, i
            point = hit[0]
            for g in jacobian_ideal(f):
                assert g.evaluate(point) == 0, i

        rng = SplitMix64(substream_seed(SEED, 8000))
        smooth_base = random_form(F3, 5, 3, rng)
        while not is_smooth(smooth_base):
            smooth_base = random_form(F3, 5, 3, rng)
        singular_base = _restricted_singular_form(F3, 5, 3, rng)
        assert not is_smooth(singular_base)
        for i in range(20):
            change = _random_gl(F3, 5, rng)
            assert is_smooth(substitute_linear(smooth_base, change)), i
            assert not is_smooth(substitute_linear(singular_base, change)), i

        dt = time.perf_counter() - t0
        info["detail"] = (f"Fermat verdicts, 20 vertex-singular witnesses at k=1, "
                          f"20 coordinate changes in {dt:.1f}s")
        assert dt < 300


def test_a10_point_count_window():
    with criterion("A10 point-count window") as info:
        t0 = time.perf_counter()
        rng = SplitMix64(substream_seed(SEED, 9000))
        counts = []
        while len(counts) < 10:
            f = random_form(F7, 5, 3, rng)
            if not is_smooth(f):
                continue
            c = point_count(f)
            assert gl_contains(7, 4, 3, c), c
            counts.append(c)
        dt = time.perf_counter() - t0
        info["detail"] = f"10 smooth F_7 cubic threefolds, counts {min(counts)}..{max(counts)} in {dt:.1f}s"
