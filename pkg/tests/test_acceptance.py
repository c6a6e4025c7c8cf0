"""Exit criteria.  Every check is exact; the only tolerance is the runtime
budget of criterion 1 (60 s)."""

import io
import itertools
import random
import subprocess
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path

from sl2git.cli import run
from sl2git.exactlin import RatMatrix, rank
from sl2git.gitcore import (
    Config,
    Semistable,
    WallWarning,
    delta_interval,
    delta_points,
    extend,
    flag_multidegree,
    hilbert_uH,
    phi,
    rho,
    u_semistable,
    unipotent_act,
    verify_correspondence,
)
from sl2git.polyring import Polynomial, basis
from sl2git.sl2rep import (
    g_inv_basis,
    lowering,
    multiplicity,
    raising,
    raising_matrix,
    u_inv_basis,
    weight_operator,
)

DATA = Path(__file__).parent / "data"

SUITE = [
    Config((1, 1, 1, 1), chi=1, nden=1, dmax=3),
    Config((1, 1, 1, 1), chi=2, nden=1, dmax=3),
    Config((1, 1, 1, 1), chi=3, nden=1, dmax=3),
    Config((1, 2), chi=1, nden=1, dmax=4),
    Config((1, 1, 3), chi=2, nden=1, dmax=3),
]


def _quiet_verify(cfg):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", WallWarning)
        return verify_correspondence(cfg)


def test_c01_two_oracle_agreement(criterion):
    start = time.perf_counter()
    checked = mismatches = 0
    for n in range(1, 5):
        for m in itertools.product(range(5), repeat=n):
            if sum(m) > 10:
                continue
            for tau in range(-sum(m) - 2, sum(m) + 3):
                checked += 1
                if len(u_inv_basis(m, tau)) != multiplicity(m, tau):
                    mismatches += 1
    elapsed = time.perf_counter() - start
    criterion(
        1,
        "kernel dimension == character-count multiplicity",
        mismatches == 0 and elapsed <= 60.0,
        f"{checked} blocks, {mismatches} mismatches, {elapsed:.1f}s <= 60s",
    )


def test_c02_correspondence_suite(criterion):
    reports = [_quiet_verify(cfg) for cfg in SUITE]
    ok = all(r.passed and r.hilbert_uH == r.hilbert_flag for r in reports)
    dims1 = reports[1].hilbert_uH[1], reports[1].hilbert_flag[1]
    ok = ok and dims1 == (3, 3)
    criterion(
        2,
        "verify_correspondence passes on the suite",
        ok,
        "; ".join(f"{r.config.d_vec}/chi={r.config.chi}: {list(r.hilbert_uH)}" for r in reports),
    )


def test_c03_classical_invariant_counts(criterion):
    results = {}
    for m, expected in [((1, 1, 1, 1), 2), ((2, 2, 2, 2, 2), 6)]:
        mat, src, _ = raising_matrix(m, 0)
        kernel_dim = len(src) - rank(mat)
        g = g_inv_basis(m)
        results[m] = (len(g), kernel_dim, multiplicity(m, 0), expected)
    ok = all(a == b == c == e for a, b, c, e in results.values())
    criterion(
        3,
        "G-invariant counts 2 and 6 by kernel rank and by counting",
        ok,
        ", ".join(f"{m}: {v[0]}" for m, v in results.items()),
    )


def test_c04_chi_zero(criterion):
    rng = random.Random(2024)
    failures = []
    seen = 0
    while seen < 10:
        n = rng.randint(1, 4)
        d_vec = tuple(rng.randint(1, 4) for _ in range(n))
        if sum(d_vec) > 8:
            continue
        seen += 1
        h = hilbert_uH(Config(d_vec, chi=0, nden=1, dmax=3))
        for d in range(4):
            m = tuple(d * di for di in d_vec)
            triple = (len(g_inv_basis(m)), multiplicity(m, 0), h[d])
            if len(set(triple)) != 1:
                failures.append((d_vec, d, triple))
    criterion(4, "chi = 0: G-invariants == B[0]-invariants == U-invariants of weight 0", not failures, f"{seen} d_vecs")


def test_c05_unipotent_criterion(criterion):
    rng = random.Random(115)
    cfg = Config((1, 1, 5))
    exceptions = []
    for _ in range(200):
        while True:
            x = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)]
            if (0, 0) not in x:
                break
        verdict = u_semistable(x, cfg, 2)
        if isinstance(verdict, Semistable) != (x[2][1] != 0):
            exceptions.append(x)
        if isinstance(verdict, Semistable):
            assert verdict.witness.eval(x) == verdict.value != 0
    criterion(5, "d=(1,1,5): U-semistable iff b_3 != 0", not exceptions, f"200 points, {len(exceptions)} exceptions")


def _projectively_equal(x, y):
    return all(a * d == b * c for (a, b), (c, d) in zip(x, y))


def _random_semistable_point(rng, n):
    x = []
    for i in range(n):
        if i < n - 1 and rng.random() < 0.25:
            x.append((rng.randint(1, 4) * rng.choice((1, -1)), 0))
        else:
            x.append((rng.randint(-9, 9), rng.randint(1, 5) * rng.choice((1, -1))))
    return x


def _preimage(image, last, rng):
    """A point with the given phi-image and last affine coordinate."""
    n = len(image) + 1
    aff = [None] * n
    aff[-1] = Fraction(last)
    for i in range(n - 2, -1, -1):
        a, b = image[i]
        if b == 0:
            continue
        nxt = next(aff[j] for j in range(i + 1, n) if aff[j] is not None)
        aff[i] = Fraction(a, b) + nxt
    out = []
    for r in aff:
        lam = rng.choice((1, 2, -3))
        out.append((lam, 0) if r is None else (lam * r.numerator, lam * r.denominator))
    return out


def test_c06_phi(criterion):
    rng = random.Random(606)
    cfg = Config((1, 2, 1, 6))
    inv_bad = 0
    for _ in range(100):
        x = [(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        t = rng.randint(-7, 7)
        if phi(unipotent_act(t, x), cfg) != phi(x, cfg):
            inv_bad += 1
    sep_bad = 0
    for _ in range(100):
        x = _random_semistable_point(rng, 4)
        image = phi(x, cfg)
        y = _preimage(image, rng.randint(-9, 9), rng)
        assert phi(y, cfg) == image
        ax = Fraction(x[-1][0], x[-1][1])
        ay = Fraction(y[-1][0], y[-1][1])
        if not _projectively_equal(unipotent_act(ay - ax, x), y):
            sep_bad += 1
    criterion(
        6,
        "phi is U-invariant and separates U-orbits",
        inv_bad == 0 and sep_bad == 0,
        f"invariance failures {inv_bad}/100, separation failures {sep_bad}/100",
    )


def test_c07_restriction_isomorphism(criterion):
    problems = []
    for cfg in SUITE:
        for d in range(cfg.dmax + 1):
            flag = g_inv_basis(flag_multidegree(cfg, d))
            uinv = u_inv_basis(cfg.multidegree(d), d * cfg.chi)
            images = [rho(g, cfg, d) for g in flag]
            monos = sorted({q for p in images for q in p.terms})
            r = 0
            if monos:
                r = rank(RatMatrix.from_rows([[p.terms.get(q, 0) for p in images] for q in monos], len(images)))
            if not r == len(flag) == len(uinv):
                problems.append((cfg.d_vec, cfg.chi, d, r, len(flag), len(uinv)))
            for s in uinv:
                if rho(extend(s, cfg, d), cfg, d) != s:
                    problems.append((cfg.d_vec, cfg.chi, d, "rho o extend"))
    criterion(7, "restriction is bijective; rho o extend = id", not problems, f"{len(problems)} problems")


def test_c08_commutator(criterion):
    rng = random.Random(8)
    bad = 0
    for _ in range(50):
        n = rng.randint(1, 4)
        m = tuple(rng.randint(0, 4) for _ in range(n))
        monos = [b.q for b in basis(m)]
        p = Polynomial(m, [(rng.choice(monos), Fraction(rng.randint(-9, 9), rng.randint(1, 4))) for _ in range(6)])
        if raising(lowering(p)) - lowering(raising(p)) != weight_operator(p):
            bad += 1
    criterion(8, "[E, F] = H on 50 random polynomials", bad == 0, f"{bad} failures")


def test_c09_polytope(criterion):
    configs = [(1,), (1, 1), (3, 1, 1), (1, 2), (2, 2), (1, 1, 1), (2, 3, 4), (1, 1, 1, 1), (5, 1, 2), (2, 1, 1, 3)]
    ok = True
    for d_vec in configs:
        data = delta_points(Config(d_vec, dmax=3))
        lo, hi = delta_interval(d_vec)
        ok &= (data.lo, data.hi) == (lo, hi) and hi == sum(d_vec)
        ok &= all(lo <= p <= hi for p in data.points)
        ok &= multiplicity(d_vec, sum(d_vec)) == 1
        ok &= Fraction(sum(d_vec)) in delta_points(Config(d_vec, dmax=1)).points
    hand = {(1,): ({1}, 3), (1, 1): ({0, 1, 2}, 2), (3, 1, 1): ({1, 3, 5}, 1)}
    for d_vec, (expected, dmax) in hand.items():
        ok &= set(delta_points(Config(d_vec, dmax=dmax)).points) == expected
    criterion(9, "polytope points enclosed, top endpoint at degree 1, hand sets match", ok)


def _invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue()


def test_c10_determinism_and_cache(criterion, tmp_path):
    commands = [
        ["verify", "--degrees", "1,1,1,1", "--chi", "2", "--n", "1", "--dmax", "2"],
        ["sstest", "--mode", "U", "--degrees", "1,1,5", "--point", "1:0,1:0,1:0", "--dbound", "3"],
        ["phi", "--degrees", "1,1,5", "--point", "2:1,5:1,7:1"],
        ["suite", str(DATA / "suite.ini")],
    ]
    identical = True
    for argv in commands:
        runs = [
            subprocess.run([sys.executable, "-m", "sl2git", *argv], capture_output=True).stdout
            for _ in range(2)
        ]
        identical &= runs[0] == runs[1] and bool(runs[0])
    plain = _invoke(["suite", str(DATA / "suite.ini")])
    cold = _invoke(["suite", str(DATA / "suite.ini"), "--cache-dir", str(tmp_path)])
    warm = _invoke(["suite", str(DATA / "suite.ini"), "--cache-dir", str(tmp_path)])
    cached_same = plain == cold == warm and plain[0] == 0
    criterion(
        10,
        "byte-identical CLI output; cache on/off identical on the suite",
        identical and cached_same,
        f"{len(list(tmp_path.iterdir()))} cache files",
    )
