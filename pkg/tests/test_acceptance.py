"""Exit criteria, one test each; run with ``pytest -s`` to see the status lines."""

import time

import numpy as np

from conftest import random_wedge_pairs
from whitehead.bracket_oracle import FreeAlgebra, check_pbw_surjectivity, lie_span_dims
from whitehead.decomposer import peel_to, whitehead_basis_below
from whitehead.lie_kernel import check_kernel_identity, free_lie_dims
from whitehead.linalg import Field
from whitehead.series import TruncSeries, shift
from whitehead.spaces import circle, from_spheres, loops, verify_all, verify_cor35a
from whitehead.telescope import (
    circle_via_telescope,
    random_endo,
    random_quasi_idempotent,
    verify_prop11,
    verify_prop13,
)

D = 32
PAIRS = random_wedge_pairs(20, seed=2024, degree=D)


def report(number, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def test_criterion_1_identity_suite():
    worst = 0.0
    failures = []
    for G, H in PAIRS:
        start = time.perf_counter()
        reports = verify_all(G, H)
        worst = max(worst, time.perf_counter() - start)
        failures += [(G.dims, H.dims, r.identity) for r in reports if not r.equal]
    ok = not failures and worst < 1.0
    report(1, ok, f"5 identities x 20 pairs exact through degree {D}; failures={failures}; slowest pair {worst:.3f}s (< 1s)")


def test_criterion_2_kernel_identity():
    failures = [(G.dims, H.dims) for G, H in PAIRS if not check_kernel_identity(G.gen, H.gen).equal]
    t = TruncSeries.monomial(1, D)
    closed = check_kernel_identity(t, t)
    expected = TruncSeries(tuple(2**n for n in range(D + 1)))
    ok = not failures and closed.left == expected and closed.right == expected
    report(2, ok, f"kernel identity on 20 pairs (failures={failures}); g=h=t gives 1/(1-2t) on both sides")


def test_criterion_3_oracle_cross_check():
    start = time.perf_counter()
    F = Field(101)
    r1 = check_pbw_surjectivity(from_spheres([2], D), from_spheres([2], D), 8, F)
    r2 = check_pbw_surjectivity(from_spheres([2, 3], D), from_spheres([2], D), 7, F)
    elapsed = time.perf_counter() - start
    rows_ok = all(r.dim == r.count == r.rank for r in r1.rows + r2.rows)
    ok = r1.passed and r2.passed and rows_ok and len(r1.rows) == 8 and len(r2.rows) == 7 and elapsed < 60
    report(3, ok, f"count = rank = dim T(V)_n for S2,S2 (deg<=8) and S2vS3,S2 (deg<=7) over F101 in {elapsed:.2f}s (< 60s)")


def test_criterion_4_lie_dimensions():
    a = TruncSeries.monomial(1, 6, 2)
    dims = free_lie_dims(a)
    oracle = lie_span_dims(FreeAlgebra([("x", 1), ("y", 1)], Field(None), 6))
    ok = dims.coeffs[1:4] == (2, 3, 2) and list(dims.coeffs) == oracle
    report(4, ok, f"free_lie_dims(2t) = {list(dims.coeffs)}; bracket span over Q = {oracle}")


def test_criterion_5_telescopes():
    rng = np.random.default_rng(5)
    F5 = Field(5)
    p11 = p13 = 0
    for _ in range(100):
        dims = {n: int(rng.integers(0, 7)) for n in range(2, 7)}
        p11 += verify_prop11(random_quasi_idempotent(dims, F5, rng)).passed
    for _ in range(100):
        dims = {n: int(rng.integers(0, 7)) for n in range(2, 7)}
        p13 += verify_prop13(random_endo(dims, F5, rng), random_endo(dims, F5, rng)).passed
    S2 = from_spheres([2], D)
    tel = circle_via_telescope(S2, S2, 6)
    t3 = [0, 0, 0, 1, 0, 0, 0]
    circ = list(circle(S2, S2).red.coeffs[:7])
    ok = p11 == 100 and p13 == 100 and tel.passed and tel.extra["telescope_series"] == t3 == circ
    report(5, ok, f"prop11 {p11}/100, prop13 {p13}/100, telescope(S2,S2) = {tel.extra['telescope_series']} vs red(S2∘S2) = {circ}")


def test_criterion_6_peeling():
    results = {}
    for cells in ([2], [3]):
        G = from_spheres([2], 16, "G")
        H = from_spheres(cells, 16, "H")
        states = peel_to(G, H, 4)
        results[f"S2,S{cells[0]}"] = ([s.k for s in states], all(s.conservation() for s in states))
    basis = whitehead_basis_below(from_spheres([2], D, "G"), from_spheres([2], D, "H"), 3)
    ok = all(ks == [1, 2, 3, 4] and cons for ks, cons in results.values()) and len(basis) == 3
    report(6, ok, f"peel traces {results}; whitehead_basis_below(S2,S2,3) = {[p.label for p in basis]}")


def test_criterion_7_james_splitting():
    S2 = from_spheres([2], D)
    r = verify_cor35a(S2)
    expected = TruncSeries.from_dict({n: 1 for n in range(2, D + 1)}, D)
    # ad^n(S2)(S2) = S^{n+2}, listed while the bottom cell is at most D + 1
    ok = r.equal and r.left == expected == shift(loops(S2) - 1, 1) and len(r.terms) == D
    report(7, ok, f"SΩS2 series t²+t³+… through degree {D} equals the wedge of {len(r.terms)} spheres ad^n(S2)(S2)")
