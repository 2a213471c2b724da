"""Exit criteria. Each test records one PASS/FAIL line, shown in the summary."""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
import sympy

from conftest import ACCEPTANCE_LINES
from stoneinflation.dehn import DehnElement, Named, RationalPi, dehn_of_polyhedron
from stoneinflation.goldenfield import ONE, TAU, ZERO, GoldenNumber as G
from stoneinflation.inflation import (
    build_matrix,
    char_poly,
    dehn_vector,
    frequencies,
    matrix_power_counts,
    total_volume,
    verify_eigen,
    volume_vector,
)
from stoneinflation.linalg import nullspace
from stoneinflation.reconstruction import EigenDatum, build_constraints, solve_matrix
from stoneinflation.tiling import (
    CountVector,
    builtin_system,
    compose_h,
    stone_inflation_problems,
)

EQ1 = ((1, 1, 1, 1), (2, 1, 2, 2), (1, 1, 1, 2), (0, 0, 1, 2))
EQ5 = tuple(v / 12 for v in (G(2, 4), G(4, 6), G(3, 4), G(1, 2)))
EQ6 = tuple(v / 12 for v in (G(10, 16), G(16, 26), G(11, 18), G(5, 8)))
EQ3 = (TAU, G(2), TAU - 1, -TAU)
EQ7 = (TAU + 1, 2 * TAU, ONE, -TAU - 1)
EQ8_A = ((4, 2, 1, 0), (6, 4, 0, 2), (4, 3, 1, -1), (2, 1, -1, 0))
EQ8_B = ((16, 10, 1, 1), (26, 16, 2, 0), (18, 11, 0, 1), (8, 5, -1, -1))
TAU3 = G(1, 2)

MS4 = builtin_system("ms4")
MS5 = builtin_system("ms5")


@contextmanager
def criterion(number, text):
    ok = False
    try:
        yield
        ok = True
    finally:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {text}")


def best_time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def test_criterion_1_published_matrix():
    with criterion(1, "build_matrix(MS4) equals the published matrix, < 10 ms"):
        m, dt = best_time(lambda: build_matrix(MS4))
        assert m.order == ("z", "h", "s", "a")
        assert m.entries == EQ1
        assert dt < 0.010, f"{dt * 1e3:.2f} ms"


def test_criterion_2_volume_eigen():
    with criterion(2, "M v = (2tau+1) v with exact intermediate product"):
        m = build_matrix(MS4)
        assert volume_vector(MS4) == EQ5
        rep = verify_eigen(m, EQ5, TAU3)
        assert rep.image == EQ6
        assert rep.holds
        assert TAU ** 3 == TAU3


def test_criterion_3_dehn_eigen():
    with criterion(3, "M d = tau d exactly; verdict invariant under scaling by -5"):
        m = build_matrix(MS4)
        rep = verify_eigen(m, EQ3, TAU)
        assert rep.image == EQ7 and rep.holds
        scaled = tuple(-5 * x for x in EQ3)
        assert scaled == dehn_vector(MS4, "alpha_ms")
        assert verify_eigen(m, scaled, TAU).holds


def test_criterion_4_conjugate_spectrum():
    with criterion(4, "M conj(d) = (1-tau) conj(d); charpoly x^4-5x^3+2x^2+5x+1, trace 5, det 1"):
        m = build_matrix(MS4)
        conj = tuple(x.conj() for x in EQ3)
        assert verify_eigen(m, conj, 1 - TAU).holds
        assert 1 - TAU == -TAU.inverse()
        poly = char_poly(m)
        x = sympy.symbols("x")
        oracle = sympy.Poly(sympy.expand((x**2 - x - 1) * (x**2 - 4 * x - 1)), x).all_coeffs()
        assert poly == [int(c) for c in oracle] == [1, -5, 2, 5, 1]
        assert -poly[1] == m.trace() == 5
        assert poly[-1] == 1  # det for even size


def test_criterion_5_reconstruction():
    with criterion(5, "constraints reproduce A and B; unique integer solution; perturbation flagged"):
        a, b = build_constraints([EigenDatum(EQ5, TAU3), EigenDatum(EQ3, TAU)])
        # the published A, B use the volume vector without its 1/12
        assert a == tuple(tuple(Fraction(x, 12) for x in r[:2]) + tuple(Fraction(x) for x in r[2:])
                          for r in EQ8_A)
        a, b = build_constraints([EigenDatum([12 * v for v in EQ5], TAU3), EigenDatum(EQ3, TAU)])
        assert a == EQ8_A and b == EQ8_B
        sol = solve_matrix(a, b)
        assert sol.integral and sol.as_int() == EQ1
        perturbed = [list(r) for r in EQ8_B]
        perturbed[0][0] += 1
        assert not solve_matrix(EQ8_A, perturbed).integral


def test_criterion_6_ms5_ms4_consistency():
    with criterion(6, "compose_h(MS5 counts) = MS4 counts for all seeds, n <= 20; derived r, m data"):
        m4, m5 = build_matrix(MS4), build_matrix(MS5)
        seeds = [CountVector.unit(MS5.order, t) for t in ("a", "z", "s")]
        seeds.append(CountVector.from_mapping(MS5.order, {"r": 1, "m": 1}))
        for seed in seeds:
            c5, c4 = seed, compose_h(seed)
            for n in range(21):
                assert compose_h(c5) == c4, (seed, n)
                c5 = matrix_power_counts(m5, c5, 1)
                c4 = matrix_power_counts(m4, c4, 1)
        assert MS5.tile("r").volume == G(1, 4) / 12
        assert MS5.tile("m").volume == G(3, 2) / 12
        assert MS5.tile("r").dehn == DehnElement({"alpha_ms": -5 * (TAU + 1)})
        assert MS5.tile("m").dehn == DehnElement({"alpha_ms": -5 * (1 - TAU)})
        assert MS5.tile("r").dehn + MS5.tile("m").dehn == MS4.tile("h").dehn
        assert MS5.tile("r").volume + MS5.tile("m").volume == MS4.tile("h").volume
        assert stone_inflation_problems(MS5) == []
        assert verify_eigen(m5, dehn_vector(MS5, "alpha_ms"), TAU).holds
        assert verify_eigen(m5, volume_vector(MS5), TAU3).holds


def test_criterion_7_frequencies():
    with criterion(7, "1-dim exact eigenspace; positive, sums to 1, matches 30-step ratios to 1e-10, < 1 s"):
        m = build_matrix(MS4)
        t0 = time.perf_counter()
        f = frequencies(m, TAU3)
        dt = time.perf_counter() - t0
        shifted = [[G(m.entries[j][i]) - (TAU3 if i == j else ZERO) for j in range(4)]
                   for i in range(4)]
        assert len(nullspace(shifted, ZERO, ONE)) == 1
        assert all(x.sign() > 0 for x in f)
        assert sum(f, ZERO) == ONE
        assert verify_eigen(m.transpose(), f, TAU3).holds
        counts = matrix_power_counts(m, CountVector.unit(m.order, "z"), 30)
        for x, c in zip(f, counts.counts):
            assert abs(float(x) - c / counts.total) < 1e-10
        assert dt < 1.0, f"{dt:.3f} s"


def _random_edges(rng, n, rational_only=False):
    out = []
    for _ in range(n):
        length = G(rng.randint(1, 30), rng.randint(0, 30))
        if rational_only or rng.random() < 0.5:
            out.append((length, RationalPi(rng.randint(-40, 40), rng.randint(1, 16))))
        else:
            out.append((length, Named(rng.choice(["alpha_ms", "theta", "phi"]))))
    return out


def test_criterion_8_dehn_calculator():
    with criterion(8, "cube Dehn invariant 0; rational-pi edges vanish; additivity on 1000 cases"):
        assert dehn_of_polyhedron([(1, RationalPi(1, 2))] * 12).is_zero()
        rng = random.Random(2024)
        for _ in range(1000):
            assert dehn_of_polyhedron(_random_edges(rng, rng.randint(0, 20), True)).is_zero()
        for _ in range(1000):
            e1 = _random_edges(rng, rng.randint(0, 20))
            e2 = _random_edges(rng, rng.randint(0, 20))
            assert dehn_of_polyhedron(e1 + e2) == dehn_of_polyhedron(e1) + dehn_of_polyhedron(e2)


def test_criterion_9_scale():
    with criterion(9, "30-fold inflation from z exact; volume (2tau+1)^30 (4tau+2)/12; < 1 s"):
        m = build_matrix(MS4)
        t0 = time.perf_counter()
        counts = matrix_power_counts(m, CountVector.unit(m.order, "z"), 30)
        vol = total_volume(MS4, counts)
        dt = time.perf_counter() - t0
        ref = sympy.Matrix(EQ1) ** 30
        assert list(counts.counts) == [int(x) for x in ref.row(0)]
        assert vol == TAU3 ** 30 * G(2, 4) / 12
        assert dt < 1.0, f"{dt:.3f} s"
