"""Recover an inflation matrix from eigenvector data alone.

Each datum (vector v, eigenvalue lam) gives ``M v = lam v``. If M is
rational, splitting both sides into tau-parts and 1-parts yields two
rational column equations, so k data give ``M A = B`` with A, B of shape
n x 2k. M is unique exactly when A has rank n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .goldenfield import GoldenNumber, as_golden
from .inflation import GoldenVector, build_matrix, dehn_vector, volume_vector
from .linalg import solve_linear
from .tiling import TileSystem

RationalMatrix = tuple[tuple[Fraction, ...], ...]


class ReconstructionError(ValueError):
    pass


class RankDeficientError(ReconstructionError):
    """The constraints do not determine M uniquely."""


class InconsistentError(ReconstructionError):
    """No matrix satisfies the constraints."""


@dataclass(frozen=True)
class EigenDatum:
    vector: GoldenVector
    eigenvalue: GoldenNumber

    def __post_init__(self) -> None:
        vec = tuple(as_golden(v) for v in self.vector)
        if not any(vec):
            raise ReconstructionError("eigenvector datum must be a nonzero vector")
        object.__setattr__(self, "vector", vec)
        object.__setattr__(self, "eigenvalue", as_golden(self.eigenvalue))


def primitive_part(vec: Sequence) -> GoldenVector:
    """Rescale by a rational so all coefficients are coprime integers.

    The sign is fixed so the first nonzero coefficient, read tau-part first,
    is positive. Eigen relations are unaffected by the rescaling.
    """
    vec = [as_golden(v) for v in vec]
    coeffs = [c for v in vec for c in (v.gold, v.rat)]
    nonzero = [c for c in coeffs if c]
    if not nonzero:
        raise ReconstructionError("cannot normalize the zero vector")
    den = math.lcm(*(c.denominator for c in nonzero))
    num = math.gcd(*(c.numerator for c in nonzero))
    scale = Fraction(den, num)
    if nonzero[0] < 0:
        scale = -scale
    return tuple(v * scale for v in vec)


def build_constraints(data: Sequence[EigenDatum]) -> tuple[RationalMatrix, RationalMatrix]:
    """Columns per datum: tau-parts of v, 1-parts of v (A); same for lam*v (B)."""
    if not data:
        raise ReconstructionError("need at least one eigenvector datum")
    n = len(data[0].vector)
    if any(len(d.vector) != n for d in data):
        raise ReconstructionError("all eigenvector data must have the same length")
    a_cols: list[list[Fraction]] = []
    b_cols: list[list[Fraction]] = []
    for d in data:
        image = [d.eigenvalue * v for v in d.vector]
        a_cols += [[v.gold for v in d.vector], [v.rat for v in d.vector]]
        b_cols += [[v.gold for v in image], [v.rat for v in image]]
    a = tuple(tuple(col[i] for col in a_cols) for i in range(n))
    b = tuple(tuple(col[i] for col in b_cols) for i in range(n))
    return a, b


@dataclass(frozen=True)
class Solution:
    matrix: RationalMatrix
    integral: bool

    def as_int(self) -> tuple[tuple[int, ...], ...]:
        if not self.integral:
            raise ValueError("solution has non-integer entries")
        return tuple(tuple(int(x) for x in row) for row in self.matrix)


def solve_matrix(a: Sequence[Sequence], b: Sequence[Sequence]) -> Solution:
    """The unique M with ``M A = B``, solved exactly.

    Non-integer solutions are returned with ``integral=False`` rather than
    rounded.
    """
    n = len(a)
    if len(b) != n or any(len(ra) != len(rb) for ra, rb in zip(a, b)):
        raise ValueError("A and B must have the same shape")
    # M A = B  <=>  Aᵀ Mᵀ = Bᵀ
    at = [[Fraction(a[i][j]) for i in range(n)] for j in range(len(a[0]))]
    bt = [[Fraction(b[i][j]) for i in range(n)] for j in range(len(b[0]))]
    xt, rank, consistent = solve_linear(at, bt, Fraction(0), Fraction(1))
    if not consistent:
        raise InconsistentError("no rational matrix satisfies M A = B")
    if xt is None:
        raise RankDeficientError(
            f"constraint matrix has rank {rank} < {n}; the solution is not unique"
        )
    m = tuple(tuple(xt[j][i] for j in range(n)) for i in range(n))
    integral = all(x.denominator == 1 for row in m for x in row)
    return Solution(m, integral)


def eigen_data(system: TileSystem) -> list[EigenDatum]:
    """Volume datum (eigenvalue factor**dim) and Dehn datum (eigenvalue factor)."""
    if not system.has_volumes or not system.has_dehn:
        raise ReconstructionError(
            f"system {system.name!r} needs volume and Dehn data for every tile"
        )
    keys = system.angle_keys()
    if len(keys) > 1:
        raise ReconstructionError(
            f"Dehn data uses {len(keys)} angle classes {keys}; reconstruction needs "
            "exactly one independent angle so each invariant is a single vector"
        )
    if not keys:
        raise ReconstructionError("Dehn data is identically zero; it is not an eigenvector datum")
    vol = EigenDatum(primitive_part(volume_vector(system)), system.perron)
    dehn = EigenDatum(primitive_part(dehn_vector(system, keys[0])), system.factor)
    return [vol, dehn]


@dataclass(frozen=True)
class ReconstructionReport:
    a: RationalMatrix
    b: RationalMatrix
    solution: Solution
    matches_rules: bool

    @property
    def matrix(self) -> RationalMatrix:
        return self.solution.matrix


def reconstruct(system: TileSystem) -> ReconstructionReport:
    a, b = build_constraints(eigen_data(system))
    sol = solve_matrix(a, b)
    expected = build_matrix(system).entries
    matches = sol.matrix == tuple(tuple(Fraction(x) for x in row) for row in expected)
    return ReconstructionReport(a, b, sol, matches)
