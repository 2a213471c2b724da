"""Inflation matrices: construction, iteration, eigen checks, frequencies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .goldenfield import GoldenNumber, ONE, ZERO, as_golden
from .linalg import nullspace
from .tiling import CountVector, TileSystem

GoldenVector = tuple[GoldenNumber, ...]


class NotPrimitiveError(ValueError):
    pass


@dataclass(frozen=True)
class InflationMatrix:
    """``entries[i][j]`` counts copies of tile j inside the inflated tile i.

    With this row convention the volume vector is a right eigenvector.
    """

    order: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.order)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("inflation matrix must be square and match its tile ordering")
        if any(x < 0 for row in self.entries for x in row):
            raise ValueError("inflation matrix entries must be nonnegative")

    @property
    def size(self) -> int:
        return len(self.order)

    def transpose(self) -> InflationMatrix:
        return InflationMatrix(self.order, tuple(zip(*self.entries)))

    def apply(self, vec: Sequence) -> GoldenVector:
        """Matrix times column vector."""
        if len(vec) != self.size:
            raise ValueError("vector length does not match matrix size")
        vec = [as_golden(v) for v in vec]
        return tuple(
            sum((c * v for c, v in zip(row, vec) if c), ZERO) for row in self.entries
        )

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.size))


def build_matrix(system: TileSystem) -> InflationMatrix:
    order = system.order
    rows = []
    for name in order:
        rule = system.rule(name)
        rows.append(tuple(rule.count(child) for child in order))
    return InflationMatrix(order, tuple(rows))


def inflate_once(m: InflationMatrix, counts: CountVector) -> CountVector:
    """Row vector times matrix: the tile counts after one inflation."""
    if counts.order != m.order:
        raise ValueError("count vector ordering does not match the matrix")
    n = m.size
    out = [0] * n
    for i, c in enumerate(counts.counts):
        if c:
            row = m.entries[i]
            for j in range(n):
                out[j] += c * row[j]
    return CountVector(m.order, tuple(out))


def matrix_power_counts(m: InflationMatrix, seed: CountVector, n: int) -> CountVector:
    if n < 0:
        raise ValueError("number of inflation steps must be nonnegative")
    counts = seed
    if counts.order != m.order:
        raise ValueError("seed ordering does not match the matrix")
    for _ in range(n):
        counts = inflate_once(m, counts)
    return counts


@dataclass(frozen=True)
class EigenReport:
    holds: bool
    image: GoldenVector
    residual: GoldenVector


def verify_eigen(m: InflationMatrix, vec: Sequence, eigenvalue) -> EigenReport:
    """Check ``m . vec == eigenvalue * vec`` exactly; residual is the difference."""
    lam = as_golden(eigenvalue)
    image = m.apply(vec)
    residual = tuple(x - lam * as_golden(v) for x, v in zip(image, vec))
    return EigenReport(all(not r for r in residual), image, residual)


def is_primitive(m: InflationMatrix) -> bool:
    """True if some power up to size**2 has all entries positive."""
    n = m.size
    pattern = [[x > 0 for x in row] for row in m.entries]
    power = pattern
    for _ in range(n * n):
        if all(all(row) for row in power):
            return True
        power = [
            [any(power[i][k] and pattern[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return False


def frequencies(m: InflationMatrix, eigenvalue) -> GoldenVector:
    """Asymptotic tile frequencies: the normalized positive f with Mᵀf = λf.

    ``eigenvalue`` is the Perron value factor**dimension.
    """
    if not is_primitive(m):
        raise NotPrimitiveError("inflation matrix is not primitive")
    lam = as_golden(eigenvalue)
    n = m.size
    rows = [
        [as_golden(m.entries[j][i]) - (lam if i == j else ZERO) for j in range(n)]
        for i in range(n)
    ]
    basis = nullspace(rows, ZERO, ONE)
    if len(basis) != 1:
        raise ValueError(
            f"expected a one-dimensional eigenspace for {lam}, got dimension {len(basis)}"
        )
    v = basis[0]
    total = sum(v, ZERO)
    if not total:
        raise ValueError("eigenvector sums to zero; cannot normalize")
    f = tuple(x / total for x in v)
    if any(x.sign() <= 0 for x in f):
        raise ValueError(f"eigenvector for {lam} is not positive")
    return f


def char_poly(m: InflationMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Characteristic polynomial det(xI - M), coefficients from x**n down.

    Faddeev-LeVerrier; every division is exact for integer matrices.
    """
    a = [list(row) for row in (m.entries if isinstance(m, InflationMatrix) else m)]
    n = len(a)
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # M_k = A (M_{k-1} + c_{k-1} I)
        prev = [[mk[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        mk = [[sum(a[i][t] * prev[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        tr = sum(mk[i][i] for i in range(n))
        if tr % k:
            raise ValueError("characteristic polynomial needs an integer matrix")
        c = -tr // k
        coeffs.append(c)
    return coeffs


def eval_poly(coeffs: Sequence[int], x) -> GoldenNumber:
    x = as_golden(x)
    acc = ZERO
    for c in coeffs:
        acc = acc * x + c
    return acc


def total_volume(system: TileSystem, counts: CountVector) -> GoldenNumber:
    if not system.has_volumes:
        raise ValueError(f"system {system.name!r} has no volume data")
    if counts.order != system.order:
        raise ValueError("count vector ordering does not match the system")
    return sum(
        (n * system.tile(name).volume for name, n in zip(counts.order, counts.counts) if n),
        ZERO,
    )


def volume_vector(system: TileSystem) -> GoldenVector:
    if not system.has_volumes:
        raise ValueError(f"system {system.name!r} has no volume data")
    return tuple(t.volume for t in system.tiles)


def dehn_vector(system: TileSystem, key: str) -> GoldenVector:
    """Per-tile coefficients of one angle class."""
    if not system.has_dehn:
        raise ValueError(f"system {system.name!r} has no Dehn data")
    return tuple(t.dehn.coefficient(key) for t in system.tiles)
