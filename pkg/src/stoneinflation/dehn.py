"""Formal Dehn invariants with Q(tau) edge-length coefficients.

An angle class is either a rational multiple of pi (which tensors to zero
against any length) or a named symbol. Distinct named symbols are treated
as Z-linearly independent; nothing here tries to discover relations
between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .goldenfield import GoldenNumber, ZERO, as_golden, format_golden


@dataclass(frozen=True)
class RationalPi:
    """The class of (p/q)*pi modulo pi, normalized to p/q in [0, 1)."""

    p: int
    q: int = 1

    def __post_init__(self) -> None:
        if self.q <= 0:
            raise ValueError("denominator of a rational angle must be positive")
        g = math.gcd(self.p, self.q)
        p, q = self.p // g, self.q // g
        object.__setattr__(self, "p", p % q)
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class Named:
    key: str

    def __post_init__(self) -> None:
        if not self.key or not self.key.isidentifier():
            raise ValueError(f"angle key must be an identifier, got {self.key!r}")


AngleClass = Union[RationalPi, Named]

ALPHA_MS = Named("alpha_ms")


class DehnElement:
    """Finite sum of ``coefficient (x) angle`` over named angle classes."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, object] | None = None) -> None:
        clean: dict[str, GoldenNumber] = {}
        for key, coef in (terms or {}).items():
            if isinstance(key, Named):
                key = key.key
            elif isinstance(key, RationalPi):
                continue
            c = as_golden(coef)
            if c:
                clean[key] = clean.get(key, ZERO) + c
                if not clean[key]:
                    del clean[key]
        object.__setattr__(self, "_terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("DehnElement is immutable")

    @property
    def terms(self) -> dict[str, GoldenNumber]:
        return dict(self._terms)

    def keys(self) -> list[str]:
        return list(self._terms)

    def coefficient(self, key: str | Named) -> GoldenNumber:
        if isinstance(key, Named):
            key = key.key
        return self._terms.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: DehnElement) -> DehnElement:
        if not isinstance(other, DehnElement):
            return NotImplemented
        merged = dict(self._terms)
        for key, coef in other._terms.items():
            merged[key] = merged.get(key, ZERO) + coef
        return DehnElement(merged)

    def __neg__(self) -> DehnElement:
        return DehnElement({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: DehnElement) -> DehnElement:
        if not isinstance(other, DehnElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> DehnElement:
        c = as_golden(c)
        return DehnElement({k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c) -> DehnElement:
        if not isinstance(c, (GoldenNumber, int)):
            return NotImplemented
        return self.scale(c)

    def conj(self) -> DehnElement:
        """Apply the Galois conjugation to every coefficient."""
        return DehnElement({k: v.conj() for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DehnElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def to_json(self) -> dict[str, str]:
        return {k: format_golden(v) for k, v in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> DehnElement:
        return cls({k: as_golden(v) for k, v in data.items()})

    def __repr__(self) -> str:
        return f"DehnElement({self.to_json()!r})"


DEHN_ZERO = DehnElement()


def dehn_of_polyhedron(
    edges: Iterable[tuple[object, AngleClass]],
) -> DehnElement:
    """Sum of ``length (x) angle`` over the edges of a polyhedron.

    Rational multiples of pi contribute nothing. Lengths must be positive.
    """
    terms: dict[str, GoldenNumber] = {}
    for length, angle in edges:
        length = as_golden(length)
        if length.sign() <= 0:
            raise ValueError(f"edge length must be positive, got {length}")
        if isinstance(angle, RationalPi):
            continue
        if not isinstance(angle, Named):
            raise TypeError(f"unsupported angle class {angle!r}")
        terms[angle.key] = terms.get(angle.key, ZERO) + length
    return DehnElement(terms)
