"""Substitution tile systems, their JSON form, and the built-in MS systems."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .dehn import DehnElement
from .goldenfield import GoldenNumber, ZERO, as_golden, format_golden


class TileSystemError(ValueError):
    """A tile-system document is malformed or violates an invariant."""


class PairingError(ValueError):
    """Counts of r and m differ, so they cannot be merged into h."""


@dataclass(frozen=True)
class Prototile:
    name: str
    volume: GoldenNumber | None = None
    dehn: DehnElement | None = None
    derived: bool = False


@dataclass(frozen=True)
class SubstitutionRule:
    parent: str
    children: tuple[tuple[str, int], ...]

    def count(self, name: str) -> int:
        return dict(self.children).get(name, 0)

    @property
    def size(self) -> int:
        return sum(n for _, n in self.children)


@dataclass(frozen=True)
class TileSystem:
    name: str
    factor: GoldenNumber
    dimension: int
    tiles: tuple[Prototile, ...]
    rules: tuple[SubstitutionRule, ...]
    angles: tuple[str, ...] = ()

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tiles)

    def tile(self, name: str) -> Prototile:
        for t in self.tiles:
            if t.name == name:
                return t
        raise KeyError(name)

    def rule(self, name: str) -> SubstitutionRule:
        for r in self.rules:
            if r.parent == name:
                return r
        raise KeyError(name)

    @property
    def has_volumes(self) -> bool:
        return all(t.volume is not None for t in self.tiles)

    @property
    def has_dehn(self) -> bool:
        return all(t.dehn is not None for t in self.tiles)

    @property
    def perron(self) -> GoldenNumber:
        """factor ** dimension, the growth rate of volume under inflation."""
        return self.factor ** self.dimension

    def angle_keys(self) -> list[str]:
        keys: set[str] = set()
        for t in self.tiles:
            if t.dehn is not None:
                keys.update(t.dehn.keys())
        return sorted(keys)


@dataclass(frozen=True)
class CountVector:
    """Tile counts aligned to a tile ordering."""

    order: tuple[str, ...]
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.order) != len(self.counts):
            raise ValueError("count vector length does not match tile ordering")

    @classmethod
    def from_mapping(cls, order: Iterable[str], counts: Mapping[str, int]) -> CountVector:
        order = tuple(order)
        unknown = set(counts) - set(order)
        if unknown:
            raise KeyError(f"unknown tiles: {sorted(unknown)}")
        return cls(order, tuple(int(counts.get(n, 0)) for n in order))

    @classmethod
    def unit(cls, order: Iterable[str], name: str) -> CountVector:
        return cls.from_mapping(order, {name: 1})

    def __getitem__(self, name: str) -> int:
        return self.counts[self.order.index(name)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.order, self.counts))

    @property
    def total(self) -> int:
        return sum(self.counts)


# -- loading ---------------------------------------------------------------


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise TileSystemError(msg)


def _golden(text, where: str) -> GoldenNumber:
    if not isinstance(text, str):
        raise TileSystemError(f"{where}: expected a golden-number string, got {text!r}")
    try:
        return as_golden(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise TileSystemError(f"{where}: {exc}") from None


def system_from_dict(doc: Mapping) -> TileSystem:
    """Build and validate a :class:`TileSystem` from a parsed JSON document."""
    _require(isinstance(doc, Mapping), "tile system document must be an object")
    for key in ("name", "factor", "dimension", "tiles", "rules"):
        _require(key in doc, f"missing required field {key!r}")
    name = doc["name"]
    _require(isinstance(name, str) and name != "", "name must be a non-empty string")
    factor = _golden(doc["factor"], "factor")
    _require(factor > 1, f"inflation factor must exceed 1, got {factor}")
    dim = doc["dimension"]
    _require(
        isinstance(dim, int) and not isinstance(dim, bool) and dim > 0,
        "dimension must be a positive integer",
    )

    angles: list[str] = []
    for entry in doc.get("angles", []):
        _require(isinstance(entry, Mapping) and "key" in entry, "angle entry needs a 'key'")
        _require(entry.get("independent", True) is True,
                 f"angle {entry['key']!r}: only independent angle classes are supported")
        angles.append(entry["key"])
    _require(len(set(angles)) == len(angles), "duplicate angle keys")

    raw_tiles = doc["tiles"]
    _require(isinstance(raw_tiles, list) and raw_tiles, "tiles must be a non-empty list")
    tiles: list[Prototile] = []
    for i, t in enumerate(raw_tiles):
        _require(isinstance(t, Mapping) and isinstance(t.get("name"), str) and t["name"],
                 f"tile #{i} needs a non-empty 'name'")
        tname = t["name"]
        vol = None
        if t.get("volume") is not None:
            vol = _golden(t["volume"], f"tile {tname!r} volume")
            _require(vol > 0, f"tile {tname!r}: volume must be positive, got {vol}")
        dehn = None
        if t.get("dehn") is not None:
            _require(isinstance(t["dehn"], Mapping), f"tile {tname!r}: dehn must be an object")
            for key in t["dehn"]:
                _require(key in angles, f"tile {tname!r}: undeclared angle key {key!r}")
            dehn = DehnElement({k: _golden(v, f"tile {tname!r} dehn[{k}]")
                                for k, v in t["dehn"].items()})
        tiles.append(Prototile(tname, vol, dehn, bool(t.get("derived", False))))
    names = [t.name for t in tiles]
    _require(len(set(names)) == len(names), "tile names must be unique")

    raw_rules = doc["rules"]
    _require(isinstance(raw_rules, Mapping), "rules must be an object keyed by parent tile")
    _require(set(raw_rules) == set(names),
             f"exactly one rule per tile required; rules for {sorted(raw_rules)}, tiles {names}")
    rules = []
    for parent in names:
        kids = raw_rules[parent]
        _require(isinstance(kids, Mapping), f"rule {parent!r}: children must be an object")
        for child, n in kids.items():
            _require(child in names, f"rule {parent!r}: unknown child tile {child!r}")
            _require(isinstance(n, int) and not isinstance(n, bool) and n >= 0,
                     f"rule {parent!r}: count for {child!r} must be a nonnegative integer")
        children = tuple((c, kids[c]) for c in names if kids.get(c, 0) > 0)
        _require(children != (), f"rule {parent!r}: children must be nonempty")
        rules.append(SubstitutionRule(parent, children))

    system = TileSystem(name, factor, dim, tuple(tiles), tuple(rules), tuple(angles))
    for problem in stone_inflation_problems(system):
        raise TileSystemError(problem)
    return system


def stone_inflation_problems(system: TileSystem) -> list[str]:
    """Describe every rule whose children do not add up to the inflated parent.

    Volumes must satisfy factor**dimension * vol(parent) = sum of children
    volumes; Dehn invariants must satisfy factor * D(parent) = sum of
    children invariants. Data that is absent is not checked.
    """
    problems = []
    if system.has_volumes:
        lam = system.perron
        for rule in system.rules:
            lhs = lam * system.tile(rule.parent).volume
            rhs = sum((n * system.tile(c).volume for c, n in rule.children), ZERO)
            if lhs != rhs:
                problems.append(
                    f"volume identity fails for rule {rule.parent!r}: "
                    f"inflated parent {lhs} vs children {rhs} (difference {rhs - lhs})"
                )
    if system.has_dehn:
        for rule in system.rules:
            lhs = system.tile(rule.parent).dehn.scale(system.factor)
            rhs = DehnElement()
            for c, n in rule.children:
                rhs = rhs + system.tile(c).dehn.scale(n)
            if lhs != rhs:
                problems.append(
                    f"Dehn identity fails for rule {rule.parent!r}: "
                    f"inflated parent {lhs.to_json()} vs children {rhs.to_json()} "
                    f"(difference {(rhs - lhs).to_json()})"
                )
    return problems


def load_system(document: str | bytes | Mapping) -> TileSystem:
    """Parse a JSON tile-system document (text or already-decoded object)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise TileSystemError(f"invalid JSON: {exc}") from None
    return system_from_dict(document)


def system_to_dict(system: TileSystem) -> dict:
    tiles = []
    for t in system.tiles:
        entry: dict = {"name": t.name}
        if t.volume is not None:
            entry["volume"] = format_golden(t.volume)
        if t.dehn is not None:
            entry["dehn"] = t.dehn.to_json()
        if t.derived:
            entry["derived"] = True
        tiles.append(entry)
    return {
        "name": system.name,
        "factor": format_golden(system.factor),
        "dimension": system.dimension,
        "angles": [{"key": k, "independent": True} for k in system.angles],
        "tiles": tiles,
        "rules": {r.parent: dict(r.children) for r in system.rules},
    }


def render_system(system: TileSystem) -> str:
    return json.dumps(system_to_dict(system), indent=2)


BUILTINS = {"ms4": "ms4.json", "ms5": "ms5.json"}

# Inflation matrix for (z, h, s, a) as published by Sadoc and Mosseri.
PUBLISHED_MS4_MATRIX = (
    (1, 1, 1, 1),
    (2, 1, 2, 2),
    (1, 1, 1, 2),
    (0, 0, 1, 2),
)


def builtin_system(name: str) -> TileSystem:
    key = name.lower()
    if key not in BUILTINS:
        raise KeyError(f"unknown built-in system {name!r}; choose from {sorted(BUILTINS)}")
    text = resources.files(__package__).joinpath("data", BUILTINS[key]).read_text()
    return load_system(text)


def resolve_system(source: str) -> TileSystem:
    """Accept a built-in name (``ms4``, ``ms5``) or a path to a JSON file."""
    if source.lower() in BUILTINS:
        return builtin_system(source)
    path = Path(source)
    if not path.is_file():
        raise FileNotFoundError(f"no built-in system or file named {source!r}")
    return load_system(path.read_text())


MS5_ORDER = ("a", "m", "r", "z", "s")
MS4_ORDER = ("z", "h", "s", "a")


def compose_h(counts: CountVector) -> CountVector:
    """Merge paired r and m tiles of an MS5 count vector into h tiles."""
    if set(counts.order) != set(MS5_ORDER):
        raise ValueError(f"expected MS5 tiles {MS5_ORDER}, got {counts.order}")
    c = counts.as_dict()
    if c["r"] != c["m"]:
        raise PairingError(f"r and m occur only as h = r + m pairs; got r={c['r']}, m={c['m']}")
    return CountVector(MS4_ORDER, (c["z"], c["r"], c["s"], c["a"]))
