"""Command-line front end.

Exit status: 0 success (and all checks hold), 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Any

from .dehn import DehnElement
from .goldenfield import GoldenNumber, ZERO, format_golden
from .inflation import (
    NotPrimitiveError,
    build_matrix,
    char_poly,
    dehn_vector,
    eval_poly,
    frequencies,
    is_primitive,
    matrix_power_counts,
    total_volume,
    verify_eigen,
    volume_vector,
)
from .reconstruction import ReconstructionError, reconstruct
from .tiling import (
    PUBLISHED_MS4_MATRIX,
    CountVector,
    TileSystem,
    TileSystemError,
    resolve_system,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2
COMMANDS = ("inflate", "matrix", "freq", "verify", "reconstruct", "charpoly")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    system: str = "ms4"
    seed: str | None = None
    steps: int = 0
    fmt: str = "human"
    output: str | None = None
    approx: bool = False


@dataclass
class Check:
    name: str
    holds: bool
    residual: Any = None

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "residual": self.residual}


def _g(x: GoldenNumber) -> str:
    return format_golden(x)


def _approx(x: GoldenNumber) -> str:
    return repr(float(x))


# -- commands --------------------------------------------------------------
# Each returns (result, checks, rows-for-csv, human text).


def _inflate(system: TileSystem, cfg: RunConfig):
    if cfg.seed is None:
        raise UsageError("inflate needs --seed")
    if cfg.seed not in system.order:
        raise UsageError(f"unknown tile {cfg.seed!r}; system {system.name} has {list(system.order)}")
    if cfg.steps < 0:
        raise UsageError("--steps must be nonnegative")
    m = build_matrix(system)
    counts = matrix_power_counts(m, CountVector.unit(system.order, cfg.seed), cfg.steps)
    result: dict[str, Any] = {
        "seed": cfg.seed,
        "steps": cfg.steps,
        "counts": counts.as_dict(),
        "total": counts.total,
    }
    if system.has_volumes:
        vol = total_volume(system, counts)
        result["total_volume"] = _g(vol)
        if cfg.approx:
            result["total_volume_approx"] = _approx(vol)
    rows = [[name, str(n)] for name, n in zip(counts.order, counts.counts)]
    lines = [f"{system.name}: seed {cfg.seed}, {cfg.steps} inflation step(s)"]
    lines += [f"  {name}: {n}" for name, n in zip(counts.order, counts.counts)]
    lines.append(f"  total tiles: {counts.total}")
    if "total_volume" in result:
        lines.append(f"  total volume: {result['total_volume']}")
    return result, [], rows, lines


def _matrix(system: TileSystem, cfg: RunConfig):
    m = build_matrix(system)
    result = {"order": list(m.order), "rows": [list(r) for r in m.entries]}
    rows = [["tile", *m.order]] + [[name, *map(str, r)] for name, r in zip(m.order, m.entries)]
    width = max(len(str(x)) for r in m.entries for x in r)
    lines = [f"{system.name} inflation matrix (row = inflated tile, column = child tile)"]
    lines.append("    " + " ".join(n.rjust(width) for n in m.order))
    for name, r in zip(m.order, m.entries):
        lines.append(f"  {name} " + " ".join(str(x).rjust(width) for x in r))
    return result, [], rows, lines


def _freq(system: TileSystem, cfg: RunConfig):
    m = build_matrix(system)
    lam = system.perron
    try:
        f = frequencies(m, lam)
    except NotPrimitiveError as exc:
        return {"error": str(exc)}, [Check("primitive", False)], [], [str(exc)]
    result: dict[str, Any] = {
        "eigenvalue": _g(lam),
        "frequencies": {n: _g(x) for n, x in zip(m.order, f)},
    }
    if cfg.approx:
        result["frequencies_approx"] = {n: _approx(x) for n, x in zip(m.order, f)}
    rows = [[n, _g(x)] + ([_approx(x)] if cfg.approx else []) for n, x in zip(m.order, f)]
    lines = [f"{system.name} tile frequencies (Perron eigenvalue {_g(lam)})"]
    for n, x in zip(m.order, f):
        extra = f"   (approx {float(x):.12f})" if cfg.approx else ""
        lines.append(f"  {n}: {_g(x)}{extra}")
    return result, [], rows, lines


def _golden_list(vec) -> list[str]:
    return [_g(x) for x in vec]


def verification_checks(system: TileSystem) -> list[Check]:
    """Every exact identity the system should satisfy."""
    m = build_matrix(system)
    checks = []
    if system.name == "MS4" and m.order == ("z", "h", "s", "a"):
        diff = [[x - y for x, y in zip(r, p)] for r, p in zip(m.entries, PUBLISHED_MS4_MATRIX)]
        checks.append(Check("published_matrix", m.entries == PUBLISHED_MS4_MATRIX, diff))
    checks.append(Check("primitive", is_primitive(m)))
    poly = char_poly(m)
    if system.has_volumes:
        lam = system.perron
        rep = verify_eigen(m, volume_vector(system), lam)
        checks.append(Check("volume_eigenvector", rep.holds, _golden_list(rep.residual)))
        for rule in system.rules:
            lhs = lam * system.tile(rule.parent).volume
            rhs = sum((n * system.tile(c).volume for c, n in rule.children), ZERO)
            checks.append(Check(f"stone_inflation_volume[{rule.parent}]", lhs == rhs, _g(rhs - lhs)))
        r = eval_poly(poly, lam)
        checks.append(Check("charpoly_vanishes_at_perron", not r, _g(r)))
    if system.has_dehn:
        for key in system.angle_keys():
            d = dehn_vector(system, key)
            rep = verify_eigen(m, d, system.factor)
            checks.append(Check(f"dehn_eigenvector[{key}]", rep.holds, _golden_list(rep.residual)))
            conj = tuple(x.conj() for x in d)
            rep = verify_eigen(m, conj, system.factor.conj())
            checks.append(
                Check(f"dehn_conjugate_eigenvector[{key}]", rep.holds, _golden_list(rep.residual))
            )
        if system.angle_keys():
            r = eval_poly(poly, system.factor.conj())
            checks.append(Check("charpoly_vanishes_at_conjugate_factor", not r, _g(r)))
        for rule in system.rules:
            lhs = system.tile(rule.parent).dehn.scale(system.factor)
            rhs = DehnElement()
            for c, n in rule.children:
                rhs = rhs + system.tile(c).dehn.scale(n)
            checks.append(
                Check(f"dehn_additivity[{rule.parent}]", lhs == rhs, (rhs - lhs).to_json())
            )
    return checks


def _verify(system: TileSystem, cfg: RunConfig):
    checks = verification_checks(system)
    ok = all(c.holds for c in checks)
    result = {"all_hold": ok, "count": len(checks)}
    rows = [["check", "holds", "residual"]] + [
        [c.name, str(c.holds).lower(), json.dumps(c.residual)] for c in checks
    ]
    lines = [f"{system.name} verification"]
    for c in checks:
        mark = "ok  " if c.holds else "FAIL"
        tail = "" if c.holds else f"   residual: {json.dumps(c.residual)}"
        lines.append(f"  [{mark}] {c.name}{tail}")
    lines.append(f"{'all checks hold' if ok else 'SOME CHECKS FAILED'} ({len(checks)} checks)")
    return result, checks, rows, lines


def _fmt_matrix(rows) -> list[list[str]]:
    return [[str(x) for x in r] for r in rows]


def _reconstruct(system: TileSystem, cfg: RunConfig):
    try:
        rep = reconstruct(system)
    except ReconstructionError as exc:
        result = {"matrix": None, "unique": False, "integral": None,
                  "matches_rules": False, "error": str(exc)}
        return result, [Check("reconstruction", False, str(exc))], [["error", str(exc)]], [
            f"{system.name} reconstruction failed: {exc}"
        ]
    order = list(system.order)
    result = {
        "order": order,
        "A": _fmt_matrix(rep.a),
        "B": _fmt_matrix(rep.b),
        "matrix": _fmt_matrix(rep.matrix),
        "unique": True,
        "integral": rep.solution.integral,
        "matches_rules": rep.matches_rules,
    }
    checks = [
        Check("unique", True),
        Check("integral", rep.solution.integral),
        Check("matches_rules", rep.matches_rules),
    ]
    rows = [["tile", *order]] + [[n, *map(str, r)] for n, r in zip(order, rep.matrix)]
    lines = [f"{system.name} matrix reconstructed from volume and Dehn eigenvectors"]
    lines += ["  " + n + ": " + " ".join(str(x) for x in r) for n, r in zip(order, rep.matrix)]
    lines.append(f"  unique: yes, integral: {'yes' if rep.solution.integral else 'NO'}, "
                 f"matches rules: {'yes' if rep.matches_rules else 'NO'}")
    return result, checks, rows, lines


def format_poly(coeffs: list[int]) -> str:
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        p = n - i
        mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])


def _charpoly(system: TileSystem, cfg: RunConfig):
    m = build_matrix(system)
    coeffs = char_poly(m)
    n = len(coeffs) - 1
    result = {"coefficients": coeffs, "polynomial": format_poly(coeffs),
              "trace": m.trace(), "determinant": (-1) ** n * coeffs[-1]}
    rows = [[str(n - i), str(c)] for i, c in enumerate(coeffs)]
    lines = [f"{system.name} characteristic polynomial: {result['polynomial']}",
             f"  trace {result['trace']}, determinant {result['determinant']}"]
    return result, [], rows, lines


HANDLERS = {
    "inflate": _inflate,
    "matrix": _matrix,
    "freq": _freq,
    "verify": _verify,
    "reconstruct": _reconstruct,
    "charpoly": _charpoly,
}


def run(cfg: RunConfig, out=None) -> int:
    """Execute one command, write its report, and return the exit status."""
    if cfg.command not in HANDLERS:
        raise UsageError(f"unknown command {cfg.command!r}")
    try:
        system = resolve_system(cfg.system)
    except (KeyError, FileNotFoundError, TileSystemError) as exc:
        raise UsageError(str(exc)) from None
    result, checks, rows, lines = HANDLERS[cfg.command](system, cfg)

    if cfg.fmt == "json":
        doc = {
            "system": system.name,
            "command": cfg.command,
            "result": result,
            "checks": [c.to_json() for c in checks],
        }
        text = json.dumps(doc, indent=2) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        text = buf.getvalue()
    else:
        text = "\n".join(lines) + "\n"

    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        (out or sys.stdout).write(text)
    return EXIT_OK if all(c.holds for c in checks) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stoneinflation",
        description="Exact inflation matrices, eigen checks and reconstruction "
                    "for substitution tilings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--system", default="ms4",
                       help='built-in "ms4" / "ms5" or a JSON file path (default: ms4)')
        p.add_argument("--format", dest="fmt", choices=("human", "json", "csv"), default="human")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--approx", action="store_true",
                       help="add approximate float values next to exact ones")
        return p

    p = common(sub.add_parser("inflate", help="tile counts after N inflations of a seed tile"))
    p.add_argument("--seed", required=True)
    p.add_argument("--steps", type=int, default=1)
    common(sub.add_parser("matrix", help="print the inflation matrix"))
    common(sub.add_parser("freq", help="exact asymptotic tile frequencies"))
    common(sub.add_parser("verify", help="run all eigen and stone-inflation checks"))
    common(sub.add_parser("reconstruct", help="rebuild the matrix from invariants"))
    common(sub.add_parser("charpoly", help="characteristic polynomial"))
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        system=args.system,
        seed=getattr(args, "seed", None),
        steps=getattr(args, "steps", 0),
        fmt=args.fmt,
        output=args.output,
        approx=args.approx,
    )
    try:
        return run(cfg)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
