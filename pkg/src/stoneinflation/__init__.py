"""Exact stone-inflation engine for substitution tilings over Q(tau)."""

from .dehn import DehnElement, Named, RationalPi, dehn_of_polyhedron
from .goldenfield import ONE, TAU, ZERO, GoldenNumber, format_golden, parse_golden
from .inflation import (
    EigenReport,
    InflationMatrix,
    NotPrimitiveError,
    build_matrix,
    char_poly,
    frequencies,
    matrix_power_counts,
    total_volume,
    verify_eigen,
)
from .reconstruction import (
    EigenDatum,
    InconsistentError,
    RankDeficientError,
    ReconstructionError,
    build_constraints,
    reconstruct,
    solve_matrix,
)
from .tiling import (
    CountVector,
    PairingError,
    TileSystem,
    TileSystemError,
    builtin_system,
    compose_h,
    load_system,
    render_system,
)

__version__ = "0.1.0"
