"""Canonical rendering grammar for group descriptions.

Every group that appears in a report is rendered from one small grammar:
"0", "Z", "Z^r", "Z_d", "Z_d^k", sums joined by " (+) ", localizations
"Z[1/N]" for rank-1 groups with only infinite primes, and
"{m/n_i} over <supernatural>" when a finite part remains.
"""

from __future__ import annotations

from math import prod

from .abelian import FgAbelianGroup
from .colimit import ColimitResult, SupernaturalNumber

__all__ = [
    "render_group",
    "render_rank1",
    "render_k0",
    "render_colimit",
]


def render_group(group: FgAbelianGroup) -> str:
    return group.render()


def render_rank1(s: SupernaturalNumber) -> str:
    """Rank-1 torsion-free group {m/n : n | s} in canonical grammar."""
    infinite = sorted(s.infinite_primes())
    finite = s.finite_part()
    if not infinite:
        return "Z" if finite == 1 else f"{{m/n_i}} over {s.render()}"
    if finite == 1:
        return f"Z[1/{prod(infinite)}]"
    return f"{{m/n_i}} over {s.render()}"


def render_k0(s: SupernaturalNumber, free_rank: int) -> str:
    base = render_rank1(s)
    if free_rank == 0:
        return base
    return f"{base} (+) Z^{free_rank}"


def render_colimit(result: ColimitResult) -> str:
    if result.kind == "rank1":
        return render_rank1(result.supernatural)
    if result.kind == "zero":
        return "0"
    return render_group(result.group)
