"""Shared spec builders for the test suite."""

from odoinv.odometer import OdometerSpec


def geometric_spec(kind: str, start: int, ratio: int, depth: int = 6) -> OdometerSpec:
    chain = tuple(start * ratio ** i for i in range(depth))
    return OdometerSpec(
        group_kind=kind, chain=chain, chain_kind="geometric", depth=depth,
        tail="geometric", tail_ratio=ratio)


def explicit_spec(kind: str, chain, tail=None, tail_ratio=None) -> OdometerSpec:
    return OdometerSpec(
        group_kind=kind, chain=tuple(chain), chain_kind="explicit",
        depth=len(chain), tail=tail, tail_ratio=tail_ratio)
