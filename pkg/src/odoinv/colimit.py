"""Sequential colimits of abelian groups.

Two regimes are supported, matching what odometer invariants need:

* systems of uniformly bounded *finite* groups, where the colimit is the
  eventual stable image of the connecting maps (detected, never assumed);
* rank-1 torsion-free systems Z -> Z -> ... with multiplication maps, whose
  colimits are the subgroups {m/n : n divides s} of Q classified by a
  supernatural number s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from .abelian import (
    AbHom,
    FgAbelianGroup,
    SpanSolver,
    iso_equal,
    lattice_quotient,
    same_presentation,
)
from .errors import NotStabilized

__all__ = [
    "INF",
    "SupernaturalNumber",
    "ColimitResult",
    "colimit_finite",
    "colimit_rank1",
    "supernatural_iso_equal",
    "factorize",
]

INF = float("inf")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class SupernaturalNumber:
    """Formal product of primes with multiplicities in N union {infinity}.

    Encodes the rank-1 group {m/n in Q : m in Z, n divides the supernatural
    number}.  Multiplicities use float("inf") for infinite exponents.
    """

    multiplicities: tuple[tuple[int, int | float], ...]

    def __post_init__(self):
        seen = set()
        prev = 0
        for p, e in self.multiplicities:
            if p < 2 or p in seen or p <= prev:
                raise ValueError("primes must be distinct and ascending")
            if e != INF and (not isinstance(e, int) or e < 1):
                raise ValueError("multiplicities must be positive integers or INF")
            seen.add(p)
            prev = p

    @classmethod
    def from_mapping(cls, mults: Mapping[int, int | float]) -> "SupernaturalNumber":
        items = tuple(sorted((p, e) for p, e in mults.items() if e != 0))
        return cls(items)

    @classmethod
    def one(cls) -> "SupernaturalNumber":
        return cls(())

    @classmethod
    def from_int(cls, n: int) -> "SupernaturalNumber":
        return cls.from_mapping(factorize(n))

    def as_dict(self) -> dict[int, int | float]:
        return dict(self.multiplicities)

    def times(self, other: "SupernaturalNumber") -> "SupernaturalNumber":
        out = self.as_dict()
        for p, e in other.multiplicities:
            cur = out.get(p, 0)
            out[p] = INF if INF in (cur, e) else cur + e
        return SupernaturalNumber.from_mapping(out)

    def with_infinite(self, primes: Sequence[int]) -> "SupernaturalNumber":
        out = self.as_dict()
        for p in primes:
            out[p] = INF
        return SupernaturalNumber.from_mapping(out)

    def infinite_primes(self) -> frozenset[int]:
        return frozenset(p for p, e in self.multiplicities if e == INF)

    def finite_part(self) -> int:
        out = 1
        for p, e in self.multiplicities:
            if e != INF:
                out *= p ** int(e)
        return out

    def is_finite(self) -> bool:
        return not self.infinite_primes()

    def render(self) -> str:
        """Serialization such as "2^inf * 3^2"; "1" for the trivial value."""
        if not self.multiplicities:
            return "1"
        parts = []
        for p, e in self.multiplicities:
            if e == INF:
                parts.append(f"{p}^inf")
            elif e == 1:
                parts.append(str(p))
            else:
                parts.append(f"{p}^{int(e)}")
        return " * ".join(parts)

    def __str__(self) -> str:
        return self.render()


def supernatural_iso_equal(a: SupernaturalNumber, b: SupernaturalNumber) -> bool:
    """Abstract isomorphism of the represented rank-1 groups.

    Finite parts shift the subgroup of Q by a finite index without changing
    the isomorphism class, so only the infinite primes matter.
    """
    return a.infinite_primes() == b.infinite_primes()


@dataclass(frozen=True)
class ColimitResult:
    """Tagged colimit value: finite stable group, rank-1 group, or zero."""

    kind: Literal["finite", "rank1", "zero"]
    group: FgAbelianGroup | None = None
    stabilization_depth: int | None = None
    supernatural: SupernaturalNumber | None = None

    @classmethod
    def finite(cls, group: FgAbelianGroup, depth: int) -> "ColimitResult":
        return cls("finite", group=group, stabilization_depth=depth)

    @classmethod
    def rank1(cls, s: SupernaturalNumber) -> "ColimitResult":
        return cls("rank1", supernatural=s)

    @classmethod
    def zero(cls) -> "ColimitResult":
        return cls("zero", group=FgAbelianGroup.trivial())


def _composites(maps: Sequence[AbHom], start: int, stop: int) -> AbHom:
    """Composite map from level start to level stop (1-based levels)."""
    comp = maps[start - 1]
    for k in range(start, stop - 1):
        comp = maps[k].compose(comp)
    return comp


def colimit_finite(groups: Sequence[FgAbelianGroup], maps: Sequence[AbHom],
                   window: int = 3) -> ColimitResult:
    """Colimit of an eventually stable system of finite groups.

    Accepts a depth d once, at a common later level M = d + 2*window,

    * the image lattices of the composites starting anywhere in
      [d, d + window] coincide (no elements enter the system late), and
    * the images of the composites from level d into every level of the
      window already carry the same isomorphism class, so the connecting
      maps restrict to isomorphisms between them.

    Then the colimit is that stable image.  Raises NotStabilized when no
    depth can be certified from the given data, which is a signal to deepen
    the system, never a wrong answer.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    if len(maps) != len(groups) - 1:
        raise ValueError("need exactly one connecting map per consecutive pair")
    for g in groups:
        if not g.is_finite():
            raise ValueError("colimit_finite requires finite groups")
    for i, m in enumerate(maps):
        if not (same_presentation(m.domain, groups[i]) and same_presentation(m.codomain, groups[i + 1])):
            raise ValueError(f"map {i} does not connect groups {i} and {i + 1}")
    if len(groups) < 2 * window + 1:
        raise NotStabilized(
            f"need at least {2 * window + 1} levels to certify with window {window}")

    for d in range(1, len(groups) - 2 * window + 1):
        top = d + 2 * window
        rel_top = groups[top - 1].require_presentation().relations
        base = _composites(maps, d, top)
        base_lat = base.image_lattice()
        base_class = lattice_quotient(base_lat, rel_top)
        base_solver = SpanSolver(base_lat)
        ok = True
        # late starts must not contribute anything new at the common level
        for i in range(d + 1, d + window + 1):
            lat_i = _composites(maps, i, top).image_lattice()
            if not base_solver.contains_all(lat_i):
                ok = False
                break
        # constant image class over the late window: the connecting maps
        # restrict to isomorphisms between the stable images there
        if ok:
            for j in range(d + window, top):
                comp = _composites(maps, d, j)
                cls = lattice_quotient(comp.image_lattice(),
                                       comp.codomain.require_presentation().relations)
                if not iso_equal(cls, base_class):
                    ok = False
                    break
        if ok:
            return ColimitResult.finite(
                FgAbelianGroup.from_invariants(0, base_class.invariant_factors), d)
    raise NotStabilized(
        "composite images kept changing within the verification window; deepen the system")


def colimit_rank1(multipliers: Sequence[int], tail: str = "explicit",
                  tail_ratio: int | None = None) -> ColimitResult:
    """Colimit of Z -> Z -> ... with multiplication maps.

    The represented group is {m/n : n divides s} where s is the product of
    the multipliers.  With tail="explicit" the list is complete and s is a
    plain integer (group isomorphic to Z).  With tail="geometric" the final
    ratio repeats forever, so every prime of tail_ratio gets an infinite
    exponent.
    """
    if not multipliers:
        raise ValueError("multipliers must be nonempty")
    if any(m < 1 for m in multipliers):
        raise ValueError("multipliers must be positive")
    s = SupernaturalNumber.one()
    for m in multipliers:
        s = s.times(SupernaturalNumber.from_int(m))
    if tail == "geometric":
        if tail_ratio is None:
            raise ValueError("geometric tail requires a ratio")
        s = s.with_infinite(sorted(factorize(tail_ratio)))
    elif tail != "explicit":
        raise ValueError(f"unknown tail kind {tail!r}")
    return ColimitResult.rank1(s)
