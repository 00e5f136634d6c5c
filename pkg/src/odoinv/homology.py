"""Homology computations.

Four layers, increasingly specialized:

* ``z2_homology``: 2-periodic homology of an involution module, computed by
  Smith normal form on the permutation-difference matrices 1 -+ sigma_*.
* ``transfer_map``: the corestriction between consecutive chain levels, in
  degree 0 multiplication by the index, in degree 1 the coset-cocycle sum
  over a transversal on abelianizations.
* ``odometer_homology``: the assembled answer for a whole chain, via the
  rank-1 colimit in degree 0, the stabilized transfer colimit in degree 1,
  the even-degree vanishing closed form, and fixed-point counts in the
  higher odd degrees.
* ``groupoid_chain_homology`` plus ``FiniteGroupoid``: an independent oracle
  that builds the simplicial chain complex of a finite transformation
  groupoid from its face maps and computes ker/im by exact linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .abelian import (
    AbHom,
    FgAbelianGroup,
    IntMatrix,
    cokernel,
    kernel_basis,
    lattice_quotient,
    subquotient,
)
from .colimit import ColimitResult, colimit_finite, colimit_rank1
from .errors import BudgetExceeded, LevelOutOfRange, TailRequired, WrongGroupKind
from .odometer import (
    GroupElement,
    OdometerSpec,
    fixed_point_count_limit,
    relative_cocycle,
)

__all__ = [
    "InvolutionModule",
    "flip_fixed_counts",
    "FiniteGroupoid",
    "HomologyReport",
    "z2_homology",
    "transfer_map",
    "transfer_degree1",
    "odometer_homology",
    "groupoid_chain_homology",
    "level_abelianization",
    "abelianization_coords",
    "level_abelianization_generators",
    "z2_negation_groupoid",
]

DEFAULT_CHAIN_BUDGET = 10 ** 6

# virtual levels appended past the data (resolved through the tail) so the
# colimit window can certify a stabilization depth anywhere in the chain
COLIMIT_SLACK = 12


@dataclass(frozen=True)
class InvolutionModule:
    """Finite set with an involution; the module is Z^{base_set}."""

    size: int
    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(self.size)):
            raise ValueError("sigma must permute the base set")
        for x in range(self.size):
            if self.sigma[self.sigma[x]] != x:
                raise ValueError("sigma must be an involution")

    @classmethod
    def negation(cls, n: int) -> "InvolutionModule":
        return cls(n, tuple((-x) % n for x in range(n)))

    def fixed_points(self) -> list[int]:
        return [x for x in range(self.size) if self.sigma[x] == x]

    def permutation_matrix(self) -> IntMatrix:
        data = [[0] * self.size for _ in range(self.size)]
        for x in range(self.size):
            data[self.sigma[x]][x] = 1
        return IntMatrix.from_rows(data, cols=self.size)


def z2_homology(module: InvolutionModule, degree: int) -> FgAbelianGroup:
    """Homology of Z_2 with coefficients in the involution module.

    From the 2-periodic resolution: degree 0 is coker(1 - sigma_*), odd
    degrees are ker(1 - sigma_*)/im(1 + sigma_*), even degrees >= 2 are
    ker(1 + sigma_*)/im(1 - sigma_*).
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    n = module.size
    p = module.permutation_matrix()
    one = IntMatrix.identity(n)
    minus = one.sub(p)
    plus = one.add(p)
    if degree == 0:
        return cokernel(minus)
    free = FgAbelianGroup.free(n)
    if degree % 2 == 1:
        return subquotient(kernel_of=AbHom(free, free, minus),
                           image_of=AbHom(free, free, plus))
    return subquotient(kernel_of=AbHom(free, free, plus),
                       image_of=AbHom(free, free, minus))


# --- abelianizations of the level subgroups -------------------------------------


def level_abelianization(kind: str, n: int) -> FgAbelianGroup:
    """Abelianization of the level subgroup with modulus n.

    dihedral: (nZ x| Z_2)_ab = Z_2 x Z_2 via (t, s) -> (t/n mod 2, s);
    z: nZ = Z via t -> t/n;  direct product: nZ x Z_2 = Z x Z_2.
    """
    if kind == "dihedral":
        return FgAbelianGroup.from_invariants(0, (2, 2))
    if kind == "z":
        return FgAbelianGroup.free(1)
    if kind == "direct_product":
        gens = 2
        rel = IntMatrix.from_columns([(0, 2)], rows=gens)
        return FgAbelianGroup.presented(gens, rel)
    raise WrongGroupKind(f"unknown group kind {kind!r}")


def abelianization_coords(kind: str, n: int, e: GroupElement) -> tuple[int, ...]:
    """Coordinates of a level-subgroup element on the canonical generators."""
    if e.t % n != 0:
        raise ValueError("element does not lie in the level subgroup")
    if kind == "dihedral":
        return (e.t // n % 2, e.s)
    if kind == "z":
        return (e.t // n,)
    return (e.t // n, e.s)


def level_abelianization_generators(kind: str, n: int) -> tuple[GroupElement, ...]:
    if kind == "dihedral":
        return (GroupElement(kind, n, 0), GroupElement(kind, 0, 1))
    if kind == "z":
        return (GroupElement(kind, n),)
    return (GroupElement(kind, n, 0), GroupElement(kind, 0, 1))


# --- transfer maps ------------------------------------------------------------------


def transfer_degree1(kind: str, n_parent: int, n_child: int,
                     transversal: Sequence[GroupElement] | None = None) -> AbHom:
    """Degree-1 transfer on abelianizations via the coset-cocycle sum."""
    dom = level_abelianization(kind, n_parent)
    cod = level_abelianization(kind, n_child)
    columns = []
    for gen in level_abelianization_generators(kind, n_parent):
        _, h, _ = relative_cocycle(kind, n_parent, n_child, gen, transversal)
        total = [0] * len(abelianization_coords(kind, n_child, GroupElement.identity(kind)))
        for hk in h:
            for i, c in enumerate(abelianization_coords(kind, n_child, hk)):
                total[i] += c
        if kind == "dihedral":
            total = [c % 2 for c in total]
        elif kind == "direct_product":
            total[1] %= 2
        columns.append(tuple(total))
    matrix = IntMatrix.from_columns(columns, rows=cod.require_presentation().generators)
    return AbHom(dom, cod, matrix)


def transfer_map(spec: OdometerSpec, level: int, degree: int) -> AbHom:
    """Transfer from level to level + 1 in degree 0 or 1."""
    if level < 1 or (level + 1 > spec.depth and spec.tail is None):
        raise LevelOutOfRange(f"transfer needs levels {level} and {level + 1}")
    n, m = spec.level_modulus(level), spec.level_modulus(level + 1)
    if degree == 0:
        z = FgAbelianGroup.free(1)
        return AbHom(z, z, IntMatrix.from_rows([[m // n]]))
    if degree == 1:
        if spec.group_kind == "direct_product":
            raise WrongGroupKind("degree-1 transfer is defined for the z and dihedral kinds")
        return transfer_degree1(spec.group_kind, n, m)
    raise ValueError("transfer is implemented in degrees 0 and 1")


# --- assembled odometer homology --------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    """Mapping degree -> group; degree 0 is a rank-1 colimit, higher degrees
    are finitely generated groups."""

    degrees: Mapping[int, object]
    max_degree: int

    def degree(self, n: int):
        return self.degrees[n]


def _h1_colimit(spec: OdometerSpec) -> FgAbelianGroup:
    kind = spec.group_kind
    levels = spec.depth + COLIMIT_SLACK
    moduli = [spec.level_modulus(i) for i in range(1, levels + 1)]
    maps = [transfer_degree1(kind, moduli[i], moduli[i + 1]) for i in range(levels - 1)]
    if kind == "z":
        # rank-1 system; each transfer must be the identity on Z = (nZ)_ab
        for m in maps:
            if m.matrix != IntMatrix.from_rows([[1]]):
                raise ValueError("z-kind degree-1 transfer is not an isomorphism")
        return FgAbelianGroup.free(1)
    groups = [level_abelianization(kind, n) for n in moduli]
    result = colimit_finite(groups, maps, window=3)
    return result.group


def odometer_homology(spec: OdometerSpec, max_degree: int = 3) -> HomologyReport:
    """Homology of the odometer action in degrees 0..max_degree.

    Degree 0 is the rank-1 colimit of the index multipliers; degree 1 the
    stabilized colimit of the degree-1 transfers; even degrees >= 2 vanish;
    odd degrees >= 3 for the dihedral kind are (Z_2)^r with r the number of
    fixed points of the two flips.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    kind = spec.group_kind
    if kind == "direct_product":
        raise WrongGroupKind("homology closed forms cover the z and dihedral kinds")
    tail = spec.require_tail()

    multipliers = [spec.chain[0]] + [spec.ratio(i) for i in range(1, spec.depth)]
    if tail == "geometric":
        h0 = colimit_rank1(multipliers, tail="geometric", tail_ratio=spec.tail_ratio)
    else:
        h0 = colimit_rank1(multipliers, tail="explicit")

    degrees: dict[int, object] = {0: h0}
    if max_degree >= 1:
        degrees[1] = _h1_colimit(spec)
    if max_degree >= 2:
        odd = FgAbelianGroup.trivial()
        if kind == "dihedral":
            rank = sum(flip_fixed_counts(spec))
            odd = FgAbelianGroup.from_invariants(0, (2,) * rank)
        for n in range(2, max_degree + 1):
            degrees[n] = FgAbelianGroup.trivial() if n % 2 == 0 else odd
    return HomologyReport(degrees=degrees, max_degree=max_degree)


def flip_fixed_counts(spec: OdometerSpec) -> tuple[int, int]:
    """Fixed-point counts (m_(0,1), m_(1,1)) of the two flips on the limit."""
    if spec.group_kind != "dihedral":
        raise WrongGroupKind("flip fixed-point counts concern the dihedral kind")
    return (fixed_point_count_limit(spec, GroupElement("dihedral", 0, 1)),
            fixed_point_count_limit(spec, GroupElement("dihedral", 1, 1)))


# --- finite transformation groupoids: the chain-complex oracle ----------------------------


@dataclass(frozen=True)
class FiniteGroupoid:
    """Transformation groupoid of a finite group acting on a finite set.

    ``table[a][b]`` is the product ab; ``action[g][x]`` the point gx.  The
    group and action laws are checked exhaustively at construction.
    """

    table: tuple[tuple[int, ...], ...]
    space: int
    action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        order = len(self.table)
        if order == 0 or any(len(row) != order for row in self.table):
            raise ValueError("multiplication table must be square and nonempty")
        if len(self.action) != order or any(len(row) != self.space for row in self.action):
            raise ValueError("action table must be order x space")
        if order > 24:
            raise BudgetExceeded("exhaustive group-law checking is limited to order <= 24")
        ident = None
        for e in range(order):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(order)):
                ident = e
        if ident is None:
            raise ValueError("multiplication table has no identity")
        object.__setattr__(self, "_identity", ident)
        for a in range(order):
            for b in range(order):
                for c in range(order):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("multiplication table is not associative")
        for a in range(order):
            if not any(self.table[a][b] == ident for b in range(order)):
                raise ValueError("element without inverse")
        for x in range(self.space):
            if self.action[ident][x] != x:
                raise ValueError("identity must act trivially")
        for a in range(order):
            for b in range(order):
                for x in range(self.space):
                    if self.action[self.table[a][b]][x] != self.action[a][self.action[b][x]]:
                        raise ValueError("action law fails")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity_index(self) -> int:
        return self._identity

    def orbits(self) -> list[list[int]]:
        seen, orbits = set(), []
        for x in range(self.space):
            if x in seen:
                continue
            orbit = sorted({self.action[g][x] for g in range(self.order)})
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def stabilizer_order(self, x: int) -> int:
        return sum(1 for g in range(self.order) if self.action[g][x] == x)


def z2_negation_groupoid(n: int) -> FiniteGroupoid:
    """Z_2 acting on Z_n by negation."""
    action = (tuple(range(n)), tuple((-x) % n for x in range(n)))
    return FiniteGroupoid(table=((0, 1), (1, 0)), space=n, action=action)


def _tuple_count(g: FiniteGroupoid, k: int) -> int:
    return g.order ** k * g.space


def _boundary_matrix(g: FiniteGroupoid, k: int) -> IntMatrix:
    """delta_k: C(G^(k)) -> C(G^(k-1)), the alternating face-map sum.

    Composable k-tuples are parametrized as (g_1, ..., g_k, x) with x the
    source of the last arrow, ordered lexicographically.
    """
    order, space = g.order, g.space

    def index(gs: tuple[int, ...], x: int) -> int:
        idx = 0
        for gi in gs:
            idx = idx * order + gi
        return idx * space + x

    rows = _tuple_count(g, k - 1)
    cols = _tuple_count(g, k)
    data = [[0] * cols for _ in range(rows)]
    from itertools import product as iproduct

    for gs in iproduct(range(order), repeat=k):
        for x in range(space):
            col = index(gs, x)
            if k == 1:
                data[x][col] += 1                        # d_0 = source
                data[g.action[gs[0]][x]][col] -= 1       # d_1 = range
                continue
            # d_0 drops the first arrow
            data[index(gs[1:], x)][col] += 1
            # middle faces multiply adjacent arrows
            sign = -1
            for i in range(1, k):
                merged = gs[: i - 1] + (g.table[gs[i - 1]][gs[i]],) + gs[i + 1:]
                data[index(merged, x)][col] += sign
                sign = -sign
            # d_k drops the last arrow and moves the base point
            data[index(gs[:-1], g.action[gs[-1]][x])][col] += sign
    return IntMatrix.from_rows(data, cols=cols)


def groupoid_chain_homology(g: FiniteGroupoid, degree: int,
                            budget: int = DEFAULT_CHAIN_BUDGET) -> FgAbelianGroup:
    """H_degree of the finite transformation groupoid from its chain complex."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    rows = _tuple_count(g, degree)
    cols = _tuple_count(g, degree + 1)
    if rows * cols > budget:
        raise BudgetExceeded(
            f"boundary matrix would have {rows * cols} entries (budget {budget})")
    upper = _boundary_matrix(g, degree + 1)
    if degree == 0:
        return cokernel(upper)
    lower = _boundary_matrix(g, degree)
    if not lower.mul(upper).is_zero():
        raise AssertionError("face maps do not form a chain complex")
    return lattice_quotient(kernel_basis(lower), upper)
