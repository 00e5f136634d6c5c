"""Topological full groups of the finite coset levels.

An element of the level full group is kept in wreath form: one subgroup
element per coset together with the permutation the element induces on the
cosets.  The correspondence with compact-open bisections sends (h, perm) to
the bisection whose arrow over the coset k is g_{perm(k)} h[k] g_k^{-1} for
the canonical transversal g_k = (k, 0).  Multiplication matches bisection
composition:

    (h, p) * (h', p') = (x -> h[p'(x)] h'[x], p o p').

On top of the wreath arithmetic the module builds the abelianization onto
(level subgroup)_ab x Z_2, the index map, the inclusion of the sign factor
via flip bisections, the connecting maps between consecutive levels, and
exactness/splitness certificates for the resulting three-term sequences at
finite levels and in the colimit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

from .abelian import (
    AbHom,
    FgAbelianGroup,
    IntMatrix,
    SpanSolver,
    check_exactness,
    iso_equal,
    kernel_basis,
    lattice_quotient,
)
from .errors import (
    BudgetExceeded,
    LevelMismatch,
    LevelOutOfRange,
    LevelTooSmall,
    NotPartition,
    NotStabilized,
    WrongGroupKind,
)
from .homology import (
    abelianization_coords,
    level_abelianization,
    level_abelianization_generators,
    transfer_degree1,
)
from .odometer import GroupElement, OdometerSpec, act_on_coset

__all__ = [
    "FullGroupElement",
    "BisectionForm",
    "AhCertificate",
    "multiply",
    "from_bisection",
    "to_bisection",
    "abelianize",
    "AbelianizedElement",
    "index_map_I",
    "j_map",
    "JMapImage",
    "zeta",
    "eta",
    "middle_group",
    "middle_generators",
    "middle_connecting",
    "lift_to_next_level",
    "ah_certificate",
]

WREATH_BUDGET = 10 ** 6


def _perm_parity(perm: Sequence[int]) -> int:
    """Parity via cycle decomposition: (n - #cycles) mod 2."""
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
    return (len(perm) - cycles) % 2


@dataclass(frozen=True)
class FullGroupElement:
    """Wreath form (h, perm) of a level full-group element."""

    kind: str
    level: int
    modulus: int
    h: tuple[GroupElement, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus
        if len(self.h) != n or len(self.perm) != n:
            raise ValueError("need one subgroup element and one image per coset")
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm must be a bijection of the cosets")
        for hk in self.h:
            if hk.kind != self.kind:
                raise WrongGroupKind("component of the wrong group kind")
            if hk.t % n != 0:
                raise ValueError("component does not lie in the level subgroup")

    @classmethod
    def identity(cls, kind: str, level: int, modulus: int) -> "FullGroupElement":
        e = GroupElement.identity(kind)
        return cls(kind, level, modulus, (e,) * modulus, tuple(range(modulus)))

    def is_identity(self) -> bool:
        return all(hk.is_identity() for hk in self.h) and self.perm == tuple(range(self.modulus))

    def inverse(self) -> "FullGroupElement":
        inv_perm = [0] * self.modulus
        for x, px in enumerate(self.perm):
            inv_perm[px] = x
        h = tuple(self.h[inv_perm[x]].inverse() for x in range(self.modulus))
        return FullGroupElement(self.kind, self.level, self.modulus, h, tuple(inv_perm))

    def arrow_over(self, coset: int) -> GroupElement:
        """Group element of the bisection arrow based at the coset."""
        g_k = GroupElement(self.kind, coset, 0)
        g_target = GroupElement(self.kind, self.perm[coset], 0)
        return g_target.mul(self.h[coset]).mul(g_k.inverse())


def multiply(a: FullGroupElement, b: FullGroupElement) -> FullGroupElement:
    """Composition matching bisection composition (a after b)."""
    if (a.kind, a.level, a.modulus) != (b.kind, b.level, b.modulus):
        raise LevelMismatch("full-group elements live at different levels")
    perm = tuple(a.perm[b.perm[x]] for x in range(a.modulus))
    h = tuple(a.h[b.perm[x]].mul(b.h[x]) for x in range(a.modulus))
    return FullGroupElement(a.kind, a.level, a.modulus, h, perm)


def zeta(kind: str, level: int, modulus: int, lam: GroupElement) -> FullGroupElement:
    """Embedding of the level subgroup: lam over the base coset, identity
    elsewhere."""
    if lam.t % modulus != 0:
        raise ValueError("element does not lie in the level subgroup")
    e = GroupElement.identity(kind)
    h = (lam,) + (e,) * (modulus - 1)
    return FullGroupElement(kind, level, modulus, h, tuple(range(modulus)))


def eta(kind: str, level: int, modulus: int, perm: Sequence[int]) -> FullGroupElement:
    """Embedding of the coset permutations: trivial components, the given
    permutation on cosets."""
    e = GroupElement.identity(kind)
    return FullGroupElement(kind, level, modulus, (e,) * modulus, tuple(perm))


@dataclass(frozen=True)
class BisectionForm:
    """Pairs (group element, clopen coset set); the sets partition the level."""

    pairs: tuple[tuple[GroupElement, frozenset[int]], ...]


def to_bisection(u: FullGroupElement) -> BisectionForm:
    """Group the cosets by their arrow element."""
    arrows: dict[GroupElement, set[int]] = {}
    for k in range(u.modulus):
        arrows.setdefault(u.arrow_over(k), set()).add(k)
    pairs = tuple(sorted(((g, frozenset(ks)) for g, ks in arrows.items()),
                         key=lambda pair: min(pair[1])))
    return BisectionForm(pairs)


def from_bisection(spec_kind: str, level: int, modulus: int,
                   bisection: BisectionForm) -> FullGroupElement:
    """Wreath form of a bisection; both partitions are checked."""
    n = modulus
    cover: dict[int, GroupElement] = {}
    for g, cosets in bisection.pairs:
        if g.kind != spec_kind:
            raise WrongGroupKind("bisection arrow of the wrong group kind")
        for k in cosets:
            if not 0 <= k < n:
                raise NotPartition(f"coset {k} not in Z_{n}")
            if k in cover:
                raise NotPartition(f"coset {k} covered twice")
            cover[k] = g
    if len(cover) != n:
        raise NotPartition("source sets do not cover every coset")
    perm = [act_on_coset(cover[k], k, n) for k in range(n)]
    if sorted(perm) != list(range(n)):
        raise NotPartition("image sets do not partition the cosets")
    h = []
    for k in range(n):
        g_target = GroupElement(spec_kind, perm[k], 0)
        g_k = GroupElement(spec_kind, k, 0)
        h.append(g_target.inverse().mul(cover[k]).mul(g_k))
    return FullGroupElement(spec_kind, level, n, tuple(h), tuple(perm))


# --- abelianization, index map, inclusion -------------------------------------------


@dataclass(frozen=True)
class AbelianizedElement:
    """Class in (level subgroup)_ab x Z_2: subgroup coordinates plus sign."""

    coords: tuple[int, ...]
    sign: int

    def as_column(self) -> tuple[int, ...]:
        return self.coords + (self.sign,)


def abelianize(u: FullGroupElement) -> AbelianizedElement:
    """Sum of the components in the level abelianization, and the parity of
    the coset permutation."""
    if u.modulus < 2:
        raise LevelTooSmall("abelianization needs at least two cosets")
    width = len(abelianization_coords(u.kind, u.modulus, GroupElement.identity(u.kind)))
    total = [0] * width
    for hk in u.h:
        for i, c in enumerate(abelianization_coords(u.kind, u.modulus, hk)):
            total[i] += c
    if u.kind == "dihedral":
        total = [c % 2 for c in total]
    elif u.kind == "direct_product":
        total[1] %= 2
    return AbelianizedElement(tuple(total), _perm_parity(u.perm))


def index_map_I(u: FullGroupElement) -> tuple[int, ...]:
    """Index map to H_1 of the level groupoid, identified with the level
    abelianization: the subgroup part of the abelianized class."""
    return abelianize(u).coords


@dataclass(frozen=True)
class JMapImage:
    tau: FullGroupElement
    image_class: AbelianizedElement


def j_map(kind: str, level: int, modulus: int,
          arrow: tuple[GroupElement, int] | None = None) -> JMapImage:
    """Image of the generator of H_0 tensor Z_2 in the abelianized full group.

    Built from a flip bisection tau_F = F cup F^-1 cup identity for a
    single-arrow F = {(g, x0)} with disjoint source and range.
    """
    if modulus < 3:
        raise LevelTooSmall("the inclusion needs orbits of at least three points")
    if arrow is None:
        arrow = (GroupElement(kind, 1, 0), 0)
    g, x0 = arrow
    x1 = act_on_coset(g, x0, modulus)
    if x1 == x0:
        raise ValueError("the arrow must move its base coset")
    rest = frozenset(range(modulus)) - {x0, x1}
    pairs = [(g, frozenset({x0})), (g.inverse(), frozenset({x1}))]
    if rest:
        pairs.append((GroupElement.identity(kind), rest))
    tau = from_bisection(kind, level, modulus, BisectionForm(tuple(pairs)))
    return JMapImage(tau=tau, image_class=abelianize(tau))


# --- the abelianized full group as a presented group ------------------------------


def middle_group(kind: str, modulus: int) -> FgAbelianGroup:
    """(level subgroup)_ab x Z_2 with the sign generator last."""
    lam_ab = level_abelianization(kind, modulus)
    pres = lam_ab.require_presentation()
    gens = pres.generators + 1
    cols = [tuple(pres.relations.col(j)) + (0,) for j in range(pres.relations.cols)]
    cols.append((0,) * pres.generators + (2,))
    return FgAbelianGroup.presented(gens, IntMatrix.from_columns(cols, rows=gens))


def middle_generators(kind: str, level: int, modulus: int) -> tuple[FullGroupElement, ...]:
    """Wreath representatives of the middle-group generators: the subgroup
    generators through zeta, then one transposition through eta."""
    gens = [zeta(kind, level, modulus, lam)
            for lam in level_abelianization_generators(kind, modulus)]
    transposition = [1, 0] + list(range(2, modulus))
    gens.append(eta(kind, level, modulus, transposition))
    return tuple(gens)


def lift_to_next_level(u: FullGroupElement, next_modulus: int) -> FullGroupElement:
    """The same bisection read on the cosets one level deeper: each source
    set is replaced by its preimage under the projection."""
    if next_modulus % u.modulus != 0 or next_modulus <= 0:
        raise ValueError("next modulus must be a multiple of the level modulus")
    if next_modulus > WREATH_BUDGET:
        raise BudgetExceeded(f"cannot materialize a wreath element over {next_modulus} cosets")
    pairs = []
    for g, cosets in to_bisection(u).pairs:
        fiber = frozenset(x for x in range(next_modulus) if x % u.modulus in cosets)
        pairs.append((g, fiber))
    return from_bisection(u.kind, u.level + 1, next_modulus, BisectionForm(tuple(pairs)))


def middle_connecting(kind: str, level: int, modulus: int, next_modulus: int) -> AbHom:
    """Connecting map of the abelianized full groups, computed by lifting the
    generators one level and abelianizing there."""
    dom = middle_group(kind, modulus)
    cod = middle_group(kind, next_modulus)
    columns = []
    for gen in middle_generators(kind, level, modulus):
        lifted = lift_to_next_level(gen, next_modulus)
        columns.append(abelianize(lifted).as_column())
    matrix = IntMatrix.from_columns(columns, rows=cod.require_presentation().generators)
    return AbHom(dom, cod, matrix)


# --- right-inverse search (splittings) ------------------------------------------------


def find_right_inverse(onto: AbHom, search_bound: int = 4096) -> AbHom | None:
    """A hom s with onto o s = identity, or None if none is found.

    Solves column by column over the block [matrix | codomain relations];
    when the direct solution is not well-defined, retries over a bounded set
    of kernel-lattice perturbations.
    """
    cod = onto.codomain
    dom = onto.domain
    cp = cod.require_presentation()
    bp = dom.require_presentation()
    block = onto.matrix.hstack(cp.relations)
    solver = SpanSolver(block)
    base_cols = []
    for j in range(cp.generators):
        target = tuple(1 if i == j else 0 for i in range(cp.generators))
        x = solver.solve(target)
        if x is None:
            return None
        base_cols.append(tuple(x[: bp.generators]))

    def attempt(cols) -> AbHom | None:
        try:
            candidate = AbHom(cod, dom, IntMatrix.from_columns(cols, rows=bp.generators))
        except Exception:
            return None
        if onto.compose(candidate).equals(AbHom.identity(cod)):
            return candidate
        return None

    direct = attempt(base_cols)
    if direct is not None:
        return direct

    # perturb each column by kernel directions of the block system
    kernel = kernel_basis(block)
    directions = [tuple(kernel.col(j)[: bp.generators]) for j in range(kernel.cols)]
    directions = [d for d in directions if any(d)]
    if not directions:
        return None
    per_column = []
    for col in base_cols:
        options = {col}
        for d in directions:
            for c in (-1, 1, 2):
                options.add(tuple(x + c * y for x, y in zip(col, d)))
        per_column.append(sorted(options))
    total = 1
    for options in per_column:
        total *= len(options)
    if total > search_bound:
        return None
    for combo in iproduct(*per_column):
        found = attempt(list(combo))
        if found is not None:
            return found
    return None


# --- certificates -------------------------------------------------------------------


@dataclass(frozen=True)
class AhCertificate:
    """Exactness data of H_0 tensor Z_2 -> abelianized full group -> H_1."""

    level: int | str
    left: FgAbelianGroup
    middle: FgAbelianGroup
    right: FgAbelianGroup
    j_hom: AbHom
    i_hom: AbHom
    exact: bool
    split: bool | None

    def serialize(self) -> dict:
        return {
            "level": self.level,
            "exact": self.exact,
            "split": self.split,
            "groups": [self.left.render(), self.middle.render(), self.right.render()],
            "maps": {"j": self.j_hom.matrix.tolist(), "I": self.i_hom.matrix.tolist()},
        }


def _level_orbit_is_everything(kind: str, modulus: int) -> bool:
    seen = {0}
    frontier = [0]
    translation = GroupElement(kind, 1, 0)
    while frontier:
        x = frontier.pop()
        y = act_on_coset(translation, x, modulus)
        if y not in seen:
            seen.add(y)
            frontier.append(y)
    return len(seen) == modulus


def _finite_level_certificate(kind: str, level: int, modulus: int) -> AhCertificate:
    if modulus < 3:
        raise LevelTooSmall(f"the sequence needs at least 3 cosets, got {modulus}")
    if not _level_orbit_is_everything(kind, modulus):
        raise AssertionError("level action is not transitive; H_0 would not be Z")
    left = FgAbelianGroup.cyclic(2)         # H_0 = Z for one orbit, tensored with Z_2
    mid = middle_group(kind, modulus)
    right = level_abelianization(kind, modulus)

    j_col = j_map(kind, level, modulus).image_class.as_column()
    j_hom = AbHom(left, mid, IntMatrix.from_columns([j_col],
                                                    rows=mid.require_presentation().generators))
    i_cols = [index_map_I(gen) for gen in middle_generators(kind, level, modulus)]
    i_hom = AbHom(mid, right, IntMatrix.from_columns(
        i_cols, rows=right.require_presentation().generators))
    exact = check_exactness(j_hom, i_hom) and j_hom.is_injective() and i_hom.is_surjective()
    section = find_right_inverse(i_hom)
    return AhCertificate(level=level, left=left, middle=mid, right=right,
                         j_hom=j_hom, i_hom=i_hom, exact=exact,
                         split=section is not None)


# --- colimit certificates ---------------------------------------------------------------


def _stable_depth(groups: Sequence[FgAbelianGroup], maps: Sequence[AbHom],
                  window: int) -> int:
    """First depth d certified stable: composite images from starts within
    the window agree at a common top level, the image class is constant
    along the chain from d, and nothing enters late."""
    total = len(groups)
    if total < 2 * window + 1:
        raise NotStabilized(f"need {2 * window + 1} levels, have {total}")

    def composite(start: int, stop: int) -> AbHom:
        comp = maps[start - 1]
        for k in range(start, stop - 1):
            comp = maps[k].compose(comp)
        return comp

    for d in range(1, total - 2 * window + 1):
        top = d + 2 * window
        base = composite(d, top)
        base_lat = base.image_lattice()
        base_solver = SpanSolver(base_lat)
        rel_top = groups[top - 1].require_presentation().relations
        base_class = lattice_quotient(base_lat, rel_top)
        ok = True
        # nothing may enter the system after d
        for i in range(d + 1, d + window + 1):
            if not base_solver.contains_all(composite(i, top).image_lattice()):
                ok = False
                break
        # the image class is constant over the late window, so the
        # connecting maps restrict to isomorphisms there (surjective maps
        # between isomorphic finitely generated groups are isomorphisms)
        if ok:
            for j in range(d + window, top):
                comp = composite(d, j)
                cls = lattice_quotient(comp.image_lattice(),
                                       comp.codomain.require_presentation().relations)
                if not iso_equal(cls, base_class):
                    ok = False
                    break
        if ok:
            return d
    raise NotStabilized("system did not stabilize within the available levels")


def _presented_colimit(groups: Sequence[FgAbelianGroup], maps: Sequence[AbHom],
                       depth: int, top: int) -> FgAbelianGroup:
    """The colimit as depth-level generators modulo the kernel of the
    composite into the top level (valid once stability is certified)."""
    comp = maps[depth - 1]
    for k in range(depth, top - 1):
        comp = maps[k].compose(comp)
    ker = comp.kernel_lattice()
    return FgAbelianGroup.presented(
        groups[depth - 1].require_presentation().generators, ker)


def _colimit_certificate(spec: OdometerSpec, window: int = 2) -> AhCertificate:
    kind = spec.group_kind
    spec.require_tail()
    start = 1
    while spec.level_modulus(start) < 3:
        start += 1
        if start > spec.depth + 4:
            raise LevelTooSmall("no level with at least 3 cosets")
    count = 2 * window + 3
    levels = list(range(start, start + count))
    moduli = [spec.level_modulus(i) for i in levels]

    mid_groups = [middle_group(kind, n) for n in moduli]
    mid_maps = [middle_connecting(kind, levels[i], moduli[i], moduli[i + 1])
                for i in range(count - 1)]
    left_groups = [FgAbelianGroup.cyclic(2)] * count
    left_maps = [AbHom(left_groups[i], left_groups[i + 1],
                       IntMatrix.from_rows([[moduli[i + 1] // moduli[i] % 2]]))
                 for i in range(count - 1)]
    right_groups = [level_abelianization(kind, n) for n in moduli]
    right_maps = [transfer_degree1(kind, moduli[i], moduli[i + 1])
                  for i in range(count - 1)]

    d = max(_stable_depth(left_groups, left_maps, window),
            _stable_depth(mid_groups, mid_maps, window),
            _stable_depth(right_groups, right_maps, window))
    top = d + 2 * window
    left = _presented_colimit(left_groups, left_maps, d, top)
    mid = _presented_colimit(mid_groups, mid_maps, d, top)
    right = _presented_colimit(right_groups, right_maps, d, top)

    level_idx = levels[d - 1]
    n_d = moduli[d - 1]
    j_col = j_map(kind, level_idx, n_d).image_class.as_column()
    j_hom = AbHom(left, mid, IntMatrix.from_columns(
        [j_col], rows=mid.require_presentation().generators))
    i_cols = [index_map_I(gen) for gen in middle_generators(kind, level_idx, n_d)]
    i_hom = AbHom(mid, right, IntMatrix.from_columns(
        i_cols, rows=right.require_presentation().generators))
    exact = check_exactness(j_hom, i_hom) and j_hom.is_injective() and i_hom.is_surjective()
    section = find_right_inverse(i_hom)
    return AhCertificate(level="colimit", left=left, middle=mid, right=right,
                         j_hom=j_hom, i_hom=i_hom, exact=exact,
                         split=True if section is not None else None)


def ah_certificate(spec: OdometerSpec, level: int | None = None,
                   colimit: bool = False) -> AhCertificate:
    """Exactness certificate at one finite level or for the colimit sequence.

    Finite levels additionally report splitness as a boolean; the colimit
    reports split = None unless a splitting is exhibited by the search.
    """
    if spec.group_kind == "direct_product":
        raise WrongGroupKind(
            "the sequence concerns essentially principal level groupoids; "
            "the direct-product kind is excluded")
    if colimit:
        return _colimit_certificate(spec)
    if level is None:
        raise ValueError("pass a level or colimit=True")
    if not 1 <= level <= spec.depth:
        raise LevelOutOfRange(f"level {level} not in 1..{spec.depth}")
    n = spec.level_modulus(level)
    if n > WREATH_BUDGET:
        raise BudgetExceeded(f"cannot materialize the level full group over {n} cosets")
    return _finite_level_certificate(spec.group_kind, level, n)
