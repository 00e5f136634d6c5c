"""The acting group, the subgroup chain, and the inverse-limit dynamics.

Three group kinds act on the inverse limit X of the coset spaces Z_{n_1} <-
Z_{n_2} <- ... along a divisibility chain n_1 | n_2 | ...:

* "z":              t acts by x -> x + t,
* "dihedral":       (t, s) acts by x -> t + (-1)^s x,
* "direct_product": (t, s) acts by x -> x + t (the Z_2 factor is central and
                    acts trivially on cosets).

The module supplies exact element arithmetic, enumeration of truncated
points, fixed-point counts (by congruence solving at finite horizons and in
closed form at an infinite horizon under a tail assumption), the chain
intersection, the topological-freeness test, and coset cocycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import BudgetExceeded, LevelOutOfRange, TailRequired, WrongGroupKind

__all__ = [
    "GROUP_KINDS",
    "GroupElement",
    "act_on_coset",
    "OdometerSpec",
    "TruncatedPoint",
    "CocycleData",
    "ChainIntersection",
    "TopfreeWitness",
    "TopfreeVerdict",
    "coset_action",
    "truncated_points",
    "fixed_points_extendable",
    "fixed_point_count_limit",
    "chain_intersection",
    "is_topologically_free",
    "cocycle",
    "relative_cocycle",
]

GROUP_KINDS = ("z", "dihedral", "direct_product")

ENUMERATION_BUDGET = 10 ** 6


@dataclass(frozen=True)
class GroupElement:
    """Element of Z, Z x| Z_2 (infinite dihedral) or Z x Z_2.

    Multiplication: dihedral (t,s)(t',s') = (t + (-1)^s t', s xor s');
    direct product (t+t', s xor s'); plain Z adds translations.
    """

    kind: str
    t: int
    s: int = 0

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise WrongGroupKind(f"unknown group kind {self.kind!r}")
        if self.s not in (0, 1):
            raise ValueError("flip component must be 0 or 1")
        if self.kind == "z" and self.s != 0:
            raise ValueError("elements of Z have no flip component")

    @classmethod
    def identity(cls, kind: str) -> "GroupElement":
        return cls(kind, 0, 0)

    def mul(self, other: "GroupElement") -> "GroupElement":
        if self.kind != other.kind:
            raise WrongGroupKind("cannot multiply elements of different groups")
        if self.kind == "dihedral":
            t = self.t + (-1) ** self.s * other.t
        else:
            t = self.t + other.t
        return GroupElement(self.kind, t, self.s ^ other.s)

    def inverse(self) -> "GroupElement":
        if self.kind == "dihedral":
            return GroupElement(self.kind, -((-1) ** self.s) * self.t, self.s)
        return GroupElement(self.kind, -self.t, self.s)

    def is_identity(self) -> bool:
        return self.t == 0 and self.s == 0

    def render(self) -> str:
        if self.kind == "z":
            return str(self.t)
        return f"({self.t},{self.s})"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class OdometerSpec:
    """Group kind, materialized subgroup chain, and tail assumption.

    ``chain[i-1]`` is n_i, the index datum of the level-i subgroup (n_i Z,
    n_i Z x| Z_2 or n_i Z x Z_2 according to the kind).  ``tail`` is None
    when the user made no assumption about levels beyond the data;
    asymptotic questions then raise TailRequired.
    """

    group_kind: str
    chain: tuple[int, ...]
    chain_kind: Literal["explicit", "geometric"]
    depth: int
    tail: str | None = None          # None | "explicit" | "geometric"
    tail_ratio: int | None = None

    def __post_init__(self):
        if self.group_kind not in GROUP_KINDS:
            raise WrongGroupKind(f"unknown group kind {self.group_kind!r}")
        if self.depth != len(self.chain) or self.depth < 1:
            raise ValueError("depth must match the materialized chain")
        prev = None
        for n in self.chain:
            if n < 1:
                raise ValueError("chain entries must be positive")
            if prev is not None and (n <= prev or n % prev != 0):
                raise ValueError("chain must be strictly increasing and divisible")
            prev = n
        if self.tail not in (None, "explicit", "geometric"):
            raise ValueError(f"unknown tail kind {self.tail!r}")
        if self.tail == "geometric" and (self.tail_ratio is None or self.tail_ratio < 2):
            raise ValueError("geometric tail requires a ratio >= 2")

    # -- chain access -----------------------------------------------------------

    def level_modulus(self, level: int) -> int:
        """n_level; levels beyond the data are resolved through the tail."""
        if level < 1:
            raise LevelOutOfRange(f"level {level} out of range")
        if level <= self.depth:
            return self.chain[level - 1]
        if self.tail == "geometric":
            return self.chain[-1] * self.tail_ratio ** (level - self.depth)
        if self.tail == "explicit":
            return self.chain[-1]
        raise TailRequired(f"level {level} exceeds depth {self.depth} and no tail is assumed")

    def ratio(self, level: int) -> int:
        """n_{level+1} / n_level."""
        return self.level_modulus(level + 1) // self.level_modulus(level)

    def require_tail(self) -> str:
        if self.tail is None:
            raise TailRequired(
                "this question is about all levels; declare an explicit or geometric tail")
        return self.tail

    # -- tail predicates -------------------------------------------------------------

    def even_ratio_infinitely_often(self) -> bool:
        """True when n_{i+1}/n_i is even for infinitely many i."""
        if self.require_tail() == "geometric":
            return self.tail_ratio % 2 == 0
        return False

    def all_levels_odd(self) -> bool:
        """True when every n_i (including the tail) is odd."""
        self.require_tail()
        if any(n % 2 == 0 for n in self.chain):
            return False
        return self.tail == "explicit" or self.tail_ratio % 2 == 1

    def identity(self) -> GroupElement:
        return GroupElement.identity(self.group_kind)

    def element(self, t: int, s: int = 0) -> GroupElement:
        return GroupElement(self.group_kind, t, s)


@dataclass(frozen=True)
class TruncatedPoint:
    """Compatible coset tuple (x_1, ..., x_d) with x_{i+1} = x_i mod n_i."""

    coords: tuple[int, ...]


def act_on_coset(g: GroupElement, coset: int, modulus: int) -> int:
    """Image of a coset of Z_modulus under g, independent of any chain."""
    if not 0 <= coset < modulus:
        raise ValueError(f"coset {coset} not in Z_{modulus}")
    if g.kind == "dihedral" and g.s == 1:
        return (g.t - coset) % modulus
    return (g.t + coset) % modulus


def coset_action(spec: OdometerSpec, level: int, g: GroupElement, coset: int) -> int:
    """Image of a level coset under g."""
    if not 1 <= level <= spec.depth:
        raise LevelOutOfRange(f"level {level} not in 1..{spec.depth}")
    if g.kind != spec.group_kind:
        raise WrongGroupKind("element does not belong to the spec's group")
    return act_on_coset(g, coset, spec.level_modulus(level))


def truncated_points(spec: OdometerSpec, depth: int) -> list[TruncatedPoint]:
    """All compatible tuples down to the given depth; a tuple is determined
    by its last coordinate, so there are exactly n_depth of them."""
    if not 1 <= depth <= spec.depth:
        raise LevelOutOfRange(f"depth {depth} not in 1..{spec.depth}")
    n = spec.level_modulus(depth)
    if n > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"cannot enumerate {n} truncated points")
    return [
        TruncatedPoint(tuple(x % spec.level_modulus(i) for i in range(1, depth + 1)))
        for x in range(n)
    ]


# -- fixed points ------------------------------------------------------------------


def _flip_fixed_cosets(t: int, n: int) -> list[int]:
    """Solutions of 2x = t mod n (the fixed cosets of a flip element)."""
    if n % 2 == 1:
        return [t * ((n + 1) // 2) % n]  # (n+1)/2 inverts 2 mod n
    if t % 2 == 1:
        return []
    return sorted({(t // 2) % n, (t // 2 + n // 2) % n})


def _is_flip(g: GroupElement) -> bool:
    return g.kind == "dihedral" and g.s == 1


def fixed_points_extendable(spec: OdometerSpec, g: GroupElement, depth: int,
                            horizon: int | None) -> int:
    """Number of depth-d fixed tuples of g that extend to fixed tuples at the
    horizon; horizon=None means the inverse limit itself, which needs a tail
    assumption (or is resolved by the explicit-tail reading that the chain
    jumps no further).
    """
    if g.kind != spec.group_kind:
        raise WrongGroupKind("element does not belong to the spec's group")
    if not 1 <= depth <= spec.depth:
        raise LevelOutOfRange(f"depth {depth} not in 1..{spec.depth}")
    if horizon is not None:
        if horizon < depth:
            raise ValueError("horizon must be at least the depth")
        if horizon > spec.depth and spec.tail is None:
            raise TailRequired("horizon beyond the chain needs a tail assumption")

    n_d = spec.level_modulus(depth)

    if not _is_flip(g):
        # translation-like elements: a level is all-fixed or fixed-point free
        if horizon is None:
            tail = spec.require_tail()
            if g.t == 0:
                return n_d  # identity on cosets fixes everything
            if tail == "geometric":
                return 0   # moduli grow without bound, eventually n_i does not divide t
            return n_d if g.t % spec.level_modulus(spec.depth) == 0 else 0
        n_h = spec.level_modulus(horizon)
        return n_d if g.t % n_h == 0 else 0

    if horizon is not None:
        n_h = spec.level_modulus(horizon)
        fixed = _flip_fixed_cosets(g.t % n_h, n_h)
        # fixedness at the horizon implies fixedness at every lower level
        return len({x % n_d for x in fixed})

    # horizon None: fixed points of the full inverse limit (Lemma-style case split)
    tail = spec.require_tail()
    if spec.all_levels_odd():
        count_total = 1
    elif g.t % 2 == 1:
        count_total = 0   # an even level admits no solution of 2x = odd t
    elif spec.even_ratio_infinitely_often():
        count_total = 1   # the two branches over even levels merge infinitely often
    else:
        count_total = 2
    if count_total <= 1:
        return count_total
    # two limit points; they may coincide when projected to a shallow depth
    first_even = next(i for i in range(1, spec.depth + 1)
                      if spec.level_modulus(i) % 2 == 0)
    return 2 if depth >= first_even else 1


def fixed_point_count_limit(spec: OdometerSpec, g: GroupElement) -> int:
    """Total number of fixed points of g on the inverse limit."""
    if not _is_flip(g):
        if g.t != 0 and spec.require_tail() == "geometric":
            return 0  # moduli grow without bound, so no level beyond |t| is fixed
        raise ValueError(
            "element acts as an eventual translation; its fixed-point set is "
            "empty or the whole space, not a finite count")
    spec.require_tail()
    if spec.all_levels_odd():
        return 1
    if g.t % 2 == 1:
        return 0
    if spec.even_ratio_infinitely_often():
        return 1
    return 2


# -- chain intersection and topological freeness -------------------------------------


@dataclass(frozen=True)
class ChainIntersection:
    """Intersection of the subgroup chain, as elements when it is finite."""

    elements: tuple[GroupElement, ...] | None
    description: str
    truncated: bool


def chain_intersection(spec: OdometerSpec) -> ChainIntersection:
    kind = spec.group_kind
    unbounded = spec.tail == "geometric"
    if not unbounded:
        n = spec.level_modulus(spec.depth)
        if kind == "z":
            desc = f"{n}Z"
        elif kind == "dihedral":
            desc = f"{n}Z x| Z_2"
        else:
            desc = f"{n}Z x Z_2"
        return ChainIntersection(None, f"{desc} (intersection at truncation depth {spec.depth})",
                                 truncated=True)
    if kind == "z":
        return ChainIntersection((GroupElement.identity("z"),), "trivial", truncated=False)
    if kind == "dihedral":
        return ChainIntersection(
            (GroupElement("dihedral", 0, 0), GroupElement("dihedral", 0, 1)),
            "{(0,0),(0,1)}", truncated=False)
    return ChainIntersection(
        (GroupElement("direct_product", 0, 0), GroupElement("direct_product", 0, 1)),
        "{0} x Z_2", truncated=False)


@dataclass(frozen=True)
class TopfreeWitness:
    gamma: GroupElement
    level: int
    witness: GroupElement
    conjugate: GroupElement


@dataclass(frozen=True)
class TopfreeVerdict:
    status: Literal["free", "not_free", "inconclusive"]
    witnesses: tuple[TopfreeWitness, ...] = ()
    counterexample: TopfreeWitness | None = None
    note: str = ""


def _in_intersection(spec: OdometerSpec, g: GroupElement) -> bool:
    """Membership in the closed-form intersection of a geometric chain."""
    if spec.group_kind == "z":
        return g.t == 0
    return g.t == 0  # dihedral and direct product: {(0,0),(0,1)}


def is_topologically_free(spec: OdometerSpec, search_depth: int = 4) -> TopfreeVerdict:
    """Freeness via the chain intersection: for every nontrivial gamma in the
    intersection and every level j, some b in the level-j subgroup must
    conjugate gamma out of the intersection.
    """
    if spec.tail != "geometric":
        return TopfreeVerdict(
            "inconclusive",
            note="the chain intersection is only closed-form under a geometric tail")
    search_depth = max(1, min(search_depth, spec.depth))
    inter = chain_intersection(spec)
    nontrivial = [g for g in inter.elements if not g.is_identity()]
    if not nontrivial:
        return TopfreeVerdict("free", note="chain intersection is trivial; the condition is vacuous")

    if spec.group_kind == "direct_product":
        gamma = nontrivial[0]
        b = spec.element(spec.level_modulus(1), 0)
        conj = b.inverse().mul(gamma).mul(b)
        return TopfreeVerdict(
            "not_free",
            counterexample=TopfreeWitness(gamma, 1, b, conj),
            note="the group is abelian, so conjugation fixes the central flip")

    witnesses = []
    for gamma in nontrivial:
        for j in range(1, search_depth + 1):
            n_j = spec.level_modulus(j)
            b = spec.element(n_j, 0)
            conj = b.mul(gamma).mul(b.inverse())
            if _in_intersection(spec, conj):
                return TopfreeVerdict(
                    "not_free",
                    counterexample=TopfreeWitness(gamma, j, b, conj),
                    note="conjugation by the canonical witness stays in the intersection")
            witnesses.append(TopfreeWitness(gamma, j, b, conj))
    return TopfreeVerdict("free", witnesses=tuple(witnesses))


# -- cocycles ---------------------------------------------------------------------


@dataclass(frozen=True)
class CocycleData:
    """Data of g g_k = g_{sigma(k)} h[k] over a transversal (g_k)."""

    level: int
    reps: tuple[GroupElement, ...]
    sigma: tuple[int, ...]
    h: tuple[GroupElement, ...]

    def verify(self, g: GroupElement) -> bool:
        for k, rep in enumerate(self.reps):
            if g.mul(rep) != self.reps[self.sigma[k]].mul(self.h[k]):
                return False
        return True


def _canonical_transversal(kind: str, n_parent: int, count: int) -> tuple[GroupElement, ...]:
    return tuple(GroupElement(kind, k * n_parent, 0) for k in range(count))


def relative_cocycle(kind: str, n_parent: int, n_child: int, g: GroupElement,
                     transversal: Sequence[GroupElement] | None = None,
                     ) -> tuple[tuple[int, ...], tuple[GroupElement, ...], tuple[GroupElement, ...]]:
    """Cocycle of g for the subgroup pair with moduli n_parent | n_child.

    g must lie in the parent subgroup (n_parent divides its translation).
    Returns (sigma, h, reps) with g*reps[k] = reps[sigma(k)]*h[k] and every
    h[k] in the child subgroup.
    """
    if n_child % n_parent != 0:
        raise ValueError("child modulus must be a multiple of the parent modulus")
    if g.t % n_parent != 0:
        raise ValueError("element does not lie in the parent subgroup")
    count = n_child // n_parent
    reps = tuple(transversal) if transversal is not None else _canonical_transversal(kind, n_parent, count)
    if len(reps) != count:
        raise ValueError(f"transversal must have {count} elements")

    def coset_index(e: GroupElement) -> int:
        if e.t % n_parent != 0:
            raise ValueError("transversal element leaves the parent subgroup")
        return (e.t // n_parent) % count

    indices = [coset_index(r) for r in reps]
    if sorted(indices) != list(range(count)):
        raise ValueError("transversal does not hit every coset exactly once")
    position = {idx: k for k, idx in enumerate(indices)}

    sigma = []
    h = []
    for rep in reps:
        moved = g.mul(rep)
        # the coset of (t, s) is determined by t alone, for every group kind
        target = position[coset_index(moved)]
        hk = reps[target].inverse().mul(moved)
        if hk.t % n_child != 0:
            raise ValueError("cocycle component left the child subgroup")
        sigma.append(target)
        h.append(hk)
    return tuple(sigma), tuple(h), reps


def cocycle(spec: OdometerSpec, level: int, g: GroupElement) -> CocycleData:
    """Cocycle of g over the canonical transversal (k, 0) of the level cosets."""
    if not 1 <= level <= spec.depth:
        raise LevelOutOfRange(f"level {level} not in 1..{spec.depth}")
    if g.kind != spec.group_kind:
        raise WrongGroupKind("element does not belong to the spec's group")
    n = spec.level_modulus(level)
    if n > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"cannot materialize a cocycle over {n} cosets")
    sigma, h, reps = relative_cocycle(spec.group_kind, 1, n, g)
    return CocycleData(level=level, reps=reps, sigma=sigma, h=h)
