"""Exact integer matrix algebra and finitely generated abelian groups.

Everything here is computed over Z with Python integers, so there is no
overflow at any size.  The central tool is the Smith normal form with the
convention

    S = U * A * V,   U, V unimodular,  S diagonal with d1 | d2 | ... ,

from which cokernels, kernels, lattice membership and subquotients are all
derived.  Groups are kept in canonical form (free rank + invariant factors)
together with an optional presentation (generator count + relation matrix)
used by homomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

from .errors import DomainMismatch, IllDefinedHomomorphism, ImageNotContained

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "Presentation",
    "FgAbelianGroup",
    "AbHom",
    "smith_normal_form",
    "cokernel",
    "subquotient",
    "check_exactness",
    "iso_equal",
    "kernel_basis",
    "column_span_basis",
    "solve_in_column_span",
    "in_column_span",
    "lattice_quotient",
    "lattice_intersection",
    "SpanSolver",
    "unimodular_inverse",
    "det_bareiss",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, stored as a tuple of row tuples."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError(f"expected {self.cols} cols, got {len(row)}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else (cols if cols is not None else 0)
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, entries: Sequence[int]) -> "IntMatrix":
        return cls(len(entries), 1, tuple((int(x),) for x in entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        if not columns:
            return cls.zeros(rows if rows is not None else 0, 0)
        nrows = len(columns[0])
        data = tuple(tuple(int(col[i]) for col in columns) for i in range(nrows))
        return cls(nrows, len(columns), data)

    # -- basic ops -----------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self.data[i][j]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.data else tuple(() for _ in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.transpose().data
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, ocol)) for ocol in ot)
            for row in self.data
        )
        return IntMatrix(self.rows, other.cols, data)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.mul(other)

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows, self.cols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
        )

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows, self.cols,
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(r1 + r2 for r1, r2 in zip(self.data, other.data)))

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        support = [(j, x) for j, x in enumerate(vector) if x]
        if 4 * len(support) < self.cols:
            # sparse vectors are common (relation columns); combine columns
            out = [0] * self.rows
            for j, x in support:
                for i, row in enumerate(self.data):
                    if row[j]:
                        out[i] += row[j] * x
            return tuple(out)
        return tuple(sum(map(int.__mul__, row, vector)) for row in self.data)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.data]


@dataclass(frozen=True)
class SmithDecomposition:
    """S = U * source * V with U, V unimodular and S in Smith form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    source: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.S.diagonal()

    def nonzero_diagonal(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal() if d != 0)

    def rank(self) -> int:
        return len(self.nonzero_diagonal())

    def verify(self) -> bool:
        if self.U.mul(self.source).mul(self.V) != self.S:
            return False
        if abs(det_bareiss(self.U)) != 1 or abs(det_bareiss(self.V)) != 1:
            return False
        diag = self.diagonal()
        if any(d < 0 for d in diag):
            return False
        seen_zero = False
        for i, d in enumerate(diag):
            if d == 0:
                seen_zero = True
            elif seen_zero:
                return False
            if i + 1 < len(diag) and d != 0 and diag[i + 1] != 0 and diag[i + 1] % d != 0:
                return False
        # off-diagonal entries must vanish
        for i in range(self.S.rows):
            for j in range(self.S.cols):
                if i != j and self.S.data[i][j] != 0:
                    return False
        return True


def _nearest_quotient(x: int, d: int) -> int:
    """Quotient with remainder of minimal absolute value (at most |d|/2)."""
    q, r = divmod(x, d)
    if 2 * abs(r) > abs(d):
        q += 1
    return q


@lru_cache(maxsize=128)
def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form by gcd pivoting.  Results are memoized: reports and
    exactness checks revisit the same relation matrices many times.

    Entry growth is controlled by re-selecting the smallest nonzero entry of
    the remaining block as the pivot on every pass and reducing with
    round-to-nearest division, so every nonzero remainder at least halves
    the working minimum.
    """
    m, n = a.rows, a.cols
    s = [list(row) for row in a.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in s:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row[dst] += k * row[src]
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in s:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    def smallest_nonzero(t):
        best = None
        best_abs = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(s[i][j])
                if x != 0 and (best_abs is None or x < best_abs):
                    if x == 1:
                        return (i, j)  # a unit pivot cannot be improved
                    best, best_abs = (i, j), x
        return best

    t = 0
    while t < min(m, n):
        if smallest_nonzero(t) is None:
            break
        while True:
            pos = smallest_nonzero(t)
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            pivot = s[t][t]
            # one remainder pass; leftover remainders are at most |pivot|/2,
            # so re-picking the minimum makes strict progress
            for i in range(t + 1, m):
                if s[i][t] != 0:
                    add_row(t, i, -_nearest_quotient(s[i][t], pivot))
            for j in range(t + 1, n):
                if s[t][j] != 0:
                    add_col(t, j, -_nearest_quotient(s[t][j], pivot))
            if any(s[i][t] for i in range(t + 1, m)) or any(s[t][j] for j in range(t + 1, n)):
                continue
            # enforce the divisibility chain: fold a bad row into row t
            bad = None
            for i in range(t + 1, m):
                if any(s[i][j] % pivot for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if s[t][t] < 0:
            negate_row(t)
        t += 1

    smith = IntMatrix.from_rows(s, cols=n)
    return SmithDecomposition(
        U=IntMatrix.from_rows(u, cols=m),
        S=smith,
        V=IntMatrix.from_rows(v, cols=n),
        source=a,
    )


def det_bareiss(a: IntMatrix) -> int:
    """Exact determinant by fraction-free elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant requires a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def unimodular_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix: with S = U a V = I, a^-1 = V U."""
    dec = smith_normal_form(a)
    if dec.S != IntMatrix.identity(a.rows):
        raise ValueError("matrix is not unimodular")
    return dec.V.mul(dec.U)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of { x : a x = 0 }."""
    dec = smith_normal_form(a)
    r = dec.rank()
    cols = [dec.V.col(j) for j in range(r, a.cols)]
    return IntMatrix.from_columns(cols, rows=a.cols)


def column_span_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the lattice spanned by the columns of a."""
    dec = smith_normal_form(a)
    if dec.rank() == 0:
        return IntMatrix.zeros(a.rows, 0)
    uinv = unimodular_inverse(dec.U)
    cols = [tuple(d * x for x in uinv.col(i)) for i, d in enumerate(dec.diagonal()) if d != 0]
    return IntMatrix.from_columns(cols, rows=a.rows)


class SpanSolver:
    """Repeated membership and solving against one column span.

    Factors the matrix once; each query costs a matrix-vector product.
    """

    def __init__(self, a: IntMatrix):
        self.matrix = a
        self._dec = smith_normal_form(a)
        self._diag = self._dec.diagonal()
        self._rank = self._dec.rank()

    def span_coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of v on the span basis (d_i * Uinv e_i), or None.

        With S = U a V, the lattice is spanned by the vectors d_i Uinv e_i,
        so v lies in it exactly when w = U v is supported on the first rank
        entries with d_i | w_i; the coordinates are then w_i / d_i.
        """
        w = self._dec.U.apply(v)
        coords = []
        for i in range(len(w)):
            if i < self._rank:
                if w[i] % self._diag[i] != 0:
                    return None
                coords.append(w[i] // self._diag[i])
            elif w[i] != 0:
                return None
        return tuple(coords)

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Some integral x with a x = v, or None."""
        coords = self.span_coordinates(v)
        if coords is None:
            return None
        y = list(coords) + [0] * (self.matrix.cols - self._rank)
        return self._dec.V.apply(y)

    def contains(self, v: Sequence[int]) -> bool:
        return self.span_coordinates(v) is not None

    def contains_all(self, columns_of: IntMatrix) -> bool:
        return all(self.contains(columns_of.col(j)) for j in range(columns_of.cols))

    @property
    def rank(self) -> int:
        return self._rank


def solve_in_column_span(a: IntMatrix, v: Sequence[int]) -> tuple[int, ...] | None:
    """Some integral x with a x = v, or None if v is not in the column span."""
    if len(v) != a.rows:
        raise ValueError("vector length mismatch")
    return SpanSolver(a).solve(v)


def in_column_span(a: IntMatrix, v: Sequence[int]) -> bool:
    return solve_in_column_span(a, v) is not None


def lattice_preimage(m: IntMatrix, lattice: IntMatrix) -> IntMatrix:
    """Generators of { x : m x is in the column span of lattice }."""
    if m.rows != lattice.rows:
        raise ValueError("ambient rank mismatch")
    block = m.hstack(lattice)
    ker = kernel_basis(block)
    cols = [tuple(ker.col(j)[: m.cols]) for j in range(ker.cols)]
    return IntMatrix.from_columns(cols, rows=m.cols)


def lattice_intersection(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Generators of the intersection of the two column-span lattices."""
    if a.rows != b.rows:
        raise ValueError("ambient rank mismatch")
    block = a.hstack(b)
    ker = kernel_basis(block)
    cols = [a.apply(tuple(ker.col(j)[: a.cols])) for j in range(ker.cols)]
    return IntMatrix.from_columns(cols, rows=a.rows)


def lattice_contains(big: IntMatrix, small: IntMatrix) -> bool:
    """Column span of small contained in column span of big."""
    return SpanSolver(big).contains_all(small)


@dataclass(frozen=True)
class Presentation:
    """Z^generators modulo the column span of the relation matrix."""

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError("relation matrix must have one row per generator")


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in canonical form.

    Equality compares the canonical form only: two values are equal exactly
    when the groups are isomorphic.  The presentation is bookkeeping for
    homomorphisms and never enters comparisons.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()
    presentation: Presentation | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        prev = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    # -- constructors --------------------------------------------------------

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls(0, (), Presentation(0, IntMatrix.zeros(0, 0)))

    @classmethod
    def free(cls, rank: int) -> "FgAbelianGroup":
        return cls(rank, (), Presentation(rank, IntMatrix.zeros(rank, 0)))

    @classmethod
    def cyclic(cls, order: int) -> "FgAbelianGroup":
        if order == 0:
            return cls.free(1)
        if order == 1:
            return cls.trivial()
        return cls(0, (order,), Presentation(1, IntMatrix.from_rows([[order]])))

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Iterable[int]) -> "FgAbelianGroup":
        factors = tuple(d for d in factors if d != 1)
        gens = free_rank + len(factors)
        rel_cols = [
            tuple(d if i == j else 0 for i in range(gens))
            for j, d in enumerate(factors)
        ]
        pres = Presentation(gens, IntMatrix.from_columns(rel_cols, rows=gens))
        return cls(free_rank, factors, pres)

    @classmethod
    def presented(cls, generators: int, relations: IntMatrix) -> "FgAbelianGroup":
        """Z^generators modulo column span of relations, canonicalized."""
        pres = Presentation(generators, relations)
        dec = smith_normal_form(relations)
        factors = tuple(d for d in dec.nonzero_diagonal() if d > 1)
        rank = generators - dec.rank()
        return cls(rank, factors, pres)

    # -- queries --------------------------------------------------------------

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if not self.is_finite():
            return None
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def require_presentation(self) -> Presentation:
        if self.presentation is None:
            raise ValueError("group has no presentation attached")
        return self.presentation

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        p, q = self.require_presentation(), other.require_presentation()
        gens = p.generators + q.generators
        cols = []
        for j in range(p.relations.cols):
            cols.append(tuple(p.relations.col(j)) + (0,) * q.generators)
        for j in range(q.relations.cols):
            cols.append((0,) * p.generators + tuple(q.relations.col(j)))
        return FgAbelianGroup.presented(gens, IntMatrix.from_columns(cols, rows=gens))

    def render(self) -> str:
        """Canonical grammar: "0", "Z", "Z^r", "Z_d", "Z_d^k", joined by " (+) "."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        i = 0
        factors = self.invariant_factors
        while i < len(factors):
            j = i
            while j < len(factors) and factors[j] == factors[i]:
                j += 1
            count = j - i
            parts.append(f"Z_{factors[i]}" if count == 1 else f"Z_{factors[i]}^{count}")
            i = j
        return " (+) ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


def same_presentation(g: FgAbelianGroup, h: FgAbelianGroup) -> bool:
    p, q = g.presentation, h.presentation
    if p is None or q is None:
        return False
    return p.generators == q.generators and p.relations == q.relations


def cokernel(a: IntMatrix) -> FgAbelianGroup:
    """Canonical form of Z^rows modulo the column span of a."""
    return FgAbelianGroup.presented(a.rows, a)


def lattice_quotient(big: IntMatrix, small: IntMatrix) -> FgAbelianGroup:
    """The group (span of big) / (span of small); requires small inside big."""
    if big.rows != small.rows:
        raise ValueError("ambient rank mismatch")
    solver = SpanSolver(big)
    coord_cols = []
    for j in range(small.cols):
        coords = solver.span_coordinates(small.col(j))
        if coords is None:
            raise ImageNotContained("generator of the small lattice lies outside the big one")
        coord_cols.append(coords)
    rel = IntMatrix.from_columns(coord_cols, rows=solver.rank)
    return FgAbelianGroup.presented(solver.rank, rel)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism between presented groups, given on generators.

    The matrix has codomain.generators rows and domain.generators columns and
    sends generator j of the domain to the j-th column.  Well-definedness
    (every domain relation lands in the codomain relation lattice) is checked
    at construction.
    """

    domain: FgAbelianGroup
    codomain: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        dp = self.domain.require_presentation()
        cp = self.codomain.require_presentation()
        if self.matrix.cols != dp.generators or self.matrix.rows != cp.generators:
            raise ValueError(
                f"matrix shape {self.matrix.rows}x{self.matrix.cols} does not match "
                f"presentations {cp.generators}x{dp.generators}"
            )
        if self.matrix.is_zero():
            return  # the zero map is always well-defined
        if dp.relations == cp.relations and self.matrix == IntMatrix.identity(dp.generators):
            return  # identity between identical presentations
        solver = SpanSolver(cp.relations)
        for j in range(dp.relations.cols):
            if not solver.contains(self.matrix.apply(dp.relations.col(j))):
                raise IllDefinedHomomorphism(
                    f"relation column {j} is not sent into the codomain relation lattice"
                )

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, g: FgAbelianGroup) -> "AbHom":
        n = g.require_presentation().generators
        return cls(g, g, IntMatrix.identity(n))

    @classmethod
    def zero(cls, domain: FgAbelianGroup, codomain: FgAbelianGroup) -> "AbHom":
        return cls(domain, codomain,
                   IntMatrix.zeros(codomain.require_presentation().generators,
                                   domain.require_presentation().generators))

    # -- algebra ------------------------------------------------------------------

    def compose(self, first: "AbHom") -> "AbHom":
        """self after first (this map applied second)."""
        if not same_presentation(first.codomain, self.domain):
            raise DomainMismatch("composition requires matching middle presentations")
        return AbHom(first.domain, self.codomain, self.matrix.mul(first.matrix))

    def equals(self, other: "AbHom") -> bool:
        """Equal as maps between the same presented groups."""
        if not (same_presentation(self.domain, other.domain)
                and same_presentation(self.codomain, other.codomain)):
            return False
        diff = self.matrix.sub(other.matrix)
        return SpanSolver(self.codomain.require_presentation().relations).contains_all(diff)

    # -- subgroup lattices (inside Z^codomain_gens / Z^domain_gens) ---------------

    def image_lattice(self) -> IntMatrix:
        return self.matrix.hstack(self.codomain.require_presentation().relations)

    def kernel_lattice(self) -> IntMatrix:
        pre = lattice_preimage(self.matrix, self.codomain.require_presentation().relations)
        return pre.hstack(self.domain.require_presentation().relations)

    def image_subgroup(self) -> FgAbelianGroup:
        """Abstract isomorphism class of the image."""
        return lattice_quotient(self.image_lattice(),
                                self.codomain.require_presentation().relations)

    def kernel_subgroup(self) -> FgAbelianGroup:
        return lattice_quotient(self.kernel_lattice(),
                                self.domain.require_presentation().relations)

    def is_injective(self) -> bool:
        return self.kernel_subgroup().is_trivial()

    def is_surjective(self) -> bool:
        solver = SpanSolver(self.image_lattice())
        n = self.codomain.require_presentation().generators
        return all(solver.contains(tuple(1 if i == j else 0 for i in range(n)))
                   for j in range(n))


def subquotient(kernel_of: AbHom, image_of: AbHom) -> FgAbelianGroup:
    """ker(kernel_of) / im(image_of), with containment checked."""
    if not same_presentation(image_of.codomain, kernel_of.domain):
        raise DomainMismatch("image must land in the domain of the kernel map")
    ker = kernel_of.kernel_lattice()
    img = image_of.image_lattice()
    if not lattice_contains(ker, img):
        raise ImageNotContained("image is not contained in the kernel")
    return lattice_quotient(ker, img)


def check_exactness(f: AbHom, g: AbHom) -> bool:
    """True exactly when im f = ker g inside the middle group."""
    if not same_presentation(f.codomain, g.domain):
        raise DomainMismatch("maps are not composable at the middle group")
    img = f.image_lattice()
    ker = g.kernel_lattice()
    return lattice_contains(ker, img) and lattice_contains(img, ker)


def iso_equal(g: FgAbelianGroup, h: FgAbelianGroup) -> bool:
    """True exactly when the canonical forms coincide."""
    return g.free_rank == h.free_rank and g.invariant_factors == h.invariant_factors
