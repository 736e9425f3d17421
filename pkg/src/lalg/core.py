"""Finite L-algebras: validation, derived order, partial products, structure flags.

An L-algebra is a set with a binary operation ``x * y`` and a logical unit 1
such that

    x*x = x*1 = 1,   1*x = x                      (unit laws)
    (x*y)*(x*z) = (y*x)*(y*z)                     (exchange)
    x*y = 1 and y*x = 1  imply  x = y             (antisymmetry)

The operation models implication; ``x <= y  iff  x*y = 1`` is then a partial
order with top 1.  Everything here works on dense integer indices into an
immutable operation table; labels are I/O-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    AxiomViolation,
    MalformedTable,
    NonUniqueProduct,
    NotTransitive,
    Violation,
)

#: Largest supported carrier; subsets of the carrier fit one machine word.
MAX_CARRIER = 64


@dataclass(frozen=True)
class FiniteLAlgebra:
    """A validated finite L-algebra.

    ``table[i][j]`` is the index of ``e_i * e_j``; ``unit`` is the index of
    the logical unit.  Instances are immutable and safe to share; build them
    through :func:`validate` unless you deliberately want an unchecked table
    (e.g. to replay a falsification witness).
    """

    name: str
    labels: tuple[str, ...]
    unit: int
    table: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def op(self, i: int, j: int) -> int:
        return self.table[i][j]

    def leq(self, i: int, j: int) -> bool:
        return self.table[i][j] == self.unit

    def label(self, i: int) -> str:
        return self.labels[i]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name}: no element labelled {label!r}") from None

    @cached_property
    def order(self) -> "OrderRelation":
        return derive_order(self)

    def __repr__(self) -> str:  # table omitted on purpose; can be large
        return f"FiniteLAlgebra({self.name!r}, n={self.n})"


@dataclass(frozen=True)
class OrderRelation:
    """The partial order x <= y iff x*y = 1, as bitmask rows.

    ``above[i]`` is the mask of all j with i <= j (the upper set of i),
    ``below[j]`` the mask of all i with i <= j (the downset of j).
    """

    unit: int
    above: tuple[int, ...]
    below: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.above)

    def leq(self, i: int, j: int) -> bool:
        return bool((self.above[i] >> j) & 1)

    def downset(self, y: int) -> int:
        return self.below[y]

    def upset(self, x: int) -> int:
        return self.above[x]

    def is_maximal(self, x: int) -> bool:
        """True when nothing except the unit lies strictly above x."""
        strictly_above = self.above[x] & ~(1 << x)
        return strictly_above == (1 << self.unit) or (x == self.unit and strictly_above == 0)


@dataclass(frozen=True)
class StructureFlags:
    """Structural predicates of one algebra.

    ``diagnostics`` records pairs where the two product-form meet candidates
    exist but disagree, or agree without being a greatest lower bound; the
    meet is then reported undefined rather than raising, because the symmetric
    meet identity is only guaranteed inside self-similar algebras.
    """

    sharp: bool
    discrete: bool
    brouwerian: bool
    meet_closed: bool
    self_similar: bool
    diagnostics: tuple[str, ...] = ()


def axiom_violations(
    table: Sequence[Sequence[int]], unit: int
) -> list[Violation]:
    """Return the complete list of axiom violations of a square table.

    Entries must already be in-range (use :func:`validate` for shape checks).
    """
    n = len(table)
    out: list[Violation] = []
    for i in range(n):
        if table[i][i] != unit:
            out.append(Violation("unit", (i,), f"x*x != 1 at x={i}"))
        if table[i][unit] != unit:
            out.append(Violation("unit", (i,), f"x*1 != 1 at x={i}"))
        if table[unit][i] != i:
            out.append(Violation("unit", (i,), f"1*x != x at x={i}"))
    for x in range(n):
        for y in range(n):
            lhs_l = table[x][y]
            lhs_r = table[y][x]
            for z in range(n):
                if table[lhs_l][table[x][z]] != table[lhs_r][table[y][z]]:
                    out.append(
                        Violation(
                            "exchange",
                            (x, y, z),
                            f"(x*y)*(x*z) != (y*x)*(y*z) at (x,y,z)=({x},{y},{z})",
                        )
                    )
    for x in range(n):
        for y in range(x + 1, n):
            if table[x][y] == unit and table[y][x] == unit:
                out.append(
                    Violation(
                        "antisymmetry",
                        (x, y),
                        f"x*y = y*x = 1 for distinct x={x}, y={y}",
                    )
                )
    return out


def _check_shape(
    table: Sequence[Sequence[int]], unit: int, labels: Sequence[str] | None
) -> None:
    n = len(table)
    if n == 0:
        raise MalformedTable("empty table")
    if n > MAX_CARRIER:
        raise MalformedTable(f"carrier size {n} exceeds the cap of {MAX_CARRIER}")
    for i, row in enumerate(table):
        if len(row) != n:
            raise MalformedTable(f"table not square: row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not (0 <= v < n):
                raise MalformedTable(f"entry ({i},{j}) = {v!r} out of range 0..{n - 1}")
    if not (0 <= unit < n):
        raise MalformedTable(f"unit index {unit} out of range 0..{n - 1}")
    if labels is not None:
        if len(labels) != n:
            raise MalformedTable(f"{len(labels)} labels for {n} elements")
        if len(set(labels)) != n:
            raise MalformedTable("element labels are not pairwise distinct")


def validate(
    table: Sequence[Sequence[int]],
    unit: int,
    labels: Sequence[str] | None = None,
    name: str = "X",
) -> FiniteLAlgebra:
    """Validate a raw table and return the algebra, or raise with all violations.

    Raises :class:`MalformedTable` for shape problems and
    :class:`AxiomViolation` carrying every violated axiom instance.  On
    success the partial-product uniqueness cross-check also runs; it can only
    fire on tables that slipped past the axioms, i.e. never.
    """
    _check_shape(table, unit, labels)
    violations = axiom_violations(table, unit)
    if violations:
        raise AxiomViolation(violations)
    if labels is None:
        labels = tuple(str(i) for i in range(len(table)))
    alg = FiniteLAlgebra(
        name=name,
        labels=tuple(labels),
        unit=unit,
        table=tuple(tuple(row) for row in table),
    )
    _assert_products_unique(alg)
    return alg


def _assert_products_unique(alg: FiniteLAlgebra) -> None:
    """Each y*(-) must be injective on the downset of y."""
    n = alg.n
    t = alg.table
    for y in range(n):
        seen: dict[int, int] = {}
        for z in range(n):
            if t[z][y] != alg.unit:  # z <= y fails
                continue
            x = t[y][z]
            if x in seen:
                raise NonUniqueProduct(
                    f"{alg.name}: product of {alg.label(x)} and {alg.label(y)} "
                    f"has witnesses {alg.label(seen[x])} and {alg.label(z)}",
                    witness={
                        "algebra": alg.name,
                        "x": alg.label(x),
                        "y": alg.label(y),
                        "witnesses": [alg.label(seen[x]), alg.label(z)],
                    },
                )
            seen[x] = z


def derive_order(alg: FiniteLAlgebra) -> OrderRelation:
    """Read the order off the table and cross-check that it is a partial order.

    Reflexivity and antisymmetry come straight from the axioms; transitivity
    is a consequence, so a failure here means the table was never a valid
    L-algebra and :class:`NotTransitive` reports the witness triple.
    """
    n = alg.n
    t = alg.table
    unit = alg.unit
    above = [0] * n
    below = [0] * n
    for i in range(n):
        for j in range(n):
            if t[i][j] == unit:
                above[i] |= 1 << j
                below[j] |= 1 << i
    for x in range(n):
        ax = above[x]
        y_mask = ax
        while y_mask:
            y = (y_mask & -y_mask).bit_length() - 1
            y_mask &= y_mask - 1
            if above[y] & ~ax:
                z = ((above[y] & ~ax) & -(above[y] & ~ax)).bit_length() - 1
                raise NotTransitive(
                    f"{alg.name}: {alg.label(x)} <= {alg.label(y)} <= {alg.label(z)} "
                    f"but not {alg.label(x)} <= {alg.label(z)}",
                    witness={
                        "algebra": alg.name,
                        "triple": [alg.label(x), alg.label(y), alg.label(z)],
                    },
                )
    return OrderRelation(unit=unit, above=tuple(above), below=tuple(below))


def partial_product(alg: FiniteLAlgebra, x: int, y: int) -> int | None:
    """The unique z with y*z = x and z <= y, or None when no such z exists.

    Uniqueness is a theorem; two witnesses raise :class:`NonUniqueProduct`
    rather than silently picking one.
    """
    t = alg.table
    unit = alg.unit
    found: int | None = None
    for z in range(alg.n):
        if t[z][y] == unit and t[y][z] == x:
            if found is not None:
                raise NonUniqueProduct(
                    f"{alg.name}: product ({alg.label(x)}, {alg.label(y)}) has two witnesses",
                    witness={
                        "algebra": alg.name,
                        "x": alg.label(x),
                        "y": alg.label(y),
                        "witnesses": [alg.label(found), alg.label(z)],
                    },
                )
            found = z
    return found


def meet(alg: FiniteLAlgebra, a: int, b: int) -> int | None:
    """Binary meet computed as the product (a*b)a, when it deserves the name.

    Returns the common value of the products (a*b)a and (b*a)b provided both
    exist, agree, and are a greatest lower bound of {a, b} in the derived
    order.  Any of the three conditions failing yields None; the identity is
    only guaranteed in self-similar algebras, so inside a general algebra the
    two sides may exist and differ.
    """
    za = partial_product(alg, alg.table[a][b], a)
    zb = partial_product(alg, alg.table[b][a], b)
    if za is None or zb is None or za != zb:
        return None
    if not _is_glb(alg, za, a, b):
        return None
    return za


def _is_glb(alg: FiniteLAlgebra, z: int, a: int, b: int) -> bool:
    order = alg.order
    if not (order.leq(z, a) and order.leq(z, b)):
        return False
    common = order.below[a] & order.below[b]
    return common & ~order.below[z] == 0


def _meet_diagnostics(alg: FiniteLAlgebra) -> tuple[str, ...]:
    """Pairs where the two meet candidates exist but fail the contract."""
    notes: list[str] = []
    for a in range(alg.n):
        for b in range(a + 1, alg.n):
            za = partial_product(alg, alg.table[a][b], a)
            zb = partial_product(alg, alg.table[b][a], b)
            if za is None or zb is None:
                continue
            la, lb = alg.label(a), alg.label(b)
            if za != zb:
                notes.append(
                    f"({la}*{lb}){la} = {alg.label(za)} but ({lb}*{la}){lb} = {alg.label(zb)}"
                )
            elif not _is_glb(alg, za, a, b):
                notes.append(
                    f"({la}*{lb}){la} = {alg.label(za)} is not a greatest lower bound"
                )
    return tuple(notes)


def structure_flags(alg: FiniteLAlgebra) -> StructureFlags:
    """Compute the structural predicates of a validated algebra."""
    n = alg.n
    t = alg.table
    unit = alg.unit
    order = alg.order

    sharp = all(t[x][t[x][y]] == t[x][y] for x in range(n) for y in range(n))
    discrete = all(x == unit or order.is_maximal(x) for x in range(n))

    meets: dict[tuple[int, int], int | None] = {}
    for a in range(n):
        for b in range(n):
            meets[a, b] = meet(alg, a, b)
    meet_closed = all(v is not None for v in meets.values())

    brouwerian = meet_closed
    if meet_closed:
        for x in range(n):
            for y in range(n):
                m = meets[x, y]
                assert m is not None
                for z in range(n):
                    if order.leq(m, z) != order.leq(x, t[y][z]):
                        brouwerian = False
                        break
                if not brouwerian:
                    break
            if not brouwerian:
                break

    self_similar = True
    for y in range(n):
        image = {t[y][z] for z in range(n) if order.leq(z, y)}
        if len(image) != n:
            self_similar = False
            break

    return StructureFlags(
        sharp=sharp,
        discrete=discrete,
        brouwerian=brouwerian,
        meet_closed=meet_closed,
        self_similar=self_similar,
        diagnostics=_meet_diagnostics(alg),
    )


def subalgebra(
    alg: FiniteLAlgebra, member_mask: int, name: str | None = None
) -> tuple[FiniteLAlgebra, tuple[int, ...]]:
    """Restrict to a subset closed under the operation (e.g. an ideal).

    Returns the restricted algebra plus the tuple mapping new indices to old.
    Raises ValueError when the subset is not operation-closed or misses the
    unit.
    """
    elems = [i for i in range(alg.n) if (member_mask >> i) & 1]
    if alg.unit not in elems:
        raise ValueError(f"{alg.name}: subset does not contain the unit")
    old_to_new = {old: new for new, old in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            v = alg.table[a][b]
            if v not in old_to_new:
                raise ValueError(
                    f"{alg.name}: subset not closed under the operation "
                    f"({alg.label(a)}*{alg.label(b)} = {alg.label(v)} escapes)"
                )
            row.append(old_to_new[v])
        table.append(row)
    sub = validate(
        table,
        old_to_new[alg.unit],
        labels=[alg.labels[i] for i in elems],
        name=name or f"{alg.name}|{{{','.join(alg.labels[i] for i in elems)}}}",
    )
    return sub, tuple(elems)


def elements(alg: FiniteLAlgebra) -> Iterable[int]:
    return range(alg.n)
