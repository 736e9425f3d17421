"""Ideals, the ideal lattice, congruences and quotients.

A subset I of an L-algebra is an ideal when it contains the unit and is
closed under three rules:

    (detachment)   x in I and x*y in I   =>  y in I
    (lifting)      x in I                =>  (x*y)*y in I        for all y
    (absorption)   x in I                =>  y*x in I  and  y*(x*y) in I

Ideals are upper sets and subalgebras, and they biject with congruences via
x ~ y iff x*y and y*x both lie in I.  Subsets are machine-word bitmasks
throughout; the carrier cap of 64 in :mod:`lalg.core` keeps that honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import FiniteLAlgebra, validate
from .errors import (
    CongruenceFailure,
    DistributivityFailure,
    JoinWitnessMismatch,
    QuotientNotWellDefined,
    ResiduationNotGreatest,
)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Ideal:
    """A validated ideal: an algebra reference plus a member bitmask."""

    algebra: FiniteLAlgebra
    members: int

    def __contains__(self, i: int) -> bool:
        return bool((self.members >> i) & 1)

    def __iter__(self) -> Iterator[int]:
        return bits(self.members)

    def __len__(self) -> int:
        return self.members.bit_count()

    def issubset(self, other: "Ideal") -> bool:
        return self.members & ~other.members == 0

    def label_set(self) -> tuple[str, ...]:
        return tuple(self.algebra.label(i) for i in self)

    def __repr__(self) -> str:
        return "{" + ",".join(self.label_set()) + "}"


def is_ideal(alg: FiniteLAlgebra, mask: int) -> bool:
    """Does the subset contain the unit and satisfy all three closure rules?"""
    if not (mask >> alg.unit) & 1:
        return False
    t = alg.table
    n = alg.n
    for x in bits(mask):
        row = t[x]
        for y in range(n):
            xy = row[y]
            if (mask >> xy) & 1 and not (mask >> y) & 1:
                return False
            if not (mask >> t[xy][y]) & 1:
                return False
            if not (mask >> t[y][x]) & 1 or not (mask >> t[y][xy]) & 1:
                return False
    return True


def close_under_rules(alg: FiniteLAlgebra, seed_mask: int) -> int:
    """Least ideal mask containing the seed.

    Fixpoint iteration applies detachment, then lifting, then absorption,
    and repeats until stable.  The rules are monotone, so the result does
    not depend on this order; fixing it just makes iteration counts (and
    logs) reproducible.
    """
    t = alg.table
    n = alg.n
    m = seed_mask | (1 << alg.unit)
    while True:
        before = m
        add = 0
        for x in bits(m):
            row = t[x]
            for y in range(n):
                if (m >> row[y]) & 1:
                    add |= 1 << y
        m |= add
        add = 0
        for x in bits(m):
            row = t[x]
            for y in range(n):
                add |= 1 << t[row[y]][y]
        m |= add
        add = 0
        for x in bits(m):
            row = t[x]
            for y in range(n):
                add |= 1 << t[y][x]
                add |= 1 << t[y][row[y]]
        m |= add
        if m == before:
            return m


def generate_ideal(alg: FiniteLAlgebra, seed: Iterable[int] | int) -> Ideal:
    """Ideal generated by a set of element indices (or a ready-made mask)."""
    seed_mask = seed if isinstance(seed, int) else mask_of(seed)
    return Ideal(alg, close_under_rules(alg, seed_mask))


def principal_ideal(alg: FiniteLAlgebra, x: int) -> Ideal:
    return generate_ideal(alg, (x,))


def _ideal_masks_by_filter(alg: FiniteLAlgebra) -> list[int]:
    """All ideal masks by filtering every unit-containing subset."""
    n = alg.n
    unit_bit = 1 << alg.unit
    rest = [i for i in range(n) if i != alg.unit]
    out = []
    for combo in range(1 << (n - 1)):
        mask = unit_bit
        c = combo
        for i in rest:
            if c & 1:
                mask |= 1 << i
            c >>= 1
        if is_ideal(alg, mask):
            out.append(mask)
    return out


def _ideal_masks_by_saturation(alg: FiniteLAlgebra) -> list[int]:
    """All ideal masks by closing principal ideals under joins and meets.

    Every ideal is the join of the principal ideals of its members, so
    pairwise join saturation already reaches everything; intersections are
    kept in the loop as a second, cheap safety net.
    """
    found = {close_under_rules(alg, 0)}
    found.update(close_under_rules(alg, 1 << x) for x in range(alg.n))
    while True:
        new = set()
        pool = list(found)
        for i, a in enumerate(pool):
            for b in pool[i + 1 :]:
                inter = a & b
                if inter not in found:
                    new.add(inter)
                union = a | b
                if union not in found:
                    j = close_under_rules(alg, union)
                    if j not in found:
                        new.add(j)
        if not new:
            return sorted(found)
        found |= new


#: Above this carrier size the subset filter (2^(n-1) candidates) gives way
#: to saturation from principal ideals.  Both paths agree wherever both run.
FILTER_LIMIT = 20


class IdealLattice:
    """All ideals of one algebra with meet, join and residuation tables.

    Ideals are deduplicated by mask and sorted by (popcount, mask), so index
    0 is the bottom {1} and the last index is the full carrier.  Construction
    cross-checks the two join characterizations, the two residuation routes,
    and distributivity; each failure raises its falsification error.
    """

    def __init__(self, algebra: FiniteLAlgebra, masks: Iterable[int]):
        self.algebra = algebra
        self.masks: tuple[int, ...] = tuple(
            sorted(set(masks), key=lambda m: (m.bit_count(), m))
        )
        self.ideals: tuple[Ideal, ...] = tuple(Ideal(algebra, m) for m in self.masks)
        self._index: dict[int, int] = {m: k for k, m in enumerate(self.masks)}
        self.bottom = 0
        self.top = len(self.masks) - 1
        assert self.masks[self.bottom] == close_under_rules(algebra, 0)
        assert self.masks[self.top] == algebra.full_mask
        self.principal: tuple[int, ...] = tuple(
            self._index[close_under_rules(algebra, 1 << x)] for x in range(algebra.n)
        )
        self.meet_table = self._build_meets()
        self.join_table = self._build_joins()
        self.residuation_table = self._build_residuations()
        self._assert_distributive()

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Ideal]:
        return iter(self.ideals)

    def index(self, mask: int) -> int:
        return self._index[mask]

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def proper_indices(self) -> Iterator[int]:
        return (k for k in range(len(self.masks)) if k != self.top)

    def _build_meets(self) -> tuple[tuple[int, ...], ...]:
        m = len(self.masks)
        table = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                inter = self.masks[i] & self.masks[j]
                k = self._index.get(inter)
                assert k is not None, "ideal family not closed under intersection"
                table[i][j] = table[j][i] = k
        return tuple(tuple(r) for r in table)

    def _build_joins(self) -> tuple[tuple[int, ...], ...]:
        m = len(self.masks)
        table = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                closed = close_under_rules(self.algebra, self.masks[i] | self.masks[j])
                witness = self._join_by_witness(self.masks[i], self.masks[j])
                if witness != closed:
                    raise JoinWitnessMismatch(
                        f"{self.algebra.name}: witness form of the join differs "
                        f"from the closure join",
                        witness={
                            "algebra": self.algebra.name,
                            "left": _labels(self.algebra, self.masks[i]),
                            "right": _labels(self.algebra, self.masks[j]),
                            "closure_join": _labels(self.algebra, closed),
                            "witness_join": _labels(self.algebra, witness),
                        },
                    )
                k = self._index.get(closed)
                assert k is not None, "ideal family not closed under join"
                table[i][j] = table[j][i] = k
        return tuple(tuple(r) for r in table)

    def _join_by_witness(self, imask: int, jmask: int) -> int:
        """y is in I v J  iff  some x in I has x*y and y*x in J."""
        t = self.algebra.table
        out = 0
        for y in range(self.algebra.n):
            for x in bits(imask):
                if (jmask >> t[x][y]) & 1 and (jmask >> t[y][x]) & 1:
                    out |= 1 << y
                    break
        return out

    def _residuation_mask(self, imask: int, jmask: int) -> int:
        out = 0
        for x in range(self.algebra.n):
            px = self.masks[self.principal[x]]
            if px & imask & ~jmask == 0:
                out |= 1 << x
        return out

    def _build_residuations(self) -> tuple[tuple[int, ...], ...]:
        m = len(self.masks)
        table = []
        for i in range(m):
            row = []
            for j in range(m):
                r = self._residuation_mask(self.masks[i], self.masks[j])
                k = self._check_residuation(i, j, r)
                row.append(k)
            table.append(tuple(row))
        return tuple(table)

    def _check_residuation(self, i: int, j: int, r: int) -> int:
        """Element-wise I*J must be the greatest ideal K with K n I <= J."""
        k = self._index.get(r)
        bad = None
        if k is None:
            bad = "element-wise residuation is not an ideal"
        elif r & self.masks[i] & ~self.masks[j]:
            bad = "residuation does not satisfy K n I <= J"
        else:
            for other in self.masks:
                if other & self.masks[i] & ~self.masks[j] == 0 and other & ~r:
                    bad = "a larger ideal also satisfies K n I <= J"
                    break
        if bad is not None:
            raise ResiduationNotGreatest(
                f"{self.algebra.name}: {bad}",
                witness={
                    "algebra": self.algebra.name,
                    "I": _labels(self.algebra, self.masks[i]),
                    "J": _labels(self.algebra, self.masks[j]),
                    "elementwise": _labels(self.algebra, r),
                },
            )
        assert k is not None
        return k

    def _assert_distributive(self) -> None:
        check_distributive(self.masks, self._index, self.join_table, self.algebra.name)


def check_distributive(
    masks: tuple[int, ...],
    index: dict[int, int],
    join_table: tuple[tuple[int, ...], ...],
    name: str = "lattice",
) -> None:
    """Raise DistributivityFailure on any triple with (IvJ)nK != (InK)v(JnK)."""
    m = len(masks)
    for i in range(m):
        for j in range(i, m):
            left_join = masks[join_table[i][j]]
            for k in range(m):
                lhs = left_join & masks[k]
                rhs = masks[join_table[index[masks[i] & masks[k]]][index[masks[j] & masks[k]]]]
                if lhs != rhs:
                    raise DistributivityFailure(
                        f"{name}: (I v J) n K != (I n K) v (J n K)",
                        witness={"I": masks[i], "J": masks[j], "K": masks[k]},
                    )


def _labels(alg: FiniteLAlgebra, mask: int) -> list[str]:
    return [alg.label(i) for i in bits(mask)]


def enumerate_ideals(alg: FiniteLAlgebra, strategy: str = "auto") -> IdealLattice:
    """Materialize the full ideal lattice.

    ``strategy`` is "auto" (filter up to carrier size 20, saturation above),
    "filter", or "saturate"; the two concrete strategies agree wherever both
    are feasible and the test suite holds them to that.
    """
    if strategy == "auto":
        strategy = "filter" if alg.n <= FILTER_LIMIT else "saturate"
    if strategy == "filter":
        masks = _ideal_masks_by_filter(alg)
    elif strategy == "saturate":
        masks = _ideal_masks_by_saturation(alg)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return IdealLattice(alg, masks)


def join_via_closure(lattice: IdealLattice, left: Ideal, right: Ideal) -> Ideal:
    """Join as the ideal generated by the union."""
    return Ideal(lattice.algebra, close_under_rules(lattice.algebra, left.members | right.members))


def join_via_witness(lattice: IdealLattice, left: Ideal, right: Ideal) -> Ideal:
    """Join via congruence witnesses; must equal the closure join.

    This equality is a standing cross-check: a mismatch raises
    :class:`JoinWitnessMismatch` instead of returning either side.
    """
    w = lattice._join_by_witness(left.members, right.members)
    closed = close_under_rules(lattice.algebra, left.members | right.members)
    if w != closed:
        raise JoinWitnessMismatch(
            f"{lattice.algebra.name}: witness join differs from closure join",
            witness={
                "algebra": lattice.algebra.name,
                "left": _labels(lattice.algebra, left.members),
                "right": _labels(lattice.algebra, right.members),
                "closure_join": _labels(lattice.algebra, closed),
                "witness_join": _labels(lattice.algebra, w),
            },
        )
    return Ideal(lattice.algebra, w)


def residuation(lattice: IdealLattice, left: Ideal, right: Ideal) -> Ideal:
    """I*J: the greatest ideal K with K n I inside J.

    Computed element-wise as {x | <x> n I <= J} and cross-checked against a
    scan of the whole lattice.
    """
    i = lattice.index(left.members)
    j = lattice.index(right.members)
    return lattice.ideals[lattice.residuation_table[i][j]]


@dataclass(frozen=True)
class Congruence:
    """Partition of the carrier induced by an ideal.

    ``classes`` are bitmasks ordered by least member; ``class_of[x]`` is the
    position of x's class in that order.
    """

    algebra: FiniteLAlgebra
    class_of: tuple[int, ...]
    classes: tuple[int, ...]

    def unit_class(self) -> int:
        return self.classes[self.class_of[self.algebra.unit]]


def congruence_of(alg: FiniteLAlgebra, ideal: Ideal) -> Congruence:
    """The congruence x ~ y iff x*y and y*x lie in the ideal.

    Compatibility with the operation and the identity class-of-unit = I are
    asserted; both are theorems, so failures surface as
    :class:`CongruenceFailure`.
    """
    n = alg.n
    t = alg.table
    imask = ideal.members
    related = [0] * n
    for x in range(n):
        for y in range(n):
            if (imask >> t[x][y]) & 1 and (imask >> t[y][x]) & 1:
                related[x] |= 1 << y

    for x in range(n):
        for y in bits(related[x]):
            if related[y] != related[x]:
                raise CongruenceFailure(
                    f"{alg.name}: relation modulo {ideal!r} is not an equivalence",
                    witness={"algebra": alg.name, "x": alg.label(x), "y": alg.label(y)},
                )

    class_masks = sorted({related[x] for x in range(n)}, key=lambda m: (m & -m))
    class_index = {m: k for k, m in enumerate(class_masks)}
    class_of = tuple(class_index[related[x]] for x in range(n))

    for x in range(n):
        for y in bits(related[x]):
            for z in range(n):
                if class_of[t[z][x]] != class_of[t[z][y]] or class_of[t[x][z]] != class_of[t[y][z]]:
                    raise CongruenceFailure(
                        f"{alg.name}: congruence modulo {ideal!r} is not compatible",
                        witness={
                            "algebra": alg.name,
                            "x": alg.label(x),
                            "y": alg.label(y),
                            "z": alg.label(z),
                        },
                    )

    if related[alg.unit] != imask:
        raise CongruenceFailure(
            f"{alg.name}: class of the unit differs from the inducing ideal",
            witness={
                "algebra": alg.name,
                "ideal": _labels(alg, imask),
                "unit_class": _labels(alg, related[alg.unit]),
            },
        )
    return Congruence(algebra=alg, class_of=class_of, classes=tuple(class_masks))


def ideal_of_congruence(cong: Congruence) -> Ideal:
    return Ideal(cong.algebra, cong.unit_class())


def quotient(
    alg: FiniteLAlgebra, ideal: Ideal
) -> tuple[FiniteLAlgebra, tuple[int, ...]]:
    """The quotient algebra and the projection map (element -> class index).

    Class representatives are least member indices and quotient elements
    follow representative order, so serialized output is reproducible.  The
    induced table is checked to be independent of representatives and then
    validated like any other algebra.
    """
    cong = congruence_of(alg, ideal)
    reps = [ (m & -m).bit_length() - 1 for m in cong.classes ]
    k = len(reps)
    table = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            value = cong.class_of[alg.table[reps[a]][reps[b]]]
            for x in bits(cong.classes[a]):
                for y in bits(cong.classes[b]):
                    if cong.class_of[alg.table[x][y]] != value:
                        raise QuotientNotWellDefined(
                            f"{alg.name}: induced table depends on representatives",
                            witness={
                                "algebra": alg.name,
                                "pair": [alg.label(x), alg.label(y)],
                                "representatives": [alg.label(reps[a]), alg.label(reps[b])],
                            },
                        )
            table[a][b] = value
    member_labels = ",".join(alg.label(i) for i in bits(ideal.members))
    quot = validate(
        table,
        cong.class_of[alg.unit],
        labels=[alg.label(r) for r in reps],
        name=f"{alg.name}/{{{member_labels}}}",
    )
    return quot, cong.class_of
