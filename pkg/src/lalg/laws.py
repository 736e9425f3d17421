"""The law harness: every structural theorem, machine-checked per algebra.

Each law is one row in a static registry (id, description, applicability,
checker).  A checker receives a per-algebra context with lazily shared
derived structures and returns (instances checked, witness or None, detail).
Failures carry a replayable witness: the algebra document plus the offending
ideals or elements, enough to reproduce the verdict with :func:`replay`.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Sequence

from .constructions import Fixture, product_injections
from .core import (
    FiniteLAlgebra,
    axiom_violations,
    derive_order,
    meet,
    partial_product,
    structure_flags,
    validate,
)
from .errors import AxiomViolation, FalsificationError, LAlgebraError
from .ideals import (
    bits,
    check_distributive,
    congruence_of,
    enumerate_ideals,
    ideal_of_congruence,
    join_via_witness,
    quotient,
)
from .spectrum import (
    check_frame_map,
    prime_element_report,
    prime_elements,
    prime_ideals,
    prime_quotient_oracle,
    principal_open_map,
    quasi_prime_elements,
    relative_spectrum,
    spatiality_check,
    topology_report,
)

CheckResult = tuple[int, dict | None, str | None]


def algebra_doc(alg: FiniteLAlgebra) -> dict:
    """Label-level snapshot of an algebra, embeddable in witnesses."""
    return {
        "name": alg.name,
        "elements": list(alg.labels),
        "unit": alg.label(alg.unit),
        "table": [[alg.label(v) for v in row] for row in alg.table],
    }


def algebra_from_doc(doc: dict, validated: bool = False) -> FiniteLAlgebra:
    """Rebuild an algebra from a witness snapshot.

    ``validated=False`` skips the axiom check so that falsification
    witnesses, which are typically *not* L-algebras, can be replayed.
    """
    labels = tuple(doc["elements"])
    index = {lab: i for i, lab in enumerate(labels)}
    table = [[index[v] for v in row] for row in doc["table"]]
    unit = index[doc["unit"]]
    if validated:
        return validate(table, unit, labels=labels, name=doc["name"])
    return FiniteLAlgebra(
        name=doc["name"], labels=labels, unit=unit, table=tuple(tuple(r) for r in table)
    )


class Context:
    """Shared derived structures for one corpus algebra."""

    def __init__(self, fixture: Fixture):
        self.fixture = fixture
        self.algebra = fixture.algebra
        self.factors = fixture.factors

    @cached_property
    def lattice(self):
        return enumerate_ideals(self.algebra)

    @cached_property
    def topology(self):
        return prime_ideals(self.lattice)

    @cached_property
    def flags(self):
        return structure_flags(self.algebra)

    @cached_property
    def order(self):
        return derive_order(self.algebra)

    @cached_property
    def topology_report(self):
        return topology_report(self.topology)


@dataclass(frozen=True)
class LawReport:
    """Verdict of one law on one corpus algebra."""

    law: str
    corpus: str
    verdict: str  # "pass" | "fail"
    instances: int
    time_s: float
    detail: str | None = None
    witness: dict | None = None


@dataclass(frozen=True)
class Law:
    id: str
    description: str
    check: Callable[[Context], CheckResult]


# --------------------------------------------------------------------------
# checkers


def _check_axioms(ctx: Context) -> CheckResult:
    a = ctx.algebra
    violations = axiom_violations(a.table, a.unit)
    n = a.n
    instances = 3 * n + n * n * n + n * (n - 1) // 2
    if violations:
        return instances, {"violations": [str(v) for v in violations]}, None
    return instances, None, None


def _check_order(ctx: Context) -> CheckResult:
    a = ctx.algebra
    order = derive_order(a)  # transitivity cross-check lives inside
    n = a.n
    for x in range(n):
        if not order.leq(x, x):
            return n * n, {"element": a.label(x), "problem": "not reflexive"}, None
        if not order.leq(x, a.unit):
            return n * n, {"element": a.label(x), "problem": "unit not maximum"}, None
        for y in range(n):
            if x != y and order.leq(x, y) and order.leq(y, x):
                return (
                    n * n,
                    {"pair": [a.label(x), a.label(y)], "problem": "not antisymmetric"},
                    None,
                )
    return n * n, None, None


def _check_product_unique(ctx: Context) -> CheckResult:
    a = ctx.algebra
    for x in range(a.n):
        for y in range(a.n):
            partial_product(a, x, y)  # raises NonUniqueProduct on failure
    return a.n * a.n, None, None


def _check_product_adjunction(ctx: Context) -> CheckResult:
    a = ctx.algebra
    instances = 0
    for x in range(a.n):
        for y in range(a.n):
            z = partial_product(a, x, y)
            if z is None:
                continue
            for c in range(a.n):
                instances += 1
                if a.leq(z, c) != a.leq(x, a.table[y][c]):
                    return (
                        instances,
                        {
                            "x": a.label(x),
                            "y": a.label(y),
                            "product": a.label(z),
                            "c": a.label(c),
                        },
                        None,
                    )
    return instances, None, None


def _brute_glb(ctx: Context, x: int, y: int) -> int | None:
    order = ctx.order
    common = order.below[x] & order.below[y]
    for z in bits(common):
        if common & ~order.below[z] == 0:
            return z
    return None


def _check_meet_glb(ctx: Context) -> CheckResult:
    a = ctx.algebra
    for x in range(a.n):
        for y in range(a.n):
            m = meet(a, x, y)
            g = _brute_glb(ctx, x, y)
            if m is not None and m != g:
                return (
                    a.n * a.n,
                    {"pair": [a.label(x), a.label(y)], "meet": a.label(m)},
                    None,
                )
            if ctx.flags.meet_closed and m is None:
                return (
                    a.n * a.n,
                    {"pair": [a.label(x), a.label(y)], "problem": "undefined meet"},
                    None,
                )
    return a.n * a.n, None, None


def _check_meet_distributes(ctx: Context) -> CheckResult:
    if not ctx.flags.brouwerian:
        return 0, None, "not Brouwerian, nothing to check"
    a = ctx.algebra
    t = a.table
    meets = {(x, y): meet(a, x, y) for x in range(a.n) for y in range(a.n)}
    instances = 0
    for x in range(a.n):
        for y in range(a.n):
            for z in range(a.n):
                instances += 1
                lhs = t[meets[x, y]][z]
                rhs = t[t[x][y]][t[x][z]]
                if lhs != rhs:
                    return (
                        instances,
                        {"triple": [a.label(x), a.label(y), a.label(z)], "law": "meet-out"},
                        None,
                    )
                lhs2 = t[x][meets[y, z]]
                rhs2 = meets[t[x][y], t[x][z]]
                if lhs2 != rhs2:
                    return (
                        instances,
                        {"triple": [a.label(x), a.label(y), a.label(z)], "law": "meet-in"},
                        None,
                    )
    return instances, None, None


def _check_selfsimilar(ctx: Context) -> CheckResult:
    f = ctx.flags
    if f.self_similar != (ctx.algebra.n == 1):
        return 1, {"self_similar": f.self_similar, "n": ctx.algebra.n}, None
    return 1, None, None


def _check_distributivity(ctx: Context) -> CheckResult:
    lat = ctx.lattice  # construction itself asserts; re-check for the count
    check_distributive(lat.masks, lat._index, lat.join_table, ctx.algebra.name)
    m = len(lat)
    return m * m * m, None, f"{m} ideals"


def _check_join_witness(ctx: Context) -> CheckResult:
    lat = ctx.lattice
    m = len(lat)
    for i in range(m):
        for j in range(i, m):
            join_via_witness(lat, lat.ideals[i], lat.ideals[j])
    return m * (m + 1) // 2, None, None


def _check_residuation(ctx: Context) -> CheckResult:
    lat = ctx.lattice
    m = len(lat)
    instances = 0
    for i in range(m):
        for j in range(m):
            for k in range(m):
                instances += 1
                lhs = lat.masks[i] & lat.masks[j] & ~lat.masks[k] == 0
                rhs = lat.leq(i, lat.residuation_table[j][k])
                if lhs != rhs:
                    return (
                        instances,
                        {
                            "I": lat.ideals[i].label_set(),
                            "J": lat.ideals[j].label_set(),
                            "K": lat.ideals[k].label_set(),
                        },
                        None,
                    )
    return instances, None, None


def _check_lattice_is_algebra(ctx: Context) -> CheckResult:
    lat = ctx.lattice
    m = len(lat)
    table = [[lat.residuation_table[i][j] for j in range(m)] for i in range(m)]
    labels = tuple("{" + ",".join(I.label_set()) + "}" for I in lat.ideals)
    induced = validate(table, lat.top, labels=labels, name=f"Ideals({ctx.algebra.name})")
    for i in range(m):
        for j in range(m):
            if induced.leq(i, j) != lat.leq(i, j):
                return (
                    m * m,
                    {
                        "I": lat.ideals[i].label_set(),
                        "J": lat.ideals[j].label_set(),
                        "problem": "residuation order differs from inclusion",
                    },
                    None,
                )
    return m * m, None, None


def _check_ideal_shape(ctx: Context) -> CheckResult:
    a = ctx.algebra
    lat = ctx.lattice
    order = ctx.order
    instances = 0
    for ideal in lat.ideals:
        for x in ideal:
            instances += 1
            if order.above[x] & ~ideal.members:
                return instances, {"ideal": ideal.label_set(), "problem": "not an upper set"}, None
            for y in ideal:
                if a.table[x][y] not in ideal:
                    return (
                        instances,
                        {"ideal": ideal.label_set(), "problem": "not operation-closed"},
                        None,
                    )
    return instances, None, None


def _iter_partitions(n: int) -> Iterator[list[list[int]]]:
    groups: list[list[int]] = []

    def rec(k: int) -> Iterator[list[list[int]]]:
        if k == n:
            yield groups
            return
        for g in groups:
            g.append(k)
            yield from rec(k + 1)
            g.pop()
        groups.append([k])
        yield from rec(k + 1)
        groups.pop()

    yield from rec(0)


def _partition_key(classes: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(classes))


#: Above this carrier size the exhaustive set-partition sweep (Bell numbers)
#: is dropped and only the ideal -> congruence -> ideal round trip runs.
_PARTITION_SWEEP_LIMIT = 8


def _check_congruence_bijection(ctx: Context) -> CheckResult:
    """Ideals and congruences determine each other, both ways round."""
    a = ctx.algebra
    lat = ctx.lattice
    t = a.table
    instances = 0

    from_ideals = {}
    for ideal in lat.ideals:
        cong = congruence_of(a, ideal)
        instances += 1
        if ideal_of_congruence(cong).members != ideal.members:
            return instances, {"ideal": ideal.label_set()}, None
        from_ideals[_partition_key(cong.classes)] = ideal.members

    if a.n > _PARTITION_SWEEP_LIMIT:
        return (
            instances,
            None,
            f"round trip on {len(from_ideals)} ideals; partition sweep skipped at n={a.n}",
        )

    compatible = {}
    for classes in _iter_partitions(a.n):
        instances += 1
        class_of = [0] * a.n
        for k, cls in enumerate(classes):
            for x in cls:
                class_of[x] = k
        ok = True
        for cls in classes:
            rep = cls[0]
            for x in cls[1:]:
                for z in range(a.n):
                    if (
                        class_of[t[z][x]] != class_of[t[z][rep]]
                        or class_of[t[x][z]] != class_of[t[rep][z]]
                    ):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            # a compatible equivalence is only a congruence when the quotient
            # is again an L-algebra; the unit laws and the exchange identity
            # are equations and survive any quotient, antisymmetry need not
            reps = [cls[0] for cls in classes]
            ubar = class_of[a.unit]
            for x in reps:
                for y in reps:
                    if (
                        class_of[x] != class_of[y]
                        and class_of[t[x][y]] == ubar
                        and class_of[t[y][x]] == ubar
                    ):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            key = _partition_key(
                tuple(sum(1 << x for x in cls) for cls in classes)
            )
            compatible[key] = True

    if set(compatible) != set(from_ideals):
        return (
            instances,
            {
                "congruences": len(compatible),
                "ideals": len(from_ideals),
                "problem": "congruence/ideal families differ",
            },
            None,
        )
    return instances, None, f"{len(from_ideals)} congruences"


def _check_quotient_morphism(ctx: Context) -> CheckResult:
    a = ctx.algebra
    lat = ctx.lattice
    instances = 0
    for ideal in lat.ideals:
        quot, proj = quotient(a, ideal)
        for x in range(a.n):
            for y in range(a.n):
                instances += 1
                if proj[a.table[x][y]] != quot.table[proj[x]][proj[y]]:
                    return (
                        instances,
                        {"ideal": ideal.label_set(), "pair": [a.label(x), a.label(y)]},
                        None,
                    )
        kernel = sum(1 << x for x in range(a.n) if proj[x] == proj[a.unit])
        if kernel != ideal.members:
            return instances, {"ideal": ideal.label_set(), "problem": "kernel mismatch"}, None
    return instances, None, None


def _check_prime_definitions(ctx: Context) -> CheckResult:
    spec = ctx.topology  # construction compares both definitions pointwise
    return len(ctx.lattice), None, f"{spec.point_count} points"


def _check_prime_quotient(ctx: Context) -> CheckResult:
    rows = prime_quotient_oracle(ctx.algebra, ctx.lattice, ctx.topology)
    for row in rows:
        if not row.consistent:
            return (
                len(rows),
                {
                    "ideal": ctx.lattice.ideals[row.ideal_index].label_set(),
                    "prime": row.prime,
                    "quotient_subdirectly_irreducible": row.quotient_subdirectly_irreducible,
                },
                None,
            )
    return len(rows), None, None


def _check_t0_sober(ctx: Context) -> CheckResult:
    rep = ctx.topology_report
    npts = ctx.topology.point_count
    instances = npts * npts + rep.irreducible_closed_count
    if not (rep.t0 and rep.sober and rep.closure_is_point_bijection):
        return instances, {"witnesses": list(rep.witnesses)}, None
    return instances, None, f"{npts} points, {rep.irreducible_closed_count} irreducible closed sets"


def _check_compact_basis(ctx: Context) -> CheckResult:
    rep = ctx.topology_report
    if not (rep.quasi_compact_opens and rep.generalized_spectral):
        return len(ctx.lattice), {"min_generators": list(rep.min_generators)}, None
    biggest = max(rep.min_generators, default=0)
    return (
        len(ctx.lattice),
        None,
        f"every ideal finitely generated (largest minimal generating set: {biggest}); "
        f"intersections of quasi-compact opens stay quasi-compact on finite instances",
    )


def _check_frame(ctx: Context) -> CheckResult:
    instances, problem = check_frame_map(ctx.topology)
    if problem:
        return instances, {"problem": problem}, None
    return instances, None, None


def _check_spatial(ctx: Context) -> CheckResult:
    spatiality_check(ctx.lattice, ctx.topology)
    return len(ctx.lattice), None, None


def _check_quasiprime(ctx: Context) -> CheckResult:
    a = ctx.algebra
    quasi = quasi_prime_elements(a, ctx.lattice)  # raises if a prime escapes
    primes = prime_elements(a)
    detail = (
        f"primes {{{','.join(a.label(p) for p in primes)}}}"
        f" <= quasi-primes {{{','.join(a.label(q) for q in quasi)}}}"
    )
    return a.n, None, detail


def _check_attachment(ctx: Context) -> CheckResult:
    report = prime_element_report(ctx.algebra, ctx.lattice, ctx.topology)
    non_unique = sum(1 for att in report.attachments if not att.unique)
    return (
        max(ctx.algebra.n - 1, 0),
        None,
        f"{non_unique} elements with several maximal avoiders" if non_unique else None,
    )


def _check_relative_spectrum(ctx: Context) -> CheckResult:
    lat = ctx.lattice
    for ideal in lat.ideals:
        relative_spectrum(ctx.algebra, lat, ideal, ctx.topology)
    return len(lat), None, None


def _check_principal_meet_join(ctx: Context) -> CheckResult:
    rep = principal_open_map(ctx.algebra, ctx.lattice, ctx.topology, ctx.flags)
    if rep.meet_join_instances < 0:
        return 0, {"problem": "join of principal ideals is not the principal ideal of the meet"}, None
    if ctx.flags.meet_closed:
        if not rep.all_principal:
            return rep.meet_join_instances, {"problem": "a meet-closed algebra has a non-principal ideal"}, None
        if not rep.surjective:
            return rep.meet_join_instances, {"problem": "element map misses an open set"}, None
        return rep.meet_join_instances, None, "every ideal principal"
    return rep.meet_join_instances, None, "not meet-closed; principality not required"


def _check_point_map(ctx: Context) -> CheckResult:
    rep = principal_open_map(ctx.algebra, ctx.lattice, ctx.topology, ctx.flags)
    if not rep.antitone:
        return ctx.algebra.n, {"problem": "element map is not order-reversing"}, None
    if ctx.flags.meet_closed and rep.bijective != rep.brouwerian:
        return (
            ctx.algebra.n,
            {
                "bijective": rep.bijective,
                "brouwerian": rep.brouwerian,
            },
            rep.detail,
        )
    return ctx.algebra.n, None, rep.detail


def _check_product_factorization(ctx: Context) -> CheckResult:
    if ctx.factors is None:
        return 0, None, "not a product fixture"
    x, y = ctx.factors
    a = ctx.algebra
    left, right = product_injections(x, y)
    lat = ctx.lattice
    lat_x = enumerate_ideals(x)
    lat_y = enumerate_ideals(y)
    instances = 0

    pairs = set()
    for mask in lat.masks:
        instances += 1
        ix = sum(1 << i for i in range(x.n) if (mask >> left[i]) & 1)
        iy = sum(1 << j for j in range(y.n) if (mask >> right[j]) & 1)
        if ix not in lat_x._index or iy not in lat_y._index:
            return instances, {"problem": "projection of an ideal is not an ideal"}, None
        rebuilt = 0
        for i in bits(ix):
            for j in bits(iy):
                rebuilt |= 1 << (i * y.n + j)
        if rebuilt != mask:
            return (
                instances,
                {"ideal": [a.label(b) for b in bits(mask)], "problem": "not a rectangle"},
                None,
            )
        pairs.add((ix, iy))
    if len(pairs) != len(lat_x) * len(lat_y):
        return instances, {"problem": "ideal lattice is not the product of the factors"}, None

    spec = ctx.topology
    expected = set()
    for p in prime_ideals(lat_x).points:
        pmask = lat_x.masks[p]
        expected.add(
            sum(1 << (i * y.n + j) for i in bits(pmask) for j in range(y.n))
        )
    for q in prime_ideals(lat_y).points:
        qmask = lat_y.masks[q]
        expected.add(
            sum(1 << (i * y.n + j) for i in range(x.n) for j in bits(qmask))
        )
    actual = {lat.masks[p] for p in spec.points}
    instances += len(expected)
    if actual != expected:
        return instances, {"problem": "spectrum is not the disjoint union of the factor spectra"}, None
    return instances, None, f"{len(lat)} ideals, {spec.point_count} points"


LAWS: tuple[Law, ...] = (
    Law("validate.axioms", "the operation table satisfies the defining axioms", _check_axioms),
    Law("order.partial-order", "x <= y iff x*y = 1 is a partial order with top 1", _check_order),
    Law("product.uniqueness", "partial products have at most one witness", _check_product_unique),
    Law("product.adjunction", "xy <= c iff x <= y*c at every defined product", _check_product_adjunction),
    Law("meet.glb", "the product-form meet is the greatest lower bound", _check_meet_glb),
    Law("meet.brouwerian-distributive", "meets distribute over the operation in Brouwerian algebras", _check_meet_distributes),
    Law("selfsimilar.iff-singleton", "a finite algebra is self-similar only when trivial", _check_selfsimilar),
    Law("ideal-lattice.distributive", "the ideal lattice is distributive", _check_distributivity),
    Law("join.witness-form", "joins match their congruence-witness characterization", _check_join_witness),
    Law("residuation.adjunction", "K n I <= J exactly when K <= I*J", _check_residuation),
    Law("ideal-lattice.is-l-algebra", "ideals with residuation form an L-algebra with unit X", _check_lattice_is_algebra),
    Law("ideal.upper-subalgebra", "every ideal is an upper set and a subalgebra", _check_ideal_shape),
    Law("congruence.bijection", "ideals and congruences determine each other", _check_congruence_bijection),
    Law("quotient.morphism", "projections are morphisms with the ideal as kernel", _check_quotient_morphism),
    Law("prime.definitions-agree", "residuation-form and meet-form primality coincide", _check_prime_definitions),
    Law("prime.iff-quotient-irreducible", "P is prime iff X/P is subdirectly irreducible", _check_prime_quotient),
    Law("spectrum.t0-sober", "the spectrum is T0 and sober with unique generic points", _check_t0_sober),
    Law("spectrum.compact-basis", "quasi-compact opens (finitely generated ideals) form a basis", _check_compact_basis),
    Law("spectrum.frame-bijection", "I -> U_I is a bijection preserving meets and joins", _check_frame),
    Law("spectrum.spatial", "every ideal is the intersection of the primes above it", _check_spatial),
    Law("prime-elements.quasiprime", "every prime element is quasi-prime", _check_quasiprime),
    Law("prime-elements.attachment", "maximal avoiding ideals are prime, unique for quasi-primes", _check_attachment),
    Law("relative-spectrum.bijection", "Spec I matches U_I, Spec X/I its complement, sizes add up", _check_relative_spectrum),
    Law("principal-ideals.meet-join", "meet-closed: every ideal is principal via <x> v <y> = <x n y>", _check_principal_meet_join),
    Law("point-map.brouwerian", "x -> U_<x> is antitone; bijective iff Brouwerian (meet-closed)", _check_point_map),
    Law("product.factorization", "ideals and spectrum of a product factor through the factors", _check_product_factorization),
)

_LAW_BY_ID = {law.id: law for law in LAWS}


def law_ids() -> tuple[str, ...]:
    return tuple(law.id for law in LAWS)


def _run_one(law: Law, ctx: Context, corpus_id: str) -> LawReport:
    start = time.perf_counter()
    try:
        instances, witness, detail = law.check(ctx)
    except LAlgebraError as exc:
        witness = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, FalsificationError):
            witness.update(exc.witness)
        elif isinstance(exc, AxiomViolation):
            witness["violations"] = [str(v) for v in exc.violations]
        witness["algebra_document"] = algebra_doc(ctx.algebra)
        return LawReport(
            law=law.id,
            corpus=corpus_id,
            verdict="fail",
            instances=0,
            time_s=time.perf_counter() - start,
            witness=witness,
        )
    elapsed = time.perf_counter() - start
    if witness is not None:
        witness = dict(witness)
        witness.setdefault("algebra_document", algebra_doc(ctx.algebra))
        return LawReport(
            law=law.id,
            corpus=corpus_id,
            verdict="fail",
            instances=instances,
            time_s=elapsed,
            detail=detail,
            witness=witness,
        )
    return LawReport(
        law=law.id,
        corpus=corpus_id,
        verdict="pass",
        instances=instances,
        time_s=elapsed,
        detail=detail,
    )


def _laws_for(selection: Sequence[str] | None) -> tuple[Law, ...]:
    if selection is None:
        return LAWS
    unknown = [s for s in selection if s not in _LAW_BY_ID]
    if unknown:
        raise KeyError(f"unknown law id(s): {', '.join(unknown)}")
    return tuple(_LAW_BY_ID[s] for s in selection)


def _run_fixture(args: tuple[Fixture, tuple[str, ...] | None]) -> list[LawReport]:
    fixture, selection = args
    ctx = Context(fixture)
    return [_run_one(law, ctx, fixture.name) for law in _laws_for(selection)]


def run_suite(
    corpus: Sequence[Fixture],
    laws: Sequence[str] | None = None,
    jobs: int = 1,
) -> list[LawReport]:
    """Evaluate the selected laws on every corpus algebra.

    Rows come back sorted by (law id, corpus id) regardless of evaluation
    order, so parallel runs merge deterministically.
    """
    selection = tuple(laws) if laws is not None else None
    _laws_for(selection)  # fail fast on unknown ids
    if jobs > 1 and len(corpus) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_run_fixture, [(f, selection) for f in corpus])
            reports = [r for chunk in chunks for r in chunk]
    else:
        reports = [r for f in corpus for r in _run_fixture((f, selection))]
    reports.sort(key=lambda r: (r.law, r.corpus))
    return reports


def run_law(law_id: str, fixture: Fixture) -> LawReport:
    """Evaluate a single law on a single algebra (used by witness replay)."""
    (law,) = _laws_for([law_id])
    return _run_one(law, Context(fixture), fixture.name)


def replay(report: LawReport) -> LawReport:
    """Re-run a failed law on the algebra frozen inside its witness."""
    if report.witness is None or "algebra_document" not in report.witness:
        raise ValueError("report carries no replayable witness")
    alg = algebra_from_doc(report.witness["algebra_document"], validated=False)
    return run_law(report.law, Fixture(report.corpus, alg))


def all_pass(reports: Sequence[LawReport]) -> bool:
    return all(r.verdict == "pass" for r in reports)
