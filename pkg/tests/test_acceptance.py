"""Acceptance criteria, one test per criterion, one printed verdict line each.

The corpus is the exhaustive set of algebras with up to 3 elements (size
cross-checked against the independent brute-force filter) plus the fixture
family (carriers up to 8).  Every check is exact; there are no numeric
tolerances in this domain.

Criterion 8's exact prime-element set on the diamond contradicts the
definition it is supposed to follow (see tests below and the companion
regression test); it is asserted as written and expected to fail.
"""

import json
import time
from itertools import product as iproduct

import pytest

from lalg.cli import main
from lalg.constructions import enumerate_all, fixtures, product_pairs
from lalg.core import axiom_violations, structure_flags
from lalg.formats import (
    algebra_to_document,
    parse_algebra_json,
    parse_algebra_text,
    serialize_algebra_json,
    serialize_algebra_text,
)
from lalg.ideals import enumerate_ideals, generate_ideal
from lalg.laws import all_pass, run_suite
from lalg.spectrum import (
    attach_prime_ideal,
    check_frame_map,
    prime_elements,
    prime_ideals,
    principal_open_map,
    quasi_prime_elements,
    topology_report,
)


def _report(number, name, ok):
    print(f"criterion {number:02d} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} ({name}) failed"


@pytest.fixture(scope="module")
def corpus():
    algebras = [a for n in (1, 2, 3) for a in enumerate_all(n)]
    algebras += [f.algebra for f in fixtures()]
    return algebras


@pytest.fixture(scope="module")
def lattices(corpus):
    return {alg.name: enumerate_ideals(alg) for alg in corpus}


def test_criterion_01_distributivity(corpus, lattices):
    start = time.perf_counter()
    counterexamples = 0
    for alg in corpus:
        lat = lattices[alg.name]  # construction runs the distributivity assert
        m = len(lat)
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    lhs = lat.masks[lat.join_table[i][j]] & lat.masks[k]
                    rhs = lat.masks[
                        lat.join_table[
                            lat._index[lat.masks[i] & lat.masks[k]]
                        ][lat._index[lat.masks[j] & lat.masks[k]]]
                    ]
                    if lhs != rhs:
                        counterexamples += 1
    elapsed = time.perf_counter() - start
    _report(1, "ideal lattices distributive", counterexamples == 0 and elapsed < 10.0)


def test_criterion_02_join_characterization(corpus, lattices):
    mismatches = 0
    for alg in corpus:
        lat = lattices[alg.name]
        t = alg.table
        for i, imask in enumerate(lat.masks):
            for j, jmask in enumerate(lat.masks):
                witness_set = 0
                for y in range(alg.n):
                    if any(
                        (imask >> x) & 1
                        and (jmask >> t[x][y]) & 1
                        and (jmask >> t[y][x]) & 1
                        for x in range(alg.n)
                    ):
                        witness_set |= 1 << y
                if witness_set != lat.masks[lat.join_table[i][j]]:
                    mismatches += 1
    _report(2, "join via congruence witnesses", mismatches == 0)


def test_criterion_03_prime_iff_quotient_irreducible(corpus, lattices):
    from lalg.ideals import quotient
    from lalg.spectrum import subdirectly_irreducible

    mismatches = 0
    for alg in corpus:
        lat = lattices[alg.name]
        spec = prime_ideals(lat)  # raises if the two definitions disagree
        for p in lat.proper_indices():
            quot, _ = quotient(alg, lat.ideals[p])
            si = subdirectly_irreducible(quot, enumerate_ideals(quot))
            if (p in spec.points) != si:
                mismatches += 1
    _report(3, "prime iff quotient subdirectly irreducible", mismatches == 0)


def test_criterion_04_t0_sober_bijection(corpus, lattices):
    ok = True
    for alg in corpus:
        lat = lattices[alg.name]
        spec = prime_ideals(lat)
        rep = topology_report(spec)
        instances, problem = check_frame_map(spec)
        ok = ok and rep.t0 and rep.sober and rep.closure_is_point_bijection
        ok = ok and problem is None
    _report(4, "spectra T0 and sober, ideals biject with opens", ok)


def test_criterion_05_relative_spectra():
    from lalg.spectrum import relative_spectrum

    ok = True
    for f in fixtures():
        lat = enumerate_ideals(f.algebra)
        spec = prime_ideals(lat)
        for ideal in lat.ideals:
            report = relative_spectrum(f.algebra, lat, ideal, spec)
            ok = ok and report.counts_add_up
    _report(5, "open and closed subsets are again spectra", ok)


def test_criterion_06_products():
    pairs = product_pairs()
    reports = run_suite(list(pairs), laws=["product.factorization"])
    _report(6, "products factor ideal-wise and spectrum-wise", all_pass(reports))


def test_criterion_07_diamond_regression():
    diamond = next(f.algebra for f in fixtures() if f.name == "diamond")
    p, q = diamond.index_of("p"), diamond.index_of("q")
    lat = enumerate_ideals(diamond)
    ok = generate_ideal(diamond, [p]).members == diamond.full_mask
    ok = ok and generate_ideal(diamond, [q]).members == diamond.full_mask
    attach_p = attach_prime_ideal(diamond, lat, p)
    attach_q = attach_prime_ideal(diamond, lat, q)
    ok = ok and [i.label_set() for i in attach_p] == [("1",)]
    ok = ok and [i.label_set() for i in attach_q] == [("1",)]
    _report(7, "diamond: <p> = <q> = X and both attach to {1}", ok)


def test_criterion_08_primes_are_quasi_prime(corpus, lattices):
    ok = True
    for alg in corpus:
        lat = lattices[alg.name]
        ok = ok and set(prime_elements(alg)) <= set(quasi_prime_elements(alg, lat))
    _report(8, "prime elements are quasi-prime on the whole corpus", ok)


@pytest.mark.xfail(
    strict=True,
    reason="defect in the stated expectation: with the defining condition "
    "'for all x, x <= p or x*p <= p' the diamond bottom is prime (every x*0 "
    "equals 0), so P(X) = {p,q,0} = QP(X); the claimed proper inclusion "
    "would need the meet-form primality test, which is only equivalent on "
    "Brouwerian algebras, and the diamond is not one",
)
def test_criterion_08_diamond_exact_sets_as_stated():
    diamond = next(f.algebra for f in fixtures() if f.name == "diamond")
    lat = enumerate_ideals(diamond)
    primes = {diamond.label(i) for i in prime_elements(diamond)}
    quasi = {diamond.label(i) for i in quasi_prime_elements(diamond, lat)}
    assert quasi == {"p", "q", "0"}
    assert primes == {"p", "q"}
    _report(8, "diamond quasi-primes properly contain primes (as stated)", True)


def test_criterion_08_diamond_sets_from_the_definition():
    diamond = next(f.algebra for f in fixtures() if f.name == "diamond")
    lat = enumerate_ideals(diamond)
    primes = {diamond.label(i) for i in prime_elements(diamond)}
    quasi = {diamond.label(i) for i in quasi_prime_elements(diamond, lat)}
    ok = quasi == {"p", "q", "0"} and {"p", "q"} <= primes and primes == {"p", "q", "0"}
    _report(8, "diamond prime/quasi-prime sets from the definition", ok)


def test_criterion_09_point_map(corpus, lattices):
    mismatches = 0
    for alg in corpus:
        flags = structure_flags(alg)
        if not flags.meet_closed:
            continue
        lat = lattices[alg.name]
        rep = principal_open_map(alg, lat, flags=flags)
        if not (rep.surjective and rep.all_principal and rep.meet_join_instances >= 0):
            mismatches += 1
        if rep.bijective != flags.brouwerian:
            mismatches += 1
    _report(9, "principal-open map: onto, principal ideals, bijective iff Brouwerian", mismatches == 0)


def test_criterion_10_enumerator_cross_validation():
    count = 0
    for flat in iproduct(range(3), repeat=9):
        table = [list(flat[i * 3 : (i + 1) * 3]) for i in range(3)]
        if any(table[0][j] != j for j in range(3)):
            continue
        if any(table[i][0] != 0 or table[i][i] != 0 for i in range(3)):
            continue
        if not axiom_violations(table, 0):
            count += 1
    generated = sum(1 for _ in enumerate_all(3))
    two = list(enumerate_all(2))
    _report(10, "enumerator matches the brute-force filter", generated == count and len(two) == 1)


def test_criterion_11_round_trip_and_determinism(capsys):
    ok = True
    for f in fixtures():
        doc = algebra_to_document(f.algebra)
        ok = ok and parse_algebra_text(serialize_algebra_text(doc)) == doc
        ok = ok and parse_algebra_json(serialize_algebra_json(doc)) == doc

    def run():
        assert main(["laws", "--enumerate", "3", "--json"]) == 0
        return capsys.readouterr().out

    def strip(out):
        payload = json.loads(out)
        for row in payload["reports"]:
            row["stats"].pop("time_s", None)
        return json.dumps(payload, sort_keys=True).encode()

    first, second = run(), run()
    ok = ok and strip(first) == strip(second)
    with capsys.disabled():
        _report(11, "format round trips and deterministic law runs", ok)
