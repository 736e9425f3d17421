import pytest

from lalg.constructions import Fixture, fixtures, product_pairs
from lalg.core import FiniteLAlgebra
from lalg.laws import (
    LAWS,
    algebra_doc,
    algebra_from_doc,
    all_pass,
    law_ids,
    replay,
    run_law,
    run_suite,
)


@pytest.fixture(scope="module")
def full_corpus():
    corpus = list(fixtures())
    seen = {f.name for f in corpus}
    corpus += [p for p in product_pairs() if p.name not in seen]
    return corpus


@pytest.fixture(scope="module")
def full_reports(full_corpus):
    return run_suite(full_corpus)


def test_law_ids_are_unique():
    assert len(set(law_ids())) == len(LAWS)


def test_all_laws_pass_on_fixture_corpus(full_reports):
    fails = [r for r in full_reports if r.verdict == "fail"]
    assert not fails, [(r.law, r.corpus) for r in fails]
    assert all_pass(full_reports)


def test_report_rows_cover_the_grid(full_corpus, full_reports):
    assert len(full_reports) == len(full_corpus) * len(LAWS)
    keys = [(r.law, r.corpus) for r in full_reports]
    assert keys == sorted(keys)


def test_diamond_point_map_detail(full_reports):
    row = next(
        r
        for r in full_reports
        if r.law == "point-map.brouwerian" and r.corpus == "diamond"
    )
    assert row.verdict == "pass"
    assert row.detail == "not injective, not Brouwerian"


def test_product_law_applies_only_to_products(full_reports):
    rows = {r.corpus: r for r in full_reports if r.law == "product.factorization"}
    assert rows["B2xB2"].instances > 0
    assert rows["B2"].instances == 0
    assert rows["B2"].detail == "not a product fixture"


def test_reports_deterministic_modulo_timing(full_corpus):
    a = run_suite(full_corpus, laws=["ideal-lattice.distributive", "spectrum.spatial"])
    b = run_suite(full_corpus, laws=["ideal-lattice.distributive", "spectrum.spatial"])
    strip = lambda rs: [(r.law, r.corpus, r.verdict, r.instances, r.detail, r.witness) for r in rs]
    assert strip(a) == strip(b)


def test_parallel_matches_sequential(full_corpus):
    laws = ["validate.axioms", "order.partial-order", "prime-elements.quasiprime"]
    seq = run_suite(full_corpus, laws=laws, jobs=1)
    par = run_suite(full_corpus, laws=laws, jobs=2)
    strip = lambda rs: [(r.law, r.corpus, r.verdict, r.instances) for r in rs]
    assert strip(seq) == strip(par)


def test_unknown_law_id_rejected(full_corpus):
    with pytest.raises(KeyError):
        run_suite(full_corpus[:1], laws=["no.such.law"])


BAD_ORDER = FiniteLAlgebra(
    "bad-order",
    ("1", "a", "b", "c"),
    0,
    ((0, 1, 2, 3), (0, 0, 0, 3), (0, 1, 0, 0), (0, 1, 2, 0)),
)


def test_failures_carry_replayable_witnesses():
    report = run_law("order.partial-order", Fixture("bad-order", BAD_ORDER))
    assert report.verdict == "fail"
    assert report.witness is not None
    assert "algebra_document" in report.witness
    again = replay(report)
    assert again.verdict == "fail"
    assert again.law == report.law


def test_axiom_law_fails_on_invalid_table():
    broken = FiniteLAlgebra("broken", ("0", "1"), 1, ((0, 1), (0, 1)))
    report = run_law("validate.axioms", Fixture("broken", broken))
    assert report.verdict == "fail"
    assert report.witness and report.witness["violations"]


def test_algebra_doc_round_trip(diamond):
    doc = algebra_doc(diamond)
    back = algebra_from_doc(doc, validated=True)
    assert back.table == diamond.table
    assert back.labels == diamond.labels
    assert back.unit == diamond.unit


def test_congruence_law_skips_partition_sweep_on_big_carriers(full_reports):
    row = next(
        r
        for r in full_reports
        if r.law == "congruence.bijection" and r.corpus == "diamondxdiamond"
    )
    assert row.verdict == "pass"
    assert "partition sweep skipped" in (row.detail or "")


def test_exhaustive_small_corpus_all_pass(small_corpus):
    corpus = [Fixture(a.name, a) for a in small_corpus]
    reports = run_suite(corpus)
    assert all_pass(reports)
    assert len(reports) == len(corpus) * len(LAWS)
