import pytest

from bowtiegraph.bowtie import build_bowtie
from bowtiegraph.certificate import verify_certificate
from bowtiegraph.gen import complete_sts, fano, generate, sunflower
from bowtiegraph.hypergraph import LinearHypergraph, PreconditionError
from bowtiegraph.oracle import InfeasibleError, Verdict, has_configuration, min_span

from corpus import brute_span_min, small_corpus


def test_fano_values():
    g = fano()
    assert [min_span(g, k).min_span for k in range(1, 8)] == [3, 5, 6, 6, 7, 7, 7]


def test_sunflower_petals():
    g = sunflower(5)
    for k in range(1, 6):
        assert min_span(g, k).min_span == 1 + 2 * k


def test_against_brute_force():
    for g in small_corpus():
        for k in range(1, min(g.m, 5) + 1):
            res = min_span(g, k)
            assert res.exhaustive
            assert res.min_span == brute_span_min(g, k)
            assert g.span(res.witness) == res.min_span


def test_monotone_in_k():
    for g in small_corpus()[:15]:
        spans = [min_span(g, k).min_span for k in range(1, g.m + 1)]
        assert spans == sorted(spans)


def test_two_edges_detect_bowties():
    for g in small_corpus():
        if g.m >= 2:
            has_bowtie = build_bowtie(g).num_vertices > 0
            assert (min_span(g, 2).min_span == 2 * g.r - 1) == has_bowtie


def test_single_edge_spans_r():
    g = generate("random-greedy(n=30, r=4, m=20)", seed=1)
    assert min_span(g, 1).min_span == 4


def test_infeasible():
    with pytest.raises(InfeasibleError):
        min_span(fano(), 8)
    with pytest.raises(PreconditionError):
        min_span(fano(), 0)
    with pytest.raises(PreconditionError):
        min_span(fano(), 2, budget=0)


def test_witness_certificate_verifies():
    g = complete_sts(9)
    res = min_span(g, 4)
    cert = res.certificate(g.digest)
    v = verify_certificate(g, cert)
    assert v.ok and v.span == res.min_span


class TestBudget:
    def test_examined_counts_every_subset_without_pruning(self):
        g = LinearHypergraph(n=12, r=3, edges=((0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)))
        res = min_span(g, 2)
        # all pairs are disjoint, so the first subset is already optimal and the rest are pruned
        assert res.min_span == 6 and res.exhaustive
        assert res.examined == 1

    def test_truncation(self):
        g = generate("random-greedy(n=60, r=3, m=90)", seed=3)
        full = min_span(g, 4)
        assert full.exhaustive and full.examined == 4
        res = min_span(g, 4, budget=2)
        assert not res.exhaustive and res.examined == 2
        assert full.min_span <= res.min_span

    def test_budget_equal_to_work_is_exhaustive(self):
        for g in small_corpus()[:20]:
            k = min(3, g.m)
            full = min_span(g, k)
            assert min_span(g, k, budget=full.examined).exhaustive
            if full.examined > 1:
                assert not min_span(g, k, budget=full.examined - 1).exhaustive


class TestDecision:
    def test_yes(self):
        chk = has_configuration(fano(), 6, 3)
        assert chk.verdict is Verdict.YES
        assert fano().span(chk.witness) <= 6

    def test_no(self):
        chk = has_configuration(fano(), 5, 3)
        assert chk.verdict is Verdict.NO and chk.witness == ()

    def test_inconclusive(self):
        g = generate("random-greedy(n=60, r=3, m=90)", seed=3)
        assert has_configuration(g, 5, 4).verdict is Verdict.NO
        chk = has_configuration(g, 5, 4, budget=3)
        assert chk.verdict is Verdict.INCONCLUSIVE

    def test_budget_does_not_hide_a_yes(self):
        chk = has_configuration(fano(), 7, 5, budget=1)
        assert chk.verdict is Verdict.YES
