import random
from fractions import Fraction

import pytest

from dbasis import (BinaryContext, Hypergraph, Implication, attribute_order,
                    reduce_context)
from dbasis.oracle import (OracleSizeError, berge_dual, brute_dual,
                           brute_min_covers, closure_from_rules,
                           enumerate_concepts, replacement_excluded,
                           rule_metrics)

from helpers import golden_context, random_context, reduced_golden_context


def test_enumerate_concepts_golden():
    concepts = enumerate_concepts(reduced_golden_context())
    assert len(concepts) == 8
    intents = {c.intent for c in concepts}
    assert frozenset() in intents
    assert frozenset({"b", "a1", "a2", "c1", "c2"}) in intents
    assert frozenset({"c1", "c2"}) in intents  # object 4's intent
    ctx = reduced_golden_context()
    for c in concepts:
        assert ctx.support_of_attributes(c.intent) == set(c.extent)
        assert ctx.closure(c.intent) == set(c.intent)


def test_concept_count_is_reduction_invariant():
    assert len(enumerate_concepts(golden_context())) == \
        len(enumerate_concepts(reduced_golden_context()))


def test_enumerate_concepts_size_guard():
    wide = BinaryContext(["o"], [f"a{j}" for j in range(21)], [[1] * 21])
    with pytest.raises(OracleSizeError):
        enumerate_concepts(wide)


def test_brute_dual_small_cases():
    h = Hypergraph.from_edges([[0, 1], [1, 2]])
    assert set(brute_dual(h).edges) == {frozenset({1}), frozenset({0, 2})}
    assert brute_dual(Hypergraph(2, ())).edges == (frozenset(),)


def test_brute_dual_size_guard():
    with pytest.raises(OracleSizeError):
        brute_dual(Hypergraph(21, (frozenset({0}),)))


def test_berge_agrees_with_brute():
    rng = random.Random(41)
    for _ in range(60):
        nv = rng.randint(1, 8)
        edges = [frozenset(rng.sample(range(nv), rng.randint(1, nv)))
                 for _ in range(rng.randint(0, 6))]
        h = Hypergraph.from_edges(edges, vertex_count=nv)
        assert set(berge_dual(h).edges) == set(brute_dual(h).edges)


def test_brute_min_covers_golden():
    ctx = reduced_golden_context()
    assert set(brute_min_covers(ctx, "b")) == {
        frozenset({"a1", "a2"}), frozenset({"a1", "c2"}), frozenset({"a2", "c1"})}
    assert set(brute_min_covers(ctx, "a1")) == {
        frozenset({"a2", "c1"}), frozenset({"b", "a2"})}
    assert set(brute_min_covers(ctx, "c1")) == set()
    with_binary = set(brute_min_covers(ctx, "c1", include_binary=True))
    assert with_binary == {frozenset({"b"}), frozenset({"a1"})}


def test_brute_min_covers_empty_premise_case():
    ctx = BinaryContext(["x", "y"], ["p", "q"], [[1, 1], [1, 0]])
    assert brute_min_covers(ctx, "p", include_binary=True) == [frozenset()]


def test_canonical_direct_candidate_count_golden():
    ctx = reduced_golden_context()
    total = sum(len(brute_min_covers(ctx, b, include_binary=True))
                for b in ctx.attributes)
    assert total == 11


def test_closure_from_rules():
    rules = [Implication(frozenset({"a"}), "b"),
             Implication(frozenset({"b", "c"}), "d")]
    assert closure_from_rules(rules, {"a"}) == {"a", "b"}
    assert closure_from_rules(rules, {"a", "c"}) == {"a", "b", "c", "d"}
    assert closure_from_rules(rules, set()) == set()


def test_replacement_excluded_golden():
    ctx = reduced_golden_context()
    order = attribute_order(ctx)
    assert replacement_excluded(ctx, order, frozenset({"a1", "a2"}), "b")
    assert not replacement_excluded(ctx, order, frozenset({"a1", "c2"}), "b")
    assert not replacement_excluded(ctx, order, frozenset({"a2", "c1"}), "a1")


def test_rule_metrics_golden():
    ctx = golden_context()
    sup, psup, conf = rule_metrics(ctx, {"a1", "c2"}, "b")
    assert (sup, psup, conf) == (1, 1, Fraction(1))
    sup, psup, conf = rule_metrics(ctx, {"c1"}, "u")
    assert (sup, psup, conf) == (5, 5, Fraction(1))
    sup, psup, conf = rule_metrics(ctx, {"b"}, "a1")
    assert (sup, psup, conf) == (1, 2, Fraction(1, 2))


def test_rule_metrics_vacuous_premise():
    ctx = BinaryContext(["x"], ["p", "q"], [[0, 1]])
    sup, psup, conf = rule_metrics(ctx, {"p"}, "q")
    assert (sup, psup, conf) == (0, 0, Fraction(1))
