import random

import pytest

from dbasis import BinaryContext, ParseError, parse_context, parse_dense_csv, parse_fimi, reduce_context
from dbasis.oracle import enumerate_concepts

from helpers import GOLDEN_CSV, golden_context, random_context


def test_parse_dense_csv_golden():
    ctx = parse_dense_csv(GOLDEN_CSV)
    assert ctx.objects == ("1", "2", "3", "4", "5", "6")
    assert ctx.attributes == ("b", "a1", "a2", "c1", "c2", "u", "v")
    assert ctx.has("2", "b")
    assert not ctx.has("1", "b")
    assert ctx == golden_context()


def test_parse_dense_csv_tolerates_whitespace_and_blank_lines():
    ctx = parse_dense_csv(" x , y \n\n o1 , 1 , 0 \n")
    assert ctx.attributes == ("x", "y")
    assert ctx.has("o1", "x") and not ctx.has("o1", "y")


def test_parse_dense_csv_single_cell():
    ctx = parse_dense_csv("a\no,1\n")
    assert len(ctx.objects) == 1 and len(ctx.attributes) == 1
    assert ctx.bit(0, 0)


@pytest.mark.parametrize("text", [
    "",
    "a,b\n",
    "a,b\no1,1\n",          # short row
    "a,b\no1,1,0,1\n",      # long row
    "a,b\no1,1,2\n",        # bad entry
    "a,,b\no1,1,0,1\n",     # empty header label
])
def test_parse_dense_csv_rejects(text):
    with pytest.raises(ParseError):
        parse_dense_csv(text)


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        BinaryContext(["o", "o"], ["a"], [[1], [0]])
    with pytest.raises(ValueError):
        BinaryContext(["o"], ["a", "a"], [[1, 0]])


def test_parse_fimi_basic():
    ctx = parse_fimi("1 3\n2\n")
    assert ctx.attributes == ("1", "2", "3")
    assert ctx.objects == ("1", "2")
    assert ctx.has("1", "1") and ctx.has("1", "3") and ctx.has("2", "2")
    assert not ctx.has("1", "2")


def test_parse_fimi_trailing_blanks_and_interior_empty():
    ctx = parse_fimi("5\n\n7\n\n\n")
    # the interior blank line is a transaction with no items
    assert ctx.objects == ("1", "2", "3")
    assert ctx.attributes == ("5", "7")
    assert not any(ctx.has("2", a) for a in ctx.attributes)


@pytest.mark.parametrize("text", ["x y\n", "1 -2\n", "0\n", "", "\n\n"])
def test_parse_fimi_rejects(text):
    with pytest.raises(ParseError):
        parse_fimi(text)


def test_parse_context_dispatch():
    assert parse_context(GOLDEN_CSV, "dense-csv") == golden_context()
    assert parse_context(GOLDEN_CSV.encode(), "dense-csv") == golden_context()
    assert parse_context("1 2\n", "fimi") == parse_context("1 2\n", "fimi-transactions")
    with pytest.raises(ParseError):
        parse_context("x", "tsv")


def test_supports_golden():
    ctx = golden_context()
    assert ctx.support_of_attributes({"c1"}) == {"1", "2", "4", "5", "6"}
    assert ctx.support_of_attributes({"c1"}) == ctx.support_of_attributes({"u"})
    assert ctx.support_of_attributes(set()) == set(ctx.objects)
    assert ctx.support_of_attributes({"v"}) == {"6"}
    assert ctx.support_of_objects({"6"}) == set(ctx.attributes)
    assert ctx.closure({"v"}) == set(ctx.attributes)
    assert ctx.closure({"u"}) == {"c1", "u"}


def test_unknown_labels_raise():
    ctx = golden_context()
    with pytest.raises(KeyError):
        ctx.support_of_attributes({"zz"})
    with pytest.raises(KeyError):
        ctx.support_of_objects({"99"})


def test_closure_is_a_closure_operator():
    rng = random.Random(7)
    for _ in range(30):
        ctx = random_context(rng, rng.randint(1, 7), rng.randint(1, 7))
        attrs = list(ctx.attributes)
        x = {a for a in attrs if rng.random() < 0.4}
        y = x | {a for a in attrs if rng.random() < 0.3}
        cx, cy = ctx.closure(x), ctx.closure(y)
        assert x <= cx
        assert cx <= cy
        assert ctx.closure(cx) == cx


def test_restrict():
    ctx = golden_context()
    sub = ctx.restrict([0, 2], [1, 3])
    assert sub.objects == ("1", "3")
    assert sub.attributes == ("a1", "c1")
    assert sub.has("1", "a1") and sub.has("1", "c1")
    assert not sub.has("3", "a1")


# -- reduction ---------------------------------------------------------------


def test_reduce_golden():
    reduced, record = reduce_context(golden_context())
    assert record.kept_objects == ("1", "2", "3", "4")
    assert record.kept_attributes == ("b", "a1", "a2", "c1", "c2")
    assert reduced.objects == ("1", "2", "3", "4")
    assert reduced.attributes == ("b", "a1", "a2", "c1", "c2")
    assert record.attribute_substitutions == {"u": frozenset({"c1"}),
                                              "v": frozenset({"b", "a1", "a2", "c1", "c2"})}
    assert record.saturated_attributes == frozenset({"v"})
    assert record.object_merges == {"5": "4", "6": None}
    # bits survive the projection
    for obj in reduced.objects:
        for attr in reduced.attributes:
            assert reduced.has(obj, attr) == golden_context().has(obj, attr)


def test_reduce_is_idempotent_on_golden():
    reduced, _ = reduce_context(golden_context())
    again, record = reduce_context(reduced)
    assert again == reduced
    assert not record.attribute_substitutions
    assert not record.object_merges


def test_reduce_full_column_yields_empty_substitution():
    ctx = BinaryContext(["x", "y"], ["p", "q"], [[1, 1], [1, 0]])
    reduced, record = reduce_context(ctx)
    assert "p" not in reduced.attributes
    assert record.attribute_substitutions["p"] == frozenset()


def test_reduce_duplicate_column_points_at_representative():
    ctx = BinaryContext(["x", "y", "z"], ["p", "q", "r"],
                        [[1, 1, 0], [0, 0, 1], [1, 1, 1]])
    reduced, record = reduce_context(ctx)
    assert record.attribute_substitutions.get("q") == frozenset({"p"})
    assert "p" in reduced.attributes


def test_reduce_preserves_concept_count():
    rng = random.Random(11)
    for _ in range(40):
        ctx = random_context(rng, rng.randint(1, 7), rng.randint(1, 7),
                             rng.choice([0.3, 0.5, 0.7]))
        reduced, record = reduce_context(ctx)
        assert len(enumerate_concepts(ctx)) == len(enumerate_concepts(reduced))
        # substitutions really reproduce the removed column's support
        for attr, sub in record.attribute_substitutions.items():
            if attr in record.saturated_attributes:
                continue
            assert (ctx.support_of_attributes(sub)
                    == ctx.support_of_attributes({attr}))


def test_reduce_random_is_fully_reduced():
    rng = random.Random(13)
    for _ in range(40):
        ctx = random_context(rng, rng.randint(1, 6), rng.randint(1, 6))
        reduced, _ = reduce_context(ctx)
        again, record = reduce_context(reduced)
        assert again == reduced
        assert not record.attribute_substitutions and not record.object_merges
