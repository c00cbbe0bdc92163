"""Extraction of exact implication bases from a binary table.

The pipeline: reduce the table, compute arrows and the D-relation, then
for each attribute b dualize the sector hypergraph whose minimal
transversals are exactly the minimal non-binary premises implying b.
A final refinement pass flags the rules that survive down-replacement
(the D-basis proper), and removed attributes are translated back in.

All rule metrics (support, confidence) are counted on the original
table, never the reduced one.
"""

from __future__ import annotations

import itertools
import json
import multiprocessing
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .context import BinaryContext, ReductionRecord, reduce_context
from .dualization import Hypergraph, dualize_streaming, minimize
from .lattice import (ArrowTable, DRelation, PartialOrder, attribute_order,
                      compute_arrows, compute_d_relation, up_objects)


class EmptySectorError(ValueError):
    """The attribute has no nontrivial covers (its sector is empty)."""


BASIS_KINDS = ("d-basis", "minimal-covers")


@dataclass(frozen=True)
class Implication:
    """A rule premise -> conclusion with metrics from the original table.

    Metrics and the D-basis flag do not participate in equality, so two
    measurements of the same rule compare (and hash) equal.
    """

    premise: frozenset[str]
    conclusion: str
    support: int = field(default=0, compare=False)
    premise_support: int = field(default=0, compare=False)
    confidence: Fraction = field(default=Fraction(1), compare=False)
    in_d_basis: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.conclusion in self.premise:
            raise ValueError("conclusion cannot appear in the premise")


def measure(ctx: BinaryContext, premise: Iterable[str], conclusion: str,
            in_d_basis: bool = True) -> Implication:
    """Build a rule with support counted on ``ctx``.

    A premise no row satisfies gets confidence 1 by convention (the
    rule holds vacuously).
    """
    premise = frozenset(premise)
    ext = ctx.extent_mask(ctx._attr_mask(premise))
    psup = ext.bit_count()
    sup = (ext & ctx.column_masks[ctx.attribute_index[conclusion]]).bit_count()
    conf = Fraction(1) if psup == 0 else Fraction(sup, psup)
    return Implication(premise, conclusion, support=sup, premise_support=psup,
                       confidence=conf, in_d_basis=in_d_basis)


@dataclass(frozen=True)
class RuleQuery:
    """What to extract: target attribute, support floor, basis kind."""

    target: str | None = None
    min_support: int = 0
    basis_kind: str = "d-basis"

    def __post_init__(self):
        if self.basis_kind not in BASIS_KINDS:
            raise ValueError(f"basis_kind must be one of {BASIS_KINDS}")
        if self.min_support < 0:
            raise ValueError("min_support must be non-negative")


# -- sector extraction -------------------------------------------------------


def sector_hypergraph(ctx: BinaryContext, arrows: ArrowTable, d: DRelation,
                      b: str) -> tuple[Hypergraph, tuple[str, ...]]:
    """The dualization instance for attribute b.

    Vertices are b's sector (labels returned alongside, in column
    order); for every object m with an up arrow at b the edge is the
    part of the sector NOT held by m.  A transversal therefore meets
    every such object's complement, which is exactly the condition for
    the premise to imply b.
    """
    if b not in d.sectors:
        raise KeyError(f"unknown attribute label: {b!r}")
    bd = d.sectors[b]
    if not bd:
        raise EmptySectorError(f"attribute {b!r} has no nontrivial covers")
    labels = tuple(sorted(bd, key=ctx.attribute_index.__getitem__))
    vid = {a: k for k, a in enumerate(labels)}
    edges = []
    for m_obj in sorted(up_objects(arrows, b), key=ctx.object_index.__getitem__):
        uncovered = frozenset(vid[c] for c in bd if not ctx.has(m_obj, c))
        assert uncovered, "an up-arrow object holds the whole sector"
        edges.append(uncovered)
    assert edges, "nonempty sector without up arrows"
    return minimize(Hypergraph(len(labels), tuple(edges))), labels


def binary_part(ctx: BinaryContext, order: PartialOrder, *,
                full: bool = False,
                metrics_ctx: BinaryContext | None = None) -> list[Implication]:
    """Binary rules of the attribute order: upper -> lower.

    By default only covering pairs are emitted; ``full`` adds the
    transitive pairs as well.
    """
    metrics = metrics_ctx or ctx
    pairs = sorted(order.pairs(),
                   key=lambda p: (ctx.attribute_index[p[0]],
                                  ctx.attribute_index[p[1]])) if full else order.covers()
    return [measure(metrics, frozenset({up}), lo) for lo, up in pairs]


def extract_sector(ctx: BinaryContext, arrows: ArrowTable, d: DRelation,
                   b: str, query: RuleQuery | None = None, *,
                   metrics_ctx: BinaryContext | None = None) -> list[Implication]:
    """Minimal non-binary covers of b, streamed out of the dualizer.

    Singleton transversals are order pairs and are left to the binary
    part.  The ``min_support`` floor of the query is applied against
    the metrics table (the original one in the pipeline).
    """
    metrics = metrics_ctx or ctx
    min_support = query.min_support if query else 0
    bj = ctx.attribute_index[b]
    if ctx.column_masks[bj] == (1 << len(ctx.objects)) - 1:
        # full column: the empty premise already implies b
        rule = measure(metrics, frozenset(), b)
        return [rule] if rule.support >= min_support else []
    try:
        h, labels = sector_hypergraph(ctx, arrows, d, b)
    except EmptySectorError:
        return []
    rules: list[Implication] = []

    def sink(transversal: frozenset[int]):
        if len(transversal) < 2:
            return
        premise = frozenset(labels[v] for v in transversal)
        rule = measure(metrics, premise, b)
        if rule.support >= min_support:
            rules.append(rule)

    dualize_streaming(h, sink)
    return rules


# -- refinement ---------------------------------------------------------------


def refine_to_d_basis(ctx: BinaryContext, order: PartialOrder,
                      rules: Iterable[Implication]) -> list[Implication]:
    """Flag each rule's D-basis membership; nothing is deleted.

    A non-binary rule X -> b is out when replacing some x in X by all
    attributes strictly below x still yields b.  Binary and
    empty-premise rules always stay in.
    """
    aidx = ctx.attribute_index
    below_mask = {a: sum(1 << aidx[c] for c in order.strictly_below(a))
                  for a in order.elements}
    out = []
    for r in rules:
        if len(r.premise) < 2:
            out.append(r if r.in_d_basis else replace(r, in_d_basis=True))
            continue
        pmask = sum(1 << aidx[a] for a in r.premise)
        bbit = 1 << aidx[r.conclusion]
        excluded = False
        for x in r.premise:
            repl = (pmask & ~(1 << aidx[x])) | below_mask[x]
            if ctx.closure_mask(repl) & bbit:
                excluded = True
                break
        out.append(replace(r, in_d_basis=not excluded))
    return out


# -- re-expansion -------------------------------------------------------------


def expand_to_original(record: ReductionRecord, rules: Iterable[Implication],
                       *, metrics_ctx: BinaryContext | None = None
                       ) -> list[Implication]:
    """Translate a basis over the reduced attributes back to all of them.

    Every removed attribute a with substitution X_a contributes
    X_a -> a plus the unit rules a -> x for x in X_a (so ∅ -> a for a
    full-ones column).  A removed attribute whose closure was the whole
    attribute set instead contributes a -> x for every other original
    attribute; note such an attribute is reachable as a conclusion only
    through those of its rules, i.e. not at all, matching the
    reduction's bookkeeping.
    """
    out = list(rules)
    subs = record.attribute_substitutions
    if metrics_ctx is not None:
        universe = list(metrics_ctx.attributes)
        aidx = metrics_ctx.attribute_index

        def mk(premise, conclusion):
            return measure(metrics_ctx, premise, conclusion)
    else:
        universe = list(record.kept_attributes) + list(subs)
        aidx = {a: k for k, a in enumerate(universe)}

        def mk(premise, conclusion):
            return Implication(frozenset(premise), conclusion)

    for a in sorted(subs, key=aidx.__getitem__):
        if a in record.saturated_attributes:
            for x in universe:
                if x != a:
                    out.append(mk({a}, x))
        else:
            x_a = subs[a]
            out.append(mk(x_a, a))
            for x in sorted(x_a, key=aidx.__getitem__):
                out.append(mk({a}, x))
    return out


# -- closure evaluation --------------------------------------------------------


def ordered_closure(rules: Iterable[Implication], attrs: Iterable[str]) -> set[str]:
    """One left-to-right pass; each rule fires at most once.

    Reproduces the table closure when the rules are a D-basis arranged
    by ``evaluation_order`` (binary before non-binary, higher premises
    first within the binary block).
    """
    out = set(attrs)
    for r in rules:
        if r.conclusion not in out and r.premise <= out:
            out.add(r.conclusion)
    return out


def evaluation_order(rules: Iterable[Implication],
                     order: PartialOrder) -> list[Implication]:
    """Arrange rules so a single ordered pass computes closures.

    Blocks: empty premises, then rules whose premise mentions a removed
    attribute, then binary rules over kept attributes with higher
    premises first, then non-binary covers, and last the rules that
    conclude removed attributes.
    """
    known = set(order.elements)
    idx = {a: k for k, a in enumerate(order.elements)}

    def key(r: Implication):
        if not r.premise:
            block, depth = 0, 0
        elif not r.premise <= known:
            block, depth = 1, 0
        elif r.conclusion in known and len(r.premise) == 1:
            (x,) = r.premise
            block, depth = 2, -len(order.strictly_below(x))
        elif r.conclusion in known:
            block, depth = 3, 0
        else:
            block, depth = 4, 0
        big = len(idx)
        prem = tuple(sorted((idx.get(p, big), p) for p in r.premise))
        return (block, depth, prem, idx.get(r.conclusion, big), r.conclusion)

    return sorted(rules, key=key)


# -- the assembled pipeline -----------------------------------------------------


def canonical_sort(rules: Iterable[Implication],
                   ctx: BinaryContext) -> list[Implication]:
    """Sort by conclusion column, premise size, then premise columns."""
    aidx = ctx.attribute_index
    return sorted(rules, key=lambda r: (aidx[r.conclusion], len(r.premise),
                                        tuple(sorted(aidx[p] for p in r.premise))))


@dataclass
class BasisResult:
    """Everything the pipeline produced, plus the intermediate objects."""

    rules: list[Implication]
    candidates: list[Implication]  # before the basis-kind filter
    original: BinaryContext
    reduced: BinaryContext
    record: ReductionRecord
    order: PartialOrder
    arrows: ArrowTable
    d_relation: DRelation
    sector_counts: dict[str, int]

    @property
    def minimal_covers_count(self) -> int:
        return len(self.candidates)

    @property
    def refined_away_count(self) -> int:
        return sum(not r.in_d_basis for r in self.candidates)

    @property
    def d_basis_count(self) -> int:
        return self.minimal_covers_count - self.refined_away_count

    def summary_lines(self) -> list[str]:
        lines = [
            f"table: {len(self.original.objects)} objects x "
            f"{len(self.original.attributes)} attributes",
            f"reduced: {len(self.reduced.objects)} objects x "
            f"{len(self.reduced.attributes)} attributes",
        ]
        for b, k in self.sector_counts.items():
            lines.append(f"sector {b}: {k} covers")
        lines.append(f"minimal covers: {self.minimal_covers_count}"
                     f" (d-basis {self.d_basis_count},"
                     f" refined away {self.refined_away_count})")
        lines.append(f"rules emitted: {len(self.rules)}")
        return lines


_PAYLOAD = None


def _init_worker(payload):
    global _PAYLOAD
    _PAYLOAD = payload


def _sector_job(b: str):
    reduced, arrows, d, query, original = _PAYLOAD
    return b, extract_sector(reduced, arrows, d, b, query, metrics_ctx=original)


def compute_basis(ctx: BinaryContext, query: RuleQuery | None = None, *,
                  worker_count: int = 1,
                  full_binary: bool = False) -> BasisResult:
    """Run the whole pipeline on an (arbitrary) table.

    ``worker_count`` parallelizes sector dualization; results are merged
    in a fixed order, so the output is identical for any count.  0
    picks the machine's CPU count.  A target in the query restricts
    dualization to that attribute's sector.
    """
    query = query or RuleQuery()
    if query.min_support > len(ctx.objects):
        raise ValueError("min_support exceeds the number of objects")
    if query.target is not None and query.target not in ctx.attribute_index:
        raise KeyError(f"unknown attribute label: {query.target!r}")

    reduced, record = reduce_context(ctx)
    order = attribute_order(reduced)
    arrows = compute_arrows(reduced)
    d = compute_d_relation(arrows)

    rules = binary_part(reduced, order, full=full_binary, metrics_ctx=ctx)

    if query.target is None:
        sector_attrs = list(reduced.attributes)
    else:
        sector_attrs = [query.target] if query.target in reduced.attribute_index else []

    if worker_count == 0:
        worker_count = os.cpu_count() or 1
    sector_counts: dict[str, int] = {}
    if worker_count > 1 and len(sector_attrs) > 1:
        payload = (reduced, arrows, d, query, ctx)
        with multiprocessing.Pool(processes=min(worker_count, len(sector_attrs)),
                                  initializer=_init_worker,
                                  initargs=(payload,)) as pool:
            produced = dict(pool.map(_sector_job, sector_attrs))
    else:
        produced = {b: extract_sector(reduced, arrows, d, b, query,
                                      metrics_ctx=ctx)
                    for b in sector_attrs}
    for b in sector_attrs:
        sector_counts[b] = len(produced[b])
        rules.extend(produced[b])

    rules = refine_to_d_basis(reduced, order, rules)
    rules = expand_to_original(record, rules, metrics_ctx=ctx)
    rules = [r for r in rules if r.support >= query.min_support]
    if query.target is not None:
        rules = [r for r in rules if r.conclusion == query.target]
    candidates = canonical_sort(rules, ctx)
    if query.basis_kind == "d-basis":
        kept = [r for r in candidates if r.in_d_basis]
    else:
        kept = list(candidates)
    return BasisResult(rules=kept, candidates=candidates, original=ctx,
                       reduced=reduced, record=record, order=order,
                       arrows=arrows, d_relation=d, sector_counts=sector_counts)


def leave_k_out_rules(ctx: BinaryContext, k: int,
                      query: RuleQuery | None = None) -> list[Implication]:
    """High-confidence rules via the row-subset scheme.

    Runs the exact pipeline on every table missing k rows, re-measures
    every rule on the full table, keeps premise-minimal rules per
    conclusion, and filters to confidence >= (n-k)/n.  k = 0 is exactly
    the plain pipeline.
    """
    query = query or RuleQuery()
    if not 0 <= k <= 3:
        raise ValueError("k must be between 0 and 3")
    n = len(ctx.objects)
    if n < k + 1:
        raise ValueError("the table must keep at least one row")
    if k == 0:
        return compute_basis(ctx, query).rules
    sub_query = RuleQuery(target=query.target, min_support=0,
                          basis_kind=query.basis_kind)
    all_attrs = list(range(len(ctx.attributes)))
    merged: dict[tuple[frozenset[str], str], bool] = {}
    for dropped in itertools.combinations(range(n), k):
        keep = [i for i in range(n) if i not in dropped]
        sub = ctx.restrict(keep, all_attrs)
        for r in compute_basis(sub, sub_query).rules:
            key = (r.premise, r.conclusion)
            merged[key] = merged.get(key, False) or r.in_d_basis
    remeasured = [measure(ctx, premise, conclusion, in_d_basis=flag)
                  for (premise, conclusion), flag in merged.items()]
    kept: list[Implication] = []
    for r in sorted(remeasured,
                    key=lambda r: (len(r.premise),
                                   tuple(sorted(r.premise)), r.conclusion)):
        if not any(other.conclusion == r.conclusion and other.premise < r.premise
                   for other in kept):
            kept.append(r)
    threshold = Fraction(n - k, n)
    kept = [r for r in kept
            if r.confidence >= threshold and r.support >= query.min_support]
    return canonical_sort(kept, ctx)


# -- rendering -----------------------------------------------------------------


def format_rule_text(rule: Implication, attr_index: Mapping[str, int]) -> str:
    premise = " ".join(sorted(rule.premise, key=attr_index.__getitem__))
    head = f"{premise} -> " if premise else "-> "
    flag = "true" if rule.in_d_basis else "false"
    return (f"{head}{rule.conclusion} [support={rule.support}, "
            f"confidence={rule.confidence}, d_basis={flag}]")


def format_rule_jsonl(rule: Implication, attr_index: Mapping[str, int]) -> str:
    return json.dumps({
        "premise": sorted(rule.premise, key=attr_index.__getitem__),
        "conclusion": rule.conclusion,
        "support": rule.support,
        "premise_support": rule.premise_support,
        "confidence_num": rule.confidence.numerator,
        "confidence_den": rule.confidence.denominator,
        "in_d_basis": rule.in_d_basis,
    }, ensure_ascii=False)
