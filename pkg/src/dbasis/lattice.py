"""Orders, arrow relations and the D-relation of a reduced table.

On a reduced table the attributes are the join irreducibles of the
Galois lattice and the objects its meet irreducibles, so the arrow
relations can be read off the table itself: a cell (i, j) holds a 1
exactly when j's lattice element lies below i's.  Everything here
requires a reduced context; duplicate rows or columns are rejected
outright, full irreducibility is the caller's contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .context import BinaryContext, _bits


@dataclass(frozen=True)
class PartialOrder:
    """Strict-downset representation of a partial order on labels."""

    elements: tuple[str, ...]
    below: dict[str, frozenset[str]]

    def leq(self, x: str, y: str) -> bool:
        return x == y or x in self.below[y]

    def strictly_below(self, x: str) -> frozenset[str]:
        return self.below[x]

    def pairs(self) -> set[tuple[str, str]]:
        """All strict pairs (lower, upper)."""
        return {(lo, up) for up, los in self.below.items() for lo in los}

    def covers(self) -> list[tuple[str, str]]:
        """Covering pairs (lower, upper): nothing sits strictly between."""
        out = []
        for up in self.elements:
            for lo in self.below[up]:
                if not any(lo in self.below[mid] for mid in self.below[up]):
                    out.append((lo, up))
        index = {a: k for k, a in enumerate(self.elements)}
        out.sort(key=lambda p: (index[p[0]], index[p[1]]))
        return out


def _check_clarified(ctx: BinaryContext):
    if len(set(ctx.row_masks)) != len(ctx.row_masks):
        raise ValueError("context has duplicate rows; reduce it first")
    if len(set(ctx.column_masks)) != len(ctx.column_masks):
        raise ValueError("context has duplicate columns; reduce it first")


def attribute_order(ctx: BinaryContext) -> PartialOrder:
    """c <= a iff every object carrying a also carries c."""
    _check_clarified(ctx)
    cols = ctx.column_masks
    below = {}
    for j, a in enumerate(ctx.attributes):
        below[a] = frozenset(
            ctx.attributes[k] for k, ck in enumerate(cols)
            if k != j and cols[j] & ck == cols[j])
    return PartialOrder(ctx.attributes, below)


def object_order(ctx: BinaryContext) -> PartialOrder:
    """i <= i' iff i's row is contained in i''s row (smaller intent = lower)."""
    _check_clarified(ctx)
    rows = ctx.row_masks
    below = {}
    for i, g in enumerate(ctx.objects):
        below[g] = frozenset(
            ctx.objects[k] for k, rk in enumerate(rows)
            if k != i and rk & rows[i] == rk)
    return PartialOrder(ctx.objects, below)


@dataclass(frozen=True)
class ArrowTable:
    """Arrow decorations of the zero cells, as (attribute, object) pairs."""

    attributes: tuple[str, ...]
    objects: tuple[str, ...]
    up: frozenset[tuple[str, str]]
    down: frozenset[tuple[str, str]]

    @property
    def updown(self) -> frozenset[tuple[str, str]]:
        return self.up & self.down


def compute_arrows(ctx: BinaryContext) -> ArrowTable:
    """Up/down arrows of a reduced table.

    (j, i) gets an up arrow when row i is intent-maximal among rows
    lacking j, and a down arrow when no column strictly above j is also
    absent from row i.
    """
    _check_clarified(ctx)
    n, m = len(ctx.objects), len(ctx.attributes)
    rows, cols = ctx.row_masks, ctx.column_masks
    omask = (1 << n) - 1

    sup_rows = [0] * n  # objects whose row strictly contains row i
    for i in range(n):
        for k in range(n):
            if k != i and rows[k] & rows[i] == rows[i] and rows[k] != rows[i]:
                sup_rows[i] |= 1 << k
    sup_cols = [0] * m  # attributes whose column strictly contains column j
    for j in range(m):
        for k in range(m):
            if k != j and cols[k] & cols[j] == cols[j] and cols[k] != cols[j]:
                sup_cols[j] |= 1 << k

    up = set()
    down = set()
    for j in range(m):
        zero = ~cols[j] & omask
        for i in _bits(zero):
            if not sup_rows[i] & zero:
                up.add((ctx.attributes[j], ctx.objects[i]))
            if sup_cols[j] & ~rows[i] == 0:
                down.add((ctx.attributes[j], ctx.objects[i]))
    return ArrowTable(ctx.attributes, ctx.objects, frozenset(up), frozenset(down))


def up_objects(arrows: ArrowTable, b: str) -> set[str]:
    """M(b): the objects carrying an up arrow in b's column."""
    if b not in arrows.attributes:
        raise KeyError(f"unknown attribute label: {b!r}")
    return {i for (a, i) in arrows.up if a == b}


@dataclass(frozen=True)
class DRelation:
    """Per-attribute sectors: b -> set of attributes c with b D c."""

    sectors: dict[str, frozenset[str]]


def compute_d_relation(arrows: ArrowTable) -> DRelation:
    """b D c iff some object has an up arrow for b and a down arrow for c.

    The relation is taken irreflexive: b itself never enters its own
    sector even when b carries both arrows at the same object.
    """
    down_at: dict[str, set[str]] = {i: set() for i in arrows.objects}
    for (c, i) in arrows.down:
        down_at[i].add(c)
    sectors: dict[str, frozenset[str]] = {}
    collected: dict[str, set[str]] = {b: set() for b in arrows.attributes}
    for (b, i) in arrows.up:
        collected[b] |= down_at[i]
    for b in arrows.attributes:
        collected[b].discard(b)
        sectors[b] = frozenset(collected[b])
    return DRelation(sectors)


def render_arrow_table(ctx: BinaryContext, arrows: ArrowTable) -> str:
    """The reduced table with 1/0/up/down/both glyphs, for eyeballing."""
    up, down = arrows.up, arrows.down
    widths = [max(len(a), 1) for a in ctx.attributes]
    w0 = max((len(g) for g in ctx.objects), default=1)
    lines = [" ".join([" " * w0] + [a.rjust(w) for a, w in zip(ctx.attributes, widths)])]
    for i, g in enumerate(ctx.objects):
        cells = []
        for j, a in enumerate(ctx.attributes):
            if ctx.bit(i, j):
                glyph = "1"
            else:
                u = (a, g) in up
                d = (a, g) in down
                glyph = "↕" if u and d else "↑" if u else "↓" if d else "0"
            cells.append(glyph.rjust(widths[j]))
        lines.append(" ".join([g.ljust(w0)] + cells))
    return "\n".join(lines)
