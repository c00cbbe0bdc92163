"""Binary object/attribute tables and their reduction.

A table is a relation between objects (rows) and attributes (columns).
Rows and columns are stored twice, as integer bitmasks, so that both
support directions are single AND-folds over machine words.

Reduction removes duplicate and expressible rows/columns until only the
join-irreducible attributes and meet-irreducible objects remain; the
Galois lattice of the result is isomorphic to the original one.  A
``ReductionRecord`` keeps enough bookkeeping to translate rules computed
on the reduced table back to the original attribute set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence


class ParseError(ValueError):
    """Raised for malformed input tables."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BinaryContext:
    """Immutable 0/1 table with labelled objects and attributes."""

    __slots__ = ("_objects", "_attributes", "_obj_index", "_attr_index",
                 "_rows", "_cols")

    def __init__(self, objects: Sequence[str], attributes: Sequence[str],
                 rows: Iterable[Iterable[int]]):
        self._objects = tuple(objects)
        self._attributes = tuple(attributes)
        if len(set(self._objects)) != len(self._objects):
            raise ParseError("duplicate object labels")
        if len(set(self._attributes)) != len(self._attributes):
            raise ParseError("duplicate attribute labels")
        self._obj_index = {g: i for i, g in enumerate(self._objects)}
        self._attr_index = {a: j for j, a in enumerate(self._attributes)}
        m = len(self._attributes)
        row_masks = []
        for bits in rows:
            row = 0
            count = 0
            for j, bit in enumerate(bits):
                if bit not in (0, 1):
                    raise ParseError(f"matrix entry must be 0 or 1, got {bit!r}")
                if bit:
                    row |= 1 << j
                count += 1
            if count != m:
                raise ParseError(f"row has {count} entries, expected {m}")
            row_masks.append(row)
        if len(row_masks) != len(self._objects):
            raise ParseError("row count does not match object count")
        self._rows = tuple(row_masks)
        cols = [0] * m
        for i, row in enumerate(self._rows):
            for j in _bits(row):
                cols[j] |= 1 << i
        self._cols = tuple(cols)

    # -- basic accessors ------------------------------------------------

    @property
    def objects(self) -> tuple[str, ...]:
        return self._objects

    @property
    def attributes(self) -> tuple[str, ...]:
        return self._attributes

    @property
    def object_index(self) -> dict[str, int]:
        return self._obj_index

    @property
    def attribute_index(self) -> dict[str, int]:
        return self._attr_index

    @property
    def row_masks(self) -> tuple[int, ...]:
        return self._rows

    @property
    def column_masks(self) -> tuple[int, ...]:
        return self._cols

    def bit(self, i: int, j: int) -> bool:
        return bool(self._rows[i] >> j & 1)

    def has(self, obj: str, attr: str) -> bool:
        return self.bit(self._obj_index[obj], self._attr_index[attr])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryContext):
            return NotImplemented
        return (self._objects == other._objects
                and self._attributes == other._attributes
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self._objects, self._attributes, self._rows))

    def __repr__(self):
        return f"BinaryContext({len(self._objects)}x{len(self._attributes)})"

    # -- mask-level helpers ----------------------------------------------

    def _attr_mask(self, labels: Iterable[str]) -> int:
        mask = 0
        for a in labels:
            try:
                mask |= 1 << self._attr_index[a]
            except KeyError:
                raise KeyError(f"unknown attribute label: {a!r}") from None
        return mask

    def _obj_mask(self, labels: Iterable[str]) -> int:
        mask = 0
        for g in labels:
            try:
                mask |= 1 << self._obj_index[g]
            except KeyError:
                raise KeyError(f"unknown object label: {g!r}") from None
        return mask

    def extent_mask(self, attr_mask: int) -> int:
        """Objects having every attribute in ``attr_mask``."""
        out = (1 << len(self._objects)) - 1
        for j in _bits(attr_mask):
            out &= self._cols[j]
        return out

    def intent_mask(self, obj_mask: int) -> int:
        """Attributes shared by every object in ``obj_mask``."""
        out = (1 << len(self._attributes)) - 1
        for i in _bits(obj_mask):
            out &= self._rows[i]
        return out

    def closure_mask(self, attr_mask: int) -> int:
        return self.intent_mask(self.extent_mask(attr_mask))

    def _attr_labels(self, mask: int) -> set[str]:
        return {self._attributes[j] for j in _bits(mask)}

    def _obj_labels(self, mask: int) -> set[str]:
        return {self._objects[i] for i in _bits(mask)}

    # -- support functions -------------------------------------------------

    def support_of_attributes(self, attrs: Iterable[str]) -> set[str]:
        """Objects that carry every attribute of the given set."""
        return self._obj_labels(self.extent_mask(self._attr_mask(attrs)))

    def support_of_objects(self, objs: Iterable[str]) -> set[str]:
        """Attributes shared by every object of the given set."""
        return self._attr_labels(self.intent_mask(self._obj_mask(objs)))

    def closure(self, attrs: Iterable[str]) -> set[str]:
        """All attributes implied by the given ones with confidence 1."""
        return self._attr_labels(self.closure_mask(self._attr_mask(attrs)))

    # -- restriction ------------------------------------------------------

    def restrict(self, obj_indices: Sequence[int],
                 attr_indices: Sequence[int]) -> "BinaryContext":
        """Sub-table on the given row/column indices (labels preserved)."""
        objects = [self._objects[i] for i in obj_indices]
        attributes = [self._attributes[j] for j in attr_indices]
        rows = [[self._rows[i] >> j & 1 for j in attr_indices]
                for i in obj_indices]
        return BinaryContext(objects, attributes, rows)


# -- parsing --------------------------------------------------------------


def parse_dense_csv(text: str) -> BinaryContext:
    """Dense format: header of attribute labels, then `label,0,1,...` rows."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty table")
    attributes = [tok.strip() for tok in lines[0].split(",")]
    if not attributes or any(not a for a in attributes):
        raise ParseError("empty attribute label in header")
    objects = []
    rows = []
    for ln in lines[1:]:
        toks = [tok.strip() for tok in ln.split(",")]
        if len(toks) != len(attributes) + 1:
            raise ParseError(
                f"row {len(objects) + 1} has {len(toks) - 1} entries, "
                f"expected {len(attributes)}")
        objects.append(toks[0])
        row = []
        for tok in toks[1:]:
            if tok not in ("0", "1"):
                raise ParseError(f"matrix entry must be 0 or 1, got {tok!r}")
            row.append(int(tok))
        rows.append(row)
    if not rows:
        raise ParseError("empty table")
    return BinaryContext(objects, attributes, rows)


def parse_fimi(text: str) -> BinaryContext:
    """FIMI transactions: one line per object, space-separated item numbers."""
    transactions = []
    for lineno, ln in enumerate(text.splitlines(), start=1):
        items = set()
        for tok in ln.split():
            try:
                item = int(tok)
            except ValueError:
                raise ParseError(
                    f"line {lineno}: non-integer token {tok!r}") from None
            if item <= 0:
                raise ParseError(f"line {lineno}: item must be positive, got {item}")
            items.add(item)
        transactions.append(items)
    while transactions and not transactions[-1]:
        transactions.pop()  # trailing blank lines are not transactions
    if not transactions:
        raise ParseError("empty table")
    universe = sorted(set().union(*transactions))
    if not universe:
        raise ParseError("empty table")
    attributes = [str(item) for item in universe]
    pos = {item: j for j, item in enumerate(universe)}
    objects = [str(i) for i in range(1, len(transactions) + 1)]
    rows = []
    for items in transactions:
        row = [0] * len(universe)
        for item in items:
            row[pos[item]] = 1
        rows.append(row)
    return BinaryContext(objects, attributes, rows)


def parse_context(data: str | bytes | IO, input_format: str) -> BinaryContext:
    """Parse ``data`` (text, bytes or a file object) in the named format."""
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if input_format == "dense-csv":
        return parse_dense_csv(data)
    if input_format in ("fimi", "fimi-transactions"):
        return parse_fimi(data)
    raise ParseError(f"unknown input format: {input_format!r}")


# -- reduction --------------------------------------------------------------


@dataclass(frozen=True)
class ReductionRecord:
    """What was removed during reduction and how to restore it.

    ``attribute_substitutions`` maps each removed attribute ``a`` to a set
    ``X_a`` of kept attributes whose column intersection equals ``a``'s
    column (empty for full-ones columns).  Removed attributes whose
    closure is the entire attribute set are listed in
    ``saturated_attributes``; their substitution set is the full witness
    and carries no information beyond "everything".  ``object_merges``
    maps each removed object to its duplicate representative, or to
    ``None`` when the row is an intersection of other rows.
    """

    kept_objects: tuple[str, ...]
    kept_attributes: tuple[str, ...]
    attribute_substitutions: dict[str, frozenset[str]] = field(default_factory=dict)
    object_merges: dict[str, str | None] = field(default_factory=dict)
    saturated_attributes: frozenset[str] = frozenset()


def _expressible(masks: list[int], k: int, universe: int) -> bool:
    """Is masks[k] the intersection of its proper supersets in the list?"""
    me = masks[k]
    inter = universe
    for idx, other in enumerate(masks):
        if idx != k and other & me == me and other != me:
            inter &= other
    return inter == me


def reduce_context(ctx: BinaryContext) -> tuple[BinaryContext, ReductionRecord]:
    """Remove duplicate and expressible rows/columns, to a fixpoint.

    Kept attributes are exactly the join irreducibles of the Galois
    lattice, kept objects the meet irreducibles; the reduced lattice is
    isomorphic to the original.  Degenerate inputs may reduce to an
    empty table.
    """
    n, m = len(ctx.objects), len(ctx.attributes)
    objs = list(range(n))
    attrs = list(range(m))

    def col_of(j: int, omask: int) -> int:
        return ctx.column_masks[j] & omask

    def row_of(i: int, amask: int) -> int:
        return ctx.row_masks[i] & amask

    changed = True
    while changed:
        changed = False
        omask = sum(1 << i for i in objs)
        amask = sum(1 << j for j in attrs)

        seen: dict[int, int] = {}
        dedup_attrs = []
        for j in attrs:
            key = col_of(j, omask)
            if key in seen:
                changed = True
            else:
                seen[key] = j
                dedup_attrs.append(j)
        attrs = dedup_attrs

        seen = {}
        dedup_objs = []
        for i in objs:
            key = row_of(i, amask)
            if key in seen:
                changed = True
            else:
                seen[key] = i
                dedup_objs.append(i)
        objs = dedup_objs

        omask = sum(1 << i for i in objs)
        amask = sum(1 << j for j in attrs)

        cols = [col_of(j, omask) for j in attrs]
        keep = [not _expressible(cols, k, omask) for k in range(len(attrs))]
        if not all(keep):
            changed = True
            attrs = [j for j, k in zip(attrs, keep) if k]
            amask = sum(1 << j for j in attrs)

        rows = [row_of(i, amask) for i in objs]
        keep = [not _expressible(rows, k, amask) for k in range(len(objs))]
        if not all(keep):
            changed = True
            objs = [i for i, k in zip(objs, keep) if k]

    reduced = ctx.restrict(objs, attrs)
    kept_omask = sum(1 << i for i in objs)
    kept_amask = sum(1 << j for j in attrs)
    kept_attr_set = set(attrs)
    kept_obj_set = set(objs)

    subs: dict[str, frozenset[str]] = {}
    saturated = set()
    for j in range(m):
        if j in kept_attr_set:
            continue
        label = ctx.attributes[j]
        col = ctx.column_masks[j] & kept_omask
        if col == kept_omask:
            subs[label] = frozenset()  # full column: member of closure(∅)
            continue
        dup = next((jj for jj in attrs
                    if ctx.column_masks[jj] & kept_omask == col), None)
        if dup is not None:
            subs[label] = frozenset({ctx.attributes[dup]})
            continue
        intent = kept_amask
        for i in _bits(col):
            intent &= ctx.row_masks[i]
        if intent == kept_amask:
            saturated.add(label)
            subs[label] = frozenset(ctx.attributes[jj] for jj in attrs)
            continue
        witness = [jj for jj in attrs
                   if ctx.column_masks[jj] & kept_omask & col == col]
        inter = kept_omask
        for jj in witness:
            inter &= ctx.column_masks[jj]
        assert inter & kept_omask == col, "removed column is not expressible"
        subs[label] = frozenset(ctx.attributes[jj] for jj in witness)

    merges: dict[str, str | None] = {}
    for i in range(n):
        if i in kept_obj_set:
            continue
        label = ctx.objects[i]
        row = ctx.row_masks[i] & kept_amask
        rep = next((ii for ii in objs
                    if ctx.row_masks[ii] & kept_amask == row), None)
        merges[label] = ctx.objects[rep] if rep is not None else None

    record = ReductionRecord(
        kept_objects=reduced.objects,
        kept_attributes=reduced.attributes,
        attribute_substitutions=subs,
        object_merges=merges,
        saturated_attributes=frozenset(saturated),
    )
    return reduced, record
