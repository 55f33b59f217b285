"""Finite models: per-sort carriers, symbol interpretation tables, and the
pointwise-lifted (extended) application.

Carrier subsets are bit vectors over the carrier's declaration order, which
keeps the set algebra cheap and every iteration order deterministic.
Interpretation tables map argument tuples to result subsets; tuples absent
from a table denote the empty set, so partial tables (e.g. a successor
capped at the largest element) stay small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadTupleError,
    BadValueSortError,
    DuplicateLabelError,
    EmptyCarrierError,
    SortMismatchError,
    UnknownSortError,
)
from .signature import Signature, Sort, SymbolDecl


@dataclass(frozen=True)
class CarrierElem:
    sort: Sort
    ordinal: int
    label: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class CarrierSet:
    """Subset of one sort's carrier as a fixed-width bit vector."""

    sort: Sort
    width: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bits 0x{self.bits:x} exceed width {self.width}")

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_full(self) -> bool:
        return self.bits == (1 << self.width) - 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def ordinals(self) -> Iterator[int]:
        for i in range(self.width):
            if self.bits >> i & 1:
                yield i

    def contains(self, elem: CarrierElem) -> bool:
        self._check_elem(elem)
        return bool(self.bits >> elem.ordinal & 1)

    def union(self, other: CarrierSet) -> CarrierSet:
        self._check_compatible(other)
        return CarrierSet(self.sort, self.width, self.bits | other.bits)

    def intersection(self, other: CarrierSet) -> CarrierSet:
        self._check_compatible(other)
        return CarrierSet(self.sort, self.width, self.bits & other.bits)

    def complement(self) -> CarrierSet:
        return CarrierSet(self.sort, self.width, ((1 << self.width) - 1) ^ self.bits)

    def issubset(self, other: CarrierSet) -> bool:
        self._check_compatible(other)
        return self.bits & ~other.bits == 0

    __or__ = union
    __and__ = intersection
    __invert__ = complement
    __le__ = issubset

    def _check_compatible(self, other: CarrierSet) -> None:
        if self.sort != other.sort or self.width != other.width:
            raise SortMismatchError(
                f"cannot combine carrier sets of sort {self.sort} (width "
                f"{self.width}) and {other.sort} (width {other.width})"
            )

    def _check_elem(self, elem: CarrierElem) -> None:
        if elem.sort != self.sort or elem.ordinal >= self.width:
            raise SortMismatchError(
                f"element {elem} does not belong to the {self.sort} carrier"
            )


@dataclass(frozen=True)
class SymbolInterp:
    """Interpretation table of one symbol; unlisted tuples mean the empty set."""

    symbol: SymbolDecl
    table: Mapping[tuple[CarrierElem, ...], CarrierSet]


class FiniteModel:
    """Nonempty finite carrier per sort plus one interpretation per symbol.

    Immutable after construction; build through :func:`build_model`.
    """

    def __init__(
        self,
        signature: Signature,
        carriers: Mapping[Sort, tuple[CarrierElem, ...]],
        interps: Mapping[SymbolDecl, SymbolInterp],
    ):
        self.signature = signature
        self._carriers = dict(carriers)
        self._interps = dict(interps)
        self._by_label = {
            sort: {e.label: e for e in elems} for sort, elems in self._carriers.items()
        }

    def carrier(self, sort: Sort) -> tuple[CarrierElem, ...]:
        try:
            return self._carriers[sort]
        except KeyError:
            raise UnknownSortError(f"model has no carrier for sort {sort}") from None

    def carrier_size(self, sort: Sort) -> int:
        return len(self.carrier(sort))

    def elem(self, sort: Sort, label: str) -> CarrierElem:
        table = self._by_label.get(sort)
        if table is None:
            raise UnknownSortError(f"model has no carrier for sort {sort}")
        try:
            return table[label]
        except KeyError:
            raise BadTupleError(
                f"{label!r} is not an element of the {sort} carrier"
            ) from None

    def interp(self, symbol: SymbolDecl) -> SymbolInterp:
        return self._interps[symbol]

    # --- carrier subsets -------------------------------------------------

    def empty_set(self, sort: Sort) -> CarrierSet:
        return CarrierSet(sort, self.carrier_size(sort), 0)

    def full_set(self, sort: Sort) -> CarrierSet:
        n = self.carrier_size(sort)
        return CarrierSet(sort, n, (1 << n) - 1)

    def singleton(self, elem: CarrierElem) -> CarrierSet:
        return CarrierSet(elem.sort, self.carrier_size(elem.sort), 1 << elem.ordinal)

    def set_of(self, sort: Sort, elems: Iterable[CarrierElem]) -> CarrierSet:
        bits = 0
        n = self.carrier_size(sort)
        for e in elems:
            if e.sort != sort or e.ordinal >= n:
                raise SortMismatchError(
                    f"element {e} does not belong to the {sort} carrier"
                )
            bits |= 1 << e.ordinal
        return CarrierSet(sort, n, bits)

    def elems(self, cset: CarrierSet) -> tuple[CarrierElem, ...]:
        carrier = self.carrier(cset.sort)
        return tuple(carrier[i] for i in cset.ordinals())

    def format_set(self, cset: CarrierSet) -> str:
        labels = [e.label for e in self.elems(cset)]
        if not labels:
            return "{ }"
        return "{ " + ", ".join(labels) + " }"

    # --- symbol application ----------------------------------------------

    def interpret_symbol(
        self, symbol: SymbolDecl, args: Sequence[CarrierElem]
    ) -> CarrierSet:
        """Look up one tuple in the symbol's table (empty set if unlisted)."""
        interp = self._require_interp(symbol)
        args = tuple(args)
        self._check_tuple(symbol, args)
        stored = interp.table.get(args)
        return stored if stored is not None else self.empty_set(symbol.result)

    def extended_app(
        self, symbol: SymbolDecl, arg_sets: Sequence[CarrierSet]
    ) -> CarrierSet:
        """Pointwise lift: union of the table over every combination of
        elements drawn from the argument sets."""
        interp = self._require_interp(symbol)
        arg_sets = tuple(arg_sets)
        if len(arg_sets) != len(symbol.params):
            raise BadTupleError(
                f"{symbol.name} expects {len(symbol.params)} argument sets, "
                f"got {len(arg_sets)}"
            )
        for cset, param in zip(arg_sets, symbol.params):
            if cset.sort != param or cset.width != self.carrier_size(param):
                raise BadTupleError(
                    f"argument set of sort {cset.sort} does not match "
                    f"parameter sort {param} of {symbol.name}"
                )
        out = self.empty_set(symbol.result)
        for combo in itertools.product(*(self.elems(s) for s in arg_sets)):
            stored = interp.table.get(combo)
            if stored is not None:
                out = out | stored
        return out

    def definedness(self, result_sort: Sort, arg_set: CarrierSet) -> CarrierSet:
        """Two-valued lift: empty if the argument set is empty, otherwise
        the full carrier of ``result_sort``."""
        if arg_set.is_empty:
            return self.empty_set(result_sort)
        return self.full_set(result_sort)

    def _require_interp(self, symbol: SymbolDecl) -> SymbolInterp:
        self.signature._require_symbol(symbol)
        interp = self._interps.get(symbol)
        return interp if interp is not None else SymbolInterp(symbol, {})

    def _check_tuple(
        self, symbol: SymbolDecl, args: tuple[CarrierElem, ...]
    ) -> None:
        if len(args) != len(symbol.params):
            raise BadTupleError(
                f"{symbol.name} expects {len(symbol.params)} arguments, "
                f"got {len(args)}"
            )
        for k, (elem, param) in enumerate(zip(args, symbol.params)):
            if elem.sort != param:
                raise BadTupleError(
                    f"argument {k} of {symbol.name} must be a {param} "
                    f"element, got {elem}"
                )
            if self._by_label.get(param, {}).get(elem.label) != elem:
                raise BadTupleError(
                    f"argument {k} of {symbol.name}: {elem} is not in the model"
                )


def singleton_fastpath(
    model: FiniteModel, arg_sets: Sequence[CarrierSet]
) -> tuple[CarrierElem, ...] | None:
    """Extract the element tuple when every argument set is a singleton.

    On success the extended application agrees with the plain table lookup
    on the extracted tuple, so callers may skip the product.  The 0-ary
    case extracts the empty tuple.
    """
    out = []
    for cset in arg_sets:
        if len(cset) != 1:
            return None
        out.append(model.carrier(cset.sort)[next(cset.ordinals())])
    return tuple(out)


def build_model(
    sig: Signature,
    carriers: Mapping[str, Sequence[str]],
    interps: Mapping[str, Mapping[tuple[str, ...], Iterable[str]]],
) -> FiniteModel:
    """Validate and assemble a model from label-level data.

    ``carriers`` maps sort names to element labels; ``interps`` maps symbol
    names to {argument-label tuple: result-label collection}.  Symbols
    without an entry get the everywhere-empty interpretation.
    """
    carrier_map: dict[Sort, tuple[CarrierElem, ...]] = {}
    for name, labels in carriers.items():
        sort = sig.sort(name)
        seen: set[str] = set()
        elems = []
        for i, label in enumerate(labels):
            if label in seen:
                raise DuplicateLabelError(
                    f"carrier of {sort} lists element {label!r} twice"
                )
            seen.add(label)
            elems.append(CarrierElem(sort, i, label))
        carrier_map[sort] = tuple(elems)
    for sort in sig.sorts:
        if not carrier_map.get(sort):
            raise EmptyCarrierError(f"sort {sort} has an empty carrier")

    model = FiniteModel(sig, carrier_map, {})
    interp_map: dict[SymbolDecl, SymbolInterp] = {}
    for name, table in interps.items():
        symbol = sig.symbol(name)
        built: dict[tuple[CarrierElem, ...], CarrierSet] = {}
        for arg_labels, value_labels in table.items():
            if len(arg_labels) != len(symbol.params):
                raise BadTupleError(
                    f"{symbol.name} expects {len(symbol.params)} arguments, "
                    f"got {len(arg_labels)}"
                )
            args = tuple(
                model.elem(param, label)
                for param, label in zip(symbol.params, arg_labels)
            )
            try:
                value = model.set_of(
                    symbol.result,
                    (model.elem(symbol.result, v) for v in value_labels),
                )
            except BadTupleError as err:
                raise BadValueSortError(
                    f"value of {symbol.name}{arg_labels}: {err}"
                ) from None
            built[args] = value
        interp_map[symbol] = SymbolInterp(symbol, built)
    for symbol in sig.symbols:
        if symbol not in interp_map:
            interp_map[symbol] = SymbolInterp(symbol, {})

    return FiniteModel(sig, carrier_map, interp_map)
