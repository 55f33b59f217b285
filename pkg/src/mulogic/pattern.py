"""Well-sorted, well-scoped pattern trees.

Every pattern node carries its sort and two sorting contexts: ``ex`` lists
the sorts of dangling existentially-bound variables, ``mu`` the sorts of
dangling fixpoint-bound variables (index 0 = innermost binder).  A pattern
is closed when both contexts are empty.

Node invariants are enforced in ``__post_init__``, so an ill-sorted or
ill-scoped tree cannot be built, not even by constructing the dataclasses
directly.  The ``mk_*`` helpers below compute the derived fields (sort and
contexts) and raise the friendlier, more specific errors.

Patterns are immutable values; every transformation builds a new tree and
may share subtrees freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ArgSortMismatchError,
    ArityMismatchError,
    BinderSortMismatchError,
    ContextMismatchError,
    IndexOutOfScopeError,
    SortMismatchError,
)
from .signature import ElemVar, SetVar, Signature, Sort, SymbolDecl

Context = tuple[Sort, ...]


def _ctx(sorts: Iterable[Sort]) -> Context:
    return tuple(sorts)


@dataclass(frozen=True)
class Pattern:
    sort: Sort
    ex: Context
    mu: Context

    @property
    def is_closed(self) -> bool:
        return not self.ex and not self.mu

    def __str__(self) -> str:
        from .printer import print_pattern

        return print_pattern(self)


@dataclass(frozen=True)
class FreeEVar(Pattern):
    var: ElemVar

    def __post_init__(self) -> None:
        if self.var.sort != self.sort:
            raise SortMismatchError(
                f"free element variable {self.var} cannot have sort {self.sort}"
            )


@dataclass(frozen=True)
class FreeSVar(Pattern):
    var: SetVar

    def __post_init__(self) -> None:
        if self.var.sort != self.sort:
            raise SortMismatchError(
                f"free set variable {self.var} cannot have sort {self.sort}"
            )


@dataclass(frozen=True)
class BoundEVar(Pattern):
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < len(self.ex):
            raise IndexOutOfScopeError(
                f"bound element variable b{self.index} out of scope "
                f"(context has {len(self.ex)} entries)"
            )
        if self.ex[self.index] != self.sort:
            raise SortMismatchError(
                f"bound element variable b{self.index} has sort "
                f"{self.ex[self.index]}, not {self.sort}"
            )


@dataclass(frozen=True)
class BoundSVar(Pattern):
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < len(self.mu):
            raise IndexOutOfScopeError(
                f"bound set variable B{self.index} out of scope "
                f"(context has {len(self.mu)} entries)"
            )
        if self.mu[self.index] != self.sort:
            raise SortMismatchError(
                f"bound set variable B{self.index} has sort "
                f"{self.mu[self.index]}, not {self.sort}"
            )


@dataclass(frozen=True)
class App(Pattern):
    symbol: SymbolDecl
    args: tuple[Pattern, ...]

    def __post_init__(self) -> None:
        symbol = self.symbol
        if len(self.args) != len(symbol.params):
            raise ArityMismatchError(
                f"{symbol.name} expects {len(symbol.params)} arguments, "
                f"got {len(self.args)}"
            )
        if self.sort != symbol.result:
            raise SortMismatchError(
                f"application of {symbol.name} has sort {symbol.result}, "
                f"not {self.sort}"
            )
        for k, (arg, param) in enumerate(zip(self.args, symbol.params)):
            if arg.sort != param:
                raise ArgSortMismatchError(
                    k,
                    f"argument {k} of {symbol.name} must have sort {param}, "
                    f"got {arg.sort}",
                )
            if arg.ex != self.ex or arg.mu != self.mu:
                raise ContextMismatchError(
                    f"argument {k} of {symbol.name} lives in a different context"
                )


@dataclass(frozen=True)
class Not(Pattern):
    body: Pattern

    def __post_init__(self) -> None:
        _require_same_shape("negation", self, self.body)


@dataclass(frozen=True)
class And(Pattern):
    left: Pattern
    right: Pattern

    def __post_init__(self) -> None:
        _require_same_shape("conjunction", self, self.left)
        _require_same_shape("conjunction", self, self.right)


@dataclass(frozen=True)
class Exists(Pattern):
    binder_sort: Sort
    body: Pattern

    def __post_init__(self) -> None:
        if self.body.ex != (self.binder_sort,) + self.ex:
            raise BinderSortMismatchError(
                f"exists binder over {self.binder_sort} does not match the "
                f"body context {[str(s) for s in self.body.ex]}"
            )
        if self.body.mu != self.mu:
            raise ContextMismatchError("exists body has a different mu context")
        if self.body.sort != self.sort:
            raise SortMismatchError("exists inherits the sort of its body")


@dataclass(frozen=True)
class Mu(Pattern):
    body: Pattern

    def __post_init__(self) -> None:
        if self.body.mu != (self.sort,) + self.mu:
            raise BinderSortMismatchError(
                f"mu binder of sort {self.sort} does not match the body "
                f"context {[str(s) for s in self.body.mu]}"
            )
        if self.body.ex != self.ex:
            raise ContextMismatchError("mu body has a different ex context")
        if self.body.sort != self.sort:
            raise SortMismatchError("mu inherits the sort of its body")


@dataclass(frozen=True)
class Defined(Pattern):
    """Definedness: full carrier of ``sort`` iff the body denotes a
    non-empty set.  The node sort is independent of the body sort."""

    body: Pattern

    def __post_init__(self) -> None:
        if self.body.ex != self.ex or self.body.mu != self.mu:
            raise ContextMismatchError("definedness body has a different context")


def _require_same_shape(what: str, node: Pattern, child: Pattern) -> None:
    if child.sort != node.sort:
        raise SortMismatchError(
            f"{what} requires sort {node.sort}, got {child.sort}"
        )
    if child.ex != node.ex or child.mu != node.mu:
        raise ContextMismatchError(f"{what} child lives in a different context")


# --- core constructors --------------------------------------------------


def mk_free_evar(var: ElemVar, ex: Iterable[Sort] = (), mu: Iterable[Sort] = ()) -> Pattern:
    return FreeEVar(var.sort, _ctx(ex), _ctx(mu), var)


def mk_free_svar(var: SetVar, ex: Iterable[Sort] = (), mu: Iterable[Sort] = ()) -> Pattern:
    return FreeSVar(var.sort, _ctx(ex), _ctx(mu), var)


def mk_bound_evar(ex: Iterable[Sort], mu: Iterable[Sort], index: int) -> Pattern:
    """Bound element variable ``index``; its sort is read off the context."""
    ex = _ctx(ex)
    if not 0 <= index < len(ex):
        raise IndexOutOfScopeError(
            f"bound element variable b{index} out of scope "
            f"(context has {len(ex)} entries)"
        )
    return BoundEVar(ex[index], ex, _ctx(mu), index)


def mk_bound_svar(ex: Iterable[Sort], mu: Iterable[Sort], index: int) -> Pattern:
    """Bound set variable ``index``; its sort is read off the mu context."""
    mu = _ctx(mu)
    if not 0 <= index < len(mu):
        raise IndexOutOfScopeError(
            f"bound set variable B{index} out of scope "
            f"(context has {len(mu)} entries)"
        )
    return BoundSVar(mu[index], _ctx(ex), mu, index)


def mk_app(
    sig: Signature,
    symbol: SymbolDecl,
    args: Sequence[Pattern],
    ex: Iterable[Sort] | None = None,
    mu: Iterable[Sort] | None = None,
) -> Pattern:
    """Application node.  Contexts are inherited from the arguments; for
    0-ary symbols the caller supplies the intended contexts (default
    closed)."""
    sig._require_symbol(symbol)
    args = tuple(args)
    if len(args) != len(symbol.params):
        raise ArityMismatchError(
            f"{symbol.name} expects {len(symbol.params)} arguments, got {len(args)}"
        )
    if args:
        node_ex, node_mu = args[0].ex, args[0].mu
        if ex is not None and _ctx(ex) != node_ex:
            raise ContextMismatchError("given ex context differs from the arguments'")
        if mu is not None and _ctx(mu) != node_mu:
            raise ContextMismatchError("given mu context differs from the arguments'")
    else:
        node_ex = _ctx(ex) if ex is not None else ()
        node_mu = _ctx(mu) if mu is not None else ()
    for k, (arg, param) in enumerate(zip(args, symbol.params)):
        if arg.sort != param:
            raise ArgSortMismatchError(
                k,
                f"argument {k} of {symbol.name} must have sort {param}, got {arg.sort}",
            )
        if arg.ex != node_ex or arg.mu != node_mu:
            raise ContextMismatchError(
                f"argument {k} of {symbol.name} lives in a different context"
            )
    return App(symbol.result, node_ex, node_mu, symbol, args)


def mk_not(body: Pattern) -> Pattern:
    return Not(body.sort, body.ex, body.mu, body)


def mk_and(left: Pattern, right: Pattern) -> Pattern:
    if left.sort != right.sort:
        raise SortMismatchError(
            f"conjunction requires one sort, got {left.sort} and {right.sort}"
        )
    if left.ex != right.ex or left.mu != right.mu:
        raise ContextMismatchError("conjunction children live in different contexts")
    return And(left.sort, left.ex, left.mu, left, right)


def mk_exists(binder_sort: Sort, body: Pattern) -> Pattern:
    """Existential binder; consumes the head of the body's ex context."""
    if not body.ex or body.ex[0] != binder_sort:
        raise BinderSortMismatchError(
            f"exists binder over {binder_sort} does not match the body "
            f"context {[str(s) for s in body.ex]}"
        )
    return Exists(body.sort, body.ex[1:], body.mu, binder_sort, body)


def mk_mu(body: Pattern) -> Pattern:
    """Least-fixpoint binder; the bound variable shares the body's sort."""
    if not body.mu or body.mu[0] != body.sort:
        raise BinderSortMismatchError(
            f"mu binder requires the body context to start with the body "
            f"sort {body.sort}, got {[str(s) for s in body.mu]}"
        )
    return Mu(body.sort, body.ex, body.mu[1:], body)


def mk_defined(result_sort: Sort, body: Pattern) -> Pattern:
    """Definedness node; ``result_sort`` is free, unconstrained by the body."""
    return Defined(result_sort, body.ex, body.mu, body)


# --- derived connectives ------------------------------------------------
#
# These are notations: each returns the fully expanded core tree, so the
# results are indistinguishable from hand-built expansions.


def mk_top(sort: Sort, ex: Iterable[Sort] = (), mu: Iterable[Sort] = ()) -> Pattern:
    ex = _ctx(ex)
    return mk_exists(sort, mk_bound_evar((sort,) + ex, mu, 0))


def mk_bottom(sort: Sort, ex: Iterable[Sort] = (), mu: Iterable[Sort] = ()) -> Pattern:
    return mk_not(mk_top(sort, ex, mu))


def mk_or(left: Pattern, right: Pattern) -> Pattern:
    return mk_not(mk_and(mk_not(left), mk_not(right)))


def mk_implies(left: Pattern, right: Pattern) -> Pattern:
    return mk_or(mk_not(left), right)


def mk_iff(left: Pattern, right: Pattern) -> Pattern:
    return mk_and(mk_implies(left, right), mk_implies(right, left))


def mk_forall(binder_sort: Sort, body: Pattern) -> Pattern:
    return mk_not(mk_exists(binder_sort, mk_not(body)))


def mk_nu(body: Pattern) -> Pattern:
    """Greatest fixpoint as the negation dual of mu.

    Occurrences of the binder's own variable are negated in place (a
    context-preserving rewrite, not a substitution: the replacement
    ``not B0`` is not closed, so the substitution calculus must not see
    it)."""
    if not body.mu or body.mu[0] != body.sort:
        raise BinderSortMismatchError(
            f"nu binder requires the body context to start with the body "
            f"sort {body.sort}, got {[str(s) for s in body.mu]}"
        )
    return mk_not(mk_mu(mk_not(_negate_bound_svar(body, 0))))


def mk_floor(result_sort: Sort, body: Pattern) -> Pattern:
    return mk_not(mk_defined(result_sort, mk_not(body)))


def mk_equals(result_sort: Sort, left: Pattern, right: Pattern) -> Pattern:
    return mk_floor(result_sort, mk_iff(left, right))


def mk_subseteq(result_sort: Sort, left: Pattern, right: Pattern) -> Pattern:
    return mk_floor(result_sort, mk_implies(left, right))


def _negate_bound_svar(p: Pattern, target: int) -> Pattern:
    """Replace every occurrence of bound set variable ``target`` by its
    negation, shifting the target under nested mu binders."""
    match p:
        case BoundSVar(index=i) if i == target:
            return mk_not(p)
        case FreeEVar() | FreeSVar() | BoundEVar() | BoundSVar():
            return p
        case App(symbol=symbol, args=args):
            return App(
                p.sort, p.ex, p.mu, symbol,
                tuple(_negate_bound_svar(a, target) for a in args),
            )
        case Not(body=body):
            return Not(p.sort, p.ex, p.mu, _negate_bound_svar(body, target))
        case And(left=left, right=right):
            return And(
                p.sort, p.ex, p.mu,
                _negate_bound_svar(left, target),
                _negate_bound_svar(right, target),
            )
        case Exists(binder_sort=b, body=body):
            return Exists(p.sort, p.ex, p.mu, b, _negate_bound_svar(body, target))
        case Mu(body=body):
            return Mu(p.sort, p.ex, p.mu, _negate_bound_svar(body, target + 1))
        case Defined(body=body):
            return Defined(p.sort, p.ex, p.mu, _negate_bound_svar(body, target))
    raise TypeError(f"unexpected pattern node {p!r}")


# --- observations -------------------------------------------------------


def size(p: Pattern) -> int:
    """Node count of the syntax tree (variables count 1, an application
    counts 1 plus its arguments).

    Derived connectives duplicate operands when they expand, so the tree
    can be exponentially larger than the shared in-memory structure; the
    count is memoized over shared subtrees to stay linear.
    """
    return _size(p, {})


def _size(p: Pattern, memo: dict[int, int]) -> int:
    known = memo.get(id(p))
    if known is not None:
        return known
    match p:
        case FreeEVar() | FreeSVar() | BoundEVar() | BoundSVar():
            n = 1
        case App(args=args):
            n = 1 + sum(_size(a, memo) for a in args)
        case Not(body=body) | Exists(body=body) | Mu(body=body) | Defined(body=body):
            n = 1 + _size(body, memo)
        case And(left=left, right=right):
            n = 1 + _size(left, memo) + _size(right, memo)
        case _:
            raise TypeError(f"unexpected pattern node {p!r}")
    memo[id(p)] = n
    return n


def free_vars(p: Pattern) -> tuple[frozenset[ElemVar], frozenset[SetVar]]:
    evars: set[ElemVar] = set()
    svars: set[SetVar] = set()
    _collect_free(p, evars, svars, set())
    return frozenset(evars), frozenset(svars)


def _collect_free(
    p: Pattern, evars: set[ElemVar], svars: set[SetVar], seen: set[int]
) -> None:
    if id(p) in seen:
        return
    seen.add(id(p))
    match p:
        case FreeEVar(var=var):
            evars.add(var)
        case FreeSVar(var=var):
            svars.add(var)
        case BoundEVar() | BoundSVar():
            pass
        case App(args=args):
            for a in args:
                _collect_free(a, evars, svars, seen)
        case Not(body=body) | Exists(body=body) | Mu(body=body) | Defined(body=body):
            _collect_free(body, evars, svars, seen)
        case And(left=left, right=right):
            _collect_free(left, evars, svars, seen)
            _collect_free(right, evars, svars, seen)
        case _:
            raise TypeError(f"unexpected pattern node {p!r}")


def structural_eq(p: Pattern, q: Pattern) -> bool:
    """Structural equality; with de Bruijn indices this is alpha-equivalence."""
    return p == q


def validate(p: Pattern) -> bool:
    """Recursively re-derive every per-node invariant.

    Construction already enforces them, so this is a trust-but-verify pass
    for tests and debugging.  Shared subtrees are checked once.
    """
    return _validate(p, set())


def _validate(p: Pattern, ok: set[int]) -> bool:
    if id(p) in ok:
        return True
    match p:
        case FreeEVar(var=var):
            good = var.sort == p.sort
        case FreeSVar(var=var):
            good = var.sort == p.sort
        case BoundEVar(index=i):
            good = 0 <= i < len(p.ex) and p.ex[i] == p.sort
        case BoundSVar(index=i):
            good = 0 <= i < len(p.mu) and p.mu[i] == p.sort
        case App(symbol=symbol, args=args):
            good = (
                len(args) == len(symbol.params)
                and p.sort == symbol.result
                and all(
                    a.sort == s and a.ex == p.ex and a.mu == p.mu and _validate(a, ok)
                    for a, s in zip(args, symbol.params)
                )
            )
        case Not(body=body):
            good = (
                body.sort == p.sort
                and body.ex == p.ex
                and body.mu == p.mu
                and _validate(body, ok)
            )
        case And(left=left, right=right):
            good = all(
                c.sort == p.sort and c.ex == p.ex and c.mu == p.mu and _validate(c, ok)
                for c in (left, right)
            )
        case Exists(binder_sort=b, body=body):
            good = (
                body.ex == (b,) + p.ex
                and body.mu == p.mu
                and body.sort == p.sort
                and _validate(body, ok)
            )
        case Mu(body=body):
            good = (
                body.mu == (p.sort,) + p.mu
                and body.ex == p.ex
                and body.sort == p.sort
                and _validate(body, ok)
            )
        case Defined(body=body):
            good = body.ex == p.ex and body.mu == p.mu and _validate(body, ok)
        case _:
            good = False
    if good:
        ok.add(id(p))
    return good


# --- positivity ---------------------------------------------------------


@dataclass(frozen=True)
class MuCheck:
    """Verdict for one mu binder; ``path`` is the child-index route from
    the root to the binder."""

    path: tuple[int, ...]
    positive: bool


@dataclass(frozen=True)
class PositivityReport:
    checks: tuple[MuCheck, ...]

    @property
    def all_positive(self) -> bool:
        return all(c.positive for c in self.checks)

    def negative_paths(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.path for c in self.checks if not c.positive)


def check_mu_positivity(p: Pattern) -> PositivityReport:
    """Report, for every mu binder in ``p``, whether its bound variable
    occurs only under an even number of negations.

    Binders inside shared (derived-form) subtrees are reported once, at
    the first path that reaches them.
    """
    checks: list[MuCheck] = []
    _walk_mu(p, (), checks, set())
    return PositivityReport(tuple(checks))


def _walk_mu(
    p: Pattern, path: tuple[int, ...], out: list[MuCheck], seen: set[int]
) -> None:
    if id(p) in seen:
        return
    seen.add(id(p))
    match p:
        case Mu(body=body):
            out.append(MuCheck(path, svar_occurs_positively(body, 0)))
            _walk_mu(body, path + (0,), out, seen)
        case App(args=args):
            for k, a in enumerate(args):
                _walk_mu(a, path + (k,), out, seen)
        case Not(body=body) | Exists(body=body) | Defined(body=body):
            _walk_mu(body, path + (0,), out, seen)
        case And(left=left, right=right):
            _walk_mu(left, path + (0,), out, seen)
            _walk_mu(right, path + (1,), out, seen)
        case _:
            pass


def svar_occurs_positively(p: Pattern, target: int, negations: int = 0) -> bool:
    """True iff every occurrence of bound set variable ``target`` sits
    under an even number of negations."""
    return _svar_positive(p, target, negations % 2 == 0, {})


def _svar_positive(
    p: Pattern, target: int, even: bool, memo: dict[tuple[int, int, bool], bool]
) -> bool:
    key = (id(p), target, even)
    known = memo.get(key)
    if known is not None:
        return known
    match p:
        case BoundSVar(index=i):
            good = i != target or even
        case FreeEVar() | FreeSVar() | BoundEVar():
            good = True
        case App(args=args):
            good = all(_svar_positive(a, target, even, memo) for a in args)
        case Not(body=body):
            good = _svar_positive(body, target, not even, memo)
        case And(left=left, right=right):
            good = _svar_positive(left, target, even, memo) and _svar_positive(
                right, target, even, memo
            )
        case Exists(body=body) | Defined(body=body):
            good = _svar_positive(body, target, even, memo)
        case Mu(body=body):
            good = _svar_positive(body, target + 1, even, memo)
        case _:
            raise TypeError(f"unexpected pattern node {p!r}")
    memo[key] = good
    return good
