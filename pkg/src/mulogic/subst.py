"""The substitution calculus: context extension (weakening), bound-variable
substitution via the four-case index procedure, and free-variable
substitution.

All four substitution entry points are structural recursions on the target
pattern; the index procedure runs at bound-variable leaves, so no step
recurses on anything but a subterm.  Context bookkeeping:

* ``extend_env`` inserts sorts into a context at a split point and shifts
  the indices at or past it.
* ``bevar_subst(psi, p)`` locates the substituted slot purely from the
  context lengths: the slot is ``len(p.ex) - len(psi.ex) - 1``, which makes
  the decomposition ``p.ex == pre + (psi.sort,) + psi.ex`` unique whenever
  it exists at all.
* ``fevar_subst`` requires the replacement's contexts to be suffixes of the
  target's and weakens the replacement at each binder it descends under.

Set-variable variants mirror the element-variable ones on the mu context.
"""

from __future__ import annotations

from .errors import (
    BadSplitError,
    IndexOutOfScopeError,
    SlotNotFoundError,
    SortMismatchError,
)
from .pattern import (
    And,
    App,
    BoundEVar,
    BoundSVar,
    Context,
    Defined,
    Exists,
    FreeEVar,
    FreeSVar,
    Mu,
    Not,
    Pattern,
)
from .signature import ElemVar, SetVar, Sort


def extend_env(
    p: Pattern,
    ex_split: int,
    ex_insert: tuple[Sort, ...] = (),
    mu_split: int = 0,
    mu_insert: tuple[Sort, ...] = (),
) -> Pattern:
    """Weakening: insert sorts into either context at a split point.

    Bound indices at or past the split are shifted by the insert length;
    nothing else changes (in particular the size is preserved).
    """
    if not 0 <= ex_split <= len(p.ex):
        raise BadSplitError(
            f"ex split {ex_split} exceeds context length {len(p.ex)}"
        )
    if not 0 <= mu_split <= len(p.mu):
        raise BadSplitError(
            f"mu split {mu_split} exceeds context length {len(p.mu)}"
        )
    if not ex_insert and not mu_insert:
        return p
    return _extend(p, ex_split, tuple(ex_insert), mu_split, tuple(mu_insert))


def _extend(
    p: Pattern,
    ex_split: int,
    ex_insert: tuple[Sort, ...],
    mu_split: int,
    mu_insert: tuple[Sort, ...],
) -> Pattern:
    ex = p.ex[:ex_split] + ex_insert + p.ex[ex_split:]
    mu = p.mu[:mu_split] + mu_insert + p.mu[mu_split:]
    match p:
        case FreeEVar(var=var):
            return FreeEVar(p.sort, ex, mu, var)
        case FreeSVar(var=var):
            return FreeSVar(p.sort, ex, mu, var)
        case BoundEVar(index=i):
            return BoundEVar(p.sort, ex, mu, i + len(ex_insert) if i >= ex_split else i)
        case BoundSVar(index=i):
            return BoundSVar(p.sort, ex, mu, i + len(mu_insert) if i >= mu_split else i)
        case App(symbol=symbol, args=args):
            return App(
                p.sort, ex, mu, symbol,
                tuple(_extend(a, ex_split, ex_insert, mu_split, mu_insert) for a in args),
            )
        case Not(body=body):
            return Not(p.sort, ex, mu, _extend(body, ex_split, ex_insert, mu_split, mu_insert))
        case And(left=left, right=right):
            return And(
                p.sort, ex, mu,
                _extend(left, ex_split, ex_insert, mu_split, mu_insert),
                _extend(right, ex_split, ex_insert, mu_split, mu_insert),
            )
        case Exists(binder_sort=b, body=body):
            return Exists(
                p.sort, ex, mu, b,
                _extend(body, ex_split + 1, ex_insert, mu_split, mu_insert),
            )
        case Mu(body=body):
            return Mu(
                p.sort, ex, mu,
                _extend(body, ex_split, ex_insert, mu_split + 1, mu_insert),
            )
        case Defined(body=body):
            return Defined(
                p.sort, ex, mu,
                _extend(body, ex_split, ex_insert, mu_split, mu_insert),
            )
    raise TypeError(f"unexpected pattern node {p!r}")


def index_subst(index: int, prefix: Context, psi: Pattern) -> Pattern:
    """Substitute bound element variable ``index`` read against the context
    ``prefix + (psi.sort,) + psi.ex``.

    Four cases on (index, |prefix|): the slot itself is replaced by ``psi``;
    an index before the slot stays; an index past the slot decrements; and
    with both nonzero we recurse on the context tail, then re-extend the
    result by the dropped head sort.
    """
    if not 0 <= index <= len(prefix) + len(psi.ex):
        raise IndexOutOfScopeError(
            f"index {index} out of scope in a context of length "
            f"{len(prefix) + 1 + len(psi.ex)}"
        )
    if index == 0:
        if not prefix:
            return psi
        return BoundEVar(prefix[0], prefix + psi.ex, psi.mu, 0)
    if not prefix:
        return BoundEVar(psi.ex[index - 1], psi.ex, psi.mu, index - 1)
    inner = index_subst(index - 1, prefix[1:], psi)
    return extend_env(inner, 0, (prefix[0],))


def index_subst_set(index: int, prefix: Context, psi: Pattern) -> Pattern:
    """Mirror of :func:`index_subst` for bound set variables: the slot
    lives in the context ``prefix + (psi.sort,) + psi.mu``."""
    if not 0 <= index <= len(prefix) + len(psi.mu):
        raise IndexOutOfScopeError(
            f"index {index} out of scope in a context of length "
            f"{len(prefix) + 1 + len(psi.mu)}"
        )
    if index == 0:
        if not prefix:
            return psi
        return BoundSVar(prefix[0], psi.ex, prefix + psi.mu, 0)
    if not prefix:
        return BoundSVar(psi.mu[index - 1], psi.ex, psi.mu, index - 1)
    inner = index_subst_set(index - 1, prefix[1:], psi)
    return extend_env(inner, 0, (), 0, (prefix[0],))


def bevar_subst(psi: Pattern, p: Pattern) -> Pattern:
    """Replace the dangling bound element variable whose slot is determined
    by the context decomposition ``p.ex == pre + (psi.sort,) + psi.ex``.

    Indices past the slot decrement; free variables are untouched; the
    result's ex context is ``pre + psi.ex``.
    """
    k = len(p.ex) - len(psi.ex) - 1
    if k < 0 or p.ex[k] != psi.sort or p.ex[k + 1 :] != psi.ex:
        raise SlotNotFoundError(
            f"target ex context {[str(s) for s in p.ex]} does not decompose "
            f"around a {psi.sort} slot followed by {[str(s) for s in psi.ex]}"
        )
    psi = _align_mu(psi, p)
    return _bevar(psi, p, k)


def _align_mu(psi: Pattern, p: Pattern) -> Pattern:
    """Weaken ``psi``'s mu context to ``p``'s (it must be a suffix)."""
    if psi.mu == p.mu:
        return psi
    d = len(p.mu) - len(psi.mu)
    if d < 0 or p.mu[d:] != psi.mu:
        raise SlotNotFoundError(
            f"replacement mu context {[str(s) for s in psi.mu]} is not a "
            f"suffix of the target's {[str(s) for s in p.mu]}"
        )
    return extend_env(psi, 0, (), 0, p.mu[:d])


def _bevar(psi: Pattern, p: Pattern, k: int) -> Pattern:
    ex = p.ex[:k] + p.ex[k + 1 :]
    match p:
        case FreeEVar(var=var):
            return FreeEVar(p.sort, ex, p.mu, var)
        case FreeSVar(var=var):
            return FreeSVar(p.sort, ex, p.mu, var)
        case BoundEVar(index=i):
            return index_subst(i, p.ex[:k], psi)
        case BoundSVar(index=i):
            return BoundSVar(p.sort, ex, p.mu, i)
        case App(symbol=symbol, args=args):
            return App(p.sort, ex, p.mu, symbol, tuple(_bevar(psi, a, k) for a in args))
        case Not(body=body):
            return Not(p.sort, ex, p.mu, _bevar(psi, body, k))
        case And(left=left, right=right):
            return And(p.sort, ex, p.mu, _bevar(psi, left, k), _bevar(psi, right, k))
        case Exists(binder_sort=b, body=body):
            return Exists(p.sort, ex, p.mu, b, _bevar(psi, body, k + 1))
        case Mu(body=body):
            weakened = extend_env(psi, 0, (), 0, (p.sort,))
            return Mu(p.sort, ex, p.mu, _bevar(weakened, body, k))
        case Defined(body=body):
            return Defined(p.sort, ex, p.mu, _bevar(psi, body, k))
    raise TypeError(f"unexpected pattern node {p!r}")


def bsvar_subst(psi: Pattern, p: Pattern) -> Pattern:
    """Mirror of :func:`bevar_subst` on the mu context."""
    k = len(p.mu) - len(psi.mu) - 1
    if k < 0 or p.mu[k] != psi.sort or p.mu[k + 1 :] != psi.mu:
        raise SlotNotFoundError(
            f"target mu context {[str(s) for s in p.mu]} does not decompose "
            f"around a {psi.sort} slot followed by {[str(s) for s in psi.mu]}"
        )
    psi = _align_ex(psi, p)
    return _bsvar(psi, p, k)


def _align_ex(psi: Pattern, p: Pattern) -> Pattern:
    if psi.ex == p.ex:
        return psi
    d = len(p.ex) - len(psi.ex)
    if d < 0 or p.ex[d:] != psi.ex:
        raise SlotNotFoundError(
            f"replacement ex context {[str(s) for s in psi.ex]} is not a "
            f"suffix of the target's {[str(s) for s in p.ex]}"
        )
    return extend_env(psi, 0, p.ex[:d])


def _bsvar(psi: Pattern, p: Pattern, k: int) -> Pattern:
    mu = p.mu[:k] + p.mu[k + 1 :]
    match p:
        case FreeEVar(var=var):
            return FreeEVar(p.sort, p.ex, mu, var)
        case FreeSVar(var=var):
            return FreeSVar(p.sort, p.ex, mu, var)
        case BoundEVar(index=i):
            return BoundEVar(p.sort, p.ex, mu, i)
        case BoundSVar(index=i):
            return index_subst_set(i, p.mu[:k], psi)
        case App(symbol=symbol, args=args):
            return App(p.sort, p.ex, mu, symbol, tuple(_bsvar(psi, a, k) for a in args))
        case Not(body=body):
            return Not(p.sort, p.ex, mu, _bsvar(psi, body, k))
        case And(left=left, right=right):
            return And(p.sort, p.ex, mu, _bsvar(psi, left, k), _bsvar(psi, right, k))
        case Exists(binder_sort=b, body=body):
            weakened = extend_env(psi, 0, (b,))
            return Exists(p.sort, p.ex, mu, b, _bsvar(weakened, body, k))
        case Mu(body=body):
            return Mu(p.sort, p.ex, mu, _bsvar(psi, body, k + 1))
        case Defined(body=body):
            return Defined(p.sort, p.ex, mu, _bsvar(psi, body, k))
    raise TypeError(f"unexpected pattern node {p!r}")


def fevar_subst(psi: Pattern, x: ElemVar, p: Pattern) -> Pattern:
    """Replace every free occurrence of ``x`` in ``p`` by ``psi``.

    ``psi``'s contexts must be suffixes of ``p``'s; it is weakened on the
    way down, so no binder can capture its dangling indices.  Bound
    variables are untouched.
    """
    if psi.sort != x.sort:
        raise SortMismatchError(
            f"replacement of sort {psi.sort} cannot substitute {x}"
        )
    psi = _align_both(psi, p)
    return _fevar(psi, x, p)


def _align_both(psi: Pattern, p: Pattern) -> Pattern:
    dex = len(p.ex) - len(psi.ex)
    if dex < 0 or p.ex[dex:] != psi.ex:
        raise SlotNotFoundError(
            f"replacement ex context {[str(s) for s in psi.ex]} is not a "
            f"suffix of the target's {[str(s) for s in p.ex]}"
        )
    dmu = len(p.mu) - len(psi.mu)
    if dmu < 0 or p.mu[dmu:] != psi.mu:
        raise SlotNotFoundError(
            f"replacement mu context {[str(s) for s in psi.mu]} is not a "
            f"suffix of the target's {[str(s) for s in p.mu]}"
        )
    return extend_env(psi, 0, p.ex[:dex], 0, p.mu[:dmu])


def _fevar(psi: Pattern, x: ElemVar, p: Pattern) -> Pattern:
    match p:
        case FreeEVar(var=var):
            return psi if var == x else p
        case FreeSVar() | BoundEVar() | BoundSVar():
            return p
        case App(symbol=symbol, args=args):
            return App(p.sort, p.ex, p.mu, symbol, tuple(_fevar(psi, x, a) for a in args))
        case Not(body=body):
            return Not(p.sort, p.ex, p.mu, _fevar(psi, x, body))
        case And(left=left, right=right):
            return And(p.sort, p.ex, p.mu, _fevar(psi, x, left), _fevar(psi, x, right))
        case Exists(binder_sort=b, body=body):
            return Exists(
                p.sort, p.ex, p.mu, b,
                _fevar(extend_env(psi, 0, (b,)), x, body),
            )
        case Mu(body=body):
            return Mu(
                p.sort, p.ex, p.mu,
                _fevar(extend_env(psi, 0, (), 0, (p.sort,)), x, body),
            )
        case Defined(body=body):
            return Defined(p.sort, p.ex, p.mu, _fevar(psi, x, body))
    raise TypeError(f"unexpected pattern node {p!r}")


def fsvar_subst(psi: Pattern, x: SetVar, p: Pattern) -> Pattern:
    """Mirror of :func:`fevar_subst` for free set variables."""
    if psi.sort != x.sort:
        raise SortMismatchError(
            f"replacement of sort {psi.sort} cannot substitute {x}"
        )
    psi = _align_both(psi, p)
    return _fsvar(psi, x, p)


def _fsvar(psi: Pattern, x: SetVar, p: Pattern) -> Pattern:
    match p:
        case FreeSVar(var=var):
            return psi if var == x else p
        case FreeEVar() | BoundEVar() | BoundSVar():
            return p
        case App(symbol=symbol, args=args):
            return App(p.sort, p.ex, p.mu, symbol, tuple(_fsvar(psi, x, a) for a in args))
        case Not(body=body):
            return Not(p.sort, p.ex, p.mu, _fsvar(psi, x, body))
        case And(left=left, right=right):
            return And(p.sort, p.ex, p.mu, _fsvar(psi, x, left), _fsvar(psi, x, right))
        case Exists(binder_sort=b, body=body):
            return Exists(
                p.sort, p.ex, p.mu, b,
                _fsvar(extend_env(psi, 0, (b,)), x, body),
            )
        case Mu(body=body):
            return Mu(
                p.sort, p.ex, p.mu,
                _fsvar(extend_env(psi, 0, (), 0, (p.sort,)), x, body),
            )
        case Defined(body=body):
            return Defined(p.sort, p.ex, p.mu, _fsvar(psi, x, body))
    raise TypeError(f"unexpected pattern node {p!r}")
