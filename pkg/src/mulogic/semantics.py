"""Pattern evaluation over finite models.

Only closed patterns are evaluated: binders are eliminated by substituting
a fresh free variable and ranging its binding over the carrier, so a
dangling index is never reached.  Each recursive call is on a pattern of
strictly smaller size (substituting a single free variable preserves
size), which is the termination argument.

Least fixpoints come in two engines:

* ``iterate`` (default) — Kleene iteration from the empty set.  Sound only
  for monotone bodies, so it insists on a positive binder.
* ``prefix`` — the intersection of all pre-fixpoints, enumerating every
  subset of the carrier.  Exponential, but total even for non-monotone
  bodies, and therefore the oracle the fast engine is checked against.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .errors import (
    CarrierTooLargeError,
    NonPositiveMuError,
    NonPositiveMuWarning,
    NotClosedError,
    SortMismatchError,
    UnboundFreeVariableError,
)
from .model import CarrierElem, CarrierSet, FiniteModel, singleton_fastpath
from .pattern import (
    And,
    App,
    BoundEVar,
    BoundSVar,
    Defined,
    Exists,
    FreeEVar,
    FreeSVar,
    Mu,
    Not,
    Pattern,
    free_vars,
    mk_free_evar,
    mk_free_svar,
    svar_occurs_positively,
)
from .signature import ElemVar, SetVar, Sort
from .subst import bevar_subst, bsvar_subst

LFP_ITERATE = "iterate"
LFP_PREFIX = "prefix"
DEFAULT_PREFIX_CAP = 20


@dataclass(frozen=True)
class Valuation:
    """Sort-respecting bindings for free element and set variables."""

    evars: Mapping[ElemVar, CarrierElem] = field(default_factory=dict)
    svars: Mapping[SetVar, CarrierSet] = field(default_factory=dict)

    @staticmethod
    def empty() -> Valuation:
        return Valuation({}, {})

    def update_evar(self, x: ElemVar, m: CarrierElem) -> Valuation:
        if m.sort != x.sort:
            raise SortMismatchError(
                f"cannot bind {x} to the {m.sort} element {m}"
            )
        return Valuation({**self.evars, x: m}, self.svars)

    def update_svar(self, x: SetVar, a: CarrierSet) -> Valuation:
        if a.sort != x.sort:
            raise SortMismatchError(
                f"cannot bind {x} to a carrier set of sort {a.sort}"
            )
        return Valuation(self.evars, {**self.svars, x: a})

    def evar(self, x: ElemVar) -> CarrierElem:
        try:
            return self.evars[x]
        except KeyError:
            raise UnboundFreeVariableError(
                x, f"element variable {x} is not bound"
            ) from None

    def svar(self, x: SetVar) -> CarrierSet:
        try:
            return self.svars[x]
        except KeyError:
            raise UnboundFreeVariableError(
                x, f"set variable {x} is not bound"
            ) from None

    def binds(self, var: ElemVar | SetVar) -> bool:
        if isinstance(var, ElemVar):
            return var in self.evars
        return var in self.svars


class FreshNameSource:
    """Produces variable names from the reserved ``'<digits>`` namespace,
    skipping anything already visible to the evaluation."""

    def __init__(self, reserved: Iterable[str] = ()):
        self._counter = 0
        self._reserved = set(reserved)

    def _next(self, base: str) -> str:
        while True:
            self._counter += 1
            name = f"{base}'{self._counter}"
            if name not in self._reserved:
                return name

    def elem_var(self, sort: Sort) -> ElemVar:
        return ElemVar(self._next("x"), sort)

    def set_var(self, sort: Sort) -> SetVar:
        return SetVar(self._next("X"), sort)


def lfp_iterate(
    step: Callable[[CarrierSet], CarrierSet], model: FiniteModel, sort: Sort
) -> CarrierSet:
    """Least fixpoint by iteration from the empty set.

    Monotone steps converge within carrier-size + 1 applications; a step
    that fails to converge in that budget cannot be monotone.
    """
    current = model.empty_set(sort)
    for _ in range(model.carrier_size(sort) + 1):
        nxt = step(current)
        if nxt == current:
            return current
        current = nxt
    raise NonPositiveMuError(
        f"fixpoint iteration over {sort} did not converge; "
        "the step function is not monotone"
    )


def lfp_prefixpoints(
    step: Callable[[CarrierSet], CarrierSet],
    model: FiniteModel,
    sort: Sort,
    cap: int = DEFAULT_PREFIX_CAP,
) -> CarrierSet:
    """Least fixpoint as the intersection of all pre-fixpoints.

    Enumerates every subset of the carrier, so it is guarded by ``cap``.
    The full carrier is always a pre-fixpoint, so the intersection is
    well-defined for any step function.
    """
    n = model.carrier_size(sort)
    if n > cap:
        raise CarrierTooLargeError(
            f"carrier of {sort} has {n} elements; enumerating 2^{n} subsets "
            f"exceeds the cap of {cap}"
        )
    acc = (1 << n) - 1
    for bits in range(1 << n):
        candidate = CarrierSet(sort, n, bits)
        if step(candidate).bits & ~bits == 0:
            acc &= bits
    return CarrierSet(sort, n, acc)


def eval_pattern(
    model: FiniteModel,
    rho: Valuation,
    p: Pattern,
    lfp_mode: str = LFP_ITERATE,
    prefix_cap: int = DEFAULT_PREFIX_CAP,
) -> CarrierSet:
    """Interpret a closed pattern as a subset of its sort's carrier.

    ``rho`` must bind every free variable of ``p``.  ``lfp_mode`` selects
    the fixpoint engine: ``iterate`` requires each mu binder to be
    positive, ``prefix`` computes the pre-fixpoint intersection regardless
    (warning on non-positive binders).
    """
    if not p.is_closed:
        raise NotClosedError(
            f"cannot evaluate a pattern with dangling bound variables "
            f"(ex has {len(p.ex)}, mu has {len(p.mu)} entries)"
        )
    if lfp_mode not in (LFP_ITERATE, LFP_PREFIX):
        raise ValueError(f"unknown lfp mode {lfp_mode!r}")
    evs, svs = free_vars(p)
    for var in (*evs, *svs):
        if not rho.binds(var):
            raise UnboundFreeVariableError(var, f"{var} is not bound")
    reserved = {v.name for v in (*evs, *svs)}
    reserved.update(v.name for v in rho.evars)
    reserved.update(v.name for v in rho.svars)
    fresh = FreshNameSource(reserved)
    return _eval(model, rho, p, fresh, lfp_mode, prefix_cap)


def _eval(
    model: FiniteModel,
    rho: Valuation,
    p: Pattern,
    fresh: FreshNameSource,
    mode: str,
    cap: int,
) -> CarrierSet:
    match p:
        case FreeEVar(var=var):
            return model.singleton(rho.evar(var))
        case FreeSVar(var=var):
            return rho.svar(var)
        case App(symbol=symbol, args=args):
            arg_sets = [_eval(model, rho, a, fresh, mode, cap) for a in args]
            extracted = singleton_fastpath(model, arg_sets)
            if extracted is not None:
                return model.interpret_symbol(symbol, extracted)
            return model.extended_app(symbol, arg_sets)
        case Not(body=body):
            return _eval(model, rho, body, fresh, mode, cap).complement()
        case And(left=left, right=right):
            return _eval(model, rho, left, fresh, mode, cap) & _eval(
                model, rho, right, fresh, mode, cap
            )
        case Defined(body=body):
            return model.definedness(p.sort, _eval(model, rho, body, fresh, mode, cap))
        case Exists(binder_sort=bsort, body=body):
            x = fresh.elem_var(bsort)
            opened = bevar_subst(mk_free_evar(x), body)
            out = model.empty_set(p.sort)
            for m in model.carrier(bsort):
                out = out | _eval(
                    model, rho.update_evar(x, m), opened, fresh, mode, cap
                )
            return out
        case Mu(body=body):
            x = fresh.set_var(p.sort)
            opened = bsvar_subst(mk_free_svar(x), body)

            def step(a: CarrierSet) -> CarrierSet:
                return _eval(model, rho.update_svar(x, a), opened, fresh, mode, cap)

            if mode == LFP_ITERATE:
                if not svar_occurs_positively(body, 0):
                    raise NonPositiveMuError(
                        "mu binder body is not positive; iteration is unsound "
                        "(use the prefix engine to apply the set-theoretic "
                        "definition regardless)"
                    )
                return lfp_iterate(step, model, p.sort)
            if not svar_occurs_positively(body, 0):
                warnings.warn(
                    "computing the pre-fixpoint intersection of a "
                    "non-positive mu binder; the result need not be a fixpoint",
                    NonPositiveMuWarning,
                    stacklevel=2,
                )
            return lfp_prefixpoints(step, model, p.sort, cap)
        case BoundEVar() | BoundSVar():
            raise AssertionError(
                "dangling bound variable reached during evaluation of a "
                "closed pattern"
            )
    raise TypeError(f"unexpected pattern node {p!r}")
