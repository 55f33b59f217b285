"""Seeded random generators for the property tests.

``random_pattern`` keeps a strict size budget: the result's node count
never exceeds ``budget`` (the cheapest always-available leaf, a top
expansion, costs 2 nodes).  With ``positive_only`` every bound set
variable is emitted under an even number of negations relative to its own
binder, so every mu binder in the output is positive.
"""

import itertools
import random

from mulogic import (
    And,
    App,
    CarrierSet,
    Defined,
    ElemVar,
    Exists,
    Mu,
    Not,
    Pattern,
    SetVar,
    Signature,
    Valuation,
    build_model,
    free_vars,
    mk_and,
    mk_app,
    mk_bound_evar,
    mk_bound_svar,
    mk_defined,
    mk_exists,
    mk_free_evar,
    mk_free_svar,
    mk_mu,
    mk_not,
    mk_top,
)

VAR_NAMES = ("x", "y", "z", "w")


def random_signature(rng: random.Random, max_sorts: int = 3, max_symbols: int = 6) -> Signature:
    sig = Signature()
    sorts = [sig.declare_sort(f"S{i}") for i in range(rng.randint(1, max_sorts))]
    for i in range(rng.randint(1, max_symbols)):
        params = [rng.choice(sorts) for _ in range(rng.randint(0, 3))]
        sig.declare_symbol(f"f{i}", params, rng.choice(sorts))
    return sig


def random_model(rng: random.Random, sig: Signature, max_carrier: int = 4, density: float = 0.85):
    carriers = {
        s.name: [f"e{i}" for i in range(rng.randint(1, max_carrier))]
        for s in sig.sorts
    }
    interps = {}
    for sym in sig.symbols:
        table = {}
        domains = [carriers[p.name] for p in sym.params]
        for combo in itertools.product(*domains):
            if rng.random() < density:
                table[combo] = [
                    label for label in carriers[sym.result.name] if rng.random() < 0.5
                ]
        interps[sym.name] = table
    return build_model(sig, carriers, interps)


def random_context(rng: random.Random, sig: Signature, max_len: int = 3, min_len: int = 0):
    return tuple(rng.choice(sig.sorts) for _ in range(rng.randint(min_len, max_len)))


def random_pattern(
    rng: random.Random,
    sig: Signature,
    sort,
    ex=(),
    mu=(),
    budget: int = 12,
    allow_free: bool = True,
    positive_only: bool = False,
    parities=None,
    mu_depth: int = 2,
) -> Pattern:
    ex, mu = tuple(ex), tuple(mu)
    if parities is None:
        parities = tuple(0 for _ in mu)
    assert budget >= 2

    leaves = ["top"]
    if allow_free:
        leaves += ["fevar", "fsvar"]
    e_hits = [i for i, s in enumerate(ex) if s == sort]
    if e_hits:
        leaves.append("bevar")
    s_hits = [
        i
        for i, s in enumerate(mu)
        if s == sort and (not positive_only or parities[i] % 2 == 0)
    ]
    if s_hits:
        leaves.append("bsvar")
    constants = [sym for sym in sig.symbols if sym.result == sort and not sym.params]
    if constants:
        leaves.append("const")

    choices = list(leaves)
    if budget >= 3:
        choices += ["not", "exists", "defined"] * 2
        if mu_depth > 0:
            choices.append("mu")
    if budget >= 5:
        choices += ["and"] * 2
    applicable = [
        sym
        for sym in sig.symbols
        if sym.result == sort and sym.params and budget >= 1 + 2 * len(sym.params)
    ]
    if applicable:
        choices += ["app"] * 2

    kind = rng.choice(choices)
    recur = dict(
        allow_free=allow_free,
        positive_only=positive_only,
        mu_depth=mu_depth,
    )
    if kind == "top":
        return mk_top(sort, ex, mu)
    if kind == "fevar":
        return mk_free_evar(ElemVar(rng.choice(VAR_NAMES), sort), ex, mu)
    if kind == "fsvar":
        return mk_free_svar(SetVar(rng.choice(VAR_NAMES).upper(), sort), ex, mu)
    if kind == "bevar":
        return mk_bound_evar(ex, mu, rng.choice(e_hits))
    if kind == "bsvar":
        return mk_bound_svar(ex, mu, rng.choice(s_hits))
    if kind == "const":
        return mk_app(sig, rng.choice(constants), [], ex, mu)
    if kind == "not":
        body = random_pattern(
            rng, sig, sort, ex, mu, budget - 1,
            parities=tuple(p + 1 for p in parities), **recur,
        )
        return mk_not(body)
    if kind == "exists":
        binder = rng.choice(sig.sorts)
        body = random_pattern(
            rng, sig, sort, (binder,) + ex, mu, budget - 1,
            parities=parities, **recur,
        )
        return mk_exists(binder, body)
    if kind == "defined":
        body = random_pattern(
            rng, sig, rng.choice(sig.sorts), ex, mu, budget - 1,
            parities=parities, **recur,
        )
        return mk_defined(sort, body)
    if kind == "mu":
        body = random_pattern(
            rng, sig, sort, ex, (sort,) + mu, budget - 1,
            allow_free=allow_free, positive_only=positive_only,
            parities=(0,) + parities, mu_depth=mu_depth - 1,
        )
        return mk_mu(body)
    if kind == "and":
        left_budget = rng.randint(2, budget - 3)
        left = random_pattern(
            rng, sig, sort, ex, mu, left_budget, parities=parities, **recur
        )
        right = random_pattern(
            rng, sig, sort, ex, mu, budget - 1 - left_budget,
            parities=parities, **recur,
        )
        return mk_and(left, right)
    if kind == "app":
        symbol = rng.choice(applicable)
        shares = _split_budget(rng, budget - 1, len(symbol.params))
        args = [
            random_pattern(rng, sig, param, ex, mu, share, parities=parities, **recur)
            for param, share in zip(symbol.params, shares)
        ]
        return mk_app(sig, symbol, args)
    raise AssertionError(kind)


def _split_budget(rng: random.Random, total: int, parts: int):
    shares = [2] * parts
    spare = total - 2 * parts
    for _ in range(spare):
        shares[rng.randrange(parts)] += 1
    return shares


def random_positive_mu(rng: random.Random, sig: Signature, budget: int = 10) -> Pattern:
    """A closed mu pattern in which every binder is positive."""
    sort = rng.choice(sig.sorts)
    body = random_pattern(
        rng, sig, sort, (), (sort,), budget,
        allow_free=False, positive_only=True, parities=(0,), mu_depth=1,
    )
    return mk_mu(body)


def random_valuation(rng: random.Random, model, pattern: Pattern) -> Valuation:
    """Bind every free variable of ``pattern`` to random model data."""
    evars, svars = free_vars(pattern)
    rho = Valuation.empty()
    for var in sorted(evars, key=lambda v: (v.name, v.sort.id)):
        rho = rho.update_evar(var, rng.choice(model.carrier(var.sort)))
    for var in sorted(svars, key=lambda v: (v.name, v.sort.id)):
        n = model.carrier_size(var.sort)
        rho = rho.update_svar(var, CarrierSet(var.sort, n, rng.randrange(1 << n)))
    return rho


def iter_nodes(p: Pattern):
    yield p
    if isinstance(p, App):
        for a in p.args:
            yield from iter_nodes(a)
    elif isinstance(p, And):
        yield from iter_nodes(p.left)
        yield from iter_nodes(p.right)
    elif isinstance(p, (Not, Exists, Mu, Defined)):
        yield from iter_nodes(p.body)
