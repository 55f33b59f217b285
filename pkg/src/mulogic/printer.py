"""Canonical concrete syntax for patterns.

Printing is core-syntax only: derived connectives were expanded at
construction time and print as their expansions.  Mu binders are printed
with their sort annotation so that any constructible pattern can be parsed
back without an expected sort, giving ``parse(print(p)) == p``.
"""

from __future__ import annotations

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
)


def print_pattern(p: Pattern) -> str:
    match p:
        case FreeEVar(var=var):
            return f"{var.name}:{var.sort.name}"
        case FreeSVar(var=var):
            return f"#{var.name}:{var.sort.name}"
        case BoundEVar(index=i):
            return f"b{i}"
        case BoundSVar(index=i):
            return f"B{i}"
        case App(symbol=symbol, args=args):
            return f"{symbol.name}({', '.join(print_pattern(a) for a in args)})"
        case Not(body=body):
            return f"\\not({print_pattern(body)})"
        case And(left=left, right=right):
            return f"\\and({print_pattern(left)}, {print_pattern(right)})"
        case Exists(binder_sort=b, body=body):
            return f"\\exists{{{b.name}}} {print_pattern(body)}"
        case Mu(body=body):
            return f"\\mu{{{p.sort.name}}} {print_pattern(body)}"
        case Defined(body=body):
            return f"\\ceil{{{p.sort.name}}}({print_pattern(body)})"
    raise TypeError(f"unexpected pattern node {p!r}")
