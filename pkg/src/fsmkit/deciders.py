"""Decision procedures built on the grammar and machine types."""

from __future__ import annotations

from .core import EMP, FsmError
from .grammars import CFG, RG, Grammar


def _only_accum_elems(rule, accum):
    # the lhs must be new and every rhs symbol already accumulated (ε-rhs passes)
    lhs = rule.lhs[0]
    return lhs not in accum and all(s in accum for s in (rule.rhs or (EMP,)))


def cfg_empty(g: Grammar) -> bool:
    """True iff the language of the cfg or rg ``g`` is empty.

    Accumulates Σ ∪ {ε} and then the left side of any rule whose right side
    lies entirely in the accumulator, until the start appears (non-empty) or
    nothing changes (empty). Seeding with ε is what makes ``S -> ε`` count
    as productive.
    """
    if g.kind not in (CFG, RG):
        raise FsmError(f"unsupported kind: emptiness is decided for cfg and rg, not {g.kind}")
    accum = set(g.sigma) | {EMP}
    while g.start not in accum:
        new = {r.lhs[0] for r in g.rules if _only_accum_elems(r, accum)}
        if not new:
            return True
        accum |= new
    return False
