"""Formula-to-formula translations between the robust and classical logics."""
from __future__ import annotations

from .formula import (
    FF, TT, Always, And, Atom, Box, Diamond, Eventually, Formula, GConcat, GProp,
    GStar, GTest, Guard, GUnion, Implies, LogicId, Not, Or, PromptEventually,
    check_fragment,
)
from .truth import TruthValue

TT_STAR = GStar(GProp(TT()))


def lemma1_reduce(phi: Formula, beta: TruthValue) -> Formula:
    """Prompt-LTL formula true on (w, k) iff the robust value of phi is at least beta.

    Every operator except G commutes with taking the i-th bit, so the map is
    homomorphic; G at level i becomes G, F G, G F or F of the level-i image.
    """
    check_fragment(phi, LogicId.RPROMPT_LTL)
    beta = TruthValue(beta)
    if beta == TruthValue.V0000:
        return TT()
    return _level(phi, beta.level)


def _level(phi: Formula, i: int) -> Formula:
    if isinstance(phi, (Atom, TT, FF, Not)):
        return phi
    if isinstance(phi, And):
        return And(_level(phi.left, i), _level(phi.right, i))
    if isinstance(phi, Or):
        return Or(_level(phi.left, i), _level(phi.right, i))
    if isinstance(phi, Eventually):
        return Eventually(_level(phi.arg, i))
    if isinstance(phi, PromptEventually):
        return PromptEventually(_level(phi.arg, i))
    if isinstance(phi, Always):
        inner = _level(phi.arg, i)
        if i == 1:
            return Always(inner)
        if i == 2:
            return Eventually(Always(inner))
        if i == 3:
            return Always(Eventually(inner))
        return Eventually(inner)
    raise TypeError(f"unexpected node {phi!r}")


def embed_rltl(phi: Formula) -> Formula:
    """rLTL(G,F) into rLDL: G becomes [tt*], F becomes <tt*>."""
    check_fragment(phi, LogicId.RLTL)
    return _embed_rltl(phi)


def _embed_rltl(phi: Formula) -> Formula:
    if isinstance(phi, (Atom, TT, FF)):
        return phi
    if isinstance(phi, Not):
        return Not(_embed_rltl(phi.arg))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(_embed_rltl(phi.left), _embed_rltl(phi.right))
    if isinstance(phi, Always):
        return Box(TT_STAR, _embed_rltl(phi.arg))
    if isinstance(phi, Eventually):
        return Diamond(TT_STAR, _embed_rltl(phi.arg))
    raise TypeError(f"unexpected node {phi!r}")


def embed_ldl(phi: Formula) -> Formula:
    """LDL into rLDL with ``a -> b`` rewritten to ``!a | b`` everywhere.

    The first bit of the robust value of the result equals the classical
    truth value of ``phi``.  Robust implication compares whole values, so it
    cannot be kept as is.
    """
    check_fragment(phi, LogicId.LDL)
    return _drop_implications(phi)


def _drop_implications(phi: Formula) -> Formula:
    if isinstance(phi, (Atom, TT, FF)):
        return phi
    if isinstance(phi, Not):
        return Not(_drop_implications(phi.arg))
    if isinstance(phi, Implies):
        return Or(Not(_drop_implications(phi.left)), _drop_implications(phi.right))
    if isinstance(phi, (And, Or)):
        return type(phi)(_drop_implications(phi.left), _drop_implications(phi.right))
    if isinstance(phi, (Diamond, Box)):
        return type(phi)(_guard_map(phi.regex), _drop_implications(phi.arg))
    raise TypeError(f"unexpected node {phi!r}")


def _guard_map(r: Guard) -> Guard:
    if isinstance(r, GProp):
        return r
    if isinstance(r, GTest):
        return GTest(_drop_implications(r.formula))
    if isinstance(r, (GUnion, GConcat)):
        return type(r)(_guard_map(r.left), _guard_map(r.right))
    if isinstance(r, GStar):
        return GStar(_guard_map(r.arg))
    raise TypeError(f"not a guard: {r!r}")


def limit_formula(phi: Formula) -> Formula:
    """Replace every Fp by F; the result bounds phi's value from above for all k."""
    if isinstance(phi, (Atom, TT, FF, Not)):
        return phi
    if isinstance(phi, (And, Or)):
        return type(phi)(limit_formula(phi.left), limit_formula(phi.right))
    if isinstance(phi, (Eventually, PromptEventually)):
        return Eventually(limit_formula(phi.arg))
    if isinstance(phi, Always):
        return Always(limit_formula(phi.arg))
    raise TypeError(f"unexpected node {phi!r}")
