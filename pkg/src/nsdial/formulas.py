"""Formulas of arithmetic with internal and external quantifiers and a standardness predicate."""

from __future__ import annotations

from dataclasses import dataclass

from .ftypes import Arrow, FiniteType, Ground, N, Star
from .terms import (
    App,
    Term,
    TypeMismatch,
    Var,
    ZERO,
    all_names as term_names,
    fresh_name,
    free_vars as term_free_vars,
    numeral,
    proj,
    seq_len,
    substitute as term_subst,
    synth_type,
)
from .terms import alpha_eq as term_alpha_eq


@dataclass(frozen=True)
class Eq:
    type: FiniteType
    left: Term
    right: Term


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    var_type: FiniteType
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    var_type: FiniteType
    body: "Formula"


@dataclass(frozen=True)
class St:
    type: FiniteType
    term: Term


@dataclass(frozen=True)
class ForallSt:
    var: str
    var_type: FiniteType
    body: "Formula"


@dataclass(frozen=True)
class ExistsSt:
    var: str
    var_type: FiniteType
    body: "Formula"


@dataclass(frozen=True)
class BoundedForall:
    """forall i < bound, with i of ground type."""

    var: str
    bound: Term
    body: "Formula"


@dataclass(frozen=True)
class BoundedExists:
    var: str
    bound: Term
    body: "Formula"


# Sugar nodes, removed by desugar.
@dataclass(frozen=True)
class In:
    type: FiniteType  # element type
    elem: Term
    seq: Term


@dataclass(frozen=True)
class SubsetEq:
    type: FiniteType  # element type of the underlying sequences
    left: Term
    right: Term


@dataclass(frozen=True)
class Hyper:
    type: FiniteType  # element type
    seq: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


Formula = (
    Eq | And | Or | Imp | Forall | Exists | St | ForallSt | ExistsSt
    | BoundedForall | BoundedExists | In | SubsetEq | Hyper | Not
)

BINDERS = (Forall, Exists, ForallSt, ExistsSt)


def bot() -> Formula:
    return Eq(N, ZERO, numeral(1))


def is_bot(f: Formula) -> bool:
    return f == bot()


@dataclass(frozen=True)
class Classification:
    internal: bool
    or_free: bool


def classify(formula: Formula) -> Classification:
    """Internal: no standardness predicate or external quantifier, including via sugar."""
    internal = True
    or_free = True

    def go(f: Formula) -> None:
        nonlocal internal, or_free
        if isinstance(f, (St, ForallSt, ExistsSt, Hyper)):
            internal = False
        if isinstance(f, Or):
            or_free = False
        for child in _children(f):
            go(child)

    go(formula)
    return Classification(internal, or_free)


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or, Imp)):
        return (f.left, f.right)
    if isinstance(f, BINDERS):
        return (f.body,)
    if isinstance(f, (BoundedForall, BoundedExists)):
        return (f.body,)
    if isinstance(f, Not):
        return (f.body,)
    return ()


def free_vars(formula: Formula) -> dict[str, FiniteType]:
    out: dict[str, FiniteType] = {}

    def add_term(t: Term, bound: dict[str, FiniteType]) -> None:
        for name, ty in term_free_vars(t).items():
            if name not in bound:
                out[name] = ty

    def go(f: Formula, bound: dict[str, FiniteType]) -> None:
        if isinstance(f, Eq):
            add_term(f.left, bound)
            add_term(f.right, bound)
        elif isinstance(f, (And, Or, Imp)):
            go(f.left, bound)
            go(f.right, bound)
        elif isinstance(f, BINDERS):
            go(f.body, {**bound, f.var: f.var_type})
        elif isinstance(f, (BoundedForall, BoundedExists)):
            add_term(f.bound, bound)
            go(f.body, {**bound, f.var: N})
        elif isinstance(f, St):
            add_term(f.term, bound)
        elif isinstance(f, In):
            add_term(f.elem, bound)
            add_term(f.seq, bound)
        elif isinstance(f, SubsetEq):
            add_term(f.left, bound)
            add_term(f.right, bound)
        elif isinstance(f, Hyper):
            add_term(f.seq, bound)
        elif isinstance(f, Not):
            go(f.body, bound)
        else:
            raise AssertionError(f)

    go(formula, {})
    return out


def all_names(formula: Formula) -> set[str]:
    out: set[str] = set()

    def go(f: Formula) -> None:
        if isinstance(f, Eq):
            out.update(term_names(f.left) | term_names(f.right))
        elif isinstance(f, (And, Or, Imp)):
            go(f.left)
            go(f.right)
        elif isinstance(f, BINDERS):
            out.add(f.var)
            go(f.body)
        elif isinstance(f, (BoundedForall, BoundedExists)):
            out.add(f.var)
            out.update(term_names(f.bound))
            go(f.body)
        elif isinstance(f, St):
            out.update(term_names(f.term))
        elif isinstance(f, In):
            out.update(term_names(f.elem) | term_names(f.seq))
        elif isinstance(f, SubsetEq):
            out.update(term_names(f.left) | term_names(f.right))
        elif isinstance(f, Hyper):
            out.update(term_names(f.seq))
        elif isinstance(f, Not):
            go(f.body)

    go(formula)
    return out


def map_terms(f: Formula, fn) -> Formula:
    """Rebuild the formula applying fn to every embedded term (binders untouched)."""
    if isinstance(f, Eq):
        return Eq(f.type, fn(f.left), fn(f.right))
    if isinstance(f, And):
        return And(map_terms(f.left, fn), map_terms(f.right, fn))
    if isinstance(f, Or):
        return Or(map_terms(f.left, fn), map_terms(f.right, fn))
    if isinstance(f, Imp):
        return Imp(map_terms(f.left, fn), map_terms(f.right, fn))
    if isinstance(f, Not):
        return Not(map_terms(f.body, fn))
    if isinstance(f, St):
        return St(f.type, fn(f.term))
    if isinstance(f, In):
        return In(f.type, fn(f.elem), fn(f.seq))
    if isinstance(f, SubsetEq):
        return SubsetEq(f.type, fn(f.left), fn(f.right))
    if isinstance(f, Hyper):
        return Hyper(f.type, fn(f.seq))
    raise AssertionError(f"map_terms on binder {f!r}")


def subst_formula(formula: Formula, var: str, term: Term) -> Formula:
    """Capture-avoiding substitution of a term for a free variable."""
    repl_free = set(term_free_vars(term))

    def go(f: Formula) -> Formula:
        if isinstance(f, (Eq, St, In, SubsetEq, Hyper, Not, And, Or, Imp)):
            if isinstance(f, (And, Or, Imp)):
                ctor = type(f)
                return ctor(go(f.left), go(f.right))
            if isinstance(f, Not):
                return Not(go(f.body))
            return map_terms(f, lambda t: term_subst(t, var, term))
        if isinstance(f, BINDERS):
            ctor = type(f)
            if f.var == var:
                return f
            if f.var in repl_free and var in free_vars(f.body):
                new = fresh_name(f.var, repl_free | all_names(f.body) | {var})
                body = subst_formula(f.body, f.var, Var(new, f.var_type))
                return ctor(new, f.var_type, go(body))
            return ctor(f.var, f.var_type, go(f.body))
        if isinstance(f, (BoundedForall, BoundedExists)):
            ctor = type(f)
            bound = term_subst(f.bound, var, term)
            if f.var == var:
                return ctor(f.var, bound, f.body)
            if f.var in repl_free and var in free_vars(f.body):
                new = fresh_name(f.var, repl_free | all_names(f.body) | {var})
                body = subst_formula(f.body, f.var, Var(new, N))
                return ctor(new, bound, go(body))
            return ctor(f.var, bound, go(f.body))
        raise AssertionError(f)

    return go(formula)


def _fresh_for(f: Formula, base: str, extra: set[str] = frozenset()) -> str:
    return fresh_name(base, all_names(f) | set(extra))


def desugar(formula: Formula) -> Formula:
    """Expand In/SubsetEq/Hyper/Not sugar; idempotent."""

    def go(f: Formula) -> Formula:
        if isinstance(f, Eq):
            return f
        if isinstance(f, (And, Or, Imp)):
            return type(f)(go(f.left), go(f.right))
        if isinstance(f, BINDERS):
            return type(f)(f.var, f.var_type, go(f.body))
        if isinstance(f, (BoundedForall, BoundedExists)):
            return type(f)(f.var, f.bound, go(f.body))
        if isinstance(f, St):
            return f
        if isinstance(f, Not):
            return Imp(go(f.body), bot())
        if isinstance(f, In):
            return in_formula(f.type, f.elem, f.seq)
        if isinstance(f, Hyper):
            x = _fresh_for(f, "x")
            return ForallSt(x, f.type, in_formula(f.type, Var(x, f.type), f.seq))
        if isinstance(f, SubsetEq):
            left_ty = synth_type(f.left)
            if isinstance(left_ty, Star):
                x = _fresh_for(f, "x")
                xv = Var(x, f.type)
                return Forall(
                    x,
                    f.type,
                    Imp(in_formula(f.type, xv, f.left), in_formula(f.type, xv, f.right)),
                )
            if isinstance(left_ty, Arrow) and isinstance(left_ty.codomain, Star):
                x = _fresh_for(f, "x")
                xv = Var(x, left_ty.domain)
                return go(
                    Forall(
                        x,
                        left_ty.domain,
                        SubsetEq(f.type, App(f.left, xv), App(f.right, xv)),
                    )
                )
            raise TypeMismatch(f"subseteq over {left_ty!r}")
        raise AssertionError(f)

    return go(formula)


def in_formula(elem_type: FiniteType, elem: Term, seq: Term) -> Formula:
    """Membership expanded: exists i < |s|, elem = s_i."""
    avoid = set(term_names(elem)) | set(term_names(seq))
    i = fresh_name("i", avoid)
    return BoundedExists(
        i,
        seq_len(elem_type, seq),
        Eq(elem_type, elem, proj(elem_type, seq, Var(i, N))),
    )


def formula_alpha_eq(f: Formula, g: Formula) -> bool:
    """Alpha equality of formulas, pairing binders positionally."""

    def go(a: Formula, b: Formula, depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Eq):
            return a.type == b.type and term_alpha_eq(a.left, b.left) and term_alpha_eq(a.right, b.right)
        if isinstance(a, (And, Or, Imp)):
            return go(a.left, b.left, depth) and go(a.right, b.right, depth)
        if isinstance(a, Not):
            return go(a.body, b.body, depth)
        if isinstance(a, St):
            return a.type == b.type and term_alpha_eq(a.term, b.term)
        if isinstance(a, In):
            return a.type == b.type and term_alpha_eq(a.elem, b.elem) and term_alpha_eq(a.seq, b.seq)
        if isinstance(a, SubsetEq):
            return a.type == b.type and term_alpha_eq(a.left, b.left) and term_alpha_eq(a.right, b.right)
        if isinstance(a, Hyper):
            return a.type == b.type and term_alpha_eq(a.seq, b.seq)
        if isinstance(a, BINDERS):
            if a.var_type != b.var_type:
                return False
            probe = f"@{depth}"
            pa = subst_formula(a.body, a.var, Var(probe, a.var_type))
            pb = subst_formula(b.body, b.var, Var(probe, b.var_type))
            return go(pa, pb, depth + 1)
        if isinstance(a, (BoundedForall, BoundedExists)):
            if not term_alpha_eq(a.bound, b.bound):
                return False
            probe = f"@{depth}"
            pa = subst_formula(a.body, a.var, Var(probe, N))
            pb = subst_formula(b.body, b.var, Var(probe, N))
            return go(pa, pb, depth + 1)
        raise AssertionError(a)

    return go(f, g, 0)


def check_formula(formula: Formula, context: dict[str, FiniteType] | None = None) -> None:
    """Check that all embedded terms are well typed and Eq sides share the annotation."""
    env = dict(context) if context else {}

    def expect(t: Term, ty: FiniteType, scope: dict[str, FiniteType], what: str) -> None:
        from .terms import IllTyped, type_check

        found = type_check(t, scope)
        if found != ty:
            raise IllTyped(what, ty, found)

    def go(f: Formula, scope: dict[str, FiniteType]) -> None:
        if isinstance(f, Eq):
            expect(f.left, f.type, scope, "eq left")
            expect(f.right, f.type, scope, "eq right")
        elif isinstance(f, (And, Or, Imp)):
            go(f.left, scope)
            go(f.right, scope)
        elif isinstance(f, Not):
            go(f.body, scope)
        elif isinstance(f, BINDERS):
            go(f.body, {**scope, f.var: f.var_type})
        elif isinstance(f, (BoundedForall, BoundedExists)):
            expect(f.bound, N, scope, "bound")
            go(f.body, {**scope, f.var: N})
        elif isinstance(f, St):
            expect(f.term, f.type, scope, "st argument")
        elif isinstance(f, In):
            expect(f.elem, f.type, scope, "in element")
            expect(f.seq, Star(f.type), scope, "in sequence")
        elif isinstance(f, SubsetEq):
            lt = type_check(f.left, scope)
            rt = type_check(f.right, scope)
            if lt != rt:
                raise TypeMismatch(f"subseteq sides {lt!r} vs {rt!r}")
        elif isinstance(f, Hyper):
            expect(f.seq, Star(f.type), scope, "hyper sequence")
        else:
            raise AssertionError(f)

    go(formula, env)
