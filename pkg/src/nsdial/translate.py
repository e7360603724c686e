"""The two formula translations into exists-st/forall-st normal form.

Each maps a formula to an existential tuple of witness variables, a universal
tuple of challenge variables, and an internal matrix. The herbrandised flavor
(Dst) carries sequence-typed witnesses combined by sequence application; the
uniform flavor (U) carries plain witnesses combined by ordinary application
and keeps its matrices free of disjunction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .ftypes import Arrow, FiniteType, N, Star, seqfn
from .formulas import (
    And,
    BoundedExists,
    BoundedForall,
    Eq,
    Exists,
    ExistsSt,
    Forall,
    ForallSt,
    Formula,
    Imp,
    In,
    Not,
    Or,
    St,
    all_names,
    check_formula,
    classify,
    desugar,
    free_vars,
    subst_formula,
)
from .terms import (
    App,
    NsdialError,
    Term,
    Var,
    ZERO,
    all_names as term_names,
    app,
    fresh_name,
    proj,
    seq_app_infer,
    seq_len,
)


class IllTypedInput(NsdialError):
    pass


class Flavor(Enum):
    DST = "dst"
    U = "u"


@dataclass(frozen=True)
class TranslatedFormula:
    exist_tuple: tuple[tuple[str, FiniteType], ...]
    univ_tuple: tuple[tuple[str, FiniteType], ...]
    matrix: Formula
    flavor: Flavor


class FreshNames:
    """Deterministic fresh-name supply: bare prefix first, then numbered.

    Issued names avoid every name in the source formula (so a witness can
    never be captured by an enclosing binder) plus everything issued or opened
    so far. Opened binders keep their source names unless those collide with
    free variables or dynamically taken names.
    """

    def __init__(self, free: set[str], source: set[str]):
        self.static = set(source)
        self.taken = set(free)

    def issue(self, prefix: str) -> str:
        name = fresh_name(prefix, self.static | self.taken)
        self.taken.add(name)
        return name

    def open(self, name: str) -> str | None:
        """Claim a binder name; None means the caller must rename via issue."""
        if name in self.taken:
            return None
        self.taken.add(name)
        return name


Tuple = tuple[tuple[str, FiniteType], ...]


def _bounded_all(bounds: list[tuple[str, FiniteType, Term]], body: Formula) -> Formula:
    """forall y in coll, index-encoded so the matrix stays decidable on grids.

    Each (name, elem type, collection) becomes forall i < |collection| with the
    i-th projection substituted for name.
    """
    out = body
    for name, ty, coll in reversed(bounds):
        i = fresh_name("i", all_names(out) | term_names(coll) | {name})
        out = BoundedForall(
            i,
            seq_len(ty, coll),
            subst_formula(out, name, proj(ty, coll, Var(i, N))),
        )
    return out


def bounded_exists(var: str, ty: FiniteType, coll: Term, body: Formula) -> Formula:
    """exists var in coll, index-encoded like _bounded_all."""
    i = fresh_name("i", all_names(body) | term_names(coll) | {var})
    return BoundedExists(
        i,
        seq_len(ty, coll),
        subst_formula(body, var, proj(ty, coll, Var(i, N))),
    )


def _seq_apply(fn_var: Var, args: list[Var]) -> Term:
    """Iterated sequence application of a seqfn-typed variable to argument variables."""
    out: Term = fn_var
    ty = fn_var.type
    for a in args:
        out = seq_app_infer(out, a, ty)
        assert isinstance(ty, Star) and isinstance(ty.element, Arrow)
        ty = ty.element.codomain
    return out


def dst_translate(formula: Formula) -> TranslatedFormula:
    """Herbrandised translation; every witness variable has sequence type."""
    return _translate(formula, Flavor.DST)


def u_translate(formula: Formula) -> TranslatedFormula:
    """Uniform translation; matrices are additionally disjunction-free."""
    return _translate(formula, Flavor.U)


def _translate(formula: Formula, flavor: Flavor) -> TranslatedFormula:
    try:
        check_formula(formula, free_vars(formula))
    except NsdialError as e:
        raise IllTypedInput(str(e)) from e
    fresh = FreshNames(set(free_vars(formula)), all_names(formula))
    if flavor is Flavor.DST:
        ex, un, m = _dst(desugar(formula), fresh)
    else:
        ex, un, m = _u(desugar(formula), fresh)
    m = desugar(m)
    tf = TranslatedFormula(tuple(ex), tuple(un), m, flavor)
    _check_invariants(tf)
    return tf


def _check_invariants(tf: TranslatedFormula) -> None:
    cl = classify(tf.matrix)
    assert cl.internal, "matrix must be internal"
    if tf.flavor is Flavor.DST:
        for _, ty in tf.exist_tuple:
            assert isinstance(ty, Star), f"dst witness not sequence-typed: {ty!r}"
    else:
        assert cl.or_free, "uniform matrix must be or-free"


def _shortcut(f: Formula, flavor: Flavor) -> bool:
    cl = classify(f)
    if not cl.internal:
        return False
    return cl.or_free if flavor is Flavor.U else True


# -- herbrandised clauses ----------------------------------------------------

def _dst(f: Formula, fr: FreshNames) -> tuple[list, list, Formula]:
    if _shortcut(f, Flavor.DST):
        return [], [], f

    if isinstance(f, St):
        s = fr.issue("s")
        return [(s, Star(f.type))], [], In(f.type, f.term, Var(s, Star(f.type)))

    if isinstance(f, (And, Or)):
        ex1, un1, m1 = _dst(f.left, fr)
        ex2, un2, m2 = _dst(f.right, fr)
        ctor = And if isinstance(f, And) else Or
        return ex1 + ex2, un1 + un2, ctor(m1, m2)

    if isinstance(f, Imp):
        ex1, un1, m1 = _dst(f.left, fr)
        ex2, un2, m2 = _dst(f.right, fr)
        s_types = [ty for _, ty in ex1]
        fns: list[tuple[str, FiniteType]] = []
        for name, ty in ex2:
            fn = fr.issue("T")
            fns.append((fn, seqfn(s_types, ty)))
        colls: list[tuple[str, FiniteType]] = []
        for name, ty in un1:
            c = fr.issue("Y")
            colls.append((c, seqfn(s_types + [t for _, t in un2], Star(ty))))
        s_vars = [Var(n, t) for n, t in ex1]
        v_vars = [Var(n, t) for n, t in un2]
        conclusion = m2
        for (old, _), (fn, fnty) in zip(ex2, fns):
            conclusion = subst_formula(conclusion, old, _seq_apply(Var(fn, fnty), s_vars))
        bounds = [
            (old, ty, _seq_apply(Var(c, cty), s_vars + v_vars))
            for (old, ty), (c, cty) in zip(un1, colls)
        ]
        matrix = Imp(_bounded_all(bounds, m1), conclusion)
        return fns + colls, ex1 + un2, matrix

    if isinstance(f, Exists):
        ex, un, m = _dst(f.body, fr)
        seqs: list[tuple[str, FiniteType]] = []
        bounds = []
        for name, ty in un:
            t = fr.issue("t")
            seqs.append((t, Star(ty)))
            bounds.append((name, ty, Var(t, Star(ty))))
        return ex, seqs, Exists(f.var, f.var_type, _bounded_all(bounds, m))

    if isinstance(f, Forall):
        ex, un, m = _dst(f.body, fr)
        return ex, un, Forall(f.var, f.var_type, m)

    if isinstance(f, ExistsSt):
        ex, un, m = _dst(f.body, fr)
        u = fr.issue("u")
        u_ty = Star(f.var_type)
        seqs: list[tuple[str, FiniteType]] = []
        bounds = []
        for name, ty in un:
            t = fr.issue("t")
            seqs.append((t, Star(ty)))
            bounds.append((name, ty, Var(t, Star(ty))))
        matrix = bounded_exists(
            f.var, f.var_type, Var(u, u_ty), _bounded_all(bounds, m)
        )
        return [(u, u_ty)] + ex, seqs, matrix

    if isinstance(f, ForallSt):
        z, z_ty, inner = _open_binder(f, fr)
        ex, un, m = _dst(inner, fr)
        lifts: list[tuple[str, FiniteType]] = []
        for name, ty in ex:
            s = fr.issue("S")
            lift_ty = Star(Arrow(z_ty, ty))
            lifts.append((s, lift_ty))
            m = subst_formula(m, name, seq_app_infer(Var(s, lift_ty), Var(z, z_ty), lift_ty))
        return lifts, un + [(z, z_ty)], m

    raise AssertionError(f"untranslatable node {f!r}")


# -- uniform clauses ---------------------------------------------------------

def _u(f: Formula, fr: FreshNames) -> tuple[list, list, Formula]:
    if _shortcut(f, Flavor.U):
        return [], [], f

    if isinstance(f, St):
        y = fr.issue("y")
        return [(y, f.type)], [], Eq(f.type, Var(y, f.type), f.term)

    if isinstance(f, And):
        ex1, un1, m1 = _u(f.left, fr)
        ex2, un2, m2 = _u(f.right, fr)
        return ex1 + ex2, un1 + un2, And(m1, m2)

    if isinstance(f, Or):
        ex1, un1, m1 = _u(f.left, fr)
        ex2, un2, m2 = _u(f.right, fr)
        z = fr.issue("z")
        zero_eq = Eq(N, Var(z, N), ZERO)
        matrix = And(Imp(zero_eq, m1), Imp(Not(zero_eq), m2))
        return [(z, N)] + ex1 + ex2, un1 + un2, matrix

    if isinstance(f, Imp):
        ex1, un1, m1 = _u(f.left, fr)
        ex2, un2, m2 = _u(f.right, fr)
        x_types = [ty for _, ty in ex1]
        fns: list[tuple[str, FiniteType]] = []
        for name, ty in ex2:
            fn = fr.issue("U")
            fns.append((fn, _curry(x_types, ty)))
        colls: list[tuple[str, FiniteType]] = []
        for name, ty in un1:
            c = fr.issue("Y")
            colls.append((c, _curry(x_types + [t for _, t in un2], Star(ty))))
        x_vars = [Var(n, t) for n, t in ex1]
        v_vars = [Var(n, t) for n, t in un2]
        conclusion = m2
        for (old, _), (fn, fnty) in zip(ex2, fns):
            conclusion = subst_formula(conclusion, old, app(Var(fn, fnty), *x_vars))
        bounds = [
            (old, ty, app(Var(c, cty), *(x_vars + v_vars)))
            for (old, ty), (c, cty) in zip(un1, colls)
        ]
        matrix = Imp(_bounded_all(bounds, m1), conclusion)
        return fns + colls, ex1 + un2, matrix

    if isinstance(f, Exists):
        ex, un, m = _u(f.body, fr)
        seqs: list[tuple[str, FiniteType]] = []
        bounds = []
        for name, ty in un:
            t = fr.issue("t")
            seqs.append((t, Star(ty)))
            bounds.append((name, ty, Var(t, Star(ty))))
        return ex, seqs, Exists(f.var, f.var_type, _bounded_all(bounds, m))

    if isinstance(f, Forall):
        ex, un, m = _u(f.body, fr)
        return ex, un, Forall(f.var, f.var_type, m)

    if isinstance(f, ExistsSt):
        ex, un, m = _u(f.body, fr)
        x = fr.issue(f.var)
        m = subst_formula(m, f.var, Var(x, f.var_type))
        return [(x, f.var_type)] + ex, un, m

    if isinstance(f, ForallSt):
        z, z_ty, inner = _open_binder(f, fr)
        ex, un, m = _u(inner, fr)
        lifts: list[tuple[str, FiniteType]] = []
        for name, ty in ex:
            xfn = fr.issue("X")
            lift_ty = Arrow(z_ty, ty)
            lifts.append((xfn, lift_ty))
            m = subst_formula(m, name, App(Var(xfn, lift_ty), Var(z, z_ty)))
        return lifts, un + [(z, z_ty)], m

    raise AssertionError(f"untranslatable node {f!r}")


def _curry(domains: list[FiniteType], result: FiniteType) -> FiniteType:
    out = result
    for d in reversed(domains):
        out = Arrow(d, out)
    return out


def _open_binder(f, fr: FreshNames) -> tuple[str, FiniteType, Formula]:
    """Binder name for a universal-st clause, renamed if it collides with taken names."""
    kept = fr.open(f.var)
    if kept is not None:
        return kept, f.var_type, f.body
    z = fr.issue(f.var)
    return z, f.var_type, subst_formula(f.body, f.var, Var(z, f.var_type))
