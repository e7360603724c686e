"""The fixed axiom-schema catalogue of the two proof systems.

Each schema has a builder that constructs the instance formula from its
parameters; construction validates all side conditions, so a stored instance
is well formed by construction and re-checkable.
"""

from __future__ import annotations

from enum import Enum

from .ftypes import Arrow, FiniteType, N, Star
from .formulas import (
    And,
    Eq,
    Exists,
    ExistsSt,
    Forall,
    ForallSt,
    Formula,
    Hyper,
    Imp,
    In,
    Not,
    Or,
    St,
    bot,
    check_formula,
    classify,
    desugar,
    free_vars,
    subst_formula,
)
from .reduce import normalize
from .terms import (
    App,
    NsdialError,
    Term,
    Var,
    alpha_eq,
    cons,
    free_vars as term_free_vars,
    numeral,
    seq_app,
    synth_type,
    type_check,
)
from .translate import Flavor


class BadInstantiation(NsdialError):
    def __init__(self, schema, reason: str):
        super().__init__(f"bad instantiation of {schema}: {reason}")
        self.schema = schema
        self.reason = reason


class FlavorViolation(NsdialError):
    pass


class Schema(Enum):
    K = "k"
    S = "s"
    AND_INTRO = "and-intro"
    AND_ELIM_L = "and-elim-l"
    AND_ELIM_R = "and-elim-r"
    OR_INTRO_L = "or-intro-l"
    OR_INTRO_R = "or-intro-r"
    OR_ELIM = "or-elim"
    EX_FALSO = "ex-falso"
    FORALL_INST = "forall-inst"
    EXISTS_INTRO = "exists-intro"
    EQ_REFL = "eq-refl"
    EQ_SYM = "eq-sym"
    EQ_TRANS = "eq-trans"
    EQ_CONG = "eq-cong"
    DEFEQ = "defeq"
    SUCC_NONZERO = "succ-nonzero"
    SUCC_INJ = "succ-inj"
    SEQ_AXIOM = "seq-axiom"
    EXTENSIONALITY = "extensionality"
    IA = "ia"
    FORALLST_ELIM = "forallst-elim"
    FORALLST_INTRO = "forallst-intro"
    EXISTSST_ELIM = "existsst-elim"
    EXISTSST_INTRO = "existsst-intro"
    ST_EXT = "st-ext"
    ST_CLOSED = "st-closed"
    ST_APP = "st-app"
    OS_STAR = "os-star"
    US_STAR = "us-star"
    NCR = "ncr"
    HAC_ST = "hac-st"
    HIP_FORALLST = "hip-forallst"
    NU = "nu"
    AC_ST = "ac-st"
    IP_FORALLST = "ip-forallst"
    DELTA = "delta"


DST_ONLY = {Schema.NCR, Schema.HAC_ST, Schema.HIP_FORALLST}
U_ONLY = {Schema.NU, Schema.AC_ST, Schema.IP_FORALLST}


def _require(cond: bool, schema: Schema, reason: str) -> None:
    if not cond:
        raise BadInstantiation(schema, reason)


def _require_internal(f: Formula, schema: Schema, flavor: Flavor, what: str) -> None:
    cl = classify(desugar(f))
    if not cl.internal:
        raise FlavorViolation(f"{schema.value}: {what} must be internal")
    if flavor is Flavor.U and not cl.or_free:
        raise FlavorViolation(f"{schema.value}: {what} must be or-free in the uniform system")


def build_axiom(schema: Schema, params: dict, flavor: Flavor) -> Formula:
    """Instance formula for the schema, validating all side conditions."""
    if schema in DST_ONLY and flavor is not Flavor.DST:
        raise FlavorViolation(f"{schema.value} belongs to the herbrandised system")
    if schema in U_ONLY and flavor is not Flavor.U:
        raise FlavorViolation(f"{schema.value} belongs to the uniform system")
    f = _build(schema, params, flavor)
    check_formula(f, free_vars(f))
    return f


def _build(schema: Schema, p: dict, flavor: Flavor) -> Formula:
    if schema is Schema.K:
        return Imp(p["a"], Imp(p["b"], p["a"]))
    if schema is Schema.S:
        a, b, c = p["a"], p["b"], p["c"]
        return Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c)))
    if schema is Schema.AND_INTRO:
        return Imp(p["a"], Imp(p["b"], And(p["a"], p["b"])))
    if schema is Schema.AND_ELIM_L:
        return Imp(And(p["a"], p["b"]), p["a"])
    if schema is Schema.AND_ELIM_R:
        return Imp(And(p["a"], p["b"]), p["b"])
    if schema is Schema.OR_INTRO_L:
        return Imp(p["a"], Or(p["a"], p["b"]))
    if schema is Schema.OR_INTRO_R:
        return Imp(p["b"], Or(p["a"], p["b"]))
    if schema is Schema.OR_ELIM:
        a, b, c = p["a"], p["b"], p["c"]
        return Imp(Imp(a, c), Imp(Imp(b, c), Imp(Or(a, b), c)))
    if schema is Schema.EX_FALSO:
        return Imp(bot(), p["a"])

    if schema is Schema.FORALL_INST:
        z, ty, body, b = p["var"], p["var_type"], p["body"], p["term"]
        _require(synth_type(b) == ty, schema, "witness type mismatch")
        return Imp(Forall(z, ty, body), subst_formula(body, z, b))
    if schema is Schema.EXISTS_INTRO:
        z, ty, body, b = p["var"], p["var_type"], p["body"], p["term"]
        _require(synth_type(b) == ty, schema, "witness type mismatch")
        return Imp(subst_formula(body, z, b), Exists(z, ty, body))

    if schema is Schema.EQ_REFL:
        return Eq(p["type"], p["t"], p["t"])
    if schema is Schema.EQ_SYM:
        ty, t, u = p["type"], p["t"], p["u"]
        return Imp(Eq(ty, t, u), Eq(ty, u, t))
    if schema is Schema.EQ_TRANS:
        ty, t, u, v = p["type"], p["t"], p["u"], p["v"]
        return Imp(Eq(ty, t, u), Imp(Eq(ty, u, v), Eq(ty, t, v)))
    if schema is Schema.EQ_CONG:
        ty, res, fn, t, u = p["type"], p["result_type"], p["fn"], p["t"], p["u"]
        return Imp(Eq(ty, t, u), Eq(res, App(fn, t), App(fn, u)))
    if schema is Schema.DEFEQ:
        ty, t, u = p["type"], p["t"], p["u"]
        _require(alpha_eq(normalize(t), normalize(u)), schema,
                 "sides do not share a normal form")
        return Eq(ty, t, u)

    if schema is Schema.SUCC_NONZERO:
        from .terms import SUCC, ZERO

        return Imp(Eq(N, App(SUCC, p["t"]), ZERO), bot())
    if schema is Schema.SUCC_INJ:
        from .terms import SUCC

        t, u = p["t"], p["u"]
        return Imp(Eq(N, App(SUCC, t), App(SUCC, u)), Eq(N, t, u))

    if schema is Schema.SEQ_AXIOM:
        ty = p["type"]
        s, x, sp = Var("s", Star(ty)), Var("x", ty), Var("sp", Star(ty))
        is_nil = Eq(Star(ty), s, _nil(ty))
        is_cons = Exists("x", ty, Exists("sp", Star(ty), Eq(Star(ty), s, cons(ty, x, sp))))
        if flavor is Flavor.DST:
            return Forall("s", Star(ty), Or(is_nil, is_cons))
        z = Var("z", N)
        split = And(Imp(Eq(N, z, numeral(0)), is_nil), Imp(Not(Eq(N, z, numeral(0))), is_cons))
        return Forall("s", Star(ty), Exists("z", N, split))

    if schema is Schema.EXTENSIONALITY:
        dom, cod = p["domain"], p["codomain"]
        fun = Arrow(dom, cod)
        f, g, x = Var("f", fun), Var("g", fun), Var("x", dom)
        pointwise = Forall("x", dom, Eq(cod, App(f, x), App(g, x)))
        both = And(Imp(Eq(fun, f, g), pointwise), Imp(pointwise, Eq(fun, f, g)))
        return Forall("f", fun, Forall("g", fun, both))

    if schema is Schema.IA:
        n, body = p["var"], p["body"]
        _require_internal(body, schema, flavor, "induction formula")
        from .terms import SUCC, ZERO

        base = subst_formula(body, n, ZERO)
        step = Forall(n, N, Imp(body, subst_formula(body, n, App(SUCC, Var(n, N)))))
        return Imp(And(base, step), Forall(n, N, body))

    if schema is Schema.FORALLST_ELIM:
        x, ty, body = p["var"], p["var_type"], p["body"]
        return Imp(ForallSt(x, ty, body), Forall(x, ty, Imp(St(ty, Var(x, ty)), body)))
    if schema is Schema.FORALLST_INTRO:
        x, ty, body = p["var"], p["var_type"], p["body"]
        return Imp(Forall(x, ty, Imp(St(ty, Var(x, ty)), body)), ForallSt(x, ty, body))
    if schema is Schema.EXISTSST_ELIM:
        x, ty, body = p["var"], p["var_type"], p["body"]
        return Imp(ExistsSt(x, ty, body), Exists(x, ty, And(St(ty, Var(x, ty)), body)))
    if schema is Schema.EXISTSST_INTRO:
        x, ty, body = p["var"], p["var_type"], p["body"]
        return Imp(Exists(x, ty, And(St(ty, Var(x, ty)), body)), ExistsSt(x, ty, body))

    if schema is Schema.ST_EXT:
        ty, x, y = p["type"], p["x"], p["y"]
        return Imp(And(St(ty, x), Eq(ty, x, y)), St(ty, y))
    if schema is Schema.ST_CLOSED:
        ty, a = p["type"], p["term"]
        _require(not term_free_vars(a), schema, "term must be closed")
        _require(type_check(a) == ty, schema, "type annotation mismatch")
        return St(ty, a)
    if schema is Schema.ST_APP:
        dom, cod, fn, arg = p["domain"], p["codomain"], p["fn"], p["arg"]
        return Imp(
            And(St(Arrow(dom, cod), fn), St(dom, arg)),
            St(cod, App(fn, arg)),
        )

    if schema is Schema.OS_STAR:
        ty, s, body = p["type"], p["var"], p["body"]
        _require_internal(body, schema, flavor, "overspill formula")
        sv = Var(s, Star(ty))
        return Imp(
            ForallSt(s, Star(ty), body),
            Exists(s, Star(ty), And(Hyper(ty, sv), body)),
        )
    if schema is Schema.US_STAR:
        ty, s, body = p["type"], p["var"], p["body"]
        _require_internal(body, schema, flavor, "underspill formula")
        sv = Var(s, Star(ty))
        return Imp(
            Forall(s, Star(ty), Imp(Hyper(ty, sv), body)),
            ExistsSt(s, Star(ty), body),
        )

    if schema is Schema.NCR:
        sx, ty_y, x, y, body = p["x_type"], p["y_type"], p["x"], p["y"], p["body"]
        s = _fresh_binder("s", body)
        sv = Var(s, Star(sx))
        bounded = Exists(x, sx, And(In(sx, Var(x, sx), sv), body))
        return Imp(
            Forall(y, ty_y, ExistsSt(x, sx, body)),
            ExistsSt(s, Star(sx), Forall(y, ty_y, bounded)),
        )
    if schema is Schema.HAC_ST:
        sx, sy, x, y, body = p["x_type"], p["y_type"], p["x"], p["y"], p["body"]
        fname = _fresh_binder("f", body)
        f_ty = Star(Arrow(sx, Star(sy)))
        fx = seq_app(sx, sy, Var(fname, f_ty), Var(x, sx))
        bounded = Exists(y, sy, And(In(sy, Var(y, sy), fx), body))
        return Imp(
            ForallSt(x, sx, ExistsSt(y, sy, body)),
            ExistsSt(fname, f_ty, ForallSt(x, sx, bounded)),
        )
    if schema is Schema.HIP_FORALLST:
        sx, sy, x, prem, y, concl = (
            p["x_type"], p["y_type"], p["x"], p["premise"], p["y"], p["conclusion"],
        )
        _require_internal(prem, schema, flavor, "premise")
        tname = _fresh_binder("t", concl)
        tv = Var(tname, Star(sy))
        bounded = Exists(y, sy, And(In(sy, Var(y, sy), tv), concl))
        hyp = ForallSt(x, sx, prem)
        return Imp(
            Imp(hyp, ExistsSt(y, sy, concl)),
            ExistsSt(tname, Star(sy), Imp(hyp, bounded)),
        )
    if schema is Schema.NU:
        sx, ty_y, x, y, body = p["x_type"], p["y_type"], p["x"], p["y"], p["body"]
        return Imp(
            Forall(y, ty_y, ExistsSt(x, sx, body)),
            ExistsSt(x, sx, Forall(y, ty_y, body)),
        )
    if schema is Schema.AC_ST:
        sx, sy, x, y, body = p["x_type"], p["y_type"], p["x"], p["y"], p["body"]
        fname = _fresh_binder("f", body)
        f_ty = Arrow(sx, sy)
        applied = subst_formula(body, y, App(Var(fname, f_ty), Var(x, sx)))
        return Imp(
            ForallSt(x, sx, ExistsSt(y, sy, body)),
            ExistsSt(fname, f_ty, ForallSt(x, sx, applied)),
        )
    if schema is Schema.IP_FORALLST:
        sx, sy, x, prem, y, concl = (
            p["x_type"], p["y_type"], p["x"], p["premise"], p["y"], p["conclusion"],
        )
        _require_internal(prem, schema, flavor, "premise")
        hyp = ForallSt(x, sx, prem)
        return Imp(
            Imp(hyp, ExistsSt(y, sy, concl)),
            ExistsSt(y, sy, Imp(hyp, concl)),
        )

    if schema is Schema.DELTA:
        f = p["formula"]
        _require(not free_vars(f), schema, "delta hypotheses must be sentences")
        _require_internal(f, schema, flavor, "delta hypothesis")
        return f

    raise BadInstantiation(schema, "unknown schema")


def _nil(ty: FiniteType) -> Term:
    from .terms import empty_seq

    return empty_seq(ty)


def _fresh_binder(base: str, body: Formula) -> str:
    from .formulas import all_names
    from .terms import fresh_name

    return fresh_name(base, all_names(body))
