"""Realiser extraction by structural recursion on checked proofs.

Every axiom schema in the catalogue has a realiser rule; modus ponens composes
by application (sequence application in the herbrandised flavor), quantifier
rules pass realisers through, and the external induction rule builds a
primitive recursion over the base and step realisers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ftypes import Arrow, FiniteType, N, Star, seqfn
from .axioms import Schema
from .formulas import (
    Forall,
    Formula,
    Imp,
    subst_formula,
)
from .proofs import (
    AxiomNode,
    ExistsRuleNode,
    ExternalInductionNode,
    ForallRuleNode,
    InductionNode,
    MPNode,
    Proof,
    check_proof,
)
from .reduce import normalize
from .terms import (
    App,
    NsdialError,
    Term,
    Var,
    app,
    default_term,
    empty_seq,
    flat_map,
    lam,
    nat_rec,
    sabs,
    seq_app_infer,
    singleton,
    synth_type,
    type_check,
)
from .translate import Flavor, TranslatedFormula, dst_translate, u_translate


class UnsupportedSchema(NsdialError):
    pass


@dataclass(frozen=True)
class RealiserBundle:
    target: Formula
    translated: TranslatedFormula
    terms: tuple[Term, ...]
    flavor: Flavor


def extract_u(proof: Proof) -> RealiserBundle:
    return extract(proof, Flavor.U)


def extract_dst(proof: Proof) -> RealiserBundle:
    return extract(proof, Flavor.DST)


def extract(proof: Proof, flavor: Flavor) -> RealiserBundle:
    target = check_proof(proof, flavor)
    tf, terms = _extract(proof, flavor, root=True)
    terms = tuple(normalize(t) for t in terms)
    if len(terms) != len(tf.exist_tuple):
        raise UnsupportedSchema(
            f"extracted {len(terms)} terms for {len(tf.exist_tuple)} witnesses"
        )
    for t, (_, ty) in zip(terms, tf.exist_tuple):
        found = type_check(t)
        if found != ty:
            raise UnsupportedSchema(f"realiser type {found!r} does not match witness {ty!r}")
    return RealiserBundle(target, tf, terms, flavor)


def _tr(f: Formula, flavor: Flavor) -> TranslatedFormula:
    return dst_translate(f) if flavor is Flavor.DST else u_translate(f)


def _extract(proof: Proof, flavor: Flavor, root: bool = False) -> tuple[TranslatedFormula, list[Term]]:
    conclusion = check_proof(proof, flavor)

    if isinstance(proof, AxiomNode):
        special = _axiom_special_form(proof, flavor) if root else None
        if special is not None:
            return special
        return _tr(conclusion, flavor), _axiom_realisers(proof, conclusion, flavor)

    if isinstance(proof, MPNode):
        major = check_proof(proof.major, flavor)
        assert isinstance(major, Imp)
        _, major_terms = _extract(proof.major, flavor)
        _, minor_terms = _extract(proof.minor, flavor)
        n_fns = len(_tr(major.right, flavor).exist_tuple)
        out = [_apply(fn, minor_terms, flavor) for fn in major_terms[:n_fns]]
        return _tr(conclusion, flavor), out

    if isinstance(proof, ForallRuleNode):
        _, terms = _extract(proof.premise, flavor)
        return _tr(conclusion, flavor), terms

    if isinstance(proof, ExistsRuleNode):
        prem = check_proof(proof.premise, flavor)
        assert isinstance(prem, Imp)
        _, terms = _extract(proof.premise, flavor)
        ta = _tr(prem.left, flavor)
        tb = _tr(prem.right, flavor)
        n_fns = len(tb.exist_tuple)
        fns, colls = terms[:n_fns], terms[n_fns:]
        xs = _bnd("x", [t for _, t in ta.exist_tuple])
        vs = _bnd("v", [t for _, t in tb.univ_tuple])
        out = list(fns)
        for coll, (_, coll_ty) in zip(colls, ta.univ_tuple):
            applied = _apply(coll, [Var(n, t) for n, t in xs + vs], flavor)
            out.append(_abs(xs + vs, singleton(Star(coll_ty), applied), flavor))
        return _tr(conclusion, flavor), out

    if isinstance(proof, InductionNode):
        return _tr(conclusion, flavor), []

    if isinstance(proof, ExternalInductionNode):
        base = check_proof(proof.base, flavor)
        _, base_terms = _extract(proof.base, flavor)
        _, step_terms = _extract(proof.step, flavor)
        t_base = _tr(base, flavor)
        k = len(t_base.exist_tuple)
        if k == 0:
            return _tr(conclusion, flavor), []
        if k > 1:
            raise UnsupportedSchema(
                "external induction with more than one witness needs tuple coding"
            )
        (_, wit_ty) = t_base.exist_tuple[0]
        step_fn = step_terms[0]
        n = Var("n", N)
        if flavor is Flavor.U:
            body = nat_rec(wit_ty, base_terms[0], step_fn, n)
            term = lam([("n", N)], body)
        else:
            m, prev = Var("m", N), Var("prev", wit_ty)
            step_lifted = lam(
                [("m", N), ("prev", wit_ty)],
                _apply(_apply(step_fn, [m], flavor), [prev], flavor),
            )
            term = sabs([("n", N)], nat_rec(wit_ty, base_terms[0], step_lifted, n))
        return _tr(conclusion, flavor), [term]

    raise AssertionError(proof)


# -- small builders ----------------------------------------------------------

def _bnd(prefix: str, types: list[FiniteType]) -> list[tuple[str, FiniteType]]:
    return [(f"{prefix}{i}", t) for i, t in enumerate(types)]


def _vs(bs: list[tuple[str, FiniteType]]) -> list[Term]:
    return [Var(n, t) for n, t in bs]


def _abs(bs: list[tuple[str, FiniteType]], body: Term, flavor: Flavor) -> Term:
    return lam(bs, body) if flavor is Flavor.U else sabs(bs, body)


def _apply(fn: Term, args: list[Term], flavor: Flavor) -> Term:
    if flavor is Flavor.U:
        return app(fn, *args)
    out = fn
    for a in args:
        out = seq_app_infer(out, a, synth_type(out))
    return out


def _fn_type(domains: list[FiniteType], result: FiniteType, flavor: Flavor) -> FiniteType:
    if flavor is Flavor.U:
        out = result
        for d in reversed(domains):
            out = Arrow(d, out)
        return out
    return seqfn(domains, result)


def _sing_default(ty: FiniteType) -> Term:
    return singleton(ty, default_term(ty))


def _cond(z: Term, then_t: Term, else_t: Term, ty: FiniteType) -> Term:
    """Case split on a numeric flag: zero selects the first branch."""
    return nat_rec(ty, then_t, lam([("_n", N), ("_w", ty)], else_t), z)


def _union_over(
    seqs: list[tuple[Term, FiniteType]],
    bound: list[tuple[str, FiniteType]],
    body: Term,
    out_elem: FiniteType,
) -> Term:
    """Concatenation of body over the product of the element tuples of seqs."""
    out = body
    for (seq, elem_ty), (vn, vt) in reversed(list(zip(seqs, bound))):
        assert elem_ty == vt
        out = flat_map(vt, out_elem, seq, vn, out)
    return out


# -- axiom realisers ---------------------------------------------------------

def _axiom_realisers(node: AxiomNode, conclusion: Formula, flavor: Flavor) -> list[Term]:
    tf = _tr(conclusion, flavor)
    if not tf.exist_tuple:
        return []
    p = node.params_dict()
    fn = _REALISERS.get(node.schema)
    if fn is None:
        raise UnsupportedSchema(f"no realiser rule for {node.schema.value}")
    return fn(p, flavor)


def _axiom_special_form(node: AxiomNode, flavor: Flavor):
    """Canonical printed interpretation attached to one schema (see ledger)."""
    if node.schema is Schema.US_STAR and flavor is Flavor.DST:
        return _us_star_dst_paper_form(node.params_dict())
    return None


def _types(tup) -> list[FiniteType]:
    return [t for _, t in tup]


def _realise_k(p, flavor):
    ta, tb = _tr(p["a"], flavor), _tr(p["b"], flavor)
    xs = _bnd("x", _types(ta.exist_tuple))
    us = _bnd("u", _types(tb.exist_tuple))
    ys = _bnd("y", _types(ta.univ_tuple))
    vs = _bnd("v", _types(tb.univ_tuple))
    out = []
    for xn, xt in xs:
        out.append(_abs(xs, _abs(us, Var(xn, xt), flavor), flavor))
    for _, vt in vs:
        out.append(_abs(xs, _abs(us + ys, empty_seq(vt), flavor), flavor))
    for yn, yt in ys:
        out.append(_abs(xs + us + ys, singleton(yt, Var(yn, yt)), flavor))
    return out


def _realise_s(p, flavor):
    ta, tb, tc = _tr(p["a"], flavor), _tr(p["b"], flavor), _tr(p["c"], flavor)
    xs_t, ys_t = _types(ta.exist_tuple), _types(ta.univ_tuple)
    us_t, vs_t = _types(tb.exist_tuple), _types(tb.univ_tuple)
    ps_t, qs_t = _types(tc.exist_tuple), _types(tc.univ_tuple)

    # premise tuple: witness functions and collectors of A -> (B -> C)
    p1 = _bnd("p", [_fn_type(xs_t, _fn_type(us_t, t, flavor), flavor) for t in ps_t])
    q1 = _bnd("q", [_fn_type(xs_t, _fn_type(us_t + qs_t, Star(t), flavor), flavor) for t in vs_t])
    y1 = _bnd("h", [_fn_type(xs_t, _fn_type(us_t + qs_t, Star(t), flavor), flavor) for t in ys_t])
    e1 = p1 + q1 + y1
    # second hypothesis tuple: witness functions and collectors of A -> B
    u2 = _bnd("g", [_fn_type(xs_t, t, flavor) for t in us_t])
    y2 = _bnd("k", [_fn_type(xs_t + vs_t, Star(t), flavor) for t in ys_t])
    e2 = u2 + y2
    xs, qs = _bnd("x", xs_t), _bnd("c", qs_t)
    vs = _bnd("v", vs_t)

    def u2x() -> list[Term]:
        return [_apply(Var(n, t), _vs(xs), flavor) for n, t in u2]

    out = []
    # functions producing the A -> C witnesses
    for j, pt in enumerate(ps_t):
        body = _apply(_apply(Var(*p1[j]), _vs(xs), flavor), u2x(), flavor)
        out.append(_abs(e1, _abs(e2, _abs(xs, body, flavor), flavor), flavor))
    # challenge collectors of A -> C: own challenges plus those routed via A -> B
    for i, yt in enumerate(ys_t):
        own = _apply(_apply(Var(*y1[i]), _vs(xs), flavor), u2x() + _vs(qs), flavor)
        q1_applied = [
            (_apply(_apply(Var(*q1[k]), _vs(xs), flavor), u2x() + _vs(qs), flavor), vs_t[k])
            for k in range(len(vs_t))
        ]
        inner = _apply(Var(*y2[i]), _vs(xs) + _vs(vs), flavor)
        routed = _union_over(q1_applied, vs, inner, yt)
        from .terms import concat

        body = concat(yt, own, routed)
        out.append(_abs(e1, _abs(e2, _abs(xs + qs, body, flavor), flavor), flavor))
    # collectors for the A -> B hypothesis (challenges at x and v)
    for xn, xt in xs:
        out.append(_abs(e1, _abs(e2 + xs + qs, singleton(xt, Var(xn, xt)), flavor), flavor))
    for k, vt in enumerate(vs_t):
        body = _apply(_apply(Var(*q1[k]), _vs(xs), flavor), u2x() + _vs(qs), flavor)
        out.append(_abs(e1, _abs(e2 + xs + qs, body, flavor), flavor))
    # collectors for the A -> (B -> C) hypothesis (challenges at x, u, q)
    for xn, xt in xs:
        out.append(_abs(e1 + e2 + xs + qs, singleton(xt, Var(xn, xt)), flavor))
    for j, ut in enumerate(us_t):
        out.append(_abs(e1 + e2 + xs + qs, singleton(ut, u2x()[j]), flavor))
    for qn, qt in qs:
        out.append(_abs(e1 + e2 + xs + qs, singleton(qt, Var(qn, qt)), flavor))
    return out


def _realise_and_intro(p, flavor):
    ta, tb = _tr(p["a"], flavor), _tr(p["b"], flavor)
    xs = _bnd("x", _types(ta.exist_tuple))
    us = _bnd("u", _types(tb.exist_tuple))
    ys = _bnd("y", _types(ta.univ_tuple))
    vs = _bnd("v", _types(tb.univ_tuple))
    out = []
    for xn, xt in xs:
        out.append(_abs(xs, _abs(us, Var(xn, xt), flavor), flavor))
    for un, ut in us:
        out.append(_abs(xs, _abs(us, Var(un, ut), flavor), flavor))
    for vn, vt in vs:
        out.append(_abs(xs, _abs(us + ys + vs, singleton(vt, Var(vn, vt)), flavor), flavor))
    for yn, yt in ys:
        out.append(_abs(xs + us + ys + vs, singleton(yt, Var(yn, yt)), flavor))
    return out


def _realise_and_elim(p, flavor, keep_left: bool):
    ta, tb = _tr(p["a"], flavor), _tr(p["b"], flavor)
    xs = _bnd("x", _types(ta.exist_tuple))
    us = _bnd("u", _types(tb.exist_tuple))
    kept = xs if keep_left else us
    kept_univ = _types(ta.univ_tuple) if keep_left else _types(tb.univ_tuple)
    other_univ = _types(tb.univ_tuple) if keep_left else _types(ta.univ_tuple)
    ws = _bnd("w", kept_univ)
    out = []
    for kn, kt in kept:
        out.append(_abs(xs + us, Var(kn, kt), flavor))
    ya = [_abs(xs + us + ws, singleton(t, Var(n, t)), flavor) for n, t in ws]
    yb = [_abs(xs + us + ws, _sing_default(t), flavor) for t in other_univ]
    out.extend(ya + yb if keep_left else yb + ya)
    return out


def _realise_or_intro(p, flavor, left: bool):
    ta, tb = _tr(p["a"], flavor), _tr(p["b"], flavor)
    xs = _bnd("x", _types(ta.exist_tuple))
    us = _bnd("u", _types(tb.exist_tuple))
    ys = _bnd("y", _types(ta.univ_tuple))
    vs = _bnd("v", _types(tb.univ_tuple))
    src, other = (xs, us) if left else (us, xs)
    src_univ = ys if left else vs
    out = []
    if flavor is Flavor.U:
        from .terms import ZERO, numeral

        flag = ZERO if left else numeral(1)
        out.append(_abs(src, flag, flavor))
    for xn, xt in xs:
        out.append(_abs(src, Var(xn, xt) if left else default_term(xt), flavor))
    for un, ut in us:
        out.append(_abs(src, default_term(ut) if left else Var(un, ut), flavor))
    for yn, yt in src_univ:
        out.append(_abs(src + ys + vs, singleton(yt, Var(yn, yt)), flavor))
    return out


def _realise_or_elim(p, flavor):
    ta, tb, tc = _tr(p["a"], flavor), _tr(p["b"], flavor), _tr(p["c"], flavor)
    xs_t, ys_t = _types(ta.exist_tuple), _types(ta.univ_tuple)
    us_t, vs_t = _types(tb.exist_tuple), _types(tb.univ_tuple)
    ps_t, qs_t = _types(tc.exist_tuple), _types(tc.univ_tuple)
    p1 = _bnd("p", [_fn_type(xs_t, t, flavor) for t in ps_t])
    y1 = _bnd("h", [_fn_type(xs_t + qs_t, Star(t), flavor) for t in ys_t])
    e1 = p1 + y1
    p2 = _bnd("r", [_fn_type(us_t, t, flavor) for t in ps_t])
    v2 = _bnd("w", [_fn_type(us_t + qs_t, Star(t), flavor) for t in vs_t])
    e2 = p2 + v2
    xs, us, qs = _bnd("x", xs_t), _bnd("u", us_t), _bnd("c", qs_t)
    zf = [("z", N)] if flavor is Flavor.U else []
    disj = zf + xs + us

    def z() -> Term:
        return Var("z", N)

    from .terms import concat

    out = []
    for j, pt in enumerate(ps_t):
        left = _apply(Var(*p1[j]), _vs(xs), flavor)
        right = _apply(Var(*p2[j]), _vs(us), flavor)
        body = _cond(z(), left, right, pt) if flavor is Flavor.U else concat(pt.element, left, right)
        out.append(_abs(e1, _abs(e2, _abs(disj, body, flavor), flavor), flavor))
    for i, yt in enumerate(ys_t):
        own = _apply(Var(*y1[i]), _vs(xs) + _vs(qs), flavor)
        if flavor is Flavor.U:
            body = _cond(z(), own, _sing_default(yt), Star(yt))
        else:
            body = concat(yt, own, _sing_default(yt))
        out.append(_abs(e1, _abs(e2, _abs(disj + qs, body, flavor), flavor), flavor))
    for i, vt in enumerate(vs_t):
        own = _apply(Var(*v2[i]), _vs(us) + _vs(qs), flavor)
        if flavor is Flavor.U:
            body = _cond(z(), _sing_default(vt), own, Star(vt))
        else:
            body = concat(vt, own, _sing_default(vt))
        out.append(_abs(e1, _abs(e2, _abs(disj + qs, body, flavor), flavor), flavor))
    for un, ut in us:
        out.append(_abs(e1, _abs(e2 + disj + qs, singleton(ut, Var(un, ut)), flavor), flavor))
    for qn, qt in qs:
        out.append(_abs(e1, _abs(e2 + disj + qs, singleton(qt, Var(qn, qt)), flavor), flavor))
    for xn, xt in xs:
        out.append(_abs(e1 + e2 + disj + qs, singleton(xt, Var(xn, xt)), flavor))
    for qn, qt in qs:
        out.append(_abs(e1 + e2 + disj + qs, singleton(qt, Var(qn, qt)), flavor))
    return out


def _realise_ex_falso(p, flavor):
    ta = _tr(p["a"], flavor)
    return [default_term(t) for t in _types(ta.exist_tuple)]


def _realise_forall_inst(p, flavor):
    ta = _tr(p["body"], flavor)
    xs = _bnd("x", _types(ta.exist_tuple))
    ys = _bnd("y", _types(ta.univ_tuple))
    out = [_abs(xs, Var(n, t), flavor) for n, t in xs]
    out += [_abs(xs + ys, singleton(t, Var(n, t)), flavor) for n, t in ys]
    return out


def _realise_exists_intro(p, flavor):
    ta = _tr(p["body"], flavor)
    xs = _bnd("x", _types(ta.exist_tuple))
    ts = _bnd("t", [Star(t) for t in _types(ta.univ_tuple)])
    out = [_abs(xs, Var(n, t), flavor) for n, t in xs]
    out += [_abs(xs + ts, Var(n, t), flavor) for n, t in ts]
    return out


def _realise_forallst_elim(p, flavor):
    tphi = _tr(p["body"], flavor)
    sigma = p["var_type"]
    us_t, vs_t = _types(tphi.exist_tuple), _types(tphi.univ_tuple)
    if flavor is Flavor.U:
        lifted = _bnd("U", [Arrow(sigma, t) for t in us_t])
        y, vs = ("y", sigma), _bnd("v", vs_t)
        out = [
            _abs(lifted, lam([("y", sigma)], App(Var(n, t), Var("y", sigma))), flavor)
            for n, t in lifted
        ]
        for vn, vt in vs:
            out.append(_abs(lifted + [y] + vs, singleton(vt, Var(vn, vt)), flavor))
        out.append(_abs(lifted + [y] + vs, singleton(sigma, Var("y", sigma)), flavor))
        return out
    lifted = _bnd("U", [Star(Arrow(sigma, t)) for t in us_t])
    w, vs = ("w", Star(sigma)), _bnd("v", vs_t)
    out = []
    for n, t in lifted:
        body = flat_map(
            sigma,
            _star_elem(t),
            Var("w2", Star(sigma)),
            "xe",
            seq_app_infer(Var(n, t), Var("xe", sigma), t),
        )
        out.append(_abs(lifted, sabs([("w2", Star(sigma))], body), flavor))
    for vn, vt in vs:
        out.append(_abs(lifted + [w] + vs, singleton(vt, Var(vn, vt)), flavor))
    out.append(_abs(lifted + [w] + vs, Var("w", Star(sigma)), flavor))
    return out


def _star_elem(fn_seq_type: FiniteType) -> FiniteType:
    """Element type of the sequence a lifted witness produces: (s -> r*)* gives r."""
    assert isinstance(fn_seq_type, Star) and isinstance(fn_seq_type.element, Arrow)
    cod = fn_seq_type.element.codomain
    assert isinstance(cod, Star)
    return cod.element


def _realise_forallst_intro(p, flavor):
    tphi = _tr(p["body"], flavor)
    sigma = p["var_type"]
    us_t, vs_t = _types(tphi.exist_tuple), _types(tphi.univ_tuple)
    vs = _bnd("v", vs_t)
    if flavor is Flavor.U:
        fns = _bnd("U", [Arrow(sigma, t) for t in us_t])
        xp = ("xp", sigma)
        out = [
            _abs(fns, lam([("xp", sigma)], App(Var(n, t), Var("xp", sigma))), flavor)
            for n, t in fns
        ]
        out.append(_abs(fns + vs + [xp], singleton(sigma, Var("xp", sigma)), flavor))
        for vn, vt in vs:
            out.append(_abs(fns + vs + [xp], singleton(vt, Var(vn, vt)), flavor))
        return out
    fns = _bnd("T", [Star(Arrow(Star(sigma), t)) for t in us_t])
    xp = ("xp", sigma)
    out = []
    for n, t in fns:
        applied = seq_app_infer(Var(n, t), singleton(sigma, Var("xp", sigma)), t)
        out.append(_abs(fns, sabs([("xp", sigma)], applied), flavor))
    out.append(
        _abs(fns + vs + [xp], singleton(Star(sigma), singleton(sigma, Var("xp", sigma))), flavor)
    )
    for vn, vt in vs:
        out.append(_abs(fns + vs + [xp], singleton(vt, Var(vn, vt)), flavor))
    return out


def _realise_existsst_elim(p, flavor):
    tphi = _tr(p["body"], flavor)
    sigma = p["var_type"]
    us_t, vs_t = _types(tphi.exist_tuple), _types(tphi.univ_tuple)
    wit = ("xw", sigma if flavor is Flavor.U else Star(sigma))
    us = _bnd("u", us_t)
    ts = _bnd("t", [Star(t) for t in vs_t])
    head = wit[0]
    out = [_abs([wit] + us, Var(head, wit[1]), flavor)]
    out += [_abs([wit] + us, Var(n, t), flavor) for n, t in us]
    if flavor is Flavor.U:
        out += [_abs([wit] + us + ts, Var(n, t), flavor) for n, t in ts]
    else:
        out += [
            _abs([wit] + us + ts, singleton(t, Var(n, t)), flavor) for n, t in ts
        ]
    return out


def _realise_existsst_intro(p, flavor):
    tphi = _tr(p["body"], flavor)
    sigma = p["var_type"]
    us_t, vs_t = _types(tphi.exist_tuple), _types(tphi.univ_tuple)
    wit = ("yw", sigma if flavor is Flavor.U else Star(sigma))
    us = _bnd("u", us_t)
    if flavor is Flavor.U:
        head = Var(wit[0], wit[1])
    else:
        # pad the candidate sequence: a vacuous challenge prefix must still
        # leave something to witness the bounded existential
        from .terms import concat

        head = concat(sigma, Var(wit[0], wit[1]), _sing_default(sigma))
    out = [_abs([wit] + us, head, flavor)]
    out += [_abs([wit] + us, Var(n, t), flavor) for n, t in us]
    if flavor is Flavor.U:
        vs = _bnd("v", vs_t)
        for vn, vt in vs:
            out.append(
                _abs([wit] + us + vs, singleton(Star(vt), singleton(vt, Var(vn, vt))), flavor)
            )
    else:
        ts = _bnd("t", [Star(t) for t in vs_t])
        for tn, tt in ts:
            out.append(_abs([wit] + us + ts, singleton(tt, Var(tn, tt)), flavor))
    return out


def _realise_st_ext(p, flavor):
    sigma = p["type"]
    w = ("w", sigma if flavor is Flavor.U else Star(sigma))
    return [_abs([w], Var(*w), flavor)]


def _realise_st_closed(p, flavor):
    a = p["term"]
    if flavor is Flavor.U:
        return [a]
    return [singleton(p["type"], a)]


def _realise_st_app(p, flavor):
    dom, cod = p["domain"], p["codomain"]
    if flavor is Flavor.U:
        fb = [("fp", Arrow(dom, cod)), ("xq", dom)]
        return [lam(fb, App(Var("fp", Arrow(dom, cod)), Var("xq", dom)))]
    wf = ("wf", Star(Arrow(dom, cod)))
    wx = ("wx", Star(dom))
    inner = flat_map(
        dom, cod, Var("wx", Star(dom)), "xe",
        singleton(cod, App(Var("ge", Arrow(dom, cod)), Var("xe", dom))),
    )
    body = flat_map(Arrow(dom, cod), cod, Var("wf", Star(Arrow(dom, cod))), "ge", inner)
    return [sabs([wf, wx], body)]


def _realise_os_star(p, flavor):
    sigma = p["type"]
    sp = ("sp", Star(sigma))
    return [_abs([sp], singleton(Star(sigma), Var(*sp)), flavor)]


def _realise_us_star(p, flavor):
    sigma = p["type"]
    sp = ("sp", Star(sigma))
    if flavor is Flavor.U:
        return [_abs([sp], Var(*sp), flavor)]
    return [_abs([sp], singleton(Star(sigma), Var(*sp)), flavor)]


def _identity_realisers(prem_tf: TranslatedFormula, flavor: Flavor) -> list[Term]:
    """Premise and conclusion share an interpretation: project and collect singletons."""
    es = _bnd("e", _types(prem_tf.exist_tuple))
    us = _bnd("uq", _types(prem_tf.univ_tuple))
    out = [_abs(es, Var(n, t), flavor) for n, t in es]
    out += [_abs(es + us, singleton(t, Var(n, t)), flavor) for n, t in us]
    return out


def _realise_identity_shaped(p, flavor, conclusion_builder):
    prem, concl = conclusion_builder(p)
    t1, t2 = _tr(prem, flavor), _tr(concl, flavor)
    if _types(t1.exist_tuple) != _types(t2.exist_tuple) or _types(t1.univ_tuple) != _types(
        t2.univ_tuple
    ):
        raise UnsupportedSchema("premise and conclusion interpretations differ")
    return _identity_realisers(t1, flavor)


def _nu_parts(p):
    from .formulas import ExistsSt, Forall

    prem = Forall(p["y"], p["y_type"], ExistsSt(p["x"], p["x_type"], p["body"]))
    concl = ExistsSt(p["x"], p["x_type"], Forall(p["y"], p["y_type"], p["body"]))
    return prem, concl


def _ac_parts(p):
    from .formulas import ExistsSt, ForallSt

    prem = ForallSt(p["x"], p["x_type"], ExistsSt(p["y"], p["y_type"], p["body"]))
    fname = _ac_fname(p)
    f_ty = Arrow(p["x_type"], p["y_type"])
    applied = subst_formula(
        p["body"], p["y"], App(Var(fname, f_ty), Var(p["x"], p["x_type"]))
    )
    concl = ExistsSt(fname, f_ty, ForallSt(p["x"], p["x_type"], applied))
    return prem, concl


def _ac_fname(p) -> str:
    from .formulas import all_names
    from .terms import fresh_name

    return fresh_name("f", all_names(p["body"]))


def _ip_parts(p):
    from .formulas import ExistsSt, ForallSt, Imp

    hyp = ForallSt(p["x"], p["x_type"], p["premise"])
    prem = Imp(hyp, ExistsSt(p["y"], p["y_type"], p["conclusion"]))
    concl = ExistsSt(p["y"], p["y_type"], Imp(hyp, p["conclusion"]))
    return prem, concl


def _realise_ncr(p, flavor):
    assert flavor is Flavor.DST
    tphi = _tr(p["body"], flavor)
    sigma = p["x_type"]
    us_t, vs_t = _types(tphi.exist_tuple), _types(tphi.univ_tuple)
    u0 = ("u0", Star(sigma))
    us = _bnd("u", us_t)
    ts = _bnd("t", [Star(Star(t)) for t in vs_t])
    out = [_abs([u0] + us, singleton(Star(sigma), Var(*u0)), flavor)]
    out += [_abs([u0] + us, Var(n, t), flavor) for n, t in us]
    out += [_abs([u0] + us + ts, Var(n, t), flavor) for n, t in ts]
    return out


def _realise_hac_st(p, flavor):
    assert flavor is Flavor.DST
    tphi = _tr(p["body"], flavor)
    sx, sy = p["x_type"], p["y_type"]
    us_t, vs_t = _types(tphi.exist_tuple), _types(tphi.univ_tuple)
    f_ty = Star(Arrow(sx, Star(sy)))
    u0 = ("U0", f_ty)
    us = _bnd("U", [Star(Arrow(sx, t)) for t in us_t])
    ts = _bnd("t", [Star(Star(t)) for t in vs_t])
    xs = ("xs", Star(sx))
    out = [_abs([u0] + us, singleton(f_ty, Var(*u0)), flavor)]
    out += [_abs([u0] + us, Var(n, t), flavor) for n, t in us]
    out += [_abs([u0] + us + ts + [xs], Var(n, t), flavor) for n, t in ts]
    out.append(_abs([u0] + us + ts + [xs], Var(*xs), flavor))
    return out


def _realise_hip(p, flavor):
    assert flavor is Flavor.DST
    tpsi = _tr(p["conclusion"], flavor)
    sx, sy = p["x_type"], p["y_type"]
    us_t, vs_t = _types(tpsi.exist_tuple), _types(tpsi.univ_tuple)
    u0 = ("u0", Star(sy))
    us = _bnd("u", us_t)
    sx_coll = ("S", seqfn([Star(t) for t in vs_t], Star(sx)))
    ts = _bnd("t", [Star(Star(t)) for t in vs_t])
    out = [_abs([u0] + us + [sx_coll], singleton(Star(sy), Var(*u0)), flavor)]
    out += [_abs([u0] + us + [sx_coll], Var(n, t), flavor) for n, t in us]
    out.append(_abs([u0] + us + [sx_coll], Var(*sx_coll), flavor))
    out += [_abs([u0] + us + [sx_coll] + ts, Var(n, t), flavor) for n, t in ts]
    return out


def _us_star_dst_paper_form(p) -> tuple[TranslatedFormula, list[Term]]:
    """US* with its printed interpretation over a sequence of candidate sequences."""
    from .formulas import SubsetEq, all_names, desugar
    from .terms import fresh_name
    from .translate import bounded_exists

    sigma, s, phi = p["type"], p["var"], p["body"]
    ss, sp = Star(sigma), Star(Star(sigma))
    coll_ty = Star(Arrow(sp, sp))
    taken = all_names(phi)
    tname = fresh_name("T", taken)
    sname = fresh_name("spp", taken)
    sq = fresh_name("sq", taken)
    tvar = fresh_name("t", taken)
    spp = Var(sname, sp)
    premise = Forall(
        s,
        ss,
        bounded_exists(
            sq, ss, spp, Imp(SubsetEq(sigma, Var(sq, ss), Var(s, ss)), phi)
        ),
    )
    applied = seq_app_infer(Var(tname, coll_ty), spp, coll_ty)
    concl_body = bounded_exists(tvar, ss, applied, subst_formula(phi, s, Var(tvar, ss)))
    matrix = desugar(Imp(premise, concl_body))
    tf = TranslatedFormula(((tname, coll_ty),), ((sname, sp),), matrix, Flavor.DST)
    flatten = flat_map(ss, sigma, Var("sq2", sp), "se", Var("se", ss))
    realiser = sabs([("sq2", sp)], singleton(ss, flatten))
    return tf, [realiser]


_REALISERS = {
    Schema.K: _realise_k,
    Schema.S: _realise_s,
    Schema.AND_INTRO: _realise_and_intro,
    Schema.AND_ELIM_L: lambda p, fl: _realise_and_elim(p, fl, True),
    Schema.AND_ELIM_R: lambda p, fl: _realise_and_elim(p, fl, False),
    Schema.OR_INTRO_L: lambda p, fl: _realise_or_intro(p, fl, True),
    Schema.OR_INTRO_R: lambda p, fl: _realise_or_intro(p, fl, False),
    Schema.OR_ELIM: _realise_or_elim,
    Schema.EX_FALSO: _realise_ex_falso,
    Schema.FORALL_INST: _realise_forall_inst,
    Schema.EXISTS_INTRO: _realise_exists_intro,
    Schema.FORALLST_ELIM: _realise_forallst_elim,
    Schema.FORALLST_INTRO: _realise_forallst_intro,
    Schema.EXISTSST_ELIM: _realise_existsst_elim,
    Schema.EXISTSST_INTRO: _realise_existsst_intro,
    Schema.ST_EXT: _realise_st_ext,
    Schema.ST_CLOSED: _realise_st_closed,
    Schema.ST_APP: _realise_st_app,
    Schema.OS_STAR: _realise_os_star,
    Schema.US_STAR: _realise_us_star,
    Schema.NCR: _realise_ncr,
    Schema.HAC_ST: _realise_hac_st,
    Schema.HIP_FORALLST: _realise_hip,
    Schema.NU: lambda p, fl: _realise_identity_shaped(p, fl, _nu_parts),
    Schema.AC_ST: lambda p, fl: _realise_identity_shaped(p, fl, _ac_parts),
    Schema.IP_FORALLST: lambda p, fl: _realise_identity_shaped(p, fl, _ip_parts),
}
