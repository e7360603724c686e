"""Realiser extraction: printed-term fidelity per schema, composition, certification."""

import pytest

from nsdial.ftypes import Arrow, N, Star
from nsdial.axioms import Schema
from nsdial.derive import imp_refl
from nsdial.extract import UnsupportedSchema, extract, extract_dst, extract_u
from nsdial.formulas import And, Eq, ExistsSt, ForallSt, Imp, In, Or, St
from nsdial.oracle import CounterexampleFound, Grid, GridValid, Unknown, verify_bundle
from nsdial.proofs import ExternalInductionNode, axiom, check_proof, mp
from nsdial.reduce import eval_nat, normalize
from nsdial.terms import (
    App,
    Const,
    ConstKind,
    Lam,
    SeqAbs,
    Var,
    ZERO,
    alpha_eq,
    flat_map,
    lam,
    numeral,
    singleton,
    type_check,
)
from nsdial.reduce import spine
from nsdial.translate import Flavor

import fixture_defs as fx

U, D = Flavor.U, Flavor.DST


def both_tuples_instance(z="z"):
    """st(z) and forall-st w (w = z): one witness and one challenge."""
    zv = Var(z, N)
    return And(St(N, zv), ForallSt("w", N, Eq(N, Var("w", N), zv)))


def assert_bundle_alpha(bundle, expected_terms):
    assert len(bundle.terms) == len(expected_terms)
    for got, want in zip(bundle.terms, expected_terms):
        assert alpha_eq(got, normalize(want)), f"{got!r} != {want!r}"


def test_forall_instantiation_realisers_match_printed_terms():
    node = axiom(
        Schema.FORALL_INST, var="z", var_type=N, body=both_tuples_instance(), term=ZERO
    )
    b = extract_u(node)
    ident = Lam("x", N, Var("x", N))
    collect = lam([("x", N), ("y", N)], singleton(N, Var("y", N)))
    assert_bundle_alpha(b, [ident, collect])


def test_exists_introduction_realisers_match_printed_terms():
    node = axiom(
        Schema.EXISTS_INTRO, var="z", var_type=N, body=both_tuples_instance(), term=ZERO
    )
    b = extract_u(node)
    ident = Lam("x", N, Var("x", N))
    passthrough = lam([("x", N), ("t", Star(N))], Var("t", Star(N)))
    assert_bundle_alpha(b, [ident, passthrough])


def test_weakening_realisers_match_worked_example():
    a = both_tuples_instance("za")
    bq = both_tuples_instance("zb")
    node = axiom(Schema.OR_INTRO_L, a=a, b=bq)
    b = extract_u(node)
    # flag 0, witness passed through, arbitrary second witness, challenge singleton
    zero_flag = Lam("x", N, ZERO)
    ident = Lam("x", N, Var("x", N))
    arbitrary = Lam("x", N, ZERO)
    collect = lam([("x", N), ("y", N), ("v", N)], singleton(N, Var("y", N)))
    assert_bundle_alpha(b, [zero_flag, ident, arbitrary, collect])


def test_us_star_uniform_realiser_is_identity():
    b = extract_u(fx.us_axiom())
    assert_bundle_alpha(b, [Lam("s", Star(N), Var("s", Star(N)))])


def test_os_star_uniform_realiser_is_singleton():
    b = extract_u(fx.os_axiom())
    assert_bundle_alpha(b, [Lam("s", Star(N), singleton(Star(N), Var("s", Star(N))))])


def test_os_star_herbrandised_realiser_is_sequence_singleton():
    b = extract_dst(fx.os_axiom())
    assert_bundle_alpha(b, [SeqAbs("s", Star(N), singleton(Star(N), Var("s", Star(N))))])


def test_us_star_herbrandised_realiser_concatenates_candidates():
    b = extract_dst(fx.us_axiom())
    flatten = flat_map(Star(N), N, Var("q", Star(Star(N))), "e", Var("e", Star(N)))
    expected = SeqAbs("q", Star(Star(N)), singleton(Star(N), flatten))
    assert_bundle_alpha(b, [expected])
    assert b.translated.univ_tuple[0][1] == Star(Star(N))


def test_st_axiom_realisers():
    ext = extract_u(axiom(Schema.ST_EXT, type=N, x=Var("sx", N), y=Var("sy", N)))
    assert_bundle_alpha(ext, [Lam("w", N, Var("w", N))])
    stapp = extract_u(
        axiom(Schema.ST_APP, domain=N, codomain=N, fn=Var("gf", Arrow(N, N)), arg=Var("gx", N))
    )
    expected = lam(
        [("f", Arrow(N, N)), ("x", N)], App(Var("f", Arrow(N, N)), Var("x", N))
    )
    assert_bundle_alpha(stapp, [expected])
    closed = extract_u(axiom(Schema.ST_CLOSED, type=N, term=numeral(2)))
    assert_bundle_alpha(closed, [numeral(2)])


def test_existsst_intro_collects_double_singleton():
    body = ForallSt("w", N, Eq(N, Var("w", N), Var("y", N)))
    b = extract_u(axiom(Schema.EXISTSST_INTRO, var="y", var_type=N, body=body))
    ident = Lam("y", N, Var("y", N))
    double = lam([("y", N), ("v", N)], singleton(Star(N), singleton(N, Var("v", N))))
    assert_bundle_alpha(b, [ident, double])


def test_nu_identity_shaped_realisers():
    body = ForallSt("w", N, Eq(N, Var("w", N), Var("x", N)))
    b = extract_u(axiom(Schema.NU, x_type=N, y_type=N, x="x", y="y", body=body))
    ident = Lam("e", N, Var("e", N))
    collect = lam([("e", N), ("u", N)], singleton(N, Var("u", N)))
    assert_bundle_alpha(b, [ident, collect])


def test_mp_composes_by_application():
    a = St(N, ZERO)
    pa = axiom(Schema.ST_CLOSED, type=N, term=ZERO)
    k = axiom(Schema.K, a=a, b=a)
    b = extract_u(mp(k, pa))
    # witness function ignores its argument and returns the composed witness
    assert_bundle_alpha(b, [Lam("u", N, ZERO)])


def test_empty_tuple_law():
    refl = axiom(Schema.EQ_REFL, type=N, t=ZERO)
    chained = mp(axiom(Schema.K, a=Eq(N, ZERO, ZERO), b=Eq(N, ZERO, ZERO)), refl)
    for flavor in (U, D):
        assert extract(chained, flavor).terms == ()
        assert extract(axiom(Schema.SEQ_AXIOM, type=N), flavor).terms == ()
        assert extract(axiom(Schema.EXTENSIONALITY, domain=N, codomain=N), flavor).terms == ()


def test_extraction_deterministic_and_typed():
    proof = fx.doubling_proof()
    b1, b2 = extract_u(proof), extract_u(proof)
    assert len(b1.terms) == len(b2.terms)
    for t1, t2 in zip(b1.terms, b2.terms):
        assert alpha_eq(t1, t2)
    for t, (_, ty) in zip(b1.terms, b1.translated.exist_tuple):
        assert type_check(t) == ty


def test_external_induction_head_is_primitive_recursion():
    b = fx.doubling_bundle()
    term = b.terms[0]
    assert isinstance(term, Lam)
    head, args = spine(term.body)
    assert isinstance(head, Const) and head.kind is ConstKind.NATREC
    assert len(args) == 3


def test_external_induction_multi_witness_unsupported():
    base_body = And(
        ExistsSt("y", N, Eq(N, Var("y", N), ZERO)),
        ExistsSt("w", N, Eq(N, Var("w", N), ZERO)),
    )
    from nsdial.derive import forallst_intro_from, imp_refl as refl

    step_imp = refl(
        And(
            ExistsSt("y", N, Eq(N, Var("y", N), Var("n", N))),
            ExistsSt("w", N, Eq(N, Var("w", N), Var("n", N))),
        )
    )
    # a well-formed multi-witness induction is rejected, not mis-extracted
    phi = And(
        ExistsSt("y", N, Eq(N, Var("y", N), Var("n", N))),
        ExistsSt("w", N, Eq(N, Var("w", N), Var("n", N))),
    )
    from nsdial.formulas import subst_formula

    base_pf_formula = subst_formula(phi, "n", ZERO)
    # build the base proof for phi(0) directly
    def exist_pair(val_term):
        c = val_term
        refl_c = axiom(Schema.EQ_REFL, type=N, t=c)
        st_c = axiom(Schema.ST_CLOSED, type=N, term=c)
        pair = axiom(Schema.AND_INTRO, a=St(N, c), b=Eq(N, c, c))
        both = mp(mp(pair, st_c), refl_c)
        body = And(St(N, Var("y", N)), Eq(N, Var("y", N), c))
        intro = axiom(Schema.EXISTS_INTRO, var="y", var_type=N, body=body, term=c)
        return mp(
            axiom(Schema.EXISTSST_INTRO, var="y", var_type=N, body=Eq(N, Var("y", N), c)),
            mp(intro, both),
        )

    p0 = exist_pair(ZERO)
    both0 = mp(
        mp(axiom(Schema.AND_INTRO, a=base_pf_formula.left, b=base_pf_formula.right), p0), p0
    )
    step = forallst_intro_from(refl(phi), Imp(phi, phi), "n")
    # the step is phi -> phi, not phi -> phi(S n): the checker rejects the shape
    from nsdial.axioms import BadInstantiation

    with pytest.raises((BadInstantiation, UnsupportedSchema)):
        extract_u(ExternalInductionNode(both0, step))


def test_dst_bundles_pass_oracle_certification():
    g = Grid(1, 1)
    body = Eq(N, Var("x", N), Var("y", N))
    nodes = [
        axiom(Schema.NCR, x_type=N, y_type=N, x="x", y="y", body=body),
        axiom(Schema.HAC_ST, x_type=N, y_type=N, x="x", y="y", body=body),
        axiom(
            Schema.HIP_FORALLST,
            x_type=N, y_type=N, x="x",
            premise=Eq(N, Var("x", N), ZERO),
            y="y",
            conclusion=Eq(N, Var("y", N), ZERO),
        ),
    ]
    for node in nodes:
        verdict = verify_bundle(extract_dst(node), g)
        assert not isinstance(verdict, CounterexampleFound)


def test_or_elim_composition_certified_both_flavors():
    a = St(N, Var("av", N))
    oe = axiom(Schema.OR_ELIM, a=a, b=a, c=a)
    for flavor in (U, D):
        comp = mp(mp(oe, imp_refl(a)), imp_refl(a))
        verdict = verify_bundle(extract(comp, flavor), Grid(2, 2))
        assert isinstance(verdict, GridValid)
