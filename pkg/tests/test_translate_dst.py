from nsdial.ftypes import Arrow, N, Star
from nsdial.formulas import (
    BoundedExists,
    Eq,
    ExistsSt,
    ForallSt,
    St,
    classify,
    formula_alpha_eq,
)
from nsdial.gen import random_external, rng
from nsdial.terms import Var, proj, seq_app, seq_len
from nsdial.translate import Flavor, dst_translate


def test_internal_atom_translates_to_itself():
    atom = Eq(N, Var("a", N), Var("b", N))
    tf = dst_translate(atom)
    assert tf.exist_tuple == () and tf.univ_tuple == ()
    assert tf.matrix == atom


def test_st_clause():
    tf = dst_translate(St(N, Var("x", N)))
    assert tf.exist_tuple == (("s", Star(N)),)
    assert tf.univ_tuple == ()
    s = Var("s", Star(N))
    expected = BoundedExists(
        "i", seq_len(N, s), Eq(N, Var("x", N), proj(N, s, Var("i", N)))
    )
    assert tf.matrix == expected


def test_worked_example_matches_hand_derivation():
    # forall-st x exists-st y (y = x), unfolded by hand through the two clauses
    f = ForallSt("x", N, ExistsSt("y", N, Eq(N, Var("y", N), Var("x", N))))
    tf = dst_translate(f)
    assert tf.exist_tuple == (("S", Star(Arrow(N, Star(N)))),)
    assert tf.univ_tuple == (("x", N),)
    collector = seq_app(N, N, Var("S", Star(Arrow(N, Star(N)))), Var("x", N))
    expected = BoundedExists(
        "i",
        seq_len(N, collector),
        Eq(N, proj(N, collector, Var("i", N)), Var("x", N)),
    )
    assert formula_alpha_eq(tf.matrix, expected)


def test_witnesses_are_sequence_typed():
    r = rng(21)
    for i in range(300):
        f = random_external(r, [("fv", N)], 3)
        tf = dst_translate(f)
        for _, ty in tf.exist_tuple:
            assert isinstance(ty, Star)


def test_matrix_always_internal():
    r = rng(22)
    for i in range(300):
        tf = dst_translate(random_external(r, [("fv", N)], 3))
        assert classify(tf.matrix).internal


def test_translation_deterministic():
    r = rng(23)
    for i in range(50):
        f = random_external(r, [("fv", N)], 3)
        assert dst_translate(f) == dst_translate(f)
