"""Brute-force semantic layer: finite enumeration, evaluation, and bundle checking.

A GridValid verdict certifies truth over the enumerated grid only; reports
always carry the grid parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ftypes import FiniteType, Ground, Star, is_data_type, type_depth
from .formulas import (
    And,
    BoundedExists,
    BoundedForall,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    Or,
    classify,
    desugar,
    free_vars,
    subst_formula,
)
from .reduce import (
    CanonicalValue,
    Nat,
    NotDataType,
    Seq,
    eval_nat,
    normalize,
    term_to_value,
    value_to_term,
)
from .terms import Term, alpha_eq, substitute


@dataclass(frozen=True)
class Grid:
    nat_bound: int = 3
    seq_len_bound: int = 2
    depth_bound: int = 2

    def __post_init__(self):
        assert self.nat_bound >= 0 and self.seq_len_bound >= 1


@dataclass(frozen=True)
class GridValid:
    pass


@dataclass(frozen=True)
class CounterexampleFound:
    environment: tuple[tuple[str, CanonicalValue], ...]

    def env_dict(self) -> dict[str, CanonicalValue]:
        return dict(self.environment)


@dataclass(frozen=True)
class Unknown:
    reason: str


Verdict = GridValid | CounterexampleFound | Unknown

UNKNOWN = object()  # three-valued evaluation marker


def enumerate_values(t: FiniteType, grid: Grid):
    """Deterministic finite stream of canonical values of a data type."""
    if not is_data_type(t):
        raise NotDataType(repr(t))
    if type_depth(t) > grid.depth_bound:
        raise NotDataType(f"type depth {type_depth(t)} exceeds grid bound {grid.depth_bound}")
    if isinstance(t, Ground):
        for n in range(grid.nat_bound + 1):
            yield Nat(n)
        return
    assert isinstance(t, Star)
    elems = list(enumerate_values(t.element, grid))
    for length in range(grid.seq_len_bound + 1):
        for combo in itertools.product(elems, repeat=length):
            yield Seq(t.element, combo)


def _subst_env(t: Term, env: dict[str, CanonicalValue]) -> Term:
    for name, v in env.items():
        t = substitute(t, name, value_to_term(v))
    return t


def _eval3(f: Formula, env: dict[str, CanonicalValue], grid: Grid):
    """Three-valued evaluation of an internal matrix: True, False, or UNKNOWN."""
    if isinstance(f, Eq):
        lt = normalize(_subst_env(f.left, env))
        rt = normalize(_subst_env(f.right, env))
        if is_data_type(f.type):
            try:
                return term_to_value(lt, f.type) == term_to_value(rt, f.type)
            except NotDataType:
                return UNKNOWN
        return True if alpha_eq(lt, rt) else UNKNOWN
    if isinstance(f, And):
        a = _eval3(f.left, env, grid)
        if a is False:
            return False
        b = _eval3(f.right, env, grid)
        if b is False:
            return False
        return UNKNOWN if UNKNOWN in (a, b) else True
    if isinstance(f, Or):
        a = _eval3(f.left, env, grid)
        if a is True:
            return True
        b = _eval3(f.right, env, grid)
        if b is True:
            return True
        return UNKNOWN if UNKNOWN in (a, b) else False
    if isinstance(f, Imp):
        a = _eval3(f.left, env, grid)
        if a is False:
            return True
        b = _eval3(f.right, env, grid)
        if b is True:
            return True
        if a is UNKNOWN or b is UNKNOWN:
            return UNKNOWN
        return False
    if isinstance(f, (BoundedForall, BoundedExists)):
        bound_term = normalize(_subst_env(f.bound, env))
        n = eval_nat(bound_term)
        results = [
            _eval3(f.body, {**env, f.var: Nat(i)}, grid) for i in range(n)
        ]
        if isinstance(f, BoundedForall):
            if False in results:
                return False
            return UNKNOWN if UNKNOWN in results else True
        if True in results:
            return True
        return UNKNOWN if UNKNOWN in results else False
    if isinstance(f, (Forall, Exists)):
        if not is_data_type(f.var_type) or type_depth(f.var_type) > grid.depth_bound:
            return UNKNOWN
        results = []
        for v in enumerate_values(f.var_type, grid):
            r = _eval3(f.body, {**env, f.var: v}, grid)
            if isinstance(f, Forall) and r is False:
                return False
            if isinstance(f, Exists) and r is True:
                return True
            results.append(r)
        if UNKNOWN in results:
            return UNKNOWN
        return isinstance(f, Forall)
    raise AssertionError(f"non-internal node in matrix: {f!r}")


def eval_formula(matrix: Formula, env: dict[str, CanonicalValue], grid: Grid) -> Verdict:
    """Verdict for one assignment. The matrix must be internal."""
    m = desugar(matrix)
    assert classify(m).internal, "eval_formula needs an internal formula"
    r = _eval3(m, env, grid)
    if r is True:
        return GridValid()
    if r is False:
        return CounterexampleFound(tuple(sorted(env.items())))
    return Unknown("non-data quantifier encountered")


def _assignments(names: list[tuple[str, FiniteType]], grid: Grid):
    """All grid environments for the given typed names, in enumeration order."""
    domains = [list(enumerate_values(t, grid)) for _, t in names]
    for combo in itertools.product(*domains):
        yield {name: v for (name, _), v in zip(names, combo)}


def _data_typed(names) -> bool:
    return all(is_data_type(t) for _, t in names)


def verify_bundle(bundle, grid: Grid) -> Verdict:
    """Check a realiser bundle by substituting its terms and sweeping the grid."""
    tf = bundle.translated
    matrix = desugar(tf.matrix)
    for (name, ty), term in zip(tf.exist_tuple, bundle.terms):
        matrix = subst_formula(matrix, name, term)
    remaining = list(tf.univ_tuple)
    fv = free_vars(matrix)
    for name, ty in sorted(fv.items()):
        if name not in [n for n, _ in remaining]:
            remaining.append((name, ty))
    if not _data_typed(remaining):
        return Unknown("non-data universal variable")
    if any(type_depth(t) > grid.depth_bound for _, t in remaining):
        return Unknown("universal variable type deeper than the grid bound")
    saw_unknown = False
    for env in _assignments(remaining, grid):
        r = _eval3(matrix, env, grid)
        if r is False:
            return CounterexampleFound(tuple(sorted(env.items())))
        if r is UNKNOWN:
            saw_unknown = True
    if saw_unknown:
        return Unknown("non-data quantifier encountered")
    return GridValid()


def replay(bundle, verdict: CounterexampleFound, grid: Grid) -> bool:
    """Re-evaluate a counterexample environment; True iff the matrix is false there."""
    tf = bundle.translated
    matrix = desugar(tf.matrix)
    for (name, ty), term in zip(tf.exist_tuple, bundle.terms):
        matrix = subst_formula(matrix, name, term)
    return _eval3(matrix, verdict.env_dict(), grid) is False


def _subset_as_set(a: CanonicalValue, b: CanonicalValue) -> bool:
    assert isinstance(a, Seq) and isinstance(b, Seq)
    return set(a.items) <= set(b.items)


def check_upward_closed(tf, grid: Grid) -> Verdict:
    """Truth of the matrix must survive extending any witness sequence."""
    from .translate import Flavor

    assert tf.flavor is Flavor.DST
    names = list(tf.exist_tuple) + list(tf.univ_tuple)
    matrix = desugar(tf.matrix)
    fv = free_vars(matrix)
    for name, ty in sorted(fv.items()):
        if name not in [n for n, _ in names]:
            names.append((name, ty))
    if not _data_typed(names) or any(type_depth(t) > grid.depth_bound for _, t in names):
        return Unknown("non-data tuple or free variable")
    exist_names = [n for n, _ in tf.exist_tuple]
    rest = [(n, t) for n, t in names if n not in exist_names]
    exist_domains = [list(enumerate_values(t, grid)) for _, t in tf.exist_tuple]
    pairs_per_comp = [
        [(a, b) for a in dom for b in dom if _subset_as_set(a, b)]
        for dom in exist_domains
    ]
    for env in _assignments(rest, grid):
        # evaluate once per witness assignment, then sweep the extension pairs
        truth: dict[tuple, object] = {}
        for combo in itertools.product(*exist_domains):
            truth[combo] = _eval3(
                matrix, {**env, **dict(zip(exist_names, combo))}, grid
            )
        for pair_combo in itertools.product(*pairs_per_comp):
            small = tuple(p[0] for p in pair_combo)
            big = tuple(p[1] for p in pair_combo)
            if truth[small] is True and truth[big] is False:
                bad = {**env, **dict(zip(exist_names, big))}
                return CounterexampleFound(tuple(sorted(bad.items())))
    return GridValid()


def brute_force_witness(formula: Formula, grid: Grid):
    """First witness of a leading existential, in enumeration order, or None."""
    f = desugar(formula)
    assert isinstance(f, Exists), "needs a leading existential"
    for v in enumerate_values(f.var_type, grid):
        if _eval3(f.body, {f.var: v}, grid) is True:
            return v
    return None
