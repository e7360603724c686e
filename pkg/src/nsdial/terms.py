"""Typed lambda terms with recursors and primitive finite-sequence operators."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .ftypes import Arrow, FiniteType, Ground, N, Star, arrow


class NsdialError(Exception):
    """Base class for all errors raised by this package."""


class UnboundVariable(NsdialError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class IllTyped(NsdialError):
    def __init__(self, location: str, expected, found):
        super().__init__(f"ill-typed at {location}: expected {expected!r}, found {found!r}")
        self.location = location
        self.expected = expected
        self.found = found


class TypeMismatch(NsdialError):
    pass


class ConstKind(Enum):
    ZERO = "zero"
    SUCC = "succ"
    NATREC = "nrec"
    LISTREC = "lrec"
    EMPTY = "nil"
    CONS = "cons"
    LEN = "len"
    PROJ = "proj"
    CONCAT = "concat"
    SEQAPP = "sapp"
    SINGLETON = "sing"


# Number of type parameters each constant kind carries.
CONST_ARITY = {
    ConstKind.ZERO: 0,
    ConstKind.SUCC: 0,
    ConstKind.NATREC: 1,
    ConstKind.LISTREC: 2,
    ConstKind.EMPTY: 1,
    ConstKind.CONS: 1,
    ConstKind.LEN: 1,
    ConstKind.PROJ: 1,
    ConstKind.CONCAT: 1,
    ConstKind.SEQAPP: 2,
    ConstKind.SINGLETON: 1,
}


@dataclass(frozen=True)
class Var:
    name: str
    type: FiniteType


@dataclass(frozen=True)
class Lam:
    var: str
    var_type: FiniteType
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Const:
    kind: ConstKind
    types: tuple[FiniteType, ...] = ()


@dataclass(frozen=True)
class SeqAbs:
    """Sequence abstraction: the singleton sequence containing one function.

    With body : t*, SeqAbs(x, s, body) : (s -> t*)*.
    """

    var: str
    var_type: FiniteType
    body: "Term"


Term = Var | Lam | App | Const | SeqAbs


def const_type(c: Const) -> FiniteType:
    """Instantiated type schema of a constant."""
    k, ts = c.kind, c.types
    if len(ts) != CONST_ARITY[k]:
        raise IllTyped(f"const {k.value}", f"{CONST_ARITY[k]} type params", len(ts))
    if k is ConstKind.ZERO:
        return N
    if k is ConstKind.SUCC:
        return Arrow(N, N)
    if k is ConstKind.NATREC:
        (s,) = ts
        return arrow(s, arrow(N, s, s), N, s)
    if k is ConstKind.LISTREC:
        s, t = ts
        return arrow(s, arrow(s, t, s), Star(t), s)
    if k is ConstKind.EMPTY:
        return Star(ts[0])
    if k is ConstKind.CONS:
        (s,) = ts
        return arrow(s, Star(s), Star(s))
    if k is ConstKind.LEN:
        return Arrow(Star(ts[0]), N)
    if k is ConstKind.PROJ:
        (s,) = ts
        return arrow(Star(s), N, s)
    if k is ConstKind.CONCAT:
        (s,) = ts
        return arrow(Star(s), Star(s), Star(s))
    if k is ConstKind.SEQAPP:
        s, t = ts
        return arrow(Star(Arrow(s, Star(t))), s, Star(t))
    if k is ConstKind.SINGLETON:
        (s,) = ts
        return Arrow(ts[0], Star(s))
    raise AssertionError(k)


def type_check(term: Term, context: dict[str, FiniteType] | None = None) -> FiniteType:
    """Synthesize the unique type of a term, or raise IllTyped/UnboundVariable."""
    ctx = dict(context) if context else {}

    def go(t: Term, env: dict[str, FiniteType]) -> FiniteType:
        if isinstance(t, Var):
            if t.name not in env:
                raise UnboundVariable(t.name)
            if env[t.name] != t.type:
                raise IllTyped(f"var {t.name}", env[t.name], t.type)
            return t.type
        if isinstance(t, Const):
            return const_type(t)
        if isinstance(t, Lam):
            body = go(t.body, {**env, t.var: t.var_type})
            return Arrow(t.var_type, body)
        if isinstance(t, SeqAbs):
            body = go(t.body, {**env, t.var: t.var_type})
            if not isinstance(body, Star):
                raise IllTyped("seqabs body", "a sequence type", body)
            return Star(Arrow(t.var_type, body))
        if isinstance(t, App):
            fun = go(t.fun, env)
            arg = go(t.arg, env)
            if not isinstance(fun, Arrow):
                raise IllTyped("application head", "an arrow type", fun)
            if fun.domain != arg:
                raise IllTyped("application argument", fun.domain, arg)
            return fun.codomain
        raise AssertionError(t)

    return go(term, ctx)


def synth_type(term: Term) -> FiniteType:
    """Type of a possibly open term, trusting the annotations on free variables."""

    def go(t: Term, env: dict[str, FiniteType]) -> FiniteType:
        if isinstance(t, Var):
            expected = env.get(t.name, t.type)
            if expected != t.type:
                raise IllTyped(f"var {t.name}", expected, t.type)
            return t.type
        if isinstance(t, Const):
            return const_type(t)
        if isinstance(t, Lam):
            return Arrow(t.var_type, go(t.body, {**env, t.var: t.var_type}))
        if isinstance(t, SeqAbs):
            body = go(t.body, {**env, t.var: t.var_type})
            if not isinstance(body, Star):
                raise IllTyped("seqabs body", "a sequence type", body)
            return Star(Arrow(t.var_type, body))
        if isinstance(t, App):
            fun = go(t.fun, env)
            arg = go(t.arg, env)
            if not isinstance(fun, Arrow):
                raise IllTyped("application head", "an arrow type", fun)
            if fun.domain != arg:
                raise IllTyped("application argument", fun.domain, arg)
            return fun.codomain
        raise AssertionError(t)

    return go(term, {})


def free_vars(term: Term) -> dict[str, FiniteType]:
    out: dict[str, FiniteType] = {}

    def go(t: Term, bound: frozenset[str]) -> None:
        if isinstance(t, Var):
            if t.name not in bound:
                out[t.name] = t.type
        elif isinstance(t, (Lam, SeqAbs)):
            go(t.body, bound | {t.var})
        elif isinstance(t, App):
            go(t.fun, bound)
            go(t.arg, bound)

    go(term, frozenset())
    return out


def all_names(term: Term) -> set[str]:
    """Every variable name occurring in the term, free or bound."""
    out: set[str] = set()

    def go(t: Term) -> None:
        if isinstance(t, Var):
            out.add(t.name)
        elif isinstance(t, (Lam, SeqAbs)):
            out.add(t.var)
            go(t.body)
        elif isinstance(t, App):
            go(t.fun)
            go(t.arg)

    go(term)
    return out


def fresh_name(base: str, avoid: set[str]) -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def mentions(term: Term, var: str) -> bool:
    """Whether the variable occurs free in the term."""
    if isinstance(term, Var):
        return term.name == var
    if isinstance(term, (Lam, SeqAbs)):
        return term.var != var and mentions(term.body, var)
    if isinstance(term, App):
        return mentions(term.fun, var) or mentions(term.arg, var)
    return False


def substitute(term: Term, var: str, replacement: Term) -> Term:
    """Capture-avoiding substitution of replacement for the free variable var."""

    if not mentions(term, var):
        return term
    repl_free = set(free_vars(replacement))

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return replacement if t.name == var else t
        if isinstance(t, Const):
            return t
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        if isinstance(t, (Lam, SeqAbs)):
            cls = type(t)
            if t.var == var:
                return t
            if t.var in repl_free and var in free_vars(t.body):
                new = fresh_name(t.var, repl_free | all_names(t.body) | {var})
                body = substitute(t.body, t.var, Var(new, t.var_type))
                return cls(new, t.var_type, go(body))
            return cls(t.var, t.var_type, go(t.body))
        raise AssertionError(t)

    return go(term)


def alpha_eq(t: Term, u: Term) -> bool:
    """Equality up to consistent renaming of bound variables."""

    def go(a: Term, b: Term, env_a: dict[str, int], env_b: dict[str, int], depth: int) -> bool:
        if isinstance(a, Var) and isinstance(b, Var):
            da, db = env_a.get(a.name), env_b.get(b.name)
            if da is None and db is None:
                return a.name == b.name and a.type == b.type
            return da == db and a.type == b.type
        if isinstance(a, Const) and isinstance(b, Const):
            return a == b
        if isinstance(a, App) and isinstance(b, App):
            return go(a.fun, b.fun, env_a, env_b, depth) and go(a.arg, b.arg, env_a, env_b, depth)
        if type(a) is type(b) and isinstance(a, (Lam, SeqAbs)):
            if a.var_type != b.var_type:
                return False
            return go(
                a.body,
                b.body,
                {**env_a, a.var: depth},
                {**env_b, b.var: depth},
                depth + 1,
            )
        return False

    return go(t, u, {}, {}, 0)


# -- construction helpers ----------------------------------------------------

ZERO = Const(ConstKind.ZERO)
SUCC = Const(ConstKind.SUCC)


def app(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def lam(binders: list[tuple[str, FiniteType]], body: Term) -> Term:
    for name, t in reversed(binders):
        body = Lam(name, t, body)
    return body


def sabs(binders: list[tuple[str, FiniteType]], body: Term) -> Term:
    """Iterated sequence abstraction over the binders."""
    for name, t in reversed(binders):
        body = SeqAbs(name, t, body)
    return body


def numeral(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = App(SUCC, t)
    return t


def empty_seq(elem: FiniteType) -> Term:
    return Const(ConstKind.EMPTY, (elem,))


def cons(elem: FiniteType, head: Term, tail: Term) -> Term:
    return app(Const(ConstKind.CONS, (elem,)), head, tail)


def seq_term(elem: FiniteType, items: list[Term]) -> Term:
    out = empty_seq(elem)
    for it in reversed(items):
        out = cons(elem, it, out)
    return out


def singleton(elem: FiniteType, item: Term) -> Term:
    return App(Const(ConstKind.SINGLETON, (elem,)), item)


def seq_len(elem: FiniteType, s: Term) -> Term:
    return App(Const(ConstKind.LEN, (elem,)), s)


def proj(elem: FiniteType, s: Term, i: Term) -> Term:
    return app(Const(ConstKind.PROJ, (elem,)), s, i)


def concat(elem: FiniteType, s: Term, t: Term) -> Term:
    return app(Const(ConstKind.CONCAT, (elem,)), s, t)


def seq_app(dom: FiniteType, codom_elem: FiniteType, s: Term, a: Term) -> Term:
    """s[a] for s : (dom -> codom_elem*)*."""
    return app(Const(ConstKind.SEQAPP, (dom, codom_elem)), s, a)


def seq_app_infer(s: Term, a: Term, s_type: FiniteType) -> Term:
    if not (isinstance(s_type, Star) and isinstance(s_type.element, Arrow)
            and isinstance(s_type.element.codomain, Star)):
        raise IllTyped("sequence application", "a type of shape (s -> t*)*", s_type)
    return seq_app(s_type.element.domain, s_type.element.codomain.element, s, a)


def nat_rec(result: FiniteType, base: Term, step: Term, n: Term) -> Term:
    return app(Const(ConstKind.NATREC, (result,)), base, step, n)


def list_rec(result: FiniteType, elem: FiniteType, base: Term, step: Term, s: Term) -> Term:
    return app(Const(ConstKind.LISTREC, (result, elem)), base, step, s)


def default_term(t: FiniteType) -> Term:
    """The canonical inhabitant of each type: 0, the empty sequence, or a constant function."""
    if isinstance(t, Ground):
        return ZERO
    if isinstance(t, Star):
        return empty_seq(t.element)
    if isinstance(t, Arrow):
        return Lam("_x", t.domain, default_term(t.codomain))
    raise AssertionError(t)


def flat_map(elem_in: FiniteType, elem_out: FiniteType, s: Term, var: str, body: Term) -> Term:
    """Concatenation over a sequence: body[x := s_0] . body[x := s_1] . ...

    body : elem_out* with the element variable free; the result has the same
    type. Encoded with the list recursor, accumulating from the right.
    """
    acc = fresh_name("acc", all_names(body) | {var})
    step = lam(
        [(acc, Star(elem_out)), (var, elem_in)],
        concat(elem_out, body, Var(acc, Star(elem_out))),
    )
    return list_rec(Star(elem_out), elem_in, empty_seq(elem_out), step, s)
