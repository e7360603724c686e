"""Finite types over the ground type of naturals, closed under arrow and sequence."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Ground:
    """The type of natural numbers, written N in concrete syntax."""

    def __repr__(self) -> str:
        return "N"


@dataclass(frozen=True)
class Arrow:
    domain: "FiniteType"
    codomain: "FiniteType"

    def __repr__(self) -> str:
        return f"(-> {self.domain!r} {self.codomain!r})"


@dataclass(frozen=True)
class Star:
    """Finite sequences over the element type."""

    element: "FiniteType"

    def __repr__(self) -> str:
        return f"(* {self.element!r})"


FiniteType = Ground | Arrow | Star

N = Ground()


def arrow(*types: FiniteType) -> FiniteType:
    """Right-nested arrow type arrow(a, b, c) == a -> (b -> c)."""
    if not types:
        raise ValueError("arrow needs at least one type")
    out = types[-1]
    for t in reversed(types[:-1]):
        out = Arrow(t, out)
    return out


def star(t: FiniteType) -> Star:
    return Star(t)


def is_data_type(t: FiniteType) -> bool:
    """True iff the type is built from Ground and Star only."""
    if isinstance(t, Ground):
        return True
    if isinstance(t, Star):
        return is_data_type(t.element)
    return False


def type_depth(t: FiniteType) -> int:
    if isinstance(t, Ground):
        return 0
    if isinstance(t, Star):
        return 1 + type_depth(t.element)
    return 1 + max(type_depth(t.domain), type_depth(t.codomain))


def seqfn(domains: list[FiniteType], result: FiniteType) -> FiniteType:
    """Type of iterated sequence application: seqfn([a,b], T) = (a -> (b -> T)*)*.

    With no domains this is T itself; the result of applying a value of this
    type to arguments of the given domains, one sequence application at a
    time, has type T.
    """
    out = result
    for d in reversed(domains):
        out = Star(Arrow(d, out))
    return out
