"""Composition trees over the generating tangles.

A tree is the evaluable form of a tangle: leaves name generators,
internal nodes glue a subtree into a numbered slot or renumber the open
slots.  `realize` folds a tree into the concrete diagram of
:mod:`planarbox.tangles`; algebra evaluation folds the same tree through
basis formulas instead.

The text form is an s-expression, e.g.::

    (compose (gen E 2 3) 1 (gen I 3 2))
    (renumber (2 1) (gen M 2))
    (gen unit plus)

Colour tokens are plain integers, with ``0+`` / ``0-`` selecting the
shading of a colour-0 disc (bare ``0`` means ``0+``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from planarbox.tangles import (
    Disc,
    Tangle,
    TangleError,
    compose,
    make_generator,
    renumber,
)


class ParseError(ValueError):
    """Malformed tangle-expression text."""


@dataclass(frozen=True)
class GenExpr:
    kind: str
    k: int = 0
    shaded: bool = False


@dataclass(frozen=True)
class ComposeExpr:
    outer: "TangleExpr"
    slot: int
    inner: "TangleExpr"


@dataclass(frozen=True)
class RenumberExpr:
    perm: tuple[int, ...]
    inner: "TangleExpr"


TangleExpr = Union[GenExpr, ComposeExpr, RenumberExpr]


# ---------------------------------------------------------------------------
# colours and slots, computed without building diagrams
# ---------------------------------------------------------------------------

def generator_signature(g: GenExpr) -> tuple[Disc, tuple[Disc, ...]]:
    """(external colour, per-slot colours) of a generator leaf."""
    kind, k, sh = g.kind, g.k, g.shaded
    if kind == "unit":
        if k != 0:
            raise TangleError("unit tangles have colour 0")
        return Disc(0, sh), ()
    if kind in ("id", "M") and (k > 0 and sh):
        raise TangleError("shading flag needs colour 0")
    if kind == "id":
        d = Disc(k, sh if k == 0 else False)
        return d, (d,)
    if kind == "M":
        d = Disc(k, sh if k == 0 else False)
        return d, (d, d)
    if kind == "I":
        if k > 0 and sh:
            raise TangleError("shading flag needs colour 0")
        return Disc(k + 1), (Disc(k, sh if k == 0 else False),)
    if kind == "E":
        if sh:
            raise TangleError("the capped-disc expectation forces white shading at colour 0")
        return Disc(k), (Disc(k + 1),)
    if kind == "Eprime":
        if k < 1:
            raise TangleError("left expectation needs colour >= 1")
        return Disc(k), (Disc(k),)
    if kind == "jones":
        if k < 2:
            raise TangleError("the cup-cap tangle needs colour >= 2")
        return Disc(k), ()
    raise TangleError(f"unknown generator kind {kind!r}")


def external_colour(expr: TangleExpr) -> Disc:
    if isinstance(expr, GenExpr):
        return generator_signature(expr)[0]
    if isinstance(expr, ComposeExpr):
        return external_colour(expr.outer)
    return external_colour(expr.inner)


def slot_colours(expr: TangleExpr) -> tuple[Disc, ...]:
    if isinstance(expr, GenExpr):
        return generator_signature(expr)[1]
    if isinstance(expr, ComposeExpr):
        outer = slot_colours(expr.outer)
        if not 1 <= expr.slot <= len(outer):
            raise TangleError(f"slot {expr.slot} out of range 1..{len(outer)}")
        inner_ext = external_colour(expr.inner)
        if outer[expr.slot - 1] != inner_ext:
            raise TangleError(
                f"colour mismatch at slot {expr.slot}: "
                f"{outer[expr.slot - 1].label()} vs {inner_ext.label()}"
            )
        return (
            outer[: expr.slot - 1] + slot_colours(expr.inner) + outer[expr.slot :]
        )
    inner = slot_colours(expr.inner)
    perm = expr.perm
    if sorted(perm) != list(range(1, len(inner) + 1)):
        raise TangleError(f"not a permutation of 1..{len(inner)}: {list(perm)}")
    out = [Disc(0)] * len(inner)
    for i, img in enumerate(perm, start=1):
        out[img - 1] = inner[i - 1]
    return tuple(out)


def arity(expr: TangleExpr) -> int:
    return len(slot_colours(expr))


def realize(expr: TangleExpr) -> Tangle:
    """Fold the tree into a concrete tangle."""
    if isinstance(expr, GenExpr):
        return make_generator(expr.kind, expr.k, expr.shaded)
    if isinstance(expr, ComposeExpr):
        return compose(realize(expr.outer), expr.slot, realize(expr.inner))
    return renumber(realize(expr.inner), expr.perm)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise ParseError("unexpected end of input")
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _read(tokens, pos)
            items.append(item)
        if pos >= len(tokens):
            raise ParseError("missing closing parenthesis")
        return items, pos + 1
    if tok == ")":
        raise ParseError("unbalanced closing parenthesis")
    return tok, pos + 1


def _parse_colour(tok: str) -> tuple[int, bool]:
    if tok == "0+":
        return 0, False
    if tok == "0-":
        return 0, True
    try:
        k = int(tok)
    except ValueError:
        raise ParseError(f"bad colour token {tok!r}") from None
    if k < 0:
        raise ParseError(f"bad colour token {tok!r}")
    return k, False


def _build(form) -> TangleExpr:
    if not isinstance(form, list) or not form:
        raise ParseError(f"expected a parenthesized form, got {form!r}")
    head = form[0]
    if head == "gen":
        if len(form) < 2:
            raise ParseError("(gen ...) needs a generator name")
        kind = form[1]
        args = form[2:]
        if kind == "unit":
            if len(args) != 1 or args[0] not in ("plus", "minus"):
                raise ParseError("(gen unit plus|minus)")
            return GenExpr("unit", 0, args[0] == "minus")
        if kind in ("id", "M", "Eprime", "jones"):
            if len(args) != 1:
                raise ParseError(f"(gen {kind} <colour>)")
            k, sh = _parse_colour(args[0])
            return GenExpr(kind, k, sh)
        if kind == "E":
            if len(args) != 2:
                raise ParseError("(gen E <k> <k+1>)")
            k, sh = _parse_colour(args[0])
            hi, hish = _parse_colour(args[1])
            if hish or hi != k + 1:
                raise ParseError(f"(gen E k k+1): got colours {args[0]}, {args[1]}")
            return GenExpr("E", k, sh)
        if kind == "I":
            if len(args) != 2:
                raise ParseError("(gen I <k+1> <k>)")
            hi, hish = _parse_colour(args[0])
            k, sh = _parse_colour(args[1])
            if hish or hi != k + 1:
                raise ParseError(f"(gen I k+1 k): got colours {args[0]}, {args[1]}")
            return GenExpr("I", k, sh)
        raise ParseError(f"unknown generator {kind!r}")
    if head == "compose":
        if len(form) != 4:
            raise ParseError("(compose <outer> <slot> <inner>)")
        outer = _build(form[1])
        try:
            slot = int(form[2])
        except (TypeError, ValueError):
            raise ParseError(f"bad slot index {form[2]!r}") from None
        return ComposeExpr(outer, slot, _build(form[3]))
    if head == "renumber":
        if len(form) != 3 or not isinstance(form[1], list):
            raise ParseError("(renumber (<images...>) <expr>)")
        try:
            perm = tuple(int(x) for x in form[1])
        except (TypeError, ValueError):
            raise ParseError(f"bad permutation {form[1]!r}") from None
        return RenumberExpr(perm, _build(form[2]))
    raise ParseError(f"unknown form {head!r}")


def parse_expr(text: str) -> TangleExpr:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    form, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing input after expression: {tokens[pos:]}")
    return _build(form)


def render_expr(expr: TangleExpr) -> str:
    if isinstance(expr, GenExpr):
        if expr.kind == "unit":
            return f"(gen unit {'minus' if expr.shaded else 'plus'})"
        col = Disc(expr.k, expr.shaded).label()
        if expr.kind == "E":
            return f"(gen E {col} {expr.k + 1})"
        if expr.kind == "I":
            return f"(gen I {expr.k + 1} {col})"
        return f"(gen {expr.kind} {col})"
    if isinstance(expr, ComposeExpr):
        return f"(compose {render_expr(expr.outer)} {expr.slot} {render_expr(expr.inner)})"
    images = " ".join(str(i) for i in expr.perm)
    return f"(renumber ({images}) {render_expr(expr.inner)})"


# ---------------------------------------------------------------------------
# random sampling for the property suites
# ---------------------------------------------------------------------------

def generators_with_external(colour: Disc, max_colour: int) -> list[GenExpr]:
    """All generator leaves of external colour ``colour`` whose discs
    stay within ``max_colour``."""
    k, sh = colour
    out: list[GenExpr] = []
    if k == 0:
        out.append(GenExpr("unit", 0, sh))
        out.append(GenExpr("id", 0, sh))
        out.append(GenExpr("M", 0, sh))
        if not sh and max_colour >= 1:
            out.append(GenExpr("E", 0))
    else:
        out.append(GenExpr("id", k))
        out.append(GenExpr("M", k))
        out.append(GenExpr("Eprime", k))
        if k >= 2:
            out.append(GenExpr("jones", k))
        if k + 1 <= max_colour:
            out.append(GenExpr("E", k))
        if k == 1:
            out.append(GenExpr("I", 0))
            out.append(GenExpr("I", 0, True))
        else:
            out.append(GenExpr("I", k - 1))
    return out


def random_expr(
    rng: random.Random,
    colour: Disc | None = None,
    max_colour: int = 4,
    depth: int = 2,
    fill_probability: float = 0.6,
) -> TangleExpr:
    """A random well-coloured tree with every disc colour ``<= max_colour``."""
    if colour is None:
        k = rng.randint(0, max_colour)
        colour = Disc(k, rng.random() < 0.5 if k == 0 else False)
    expr: TangleExpr = rng.choice(generators_with_external(colour, max_colour))
    if depth > 0:
        slots = slot_colours(expr)
        # fill from the right so earlier slot indices stay valid
        for i in range(len(slots), 0, -1):
            if rng.random() < fill_probability:
                sub = random_expr(
                    rng, slots[i - 1], max_colour, depth - 1, fill_probability
                )
                expr = ComposeExpr(expr, i, sub)
    n = arity(expr)
    if n > 1 and rng.random() < 0.2:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        expr = RenumberExpr(tuple(perm), expr)
    return expr


def random_composable_pair(
    rng: random.Random,
    max_colour: int = 4,
    depth: int = 2,
    max_arity: int | None = None,
    fill_probability: float = 0.6,
) -> tuple[TangleExpr, int, TangleExpr]:
    """A pair ``(T, i, S)`` with the external colour of ``S`` matching
    slot ``i`` of ``T``; resamples until ``T`` has an open slot (and the
    combined arity fits ``max_arity`` when given)."""
    while True:
        outer = random_expr(rng, None, max_colour, depth, fill_probability)
        slots = slot_colours(outer)
        if not slots:
            continue
        i = rng.randint(1, len(slots))
        inner = random_expr(rng, slots[i - 1], max_colour, depth, fill_probability)
        if max_arity is not None and len(slots) - 1 + arity(inner) > max_arity:
            continue
        return outer, i, inner
