"""The planar algebra of a finite group, with exact scalars.

Colour-k space: formal combinations of basis symbols S(g_1,...,g_{k-1})
over group elements, with the empty label spanning colours 0 and 1.  The
closed-loop value is the square root of the group order.  Products,
star, trace, and the generator-tangle actions all follow the basis
formulas pinned down by scripts/solve_base_constants.py.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .expressions import (
    ComposeExpr,
    GenExpr,
    RenumberExpr,
    TangleExpr,
    arity,
    generator_signature,
)
from .groups import FiniteGroup
from .scalars import ONE, ZERO, RadicalScalar, canonical_sqrt, pow_half
from .tangles import Disc

Label = tuple[int, ...]

MAX_CLOSED_FORM_COLOUR = 5


class AlgebraError(ValueError):
    """Colour mismatches, unsupported colours, malformed labels."""


class PAElement:
    """A finite combination of basis symbols at one colour.

    Instances are immutable in spirit: nothing in the library mutates
    `coeffs` after construction, and zero coefficients are dropped on
    the way in.  The shading flag is only meaningful at colour 0, where
    the two one-dimensional spaces must be kept apart.
    """

    __slots__ = ("colour", "shaded", "coeffs")

    def __init__(self, colour: int, coeffs: Mapping[Label, RadicalScalar], shaded: bool = False):
        if colour < 0:
            raise AlgebraError("colour must be nonnegative")
        length = max(colour - 1, 0)
        clean: dict[Label, RadicalScalar] = {}
        for label, c in coeffs.items():
            lab = tuple(label)
            if len(lab) != length:
                raise AlgebraError(
                    f"label {lab} has length {len(lab)}, colour {colour} needs {length}"
                )
            if not c.is_zero():
                clean[lab] = c
        self.colour = colour
        self.shaded = bool(shaded) if colour == 0 else False
        self.coeffs = clean

    def disc(self) -> Disc:
        return Disc(self.colour, self.shaded)

    def coefficient(self, label: Sequence[int]) -> RadicalScalar:
        return self.coeffs.get(tuple(label), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[Label]:
        return sorted(self.coeffs)

    def _check_compatible(self, other: "PAElement") -> None:
        if self.colour != other.colour or self.shaded != other.shaded:
            raise AlgebraError(
                f"colour mismatch: {self.disc().label()} vs {other.disc().label()}"
            )

    def __add__(self, other: "PAElement") -> "PAElement":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for lab, c in other.coeffs.items():
            out[lab] = out.get(lab, ZERO) + c
        return PAElement(self.colour, out, self.shaded)

    def __neg__(self) -> "PAElement":
        return PAElement(
            self.colour, {lab: -c for lab, c in self.coeffs.items()}, self.shaded
        )

    def __sub__(self, other: "PAElement") -> "PAElement":
        return self + (-other)

    def scale(self, c) -> "PAElement":
        if not isinstance(c, RadicalScalar):
            c = ONE * c
        return PAElement(
            self.colour, {lab: v * c for lab, v in self.coeffs.items()}, self.shaded
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PAElement)
            and self.colour == other.colour
            and self.shaded == other.shaded
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"PAElement(colour={self.disc().label()}, terms={len(self.coeffs)})"


def row_reduce(vectors: Iterable[PAElement]) -> list[PAElement]:
    """Echelon basis of the span of the given vectors, exact arithmetic.

    Pivots are the lexicographically least labels; each returned vector is
    normalized to leading coefficient 1 and the list is sorted by pivot.
    """
    pivots: dict[Label, PAElement] = {}
    for v in vectors:
        for lab in sorted(pivots):
            c = v.coefficient(lab)
            if not c.is_zero():
                v = v - pivots[lab].scale(c)
        if v.is_zero():
            continue
        lead = v.support()[0]
        pivots[lead] = v.scale(v.coefficient(lead).invert())
    return [pivots[lab] for lab in sorted(pivots)]


class GroupPlanarAlgebra:
    """All colour spaces of one group, and the operations between them."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.delta = canonical_sqrt(group.order)
        self._inv_delta = self.delta.invert()

    # --- construction helpers -------------------------------------------

    def zero(self, colour: int, shaded: bool = False) -> PAElement:
        return PAElement(colour, {}, shaded)

    def element(
        self, colour: int, coeffs: Mapping[Label, "RadicalScalar | int | Fraction"], shaded: bool = False
    ) -> PAElement:
        """Build an element, accepting plain rationals as coefficients."""
        coerced = {
            label: c if isinstance(c, RadicalScalar) else RadicalScalar.rational(c)
            for label, c in coeffs.items()
        }
        return PAElement(colour, coerced, shaded)

    def basis_element(self, colour: int, label: Sequence[int] = (), shaded: bool = False) -> PAElement:
        return PAElement(colour, {tuple(label): ONE}, shaded)

    def basis_labels(self, colour: int) -> Iterable[Label]:
        return itertools.product(self.group.elements(), repeat=max(colour - 1, 0))

    def dimension(self, colour: int) -> int:
        return self.group.order ** max(colour - 1, 0)

    def unit(self, colour: int, shaded: bool = False) -> PAElement:
        n = self.group.order
        if colour <= 2:
            label = () if colour <= 1 else (0,)
            return PAElement(colour, {label: ONE}, shaded)
        if colour == 3:
            c = self._inv_delta
            return PAElement(3, {(0, h): c for h in range(n)})
        if colour == 4:
            c = self._inv_delta
            return PAElement(4, {(0, h, h): c for h in range(n)})
        if colour == 5:
            c = pow_half(n, -2)
            return PAElement(
                5, {(0, h, u, h): c for h in range(n) for u in range(n)}
            )
        raise AlgebraError(
            f"unit closed forms are tabulated through colour {MAX_CLOSED_FORM_COLOUR}"
        )

    def jones_element(self, colour: int) -> PAElement:
        n = self.group.order
        if colour == 2:
            c = pow_half(n, -2)
            return PAElement(2, {(g,): c for g in range(n)})
        if colour == 3:
            return PAElement(3, {(0, 0): self._inv_delta})
        if colour == 4:
            c = pow_half(n, -3)
            return PAElement(
                4, {(0, b, c2): c for b in range(n) for c2 in range(n)}
            )
        if colour == 5:
            c = pow_half(n, -2)
            return PAElement(5, {(0, b, b, b): c for b in range(n)})
        raise AlgebraError(
            f"jones closed forms cover colours 2..{MAX_CLOSED_FORM_COLOUR}"
        )

    # --- ring structure --------------------------------------------------

    def _basis_product(self, colour: int, g: Label, h: Label):
        """(coefficient, label) for a product of basis symbols, or None."""
        n = self.group.order
        op = self.group.op
        if colour <= 1:
            return ONE, ()
        if colour == 2:
            return ONE, (op(g[0], h[0]),)
        m = (colour + 1) // 2
        for i in range(2, m + 1):
            if op(h[0], g[colour - i]) != h[i - 1]:
                return None
        coeff = pow_half(n, m - 1)
        label = tuple(op(h[0], g[j]) for j in range(m)) + h[m : colour - 1]
        return coeff, label

    def multiply(self, x: PAElement, y: PAElement) -> PAElement:
        x._check_compatible(y)
        out: dict[Label, RadicalScalar] = {}
        for g, cg in x.coeffs.items():
            for h, ch in y.coeffs.items():
                r = self._basis_product(x.colour, g, h)
                if r is None:
                    continue
                c, lab = r
                out[lab] = out.get(lab, ZERO) + cg * ch * c
        return PAElement(x.colour, out, x.shaded)

    def star(self, x: PAElement) -> PAElement:
        inv = self.group.inv
        op = self.group.op
        out: dict[Label, RadicalScalar] = {}
        for lab, c in x.coeffs.items():
            if x.colour <= 1:
                s: Label = ()
            elif x.colour == 2:
                s = (inv(lab[0]),)
            else:
                first = inv(lab[0])
                s = (first,) + tuple(
                    op(first, lab[j]) for j in range(x.colour - 2, 0, -1)
                )
            out[s] = out.get(s, ZERO) + c
        return PAElement(x.colour, out, x.shaded)

    def trace(self, x: PAElement) -> RadicalScalar:
        cur = x
        for k in range(x.colour - 1, 0, -1):
            cur = self._act_E(k, cur).scale(self._inv_delta)
        return cur.coefficient(())

    def inner(self, x: PAElement, y: PAElement) -> RadicalScalar:
        """The trace pairing tr(y* x)."""
        return self.trace(self.multiply(self.star(y), x))

    # --- generator actions -----------------------------------------------

    def _act_E(self, target: int, x: PAElement) -> PAElement:
        out: dict[Label, RadicalScalar] = {}

        def put(lab: Label, c: RadicalScalar) -> None:
            out[lab] = out.get(lab, ZERO) + c

        for g, cg in x.coeffs.items():
            if target == 0:
                put((), cg * self.delta)
            elif target == 1:
                if g[0] == 0:
                    put((), cg * self.delta)
            elif target == 2:
                put((self.group.inv(g[0]),), cg)
            elif target % 2 == 0:
                put(g[: target // 2] + g[target // 2 + 1 :], cg)
            else:
                m = (target + 1) // 2
                if g[m - 1] == g[m]:
                    put(g[:m] + g[m + 1 :], cg * self.delta)
        return PAElement(target, out, shaded=False)

    def _act_I(self, source: int, x: PAElement) -> PAElement:
        n = self.group.order
        out: dict[Label, RadicalScalar] = {}

        def put(lab: Label, c: RadicalScalar) -> None:
            out[lab] = out.get(lab, ZERO) + c

        for g, cg in x.coeffs.items():
            if source == 0:
                put((), cg)
            elif source == 1:
                put((0,), cg)
            elif source % 2 == 0:
                spread = cg * self._inv_delta
                for u in range(n):
                    put(g[: source // 2] + (u,) + g[source // 2 :], spread)
            else:
                m = (source + 1) // 2
                put(g[:m] + (g[m - 1],) + g[m:], cg)
        return PAElement(source + 1, out)

    def _act_Eprime(self, colour: int, x: PAElement) -> PAElement:
        out: dict[Label, RadicalScalar] = {}
        for g, cg in x.coeffs.items():
            if colour == 1:
                out[()] = out.get((), ZERO) + cg * self.delta
            elif g[0] == 0:
                out[g] = out.get(g, ZERO) + cg * self.delta
        return PAElement(colour, out)

    def act_generator(self, gen: GenExpr, inputs: Sequence[PAElement]) -> PAElement:
        external, slots = generator_signature(gen)
        if len(inputs) != len(slots):
            raise AlgebraError(
                f"{gen.kind} expects {len(slots)} input(s), got {len(inputs)}"
            )
        for x, d in zip(inputs, slots):
            if x.disc() != d:
                raise AlgebraError(
                    f"input colour {x.disc().label()} does not fit slot {d.label()}"
                )
        if gen.kind == "unit":
            return PAElement(0, {(): ONE}, gen.shaded)
        if gen.kind == "id":
            return inputs[0]
        if gen.kind == "M":
            return self.multiply(inputs[0], inputs[1])
        if gen.kind == "E":
            return self._act_E(gen.k, inputs[0])
        if gen.kind == "I":
            return self._act_I(gen.k, inputs[0])
        if gen.kind == "Eprime":
            return self._act_Eprime(gen.k, inputs[0])
        if gen.kind == "jones":
            return self.jones_element(gen.k).scale(self.delta)
        raise AlgebraError(f"unknown generator kind {gen.kind!r}")

    def evaluate(self, expr: TangleExpr, inputs: Sequence[PAElement]) -> PAElement:
        if len(inputs) != arity(expr):
            raise AlgebraError(
                f"expression takes {arity(expr)} input(s), got {len(inputs)}"
            )
        return self._evaluate(expr, list(inputs))

    def _evaluate(self, expr: TangleExpr, inputs: list[PAElement]) -> PAElement:
        if isinstance(expr, GenExpr):
            return self.act_generator(expr, inputs)
        if isinstance(expr, ComposeExpr):
            i = expr.slot
            b = arity(expr.inner)
            before = inputs[: i - 1]
            inner_val = self._evaluate(expr.inner, inputs[i - 1 : i - 1 + b])
            after = inputs[i - 1 + b :]
            return self._evaluate(expr.outer, before + [inner_val] + after)
        if isinstance(expr, RenumberExpr):
            permuted = [inputs[expr.perm[i] - 1] for i in range(len(inputs))]
            return self._evaluate(expr.inner, permuted)
        raise AlgebraError(f"cannot evaluate {type(expr).__name__}")

    # --- bulk structure for exhaustive checks ----------------------------

    def product_constant(self, colour: int) -> RadicalScalar:
        """The prefactor shared by every nonzero basis product at a colour.

        Raises when products at the colour mix prefactors, which would make
        :meth:`product_index_table` meaningless.
        """
        found: RadicalScalar | None = None
        for g in self.basis_labels(colour):
            for h in self.basis_labels(colour):
                r = self._basis_product(colour, g, h)
                if r is None:
                    continue
                if found is None:
                    found = r[0]
                elif found != r[0]:
                    raise AlgebraError(
                        f"basis products at colour {colour} mix prefactors"
                    )
        if found is None:
            raise AlgebraError(f"no nonzero basis products at colour {colour}")
        return found

    def product_index_table(self, colour: int):
        """Basis products as an index map.

        At a fixed colour every product of two basis symbols is either
        zero or a single symbol with the same constant prefactor, so the
        whole multiplication is captured by one integer matrix: entry
        (i, j) is the index of the product symbol, or -1 for zero.
        Returns (table, labels).
        """
        labels = list(self.basis_labels(colour))
        index = {lab: i for i, lab in enumerate(labels)}
        size = len(labels)
        table = np.full((size, size), -1, dtype=np.int32)
        for i, g in enumerate(labels):
            for j, h in enumerate(labels):
                r = self._basis_product(colour, g, h)
                if r is not None:
                    table[i, j] = index[r[1]]
        return table, labels

    # --- rendering --------------------------------------------------------

    def label_symbol(self, colour: int, label: Label, shaded: bool = False) -> str:
        if colour == 0:
            return "1[0-]" if shaded else "1[0+]"
        if colour == 1:
            return "1[1]"
        names = ",".join(self.group.name(g) for g in label)
        return f"S({names})"

    def render(self, x: PAElement) -> str:
        if x.is_zero():
            return "0"
        parts = []
        for lab in x.support():
            c = x.coeffs[lab]
            sym = self.label_symbol(x.colour, lab, x.shaded)
            text = c.render()
            if text == "1":
                parts.append(sym)
            elif text == "-1":
                parts.append(f"-{sym}")
            elif " " in text:
                parts.append(f"({text})*{sym}")
            else:
                parts.append(f"{text}*{sym}")
        return " + ".join(parts)
