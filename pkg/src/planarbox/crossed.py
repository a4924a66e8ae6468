"""Crossed-product structure over a group planar algebra.

A faithful action of a finite group Theta on a finite group G gives the
semidirect product H = G x| Theta.  Inside the labelled algebra of H two
families of elements matter here: sums of basis labels over a diagonal
Theta-orbit (living in the algebra of G), and the fatter "twist" sums
where every tensor slot is additionally averaged over Theta (living in
the algebra of H).  Both families multiply by closed formulas, the twist
sums span the range of an idempotent surround map built from the
biprojection, and a rescaling transports one family onto the other.
This module implements the two families, their products, the surround
map, the biprojection with its verification report, and the transport
map together with its generator-intertwining checks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from typing import Iterable, Sequence

from .expressions import GenExpr, generator_signature, realize
from .group_algebra import AlgebraError, GroupPlanarAlgebra, Label, PAElement
from .groups import (
    GroupAction,
    SemidirectGroup,
    build_semidirect,
    orbit_of,
    orbit_representatives,
)
from .scalars import ONE, ZERO, RadicalScalar, pow_half
from .tangles import alpha


def _record(suite: str, case: str, lhs: str, rhs: str) -> dict:
    return {"suite": suite, "case": case, "lhs": lhs, "rhs": rhs, "pass": lhs == rhs}


class CrossedProduct:
    """Both planar algebras attached to an action, with the maps between them.

    ``base`` is the labelled algebra of the acted-on group G and ``product``
    the labelled algebra of the semidirect product H.  All colour/label
    conventions are inherited from :class:`GroupPlanarAlgebra`.
    """

    __slots__ = (
        "action",
        "group",
        "semidirect",
        "base",
        "product",
        "_twist_cache",
        "_canon_cache",
    )

    def __init__(self, action: GroupAction):
        self.action = action
        self.group = action.group
        self.semidirect: SemidirectGroup = build_semidirect(action)
        self.base = GroupPlanarAlgebra(self.group)
        self.product = GroupPlanarAlgebra(self.semidirect)
        self._twist_cache: dict[tuple[int, Label], PAElement] = {}
        self._canon_cache: dict[Label, Label] = {}

    @property
    def theta_order(self) -> int:
        return self.semidirect.theta_order

    # ------------------------------------------------------------------
    # orbit sums in the algebra of G

    def orbit_reps(self, colour: int) -> list[Label]:
        """Lexicographically least representatives of Theta on G^(colour-1)."""
        if colour < 1:
            raise AlgebraError("orbit bases exist for colour >= 1 only")
        return orbit_representatives(self.action, colour - 1)

    def orbit_sum(self, colour: int, label: Sequence[int]) -> PAElement:
        """Sum of S(theta(label)) over theta, an invariant element of colour k.

        The sum is taken with multiplicity, so a label with a nontrivial
        stabilizer picks up the stabilizer order as a coefficient.
        """
        label = tuple(label)
        if len(label) != max(colour - 1, 0):
            raise AlgebraError(
                f"label length {len(label)} does not match colour {colour}"
            )
        coeffs: dict[Label, RadicalScalar] = {}
        for t in range(self.theta_order):
            moved = self.action.apply_tuple(t, label)
            coeffs[moved] = coeffs.get(moved, ZERO) + ONE
        return PAElement(colour, coeffs)

    def orbit_basis(self, colour: int) -> list[tuple[Label, PAElement]]:
        """One orbit sum per orbit, keyed by its lexicographically least label."""
        return [(rep, self.orbit_sum(colour, rep)) for rep in self.orbit_reps(colour)]

    def stabilizer_order(self, label: Sequence[int]) -> int:
        return self.theta_order // len(orbit_of(self.action, tuple(label)))

    def is_invariant(self, x: PAElement) -> bool:
        """Whether the componentwise Theta-relabelling fixes x."""
        for t in range(1, self.theta_order):
            for label, c in x.coeffs.items():
                if x.coefficient(self.action.apply_tuple(t, label)) != c:
                    return False
        return True

    def invariant_components(self, x: PAElement) -> dict[Label, RadicalScalar]:
        """Decompose an invariant element over the orbit sums.

        Returns coefficients keyed by orbit representative, so that x equals
        the sum of ``coeff * orbit_sum(rep)``.  Raises if x is not invariant.
        """
        if not self.is_invariant(x):
            raise AlgebraError("element is not invariant under the group action")
        comps: dict[Label, RadicalScalar] = {}
        for label in x.support():
            rep = min(orbit_of(self.action, label))
            if rep in comps:
                continue
            comps[rep] = x.coefficient(rep) / self.stabilizer_order(rep)
        return comps

    def orbit_multiply(self, x: PAElement, y: PAElement) -> PAElement:
        """Product of two invariant elements by the closed orbit formula.

        Agrees with the plain algebra product; the tests pin that agreement
        down exhaustively.  Inputs of colour at most 1 are scalar multiples
        of the empty label and are multiplied directly.
        """
        x._check_compatible(y)
        k = x.colour
        if k <= 1:
            return self.base.multiply(x, y)
        cx = self.invariant_components(x)
        cy = self.invariant_components(y)
        op = self.group.op
        acc: dict[Label, RadicalScalar] = {}

        def add_orbit_sum(label: Label, c: RadicalScalar) -> None:
            for t in range(self.theta_order):
                moved = self.action.apply_tuple(t, label)
                acc[moved] = acc.get(moved, ZERO) + c

        if k == 2:
            for (g,), a in cx.items():
                for (h,), b in cy.items():
                    ab = a * b
                    for t in range(self.theta_order):
                        add_orbit_sum((op(g, self.action.apply(t, h)),), ab)
            return PAElement(k, acc)
        m = (k + 1) // 2
        pref = pow_half(len(self.group), m - 1)
        for gbar, a in cx.items():
            for hbar, b in cy.items():
                weight = a * b * pref
                h1 = hbar[0]
                for t in range(self.theta_order):
                    tg = self.action.apply_tuple(t, gbar)
                    if all(op(h1, tg[k - i]) == hbar[i - 1] for i in range(2, m + 1)):
                        merged = tuple(op(h1, tg[j]) for j in range(m)) + hbar[m:]
                        add_orbit_sum(merged, weight)
        return PAElement(k, acc)

    # ------------------------------------------------------------------
    # twist sums in the algebra of H

    def twist_sum(self, colour: int, label: Sequence[int]) -> PAElement:
        """Orbit sum with every slot decorated by all of Theta.

        The result lives in the algebra of the semidirect product and only
        depends on the orbit of the label.
        """
        label = tuple(label)
        if colour < 1 or len(label) != colour - 1:
            raise AlgebraError(
                f"label length {len(label)} does not match colour {colour}"
            )
        key = (colour, min(orbit_of(self.action, label)))
        cached = self._twist_cache.get(key)
        if cached is not None:
            return cached
        index = self.semidirect.index
        coeffs: dict[Label, RadicalScalar] = {}
        for t in range(self.theta_order):
            moved = self.action.apply_tuple(t, label)
            for twists in iter_product(range(self.theta_order), repeat=len(label)):
                lbl = tuple(index(g, u) for g, u in zip(moved, twists))
                coeffs[lbl] = coeffs.get(lbl, ZERO) + ONE
        out = PAElement(colour, coeffs)
        self._twist_cache[key] = out
        return out

    def twist_components(self, x: PAElement) -> dict[Label, RadicalScalar]:
        """Decompose an element of the surround range over the twist sums.

        Keys are orbit representatives; raises if x lies outside the span.
        """
        if x.colour < 1:
            raise AlgebraError("twist sums exist for colour >= 1 only")
        index = self.semidirect.index
        comps: dict[Label, RadicalScalar] = {}
        for rep in self.orbit_reps(x.colour):
            canonical = tuple(index(g, 0) for g in rep)
            c = x.coefficient(canonical) / self.stabilizer_order(rep)
            if not c.is_zero():
                comps[rep] = c
        rebuilt = self.product.zero(x.colour)
        for rep, c in comps.items():
            rebuilt = rebuilt + self.twist_sum(x.colour, rep).scale(c)
        if rebuilt != x:
            raise AlgebraError("element lies outside the span of the twist sums")
        return comps

    def twist_multiply(self, colour: int, gbar: Sequence[int], hbar: Sequence[int]) -> PAElement:
        """Product of two twist sums by the closed formula, fully expanded.

        The colour-2 product carries the prefactor |Theta| and no delta
        constraints; higher colours follow the general merged-label formula.
        """
        if colour < 2:
            raise AlgebraError("the twist product needs colour >= 2")
        gbar = tuple(gbar)
        hbar = tuple(hbar)
        op = self.group.op
        out = self.product.zero(colour)
        if colour == 2:
            (g,) = gbar
            (h,) = hbar
            for t in range(self.theta_order):
                term = self.twist_sum(2, (op(g, self.action.apply(t, h)),))
                out = out + term.scale(Fraction(self.theta_order))
            return out
        k = colour
        m = (k + 1) // 2
        pref = (
            pow_half(len(self.group), m - 1)
            * pow_half(self.theta_order, m - 1)
            * Fraction(self.theta_order ** (k // 2))
        )
        h1 = hbar[0]
        for t in range(self.theta_order):
            tg = self.action.apply_tuple(t, gbar)
            if all(op(h1, tg[k - i]) == hbar[i - 1] for i in range(2, m + 1)):
                merged = tuple(op(h1, tg[j]) for j in range(m)) + hbar[m:]
                out = out + self.twist_sum(k, merged).scale(pref)
        return out

    # ------------------------------------------------------------------
    # surround map and biprojection

    def surround(self, x: PAElement) -> PAElement:
        """The idempotent spread of an element of the product algebra.

        Each basis label is replaced by the average of its twist sum; the
        twist coordinates of the input are forgotten in the process.  Colour
        0 elements are scalars and pass through unchanged.
        """
        if x.colour == 0:
            return PAElement(0, dict(x.coeffs), x.shaded)
        pair = self.semidirect.pair
        scale = Fraction(1, self.theta_order**x.colour)
        # a twist sum only depends on the orbit of the G-parts, so gather
        # the input weight per orbit before spreading it over twist labels
        rep_weights: dict[Label, RadicalScalar] = {}
        for label, c in x.coeffs.items():
            parts = tuple(pair(h)[0] for h in label)
            rep = self._canon_cache.get(parts)
            if rep is None:
                rep = min(orbit_of(self.action, parts))
                self._canon_cache[parts] = rep
            rep_weights[rep] = rep_weights.get(rep, ZERO) + c
        acc: dict[Label, RadicalScalar] = {}
        for rep, weight in rep_weights.items():
            weight = weight * scale
            if weight.is_zero():
                continue
            for lbl, c2 in self.twist_sum(x.colour, rep).coeffs.items():
                acc[lbl] = acc.get(lbl, ZERO) + c2 * weight
        return PAElement(x.colour, acc)

    def biprojection(self) -> PAElement:
        """The colour-2 average of the embedded copy of Theta."""
        index = self.semidirect.index
        c = RadicalScalar.rational(Fraction(1, self.theta_order))
        return PAElement(2, {(index(0, t),): c for t in range(self.theta_order)})

    def averaging_projection(self, members: Iterable[int]) -> PAElement:
        """Colour-2 average of S(u) over a subgroup of the semidirect product."""
        members = sorted(set(members))
        H = self.semidirect
        for a in members:
            for b in members:
                if H.op(a, b) not in members:
                    raise AlgebraError("members do not form a subgroup")
        c = RadicalScalar.rational(Fraction(1, len(members)))
        return PAElement(2, {(u,): c for u in members})

    def conjugate_biprojection(self, h: int) -> PAElement:
        """The biprojection rebuilt from the conjugate copy h Theta h^(-1)."""
        H = self.semidirect
        index = self.semidirect.index
        copy = {H.op(H.op(h, index(0, t)), H.inv(h)) for t in range(self.theta_order)}
        return self.averaging_projection(copy)

    def biprojection_report(self, q: PAElement | None = None, kmax: int = 3) -> list[dict]:
        """Verification records for a biprojection candidate.

        Checks idempotence, self-adjointness, trace value, domination of the
        first Jones projection, and idempotence of the surround map on the
        full basis for every colour up to kmax.
        """
        if q is None:
            q = self.biprojection()
        P = self.product
        render = P.render
        e1 = P.jones_element(2)
        records = [
            _record("biprojection", "q*q == q", render(P.multiply(q, q)), render(q)),
            _record("biprojection", "star(q) == q", render(P.star(q)), render(q)),
            _record(
                "biprojection",
                "tr(q) == 1/|Theta|",
                P.trace(q).render(),
                RadicalScalar.rational(Fraction(1, self.theta_order)).render(),
            ),
            _record("biprojection", "q*e1 == e1", render(P.multiply(q, e1)), render(e1)),
            _record("biprojection", "e1*q == e1", render(P.multiply(e1, q)), render(e1)),
        ]
        for colour in range(1, kmax + 1):
            good = 0
            total = 0
            for label in P.basis_labels(colour):
                b = P.basis_element(colour, label)
                once = self.surround(b)
                total += 1
                if self.surround(once) == once:
                    good += 1
            records.append(
                _record(
                    "biprojection",
                    f"surround idempotent at colour {colour}",
                    f"{good} of {total} basis labels",
                    f"{total} of {total} basis labels",
                )
            )
        return records

    # ------------------------------------------------------------------
    # transport between the two families

    def transport_prefactor(self, colour: int) -> RadicalScalar:
        """Scale attached to an orbit sum when it is carried to a twist sum."""
        half_units = (1 - (colour + 1) // 2) - 2 * (colour // 2)
        return pow_half(self.theta_order, half_units)

    def transport(self, x: PAElement) -> PAElement:
        """Carry an invariant element of the base algebra into the surround range.

        Orbit sums go to scaled twist sums; colour 0 scalars are copied
        across unchanged.  Raises when x is not invariant.
        """
        if x.colour == 0:
            return PAElement(0, dict(x.coeffs), x.shaded)
        comps = self.invariant_components(x)
        pref = self.transport_prefactor(x.colour)
        out = self.product.zero(x.colour)
        for rep, c in comps.items():
            out = out + self.twist_sum(x.colour, rep).scale(c * pref)
        return out

    def transport_inverse(self, x: PAElement) -> PAElement:
        """Inverse of :meth:`transport` on the surround range."""
        if x.colour == 0:
            return PAElement(0, dict(x.coeffs), x.shaded)
        comps = self.twist_components(x)
        pref = self.transport_prefactor(x.colour)
        out = self.base.zero(x.colour)
        for rep, c in comps.items():
            out = out + self.orbit_sum(x.colour, rep).scale(c / pref)
        return out

    def intertwine_check(self, gen: GenExpr, suite: str = "phi-intertwine") -> list[dict]:
        """Check that transport commutes with one generator action.

        For every tuple of orbit-basis inputs the generator is applied in the
        base algebra and the result transported, against the alpha-scaled
        surround of the generator applied to the transported inputs in the
        product algebra.  Returns one record per input tuple.
        """
        _, slots = generator_signature(gen)
        slot_bases: list[list[tuple[str, PAElement]]] = []
        for disc in slots:
            if disc.colour == 0:
                el = self.base.basis_element(0, (), disc.shaded)
                slot_bases.append([("1[" + disc.label() + "]", el)])
            else:
                slot_bases.append(
                    [
                        (str(rep), self.orbit_sum(disc.colour, rep))
                        for rep in self.orbit_reps(disc.colour)
                    ]
                )
        scale = alpha(realize(gen), self.theta_order)
        name = f"{gen.kind}_{gen.k}"
        records = []
        for combo in iter_product(*slot_bases) if slot_bases else [()]:
            base_inputs = [el for _, el in combo]
            lhs = self.transport(self.base.act_generator(gen, base_inputs))
            moved = [self.transport(el) for el in base_inputs]
            rhs = self.surround(self.product.act_generator(gen, moved)).scale(scale)
            case = name + (
                " on " + "; ".join(tag for tag, _ in combo) if combo else " (no inputs)"
            )
            records.append(
                _record(suite, case, self.product.render(lhs), self.product.render(rhs))
            )
        return records
