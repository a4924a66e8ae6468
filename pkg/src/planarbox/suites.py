"""Named verification suites assembled into flat report records.

Every suite takes an action plus (k_max, samples, seed) and returns a
list of record dicts with keys suite, case, lhs, rhs, pass.  Identical
configuration gives identical records, so serialized reports can be
compared byte for byte.  The CLI turns these into JSON files; the
acceptance tests consume them directly.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .crossed import CrossedProduct
from .expressions import GenExpr, generator_signature
from .group_algebra import PAElement, row_reduce
from .groups import GroupAction
from .intermediate import IntermediateAlgebra, crossed_instance
from .scalars import pow_half

SUITE_NAMES = (
    "base-algebra",
    "crossed-product",
    "biprojection",
    "theorem-main",
    "axioms",
    "jones",
    "trace",
    "dual",
    "all",
)

# transport commutes with these generators; the list stays clear of
# colour-5 discs so the checks run on tabulated closed forms only
INTERTWINE_GENERATORS = (
    GenExpr("M", 2),
    GenExpr("M", 3),
    GenExpr("E", 0),
    GenExpr("E", 1),
    GenExpr("E", 2),
    GenExpr("E", 3),
    GenExpr("I", 0),
    GenExpr("I", 1),
    GenExpr("I", 2),
    GenExpr("Eprime", 1),
    GenExpr("Eprime", 2),
    GenExpr("Eprime", 3),
    GenExpr("jones", 2),
    GenExpr("jones", 3),
    GenExpr("unit", 0),
    GenExpr("unit", 0, True),
)


class SuiteError(ValueError):
    """Unknown suite name."""


def _record(suite: str, case: str, lhs: str, rhs: str) -> dict:
    return {"suite": suite, "case": case, "lhs": lhs, "rhs": rhs, "pass": lhs == rhs}


def _flag(suite: str, case: str, ok: bool, good: str, bad: str) -> dict:
    return _record(suite, case, good if ok else bad, good)


def _max_disc_colour(gen: GenExpr) -> int:
    external, slots = generator_signature(gen)
    return max([external.colour] + [d.colour for d in slots])


def base_algebra_report(
    cp: CrossedProduct, k_max: int = 4, samples: int = 40, seed: int = 0
) -> list[dict]:
    """Ring structure of the ambient labelled algebra, exhaustively.

    Associativity is checked on the integer index table (valid because the
    prefactor record pins all nonzero products to one shared constant);
    everything else runs element by element over the bases.
    """
    suite = "base-algebra"
    P = cp.product
    n = len(P.group)
    top = min(k_max, 4)
    rng = random.Random(seed)
    records = []
    for colour in range(1, top + 1):
        one = P.unit(colour)
        basis = [P.basis_element(colour, lab) for lab in P.basis_labels(colour)]
        records.append(
            _flag(
                suite,
                f"unit is a two-sided identity at colour {colour}",
                all(
                    P.multiply(one, b) == b and P.multiply(b, one) == b for b in basis
                ),
                "identity",
                "broken",
            )
        )
        records.append(
            _record(
                suite,
                f"trace of the unit at colour {colour}",
                P.trace(one).render(),
                "1",
            )
        )
    for colour in range(2, top + 1):
        table, labels = P.product_index_table(colour)
        size = len(labels)
        t = table.astype(np.int64)
        rows = np.vstack([t, np.full((1, size), -1, dtype=np.int64)])
        cols = np.hstack([t, np.full((size, 1), -1, dtype=np.int64)])
        left = rows[t]
        right = cols[:, t]
        records.append(
            _flag(
                suite,
                f"associativity of the index table at colour {colour} ({size}^3 triples)",
                bool((left == right).all()),
                "associative",
                "broken",
            )
        )
        records.append(
            _record(
                suite,
                f"shared product prefactor at colour {colour}",
                P.product_constant(colour).render(),
                pow_half(n, (colour + 1) // 2 - 1).render(),
            )
        )
        basis = [P.basis_element(colour, lab) for lab in P.basis_labels(colour)]
        records.append(
            _flag(
                suite,
                f"star is an involution at colour {colour}",
                all(P.star(P.star(b)) == b for b in basis),
                "involution",
                "broken",
            )
        )
        if size * size <= 2000:
            pairs = [(x, y) for x in basis for y in basis]
        else:
            pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(samples)]
        records.append(
            _flag(
                suite,
                f"star reverses products at colour {colour} ({len(pairs)} pairs)",
                all(
                    P.star(P.multiply(x, y)) == P.multiply(P.star(y), P.star(x))
                    for x, y in pairs
                ),
                "antihomomorphism",
                "broken",
            )
        )
        gram_ok = True
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                inner = P.inner(x, y)
                if inner != (1 if i == j else 0):
                    gram_ok = False
        records.append(
            _flag(
                suite,
                f"Gram matrix of the label basis is the identity at colour {colour}",
                gram_ok,
                "orthonormal",
                "degenerate",
            )
        )
        records.append(
            _flag(
                suite,
                f"trace is star-invariant at colour {colour}",
                all(P.trace(P.star(b)) == P.trace(b) for b in basis),
                "invariant",
                "broken",
            )
        )
        records.append(
            _flag(
                suite,
                f"inclusion preserves the trace at colour {colour}",
                all(
                    P.trace(P.act_generator(GenExpr("I", colour), [b])) == P.trace(b)
                    for b in basis
                ),
                "preserved",
                "broken",
            )
        )
        e_up = P.jones_element(colour + 1)
        inv_order = Fraction(1, n)
        records.append(
            _flag(
                suite,
                f"Markov property at colour {colour}",
                all(
                    P.trace(P.multiply(P.act_generator(GenExpr("I", colour), [b]), e_up))
                    == P.trace(b) * inv_order
                    for b in basis
                ),
                "markov",
                "broken",
            )
        )
    return records


def crossed_product_report(
    cp: CrossedProduct, k_max: int = 4, samples: int = 40, seed: int = 0
) -> list[dict]:
    """Closed product formulas against expansion, and the transport map."""
    suite = "crossed-product"
    top = min(k_max, 4)
    rng = random.Random(seed)
    records = []
    for colour in range(2, top + 1):
        reps = cp.orbit_reps(colour)
        ok = True
        for _ in range(samples):
            x = cp.orbit_sum(colour, rng.choice(reps))
            y = cp.orbit_sum(colour, rng.choice(reps))
            if cp.orbit_multiply(x, y) != cp.base.multiply(x, y):
                ok = False
        records.append(
            _flag(
                suite,
                f"orbit product closed form at colour {colour} ({samples} pairs)",
                ok,
                "matches expansion",
                "differs",
            )
        )
        ok = True
        for _ in range(samples):
            a, b = rng.choice(reps), rng.choice(reps)
            direct = cp.product.multiply(
                cp.twist_sum(colour, a), cp.twist_sum(colour, b)
            )
            if cp.twist_multiply(colour, a, b) != direct:
                ok = False
        records.append(
            _flag(
                suite,
                f"twist product closed form at colour {colour} ({samples} pairs)",
                ok,
                "matches expansion",
                "differs",
            )
        )
    for colour in range(1, top + 1):
        reps = cp.orbit_reps(colour)
        images = []
        ok = True
        for rep in reps:
            x = cp.orbit_sum(colour, rep)
            carried = cp.transport(x)
            images.append(carried)
            if cp.transport_inverse(carried) != x:
                ok = False
        records.append(
            _flag(
                suite,
                f"transport inverts at colour {colour}",
                ok,
                "bijective",
                "broken",
            )
        )
        records.append(
            _record(
                suite,
                f"transport image rank at colour {colour}",
                str(len(row_reduce(images))),
                str(len(reps)),
            )
        )
    for gen in INTERTWINE_GENERATORS:
        if _max_disc_colour(gen) > top:
            continue
        records.extend(cp.intertwine_check(gen, suite=suite))
    return records


def biprojection_suite(
    cp: CrossedProduct, k_max: int = 4, samples: int = 40, seed: int = 0
) -> list[dict]:
    """The biprojection facts plus conjugate copies and surround ranks."""
    top = min(k_max, 4)
    records = cp.biprojection_report(kmax=top)
    P = cp.product
    for h in range(len(cp.semidirect)):
        sub = cp.biprojection_report(cp.conjugate_biprojection(h), kmax=1)
        records.append(
            _flag(
                "biprojection",
                f"conjugate copy at h={cp.semidirect.name(h)} verifies identically",
                all(r["pass"] for r in sub),
                "verified",
                "broken",
            )
        )
    for colour in range(1, top + 1):
        images = [
            cp.surround(P.basis_element(colour, lab)) for lab in P.basis_labels(colour)
        ]
        records.append(
            _record(
                "biprojection",
                f"surround rank at colour {colour}",
                str(len(row_reduce(images))),
                str(len(cp.orbit_reps(colour))),
            )
        )
    return records


def _build_intermediate(cp: CrossedProduct, k_max: int) -> IntermediateAlgebra:
    return IntermediateAlgebra(crossed_instance(cp), k_max=min(max(k_max, 2), 5))


def run_suite(
    name: str,
    action: GroupAction,
    k_max: int = 4,
    samples: int = 40,
    seed: int = 0,
) -> list[dict]:
    """Dispatch one named suite (or all of them, concatenated)."""
    if name not in SUITE_NAMES:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    cp = CrossedProduct(action)
    ambient = (
        ("base-algebra", base_algebra_report),
        ("crossed-product", crossed_product_report),
        ("biprojection", biprojection_suite),
    )
    records: list[dict] = []
    if name == "all":
        wanted = [n for n, _ in ambient] + [
            "theorem-main",
            "axioms",
            "jones",
            "trace",
            "dual",
        ]
    else:
        wanted = [name]
    inter = None
    for current in wanted:
        for suite_name, fn in ambient:
            if current == suite_name:
                records.extend(fn(cp, k_max=k_max, samples=samples, seed=seed))
                break
        else:
            if inter is None:
                inter = _build_intermediate(cp, k_max)
            top = min(k_max, 4)
            if current == "theorem-main":
                records.extend(
                    inter.theorem_main_report(samples=samples, seed=seed, max_colour=top)
                )
            elif current == "axioms":
                records.extend(
                    inter.axiom_report(samples=samples, seed=seed, max_colour=top)
                )
            elif current == "jones":
                records.extend(inter.jones_report(top=top))
            elif current == "trace":
                records.extend(inter.trace_report(kmax=top))
            elif current == "dual":
                records.extend(inter.dual_report(samples=samples, seed=seed))
    return records


def summarize(records: list[dict]) -> dict:
    failed = sum(1 for r in records if not r["pass"])
    return {"cases": len(records), "failed": failed, "ok": failed == 0}
