import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarbox.expressions import (
    ComposeExpr,
    GenExpr,
    ParseError,
    RenumberExpr,
    arity,
    external_colour,
    parse_expr,
    random_composable_pair,
    random_expr,
    realize,
    render_expr,
    slot_colours,
)
from planarbox.scalars import ONE, pow_half
from planarbox.tangles import (
    Disc,
    TangleError,
    alpha,
    alpha_tilde,
    capping_exponent,
    capping_exponent_white,
    compose,
    loops_black,
    loops_white,
    make_generator,
    renumber,
    shift_point_labels,
    tangle,
    validate,
)

# frozen from scripts/loop_count_oracle.py: (l_black, c, l_white, c_white)
LOOP_TABLE = {
    ("id", 0): (0, 0, 0, 0),
    ("id", 1): (1, 0, 1, 0),
    ("id", 2): (2, 0, 2, 0),
    ("id", 3): (3, 0, 3, 0),
    ("id", 4): (4, 0, 4, 0),
    ("id", 5): (5, 0, 5, 0),
    ("M", 0): (0, 0, 0, 0),
    ("M", 1): (1, 0, 1, 0),
    ("M", 2): (3, 0, 2, 1),
    ("M", 3): (4, 0, 4, 0),
    ("M", 4): (6, 0, 5, 1),
    ("M", 5): (7, 0, 7, 0),
    ("I", 0): (1, 0, 1, 0),
    ("I", 1): (1, 0, 2, -1),
    ("I", 2): (3, 0, 2, 1),
    ("I", 3): (3, 0, 4, -1),
    ("I", 4): (5, 0, 4, 1),
    ("E", 0): (1, -1, 1, -1),
    ("E", 1): (1, 1, 2, 0),
    ("E", 2): (3, -1, 2, 0),
    ("E", 3): (3, 1, 4, 0),
    ("E", 4): (5, -1, 4, 0),
    ("Eprime", 1): (2, -1, 2, -1),
    ("Eprime", 2): (1, 1, 3, -1),
    ("Eprime", 3): (2, 1, 4, -1),
    ("Eprime", 4): (3, 1, 5, -1),
    ("Eprime", 5): (4, 1, 6, -1),
    ("jones", 2): (2, -1, 1, 0),
    ("jones", 3): (1, 1, 3, -1),
    ("jones", 4): (3, -1, 2, 0),
    ("jones", 5): (2, 1, 4, -1),
}


class TestGenerators:
    @pytest.mark.parametrize("kind,k", sorted(LOOP_TABLE))
    def test_generators_valid(self, kind, k):
        t = make_generator(kind, k)
        assert validate(t).ok
        assert t.closed_loops == 0

    @pytest.mark.parametrize("kind,k", sorted(LOOP_TABLE))
    def test_loop_counts_match_oracle(self, kind, k):
        t = make_generator(kind, k)
        lb, c, lw, cw = LOOP_TABLE[(kind, k)]
        assert loops_black(t) == lb
        assert capping_exponent(t) == c
        assert loops_white(t) == lw
        assert capping_exponent_white(t) == cw

    def test_units(self):
        for shaded in (False, True):
            u = make_generator("unit", 0, shaded)
            assert validate(u).ok
            assert u.internal == ()
            assert alpha(u, 5) == ONE
            assert alpha_tilde(u, 5) == ONE

    def test_zero_colour_variants(self):
        assert validate(make_generator("id", 0, True)).ok
        assert validate(make_generator("M", 0, True)).ok
        assert validate(make_generator("I", 0, True)).ok
        with pytest.raises(TangleError):
            make_generator("E", 0, True)

    def test_bad_requests(self):
        with pytest.raises(TangleError):
            make_generator("jones", 1)
        with pytest.raises(TangleError):
            make_generator("Eprime", 0)
        with pytest.raises(TangleError):
            make_generator("M", 2, True)
        with pytest.raises(TangleError):
            make_generator("spiral", 2)

    def test_identity_shape(self):
        t = make_generator("id", 3)
        assert t.external == Disc(3)
        assert t.internal == (Disc(3),)
        assert len(t.strings) == 6


class TestAlphaValues:
    """The exponent tables specialised to a ratio, checked exactly."""

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_identity_and_multiplication_are_one(self, m):
        for k in range(0, 6):
            assert alpha(make_generator("id", k), m) == ONE
            assert alpha(make_generator("M", k), m) == ONE

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_right_expectation_alternates(self, m):
        for k in (0, 2, 4):
            assert alpha(make_generator("E", k), m) == pow_half(m, -1)
        for k in (1, 3):
            assert alpha(make_generator("E", k), m) == pow_half(m, 1)

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_cupcap_alternates(self, m):
        for k in (3, 5):
            assert alpha(make_generator("jones", k), m) == pow_half(m, 1)
        for k in (2, 4):
            assert alpha(make_generator("jones", k), m) == pow_half(m, -1)

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_left_expectation(self, m):
        for k in (2, 3, 4, 5):
            assert alpha(make_generator("Eprime", k), m) == pow_half(m, 1)
        # the colour-1 diagram closes an extra loop and flips the sign
        assert alpha(make_generator("Eprime", 1), m) == pow_half(m, -1)

    def test_exact_radical_values(self):
        assert alpha(make_generator("E", 4), 2) == Fraction(1, 2) * pow_half(2, 1)
        assert alpha(make_generator("jones", 3), 3).render() == "sqrt(3)"


class TestCompose:
    def test_identity_left_neutral(self):
        rng = random.Random(11)
        for _ in range(20):
            t = realize(random_expr(rng, max_colour=4, depth=2))
            ident = make_generator("id", t.external.colour, t.external.shaded)
            assert compose(ident, 1, t) == t

    def test_identity_right_neutral(self):
        rng = random.Random(12)
        for _ in range(20):
            t = realize(random_expr(rng, max_colour=4, depth=2))
            for i, d in enumerate(t.internal, start=1):
                ident = make_generator("id", d.colour, d.shaded)
                assert compose(t, i, ident) == t

    def test_expectation_of_inclusion_closes_one_loop(self):
        glued = compose(make_generator("E", 2), 1, make_generator("I", 2))
        ident = make_generator("id", 2)
        assert glued.closed_loops == 1
        assert glued.strings == ident.strings
        assert glued.internal == ident.internal
        assert loops_black(glued) == loops_black(ident) + 1

    def test_multiplication_associates_on_the_nose(self):
        m = GenExpr("M", 2)
        left = realize(ComposeExpr(m, 1, m))
        right = realize(ComposeExpr(m, 2, m))
        assert left == right

    def test_colour_mismatch_rejected(self):
        with pytest.raises(TangleError):
            compose(make_generator("id", 2), 1, make_generator("id", 3))
        with pytest.raises(TangleError):
            compose(make_generator("id", 0, False), 1, make_generator("id", 0, True))

    def test_slot_out_of_range(self):
        with pytest.raises(TangleError):
            compose(make_generator("id", 2), 2, make_generator("id", 2))
        with pytest.raises(TangleError):
            compose(make_generator("jones", 2), 1, make_generator("id", 2))

    def test_loop_capture_through_unit(self):
        # a capped strand over a colour-0 disc: gluing the unit in
        # leaves the free strand as part of the diagram, no loop yet
        incl = make_generator("I", 0)
        glued = compose(incl, 1, make_generator("unit", 0))
        assert glued.internal == ()
        assert glued.closed_loops == 0
        assert validate(glued).ok


class TestRenumber:
    def test_identity_permutation(self):
        t = make_generator("M", 2)
        assert renumber(t, [1, 2]) == t

    def test_swap_is_involutive(self):
        t = make_generator("M", 2)
        swapped = renumber(t, [2, 1])
        assert swapped != t
        assert renumber(swapped, [2, 1]) == t

    def test_alpha_invariant(self):
        rng = random.Random(13)
        for _ in range(30):
            t = realize(random_expr(rng, max_colour=4, depth=2))
            b = len(t.internal)
            sigma = list(range(1, b + 1))
            rng.shuffle(sigma)
            s = renumber(t, sigma)
            assert loops_black(s) == loops_black(t)
            assert loops_white(s) == loops_white(t)
            assert alpha(s, 7) == alpha(t, 7)

    def test_rejects_non_permutation(self):
        with pytest.raises(TangleError):
            renumber(make_generator("M", 2), [1, 1])


class TestValidate:
    def test_crossing_strings_fail_genus(self):
        t = tangle(Disc(2), [], [((0, 1), (0, 3)), ((0, 2), (0, 4))])
        diag = validate(t)
        assert not diag.ok
        assert any("Euler" in p for p in diag.problems)

    def test_twisted_identity_fails_shading(self):
        t = tangle(
            Disc(1), [Disc(1)], [((0, 1), (1, 2)), ((0, 2), (1, 1))]
        )
        diag = validate(t)
        assert not diag.ok
        assert any("black and white" in p for p in diag.problems)

    def test_incomplete_matching_reported(self):
        t = tangle(Disc(1), [], [])
        diag = validate(t)
        assert not diag.ok
        assert any("matching" in p for p in diag.problems)

    def test_doubled_point_reported(self):
        t = tangle(
            Disc(2), [], [((0, 1), (0, 2)), ((0, 2), (0, 3))]
        )
        assert not validate(t).ok

    def test_free_loop_only(self):
        t = tangle(Disc(0), [], [], closed_loops=1)
        assert validate(t).ok
        assert loops_black(t) == 1
        assert loops_white(t) == 1


class TestParser:
    def test_compose_example(self):
        expr = parse_expr("(compose (gen E 2 3) 1 (gen I 3 2))")
        t = realize(expr)
        assert t.closed_loops == 1
        assert t.external == Disc(2)

    def test_roundtrip(self):
        rng = random.Random(21)
        for _ in range(40):
            expr = random_expr(rng, max_colour=4, depth=2)
            assert parse_expr(render_expr(expr)) == expr

    def test_zero_colour_tokens(self):
        assert parse_expr("(gen id 0-)") == GenExpr("id", 0, True)
        assert parse_expr("(gen id 0)") == GenExpr("id", 0, False)
        assert parse_expr("(gen unit minus)") == GenExpr("unit", 0, True)

    def test_renumber_form(self):
        expr = parse_expr("(renumber (2 1) (gen M 3))")
        assert expr == RenumberExpr((2, 1), GenExpr("M", 3))

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "(gen E 2 4)",
            "(gen I 2 3)",
            "(gen frob 2)",
            "(compose (gen M 2) x (gen id 2))",
            "(gen id 2",
            "(gen id 2))",
            "(renumber 2 (gen M 2))",
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_expr(text)

    def test_semantic_errors_are_tangle_errors(self):
        expr = parse_expr("(compose (gen M 2) 1 (gen id 3))")
        with pytest.raises(TangleError):
            slot_colours(expr)
        with pytest.raises(TangleError):
            realize(expr)


class TestExprBookkeeping:
    def test_signature_of_compose(self):
        expr = parse_expr("(compose (gen M 2) 2 (gen E 2 3))")
        assert external_colour(expr) == Disc(2)
        assert slot_colours(expr) == (Disc(2), Disc(3))
        assert arity(expr) == 2

    def test_renumber_moves_slots(self):
        expr = RenumberExpr((2, 1), ComposeExpr(GenExpr("M", 2), 2, GenExpr("E", 2)))
        assert slot_colours(expr) == (Disc(3), Disc(2))

    def test_realize_is_a_fold(self):
        rng = random.Random(31)
        for _ in range(25):
            outer, i, inner = random_composable_pair(rng, max_colour=4, depth=2)
            whole = ComposeExpr(outer, i, inner)
            assert realize(whole) == compose(realize(outer), i, realize(inner))


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_random_trees_realize_valid(seed):
    rng = random.Random(seed)
    t = realize(random_expr(rng, max_colour=5, depth=3))
    assert validate(t).ok
    assert t.closed_loops >= 0


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_mirror_loop_count(seed):
    rng = random.Random(seed)
    t = realize(random_expr(rng, max_colour=5, depth=3))
    assert loops_white(t) == loops_black(shift_point_labels(t))
    assert loops_black(t) == loops_white(shift_point_labels(t))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_capping_ratio_identity(seed):
    """Composing tangles changes the weight by exactly the loop-count
    defect: weight(T) * weight(S) / weight(T glued S) is the ratio raised
    to (colour of the glued disc - l(T) - l(S) + l(glued)) / 2."""
    rng = random.Random(seed)
    outer, i, inner = random_composable_pair(rng, max_colour=6, depth=2)
    t, s = realize(outer), realize(inner)
    glued = compose(t, i, s)
    k_i = t.internal[i - 1].colour
    for ratio in (2, 3):
        lhs = alpha(t, ratio) * alpha(s, ratio) * alpha(glued, ratio).invert()
        rhs = pow_half(
            ratio, k_i - loops_black(t) - loops_black(s) + loops_black(glued)
        )
        assert lhs == rhs
        lhs_w = (
            alpha_tilde(t, ratio)
            * alpha_tilde(s, ratio)
            * alpha_tilde(glued, ratio).invert()
        )
        rhs_w = pow_half(
            ratio, k_i - loops_white(t) - loops_white(s) + loops_white(glued)
        )
        assert lhs_w == rhs_w


def test_composition_keeps_validity_and_loop_counts_nonnegative():
    rng = random.Random(41)
    for _ in range(60):
        outer, i, inner = random_composable_pair(rng, max_colour=5, depth=2)
        glued = compose(realize(outer), i, realize(inner))
        assert validate(glued).ok
        assert glued.closed_loops >= 0
