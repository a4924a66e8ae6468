import itertools
import random

import pytest

from planarbox.expressions import GenExpr, parse_expr
from planarbox.group_algebra import AlgebraError, GroupPlanarAlgebra, PAElement
from planarbox.groups import cyclic_group, build_semidirect, inversion_action
from planarbox.scalars import ONE, ZERO, RadicalScalar, pow_half


def algebra(n: int) -> GroupPlanarAlgebra:
    return GroupPlanarAlgebra(cyclic_group(n))


def trace_closed_form(alg: GroupPlanarAlgebra, x: PAElement) -> RadicalScalar:
    """Frozen from scripts/solve_base_constants.py, independent of the
    capping fold the implementation uses."""
    k, n = x.colour, alg.group.order
    if k <= 1:
        return x.coefficient(())
    total = ZERO
    weight = pow_half(n, 1 - (k + 1) // 2)
    for lab, c in x.coeffs.items():
        if lab[0] != 0:
            continue
        if any(lab[i - 1] != lab[k - i] for i in range(2, k // 2 + 1)):
            continue
        total = total + c * weight
    return total


def star_label(alg: GroupPlanarAlgebra, k: int, lab: tuple) -> tuple:
    inv, op = alg.group.inv, alg.group.op
    if k <= 1:
        return ()
    if k == 2:
        return (inv(lab[0]),)
    first = inv(lab[0])
    return (first,) + tuple(op(first, lab[j]) for j in range(k - 2, 0, -1))


class TestPAElement:
    def test_zero_coefficients_dropped(self):
        alg = algebra(3)
        x = alg.element(2, {(0,): ONE, (1,): ZERO})
        assert x.support() == [(0,)]
        assert x.coefficient((1,)) == ZERO

    def test_label_length_checked(self):
        with pytest.raises(AlgebraError, match="length"):
            PAElement(3, {(0,): ONE})

    def test_vector_space_ops(self):
        alg = algebra(3)
        x = alg.basis_element(2, (1,))
        y = alg.basis_element(2, (2,))
        s = x + y - x.scale(3)
        assert s.coefficient((1,)) == ONE * (-2)
        assert s.coefficient((2,)) == ONE
        assert (s - s).is_zero()

    def test_colour_mismatch(self):
        alg = algebra(3)
        with pytest.raises(AlgebraError, match="mismatch"):
            alg.basis_element(2, (0,)) + alg.basis_element(3, (0, 0))
        with pytest.raises(AlgebraError, match="mismatch"):
            alg.unit(0, shaded=True) + alg.unit(0, shaded=False)


class TestMultiplication:
    def test_colour_two_is_the_group_ring(self):
        alg = algebra(5)
        for g, h in itertools.product(range(5), repeat=2):
            p = alg.multiply(alg.basis_element(2, (g,)), alg.basis_element(2, (h,)))
            assert p == alg.basis_element(2, ((g + h) % 5,))

    def test_colour_three_formula(self):
        # S(g1,g2) S(h1,h2) = sqrt(n) delta(h1 g2, h2) S(h1 g1, h2)
        alg = algebra(3)
        root3 = alg.delta
        for g1, g2, h1, h2 in itertools.product(range(3), repeat=4):
            p = alg.multiply(
                alg.basis_element(3, (g1, g2)), alg.basis_element(3, (h1, h2))
            )
            if (h1 + g2) % 3 == h2:
                assert p == alg.basis_element(3, ((h1 + g1) % 3, h2)).scale(root3)
            else:
                assert p.is_zero()

    @pytest.mark.parametrize("n", [3, 4])
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_units_are_two_sided(self, n, k):
        alg = algebra(n)
        u = alg.unit(k)
        for lab in alg.basis_labels(k):
            s = alg.basis_element(k, lab)
            assert alg.multiply(u, s) == s
            assert alg.multiply(s, u) == s

    def test_unit_closed_forms_stop_at_colour_five(self):
        with pytest.raises(AlgebraError, match="colour 5"):
            algebra(3).unit(6)

    @pytest.mark.parametrize("n,k", [(3, 3), (3, 4), (4, 3), (2, 4)])
    def test_associativity_exhaustive(self, n, k):
        alg = algebra(n)
        basis = [alg.basis_element(k, lab) for lab in alg.basis_labels(k)]
        for x, y, z in itertools.product(basis, repeat=3):
            assert alg.multiply(alg.multiply(x, y), z) == alg.multiply(
                x, alg.multiply(y, z)
            )

    def test_scalar_colours_multiply_as_numbers(self):
        alg = algebra(3)
        a = alg.unit(1).scale(2)
        b = alg.unit(1).scale(pow_half(3, 1))
        assert alg.multiply(a, b) == alg.unit(1).scale(pow_half(3, 1) * 2)

    def test_product_index_table_matches_multiply(self):
        alg = algebra(4)
        for k in (3, 4):
            table, labels = alg.product_index_table(k)
            prefactor = pow_half(4, (k + 1) // 2 - 1)
            rng = random.Random(5)
            for _ in range(200):
                i, j = rng.randrange(len(labels)), rng.randrange(len(labels))
                p = alg.multiply(
                    alg.basis_element(k, labels[i]), alg.basis_element(k, labels[j])
                )
                if table[i, j] < 0:
                    assert p.is_zero()
                else:
                    assert p == alg.basis_element(k, labels[table[i, j]]).scale(
                        prefactor
                    )


class TestStarAndTrace:
    @pytest.mark.parametrize("n", [3, 4])
    def test_star_involutive(self, n):
        alg = algebra(n)
        for k in range(2, 6):
            for lab in alg.basis_labels(k):
                s = alg.basis_element(k, lab)
                assert alg.star(alg.star(s)) == s
                assert alg.star(s) == alg.basis_element(k, star_label(alg, k, lab))

    @pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (3, 4), (4, 3)])
    def test_star_antimultiplicative(self, n, k):
        alg = algebra(n)
        for g, h in itertools.product(alg.basis_labels(k), repeat=2):
            x, y = alg.basis_element(k, g), alg.basis_element(k, h)
            assert alg.star(alg.multiply(x, y)) == alg.multiply(
                alg.star(y), alg.star(x)
            )

    @pytest.mark.parametrize("n", [3, 4])
    def test_trace_matches_closed_form(self, n):
        alg = algebra(n)
        for k in range(2, 6):
            for lab in alg.basis_labels(k):
                s = alg.basis_element(k, lab)
                assert alg.trace(s) == trace_closed_form(alg, s)
            assert alg.trace(alg.unit(k)) == ONE

    @pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3)])
    def test_orthonormal_basis(self, n, k):
        alg = algebra(n)
        for g, h in itertools.product(alg.basis_labels(k), repeat=2):
            ip = alg.inner(alg.basis_element(k, g), alg.basis_element(k, h))
            assert ip == (ONE if g == h else ZERO)

    def test_trace_of_group_ring_element(self):
        alg = algebra(3)
        assert alg.trace(alg.basis_element(2, (0,))) == ONE
        assert alg.trace(alg.basis_element(2, (1,))) == ZERO

    @pytest.mark.parametrize("n", [3, 4])
    def test_inclusion_preserves_trace(self, n):
        alg = algebra(n)
        for k in range(1, 5):
            for lab in alg.basis_labels(k):
                s = alg.basis_element(k, lab)
                assert alg.trace(alg._act_I(k, s)) == alg.trace(s)


class TestJones:
    @pytest.mark.parametrize("n", [3, 4])
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_characterizing_system(self, n, k):
        alg = algebra(n)
        f = alg.jones_element(k)
        assert alg.multiply(f, f) == f
        assert alg.star(f) == f
        assert alg.trace(f) == pow_half(n, -2)
        assert alg._act_E(k - 1, f) == alg.unit(k - 1).scale(alg.delta.invert())

    def test_colour_range(self):
        with pytest.raises(AlgebraError):
            algebra(3).jones_element(6)
        with pytest.raises(AlgebraError):
            algebra(3).jones_element(1)


class TestGeneratorActions:
    def test_right_expectation_cases(self):
        alg = algebra(3)
        root3 = alg.delta
        # target colour 2: the printed anomaly S(g1,g2) -> S(-g1)
        for g1, g2 in itertools.product(range(3), repeat=2):
            out = alg._act_E(2, alg.basis_element(3, (g1, g2)))
            assert out == alg.basis_element(2, ((-g1) % 3,))
        # target colour 4: drop the middle entry
        out = alg._act_E(4, alg.basis_element(5, (1, 2, 0, 1)))
        assert out == alg.basis_element(4, (1, 2, 1))
        # target colour 3: delta factor and a loop weight
        out = alg._act_E(3, alg.basis_element(4, (1, 2, 2)))
        assert out == alg.basis_element(3, (1, 2)).scale(root3)
        assert alg._act_E(3, alg.basis_element(4, (1, 2, 0))).is_zero()
        # target colour 1: only the identity label survives
        assert alg._act_E(1, alg.basis_element(2, (0,))) == alg.unit(1).scale(root3)
        assert alg._act_E(1, alg.basis_element(2, (1,))).is_zero()

    def test_inclusion_cases(self):
        alg = algebra(3)
        inv_root = alg.delta.invert()
        out = alg._act_I(2, alg.basis_element(2, (1,)))
        assert out == alg.element(
            3, {(1, u): inv_root for u in range(3)}
        )
        out = alg._act_I(3, alg.basis_element(3, (1, 2)))
        assert out == alg.basis_element(4, (1, 2, 2))
        assert alg._act_I(1, alg.unit(1)) == alg.basis_element(2, (0,))
        assert alg._act_I(0, alg.unit(0)) == alg.unit(1)

    def test_left_expectation_cases(self):
        alg = algebra(3)
        root3 = alg.delta
        out = alg._act_Eprime(3, alg.basis_element(3, (0, 2)))
        assert out == alg.basis_element(3, (0, 2)).scale(root3)
        assert alg._act_Eprime(3, alg.basis_element(3, (1, 2))).is_zero()
        assert alg._act_Eprime(1, alg.unit(1)) == alg.unit(1).scale(root3)

    def test_act_via_expressions(self):
        alg = algebra(3)
        g = alg.basis_element(2, (1,))
        h = alg.basis_element(2, (2,))
        prod = alg.act_generator(GenExpr("M", 2), [g, h])
        assert prod == alg.basis_element(2, (0,))
        assert alg.act_generator(GenExpr("id", 2), [g]) == g
        jones = alg.act_generator(GenExpr("jones", 2), [])
        assert jones == alg.jones_element(2).scale(alg.delta)
        one_minus = alg.act_generator(GenExpr("unit", 0, True), [])
        assert one_minus.shaded

    def test_input_validation(self):
        alg = algebra(3)
        with pytest.raises(AlgebraError, match="input"):
            alg.act_generator(GenExpr("M", 2), [alg.basis_element(2, (0,))])
        with pytest.raises(AlgebraError, match="slot"):
            alg.act_generator(
                GenExpr("M", 2),
                [alg.basis_element(2, (0,)), alg.basis_element(3, (0, 0))],
            )


class TestEvaluate:
    def test_capped_inclusion_frozen_value(self):
        # frozen in scripts/solve_base_constants.py: the composite sends
        # S(g) to sqrt(n) S(-g)
        alg = algebra(3)
        expr = parse_expr("(compose (gen E 2 3) 1 (gen I 3 2))")
        for g in range(3):
            out = alg.evaluate(expr, [alg.basis_element(2, (g,))])
            assert out == alg.basis_element(2, ((-g) % 3,)).scale(alg.delta)

    def test_renumber_swaps_factors(self):
        alg = GroupPlanarAlgebra(build_semidirect(inversion_action(3)))
        expr = parse_expr("(renumber (2 1) (gen M 2))")
        # (1,0) and (0,inv) do not commute in the semidirect product
        a = alg.basis_element(2, (alg.group.index(1, 0),))
        b = alg.basis_element(2, (alg.group.index(0, 1),))
        direct = alg.evaluate(parse_expr("(gen M 2)"), [a, b])
        swapped = alg.evaluate(expr, [a, b])
        ia, ib = alg.group.index(1, 0), alg.group.index(0, 1)
        assert direct == alg.basis_element(2, (alg.group.op(ia, ib),))
        assert swapped == alg.basis_element(2, (alg.group.op(ib, ia),))
        assert direct != swapped

    def test_composition_folds(self):
        alg = algebra(3)
        expr = parse_expr("(compose (gen M 2) 2 (compose (gen M 2) 1 (gen id 2)))")
        xs = [alg.basis_element(2, (g,)) for g in (1, 2, 2)]
        out = alg.evaluate(expr, xs)
        assert out == alg.basis_element(2, ((1 + 2 + 2) % 3,))

    def test_arity_checked(self):
        alg = algebra(3)
        with pytest.raises(AlgebraError, match="input"):
            alg.evaluate(parse_expr("(gen M 2)"), [alg.basis_element(2, (0,))])

    def test_unit_expression(self):
        alg = algebra(3)
        out = alg.evaluate(parse_expr("(gen unit minus)"), [])
        assert out == alg.unit(0, shaded=True)


class TestRendering:
    def test_symbols(self):
        alg = algebra(3)
        assert alg.render(alg.basis_element(2, (1,))) == "S(1)"
        assert alg.render(alg.zero(2)) == "0"
        assert alg.render(alg.unit(0, shaded=True)) == "1[0-]"
        assert alg.render(alg.unit(1).scale(-1)) == "-1[1]"

    def test_coefficients(self):
        alg = algebra(3)
        x = alg.basis_element(2, (0,)).scale(pow_half(3, -2))
        y = alg.basis_element(2, (1,)).scale(ONE + pow_half(2, 1))
        assert alg.render(x + y) == "1/3*S(0) + (1 + sqrt(2))*S(1)"

    def test_semidirect_names(self):
        alg = GroupPlanarAlgebra(build_semidirect(inversion_action(3)))
        assert alg.render(alg.basis_element(2, (3,))) == "S((1,1))"
