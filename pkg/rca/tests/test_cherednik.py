import random

from django.test import SimpleTestCase

from rca.cherednik import (AlgebraElement, CherednikParams, c_function, c_function_table, commutator, dual_params,
                           euler_elements, gamma_from_k, k_from_gamma, normal_form, random_expression,
                           twist_check, twist_shift, twisted_params)
from rca.exceptions import ConfigError
from rca.reflection_group import build_cyclic, build_dihedral, build_symmetric
from rca.scalars import ExactScalar, coerce

GROUPS = [build_cyclic(2), build_cyclic(3), build_dihedral(3), build_dihedral(4), build_symmetric(3)]


def random_params(group, rng):
    return CherednikParams(group, {
        o.label: [ExactScalar.rational(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(o.order - 1)]
        for o in group.orbits
    })


class ParameterTests(SimpleTestCase):
    def test_from_spec_scalar_and_list(self):
        group = build_dihedral(4)
        uniform = CherednikParams.from_spec(group, '1/3')
        self.assertEqual(uniform.value('H1', 1), coerce('1/3'))
        explicit = CherednikParams.from_spec(group, [{'orbit': 'H0', 'k': ['1/2']}, {'orbit': 'H1', 'k': ['0']}])
        self.assertEqual(explicit.value('H0', 1), coerce('1/2'))
        self.assertEqual(explicit.value('H0', 2), 0)

    def test_bad_spec(self):
        group = build_cyclic(3)
        with self.assertRaises(ConfigError) as ctx:
            CherednikParams.from_spec(group, [{'orbit': 'H0', 'k': ['1/2']}])
        self.assertEqual(ctx.exception.field, 'param')
        with self.assertRaises(ConfigError):
            CherednikParams.from_spec(group, 'one half')

    def test_gamma_round_trip(self):
        rng = random.Random(7)
        for group in GROUPS:
            params = random_params(group, rng)
            self.assertEqual(k_from_gamma(group, gamma_from_k(params)).k, params.k)


class CFunctionTests(SimpleTestCase):
    def test_z2(self):
        params = CherednikParams.uniform(build_cyclic(2), '1/2')
        table = c_function_table(params)
        self.assertEqual({label: str(c) for label, c in table.items()}, {'triv': '0', 'sgn': '1'})

    def test_s3_equal_parameters(self):
        k = coerce('2/7')
        params = CherednikParams.uniform(build_symmetric(3), k)
        table = c_function_table(params)
        self.assertEqual([table['(3)'], table['(2,1)'], table['(1,1,1)']], [0, 3 * k, 6 * k])

    def test_unit_vectors_give_non_negative_integers(self):
        for group in GROUPS:
            for orbit in group.orbits:
                for i in range(1, orbit.order):
                    k = {o.label: [0] * (o.order - 1) for o in group.orbits}
                    k[orbit.label][i - 1] = 1
                    for E, c in c_function_table(CherednikParams(group, k)).items():
                        self.assertTrue(c.is_integer() and c.as_fraction() >= 0, f"{group.name} {E}: {c}")

    def test_linearity(self):
        rng = random.Random(3)
        for group in GROUPS:
            a, b = random_params(group, rng), random_params(group, rng)
            for E in group.irreps:
                self.assertEqual(c_function(a + b.scale(3), E), c_function(a, E) + 3 * c_function(b, E))

    def test_twist_shift_z2(self):
        group = build_cyclic(2)
        params = CherednikParams.uniform(group, '1/5')
        sgn = group.irrep('sgn')
        self.assertEqual(twisted_params(params, sgn).value('H0', 1), coerce('-1/5'))
        self.assertEqual(twist_shift(params, sgn), coerce('2/5'))

    def test_twist_check_all_linear_characters(self):
        rng = random.Random(11)
        for group in GROUPS:
            params = random_params(group, rng)
            for zeta in group.irreps:
                if zeta.is_linear():
                    self.assertTrue(twist_check(params, zeta), f"{group.name} twisted by {zeta.label}")

    def test_exact_twist_check(self):
        group = build_cyclic(2)
        params = CherednikParams.uniform(group, '1/3')
        self.assertTrue(twist_check(params, group.irrep('sgn')))
        self.assertFalse(twist_check(params, group.irrep('sgn'), exact=True))
        self.assertTrue(twist_check(params, group.irrep('triv'), exact=True))
        self.assertTrue(twist_check(CherednikParams.zero(group), group.irrep('sgn'), exact=True))

    def test_dual_parameters(self):
        s3 = build_symmetric(3)
        params = CherednikParams.uniform(s3, '1/4')
        self.assertEqual(dual_params(params).k, params.k)
        z3 = build_cyclic(3)
        general = CherednikParams(z3, {'H0': ['1/2', '1/7']})
        dual = z3.dual()
        back = dual_params(dual_params(general, dual), dual.dual())
        self.assertEqual(back.k, general.k)


class NormalFormTests(SimpleTestCase):
    def test_z2_defining_relation(self):
        group = build_cyclic(2)
        params = CherednikParams.uniform(group, '1/3')
        s = group.hyperplanes[0].generator
        bracket = commutator(AlgebraElement.xi(params, 0), AlgebraElement.x(params, 0))
        expected = AlgebraElement(params, {((0,), 0, (0,)): 1, ((0,), s, (0,)): coerce('2/3')})
        self.assertEqual(bracket, expected)

    def test_weyl_algebra_at_zero(self):
        for group in GROUPS:
            params = CherednikParams.zero(group)
            for i in range(group.rank):
                for j in range(group.rank):
                    bracket = commutator(AlgebraElement.xi(params, i), AlgebraElement.x(params, j))
                    expected = AlgebraElement.scalar(params, 1) if i == j else AlgebraElement(params)
                    self.assertEqual(bracket, expected)

    def test_commuting_generators(self):
        rng = random.Random(5)
        for group in GROUPS:
            params = random_params(group, rng)
            for i in range(group.rank):
                for j in range(group.rank):
                    self.assertTrue(commutator(AlgebraElement.x(params, i), AlgebraElement.x(params, j)).is_zero())
                    self.assertTrue(commutator(AlgebraElement.xi(params, i), AlgebraElement.xi(params, j)).is_zero())

    def test_euler_element_grades(self):
        rng = random.Random(9)
        for group in GROUPS:
            params = random_params(group, rng)
            _, _, eu = euler_elements(params)
            for i in range(group.rank):
                x = AlgebraElement.x(params, i)
                xi = AlgebraElement.xi(params, i)
                self.assertEqual(commutator(eu, x), x, group.name)
                self.assertEqual(commutator(eu, xi), -xi, group.name)

    def test_confluence(self):
        rng = random.Random(13)
        for group in GROUPS:
            params = random_params(group, rng)
            for _ in range(5):
                expression = ('add', random_expression(params, rng), random_expression(params, rng, depth=4))
                self.assertEqual(normal_form(params, expression), normal_form(params, expression, rng=rng))

    def test_grading(self):
        params = CherednikParams.uniform(build_symmetric(3), '1/5')
        x, xi = AlgebraElement.x(params, 0), AlgebraElement.xi(params, 1)
        self.assertEqual(x.degree(), 1)
        self.assertEqual(xi.degree(), -1)
        self.assertEqual(euler_elements(params)[2].degree(), 0)
        self.assertEqual((x * x * xi).filtration_degree(), 3)


def random_monomial(params, rng):
    group = params.group
    xexp = tuple(rng.randint(0, 2) for _ in range(group.rank))
    dexp = tuple(rng.randint(0, 1) for _ in range(group.rank))
    coefficient = ExactScalar.rational(rng.randint(1, 5), rng.randint(1, 3))
    return AlgebraElement(params, {(xexp, rng.randrange(group.order), dexp): coefficient})


class ProductTests(SimpleTestCase):
    def test_associativity(self):
        rng = random.Random(17)
        for group in GROUPS:
            params = random_params(group, rng)
            for _ in range(3):
                a, b, c = (random_monomial(params, rng) for _ in range(3))
                self.assertEqual((a * b) * c, a * (b * c), group.name)
                self.assertEqual(normal_form(params, ('mul', ('mul', a, b), c)), a * (b * c), group.name)

    def test_euler_element_grades_products(self):
        rng = random.Random(19)
        for group in GROUPS:
            params = random_params(group, rng)
            _, _, eu = euler_elements(params)
            for _ in range(3):
                a = random_monomial(params, rng) * random_monomial(params, rng)
                if a.is_zero():
                    continue
                self.assertEqual(commutator(eu, a), a.scale(a.degree()), group.name)
