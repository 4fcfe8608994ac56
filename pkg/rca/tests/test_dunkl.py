import random
from fractions import Fraction

from django.test import SimpleTestCase

from rca.cherednik import CherednikParams
from rca.dunkl import (Polynomial, basis_vector, delta_action_matrix, dunkl_apply, euler_check,
                       faithfulness_probe, layer_group_matrix, monomials)
from rca.exceptions import ExactDivisionError
from rca.reflection_group import build_cyclic, build_dihedral, build_symmetric
from rca.scalars import ONE, ExactScalar

from . import oracles
from .test_cherednik import random_params

GROUPS = [build_cyclic(2), build_cyclic(3), build_dihedral(3), build_dihedral(4), build_symmetric(3)]


def random_vector(rank, rng):
    return tuple(ExactScalar.rational(rng.randint(-4, 4) or 1, rng.randint(1, 3)) for _ in range(rank))


class PolynomialTests(SimpleTestCase):
    def test_monomial_order(self):
        self.assertEqual(monomials(2, 2), [(2, 0), (1, 1), (0, 2)])
        self.assertEqual(len(monomials(3, 3)), 10)

    def test_exact_division(self):
        x = Polynomial.linear([1, 0])
        y = Polynomial.linear([0, 1])
        p = (x - y) * (x + y) * x
        self.assertEqual(p.divide_linear([1, -1]), (x + y) * x)
        with self.assertRaises(ExactDivisionError):
            (x * x + y * y).divide_linear([1, -1])

    def test_group_action_is_a_left_action(self):
        group = build_symmetric(3)
        p = Polynomial.monomial((2, 1))
        for a in range(group.order):
            for b in range(group.order):
                self.assertEqual(p.act(group, group.multiply(a, b)), p.act(group, b).act(group, a))


class DunklOperatorTests(SimpleTestCase):
    def test_zero_parameter_is_derivative(self):
        group = build_dihedral(3)
        params = CherednikParams.zero(group)
        p = Polynomial.monomial((3, 2))
        for i in range(2):
            self.assertEqual(dunkl_apply(basis_vector(2, i), p, params), p.partial(i))

    def test_z2_against_symbolic_oracle(self):
        group = build_cyclic(2)
        for k in ('1/3', '-1/2', '5/7'):
            params = CherednikParams.uniform(group, k)
            for n in range(1, 7):
                value = dunkl_apply((ONE,), Polynomial.monomial((n,)), params)
                expected = oracles.dunkl_coefficient(n, oracles.Rational(k))
                self.assertEqual(value.coefficient((n - 1,)).as_fraction(), Fraction(str(expected)))

    def test_singular_value_at_minus_half(self):
        params = CherednikParams.uniform(build_cyclic(2), '-1/2')
        self.assertTrue(dunkl_apply((ONE,), Polynomial.monomial((1,)), params).is_zero())

    def test_commutativity(self):
        rng = random.Random(17)
        for group in GROUPS:
            for _ in range(5):
                params = random_params(group, rng)
                xi, eta = random_vector(group.rank, rng), random_vector(group.rank, rng)
                for degree in range(1, 7):
                    for e in monomials(group.rank, degree):
                        p = Polynomial.monomial(e)
                        left = dunkl_apply(xi, dunkl_apply(eta, p, params), params)
                        right = dunkl_apply(eta, dunkl_apply(xi, p, params), params)
                        self.assertEqual(left, right, f"{group.name} on {p}")

    def test_equivariance(self):
        rng = random.Random(41)
        for group in GROUPS:
            params = random_params(group, rng)
            xi = random_vector(group.rank, rng)
            for w in range(group.order):
                moved = group.act(w, xi)
                inverse = group.inverses[w]
                for e in monomials(group.rank, 3):
                    p = Polynomial.monomial(e)
                    conjugated = dunkl_apply(xi, p.act(group, inverse), params).act(group, w)
                    self.assertEqual(conjugated, dunkl_apply(moved, p, params), f"{group.name} w={w} on {p}")

    def test_euler_identity(self):
        rng = random.Random(19)
        for group in GROUPS:
            params = random_params(group, rng)
            for degree in range(4):
                self.assertTrue(euler_check(params, degree), f"{group.name} degree {degree}")


class LayerTests(SimpleTestCase):
    def test_trivial_layer_matches_dunkl_operators(self):
        group = build_symmetric(3)
        params = CherednikParams.uniform(group, '1/5')
        triv = group.irrep('(3)')
        degree = 3
        for i in range(group.rank):
            matrix = delta_action_matrix(triv, basis_vector(group.rank, i), degree, params)
            for c, e in enumerate(monomials(group.rank, degree)):
                image = dunkl_apply(basis_vector(group.rank, i), Polynomial.monomial(e), params)
                self.assertEqual(matrix.column(c), image.coefficient_vector(degree - 1))

    def test_xi_action_is_equivariant(self):
        group = build_cyclic(3)
        params = CherednikParams(group, {'H0': ['1/4', '2/3']})
        E = group.irrep('det^1')
        w = group.hyperplanes[0].generator
        degree = 2
        action = delta_action_matrix(E, (ONE,), degree, params)
        # w xi w^-1 = (w . xi); on V = C the generator scales xi by zeta
        zeta = ExactScalar.root_of_unity(3)
        lhs = layer_group_matrix(E, degree - 1, w, group) @ action
        rhs = action.scale(zeta) @ layer_group_matrix(E, degree, w, group)
        self.assertEqual(lhs, rhs)

    def test_faithfulness_on_z2(self):
        params = CherednikParams.uniform(build_cyclic(2), '1/3')
        report = faithfulness_probe(params, bound=2, samples=10, seed=1)
        self.assertEqual(report['samples'], 10)
        self.assertEqual(report['violations'], [])

    def test_faithfulness_on_s3(self):
        params = CherednikParams.uniform(build_symmetric(3), '1/4')
        report = faithfulness_probe(params, bound=2, samples=100, seed=3)
        self.assertEqual(report['samples'], 100)
        self.assertEqual(report['violations'], [])
