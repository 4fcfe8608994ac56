import random

from django.test import SimpleTestCase

from rca.category_o import (ContravariantForm, blocks, ch_variety_dim, decomposition_matrix, default_degree,
                            delta_character, endomorphism_count_check, eu_eigenvalue, generic_rank, is_semisimple,
                            nabla_character, projective_multiplicities, shapovalov_rank, simple_character,
                            singular_vectors, truncated_standard_character, truncated_standard_filtration)
from rca.cherednik import CherednikParams, c_function_table
from rca.dunkl import DeltaLayer, basis_vector, delta_action_matrix, monomials
from rca.exceptions import UncertifiedError
from rca.reflection_group import build_cyclic, build_dihedral, build_symmetric
from rca.scalars import ExactMatrix, coerce

from . import oracles
from .test_cherednik import random_params

GROUPS = [build_cyclic(2), build_cyclic(3), build_dihedral(3), build_dihedral(4), build_symmetric(3)]


class Z2BlockTests(SimpleTestCase):
    """Z/2 at k = -1/2, where x in Delta(triv) is singular."""

    def setUp(self):
        self.group = build_cyclic(2)
        self.params = CherednikParams.uniform(self.group, '-1/2')
        self.triv = self.group.irrep('triv')
        self.sgn = self.group.irrep('sgn')

    def test_simple_characters(self):
        L_triv = simple_character(self.triv, 8, self.params)
        self.assertTrue(L_triv.certified)
        self.assertEqual(L_triv.dimensions().tolist(), [1] + [0] * 8)
        L_sgn = simple_character(self.sgn, 8, self.params)
        self.assertEqual(L_sgn.dimensions().tolist(), [1] * 9)
        self.assertEqual(L_sgn.multiplicity(1, 'triv'), 1)

    def test_characteristic_variety(self):
        self.assertEqual(ch_variety_dim(simple_character(self.triv, 8, self.params)), (0, True))
        self.assertEqual(ch_variety_dim(simple_character(self.sgn, 8, self.params))[0], 1)

    def test_decomposition_matrix(self):
        partition = blocks(self.params)
        self.assertEqual(partition.blocks, [('triv', 'sgn')])
        block = partition.blocks[0]
        self.assertEqual(default_degree(block, partition), 5)
        matrix = decomposition_matrix(block, 5, self.params)
        self.assertEqual(matrix.entries.tolist(), [[1, 1], [0, 1]])
        self.assertTrue(matrix.fully_certified)
        self.assertEqual(matrix.entry('triv', 'sgn'), 1)

    def test_uncertified_truncation(self):
        block = ('triv', 'sgn')
        with self.assertRaises(UncertifiedError):
            decomposition_matrix(block, 2, self.params)
        matrix = decomposition_matrix(block, 2, self.params, allow_uncertified=True)
        self.assertFalse(matrix.certified[0][1])
        self.assertTrue(matrix.certified[1][0])
        self.assertTrue(decomposition_matrix(block, 3, self.params).fully_certified)

    def test_projective_multiplicities(self):
        mults = projective_multiplicities(('triv', 'sgn'), 5, self.params)
        self.assertEqual(mults['sgn'], {'triv': 1, 'sgn': 1})
        self.assertEqual(mults['triv'], {'triv': 1, 'sgn': 0})

    def test_singular_vector(self):
        found = singular_vectors(self.triv, 1, self.params)
        self.assertEqual([label for label, _ in found], ['sgn'])
        self.assertEqual(singular_vectors(self.triv, 2, self.params), [])

    def test_gram_ranks(self):
        self.assertEqual(shapovalov_rank(self.triv, 0, self.params), (1, {'triv': 1, 'sgn': 0}))
        self.assertEqual(shapovalov_rank(self.triv, 1, self.params)[0], 0)
        self.assertEqual(shapovalov_rank(self.sgn, 3, self.params), (1, {'triv': 1, 'sgn': 0}))

    def test_against_symbolic_oracle(self):
        for k in ('-1/2', '-3/2', '-5/2', '1/3', '1/2'):
            params = CherednikParams.uniform(self.group, k)
            for E in self.group.irreps:
                dims = simple_character(E, 7, params, margin=0).dimensions().tolist()
                self.assertEqual(dims, oracles.simple_dimensions(oracles.Rational(k), 7, E.label), f"{E.label} at {k}")

    def test_truncated_standards(self):
        self.assertEqual(truncated_standard_filtration(self.triv, 0, self.params), [(0, 'triv', 1)])
        self.assertEqual(truncated_standard_filtration(self.triv, 1, self.params),
                         [(0, 'triv', 1), (1, 'sgn', 1)])
        character = truncated_standard_character(self.triv, 1, 4, self.params)
        self.assertEqual(character.start, -1)
        self.assertEqual(character.dimensions().tolist(), [1, 2, 2, 2, 2, 2])


class SemisimpleTests(SimpleTestCase):
    def test_generic_parameter(self):
        for group in GROUPS:
            params = CherednikParams.uniform(group, '1/7')
            self.assertTrue(is_semisimple(params), group.name)
            partition = blocks(params)
            for E in group.irreps:
                form = ContravariantForm(E, params)
                for n in range(9):
                    self.assertEqual(form.rank(n), len(monomials(group.rank, n)) * E.dimension)
            for block in partition.blocks:
                matrix = decomposition_matrix(block, 4, params, partition=partition)
                self.assertEqual(matrix.entries.tolist(),
                                 [[int(i == j) for j in range(len(block))] for i in range(len(block))])

    def test_s3_blocks(self):
        group = build_symmetric(3)
        self.assertEqual(len(blocks(CherednikParams.uniform(group, '1/7')).blocks), 3)
        self.assertEqual(len(blocks(CherednikParams.zero(group)).blocks), 1)
        self.assertFalse(is_semisimple(CherednikParams.uniform(group, '1/3')))

    def test_block_order(self):
        params = CherednikParams.uniform(build_symmetric(3), '-1/3')
        partition = blocks(params)
        self.assertTrue(partition.less('(2,1)', '(3)'))
        self.assertEqual(partition.gap('(3)', '(1,1,1)'), 2)
        self.assertIsNone(partition.gap('(1,1,1)', '(3)'))


class S3LinkedTests(SimpleTestCase):
    """S3 at k = -1/3: V* in degree one of Delta(triv) is singular and L(triv) is the trivial module."""

    def setUp(self):
        self.group = build_symmetric(3)
        self.params = CherednikParams.uniform(self.group, '-1/3')

    def test_singular_vectors(self):
        found = singular_vectors(self.group.irrep('(3)'), 1, self.params)
        self.assertEqual([(label, len(vectors)) for label, vectors in found], [('(2,1)', 2)])

    def test_finite_dimensional_simple(self):
        L = simple_character(self.group.irrep('(3)'), 8, self.params)
        self.assertEqual(L.dimensions().tolist(), [1] + [0] * 8)
        self.assertEqual(ch_variety_dim(L), (0, True))

    def test_degree_law_sweep(self):
        for E in self.group.irreps:
            for n in range(1, 5):
                for label, _ in singular_vectors(E, n, self.params):
                    c = {F.label: eu_eigenvalue(F, 0, self.params) for F in self.group.irreps}
                    self.assertEqual(c[label] - c[E.label], n)


class CharacterTests(SimpleTestCase):
    def test_standard_equals_costandard(self):
        rng = random.Random(23)
        for group in GROUPS:
            params = random_params(group, rng)
            dual_group = group.dual()
            for E in group.irreps:
                self.assertEqual(nabla_character(E, 8, params, dual_group), delta_character(E, 8, params),
                                 f"{group.name} {E.label}")

    def test_standard_growth(self):
        group = build_dihedral(4)
        params = CherednikParams.uniform(group, '1/5')
        for E in group.irreps:
            character = delta_character(E, 8, params)
            self.assertEqual(ch_variety_dim(character)[0], group.rank)
            self.assertEqual(generic_rank(character), E.dimension)

    def test_eu_eigenvalue(self):
        params = CherednikParams.uniform(build_cyclic(2), '1/2')
        self.assertEqual(eu_eigenvalue(params.group.irrep('sgn'), 3, params), coerce(2))

    def test_endomorphism_count(self):
        rng = random.Random(29)
        for group in GROUPS:
            self.assertTrue(endomorphism_count_check(random_params(group, rng)), group.name)


def multiplication_matrix(irrep, j, degree, rank):
    """x_j: Delta(E)_degree -> Delta(E)_{degree+1}."""
    source, target = DeltaLayer(irrep, degree, rank), DeltaLayer(irrep, degree + 1, rank)
    columns = []
    for monomial in source.monomials:
        raised = tuple(a + (i == j) for i, a in enumerate(monomial))
        for b in range(irrep.dimension):
            column = [0] * target.dimension
            column[target.index(raised, b)] = 1
            columns.append(column)
    return ExactMatrix.from_columns(columns, target.dimension)


class RadicalTests(SimpleTestCase):
    def assert_killed(self, form, n, matrix, vectors, message):
        basis, _ = form.layer(n)
        if basis.rows:
            self.assertTrue((basis @ matrix @ vectors).is_zero(), message)

    def test_radical_is_a_submodule(self):
        cases = [(build_cyclic(2), '-1/2'), (build_cyclic(3), '-1/3'), (build_symmetric(3), '-1/3'),
                 (build_dihedral(4), '-1/2')]
        for group, k in cases:
            params = CherednikParams.uniform(group, k)
            for E in group.irreps:
                form = ContravariantForm(E, params)
                for n in range(1, 5):
                    radical = form.radical(n)
                    if not radical:
                        continue
                    vectors = ExactMatrix.from_columns(radical, len(radical[0]))
                    message = f"{group.name} {E.label} degree {n}"
                    for i in range(group.rank):
                        self.assert_killed(form, n + 1, multiplication_matrix(E, i, n, group.rank), vectors, message)
                        lowering = delta_action_matrix(E, basis_vector(group.rank, i), n, params)
                        self.assert_killed(form, n - 1, lowering, vectors, message)


class CertificationTests(SimpleTestCase):
    def test_monotone_in_truncation_degree(self):
        for group, k in ((build_cyclic(2), '-1/2'), (build_symmetric(3), '-1/3')):
            params = CherednikParams.uniform(group, k)
            for E in group.irreps:
                form = ContravariantForm(E, params)
                characters = [simple_character(E, N, params, form=form) for N in range(7)]
                flags = [character.certified for character in characters]
                self.assertEqual(flags, sorted(flags), f"{group.name} {E.label}")
                for shorter, longer in zip(characters, characters[1:]):
                    dims = longer.dimensions().tolist()
                    self.assertEqual(shorter.dimensions().tolist(), dims[:len(dims) - 1])


class LinkedSweepTests(SimpleTestCase):
    def test_degree_law(self):
        rng = random.Random(37)
        linked = []
        while len(linked) < 20:
            group = rng.choice(GROUPS)
            params = CherednikParams.uniform(group, f"-{rng.randint(1, 5)}/{rng.choice((2, 3, 4, 6))}")
            if not is_semisimple(params):
                linked.append(params)
        found = 0
        for params in linked:
            c = c_function_table(params)
            for E in params.group.irreps:
                for n in range(1, 7):
                    for label, _ in singular_vectors(E, n, params):
                        self.assertEqual(c[E.label] - c[label], n, f"{params.group.name} {E.label} degree {n}")
                        found += 1
        self.assertGreater(found, 0)
