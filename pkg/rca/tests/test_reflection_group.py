from django.test import SimpleTestCase

from rca.exceptions import UnsupportedGroupError
from rca.reflection_group import (GroupAlgebraElement, build_cyclic, build_dihedral, build_group, build_symmetric,
                                  idempotent, isotypic_projector, partitions, standard_tableaux)
from rca.scalars import ONE, ZERO, ExactScalar


class TableauxTests(SimpleTestCase):
    def test_partitions_order(self):
        self.assertEqual(list(partitions(4)), [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])

    def test_standard_tableaux_counts(self):
        self.assertEqual(len(standard_tableaux((2, 1))), 2)
        self.assertEqual(len(standard_tableaux((3, 1))), 3)
        self.assertEqual(len(standard_tableaux((2, 2))), 2)
        self.assertEqual(standard_tableaux((2, 1))[0], ((1, 2), (3,)))


class GroupConstructionTests(SimpleTestCase):
    def test_cyclic(self):
        group = build_cyclic(3)
        self.assertEqual(group.order, 3)
        self.assertEqual(len(group.hyperplanes), 1)
        self.assertEqual(group.orbits[0].order, 3)
        self.assertEqual([E.label for E in group.irreps], ['det^0', 'det^1', 'det^2'])

    def test_z2_labels(self):
        group = build_cyclic(2)
        self.assertEqual([E.label for E in group.irreps], ['triv', 'sgn'])

    def test_symmetric_three(self):
        group = build_symmetric(3)
        self.assertEqual(group.order, 6)
        self.assertEqual(group.rank, 2)
        self.assertEqual(len(group.hyperplanes), 3)
        self.assertEqual(len(group.orbits), 1)
        self.assertEqual([E.label for E in group.irreps], ['(3)', '(2,1)', '(1,1,1)'])
        self.assertEqual([E.dimension for E in group.irreps], [1, 2, 1])

    def test_permutation_realization(self):
        group = build_symmetric(3, reflection_rep=False)
        self.assertEqual(group.rank, 3)
        self.assertEqual(group.order, 6)
        self.assertEqual(len(group.hyperplanes), 3)

    def test_dihedral_four_has_two_orbits(self):
        group = build_dihedral(4)
        self.assertEqual(group.order, 8)
        self.assertEqual(len(group.orbits), 2)
        self.assertEqual(sum(E.dimension ** 2 for E in group.irreps), 8)

    def test_unsupported(self):
        with self.assertRaises(UnsupportedGroupError):
            build_cyclic(13)
        with self.assertRaises(UnsupportedGroupError):
            build_group({'family': 'exceptional', 'param': 4})

    def test_build_group_spec(self):
        group = build_group({'family': 'dihedral', 'param': 3})
        self.assertEqual(group.name, 'I2(3)')


class GroupDataTests(SimpleTestCase):
    groups = [build_cyclic(2), build_cyclic(3), build_dihedral(3), build_dihedral(4), build_symmetric(3)]

    def test_character_orthogonality(self):
        for group in self.groups:
            for E in group.irreps:
                for F in group.irreps:
                    expected = ONE if E is F else ZERO
                    self.assertEqual(group.inner_product(E.character, F.character), expected,
                                     f"{group.name}: <{E.label}, {F.label}>")

    def test_conjugacy_classes(self):
        for group in self.groups:
            classes = group.conjugacy_classes()
            self.assertEqual(sum(size for _, size in classes), group.order)
            self.assertEqual(len(classes), len(group.irreps))
            self.assertEqual(classes[0], ('e', 1))

    def test_hyperplane_normalization(self):
        for group in self.groups:
            for H in group.hyperplanes:
                self.assertEqual(H.alpha_of(H.v), H.order)
                self.assertEqual(group.determinants[H.generator], ExactScalar.root_of_unity(H.order))
                self.assertEqual(len(H.stabilizer), H.order)
                self.assertEqual(H.stabilizer[0], 0)

    def test_idempotents_partition_unity(self):
        for group in self.groups:
            for H in group.hyperplanes:
                total = GroupAlgebraElement(group)
                for j in range(H.order):
                    eps = idempotent(group, H.index, j)
                    self.assertEqual(eps * eps, eps)
                    total = total + eps
                self.assertEqual(total, GroupAlgebraElement.basis(group, 0))

    def test_isotypic_projectors(self):
        group = build_symmetric(3)
        for E in group.irreps:
            projector = isotypic_projector(group, E)
            self.assertEqual(projector * projector, projector)
            self.assertEqual(projector.represent(E).trace(), E.dimension)

    def test_contragredient_and_twists(self):
        group = build_cyclic(3)
        self.assertEqual(group.contragredient(group.irrep('det^1')).label, 'det^2')
        s3 = build_symmetric(3)
        self.assertEqual(s3.tensor_linear(s3.irrep('(2,1)'), s3.irrep('(1,1,1)')).label, '(2,1)')
        self.assertEqual(s3.tensor_linear(s3.irrep('(3)'), s3.irrep('(1,1,1)')).label, '(1,1,1)')

    def test_dual_keeps_indexing(self):
        group = build_cyclic(3)
        dual = group.dual()
        self.assertEqual(dual.order, group.order)
        self.assertEqual(dual.determinants[1], group.determinants[1].conjugate())


class CoxeterTests(SimpleTestCase):
    def test_simple_reflections_s3(self):
        group = build_symmetric(3)
        simple = group.simple_reflections()
        self.assertEqual(len(simple), 2)
        self.assertEqual(group.coxeter_matrix(simple), [[1, 3], [3, 1]])

    def test_simple_reflections_dihedral(self):
        group = build_dihedral(4)
        self.assertEqual(group.coxeter_matrix(), [[1, 4], [4, 1]])

    def test_rank_one_generator(self):
        group = build_cyclic(4)
        self.assertEqual(group.simple_reflections(), (group.hyperplanes[0].generator,))

    def test_describe(self):
        data = build_symmetric(3).describe()
        self.assertEqual(data['order'], 6)
        self.assertEqual(len(data['character_table']), 3)
        self.assertEqual(data['orbits'][0]['e'], 2)
