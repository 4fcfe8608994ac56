import mpmath
from django.test import SimpleTestCase

from rca.cherednik import CherednikParams
from rca.exceptions import PathTooCloseError, PreconditionError
from rca.kz import (assemble_connection, braid_generator_monodromy, eigenvalue_containment, eigenvalues,
                    monodromy_character, monodromy_representation, operator_norm, parallel_transport, parse_word,
                    rank_one_closed_form, round_trip_path, standard_path)
from rca.reflection_group import build_cyclic, build_dihedral, build_symmetric

TOL = 1e-10
DOUBLE = 53


class RankOneTests(SimpleTestCase):
    def test_z2_closed_form(self):
        group = build_cyclic(2)
        params = CherednikParams.uniform(group, '1/5')
        for E in group.irreps:
            rep = monodromy_representation(assemble_connection(E, params, DOUBLE), TOL)
            expected = rank_one_closed_form(E, params, DOUBLE)
            self.assertLess(abs(rep.matrices[0][0, 0] - expected), 1e-6, E.label)
        sgn = rank_one_closed_form(group.irrep('sgn'), params, DOUBLE)
        self.assertLess(abs(sgn + mpmath.expj(2 * mpmath.pi / 5)), 1e-12)

    def test_z3_closed_form_and_hecke_relation(self):
        group = build_cyclic(3)
        params = CherednikParams(group, {'H0': ['1/5', '1/3']})
        for E in group.irreps:
            rep = monodromy_representation(assemble_connection(E, params, DOUBLE), TOL)
            self.assertLess(abs(rep.matrices[0][0, 0] - rank_one_closed_form(E, params, DOUBLE)), 1e-6)
            self.assertLess(max(rep.hecke_residuals), 1e-6)
            self.assertLess(eigenvalue_containment(rep, params), 1e-6)

    def test_multiprecision_backend(self):
        group = build_cyclic(2)
        params = CherednikParams.uniform(group, '1/3')
        sgn = group.irrep('sgn')
        rep = monodromy_representation(assemble_connection(sgn, params, 80), 1e-12)
        self.assertEqual(rep.backend, 'mpmath-DP54')
        with mpmath.workprec(80):
            self.assertLess(abs(rep.matrices[0][0, 0] - rank_one_closed_form(sgn, params, 80)), 1e-10)


class RankTwoTests(SimpleTestCase):
    def test_s3_relations(self):
        group = build_symmetric(3)
        for k in ('1/5', '1/3'):
            params = CherednikParams.uniform(group, k)
            for E in group.irreps:
                conn = assemble_connection(E, params, DOUBLE)
                self.assertLess(conn.flatness_residual, 1e-12)
                rep = monodromy_representation(conn, TOL)
                self.assertEqual(rep.matrices[0].rows, E.dimension)
                self.assertLess(max(rep.hecke_residuals), 1e-6, f"{E.label} at {k}")
                self.assertLess(rep.braid_residual, 1e-6, f"{E.label} at {k}")
                self.assertLess(eigenvalue_containment(rep, params), 1e-6)

    def test_dihedral_relations(self):
        for m in (3, 4):
            group = build_dihedral(m)
            for k in ('1/5', '1/3'):
                params = CherednikParams.uniform(group, k)
                for E in group.irreps:
                    rep = monodromy_representation(assemble_connection(E, params, DOUBLE), TOL)
                    self.assertLess(max(rep.hecke_residuals), 1e-6, f"{group.name} {E.label} at {k}")
                    self.assertLess(rep.braid_residual, 1e-6, f"{group.name} {E.label} at {k}")
                    self.assertLess(eigenvalue_containment(rep, params), 1e-6, f"{group.name} {E.label} at {k}")

    def test_halving_tolerance(self):
        group = build_symmetric(3)
        params = CherednikParams.uniform(group, '1/5')
        conn = assemble_connection(group.irrep('(2,1)'), params, DOUBLE)
        loose = monodromy_representation(conn, 1e-8)
        tight = monodromy_representation(conn, 5e-9)
        allowance = eigenvalue_containment(loose, params) + eigenvalue_containment(tight, params) + 1e-12
        for a, b in zip(loose.matrices, tight.matrices):
            for value in eigenvalues(b):
                shift = min(abs(value - other) for other in eigenvalues(a))
                self.assertLessEqual(float(shift), allowance)
        self.assertLess(max(tight.hecke_residuals), 1e-6)

    def test_zero_parameter_gives_group_action(self):
        group = build_dihedral(4)
        params = CherednikParams.zero(group)
        for E in group.irreps:
            conn = assemble_connection(E, params, DOUBLE)
            self.assertTrue(conn.is_trivial())
            rep = monodromy_representation(conn, TOL)
            for s, matrix in zip(rep.generators, rep.matrices):
                self.assertLess(operator_norm(matrix - E.matrices[s].to_complex(DOUBLE)), 1e-8)

    def test_round_trip_is_identity(self):
        group = build_symmetric(3)
        params = CherednikParams.uniform(group, '1/5')
        conn = assemble_connection(group.irrep('(2,1)'), params, DOUBLE)
        s = group.simple_reflections()[0]
        transport = parallel_transport(conn, round_trip_path(group, s), TOL)
        self.assertLess(operator_norm(transport - mpmath.eye(2)), 1e-8)

    def test_clearance_violation(self):
        group = build_symmetric(3)
        params = CherednikParams.uniform(group, '1/5')
        conn = assemble_connection(group.irrep('(2,1)'), params, DOUBLE)
        s = group.simple_reflections()[0]
        path = standard_path(group, s)
        with self.assertRaises(PathTooCloseError):
            parallel_transport(conn, path, TOL, clearance=100.0)

    def test_explicit_path_matches_default(self):
        group = build_symmetric(3)
        params = CherednikParams.uniform(group, '1/5')
        conn = assemble_connection(group.irrep('(1,1,1)'), params, DOUBLE)
        s = group.simple_reflections()[1]
        default = braid_generator_monodromy(conn, s, TOL)
        narrow = braid_generator_monodromy(conn, s, TOL, path=standard_path(group, s, radius_fraction=0.25))
        self.assertLess(operator_norm(default - narrow), 1e-7)


class WordTests(SimpleTestCase):
    def test_parse_word(self):
        self.assertEqual(parse_word('e', 2), ())
        self.assertEqual(parse_word('T1T2T1', 2), (0, 1, 0))
        self.assertEqual(parse_word('T2*T1', 2), (1, 0))
        with self.assertRaises(PreconditionError):
            parse_word('T3', 2)
        with self.assertRaises(PreconditionError):
            parse_word('s1', 2)

    def test_traces(self):
        group = build_symmetric(3)
        params = CherednikParams.uniform(group, '1/5')
        rep = monodromy_representation(assemble_connection(group.irrep('(3)'), params, DOUBLE), TOL)
        traces = monodromy_character(rep, ['e', 'T1', 'T1T2'])
        for value in traces:
            self.assertLess(abs(value - 1), 1e-8)
