"""Hecke algebra data at the monodromy parameters and the type A Specht oracle."""
import logging
from dataclasses import dataclass, field

import mpmath

from .cherednik import c_function_table
from .exceptions import DegenerateParameterError, InvariantViolation, PreconditionError
from .kz import complex_pair, float_digits, hecke_roots, monodromy_character, operator_norm, parse_word
from .reflection_group import seminormal_generators, standard_tableaux
from .scalars import DEFAULT_PRECISION, to_complex

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-12


@dataclass
class HeckeParams:
    """Roots of the defining polynomial of each orbit: 1 and det(s)^-j exp(2 pi i k_{H,j})."""

    roots: dict
    precision: int = DEFAULT_PRECISION

    def is_semisimple(self, orbit):
        values = self.roots[orbit]
        return all(abs(a - b) > DEGENERACY_TOL for i, a in enumerate(values) for b in values[i + 1:])

    def to_json(self, digits=12):
        return {orbit: [complex_pair(x, digits) for x in values] for orbit, values in self.roots.items()}


def hecke_parameters(params, precision=DEFAULT_PRECISION):
    group = params.group
    return HeckeParams(
        {o.label: hecke_roots(params, o.hyperplanes[0], precision) for o in group.orbits}, precision)


@dataclass
class SpechtOracle:
    partition: tuple
    q: object
    matrices: list = field(default_factory=list)
    precision: int = DEFAULT_PRECISION

    @property
    def dimension(self):
        return self.matrices[0].rows if self.matrices else 1

    def word_matrix(self, word):
        out = mpmath.eye(self.dimension)
        for i in word:
            out = out * self.matrices[i]
        return out

    def relation_residuals(self):
        """(quadratic, braid) residuals of (T - 1)(T + q) = 0 and the type A braid relations."""
        with mpmath.workprec(self.precision):
            identity = mpmath.eye(self.dimension)
            quadratic = max((operator_norm((T - identity) * (T + identity * self.q)) for T in self.matrices),
                            default=mpmath.mpf(0))
            braid = mpmath.mpf(0)
            for i in range(len(self.matrices)):
                for j in range(i + 1, len(self.matrices)):
                    a, b = self.matrices[i], self.matrices[j]
                    if j == i + 1:
                        braid = max(braid, operator_norm(a * b * a - b * a * b))
                    else:
                        braid = max(braid, operator_norm(a * b - b * a))
        return float(quadratic), float(braid)

    def to_json(self, digits=12):
        return {
            'partition': list(self.partition),
            'q': complex_pair(self.q, digits),
            'tableaux': [[list(row) for row in t] for t in standard_tableaux(self.partition)],
            'matrices': [[[complex_pair(T[i, j], digits) for j in range(T.cols)] for i in range(T.rows)]
                         for T in self.matrices],
        }


def specht_matrices(partition, q, precision=DEFAULT_PRECISION):
    """Seminormal matrices of T_1..T_{n-1} on the Specht module, with eigenvalues 1 and -q."""
    partition = tuple(partition)
    if sum(partition) > 4:
        raise PreconditionError("Specht matrices are provided for n <= 4")
    with mpmath.workprec(precision):
        q = mpmath.mpc(q)
        one, zero = mpmath.mpc(1), mpmath.mpc(0)

        def qint(d):
            value = mpmath.mpf(d) if abs(q - 1) < DEGENERACY_TOL else (1 - q ** d) / (1 - q)
            if abs(value) < DEGENERACY_TOL:
                raise DegenerateParameterError(f"[{d}]_q vanishes at q = {mpmath.nstr(q, 8)}")
            return value

        generators = seminormal_generators(partition, q, qint, one, zero)
        matrices = [mpmath.matrix(m) for m in generators]
    return SpechtOracle(partition, q, matrices, precision)


def specht_character(oracle, words):
    out = []
    with mpmath.workprec(oracle.precision):
        for word in words:
            if isinstance(word, str):
                word = parse_word(word, max(len(oracle.matrices), 1))
            matrix = oracle.word_matrix(word)
            out.append(sum((matrix[i, i] for i in range(matrix.rows)), mpmath.mpc(0)))
    return out


def a_plus_A_from_c(params):
    """c_E / k_1 for equal parameters on a group whose reflections all have order two."""
    group = params.group
    values = {value for o in group.orbits for value in params.k[o.label]}
    if any(o.order != 2 for o in group.orbits) or len(values) != 1:
        raise PreconditionError("a_E + A_E needs one common parameter on order-two reflections")
    k1 = values.pop()
    if k1.is_zero():
        raise PreconditionError("a_E + A_E needs a nonzero parameter")
    out = {}
    for label, c in c_function_table(params).items():
        ratio = c / k1
        if not ratio.is_integer() or ratio.as_fraction() < 0:
            raise InvariantViolation(f"c_{label} / k_1 = {ratio} is not a non-negative integer")
        out[label] = int(ratio.as_fraction())
    return out


def specht_q(params, precision=DEFAULT_PRECISION):
    """q = exp(2 pi i k) for equal parameters in type A."""
    values = {value for o in params.group.orbits for value in params.k[o.label]}
    if params.group.family != 'symmetric' or len(values) != 1:
        raise PreconditionError("the Specht comparison needs a symmetric group with one parameter")
    with mpmath.workprec(precision):
        return mpmath.expj(2 * mpmath.pi * to_complex(values.pop(), precision))


def compare_with_monodromy(rep, oracle, words, tol=1e-5, digits=12):
    """PASS iff dimensions agree and every trace differs by less than ``tol``."""
    report = {
        'irrep': rep.irrep.label,
        'partition': list(oracle.partition),
        'dimensions': [rep.irrep.dimension, oracle.dimension],
        'words': list(words),
        'tol': tol,
    }
    if rep.irrep.dimension != oracle.dimension:
        report['status'] = 'FAIL'
        report['reason'] = (f"dimension mismatch: monodromy of {rep.irrep.label} has dimension "
                            f"{rep.irrep.dimension}, Specht module {oracle.partition} has {oracle.dimension}")
        return report
    monodromy = monodromy_character(rep, words)
    specht = specht_character(oracle, words)
    differences = [float(abs(a - b)) for a, b in zip(monodromy, specht)]
    report['monodromy_traces'] = [complex_pair(x, digits) for x in monodromy]
    report['specht_traces'] = [complex_pair(x, digits) for x in specht]
    report['differences'] = [float_digits(d, digits) for d in differences]
    report['status'] = 'PASS' if max(differences, default=0.0) < tol else 'FAIL'
    if report['status'] == 'FAIL':
        logger.warning("Specht comparison failed for %s: max difference %.3e", rep.irrep.label, max(differences))
    return report
