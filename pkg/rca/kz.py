"""Monodromy of the KZ connection on Delta(E) restricted to the regular locus.

Horizontal sections satisfy f' = sum_H (alpha_H(x') / alpha_H(x)) A_H f along a
path x(t), with A_H the image of a_H in E.  The braid generator attached to a
reflection s is T_s = rho_E(s) P(x0 -> s x0), where the path makes a
positive half-turn around the wall of s.  The path ends at s x0 rather than
s^-1 x0; the two points differ only for Z/e with e >= 3.
"""
import logging
import random
import re
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .cherednik import a_element
from .exceptions import InvariantViolation, PathTooCloseError, PreconditionError
from .ode import solve_double, solve_multiprecision, use_double
from .scalars import DEFAULT_PRECISION, to_complex

logger = logging.getLogger(__name__)

ORIENTATION = ("T_s = rho_E(s) . P(x0 -> s.x0), positive half-turn around the wall of s; "
               "the endpoint is s.x0, not s^-1.x0, which differs only for Z/e with e >= 3")
DEFAULT_TOL = 1e-10
DEFAULT_CLEARANCE = 0.5


def _complex_vector(vector, precision):
    return [to_complex(x, precision) for x in vector]


def _norm(vector):
    return mpmath.sqrt(sum(abs(x) ** 2 for x in vector))


def operator_norm(matrix):
    if matrix.rows == 0:
        return mpmath.mpf(0)
    values = mpmath.svd_c(matrix, compute_uv=False)
    return max(values[i] for i in range(values.rows))


# ---------------- Connection ----------------

@dataclass
class KZConnection:
    irrep: object
    params: object
    precision: int
    residues: list
    alphas: list
    exact_residues: list = field(repr=False, default_factory=list)
    flatness_residual: float = 0.0

    @property
    def group(self):
        return self.params.group

    @property
    def dimension(self):
        return self.irrep.dimension

    def form(self, point, direction):
        """Omega(direction) at point: sum_H alpha_H(direction) / alpha_H(point) A_H."""
        out = mpmath.zeros(self.dimension, self.dimension)
        for alpha, residue in zip(self.alphas, self.residues):
            value = sum(a * x for a, x in zip(alpha, point))
            slope = sum(a * v for a, v in zip(alpha, direction))
            if slope != 0:
                out = out + residue * (slope / value)
        return out

    def distance_to_arrangement(self, point):
        return min(abs(sum(a * x for a, x in zip(alpha, point))) / _norm(alpha) for alpha in self.alphas)

    def is_trivial(self):
        return all(m.is_zero() for m in self.exact_residues)


def assemble_connection(irrep, params, precision=DEFAULT_PRECISION, seed=0, samples=8):
    group = params.group
    exact = [a_element(params, H.index).represent(irrep) for H in group.hyperplanes]
    for H in group.hyperplanes:
        for g in group.generators:
            image = group.hyperplane_image(g, H.index)
            conjugated = irrep.matrices[g] @ exact[H.index] @ irrep.matrices[group.inverses[g]]
            if conjugated != exact[image]:
                raise InvariantViolation(f"residues of {irrep.label} are not W-equivariant")
    with mpmath.workprec(precision):
        residues = [m.to_complex(precision) for m in exact]
        alphas = [_complex_vector(H.alpha, precision) for H in group.hyperplanes]
    conn = KZConnection(irrep, params, precision, residues, alphas, exact)
    conn.flatness_residual = flatness_residual(conn, seed, samples)
    logger.debug("connection on %s: flatness residual %.3e", irrep.label, conn.flatness_residual)
    return conn


def flatness_residual(conn, seed=0, samples=8):
    """max ||[Omega(xi_i), Omega(xi_j)]|| at random points."""
    n = conn.group.rank
    if n < 2:
        return 0.0
    rng = random.Random(seed)
    worst = mpmath.mpf(0)
    with mpmath.workprec(conn.precision):
        for _ in range(samples):
            point = [mpmath.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
            forms = [conn.form(point, [1 if j == i else 0 for j in range(n)]) for i in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    worst = max(worst, mpmath.mnorm(forms[i] * forms[j] - forms[j] * forms[i], 1))
    return float(worst)


# ---------------- Paths ----------------

@dataclass
class Segment:
    """x(t) for t in [0, 1]: the line start -> end, or the arc center + exp(i theta(t)) start."""

    kind: str
    start: list
    end: list = None
    center: list = None
    theta0: object = 0
    theta1: object = 0

    def point(self, t):
        if self.kind == 'line':
            return [a + t * (b - a) for a, b in zip(self.start, self.end)]
        phase = mpmath.expj(self.theta0 + t * (self.theta1 - self.theta0))
        return [c + phase * o for c, o in zip(self.center, self.start)]

    def velocity(self, t):
        if self.kind == 'line':
            return [b - a for a, b in zip(self.start, self.end)]
        sweep = self.theta1 - self.theta0
        phase = mpmath.expj(self.theta0 + t * sweep)
        return [1j * sweep * phase * o for o in self.start]


@dataclass
class BraidPath:
    segments: list
    reflection: int = None
    clearance: float = 0.0
    samples: int = 64

    def start(self):
        return self.segments[0].point(0)

    def end(self):
        return self.segments[-1].point(1)

    def reversed(self):
        out = []
        for s in reversed(self.segments):
            if s.kind == 'line':
                out.append(Segment('line', s.end, s.start))
            else:
                phase = mpmath.expj(s.theta1)
                out.append(Segment('arc', [phase * o for o in s.start], center=s.center,
                                   theta0=0, theta1=s.theta0 - s.theta1))
        return BraidPath(out, self.reflection, self.clearance, self.samples)

    def __add__(self, other):
        return BraidPath(self.segments + other.segments, None, min(self.clearance, other.clearance),
                         self.samples)

    def minimum_distance(self, conn):
        best = None
        for segment in self.segments:
            for i in range(self.samples + 1):
                d = conn.distance_to_arrangement(segment.point(mpmath.mpf(i) / self.samples))
                best = d if best is None else min(best, d)
        return best


def base_point(group):
    return group.base_point()


def standard_path(group, s, radius_fraction=DEFAULT_CLEARANCE, precision=DEFAULT_PRECISION):
    """Path x0 -> s.x0 making a positive half-turn around the wall of s.

    Rank one: the arc x0 exp(i theta), theta from 0 to 2 pi / e.  Otherwise the
    segment x0 -> m + r u, the semicircle m + r exp(i theta) u, and the
    segment m - r u -> s.x0, where m is the midpoint of x0 and s.x0 and r is a
    fraction of the distance from m to the other walls.
    """
    with mpmath.workprec(precision):
        x0 = _complex_vector(group.base_point(), precision)
        if group.rank == 1:
            H = next(H for H in group.hyperplanes if s in H.stabilizer)
            arc = Segment('arc', x0, center=[mpmath.mpc(0)], theta0=mpmath.mpf(0),
                          theta1=2 * mpmath.pi / H.order)
            return BraidPath([arc], s, float(abs(x0[0])))
        y = _complex_vector(group.act(s, group.base_point()), precision)
        m = [(a + b) / 2 for a, b in zip(x0, y)]
        offset = [a - c for a, c in zip(x0, m)]
        half = _norm(offset)
        u = [o / half for o in offset]
        wall = next(H.index for H in group.hyperplanes if s in H.stabilizer)
        others = [
            abs(sum(a * x for a, x in zip(alpha, m))) / _norm(alpha)
            for h, alpha in enumerate(_complex_vector(H.alpha, precision) for H in group.hyperplanes)
            if h != wall
        ]
        radius = radius_fraction * min(others + [half])
        if not 0 < radius < min(others, default=mpmath.inf):
            raise PathTooCloseError(f"no admissible radius around the wall of {group.element_label(s)}")
        near = [c + radius * v for c, v in zip(m, u)]
        far = [c - radius * v for c, v in zip(m, u)]
        segments = [
            Segment('line', x0, near),
            Segment('arc', [radius * v for v in u], center=m, theta0=mpmath.mpf(0), theta1=mpmath.pi),
            Segment('line', far, y),
        ]
    return BraidPath(segments, s, float(radius))


def round_trip_path(group, s, radius_fraction=DEFAULT_CLEARANCE, precision=DEFAULT_PRECISION):
    """The path to s.x0 followed by the path from s.x0 back to x0 around the same wall."""
    forward = standard_path(group, s, radius_fraction, precision)
    return forward + forward.reversed()


# ---------------- Transport ----------------

def parallel_transport(conn, path, tol=DEFAULT_TOL, clearance=None):
    """Fundamental solution along the path; composing paths multiplies on the left."""
    dimension = conn.dimension
    if clearance is not None:
        with mpmath.workprec(conn.precision):
            distance = path.minimum_distance(conn)
        if distance <= clearance:
            raise PathTooCloseError(f"path comes within {float(distance):.3e} of the arrangement")
    if conn.is_trivial():
        return mpmath.eye(dimension)
    if use_double(conn.precision):
        residues = [np.array([[complex(x) for x in row] for row in m.tolist()], dtype=np.complex128)
                    for m in conn.residues]
        alphas = [np.array([complex(a) for a in alpha]) for alpha in conn.alphas]
        y = np.eye(dimension, dtype=np.complex128)
        for index, segment in enumerate(path.segments):
            def rhs(t, Y, segment=segment):
                point = np.array([complex(x) for x in segment.point(float(t))])
                direction = np.array([complex(v) for v in segment.velocity(float(t))])
                omega = np.zeros((dimension, dimension), dtype=np.complex128)
                for alpha, residue in zip(alphas, residues):
                    slope = alpha @ direction
                    if slope != 0:
                        omega += residue * (slope / (alpha @ point))
                return omega @ Y
            y = solve_double(rhs, y, 0.0, 1.0, tol, segment=index)
        return mpmath.matrix(y.tolist())
    with mpmath.workprec(conn.precision):
        y = mpmath.eye(dimension)
        for index, segment in enumerate(path.segments):
            def rhs(t, Y, segment=segment):
                return conn.form(segment.point(t), segment.velocity(t)) * Y
            y = solve_multiprecision(rhs, y, 0, 1, tol, conn.precision, segment=index)
        return y


def braid_generator_monodromy(conn, s, tol=DEFAULT_TOL, path=None):
    path = standard_path(conn.group, s, precision=conn.precision) if path is None else path
    transport = parallel_transport(conn, path, tol)
    with mpmath.workprec(conn.precision):
        return conn.irrep.matrices[s].to_complex(conn.precision) * transport


# ---------------- Representation ----------------

@dataclass
class MonodromyRep:
    irrep: object
    generators: tuple
    matrices: list
    tol: float
    precision: int
    backend: str
    hecke_residuals: list = field(default_factory=list)
    braid_residual: float = 0.0

    def labels(self):
        return [f"T{i + 1}" for i in range(len(self.generators))]

    def word_matrix(self, word):
        out = mpmath.eye(self.irrep.dimension)
        for i in word:
            out = out * self.matrices[i]
        return out

    def to_json(self, group, digits=12):
        return {
            'irrep': self.irrep.label,
            'dimension': self.irrep.dimension,
            'generators': [
                {
                    'label': label,
                    'reflection': group.element_label(s),
                    'matrix': [[complex_pair(matrix[i, j], digits) for j in range(matrix.cols)]
                               for i in range(matrix.rows)],
                    'eigenvalues': sorted(complex_pair(x, digits) for x in eigenvalues(matrix)),
                    'hecke_residual': float_digits(residual, digits),
                }
                for label, s, matrix, residual in zip(self.labels(), self.generators, self.matrices,
                                                      self.hecke_residuals)
            ],
            'braid_residual': float_digits(self.braid_residual, digits),
            'tol': self.tol,
            'precision': self.precision,
            'backend': self.backend,
            'orientation': ORIENTATION,
        }


def float_digits(x, digits):
    return float(mpmath.nstr(mpmath.mpf(x), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)) + 0.0


def complex_pair(z, digits):
    z = mpmath.mpc(z)
    return [float_digits(z.real, digits), float_digits(z.imag, digits)]


def eigenvalues(matrix):
    if matrix.rows == 1:
        return [matrix[0, 0]]
    return list(mpmath.eig(matrix, left=False, right=False))


def hecke_roots(params, h, precision=DEFAULT_PRECISION):
    """1 and det(s)^-j exp(2 pi i k_{H,j}) for j = 1..e_H - 1, s the distinguished reflection."""
    group = params.group
    H = group.hyperplanes[h]
    det = group.determinants[H.generator]
    roots = [mpmath.mpc(1)]
    with mpmath.workprec(precision):
        for j in range(1, H.order):
            phase = mpmath.expj(2 * mpmath.pi * to_complex(params.for_hyperplane(h, j), precision))
            roots.append(to_complex(det ** (-j), precision) * phase)
    return roots


def hecke_relation_residual(matrix, h, params, precision=DEFAULT_PRECISION):
    """Operator norm of (T - 1) prod_j (T - det(s)^-j exp(2 pi i k_{H,j}))."""
    with mpmath.workprec(precision):
        identity = mpmath.eye(matrix.rows)
        product = identity
        for root in hecke_roots(params, h, precision):
            product = product * (matrix - identity * root)
        return float(operator_norm(product))


def braid_relation_residual(rep, group):
    """max ||T_i T_j T_i ... - T_j T_i T_j ...|| over pairs, with m_ij factors on each side."""
    if len(rep.generators) < 2:
        raise PreconditionError("braid relations need at least two generators")
    coxeter = group.coxeter_matrix(rep.generators)
    worst = mpmath.mpf(0)
    with mpmath.workprec(rep.precision):
        for i in range(len(rep.generators)):
            for j in range(i + 1, len(rep.generators)):
                m = coxeter[i][j]
                left = rep.word_matrix([(i, j)[t % 2] for t in range(m)])
                right = rep.word_matrix([(j, i)[t % 2] for t in range(m)])
                worst = max(worst, operator_norm(left - right))
    return float(worst)


def _monodromy_matrices(conn, generators, tol):
    return [braid_generator_monodromy(conn, s, tol) for s in generators]


def monodromy_representation(conn, tol=DEFAULT_TOL):
    """T_s for every braid generator, with Hecke and braid residuals."""
    group = conn.group
    generators = group.simple_reflections()
    matrices = _monodromy_matrices(conn, generators, tol)
    hecke = []
    for s, matrix in zip(generators, matrices):
        h = next(H.index for H in group.hyperplanes if s in H.stabilizer)
        hecke.append(hecke_relation_residual(matrix, h, conn.params, conn.precision))
    rep = MonodromyRep(conn.irrep, tuple(generators), matrices, tol, conn.precision,
                       'scipy-DOP853' if use_double(conn.precision) else 'mpmath-DP54', hecke)
    if len(generators) >= 2:
        rep.braid_residual = braid_relation_residual(rep, group)
    if any(m.rows != conn.irrep.dimension for m in matrices):
        raise InvariantViolation("monodromy dimension differs from dim E")
    logger.info("monodromy of %s: hecke residual %.2e, braid residual %.2e",
                conn.irrep.label, max(hecke), rep.braid_residual)
    return rep


_WORD = re.compile(r'T(\d+)')


def parse_word(text, size):
    """'e' or '' is the empty word; 'T1T2T1' lists generator positions."""
    text = text.strip().replace('*', '').replace(' ', '')
    if text in ('', 'e'):
        return ()
    if _WORD.sub('', text):
        raise PreconditionError(f"cannot parse braid word {text!r}")
    word = tuple(int(n) - 1 for n in _WORD.findall(text))
    if any(not 0 <= i < size for i in word):
        raise PreconditionError(f"word {text!r} uses a generator beyond T{size}")
    return word


def monodromy_character(rep, words):
    """Traces of the images of the words (strings or tuples of generator positions)."""
    out = []
    with mpmath.workprec(rep.precision):
        for word in words:
            if isinstance(word, str):
                word = parse_word(word, len(rep.generators))
            matrix = rep.word_matrix(word)
            out.append(sum((matrix[i, i] for i in range(matrix.rows)), mpmath.mpc(0)))
    return out


def eigenvalue_containment(rep, params):
    """Largest distance from an eigenvalue of some T_s to its Hecke root set."""
    group = params.group
    worst = mpmath.mpf(0)
    with mpmath.workprec(rep.precision):
        for s, matrix in zip(rep.generators, rep.matrices):
            h = next(H.index for H in group.hyperplanes if s in H.stabilizer)
            roots = hecke_roots(params, h, rep.precision)
            for value in eigenvalues(matrix):
                worst = max(worst, min(abs(value - r) for r in roots))
    return float(worst)


def rank_one_closed_form(irrep, params, precision=DEFAULT_PRECISION):
    """T_s on det^j for a rank one group: det(s)^j exp(2 pi i k_{H,e-j}).

    a_H acts on det^j by e k_{e-j}, and the arc sweeps an angle 2 pi / e.
    """
    group = params.group
    if group.rank != 1:
        raise PreconditionError("the closed form covers rank one groups only")
    H = group.hyperplanes[0]
    j = next(d for d in range(H.order)
             if irrep.character[H.generator] == group.determinants[H.generator] ** d)
    with mpmath.workprec(precision):
        phase = mpmath.expj(2 * mpmath.pi * to_complex(params.for_hyperplane(0, H.order - j), precision))
        return to_complex(irrep.character[H.generator], precision) * phase
