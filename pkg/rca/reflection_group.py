"""Small complex reflection groups: elements, hyperplane arrangement data,
irreducible representations and the group algebra.

Three families are supported: Z/e acting on C, the dihedral groups I2(m) in
their real realization on C^2, and the symmetric groups S_n on C^n or on the
reflection subrepresentation.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from math import gcd

from .exceptions import InvariantViolation, PreconditionError, UnsupportedGroupError
from .scalars import ONE, ZERO, ExactMatrix, ExactScalar, coerce, cos_2pi, sin_2pi, to_complex

logger = logging.getLogger(__name__)

SUPPORTED_RANGES = {
    'cyclic': (2, 12),
    'dihedral': (3, 8),
    'symmetric': (2, 4),
}


# ---------------- Tableaux ----------------

def partitions(n, largest=None):
    """Partitions of n, largest parts first: (n), (n-1, 1), ..., (1, ..., 1)."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def standard_tableaux(shape):
    """Standard Young tableaux of the given shape, row-reading tableau first."""
    shape = tuple(shape)
    n = sum(shape)
    out = []

    def fill(rows, m):
        if m > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r, length in enumerate(shape):
            if len(rows[r]) < length and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(m)
                fill(rows, m + 1)
                rows[r].pop()

    fill([[] for _ in shape], 1)
    return out


def tableau_positions(tableau):
    return {entry: (r, c) for r, row in enumerate(tableau) for c, entry in enumerate(row)}


def swap_entries(tableau, i):
    """The tableau s_i t obtained by exchanging i and i + 1."""
    def image(x):
        return i + 1 if x == i else i if x == i + 1 else x
    return tuple(tuple(image(x) for x in row) for row in tableau)


def seminormal_generators(shape, q, qint, one, zero):
    """Young's seminormal matrices of T_1, ..., T_{n-1} on the tableaux of ``shape``.

    The matrices satisfy (T - 1)(T + q) = 0.  For i above i + 1 in t (distinct
    rows and columns), T v_t = a_t v_t + v_{s t} and
    T v_{s t} = a_{s t} v_{s t} + (a_t a_{s t} + q) v_t, with a_t = 1 / [d]_q
    and d the content of i + 1 minus the content of i.  ``qint`` evaluates
    [d]_q; at q = 1 this is the rational seminormal form of S_n.
    """
    tableaux = standard_tableaux(shape)
    index = {t: a for a, t in enumerate(tableaux)}
    dim = len(tableaux)
    n = sum(shape)
    generators = []
    for i in range(1, n):
        m = [[zero] * dim for _ in range(dim)]
        for t in tableaux:
            a = index[t]
            pos = tableau_positions(t)
            (r1, c1), (r2, c2) = pos[i], pos[i + 1]
            if r1 == r2:
                m[a][a] = one
                continue
            if c1 == c2:
                m[a][a] = -q
                continue
            d = (c2 - r2) - (c1 - r1)
            diagonal = one / qint(d)
            m[a][a] = diagonal
            partner = index[swap_entries(t, i)]
            if r1 < r2:
                m[partner][a] = one
            else:
                m[partner][a] = diagonal * (one / qint(-d)) + q
        generators.append(m)
    return generators


# ---------------- Data classes ----------------

@dataclass(frozen=True)
class Hyperplane:
    index: int
    alpha: tuple
    v: tuple
    stabilizer: tuple
    order: int
    generator: int
    orbit: str

    def alpha_of(self, vector):
        return sum((a * coerce(x) for a, x in zip(self.alpha, vector)), ZERO)


@dataclass(frozen=True)
class HyperplaneOrbit:
    label: str
    hyperplanes: tuple
    order: int


class Irrep:
    def __init__(self, label, index, matrices, generators, partition=None):
        self.label = label
        self.index = index
        self.matrices = tuple(matrices)
        self.dimension = self.matrices[0].rows
        self.character = tuple(m.trace() for m in self.matrices)
        self.generator_matrices = {g: self.matrices[g] for g in generators}
        self.partition = partition

    def matrix(self, w):
        return self.matrices[w]

    def is_linear(self):
        return self.dimension == 1

    def __repr__(self):
        return f"Irrep({self.label!r}, dim={self.dimension})"


class GroupAlgebraElement:
    """Element of the group algebra kW, stored as element index -> coefficient."""

    __slots__ = ('group', 'coeffs')

    def __init__(self, group, coeffs=None):
        self.group = group
        clean = {}
        for w, c in (coeffs or {}).items():
            c = coerce(c)
            if not c.is_zero():
                clean[w] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, group, w):
        return cls(group, {w: ONE})

    def coefficient(self, w):
        return self.coeffs.get(w, ZERO)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for w, c in other.coeffs.items():
            coeffs[w] = coeffs.get(w, ZERO) + c
        return GroupAlgebraElement(self.group, coeffs)

    def __neg__(self):
        return GroupAlgebraElement(self.group, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = coerce(c)
        return GroupAlgebraElement(self.group, {w: c * x for w, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return self.scale(other)
        table = self.group.table
        coeffs = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                w = table[a][b]
                coeffs[w] = coeffs.get(w, ZERO) + x * y
        return GroupAlgebraElement(self.group, coeffs)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def represent(self, irrep):
        """The matrix sum_w c_w rho(w)."""
        out = ExactMatrix.zeros(irrep.dimension, irrep.dimension)
        for w, c in sorted(self.coeffs.items()):
            out = out + irrep.matrices[w].scale(c)
        return out

    def to_json(self):
        return {self.group.element_label(w): str(c) for w, c in sorted(self.coeffs.items())}

    def __repr__(self):
        return f"GroupAlgebraElement({self.to_json()})"


# ---------------- The group ----------------

def _normalize_form(coeffs):
    """Integer primitive form when rational (first nonzero entry positive), else first nonzero entry 1."""
    coeffs = tuple(coerce(c) for c in coeffs)
    first = next(c for c in coeffs if not c.is_zero())
    if all(c.is_rational() for c in coeffs):
        fractions = [c.as_fraction() for c in coeffs]
        denominator = 1
        for f in fractions:
            denominator = denominator * f.denominator // gcd(denominator, f.denominator)
        integers = [int(f * denominator) for f in fractions]
        divisor = 0
        for x in integers:
            divisor = gcd(divisor, abs(x))
        sign = 1 if first.as_fraction() > 0 else -1
        return tuple(ExactScalar.rational(sign * x // divisor) for x in integers)
    return tuple(c / first for c in coeffs)


class ReflectionGroup:
    """A finite complex reflection group with its arrangement and irreps.

    Elements are indexed by breadth-first order over words in the generators,
    so index 0 is the identity and the generators come next.
    """

    def __init__(self, name, family, param, generator_matrices, irrep_data, reflection_rep=True):
        self.name = name
        self.family = family
        self.param = param
        self.reflection_rep = reflection_rep
        self.rank = generator_matrices[0].rows
        self._enumerate(generator_matrices)
        self._build_table()
        self.determinants = tuple(m.determinant() for m in self.elements)
        self._build_hyperplanes()
        self._build_classes()
        self.irreps = tuple(
            Irrep(label, idx, self._represent_words(images), self.generators, partition)
            for idx, (label, images, partition) in enumerate(irrep_data))
        self._irrep_by_label = {E.label: E for E in self.irreps}
        logger.debug("built %s: order %d, %d hyperplanes, %d irreps",
                     name, self.order, len(self.hyperplanes), len(self.irreps))

    # ---------------- Construction ----------------

    def _enumerate(self, generator_matrices):
        identity = ExactMatrix.identity(self.rank)
        elements = [identity]
        index = {identity: 0}
        words = [()]
        right = []
        queue = deque([0])
        while queue:
            a = queue.popleft()
            row = []
            for gi, g in enumerate(generator_matrices):
                m = elements[a] @ g
                b = index.get(m)
                if b is None:
                    b = len(elements)
                    index[m] = b
                    elements.append(m)
                    words.append(words[a] + (gi,))
                    queue.append(b)
                row.append(b)
            while len(right) <= a:
                right.append(None)
            right[a] = row
            if len(elements) > 10000:
                raise UnsupportedGroupError(f"{self.name}: generators do not generate a small finite group")
        self.elements = tuple(elements)
        self.words = tuple(words)
        self._index = index
        self._right = tuple(tuple(r) for r in right)
        self.generators = tuple(self._right[0])
        self.order = len(elements)

    def _build_table(self):
        table = []
        for a in range(self.order):
            row = []
            for b in range(self.order):
                x = a
                for gi in self.words[b]:
                    x = self._right[x][gi]
                row.append(x)
            table.append(tuple(row))
        self.table = tuple(table)
        self.inverses = tuple(row.index(0) for row in table)

    def _represent_words(self, images):
        images = [ExactMatrix(m) if not isinstance(m, ExactMatrix) else m for m in images]
        dim = images[0].rows
        matrices = [ExactMatrix.identity(dim)] * self.order
        for w in range(1, self.order):
            parent_word = self.words[w][:-1]
            parent = self._index_of_word(parent_word)
            matrices[w] = matrices[parent] @ images[self.words[w][-1]]
        for a in range(self.order):
            for gi, b in enumerate(self._right[a]):
                if matrices[a] @ images[gi] != matrices[b]:
                    raise InvariantViolation(f"{self.name}: irrep images violate the group relations")
        return matrices

    def _index_of_word(self, word):
        x = 0
        for gi in word:
            x = self._right[x][gi]
        return x

    def _build_hyperplanes(self):
        identity = ExactMatrix.identity(self.rank)
        by_key = {}
        order = []
        for w in range(1, self.order):
            diff = self.elements[w] - identity
            if diff.rank() != 1:
                continue
            row = next(diff.row(i) for i in range(self.rank) if any(not x.is_zero() for x in diff.row(i)))
            key = _normalize_form(row)
            if key not in by_key:
                by_key[key] = []
                order.append(key)
            by_key[key].append(w)
        self._hyperplane_by_key = {}
        raw = []
        for h, key in enumerate(order):
            stabilizer = (0,) + tuple(by_key[key])
            e = len(stabilizer)
            zeta = ExactScalar.root_of_unity(e, 1)
            generator = next(w for w in stabilizer[1:] if self.determinants[w] == zeta)
            diff = self.elements[generator] - identity
            column = next(diff.column(j) for j in range(self.rank) if any(not x.is_zero() for x in diff.column(j)))
            pairing = sum((a * x for a, x in zip(key, column)), ZERO)
            scale = ExactScalar.rational(e) / pairing
            v = tuple(scale * x for x in column)
            raw.append((key, v, stabilizer, e, generator))
            self._hyperplane_by_key[key] = h
        # orbits under the generators
        parent = list(range(len(raw)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h, (key, *_rest) in enumerate(raw):
            for g in self.generators:
                image = self._hyperplane_by_key[self._image_key(g, key)]
                parent[find(image)] = find(h)
        roots = []
        for h in range(len(raw)):
            r = find(h)
            if r not in roots:
                roots.append(r)
        labels = {r: f"H{i}" for i, r in enumerate(roots)}
        self.hyperplanes = tuple(
            Hyperplane(h, key, v, stabilizer, e, generator, labels[find(h)])
            for h, (key, v, stabilizer, e, generator) in enumerate(raw))
        self.orbits = tuple(
            HyperplaneOrbit(labels[r], tuple(h.index for h in self.hyperplanes if h.orbit == labels[r]),
                            self.hyperplanes[r].order)
            for r in roots)

    def _image_key(self, w, alpha):
        inverse = self.elements[self.inverses[w]] if hasattr(self, 'inverses') else self.elements[w].inverse()
        image = tuple(
            sum((alpha[i] * inverse[i, k] for i in range(self.rank)), ZERO) for k in range(self.rank))
        return _normalize_form(image)

    def _build_classes(self):
        seen = set()
        classes = []
        for w in range(self.order):
            if w in seen:
                continue
            members = sorted({self.table[self.table[g][w]][self.inverses[g]] for g in range(self.order)})
            classes.append(tuple(members))
            seen.update(members)
        self.classes = tuple(classes)

    # ---------------- Queries ----------------

    def multiply(self, a, b):
        return self.table[a][b]

    def inverse(self, w):
        return self.inverses[w]

    def index_of(self, matrix):
        return self._index[matrix]

    def element_label(self, w):
        if w == 0:
            return 'e'
        return '*'.join(f"s{gi + 1}" for gi in self.words[w])

    def element_order(self, w):
        x, n = w, 1
        while x != 0:
            x = self.table[x][w]
            n += 1
        return n

    def act(self, w, vector):
        return self.elements[w].apply(tuple(coerce(x) for x in vector))

    def dual_matrix(self, w):
        """Matrix of w on V* in the coordinate basis: x -> x o w^-1."""
        return self.elements[self.inverses[w]].transpose()

    def irrep(self, label):
        try:
            return self._irrep_by_label[label]
        except KeyError:
            raise PreconditionError(f"{self.name} has no irrep {label!r}") from None

    def orbit(self, label):
        for o in self.orbits:
            if o.label == label:
                return o
        raise PreconditionError(f"{self.name} has no hyperplane orbit {label!r}")

    def orbit_of(self, h):
        return self.orbit(self.hyperplanes[h].orbit)

    def hyperplane_image(self, w, h):
        return self._hyperplane_by_key[self._image_key(w, self.hyperplanes[h].alpha)]

    def distinguished_reflection(self, h):
        return self.hyperplanes[h].generator

    def reflections(self):
        return tuple(w for H in self.hyperplanes for w in H.stabilizer[1:])

    def class_of(self, w):
        for c, members in enumerate(self.classes):
            if w in members:
                return c
        raise KeyError(w)

    def conjugacy_classes(self):
        """(representative label, size) per class, in character table column order."""
        return [(self.element_label(members[0]), len(members)) for members in self.classes]

    def character_table(self):
        return [[E.character[members[0]] for members in self.classes] for E in self.irreps]

    def inner_product(self, chi, psi):
        total = sum((chi[w] * psi[self.inverses[w]] for w in range(self.order)), ZERO)
        return total / self.order

    def contragredient(self, irrep):
        target = tuple(irrep.character[self.inverses[w]] for w in range(self.order))
        for F in self.irreps:
            if F.character == target:
                return F
        raise InvariantViolation(f"no contragredient of {irrep.label} among the irreps")

    def tensor_linear(self, irrep, linear):
        """The irrep with character chi_E * chi_linear."""
        if not linear.is_linear():
            raise PreconditionError(f"{linear.label} is not one-dimensional")
        target = tuple(a * b for a, b in zip(irrep.character, linear.character))
        for F in self.irreps:
            if F.character == target:
                return F
        raise InvariantViolation(f"{irrep.label} tensor {linear.label} is not irreducible")

    def is_real(self):
        return all(abs(complex(to_complex(x, 53)).imag) < 1e-12
                   for m in self.elements for row in m.tolist() for x in row)

    def dual(self):
        """W acting on V* through the contragredient matrices, with the same element indexing."""
        generator_matrices = [self.elements[g].inverse().transpose() for g in self.generators]
        irrep_data = [(E.label, [E.matrices[g] for g in self.generators], E.partition) for E in self.irreps]
        dual = ReflectionGroup(f"{self.name}*", self.family, self.param, generator_matrices,
                               irrep_data, self.reflection_rep)
        if dual.words != self.words:
            raise InvariantViolation("dual realization enumerates elements differently")
        return dual

    # ---------------- Real chamber geometry ----------------

    def _numeric_alphas(self):
        return [[complex(to_complex(a, 53)) for a in H.alpha] for H in self.hyperplanes]

    def base_point(self):
        """Rational point of V_reg maximizing the scaled distance to the arrangement over a small grid."""
        if self.rank == 1:
            return (ONE,)
        bound = 3 if self.rank <= 3 else 2
        alphas = self._numeric_alphas()
        norms = [sum(abs(a) ** 2 for a in alpha) ** 0.5 for alpha in alphas]
        best, best_score = None, 0.0
        for point in itertools.product(range(-bound, bound + 1), repeat=self.rank):
            length = sum(x * x for x in point) ** 0.5
            if length == 0:
                continue
            score = min(abs(sum(a * x for a, x in zip(alpha, point))) / (norm * length)
                        for alpha, norm in zip(alphas, norms))
            if score > best_score + 1e-12:
                best, best_score = point, score
        logger.debug("%s base point %s (scaled clearance %.4f)", self.name, best, best_score)
        return tuple(ExactScalar.rational(x) for x in best)

    def simple_reflections(self):
        """Generators of the braid group: walls of the base chamber, ordered along the Coxeter graph.

        In rank one this is the distinguished reflection of the single hyperplane.
        """
        if self.rank == 1:
            return (self.hyperplanes[0].generator,)
        if any(H.order != 2 for H in self.hyperplanes) or not self.is_real():
            raise UnsupportedGroupError(f"{self.name}: braid generators need a real group of rank >= 2")
        x0 = self.base_point()
        alphas = self._numeric_alphas()

        def signs(point):
            values = [complex(to_complex(x, 53)) for x in point]
            return [sum(a * x for a, x in zip(alpha, values)).real > 0 for alpha in alphas]

        base = signs(x0)
        walls = []
        for H in self.hyperplanes:
            image = signs(self.act(H.generator, x0))
            if all(b == i for h, (b, i) in enumerate(zip(base, image)) if h != H.index):
                walls.append(H.generator)
        return tuple(self._coxeter_path(walls))

    def _coxeter_path(self, walls):
        m = {(a, b): self.element_order(self.table[a][b]) for a in walls for b in walls if a != b}
        neighbours = {a: [b for b in walls if b != a and m[(a, b)] >= 3] for a in walls}
        ends = [a for a in walls if len(neighbours[a]) <= 1]
        if not ends:
            return sorted(walls)
        path, current = [], ends[0]
        while current is not None:
            path.append(current)
            current = next((b for b in neighbours[current] if b not in path), None)
        return path + [w for w in walls if w not in path]

    def coxeter_matrix(self, simple=None):
        simple = self.simple_reflections() if simple is None else simple
        return [[1 if a == b else self.element_order(self.table[a][b]) for b in simple] for a in simple]

    # ---------------- Export ----------------

    def describe(self):
        return {
            'name': self.name,
            'family': self.family,
            'param': self.param,
            'reflection_rep': self.reflection_rep,
            'order': self.order,
            'rank': self.rank,
            'orbits': [
                {
                    'label': o.label,
                    'e': o.order,
                    'hyperplanes': [
                        {
                            'alpha': [str(a) for a in self.hyperplanes[h].alpha],
                            'v': [str(x) for x in self.hyperplanes[h].v],
                        }
                        for h in o.hyperplanes
                    ],
                }
                for o in self.orbits
            ],
            'irreps': [{'label': E.label, 'dimension': E.dimension} for E in self.irreps],
            'classes': [
                {'representative': label, 'size': size}
                for label, size in self.conjugacy_classes()
            ],
            'character_table': [[str(x) for x in row] for row in self.character_table()],
        }

    def __repr__(self):
        return f"ReflectionGroup({self.name!r}, order={self.order})"


# ---------------- Group algebra ----------------

def idempotent(group, h, j):
    """epsilon_{H,j} = (1/e_H) sum_{w in W_H} det(w)^j w."""
    H = group.hyperplanes[h]
    if not 0 <= j < H.order:
        raise PreconditionError(f"j={j} out of range 0..{H.order - 1}")
    weight = ExactScalar.rational(1, H.order)
    return GroupAlgebraElement(group, {w: weight * group.determinants[w] ** j for w in H.stabilizer})


def isotypic_projector(group, irrep):
    """e_E = (dim E / |W|) sum_w chi_E(w^-1) w."""
    weight = ExactScalar.rational(irrep.dimension, group.order)
    return GroupAlgebraElement(
        group, {w: weight * irrep.character[group.inverses[w]] for w in range(group.order)})


# ---------------- Builders ----------------

def _check_range(family, param):
    low, high = SUPPORTED_RANGES[family]
    if not isinstance(param, int) or not low <= param <= high:
        raise UnsupportedGroupError(f"{family} groups are supported for {low} <= param <= {high}, got {param!r}")


def build_cyclic(e):
    _check_range('cyclic', e)
    generator = ExactMatrix([[ExactScalar.root_of_unity(e, 1)]])
    if e == 2:
        labels = ['triv', 'sgn']
    else:
        labels = [f"det^{j}" for j in range(e)]
    irreps = [(labels[j], [ExactMatrix([[ExactScalar.root_of_unity(e, j)]])], None) for j in range(e)]
    return ReflectionGroup(f"Z/{e}", 'cyclic', e, [generator], irreps)


def build_dihedral(m):
    _check_range('dihedral', m)
    conductor = m * 4 // gcd(m, 4)
    s1 = ExactMatrix([[ONE, ZERO], [ZERO, -ONE]])
    c, s = cos_2pi(1, m), sin_2pi(1, m)
    s2 = ExactMatrix([[c, s], [s, -c]])
    irreps = [
        ('triv', [ExactMatrix([[ONE]]), ExactMatrix([[ONE]])], None),
        ('det', [ExactMatrix([[-ONE]]), ExactMatrix([[-ONE]])], None),
    ]
    if m % 2 == 0:
        irreps.append(('eps1', [ExactMatrix([[ONE]]), ExactMatrix([[-ONE]])], None))
        irreps.append(('eps2', [ExactMatrix([[-ONE]]), ExactMatrix([[ONE]])], None))
    swap = ExactMatrix([[ZERO, ONE], [ONE, ZERO]])
    for j in range(1, (m - 1) // 2 + 1):
        z = ExactScalar.root_of_unity(m, j).promote(conductor)
        irreps.append((f"rho_{j}", [swap, ExactMatrix([[ZERO, z], [z.inverse(), ZERO]])], None))
    return ReflectionGroup(f"I2({m})", 'dihedral', m, [s1, s2], irreps)


def _transposition_matrix(n, j, reflection_rep):
    """Matrix of s_j = (j, j+1) (1-based) on C^n or on the simple-root basis e_i - e_{i+1}."""
    def sigma(k):
        return j + 1 if k == j else j if k == j + 1 else k

    if not reflection_rep:
        return ExactMatrix([[ONE if sigma(c + 1) == r + 1 else ZERO for c in range(n)] for r in range(n)])
    columns = []
    for i in range(1, n):
        a, b = sigma(i), sigma(i + 1)
        col = [ZERO] * (n - 1)
        if a < b:
            for l in range(a, b):
                col[l - 1] = col[l - 1] + ONE
        else:
            for l in range(b, a):
                col[l - 1] = col[l - 1] - ONE
        columns.append(col)
    return ExactMatrix.from_columns(columns, n - 1)


def build_symmetric(n, reflection_rep=True):
    _check_range('symmetric', n)
    generators = [_transposition_matrix(n, j, reflection_rep) for j in range(1, n)]
    irreps = []
    for shape in partitions(n):
        images = seminormal_generators(shape, ONE, ExactScalar.rational, ONE, ZERO)
        label = '(' + ','.join(str(p) for p in shape) + ')'
        irreps.append((label, [ExactMatrix(m) for m in images], shape))
    name = f"S{n}" if reflection_rep else f"S{n}(perm)"
    return ReflectionGroup(name, 'symmetric', n, generators, irreps, reflection_rep)


def build_group(spec):
    """Build a group from {"family": ..., "param": ..., "reflection_rep": ...}."""
    family = spec.get('family')
    param = spec.get('param')
    if family == 'cyclic':
        return build_cyclic(param)
    if family == 'dihedral':
        return build_dihedral(param)
    if family == 'symmetric':
        return build_symmetric(param, spec.get('reflection_rep', True))
    raise UnsupportedGroupError(f"unknown group family {family!r}")
