"""Graded characters in category O: standard, costandard and simple modules,
blocks, decomposition matrices and singular vectors.

Simple characters come from the contravariant form: m in Delta(E)_n lies in
the radical iff every degree-n monomial in V kills it, so dim L(E)_n is the
rank of the stacked maps Delta(E)_n -> E given by products of xi's.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb

import numpy as np

from .cherednik import c_function_table, dual_params
from .dunkl import basis_vector, delta_action_matrix, layer_group_matrix, monomials
from .exceptions import InvariantViolation, PreconditionError, UncertifiedError
from .reflection_group import isotypic_projector
from .scalars import ONE, ZERO, ExactMatrix, ExactScalar

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 2
DEFAULT_SLACK = 4


class GradedCharacter:
    """Multiplicities of each irrep in degrees start..start + len(mults) - 1."""

    def __init__(self, group, mults, start=0, certified=True, label=''):
        self.group = group
        self.mults = np.asarray(mults, dtype=np.int64).reshape(-1, len(group.irreps))
        self.start = start
        self.certified = certified
        self.label = label

    @classmethod
    def zero(cls, group, N, start=0):
        return cls(group, np.zeros((N - start + 1, len(group.irreps)), dtype=np.int64), start)

    @property
    def top(self):
        return self.start + self.mults.shape[0] - 1

    @property
    def degrees(self):
        return list(range(self.start, self.top + 1))

    def at(self, degree):
        if not self.start <= degree <= self.top:
            return np.zeros(len(self.group.irreps), dtype=np.int64)
        return self.mults[degree - self.start]

    def multiplicity(self, degree, label):
        return int(self.at(degree)[self.group.irrep(label).index])

    def dimensions(self):
        dims = np.array([E.dimension for E in self.group.irreps], dtype=np.int64)
        return self.mults @ dims

    def shifted(self, offset, top=None):
        """The character moved up by ``offset`` degrees, truncated at ``top``."""
        top = self.top + offset if top is None else top
        out = GradedCharacter.zero(self.group, top, self.start)
        for degree in range(self.start, top + 1):
            out.mults[degree - self.start] = self.at(degree - offset)
        return out

    def __sub__(self, other):
        out = GradedCharacter(self.group, self.mults.copy(), self.start, self.certified and other.certified)
        for degree in self.degrees:
            out.mults[degree - self.start] -= other.at(degree)
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedCharacter):
            return NotImplemented
        return self.start == other.start and np.array_equal(self.mults, other.mults)

    def __hash__(self):
        return hash((self.start, self.mults.tobytes()))

    def to_json(self):
        return {
            'label': self.label,
            'degrees': self.degrees,
            'irreps': [E.label for E in self.group.irreps],
            'mults': self.mults.tolist(),
            'certified': self.certified,
        }

    def __repr__(self):
        return f"GradedCharacter({self.label!r}, degrees {self.start}..{self.top})"


# ---------------- Characters ----------------

def _power_traces(matrix, top):
    traces = []
    power = matrix
    for _ in range(top):
        traces.append(power.trace())
        power = power @ matrix
    return traces


def _complete_symmetric(traces, top):
    """h_0..h_top of the eigenvalues from the power sums, by Newton's identities."""
    h = [ONE]
    for m in range(1, top + 1):
        total = sum((traces[i - 1] * h[m - i] for i in range(1, m + 1)), ZERO)
        h.append(total / m)
    return h


@lru_cache(maxsize=64)
def symmetric_power_characters(group, top, on_dual=True):
    """chi_{S^n}(w) for n = 0..top, on V* (polynomials P) or on V."""
    columns = []
    for w in range(group.order):
        matrix = group.dual_matrix(w) if on_dual else group.elements[w]
        columns.append(_complete_symmetric(_power_traces(matrix, top), top))
    return [tuple(columns[w][n] for w in range(group.order)) for n in range(top + 1)]


def _decompose(group, character):
    out = []
    for F in group.irreps:
        value = group.inner_product(character, F.character)
        if not value.is_integer():
            raise InvariantViolation(f"non-integral multiplicity {value} of {F.label}")
        out.append(int(value.as_fraction()))
    return out


def delta_character(irrep, N, params):
    """Character of Delta(E) = P (x) E in degrees 0..N."""
    group = params.group
    powers = symmetric_power_characters(group, N)
    rows = [_decompose(group, tuple(a * b for a, b in zip(powers[n], irrep.character))) for n in range(N + 1)]
    return GradedCharacter(group, rows, label=f"Delta({irrep.label})")


def nabla_character(irrep, N, params, dual_group=None):
    """Character of nabla(E), read off Delta(E^v) for W on V* with the dual parameter."""
    group = params.group
    dual_group = group.dual() if dual_group is None else dual_group
    dual = dual_params(params, dual_group)
    source = delta_character(dual_group.irrep(group.contragredient(irrep).label), N, dual)
    mults = np.zeros_like(source.mults)
    for F in group.irreps:
        mults[:, group.contragredient(F).index] = source.mults[:, F.index]
    return GradedCharacter(group, mults, label=f"Nabla({irrep.label})")


def eu_eigenvalue(irrep, n, params):
    """eu acts on Delta(E)_n by n - c_E."""
    return ExactScalar.rational(n) - c_function_table(params)[irrep.label]


# ---------------- Contravariant form ----------------

@lru_cache(maxsize=512)
def _xi_action(irrep, i, degree, params):
    return delta_action_matrix(irrep, basis_vector(params.group.rank, i), degree, params)


class ContravariantForm:
    """Row spaces Q_n of the maps Delta(E)_n -> Hom(S^n, E), built one degree at a time.

    Q_0 = I and Q_n is the reduced row basis of the stacked Q_{n-1} X_i, with
    X_i the action of xi_i from degree n to n - 1.  The radical in degree n is
    the kernel of Q_n.
    """

    def __init__(self, irrep, params):
        self.irrep = irrep
        self.params = params
        self.group = params.group
        identity = ExactMatrix.identity(irrep.dimension)
        self._layers = [(identity, list(range(irrep.dimension)))]

    def layer(self, n):
        while len(self._layers) <= n:
            self._advance()
        return self._layers[n]

    def _advance(self):
        degree = len(self._layers)
        previous, _ = self._layers[-1]
        cols = len(monomials(self.group.rank, degree)) * self.irrep.dimension
        if previous.rows == 0:
            self._layers.append((ExactMatrix.zeros(0, cols), []))
            return
        blocks = [previous @ _xi_action(self.irrep, i, degree, self.params) for i in range(self.group.rank)]
        rows, pivots = ExactMatrix.vstack(blocks, cols).rref()
        basis = ExactMatrix(rows, cols) if rows else ExactMatrix.zeros(0, cols)
        logger.debug("%s degree %d: rank %d of %d", self.irrep.label, degree, len(rows), cols)
        self._layers.append((basis, pivots))

    def rank(self, n):
        return self.layer(n)[0].rows

    def radical(self, n):
        basis, _ = self.layer(n)
        if basis.rows == 0:
            size = len(monomials(self.group.rank, n)) * self.irrep.dimension
            return [tuple(ONE if i == j else ZERO for i in range(size)) for j in range(size)]
        return basis.kernel()

    def quotient_trace(self, n, w):
        """Trace of w on Delta(E)_n / rad_n, read in the pivot coordinates of Q_n."""
        basis, pivots = self.layer(n)
        if basis.rows == 0:
            return ZERO
        moved = basis @ layer_group_matrix(self.irrep, n, w, self.group)
        return sum((moved[r, p] for r, p in enumerate(pivots)), ZERO)

    def quotient_multiplicities(self, n):
        group = self.group
        character = [ZERO] * group.order
        for members in group.classes:
            value = self.quotient_trace(n, members[0])
            for w in members:
                character[w] = value
        return _decompose(group, tuple(character))


def shapovalov_rank(irrep, n, params):
    """(rank, {F: multiplicity}) of the contravariant pairing on Delta(E)_n.

    Isotype multiplicities are ranks after precomposing with the isotypic
    projector of F, divided by dim F.
    """
    if n < 0:
        raise PreconditionError("degree must be non-negative")
    group = params.group
    form = ContravariantForm(irrep, params)
    basis, _ = form.layer(n)
    per_isotype = {}
    for F in group.irreps:
        projector = isotypic_projector(group, F)
        size = basis.cols
        matrix = ExactMatrix.zeros(size, size)
        for w, c in projector.coeffs.items():
            matrix = matrix + layer_group_matrix(irrep, n, w, group).scale(c)
        rank = (basis @ matrix).rank() if basis.rows else 0
        if rank % F.dimension:
            raise InvariantViolation(f"isotype rank {rank} of {F.label} is not a multiple of its dimension")
        per_isotype[F.label] = rank // F.dimension
    return basis.rows, per_isotype


def linked_gaps_below(irrep, params):
    """Positive integers c_E - c_F over F with that difference integral."""
    table = c_function_table(params)
    gaps = []
    for label, c in table.items():
        diff = table[irrep.label] - c
        if diff.is_integer() and diff.as_fraction() > 0:
            gaps.append(int(diff.as_fraction()))
    return gaps


def simple_character(irrep, N, params, margin=DEFAULT_MARGIN, form=None):
    """Character of L(E) in degrees 0..N.

    Certified when N clears every singular-vector degree c_E - c_F by the margin.
    """
    form = ContravariantForm(irrep, params) if form is None else form
    rows = [form.quotient_multiplicities(n) for n in range(N + 1)]
    gaps = linked_gaps_below(irrep, params)
    certified = N >= max(gaps, default=0) + margin
    if not certified:
        logger.warning("L(%s) truncated at %d is uncertified (largest linked gap %d, margin %d)",
                       irrep.label, N, max(gaps), margin)
    return GradedCharacter(params.group, rows, certified=certified, label=f"L({irrep.label})")


def singular_vectors(irrep, n, params):
    """[(F, basis)] of vectors in Delta(E)_n killed by all of V, split by isotype."""
    if n < 1:
        raise PreconditionError("singular vectors live in positive degree")
    group = params.group
    cols = len(monomials(group.rank, n)) * irrep.dimension
    stacked = ExactMatrix.vstack([_xi_action(irrep, i, n, params) for i in range(group.rank)], cols)
    kernel = stacked.kernel()
    if not kernel:
        return []
    table = c_function_table(params)
    kernel_matrix = ExactMatrix.from_columns(kernel, cols)
    out = []
    for F in group.irreps:
        projector = isotypic_projector(group, F)
        matrix = ExactMatrix.zeros(cols, cols)
        for w, c in projector.coeffs.items():
            matrix = matrix + layer_group_matrix(irrep, n, w, group).scale(c)
        image = (matrix @ kernel_matrix).transpose().row_basis()
        if image.rows == 0:
            continue
        if table[irrep.label] - table[F.label] != n:
            raise InvariantViolation(
                f"singular vector of type {F.label} in degree {n} of Delta({irrep.label}) "
                f"but c_E - c_F = {table[irrep.label] - table[F.label]}")
        out.append((F.label, [image.row(r) for r in range(image.rows)]))
    return out


# ---------------- Blocks ----------------

class BlockPartition:
    def __init__(self, group, c_values, blocks):
        self.group = group
        self.c = c_values
        self.blocks = blocks

    def block_of(self, label):
        for block in self.blocks:
            if label in block:
                return block
        raise PreconditionError(f"unknown irrep {label!r}")

    def gap(self, upper, lower):
        """c_upper - c_lower as an int when it is a positive integer, else None."""
        diff = self.c[upper] - self.c[lower]
        if diff.is_integer() and diff.as_fraction() > 0:
            return int(diff.as_fraction())
        return None

    def less(self, a, b):
        """a < b iff c_b - c_a is a positive integer."""
        return self.gap(b, a) is not None

    def to_json(self):
        return {
            'c': {label: str(c) for label, c in self.c.items()},
            'blocks': [list(b) for b in self.blocks],
            'order': [[a, b] for block in self.blocks for a in block for b in block if self.less(a, b)],
        }


def blocks(params):
    group = params.group
    table = c_function_table(params)
    labels = [E.label for E in group.irreps]
    parent = {label: label for label in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in labels:
        for b in labels:
            if (table[a] - table[b]).is_integer():
                parent[find(b)] = find(a)
    grouped = {}
    for label in labels:
        grouped.setdefault(find(label), []).append(label)
    partition = [tuple(members) for members in grouped.values()]
    partition.sort(key=lambda block: labels.index(block[0]))
    return BlockPartition(group, table, partition)


def is_semisimple(params):
    """No two irreps have c-values differing by a nonzero integer."""
    table = c_function_table(params)
    return not any((a - b).is_integer() and a != b for a in table.values() for b in table.values())


def default_degree(block, partition, slack=DEFAULT_SLACK, minimum=0):
    gaps = [partition.gap(a, b) or 0 for a in block for b in block]
    return max(max(gaps, default=0) + slack, minimum)


# ---------------- Decomposition matrices ----------------

class DecompositionMatrix:
    """Entry (F, E) = [Delta(F) : L(E)]; rows are standards, columns simples."""

    def __init__(self, labels, entries, certified, N):
        self.labels = tuple(labels)
        self.entries = np.asarray(entries, dtype=np.int64)
        self.certified = np.asarray(certified, dtype=bool)
        self.N = N

    def entry(self, standard, simple):
        return int(self.entries[self.labels.index(standard), self.labels.index(simple)])

    @property
    def fully_certified(self):
        return bool(self.certified.all())

    def to_json(self):
        return {
            'irreps': list(self.labels),
            'mults': self.entries.tolist(),
            'certified': self.certified.tolist(),
            'N': self.N,
        }


def _simple_characters(group, block, N, params, margin, workers):
    irreps = [group.irrep(label) for label in block]
    if workers > 1 and len(irreps) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda E: simple_character(E, N, params, margin), irreps))
    else:
        results = [simple_character(E, N, params, margin) for E in irreps]
    return dict(zip(block, results))


def decomposition_matrix(block, N, params, margin=DEFAULT_MARGIN, allow_uncertified=False, workers=1,
                         partition=None):
    """Solve [Delta(F)] = sum_E [Delta(F):L(E)] [L(E)] degree by degree.

    At each degree the remaining multiplicities must all be tops of new simple
    constituents L(E), which sit in degree c_F - c_E.
    """
    group = params.group
    partition = blocks(params) if partition is None else partition
    block = tuple(block)
    simples = _simple_characters(group, block, N, params, margin, workers)
    size = len(block)
    entries = [[0] * size for _ in range(size)]
    certified = [[True] * size for _ in range(size)]
    for r, F in enumerate(block):
        residual = delta_character(group.irrep(F), N, params)
        for degree in range(N + 1):
            row = residual.at(degree)
            if (row < 0).any():
                raise InvariantViolation(f"negative residual in degree {degree} of Delta({F})")
            for E_index in np.nonzero(row)[0]:
                E = group.irreps[E_index].label
                expected = 0 if E == F else partition.gap(F, E)
                if E not in block or expected != degree:
                    raise InvariantViolation(
                        f"{group.irreps[E_index].label} appears in degree {degree} of the residual of Delta({F})")
                count = int(row[E_index])
                entries[r][block.index(E)] += count
                residual = residual - simples[E].shifted(degree, N)
        for c, E in enumerate(block):
            gap = 0 if E == F else partition.gap(F, E)
            certified[r][c] = gap is None or N >= gap + margin
    result = DecompositionMatrix(block, entries, certified, N)
    if not result.fully_certified:
        logger.warning("decomposition matrix of %s at N=%d has uncertified entries", block, N)
        if not allow_uncertified:
            raise UncertifiedError(f"N={N} is too small to certify the block {list(block)}")
    return result


def projective_multiplicities(block, N, params, **kwargs):
    """[P(E):Delta(F)] = [Delta(F):L(E)] by reciprocity."""
    matrix = decomposition_matrix(block, N, params, **kwargs)
    return {E: {F: matrix.entry(F, E) for F in matrix.labels} for E in matrix.labels}


# ---------------- Truncated standards ----------------

def truncated_standard_filtration(irrep, n, params):
    """(j, F, [S^j (x) E : F]) for j = 0..n: the Delta-factors of Delta_n(E), each shifted by -j."""
    group = params.group
    powers = symmetric_power_characters(group, n, on_dual=False)
    out = []
    for j in range(n + 1):
        mults = _decompose(group, tuple(a * b for a, b in zip(powers[j], irrep.character)))
        for F, m in zip(group.irreps, mults):
            if m:
                out.append((j, F.label, m))
    return out


def truncated_standard_character(irrep, n, N, params):
    """Character of Delta_n(E) in degrees -n..N."""
    group = params.group
    total = GradedCharacter.zero(group, N, start=-n)
    for j, label, m in truncated_standard_filtration(irrep, n, params):
        piece = delta_character(group.irrep(label), N + j, params)
        for degree in range(-j, N + 1):
            total.mults[degree + n] += m * piece.at(degree + j)
    total.label = f"Delta_{n}({irrep.label})"
    return total


# ---------------- Growth ----------------

def ch_variety_dim(character):
    """(d, certified) with dim M_i growing like i^(d-1); d = 0 for eventually zero modules."""
    if character.top < 8:
        raise PreconditionError("growth estimates need the character up to degree 8")
    dims = character.dimensions()
    tail = dims[-(ceil(character.top / 3) + 1):]
    if not tail.any():
        return 0, True
    for r in range(len(tail)):
        differences = np.diff(tail, n=r)
        if differences.size and (differences == differences[0]).all() and differences[0] != 0:
            return r + 1, differences.size >= 2 and character.certified
    return len(tail), False


def generic_rank(character):
    """Rank over P read from the top degree: dim M_N / dim P_N."""
    rank_v = character.group.rank
    top = character.top
    ratio = Fraction(int(character.dimensions()[-1]), comb(top + rank_v - 1, rank_v - 1))
    if ratio.denominator != 1:
        raise InvariantViolation(f"{character.label} has non-integral generic rank {ratio}")
    return int(ratio)


def endomorphism_count_check(params, N=2):
    """sum_E rank Delta(E) * rank nabla(E) = |W|."""
    group = params.group
    dual_group = group.dual()
    total = 0
    for E in group.irreps:
        total += generic_rank(delta_character(E, N, params)) * generic_rank(
            nabla_character(E, N, params, dual_group))
    logger.info("endomorphism count %d for |W| = %d", total, group.order)
    return total == group.order
