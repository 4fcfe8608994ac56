"""Dunkl operators on P = k[V] and the action of V on graded pieces of standard modules."""
import logging
import random
from functools import lru_cache

from .cherednik import AlgebraElement, a_element, z_element
from .exceptions import ExactDivisionError, PreconditionError
from .reflection_group import idempotent
from .scalars import ONE, ZERO, ExactMatrix, ExactScalar, coerce

logger = logging.getLogger(__name__)


def monomials(nvars, degree):
    """Exponent vectors of the given degree, x_1^degree first."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


class Polynomial:
    """Polynomial in x_1..x_n with ExactScalar coefficients.  Immutable."""

    __slots__ = ('nvars', 'terms')

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exponent, c in (terms or {}).items():
            c = coerce(c)
            if not c.is_zero():
                clean[tuple(exponent)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, exponent, c=ONE):
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        return cls(n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), ZERO)

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return Polynomial(self.nvars, terms)

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = coerce(c)
        return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                terms[e] = terms.get(e, ZERO) + ca * cb
        return Polynomial(self.nvars, terms)

    def __pow__(self, exponent):
        out = Polynomial.constant(self.nvars, ONE)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def partial(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                lowered = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[lowered] = c * e[i]
        return Polynomial(self.nvars, terms)

    def directional_derivative(self, xi):
        out = Polynomial(self.nvars)
        for i, a in enumerate(xi):
            a = coerce(a)
            if not a.is_zero():
                out = out + self.partial(i).scale(a)
        return out

    def substitute(self, images):
        """Replace x_j by the polynomial images[j]."""
        out = Polynomial(self.nvars)
        for e, c in self.terms.items():
            term = Polynomial.constant(self.nvars, c)
            for j, a in enumerate(e):
                if a:
                    term = term * images[j] ** a
            out = out + term
        return out

    def act(self, group, w):
        """(w.p)(x) = p(w^-1 x): x_j -> sum_k (M_{w^-1})_{jk} x_k."""
        m = group.elements[group.inverses[w]]
        return self.substitute([Polynomial.linear(m.row(j)) for j in range(self.nvars)])

    def divide_linear(self, alpha):
        """Exact quotient by the linear form alpha; raises ExactDivisionError on a remainder."""
        alpha = tuple(coerce(a) for a in alpha)
        pivot = next(i for i, a in enumerate(alpha) if not a.is_zero())
        lead = alpha[pivot]

        def order(e):
            return (e[pivot],) + e[:pivot] + e[pivot + 1:]

        remainder = dict(self.terms)
        quotient = {}
        while remainder:
            e = max(remainder, key=order)
            if e[pivot] == 0:
                raise ExactDivisionError(f"{self} is not divisible by {[str(a) for a in alpha]}")
            q = e[:pivot] + (e[pivot] - 1,) + e[pivot + 1:]
            c = remainder[e] / lead
            quotient[q] = c
            for i, a in enumerate(alpha):
                if a.is_zero():
                    continue
                target = q[:i] + (q[i] + 1,) + q[i + 1:]
                value = remainder.get(target, ZERO) - c * a
                if value.is_zero():
                    remainder.pop(target, None)
                else:
                    remainder[target] = value
        return Polynomial(self.nvars, quotient)

    def coefficient_vector(self, degree):
        return tuple(self.coefficient(e) for e in monomials(self.nvars, degree))

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            factors = [f"x{i + 1}" + (f"^{a}" if a > 1 else '') for i, a in enumerate(e) if a]
            parts.append('*'.join([f"({c})"] + factors) if factors else f"({c})")
        return ' + '.join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def apply_group_algebra(element, p):
    out = Polynomial(p.nvars)
    for w, c in element.coeffs.items():
        out = out + p.act(element.group, w).scale(c)
    return out


def dunkl_apply(xi, p, params):
    """T_xi(p) = d_xi p + sum_H (alpha_H(xi) / alpha_H) a_H(p)."""
    group = params.group
    if len(xi) != group.rank:
        raise PreconditionError(f"xi must have {group.rank} coordinates")
    out = p.directional_derivative(xi)
    for H in group.hyperplanes:
        pairing = H.alpha_of(xi)
        if pairing.is_zero():
            continue
        numerator = apply_group_algebra(a_element(params, H.index), p)
        if numerator.is_zero():
            continue
        out = out + numerator.divide_linear(H.alpha).scale(pairing)
    return out


def basis_vector(rank, i):
    return tuple(ONE if j == i else ZERO for j in range(rank))


# ---------------- Layer data ----------------

@lru_cache(maxsize=256)
def symmetric_power_matrix(group, degree, w):
    """Matrix of w on P_degree in the monomial basis."""
    basis = monomials(group.rank, degree)
    columns = [Polynomial.monomial(e).act(group, w).coefficient_vector(degree) for e in basis]
    return ExactMatrix.from_columns(columns, len(basis))


def group_algebra_on_polynomials(element, degree):
    group = element.group
    size = len(monomials(group.rank, degree))
    out = ExactMatrix.zeros(size, size)
    for w, c in element.coeffs.items():
        out = out + symmetric_power_matrix(group, degree, w).scale(c)
    return out


@lru_cache(maxsize=256)
def divided_idempotent_matrix(group, h, i, degree):
    """p -> epsilon_{H,i}(p) / alpha_H as a matrix P_degree -> P_{degree-1}."""
    H = group.hyperplanes[h]
    projector = group_algebra_on_polynomials(idempotent(group, h, i), degree)
    basis = monomials(group.rank, degree)
    columns = []
    for c in range(len(basis)):
        column = projector.column(c)
        p = Polynomial(group.rank, {e: x for e, x in zip(basis, column)})
        columns.append(p.divide_linear(H.alpha).coefficient_vector(degree - 1))
    return ExactMatrix.from_columns(columns, len(monomials(group.rank, degree - 1)))


@lru_cache(maxsize=64)
def partial_matrix(group, degree, i):
    basis = monomials(group.rank, degree)
    columns = [Polynomial.monomial(e).partial(i).coefficient_vector(degree - 1) for e in basis]
    return ExactMatrix.from_columns(columns, len(monomials(group.rank, degree - 1)))


class DeltaLayer:
    """Delta(E)_n = P_n (x) E with basis (monomial, basis vector of E), monomial-major."""

    def __init__(self, irrep, degree, nvars):
        self.irrep = irrep
        self.degree = degree
        self.monomials = monomials(nvars, degree)
        self.dimension = len(self.monomials) * irrep.dimension

    def index(self, monomial, b):
        return self.monomials.index(tuple(monomial)) * self.irrep.dimension + b


def layer_group_matrix(irrep, degree, w, group):
    """The diagonal action of w on Delta(E)_degree."""
    return symmetric_power_matrix(group, degree, w).kron(irrep.matrices[w])


def delta_action_matrix(irrep, xi, degree, params):
    """Matrix of xi: Delta(E)_degree -> Delta(E)_{degree-1}.

    xi(p (x) v) = d_xi p (x) v
        + sum_H alpha_H(xi) sum_{i>=1, j} e_H (k_{H,i+j} - k_{H,j}) (eps_{H,i} p / alpha_H) (x) eps_{H,j} v
    with the indices i + j read modulo e_H.
    """
    if degree < 1:
        raise PreconditionError("xi lowers degree; the layer degree must be at least 1")
    group = params.group
    xi = tuple(coerce(x) for x in xi)
    identity = ExactMatrix.identity(irrep.dimension)
    derivative = None
    for i, a in enumerate(xi):
        if a.is_zero():
            continue
        term = partial_matrix(group, degree, i).scale(a)
        derivative = term if derivative is None else derivative + term
    rows = len(monomials(group.rank, degree - 1))
    cols = len(monomials(group.rank, degree))
    out = (derivative if derivative is not None else ExactMatrix.zeros(rows, cols)).kron(identity)
    for H in group.hyperplanes:
        pairing = H.alpha_of(xi)
        if pairing.is_zero():
            continue
        e = H.order
        projectors = [idempotent(group, H.index, j).represent(irrep) for j in range(e)]
        for i in range(1, e):
            right = ExactMatrix.zeros(irrep.dimension, irrep.dimension)
            for j in range(e):
                weight = ExactScalar.rational(e) * (
                    params.for_hyperplane(H.index, i + j) - params.for_hyperplane(H.index, j))
                if not weight.is_zero():
                    right = right + projectors[j].scale(weight)
            if right.is_zero():
                continue
            left = divided_idempotent_matrix(group, H.index, i, degree).scale(pairing)
            out = out + left.kron(right)
    return out


# ---------------- Checks ----------------

def euler_check(params, degree):
    """sum_b x_b T_b(p) = degree * p + z(p) on every monomial of the degree."""
    group = params.group
    z = z_element(params)
    for e in monomials(group.rank, degree):
        p = Polynomial.monomial(e)
        lhs = Polynomial(group.rank)
        for b in range(group.rank):
            x_b = Polynomial.monomial(basis_vector_exponent(group.rank, b))
            lhs = lhs + x_b * dunkl_apply(basis_vector(group.rank, b), p, params)
        rhs = p.scale(degree) + apply_group_algebra(z, p)
        if lhs != rhs:
            logger.warning("Euler identity fails on %s", p)
            return False
    return True


def basis_vector_exponent(rank, i):
    return tuple(1 if j == i else 0 for j in range(rank))


def apply_algebra_element(element, p):
    """Action of A on P: x^a w xi^b acts by p -> x^a w(T^b p)."""
    params = element.params
    group = params.group
    out = Polynomial(p.nvars)
    for (xexp, w, dexp), c in element.terms.items():
        q = p
        for i, b in enumerate(dexp):
            for _ in range(b):
                q = dunkl_apply(basis_vector(group.rank, i), q, params)
                if q.is_zero():
                    break
        if q.is_zero():
            continue
        q = q.act(group, w) if w else q
        out = out + Polynomial.monomial(xexp, c) * q
    return out


def _random_element(params, rng, bound):
    group = params.group
    n = group.rank
    terms = {}
    for _ in range(rng.randint(1, 3)):
        xexp = [0] * n
        dexp = [0] * n
        for _ in range(rng.randint(0, bound)):
            xexp[rng.randrange(n)] += 1
        for _ in range(rng.randint(0, bound)):
            dexp[rng.randrange(n)] += 1
        key = (tuple(xexp), rng.randrange(group.order), tuple(dexp))
        terms[key] = ExactScalar.rational(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
    return AlgebraElement(params, terms)


def faithfulness_probe(params, bound, samples=100, seed=0, extra=()):
    """Check that sampled nonzero elements of bidegree at most ``bound`` act nonzero on P."""
    group = params.group
    rng = random.Random(seed)
    elements = list(extra)
    while len(elements) < samples + len(extra):
        element = _random_element(params, rng, bound)
        if not element.is_zero():
            elements.append(element)
    violations = []
    for element in elements:
        top = max(sum(k[2]) for k in element.terms)
        found = False
        for degree in range(top, top + group.order + 1):
            for e in monomials(group.rank, degree):
                if not apply_algebra_element(element, Polynomial.monomial(e)).is_zero():
                    found = True
                    break
            if found:
                break
        if not found:
            violations.append(element.to_json())
    logger.info("faithfulness probe: %d elements, %d violations", len(elements), len(violations))
    return {'samples': len(elements), 'bound': bound, 'violations': violations}
