"""One-variable symbolic model of the rational Cherednik algebra of Z/2.

Written directly in sympy, independent of the rca modules: W = {1, s} acts on
C by s(x) = -x and a single parameter k enters through the reflection term.
"""
from sympy import Rational, Symbol, expand, simplify

x = Symbol('x')


def reflect(p):
    return p.subs(x, -x)


def dunkl_triv(p, k):
    """T(p) on Delta(triv) = C[x]: p' + k (p(x) - p(-x)) / x."""
    return expand(simplify(p.diff(x) + k * (p - reflect(p)) / x))


def dunkl_sgn(p, k):
    """T(p) on Delta(sgn) = C[x] (x) sgn: p' + k (p(x) + p(-x)) / x."""
    return expand(simplify(p.diff(x) + k * (p + reflect(p)) / x))


def simple_dimensions(k, N, sign='triv'):
    """dim L(E)_n for n = 0..N: x^n survives iff T^n x^n is nonzero."""
    op = dunkl_triv if sign == 'triv' else dunkl_sgn
    dims = []
    for n in range(N + 1):
        q = x ** n
        for _ in range(n):
            q = op(q, k)
        dims.append(0 if q == 0 else 1)
    return dims


def singular_degrees(k, N, sign='triv'):
    """Degrees n >= 1 in which T kills x^n."""
    op = dunkl_triv if sign == 'triv' else dunkl_sgn
    return [n for n in range(1, N + 1) if op(x ** n, k) == 0]


def dunkl_coefficient(n, k, sign='triv'):
    """The scalar lambda with T(x^n) = lambda x^(n-1)."""
    op = dunkl_triv if sign == 'triv' else dunkl_sgn
    value = op(x ** n, k)
    return Rational(value.coeff(x, n - 1)) if n else Rational(0)
