"""Adaptive Runge-Kutta integration of linear matrix ODEs Y' = f(t, Y).

Two backends: scipy's DOP853 in complex double precision, and an mpmath
Dormand-Prince 5(4) integrator for working precisions above 53 bits.
"""
import logging

import mpmath
import numpy as np
from scipy.integrate import solve_ivp

from .exceptions import IntegrationError

logger = logging.getLogger(__name__)

DOUBLE_PRECISION = 53
MAX_STEPS = 200000

_C = ('0', '1/5', '3/10', '4/5', '8/9', '1', '1')
_A = (
    (),
    ('1/5',),
    ('3/40', '9/40'),
    ('44/45', '-56/15', '32/9'),
    ('19372/6561', '-25360/2187', '64448/6561', '-212/729'),
    ('9017/3168', '-355/33', '46732/5247', '49/176', '-5103/18656'),
    ('35/384', '0', '500/1113', '125/192', '-2187/6784', '11/84'),
)
_B5 = ('35/384', '0', '500/1113', '125/192', '-2187/6784', '11/84', '0')
_B4 = ('5179/57600', '0', '7571/16695', '393/640', '-92097/339200', '187/2100', '1/40')


def _fraction(text):
    numerator, _, denominator = text.partition('/')
    return mpmath.mpf(int(numerator)) / int(denominator or 1)


def use_double(precision):
    return precision <= DOUBLE_PRECISION


def solve_double(fun, y0, t0, t1, tol, segment=None):
    """Integrate with scipy DOP853; ``fun(t, Y)`` and ``y0`` are complex numpy matrices."""
    shape = y0.shape

    def flat(t, y):
        return fun(t, y.reshape(shape)).ravel()

    result = solve_ivp(flat, (t0, t1), y0.astype(np.complex128).ravel(), method='DOP853',
                       rtol=tol, atol=tol * 1e-2)
    if result.status != 0:
        raise IntegrationError(f"DOP853 failed: {result.message}", segment)
    logger.debug("segment %s: %d function evaluations", segment, result.nfev)
    return result.y[:, -1].reshape(shape)


def _max_abs(matrix):
    return max((abs(matrix[i, j]) for i in range(matrix.rows) for j in range(matrix.cols)), default=mpmath.mpf(0))


def solve_multiprecision(fun, y0, t0, t1, tol, precision, segment=None):
    """Dormand-Prince 5(4) with local error control; ``fun(t, Y)`` and ``y0`` are mpmath matrices."""
    with mpmath.workprec(precision):
        c = [_fraction(x) for x in _C]
        a = [[_fraction(x) for x in row] for row in _A]
        b5 = [_fraction(x) for x in _B5]
        error_weights = [_fraction(x) - _fraction(y) for x, y in zip(_B5, _B4)]
        t, t1 = mpmath.mpf(t0), mpmath.mpf(t1)
        y = y0.copy()
        span = t1 - t
        h = span / 32
        floor = abs(span) * mpmath.mpf(2) ** (-precision // 2)
        tol = mpmath.mpf(tol)
        steps = attempts = 0
        k = [fun(t, y)]
        while (t1 - t) * (1 if span > 0 else -1) > 0:
            if (t + h - t1) * (1 if span > 0 else -1) > 0:
                h = t1 - t
            stages = [k[0]]
            for i in range(1, 7):
                increment = y.copy()
                for j, weight in enumerate(a[i]):
                    if weight:
                        increment = increment + stages[j] * (h * weight)
                stages.append(fun(t + c[i] * h, increment))
            y_new = y.copy()
            for j, weight in enumerate(b5):
                if weight:
                    y_new = y_new + stages[j] * (h * weight)
            error = y.copy() * 0
            for j, weight in enumerate(error_weights):
                if weight:
                    error = error + stages[j] * (h * weight)
            scale = tol + tol * max(_max_abs(y), _max_abs(y_new))
            ratio = _max_abs(error) / scale
            if ratio <= 1:
                t = t + h
                y = y_new
                k = [stages[6]]
                steps += 1
            factor = mpmath.mpf('0.9') * (ratio ** mpmath.mpf('-0.2') if ratio > 0 else mpmath.mpf(5))
            h = h * min(mpmath.mpf(5), max(mpmath.mpf('0.2'), factor))
            if abs(h) < floor:
                raise IntegrationError(f"step size underflow at t={mpmath.nstr(t, 8)}", segment)
            attempts += 1
            if attempts > MAX_STEPS:
                raise IntegrationError("step budget exhausted", segment)
        logger.debug("segment %s: %d accepted steps", segment, steps)
        return y
