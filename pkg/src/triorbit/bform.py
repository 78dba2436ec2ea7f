"""Numerical layer: exponent bookkeeping and the singular planar integral.

Two jobs.  First, the exact integer profile eps_i attached to a residue
pair (a, 2-a), with the four observations that make the obtuse-angle
bookkeeping work.  Second, evaluation of

    integral over C of  z^e1 (z-1)^e2 |z|^(2*a1-2) |z-1|^(2*a2-2) dA

whose nonvanishing is the analytic input to the rank bounds.  The two
singular points are handled by convergent double binomial series on
disks of radius 1/2, the far field by an exact angular integration and
a power series in 1/R, and the smooth middle annulus by adaptive tensor
Gauss-Legendre quadrature.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angles import AngleSystem, t_component, t_int


class HypothesisError(ValueError):
    """A precondition of the epsilon/integral machinery fails."""


class NonIntegrableError(ValueError):
    """Both epsilon exponents nonzero: the planar integrand is not integrable."""


class ToleranceNotReached(RuntimeError):
    """Region budget exhausted before the tolerance; carries the partial result."""

    def __init__(self, partial: "QuadratureResult"):
        super().__init__(
            f"budget exhausted at error {partial.error_estimate:.3e} "
            f"after {partial.regions_evaluated} regions"
        )
        self.partial = partial


@dataclass(frozen=True)
class EpsilonProfile:
    a: int
    b: int
    eps: tuple[int, ...]


def epsilon_profile(sys: AngleSystem, a: int) -> EpsilonProfile:
    """Integer exponents eps_i = 2 - 2t_i(1) - t_i(-a) - t_i(-b), b = 2-a.

    Requires t(-a) > 1 and t(-b) > 1.  Asserts the four observations:
    eps_i in {-1,0,1}; eps_i = -1 only for angles >= pi/2; the eps-sum
    equals 4 - t(-a) - t(-b); and for triangles the sum is 0.
    """
    if sys.n != 3:
        raise HypothesisError("epsilon profile defined here for triangles only")
    k = sys.k
    a %= k
    b = (2 - a) % k
    if b == 0:
        raise HypothesisError(f"b = 2 - a vanishes mod {k}; t(0) = 0 fails t(-b) > 1")
    ta = t_int(sys.q, k, -a)
    tb = t_int(sys.q, k, -b)
    if ta <= 1:
        raise HypothesisError(f"t(-a) = {ta} <= 1 for a = {a}")
    if tb <= 1:
        raise HypothesisError(f"t(-b) = {tb} <= 1 for b = {b}")

    eps = []
    for i in range(sys.n):
        e = 2 - 2 * t_component(sys, i, 1) - t_component(sys, i, -a) - t_component(sys, i, -b)
        if e.denominator != 1:
            raise ArithmeticError(f"eps_{i} = {e} is not an integer for {sys}, a={a}")
        eps.append(int(e))

    for i, e in enumerate(eps):
        if e not in (-1, 0, 1):
            raise ArithmeticError(f"observation (1) fails: eps_{i} = {e} for {sys}, a={a}")
        if e == -1 and 2 * sys.q[i] < k:
            raise ArithmeticError(f"observation (2) fails: eps_{i} = -1 but angle < pi/2")
    if sum(eps) != 4 - ta - tb:
        raise ArithmeticError(f"observation (3) fails: sum {sum(eps)} != {4 - ta - tb}")
    if sys.n == 3 and sum(eps) != 0:
        raise ArithmeticError("observation (4) fails: nonzero eps-sum for a triangle")
    return EpsilonProfile(a=a, b=b, eps=tuple(eps))


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    regions_evaluated: int


_PATCH_RADIUS = 0.5
_FAR_RADIUS = 2.0
_SERIES_TERMS = 200
_GL_LO = np.polynomial.legendre.leggauss(6)
_GL_HI = np.polynomial.legendre.leggauss(10)


def _binom_seq(b: float, n: int) -> np.ndarray:
    """binom(b, m) for m = 0..n-1, computed by the stable recurrence."""
    c = np.empty(n)
    c[0] = 1.0
    for m in range(1, n):
        c[m] = c[m - 1] * (b - m + 1) / m
    return c


def _series_sum(terms: np.ndarray) -> tuple[float, float]:
    """Sum a geometrically decaying series; bound the truncation error."""
    total = float(terms.sum())
    # consecutive term ratio is below ~0.3 here (patch/far radii fixed)
    bound = abs(float(terms[-1])) * 0.5
    return total, bound


def _patch_at_zero(a1, a2, e1, e2, rho) -> tuple[float, float]:
    m = np.arange(_SERIES_TERMS)
    c_hol = (-1.0) ** m * _binom_seq(e2 + a2 - 1.0, _SERIES_TERMS)
    c_anti = (-1.0) ** (m + e1) * _binom_seq(a2 - 1.0, _SERIES_TERMS + e1)[e1:]
    expo = 2 * a1 + 2 * e1 + 2 * m
    terms = (-1.0) ** e2 * 2 * math.pi * c_hol * c_anti * rho**expo / expo
    return _series_sum(terms)


def _patch_at_one(a1, a2, e1, e2, rho) -> tuple[float, float]:
    m = np.arange(_SERIES_TERMS)
    c_hol = _binom_seq(e1 + a1 - 1.0, _SERIES_TERMS)
    c_anti = _binom_seq(a1 - 1.0, _SERIES_TERMS + e2)[e2:]
    expo = 2 * a2 + 2 * e2 + 2 * m
    terms = 2 * math.pi * c_hol * c_anti * rho**expo / expo
    return _series_sum(terms)


def _far_field(a1, a2, e1, e2, radius) -> tuple[float, float]:
    """Exact-in-angle integral over |z| > radius, as a series in 1/radius^2."""
    eps = e1 + e2
    s = a1 + a2
    m = np.arange(_SERIES_TERMS)
    c_hol = (-1.0) ** (m + eps) * _binom_seq(e2 + a2 - 1.0, _SERIES_TERMS + eps)[eps:]
    c_anti = (-1.0) ** m * _binom_seq(a2 - 1.0, _SERIES_TERMS)
    terms = 2 * math.pi * c_hol * c_anti * radius ** (2 * s - 2 - 2 * m) / (2 * m + 2 - 2 * s)
    return _series_sum(terms)


def _make_integrand(a1, a2, e1, e2):
    def f(z: np.ndarray) -> np.ndarray:
        w = z - 1.0
        mod = (z.real**2 + z.imag**2) ** (a1 - 1.0) * (w.real**2 + w.imag**2) ** (a2 - 1.0)
        out = mod.astype(complex)
        if e1:
            out *= z
        if e2:
            out *= w
        return out

    return f


def _region_inner(f):
    """Annulus 1/2 <= r <= 3/2 minus the disk around 1, on the unit square.

    The radial variable is cosine-stretched so that the square-root
    behaviour of the cut angle at the two tangency radii becomes smooth.
    """

    def g(u: np.ndarray, t: np.ndarray) -> np.ndarray:
        r = 0.5 + 0.5 * (1.0 - np.cos(math.pi * u))
        drdu = 0.5 * math.pi * np.sin(math.pi * u)
        c = np.clip((r * r + 0.75) / (2.0 * r), -1.0, 1.0)
        theta_cut = np.arccos(c)
        width = 2.0 * math.pi - 2.0 * theta_cut
        theta = theta_cut + t * width
        z = r * np.exp(1j * theta)
        return f(z) * r * width * drdu

    return g


def _region_outer(f, r_far):
    def g(u: np.ndarray, t: np.ndarray) -> np.ndarray:
        r = 1.5 + (r_far - 1.5) * u
        theta = 2.0 * math.pi * t
        z = r * np.exp(1j * theta)
        return f(z) * r * (2.0 * math.pi) * (r_far - 1.5)

    return g


def _cell_estimates(g, x0, y0, size):
    """Low/high tensor Gauss-Legendre estimates on one square cell."""
    out = []
    for nodes, weights in (_GL_LO, _GL_HI):
        xs = x0 + size * 0.5 * (nodes + 1.0)
        ys = y0 + size * 0.5 * (nodes + 1.0)
        wx = weights * size * 0.5
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        vals = g(gx, gy)
        out.append(complex(np.einsum("i,j,ij->", wx, wx, vals)))
    n_evals = _GL_LO[0].size ** 2 + _GL_HI[0].size ** 2
    return out[0], out[1], n_evals


def _adaptive_square(g, tol: float, budget: int):
    """Greedy adaptive refinement of [0,1]^2; returns (value, err, cells, evals)."""
    counter = 0
    heap = []
    total = 0j
    total_err = 0.0
    evals = 0

    def push(x0, y0, size):
        nonlocal counter, total, total_err, evals
        lo, hi, n = _cell_estimates(g, x0, y0, size)
        err = abs(hi - lo)
        heapq.heappush(heap, (-err, counter, x0, y0, size, hi, err))
        counter += 1
        total += hi
        total_err += err
        evals += n

    half = 0.5
    for x0 in (0.0, half):
        for y0 in (0.0, half):
            push(x0, y0, half)

    while total_err > tol and evals < budget:
        _, _, x0, y0, size, hi, err = heapq.heappop(heap)
        total -= hi
        total_err -= err
        s2 = size / 2.0
        for dx in (0.0, s2):
            for dy in (0.0, s2):
                push(x0 + dx, y0 + dy, s2)

    return total, total_err, counter, evals


def planar_integral(
    alpha1,
    alpha2,
    eps1: int,
    eps2: int,
    tol: float = 1e-8,
    budget: int = 10**7,
) -> QuadratureResult:
    """Evaluate the singular planar integral to absolute tolerance ``tol``.

    alpha1, alpha2 must lie strictly between 0 and 1/2 (route the largest
    angle to infinity first); at most one of eps1, eps2 may be 1.
    """
    a1 = float(Fraction(alpha1)) if not isinstance(alpha1, float) else alpha1
    a2 = float(Fraction(alpha2)) if not isinstance(alpha2, float) else alpha2
    if eps1 not in (0, 1) or eps2 not in (0, 1):
        raise ValueError(f"eps flags must be 0 or 1, got ({eps1}, {eps2})")
    if eps1 and eps2:
        raise NonIntegrableError("both exponents nonzero: integrand not integrable")
    if not (0.0 < a1 < 0.5 and 0.0 < a2 < 0.5):
        raise ValueError(f"alpha parameters must lie in (0, 1/2): ({a1}, {a2})")
    if tol <= 0:
        raise ValueError("tol must be positive")

    v0, b0 = _patch_at_zero(a1, a2, eps1, eps2, _PATCH_RADIUS)
    v1, b1 = _patch_at_one(a1, a2, eps1, eps2, _PATCH_RADIUS)
    vf, bf = _far_field(a1, a2, eps1, eps2, _FAR_RADIUS)
    series_err = b0 + b1 + bf
    regions = 3 * _SERIES_TERMS

    f = _make_integrand(a1, a2, eps1, eps2)
    quad_tol = max(tol - series_err, tol * 0.1) / 2.0

    value = complex(v0 + v1 + vf)
    err = series_err
    evals_left = budget
    for region in (_region_inner(f), _region_outer(f, _FAR_RADIUS)):
        part, part_err, cells, used = _adaptive_square(region, quad_tol, evals_left)
        value += part
        err += part_err
        regions += cells
        evals_left -= used
        if evals_left <= 0 and err > tol:
            raise ToleranceNotReached(QuadratureResult(value, err, regions))

    if err > tol:
        raise ToleranceNotReached(QuadratureResult(value, err, regions))
    return QuadratureResult(value=value, error_estimate=err, regions_evaluated=regions)


def nonvanishing_check(alpha1, alpha2, eps1, eps2, tol: float = 1e-8) -> bool:
    """Machine check that the planar integral is nonzero at these parameters."""
    res = planar_integral(alpha1, alpha2, eps1, eps2, tol=tol)
    return abs(res.value) > 10.0 * res.error_estimate
