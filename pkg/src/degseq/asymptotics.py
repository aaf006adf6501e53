"""Numeric pipeline: saddle point of the path series, Laplace-method estimate
of the census generating function, trapezoid contour extraction of its
coefficients, and the closed-form Gaussian/Poisson limit law.

Weight vectors ``u`` follow the package convention: length q, slot j-1 holds
the weight on components of size j, slot 0 (loops) is only meaningful for
multigraphs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .series import check_model

ZETA_RESIDUAL_TOL = 1e-12
BISECT_WIDTH = 1e-8
POSITIVITY_GRID = 512
FD_STEP = 1e-5


def _as_weights(u, q=None):
    w = np.asarray(u, dtype=float)
    if w.ndim != 1 or w.size < 2:
        raise ValueError("weight vector must be 1-d with length >= 2")
    if q is not None and w.size != q:
        raise ValueError("expected %d weights, got %d" % (q, w.size))
    if not np.all(w > 0):
        raise DomainError("weights must be positive")
    return w


def ones_weights(q: int) -> np.ndarray:
    return np.ones(q)


def path_value(z, u):
    """Path-component series 1/(1-z) + sum_{j=2}^q (u_j - 1) z^{j-2};
    accepts real, complex, or numpy-array z."""
    q = len(u)
    acc = 1.0 / (1.0 - z)
    for j in range(2, q + 1):
        w = u[j - 1] - 1.0
        if w:
            acc = acc + w * z ** (j - 2)
    return acc


def path_dz(z, u):
    q = len(u)
    acc = 1.0 / (1.0 - z) ** 2
    for j in range(3, q + 1):
        w = u[j - 1] - 1.0
        if w:
            acc = acc + w * (j - 2) * z ** (j - 3)
    return acc


def path_dz2(z, u):
    q = len(u)
    acc = 2.0 / (1.0 - z) ** 3
    for j in range(4, q + 1):
        w = u[j - 1] - 1.0
        if w:
            acc = acc + w * (j - 2) * (j - 3) * z ** (j - 4)
    return acc


def cycle_value(z, u, model: str = "simple"):
    """Cycle-component series at z; loops (size 1) and double edges (size 2)
    appear only in the multigraph model."""
    check_model(model)
    q = len(u)
    log = np.log if isinstance(z, np.ndarray) else cmath.log if isinstance(z, complex) else math.log
    acc = 0.5 * log(1.0 / (1.0 - z))
    first = 1 if model == "multigraph" else 3
    if model == "simple":
        acc = acc - z / 2.0 - z**2 / 4.0
    for j in range(first, q + 1):
        w = u[j - 1] - 1.0
        if w:
            acc = acc + w * z**j / (2.0 * j)
    return acc


def check_path_positive(u, grid: int = POSITIVITY_GRID):
    """Guard for the valid weight domain: the path series must stay positive
    on (0,1), probed on a dense grid."""
    u = _as_weights(u)
    zs = np.linspace(0.0, 1.0, grid + 2)[1:-1]
    values = path_value(zs, u)
    if not np.all(values > 0):
        raise DomainError("path series vanishes on (0,1) for these weights")


def z_log_deriv_path(z: float, u) -> float:
    """z * d/dz log(Path(z,u)), in the cancellation-free expanded form
    z (1 + (1-z)^2 sum_{j>=3}(u_j-1)(j-2)z^{j-3}) /
      ((1-z) + (1-z)^2 sum_{j>=2}(u_j-1)z^{j-2});
    strictly increasing from 0 to infinity on (0,1) for positive weights."""
    q = len(u)
    one_minus = 1.0 - z
    num = 0.0
    den = 0.0
    for j in range(2, q + 1):
        w = u[j - 1] - 1.0
        if w:
            den += w * z ** (j - 2)
            if j >= 3:
                num += w * (j - 2) * z ** (j - 3)
    num = 1.0 + one_minus * one_minus * num
    den = one_minus + one_minus * one_minus * den
    return z * num / den


def _z_log_deriv_path_prime(z: float, u) -> float:
    p = path_value(z, u)
    g1 = path_dz(z, u) / p
    g2 = path_dz2(z, u) / p - g1 * g1
    return g1 + z * g2


def solve_zeta(alpha: float, u, q: int | None = None, tol: float = ZETA_RESIDUAL_TOL) -> float:
    """Radius in (0,1) where z * d/dz log Path(z,u) = alpha.

    Bisection down to a 1e-8 bracket followed by a Newton polish to the
    residual tolerance; for u = 1 the root is alpha/(1+alpha).
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    u = _as_weights(u, q)
    check_path_positive(u)
    lo, hi = 1e-13, 1.0 - 1e-13
    flo = z_log_deriv_path(lo, u) - alpha
    fhi = z_log_deriv_path(hi, u) - alpha
    if not (flo < 0 < fhi):
        raise DomainError("saddle bracket has no sign change; weights out of range")
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if z_log_deriv_path(mid, u) - alpha < 0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(60):
        residual = z_log_deriv_path(z, u) - alpha
        if abs(residual) <= tol:
            return z
        step = residual / _z_log_deriv_path_prime(z, u)
        z_new = z - step
        if not (0.0 < z_new < 1.0):
            z_new = 0.5 * (lo + hi)
        if residual < 0:
            lo = max(lo, z)
        else:
            hi = min(hi, z)
        z = z_new
    raise ConvergenceError("saddle solve did not reach residual %g" % tol)


def phi_second(zeta: float, u) -> float:
    """Second theta-derivative at 0 of the phase on the contour of radius
    zeta: z g'(z) + z^2 g''(z) with g = log Path; equals alpha(1+alpha) at
    u = 1."""
    u = _as_weights(u)
    p = path_value(zeta, u)
    g1 = path_dz(zeta, u) / p
    g2 = path_dz2(zeta, u) / p - g1 * g1
    value = zeta * g1 + zeta * zeta * g2
    if value <= 0:
        raise DomainError("phase curvature is not positive; weights out of range")
    return value


def a_zero(zeta: float, u, model: str = "simple") -> float:
    """Cycle-set factor exp(Cycle(zeta, u)) at the contour center."""
    if not 0 < zeta < 1:
        raise DomainError("zeta must lie in (0,1)")
    u = _as_weights(u)
    return math.exp(cycle_value(float(zeta), u, model))


def phi_value(theta: float, zeta: float, u, alpha: float) -> complex:
    """Contour phase log Path(zeta,u) - log Path(zeta e^{i theta},u) + i alpha theta;
    zero at theta = 0, positive real part elsewhere on [-pi, pi]."""
    u = _as_weights(u)
    w = zeta * cmath.exp(1j * theta)
    return cmath.log(complex(path_value(zeta, u))) - cmath.log(path_value(w, u)) + 1j * alpha * theta


@dataclass(frozen=True, eq=False)
class SaddleData:
    """Everything the Laplace estimate needs at a given weight vector."""

    zeta: float
    phi2: float
    a0: float
    path_at_zeta: float
    u: np.ndarray

    def __post_init__(self):
        if not 0 < self.zeta < 1:
            raise DomainError("zeta must lie in (0,1)")
        if self.phi2 <= 0 or self.a0 <= 0:
            raise DomainError("phase curvature and cycle factor must be positive")


def saddle_data(alpha: float, u, model: str = "simple") -> SaddleData:
    u = _as_weights(u)
    zeta = solve_zeta(alpha, u)
    return SaddleData(
        zeta=zeta,
        phi2=phi_second(zeta, u),
        a0=a_zero(zeta, u, model),
        path_at_zeta=float(path_value(zeta, u)),
        u=u,
    )


def log_v_factor(n1: int, n2: int) -> float:
    """log of (n1+n2)!/(2^{n1/2} (n1/2)!) via log-gamma (overflow-safe)."""
    if n1 % 2:
        raise ValueError("n1 must be even")
    k = n1 // 2
    return math.lgamma(n1 + n2 + 1) - k * math.log(2.0) - math.lgamma(k + 1)


def asymptotic_log_gf(params, u=None) -> float:
    """Laplace-method estimate of the log census generating-function value.

    Saddle is centered with the instance's effective ratio 2 n2/n1, which
    kills the linear phase exactly even when n2 came from flooring.
    """
    if params.n1 % 2:
        raise DomainError("n1 must be even")
    if params.n1 < 2:
        raise DomainError("the Laplace estimate needs n1 >= 2")
    q = params.q
    u = ones_weights(q) if u is None else _as_weights(u, q)
    alpha = params.alpha
    sd = saddle_data(alpha, u, params.model)
    k = params.n1 // 2
    return (
        log_v_factor(params.n1, params.n2)
        + math.log(sd.a0)
        - 0.5 * math.log(2.0 * math.pi * sd.phi2 * k)
        + k * math.log(sd.path_at_zeta)
        - params.n2 * math.log(sd.zeta)
    )


def contour_extract(params, u=None, zeta: float | None = None, points: int = 1024) -> float:
    """Coefficient of z^{n2} in the cycle-set/path-power product by trapezoid
    quadrature of the Cauchy integral on the circle of radius zeta (default:
    the saddle).

    The integrand is 2-pi-periodic and analytic, so the uniform trapezoid rule
    converges spectrally; multiplying by the relabelling prefactor recovers
    the full census generating-function value.
    """
    if points < 64:
        raise ValueError("need at least 64 quadrature points")
    if params.n1 % 2:
        raise DomainError("n1 must be even")
    q = params.q
    u = ones_weights(q) if u is None else _as_weights(u, q)
    if zeta is None:
        zeta = 0.5 if params.n1 == 0 else solve_zeta(params.alpha, u)
    if not 0 < zeta < 1:
        raise DomainError("zeta must lie in (0,1)")
    theta = 2.0 * math.pi * np.arange(points) / points
    w = zeta * np.exp(1j * theta)
    integrand = np.exp(cycle_value(w, u, params.model))
    integrand = integrand * path_value(w, u) ** (params.n1 // 2)
    integrand = integrand / w**params.n2
    return float(np.mean(integrand).real)


def gradient_chi(alpha: float, q: int) -> np.ndarray:
    """Per-path mean coefficients alpha^{j-2}/(1+alpha)^{j-1}, j = 2..q."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if q < 2:
        raise ValueError("q must be >= 2")
    j = np.arange(2, q + 1, dtype=float)
    return alpha ** (j - 2) / (1.0 + alpha) ** (j - 1)


def hessian_H(alpha: float, q: int) -> np.ndarray:
    """Closed-form limiting covariance of the standardized counts of
    components of sizes 2..q."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if q < 2:
        raise ValueError("q must be >= 2")
    idx = np.arange(2, q + 1, dtype=float)
    i = idx[:, None]
    j = idx[None, :]
    a = alpha
    h = -(a ** (i + j - 4) / (1.0 + a) ** (i + j - 2)) * (
        1.0 + (i - 2.0 - a) * (j - 2.0 - a) / (a * (1.0 + a))
    )
    diag = (a / (1.0 + a)) ** (idx - 2) / (1.0 + a)
    h[np.arange(q - 1), np.arange(q - 1)] += diag
    return h


def chi_value(t, alpha: float, q: int) -> float:
    """Scaled cumulant rate chi(t) = log(Path(zeta_u,u)/Path(zeta_1,1))
    - alpha log(zeta_u/zeta_1) with u_j = e^{t_j}; chi(0) = 0."""
    t = np.asarray(t, dtype=float)
    if t.shape != (q - 1,):
        raise ValueError("t must have length q-1 (components 2..q)")
    u = np.ones(q)
    u[1:] = np.exp(t)
    zeta_u = solve_zeta(alpha, u)
    zeta_1 = alpha / (1.0 + alpha)
    return float(
        math.log(path_value(zeta_u, u) / (1.0 + alpha))
        - alpha * math.log(zeta_u / zeta_1)
    )


def b_value(t, alpha: float, q: int, model: str = "simple") -> float:
    """Quasi-power prefactor B(t) = A(0,e^t)/A(0,1) *
    sqrt(phi''(0,1)/phi''(0,e^t)); B(0) = 1."""
    t = np.asarray(t, dtype=float)
    if t.shape != (q - 1,):
        raise ValueError("t must have length q-1 (components 2..q)")
    u = np.ones(q)
    u[1:] = np.exp(t)
    ones = np.ones(q)
    zeta_u = solve_zeta(alpha, u)
    zeta_1 = solve_zeta(alpha, ones)
    a_u = a_zero(zeta_u, u, model)
    a_1 = a_zero(zeta_1, ones, model)
    return (a_u / a_1) * math.sqrt(phi_second(zeta_1, ones) / phi_second(zeta_u, u))


@dataclass(frozen=True, eq=False)
class LimitLaw:
    """Limit distribution of the census vector: Gaussian mean coefficients and
    covariance for sizes 2..q plus the loop-count Poisson rate (multigraph)."""

    alpha: float
    q: int
    model: str
    mean_coeffs: np.ndarray
    hessian: np.ndarray
    poisson_lambda: float | None

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "q": self.q,
            "model": self.model,
            "mean_coeffs": [float(x) for x in self.mean_coeffs],
            "hessian": [[float(x) for x in row] for row in self.hessian],
            "poisson_lambda": self.poisson_lambda,
        }


def limit_law(alpha: float, q: int, model: str = "simple") -> LimitLaw:
    check_model(model)
    lam = alpha / (2.0 * (1.0 + alpha)) if model == "multigraph" else None
    return LimitLaw(
        alpha=float(alpha),
        q=q,
        model=model,
        mean_coeffs=gradient_chi(alpha, q),
        hessian=hessian_H(alpha, q),
        poisson_lambda=lam,
    )


def central_gradient(f, x, h: float = FD_STEP) -> np.ndarray:
    """Central finite-difference gradient, the independent oracle for the
    closed-form mean coefficients."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for i in range(x.size):
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        out[i] = (f(xp) - f(xm)) / (2.0 * h)
    return out


def central_hessian(f, x, h: float = FD_STEP) -> np.ndarray:
    """Central finite-difference Hessian, the independent oracle for the
    closed-form covariance."""
    x = np.asarray(x, dtype=float)
    n = x.size
    out = np.empty((n, n))
    f0 = f(x)
    for i in range(n):
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        out[i, i] = (f(xp) - 2.0 * f0 + f(xm)) / (h * h)
        for j in range(i + 1, n):
            xpp = x.copy()
            xpm = x.copy()
            xmp = x.copy()
            xmm = x.copy()
            xpp[[i, j]] += h
            xmm[[i, j]] -= h
            xpm[i] += h
            xpm[j] -= h
            xmp[i] -= h
            xmp[j] += h
            out[i, j] = out[j, i] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h)
    return out
