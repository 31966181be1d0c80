"""Semi-analytic spectral gaps of the unit ball with constant weights.

With ``alpha = alpha_bar/|Omega|`` and ``beta = (1 - alpha_bar)/|dOmega|``
the eigenfunctions separate as ``R(rho) e^{i k theta}``. The interior
equation fixes ``R`` up to scale; the boundary condition becomes

    gamma R'(1) = (lam - delta k^2 s) R(1),   gamma = alpha/beta,

where ``s = 1`` on the Euclidean unit circle and ``s = 1/sinh(1)^2`` on the
hyperbolic one (tangential Laplacian eigenvalues ``k^2/sinh(1)^2``). In the
Euclidean case ``R = J_k(sqrt(lam) rho)``; in the hyperbolic case ``R`` is
obtained by shooting.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .special import X_MAX, bessel_j, bessel_j_prime, radial_solution

EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"
MODE_CUTOFF = 12

_SCAN_DX = 0.02
_SCAN_X0 = 1e-3


class DiskError(RuntimeError):
    pass


def _check_geometry(geometry):
    g = geometry.lower()
    if g not in (EUCLIDEAN, HYPERBOLIC):
        raise ValueError(f"geometry must be {EUCLIDEAN!r} or {HYPERBOLIC!r}, got {geometry!r}")
    return g


def ball_area(geometry):
    if _check_geometry(geometry) == EUCLIDEAN:
        return math.pi
    return 2.0 * math.pi * (math.cosh(1.0) - 1.0)


def ball_perimeter(geometry):
    if _check_geometry(geometry) == EUCLIDEAN:
        return 2.0 * math.pi
    return 2.0 * math.pi * math.sinh(1.0)


def tangential_scale(geometry):
    if _check_geometry(geometry) == EUCLIDEAN:
        return 1.0
    return 1.0 / math.sinh(1.0) ** 2


@dataclass(frozen=True)
class DiskModel:
    geometry: str
    alpha_bar: float
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "geometry", _check_geometry(self.geometry))
        if not 0.0 < self.alpha_bar < 1.0:
            raise ValueError("alpha_bar must lie in (0, 1)")
        if not self.delta >= 0.0:
            raise ValueError("delta must be nonnegative")

    @classmethod
    def from_weights(cls, geometry, alpha, beta, delta=0.0):
        """Model for constant densities ``alpha``, ``beta`` (must form a probability measure)."""
        area, perim = ball_area(geometry), ball_perimeter(geometry)
        total = alpha * area + beta * perim
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"alpha|Omega| + beta|dOmega| = {total}, expected 1")
        return cls(geometry, alpha * area, delta)

    @property
    def gamma(self):
        return (
            self.alpha_bar / (1.0 - self.alpha_bar)
            * ball_perimeter(self.geometry) / ball_area(self.geometry)
        )

    @property
    def alpha(self):
        return self.alpha_bar / ball_area(self.geometry)

    @property
    def beta(self):
        return (1.0 - self.alpha_bar) / ball_perimeter(self.geometry)


def _radial_boundary_values(geometry, k, lam):
    """``(R(1), R'(1))`` with ``R ~ rho^k`` at the origin."""
    lam = np.asarray(lam, dtype=float)
    if geometry == EUCLIDEAN:
        x = np.sqrt(lam)
        if np.any(x > X_MAX):
            raise ValueError(f"lambda above reliable range {X_MAX ** 2:g}")
        scale = math.factorial(k) * 2.0 ** k
        # J_k(x rho) = (x rho / 2)^k / k! (1 + ...), so divide by (x/2)^k/k!
        with np.errstate(divide="ignore", invalid="ignore"):
            norm = scale / x ** k
        return bessel_j(k, x) * norm, x * bessel_j_prime(k, x) * norm
    if np.any(lam > X_MAX ** 2):
        raise ValueError(f"lambda above reliable range {X_MAX ** 2:g}")
    u, du = radial_solution(np.atleast_1d(lam), k, hyperbolic=True)
    s, c = math.sinh(1.0), math.cosh(1.0)
    R = s ** k * u
    dR = k * s ** (k - 1) * c * u + s ** k * du if k else du
    return R.reshape(lam.shape), dR.reshape(lam.shape)


def secular_value(model, k, lam):
    """Mode-``k`` boundary mismatch ``gamma R'(1) - (lam - delta k^2 s) R(1)``.

    Positive roots in ``lam`` are the eigenvalues with angular frequency ``k``.
    In the Euclidean case this is ``gamma x J_k'(x) - (lam - delta k^2) J_k(x)``
    with ``x = sqrt(lam)``, up to the positive factor ``k! (2/x)^k``.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("lambda must be positive")
    R, dR = _radial_boundary_values(model.geometry, k, lam)
    s = tangential_scale(model.geometry)
    out = model.gamma * dR - (lam - model.delta * k * k * s) * R
    return out if out.ndim else float(out)


def _neumann_value(geometry, k, lam):
    R, dR = _radial_boundary_values(geometry, k, np.asarray(lam, dtype=float))
    return dR


def _multisection(func, lo, hi, rtol=1e-13, pieces=16):
    flo = func(np.array([lo]))[0]
    while hi - lo > rtol * hi:
        grid = np.linspace(lo, hi, pieces + 1)[1:-1]
        vals = func(grid)
        change = np.flatnonzero(np.sign(vals) != np.sign(flo))
        if change.size:
            j = change[0]
            hi = grid[j]
            if j > 0:
                lo = grid[j - 1]
                flo = vals[j - 1]
        else:
            lo = grid[-1]
            flo = vals[-1]
    return 0.5 * (lo + hi)


def first_root(func, x_limit=X_MAX, dx=_SCAN_DX, x0=_SCAN_X0):
    """First sign change of ``func(lam)`` over ``lam = x**2``, ``x`` in ``(x0, x_limit]``.

    ``func`` takes an array of ``lam``. Returns ``None`` when no sign change
    is found below ``x_limit``.
    """
    x_limit = min(x_limit, X_MAX)
    lo = x0
    prev_val = None
    while lo < x_limit:
        xs = np.arange(lo, min(lo + 2.0, x_limit) + 1e-15, dx)
        if xs.size < 2:
            xs = np.array([lo, x_limit])
        vals = func(xs ** 2)
        if prev_val is not None and np.sign(prev_val) != np.sign(vals[0]):
            raise DiskError("sign change across scan windows")
        flips = np.flatnonzero(np.sign(vals[1:]) != np.sign(vals[:-1]))
        if flips.size:
            j = flips[0]
            return float(_multisection(func, xs[j] ** 2, xs[j + 1] ** 2))
        prev_val = vals[-1]
        lo = xs[-1]
        if xs[-1] >= x_limit - 1e-12:
            break
    return None


def mode_roots(model, k_max=MODE_CUTOFF):
    """First positive eigenvalue per angular mode ``k = 0..k_max``.

    Modes are scanned only below the running minimum, so entries above it
    are ``None``.
    """
    roots = []
    best = math.inf
    for k in range(k_max + 1):
        limit = math.sqrt(best) + _SCAN_DX if math.isfinite(best) else X_MAX
        r = first_root(lambda lam, k=k: secular_value(model, k, lam), x_limit=limit)
        if r is not None:
            best = min(best, r)
        roots.append(r)
    return roots


def _gap_from_roots(roots, k_max, what):
    found = [(r, k) for k, r in enumerate(roots) if r is not None]
    if not found:
        raise DiskError(f"no eigenvalue bracket found for {what}")
    best, k_best = min(found)
    if k_best == k_max or (roots[k_max] is not None and roots[k_max] <= best):
        raise DiskError(f"mode cutoff {k_max} too small for {what}")
    higher = [r for r in roots[1:] if r is not None]
    if any(b < a for a, b in zip(higher, higher[1:])):
        warnings.warn(f"first roots not increasing in k for {what}", RuntimeWarning)
    return best


def disk_gap(model, k_max=MODE_CUTOFF):
    """Spectral gap: smallest first positive root over modes ``0..k_max``.

    Raises :class:`DiskError` if the minimum sits at the cutoff mode.
    """
    return _gap_from_roots(mode_roots(model, k_max), k_max, model)


def neumann_gap(geometry, k_max=MODE_CUTOFF):
    """First nonzero Neumann eigenvalue (``R'(1) = 0``) of the unit ball."""
    geometry = _check_geometry(geometry)
    roots = []
    best = math.inf
    for k in range(k_max + 1):
        limit = math.sqrt(best) + _SCAN_DX if math.isfinite(best) else X_MAX
        r = first_root(lambda lam, k=k: _neumann_value(geometry, k, lam), x_limit=limit)
        if r is not None:
            best = min(best, r)
        roots.append(r)
    return _gap_from_roots(roots, k_max, f"neumann {geometry}")


def bound_curve(model):
    """Half-ball evaluation of ``h_B h_C / 4``: ``4 a/pi^2`` or ``a/(pi^2 (cosh 1 - 1)^2)``."""
    if model.geometry == EUCLIDEAN:
        return 4.0 * model.alpha_bar / math.pi ** 2
    return model.alpha_bar / (math.pi ** 2 * (math.cosh(1.0) - 1.0) ** 2)


def half_ball_cheeger(geometry):
    """``|diameter| / |half ball|``: ``4/pi`` or ``2/(pi (cosh 1 - 1))``."""
    return 2.0 / (0.5 * ball_area(geometry))
