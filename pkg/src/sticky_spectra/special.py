"""Bessel functions of the first kind of integer order, and the radial shooter."""

import numpy as np

from . import kernels

SERIES_LIMIT = 8.0
X_MAX = 100.0


def bessel_j(k, x):
    """``J_k(x)`` for integer ``k >= 0`` and ``0 <= x <= 100``.

    Power series up to ``x = 8``; normalised Miller backward recurrence
    (``J_0 + 2 sum J_2m = 1``) beyond.
    """
    k = int(k)
    if k < 0:
        raise ValueError("order must be nonnegative")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > X_MAX) or not np.all(np.isfinite(x)):
        raise ValueError(f"bessel_j argument outside reliable range [0, {X_MAX}]")
    out = np.empty(x.shape)
    small = x <= SERIES_LIMIT
    if np.any(small):
        out[small] = _series(k, x[small])
    if np.any(~small):
        out[~small] = _miller(k, x[~small])
    return out if out.ndim else float(out)


def bessel_j_prime(k, x):
    """``J_k'(x)`` from the three-term relations."""
    if k == 0:
        return -bessel_j(1, x)
    return 0.5 * (bessel_j(k - 1, x) - bessel_j(k + 1, x))


def _series(k, x):
    q = 0.25 * x * x
    term = (0.5 * x) ** k
    for j in range(1, k + 1):
        term = term / j
    total = term.copy()
    for j in range(1, 60):
        term = -term * q / (j * (j + k))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _miller(k, x):
    xmax = float(x.max())
    n_start = int(xmax + k + 30 + 12 * np.sqrt(xmax))
    n_start += n_start % 2
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    jk = np.zeros_like(x)
    for n in range(n_start, 0, -1):
        j_prev = (2.0 * n / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds J_{n-1}
        if n - 1 == k:
            jk = j_cur.copy()
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * j_cur
        big = np.abs(j_cur) > 1e200
        if np.any(big):
            for arr in (j_cur, j_next, norm, jk):
                arr[big] *= 1e-200
    norm += j_cur
    return jk / norm


def shooting_nodes(m_max, k, step=1e-4):
    """Integration grid on ``[rho0, 1]``: graded near the origin, ``step`` beyond.

    The first-order coefficient ``(2k+1)/rho`` is stiff near zero, so steps
    are capped at ``0.05 rho / (2k+1)``.
    """
    n = 2.0 * k + 1.0
    rho0 = min(5e-3, 0.05 / np.sqrt(max(m_max, 1.0)))
    nodes = [rho0]
    r = rho0
    while r < 1.0:
        h = min(step, 0.05 * r / n)
        r = min(1.0, r + h)
        nodes.append(r)
    return np.asarray(nodes)


def radial_solution(lams, k, hyperbolic, step=1e-4):
    """``(u(1), u'(1))`` for the regular solution of the reduced radial equation.

    The radial part is ``R = s(rho)**k u`` with ``s = sinh`` (hyperbolic) or
    ``s = rho`` (Euclidean), and ``u'' + (2k+1) (s'/s) u' + m u = 0`` with
    ``m = lam + k(k+1)`` (hyperbolic) or ``m = lam``; ``u(0) = 1``.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    kappa = 1.0 if hyperbolic else 0.0
    m = lams + kappa * k * (k + 1)
    nodes = shooting_nodes(float(np.max(m)), k, step)
    r0 = nodes[0]
    n = 2.0 * k + 1.0
    b = -m / (4.0 * (k + 1))
    c = -b * (m + kappa * 2.0 * n / 3.0) / (12.0 + 4.0 * n)
    u0 = 1.0 + b * r0 ** 2 + c * r0 ** 4
    du0 = 2.0 * b * r0 + 4.0 * c * r0 ** 3
    return kernels.shoot_radial(lams, k, hyperbolic, nodes, u0, du0)
