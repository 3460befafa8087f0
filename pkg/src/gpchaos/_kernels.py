"""Compiled inner loops. Parameters arrive as the flat vector of ModelParams.as_array."""
import math

import numpy as np
from numba import njit

COMPLETED = 0
BLOWUP = 1

MAX_HALVINGS = 10


@njit(cache=True)
def rhs(x, phi, y, p):
    g = p[0] * (p[1] + p[2] * math.sin(p[3] * x))
    chi = p[4] * (p[5] + p[6] * math.sin(p[7] * x))
    v = p[8] * math.cos(p[10] * x) + p[9] * math.cos(p[11] * x) + p[12] * x
    phi2 = phi * phi
    return y, (g * phi2 + chi * phi2 * phi2 - p[13]) * phi + v * phi


@njit(cache=True)
def tangent_coeff(x, phi, p):
    # d(dy)/d(phi) of the system above
    g = p[0] * (p[1] + p[2] * math.sin(p[3] * x))
    chi = p[4] * (p[5] + p[6] * math.sin(p[7] * x))
    v = p[8] * math.cos(p[10] * x) + p[9] * math.cos(p[11] * x) + p[12] * x
    phi2 = phi * phi
    return 3.0 * g * phi2 + 5.0 * chi * phi2 * phi2 - p[13] + v


@njit(cache=True)
def rk4_step(x, phi, y, h, p):
    h2 = 0.5 * h
    a1, b1 = rhs(x, phi, y, p)
    a2, b2 = rhs(x + h2, phi + h2 * a1, y + h2 * b1, p)
    a3, b3 = rhs(x + h2, phi + h2 * a2, y + h2 * b2, p)
    a4, b4 = rhs(x + h, phi + h * a3, y + h * b3, p)
    return (phi + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
            y + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4))


@njit(cache=True)
def _substeps(x, phi, y, h, n, p):
    hs = h / n
    for j in range(n):
        phi, y = rk4_step(x + j * hs, phi, y, hs, p)
    return phi, y


@njit(cache=True)
def refined_step(x, phi, y, h, p, tol):
    """Step-halving: subdivide until 2^k and 2^(k+1) substeps agree to ``tol``."""
    n = 1
    c_phi, c_y = rk4_step(x, phi, y, h, p)
    for _ in range(MAX_HALVINGS):
        f_phi, f_y = _substeps(x, phi, y, h, 2 * n, p)
        err = max(abs(f_phi - c_phi), abs(f_y - c_y))
        scale = 1.0 + max(abs(f_phi), abs(f_y))
        c_phi, c_y = f_phi, f_y
        n *= 2
        if err <= tol * scale:
            break
    return c_phi, c_y


@njit(cache=True)
def advance(x, phi, y, h, p, adaptive, tol):
    if adaptive:
        return refined_step(x, phi, y, h, p, tol)
    return rk4_step(x, phi, y, h, p)


@njit(cache=True)
def _ok(phi, y, thr):
    return abs(phi) <= thr and abs(y) <= thr


@njit(cache=True)
def integrate(p, x0, phi0, y0, h, n_full, x_end, h_last, stride, thr, adaptive, tol):
    """March ``n_full`` steps of ``h`` then one of ``h_last`` (if > 0).

    Returns (xs, phis, ys, count, status); rows past ``count`` are garbage.
    """
    n_rec = n_full // stride + 2
    xs = np.empty(n_rec)
    phis = np.empty(n_rec)
    ys = np.empty(n_rec)
    xs[0] = x0
    phis[0] = phi0
    ys[0] = y0
    count = 1
    phi = phi0
    y = y0
    for i in range(n_full):
        phi, y = advance(x0 + i * h, phi, y, h, p, adaptive, tol)
        if not _ok(phi, y, thr):
            return xs, phis, ys, count, BLOWUP
        if (i + 1) % stride == 0:
            xs[count] = x_end if (i + 1 == n_full and h_last <= 0.0) else x0 + (i + 1) * h
            phis[count] = phi
            ys[count] = y
            count += 1
    last_recorded = n_full % stride == 0 and n_full > 0
    if h_last > 0.0:
        phi, y = advance(x0 + n_full * h, phi, y, h_last, p, adaptive, tol)
        if not _ok(phi, y, thr):
            return xs, phis, ys, count, BLOWUP
        last_recorded = False
    if not last_recorded and (n_full > 0 or h_last > 0.0):
        xs[count] = x_end
        phis[count] = phi
        ys[count] = y
        count += 1
    return xs, phis, ys, count, COMPLETED


@njit(cache=True)
def benettin(p, x0, phi0, y0, h, steps, n_intervals, n_discard, d0, thr, adaptive, tol):
    """Two-trajectory separation growth with renormalisation every ``steps`` steps.

    Returns (log_stretch, count, diverged, n_degenerate) where log_stretch holds
    ln(d_k / d0) for the intervals after the discard window.
    """
    out = np.empty(max(n_intervals - n_discard, 0))
    count = 0
    n_degenerate = 0
    sign = math.copysign(1.0, phi0)
    phi = phi0
    y = y0
    cphi = phi0 + sign * d0
    cy = y0
    for k in range(n_intervals):
        for j in range(steps):
            # position from the global step index keeps the fiducial path
            # independent of how the span is cut into intervals
            xj = x0 + (k * steps + j) * h
            phi, y = advance(xj, phi, y, h, p, adaptive, tol)
            cphi, cy = advance(xj, cphi, cy, h, p, adaptive, tol)
            if not (_ok(phi, y, thr) and _ok(cphi, cy, thr)):
                return out, count, True, n_degenerate
        dphi = cphi - phi
        dy = cy - y
        dist = math.sqrt(dphi * dphi + dy * dy)
        if not (dist > 0.0 and math.isfinite(dist)):
            if dist == 0.0:
                n_degenerate += 1
                cphi = phi + sign * d0
                cy = y
                continue
            return out, count, True, n_degenerate
        if k >= n_discard:
            out[count] = math.log(dist / d0)
            count += 1
        scale = d0 / dist
        cphi = phi + dphi * scale
        cy = y + dy * scale
    return out, count, False, n_degenerate


@njit(cache=True)
def _joint_rhs(x, phi, y, u, w, p):
    dphi, dy = rhs(x, phi, y, p)
    return dphi, dy, w, tangent_coeff(x, phi, p) * u


@njit(cache=True)
def joint_step(x, phi, y, u, w, h, p):
    h2 = 0.5 * h
    a1, b1, c1, e1 = _joint_rhs(x, phi, y, u, w, p)
    a2, b2, c2, e2 = _joint_rhs(x + h2, phi + h2 * a1, y + h2 * b1, u + h2 * c1, w + h2 * e1, p)
    a3, b3, c3, e3 = _joint_rhs(x + h2, phi + h2 * a2, y + h2 * b2, u + h2 * c2, w + h2 * e2, p)
    a4, b4, c4, e4 = _joint_rhs(x + h, phi + h * a3, y + h * b3, u + h * c3, w + h * e3, p)
    s = h / 6.0
    return (phi + s * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
            y + s * (b1 + 2.0 * b2 + 2.0 * b3 + b4),
            u + s * (c1 + 2.0 * c2 + 2.0 * c3 + c4),
            w + s * (e1 + 2.0 * e2 + 2.0 * e3 + e4))


@njit(cache=True)
def variational(p, x0, phi0, y0, h, steps, n_intervals, n_discard, thr):
    """Fiducial trajectory plus linearised tangent vector, renormalised to unit length."""
    out = np.empty(max(n_intervals - n_discard, 0))
    count = 0
    phi = phi0
    y = y0
    u = 1.0
    w = 0.0
    for k in range(n_intervals):
        for j in range(steps):
            phi, y, u, w = joint_step(x0 + (k * steps + j) * h, phi, y, u, w, h, p)
            if not _ok(phi, y, thr):
                return out, count, True
        norm = math.sqrt(u * u + w * w)
        if not (norm > 0.0 and math.isfinite(norm)):
            return out, count, True
        if k >= n_discard:
            out[count] = math.log(norm)
            count += 1
        u /= norm
        w /= norm
    return out, count, False
