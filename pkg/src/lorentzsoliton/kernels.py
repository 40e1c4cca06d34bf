"""Hot numeric kernels with a numba path and a pure-numpy path.

Curvature kernels take batched metric jets ``g (N,3,3)``, ``dg (N,3,3,3)``
and ``ddg (N,3,3,3,3)`` (derivative axes first).  Geodesic kernels carry the
closed-form first jet of each metric family so the whole integration loop
runs compiled.

Index conventions
-----------------
``gamma[k, i, j]``  coefficient of d_k in nabla_{d_i} d_j
``riem[a, b, c, d]`` R_abcd = g_ae R^e_bcd, where
                    R(d_c, d_d) d_b = R^e_bcd d_e
``ricci[b, d]``     R^a_bad
With this lowering the exceptional metric has R_1212 = mu^2/4.
"""

import numpy as np

from . import _accel
from ._accel import njit

FAMILY_MINKOWSKI = 0
FAMILY_EXCEPTIONAL = 1


def _use_numba(backend):
    if backend is None:
        return _accel.USE_NUMBA
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend == "numba" and _accel.NUMBA_AVAILABLE


# ---------------------------------------------------------------- numpy path


def det3(g):
    return (
        g[..., 0, 0] * (g[..., 1, 1] * g[..., 2, 2] - g[..., 1, 2] * g[..., 2, 1])
        - g[..., 0, 1] * (g[..., 1, 0] * g[..., 2, 2] - g[..., 1, 2] * g[..., 2, 0])
        + g[..., 0, 2] * (g[..., 1, 0] * g[..., 2, 1] - g[..., 1, 1] * g[..., 2, 0])
    )


def inv3(g):
    """Adjugate inverse of a batch of 3x3 matrices."""
    a, b, c = g[..., 0, 0], g[..., 0, 1], g[..., 0, 2]
    d, e, f = g[..., 1, 0], g[..., 1, 1], g[..., 1, 2]
    p, q, r = g[..., 2, 0], g[..., 2, 1], g[..., 2, 2]
    A = e * r - f * q
    B = -(d * r - f * p)
    C = d * q - e * p
    det = a * A + b * B + c * C
    adj = np.stack(
        [
            np.stack([A, -(b * r - c * q), b * f - c * e], axis=-1),
            np.stack([B, a * r - c * p, -(a * f - c * d)], axis=-1),
            np.stack([C, -(a * q - b * p), a * e - b * d], axis=-1),
        ],
        axis=-2,
    )
    return adj / det[..., None, None]


def _first_kind_np(dg):
    # c[l, i, j] = (d_i g_lj + d_j g_il - d_l g_ij) / 2
    return 0.5 * (
        np.einsum("...ilj->...lij", dg) + np.einsum("...jil->...lij", dg) - dg
    )


def _curvature_np(g, dg, ddg):
    ginv = inv3(g)
    c1 = _first_kind_np(dg)
    gamma = np.einsum("...kl,...lij->...kij", ginv, c1)
    # dc1[m, l, i, j] = d_m of c1[l, i, j]
    dc1 = 0.5 * (
        np.einsum("...milj->...mlij", ddg)
        + np.einsum("...mjil->...mlij", ddg)
        - ddg
    )
    # R_lkij = d_i c_{l,jk} - d_j c_{l,ik} - c_{m,il} G^m_jk + c_{m,jl} G^m_ik
    d_term = np.einsum("...iljk->...lkij", dc1)
    riem = (
        d_term
        - np.swapaxes(d_term, -1, -2)
        - np.einsum("...mil,...mjk->...lkij", c1, gamma)
        + np.einsum("...mjl,...mik->...lkij", c1, gamma)
    )
    ricci = np.einsum("...al,...lkaj->...kj", ginv, riem)
    ricci = 0.5 * (ricci + np.swapaxes(ricci, -1, -2))
    return gamma, riem, ricci


def _metric_jet1_np(family, mu, eps, x):
    shape = x.shape[:-1]
    g = np.zeros(shape + (3, 3))
    dg = np.zeros(shape + (3, 3, 3))
    if family == FAMILY_MINKOWSKI:
        g[..., 0, 0] = -1.0
        g[..., 1, 1] = 1.0
        g[..., 2, 2] = 1.0
        return g, dg
    E = np.exp(-2.0 * mu * x[..., 2])
    g[..., 0, 0] = (eps / mu) * (E - 1.0)
    g[..., 0, 1] = g[..., 1, 0] = 1.0
    g[..., 0, 2] = g[..., 2, 0] = mu * x[..., 1]
    g[..., 2, 2] = 1.0
    dg[..., 2, 0, 0] = -2.0 * eps * E
    dg[..., 1, 0, 2] = dg[..., 1, 2, 0] = mu
    return g, dg


def _geodesic_rhs_np(family, mu, eps, y):
    x, v = y[..., :3], y[..., 3:]
    g, dg = _metric_jet1_np(family, mu, eps, x)
    gamma = np.einsum("...kl,...lij->...kij", inv3(g), _first_kind_np(dg))
    acc = -np.einsum("...kij,...i,...j->...k", gamma, v, v)
    return np.concatenate([v, acc], axis=-1)


def _rk4_np(family, mu, eps, y0, h, n_steps):
    out = np.empty((n_steps + 1,) + y0.shape)
    out[0] = y = y0
    # escaping trajectories overflow on purpose; the isfinite test reports them
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(n_steps):
            k1 = _geodesic_rhs_np(family, mu, eps, y)
            k2 = _geodesic_rhs_np(family, mu, eps, y + 0.5 * h * k1)
            k3 = _geodesic_rhs_np(family, mu, eps, y + 0.5 * h * k2)
            k4 = _geodesic_rhs_np(family, mu, eps, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(y)):
                return out[: n + 1], n
            out[n + 1] = y
    return out, -1


# ---------------------------------------------------------------- numba path


@njit
def _inv3(g, out):
    a, b, c = g[0, 0], g[0, 1], g[0, 2]
    d, e, f = g[1, 0], g[1, 1], g[1, 2]
    p, q, r = g[2, 0], g[2, 1], g[2, 2]
    A = e * r - f * q
    B = -(d * r - f * p)
    C = d * q - e * p
    det = a * A + b * B + c * C
    out[0, 0] = A / det
    out[1, 0] = B / det
    out[2, 0] = C / det
    out[0, 1] = -(b * r - c * q) / det
    out[1, 1] = (a * r - c * p) / det
    out[2, 1] = -(a * q - b * p) / det
    out[0, 2] = (b * f - c * e) / det
    out[1, 2] = -(a * f - c * d) / det
    out[2, 2] = (a * e - b * d) / det


@njit
def _first_kind_nb(dg, c1):
    for l in range(3):
        for i in range(3):
            for j in range(3):
                c1[l, i, j] = 0.5 * (dg[i, l, j] + dg[j, i, l] - dg[l, i, j])


@njit
def _second_kind_nb(ginv, c1, gamma):
    for k in range(3):
        for i in range(3):
            for j in range(3):
                s = 0.0
                for l in range(3):
                    s += ginv[k, l] * c1[l, i, j]
                gamma[k, i, j] = s


@njit
def _curvature_nb(g, dg, ddg):
    n = g.shape[0]
    gamma = np.empty((n, 3, 3, 3))
    riem = np.empty((n, 3, 3, 3, 3))
    ricci = np.empty((n, 3, 3))
    ginv = np.empty((3, 3))
    c1 = np.empty((3, 3, 3))
    dc1 = np.empty((3, 3, 3, 3))
    for p in range(n):
        _inv3(g[p], ginv)
        _first_kind_nb(dg[p], c1)
        _second_kind_nb(ginv, c1, gamma[p])
        for m in range(3):
            for l in range(3):
                for i in range(3):
                    for j in range(3):
                        dc1[m, l, i, j] = 0.5 * (ddg[p, m, i, l, j] + ddg[p, m, j, i, l] - ddg[p, m, l, i, j])
        for l in range(3):
            for k in range(3):
                for i in range(3):
                    for j in range(3):
                        s = dc1[i, l, j, k] - dc1[j, l, i, k]
                        for m in range(3):
                            s += c1[m, j, l] * gamma[p, m, i, k] - c1[m, i, l] * gamma[p, m, j, k]
                        riem[p, l, k, i, j] = s
        for k in range(3):
            for j in range(3):
                s = 0.0
                for a in range(3):
                    for l in range(3):
                        s += ginv[a, l] * riem[p, l, k, a, j]
                ricci[p, k, j] = s
        for k in range(3):
            for j in range(k + 1, 3):
                s = 0.5 * (ricci[p, k, j] + ricci[p, j, k])
                ricci[p, k, j] = s
                ricci[p, j, k] = s
    return gamma, riem, ricci


@njit
def _metric_jet1_nb(family, mu, eps, x, g, dg):
    for i in range(3):
        for j in range(3):
            g[i, j] = 0.0
            for m in range(3):
                dg[m, i, j] = 0.0
    if family == FAMILY_MINKOWSKI:
        g[0, 0] = -1.0
        g[1, 1] = 1.0
        g[2, 2] = 1.0
        return
    E = np.exp(-2.0 * mu * x[2])
    g[0, 0] = (eps / mu) * (E - 1.0)
    g[0, 1] = 1.0
    g[1, 0] = 1.0
    g[0, 2] = mu * x[1]
    g[2, 0] = mu * x[1]
    g[2, 2] = 1.0
    dg[2, 0, 0] = -2.0 * eps * E
    dg[1, 0, 2] = mu
    dg[1, 2, 0] = mu


@njit
def _geodesic_rhs_nb(family, mu, eps, y, out, g, dg, ginv, c1, gamma):
    _metric_jet1_nb(family, mu, eps, y[:3], g, dg)
    _inv3(g, ginv)
    _first_kind_nb(dg, c1)
    _second_kind_nb(ginv, c1, gamma)
    for k in range(3):
        out[k] = y[3 + k]
        s = 0.0
        for i in range(3):
            for j in range(3):
                s += gamma[k, i, j] * y[3 + i] * y[3 + j]
        out[3 + k] = -s


@njit
def _rk4_nb(family, mu, eps, y0, h, n_steps):
    out = np.empty((n_steps + 1, 6))
    g = np.empty((3, 3))
    dg = np.empty((3, 3, 3))
    ginv = np.empty((3, 3))
    c1 = np.empty((3, 3, 3))
    gamma = np.empty((3, 3, 3))
    k1 = np.empty(6)
    k2 = np.empty(6)
    k3 = np.empty(6)
    k4 = np.empty(6)
    tmp = np.empty(6)
    y = y0.copy()
    out[0] = y
    for n in range(n_steps):
        _geodesic_rhs_nb(family, mu, eps, y, k1, g, dg, ginv, c1, gamma)
        for q in range(6):
            tmp[q] = y[q] + 0.5 * h * k1[q]
        _geodesic_rhs_nb(family, mu, eps, tmp, k2, g, dg, ginv, c1, gamma)
        for q in range(6):
            tmp[q] = y[q] + 0.5 * h * k2[q]
        _geodesic_rhs_nb(family, mu, eps, tmp, k3, g, dg, ginv, c1, gamma)
        for q in range(6):
            tmp[q] = y[q] + h * k3[q]
        _geodesic_rhs_nb(family, mu, eps, tmp, k4, g, dg, ginv, c1, gamma)
        finite = True
        for q in range(6):
            y[q] = y[q] + (h / 6.0) * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q])
            if not np.isfinite(y[q]):
                finite = False
        if not finite:
            return out[: n + 1], n
        out[n + 1] = y
    return out, -1


@njit
def _geodesic_rhs_batch_nb(family, mu, eps, ys):
    out = np.empty_like(ys)
    g = np.empty((3, 3))
    dg = np.empty((3, 3, 3))
    ginv = np.empty((3, 3))
    c1 = np.empty((3, 3, 3))
    gamma = np.empty((3, 3, 3))
    for p in range(ys.shape[0]):
        _geodesic_rhs_nb(family, mu, eps, ys[p], out[p], g, dg, ginv, c1, gamma)
    return out


# ---------------------------------------------------------------- dispatch


def curvature(g, dg, ddg, backend=None):
    """Christoffel symbols, (0,4) Riemann tensor and Ricci tensor for a batch."""
    g = np.ascontiguousarray(g, dtype=np.float64)
    dg = np.ascontiguousarray(dg, dtype=np.float64)
    ddg = np.ascontiguousarray(ddg, dtype=np.float64)
    if _use_numba(backend):
        shape = g.shape[:-2]
        n = int(np.prod(shape, dtype=np.int64))
        gamma, riem, ricci = _curvature_nb(
            g.reshape(n, 3, 3), dg.reshape(n, 3, 3, 3), ddg.reshape(n, 3, 3, 3, 3)
        )
        return (
            gamma.reshape(shape + (3, 3, 3)),
            riem.reshape(shape + (3, 3, 3, 3)),
            ricci.reshape(shape + (3, 3)),
        )
    return _curvature_np(g, dg, ddg)


def geodesic_rhs(family, mu, eps, y, backend=None):
    """Time derivative of ``(x, v)`` states, shape ``(..., 6)``."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    if _use_numba(backend):
        shape = y.shape
        return _geodesic_rhs_batch_nb(family, float(mu), float(eps), y.reshape(-1, 6)).reshape(shape)
    return _geodesic_rhs_np(family, mu, eps, y)


def rk4_geodesic(family, mu, eps, y0, h, n_steps, backend=None):
    """Classical RK4 from ``y0 (6,)``; returns ``(states, blowup_step)``.

    ``blowup_step`` is -1 on success, otherwise the index of the step that
    produced a non-finite state (``states`` is then truncated).
    """
    y0 = np.ascontiguousarray(y0, dtype=np.float64)
    if _use_numba(backend):
        states, bad = _rk4_nb(family, float(mu), float(eps), y0, float(h), int(n_steps))
        return states, int(bad)
    return _rk4_np(family, mu, eps, y0, h, n_steps)
