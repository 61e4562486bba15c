"""Closed-form complex Gaussian integrals over R^m.

The single primitive is

    integral over R^m of exp( (1/2) v^T S v + l^T v + k ) dv
        = (2 pi)^{m/2} det(-S)^{-1/2} exp( k - (1/2) l^T S^{-1} l ),

valid for complex symmetric S whose real part is negative definite.  The
branch of det(-S)^{-1/2} is the analytic continuation from real SPD
matrices: every eigenvalue of -S has positive real part, so summing
principal logarithms of the eigenvalues is the continuous choice.

Also provides series-coefficient helpers used to push polynomial factors
through these integrals via generating parameters.
"""

from __future__ import annotations

import numpy as np

from .errors import NotIntegrableError


def half_logdet(a: np.ndarray) -> complex:
    """(1/2) log det a for complex symmetric a with Re(a) positive definite.

    Uses principal logarithms of the eigenvalues, which all lie in the open
    right half-plane, so the result is the continuation from the SPD case.
    """
    w = np.linalg.eigvals(a)
    if w.real.min() <= 0:
        raise NotIntegrableError(
            f"quadratic form not positive: min Re(eig) = {w.real.min():.3e}"
        )
    return 0.5 * complex(np.sum(np.log(w)))


def gauss_log_integral(S: np.ndarray, ell: np.ndarray, k: complex) -> complex:
    """log of the Gaussian integral of exp((1/2) v^T S v + ell^T v + k)."""
    S = np.atleast_2d(S)
    m = S.shape[0]
    ell = np.asarray(ell, dtype=complex).reshape(m)
    if np.linalg.eigvalsh(0.5 * (S.real + S.real.T)).max() >= 0:
        raise NotIntegrableError("real part of the quadratic form is not negative definite")
    x = np.linalg.solve(S, ell)
    return complex(k) - 0.5 * complex(ell @ x) + 0.5 * m * np.log(2 * np.pi) - half_logdet(-S)


def integrate_out(S: np.ndarray, L: np.ndarray, ell0: np.ndarray, k: complex):
    """Integrate exp((1/2) u^T S u + (L w + ell0)^T u + k) over u.

    Returns (Q, r, s) with the result equal to exp((1/2) w^T Q w + r^T w + s)
    as a function of the remaining (complex vector) variable w.
    """
    S = np.atleast_2d(S)
    m = S.shape[0]
    L = np.asarray(L, dtype=complex).reshape(m, -1)
    ell0 = np.asarray(ell0, dtype=complex).reshape(m)
    if np.linalg.eigvalsh(0.5 * (S.real + S.real.T)).max() >= 0:
        raise NotIntegrableError("real part of the quadratic form is not negative definite")
    Sinv_L = np.linalg.solve(S, L)
    Sinv_l = np.linalg.solve(S, ell0)
    Q = -L.T @ Sinv_L
    Q = 0.5 * (Q + Q.T)
    r = -L.T @ Sinv_l
    s = complex(k) - 0.5 * complex(ell0 @ Sinv_l) + 0.5 * m * np.log(2 * np.pi) - half_logdet(-S)
    return Q, r, s


def exp_series(m2: complex, b1: complex, nmax: int) -> np.ndarray:
    """Taylor coefficients e[j] = [z^j] exp((1/2) m2 z^2 + b1 z), j <= nmax."""
    e = np.zeros(nmax + 1, dtype=complex)
    e[0] = 1.0
    for j in range(nmax):
        acc = b1 * e[j]
        if j >= 1:
            acc += m2 * e[j - 1]
        e[j + 1] = acc / (j + 1)
    return e


def exp_bivariate_series(b1, b2, g11, g12, g22, jmax: int, kmax: int) -> np.ndarray:
    """c[j, k] = [s^j t^k] exp(b1 s + b2 t + g11 s^2/2 + g12 s t + g22 t^2/2)."""
    c = np.zeros((jmax + 1, kmax + 1), dtype=complex)
    c[0, 0] = 1.0
    for k in range(kmax):
        acc = b2 * c[0, k]
        if k >= 1:
            acc += g22 * c[0, k - 1]
        c[0, k + 1] = acc / (k + 1)
    for j in range(jmax):
        for k in range(kmax + 1):
            acc = b1 * c[j, k]
            if j >= 1:
                acc += g11 * c[j - 1, k]
            if k >= 1:
                acc += g12 * c[j, k - 1]
            c[j + 1, k] = acc / (j + 1)
    return c


def kernel_apply_poly(S, Lmat, ell0, k0, poly, gen_dir):
    """Integrate exp((1/2) u^T S u + (L w + ell0)^T u + k0) p(gen_dir . u) du.

    Returns (Q, r, s, poly_out) describing
    exp((1/2) w^T Q w + r^T w + s) * poly_out(w); polynomial factors are
    supported for a single output variable only (len(w) == 1) via a
    generating parameter in the gen_dir direction.
    """
    poly = np.atleast_1d(np.asarray(poly, dtype=complex))
    if len(poly) == 1:
        q, r, s = integrate_out(S, Lmat, ell0, k0)
        return q, r, s + np.log(poly[0]), np.array([1.0 + 0.0j])
    Lmat = np.asarray(Lmat, dtype=complex).reshape(len(ell0), -1)
    if Lmat.shape[1] != 1:
        raise ValueError("polynomial kernels support a single output variable")
    l2 = np.column_stack([np.asarray(gen_dir, dtype=complex), Lmat[:, 0]])
    q2, r2, s2 = integrate_out(S, l2, ell0, k0)
    out = np.zeros(len(poly), dtype=complex)
    for k, pk in enumerate(poly):
        if pk != 0:
            out[: k + 1] += pk * generating_poly(r2[0], q2[0, 0], q2[0, 1], k)
    return q2[1:, 1:], r2[1:], s2, out


def generating_poly(beta: complex, gamma: complex, eps: complex, k: int) -> np.ndarray:
    """Coefficients in w of k! [s^k] exp(beta s + (1/2) gamma s^2 + eps s w).

    The result is a polynomial of degree <= k in w, returned as an array of
    length k + 1 (ascending powers).
    """
    from math import factorial

    out = np.zeros(k + 1, dtype=complex)
    for a in range(k + 1):
        for b in range((k - a) // 2 + 1):
            c = k - a - 2 * b
            out[c] += (
                beta**a
                * (0.5 * gamma) ** b
                * eps**c
                * float(factorial(k))
                / (factorial(a) * factorial(b) * factorial(c))
            )
    return out
