"""Numerical verification of the block identities, the Jacobian and the
measure normalizations used in the archimedean computation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .closed_form import haar_test_integral
from .numeric import (QuadratureSpec, _gl_nodes, haar_test_integral_numeric,
                      iwasawa_test_integral_numeric)


@dataclass(frozen=True)
class StructureReport:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    details: dict = field(default_factory=dict)


def sl2_lower_iwasawa(a: float) -> tuple[float, float, float]:
    """``[[1, 0], [a, 1]] = [[1, x], [0, 1]] diag(y^1/2, y^-1/2) r(theta)``;
    returns ``(x, y, theta)`` with ``e^(i theta) = (1 - i a)/sqrt(1 + a^2)``."""
    y = 1.0 / (1.0 + a * a)
    return a * y, y, math.atan2(-a, 1.0)


def _rot(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def _check_sl2(rng, n: int, points: int, tol: float) -> StructureReport:
    worst = 0.0
    for _ in range(points):
        a = math.exp(rng.uniform(-3, 3))
        x, y, th = sl2_lower_iwasawa(a)
        rhs = np.array([[1, x], [0, 1]]) @ np.diag([math.sqrt(y), 1 / math.sqrt(y)]) @ _rot(th)
        worst = max(worst, float(np.max(np.abs(rhs - np.array([[1, 0], [a, 1]])))))
        # the exponential-parameter form used on the torus
        e = math.exp(rng.uniform(-3, 3))
        x2, y2, th2 = e / (1 + e * e), 1 / (1 + e * e), math.atan2(-e, 1.0)
        rhs2 = np.array([[1, x2], [0, 1]]) @ np.diag([math.sqrt(y2), 1 / math.sqrt(y2)]) @ _rot(th2)
        worst = max(worst, float(np.max(np.abs(rhs2 - np.array([[1, 0], [e, 1]])))))
    return StructureReport("sl2-iwasawa", worst <= tol, worst, tol, {"points": points})


def _k_block(C: np.ndarray, S: np.ndarray) -> np.ndarray:
    O = np.zeros_like(C)
    return np.block([[C, O, O, S], [O, C, S, O], [O, -S, C, O], [-S, O, O, C]])


def _torus_data(a: np.ndarray):
    y = 1.0 / (1.0 + a * a)
    th = np.arctan2(-a, np.ones_like(a))
    return a * y, y, th


def _check_block_factorization(rng, n: int, points: int, tol: float) -> StructureReport:
    """``[[I,0,0,0],[0,I,0,0],[0,D,I,0],[D,0,0,I]]`` equals
    ``[[Y,0,0,X/Y],[0,Y,X/Y,0],[0,0,1/Y,0],[0,0,0,1/Y]]`` times the rotation
    block built from ``cos(theta_j)`` and ``sin(theta_j)``."""
    worst = 0.0
    I, O = np.eye(n), np.zeros((n, n))
    for _ in range(points):
        a = np.exp(rng.uniform(-2, 2, n))
        D = np.diag(a)
        lhs = np.block([[I, O, O, O], [O, I, O, O], [O, D, I, O], [D, O, O, I]])
        x, y, th = _torus_data(a)
        Y, XY = np.diag(np.sqrt(y)), np.diag(x / np.sqrt(y))
        Yi = np.diag(1 / np.sqrt(y))
        P = np.block([[Y, O, O, XY], [O, Y, XY, O], [O, O, Yi, O], [O, O, O, Yi]])
        K = _k_block(np.diag(np.cos(th)), np.diag(np.sin(th)))
        worst = max(worst, float(np.max(np.abs(P @ K - lhs))))
    return StructureReport("block-factorization", worst <= tol, worst, tol, {"n": n, "points": points})


def z_of_v(V: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """``Z = -(1 + S V S)^-1 S V C`` with ``S, C`` the diagonal sines and cosines."""
    S, C = np.diag(np.sin(theta)), np.diag(np.cos(theta))
    n = V.shape[0]
    return -np.linalg.solve(np.eye(n) + S @ V @ S, S @ V @ C)


def v_of_z(Z: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Inverse of :func:`z_of_v`: ``V = -S^-1 Z (S Z + C)^-1``."""
    S, C = np.diag(np.sin(theta)), np.diag(np.cos(theta))
    return -np.linalg.solve(S, Z) @ np.linalg.inv(S @ Z + C)


def _check_cayley(rng, n: int, points: int, tol: float) -> StructureReport:
    """``K diag(U, I, U^-T, I) K^-1 = p L`` with ``p`` in the Siegel parabolic,
    ``det`` of its ``A`` block equal to 1, and ``L`` lower unipotent with
    off-diagonal blocks ``Z^T`` and ``Z``."""
    worst = 0.0
    I, O = np.eye(n), np.zeros((n, n))
    N = 2 * n
    for _ in range(points):
        a = np.exp(rng.uniform(-2, 2, n))
        _, _, th = _torus_data(a)
        K = _k_block(np.diag(np.cos(th)), np.diag(np.sin(th)))
        V = np.triu(rng.normal(size=(n, n)), 1)
        U = I + V
        m = np.block([[U, O, O, O], [O, I, O, O], [O, O, np.linalg.inv(U).T, O], [O, O, O, I]])
        M = K @ m @ K.T
        Z = z_of_v(V, th)
        Cl = np.block([[O, Z.T], [Z, O]])
        L = np.block([[np.eye(N), np.zeros((N, N))], [Cl, np.eye(N)]])
        p = M @ np.linalg.inv(L)
        r = max(float(np.max(np.abs(p[N:, :N]))), abs(float(np.linalg.det(p[:N, :N])) - 1.0))
        worst = max(worst, r)
    return StructureReport("cayley-congruence", worst <= tol, worst, tol, {"n": n, "points": points})


def jacobian_formula(theta: np.ndarray) -> float:
    """``|prod_j sin(theta_j)^(j-n) cos(theta_j)^(1-j)|``."""
    n = theta.size
    j = np.arange(1, n + 1)
    return float(np.abs(np.prod(np.sin(theta) ** (j - n) * np.cos(theta) ** (1 - j))))


def finite_difference_jacobian(f: Callable[[np.ndarray], np.ndarray], Z: np.ndarray,
                               h: float = 1e-6) -> float:
    """Determinant of the derivative of ``f`` restricted to strictly upper
    triangular matrices, by central differences."""
    n = Z.shape[0]
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not idx:
        return 1.0
    Jm = np.empty((len(idx), len(idx)))
    for c, (i, j) in enumerate(idx):
        E = np.zeros_like(Z)
        E[i, j] = h
        d = (f(Z + E) - f(Z - E)) / (2 * h)
        Jm[:, c] = [d[p, q] for p, q in idx]
    return float(np.linalg.det(Jm))


def _check_jacobian(rng, n: int, points: int, tol: float) -> StructureReport:
    """``dV = |prod sin^(j-n) cos^(1-j)| dZ`` for ``V -> Z`` as above, plus the
    rewriting of that factor through ``a_j = -tan(theta_j)``."""
    worst = 0.0
    for _ in range(points):
        a = np.exp(rng.uniform(-1.5, 1.5, n))
        _, _, th = _torus_data(a)
        Z = np.triu(rng.normal(scale=0.5, size=(n, n)), 1)
        det = abs(finite_difference_jacobian(lambda W: v_of_z(W, th), Z))
        expect = jacobian_formula(th)
        worst = max(worst, abs(det / expect - 1))
        back = z_of_v(v_of_z(Z, th), th)
        worst = max(worst, float(np.max(np.abs(back - Z))))
        j = np.arange(1, n + 1)
        alt = np.prod(a) ** (-(n + 1) / 2) * np.prod(a ** j) * np.prod(1 / (a + 1 / a)) ** ((1 - n) / 2)
        worst = max(worst, abs(alt / expect - 1))
    return StructureReport("cayley-jacobian", worst <= tol, worst, tol, {"n": n, "points": points})


def _check_iwasawa_measure(rng, n: int, points: int, tol: float) -> StructureReport:
    if n != 1:
        raise ValueError("the Iwasawa-measure check is implemented for n = 1")
    out = {}
    worst = 0.0
    for k in (2, 3, 4):
        g = haar_test_integral_numeric(k).value
        an = iwasawa_test_integral_numeric(k).value
        ratio = g / an
        out[k] = ratio
        worst = max(worst, abs(ratio / 2 ** n - 1))
    return StructureReport("iwasawa-measure", worst <= tol, worst, tol,
                           {"ratios": out, "expected": 2 ** n})


def _check_haar(rng, n: int, points: int, tol: float) -> StructureReport:
    if n != 1:
        raise ValueError("the numeric Haar check is implemented for n = 1")
    worst = 0.0
    vals = {}
    for k in (2, 3):
        exact = float(haar_test_integral(1, k).evaluate())
        num = haar_test_integral_numeric(k).value
        vals[k] = (num, exact)
        worst = max(worst, abs(num / exact - 1))
    return StructureReport("kak-haar", worst <= tol, worst, tol, {"values": vals})


def cone_phi(det: np.ndarray, trace: np.ndarray) -> np.ndarray:
    """Test function ``det(Y)^2 exp(-tr Y)`` given determinant and trace."""
    return det ** 2 * np.exp(-trace)


def cone_measure_sides(n: int, spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """Both sides of ``int_T phi(h h^T) dh = int_{P+} phi(Y) det(Y)^(-(n+1)/2) dY``
    with ``dh = 2^n da dn`` (``da = prod da_i / a_i``) for ``n`` in {1, 2}."""
    spec = spec or QuadratureSpec(order=16, min_panels=12)
    if n == 1:
        t, wt = _gl_nodes(-12.0, 3.0, spec)
        a = np.exp(t)
        lhs = 2.0 * float(wt @ cone_phi(a * a, a * a))
        y, wy = _gl_nodes(-25.0, 4.0, spec)
        Y = np.exp(y)
        rhs = float(wy @ (cone_phi(Y, Y) / Y * Y))
        return lhs, rhs
    if n != 2:
        raise ValueError("cone-measure check is implemented for n = 1, 2")
    # h = [[a1, a1 u], [0, a2]] with a_i = e^(t_i) and u = w / a1
    t, wt = _gl_nodes(-7.0, 2.5, spec)
    w, ww = _gl_nodes(-7.0, 7.0, spec)
    A1, A2, W = np.meshgrid(np.exp(t), np.exp(t), w, indexing="ij")
    U = W / A1
    vals = cone_phi((A1 * A2) ** 2, A1 ** 2 * (1 + U ** 2) + A2 ** 2) / A1
    lhs = 4.0 * float(np.einsum("i,j,k,ijk->", wt, wt, ww, vals))
    # Y11 = e^p, Y22 = e^q, Y12 = sqrt(Y11 Y22) sin(psi)
    p, wp = _gl_nodes(-12.0, 4.0, spec)
    psi, wpsi = _gl_nodes(-math.pi / 2, math.pi / 2, spec)
    P, Q, Psi = np.meshgrid(np.exp(p), np.exp(p), psi, indexing="ij")
    detY = P * Q * np.cos(Psi) ** 2
    jac = (P * Q) * np.sqrt(P * Q) * np.cos(Psi)
    integrand = cone_phi(detY, P + Q) * detY ** (-1.5) * jac
    rhs = float(np.einsum("i,j,k,ijk->", wp, wp, wpsi, integrand))
    return lhs, rhs


def _check_cone(rng, n: int, points: int, tol: float) -> StructureReport:
    lhs, rhs = cone_measure_sides(n)
    exact = {1: 1.0, 2: math.pi / 2}[n]
    worst = max(abs(lhs / exact - 1), abs(rhs / exact - 1))
    return StructureReport("cone-measure", worst <= tol, worst, tol,
                           {"lhs": lhs, "rhs": rhs, "closed_form": exact})


_CHECKS = {
    "sl2-iwasawa": (_check_sl2, 1e-12),
    "block-factorization": (_check_block_factorization, 1e-12),
    "cayley-congruence": (_check_cayley, 1e-10),
    "cayley-jacobian": (_check_jacobian, 1e-5),
    "iwasawa-measure": (_check_iwasawa_measure, 1e-3),
    "kak-haar": (_check_haar, 1e-4),
    "cone-measure": (_check_cone, 1e-6),
}

CHECK_NAMES = tuple(_CHECKS)


def structure_checks(name: str, n: int = 1, points: int = 10, seed: int = 0,
                     tol: float | None = None) -> StructureReport:
    """Run one named check; ``points`` random samples drawn from ``seed``."""
    try:
        fn, default_tol = _CHECKS[name]
    except KeyError:
        raise ValueError(f"unknown check {name!r}; choose from {CHECK_NAMES}") from None
    rng = np.random.default_rng(seed)
    return fn(rng, n, points, default_tol if tol is None else tol)
