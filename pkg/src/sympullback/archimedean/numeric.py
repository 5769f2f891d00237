"""Numeric counterparts of the archimedean closed forms: quadrature for the
multivariable integral, matrix coefficients, the section f_k, Monte-Carlo
estimation of the zeta integral and two-dimensional Siegel-domain integrals."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .. import _accel
from . import _kernels
from .closed_form import DivergentParameter, gamma_n_convergence_bound, kak_constant, validate_weight

log = logging.getLogger(__name__)


class DecompositionFailure(ArithmeticError):
    """The P*K factorization did not reproduce the input within tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule: ``panels`` per unit length along each
    truncated axis, ``order`` nodes per panel and a target for the analytic
    tail bound."""

    order: int = 20
    panels_per_unit: float = 1.0
    tail_tol: float = 1e-13
    min_panels: int = 8


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    tail_bound: float
    nodes: int


@dataclass(frozen=True)
class MCEstimate:
    value: complex
    stderr: float
    samples: int
    seed: int
    backend: str
    diagnostics: dict = field(default_factory=dict)


def _gl_nodes(lo: float, hi: float, spec: QuadratureSpec, scale: float = 1.0):
    panels = max(spec.min_panels, int(math.ceil((hi - lo) * spec.panels_per_unit * scale)))
    x, w = np.polynomial.legendre.leggauss(spec.order)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def gamma_n_quadrature(n: int, z: float, spec: QuadratureSpec | None = None,
                       backend: str | None = None) -> QuadResult:
    """``int_{t1 > ... > tn > 1} prod_{i<j}(t_i^2 - t_j^2) prod t_i^(-z-n) dt``
    for ``n`` in {1, 2} on a truncated tensor grid with an analytic tail bound."""
    spec = spec or QuadratureSpec()
    if n not in (1, 2):
        raise ValueError("quadrature is implemented for n = 1, 2")
    if not z > gamma_n_convergence_bound(n):
        raise DivergentParameter(f"integral diverges for z={z} <= {gamma_n_convergence_bound(n)}")
    z = float(z)
    if n == 1:
        # t = e^u: integrand e^(-z u)
        U = math.log(1.0 / (spec.tail_tol * z)) / z
        u, w = _gl_nodes(0.0, U, spec, scale=max(1.0, z))
        val = float(np.dot(w, np.exp(-z * u)))
        tail = math.exp(-z * U) / z
        coarse = float(np.dot(*_coarse(0.0, U, spec, lambda t: np.exp(-z * t))))
        return QuadResult(val, abs(val - coarse) + tail, tail, u.size)
    c = 2.0 * z * (z - 1.0)
    L = math.log(1.0 / (spec.tail_tol * c))
    V, W = L / (2.0 * z), L / (z - 1.0)
    v, wv = _gl_nodes(0.0, V, spec, scale=max(1.0, 2 * z))
    u, wu = _gl_nodes(0.0, W, spec, scale=max(1.0, z + 1))
    grid = _kernels.get("selberg2_grid", backend)(v, u, z)
    val = float(wv @ grid @ wu)
    tail = math.exp(-2 * z * V) / c + math.exp(-(z - 1) * W) / c
    half = QuadratureSpec(spec.order // 2, spec.panels_per_unit, spec.tail_tol, spec.min_panels)
    v2, wv2 = _gl_nodes(0.0, V, half, scale=max(1.0, 2 * z))
    u2, wu2 = _gl_nodes(0.0, W, half, scale=max(1.0, z + 1))
    coarse = float(wv2 @ _kernels.get("selberg2_grid", backend)(v2, u2, z) @ wu2)
    return QuadResult(val, abs(val - coarse) + tail, tail, v.size * u.size)


def _coarse(lo, hi, spec, f):
    half = QuadratureSpec(max(2, spec.order // 2), spec.panels_per_unit, spec.tail_tol, spec.min_panels)
    x, w = _gl_nodes(lo, hi, half)
    return w, f(x)


def _J(n: int) -> np.ndarray:
    return np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])


def float_multiplier(h: np.ndarray, tol: float = 1e-9) -> float:
    h = np.asarray(h, dtype=float)
    n = h.shape[0] // 2
    m = h.T @ _J(n) @ h
    mu = m[0, n]
    if not np.allclose(m, mu * _J(n), atol=tol * max(1.0, abs(mu))):
        raise ValueError("matrix is not a similitude")
    return float(mu)


def matrix_coefficient(h, k: int) -> complex:
    """``<pi(h) w, w>`` for the lowest K-type vector of the weight-``k``
    holomorphic discrete series of ``GSp(2n, R)``:
    ``mu^(nk/2) 2^(nk) det(A + D + i(C - B))^(-k)`` for ``mu > 0`` and 0 otherwise."""
    h = np.asarray(h, dtype=float)
    n = h.shape[0] // 2
    mu = float_multiplier(h)
    if mu < 0:
        return 0j
    A, B, C, D = h[:n, :n], h[:n, n:], h[n:, :n], h[n:, n:]
    d = np.linalg.det((A + D) + 1j * (C - B))
    return complex(mu ** (n * k / 2) * 2.0 ** (n * k) / d ** k)


@dataclass(frozen=True)
class Iwasawa:
    """``g = p kappa`` with ``p = [[A, *], [0, u A^-T]]`` and ``kappa`` in ``K``."""

    A: np.ndarray
    p: np.ndarray
    kappa: np.ndarray
    u: float
    residual: float


def siegel_iwasawa(g, tol: float = 1e-9) -> Iwasawa:
    """Factor a real similitude through the Siegel parabolic and ``K``.

    The bottom block row ``[C, D]`` of ``g`` equals ``u A^-T [-beta, alpha]``
    with ``alpha + i beta`` unitary, so ``A^-T`` is recovered from the
    positive square root of ``C C^T + D D^T``.
    """
    g = np.asarray(g, dtype=float)
    N = g.shape[0] // 2
    u = float_multiplier(g, tol)
    C, D = g[N:, :N], g[N:, N:]
    G = C @ C.T + D @ D.T
    evals, evecs = np.linalg.eigh(G)
    if np.min(evals) <= 0:
        raise DecompositionFailure("bottom block row is rank deficient")
    root = (evecs * np.sqrt(evals)) @ evecs.T
    inv_root = (evecs / np.sqrt(evals)) @ evecs.T
    bottom = inv_root @ np.hstack([C, D])
    beta, alpha = -bottom[:, :N], bottom[:, N:]
    kappa = np.block([[alpha, beta], [-beta, alpha]])
    unit = alpha + 1j * beta
    res_u = float(np.max(np.abs(unit @ unit.conj().T - np.eye(N))))
    A = np.linalg.inv(root / u).T
    p = g @ kappa.T
    res_p = float(np.max(np.abs(p[N:, :N])))
    residual = max(res_u, res_p)
    if residual > tol * max(1.0, float(np.max(np.abs(g)))):
        raise DecompositionFailure(f"factorization residual {residual:.3g}")
    return Iwasawa(A, p, kappa, u, residual)


def fk_eval(g, k: int, s: complex) -> complex:
    """The section ``f_k(g, s) = sgn^k(det A) sgn^(nk)(u) |u^-n det A|^((2n+1)(s+1/2)) j(kappa, i)^-k``
    on ``GSp(4n, R)`` with ``g = p kappa``."""
    g = np.asarray(g, dtype=float)
    N = g.shape[0] // 2
    if N % 2:
        raise ValueError("f_k lives on GSp(4n); size must be divisible by 4")
    n = N // 2
    iw = siegel_iwasawa(g)
    detA = float(np.linalg.det(iw.A))
    alpha, beta = iw.kappa[:N, :N], iw.kappa[:N, N:]
    j = np.linalg.det(alpha - 1j * beta)
    sgn = (1 if detA > 0 else -1) ** k * (1 if iw.u > 0 else -1) ** (n * k)
    mod = abs(detA / iw.u ** n)
    return complex(sgn * mod ** ((2 * n + 1) * (s + 0.5)) * j ** (-k))


def fk_torus(a: np.ndarray, k: int, s: complex, n: int) -> complex:
    """Closed form of ``f_k(Q_n (exp H, 1))`` for ``H = diag(a)``:
    ``i^(nk) prod (e^a_j + e^-a_j)^(-(2n+1)(s+1/2))``."""
    a = np.asarray(a, dtype=float)
    return complex(1j ** (n * k) * np.prod(2 * np.cosh(a)) ** (-(2 * n + 1) * (s + 0.5)))


def zeta_integral_mc(n: int, k: int, s: float, samples: int = 10 ** 6, seed: int = 0,
                     chunks: int = 8, backend: str | None = None) -> MCEstimate:
    """Monte-Carlo estimate of the zeta integral over the positive Weyl chamber.

    The integrand ``alpha_n prod sinh(roots) f_k(Q_n(exp H, 1)) <pi(exp H) w, w>``
    is symmetric up to sign, so the orthant integral of its absolute value is
    divided by ``n!``.  Each coordinate is drawn from an exponential law with
    rate ``d/(n+1)``, where ``d`` is the slowest decay rate of the integrand;
    the weights stay bounded and the slack covers the polynomial rise of the
    root product near the walls.  Chunks use independent child seeds, so the
    result only depends on ``seed``, ``samples`` and ``chunks``.
    """
    validate_weight((k,) * n)
    if samples < 1 or chunks < 1:
        raise ValueError("samples and chunks must be positive")
    z = (2 * n + 1) * s - 0.5 + k
    decay = z - n + 1
    if decay <= 0:
        raise DivergentParameter(f"zeta integral diverges for s={s}")
    rate = decay / (n + 1)
    expo = (2 * n + 1) * (s + 0.5) + k
    kernel = _kernels.get("zeta_weights", backend)
    children = np.random.SeedSequence(seed).spawn(chunks)
    sizes = [samples // chunks + (1 if i < samples % chunks else 0) for i in range(chunks)]
    total, total_sq = 0.0, 0.0
    for child, m in zip(children, sizes):
        rng = np.random.default_rng(child)
        a = rng.exponential(1.0 / rate, size=(m, n))
        a = np.maximum(a, 1e-300)
        w = kernel(a, float(rate), float(expo), n * k)
        total += float(w.sum())
        total_sq += float((w * w).sum())
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    scale = float(kak_constant(n).evaluate()) / math.factorial(n)
    phase = 1j ** (n * k)
    value = phase * scale * mean
    stderr = scale * math.sqrt(var / samples)
    name = backend or _accel.backend_name()
    log.debug("zeta MC n=%d k=%d s=%g -> %s +- %g", n, k, s, value, stderr)
    return MCEstimate(complex(value), stderr, samples, seed, name,
                      {"rate": rate, "chunks": chunks})


def hu_integral_quadrature_n1(lam: float, sigma: float, tau: float,
                              spec: QuadratureSpec | None = None) -> QuadResult:
    """Two-dimensional quadrature of ``int_H y^(lam-2) (1+y+ix)^-sigma (1+y-ix)^-tau dx dy``.

    Coordinates ``y = e^v`` and ``x = (1+y) tan(phi)`` turn the upper
    half-plane into a strip; the ``v`` axis is truncated using the
    exponential decay rates ``lam - 1`` and ``sigma + tau - lam``.
    """
    spec = spec or QuadratureSpec(order=24)
    lo_rate, hi_rate = lam - 1.0, sigma + tau - lam
    if lo_rate <= 0 or hi_rate <= 0:
        raise DivergentParameter("integral diverges for these parameters")
    Vlo = math.log(1.0 / spec.tail_tol) / lo_rate
    Vhi = math.log(1.0 / spec.tail_tol) / hi_rate
    v, wv = _gl_nodes(-Vlo, Vhi, spec)
    phi, wp = _gl_nodes(-math.pi / 2, math.pi / 2, spec)
    y = np.exp(v)
    fy = y ** (lam - 1.0) * (1.0 + y) ** (1.0 - sigma - tau)
    fp = np.cos(phi) ** (sigma + tau - 2.0) * np.cos((tau - sigma) * phi)
    val = float((wv @ fy) * (wp @ fp))
    grid = np.outer(fy, fp)  # keep a genuine 2-D evaluation for the error estimate
    val2 = float(wv @ grid @ wp)
    tail = (math.exp(-lo_rate * Vlo) / lo_rate + math.exp(-hi_rate * Vhi) / hi_rate) * math.pi
    return QuadResult(val2, abs(val - val2) + tail, tail, grid.size)


def haar_test_integral_numeric(k: int, spec: QuadratureSpec | None = None) -> QuadResult:
    """``int_G 2^(2k) |a + d + i(c - b)|^(-2k) dg`` on ``SL(2, R)`` via the
    upper half-plane integral."""
    r = hu_integral_quadrature_n1(k, k, k, spec)
    f = 2.0 ** (2 * k)
    return QuadResult(r.value * f, r.error_estimate * f, r.tail_bound * f, r.nodes)


def iwasawa_test_integral_numeric(k: int, spec: QuadratureSpec | None = None) -> QuadResult:
    """``int_A int_N F(a n) dn da`` for the same test function on ``SL(2, R)``
    with ``a = diag(e^t, e^-t)``, ``da = dt`` and ``n = [[1, x], [0, 1]]``."""
    spec = spec or QuadratureSpec(order=24)
    if k < 2:
        raise DivergentParameter("test integral needs k >= 2")
    T = math.log(1.0 / spec.tail_tol) / (2 * k - 2)
    t, wt = _gl_nodes(-T, T, spec)
    phi, wp = _gl_nodes(-math.pi / 2, math.pi / 2, spec)
    T_, P_ = np.meshgrid(t, phi, indexing="ij")
    c = 2.0 * np.cosh(T_)
    # x = c e^-t tan(phi): |c - i e^t x|^2 = c^2 sec^2(phi)
    jac = c * np.exp(-T_) / np.cos(P_) ** 2
    F = 2.0 ** (2 * k) * (c * c / np.cos(P_) ** 2) ** (-k)
    val = float(wt @ (F * jac) @ wp)
    tail = 2.0 ** (2 * k) * math.pi * math.exp(-(2 * k - 2) * T) / (2 * k - 2)
    return QuadResult(val, tail, tail, F.size)
