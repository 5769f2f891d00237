"""Command-line front end.

Every subcommand is described by a parameter schema; ``dispatch`` validates
a ``CommandRequest`` against it, runs the computation and wraps the result
in a ``ResultEnvelope``.  Output is canonical JSON (sorted keys), so equal
requests give byte-identical text.

Exit codes: 0 ok, 2 invalid request, 3 mathematical error (pole,
divergence, out-of-range point), 4 failed verification.
"""
from __future__ import annotations

import argparse
import json
import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import mpmath

from . import __version__, characters, critical, hecke, ktypes, symplectic
from . import archimedean as arch
from .algebra import GammaPoleError, PoleAtOrigin, gamma_eval
from .serialize import parse_rational, to_jsonable

EXIT_OK, EXIT_INVALID, EXIT_MATH, EXIT_VERIFY = 0, 2, 3, 4


class ValidationError(ValueError):
    """The request does not match the subcommand schema."""


class VerificationFailure(AssertionError):
    """A verification subcommand found a mismatch."""

    def __init__(self, message: str, value: Any = None):
        super().__init__(message)
        self.value = value


def default_dps() -> int:
    raw = os.environ.get("SYMPULLBACK_DPS", "30")
    try:
        dps = int(raw)
    except ValueError:
        raise ValidationError(f"SYMPULLBACK_DPS must be an integer, got {raw!r}") from None
    if dps < 20:
        raise ValidationError("SYMPULLBACK_DPS must be at least 20")
    return dps


# --- parameter types ---------------------------------------------------------------

def _int(v) -> int:
    if isinstance(v, bool):
        raise ValueError("expected an integer")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and v.strip().lstrip("+-").isdigit():
        return int(v)
    raise ValueError(f"expected an integer, got {v!r}")


def _float(v) -> float:
    if isinstance(v, bool):
        raise ValueError("expected a number")
    if isinstance(v, (int, float)):
        return float(v)
    try:
        return float(parse_rational(v)) if "/" in str(v) else float(v)
    except (TypeError, ValueError):
        raise ValueError(f"expected a number, got {v!r}") from None


def _list(item: Callable) -> Callable:
    def parse(v):
        if isinstance(v, str):
            v = [x for x in v.replace(" ", "").split(",") if x]
        if not isinstance(v, (list, tuple)) or not v:
            raise ValueError(f"expected a non-empty list, got {v!r}")
        return [item(x) for x in v]
    return parse


def _choice(*opts: str) -> Callable:
    def parse(v):
        if v not in opts:
            raise ValueError(f"expected one of {opts}, got {v!r}")
        return v
    return parse


def _bool(v) -> bool:
    if isinstance(v, bool):
        return v
    if isinstance(v, str) and v.lower() in ("true", "false", "1", "0"):
        return v.lower() in ("true", "1")
    raise ValueError(f"expected a boolean, got {v!r}")


def _factored(v) -> list[tuple[int, int]]:
    """``N`` as an integer or as ``p:e`` pairs (``"2:1,3:2"``)."""
    if isinstance(v, int) or (isinstance(v, str) and v.strip().isdigit()):
        N = int(v)
        if N < 1:
            raise ValueError("N must be positive")
        return [] if N == 1 else characters.factorize(N)
    if isinstance(v, str):
        v = [x.split(":") for x in v.split(",") if x]
    out = []
    for pair in v:
        p, e = (int(x) for x in pair)
        if p < 2 or e < 1 or characters.factorize(p) != [(p, 1)]:
            raise ValueError(f"bad prime power {p}^{e}")
        out.append((p, e))
    return out


@dataclass(frozen=True)
class Param:
    parse: Callable
    required: bool = True
    default: Any = None
    help: str = ""


INT, RAT, FLOAT = _int, parse_rational, _float


# --- handlers -----------------------------------------------------------------------

def _euler_factor(p):
    poly = hecke.standard_euler_factor(p["n"], p["c"], p["alpha"])
    return {"coeffs": poly}, {"routine": "hecke.standard_euler_factor"}


def _volume_series(p):
    return hecke.volume_series(p["n"], p["q"], p["order"]), {"routine": "hecke.volume_series"}


def _volume_discrepancy(p):
    d = hecke.volume_series_discrepancy(p["n"], p["q"], p["order"])
    return d, {"routine": "hecke.volume_series_discrepancy",
               "oracle": "truncated expansion of the double-coset count"}


def _verify_rationality(p):
    ok = hecke.verify_spherical_rationality(p["n"], p["q"], p["c"], p["alpha"])
    lhs = hecke.spherical_rationality_factor(p["n"], p["q"], p["c"], p["alpha"])
    prov = {"routine": "hecke.verify_spherical_rationality",
            "oracle": "product of standard Euler factors"}
    if not ok:
        raise VerificationFailure("rationality identity failed", {"identity": False, "lhs": lhs})
    return True, prov


def _gamma_n(p):
    n = p["n"]
    rf = arch.gamma_n_closed(n)
    lead, monic = rf.normalized()
    roots = monic.den.rational_roots()
    value = {"num": monic.num * lead if monic.num.degree > 0 else lead,
             "den_roots": ([int(r) if r.denominator == 1 else r for r in roots]
                           if len(roots) == monic.den.degree else None),
             "ratfun": rf,
             "convergence_bound": arch.gamma_n_convergence_bound(n)}
    prov = {"routine": "archimedean.gamma_n_closed"}
    if p.get("z") is not None:
        z = p["z"]
        if not z > arch.gamma_n_convergence_bound(n):
            raise arch.DivergentParameter(f"gamma_n diverges at z={z}")
        quad = arch.gamma_n_quadrature(n, z)
        exact = float(rf(Fraction(z).limit_denominator(10 ** 12)))
        rel = abs(quad.value - exact) / abs(exact)
        value.update(quadrature=quad, closed_value=exact, rel_error=rel, tolerance=p["tol"])
        prov["oracle"] = "tensor Gauss-Legendre quadrature"
        if rel > p["tol"]:
            raise VerificationFailure(f"quadrature off by {rel:.3e}", value)
    return value, prov


def _weight(p, key="k", n=None):
    k = tuple(p[key])
    if n is not None and len(k) == 1:
        k = k * n
    return k


def _a_k(p):
    k = _weight(p)
    if p.get("t") is not None:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            v = arch.a_k_value(k, p["t"])
        return ({"t": p["t"], "value": v, "warnings": [str(w.message) for w in caught]},
                {"routine": "archimedean.a_k_value"})
    return arch.a_k(k), {"routine": "archimedean.a_k"}


def _b_lambda(p):
    n = p["n"]
    k = _weight(p, n=n)
    route = p["route"]
    fn = {"beta": arch.b_lambda, "a-k": arch.b_lambda_via_a_k}[route]
    value = {"route": route, "b": fn(n, k)}
    if route == "beta" and len(set(k)) == 1:
        value["scalar"] = arch.b_lambda_scalar(n, k[0])
        if value["scalar"] != value["b"]:
            raise VerificationFailure("scalar and beta routes disagree", value)
    return value, {"routine": f"archimedean.b_lambda ({route})"}


def _arch_gamma(p):
    n, eps = p["n"], p["eps"]
    k = _weight(p, n=n)
    q = arch.gamma_quotient_closed(n, k, eps)
    value = {"kappa": q.kappa, "poly": q.poly, "gamma_free": q.simplified.is_gamma_free(),
             "expected_poly": arch.gamma_quotient_expected_poly(n, k, eps),
             "kappa_closed_form": arch.gamma_quotient_kappa(n, k, eps)}
    prov = {"routine": "archimedean.gamma_quotient_closed"}
    if p.get("s") is not None:
        dps = default_dps()
        s = mpmath.mpf(p["s"].numerator) / p["s"].denominator
        with mpmath.workdps(dps):
            direct = gamma_eval(arch.gamma_quotient_unsimplified(n, k, eps), s, dps=dps)
            closed = q.evaluate(s, dps=dps)
            rel = float(abs(direct - closed) / abs(direct))
        value.update(s=p["s"], direct=complex(direct), closed=complex(closed), rel_error=rel,
                     tolerance=p["tol"])
        prov["oracle"] = "mpmath Gamma products"
        if rel > p["tol"]:
            raise VerificationFailure(f"Gamma quotient off by {rel:.3e}", value)
    return value, prov


def _kak_constant(p):
    return arch.kak_constant(p["n"]), {"routine": "archimedean.kak_constant"}


def _zeta_mc(p):
    n, k, s = p["n"], p["k"], p["s"]
    est = arch.zeta_integral_mc(n, k, s, samples=p["samples"], seed=p["seed"],
                                chunks=p["chunks"], backend=p["backend"])
    exact = arch.b_lambda_at(n, k, Fraction(s).limit_denominator(10 ** 9))
    rel = abs(est.value - exact) / abs(exact)
    value = {"estimate": est, "closed_value": exact, "rel_error": rel}
    return value, {"routine": "archimedean.zeta_integral_mc",
                   "oracle": "closed form of the zeta integral"}


def _structure_check(p):
    rep = arch.structure_checks(p["name"], p["n"], p["points"], p["seed"], p.get("tol"))
    prov = {"routine": f"archimedean.structure_checks[{p['name']}]"}
    if not rep.passed:
        raise VerificationFailure(f"{p['name']} residual {rep.max_residual:.3e}", rep)
    return rep, prov


def _ktype_mult(p):
    lam = tuple(p["lam"])
    return ({"lambda": lam, "m": p["m"], "multiplicity": ktypes.blattner_multiplicity(lam, p["m"]),
             "minimal_ktype": ktypes.minimal_ktype(lam)},
            {"routine": "ktypes.blattner_multiplicity"})


def _critical_set(p):
    if p.get("sym4") is not None:
        par = p["parity"] if p["parity"] in ("odd", "even") else "odd"
        return critical.critical_set_sym4(p["sym4"], par), {"routine": "critical.critical_set_sym4"}
    if p.get("ell") is None:
        raise ValidationError("critical-set needs --ell or --sym4")
    data = critical.critical_set_standard(p["ell"], p["parity"],
                                          chi_squared_trivial=p["chi_squared_trivial"])
    return data, {"routine": "critical.critical_set_standard"}


def _sym4_params(p):
    w, ell, m = critical.sym4_lift_params(p["k"])
    return {"highest_weight": list(w), "ell": ell, "m": m}, {"routine": "critical.sym4_lift_params"}


def _normalization_constant(p):
    n = p["n"]
    k = _weight(p, n=n)
    c = critical.normalization_constant(n, k, p["r"], p["N"])
    return c, {"routine": "critical.normalization_constant"}


def _cn_prefactor(p):
    c = critical.cn_prefactor(p["k"], p["r"], p["N"], p["m"],
                              chi_squared_trivial=p["chi_squared_trivial"])
    return c, {"routine": "critical.cn_prefactor"}


def _gauss_sum(p):
    N = p["modulus"]
    prim = characters.primitive_characters(N)
    if not prim:
        raise ArithmeticError(f"no primitive characters modulo {N}")
    i = p["index"]
    if not 0 <= i < len(prim):
        raise ValidationError(f"index must be in 0..{len(prim) - 1}")
    chi = prim[i]
    g = characters.gauss_sum(chi)
    norm_ok = g * g.conj() == N
    value = {"modulus": N, "order": chi.order, "parity": chi.parity(),
             "exponents": [[a, e] for a, e in chi.exponents], "gauss_sum": g,
             "numeric": g.to_complex(), "norm_equals_modulus": norm_ok,
             "primitive_count": len(prim)}
    if not norm_ok:
        raise VerificationFailure("G * conj(G) != N", value)
    return value, {"routine": "characters.gauss_sum", "oracle": "reduction modulo Phi_L"}


def _sp_order(p):
    n, q, m = p["n"], p["p"], p["m"]
    if characters.factorize(q) != [(q, 1)]:
        raise ValidationError(f"p={q} is not prime")
    return {"order": symplectic.sp_group_order(n, q, m)}, {"routine": "symplectic.sp_group_order"}


def _siegel_volume(p):
    return symplectic.siegel_volume(p["n"]), {"routine": "symplectic.siegel_volume"}


SCHEMAS: dict[str, tuple[Callable, dict[str, Param], str]] = {
    "euler-factor": (_euler_factor, {
        "n": Param(INT), "c": Param(RAT), "alpha": Param(_list(RAT), help="Satake parameters")},
        "coefficients of the standard Euler polynomial in X = q^-s"),
    "volume-series": (_volume_series, {
        "n": Param(INT), "q": Param(RAT), "order": Param(INT, False, 6)},
        "truncated generating series of double-coset volumes"),
    "volume-discrepancy": (_volume_discrepancy, {
        "n": Param(INT), "q": Param(RAT), "order": Param(INT, False, 6)},
        "compare the volume series with the variant carrying an extra prefactor"),
    "verify-rationality": (_verify_rationality, {
        "n": Param(INT), "q": Param(RAT), "c": Param(RAT), "alpha": Param(_list(RAT))},
        "check the spherical rationality identity exactly"),
    "gamma-n": (_gamma_n, {
        "n": Param(INT), "z": Param(FLOAT, False), "tol": Param(FLOAT, False, 1e-6)},
        "closed form of gamma_n; with --z also the quadrature oracle"),
    "a-k": (_a_k, {"k": Param(_list(INT)), "t": Param(INT, False)},
            "the normalized archimedean factor A_k"),
    "b-lambda": (_b_lambda, {
        "n": Param(INT), "k": Param(_list(INT)), "route": Param(_choice("beta", "a-k"), False, "beta")},
        "the archimedean zeta integral B(s) as an exact exp-rational function"),
    "arch-gamma": (_arch_gamma, {
        "n": Param(INT), "k": Param(_list(INT)), "eps": Param(INT, False, 0),
        "s": Param(RAT, False), "tol": Param(FLOAT, False, 1e-10)},
        "Gamma-factor quotient; with --s also a direct mpmath evaluation"),
    "kak-constant": (_kak_constant, {"n": Param(INT)}, "KAK Haar-measure constant"),
    "zeta-mc": (_zeta_mc, {
        "n": Param(INT), "k": Param(INT), "s": Param(FLOAT),
        "samples": Param(INT, False, 10 ** 5), "chunks": Param(INT, False, 8),
        "seed": Param(INT), "backend": Param(_choice("numba", "numpy"), False)},
        "Monte-Carlo zeta integral (seed required)"),
    "structure-check": (_structure_check, {
        "name": Param(_choice(*arch.CHECK_NAMES)), "n": Param(INT, False, 1),
        "points": Param(INT, False, 10), "seed": Param(INT, False, 0), "tol": Param(FLOAT, False)},
        "numeric check of a group-theoretic identity"),
    "ktype-mult": (_ktype_mult, {"lam": Param(_list(INT)), "m": Param(INT, False, 0)},
                   "Blattner multiplicity of the K-type lambda + m"),
    "critical-set": (_critical_set, {
        "ell": Param(INT, False), "sym4": Param(INT, False),
        "parity": Param(_choice(*critical.PARITIES), False, "matching"),
        "chi_squared_trivial": Param(_bool, False, False)},
        "critical points for GSp(4) x GL(1) or the sym^4 lift"),
    "sym4-params": (_sym4_params, {"k": Param(INT)}, "weight data of the sym^4 lift"),
    "normalization-constant": (_normalization_constant, {
        "n": Param(INT), "k": Param(_list(INT)), "r": Param(INT), "N": Param(_factored, False, [])},
        "rational constant multiplying the critical L-value"),
    "cn-prefactor": (_cn_prefactor, {
        "k": Param(INT), "r": Param(INT), "m": Param(INT, False, 0),
        "N": Param(_factored, False, []), "chi_squared_trivial": Param(_bool, False, False)},
        "(-1)^k pi^(2r+4-2k) times the n = 2 normalization constant"),
    "sp-order": (_sp_order, {"n": Param(INT), "p": Param(INT), "m": Param(INT, False, 1)},
                 "order of Sp(2n, Z/p^m)"),
    "siegel-volume": (_siegel_volume, {"n": Param(INT)}, "volume of Sp(2n, Z) \\ H_n"),
    "gauss-sum": (_gauss_sum, {"modulus": Param(INT), "index": Param(INT, False, 0)},
                  "exact Gauss sum of a primitive character"),
}

STOCHASTIC = frozenset({"zeta-mc"})


# --- requests and envelopes ---------------------------------------------------------

@dataclass
class CommandRequest:
    subcommand: str
    parameters: dict = field(default_factory=dict)
    output_format: str = "json"
    seed: int | None = None


@dataclass
class ResultEnvelope:
    status: str
    value: Any = None
    error: dict | None = None
    diagnostics: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_dict(self) -> dict:
        out = {"status": self.status, "diagnostics": list(self.diagnostics),
               "provenance": self.provenance}
        if self.status == "ok":
            out["value"] = to_jsonable(self.value)
        else:
            out["error"] = self.error
            if self.value is not None:
                out["detail"] = to_jsonable(self.value)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def to_plain(self) -> str:
        if self.status == "ok":
            return _plain(to_jsonable(self.value))
        return f"error ({self.error['type']}): {self.error['message']}"


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _plain(v, indent: str = "") -> str:
    if _is_flat(v):
        return indent + "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, dict):
        lines = []
        for k, x in sorted(v.items()):
            if isinstance(x, (dict, list)) and x and not _is_flat(x):
                lines.append(f"{indent}{k}:\n" + _plain(x, indent + "  "))
            else:
                lines.append(f"{indent}{k}: " + _plain(x))
        return "\n".join(lines)
    if isinstance(v, list):
        return "\n".join(_plain(x, indent + "  ") for x in v)
    return indent + str(v)


def validate(req: CommandRequest) -> dict:
    if req.subcommand not in SCHEMAS:
        raise ValidationError(f"unknown subcommand {req.subcommand!r}")
    if req.output_format not in ("json", "plain"):
        raise ValidationError("output_format must be 'json' or 'plain'")
    _, schema, _ = SCHEMAS[req.subcommand]
    params = dict(req.parameters)
    if req.seed is not None:
        if "seed" not in schema:
            raise ValidationError(f"{req.subcommand} takes no seed")
        params.setdefault("seed", req.seed)
    unknown = sorted(set(params) - set(schema))
    if unknown:
        raise ValidationError(f"unknown parameters for {req.subcommand}: {unknown}")
    out = {}
    for key, spec in schema.items():
        raw = params.get(key)
        if raw is None:
            if spec.required:
                raise ValidationError(f"missing required parameter {key!r}")
            out[key] = spec.default
            continue
        try:
            out[key] = spec.parse(raw)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"parameter {key!r}: {exc}") from None
    if "seed" in out and out["seed"] is not None and not 0 <= out["seed"] < 2 ** 64:
        raise ValidationError("seed must fit in 64 bits")
    return out


_MATH_ERRORS = (ArithmeticError, GammaPoleError, PoleAtOrigin, arch.DivergentParameter)


def dispatch(req: CommandRequest) -> ResultEnvelope:
    """Validate, run and wrap one request; never raises for expected failures."""
    try:
        params = validate(req)
    except ValidationError as exc:
        return _error("validation", exc, EXIT_INVALID, req)
    handler = SCHEMAS[req.subcommand][0]
    diagnostics = [f"version {__version__}"]
    if req.subcommand in STOCHASTIC:
        diagnostics.append(f"seed {params['seed']}")
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            value, prov = handler(params)
        diagnostics.extend(f"warning: {w.message}" for w in caught)
    except ValidationError as exc:
        return _error("validation", exc, EXIT_INVALID, req)
    except VerificationFailure as exc:
        env = _error("verification", exc, EXIT_VERIFY, req)
        env.value = exc.value
        return env
    except _MATH_ERRORS as exc:
        return _error("math", exc, EXIT_MATH, req)
    except (ValueError, TypeError) as exc:
        # precondition violations raised by the library (weights, ranges, parity)
        return _error("math" if _is_domain(exc) else "validation", exc,
                      EXIT_MATH if _is_domain(exc) else EXIT_INVALID, req)
    return ResultEnvelope("ok", value, None, diagnostics, prov, EXIT_OK)


def _is_domain(exc: Exception) -> bool:
    text = str(exc)
    return any(w in text for w in ("outside", "critical range", "parity", "diverge", "pole"))


def _error(kind: str, exc: Exception, code: int, req: CommandRequest) -> ResultEnvelope:
    return ResultEnvelope("error", None, {"type": kind, "message": f"{req.subcommand}: {exc}"},
                          [], {"subcommand": req.subcommand}, code)


# --- argparse front end -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sympullback", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--format", choices=("json", "plain"), default="json")
    sub = ap.add_subparsers(dest="subcommand", required=True)
    for name, (_, schema, desc) in SCHEMAS.items():
        sp = sub.add_parser(name, help=desc, description=desc)
        for key, spec in schema.items():
            flag = "--" + key.replace("_", "-")
            sp.add_argument(flag, dest=key, default=None, help=spec.help or None,
                            metavar=key.upper())
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items()
              if k not in ("subcommand", "format") and v is not None}
    env = dispatch(CommandRequest(args.subcommand, params, args.format))
    text = env.to_json() if args.format == "json" else env.to_plain()
    print(text)
    return env.exit_code


__all__ = ["CommandRequest", "ResultEnvelope", "SCHEMAS", "ValidationError", "VerificationFailure",
           "build_parser", "default_dps", "dispatch", "main", "validate"]
