"""Canonical JSON for the exact and numeric result types.

Rationals become ``"num/den"`` strings (integral ones drop the ``/1``) while
plain Python integers stay JSON integers; floats
become 17-significant-digit strings, and every structured type maps to a
plain dict with sorted keys.  ``deserialize(obj, kind)`` inverts the map.
"""
from __future__ import annotations

import dataclasses
import json
import math
from fractions import Fraction
from typing import Any

import mpmath
import numpy as np

from .algebra import (ExpRational, GammaExpression, Polynomial, RationalFunction, ScaledConstant,
                      TruncatedSeries)
from .characters import CyclotomicNumber
from .critical import CriticalData


def rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected an integer or 'num/den' string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def float_str(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return format(x, ".16e")


def _poly(p: Polynomial) -> list[str]:
    return [rational_str(c) for c in p.coeffs]


def to_jsonable(v: Any) -> Any:
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return rational_str(v)
    if isinstance(v, (float, np.floating, mpmath.mpf)):
        return float_str(v)
    if isinstance(v, (complex, np.complexfloating, mpmath.mpc)):
        c = complex(v)
        return {"re": float_str(c.real), "im": float_str(c.imag)}
    if isinstance(v, ScaledConstant):
        return {"rational": rational_str(v.rational), "pi_exp": v.pi_exp, "i_pow": v.i_pow,
                "two_exp": [rational_str(v.two_exp[0]), rational_str(v.two_exp[1])]}
    if isinstance(v, Polynomial):
        return _poly(v)
    if isinstance(v, RationalFunction):
        return {"num": _poly(v.num), "den": _poly(v.den)}
    if isinstance(v, TruncatedSeries):
        return [rational_str(c) for c in v.coeffs]
    if isinstance(v, ExpRational):
        return {"constant": to_jsonable(v.constant), "ratfun": to_jsonable(v.ratfun)}
    if isinstance(v, GammaExpression):
        return {"prefactor": to_jsonable(v.prefactor),
                "factors": [[kind, rational_str(a), rational_str(b), m]
                            for (kind, a, b), m in v.factors],
                "ratfun": to_jsonable(v.ratfun)}
    if isinstance(v, CyclotomicNumber):
        return {"level": v.level, "coeffs": [rational_str(c) for c in v.coeffs]}
    if isinstance(v, CriticalData):
        return {"right_points": list(v.right_points), "left_points": list(v.left_points),
                "excluded": [[p, why] for p, why in v.excluded]}
    if isinstance(v, np.ndarray):
        return [to_jsonable(x) for x in v.tolist()]
    if dataclasses.is_dataclass(v) and not isinstance(v, type):
        return {f.name: to_jsonable(getattr(v, f.name)) for f in dataclasses.fields(v)}
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    raise TypeError(f"cannot serialize {type(v).__name__}")


def serialize(v: Any) -> str:
    """Canonical JSON text: sorted keys, compact separators."""
    return json.dumps(to_jsonable(v), sort_keys=True, separators=(",", ":"))


def _unpoly(obj) -> Polynomial:
    return Polynomial([parse_rational(c) for c in obj])


def deserialize(obj: Any, kind: str) -> Any:
    """Rebuild a value of ``kind`` from its JSON form (text or parsed)."""
    if isinstance(obj, str) and (kind not in ("rational", "float") or obj.startswith('"')):
        obj = json.loads(obj)
    if kind == "rational":
        return parse_rational(obj)
    if kind == "float":
        return float(obj)
    if kind == "scaled_constant":
        return ScaledConstant(parse_rational(obj["rational"]), int(obj["pi_exp"]),
                              int(obj["i_pow"]),
                              (parse_rational(obj["two_exp"][0]), parse_rational(obj["two_exp"][1])))
    if kind == "polynomial":
        return _unpoly(obj)
    if kind == "ratfun":
        return RationalFunction(_unpoly(obj["num"]), _unpoly(obj["den"]))
    if kind == "series":
        return TruncatedSeries(parse_rational(c) for c in obj)
    if kind == "exp_rational":
        return ExpRational(deserialize(obj["constant"], "scaled_constant"),
                           deserialize(obj["ratfun"], "ratfun"))
    if kind == "gamma":
        factors = tuple(((kd, parse_rational(a), parse_rational(b)), int(m))
                        for kd, a, b, m in obj["factors"])
        return GammaExpression(deserialize(obj["prefactor"], "scaled_constant"), factors,
                               deserialize(obj["ratfun"], "ratfun"))
    if kind == "cyclotomic":
        return CyclotomicNumber(int(obj["level"]), [parse_rational(c) for c in obj["coeffs"]])
    if kind == "critical":
        return CriticalData(tuple(obj["right_points"]), tuple(obj["left_points"]),
                            tuple((p, why) for p, why in obj["excluded"]))
    if kind == "matrix":
        return np.array([[parse_rational(c) for c in row] for row in obj], dtype=object)
    raise ValueError(f"unknown kind {kind!r}")


KINDS = ("rational", "float", "scaled_constant", "polynomial", "ratfun", "series",
         "exp_rational", "gamma", "cyclotomic", "critical", "matrix")
