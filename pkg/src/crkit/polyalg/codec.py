"""JSON encodings for polynomials, vector fields and models.

Rationals are ``[num, den]`` pairs; integers beyond 2**53 are written as
decimal strings so that any JSON reader keeps them exact.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from .fields import GradedVectorField
from .gaussian import GaussianRational
from .model import ModelHypersurface
from .poly import HermPoly

_SAFE = 2**53


def _int_out(k: int):
    return str(k) if abs(k) > _SAFE else k


def _int_in(v) -> int:
    if isinstance(v, bool):
        raise ParseError("booleans are not integers")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError as exc:
            raise ParseError(f"bad integer string {v!r}") from exc
    if isinstance(v, float) and v.is_integer():
        return int(v)
    raise ParseError(f"expected an integer, got {v!r}")


def rational_to_json(q) -> list:
    q = Fraction(q)
    return [_int_out(q.numerator), _int_out(q.denominator)]


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        den = _int_in(obj[1])
        if den == 0:
            raise ParseError("zero denominator")
        return Fraction(_int_in(obj[0]), den)
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return Fraction(_int_in(obj))
    raise ParseError(f"expected [num, den], got {obj!r}")


def gaussian_to_json(c: GaussianRational) -> dict:
    return {"re": rational_to_json(c.re), "im": rational_to_json(c.im)}


def gaussian_from_json(obj) -> GaussianRational:
    if not isinstance(obj, dict):
        raise ParseError(f"expected {{'re': .., 'im': ..}}, got {obj!r}")
    return GaussianRational(rational_from_json(obj.get("re", [0, 1])), rational_from_json(obj.get("im", [0, 1])))


def poly_to_json(p: HermPoly) -> dict:
    terms = []
    for (a, b), c in sorted(p.terms.items()):
        terms.append(
            {"alpha": list(a), "beta": list(b), "re": rational_to_json(c.re), "im": rational_to_json(c.im)}
        )
    return {"n": p.n, "terms": terms}


def poly_from_json(obj) -> HermPoly:
    try:
        n = _int_in(obj["n"])
        terms = {}
        for t in obj["terms"]:
            alpha = tuple(_int_in(x) for x in t["alpha"])
            beta = tuple(_int_in(x) for x in t.get("beta", [0] * n))
            c = GaussianRational(rational_from_json(t.get("re", [0, 1])), rational_from_json(t.get("im", [0, 1])))
            key = (alpha, beta)
            terms[key] = terms.get(key, GaussianRational(0)) + c
        return HermPoly(n, terms)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed polynomial: {exc}") from exc


def field_to_json(Y: GradedVectorField) -> dict:
    out = {
        "f": [poly_to_json(p) for p in Y.f],
        "g": poly_to_json(Y.g if Y.g is not None else HermPoly.zero(Y.n)),
        "a_scalar": rational_to_json(Y.w_part_scalar),
        "weight": rational_to_json(Y.weight),
    }
    if Y.f_w_linear:
        out["f_w_linear"] = [gaussian_to_json(a) for a in Y.f_w_linear]
    if Y.g_uses_w:
        out["g_uses_w"] = True
    if Y.f_uses_w:
        out["f_uses_w"] = True
    return out


def field_from_json(obj) -> GradedVectorField:
    try:
        f = tuple(poly_from_json(p) for p in obj["f"])
        if not f:
            raise ParseError("field needs at least one coefficient")
        g = poly_from_json(obj["g"]) if "g" in obj else None
        weight = rational_from_json(obj.get("weight", [0, 1]))
        return GradedVectorField(
            n=f[0].n,
            f=f,
            f_w_linear=tuple(gaussian_from_json(a) for a in obj.get("f_w_linear", [])),
            g=g,
            g_uses_w=bool(obj.get("g_uses_w", False)),
            w_part_scalar=rational_from_json(obj.get("a_scalar", [0, 1])),
            weight=weight,
            f_uses_w=bool(obj.get("f_uses_w", False)),
            w_power={-1: 0, 0: 1, 1: 2}.get(weight, 1) if weight.denominator == 1 else 1,
        )
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed vector field: {exc}") from exc


def model_to_json(model: ModelHypersurface) -> dict:
    return {
        "kind": "hypersurface",
        "Q": poly_to_json(model.Q),
        "allow_pluriharmonic": model.allow_pluriharmonic,
    }


def model_from_json(obj, allow_pluriharmonic: bool | None = None) -> ModelHypersurface:
    """Accepts ``{"kind": "hypersurface", "Q": poly}`` or a bare polynomial object."""
    if not isinstance(obj, dict):
        raise ParseError("model file must hold a JSON object")
    if "terms" in obj:
        poly, flag = poly_from_json(obj), bool(obj.get("allow_pluriharmonic", False))
    elif "Q" in obj:
        poly, flag = poly_from_json(obj["Q"]), bool(obj.get("allow_pluriharmonic", False))
    else:
        raise ParseError("model JSON needs a 'Q' polynomial or 'terms'")
    if allow_pluriharmonic is not None:
        flag = flag or allow_pluriharmonic
    return ModelHypersurface(poly, allow_pluriharmonic=flag)
