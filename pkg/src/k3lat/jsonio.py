"""
Canonical JSON: sorted keys, rationals as "p/q", complex numbers as
{"re", "im"}, symbolic scalars as {monomial: "p/q"} maps.
"""
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import mpmath

from .lattice import IntLattice, discriminant_group
from .symbolic import SymbolicComplex

FLOAT_DIGITS = 17


def fraction_str(f):
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


def parse_fraction(s):
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        raise TypeError("floats are not exact; write rationals as 'p/q'")
    return Fraction(str(s).strip())


def to_jsonable(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else fraction_str(obj)
    if isinstance(obj, float):
        return obj if obj == obj and abs(obj) != float("inf") else str(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, mpmath.mpc):
        return {"re": to_jsonable(obj.real), "im": to_jsonable(obj.imag)}
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, 30, min_fixed=-1, max_fixed=1) if obj else "0"
    if isinstance(obj, SymbolicComplex):
        return {k: fraction_str(v) for k, v in obj.as_labels().items()}
    if isinstance(obj, IntLattice):
        return lattice_json(obj, full=False)
    if hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return to_jsonable(obj.item())
    raise TypeError("no JSON form for %r" % type(obj))


def dumps(obj):
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def lattice_json(L, full=True):
    out = {"name": L.name, "gram": L.G}
    if L.labels:
        out["labels"] = list(L.labels)
    if full:
        D = discriminant_group(L)
        out.update({"even": L.even, "signature": list(L.signature), "det": L.det,
                    "disc_group": list(D.invariant_factors),
                    "q_values": sorted(fraction_str(v) for v in set(D.q_values()))})
    return out


def lattice_from_json(data):
    if isinstance(data, str):
        from .catalog import get
        return get(data)
    return IntLattice(data.get("name", "L"), data["gram"], data.get("labels"))


def load(path):
    with open(path) as fh:
        return json.load(fh)
