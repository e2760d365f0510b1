"""JSON encoding of exact values and of FinAlgebra.

Integers with absolute value above 2^53 are written as decimal strings and
rationals as ``"p/q"``, so every value survives a JSON round trip exactly.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from ..algebra import FinAlgebra
from ..exactmat import IntMatrix, RatMatrix, to_q

__all__ = ["jsonable", "algebra_to_json", "algebra_from_json", "SAFE_INT"]

SAFE_INT = 2 ** 53
_MPQ = type(mpq(0))


def _num(x):
    if isinstance(x, (_MPQ, Fraction)):
        if x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        x = int(x.numerator)
    x = int(x)
    return x if abs(x) <= SAFE_INT else str(x)


def jsonable(x):
    """Plain JSON value for results built from ints, rationals, matrices and containers."""
    if x is None or isinstance(x, (bool, str, float)):
        return x
    if isinstance(x, (int, _MPQ, Fraction)) or type(x).__name__ == "mpz":
        return _num(x)
    if isinstance(x, (IntMatrix, RatMatrix)):
        return jsonable(x.tolist())
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__} as JSON")


def _vec(v: dict) -> dict:
    return {str(k): _num(c) for k, c in sorted(v.items())}


def _unvec(d: dict) -> dict:
    return {int(k): to_q(str(c)) for k, c in d.items()}


def algebra_to_json(A: FinAlgebra) -> dict:
    products = []
    for i, row in enumerate(A.table):
        for j, cell in enumerate(row):
            if cell:
                products.append([i, j, _vec(cell)])
    diff = None
    if A.differential is not None:
        diff = [[i, _vec(v)] for i, v in enumerate(A.differential) if v]
    return {"labels": list(A.labels), "idempotents": list(A.idempotents), "unit": _vec(A.unit),
            "degrees": list(A.degrees) if A.degrees is not None else None,
            "products": products, "differential": diff}


def algebra_from_json(d: dict) -> FinAlgebra:
    n = len(d["labels"])
    table = [[{} for _ in range(n)] for _ in range(n)]
    for i, j, v in d["products"]:
        table[i][j] = _unvec(v)
    diff = None
    if d.get("differential"):
        diff = [{} for _ in range(n)]
        for i, v in d["differential"]:
            diff[i] = _unvec(v)
    return FinAlgebra(d["labels"], table, d["idempotents"], unit=_unvec(d["unit"]),
                      degrees=d.get("degrees"), differential=diff)
