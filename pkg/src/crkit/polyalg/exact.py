"""Exact nullspaces over Q by fraction-free (integer) row reduction.

Rows are sparse ``{column: Fraction}`` dicts.  Each row is scaled to
primitive integers up front; elimination then combines rows with integer
multipliers and divides out the row content, so no fractions appear until
the final back-substitution.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

Row = dict[int, int]


def _primitive(row: Mapping[int, Fraction | int]) -> Row:
    items = [(k, Fraction(v)) for k, v in row.items() if v]
    if not items:
        return {}
    den = 1
    for _, v in items:
        den = lcm(den, v.denominator)
    ints = {k: int(v * den) for k, v in items}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    # canonical sign: first (lowest) column positive
    first = min(ints)
    if ints[first] < 0:
        g = -g
    return {k: v // g for k, v in ints.items()}


def row_reduce(rows: Iterable[Mapping[int, Fraction | int]]) -> list[tuple[int, Row]]:
    """Reduced echelon form as ``[(pivot_column, integer_row), ...]``.

    Every returned row has zeros in the other rows' pivot columns.
    """
    pivots: list[tuple[int, Row]] = []
    for raw in rows:
        row = _primitive(raw)
        # reduce against existing pivots
        for pc, prow in pivots:
            c = row.get(pc)
            if c:
                row = _combine(row, prow, pc)
                if not row:
                    break
        if not row:
            continue
        pc = min(row)
        # eliminate the new pivot column from the older rows
        pivots = [(opc, _combine(orow, row, pc) if orow.get(pc) else orow) for opc, orow in pivots]
        pivots.append((pc, row))
    pivots.sort(key=lambda item: item[0])
    return pivots


def _combine(row: Row, prow: Row, pc: int) -> Row:
    """Return primitive(prow[pc]*row - row[pc]*prow): removes column pc from row."""
    a = prow[pc]
    b = row[pc]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {k: a * v for k, v in row.items()}
    for k, v in prow.items():
        s = out.get(k, 0) - b * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return _primitive(out)


def nullspace(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x in Q^ncols : row . x = 0 for every row}``.

    Basis vectors are indexed by free columns in increasing order; vector k has
    a 1 in its free column and zeros in the other free columns.
    """
    reduced = row_reduce(rows)
    pivot_cols = {pc for pc, _ in reduced}
    if any(pc >= ncols for pc in pivot_cols):
        raise ValueError("row references a column beyond ncols")
    free = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for pc, prow in reduced:
            v = prow.get(f)
            if v:
                vec[pc] = Fraction(-v, prow[pc])
        basis.append(vec)
    return basis


def rank(rows: Iterable[Mapping[int, Fraction | int]]) -> int:
    return len(row_reduce(rows))


def dense_rows(matrix: list[list]) -> list[dict[int, Fraction]]:
    return [{j: Fraction(v) for j, v in enumerate(r) if v} for r in matrix]
