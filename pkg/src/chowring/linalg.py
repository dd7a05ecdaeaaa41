"""Exact Gaussian elimination over QQ and GF(p)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polyring import CoefficientRing, Polynomial


def _check_field(field: CoefficientRing):
    if not field.is_field:
        raise ValueError(f"linear algebra needs a field, got {field}")


def row_reduce(rows: Sequence[Sequence], field: CoefficientRing) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    _check_field(field)
    if field.kind == "GF":
        p = field.p
        mat = [[int(x) % p for x in r] for r in rows]
    else:
        mat = [[Fraction(x) for x in r] for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        if field.kind == "GF":
            inv = pow(mat[r][col], -1, p)
            mat[r] = [x * inv % p for x in mat[r]]
        else:
            inv = 1 / mat[r][col]
            mat[r] = [x * inv for x in mat[r]]
        lead = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                if field.kind == "GF":
                    mat[i] = [(a - f * b) % p for a, b in zip(mat[i], lead)]
                else:
                    mat[i] = [a - f * b for a, b in zip(mat[i], lead)]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], field: CoefficientRing) -> int:
    if not rows:
        return 0
    return len(row_reduce(rows, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: CoefficientRing) -> list[list]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    red, pivots = row_reduce(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = field.normalize(-row[f]) if field.kind == "GF" else -row[f]
        basis.append([field.normalize(x) for x in v])
    return basis


def coordinates(polys: Sequence[Polynomial]) -> tuple[list[tuple], list[list]]:
    """Coefficient matrix of ``polys`` over the union of their monomials."""
    monos = sorted({m for p in polys for m in p.terms}, reverse=True)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for p in polys:
        row = [0] * len(monos)
        for m, c in p.terms.items():
            row[index[m]] = c
        rows.append(row)
    return monos, rows


def span_rank(polys: Sequence[Polynomial], field: CoefficientRing | None = None) -> int:
    """Dimension of the span of ``polys`` (coefficients read in ``field``)."""
    polys = [p for p in polys]
    if not polys:
        return 0
    field = field or polys[0].ring.coeffs
    _, rows = coordinates(polys)
    if not rows or not rows[0]:
        return 0
    return rank(rows, field)
