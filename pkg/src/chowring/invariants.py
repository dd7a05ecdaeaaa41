"""Invariants of finite matrix groups acting linearly on polynomial rings, degree by degree."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .linalg import coordinates, nullspace, rank
from .polyring import GF, CoefficientRing, Polynomial, PolynomialRing, substitute
from .report import VerificationReport

DATA_DIR = Path(__file__).parent / "data"

Matrix = tuple[tuple[int, ...], ...]


def _mat(m) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def _matmul(a: Matrix, b: Matrix, p: int) -> Matrix:
    n = len(a)
    out = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
    return tuple(tuple(x % p for x in r) for r in out) if p else out


def _det(m: Matrix):
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det(tuple(r[:j] + r[j + 1:] for r in m[1:])) for j in range(n))


class GroupAction:
    """A finite group of matrices; x_i maps to sum_j M[i][j] x_j."""

    def __init__(self, name: str, field: CoefficientRing, variables: Sequence[str], generators, order: int | None = None):
        if not field.is_field:
            raise ValueError(f"group actions need a field, got {field}")
        self.name = name
        self.field = field
        self.ring = PolynomialRing(field, variables)
        p = field.characteristic
        self.generators = [tuple(tuple(field(x) for x in r) for r in _mat(g)) for g in generators]
        for g in self.generators:
            d = _det(g)
            if (d % p == 0) if p else d == 0:
                raise ValueError(f"matrix {g} is not invertible over {field}")
        self.elements = self._closure()
        if order is not None and len(self.elements) != order:
            raise ValueError(f"{name}: generated group has order {len(self.elements)}, expected {order}")

    def _closure(self) -> list[Matrix]:
        p = self.field.characteristic
        n = self.ring.nvars
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    c = _matmul(a, g, p)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
                    if len(seen) > 100000:
                        raise ValueError("group is too large to enumerate")
            frontier = nxt
        return sorted(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, g: Matrix, p: Polynomial) -> Polynomial:
        R = self.ring
        images = {}
        for i, name in enumerate(R.names):
            f = R.zero
            for j, a in enumerate(g[i]):
                if a:
                    f = f + R.gens[j].scale(a)
            images[name] = f
        return substitute(p, images, R)

    def is_invariant(self, p: Polynomial, elements: Sequence[Matrix] | None = None) -> bool:
        return all(self.act(g, p) == p for g in (elements if elements is not None else self.elements))


@dataclass
class InvariantSpace:
    degree: int
    basis: list[Polynomial]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def invariant_space(a: GroupAction, degree: int) -> InvariantSpace:
    """Solve g.p = p for every generator g over the monomials of ``degree``."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    R = a.ring
    monos = R.monomials_of_degree(degree)
    if not monos:
        return InvariantSpace(degree, [])
    n = len(monos)
    rows = []
    for g in a.generators:
        # column j holds the coordinates of (g - 1) applied to monomial j
        cols = []
        for m in monos:
            img = a.act(g, R.monomial(m)) - R.monomial(m)
            cols.append(img)
        for i in range(n):
            row = [0] * n
            for j, img in enumerate(cols):
                c = img.terms.get(monos[i])
                if c:
                    row[j] = c
            if any(row):
                rows.append(row)
    vecs = nullspace(rows, n, a.field)
    basis = [R.from_dict({monos[j]: v for j, v in enumerate(vec) if v}) for vec in vecs]
    return InvariantSpace(degree, basis)


def products_of_degree(gens: Sequence[Polynomial], degree: int, degrees: Sequence[int] | None = None) -> list[Polynomial]:
    """All products prod g_i^e_i of total weighted degree ``degree``."""
    degrees = list(degrees) if degrees is not None else [g.degree() for g in gens]
    R = gens[0].ring if gens else None
    out = []
    for exps in weighted_compositions(degrees, degree):
        p = R.one
        for g, e in zip(gens, exps):
            if e:
                p = p * g ** e
        out.append(p)
    return out


def weighted_compositions(degrees: Sequence[int], total: int) -> list[tuple[int, ...]]:
    """Exponent vectors e with sum e_i * degrees_i = total."""
    out = []

    def rec(i, remaining, prefix):
        if i == len(degrees):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for e in range(remaining // degrees[i] + 1):
            rec(i + 1, remaining - e * degrees[i], prefix + [e])

    if total >= 0:
        rec(0, total, [])
    return out


def hilbert_coefficients(degrees: Sequence[int], max_degree: int) -> list[int]:
    """Coefficients of prod 1/(1 - s^d) up to s^max_degree."""
    coeffs = [1] + [0] * max_degree
    for d in degrees:
        for k in range(d, max_degree + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


def molien_series(a: GroupAction, max_degree: int) -> list[Fraction]:
    """(1/|G|) sum_g 1/det(1 - s g), expanded to s^max_degree (characteristic 0 only)."""
    if a.field.characteristic:
        raise ValueError("Molien's formula needs characteristic 0")
    total = [Fraction(0)] * (max_degree + 1)
    n = a.ring.nvars
    for g in a.elements:
        # det(1 - s g) as a polynomial in s via the characteristic polynomial
        R = PolynomialRing(a.field, ["s"])
        s = R.gen("s")
        m = [[(R.one if i == j else R.zero) - s.scale(g[i][j]) for j in range(n)] for i in range(n)]
        det = _poly_det(m, R)
        c = [det.coefficient((k,)) for k in range(n + 1)]
        inv = [Fraction(0)] * (max_degree + 1)
        inv[0] = Fraction(1) / c[0]
        for k in range(1, max_degree + 1):
            inv[k] = -sum(c[j] * inv[k - j] for j in range(1, min(k, n) + 1)) / c[0]
        total = [t + v for t, v in zip(total, inv)]
    return [t / a.order for t in total]


def _poly_det(m, R):
    n = len(m)
    if n == 1:
        return m[0][0]
    out = R.zero
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in m[1:]]
        term = m[0][j] * _poly_det(minor, R)
        out = out + term if j % 2 == 0 else out - term
    return out


# ---- Dickson invariants ------------------------------------------------------


def dickson_invariants(n: int, q: int = 2, names: Sequence[str] | None = None) -> list[Polynomial]:
    """Coefficients of prod_v (X + l_v) over v in F_q^n, ordered by degree q^n - q^i."""
    if not 1 <= n <= 4:
        raise ValueError("dickson_invariants supports 1 <= n <= 4")
    field = GF(q)
    names = list(names) if names else [f"u{i}" for i in range(1, n + 1)]
    R = PolynomialRing(field, names + ["X"])
    X = R.gen("X")
    total = R.one
    for v in itertools.product(range(q), repeat=n):
        form = R.zero
        for c, name in zip(v, names):
            if c:
                form = form + R.gen(name).scale(c)
        total = total * (X + form)
    base = PolynomialRing(field, names)
    out = []
    for i in reversed(range(n)):
        k = q ** i
        coeff = {m[:-1]: c for m, c in total.terms.items() if m[-1] == k}
        out.append(base.from_dict(coeff))
    return out


def general_linear_group(n: int, p: int) -> list[Matrix]:
    """Every invertible n x n matrix over F_p, by brute-force enumeration."""
    out = []
    for entries in itertools.product(range(p), repeat=n * n):
        m = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if _det(m) % p:
            out.append(m)
    return out


# ---- reports -----------------------------------------------------------------


def verify_invariant_ring(
    a: GroupAction, gens: Sequence[Polynomial], max_degree: int, label: str = ""
) -> VerificationReport:
    """Per degree, invariants agree with the span of products of ``gens``, which are independent."""
    label = label or a.name
    rep = VerificationReport(f"invariant ring {label}")
    bad = [i for i, g in enumerate(gens) if not a.is_invariant(g, a.generators)]
    rep.add(
        f"{label}:generators-invariant",
        f"invariance of the proposed generators under {a.name}",
        "every proposed generator is fixed by the group",
        not bad,
        non_invariant=[gens[i].to_text() for i in bad],
    )
    if bad:
        return rep
    degs = [g.degree() for g in gens]
    for d in range(max_degree + 1):
        inv = invariant_space(a, d)
        prods = products_of_degree(list(gens), d, degs) if gens else []
        r = _rank(prods, a.field)
        rep.add(
            f"{label}:degree-{d}",
            f"invariant ring of {a.name} generated by degrees {degs}",
            f"degree {d}: dim invariants = rank of generator products = number of products",
            inv.dimension == r == len(prods),
            invariants=inv.dimension,
            product_rank=r,
            products=len(prods),
        )
    return rep


def _rank(polys: Sequence[Polynomial], field: CoefficientRing) -> int:
    polys = [p for p in polys if p]
    if not polys:
        return 0
    _, rows = coordinates(polys)
    return rank(rows, field)


def degree_doubling_check(
    a: GroupAction, D: Sequence[Polynomial], d_names: Sequence[str], max_degree: int
) -> VerificationReport:
    """Squares D_i^2 model the cycle images of d_i: invariant and algebraically independent.

    Degrees here are cohomological; d_i has Chow degree deg(D_i) and maps to
    cohomological degree 2*deg(D_i).
    """
    rep = VerificationReport("degree doubling")
    squares = [x * x for x in D]
    for name, sq, x in zip(d_names, squares, D):
        rep.add(
            f"doubling:{name}",
            "cycle map d_i -> D_i^2",
            f"{name} (Chow degree {x.degree()}) maps to D^2 of cohomological degree {sq.degree()}, fixed by all {a.order} elements",
            a.is_invariant(sq) and sq.degree() == 2 * x.degree(),
        )
    degs = [s.degree() for s in squares]
    expected = hilbert_coefficients(degs, max_degree)
    for d in range(max_degree + 1):
        prods = products_of_degree(squares, d, degs)
        r = _rank(prods, a.field)
        rep.add(
            f"doubling:degree-{d}",
            f"F2[{', '.join(d_names)}] embedded by squares",
            f"cohomological degree {d}: rank of square products equals the polynomial-ring count",
            r == expected[d],
            rank=r,
            expected=expected[d],
        )
    return rep


def load_groups(path: str | Path | None = None) -> dict[str, GroupAction]:
    path = Path(path) if path else DATA_DIR / "groups.json"
    data = json.loads(Path(path).read_text())
    out = {}
    for g in data["groups"]:
        out[g["name"]] = GroupAction(
            g["name"], CoefficientRing.parse(g["field"]), g["variables"], g["matrices"], g.get("order")
        )
    return out
