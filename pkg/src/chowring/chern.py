"""Weight systems, Chern classes as elementary symmetric functions, and characters."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Mapping, Sequence

from .polyring import ZZ, CoefficientRing, Polynomial, PolynomialRing, RingMismatchError

DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class CoordinateSystem:
    """Free coordinates on a torus; dependent coordinates are eliminated at load."""

    name: str
    variables: tuple[str, ...]

    def ring(self, coeffs: CoefficientRing = ZZ) -> PolynomialRing:
        return PolynomialRing(coeffs, self.variables)


@dataclass(frozen=True)
class WeightSystem:
    name: str
    coords: CoordinateSystem
    weights: tuple[tuple[int, ...], ...]
    torus: str = ""
    self_dual: bool = True

    def __post_init__(self):
        for w in self.weights:
            if len(w) != self.torus_rank:
                raise ValueError(f"weight {w} has wrong length for {self.coords.name}")

    @property
    def torus_rank(self) -> int:
        return len(self.coords.variables)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def __add__(self, other: "WeightSystem") -> "WeightSystem":
        if other.coords != self.coords:
            raise RingMismatchError(
                f"cannot combine weights in {self.coords.name} and {other.coords.name}"
            )
        return WeightSystem(
            f"{self.name}+{other.name}", self.coords, self.weights + other.weights, self.torus,
            self.self_dual and other.self_dual,
        )

    def dual(self) -> "WeightSystem":
        return WeightSystem(
            f"{self.name}*", self.coords, tuple(tuple(-a for a in w) for w in self.weights),
            self.torus, self.self_dual,
        )

    def is_closed_under_negation(self) -> bool:
        return sorted(self.weights) == sorted(tuple(-a for a in w) for w in self.weights)

    def linear_forms(self, coeffs: CoefficientRing = ZZ) -> list[Polynomial]:
        R = self.coords.ring(coeffs)
        gens = R.gens
        forms = []
        for w in self.weights:
            f = R.zero
            for a, g in zip(w, gens):
                if a:
                    f = f + g.scale(a)
            forms.append(f)
        return forms


def total_chern(ws: WeightSystem, coeffs: CoefficientRing = ZZ) -> list[Polynomial]:
    """[c_1, ..., c_n]: elementary symmetric polynomials of the weights' linear forms."""
    forms = ws.linear_forms(coeffs)
    R = ws.coords.ring(coeffs)
    e = [R.one] + [R.zero] * len(forms)
    for k, f in enumerate(forms, start=1):
        for j in range(k, 0, -1):
            e[j] = e[j] + f * e[j - 1]
    return e[1:]


def total_chern_series(ws: WeightSystem, formal: str = "X", coeffs: CoefficientRing = ZZ) -> Polynomial:
    """The product of (1 + w X) over the weights, as a polynomial with formal variable X."""
    base = ws.coords.ring(coeffs)
    R = PolynomialRing(coeffs, base.names + (formal,))
    X = R.gen(formal)
    total = R.one
    for f in ws.linear_forms(coeffs):
        total = total * (1 + f.embed(R) * X)
    return total


# ---- characters ------------------------------------------------------------


def character_ring(m: int) -> PolynomialRing:
    return PolynomialRing(ZZ, [f"a{i}" for i in range(1, m + 1)], laurent=True)


def character_of(ws: WeightSystem) -> Polynomial:
    R = character_ring(ws.torus_rank)
    terms: dict[tuple, int] = {}
    for w in ws.weights:
        terms[w] = terms.get(w, 0) + 1
    return R.from_dict(terms)


def _elementary(values: Sequence[Polynomial], r: int, R: PolynomialRing) -> Polynomial:
    e = [R.one] + [R.zero] * r
    for k, v in enumerate(values, start=1):
        for j in range(min(k, r), 0, -1):
            e[j] = e[j] + v * e[j - 1]
    return e[r]


def tau(r: int, m: int) -> Polynomial:
    """r-th elementary symmetric function of a_j + a_j^-1, j = 1..m."""
    if not 0 <= r <= m:
        raise ValueError(f"tau needs 0 <= r <= m, got r={r}, m={m}")
    R = character_ring(m)
    return _elementary([g + g ** -1 for g in R.gens], r, R)


def tau_pm(sign: int, m: int) -> Polynomial:
    """Sum of a_1^e_1 ... a_m^e_m over sign vectors with product e_1...e_m = sign."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if m < 1:
        raise ValueError("m must be positive")
    R = character_ring(m)
    terms = {}
    for eps in itertools.product((1, -1), repeat=m):
        prod = 1
        for e in eps:
            prod *= e
        if prod == sign:
            terms[eps] = 1
    return R.from_dict(terms)


def lambda_pm_character(sign: int, m: int) -> Polynomial:
    """tau_m^+- + sum_{k>=1} binom(2k,k)/2 * tau_{m-2k}."""
    if m < 1:
        raise ValueError("m must be positive")
    chi = tau_pm(sign, m)
    k = 1
    while m - 2 * k >= 0:
        chi = chi + tau(m - 2 * k, m).scale(comb(2 * k, k) // 2)
        k += 1
    return chi


def exterior_power_character(ws: WeightSystem, m: int) -> Polynomial:
    """Character of the m-th exterior power, by enumerating m-subsets of the weights."""
    if m > ws.dimension or m < 0:
        raise ValueError(f"exterior power {m} of a {ws.dimension}-dimensional representation")
    R = character_ring(ws.torus_rank)
    terms: dict[tuple, int] = {}
    for idx in itertools.combinations(range(ws.dimension), m):
        s = tuple(sum(ws.weights[i][j] for i in idx) for j in range(ws.torus_rank))
        terms[s] = terms.get(s, 0) + 1
    return R.from_dict(terms)


def standard_so_weights(m: int) -> WeightSystem:
    """Standard representation of SO_2m: weights +-e_i."""
    coords = CoordinateSystem(f"so{2 * m}", tuple(f"t{i}" for i in range(1, m + 1)))
    weights = []
    for i in range(m):
        for s in (1, -1):
            w = [0] * m
            w[i] = s
            weights.append(tuple(w))
    return WeightSystem(f"W_SO{2 * m}", coords, tuple(weights), f"SO{2 * m}")


# ---- catalog ---------------------------------------------------------------


@dataclass
class WeightCatalog:
    coordinate_systems: dict[str, CoordinateSystem] = field(default_factory=dict)
    systems: dict[str, WeightSystem] = field(default_factory=dict)

    def __getitem__(self, name: str) -> WeightSystem:
        try:
            return self.systems[name]
        except KeyError:
            raise KeyError(f"no weight system named {name!r}") from None

    def __contains__(self, name):
        return name in self.systems


def _reduce_weight(raw: Sequence[int], all_vars: Sequence[str], elim: Mapping[str, Sequence[int]]):
    free = [v for v in all_vars if v not in elim]
    out = [0] * len(free)
    for v, a in zip(all_vars, raw):
        if v in elim:
            for j, b in enumerate(elim[v]):
                out[j] += a * b
        else:
            out[free.index(v)] += a
    return tuple(out)


def load_weight_catalog(path: str | Path | None = None) -> WeightCatalog:
    path = Path(path) if path else DATA_DIR / "weights.json"
    data = json.loads(path.read_text())
    cat = WeightCatalog()
    raw_coords = data["coordinate_systems"]
    for name, spec in raw_coords.items():
        elim = spec.get("eliminate", {})
        free = tuple(v for v in spec["variables"] if v not in elim)
        cat.coordinate_systems[name] = CoordinateSystem(name, free)
    for entry in data["weight_systems"]:
        cs = raw_coords[entry["coordinate_system"]]
        elim = cs.get("eliminate", {})
        weights = tuple(_reduce_weight(w, cs["variables"], elim) for w in entry["weights"])
        ws = WeightSystem(
            entry["name"],
            cat.coordinate_systems[entry["coordinate_system"]],
            weights,
            entry.get("torus", ""),
            entry.get("self_dual", True),
        )
        if ws.self_dual and not ws.is_closed_under_negation():
            raise ValueError(f"weight system {ws.name} is declared self-dual but is not")
        cat.systems[ws.name] = ws
    return cat
