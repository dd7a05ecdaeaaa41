"""Finitely presented graded commutative rings, rewriting normal forms, bases, membership."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .polyring import (
    CoefficientRing,
    Polynomial,
    PolynomialRing,
    RingMismatchError,
    parse_polynomial,
)

DATA_DIR = Path(__file__).parent / "data"


class NotInIdeal(ValueError):
    """The polynomial does not vanish in the presented ring."""


@dataclass(frozen=True)
class Relation:
    id: str
    poly: Polynomial


@dataclass(frozen=True)
class BasisFamily:
    tag: str  # "free" or "torsion"
    polynomial_in: tuple[str, ...]
    leaders: tuple[str, ...] = ()
    power_of: str | None = None
    min_power: int = 1
    modulus: int | None = None


@dataclass(frozen=True)
class BasisElement:
    monomial: Polynomial
    tag: str
    modulus: int | None = None

    @property
    def coefficient_ring(self) -> str:
        if self.tag == "torsion":
            return f"GF({self.modulus})"
        return str(self.monomial.ring.coeffs)

    def __str__(self):
        m = self.monomial.to_text().removeprefix("1*")
        return f"{m} [{self.coefficient_ring}]"


class GradedRingPresentation:
    """Generators with Chow degrees and homogeneous relations.

    Relations with a unit leading coefficient become oriented rewrite rules
    (leading monomial -> lower terms).  A single-term relation ``k*m`` with
    ``k`` a non-unit integer marks ``m`` as k-torsion: coefficients of any
    monomial divisible by ``m`` are read mod k.
    """

    def __init__(
        self,
        name: str,
        ring: CoefficientRing,
        generators: Sequence[tuple[str, int]],
        relations: Sequence[Relation | Polynomial | str] = (),
        basis: Sequence[BasisFamily] | None = None,
        order_weights: Sequence[int] | None = None,
        parameters: Mapping[str, int] | None = None,
    ):
        self.name = name
        self.coeffs = ring
        self.generators = tuple((n, d) for n, d in generators)
        self.poly_ring = PolynomialRing(ring, [n for n, _ in generators], [d for _, d in generators])
        self.order_weights = tuple(order_weights) if order_weights else (0,) * len(self.generators)
        self.parameters = dict(parameters or {})
        rels = []
        for i, r in enumerate(relations):
            if isinstance(r, str):
                r = Relation(f"r{i + 1}", parse_polynomial(r, self.poly_ring))
            elif isinstance(r, Polynomial):
                r = Relation(f"r{i + 1}", r)
            if r.poly.ring != self.poly_ring:
                raise RingMismatchError(f"relation {r.id} not in the ring of {name}")
            if not r.poly.is_homogeneous():
                raise ValueError(f"relation {r.id} of {name} is not homogeneous")
            rels.append(r)
        self.relations = tuple(rels)
        self.basis = tuple(basis) if basis is not None else None
        self.rules: list[tuple[tuple, Polynomial, str]] = []
        self.torsion: list[tuple[tuple, int, str]] = []
        self._orient()

    def __repr__(self):
        params = "".join(f", {k}={v}" for k, v in sorted(self.parameters.items()))
        return f"<GradedRingPresentation {self.name}{params}>"

    # ordering & orientation

    def order_key(self, m: tuple):
        R = self.poly_ring
        return (R.weighted_degree(m), sum(w * e for w, e in zip(self.order_weights, m)), m)

    def leading_term(self, p: Polynomial):
        return max(p.terms.items(), key=lambda t: self.order_key(t[0]))

    def _orient(self):
        cr = self.coeffs
        for rel in self.relations:
            p = rel.poly
            if p.is_zero():
                continue
            lm, lc = self.leading_term(p)
            if cr.is_unit(lc):
                rest = p - self.poly_ring.monomial(lm, lc)
                self.rules.append((lm, rest.scale(cr.divide(-1, lc)), rel.id))
            elif len(p) == 1 and Fraction(lc).denominator == 1:
                self.torsion.append((lm, abs(int(lc)), rel.id))
            else:
                raise ValueError(f"cannot orient relation {rel.id} of {self.name}: leading coefficient {lc}")

    # elements

    def element(self, value: Polynomial | str | int) -> "RingElement":
        if isinstance(value, str):
            value = parse_polynomial(value, self.poly_ring)
        elif isinstance(value, (int, Fraction)):
            value = self.poly_ring.constant(value)
        return RingElement(self, self.normal_form(value))

    def gen(self, name: str) -> "RingElement":
        return self.element(self.poly_ring.gen(name))

    def _torsion_modulus(self, m: tuple) -> int | None:
        mod = None
        for t, k, _ in self.torsion:
            if all(a >= b for a, b in zip(m, t)):
                mod = k if mod is None else _gcd(mod, k)
        return mod

    def _find_rule(self, m: tuple):
        for lhs, rhs, _ in self.rules:
            if all(a >= b for a, b in zip(m, lhs)):
                return lhs, rhs
        return None

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Fixed point of the oriented rules and torsion reductions."""
        if p.ring != self.poly_ring:
            raise RingMismatchError(f"{p.ring!r} is not the ring of {self.name}")
        if not self.rules and not self.torsion:
            return p
        cr = self.coeffs
        R = self.poly_ring
        work = dict(p.terms)
        out: dict[tuple, object] = {}
        key = self.order_key
        while work:
            m = max(work, key=key)
            c = work.pop(m)
            if c == 0:
                continue
            hit = self._find_rule(m)
            if hit is not None:
                lhs, rhs = hit
                cof = tuple(a - b for a, b in zip(m, lhs))
                for mm, cc in rhs.terms.items():
                    t = tuple(a + b for a, b in zip(mm, cof))
                    work[t] = cr.normalize(work.get(t, 0) + c * cc)
                continue
            mod = self._torsion_modulus(m)
            if mod is not None:
                c = cr(cr.residue(c, mod))
                if c == 0:
                    continue
            out[m] = c
        return R.from_dict(out)

    def is_zero(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    # additive structure

    def additive_basis(self, degree: int) -> list[BasisElement]:
        if self.basis is None:
            raise ValueError(f"presentation {self.name} has no declared basis description")
        R = self.poly_ring
        out: list[BasisElement] = []
        for fam in self.basis:
            sub = PolynomialRing(R.coeffs, fam.polynomial_in, [R.degrees[R.index(n)] for n in fam.polynomial_in])
            leaders: list[Polynomial] = []
            if fam.power_of is not None:
                g = R.gen(fam.power_of)
                k = fam.min_power
                while k * R.degrees[R.index(fam.power_of)] <= degree:
                    leaders.append(g ** k)
                    k += 1
            for text in fam.leaders:
                leaders.append(parse_polynomial(text, R))
            for lead in leaders:
                rest = degree - lead.degree()
                for e in sub.monomials_of_degree(rest):
                    mono = lead * R.monomial(dict(zip(fam.polynomial_in, e)))
                    out.append(BasisElement(mono, fam.tag, fam.modulus))
        return out

    def irreducible_monomials(self, degree: int) -> list[tuple]:
        lhss = [lhs for lhs, _, _ in self.rules]
        return [
            m for m in self.poly_ring.monomials_of_degree(degree)
            if not any(all(a >= b for a, b in zip(m, l)) for l in lhss)
        ]

    def critical_pairs(self) -> list[tuple[str, Polynomial, Polynomial]]:
        """One-step reductions of every rule/rule and rule/torsion overlap."""
        R = self.poly_ring
        out = []
        for (l1, r1, id1), (l2, r2, id2) in itertools.combinations(self.rules, 2):
            if not any(a and b for a, b in zip(l1, l2)):
                continue  # coprime leading monomials always resolve
            lcm = tuple(max(a, b) for a, b in zip(l1, l2))
            a = r1 * R.monomial(tuple(x - y for x, y in zip(lcm, l1)))
            b = r2 * R.monomial(tuple(x - y for x, y in zip(lcm, l2)))
            out.append((f"{id1}/{id2}", a, b))
        for l1, r1, id1 in self.rules:
            for t, k, idt in self.torsion:
                lcm = tuple(max(a, b) for a, b in zip(l1, t))
                a = (r1 * R.monomial(tuple(x - y for x, y in zip(lcm, l1)))).scale(k)
                out.append((f"{id1}/{idt}", a, R.zero))
        return out

    def local_confluence_failures(self) -> list[str]:
        bad = []
        for label, a, b in self.critical_pairs():
            na, nb = self.normal_form(a), self.normal_form(b)
            if na != nb:
                bad.append(f"{label}: {na} != {nb}")
        return bad


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class RingElement:
    """An element of a presented ring, always stored in normal form."""

    __slots__ = ("presentation", "value")

    def __init__(self, presentation: GradedRingPresentation, value: Polynomial):
        self.presentation = presentation
        self.value = value

    def _other(self, other) -> Polynomial:
        if isinstance(other, RingElement):
            if other.presentation is not self.presentation:
                raise RingMismatchError("elements of different presentations")
            return other.value
        if isinstance(other, Polynomial):
            return other
        return self.presentation.poly_ring.constant(other)

    def _wrap(self, p: Polynomial) -> "RingElement":
        return RingElement(self.presentation, self.presentation.normal_form(p))

    def __add__(self, other):
        return self._wrap(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.value)

    def __neg__(self):
        return self._wrap(-self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._other(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.presentation.element(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (RingElement, Polynomial, int, Fraction)):
            return self.presentation.normal_form(self.value - self._other(other)).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.presentation.name, self.value))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def degree(self) -> int | None:
        return self.value.homogeneous_degree()

    def __str__(self):
        return self.value.to_text()

    def __repr__(self):
        return f"RingElement({self.presentation.name}: {self.value.to_text()})"


def normal_form(e: RingElement) -> RingElement:
    return RingElement(e.presentation, e.presentation.normal_form(e.value))


def additive_basis(pres: GradedRingPresentation, degree: int) -> list[BasisElement]:
    return pres.additive_basis(degree)


# ---- catalog ---------------------------------------------------------------


def _instantiate(entry: Mapping, params: Mapping[str, int]) -> GradedRingPresentation:
    ring = CoefficientRing.parse(entry["ring"])
    gens = [(g["name"], g["degree"]) for g in entry["generators"]]
    R = PolynomialRing(ring, [n for n, _ in gens], [d for _, d in gens])
    rels = []
    for i, r in enumerate(entry.get("relations", [])):
        rid, text = (r["id"], r["poly"]) if isinstance(r, Mapping) else (f"r{i + 1}", r)
        for k, v in params.items():
            text = text.replace("{" + k + "}", str(v))
        rels.append(Relation(rid, parse_polynomial(text, R)))
    basis = None
    if "basis_description" in entry:
        basis = [
            BasisFamily(
                tag=b["tag"],
                polynomial_in=tuple(b["polynomial_in"]),
                leaders=tuple(b.get("leaders", ())),
                power_of=b.get("power_of"),
                min_power=b.get("min_power", 1),
                modulus=b.get("modulus"),
            )
            for b in entry["basis_description"]
        ]
    return GradedRingPresentation(
        entry["name"], ring, gens, rels, basis, entry.get("order_weights"), params
    )


@dataclass
class PresentationCatalog:
    entries: dict[str, Mapping] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict)

    def parameter_space(self, name: str) -> list[dict[str, int]]:
        spec = self.entries[name].get("parameters", {})
        keys = sorted(spec)
        return [dict(zip(keys, vals)) for vals in itertools.product(*(spec[k] for k in keys))]

    def get(self, name: str, **params: int) -> GradedRingPresentation:
        if name not in self.entries:
            raise KeyError(f"no presentation named {name!r}")
        declared = self.entries[name].get("parameters", {})
        if set(params) != set(declared):
            raise ValueError(f"{name} needs parameters {sorted(declared)}, got {sorted(params)}")
        key = (name, tuple(sorted(params.items())))
        if key not in self._cache:
            self._cache[key] = _instantiate(self.entries[name], params)
        return self._cache[key]

    def __getitem__(self, name: str) -> GradedRingPresentation:
        return self.get(name)

    def variants(self, name: str) -> list[GradedRingPresentation]:
        return [self.get(name, **p) for p in self.parameter_space(name)]

    def add(self, entry: Mapping):
        self.entries[entry["name"]] = entry
        self._cache = {k: v for k, v in self._cache.items() if k[0] != entry["name"]}


def load_presentation_catalog(path: str | Path | None = None) -> PresentationCatalog:
    path = Path(path) if path else DATA_DIR / "presentations.json"
    data = json.loads(Path(path).read_text())
    cat = PresentationCatalog()
    for entry in data["presentations"]:
        cat.add(entry)
    return cat


# ---- ideal membership over a field (Buchberger) ----------------------------


def _lt(p: Polynomial):
    return p.leading_term()


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _monic(p: Polynomial) -> Polynomial:
    _, lc = _lt(p)
    return p.scale(p.ring.coeffs.inverse(lc))


def reduce_with_trace(p: Polynomial, basis: Sequence[Polynomial]) -> tuple[Polynomial, list[tuple[int, Polynomial]]]:
    """Full reduction of p by ``basis``; returns (remainder, [(basis index, multiplier)])."""
    R = p.ring
    cr = R.coeffs
    trace: list[tuple[int, Polynomial]] = []
    rem = R.zero
    f = p
    lts = [_lt(g) for g in basis]
    while f:
        m, c = _lt(f)
        for i, (gm, gc) in enumerate(lts):
            if _divides(gm, m):
                q = R.monomial(tuple(a - b for a, b in zip(m, gm)), cr.divide(c, gc))
                f = f - q * basis[i]
                trace.append((i, q))
                break
        else:
            t = R.monomial(m, c)
            rem = rem + t
            f = f - t
    return rem, trace


def groebner_basis(gens: Sequence[Polynomial]) -> list[Polynomial]:
    """Reduced Groebner basis under graded-lex (field coefficients only)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    R = gens[0].ring
    if not R.coeffs.is_field:
        raise ValueError(f"Groebner bases need a field, got {R.coeffs}")
    G = [_monic(g) for g in gens]
    pairs = list(itertools.combinations(range(len(G)), 2))
    while pairs:
        i, j = pairs.pop()
        (mi, _), (mj, _) = _lt(G[i]), _lt(G[j])
        if not any(a and b for a, b in zip(mi, mj)):
            continue
        lcm = tuple(max(a, b) for a, b in zip(mi, mj))
        s = G[i] * R.monomial(tuple(a - b for a, b in zip(lcm, mi))) - G[j] * R.monomial(
            tuple(a - b for a, b in zip(lcm, mj))
        )
        r, _ = reduce_with_trace(s, G)
        if r:
            G.append(_monic(r))
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    # minimalize and reduce
    G = [g for i, g in enumerate(G) if not any(_divides(_lt(h)[0], _lt(g)[0]) and (j < i or _lt(h)[0] != _lt(g)[0]) for j, h in enumerate(G) if j != i)]
    reduced = []
    for i, g in enumerate(G):
        r, _ = reduce_with_trace(g - R.monomial(*_lt(g)), G[:i] + G[i + 1:])
        reduced.append(R.monomial(*_lt(g)) + r)
    return sorted(reduced, key=lambda g: R.order_key(_lt(g)[0]))


@dataclass
class MembershipResult:
    member: bool
    remainder: Polynomial
    basis: list[Polynomial]
    trace: list[tuple[int, Polynomial]]

    def __bool__(self):
        return self.member

    def certificate(self) -> list[str]:
        return [f"- ({q}) * g{i}" for i, q in self.trace]


def ideal_membership(p: Polynomial, ideal_gens: Sequence[Polynomial]) -> MembershipResult:
    if not p.ring.coeffs.is_field:
        raise ValueError(f"ideal membership needs field coefficients, got {p.ring.coeffs}")
    G = groebner_basis(ideal_gens)
    rem, trace = reduce_with_trace(p, G)
    return MembershipResult(rem.is_zero(), rem, G, trace)


# ---- completeness of the G2 presentation ------------------------------------


@dataclass
class MembershipVerdict:
    """Explicit P = A*(C2^2 - 4C4) + B*(C2*C7) + C*(2*C7) over ZZ."""

    polynomial: Polynomial
    a: Polynomial
    b: Polynomial
    c: Polynomial
    steps: list[str]
    verified: bool

    def as_dict(self) -> dict:
        return {
            "P": self.polynomial.to_text(),
            "A (times C2^2-4C4)": self.a.to_text(),
            "B (times C2*C7)": self.b.to_text(),
            "C (times 2*C7)": self.c.to_text(),
            "verified": self.verified,
        }


def completeness_check_g2(
    P: Polynomial,
    max_degree: int,
    detectors: Sequence[Callable[[Polynomial], Polynomial]] | None = None,
) -> MembershipVerdict:
    """Algorithmic form of the two-detector completeness argument for CH*BG2.

    ``detectors`` maps P to its torus restriction (over QQ) and its mod-2
    cycle image; both must vanish or NotInIdeal is raised.
    """
    R = P.ring
    if R.names != ("c2", "c4", "c6", "c7"):
        raise RingMismatchError(f"expected ZZ[c2,c4,c6,c7], got {R!r}")
    if R.coeffs.kind != "ZZ":
        raise RingMismatchError("completeness check runs over ZZ")
    if not P.is_homogeneous():
        raise ValueError("P must be homogeneous")
    if P.degree() > max_degree:
        raise ValueError(f"P has degree {P.degree()} > max_degree {max_degree}")
    if detectors is None:
        from .maps import g2_detectors

        detectors = g2_detectors()
    for det in detectors:
        img = det(P)
        if not img.is_zero():
            raise NotInIdeal(f"detector image {img} is nonzero")

    c2, c4, c6, c7 = R.gens
    steps: list[str] = []
    i2, i7 = 0, 3
    b_terms: dict[tuple, int] = {}
    c_terms: dict[tuple, int] = {}
    rest: dict[tuple, int] = {}
    for m, c in P.terms.items():
        if m[i2] == 0 and c % 2:
            raise NotInIdeal(f"C2-free coefficient {c} is odd although the mod-2 detector vanishes")
        if m[i7] == 0:
            rest[m] = c
        elif m[i2] > 0:
            b_terms[(m[0] - 1, m[1], m[2], m[3] - 1)] = c
        else:
            c_terms[(m[0], m[1], m[2], m[3] - 1)] = c // 2
    B, C = R.from_dict(b_terms), R.from_dict(c_terms)
    Pp = R.from_dict(rest)
    steps.append(f"split off C7 terms: B = {B}, C = {C}")

    # long division by 4C4 - C2^2 over QQ, eliminating C4
    from .polyring import QQ

    RQ = R.with_coeffs(QQ)
    divisor_q = (c4.scale(4) - c2 * c2).map_coefficients(QQ)
    rem = Pp.map_coefficients(QQ)
    A_q = RQ.zero
    while True:
        hit = next(((m, c) for m, c in rem.sorted_terms() if m[1] > 0), None)
        if hit is None:
            break
        m, c = hit
        q = RQ.monomial((m[0], m[1] - 1, m[2], m[3]), Fraction(c) / 4)
        A_q = A_q + q
        rem = rem - q * divisor_q
    steps.append(f"QQ-division by 4C4 - C2^2: remainder {rem}")
    if not rem.is_zero():
        raise NotInIdeal(f"C4-free remainder {rem} is nonzero in QQ[c2,c6]")

    # second division: C2^2 - 4C4 is monic in C2, so the quotient is integral
    divisor = c2 * c2 - c4.scale(4)
    rem = Pp
    A = R.zero
    while True:
        hit = next(((m, c) for m, c in rem.sorted_terms() if m[0] >= 2), None)
        if hit is None:
            break
        m, c = hit
        q = R.monomial((m[0] - 2, m[1], m[2], m[3]), c)
        A = A + q
        rem = rem - q * divisor
    steps.append(f"ZZ-division by C2^2 - 4C4 (monic in C2): quotient {A}, remainder {rem}")
    if not rem.is_zero() or A.map_coefficients(QQ) != -A_q:
        raise NotInIdeal(f"integral division left remainder {rem}")
    ok = P == A * divisor + B * (c2 * c7) + C * c7.scale(2)
    return MembershipVerdict(P, A, B, C, steps, ok)
