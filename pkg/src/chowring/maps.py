"""Ring maps between presentations, the push-forward calculus, and torus-derived constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Mapping

from .chern import WeightCatalog, load_weight_catalog, total_chern
from .polyring import (
    QQ,
    NotDivisible,
    Polynomial,
    PolynomialRing,
    RingMismatchError,
    eliminate,
    exact_divide,
    parse_polynomial,
    substitute,
)
from .presentations import (
    GradedRingPresentation,
    PresentationCatalog,
    RingElement,
    load_presentation_catalog,
)
from .report import VerificationReport

DATA_DIR = Path(__file__).parent / "data"


class MapNotVerified(RuntimeError):
    """A ring map was used before verify_map passed on it."""


class RingMap:
    """Generator images from ``source`` into ``target``.

    Images are homogeneous of degree ``degree_scale`` times the generator's
    degree.  ``apply`` only works once the map is sealed, i.e. after every
    relation of the source has been checked to map to zero.
    """

    def __init__(
        self,
        name: str,
        source: GradedRingPresentation,
        target: GradedRingPresentation,
        images: Mapping[str, Polynomial | str],
        degree_scale: int = 1,
    ):
        self.name = name
        self.source = source
        self.target = target
        self.degree_scale = degree_scale
        S = target.poly_ring
        missing = [g for g, _ in source.generators if g not in images]
        if missing:
            raise ValueError(f"map {name}: no image for {', '.join(missing)}")
        self.images: dict[str, Polynomial] = {}
        for g, deg in source.generators:
            img = images[g]
            if isinstance(img, str):
                img = parse_polynomial(img, S)
            if img.ring != S:
                raise RingMismatchError(f"map {name}: image of {g} is not in {target.name}")
            if img and (not img.is_homogeneous() or img.degree() != deg * degree_scale):
                raise ValueError(
                    f"map {name}: image of {g} must be homogeneous of degree {deg * degree_scale}"
                )
            self.images[g] = target.normal_form(img)
        self.sealed = False
        self.report: VerificationReport | None = None

    def __repr__(self):
        state = "sealed" if self.sealed else "unverified"
        return f"<RingMap {self.name}: {self.source.name} -> {self.target.name} ({state})>"

    def image_of(self, p: Polynomial) -> Polynomial:
        if p.ring != self.source.poly_ring:
            raise RingMismatchError(f"{p} is not an element of {self.source.name}")
        return self.target.normal_form(substitute(p, self.images, self.target.poly_ring))

    def apply(self, e: RingElement | Polynomial | str) -> RingElement:
        if not self.sealed:
            raise MapNotVerified(f"map {self.name} has not passed verify_map")
        if isinstance(e, RingElement):
            if e.presentation is not self.source:
                raise RingMismatchError(f"element of {e.presentation.name}, map source is {self.source.name}")
            e = e.value
        elif isinstance(e, str):
            e = parse_polynomial(e, self.source.poly_ring)
        return RingElement(self.target, self.image_of(e))

    def __call__(self, e):
        return self.apply(e)

    def verify(self) -> VerificationReport:
        rep = VerificationReport(f"map {self.name}")
        for rel in self.source.relations:
            img = self.image_of(rel.poly)
            rep.add(
                f"{self.name}:{rel.id}",
                f"{self.source.name} relation {rel.id} under {self.name}",
                f"{rel.poly} maps to 0 in {self.target.name}",
                img.is_zero(),
                image=img.to_text(),
            )
        self.report = rep
        self.sealed = rep.passed
        return rep

    def seal(self) -> "RingMap":
        rep = self.verify()
        if not rep.passed:
            bad = ", ".join(c.id for c in rep.failures())
            raise MapNotVerified(f"map {self.name} fails on {bad}")
        return self

    def compose(self, inner: "RingMap") -> "RingMap":
        """self o inner."""
        if inner.target.poly_ring != self.source.poly_ring:
            raise RingMismatchError(f"cannot compose {self.name} after {inner.name}")
        images = {g: self.image_of(p) for g, p in inner.images.items()}
        return RingMap(
            f"{self.name}*{inner.name}", inner.source, self.target, images, self.degree_scale * inner.degree_scale
        )

    def disagreements(self, other: "RingMap") -> dict[str, tuple[str, str]]:
        """Generators on which two maps with the same source and target differ."""
        if other.source.poly_ring != self.source.poly_ring or other.target.poly_ring != self.target.poly_ring:
            raise RingMismatchError("maps have different source or target")
        return {
            g: (p.to_text(), other.images[g].to_text())
            for g, p in self.images.items()
            if p != other.images[g]
        }


def apply(m: RingMap, e) -> RingElement:
    return m.apply(e)


def verify_map(m: RingMap) -> VerificationReport:
    return m.verify()


def identity_map(pres: GradedRingPresentation) -> RingMap:
    return RingMap(f"id_{pres.name}", pres, pres, {g: pres.poly_ring.gen(g) for g, _ in pres.generators})


# ---- catalog ---------------------------------------------------------------


def image_from_spec(spec, target: GradedRingPresentation, weights: WeightCatalog) -> Polynomial:
    R = target.poly_ring
    if isinstance(spec, str):
        return parse_polynomial(spec, R)
    cs = total_chern(weights[spec["chern"]], R.coeffs)
    i = spec["index"]
    if i > len(cs):
        return R.zero
    return cs[i - 1].embed(R)


@dataclass
class MapCatalog:
    entries: dict[str, dict]
    presentations: PresentationCatalog
    weights: WeightCatalog
    _cache: dict = field(default_factory=dict)

    def _params_for(self, pres_name: str, params: Mapping[str, int]) -> dict[str, int]:
        declared = self.presentations.entries[pres_name].get("parameters", {})
        return {k: v for k, v in params.items() if k in declared}

    def get(self, name: str, seal: bool = True, **params: int) -> RingMap:
        if name not in self.entries:
            raise KeyError(f"no map named {name!r}")
        key = (name, tuple(sorted(params.items())), seal)
        if key not in self._cache:
            e = self.entries[name]
            src = self.presentations.get(e["source"], **self._params_for(e["source"], params))
            tgt = self.presentations.get(e["target"], **self._params_for(e["target"], params))
            images = {g: image_from_spec(s, tgt, self.weights) for g, s in e["images"].items()}
            m = RingMap(name, src, tgt, images, e.get("degree_scale", 1))
            if seal:
                m.seal()
            self._cache[key] = m
        return self._cache[key]

    def variants(self, name: str, seal: bool = True) -> list[RingMap]:
        src = self.entries[name]["source"]
        return [self.get(name, seal=seal, **p) for p in self.presentations.parameter_space(src)]

    def parameter_space(self, name: str) -> list[dict[str, int]]:
        return self.presentations.parameter_space(self.entries[name]["source"])


def load_map_catalog(
    path: str | Path | None = None,
    presentations: PresentationCatalog | None = None,
    weights: WeightCatalog | None = None,
) -> MapCatalog:
    path = Path(path) if path else DATA_DIR / "maps.json"
    data = json.loads(Path(path).read_text())
    return MapCatalog(
        {e["name"]: e for e in data["maps"]},
        presentations or load_presentation_catalog(),
        weights or load_weight_catalog(),
    )


@lru_cache(maxsize=1)
def default_catalog() -> MapCatalog:
    return load_map_catalog()


def g2_detectors(catalog: MapCatalog | None = None) -> list[Callable[[Polynomial], Polynomial]]:
    """Torus restriction over QQ and the mod-2 cycle map, as functions on ZZ[c2,c4,c6,c7]."""
    cat = catalog or default_catalog()
    torus, cycle = cat.get("res_G2_T"), cat.get("cycle_G2")
    return [torus.image_of, cycle.image_of]


# ---- G2 / SO4 derivations ----------------------------------------------------


def whitney_check(catalog: MapCatalog, name: str = "res_G2_SO4") -> VerificationReport:
    """Expand the Whitney product over SO4 and compare with the stated restriction formulas."""
    entry = catalog.entries[name]
    w = entry["whitney"]
    m = catalog.get(name)
    tgt = m.target
    extra = [(g["name"], g["degree"]) for g in w["extra_generators"]]
    names = [g for g, _ in tgt.generators] + [g for g, _ in extra]
    degs = [d for _, d in tgt.generators] + [d for _, d in extra]
    R = PolynomialRing(tgt.coeffs, names, degs)
    # Field's relations still hold with d3' adjoined (e.g. y2*d3 = 0 in c5)
    ext = GradedRingPresentation(
        f"{tgt.name}+d3p", tgt.coeffs, list(zip(names, degs)), [r.poly.embed(R) for r in tgt.relations]
    )
    total = R.one
    for f in w["factors"]:
        total = total * parse_polynomial(f, R)
    ident = {g: parse_polynomial(t, tgt.poly_ring) for g, t in w["identify"].items()}
    ident.update({g: tgt.poly_ring.gen(g) for g, _ in tgt.generators})
    rep = VerificationReport(f"whitney {name}")
    for cname, text in sorted(w["formulas"].items(), key=lambda kv: int(kv[0][1:])):
        k = int(cname[1:])
        formula = parse_polynomial(text, R)
        expanded = total.homogeneous_part(k)
        rep.add(
            f"whitney:{cname}",
            "Whitney formula c(V) = c(W) c(lambda2+) over SO4",
            f"degree-{k} part of the Whitney product equals {cname} = {formula}",
            ext.is_zero(expanded - formula),
            expanded=expanded.to_text(),
        )
        after = tgt.normal_form(substitute(formula, ident, tgt.poly_ring))
        expected = m.images.get(cname, tgt.poly_ring.zero)
        rep.add(
            f"whitney:{cname}:identified",
            "restriction G2 -> SO4 with d3' = d3",
            f"{cname} restricts to {expected} after d3' = d3",
            after == expected,
            image=after.to_text(),
        )
    return rep


def d3p_forced_check(catalog: MapCatalog, name: str = "res_G2_SO4") -> VerificationReport:
    """d3' lies in CH^3 BSO4 = F2<d3>; d3' = 0 would kill c7, whose cycle image w7^2 is nonzero."""
    entry = catalog.entries[name]
    m = catalog.get(name)
    tgt = m.target
    rep = VerificationReport("d3' = d3")
    basis3 = tgt.additive_basis(3)
    only_d3 = [str(b) for b in basis3] == ["d3 [GF(2)]"]
    rep.add(
        "d3p:degree3",
        "Field's presentation of CH*BSO4 in degree 3",
        "CH^3 BSO4 is F2<d3>, so d3' is 0 or d3",
        only_d3,
        basis=[str(b) for b in basis3],
    )
    formula = parse_polynomial(entry["whitney"]["formulas"]["c7"], _with_extra(tgt, entry))
    zero_img = substitute(formula, {**{g: tgt.poly_ring.gen(g) for g, _ in tgt.generators}, "d3p": tgt.poly_ring.zero}, tgt.poly_ring)
    cyc = catalog.get("cycle_G2")
    c7 = m.source.poly_ring.gen("c7")
    w = cyc.image_of(c7)
    rep.add(
        "d3p:nonzero",
        "cycle map of c7 in H*(BG2;F2)",
        "d3' = 0 would give c7 |-> 0 over SO4, but cycle(c7) = w7^2 != 0 and H*(BG2;F2) -> H*(BSO4;F2) is injective",
        zero_img.is_zero() and not w.is_zero(),
        c7_if_d3p_zero=zero_img.to_text(),
        cycle_c7=w.to_text(),
    )
    rep.add(
        "d3p:identified",
        "restriction G2 -> SO4 with d3' = d3",
        "the built-in restriction uses c7 |-> d4*d3",
        m.images["c7"] == tgt.poly_ring.gen("d4") * tgt.poly_ring.gen("d3"),
        image=m.images["c7"].to_text(),
    )
    return rep


def _with_extra(tgt: GradedRingPresentation, entry) -> PolynomialRing:
    extra = entry["whitney"]["extra_generators"]
    return PolynomialRing(
        tgt.coeffs,
        [g for g, _ in tgt.generators] + [g["name"] for g in extra],
        [d for _, d in tgt.generators] + [g["degree"] for g in extra],
    )


def pullback_derivation_check(catalog: MapCatalog, name: str = "pullback_Spin7_SL3") -> VerificationReport:
    """Compare the stated pullback images with Chern classes of the SL3 weight systems."""
    entry = catalog.entries[name]
    der = entry["derivation"]
    m = catalog.get(name, **catalog.parameter_space(name)[0])
    rep = VerificationReport(f"derivation {name}")
    gens = {}
    for x, (ws, i) in der["chern_generators"].items():
        gens[x] = total_chern(catalog.weights[ws])[i - 1]
    torus_ring = next(iter(gens.values())).ring
    for g, ws in sorted(der["weights"].items()):
        deg = dict(m.source.generators)[g]
        cs = total_chern(catalog.weights[ws])
        direct = cs[deg - 1] if deg <= len(cs) else torus_ring.zero
        stated = substitute(m.images[g].map_coefficients(QQ), {k: v.map_coefficients(QQ) for k, v in gens.items()})
        rep.add(
            f"pullback:{g}",
            "weights of the spin and vector representations restricted to SL3",
            f"{g} |-> {m.images[g]} agrees with c_{deg}({ws}) on the SL3 torus",
            stated == direct.map_coefficients(QQ),
            torus_image=direct.to_text(),
        )
    return rep


# ---- push-forward calculus ---------------------------------------------------


class PushForwardCalculus:
    """Classes i_*(p) for payloads p in Z(2)[x2,x3], valid modulo (c'8).

    i_* kills the image of the pullback (projection formula with i_*(1) = 0),
    which is the lattice spanned by x2^(2i) x3^(2j) and 2 x2^(2i+1) x3^(2j).
    So a payload is reduced by dropping (even, even) monomials, reading
    (odd, even) coefficients mod 2 and keeping the rest.  The pullback of
    every push-forward class is 0, so products of two such classes vanish.
    """

    def __init__(self, pullback: RingMap, a, b):
        self.pullback = pullback
        self.source = pullback.source
        self.payload_ring = pullback.target.poly_ring
        self.a = Fraction(a)
        self.b = Fraction(b)
        R, P = self.source.poly_ring, self.payload_ring
        x2, x3 = P.gen("x2"), P.gen("x3")
        pairs = {g: (R.gen(g), P.zero) for g, _ in self.source.generators}
        pairs["c4p"] = (R.gen("c4"), x3.scale(self.a))
        pairs["c6p"] = (R.gen("c6"), (x2 * x3).scale(self.b))
        pairs["zeta3"] = (R.zero, x2)
        self.pairs = pairs

    def reduce(self, payload: Polynomial) -> Polynomial:
        cr = payload.ring.coeffs
        i2, i3 = payload.ring.index("x2"), payload.ring.index("x3")
        out = {}
        for m, c in payload.terms.items():
            even2, even3 = m[i2] % 2 == 0, m[i3] % 2 == 0
            if even2 and even3:
                continue
            if even3:
                c = cr.residue(c, 2)
                if not c:
                    continue
            out[m] = c
        return payload.ring.from_dict(out)

    def element(self, payload: Polynomial | str) -> "PushForwardElement":
        if isinstance(payload, str):
            payload = parse_polynomial(payload, self.payload_ring)
        return PushForwardElement(self.reduce(payload), self)

    def zeta(self, k: int) -> "PushForwardElement":
        texts = {1: "1", 3: "x2", 4: "x3", 6: "x2*x3"}
        return self.element(texts[k])

    def multiply(self, z: "PushForwardElement", y) -> "PushForwardElement":
        if isinstance(y, RingElement):
            y = y.value
        elif isinstance(y, str):
            y = parse_polynomial(y, self.source.poly_ring)
        return self.element(z.payload * self.pullback.image_of(y))

    def split(self, X: Polynomial) -> tuple[Polynomial, "PushForwardElement"]:
        """X = base + i_*(payload) modulo (c'8), base free of c4p, c6p, zeta3."""
        R, P = self.source.poly_ring, self.payload_ring
        pull = self.pullback.image_of
        cache: dict[tuple[int, int], tuple[Polynomial, Polynomial]] = {}

        def mult(u, v):
            return u[0] * v[0], u[1] * pull(v[0]) + v[1] * pull(u[0])

        def power(i, e):
            if (i, e) not in cache:
                g = R.names[i]
                cache[(i, e)] = self.pairs[g] if e == 1 else mult(power(i, e - 1), self.pairs[g])
            return cache[(i, e)]

        base, payload = R.zero, P.zero
        for m, c in X.terms.items():
            acc = (R.one, P.zero)
            for i, e in enumerate(m):
                if e:
                    acc = mult(acc, power(i, e))
            base = base + acc[0].scale(c)
            payload = payload + acc[1].scale(c)
        return base, self.element(payload)

    def describe(self, payload_monomial: tuple) -> str:
        """Name a reduced payload monomial as a zeta class times c4, c6 powers (up to sign)."""
        P = self.payload_ring
        i, j = payload_monomial[P.index("x2")], payload_monomial[P.index("x3")]
        if j % 2:
            z, rest2, rest3 = ("zeta4", i, j - 1) if i % 2 == 0 else ("zeta6", i - 1, j - 1)
        else:
            z, rest2, rest3 = "zeta3", i - 1, j
        parts = [z]
        if rest2:
            parts.append(f"c4^{rest2 // 2}" if rest2 > 2 else "c4")
        if rest3:
            parts.append(f"c6^{rest3 // 2}" if rest3 > 2 else "c6")
        return "*".join(parts)

    def torsion_payloads(self, degree: int) -> list[tuple]:
        P = self.payload_ring
        i2, i3 = P.index("x2"), P.index("x3")
        return [m for m in P.monomials_of_degree(degree) if m[i2] % 2 == 1 and m[i3] % 2 == 0]


@dataclass(frozen=True)
class PushForwardElement:
    payload: Polynomial
    calculus: PushForwardCalculus = field(compare=False, repr=False)

    @property
    def degree(self) -> int | None:
        if not self.payload:
            return None
        return self.payload.degree() + 1

    def is_zero(self) -> bool:
        return self.payload.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: "PushForwardElement"):
        return self.calculus.element(self.payload + other.payload)

    def __sub__(self, other: "PushForwardElement"):
        return self.calculus.element(self.payload - other.payload)

    def __neg__(self):
        return self.calculus.element(-self.payload)

    def scale(self, c) -> "PushForwardElement":
        return self.calculus.element(self.payload.scale(c))

    def __mul__(self, y):
        return self.calculus.multiply(self, y)

    __rmul__ = __mul__

    def torsion_part(self) -> Polynomial:
        i3 = self.payload.ring.index("x3")
        return self.payload.ring.from_dict({m: c for m, c in self.payload.terms.items() if m[i3] % 2 == 0})

    def free_part(self) -> Polynomial:
        return self.payload - self.torsion_part()

    def __str__(self):
        return f"i_*({self.payload.to_text()})"


def pushforward_multiply(z: PushForwardElement, y) -> PushForwardElement:
    return z.calculus.multiply(z, y)


@dataclass
class RelationAnalysis:
    """How a relation X of the Spin7 presentation is certified.

    torus and G2 images must vanish.  Modulo (c'8), X = base + i_*(payload);
    when base is 0 the payload must reduce to 0, otherwise base lies in the
    image of i_* and only the torsion payloads of that degree stay open.
    Lifting from mod (c'8) to an identity leaves c'8 times torsion classes
    of degree deg - 8 undetermined.
    """

    relation_id: str
    degree: int
    torus_image: Polynomial
    g2_image: Polynomial
    base: Polynomial
    payload: PushForwardElement
    payload_ambiguity: list[str]
    c8_ambiguity: list[str]

    @property
    def holds_mod_c8(self) -> bool:
        if not (self.torus_image.is_zero() and self.g2_image.is_zero()):
            return False
        if self.base:
            # base = i_*(q) with q's free part fixed by the torus; torsion part is listed as ambiguity
            return True
        return self.payload.is_zero()

    @property
    def ambiguity(self) -> list[str]:
        return self.payload_ambiguity + self.c8_ambiguity

    def witness(self) -> dict:
        return {
            "degree": self.degree,
            "torus_image": self.torus_image.to_text(),
            "g2_image": self.g2_image.to_text(),
            "base_mod_c8": self.base.to_text(),
            "payload": str(self.payload),
            "undetermined_torsion": self.ambiguity,
        }


def analyze_relation(
    X: Polynomial,
    relation_id: str,
    calculus: PushForwardCalculus,
    torus: RingMap,
    to_g2: RingMap,
) -> RelationAnalysis:
    pres = calculus.source
    d = X.homogeneous_degree()
    if d is None:
        raise ValueError(f"relation {relation_id} is not homogeneous")
    base, payload = calculus.split(X)
    base = eliminate(base, ["c8p"])
    payload_amb = []
    if base:
        payload_amb = [calculus.describe(m) for m in calculus.torsion_payloads(d - 1)]
    c8_amb = []
    if d >= 8:
        c8_amb = [
            "c8p*" + str(b).split(" [")[0] for b in pres.additive_basis(d - 8) if b.tag == "torsion"
        ]
    return RelationAnalysis(
        relation_id, d, torus.image_of(X), to_g2.image_of(X), base, payload, payload_amb, c8_amb
    )


# ---- constants from the torus ------------------------------------------------


def _scalar(q: Polynomial):
    if any(any(m) for m in q.terms):
        raise NotDivisible(f"quotient {q} is not a constant")
    return q.constant_term()


def torus_chern_classes(weights: WeightCatalog | None = None) -> dict[str, Polynomial]:
    """c_i (vector) and c'_i (spin) on the Spin7 torus over QQ."""
    w = weights or load_weight_catalog()
    V = total_chern(w["V_Spin7"], QQ)
    D = total_chern(w["Delta_Spin7"], QQ)
    out = {f"c{i}": V[i - 1] for i in range(1, 8)}
    out.update({f"c{i}p": D[i - 1] for i in range(1, 9)})
    return out


@dataclass
class ConstantDerivation:
    values: dict[str, Fraction | int]
    identities: dict[str, str]

    def __getitem__(self, k):
        return self.values[k]


def derive_constants(weights: WeightCatalog | None = None) -> ConstantDerivation:
    """Solve for every numeric constant of the Spin7 multiplication table on the torus."""
    t = torus_chern_classes(weights)
    c2p, c4p, c6p, c8p = t["c2p"], t["c4p"], t["c6p"], t["c8p"]
    c4, c6 = t["c4"], t["c6"]
    d4, d6 = c4p - c4, c6p - c6
    vals: dict[str, Fraction | int] = {}
    ids: dict[str, str] = {}

    vals["coeff6"] = _scalar(exact_divide(c2p * c2p - c4.scale(4), d4))
    ids["coeff6"] = "c'2^2 - 4c4 = k (c'4 - c4)"
    vals["coeff7"] = _scalar(exact_divide(c2p * d4, d6))
    ids["coeff7"] = "c'2 (c'4 - c4) = k (c'6 - c6)"

    lhs8 = c2p * d6
    lam = _scalar(exact_divide(eliminate(lhs8, ["y", "z"]), eliminate(c8p, ["y", "z"])))
    vals["coeff8_c8"] = lam
    vals["coeff8_c4"] = _scalar(exact_divide(lhs8 - c8p.scale(lam), c4 * d4))
    ids["coeff8"] = (
        f"mod (y,z): {eliminate(lhs8, ['y', 'z'])} = lambda*{eliminate(c8p, ['y', 'z'])}; "
        "then c'2 (c'6 - c6) - lambda c'8 = mu c4 (c'4 - c4)"
    )
    vals["coeff10"] = _scalar(exact_divide(d4 * d4, c8p))
    vals["coeff11"] = _scalar(exact_divide(d4 * d6, c2p * c8p))

    lhs13 = d6 * d6
    l0 = eliminate(lhs13, ["y", "z"])
    r0 = eliminate(c8p * c4p, ["y", "z"])
    A = _scalar(exact_divide(l0, r0))
    (m0, k0), = r0.terms.items()
    mono = r0.ring.monomial(m0).to_text().removeprefix("1*")
    ids["A"] = f"{l0.to_text()} = {k0}*A*{mono}"
    vals["A"] = A
    P0 = eliminate(lhs13 - (c8p * c4p).scale(A), ["z"])
    P1 = eliminate(c8p * c4, ["z"])
    B = _scalar(exact_divide(P0, P1))
    vals["B"] = B
    ids["B"] = f"({P0.to_text()}) - B*({P1.to_text()}) = 0"
    full = lhs13 - c8p * (c4p.scale(A) + c4.scale(B))
    ids["coeff13_exact"] = f"residual with A, B substituted: {full.to_text()}"

    # c'2 (c'4 - c4) = 2a (c'6 - c6) and c'2 (c'6 - c6) = (2b/a) c4 (c'4 - c4) + lambda c'8
    a = Fraction(vals["coeff7"]) / 2
    b = Fraction(vals["coeff8_c4"]) * a / 2
    vals["a"] = a.numerator if a.denominator == 1 else a
    vals["b"] = b.numerator if b.denominator == 1 else b
    ids["a"] = f"2a = {vals['coeff7']}"
    ids["b"] = f"2b/a = {vals['coeff8_c4']}"
    return ConstantDerivation(vals, ids)


def spin7_calculus(catalog: MapCatalog, a, b, **params) -> PushForwardCalculus:
    return PushForwardCalculus(catalog.get("pullback_Spin7_SL3", **params), a, b)
