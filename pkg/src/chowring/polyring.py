"""Exact sparse multivariate (and Laurent) polynomials over small coefficient rings.

Terms live in a dict ``exponent tuple -> coefficient``.  Zero coefficients are
never stored, so two polynomials over the same ring are equal iff their dicts
are.  The artifact-wide term order is graded-lex: weighted (Chow) degree
first, then lexicographic on the exponent vector in declared variable order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence


class RingMismatchError(ValueError):
    pass


class NotDivisible(ArithmeticError):
    """Raised when an exact division has no solution in the ring."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """One of ZZ, QQ, GF(p) or ZZ_(p) (integers localized at p).

    Elements are plain Python numbers: ``int`` whenever integral, ``Fraction``
    otherwise; GF(p) elements are ints in ``range(p)``.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "GF", "ZZ_loc"):
            raise ValueError(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind in ("GF", "ZZ_loc"):
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"{self.kind} needs a prime, got {self.p!r}")

    def __str__(self):
        if self.kind == "GF":
            return f"GF({self.p})"
        if self.kind == "ZZ_loc":
            return f"ZZ_({self.p})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        text = text.strip()
        if text in ("ZZ", "QQ"):
            return cls(text)
        m = re.fullmatch(r"GF\((\d+)\)", text)
        if m:
            return cls("GF", int(m.group(1)))
        m = re.fullmatch(r"ZZ_\((\d+)\)", text)
        if m:
            return cls("ZZ_loc", int(m.group(1)))
        raise ValueError(f"cannot parse coefficient ring {text!r}")

    @property
    def is_field(self) -> bool:
        return self.kind in ("QQ", "GF")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "GF" else 0

    # element handling

    def __call__(self, value) -> int | Fraction:
        """Coerce ``value`` (int, Fraction, or 'a/b' string) into this ring."""
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, Fraction) and value.denominator == 1:
            value = value.numerator
        if self.kind == "GF":
            if isinstance(value, Fraction):
                den = value.denominator % self.p
                if den == 0:
                    raise ValueError(f"{value} has no image in {self}")
                return value.numerator * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, int):
            return value
        if not isinstance(value, Fraction):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        if self.kind == "ZZ":
            raise ValueError(f"{value} is not an integer")
        if self.kind == "ZZ_loc" and value.denominator % self.p == 0:
            raise ValueError(f"{value} has denominator divisible by {self.p}; not in {self}")
        return value

    def normalize(self, c):
        # results of +,* on valid elements; only GF and integral Fractions need fixing
        if self.kind == "GF":
            return c % self.p
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def convert(self, value, source: "CoefficientRing"):
        if source == self:
            return value
        if source.kind == "GF" and not (self.kind == "GF" and self.p == source.p):
            raise RingMismatchError(f"no coefficient map {source} -> {self}")
        return self(value)

    def is_unit(self, a) -> bool:
        if a == 0:
            return False
        if self.is_field:
            return True
        if self.kind == "ZZ":
            return a in (1, -1)
        return Fraction(a).numerator % self.p != 0

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotDivisible(f"{a} is not a unit in {self}")
        if self.kind == "GF":
            return pow(a, -1, self.p)
        return self.normalize(1 / Fraction(a))

    def divide(self, a, b):
        """Exact quotient a/b in the ring, or NotDivisible."""
        if b == 0:
            raise ZeroDivisionError("division by zero coefficient")
        if self.kind == "GF":
            return a * pow(b, -1, self.p) % self.p
        q = Fraction(a) / Fraction(b)
        if self.kind == "ZZ" and q.denominator != 1:
            raise NotDivisible(f"{a}/{b} is not an integer")
        if self.kind == "ZZ_loc" and q.denominator % self.p == 0:
            raise NotDivisible(f"{a}/{b} is not in {self}")
        return self.normalize(q)

    def residue(self, a, modulus: int) -> int:
        """Image of ``a`` in Z/modulus (used for torsion generators)."""
        if self.kind == "GF":
            if modulus % self.p:
                raise ValueError(f"cannot reduce {self} elements mod {modulus}")
            return a % self.p
        f = Fraction(a)
        if gcd(f.denominator, modulus) != 1:
            raise ValueError(f"{a} has no residue mod {modulus}")
        return f.numerator * pow(f.denominator, -1, modulus) % modulus

    def pair(self, a) -> tuple[int, int]:
        f = Fraction(a)
        return f.numerator, f.denominator

    def format(self, a) -> str:
        return str(Fraction(a))


ZZ = CoefficientRing("ZZ")
QQ = CoefficientRing("QQ")


def GF(p: int) -> CoefficientRing:
    return CoefficientRing("GF", p)


def ZZ_localized(p: int) -> CoefficientRing:
    return CoefficientRing("ZZ_loc", p)


class PolynomialRing:
    """Coefficient ring + ordered named variables with positive Chow degrees."""

    def __init__(
        self,
        coeffs: CoefficientRing,
        names: Sequence[str],
        degrees: Sequence[int] | None = None,
        laurent: bool = False,
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        degrees = tuple(degrees) if degrees is not None else (1,) * len(names)
        if len(degrees) != len(names):
            raise ValueError("one degree per variable required")
        if any(d <= 0 for d in degrees):
            raise ValueError("variable degrees must be positive")
        self.coeffs = coeffs
        self.names = names
        self.degrees = degrees
        self.laurent = laurent
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self._key = (coeffs, names, degrees, laurent)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        vs = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        kind = "Laurent" if self.laurent else "poly"
        return f"PolynomialRing({self.coeffs}, [{vs}], {kind})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in {self!r}") from None

    def __contains__(self, name):
        return name in self._index

    @property
    def zero(self) -> "Polynomial":
        return Polynomial._make(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.coeffs(c)
        return Polynomial._make(self, {(0,) * self.nvars: c} if c != 0 else {})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial._make(self, {tuple(e): self.coeffs(1)})

    @property
    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps: Sequence[int] | Mapping[str, int], coeff=1) -> "Polynomial":
        if isinstance(exps, Mapping):
            e = [0] * self.nvars
            for n, k in exps.items():
                e[self.index(n)] = k
            exps = e
        return self.from_dict({tuple(exps): coeff})

    def from_dict(self, terms: Mapping[tuple, object]) -> "Polynomial":
        out: dict[tuple, object] = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.nvars:
                raise ValueError(f"monomial {m} has wrong length for {self!r}")
            if not self.laurent and any(e < 0 for e in m):
                raise ValueError(f"negative exponent in polynomial mode: {m}")
            c = self.coeffs(c)
            if m in out:
                c = self.coeffs.normalize(out[m] + c)
            if c == 0:
                out.pop(m, None)
            else:
                out[m] = c
        return Polynomial._make(self, out)

    def weighted_degree(self, m: tuple) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def order_key(self, m: tuple):
        return (self.weighted_degree(m), m)

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """All exponent vectors of weighted degree d (polynomial mode), grlex descending."""
        out: list[tuple] = []

        def rec(i, remaining, prefix):
            if i == self.nvars:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            for e in range(remaining // self.degrees[i], -1, -1):
                prefix.append(e)
                rec(i + 1, remaining - e * self.degrees[i], prefix)
                prefix.pop()

        if d >= 0:
            rec(0, d, [])
        return out

    def with_coeffs(self, coeffs: CoefficientRing) -> "PolynomialRing":
        return PolynomialRing(coeffs, self.names, self.degrees, self.laurent)

    def drop(self, names: Iterable[str]) -> "PolynomialRing":
        names = set(names)
        keep = [i for i, n in enumerate(self.names) if n not in names]
        return PolynomialRing(
            self.coeffs,
            [self.names[i] for i in keep],
            [self.degrees[i] for i in keep],
            self.laurent,
        )

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


class Polynomial:
    """Immutable sparse polynomial; use ``PolynomialRing`` to build one."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[tuple, object] | None = None):
        p = ring.from_dict(terms or {})
        self.ring = ring
        self.terms = p.terms
        self._hash = None

    @classmethod
    def _make(cls, ring, terms):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # coercion

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.coeffs.normalize
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = norm(out[m] + c)
                if s == 0:
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial._make(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.coeffs.normalize
        return Polynomial._make(self.ring, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.coeffs.normalize
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[tuple, object] = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = tuple([x + y for x, y in zip(m1, m2)])
                out[m] = get(m, 0) + c1 * c2
        clean = {}
        for m, c in out.items():
            c = norm(c)
            if c != 0:
                clean[m] = c
        return Polynomial._make(self.ring, clean)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.ring.laurent or len(self.terms) != 1:
                raise ValueError("negative powers only for Laurent monomials")
            ((m, c),) = self.terms.items()
            inv = self.ring.coeffs.inverse(c)
            return Polynomial._make(self.ring, {tuple(-e for e in m): inv})._pow(-n)
        return self._pow(n)

    def _pow(self, n):
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.coeffs(c)
        if c == 0:
            return self.ring.zero
        norm = self.ring.coeffs.normalize
        out = {}
        for m, v in self.terms.items():
            v = norm(v * c)
            if v != 0:
                out[m] = v
        return Polynomial._make(self.ring, out)

    # comparisons

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, m: Sequence[int] | Mapping[str, int]):
        if isinstance(m, Mapping):
            e = [0] * self.ring.nvars
            for n, k in m.items():
                e[self.ring.index(n)] = k
            m = e
        return self.terms.get(tuple(m), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in descending graded-lex order."""
        key = self.ring.order_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.order_key
        return max(self.terms.items(), key=lambda t: key(t[0]))

    def degree(self) -> int:
        """Maximum weighted degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.weighted_degree(m) for m in self.terms)

    def homogeneous_degree(self) -> int | None:
        """Common weighted degree of all terms, or None if mixed (0 polynomial: None)."""
        degs = {self.ring.weighted_degree(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.homogeneous_degree() is not None

    def homogeneous_part(self, d: int) -> "Polynomial":
        wd = self.ring.weighted_degree
        return Polynomial._make(self.ring, {m: c for m, c in self.terms.items() if wd(m) == d})

    def variables(self) -> set[str]:
        used = set()
        for m in self.terms:
            used.update(self.ring.names[i] for i, e in enumerate(m) if e)
        return used

    def evaluate(self, values: Mapping[str, object]):
        """Exact evaluation at numbers (every variable must be given)."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = Fraction(c)
            for i, e in enumerate(m):
                if e:
                    v *= Fraction(values[self.ring.names[i]]) ** e
            total += v
        return self.ring.coeffs(total)

    def map_coefficients(self, coeffs: CoefficientRing) -> "Polynomial":
        ring = self.ring.with_coeffs(coeffs)
        src = self.ring.coeffs
        return ring.from_dict({m: coeffs.convert(c, src) for m, c in self.terms.items()})

    def embed(self, ring: PolynomialRing) -> "Polynomial":
        """Re-express in ``ring`` by matching variable names."""
        idx = [ring.index(n) for n in self.ring.names]
        src = self.ring.coeffs
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in zip(idx, m):
                e[i] = k
            out[tuple(e)] = ring.coeffs.convert(c, src)
        return ring.from_dict(out)

    # serialization

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        names = self.ring.names
        fmt = self.ring.coeffs.format
        for m, c in self.sorted_terms():
            factors = [fmt(c)]
            for n, e in zip(names, m):
                if e == 1:
                    factors.append(n)
                elif e:
                    factors.append(f"{n}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json(self) -> dict:
        terms = []
        for m, c in self.sorted_terms():
            num, den = self.ring.coeffs.pair(c)
            terms.append({"exps": list(m), "num": num, "den": den})
        return {
            "ring": str(self.ring.coeffs),
            "variables": list(self.ring.names),
            "degrees": list(self.ring.degrees),
            "laurent": self.ring.laurent,
            "terms": terms,
        }

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


def from_json(obj: Mapping) -> Polynomial:
    ring = PolynomialRing(
        CoefficientRing.parse(obj.get("ring", "QQ")),
        obj["variables"],
        obj.get("degrees"),
        obj.get("laurent", False),
    )
    return ring.from_dict({tuple(t["exps"]): Fraction(t["num"], t.get("den", 1)) for t in obj["terms"]})


# ---- text parser -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad polynomial text at {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("sym", sym))
        pos = m.end()
    out.append(("end", None))
    return out


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``16*x^12 + -1*y^6*z^6`` style text (also ``-``, ``()``, ``a/b``)."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind=None, val=None):
        nonlocal pos
        t = toks[pos]
        if (kind and t[0] != kind) or (val is not None and t[1] != val):
            raise ValueError(f"unexpected token {t[1]!r} in {text!r}")
        pos += 1
        return t

    def expr():
        p = term()
        while peek() in (("sym", "+"), ("sym", "-")):
            op = take()[1]
            q = term()
            p = p + q if op == "+" else p - q
        return p

    def term():
        p = unary()
        while peek() == ("sym", "*"):
            take()
            p = p * unary()
        return p

    def unary():
        if peek() == ("sym", "-"):
            take()
            return -unary()
        if peek() == ("sym", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("sym", "^"):
            take()
            sign = 1
            if peek() == ("sym", "-"):
                take()
                sign = -1
            return base ** (sign * take("num")[1])
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            if peek() == ("sym", "/"):
                take()
                return ring.constant(Fraction(val, take("num")[1]))
            return ring.constant(val)
        if kind == "name":
            take()
            return ring.gen(val)
        if (kind, val) == ("sym", "("):
            take()
            p = expr()
            take("sym", ")")
            return p
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    take("end")
    return result


# ---- functional wrappers ---------------------------------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring!r} vs {q.ring!r}")
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring!r} vs {q.ring!r}")
    return p * q


def eliminate(p: Polynomial, names: Iterable[str]) -> Polynomial:
    """Set every variable in ``names`` to zero (reduction mod the ideal they generate)."""
    if p.ring.laurent:
        raise ValueError("eliminate is defined in polynomial mode only")
    idx = [p.ring.index(n) for n in names]
    if not idx:
        return p
    return Polynomial._make(p.ring, {m: c for m, c in p.terms.items() if not any(m[i] for i in idx)})


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with p == q*r, raising NotDivisible when no such r exists."""
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring!r} vs {q.ring!r}")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.ring.laurent:
        raise ValueError("exact_divide is defined in polynomial mode only")
    ring = p.ring
    lm_q, lc_q = q.leading_term()
    rem = p
    quotient: dict[tuple, object] = {}
    while rem:
        lm, lc = rem.leading_term()
        e = tuple(a - b for a, b in zip(lm, lm_q))
        if any(k < 0 for k in e):
            raise NotDivisible(f"leading monomial of divisor does not divide {lm}")
        c = ring.coeffs.divide(lc, lc_q)
        quotient[e] = c
        rem = rem - q * Polynomial._make(ring, {e: c})
    return Polynomial._make(ring, quotient)


def substitute(
    p: Polynomial,
    assignment: Mapping[str, object],
    target: PolynomialRing | None = None,
) -> Polynomial:
    """Homomorphic image of p under ``variable -> polynomial`` (or scalar)."""
    images = {}
    for n in p.ring.names:
        if n not in assignment:
            used = any(m[p.ring.index(n)] for m in p.terms)
            if used:
                raise KeyError(f"no image assigned to variable {n!r}")
            continue
        images[n] = assignment[n]
    if target is None:
        target = next((v.ring for v in images.values() if isinstance(v, Polynomial)), p.ring)
    for n, v in list(images.items()):
        if isinstance(v, Polynomial):
            if v.ring != target:
                raise RingMismatchError(f"image of {n} lives in {v.ring!r}, expected {target!r}")
        else:
            images[n] = target.constant(v)
    src = p.ring.coeffs
    cache: dict[tuple[int, int], Polynomial] = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            img = images[p.ring.names[i]]
            if e == 1:
                cache[key] = img
            elif e > 1:
                half = power(i, e // 2)
                sq = half * half
                cache[key] = sq * img if e % 2 else sq
            else:
                cache[key] = img ** e
        return cache[key]

    acc: dict[tuple, object] = {}
    norm = target.coeffs.normalize
    for m, c in p.terms.items():
        c = target.coeffs.convert(c, src)
        term = None
        for i, e in enumerate(m):
            if e:
                f = power(i, e)
                term = f if term is None else term * f
                if not term:
                    break
        if term is None:
            term = target.one
        for mm, cc in term.terms.items():
            acc[mm] = acc.get(mm, 0) + cc * c
    clean = {}
    for m, c in acc.items():
        c = norm(c)
        if c != 0:
            clean[m] = c
    return Polynomial._make(target, clean)


def coefficient_of_degree(p: Polynomial, formal_var: str, k: int) -> Polynomial:
    """Coefficient of ``formal_var**k``, as a polynomial in the remaining variables."""
    i = p.ring.index(formal_var)
    sub = p.ring.drop([formal_var])
    out = {}
    for m, c in p.terms.items():
        if m[i] == k:
            out[m[:i] + m[i + 1:]] = c
    return Polynomial._make(sub, out)
