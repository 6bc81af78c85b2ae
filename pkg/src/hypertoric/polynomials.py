"""Sparse multivariate polynomials with exact rational coefficients.

A tiny dedicated implementation rather than a CAS dependency: the
cohomology rings only ever need ring arithmetic plus reduction by
monomial ideals, and golden tests require a bit-stable canonical form
(graded lexicographic term order, Fraction coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class PolyRing:
    """A fixed, ordered tuple of variable names."""

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self._zero_mono = tuple(0 for _ in self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing{self.names}"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Poly(self, {self._zero_mono: c})

    def var(self, name: str) -> "Poly":
        mono = list(self._zero_mono)
        mono[self.index[name]] = 1
        return Poly(self, {tuple(mono): Fraction(1)})

    def monomial(self, exps, coeff=1) -> "Poly":
        exps = tuple(int(e) for e in exps)
        if len(exps) != len(self.names):
            raise ValueError("exponent tuple has wrong length")
        c = Fraction(coeff)
        return Poly(self, {exps: c} if c else {})


def _mono_key(mono):
    # graded lex, largest first when sorted with reverse=True
    return (sum(mono), mono)


@dataclass(frozen=True)
class Poly:
    ring: PolyRing
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: c for m, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", clean)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get(self.ring._zero_mono, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        return (self - self.ring.const(other)).is_zero()

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    # -- structure ----------------------------------------------------------

    def support(self, indices=None):
        """Variable indices occurring in some term (optionally filtered)."""
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i)
        if indices is not None:
            out &= set(indices)
        return out

    def coefficient_of(self, name: str, power: int = 1) -> "Poly":
        """Coefficient polynomial of ``name**power`` (other powers of the
        variable are dropped)."""
        i = self.ring.index[name]
        out = {}
        for m, c in self.terms.items():
            if m[i] == power:
                mm = list(m)
                mm[i] = 0
                out[tuple(mm)] = out.get(tuple(mm), Fraction(0)) + c
        return Poly(self.ring, out)

    def substitute(self, assignment: dict) -> "Poly":
        """Substitute polynomials or scalars for named variables."""
        subs = {}
        for name, val in assignment.items():
            if not isinstance(val, Poly):
                val = self.ring.const(val)
            subs[self.ring.index[name]] = val
        out = self.ring.zero()
        for m, c in self.terms.items():
            term = self.ring.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if i in subs:
                    term = term * subs[i] ** e
                else:
                    mono = [0] * len(self.ring.names)
                    mono[i] = e
                    term = term * self.ring.monomial(mono)
            out = out + term
        return out

    def map_terms(self, fn) -> "Poly":
        """Rebuild from ``fn(mono, coeff) -> coeff or None`` (None drops)."""
        out = {}
        for m, c in self.terms.items():
            v = fn(m, c)
            if v:
                out[m] = out.get(m, Fraction(0)) + v
        return Poly(self.ring, out)

    # -- printing -----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(_fmt_coeff(coeff, lead=not parts))
                continue
            if coeff == 1:
                prefix = "" if not parts else "+ "
            elif coeff == -1:
                prefix = "-" if not parts else "- "
            else:
                prefix = _fmt_coeff(coeff, lead=not parts) + "*"
            parts.append(prefix + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def _fmt_coeff(c: Fraction, lead: bool) -> str:
    s = str(c) if c.denominator != 1 else str(c.numerator)
    if lead:
        return s
    if s.startswith("-"):
        return "- " + s[1:]
    return "+ " + s


def poly_to_sympy(p: Poly, symbols: dict):
    """Convert to a sympy expression given ``{name: sympy.Symbol}``."""
    import sympy

    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for name, e in zip(p.ring.names, m):
            if e:
                term *= symbols[name] ** e
        expr += term
    return expr
