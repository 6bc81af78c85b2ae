"""Presentations of the equivariant cohomology rings and the orbifold product.

Classes are kept in a normal form reduced by the monomial (matroid)
relations only; that rewriting is confluent, so equality of normal forms
is decidable without a Groebner engine.  Relations involving mixed
(h - u) factors are emitted in presentations but deliberately not used
for reduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from hypertoric.arrangement import ArrangementError, StackyArrangement
from hypertoric.multifan import (
    BoxElement,
    MultiFan,
    box_elements,
    circuits,
)
from hypertoric.polynomials import Poly, PolyRing


class UnreducedInput(ArrangementError):
    """A sector polynomial contains a monomial that the sector annihilates."""


class CohomologyContext:
    """Shared environment: variables, cones, circuits, boxes of one arrangement."""

    def __init__(self, arr: StackyArrangement):
        self.arr = arr
        m = arr.m
        names = [f"u{i + 1}" for i in range(m)] + ["hbar"] + [f"lam{i + 1}" for i in range(m)]
        self.ring = PolyRing(names)
        self.fan = MultiFan(arr)
        self.circuits = circuits(arr)
        self.boxes = box_elements(arr)
        self._cone_cache: dict = {}

    # -- variables -----------------------------------------------------------

    def u(self, i: int) -> Poly:
        return self.ring.var(f"u{i + 1}")

    def hbar(self) -> Poly:
        return self.ring.var("hbar")

    def lam(self, i: int) -> Poly:
        return self.ring.var(f"lam{i + 1}")

    def u_support(self, mono) -> tuple[int, ...]:
        return tuple(i for i in range(self.arr.m) if mono[i] > 0)

    def is_cone(self, indices) -> bool:
        key = tuple(sorted(set(indices)))
        if key not in self._cone_cache:
            self._cone_cache[key] = self.fan.is_cone(key)
        return self._cone_cache[key]

    def trivial_box(self) -> BoxElement:
        for b in self.boxes:
            if b.is_trivial():
                return b
        raise ArrangementError("no trivial box")

    def find_box(self, v_free, v_torsion) -> BoxElement | None:
        for b in self.boxes:
            if b.v_free == tuple(v_free) and b.v_torsion == tuple(v_torsion):
                return b
        return None

    # -- normal form ---------------------------------------------------------

    def reduce_in_sector(self, poly: Poly, box: BoxElement) -> Poly:
        """Kill monomials annihilated by the sector: any u-support meeting
        the box cone, or making the cone union dependent."""
        sigma = set(box.sigma)

        def keep(mono, coeff):
            supp = self.u_support(mono)
            if sigma & set(supp):
                return None
            if not self.is_cone(sigma | set(supp)):
                return None
            return coeff

        return poly.map_terms(keep)


@dataclass(frozen=True)
class CRClass:
    """A Chen-Ruan class: one polynomial per sector, trivial box untwisted."""

    context: CohomologyContext
    components: tuple  # tuple of (BoxElement, Poly), sorted, reduced

    @staticmethod
    def build(context: CohomologyContext, parts: dict) -> "CRClass":
        comps = []
        for box, poly in parts.items():
            reduced = context.reduce_in_sector(poly, box)
            if not reduced.is_zero():
                comps.append((box, reduced))
        comps.sort(key=lambda bp: bp[0].sort_key())
        return CRClass(context, tuple(comps))

    @staticmethod
    def zero(context: CohomologyContext) -> "CRClass":
        return CRClass(context, ())

    @staticmethod
    def untwisted(context: CohomologyContext, poly: Poly) -> "CRClass":
        return CRClass.build(context, {context.trivial_box(): poly})

    @staticmethod
    def sector_unit(context: CohomologyContext, box: BoxElement) -> "CRClass":
        return CRClass.build(context, {box: context.ring.one()})

    def component(self, box: BoxElement) -> Poly:
        for b, p in self.components:
            if b == box:
                return p
        return self.context.ring.zero()

    def untwisted_part(self) -> Poly:
        return self.component(self.context.trivial_box())

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "CRClass") -> "CRClass":
        parts: dict = {b: p for b, p in self.components}
        for b, p in other.components:
            parts[b] = parts.get(b, self.context.ring.zero()) + p
        return CRClass.build(self.context, parts)

    def __sub__(self, other: "CRClass") -> "CRClass":
        return self + other.scale(-1)

    def scale(self, c) -> "CRClass":
        return CRClass.build(self.context, {b: p * c for b, p in self.components})

    def scale_poly(self, poly: Poly) -> "CRClass":
        return CRClass.build(self.context, {b: p * poly for b, p in self.components})

    def __eq__(self, other):
        return (
            isinstance(other, CRClass)
            and self.context is other.context
            and self.components == other.components
        )

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for box, poly in self.components:
            if box.is_trivial():
                parts.append(str(poly))
            else:
                parts.append(f"({poly})*{box.label()}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class Relation:
    """One defining relation; ``lhs_factors`` are generator labels whose
    product equals ``rhs`` (a polynomial with at most one box symbol)."""

    kind: str  # "monomial" | "circuit" | "box-u" | "box-box"
    text: str
    lhs_boxes: tuple = ()
    lhs_poly: Poly | None = None
    rhs: "CRClass | None" = None


@dataclass(frozen=True)
class RingPresentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]

    def texts(self) -> tuple[str, ...]:
        return tuple(r.text for r in self.relations)


def ht_presentation(context: CohomologyContext) -> RingPresentation:
    """Divisor generators with the squarefree circuit monomial relations."""
    gens = tuple(f"u{i + 1}" for i in range(context.arr.m))
    rels = []
    for c in context.circuits:
        poly = context.ring.one()
        for i in c.support:
            poly = poly * context.u(i)
        rels.append(Relation("monomial", f"{poly} = 0", lhs_poly=poly))
    return RingPresentation(gens, tuple(rels))


def circuit_relation_poly(context: CohomologyContext, circuit) -> Poly:
    poly = context.ring.one()
    for i in circuit.positive:
        poly = poly * context.u(i)
    for j in circuit.negative:
        poly = poly * (context.hbar() - context.u(j))
    return poly


def htt_presentation(context: CohomologyContext) -> RingPresentation:
    """Adds the fiber parameter; one split relation per circuit."""
    gens = tuple(f"u{i + 1}" for i in range(context.arr.m)) + ("hbar",)
    rels = []
    for c in context.circuits:
        poly = circuit_relation_poly(context, c)
        rels.append(Relation("circuit", f"{poly} = 0", lhs_poly=poly))
    return RingPresentation(gens, tuple(rels))


def _box_pair_product(context, box1, box2, box_square_sign: str):
    """The orbifold product of two nontrivial sector units, as a CRClass."""
    union = sorted(set(box1.sigma) | set(box2.sigma))
    if not context.is_cone(union):
        return CRClass.zero(context)
    # The closing box is determined coordinatewise on the union cone: its
    # fractional coordinates complete each pair sum to the next integer, so
    # the triple sums a_i land in {1, 2}.
    alpha3 = []
    for i in union:
        s = box1.alpha_of(i) + box2.alpha_of(i)
        a = (-s) % 1
        if a != 0:
            alpha3.append((i, a))
    v3_free = []
    for r in range(context.arr.d):
        total = sum(Fraction(context.arr.b_bar(i)[r]) * a for i, a in alpha3)
        if total.denominator != 1:
            raise ArrangementError("closing box coordinates are not integral")
        v3_free.append(int(total))
    orders = context.arr.group_N.torsion_invariants
    t3 = tuple(
        (-(box1.v_torsion[t] + box2.v_torsion[t])) % q for t, q in enumerate(orders)
    )
    box3 = context.find_box(tuple(v3_free), t3)
    if box3 is None or box3.alphas != tuple(alpha3):
        raise ArrangementError(
            f"no closing box for {box1.label()} * {box2.label()}"
        )
    sums: dict[int, Fraction] = {}
    for b in (box1, box2, box3):
        for i, a in b.alphas:
            sums[i] = sums.get(i, Fraction(0)) + a
    sigma123 = tuple(sorted(sums))
    set1, set2, set3 = set(box1.sigma), set(box2.sigma), set(box3.sigma)
    I = tuple(i for i in sigma123 if sums[i] == 1 and i in set1 & set2 & set3)
    J = tuple(j for j in sigma123 if j not in set3)
    poly = context.ring.one()
    for i in I:
        poly = poly * context.u(i)
    for j in J:
        poly = poly * context.u(j) ** 2
    if box3.is_trivial():
        sign = 1 if box_square_sign == "paper" else (-1) ** len(J)
        return CRClass.untwisted(context, poly * sign)
    sign = (-1) ** (len(I) + len(J))
    return CRClass.build(context, {box3: poly * sign})


def cr_presentation(
    context: CohomologyContext, box_square_sign: str = "paper"
) -> RingPresentation:
    """Sector generators and the four orbifold relation families.

    The self-inverse sector squares carry a documented sign flag:
    "paper" ships the positively-signed square, "literal" the
    (-1)^|J|-signed variant.
    """
    gens = tuple(f"u{i + 1}" for i in range(context.arr.m)) + ("hbar",)
    nontrivial = [b for b in context.boxes if not b.is_trivial()]
    gens = gens + tuple(b.label() for b in nontrivial)
    rels = list(htt_presentation(context).relations)
    for box in nontrivial:
        for i in range(context.arr.m):
            in_cone = i in box.sigma
            compatible = context.is_cone(set(box.sigma) | {i})
            if in_cone or not compatible:
                rels.append(
                    Relation(
                        "box-u",
                        f"{box.label()}*u{i + 1} = 0",
                        lhs_boxes=(box,),
                        lhs_poly=context.u(i),
                        rhs=CRClass.zero(context),
                    )
                )
    for b1, b2 in itertools.combinations_with_replacement(nontrivial, 2):
        rhs = _box_pair_product(context, b1, b2, box_square_sign)
        rels.append(
            Relation(
                "box-box",
                f"{b1.label()}*{b2.label()} = {rhs}",
                lhs_boxes=(b1, b2),
                rhs=rhs,
            )
        )
    return RingPresentation(gens, tuple(rels))


def cr_multiply(
    x: CRClass, y: CRClass, box_square_sign: str = "paper"
) -> CRClass:
    """Bilinear orbifold product of normal-form classes.

    Raises UnreducedInput if a sector polynomial is not already in the
    sector normal form.
    """
    context = x.context
    for cls in (x, y):
        for box, poly in cls.components:
            if context.reduce_in_sector(poly, box) != poly:
                raise UnreducedInput("sector polynomial contains a vanishing monomial")
    out = CRClass.zero(context)
    for b1, p1 in x.components:
        for b2, p2 in y.components:
            if b1.is_trivial() and b2.is_trivial():
                out = out + CRClass.untwisted(context, p1 * p2)
            elif b1.is_trivial():
                out = out + CRClass.build(context, {b2: p1 * p2})
            elif b2.is_trivial():
                out = out + CRClass.build(context, {b1: p1 * p2})
            else:
                prod = _box_pair_product(context, b1, b2, box_square_sign)
                out = out + prod.scale_poly(p1 * p2)
    return out


def reduce_poly(context: CohomologyContext, poly: Poly) -> Poly:
    """Untwisted normal form: kill monomials with dependent u-support."""
    return context.reduce_in_sector(poly, context.trivial_box())
