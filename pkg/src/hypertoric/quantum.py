"""Quantum product by divisor classes and the quantum Stanley-Reisner ring.

The divisor product is assembled circuit by circuit: each circuit
contributes correction terms supported on the compatible sector pairs of
its weighted projective model, with geometric series in the circuit's
Novikov variable expanded exactly to the truncation order.  The sign
bookkeeping ships in three conventions; the default is calibrated so
that the worked example series are reproduced at low order, and the
other two literal readings are available for differential testing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from hypertoric.arrangement import ArrangementError, StackyArrangement
from hypertoric.crring import CohomologyContext, CRClass, cr_multiply
from hypertoric.exactalg import solve_rational_system
from hypertoric.lawrence import LawrenceFan, lawrence_fan
from hypertoric.localize import (
    UnsupportedClass,
    WeightedModel,
    fiber_class_expr,
    integrate_base,
    sectors,
    standard_table,
)
from hypertoric.multifan import BoxElement, Circuit
from hypertoric.polynomials import Poly, poly_to_sympy

SIGN_CONVENTIONS = ("example-calibrated", "theorem-1.2-literal", "eq-5.2-literal")


class QuantumError(ArrangementError):
    pass


class TruncationTooSmall(QuantumError):
    pass


def r_of_sector_pair(f1: Fraction, f2: Fraction, weights) -> int | None:
    """The unique degree residue carrying maps with sector ends (f1, f2).

    A residue r in {0, ..., lcm-1} qualifies when some ordered pair of
    distinct weight slots (i, j) satisfies <r/w_i> = f1, <r/w_j> = f2
    and every remaining slot weight divides r.  Returns None when no
    residue qualifies (an incompatible pair).
    """
    weights = tuple(int(w) for w in weights)
    model = WeightedModel(weights)
    l = model.lcm
    found = []
    for r in range(l):
        ok = False
        for i, j in itertools.permutations(range(len(weights)), 2):
            if Fraction(r, weights[i]) % 1 != f1:
                continue
            if Fraction(r, weights[j]) % 1 != f2:
                continue
            if all(r % weights[k] == 0 for k in range(len(weights)) if k not in (i, j)):
                ok = True
                break
        if ok:
            found.append(r)
    if not found:
        return None
    if len(found) > 1:
        raise QuantumError(f"sector pair ({f1},{f2}) has several residues {found}")
    return found[0]


@dataclass(frozen=True)
class CircuitQuantumData:
    circuit: Circuit
    lcm_w: int
    sector_pairs: tuple  # ((f1, f2, r), ...)
    sign_convention: str


def circuit_quantum_data(circuit: Circuit, sign_convention: str) -> CircuitQuantumData:
    model = WeightedModel(circuit.weights)
    fracs = tuple(s.f for s in sectors(model))
    pairs = []
    for f1 in fracs:
        for f2 in fracs:
            r = r_of_sector_pair(f1, f2, circuit.weights)
            if r is not None:
                pairs.append((f1, f2, r))
    return CircuitQuantumData(circuit, model.lcm, tuple(pairs), sign_convention)


# ---------------------------------------------------------------------------
# Circuit models embedded in the arrangement


class CircuitModel:
    """The weighted projective geometry of one circuit, spliced into the
    arrangement's variables.

    Positive-side slots keep their divisor and torus parameter, negative
    side slots enter through the fiber-dual dictionary u -> hbar - u,
    lam -> hbar - lam.  Divisors outside the circuit support are
    eliminated through the global linear relations when possible.
    """

    def __init__(self, context: CohomologyContext, circuit: Circuit):
        self.context = context
        self.circuit = circuit
        arr = context.arr
        self.slots = circuit.support
        lam_exprs = []
        for i in self.slots:
            lam = sympy.Symbol(f"lam{i + 1}")
            hbar = sympy.Symbol("hbar")
            lam_exprs.append(lam if circuit.sign_of(i) > 0 else hbar - lam)
        u_names = tuple(f"mu{j + 1}" for j in range(len(self.slots)))
        self.model = WeightedModel(circuit.weights, tuple(lam_exprs), u_names)
        self.table = standard_table(self.model)
        self._elimination = self._build_elimination()
        self._sector_boxes = self._build_sector_boxes()

    # -- translation ---------------------------------------------------------

    def _build_elimination(self):
        """For each divisor outside the support, a polynomial expressing it
        in support divisors and torus parameters, through the relations
        sum <y, b_i> u_i = sum <y, b_i> lam_i."""
        arr = self.context.arr
        outside = [t for t in range(arr.m) if t not in self.slots]
        elim = {}
        for t in outside:
            others = [s for s in outside if s != t]
            # a covector orthogonal to the other outside vectors, pairing 1
            # with the eliminated one
            rows = [[Fraction(arr.b_bar(s)[r]) for r in range(arr.d)] for s in others]
            rows.append([Fraction(arr.b_bar(t)[r]) for r in range(arr.d)])
            rhs = [Fraction(0)] * len(others) + [Fraction(1)]
            y = solve_rational_system(rows, rhs)
            if y is None:
                continue
            replacement = self.context.lam(t) * Fraction(1)
            for i in range(arr.m):
                if i == t:
                    continue
                coef = sum(Fraction(y[r]) * arr.b_bar(i)[r] for r in range(arr.d))
                if coef == 0:
                    continue
                replacement = replacement + (self.context.lam(i) - self.context.u(i)) * coef
            elim[t] = replacement
        return elim

    def eliminate_outside(self, poly: Poly) -> Poly:
        arr = self.context.arr
        outside = set(range(arr.m)) - set(self.slots)
        used = poly.support(outside)
        if not used:
            return poly
        subs = {}
        for t in sorted(used):
            if t not in self._elimination:
                raise UnsupportedClass(
                    f"divisor u{t + 1} cannot be eliminated into circuit {self.circuit.support}"
                )
            subs[f"u{t + 1}"] = self._elimination[t]
        out = poly.substitute(subs)
        if out.support(outside):
            raise UnsupportedClass(
                f"elimination left divisors {sorted(out.support(outside))} in the class"
            )
        return out

    def to_model_expr(self, poly: Poly):
        """Arrangement polynomial -> sympy expression in model symbols."""
        poly = self.eliminate_outside(poly)
        symbols = {}
        arr = self.context.arr
        for name in poly.ring.names:
            symbols[name] = sympy.Symbol(name)
        expr = poly_to_sympy(poly, symbols)
        hbar = sympy.Symbol("hbar")
        for j, i in enumerate(self.slots):
            u_arr = sympy.Symbol(f"u{i + 1}")
            mu = self.model.u_symbol(j)
            if self.circuit.sign_of(i) > 0:
                expr = expr.subs(u_arr, mu)
            else:
                expr = expr.subs(u_arr, hbar - mu)
        return sympy.expand(expr)

    def from_model_expr(self, expr) -> Poly:
        """Sympy polynomial in model symbols -> arrangement polynomial."""
        hbar_sym = sympy.Symbol("hbar")
        for j, i in enumerate(self.slots):
            u_arr = sympy.Symbol(f"u{i + 1}")
            mu = self.model.u_symbol(j)
            if self.circuit.sign_of(i) > 0:
                expr = expr.subs(mu, u_arr)
            else:
                expr = expr.subs(mu, hbar_sym - u_arr)
        expr = sympy.expand(expr)
        return _sympy_to_poly(expr, self.context)

    # -- sector/box dictionary ------------------------------------------------

    def _build_sector_boxes(self):
        out = {}
        for sec in sectors(self.model):
            out[sec.f] = self._box_of_fraction(sec.f)
        return out

    def _box_of_fraction(self, f: Fraction) -> BoxElement:
        context = self.context
        if f == 0:
            return context.trivial_box()
        profile = {}
        for j, i in enumerate(self.slots):
            a = (f * self.circuit.weights[j]) % 1
            if self.circuit.sign_of(i) < 0 and a != 0:
                a = 1 - a
            if a != 0:
                profile[i] = a
        for box in context.boxes:
            if dict(box.alphas) == profile and all(t == 0 for t in box.v_torsion):
                return box
        raise QuantumError(
            f"no box element matches sector {f} of circuit {self.circuit.support}"
        )

    def box_of_sector(self, f: Fraction) -> BoxElement:
        return self._sector_boxes[f]

    def sector_age(self, f: Fraction) -> int:
        for sec in sectors(self.model):
            if sec.f == f:
                return sec.age
        raise QuantumError(f"unknown sector {f}")

    def sector_support(self, f: Fraction):
        for sec in sectors(self.model):
            if sec.f == f:
                return sec.support
        raise QuantumError(f"unknown sector {f}")

    # -- the correspondence ----------------------------------------------------

    def gamma_apply(self, f1: Fraction, f2: Fraction, x: CRClass) -> CRClass:
        """One Lagrangian component applied to a class: integrate the f1
        component over the compact factor, emit the zero-section class of
        the f2 factor in the inverse sector."""
        context = self.context
        comp = x.component(self.box_of_sector(f1))
        if comp.is_zero():
            return CRClass.zero(context)
        expr = self.to_model_expr(comp)
        value = integrate_base(expr, self.table, f1)
        num, den = sympy.fraction(sympy.cancel(sympy.together(value)))
        if not den.is_number:
            raise QuantumError(
                f"sector integral is not polynomial for circuit {self.circuit.support}"
            )
        scalar = _sympy_to_poly(sympy.expand(num / den), self.context)
        sign = (-1) ** (self.sector_age(f1) + self.sector_age(f2))
        out_fraction = Fraction(0) if f2 == 0 else 1 - f2
        out_box = self.box_of_sector(out_fraction)
        out_class = self.from_model_expr(
            fiber_class_expr(self.model, self.sector_support(f2))
        )
        return CRClass.build(context, {out_box: out_class * scalar * sign})


def _sympy_to_poly(expr, context: CohomologyContext) -> Poly:
    expr = sympy.expand(expr)
    poly = context.ring.zero()
    terms = expr.as_ordered_terms() if expr != 0 else []
    names = context.ring.names
    for term in terms:
        coeff, factors = term.as_coeff_Mul()
        mono = [0] * len(names)
        for factor in sympy.Mul.make_args(factors):
            base, exp = factor.as_base_exp()
            if base == 1:
                continue
            name = str(base)
            if name not in context.ring.index:
                raise QuantumError(f"unexpected symbol {name} in scalar")
            if not exp.is_Integer or exp < 0:
                raise QuantumError(f"non-polynomial exponent on {name}")
            mono[context.ring.index[name]] += int(exp)
        q = sympy.Rational(coeff)
        poly = poly + context.ring.monomial(mono, Fraction(int(q.p), int(q.q)))
    return poly


# ---------------------------------------------------------------------------
# Novikov series


@dataclass(frozen=True)
class NovikovSeries:
    """Truncated series: multi-exponents over the circuit list -> classes."""

    context: CohomologyContext
    order: int
    terms: tuple  # ((exponent tuple, CRClass), ...) sorted

    @staticmethod
    def build(context, order, parts: dict) -> "NovikovSeries":
        n_circuits = len(context.circuits)
        clean = {}
        for key, cls in parts.items():
            key = tuple(int(k) for k in key)
            if len(key) != n_circuits:
                raise QuantumError("exponent key has wrong length")
            if sum(key) > order or cls.is_zero():
                continue
            clean[key] = clean.get(key, CRClass.zero(context)) + cls
        items = sorted(
            ((k, v) for k, v in clean.items() if not v.is_zero()),
            key=lambda kv: (sum(kv[0]), kv[0]),
        )
        return NovikovSeries(context, order, tuple(items))

    @staticmethod
    def from_class(context, order, cls: CRClass) -> "NovikovSeries":
        zero_key = tuple(0 for _ in context.circuits)
        return NovikovSeries.build(context, order, {zero_key: cls})

    def coefficient(self, key) -> CRClass:
        key = tuple(int(k) for k in key)
        for k, v in self.terms:
            if k == key:
                return v
        return CRClass.zero(self.context)

    def degree_zero(self) -> CRClass:
        return self.coefficient(tuple(0 for _ in self.context.circuits))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NovikovSeries") -> "NovikovSeries":
        order = min(self.order, other.order)
        parts: dict = {}
        for k, v in self.terms + other.terms:
            parts[k] = parts.get(k, CRClass.zero(self.context)) + v
        return NovikovSeries.build(self.context, order, parts)

    def __sub__(self, other: "NovikovSeries") -> "NovikovSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "NovikovSeries":
        return NovikovSeries.build(
            self.context, self.order, {k: v.scale(c) for k, v in self.terms}
        )

    def scale_poly(self, poly: Poly) -> "NovikovSeries":
        return NovikovSeries.build(
            self.context, self.order, {k: v.scale_poly(poly) for k, v in self.terms}
        )

    def shift(self, circuit_index: int, amount: int) -> "NovikovSeries":
        """Multiply by a power of one circuit's Novikov variable."""
        parts = {}
        for k, v in self.terms:
            key = list(k)
            key[circuit_index] += amount
            parts[tuple(key)] = v
        return NovikovSeries.build(self.context, self.order, parts)

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"Q{i + 1}" for i in range(len(self.context.circuits))]
        chunks = []
        for k, v in self.terms:
            q = "*".join(
                f"{n}^{e}" if e > 1 else n for n, e in zip(names, k) if e
            )
            chunks.append(f"({v})" + (f"*{q}" if q else ""))
        return " + ".join(chunks)


class QuantumContext:
    """Caches the cohomology context and the circuit models of one arrangement."""

    def __init__(self, arr: StackyArrangement, context: CohomologyContext | None = None):
        self.arr = arr
        self.context = context or CohomologyContext(arr)
        self.models = tuple(
            CircuitModel(self.context, c) for c in self.context.circuits
        )
        self.data = tuple(
            circuit_quantum_data(c, "example-calibrated") for c in self.context.circuits
        )


def _convention_sign(convention: str, circuit: Circuit, degree: int) -> int:
    if convention == "example-calibrated":
        return 1
    n = len(circuit.support) - 1
    if convention == "theorem-1.2-literal":
        return (-1) ** degree
    if convention == "eq-5.2-literal":
        tot = sum(Fraction(degree, w) for w in circuit.weights)
        exponent = int(tot) if tot.denominator == 1 else int(tot // 1)
        return (-1) ** (n + exponent)
    raise QuantumError(f"unknown sign convention {convention!r}")


def quantum_divisor_product(
    qctx: QuantumContext,
    i: int,
    x,
    order: int,
    convention: str = "example-calibrated",
) -> NovikovSeries:
    """The small quantum product of the i-th divisor with a class or series.

    The degree-zero coefficient is the orbifold cup product; every
    circuit containing the divisor contributes its compatible sector
    pairs with exact geometric series in the circuit Novikov variable.
    """
    if order < 1:
        raise TruncationTooSmall("truncation order must be at least 1")
    if convention not in SIGN_CONVENTIONS:
        raise QuantumError(f"unknown sign convention {convention!r}")
    context = qctx.context
    if isinstance(x, CRClass):
        x = NovikovSeries.from_class(context, order, x)
    parts: dict = {}
    u_class = CRClass.untwisted(context, context.u(i))
    hbar = context.hbar()
    for base_key, base_cls in x.terms:
        classical = cr_multiply(u_class, base_cls)
        parts[base_key] = parts.get(base_key, CRClass.zero(context)) + classical
        for ci, (circuit, model) in enumerate(zip(context.circuits, qctx.models)):
            pairing = circuit.beta_S[i]
            if pairing == 0:
                continue
            for f1, f2, r in qctx.data[ci].sector_pairs:
                gamma = model.gamma_apply(f1, f2, base_cls)
                if gamma.is_zero():
                    continue
                start = r if r > 0 else circuit.lcm_w
                d = start
                while sum(base_key) + d <= order:
                    sign = _convention_sign(convention, circuit, d)
                    key = list(base_key)
                    key[ci] += d
                    add = gamma.scale_poly(hbar * (pairing * sign))
                    key = tuple(key)
                    parts[key] = parts.get(key, CRClass.zero(context)) + add
                    d += circuit.lcm_w
    return NovikovSeries.build(context, order, parts)


def star_word(qctx: QuantumContext, word, order: int, convention="example-calibrated"):
    """Iterated quantum product of affine divisor factors.

    ``word`` is a sequence of ("u", i) or ("hu", i) tokens, the latter
    meaning the complementary divisor hbar - u_i; the product is taken
    left to right starting from the unit.
    """
    context = qctx.context
    result = NovikovSeries.from_class(
        context, order, CRClass.untwisted(context, context.ring.one())
    )
    for kind, i in word:
        if kind == "u":
            result = quantum_divisor_product(qctx, i, result, order, convention)
        elif kind == "hu":
            ustar = quantum_divisor_product(qctx, i, result, order, convention)
            result = result.scale_poly(context.hbar()) - ustar
        else:
            raise QuantumError(f"unknown word token {kind!r}")
    return result


def verify_relation(qctx: QuantumContext, lhs: NovikovSeries, order: int) -> bool:
    """Whether the series vanishes termwise through the truncation order."""
    for key, cls in lhs.terms:
        if sum(key) <= order and not cls.is_zero():
            return False
    return True


def lawrence_euler_constant(qctx: QuantumContext) -> Poly:
    """The Euler class of the (trivial) ambient normal bundle: hbar^(m-d)."""
    arr = qctx.arr
    return qctx.context.hbar() ** (arr.m - arr.d)


def differential_sign_report(qctx: QuantumContext, order: int):
    """Per circuit and residue class, the sign sequence of each convention
    and the first order where each literal reading departs from the
    calibrated one."""
    report = []
    for circuit in qctx.context.circuits:
        residues = sorted({r for _, _, r in circuit_quantum_data(circuit, "x").sector_pairs})
        for r in residues:
            start = r if r > 0 else circuit.lcm_w
            degrees = list(range(start, order + 1, circuit.lcm_w))
            signs = {
                conv: [(d, _convention_sign(conv, circuit, d)) for d in degrees]
                for conv in SIGN_CONVENTIONS
            }
            divergence = {}
            for conv in SIGN_CONVENTIONS[1:]:
                first = None
                for (d, s_cal), (_, s_lit) in zip(
                    signs["example-calibrated"], signs[conv]
                ):
                    if s_cal != s_lit:
                        first = d
                        break
                divergence[conv] = first
            report.append(
                {
                    "circuit": circuit.support,
                    "residue": r,
                    "signs": signs,
                    "first_divergence_from_calibrated": divergence,
                }
            )
    return report


# ---------------------------------------------------------------------------
# Quantum Stanley-Reisner ring


@dataclass(frozen=True)
class QSRElement:
    """Formal sum of lattice-point symbols with Novikov-weighted coefficients.

    Terms are keyed by (lattice point, curve-degree exponent); the
    degree exponent is a rational vector in the curve lattice basis of
    the fan, graded by its coordinate sum.
    """

    fan: LawrenceFan
    ring: object  # PolyRing for scalar coefficients
    order: Fraction
    terms: tuple  # ((point tuple, exp tuple), Poly)

    @staticmethod
    def build(fan, ring, order, parts: dict) -> "QSRElement":
        clean = {}
        order = Fraction(order)
        for (pt, exp), coeff in parts.items():
            exp = tuple(Fraction(e) for e in exp)
            if sum(exp) > order or coeff.is_zero():
                continue
            key = (tuple(int(x) for x in pt), exp)
            clean[key] = clean.get(key, coeff.ring.zero()) + coeff
        items = sorted(
            ((k, v) for k, v in clean.items() if not v.is_zero()),
            key=lambda kv: (sum(kv[0][1]), kv[0][1], kv[0][0]),
        )
        return QSRElement(fan, ring, order, tuple(items))

    @staticmethod
    def generator(fan, ring, order, ray_id: int) -> "QSRElement":
        pt = fan.ray_vector(ray_id)
        zero_exp = tuple(Fraction(0) for _ in fan.h2_basis)
        return QSRElement.build(fan, ring, order, {(pt, zero_exp): ring.one()})

    @staticmethod
    def unit(fan, ring, order) -> "QSRElement":
        dim = len(fan.rays[0])
        zero_exp = tuple(Fraction(0) for _ in fan.h2_basis)
        return QSRElement.build(
            fan, ring, order, {(tuple(0 for _ in range(dim)), zero_exp): ring.one()}
        )

    def scale_poly(self, poly) -> "QSRElement":
        return QSRElement.build(
            self.fan, self.ring, self.order, {k: v * poly for k, v in self.terms}
        )

    def __add__(self, other: "QSRElement") -> "QSRElement":
        parts: dict = {}
        for k, v in self.terms + other.terms:
            parts[k] = parts.get(k, self.ring.zero()) + v
        return QSRElement.build(self.fan, self.ring, min(self.order, other.order), parts)

    def __sub__(self, other: "QSRElement") -> "QSRElement":
        return self + other.scale_poly(self.ring.const(-1))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for (pt, exp), coeff in self.terms:
            q = ",".join(str(e) for e in exp)
            chunks.append(f"({coeff})*y{list(pt)}*Q^({q})")
        return " + ".join(chunks)


def qsr_multiply(a: QSRElement, b: QSRElement, fan: LawrenceFan, order) -> QSRElement:
    """Bilinear semigroup product twisted by the l-pairing Novikov weight."""
    parts: dict = {}
    ring = a.ring
    for (pt1, exp1), c1 in a.terms:
        for (pt2, exp2), c2 in b.terms:
            _, degree = fan.l_pairing(pt1, pt2)
            pt = tuple(x + y for x, y in zip(pt1, pt2))
            exp = tuple(e1 + e2 + d for e1, e2, d in zip(exp1, exp2, degree))
            key = (pt, exp)
            parts[key] = parts.get(key, ring.zero()) + c1 * c2
    return QSRElement.build(fan, ring, order, parts)


def qsr_presentation(qctx: QuantumContext, fan: LawrenceFan | None = None, order=6):
    """The defining relations: one per hyperplane, y(z-ray) + y(w-ray) = hbar."""
    fan = fan or lawrence_fan(qctx.arr)
    ring = qctx.context.ring
    rels = []
    for i in range(qctx.arr.m):
        z = QSRElement.generator(fan, ring, order, fan.z_ray(i))
        w = QSRElement.generator(fan, ring, order, fan.w_ray(i))
        one = QSRElement.unit(fan, ring, order)
        rels.append(z + w - one.scale_poly(qctx.context.hbar()))
    return fan, tuple(rels)


def divisor_ray_side(fan: LawrenceFan) -> dict:
    """Which ray realizes the i-th divisor class: the side whose variable
    appears in the irrelevant monomials (the side with empty common zero)."""
    varset = set()
    for mono in fan.irrelevant_monomials:
        varset.update(mono)
    side = {}
    for i in range(fan.m):
        z_used = f"z{i + 1}" in varset
        w_used = f"w{i + 1}" in varset
        if z_used and not w_used:
            side[i] = fan.z_ray(i)
        elif w_used and not z_used:
            side[i] = fan.w_ray(i)
        else:
            side[i] = fan.z_ray(i)  # mixed: pick the z side deterministically
    return side


def qsr_word(qctx, fan, word, order) -> QSRElement:
    """Product over ("u", i) / ("hu", i) tokens inside the semigroup ring,
    using the divisor-to-ray dictionary and the hyperplane relations."""
    ring = qctx.context.ring
    side = divisor_ray_side(fan)
    result = QSRElement.unit(fan, ring, order)
    for kind, i in word:
        ray = side[i]
        if kind == "hu":
            ray = fan.w_ray(i) if ray == fan.z_ray(i) else fan.z_ray(i)
        gen = QSRElement.generator(fan, ring, order, ray)
        result = qsr_multiply(result, gen, fan, order)
    return result


def qsr_circuit_relation_defect(qctx, fan, circuit: Circuit, order) -> QSRElement:
    """The eliminated circuit relation, as a series that must vanish:
    prod u_i^(w_i) minus Q^(lcm * unit) prod (hbar - u_i)^(w_i)."""
    word_u = []
    word_hu = []
    for i, w in zip(circuit.support, circuit.weights):
        word_u.extend([("u", i)] * w)
        word_hu.extend([("hu", i)] * w)
    lhs = qsr_word(qctx, fan, word_u, order)
    rhs = qsr_word(qctx, fan, word_hu, order)
    unit = minimal_curve_unit(fan)
    shift = tuple(circuit.lcm_w * u for u in unit)
    shifted = QSRElement.build(
        fan,
        qctx.context.ring,
        order,
        {
            ((pt), tuple(e + s for e, s in zip(exp, shift))): coeff
            for (pt, exp), coeff in rhs.terms
        },
    )
    return lhs - shifted


def minimal_curve_unit(fan: LawrenceFan):
    """The smallest positive curve degree realized by a nonfacial ray pair,
    as a vector in the curve lattice basis."""
    best = None
    for a, b in fan.nonfacial_ray_pairs():
        try:
            _, degree = fan.l_pairing(fan.ray_vector(a), fan.ray_vector(b))
        except ArrangementError:
            continue
        total = sum(degree)
        if total > 0 and (best is None or total < sum(best)):
            best = degree
    if best is None:
        raise QuantumError("fan has no positive curve degrees")
    return best
