"""Stacky hyperplane arrangements: genericity, lifting, chambers, core.

The combinatorial geometry is done with exact rational arithmetic; all
emptiness and boundedness questions reduce to Fourier-Motzkin
elimination, which is slow in theory but exact and dependency-free, and
entirely adequate at the scale enforced by the dimension guard.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from hypertoric.exactalg import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    gale_dual,
    primitive_vector,
    rational_rank,
    solve_integer,
    solve_rational,
)


class ArrangementError(ValueError):
    pass


class NonGenericTheta(ArrangementError):
    """The stability vector lies on a wall of the secondary arrangement."""


class DimensionTooLarge(ArrangementError):
    """Guard for the chamber enumeration: d <= 6 and m <= 16 only."""


MAX_DIM = 6
MAX_HYPERPLANES = 16


# ---------------------------------------------------------------------------
# Exact linear constraint systems


@dataclass(frozen=True)
class Constraint:
    """a . x + c >= 0 with rational data."""

    coeffs: tuple
    offset: Fraction

    @staticmethod
    def of(coeffs, offset) -> "Constraint":
        return Constraint(tuple(Fraction(x) for x in coeffs), Fraction(offset))

    def negated(self) -> "Constraint":
        return Constraint(tuple(-x for x in self.coeffs), -self.offset)


def fourier_motzkin_feasible(constraints) -> bool:
    """Whether the closed system { a.x + c >= 0 } has a rational solution."""
    if not constraints:
        return True
    dim = len(constraints[0].coeffs)
    rows = [(list(c.coeffs), Fraction(c.offset)) for c in constraints]
    for var in range(dim):
        pos, neg, zero = [], [], []
        for a, c in rows:
            if a[var] > 0:
                pos.append((a, c))
            elif a[var] < 0:
                neg.append((a, c))
            else:
                zero.append((a, c))
        new_rows = zero
        for (ap, cp) in pos:
            for (an, cn) in neg:
                # eliminate: scale so the var coefficients cancel
                s, t = -an[var], ap[var]
                a = [s * x + t * y for x, y in zip(ap, an)]
                c = s * cp + t * cn
                new_rows.append((a, c))
        rows = new_rows
        if not rows:
            return True
    return all(c >= 0 for _, c in rows)


def recession_cone_is_trivial(constraints) -> bool:
    """Whether { a.x >= 0 } contains no nonzero vector."""
    if not constraints:
        return False
    dim = len(constraints[0].coeffs)
    homogeneous = [Constraint(c.coeffs, Fraction(0)) for c in constraints]
    for j in range(dim):
        for sign in (1, -1):
            probe = [Fraction(0)] * dim
            probe[j] = Fraction(sign)
            extra = Constraint(tuple(probe), Fraction(-1))  # sign * x_j >= 1
            if fourier_motzkin_feasible(homogeneous + [extra]):
                return False
    return True


def enumerate_vertices(constraints):
    """Vertices of the polyhedron { a.x + c >= 0 }, by exact enumeration.

    Intended for desk-scale systems: solves every maximal independent
    subsystem of equalities and keeps the feasible solutions.
    """
    if not constraints:
        return []
    dim = len(constraints[0].coeffs)
    verts = []
    for subset in itertools.combinations(range(len(constraints)), dim):
        rows = [constraints[i].coeffs for i in subset]
        rhs = [-constraints[i].offset for i in subset]
        sol = solve_rational(rows, rhs)
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(c.coeffs, sol)) + c.offset >= 0 for c in constraints):
            if sol not in verts:
                verts.append(sol)
    verts.sort()
    return verts


# ---------------------------------------------------------------------------
# Arrangement data


@dataclass(frozen=True)
class Hyperplane:
    """{ v : <normal, v> + offset = 0 }, cooriented by the >= 0 side."""

    normal: tuple[int, ...]
    offset: int

    def __post_init__(self):
        if all(x == 0 for x in self.normal):
            raise ArrangementError("hyperplane normal must be nonzero")

    def halfspace(self, side: str) -> Constraint:
        """'F' is the side <normal,v> + offset >= 0, 'G' the opposite."""
        c = Constraint.of(self.normal, self.offset)
        return c if side == "F" else c.negated()


@dataclass(frozen=True)
class Chamber:
    """A chamber P_U: the hyperplanes in ``flips`` keep their coorientation,
    the others are reversed."""

    flips: frozenset
    constraints: tuple
    bounded: bool

    def vertices(self):
        return enumerate_vertices(list(self.constraints))


@dataclass(frozen=True)
class NormalFan:
    """Rays (primitive integer vectors) plus maximal cones as ray index sets."""

    rays: tuple
    max_cones: tuple

    @staticmethod
    def of(rays, cones) -> "NormalFan":
        rays = sorted(set(tuple(int(x) for x in r) for r in rays))
        ray_index = {r: i for i, r in enumerate(rays)}
        max_cones = sorted(set(tuple(sorted(ray_index[tuple(r)] for r in cone)) for cone in cones))
        return NormalFan(tuple(rays), tuple(max_cones))


def check_generic(beta_dual: GroupHom, theta) -> bool:
    """Whether theta avoids every hyperplane spanned by the dual configuration.

    The test happens in the free quotient of the dual group; the zero
    vector is never generic.
    """
    theta = tuple(int(x) for x in theta)
    if len(theta) != beta_dual.target.generator_count:
        raise ArrangementError("theta length does not match the dual group")
    if beta_dual.target.generator_count == 0:
        return True  # trivial dual group has no walls
    if all(x == 0 for x in theta):
        return False
    f = beta_dual.target.rank
    theta_free = theta[:f]
    if f == 0:
        return True
    cols = [beta_dual.free_part().col(j) for j in range(beta_dual.matrix.ncols)]
    if all(x == 0 for x in theta_free):
        return False
    for subset in itertools.combinations(range(len(cols)), f - 1):
        chosen = [cols[i] for i in subset]
        if rational_rank(chosen) < f - 1:
            continue
        if rational_rank(chosen + [theta_free]) == f - 1:
            return False
    return True


def lift_theta(beta_dual: GroupHom, theta) -> tuple[int, ...]:
    """A deterministic integral lift psi with theta = -beta_dual(psi)."""
    theta = tuple(int(x) for x in theta)
    f = beta_dual.target.rank
    orders = beta_dual.target.torsion_invariants
    m = beta_dual.matrix.ncols
    rows = []
    rhs = []
    for i in range(f):
        rows.append(list(beta_dual.matrix.row(i)) + [0] * len(orders))
        rhs.append(-theta[i])
    for j, order in enumerate(orders):
        row = list(beta_dual.matrix.row(f + j)) + [0] * len(orders)
        row[m + j] = order
        rows.append(row)
        rhs.append(-theta[f + j])
    if not rows:
        return tuple(0 for _ in range(m))
    sol = solve_integer(IntMatrix.from_rows(rows), rhs)
    return tuple(sol[:m])


@dataclass(frozen=True)
class StackyArrangement:
    """The full input datum: group, defining vectors, stability, lifting.

    Invariants are enforced at construction: every defining vector is
    nontorsion, the cokernel is finite, theta is generic and equals
    -beta_dual(psi) exactly.
    """

    group_N: FgAbelianGroup
    beta: GroupHom
    theta: tuple[int, ...]
    psi: tuple[int, ...]
    beta_dual: GroupHom

    @staticmethod
    def build(group_N: FgAbelianGroup, beta_columns, theta, psi=None) -> "StackyArrangement":
        cols = [tuple(int(x) for x in c) for c in beta_columns]
        m = len(cols)
        if m == 0:
            raise ArrangementError("need at least one defining vector")
        matrix = IntMatrix.from_rows(tuple(zip(*cols)))
        beta = GroupHom(FgAbelianGroup(m), group_N, matrix)
        beta_dual = gale_dual(beta)
        theta = tuple(int(x) for x in theta)
        if not check_generic(beta_dual, theta):
            raise NonGenericTheta(f"theta={theta} is not generic")
        if psi is None:
            psi = lift_theta(beta_dual, theta)
        psi = tuple(int(x) for x in psi)
        if len(psi) != m:
            raise ArrangementError("psi length must equal the number of hyperplanes")
        image = beta_dual.target.reduce_vector(beta_dual.matrix.apply(psi))
        expect = beta_dual.target.reduce_vector(tuple(-t for t in theta))
        if image != expect:
            raise ArrangementError("psi is not a lifting: theta != -beta_dual(psi)")
        return StackyArrangement(group_N, beta, theta, psi, beta_dual)

    # -- basic views ---------------------------------------------------------

    @property
    def m(self) -> int:
        return self.beta.matrix.ncols

    @property
    def d(self) -> int:
        return self.group_N.rank

    def b_bar(self, i: int) -> tuple[int, ...]:
        return self.beta.free_part().col(i)

    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        return tuple(Hyperplane(self.b_bar(i), self.psi[i]) for i in range(self.m))

    def halfspace(self, i: int, side: str) -> Constraint:
        return self.hyperplanes()[i].halfspace(side)

    # -- chambers ------------------------------------------------------------

    def chamber_constraints(self, flips) -> tuple:
        flips = set(flips)
        return tuple(
            self.halfspace(i, "F" if i in flips else "G") for i in range(self.m)
        )

    def bounded_chambers(self) -> tuple[Chamber, ...]:
        """All nonempty bounded chambers, ordered by their flip sets.

        Enumeration is a depth-first search over coorientation choices
        with infeasible branches pruned early.
        """
        if self.d > MAX_DIM or self.m > MAX_HYPERPLANES:
            raise DimensionTooLarge(
                f"chamber enumeration is guarded to d <= {MAX_DIM}, m <= {MAX_HYPERPLANES}"
            )
        found = []

        def descend(i, partial):
            if not fourier_motzkin_feasible(partial):
                return
            if i == self.m:
                if recession_cone_is_trivial(partial):
                    flips = frozenset(
                        j for j, c in enumerate(partial) if c == self.halfspace(j, "F")
                    )
                    found.append(Chamber(flips, tuple(partial), True))
                return
            descend(i + 1, partial + [self.halfspace(i, "F")])
            descend(i + 1, partial + [self.halfspace(i, "G")])

        descend(0, [])
        found.sort(key=lambda ch: tuple(sorted(ch.flips)))
        return tuple(found)

    def core(self):
        """Pairs (chamber, normal fan) over all bounded chambers."""
        out = []
        for chamber in self.bounded_chambers():
            verts = chamber.vertices()
            cones = []
            rays = []
            for v in verts:
                tight = [
                    i
                    for i, c in enumerate(chamber.constraints)
                    if sum(a * x for a, x in zip(c.coeffs, v)) + c.offset == 0
                ]
                normals = []
                for i in tight:
                    n = self.b_bar(i) if i in chamber.flips else tuple(-x for x in self.b_bar(i))
                    normals.append(primitive_vector(n))
                cones.append(normals)
                rays.extend(normals)
            out.append((chamber, NormalFan.of(rays, cones)))
        return tuple(out)

    # -- serialization -------------------------------------------------------

    def to_data(self) -> dict:
        return {
            "rank": self.group_N.rank,
            "torsion": list(self.group_N.torsion_invariants),
            "beta": [list(self.beta.column(j)) for j in range(self.m)],
            "theta": list(self.theta),
            "psi": list(self.psi),
        }

    @staticmethod
    def from_data(data: dict) -> "StackyArrangement":
        group = FgAbelianGroup(int(data["rank"]), tuple(data.get("torsion", ())))
        return StackyArrangement.build(
            group, data["beta"], data["theta"], data.get("psi")
        )
