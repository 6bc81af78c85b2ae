"""The Lawrence fan of an arrangement, point location, and the l-pairing.

Rays come in mirror pairs (z-side and w-side); maximal cones are the
complements of the sign patterns of the stability vector over all bases
of the dual configuration.  The l-pairing measures the failure of two
lattice points to share a cone and projects to a curve degree on the
canonical kernel basis of the lifted map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from hypertoric.arrangement import ArrangementError, StackyArrangement
from hypertoric.exactalg import (
    IntMatrix,
    kernel_basis,
    rational_coordinates_in_basis,
    rational_rank,
    solve_rational,
)


class NonGeneric(ArrangementError):
    """The stability vector lies on a wall: some basis coefficient is zero."""


class OutsideSupport(ArrangementError):
    """The queried lattice point is not in the support of the fan."""


@dataclass(frozen=True)
class ConeCoordinates:
    """Simplicial coordinates of a point in the minimal cone containing it."""

    max_cone: tuple[int, ...]
    coefficients: dict  # ray id -> Fraction, zero entries omitted

    @property
    def minimal_rays(self) -> tuple[int, ...]:
        return tuple(sorted(self.coefficients))

    def coefficient(self, ray_id: int) -> Fraction:
        return self.coefficients.get(ray_id, Fraction(0))


@dataclass(frozen=True)
class LawrenceFan:
    """Rays, maximal cones and irrelevant monomials of the Lawrence lift.

    Ray ids: 0..m-1 are the z-side rays (b_i, e_i), m..2m-1 the w-side
    rays (0, e_i).  ``h2_basis`` is the canonical kernel basis of the
    lifted map, sign-fixed so that pairs of rays sharing no cone pair
    nonnegatively (the effective orientation).
    """

    arrangement: StackyArrangement
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    irrelevant_monomials: tuple[tuple[str, ...], ...]
    h2_basis: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return self.arrangement.m

    def ray_label(self, ray_id: int) -> str:
        m = self.m
        return f"z{ray_id + 1}" if ray_id < m else f"w{ray_id - m + 1}"

    def z_ray(self, i: int) -> int:
        return i

    def w_ray(self, i: int) -> int:
        return self.m + i

    def ray_vector(self, ray_id: int) -> tuple[int, ...]:
        return self.rays[ray_id]

    # -- queries -------------------------------------------------------------

    def locate(self, point) -> ConeCoordinates:
        """Minimal cone containing ``point`` and its simplicial coordinates."""
        point = tuple(Fraction(x) for x in point)
        if len(point) != len(self.rays[0]):
            raise ArrangementError("point has wrong dimension")
        for cone in self.max_cones:
            cols = [self.rays[r] for r in cone]
            rows = list(zip(*cols))
            sol = solve_rational(rows, point)
            if sol is None:
                continue
            if all(c >= 0 for c in sol):
                coeffs = {r: c for r, c in zip(cone, sol) if c != 0}
                return ConeCoordinates(cone, coeffs)
        raise OutsideSupport(f"point {point} is outside the fan support")

    def l_pairing(self, c1, c2):
        """The correction vector in Q^m + Q^m and its curve-degree projection."""
        loc1 = self.locate(c1)
        loc2 = self.locate(c2)
        total = tuple(Fraction(a) + Fraction(b) for a, b in zip(c1, c2))
        loc12 = self.locate(total)
        vec = []
        for r in range(2 * self.m):
            vec.append(
                loc1.coefficient(r) + loc2.coefficient(r) - loc12.coefficient(r)
            )
        degree = rational_coordinates_in_basis(self.h2_basis, vec)
        if degree is None:
            raise ArrangementError("l-pairing vector is outside the curve lattice")
        return tuple(vec), tuple(degree)

    def nonfacial_ray_pairs(self):
        """Ray pairs contained in no common maximal cone."""
        out = []
        for a, b in itertools.combinations(range(2 * self.m), 2):
            if not any(a in cone and b in cone for cone in self.max_cones):
                out.append((a, b))
        return tuple(out)

    def cone_index(self, cone) -> int:
        """Lattice index of the sublattice spanned by the cone's rays
        (1 means unimodular), read off the Smith form of the ray matrix."""
        from hypertoric.exactalg import smith_diagonal

        mat = IntMatrix.from_rows(tuple(zip(*[self.rays[r] for r in cone])))
        idx = 1
        for d in smith_diagonal(mat):
            if d == 0:
                raise ArrangementError("cone rays are dependent")
            idx *= d
        return idx


def lawrence_rays(arr: StackyArrangement):
    m, d = arr.m, arr.d
    rays = []
    for i in range(m):
        rays.append(tuple(arr.b_bar(i)) + tuple(1 if t == i else 0 for t in range(m)))
    for i in range(m):
        rays.append(tuple(0 for _ in range(d)) + tuple(1 if t == i else 0 for t in range(m)))
    return tuple(rays)


def lifted_map(arr: StackyArrangement) -> IntMatrix:
    """The doubled map on the free quotient, with the 2m rays as columns."""
    return IntMatrix.from_rows(tuple(zip(*lawrence_rays(arr))))


def build_lawrence_fan(arr: StackyArrangement, theta=None) -> LawrenceFan:
    """Construct the fan by enumerating all bases of the dual configuration.

    Raises NonGeneric when some basis solves the stability vector with a
    zero coefficient (a wall-crossing position).
    """
    beta_dual = arr.beta_dual
    if theta is None:
        theta = arr.theta
    theta = tuple(int(x) for x in theta)
    f = beta_dual.target.rank
    theta_free = theta[:f]
    m = arr.m
    cols = [beta_dual.free_part().col(j) for j in range(m)]
    sigma_sets = []
    monomials = []
    for subset in itertools.combinations(range(m), f):
        chosen = [cols[i] for i in subset]
        if rational_rank(chosen) != f:
            continue
        if f == 0:
            lam = ()
        else:
            lam = solve_rational(list(zip(*chosen)), theta_free)
            if lam is None:
                continue
        if any(x == 0 for x in lam):
            raise NonGeneric(f"basis {subset} solves theta with a zero coefficient")
        sigma = []
        mono = []
        for i, coeff in zip(subset, lam):
            if coeff > 0:
                sigma.append(i)  # z-ray
                mono.append(f"z{i + 1}")
            else:
                sigma.append(m + i)  # w-ray
                mono.append(f"w{i + 1}")
        sigma_sets.append(frozenset(sigma))
        monomials.append(tuple(sorted(mono)))
    max_cones = sorted(
        set(tuple(sorted(set(range(2 * m)) - s)) for s in sigma_sets)
    )
    irrelevant = tuple(sorted(set(monomials)))
    rays = lawrence_rays(arr)
    basis = kernel_basis(lifted_map(arr))
    fan = LawrenceFan(arr, rays, tuple(max_cones), irrelevant, basis)
    return _orient_h2_basis(fan)


def _orient_h2_basis(fan: LawrenceFan) -> LawrenceFan:
    """Flip kernel basis vectors so nonfacial ray pairs pair nonnegatively."""
    if not fan.h2_basis:
        return fan
    coords = []
    for a, b in fan.nonfacial_ray_pairs():
        try:
            _, degree = fan.l_pairing(_unit(fan, a), _unit(fan, b))
        except OutsideSupport:
            continue
        coords.append(degree)
    flipped = []
    for t, vec in enumerate(fan.h2_basis):
        vals = [c[t] for c in coords]
        if vals and all(v <= 0 for v in vals) and any(v < 0 for v in vals):
            flipped.append(tuple(-x for x in vec))
        else:
            flipped.append(tuple(vec))
    return LawrenceFan(
        fan.arrangement, fan.rays, fan.max_cones, fan.irrelevant_monomials, tuple(flipped)
    )


def _unit(fan: LawrenceFan, ray_id: int):
    return fan.ray_vector(ray_id)


def lawrence_fan(arr: StackyArrangement) -> LawrenceFan:
    return build_lawrence_fan(arr)
