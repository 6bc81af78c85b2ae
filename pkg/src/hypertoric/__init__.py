"""Exact-arithmetic toolkit for hypertoric Deligne-Mumford stack data.

Everything is computed over the integers and rationals with arbitrary
precision: Smith normal form, Gale duality, hyperplane arrangement
chambers, matroid circuits, box elements, the Lawrence fan, Chen-Ruan
ring presentations, fixed-point localization, and quantum products by
divisor classes as truncated Novikov series.
"""

from hypertoric.exactalg import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    gale_dual,
    kernel_basis,
    smith_normal_form,
)

__all__ = [
    "FgAbelianGroup",
    "GroupHom",
    "IntMatrix",
    "gale_dual",
    "kernel_basis",
    "smith_normal_form",
]

__version__ = "0.1.0"
