"""Exact integer linear algebra: Smith/Hermite forms, kernels, Gale duality.

All matrices carry Python ints, so there is no overflow anywhere.  The
algorithms are deterministic: pivot selection is by smallest absolute
value with row-major tie-breaking, and kernel bases are canonicalized by
row Hermite normal form, so every downstream basis choice is stable
across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class ExactAlgError(ValueError):
    pass


class InfiniteCokernel(ExactAlgError):
    """The map has rank smaller than the rank of its target."""


class TorsionColumn(ExactAlgError):
    """A defining vector is torsion, which the Gale dual construction forbids."""


class NotInImage(ExactAlgError):
    """No integral solution exists."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; dimensions are explicit so that zero-row
    and zero-column matrices keep their shape."""

    entries: tuple[tuple[int, ...], ...]
    shape: tuple[int, int] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.shape is None:
            nrows = len(self.entries)
            ncols = len(self.entries[0]) if self.entries else 0
            object.__setattr__(self, "shape", (nrows, ncols))
        nrows, ncols = self.shape
        if len(self.entries) != nrows or any(len(r) != ncols for r in self.entries):
            raise ExactAlgError("entries do not match declared shape")

    @staticmethod
    def from_rows(rows, ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ExactAlgError("ragged matrix")
        else:
            width = 0 if ncols is None else ncols
        return IntMatrix(rows, (len(rows), width if rows else (ncols or 0)))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(0 for _ in range(cols)) for _ in range(rows)), (rows, cols))

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)) if self.entries else (),
                         (self.ncols, self.nrows))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ExactAlgError("dimension mismatch in matrix product")
        ot = other.transpose().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                for row in self.entries
            ),
            (self.nrows, other.ncols),
        )

    def apply(self, vec) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ExactAlgError("dimension mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def rank(self) -> int:
        return sum(1 for d in smith_diagonal(self) if d != 0)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ExactAlgError("determinant of non-square matrix")
        # Fraction-free Gaussian elimination (Bareiss).
        n = self.nrows
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^rank plus cyclic factors Z/d_1 x ... with d_1 | d_2 | ... and d_i >= 2."""

    rank: int
    torsion_invariants: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ExactAlgError("negative rank")
        invs = tuple(int(d) for d in self.torsion_invariants)
        object.__setattr__(self, "torsion_invariants", invs)
        for d in invs:
            if d < 2:
                raise ExactAlgError("torsion invariants must be >= 2")
        for a, b in zip(invs, invs[1:]):
            if b % a != 0:
                raise ExactAlgError("torsion invariants must form a divisibility chain")

    @property
    def generator_count(self) -> int:
        return self.rank + len(self.torsion_invariants)

    def is_free(self) -> bool:
        return not self.torsion_invariants

    def reduce_vector(self, vec) -> tuple[int, ...]:
        """Reduce the torsion coordinates of ``vec`` modulo the invariant orders."""
        vec = tuple(int(x) for x in vec)
        if len(vec) != self.generator_count:
            raise ExactAlgError("vector length does not match generator count")
        free = vec[: self.rank]
        tor = tuple(x % d for x, d in zip(vec[self.rank:], self.torsion_invariants))
        return free + tor


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between presented groups, as a matrix in generator bases.

    Columns are images of the source generators; torsion rows of the
    target are stored reduced modulo the invariant orders.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.nrows != self.target.generator_count:
            raise ExactAlgError("matrix rows must match target generators")
        if self.source.torsion_invariants:
            raise ExactAlgError("only free sources are supported")
        if self.matrix.ncols != self.source.rank:
            raise ExactAlgError("matrix cols must match source generators")
        reduced = tuple(
            self.target.reduce_vector(self.matrix.col(j)) for j in range(self.matrix.ncols)
        )
        rows = tuple(zip(*reduced)) if (reduced and self.target.generator_count) else ()
        object.__setattr__(
            self,
            "matrix",
            IntMatrix(rows, (self.target.generator_count, self.source.rank)),
        )

    def column(self, j: int) -> tuple[int, ...]:
        return self.matrix.col(j)

    def free_part(self) -> IntMatrix:
        """The induced matrix between the free parts of source and target."""
        return IntMatrix(self.matrix.entries[: self.target.rank])


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U*A*V = D, U and V unimodular, D diagonal.

    The diagonal is nonnegative and forms a divisibility chain
    d_1 | d_2 | ... .  Clearing is done with extended-gcd block
    transforms (one unimodular 2x2 step per entry) and smallest-pivot
    selection, which keeps intermediate entries manageable; the
    procedure is deterministic for a given input.
    """
    n, m = A.nrows, A.ncols
    a = [list(row) for row in A.entries]
    u = [list(row) for row in IntMatrix.identity(n).entries]
    v = [list(row) for row in IntMatrix.identity(m).entries]

    def pivot(k):
        best = None
        for i in range(k, n):
            for j in range(k, m):
                if a[i][j] != 0 and (
                    best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])
                ):
                    best = (i, j)
        return best

    def block(p, q):
        """Unimodular (x, y; s, t) sending (p, q) to (gcd, 0).

        When p already divides q the block is a plain shear, so settled
        entries are never remixed (this is what makes the sweep
        terminate)."""
        if p != 0 and q % p == 0:
            return 1, 0, -(q // p), 1
        g, x, y = _xgcd(p, q)
        return x, y, -(q // g), p // g

    def row_gcd_step(k, i):
        """Combine rows k and i so that a[i][k] becomes 0."""
        x, y, s, t = block(a[k][k], a[i][k])
        for col in range(m):
            rk, ri = a[k][col], a[i][col]
            a[k][col] = x * rk + y * ri
            a[i][col] = s * rk + t * ri
        for col in range(n):
            rk, ri = u[k][col], u[i][col]
            u[k][col] = x * rk + y * ri
            u[i][col] = s * rk + t * ri

    def col_gcd_step(k, j):
        """Combine columns k and j so that a[k][j] becomes 0."""
        x, y, s, t = block(a[k][k], a[k][j])
        for row in range(n):
            ck, cj = a[row][k], a[row][j]
            a[row][k] = x * ck + y * cj
            a[row][j] = s * ck + t * cj
        for row in range(m):
            ck, cj = v[row][k], v[row][j]
            v[row][k] = x * ck + y * cj
            v[row][j] = s * ck + t * cj

    k = 0
    while k < min(n, m):
        p = pivot(k)
        if p is None:
            break
        i, j = p
        if i != k:
            _swap_rows(a, i, k)
            _swap_rows(u, i, k)
        if j != k:
            _swap_cols(a, j, k)
            _swap_cols(v, j, k)
        while True:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    row_gcd_step(k, i)
            for j in range(k + 1, m):
                if a[k][j] != 0:
                    col_gcd_step(k, j)
            if all(a[i][k] == 0 for i in range(k + 1, n)) and all(
                a[k][j] == 0 for j in range(k + 1, m)
            ):
                break
        # Enforce divisibility: fold in a row holding a non-divisible entry
        # and redo this step (the pivot strictly shrinks on each redo).
        bad = None
        for i in range(k + 1, n):
            for j in range(k + 1, m):
                if a[i][j] % a[k][k] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for t in range(m):
                a[k][t] += a[bad][t]
            for t in range(n):
                u[k][t] += u[bad][t]
            continue
        if a[k][k] < 0:
            for t in range(m):
                a[k][t] = -a[k][t]
            for t in range(n):
                u[k][t] = -u[k][t]
        k += 1

    return IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v)


def smith_diagonal(A: IntMatrix) -> tuple[int, ...]:
    _, d, _ = smith_normal_form(A)
    return tuple(d[i, i] for i in range(min(d.nrows, d.ncols)))


def hermite_row_basis(rows) -> tuple[tuple[int, ...], ...]:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Returns a basis with positive pivots, entries above each pivot
    reduced into [0, pivot), and zero rows dropped.  This canonical form
    is what makes kernel bases reproducible.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    ncols = len(work[0])
    basis = []
    col = 0
    while work and col < ncols:
        pivots = [r for r in work if r[col] != 0]
        if not pivots:
            col += 1
            continue
        # Euclidean reduction within this column.
        while True:
            pivots.sort(key=lambda r: abs(r[col]))
            p = pivots[0]
            done = True
            for r in pivots[1:]:
                q = r[col] // p[col]
                for t in range(ncols):
                    r[t] -= q * p[t]
                if r[col] != 0:
                    done = False
            pivots = [r for r in pivots if r[col] != 0]
            if done or len(pivots) <= 1:
                break
        p = pivots[0]
        if p[col] < 0:
            for t in range(ncols):
                p[t] = -p[t]
        basis.append(p)
        work = [r for r in work if r is not p and any(r)]
        for r in work:
            if r[col] != 0:
                q = r[col] // p[col]
                for t in range(ncols):
                    r[t] -= q * p[t]
        work = [r for r in work if any(r)]
        col += 1
    # Reduce entries above pivots.
    pivot_cols = []
    for r in basis:
        for j, x in enumerate(r):
            if x != 0:
                pivot_cols.append(j)
                break
    for i in range(len(basis)):
        for k in range(i + 1, len(basis)):
            j = pivot_cols[k]
            q = basis[i][j] // basis[k][j]
            if q:
                for t in range(len(basis[i])):
                    basis[i][t] -= q * basis[k][t]
    return tuple(tuple(r) for r in basis)


def kernel_basis(A: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """A canonical free basis of the integer kernel {x : A.x = 0}.

    Computed from the Smith normal form and then put in row Hermite
    normal form, so the result does not depend on pivoting internals.
    """
    _, d, v = smith_normal_form(A)
    r = sum(1 for i in range(min(d.nrows, d.ncols)) if d[i, i] != 0)
    cols = [v.col(j) for j in range(r, A.ncols)]
    return hermite_row_basis(cols)


def solve_integer(A: IntMatrix, b) -> tuple[int, ...]:
    """One deterministic integer solution of A.x = b, else NotInImage.

    The particular solution is the Smith normal form back-substitution
    with all free coordinates set to zero.
    """
    u, d, v = smith_normal_form(A)
    c = u.apply(tuple(int(x) for x in b))
    y = [0] * A.ncols
    for i in range(A.nrows):
        di = d[i, i] if i < min(d.nrows, d.ncols) else 0
        if i < A.ncols and di != 0:
            if c[i] % di != 0:
                raise NotInImage("no integral solution")
            y[i] = c[i] // di
        elif c[i] != 0:
            raise NotInImage("no integral solution")
    return v.apply(y)


def solve_rational(rows, rhs):
    """Solve a square rational linear system exactly; None if singular.

    ``rows`` is a list of coefficient sequences, ``rhs`` the right-hand
    side; entries may be ints or Fractions.
    """
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return tuple(m[i][n] for i in range(n))


def solve_rational_system(rows, rhs):
    """One rational solution of a general (possibly non-square) system,
    with free variables set to zero; None when inconsistent."""
    if not rows:
        return ()
    ncols = len(rows[0])
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for row_idx, c in enumerate(pivots):
        sol[c] = m[row_idx][ncols]
    return tuple(sol)


def rational_rank(rows) -> int:
    """Rank of a matrix with int/Fraction entries, by exact elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col]
        m[row] = [x / inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        rank += 1
        row += 1
    return rank


def vector_content(vec) -> int:
    g = 0
    for x in vec:
        g = gcd(g, abs(int(x)))
    return g


def primitive_vector(vec) -> tuple[int, ...]:
    g = vector_content(vec)
    if g == 0:
        return tuple(int(x) for x in vec)
    return tuple(int(x) // g for x in vec)


# ---------------------------------------------------------------------------
# Gale duality


def _presentation_matrix(group: FgAbelianGroup, hom_matrix: IntMatrix) -> IntMatrix:
    """Stack [B | Q]: a free presentation of the hom composed with the
    relations of a target with torsion."""
    d, invs = group.rank, group.torsion_invariants
    r = len(invs)
    rows = []
    for i in range(d + r):
        row = list(hom_matrix.row(i))
        for j in range(r):
            row.append(invs[j] if i == d + j else 0)
        rows.append(row)
    return IntMatrix.from_rows(rows)


def cokernel_data(M: IntMatrix):
    """Cokernel of M as (free_projection_rows, torsion_rows, torsion_orders).

    The free projection is the Hermite-canonical kernel of M viewed as
    functionals on the target of M^T; the torsion quotient comes from
    the Smith normal form of M^T.
    """
    mt = M.transpose()
    u, d, _ = smith_normal_form(mt)
    free_rows = kernel_basis(M)
    torsion_rows = []
    torsion_orders = []
    for i in range(min(d.nrows, d.ncols)):
        if d[i, i] >= 2:
            torsion_rows.append(tuple(u.row(i)))
            torsion_orders.append(d[i, i])
    return free_rows, tuple(torsion_rows), tuple(torsion_orders)


def gale_dual(beta: GroupHom) -> GroupHom:
    """The Gale dual map from the source of ``beta`` onto its dual group.

    Requires finite cokernel and nontorsion columns.  The free part of
    the dual group is presented on the canonical Hermite kernel basis of
    the presentation matrix, so dual coordinates are reproducible.
    """
    m = beta.source.rank
    nbar_rank = beta.target.rank
    free = beta.free_part()
    for j in range(m):
        if all(x == 0 for x in free.col(j)):
            raise TorsionColumn(f"column {j} is torsion")
    if rational_rank(free.entries) < nbar_rank:
        raise InfiniteCokernel("rank of the map is smaller than the rank of the target")
    pres = _presentation_matrix(beta.target, beta.matrix)
    free_rows, torsion_rows, torsion_orders = cokernel_data(pres)
    dg = FgAbelianGroup(len(free_rows), torsion_orders)
    cols = []
    for j in range(m):
        e = [0] * pres.ncols
        e[j] = 1
        coord = [sum(fr[t] * e[t] for t in range(len(e))) for fr in free_rows]
        coord += [sum(tr[t] * e[t] for t in range(len(e))) % o
                  for tr, o in zip(torsion_rows, torsion_orders)]
        cols.append(coord)
    if dg.generator_count == 0:
        matrix = IntMatrix.zero(0, m)
    else:
        matrix = IntMatrix.from_rows(tuple(zip(*cols)))
    return GroupHom(FgAbelianGroup(m), dg, matrix)


def coordinates_in_basis(basis_rows, vec):
    """Integer coordinates of ``vec`` in the given lattice basis, else None."""
    if not basis_rows:
        return () if all(x == 0 for x in vec) else None
    cols = list(zip(*basis_rows))
    n = len(basis_rows)
    # Solve (basis^T) c = vec in the least-squares-free exact sense: use
    # any n independent coordinate rows.
    idx = []
    probe = []
    for i, row in enumerate(cols):
        cand = probe + [row]
        if rational_rank(cand) == len(cand):
            probe = cand
            idx.append(i)
        if len(idx) == n:
            break
    if len(idx) < n:
        return None
    sol = solve_rational([cols[i] for i in idx], [vec[i] for i in idx])
    if sol is None:
        return None
    # Verify all coordinates and integrality.
    for i, row in enumerate(cols):
        if sum(Fraction(row[j]) * sol[j] for j in range(n)) != vec[i]:
            return None
    if any(s.denominator != 1 for s in sol):
        return None
    return tuple(int(s) for s in sol)


def rational_coordinates_in_basis(basis_rows, vec):
    """Rational coordinates of ``vec`` in the span of the basis, else None."""
    if not basis_rows:
        return () if all(Fraction(x) == 0 for x in vec) else None
    cols = list(zip(*basis_rows))
    n = len(basis_rows)
    idx = []
    probe = []
    for i, row in enumerate(cols):
        cand = probe + [row]
        if rational_rank(cand) == len(cand):
            probe = cand
            idx.append(i)
        if len(idx) == n:
            break
    if len(idx) < n:
        return None
    sol = solve_rational([cols[i] for i in idx], [vec[i] for i in idx])
    if sol is None:
        return None
    for i, row in enumerate(cols):
        if sum(Fraction(row[j]) * sol[j] for j in range(n)) != Fraction(vec[i]):
            return None
    return tuple(sol)
