"""Exact arithmetic for finite-index sublattices of Z^2.

A sublattice is stored as an integer matrix whose *rows* span it.  All
quotient bookkeeping (coset representatives, membership, reduction) is
done with a 2x2 Smith normal form, so every operation is exact integer
arithmetic; no floats enter this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

# Entries beyond this bound are almost certainly a caller bug (and make
# coset tables explode), so constructors refuse them loudly.
MAX_ENTRY = 10_000

Vec = tuple[int, int]


@dataclass(frozen=True)
class SublatticeMat:
    """Rows (a, b) and (c, d) span a finite-index sublattice of Z^2.

    The determinant must be nonzero: a rank-deficient matrix does not
    give a finite quotient, hence no compact torus.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        for entry in (self.a, self.b, self.c, self.d):
            if not isinstance(entry, int):
                raise TypeError(f"matrix entries must be ints, got {entry!r}")
            if abs(entry) > MAX_ENTRY:
                raise ValueError(f"matrix entry {entry} exceeds bound {MAX_ENTRY}")
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("singular matrix does not define a finite-index sublattice")

    @property
    def rows(self) -> tuple[Vec, Vec]:
        return (self.a, self.b), (self.c, self.d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def index(self) -> int:
        """Index of the sublattice in Z^2, i.e. |det|."""
        return abs(self.det())

    def contains(self, v: Vec) -> bool:
        """Membership test: is v an integer combination of the rows?"""
        x, y = v
        det = self.det()
        # Solve (p, q) @ rows = v by Cramer; membership iff both are integral.
        p_num = x * self.d - y * self.c
        q_num = y * self.a - x * self.b
        return p_num % det == 0 and q_num % det == 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d


def det(mat: SublatticeMat) -> int:
    return mat.det()


def cover_exponent(mat: SublatticeMat) -> int:
    """Least m >= 1 such that (m, 0) and (0, m) both lie in the sublattice.

    Equivalently the least m with m * inverse(mat) integral, which works
    out to |det| / gcd(|det|, a, b, c, d).
    """
    n = mat.index()
    g = gcd(n, mat.a, mat.b, mat.c, mat.d)
    m = n // g
    # The closed form is easy to get wrong; keep the cheap sanity check.
    if not (contains_scaled_identity(mat, m)):
        raise AssertionError(f"cover exponent {m} failed containment for {mat}")
    return m


def fold_index(mat: SublatticeMat) -> int:
    """Number of sheets of the cover torus over the base: m^2 / |det|."""
    m = cover_exponent(mat)
    n, rem = divmod(m * m, mat.index())
    if rem:
        raise AssertionError(f"fold index not integral for {mat}")
    return n


def contains_scaled_identity(mat: SublatticeMat, m: int) -> bool:
    """True iff the scaled lattice m * Z^2 sits inside the sublattice."""
    if m <= 0:
        return False
    return mat.contains((m, 0)) and mat.contains((0, m))


def _snf_2x2(mat: SublatticeMat) -> tuple[list[list[int]], list[list[int]], int, int]:
    """Diagonalize: U @ mat @ V = diag(s1, s2) with U, V unimodular, s1 | s2.

    Returns (U, V, s1, s2).  Row operations act on the left, column
    operations on the right; both transform matrices are tracked.
    """
    a = [[mat.a, mat.b], [mat.c, mat.d]]
    u = [[1, 0], [0, 1]]
    v = [[1, 0], [0, 1]]

    def row_op(i: int, j: int, k: int) -> None:
        # row i -= k * row j
        for t in range(2):
            a[i][t] -= k * a[j][t]
            u[i][t] -= k * u[j][t]

    def col_op(i: int, j: int, k: int) -> None:
        # col i -= k * col j
        for t in range(2):
            a[t][i] -= k * a[t][j]
            v[t][i] -= k * v[t][j]

    def swap_rows() -> None:
        a[0], a[1] = a[1], a[0]
        u[0], u[1] = u[1], u[0]

    def swap_cols() -> None:
        for t in range(2):
            a[t][0], a[t][1] = a[t][1], a[t][0]
            v[t][0], v[t][1] = v[t][1], v[t][0]

    # Standard 2x2 reduction: clear the off-diagonal by repeated euclidean
    # steps, restarting when a column operation reintroduces a remainder.
    while True:
        if a[0][0] == 0:
            if a[1][0] != 0:
                swap_rows()
            elif a[0][1] != 0:
                swap_cols()
            else:
                swap_rows()
                swap_cols()
        # Clear below the pivot.
        while a[1][0] != 0:
            if abs(a[1][0]) < abs(a[0][0]):
                swap_rows()
            row_op(1, 0, a[1][0] // a[0][0])
            if a[1][0] != 0 and a[0][0] == 0:
                swap_rows()
        # Clear right of the pivot.
        while a[0][1] != 0:
            if abs(a[0][1]) < abs(a[0][0]):
                swap_cols()
            col_op(1, 0, a[0][1] // a[0][0])
            if a[0][1] != 0 and a[0][0] == 0:
                swap_cols()
        if a[1][0] == 0 and a[0][1] == 0:
            break

    # Fix signs.
    if a[0][0] < 0:
        row_op(0, 0, 2)  # row 0 -= 2*row 0, i.e. negate
    if a[1][1] < 0:
        row_op(1, 1, 2)
    # Enforce the divisibility s1 | s2 (add col 1 to col 0 and re-reduce).
    if a[1][1] % a[0][0] != 0:
        col_op(0, 1, -1)
        while a[1][0] != 0:
            if abs(a[1][0]) < abs(a[0][0]):
                swap_rows()
            row_op(1, 0, a[1][0] // a[0][0])
        while a[0][1] != 0:
            col_op(1, 0, a[0][1] // a[0][0])
        if a[0][0] < 0:
            row_op(0, 0, 2)
        if a[1][1] < 0:
            row_op(1, 1, 2)

    if a[0][1] or a[1][0] or a[0][0] <= 0 or a[1][1] <= 0 or a[1][1] % a[0][0]:
        raise AssertionError(f"smith reduction failed for {mat}: {a}")
    return u, v, a[0][0], a[1][1]


def _inv_unimodular(v: list[list[int]]) -> list[list[int]]:
    d = v[0][0] * v[1][1] - v[0][1] * v[1][0]
    if d not in (1, -1):
        raise AssertionError("matrix is not unimodular")
    return [[d * v[1][1], -d * v[0][1]], [-d * v[1][0], d * v[0][0]]]


@dataclass(frozen=True)
class CosetSystem:
    """Coset bookkeeping for Z^2 modulo the row lattice of `mat`.

    `representatives` is a fixed tuple of |det| vectors, one per coset,
    and `reduce` maps any integer vector to the representative of its
    coset.  Built once per quotient map and reused for every vertex.
    """

    mat: SublatticeMat
    s1: int
    s2: int
    v: tuple[tuple[int, int], tuple[int, int]]
    v_inv: tuple[tuple[int, int], tuple[int, int]]
    representatives: tuple[Vec, ...]

    def size(self) -> int:
        return len(self.representatives)

    def _box_coords(self, vec: Vec) -> Vec:
        # Change coordinates so the lattice becomes s1 Z x s2 Z.
        x, y = vec
        w1 = x * self.v[0][0] + y * self.v[1][0]
        w2 = x * self.v[0][1] + y * self.v[1][1]
        return w1 % self.s1, w2 % self.s2

    def index_of(self, vec: Vec) -> int:
        i, j = self._box_coords(vec)
        return i * self.s2 + j

    def reduce(self, vec: Vec) -> Vec:
        """Canonical representative of the coset of `vec`."""
        i, j = self._box_coords(vec)
        return (
            i * self.v_inv[0][0] + j * self.v_inv[1][0],
            i * self.v_inv[0][1] + j * self.v_inv[1][1],
        )

    def same_coset(self, u: Vec, w: Vec) -> bool:
        return self.mat.contains((u[0] - w[0], u[1] - w[1]))


def cosets(mat: SublatticeMat) -> CosetSystem:
    """Build the coset system for Z^2 / row-lattice(mat)."""
    _, v, s1, s2 = _snf_2x2(mat)
    v_inv = _inv_unimodular(v)
    reps = []
    for i in range(s1):
        for j in range(s2):
            reps.append(
                (
                    i * v_inv[0][0] + j * v_inv[1][0],
                    i * v_inv[0][1] + j * v_inv[1][1],
                )
            )
    return CosetSystem(
        mat=mat,
        s1=s1,
        s2=s2,
        v=(tuple(v[0]), tuple(v[1])),
        v_inv=(tuple(v_inv[0]), tuple(v_inv[1])),
        representatives=tuple(reps),
    )


def enumerate_hnf(max_index: int) -> list[SublatticeMat]:
    """All sublattices of index <= max_index, one Hermite form each.

    Rows (a, b), (0, d) with a, d >= 1 and 0 <= b < d enumerate every
    finite-index sublattice exactly once.
    """
    if max_index < 1:
        raise ValueError(f"index bound must be positive, got {max_index}")
    out = []
    for a in range(1, max_index + 1):
        for d in range(1, max_index // a + 1):
            for b in range(d):
                out.append(SublatticeMat(a, b, 0, d))
    return out


def random_nonsingular(rng, max_entry: int) -> SublatticeMat:
    """Draw a uniform nonzero-determinant matrix with entries in [-max_entry, max_entry]."""
    while True:
        a, b, c, d = (rng.randint(-max_entry, max_entry) for _ in range(4))
        if a * d - b * c != 0:
            return SublatticeMat(a, b, c, d)


def scaled_identity(m: int) -> SublatticeMat:
    if m <= 0:
        raise ValueError("scale must be positive")
    return SublatticeMat(m, 0, 0, m)


def is_scaled_identity(mat: SublatticeMat) -> bool:
    return mat.b == 0 and mat.c == 0 and mat.a == mat.d and mat.a > 0


def perfect_square_root(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
