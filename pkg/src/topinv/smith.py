"""Exact elimination: Smith normal form over Z, rank over fields, linear solving.

One elimination routine serves every ring.  Pivots are chosen Markowitz-style
among unit entries; over Z, when no unit is left, the smallest entry is
improved by Euclidean row/column steps until it divides its row and column.
Afterwards pivots are moved onto the diagonal and, over Z, a gcd/lcm pass
enforces the divisibility chain.

Every row and column operation can be logged; the logs are replayed on
demand to produce U, V (with ``U @ A @ V == D``), their inverses, or their
action on a single matrix without ever materialising them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .chains import SparseMatrix
from .errors import RingError
from .rings import Integers, Ring

# op records: ("add", src, dst, c) | ("swap", a, b) | ("scale", i, c)


@dataclass
class SnfResult:
    ring: Ring
    shape: tuple[int, int]
    diagonal: list
    row_ops: list = field(default_factory=list, repr=False)
    col_ops: list = field(default_factory=list, repr=False)
    tracked: bool = False
    max_bits: int = 0

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def invariant_factors(self) -> list:
        return list(self.diagonal)

    def D(self) -> SparseMatrix:
        D = SparseMatrix(self.ring, *self.shape)
        for i, d in enumerate(self.diagonal):
            D[i, i] = d
        return D

    def _need_tracking(self):
        if not self.tracked:
            raise ValueError("reduction was run without tracking")

    # X -> U X
    def apply_U(self, X: SparseMatrix) -> SparseMatrix:
        self._need_tracking()
        X = X.copy()
        for op in self.row_ops:
            if op[0] == "add":
                X.row_add(op[1], op[2], op[3])
            elif op[0] == "swap":
                X.row_swap(op[1], op[2])
            else:
                X.row_scale(op[1], op[2])
        return X

    # X -> U^{-1} X
    def apply_U_inv(self, X: SparseMatrix) -> SparseMatrix:
        self._need_tracking()
        X = X.copy()
        inv = self.ring.inv
        for op in reversed(self.row_ops):
            if op[0] == "add":
                X.row_add(op[1], op[2], -op[3])
            elif op[0] == "swap":
                X.row_swap(op[1], op[2])
            else:
                X.row_scale(op[1], inv(op[2]))
        return X

    # X -> V X
    def apply_V(self, X: SparseMatrix) -> SparseMatrix:
        self._need_tracking()
        X = X.copy()
        for op in reversed(self.col_ops):
            if op[0] == "add":
                X.row_add(op[2], op[1], op[3])
            elif op[0] == "swap":
                X.row_swap(op[1], op[2])
            else:
                X.row_scale(op[1], op[2])
        return X

    # X -> V^{-1} X
    def apply_V_inv(self, X: SparseMatrix) -> SparseMatrix:
        self._need_tracking()
        X = X.copy()
        inv = self.ring.inv
        for op in self.col_ops:
            if op[0] == "add":
                X.row_add(op[2], op[1], -op[3])
            elif op[0] == "swap":
                X.row_swap(op[1], op[2])
            else:
                X.row_scale(op[1], inv(op[2]))
        return X

    # X -> X V
    def right_V(self, X: SparseMatrix) -> SparseMatrix:
        self._need_tracking()
        X = X.copy()
        for op in self.col_ops:
            if op[0] == "add":
                X.col_add(op[1], op[2], op[3])
            elif op[0] == "swap":
                X.col_swap(op[1], op[2])
            else:
                X.col_scale(op[1], op[2])
        return X

    # X -> X U^{-1}
    def right_U_inv(self, X: SparseMatrix) -> SparseMatrix:
        self._need_tracking()
        X = X.copy()
        inv = self.ring.inv
        for op in self.row_ops:
            if op[0] == "add":
                X.col_add(op[2], op[1], -op[3])
            elif op[0] == "swap":
                X.col_swap(op[1], op[2])
            else:
                X.col_scale(op[1], inv(op[2]))
        return X

    def U(self) -> SparseMatrix:
        return self.apply_U(SparseMatrix.identity(self.ring, self.shape[0]))

    def V(self) -> SparseMatrix:
        return self.right_V(SparseMatrix.identity(self.ring, self.shape[1]))

    def U_inv(self) -> SparseMatrix:
        return self.apply_U_inv(SparseMatrix.identity(self.ring, self.shape[0]))

    def V_inv(self) -> SparseMatrix:
        return self.apply_V_inv(SparseMatrix.identity(self.ring, self.shape[1]))


class _Eliminator:
    def __init__(self, A: SparseMatrix, track: bool):
        self.A = A.copy()
        self.R = A.ring
        self.track = track
        self.row_ops: list = []
        self.col_ops: list = []
        self.max_bits = 0

    # logged elementary operations
    def row_add(self, src, dst, c):
        self.A.row_add(src, dst, c)
        if self.track:
            self.row_ops.append(("add", src, dst, c))

    def col_add(self, src, dst, c):
        self.A.col_add(src, dst, c)
        if self.track:
            self.col_ops.append(("add", src, dst, c))

    def row_swap(self, a, b):
        if a != b:
            self.A.row_swap(a, b)
            if self.track:
                self.row_ops.append(("swap", a, b))

    def col_swap(self, a, b):
        if a != b:
            self.A.col_swap(a, b)
            if self.track:
                self.col_ops.append(("swap", a, b))

    def row_scale(self, i, c):
        self.A.row_scale(i, c)
        if self.track:
            self.row_ops.append(("scale", i, c))

    # pivot selection
    def _choose(self, done_rows):
        A = self.A
        best, best_cost = None, None
        smallest, smallest_abs = None, None
        is_unit = self.R.is_unit
        for i, r in enumerate(A.rows):
            if not r or i in done_rows:
                continue
            rfill = len(r) - 1
            for j, v in r.items():
                if is_unit(v):
                    cost = rfill * (len(A.cols[j]) - 1)
                    if best_cost is None or cost < best_cost:
                        best, best_cost = (i, j), cost
                        if cost == 0:
                            return best, True
                elif best is None:
                    a = abs(v)
                    if smallest_abs is None or a < smallest_abs:
                        smallest, smallest_abs = (i, j), a
        if best is not None:
            return best, True
        return smallest, False

    def _euclid(self, i, j):
        """Shrink the pivot at (i, j) until it divides its row and column (Z only)."""
        A = self.A
        while True:
            p = A.rows[i][j]
            moved = False
            for k in list(A.cols[j]):
                if k != i and A.rows[k][j] % p:
                    self.row_add(i, k, -(A.rows[k][j] // p))
                    i, moved = k, True
                    break
            if moved:
                continue
            for l in list(A.rows[i]):
                if l != j and A.rows[i][l] % p:
                    self.col_add(j, l, -(A.rows[i][l] // p))
                    j, moved = l, True
                    break
            if not moved:
                return i, j

    def _eliminate(self, i, j):
        A, R = self.A, self.R
        p = A.rows[i][j]
        for k in list(A.cols[j]):
            if k != i:
                self.row_add(i, k, -R.div(A.rows[k][j], p))
        if self.track:
            for l in list(A.rows[i]):
                if l != j:
                    self.col_add(j, l, -R.div(A.rows[i][l], p))
        else:
            # column ops only touch row i once column j is cleared
            for l in list(A.rows[i]):
                if l != j:
                    del A.rows[i][l]
                    A.cols[l].discard(i)
        if isinstance(R, Integers):
            for r in A.rows:
                for v in r.values():
                    b = abs(v).bit_length()
                    if b > self.max_bits:
                        self.max_bits = b

    def run(self) -> SnfResult:
        A, R = self.A, self.R
        pivots = []
        done = set()
        while True:
            pos, unit = self._choose(done)
            if pos is None:
                break
            i, j = pos
            if not unit:
                if not isinstance(R, Integers):
                    raise AssertionError("non-unit pivot over a field")
                i, j = self._euclid(i, j)
            self._eliminate(i, j)
            pivots.append((i, j))
            done.add(i)

        # move pivot t to position (t, t)
        where_r = list(range(A.nrows))   # original row -> current position
        at_r = list(range(A.nrows))      # current position -> original row
        where_c = list(range(A.ncols))
        at_c = list(range(A.ncols))
        for t, (i, j) in enumerate(pivots):
            cur = where_r[i]
            if cur != t:
                self.row_swap(t, cur)
                o = at_r[t]
                at_r[t], at_r[cur] = i, o
                where_r[i], where_r[o] = t, cur
            cur = where_c[j]
            if cur != t:
                self.col_swap(t, cur)
                o = at_c[t]
                at_c[t], at_c[cur] = j, o
                where_c[j], where_c[o] = t, cur

        r = len(pivots)
        if isinstance(R, Integers):
            self._sort_diagonal(r)
            self._divisibility_chain(r)
            for t in range(r):
                if A.rows[t][t] < 0:
                    self.row_scale(t, -1)
        else:
            for t in range(r):
                d = A.rows[t][t]
                if d != R.one:
                    self.row_scale(t, R.inv(d))
        diag = [A.rows[t][t] for t in range(r)]
        return SnfResult(R, A.shape, diag, self.row_ops, self.col_ops, self.track, self.max_bits)

    def _sort_diagonal(self, r):
        A = self.A
        # selection sort by swaps so the op log stays elementary
        for t in range(r):
            best = min(range(t, r), key=lambda s: abs(A.rows[s][s]))
            if best != t:
                self.row_swap(t, best)
                self.col_swap(t, best)

    def _divisibility_chain(self, r):
        A = self.A
        for s in range(r):
            for t in range(s + 1, r):
                a, b = A.rows[s][s], A.rows[t][t]
                if b % a == 0:
                    continue
                self._gcd_lcm(s, t)

    def _gcd_lcm(self, s, t):
        """Turn diag(a, b) at positions s, t into diag(gcd, lcm) up to sign."""
        A = self.A
        self.col_add(t, s, 1)           # column s now holds a (row s) and b (row t)
        while A.rows[t].get(s, 0) != 0:
            q = A.rows[s][s] // A.rows[t][s]
            self.row_add(t, s, -q)
            self.row_swap(s, t)
        g = A.rows[s][s]
        c = A.rows[s].get(t, 0)
        if c:
            self.col_add(s, t, -(c // g))


def _reduce(M: SparseMatrix, track: bool) -> SnfResult:
    return _Eliminator(M, track).run()


def snf(M: SparseMatrix, track: bool = False) -> SnfResult:
    """Smith normal form of an integer matrix.

    ``diagonal`` holds the non-zero invariant factors d_1 | d_2 | ... ; with
    ``track`` the elementary operations are kept so ``U() @ M @ V()`` equals
    ``D()``.
    """
    if not isinstance(M.ring, Integers):
        raise RingError("snf expects an integer matrix; use field_rank or reduce over fields")
    return _reduce(M, track)


def reduce_matrix(M: SparseMatrix, track: bool = False) -> SnfResult:
    """Diagonalise over any supported ring (SNF over Z, reduced echelon over a field)."""
    return _reduce(M, track)


def field_rank(M: SparseMatrix) -> int:
    if not M.ring.is_field:
        raise RingError("field_rank needs a matrix over Q or Z/p")
    return _reduce(M, False).rank


def rank(M: SparseMatrix) -> int:
    return _reduce(M, False).rank


class ImageSolver:
    """Solve M x = v repeatedly for a fixed M via one tracked reduction."""

    def __init__(self, M: SparseMatrix, result: SnfResult | None = None):
        self.M = M
        self.result = result if result is not None and result.tracked else _reduce(M, True)

    def solve(self, v):
        """A solution x of M x = v as a list, or None when v is not in the image."""
        M, res, R = self.M, self.result, self.M.ring
        if len(v) != M.nrows:
            raise ValueError(f"vector length {len(v)} != {M.nrows} rows")
        w = res.apply_U(SparseMatrix.column(R, v))
        y = [R.zero] * M.ncols
        for i, r in enumerate(w.rows):
            if not r:
                continue
            val = r[0]
            if i >= res.rank:
                return None
            d = res.diagonal[i]
            if not R.divides(d, val):
                return None
            y[i] = R.div(val, d)
        x = res.apply_V(SparseMatrix.column(R, y))
        return [x[i, 0] for i in range(M.ncols)]

    def contains(self, v) -> bool:
        return self.solve(v) is not None


def column_space_member(M: SparseMatrix, v, ring: Ring | None = None):
    """A coefficient vector x with M x = v, or None if v is not in the column space."""
    if ring is not None and ring != M.ring:
        M = M.change_ring(ring)
    if len(v) != M.nrows:
        raise ValueError(f"vector length {len(v)} != {M.nrows} rows")
    if all(x == 0 for x in v):
        return [M.ring.zero] * M.ncols
    return ImageSolver(M).solve([M.ring.normalize(x) for x in v])


def determinant(rows) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    A = [list(r) for r in rows]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for s in range(k + 1, n):
                if A[s][k] != 0:
                    A[k], A[s] = A[s], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def invariant_factors_from_pivots(values) -> list[int]:
    """Canonical divisibility chain for a diagonal integer matrix (used by tests/oracles)."""
    d = sorted(abs(v) for v in values if v)
    for s in range(len(d)):
        for t in range(s + 1, len(d)):
            g = gcd(d[s], d[t])
            d[s], d[t] = g, d[s] * d[t] // g
    return d
