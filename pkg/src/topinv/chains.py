"""Chains, cochains and sparse boundary/coboundary matrices."""

from __future__ import annotations

from typing import Iterable

from .complex import Simplex, SimplicialComplex
from .errors import NotAFaceError, ParseError
from .rings import Ring, ZZ, parse_ring


# ---------------------------------------------------------------------------
# sparse matrices


class SparseMatrix:
    """Sparse matrix over an exact ring.

    ``rows[i]`` maps column index to a non-zero entry; ``cols[j]`` is the set
    of row indices with a non-zero entry in column j, kept in sync so that
    pivot search can ask for column fill cheaply.  Row and column labels are
    optional (simplices for boundary matrices).
    """

    __slots__ = ("ring", "nrows", "ncols", "rows", "cols", "row_labels", "col_labels")

    def __init__(self, ring: Ring, nrows: int, ncols: int, row_labels=None, col_labels=None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict] = [dict() for _ in range(nrows)]
        self.cols: list[set] = [set() for _ in range(ncols)]
        self.row_labels = list(row_labels) if row_labels is not None else None
        self.col_labels = list(col_labels) if col_labels is not None else None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dense(cls, ring: Ring, data, **labels) -> "SparseMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        M = cls(ring, len(data), ncols, **labels)
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                M[i, j] = v
        return M

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "SparseMatrix":
        M = cls(ring, n, n)
        for i in range(n):
            M[i, i] = 1
        return M

    @classmethod
    def column(cls, ring: Ring, vec) -> "SparseMatrix":
        M = cls(ring, len(vec), 1)
        for i, v in enumerate(vec):
            M[i, 0] = v
        return M

    def copy(self) -> "SparseMatrix":
        M = SparseMatrix(self.ring, self.nrows, self.ncols, self.row_labels, self.col_labels)
        M.rows = [dict(r) for r in self.rows]
        M.cols = [set(c) for c in self.cols]
        return M

    # -- element access -----------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, self.ring.zero)

    def __setitem__(self, ij, v):
        i, j = ij
        v = self.ring.normalize(v)
        if v == 0:
            if j in self.rows[i]:
                del self.rows[i][j]
                self.cols[j].discard(i)
        else:
            self.rows[i][j] = v
            self.cols[j].add(i)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def entries(self):
        """(row, col, value) triples in row-major order."""
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                yield i, j, r[j]

    def column_entries(self, j: int) -> dict:
        return {i: self.rows[i][j] for i in sorted(self.cols[j])}

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_dense(self) -> list[list]:
        out = [[self.ring.zero] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz}, ring={self.ring})"

    # -- elementary operations ------------------------------------------------

    def row_add(self, src: int, dst: int, c) -> None:
        """row[dst] += c * row[src]"""
        if c == 0:
            return
        norm = self.ring.normalize
        rd = self.rows[dst]
        for j, v in self.rows[src].items():
            x = norm(rd.get(j, 0) + c * v)
            if x == 0:
                if j in rd:
                    del rd[j]
                    self.cols[j].discard(dst)
            else:
                if j not in rd:
                    self.cols[j].add(dst)
                rd[j] = x

    def col_add(self, src: int, dst: int, c) -> None:
        """col[dst] += c * col[src]"""
        if c == 0:
            return
        norm = self.ring.normalize
        cd = self.cols[dst]
        for i in list(self.cols[src]):
            r = self.rows[i]
            x = norm(r.get(dst, 0) + c * r[src])
            if x == 0:
                if dst in r:
                    del r[dst]
                    cd.discard(i)
            else:
                r[dst] = x
                cd.add(i)

    def row_swap(self, a: int, b: int) -> None:
        if a == b:
            return
        ra, rb = self.rows[a], self.rows[b]
        for j in ra:
            self.cols[j].discard(a)
        for j in rb:
            self.cols[j].discard(b)
        self.rows[a], self.rows[b] = rb, ra
        for j in rb:
            self.cols[j].add(a)
        for j in ra:
            self.cols[j].add(b)

    def col_swap(self, a: int, b: int) -> None:
        if a == b:
            return
        ca, cb = self.cols[a], self.cols[b]
        for i in ca | cb:
            r = self.rows[i]
            va, vb = r.pop(a, None), r.pop(b, None)
            if va is not None:
                r[b] = va
            if vb is not None:
                r[a] = vb
        self.cols[a], self.cols[b] = cb, ca

    def row_scale(self, i: int, c) -> None:
        norm = self.ring.normalize
        r = self.rows[i]
        for j in list(r):
            r[j] = norm(r[j] * c)

    def col_scale(self, j: int, c) -> None:
        norm = self.ring.normalize
        for i in self.cols[j]:
            self.rows[i][j] = norm(self.rows[i][j] * c)

    # -- algebra ----------------------------------------------------------------

    def transpose(self) -> "SparseMatrix":
        T = SparseMatrix(self.ring, self.ncols, self.nrows, self.col_labels, self.row_labels)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                T.rows[j][i] = v
                T.cols[i].add(j)
        return T

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        P = SparseMatrix(self.ring, self.nrows, other.ncols, self.row_labels, other.col_labels)
        norm = self.ring.normalize
        for i, r in enumerate(self.rows):
            acc: dict = {}
            for k, a in r.items():
                for j, b in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            for j, v in acc.items():
                v = norm(v)
                if v != 0:
                    P.rows[i][j] = v
                    P.cols[j].add(i)
        return P

    def matvec(self, vec) -> list:
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols} columns")
        norm = self.ring.normalize
        return [norm(sum((v * vec[j] for j, v in r.items()), 0)) for r in self.rows]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "SparseMatrix":
        rows, cols = list(rows), list(cols)
        cpos = {j: n for n, j in enumerate(cols)}
        rl = [self.row_labels[i] for i in rows] if self.row_labels else None
        cl = [self.col_labels[j] for j in cols] if self.col_labels else None
        S = SparseMatrix(self.ring, len(rows), len(cols), rl, cl)
        for n, i in enumerate(rows):
            for j, v in self.rows[i].items():
                if j in cpos:
                    S.rows[n][cpos[j]] = v
                    S.cols[cpos[j]].add(n)
        return S

    def change_ring(self, ring: Ring) -> "SparseMatrix":
        M = SparseMatrix(ring, self.nrows, self.ncols, self.row_labels, self.col_labels)
        for i, j, v in self.entries():
            M[i, j] = v
        return M

    # -- text dump ---------------------------------------------------------------

    def dump(self) -> str:
        """``rows cols ring`` header, then one ``row col value`` line per non-zero."""
        lines = [f"{self.nrows} {self.ncols} {self.ring.token}"]
        lines += [f"{i} {j} {v}" for i, j, v in self.entries()]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty matrix dump")
        try:
            n, m, tok = lines[0].split()
            M = cls(parse_ring(tok), int(n), int(m))
            for ln in lines[1:]:
                i, j, v = ln.split()
                M[int(i), int(j)] = M.ring.normalize(_parse_number(v))
        except ValueError as exc:
            raise ParseError(f"bad matrix dump: {exc}") from None
        return M


def _parse_number(tok: str):
    from fractions import Fraction
    return int(tok) if "/" not in tok else Fraction(tok)


# ---------------------------------------------------------------------------
# incidence numbers and boundary operators


def incidence_coefficient(sigma: Simplex, tau: Simplex) -> int:
    """Coefficient of sigma in the boundary of tau (sigma a facet of tau).

    Removing the vertex at position i of tau contributes (-1)^i.
    """
    sigma, tau = tuple(sigma), tuple(tau)
    if len(tau) != len(sigma) + 1:
        raise NotAFaceError(f"{sigma} is not of codimension 1 in {tau}")
    for i in range(len(tau)):
        if tau[:i] + tau[i + 1:] == sigma:
            return -1 if i % 2 else 1
    raise NotAFaceError(f"{sigma} is not a face of {tau}")


def boundary_matrix(K: SimplicialComplex, k: int, ring: Ring = ZZ) -> SparseMatrix:
    """Matrix of the boundary map C_k -> C_{k-1}: rows (k-1)-faces, columns k-faces.

    For k = 0 this is the zero map with no rows.
    """
    if k < 0 or k > K.dim + 1:
        raise ValueError(f"k={k} out of range for a complex of dimension {K.dim}")
    cols = K.faces(k)
    if k == 0:
        return SparseMatrix(ring, 0, len(cols), [], cols)
    rows = K.faces(k - 1)
    idx = K.index(k - 1)
    M = SparseMatrix(ring, len(rows), len(cols), rows, cols)
    one, mone = ring.normalize(1), ring.normalize(-1)
    for j, tau in enumerate(cols):
        for i in range(len(tau)):
            r = idx[tau[:i] + tau[i + 1:]]
            v = mone if i % 2 else one
            M.rows[r][j] = v
            M.cols[j].add(r)
    return M


def coboundary_matrix(K: SimplicialComplex, k: int, ring: Ring = ZZ) -> SparseMatrix:
    """delta^k : C^k -> C^{k+1}, the transpose of the (k+1)-st boundary matrix."""
    if k < 0 or k > K.dim:
        raise ValueError(f"k={k} out of range for a complex of dimension {K.dim}")
    if k == K.dim:
        return SparseMatrix(ring, 0, len(K.faces(k)), [], K.faces(k))
    return boundary_matrix(K, k + 1, ring).transpose()


def augmented_boundary(K: SimplicialComplex, ring: Ring = ZZ) -> SparseMatrix:
    """boundary_0 with the row of the empty simplex (all ones)."""
    verts = K.faces(0)
    M = SparseMatrix(ring, 1, len(verts), [()], verts)
    for j in range(len(verts)):
        M[0, j] = 1
    return M


# ---------------------------------------------------------------------------
# chains and cochains


class Chain:
    """Finite formal sum of k-faces with coefficients in a ring."""

    co = False

    def __init__(self, K: SimplicialComplex, ring: Ring, dim: int, coeffs=None):
        self.K = K
        self.ring = ring
        self.dim = dim
        self.coeffs: dict = {}
        for s, c in (coeffs or {}).items():
            s = tuple(s)
            if len(s) != dim + 1:
                raise ValueError(f"{s} is not a {dim}-simplex")
            if s not in K:
                raise NotAFaceError(f"{s} is not a face of the complex")
            c = ring.normalize(c)
            if c != 0:
                self.coeffs[s] = ring.normalize(self.coeffs.get(s, 0) + c)
        self.coeffs = {s: c for s, c in self.coeffs.items() if c != 0}

    @classmethod
    def from_vector(cls, K, ring, dim, vec):
        faces = K.faces(dim)
        out = cls(K, ring, dim)
        out.coeffs = {faces[i]: ring.normalize(v) for i, v in enumerate(vec) if ring.normalize(v) != 0}
        return out

    @classmethod
    def from_faces(cls, K, ring, dim, faces, coeff=1):
        return cls(K, ring, dim, {tuple(f): coeff for f in faces})

    def to_vector(self) -> list:
        idx = self.K.index(self.dim)
        vec = [self.ring.zero] * len(idx)
        for s, c in self.coeffs.items():
            vec[idx[s]] = c
        return vec

    def _like(self, coeffs):
        out = type(self)(self.K, self.ring, self.dim)
        out.coeffs = coeffs
        return out

    def _check(self, other):
        if type(other) is not type(self) or other.dim != self.dim or other.ring != self.ring:
            raise ValueError("incompatible (co)chains")

    def __add__(self, other):
        self._check(other)
        norm = self.ring.normalize
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            v = norm(out.get(s, 0) + c)
            if v == 0:
                out.pop(s, None)
            else:
                out[s] = v
        return self._like(out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        norm = self.ring.normalize
        out = {s: norm(v * c) for s, v in self.coeffs.items()}
        return self._like({s: v for s, v in out.items() if v != 0})

    __rmul__ = scale

    def __getitem__(self, s):
        return self.coeffs.get(tuple(s), self.ring.zero)

    def __len__(self) -> int:
        return len(self.coeffs)

    def support(self) -> list[Simplex]:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (type(other) is type(self) and self.dim == other.dim
                and self.ring == other.ring and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_chain(self)})"

    def boundary(self) -> "Chain":
        if self.co:
            raise TypeError("cochains have a coboundary, not a boundary")
        norm = self.ring.normalize
        out: dict = {}
        for s, c in self.coeffs.items():
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                if not f:
                    continue
                out[f] = out.get(f, 0) + (-c if i % 2 else c)
        res = Chain(self.K, self.ring, self.dim - 1)
        res.coeffs = {f: norm(v) for f, v in out.items() if norm(v) != 0}
        return res


class Cochain(Chain):
    """A k-cochain, stored by its values on k-faces."""

    co = True

    def coboundary(self) -> "Cochain":
        norm = self.ring.normalize
        out: dict = {}
        for s, c in self.coeffs.items():
            for t in self.K.cofacets(s):
                out[t] = out.get(t, 0) + c * incidence_coefficient(s, t)
        res = Cochain(self.K, self.ring, self.dim + 1)
        res.coeffs = {f: norm(v) for f, v in out.items() if norm(v) != 0}
        return res

    def __call__(self, s):
        return self[s]


def evaluate(f: Cochain, c: Chain):
    """The pairing <f, c>."""
    if f.dim != c.dim:
        raise ValueError("degree mismatch")
    return f.ring.normalize(sum((v * f[s] for s, v in c.coeffs.items()), 0))


def format_chain(c: Chain) -> str:
    """``{567} - {568} + ...`` style text, cochains carry a ``*``."""
    if not c.coeffs:
        return "0"
    star = "*" if c.co else ""
    parts = []
    for s in sorted(c.coeffs):
        v = c.coeffs[s]
        name = "{" + " ".join(c.K.label(x) for x in s) + "}" + star
        neg = c.ring.token in ("z", "q") and v < 0
        mag = -v if neg else v
        term = name if mag == 1 else f"{mag}*{name}"
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts)
