"""Homology and cohomology over Z, Q and Z/p, with representative (co)cycles.

For a degree k with outgoing map A (C_k -> C_{k-1} for homology, C^k ->
C^{k+1} for cohomology) and incoming map B, the group is read off two
reductions:

* the tracked reduction U A V = D gives ker A as the trailing columns Z of V;
* B rewritten in those kernel coordinates, W = (V^{-1} B)[r:], is reduced
  again, P W Q = E.  The columns of Z P^{-1} are generators: diagonal entries
  e > 1 of E give torsion of order e, columns past rank(W) are free.

Without representatives only ranks and invariant factors are needed.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .chains import (Chain, Cochain, SparseMatrix, augmented_boundary, boundary_matrix,
                     format_chain)
from .complex import SimplicialComplex
from .errors import TopologyError
from .rings import Integers, Ring, ZZ, ring_name
from .smith import ImageSolver, SnfResult, reduce_matrix


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: Z^free_rank + Z/t_1 + ... with t_i | t_{i+1}."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def format(self, base: str = "Z") -> str:
        parts = []
        if self.free_rank == 1:
            parts.append(base)
        elif self.free_rank > 1:
            parts.append(f"{base}^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def group_from_ranks(n: int, out_rank: int, inc: SnfResult) -> AbelianGroup:
    free = n - out_rank - inc.rank
    tors = [d for d in inc.diagonal if isinstance(inc.ring, Integers) and d > 1]
    return AbelianGroup(free, tuple(tors))


# ---------------------------------------------------------------------------
# per-degree basis data


class DegreeBasis:
    """Generators of one (co)homology group and the map from (co)cycles to coordinates."""

    def __init__(self, ring: Ring, out: SparseMatrix, inc: SparseMatrix):
        self.ring = ring
        n = out.ncols
        self.n = n
        self.out_snf = reduce_matrix(out, track=True)
        r = self.out_snf.rank
        self.r = r
        ident = SparseMatrix.identity(ring, n)
        Z = self.out_snf.right_V(ident).submatrix(range(n), range(r, n))
        W = self.out_snf.apply_V_inv(inc).submatrix(range(r, n), range(inc.ncols))
        self.w_snf = reduce_matrix(W, track=True)
        G = self.w_snf.right_U_inv(Z)
        s = self.w_snf.rank
        z = n - r
        # order of each coordinate: 0 = free, 1 = trivial, e > 1 = torsion
        self.orders = [self.w_snf.diagonal[i] if i < s else 0 for i in range(z)]
        if ring.is_field:
            self.orders = [1 if i < s else 0 for i in range(z)]
        self.keep = [i for i in range(z) if self.orders[i] != 1]
        self.keep.sort(key=lambda i: (self.orders[i] == 0, i))
        self.generator_vectors = [[G[row, i] for row in range(n)] for i in self.keep]

    @property
    def group(self) -> AbelianGroup:
        tors = tuple(self.orders[i] for i in self.keep if self.orders[i] > 1)
        free = sum(1 for i in self.keep if self.orders[i] == 0)
        return AbelianGroup(free, tors)

    @property
    def generator_orders(self) -> list[int]:
        return [self.orders[i] for i in self.keep]

    def coordinates(self, vec) -> list:
        """Coefficients of the class of a (co)cycle in the generator basis.

        Torsion coordinates are reduced modulo their order.
        """
        x = self.out_snf.apply_V_inv(SparseMatrix.column(self.ring, vec))
        for i in range(self.r):
            if x.rows[i]:
                raise TopologyError("vector is not a (co)cycle")
        x = x.submatrix(range(self.r, self.n), [0])
        y = self.w_snf.apply_U(x)
        out = []
        for i in self.keep:
            v = y[i, 0]
            e = self.orders[i]
            out.append(v % e if e > 1 else v)
        return out

    def is_trivial_class(self, vec) -> bool:
        return all(c == 0 for c in self.coordinates(vec))


# ---------------------------------------------------------------------------
# reports


@dataclass
class HomologyReport:
    ring: Ring
    groups: list
    dimension: int
    reduced: bool = False
    cohomology: bool = False
    representatives: dict | None = None
    bases: dict | None = field(default=None, repr=False)

    def __getitem__(self, k: int) -> AbelianGroup:
        if 0 <= k < len(self.groups):
            return self.groups[k]
        return AbelianGroup()

    def betti(self) -> list[int]:
        return [g.free_rank for g in self.groups]

    def signature(self) -> list[tuple]:
        """Comparable summary: (free_rank, torsion) per degree."""
        return [(g.free_rank, g.torsion) for g in self.groups]

    def to_dict(self) -> dict:
        d = {
            "kind": "cohomology" if self.cohomology else "homology",
            "dimension": self.dimension,
            "ring": self.ring.token,
            "reduced": self.reduced,
            "groups": [g.to_dict() for g in self.groups],
        }
        if self.representatives is not None:
            d["representatives"] = {
                str(k): [{"order": o, "chain": [[list(s), _num(v)] for s, v in sorted(c.coeffs.items())]}
                         for c, o in zip(reps, self.bases[k].generator_orders)]
                for k, reps in self.representatives.items()
            }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        sym = "H^" if self.cohomology else "H_"
        if self.reduced:
            sym = "~" + sym
        base = ring_name(self.ring) if self.ring.is_field else "Z"
        lines = [f"{sym}{k} = {g.format(base)}" for k, g in enumerate(self.groups)]
        if self.representatives:
            for k, reps in sorted(self.representatives.items()):
                for n, (c, o) in enumerate(zip(reps, self.bases[k].generator_orders)):
                    tag = "free" if o == 0 else f"order {o}"
                    lines.append(f"  {sym}{k} generator {n} ({tag}): {format_chain(c)}")
        return "\n".join(lines)


def _num(v):
    return v if isinstance(v, int) else str(v)


# ---------------------------------------------------------------------------
# chain complexes as lists of matrices


def _boundaries(K: SimplicialComplex, ring: Ring, reduced: bool) -> dict:
    mats = {k: boundary_matrix(K, k, ring) for k in range(K.dim + 1)}
    if reduced:
        mats[0] = augmented_boundary(K, ring)
    n_top = len(K.faces(K.dim))
    mats[K.dim + 1] = SparseMatrix(ring, n_top, 0)
    return mats


def _complex_matrices(K, ring, reduced, strategy, seed):
    if strategy == "raw":
        return _boundaries(K, ring, reduced)
    if strategy == "morse":
        from .morse import greedy_matching, reduce_with_matching
        R = reduce_with_matching(K, greedy_matching(K, seed), ring, reduced=reduced)
        mats = dict(R.matrices)
        mats[K.dim + 1] = SparseMatrix(ring, len(R.critical[K.dim]), 0)
        return mats
    raise ValueError(f"unknown strategy {strategy!r}")


def _dualize(mats: dict, d: int) -> tuple[dict, dict]:
    """Coboundary maps: out[k] = delta^k = d_{k+1}^T, inc[k] = delta^{k-1} = d_k^T."""
    T = {k: mats[k].transpose() for k in range(d + 2)}
    return {k: T[k + 1] for k in range(d + 1)}, {k: T[k] for k in range(d + 1)}


def _assemble(K, ring, out, inc, d, with_reps, jobs, reduced, co) -> HomologyReport:
    degrees = list(range(d + 1))
    if with_reps:
        def work(k):
            return DegreeBasis(ring, out[k], inc[k])
        bases = _map(work, degrees, jobs)
        groups = [b.group for b in bases]
        cls = Cochain if co else Chain
        reps = {k: [cls.from_vector(K, ring, k, v) for v in bases[k].generator_vectors]
                for k in degrees}
        return HomologyReport(ring, groups, K.dim, reduced, co, reps, dict(enumerate(bases)))

    # each map is the outgoing map of one degree and the incoming map of the next
    maps = {id(m): m for k in degrees for m in (out[k], inc[k])}
    keys = list(maps)
    done = dict(zip(keys, _map(lambda key: reduce_matrix(maps[key]), keys, jobs)))
    groups = [group_from_ranks(out[k].ncols, done[id(out[k])].rank, done[id(inc[k])])
              for k in degrees]
    return HomologyReport(ring, groups, K.dim, reduced, co)


def groups_from_matrices(ring: Ring, mats: dict, d: int) -> list[AbelianGroup]:
    """Homology of a chain complex given as ``mats[k]: C_k -> C_{k-1}`` for k = 0..d."""
    mats = dict(mats)
    mats[d + 1] = SparseMatrix(ring, mats[d].ncols, 0)
    res = {k: reduce_matrix(mats[k]) for k in range(d + 2)}
    return [group_from_ranks(mats[k].ncols, res[k].rank, res[k + 1]) for k in range(d + 1)]


def _map(fn, xs, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, xs))
    return [fn(x) for x in xs]


def homology(K: SimplicialComplex, ring: Ring = ZZ, reduced: bool = False, strategy: str = "raw",
             with_reps: bool = False, jobs: int = 1, seed: int = 0) -> HomologyReport:
    """H_k(K; ring) for k = 0..dim K.

    ``strategy="morse"`` first shrinks the boundary matrices with a greedy
    Morse matching; the groups are identical.  Representatives always come
    from the unreduced matrices because they must live on the original faces.
    """
    d = K.dim
    if with_reps:
        mats = _boundaries(K, ring, reduced)
    else:
        mats = _complex_matrices(K, ring, reduced, strategy, seed)
    out = {k: mats[k] for k in range(d + 1)}
    inc = {k: mats[k + 1] for k in range(d + 1)}
    return _assemble(K, ring, out, inc, d, with_reps, jobs, reduced, co=False)


def cohomology(K: SimplicialComplex, ring: Ring = ZZ, with_reps: bool = False,
               strategy: str = "raw", jobs: int = 1, seed: int = 0) -> HomologyReport:
    """H^k(K; ring) computed on the transposed boundary matrices."""
    d = K.dim
    if with_reps:
        mats = _boundaries(K, ring, False)
    else:
        mats = _complex_matrices(K, ring, False, strategy, seed)
    out, inc = _dualize(mats, d)
    return _assemble(K, ring, out, inc, d, with_reps, jobs, False, co=True)


def degree_basis(K: SimplicialComplex, ring: Ring, k: int, co: bool = False,
                 reduced: bool = False) -> DegreeBasis:
    """Basis data for a single degree (cheaper than a full report)."""
    d = K.dim
    if k < 0 or k > d:
        raise ValueError(f"degree {k} out of range")
    mats = {j: boundary_matrix(K, j, ring) for j in range(max(0, k - 1), min(d, k + 1) + 1)}
    if reduced:
        mats[0] = augmented_boundary(K, ring)
    if k + 1 > d:
        mats[k + 1] = SparseMatrix(ring, len(K.faces(d)), 0)
    if co:
        out = mats[k + 1].transpose()
        inc = mats[k].transpose() if mats[k].nrows else SparseMatrix(ring, mats[k].ncols, 0)
    else:
        out, inc = mats[k], mats[k + 1]
    return DegreeBasis(ring, out, inc)


def representative_generators(K: SimplicialComplex, ring: Ring, k: int, co: bool = False) -> list:
    """(Co)cycles whose classes generate H_k (or H^k); torsion generators first."""
    basis = degree_basis(K, ring, k, co)
    cls = Cochain if co else Chain
    return [cls.from_vector(K, ring, k, v) for v in basis.generator_vectors]


# ---------------------------------------------------------------------------
# working modulo boundaries


def boundary_solver(K: SimplicialComplex, ring: Ring, k: int) -> ImageSolver:
    """Solver for membership in B_k = im(d_{k+1})."""
    if k + 1 > K.dim:
        return ImageSolver(SparseMatrix(ring, len(K.faces(k)), 0))
    return ImageSolver(boundary_matrix(K, k + 1, ring))


def is_boundary(c: Chain) -> bool:
    if c.is_zero():
        return True
    return boundary_solver(c.K, c.ring, c.dim).contains(c.to_vector())


def homologous(a: Chain, b: Chain) -> bool:
    return is_boundary(a - b)


def _greedy_shrink(c: Chain, cofaces) -> Chain:
    """Add boundaries of single (k+1)-faces while that strictly shrinks the support."""
    R = c.ring
    norm = R.normalize
    coeffs = dict(c.coeffs)
    bnd = {t: [(t[:i] + t[i + 1:], -1 if i % 2 else 1) for i in range(len(t))] for t in cofaces}
    touching: dict = {}
    for t, fs in bnd.items():
        for f, _ in fs:
            touching.setdefault(f, []).append(t)
    while True:
        best, best_gain = None, 0
        for s in list(coeffs):
            for t in touching.get(s, ()):
                sign = dict(bnd[t])[s]
                lam = norm(-coeffs[s] * sign)  # sign is its own inverse
                gain = 0
                for f, e in bnd[t]:
                    old = coeffs.get(f, 0)
                    new = norm(old + lam * e)
                    gain += (old != 0) - (new != 0)
                if gain > best_gain:
                    best, best_gain = (t, lam), gain
        if best is None:
            break
        t, lam = best
        for f, e in bnd[t]:
            v = norm(coeffs.get(f, 0) + lam * e)
            if v == 0:
                coeffs.pop(f, None)
            else:
                coeffs[f] = v
    out = Chain(c.K, R, c.dim)
    out.coeffs = coeffs
    return out


def reduce_mod_boundaries(K: SimplicialComplex, ring: Ring, c: Chain) -> Chain:
    """A homologous cycle with support no larger than c's (heuristic, not minimal).

    Greedy single-face boundary additions are run on c itself and on the
    combination of basis generators representing c's class; the smaller
    result wins.
    """
    if c.co:
        raise TypeError("expected a chain")
    if c.dim > 0 and not c.boundary().is_zero():
        raise TopologyError("input is not a cycle")
    k = c.dim
    cofaces = K.faces(k + 1) if k + 1 <= K.dim else ()
    candidates = [c]
    basis = degree_basis(K, ring, k)
    coords = basis.coordinates(c.to_vector())
    alt = Chain(K, ring, k)
    for coef, vec in zip(coords, basis.generator_vectors):
        if coef != 0:
            alt = alt + Chain.from_vector(K, ring, k, vec).scale(coef)
    candidates.append(alt)
    results = [_greedy_shrink(x, cofaces) for x in candidates]
    results = [x for x in results if len(x) <= len(c)] or [c]
    best = min(results, key=lambda x: (len(x), sorted(x.coeffs.items())))
    if not homologous(best, c):
        raise AssertionError("sparsification changed the homology class")
    return best
