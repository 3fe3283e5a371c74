"""Manifold invariants: pseudomanifold checks, fundamental classes, cup and cap
products, cohomology ring tables, intersection forms and Stiefel-Whitney
homology classes.

Sign conventions on the cochain level:

    <f u g, v0..v(i+k)> = (-1)^(ik) <f, v0..vi> <g, vi..v(i+k)>
    f n v0..vk          = (-1)^(i(k-i)) <f, v0..vi> vi..vk

Orientations give the lexicographically least facet the sign +1, so every
quantity depending on [M] is determined up to that global choice.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .chains import Chain, Cochain, boundary_matrix, format_chain, incidence_coefficient
from .complex import SimplicialComplex, link
from .errors import NotAManifoldError, TopologyError
from .homology import degree_basis, homology, reduce_mod_boundaries, is_boundary
from .rings import GF2, Ring, ZZ, QQ
from .smith import determinant, rank


# ---------------------------------------------------------------------------
# pseudomanifolds and orientation


@dataclass
class PseudomanifoldReport:
    dim: int
    pure: bool
    bad_ridges: dict = field(default_factory=dict)   # ridge -> number of facets
    strongly_connected: bool = True
    bad_links: list = field(default_factory=list)    # vertices whose link is not a homology sphere

    @property
    def is_pseudomanifold(self) -> bool:
        return self.pure and not self.bad_ridges and self.strongly_connected

    @property
    def ok(self) -> bool:
        return self.is_pseudomanifold and not self.bad_links

    def failures(self) -> list[str]:
        out = []
        if not self.pure:
            out.append("not pure")
        for r, n in sorted(self.bad_ridges.items()):
            out.append(f"ridge {r} lies in {n} facets")
        if not self.strongly_connected:
            out.append("not strongly connected")
        for v in self.bad_links:
            out.append(f"link of vertex {v} is not a homology {self.dim - 1}-sphere")
        return out


def _ridges(K: SimplicialComplex) -> dict:
    out: dict = {}
    for F in K.facets:
        for i in range(len(F)):
            out.setdefault(F[:i] + F[i + 1:], []).append(F)
    return out


def check_closed_pseudomanifold(K: SimplicialComplex, check_links: bool = True) -> PseudomanifoldReport:
    """Purity, two facets per ridge, strong connectivity and homology-sphere vertex links.

    The link condition is necessary for a combinatorial manifold, not
    sufficient: sphere recognition is not attempted.
    """
    d = K.dim
    rep = PseudomanifoldReport(d, K.is_pure)
    ridges = _ridges(K)
    rep.bad_ridges = {r: len(fs) for r, fs in ridges.items() if len(fs) != 2}

    adj: dict = {F: [] for F in K.facets}
    for fs in ridges.values():
        for a, b in combinations(fs, 2):
            adj[a].append(b)
            adj[b].append(a)
    seen = {K.facets[0]}
    queue = deque([K.facets[0]])
    while queue:
        F = queue.popleft()
        for G in adj[F]:
            if G not in seen:
                seen.add(G)
                queue.append(G)
    rep.strongly_connected = len(seen) == len(K.facets)

    if check_links and d >= 1:
        sphere = [(0, ())] * (d - 1) + [(1, ())]
        for v in K.vertices:
            L = link(K, (v,))
            if L.dim != d - 1 or homology(L, ZZ, reduced=True).signature() != sphere:
                rep.bad_links.append(v)
    return rep


@dataclass
class FundamentalClass:
    """Facet signs of an orientation (oriented) or the all-ones mod 2 cycle."""

    K: SimplicialComplex
    degree: int
    signs: dict
    oriented: bool = True

    def chain(self, ring: Ring | None = None) -> Chain:
        ring = ring or (ZZ if self.oriented else GF2)
        return Chain(self.K, ring, self.degree, self.signs)


def _require_pseudomanifold(K: SimplicialComplex):
    rep = check_closed_pseudomanifold(K, check_links=False)
    if not rep.is_pseudomanifold:
        raise NotAManifoldError("not a closed pseudomanifold: " + "; ".join(rep.failures()))


def orientation(K: SimplicialComplex) -> FundamentalClass | None:
    """Coherent facet signs with the least facet positive, or None if non-orientable."""
    _require_pseudomanifold(K)
    d = K.dim
    ridges = _ridges(K)
    signs = {K.facets[0]: 1}
    queue = deque([K.facets[0]])
    orientable = True
    while queue and orientable:
        F = queue.popleft()
        for i in range(len(F)):
            r = F[:i] + F[i + 1:]
            G = next(x for x in ridges[r] if x != F)
            want = -signs[F] * incidence_coefficient(r, F) * incidence_coefficient(r, G)
            if G not in signs:
                signs[G] = want
                queue.append(G)
            elif signs[G] != want:
                orientable = False
                break

    top_rank = rank(boundary_matrix(K, d, QQ)) if d > 0 else 0
    has_top_class = len(K.facets) - top_rank == 1
    if orientable != has_top_class:
        raise AssertionError("orientation propagation disagrees with H_d")
    if not orientable:
        return None
    M = FundamentalClass(K, d, signs)
    if d > 0 and not M.chain().boundary().is_zero():
        raise AssertionError("signed facet sum is not a cycle")
    return M


def mod2_fundamental_class(K: SimplicialComplex) -> FundamentalClass:
    _require_pseudomanifold(K)
    return FundamentalClass(K, K.dim, {F: 1 for F in K.facets}, oriented=False)


# ---------------------------------------------------------------------------
# products


def _same(a, b):
    if a.K is not b.K and a.K != b.K:
        raise ValueError("(co)chains live on different complexes")
    if a.ring != b.ring:
        raise ValueError("ring mismatch")


def cup(f: Cochain, g: Cochain) -> Cochain:
    _same(f, g)
    i, k = f.dim, g.dim
    K, R = f.K, f.ring
    sign = -1 if (i * k) % 2 else 1
    out = Cochain(K, R, i + k)
    if i + k > K.dim or f.is_zero() or g.is_zero():
        return out
    norm = R.normalize
    coeffs = {}
    for s in K.faces(i + k):
        a = f.coeffs.get(s[:i + 1])
        if a is None:
            continue
        b = g.coeffs.get(s[i:])
        if b is None:
            continue
        v = norm(sign * a * b)
        if v != 0:
            coeffs[s] = v
    out.coeffs = coeffs
    return out


def cap(f: Cochain, c: Chain) -> Chain:
    _same(f, c)
    i, k = f.dim, c.dim
    if i > k:
        raise ValueError(f"cannot cap a degree {i} cochain with a {k}-chain")
    R = f.ring
    norm = R.normalize
    sign = -1 if (i * (k - i)) % 2 else 1
    acc: dict = {}
    for s, v in c.coeffs.items():
        a = f.coeffs.get(s[:i + 1])
        if a is None:
            continue
        back = s[i:]
        acc[back] = acc.get(back, 0) + sign * a * v
    out = Chain(c.K, R, k - i)
    out.coeffs = {s: norm(v) for s, v in acc.items() if norm(v) != 0}
    return out


# ---------------------------------------------------------------------------
# cohomology ring


@dataclass
class RingTable:
    ring: Ring
    generators: dict          # degree -> list of Cochain
    orders: dict              # degree -> list of orders (0 = free)
    products: dict            # ((i, a), (j, b)) -> coordinates in degree i + j

    def product(self, i, a, j, b) -> list:
        return self.products[(i, a), (j, b)]

    def to_dict(self) -> dict:
        return {
            "kind": "cup_table",
            "ring": self.ring.token,
            "generators": {str(k): [{"order": o, "cochain": [[list(s), _num(v)] for s, v in sorted(g.coeffs.items())]}
                                    for g, o in zip(gs, self.orders[k])]
                           for k, gs in self.generators.items()},
            "products": [{"left": [i, a], "right": [j, b], "coordinates": [_num(x) for x in c]}
                         for ((i, a), (j, b)), c in sorted(self.products.items())],
        }

    def to_text(self) -> str:
        lines = []
        for k, gs in sorted(self.generators.items()):
            for a, (g, o) in enumerate(zip(gs, self.orders[k])):
                tag = "free" if o == 0 else f"order {o}"
                lines.append(f"g{k}_{a} ({tag}) = {format_chain(g)}")
        for ((i, a), (j, b)), c in sorted(self.products.items()):
            rhs = " + ".join(f"{x}*g{i + j}_{n}" for n, x in enumerate(c) if x != 0) or "0"
            lines.append(f"g{i}_{a} u g{j}_{b} = {rhs}")
        return "\n".join(lines)


def _num(v):
    return v if isinstance(v, int) else str(v)


def cohomology_ring_table(K: SimplicialComplex, ring: Ring = ZZ) -> RingTable:
    """Cup products of all pairs of cohomology generators in the generator basis."""
    bases = {k: degree_basis(K, ring, k, co=True) for k in range(K.dim + 1)}
    gens = {k: [Cochain.from_vector(K, ring, k, v) for v in b.generator_vectors]
            for k, b in bases.items()}
    orders = {k: b.generator_orders for k, b in bases.items()}
    products = {}
    for i in gens:
        for j in gens:
            if i + j > K.dim:
                continue
            for a, f in enumerate(gens[i]):
                for b, g in enumerate(gens[j]):
                    products[(i, a), (j, b)] = bases[i + j].coordinates(cup(f, g).to_vector())
    return RingTable(ring, gens, orders, products)


# ---------------------------------------------------------------------------
# intersection form


def signature(gram) -> int:
    """Sylvester signature by exact symmetric elimination over Q."""
    A = [[Fraction(x) for x in row] for row in gram]
    n = len(A)
    if any(len(r) != n for r in A) or any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise ValueError("gram matrix must be square and symmetric")
    active = list(range(n))
    pos = neg = 0
    while active:
        p = next((i for i in active if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives diagonal 2 A_ij != 0 (hyperbolic block)
            for t in range(n):
                A[i][t] += A[j][t]
            for t in range(n):
                A[t][i] += A[t][j]
            p = i
        d = A[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for i in active:
            c = A[i][p] / d
            if c:
                for t in range(n):
                    A[i][t] -= c * A[p][t]
                for t in range(n):
                    A[t][i] -= c * A[t][p]
    return pos - neg


@dataclass
class BilinearFormReport:
    gram: list
    parity: str
    signature: int
    determinant: int
    basis: list = field(default_factory=list, repr=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def to_dict(self) -> dict:
        return {"kind": "intersection_form", "rank": self.rank, "gram": self.gram,
                "parity": self.parity, "signature": self.signature,
                "determinant": self.determinant, "unimodular": self.unimodular}

    def to_text(self) -> str:
        rows = "\n".join("  " + " ".join(f"{x:>3}" for x in r) for r in self.gram) or "  (empty)"
        return (f"rank = {self.rank}\ngram =\n{rows}\nparity = {self.parity}\n"
                f"signature = {self.signature}\nunimodular = {self.unimodular}")


def pair_with(f: Cochain, c: Chain):
    from .chains import evaluate
    return evaluate(f, c)


def gram_matrix(classes: list, M: FundamentalClass) -> list[list[int]]:
    fund = M.chain(classes[0].ring) if classes else None
    return [[pair_with(cup(f, g), fund) for g in classes] for f in classes]


def intersection_form(K: SimplicialComplex) -> BilinearFormReport:
    """Gram matrix of <f u g, [M]> on a free basis of H^2, with parity, signature, det."""
    if K.dim != 4:
        raise NotAManifoldError(f"intersection form needs a 4-dimensional complex, got dim {K.dim}")
    rep = check_closed_pseudomanifold(K)
    if not rep.ok:
        raise NotAManifoldError("; ".join(rep.failures()))
    M = orientation(K)
    if M is None:
        raise NotAManifoldError("complex is not orientable")
    basis = degree_basis(K, ZZ, 2, co=True)
    free = [Cochain.from_vector(K, ZZ, 2, v)
            for v, o in zip(basis.generator_vectors, basis.generator_orders) if o == 0]
    gram = gram_matrix(free, M)
    parity = "even" if all(gram[i][i] % 2 == 0 for i in range(len(gram))) else "odd"
    return BilinearFormReport(gram, parity, signature(gram), determinant(gram), free)


# ---------------------------------------------------------------------------
# Stiefel-Whitney homology classes


def regular_pair(sigma, tau) -> bool:
    """Every vertex of tau outside sigma falls into an even-indexed gap of sigma.

    Gap i holds the vertices strictly between sigma[i] and sigma[i+1]; gap -1
    lies below sigma[0] and gap k above sigma[k].
    """
    ss = set(sigma)
    for w in tau:
        if w in ss:
            continue
        if (bisect_left(sigma, w) - 1) % 2:
            return False
    return True


def _cofaces_closed(K: SimplicialComplex, sigma) -> set:
    out = set()
    ss = set(sigma)
    for F in K.facets_containing(sigma):
        extra = [v for v in F if v not in ss]
        for r in range(len(extra) + 1):
            for S in combinations(extra, r):
                out.add(tuple(sorted(sigma + S)))
    return out


def stiefel_whitney_chain(K: SimplicialComplex, k: int) -> Chain:
    """Sum of the k-faces with an odd number of regular pairs (sigma, tau), tau >= sigma."""
    faces = [s for s in K.faces(k)
             if sum(1 for t in _cofaces_closed(K, s) if regular_pair(s, t)) % 2]
    return Chain.from_faces(K, GF2, k, faces)


@dataclass
class StiefelWhitneyReport:
    raw: list             # omega_k as mod 2 chains
    sparse: list          # homologous sparser representatives
    null_homologous: list

    def to_dict(self) -> dict:
        return {"kind": "stiefel_whitney", "classes": [
            {"degree": k, "raw": [list(s) for s in r.support()],
             "sparse": [list(s) for s in sp.support()], "null_homologous": z}
            for k, (r, sp, z) in enumerate(zip(self.raw, self.sparse, self.null_homologous))]}

    def to_text(self) -> str:
        lines = []
        for k, (r, sp, z) in enumerate(zip(self.raw, self.sparse, self.null_homologous)):
            lines.append(f"w_{k} = {format_chain(r)}")
            if sp != r:
                lines.append(f"    ~ {format_chain(sp)}")
            lines.append(f"    null-homologous: {z}")
        return "\n".join(lines)


def stiefel_whitney_classes(K: SimplicialComplex) -> StiefelWhitneyReport:
    """Combinatorial Stiefel-Whitney homology classes of a closed pseudomanifold.

    The classes have their topological meaning only for combinatorial
    manifolds; that hypothesis is left to the caller.
    """
    _require_pseudomanifold(K)
    raw, sparse, null = [], [], []
    for k in range(K.dim + 1):
        w = stiefel_whitney_chain(K, k)
        if k > 0 and not w.boundary().is_zero():
            raise AssertionError(f"omega_{k} is not a mod 2 cycle")
        raw.append(w)
        sparse.append(reduce_mod_boundaries(K, GF2, w) if not w.is_zero() else w)
        null.append(is_boundary(w))
    return StiefelWhitneyReport(raw, sparse, null)


# ---------------------------------------------------------------------------
# Poincare duality


def poincare_duality_check(K: SimplicialComplex, ring: Ring = GF2) -> bool:
    """f -> f n [M] maps a basis of H^k to a basis of H_{d-k} for every k.

    Over Z/2 the mod 2 class is used; other fields need an orientation.
    """
    if not ring.is_field:
        raise TopologyError("duality check is implemented over fields")
    if ring == GF2:
        M = mod2_fundamental_class(K).chain(GF2)
    else:
        O = orientation(K)
        if O is None:
            raise NotAManifoldError("complex is not orientable")
        M = O.chain(ring)
    d = K.dim
    for k in range(d + 1):
        co = degree_basis(K, ring, k, co=True)
        ho = degree_basis(K, ring, d - k)
        if len(co.generator_vectors) != len(ho.generator_vectors):
            return False
        rows = []
        for v in co.generator_vectors:
            img = cap(Cochain.from_vector(K, ring, k, v), M)
            if d - k > 0 and not img.boundary().is_zero():
                return False
            rows.append(ho.coordinates(img.to_vector()))
        if rows:
            from .chains import SparseMatrix
            if rank(SparseMatrix.from_dense(ring, rows)) != len(rows):
                return False
    return True


def report_json(obj) -> str:
    return json.dumps(obj.to_dict(), sort_keys=True)
