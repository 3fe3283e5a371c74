"""Discrete Morse matchings on the Hasse diagram of a simplicial complex.

A matching is a set of pairs (sigma, tau) with sigma a facet of tau.  It is a
Morse matching when no face is used twice and the Hasse diagram, with edges
pointing down except matched edges pointing up, has no directed cycle.  Each
matched pair marks a unit entry of a boundary matrix that can be used as an
elimination pivot; :func:`reduce_with_matching` performs all of them and
returns the boundary matrices on the critical faces only.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable

from .chains import SparseMatrix, augmented_boundary, boundary_matrix
from .complex import Simplex, SimplicialComplex
from .errors import InvalidMatchingError, ParseError
from .rings import Ring, ZZ


@dataclass
class MorseMatching:
    pairs: list[tuple[Simplex, Simplex]] = field(default_factory=list)

    def __post_init__(self):
        self.pairs = [(tuple(s), tuple(t)) for s, t in self.pairs]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def add(self, sigma, tau) -> "MorseMatching":
        return MorseMatching(self.pairs + [(tuple(sigma), tuple(tau))])

    def matched(self) -> set:
        return {f for p in self.pairs for f in p}

    def up(self) -> dict:
        return {s: t for s, t in self.pairs}

    def down(self) -> dict:
        return {t: s for s, t in self.pairs}


@dataclass
class MatchingReport:
    ok: bool
    doubly_matched: list = field(default_factory=list)
    cycle: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        if self.doubly_matched:
            return f"faces matched more than once: {self.doubly_matched}"
        return "directed cycle: " + " -> ".join("".join(map(str, f)) for f in self.cycle)


def _check_hasse(K: SimplicialComplex, m: MorseMatching):
    for s, t in m.pairs:
        if len(t) != len(s) + 1 or not set(s) <= set(t) or t not in K or not s:
            raise InvalidMatchingError(f"({s}, {t}) is not an edge of the Hasse diagram")


def _facets_of(t: Simplex):
    return [t[:i] + t[i + 1:] for i in range(len(t))]


def find_cycle(K: SimplicialComplex, m: MorseMatching) -> list:
    """A directed cycle in the modified Hasse diagram as a face sequence, or []."""
    up = m.up()
    down = m.down()

    def succ(f):
        # down along unmatched edges, up along the matched edge
        out = [g for g in _facets_of(f) if len(g) > 0 and down.get(f) != g]
        if f in up:
            out.append(up[f])
        return out

    WHITE, GREY, BLACK = 0, 1, 2
    color: dict = {}
    for start in K.all_faces():
        if color.get(start, WHITE) != WHITE:
            continue
        stack = [(start, iter(succ(start)))]
        path = [start]
        color[start] = GREY
        while stack:
            f, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[f] = BLACK
                stack.pop()
                path.pop()
                continue
            c = color.get(nxt, WHITE)
            if c == GREY:
                return path[path.index(nxt):] + [nxt]
            if c == WHITE:
                color[nxt] = GREY
                stack.append((nxt, iter(succ(nxt))))
                path.append(nxt)
    return []


def validate_matching(K: SimplicialComplex, m: MorseMatching) -> MatchingReport:
    _check_hasse(K, m)
    seen: dict = {}
    dup = []
    for s, t in m.pairs:
        for f in (s, t):
            if f in seen:
                dup.append(f)
            seen[f] = True
    if dup:
        return MatchingReport(False, doubly_matched=sorted(set(dup)))
    cycle = find_cycle(K, m)
    if cycle:
        return MatchingReport(False, cycle=cycle)
    return MatchingReport(True)


def _require_valid(K, m):
    rep = validate_matching(K, m)
    if not rep:
        raise InvalidMatchingError(rep.describe())


def critical_faces(K: SimplicialComplex, m: MorseMatching) -> list[Simplex]:
    _require_valid(K, m)
    used = m.matched()
    return [f for f in K.all_faces() if f not in used]


def _creates_cycle(sigma, tau, up, down) -> bool:
    """Would matching sigma < tau close a V-path cycle?  Both must be unmatched.

    Such a cycle stays in the two dimensions of the pair, so it is enough to
    search from tau down to facets and back up along matched edges.
    """
    seen = {tau}
    stack = [tau]
    while stack:
        t = stack.pop()
        for r in _facets_of(t):
            if down.get(t) == r:
                continue
            if r == sigma:
                if t != tau:
                    return True
                continue
            t2 = up.get(r)
            if t2 is not None and t2 not in seen:
                seen.add(t2)
                stack.append(t2)
    return False


def greedy_matching(K: SimplicialComplex, seed: int = 0) -> MorseMatching:
    """Collapse free faces greedily; when stuck, make a top-dimensional face critical.

    Faces are taken top dimension first, lexicographically within a
    dimension (``seed=0``) or in a seeded random order.  Every pair is
    checked incrementally for acyclicity before insertion.
    """
    faces = K.all_faces()
    key: dict = {}
    rng = random.Random(seed)
    for k in range(K.dim + 1):
        fk = list(K.faces(k))
        if seed:
            rng.shuffle(fk)
        for n, f in enumerate(fk):
            key[f] = (-k, n)

    cofacets: dict = {f: [] for f in faces}
    for f in faces:
        if len(f) > 1:
            for g in _facets_of(f):
                cofacets[g].append(f)
    alive = set(faces)
    up_count = {f: len(cofacets[f]) for f in faces}
    up: dict = {}
    down: dict = {}
    pairs = []

    free = [(key[f], f) for f in faces if up_count[f] == 1]
    heapq.heapify(free)
    remaining = [(key[f], f) for f in faces]
    heapq.heapify(remaining)

    def remove(f):
        alive.discard(f)
        if len(f) > 1:
            for g in _facets_of(f):
                up_count[g] -= 1
                if up_count[g] == 1 and g in alive:
                    heapq.heappush(free, (key[g], g))

    while alive:
        collapsed = False
        while free:
            _, s = heapq.heappop(free)
            if s not in alive or up_count[s] != 1:
                continue
            t = next(c for c in cofacets[s] if c in alive)
            if _creates_cycle(s, t, up, down):
                continue
            up[s], down[t] = t, s
            pairs.append((s, t))
            remove(t)
            remove(s)
            collapsed = True
        if collapsed or not alive:
            continue
        # stuck: the first alive face in (top dimension, key) order becomes critical
        while True:
            _, f = heapq.heappop(remaining)
            if f in alive:
                break
        remove(f)
    return MorseMatching(pairs)


@dataclass
class ReducedComplex:
    """Boundary matrices on critical faces: ``matrices[k]`` maps C_k to C_{k-1}."""

    ring: Ring
    critical: dict
    matrices: dict
    reduced: bool = False

    @property
    def dim(self) -> int:
        return max(self.critical) if self.critical else -1

    def counts(self) -> list[int]:
        return [len(self.critical.get(k, [])) for k in range(self.dim + 1)]


class _Graded:
    """Boundary map stored as row and column dictionaries keyed by simplices."""

    def __init__(self, M: SparseMatrix):
        self.rows: dict = {s: {} for s in M.row_labels}
        self.cols: dict = {t: {} for t in M.col_labels}
        for i, j, v in M.entries():
            s, t = M.row_labels[i], M.col_labels[j]
            self.rows[s][t] = v
            self.cols[t][s] = v

    def drop_row(self, s):
        for t in self.rows.pop(s, {}):
            del self.cols[t][s]

    def drop_col(self, t):
        for s in self.cols.pop(t, {}):
            del self.rows[s][t]

    def to_matrix(self, ring, row_labels, col_labels) -> SparseMatrix:
        M = SparseMatrix(ring, len(row_labels), len(col_labels), row_labels, col_labels)
        cidx = {t: j for j, t in enumerate(col_labels)}
        for i, s in enumerate(row_labels):
            for t, v in self.rows[s].items():
                M.rows[i][cidx[t]] = v
                M.cols[cidx[t]].add(i)
        return M


def reduce_with_matching(K: SimplicialComplex, m: MorseMatching, ring: Ring = ZZ,
                         reduced: bool = False, order: Iterable | None = None) -> ReducedComplex:
    """Eliminate the pivot of every matched pair; keep the critical faces.

    For a pair (a, b) with u = <boundary b, a>, the boundary between remaining
    faces x (dim k) and y (dim k-1) becomes  d(x, y) - d(x, a) u^{-1} d(b, y);
    row b of the next matrix and column a of the previous one are dropped.
    ``order`` lets callers permute the pairs; the result's homology does not
    depend on it.
    """
    _require_valid(K, m)
    norm = ring.normalize
    mats: dict = {}
    for k in range(1, K.dim + 1):
        mats[k] = _Graded(boundary_matrix(K, k, ring))
    if reduced:
        mats[0] = _Graded(augmented_boundary(K, ring))

    pairs = list(order) if order is not None else sorted(m.pairs, key=lambda p: (len(p[1]), p[1]))
    for a, b in pairs:
        k = len(b) - 1
        G = mats[k]
        u = G.rows[a].get(b)
        if u is None or not ring.is_unit(u):
            raise InvalidMatchingError(f"pivot at ({a}, {b}) is not a unit")
        uinv = ring.inv(u)
        row_a = {x: v for x, v in G.rows[a].items() if x != b}
        col_b = {y: v for y, v in G.cols[b].items() if y != a}
        for x, dxa in row_a.items():
            f = norm(dxa * uinv)
            for y, dby in col_b.items():
                val = norm(G.rows[y].get(x, 0) - f * dby)
                if val == 0:
                    if x in G.rows[y]:
                        del G.rows[y][x]
                        del G.cols[x][y]
                else:
                    G.rows[y][x] = val
                    G.cols[x][y] = val
        G.drop_row(a)
        G.drop_col(b)
        if k + 1 in mats:
            mats[k + 1].drop_row(b)
        if k - 1 in mats:
            mats[k - 1].drop_col(a)

    crit_set = set(K.all_faces()) - m.matched()
    critical = {k: [f for f in K.faces(k) if f in crit_set] for k in range(K.dim + 1)}
    out = {}
    for k in range(1, K.dim + 1):
        out[k] = mats[k].to_matrix(ring, critical[k - 1], critical[k])
    if reduced:
        out[0] = mats[0].to_matrix(ring, [()], critical[0])
    else:
        out[0] = SparseMatrix(ring, 0, len(critical[0]), [], critical[0])
    return ReducedComplex(ring, critical, out, reduced)


# ---------------------------------------------------------------------------
# exchange format: one pair per line, "sigma-vertices : tau-vertices"


def parse_matching(text: str) -> MorseMatching:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count(":") != 1:
            raise ParseError(f"line {lineno}: expected 'sigma : tau'")
        left, right = line.split(":")
        try:
            s = tuple(sorted(int(v) for v in left.split()))
            t = tuple(sorted(int(v) for v in right.split()))
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex") from None
        pairs.append((s, t))
    return MorseMatching(pairs)


def format_matching(m: MorseMatching) -> str:
    return "".join(" ".join(map(str, s)) + " : " + " ".join(map(str, t)) + "\n"
                   for s, t in m.pairs)
