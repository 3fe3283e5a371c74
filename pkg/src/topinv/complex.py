"""Finite abstract simplicial complexes given by their facets.

A simplex is a strictly increasing tuple of non-negative vertex ids; ``()`` is
the (-1)-simplex.  A :class:`SimplicialComplex` stores only its facets and
enumerates lower-dimensional faces lazily, one dimension at a time.

>>> K = parse_facets("0 1\\n0 1 2")
>>> K.f_vector()
(3, 3, 1)
>>> K.absorbed
True
"""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Iterable, Sequence

from .errors import EmptyComplexError, MalformedFacetError, NotAFaceError

Simplex = tuple  # tuple[int, ...], strictly increasing


def simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(sorted(vertices))
    if len(set(s)) != len(s):
        raise MalformedFacetError(f"repeated vertex in {s}")
    if s and s[0] < 0:
        raise MalformedFacetError(f"negative vertex in {s}")
    return s


def _maximal(faces: Iterable[Simplex]) -> tuple[list[Simplex], bool]:
    """Drop faces contained in other faces; report whether anything was dropped."""
    uniq = sorted(set(faces), key=lambda f: (-len(f), f))
    kept: list[Simplex] = []
    kept_sets: list[frozenset] = []
    absorbed = False
    for f in uniq:
        fs = frozenset(f)
        if any(fs <= g for g in kept_sets):
            absorbed = True
            continue
        kept.append(f)
        kept_sets.append(fs)
    return sorted(kept), absorbed


class SimplicialComplex:
    """Immutable simplicial complex determined by its inclusion-maximal faces.

    ``labels`` optionally maps vertex ids back to the tokens they were parsed
    from.  ``absorbed`` is set when some input face was not maximal.
    """

    def __init__(self, facets: Iterable[Iterable[int]], labels: dict[int, str] | None = None):
        raw = [simplex(f) for f in facets]
        raw = [f for f in raw if f]
        if not raw:
            raise EmptyComplexError("complex has no faces")
        self.facets, self.absorbed = _maximal(raw)
        self.facets = tuple(self.facets)
        self.vertices = tuple(sorted({v for f in self.facets for v in f}))
        self.dim = max(len(f) for f in self.facets) - 1
        self.labels = dict(labels) if labels else None
        self._faces: dict[int, tuple[Simplex, ...]] = {}
        self._index: dict[int, dict[Simplex, int]] = {}
        self._lock = threading.Lock()

    # -- face lattice -----------------------------------------------------

    def faces(self, k: int) -> tuple[Simplex, ...]:
        """All k-faces in lexicographic order; ``((),)`` for k = -1."""
        if k < -1:
            raise ValueError("k must be >= -1")
        if k == -1:
            return ((),)
        if k > self.dim:
            return ()
        cached = self._faces.get(k)
        if cached is not None:
            return cached
        with self._lock:
            if k not in self._faces:
                out = set()
                for f in self.facets:
                    if len(f) > k:
                        out.update(combinations(f, k + 1))
                self._faces[k] = tuple(sorted(out))
            return self._faces[k]

    def index(self, k: int) -> dict[Simplex, int]:
        """Position of each k-face in :meth:`faces`."""
        cached = self._index.get(k)
        if cached is None:
            cached = {s: i for i, s in enumerate(self.faces(k))}
            with self._lock:
                self._index[k] = cached
        return cached

    def all_faces(self) -> list[Simplex]:
        return [s for k in range(self.dim + 1) for s in self.faces(k)]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    @property
    def size(self) -> int:
        """Number of vertex-facet incidences."""
        return sum(len(f) for f in self.facets)

    @property
    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __contains__(self, s) -> bool:
        s = tuple(s)
        if not s:
            return True
        if len(s) - 1 > self.dim:
            return False
        return s in self.index(len(s) - 1)

    def cofacets(self, s: Simplex) -> list[Simplex]:
        """Faces of dimension dim(s)+1 containing s."""
        ss = set(s)
        out = set()
        for f in self.facets:
            if ss.issubset(f):
                for v in f:
                    if v not in ss:
                        out.add(tuple(sorted(s + (v,))))
        return sorted(out)

    def facets_containing(self, s: Simplex) -> list[Simplex]:
        ss = set(s)
        return [f for f in self.facets if ss.issubset(f)]

    def label(self, v: int) -> str:
        if self.labels and v in self.labels:
            return self.labels[v]
        return str(v)

    # -- comparison / display --------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"

    def to_text(self) -> str:
        """Facet list in the input format, using original labels."""
        lines = [" ".join(self.label(v) for v in f) for f in self.facets]
        return "\n".join(lines) + "\n"


def parse_facets(text: str) -> SimplicialComplex:
    """Parse a facet-list document.

    One facet per line, vertex tokens separated by whitespace, ``#`` starts a
    comment.  Integer tokens are ordered numerically, anything else as
    strings; ids are then assigned densely from 0 in that order.
    """
    rows: list[list[str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(set(toks)) != len(toks):
            raise MalformedFacetError(f"line {lineno}: duplicate vertex in {line!r}")
        rows.append(toks)
    if not rows:
        raise EmptyComplexError("facet list is empty")

    tokens = {t for r in rows for t in r}
    if all(_is_int(t) for t in tokens):
        order = sorted(tokens, key=int)
    else:
        order = sorted(tokens)
    ids = {t: i for i, t in enumerate(order)}
    labels = {i: t for t, i in ids.items()}
    return SimplicialComplex(([ids[t] for t in r] for r in rows), labels=labels)


def _is_int(tok: str) -> bool:
    try:
        return int(tok) >= 0
    except ValueError:
        return False


def link(K: SimplicialComplex, s: Sequence[int]) -> SimplicialComplex:
    """All faces t disjoint from s with t | s in K."""
    s = tuple(sorted(s))
    if s not in K:
        raise NotAFaceError(f"{s} is not a face")
    ss = set(s)
    facets = [tuple(v for v in f if v not in ss) for f in K.facets_containing(s)]
    facets = [f for f in facets if f]
    if not facets:
        raise EmptyComplexError(f"link of {s} is empty")
    return SimplicialComplex(facets, labels=K.labels)


def wedge(K: SimplicialComplex, v: int, L: SimplicialComplex, w: int) -> SimplicialComplex:
    """One-point union identifying v in K with w in L.

    K keeps its vertex ids; every other vertex u of L becomes u + max(K) + 1.
    """
    if v not in K.vertices:
        raise NotAFaceError(f"vertex {v} not in first complex")
    if w not in L.vertices:
        raise NotAFaceError(f"vertex {w} not in second complex")
    shift = max(K.vertices) + 1

    def move(u):
        return v if u == w else u + shift

    return SimplicialComplex(list(K.facets) + [[move(u) for u in f] for f in L.facets])


def induced_subcomplex(K: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    vs = set(vertices)
    return SimplicialComplex(tuple(v for v in f if v in vs) for f in K.facets)


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    """The complex of all faces of dimension at most k."""
    return SimplicialComplex(K.faces(min(k, K.dim)) + tuple(
        f for f in K.facets if len(f) <= k + 1))
