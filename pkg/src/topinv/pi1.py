"""Edge-path presentations of the fundamental group.

Generators are the edges outside a BFS spanning tree; every triangle
w0 w1 w2 contributes the relator (w0w1)(w1w2)(w0w2)^-1 with tree edges
deleted.  Words are lists of nonzero ints: +n is generator n-1, -n its inverse.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .chains import SparseMatrix
from .complex import SimplicialComplex
from .errors import DisconnectedError
from .homology import AbelianGroup
from .rings import ZZ
from .smith import snf


def spanning_tree(K: SimplicialComplex) -> set:
    """BFS tree edges from the least vertex, neighbours in increasing order."""
    adj: dict = {v: [] for v in K.vertices}
    for a, b in K.faces(1):
        adj[a].append(b)
        adj[b].append(a)
    root = K.vertices[0]
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add((min(v, w), max(v, w)))
                queue.append(w)
    if len(seen) != len(K.vertices):
        raise DisconnectedError(f"complex has {len(K.vertices) - len(seen) + 1}+ components; pi_1 needs a connected complex")
    return tree


def free_reduce(word) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(word) -> list[int]:
    w = free_reduce(word)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def invert(word) -> list[int]:
    return [-x for x in reversed(word)]


@dataclass
class GroupPresentation:
    generators: list                      # names
    relators: list = field(default_factory=list)
    edges: list = field(default_factory=list)   # edge behind each generator, if any

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def word_text(self, w) -> str:
        if not w:
            return "1"
        parts = []
        for x in w:
            name = self.generators[abs(x) - 1]
            parts.append(name if x > 0 else name + "^-1")
        return " ".join(parts)

    def to_text(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(self.word_text(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def to_dict(self) -> dict:
        return {"kind": "pi1", "generators": list(self.generators),
                "edges": [list(e) for e in self.edges],
                "relators": [list(r) for r in self.relators]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def exponent_matrix(self) -> SparseMatrix:
        M = SparseMatrix(ZZ, len(self.relators), self.ngens)
        for i, r in enumerate(self.relators):
            for x in r:
                j = abs(x) - 1
                M[i, j] = M[i, j] + (1 if x > 0 else -1)
        return M


def presentation(K: SimplicialComplex, simplify_result: bool = False) -> GroupPresentation:
    tree = spanning_tree(K)
    gen_edges = [e for e in K.faces(1) if e not in tree]
    num = {e: n + 1 for n, e in enumerate(gen_edges)}
    rels = []
    for a, b, c in K.faces(2):
        word = [num[e] for e in ((a, b), (b, c)) if e in num]
        if (a, c) in num:
            word.append(-num[(a, c)])
        w = free_reduce(word)
        if w:
            rels.append(w)
    names = [f"x{n}" for n in range(len(gen_edges))]
    P = GroupPresentation(names, rels, gen_edges)
    return simplify(P) if simplify_result else P


def abelianization(P: GroupPresentation) -> AbelianGroup:
    """SNF of the exponent-sum matrix: Z^(n - rank) plus the non-unit factors."""
    if P.ngens == 0:
        return AbelianGroup(0, ())
    if not P.relators:
        return AbelianGroup(P.ngens, ())
    res = snf(P.exponent_matrix())
    return AbelianGroup(P.ngens - res.rank, tuple(d for d in res.invariant_factors if d != 1))


def _substitute(word, g, repl) -> list[int]:
    out = []
    for x in word:
        if x == g:
            out.extend(repl)
        elif x == -g:
            out.extend(invert(repl))
        else:
            out.append(x)
    return free_reduce(out)


def _solve_for(rel, g):
    """Rewrite a relator containing g exactly once as g = word."""
    i = next(n for n, x in enumerate(rel) if abs(x) == g)
    rest = rel[i + 1:] + rel[:i]           # rel ~ g^e * rest (cyclic rotation)
    return invert(rest) if rel[i] > 0 else rest


def simplify(P: GroupPresentation, max_len: int = 12) -> GroupPresentation:
    """Tietze moves: drop a generator that appears exactly once in some relator.

    Relators are cyclically reduced and deduplicated up to rotation and
    inversion.  Substitutions that would grow any relator beyond ``max_len``
    times its original length are skipped so the output stays small.
    """
    rels = [cyclic_reduce(r) for r in P.relators]
    alive = list(range(1, P.ngens + 1))
    changed = True
    while changed:
        changed = False
        rels = _dedupe([r for r in rels if r])
        for r in sorted(rels, key=len):
            counts: dict = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            g = next((g for g in sorted(counts) if counts[g] == 1), None)
            if g is None:
                continue
            repl = _solve_for(r, g)
            new = [cyclic_reduce(_substitute(s, g, repl)) for s in rels if s is not r]
            if any(len(s) > max_len * max(len(r), 1) for s in new):
                continue
            rels = new
            alive.remove(g)
            changed = True
            break
    renum = {g: n + 1 for n, g in enumerate(alive)}
    out = [[renum[abs(x)] * (1 if x > 0 else -1) for x in r] for r in rels]
    names = [P.generators[g - 1] for g in alive]
    edges = [P.edges[g - 1] for g in alive] if P.edges else []
    return GroupPresentation(names, _dedupe(out), edges)


def _canon(w):
    forms = []
    for v in (w, invert(w)):
        for i in range(len(v)):
            forms.append(tuple(v[i:] + v[:i]))
    return min(forms)


def _dedupe(rels):
    seen = set()
    out = []
    for r in rels:
        c = _canon(r)
        if c not in seen:
            seen.add(c)
            out.append(r)
    return out
