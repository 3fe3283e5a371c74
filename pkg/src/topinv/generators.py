"""Named example complexes and small constructions.

The registry in :data:`BUILTINS` is what the CLI's ``--builtin`` flag looks
up; parametrised entries take the form ``name:arg``.
"""

from __future__ import annotations

import random
from itertools import combinations

from .complex import SimplicialComplex, skeleton
from .errors import ParseError


def boundary_simplex(d: int) -> SimplicialComplex:
    """Boundary of the (d+1)-simplex on vertices 0..d+1, a d-sphere."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return SimplicialComplex(combinations(range(d + 2), d + 1))


def full_simplex(d: int) -> SimplicialComplex:
    return SimplicialComplex([range(d + 1)])


def ck_complex(k: int) -> SimplicialComplex:
    """2-complex with H_1 = Z/k and H_2 = 0, f-vector (3k+4, 12k+3, 9k).

    A disc made of a cone over the cycle u_0..u_{3k-1} (apex z = 0) plus an
    outer annulus whose boundary wraps k times around the triangle abc.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    n = 3 * k
    z = 0
    u = [1 + j for j in range(n)]
    abc = (n + 1, n + 2, n + 3)
    w = [abc[j % 3] for j in range(n)]
    tris = []
    for j in range(n):
        j1 = (j + 1) % n
        tris.append((z, u[j], u[j1]))
        tris.append((u[j], u[j1], w[j1]))
        tris.append((u[j], w[j], w[j1]))
    return SimplicialComplex(tris)


RP2_6_FACETS = [
    (0, 1, 2), (0, 1, 4), (0, 2, 3), (0, 3, 5), (0, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 3, 5), (2, 3, 4), (2, 4, 5),
]


def rp2_6() -> SimplicialComplex:
    """The vertex-minimal 6-vertex triangulation of the real projective plane."""
    return SimplicialComplex(RP2_6_FACETS)


# an optimal Morse matching on rp2_6 with critical faces 4, 45 and 012
RP2_6_MATCHING = [
    ((0,), (0, 1)), ((1,), (1, 2)), ((2,), (2, 3)), ((3,), (3, 4)), ((5,), (3, 5)),
    ((0, 4), (0, 1, 4)), ((0, 2), (0, 2, 3)), ((0, 3), (0, 3, 5)), ((0, 5), (0, 4, 5)),
    ((1, 5), (1, 2, 5)), ((1, 4), (1, 3, 4)), ((1, 3), (1, 3, 5)), ((2, 4), (2, 3, 4)),
    ((2, 5), (2, 4, 5)),
]

# the cocycle b generating H^2 of cp2_9, with signs
CP2_9_COCYCLE_B = {
    (1, 2, 5): 1, (1, 2, 8): 1, (1, 3, 7): 1, (1, 3, 8): 1, (1, 4, 6): 1, (1, 4, 8): 1,
    (2, 3, 5): -1, (2, 4, 6): 1, (2, 5, 6): 1, (2, 6, 8): -1, (3, 4, 7): -1, (3, 5, 7): -1,
    (3, 5, 8): -1, (4, 6, 7): 1, (4, 7, 8): -1, (5, 6, 7): 1,
}

CP2_9_FACETS = [
    (0, 1, 2, 3, 4), (0, 1, 2, 3, 6), (0, 1, 2, 4, 7), (0, 1, 2, 6, 7),
    (0, 1, 3, 4, 5), (0, 1, 3, 5, 6), (0, 1, 4, 5, 7), (0, 1, 5, 6, 8),
    (0, 1, 5, 7, 8), (0, 1, 6, 7, 8), (0, 2, 3, 4, 8), (0, 2, 3, 6, 7),
    (0, 2, 3, 7, 8), (0, 2, 4, 5, 7), (0, 2, 4, 5, 8), (0, 2, 5, 7, 8),
    (0, 3, 4, 5, 6), (0, 3, 4, 6, 8), (0, 3, 6, 7, 8), (0, 4, 5, 6, 8),
    (1, 2, 3, 4, 8), (1, 2, 3, 5, 6), (1, 2, 3, 5, 8), (1, 2, 4, 6, 7),
    (1, 2, 4, 6, 8), (1, 2, 5, 6, 8), (1, 3, 4, 5, 7), (1, 3, 4, 7, 8),
    (1, 3, 5, 7, 8), (1, 4, 6, 7, 8), (2, 3, 5, 6, 7), (2, 3, 5, 7, 8),
    (2, 4, 5, 6, 7), (2, 4, 5, 6, 8), (3, 4, 5, 6, 7), (3, 4, 6, 7, 8),
]


def cp2_9() -> SimplicialComplex:
    """The 9-vertex triangulation of the complex projective plane."""
    return SimplicialComplex(CP2_9_FACETS)


def cylinder() -> SimplicialComplex:
    """Prism over a 3-cycle: bottom 0,1,2, top 3,4,5; f = (6, 12, 6)."""
    tris = []
    for i in range(3):
        j = (i + 1) % 3
        tris.append((i, j, i + 3))
        tris.append((j, i + 3, j + 3))
    return SimplicialComplex(tris)


def product_complex(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of |K| x |L|.

    Vertex (a, b) gets id ``a * N + b`` with ``N = max(L) + 1``; each pair of
    facets contributes one simplex per monotone lattice path.
    """
    N = max(L.vertices) + 1
    out = []
    for s in K.facets:
        for t in L.facets:
            p, q = len(s) - 1, len(t) - 1
            for ups in combinations(range(p + q), p):
                i = j = 0
                verts = [s[0] * N + t[0]]
                ups_set = set(ups)
                for step in range(p + q):
                    if step in ups_set:
                        i += 1
                    else:
                        j += 1
                    verts.append(s[i] * N + t[j])
                out.append(verts)
    return SimplicialComplex(out)


def s2xs2() -> SimplicialComplex:
    s2 = boundary_simplex(2)
    return product_complex(s2, s2)


def k4_graph() -> SimplicialComplex:
    """1-skeleton of the tetrahedron."""
    return skeleton(boundary_simplex(2), 1)


def random_complex(seed: int, max_vertices: int = 12, connected: bool = False) -> SimplicialComplex:
    """Seeded random complex of dimension at most 2.

    With ``connected`` a Hamiltonian path is added so the 1-skeleton is connected.
    """
    rng = random.Random(seed)
    n = rng.randint(3, max_vertices)
    tris = list(combinations(range(n), 3))
    edges = list(combinations(range(n), 2))
    faces = rng.sample(tris, rng.randint(1, min(len(tris), 3 * n)))
    faces += rng.sample(edges, rng.randint(0, n))
    if connected:
        faces += [(i, i + 1) for i in range(n - 1)]
    return SimplicialComplex(faces)


BUILTINS = {
    "boundary_simplex": boundary_simplex,
    "ck": ck_complex,
    "rp2_6": rp2_6,
    "cp2_9": cp2_9,
    "cylinder": cylinder,
    "s2xs2": s2xs2,
    "k4": k4_graph,
    "simplex": full_simplex,
}


def builtin(name: str) -> SimplicialComplex:
    """Look up ``name`` or ``name:int`` in :data:`BUILTINS`."""
    base, _, arg = name.partition(":")
    if base not in BUILTINS:
        raise ParseError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}")
    fn = BUILTINS[base]
    try:
        if arg:
            return fn(int(arg))
        return fn()
    except TypeError as exc:
        raise ParseError(f"builtin {base!r}: {exc}") from None
    except ValueError as exc:
        raise ParseError(f"builtin {name!r}: {exc}") from None
