"""Command-line front end: ``topinv <command> (FILE | --builtin NAME) [options]``.

Exit status is 0 on success, 1 on a domain error (for example an intersection
form requested on a non-manifold) and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .complex import SimplicialComplex, parse_facets
from .errors import ParseError, TopologyError
from .generators import BUILTINS, builtin
from .homology import cohomology, groups_from_matrices, homology
from .manifold import cohomology_ring_table, intersection_form, stiefel_whitney_classes
from .morse import critical_faces, greedy_matching, parse_matching, reduce_with_matching, validate_matching
from .pi1 import abelianization, presentation, simplify
from .rings import Ring, parse_ring, ring_name

COMMANDS = ("info", "homology", "cohomology", "morse", "cup-table",
            "intersection-form", "stiefel-whitney", "pi1")


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str               # path, or builtin name when ``is_builtin``
    is_builtin: bool = False
    ring: Ring | None = None
    reduced: bool = False
    strategy: str = "raw"
    reps: bool = False
    fmt: str = "text"
    seed: int = 0
    jobs: int = 1
    matching: str | None = None
    simplify: bool = False

    def load(self) -> SimplicialComplex:
        if self.is_builtin:
            return builtin(self.source)
        try:
            text = Path(self.source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {self.source}: {exc.strerror}") from None
        return parse_facets(text)


# ---------------------------------------------------------------------------
# JSON schemas for machine-readable output

_GROUP = {"type": "object", "required": ["free_rank", "torsion"],
          "properties": {"free_rank": {"type": "integer", "minimum": 0},
                         "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}}}}
_FACE = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_COEFF = {"type": ["integer", "string"]}
_TERM = {"type": "array", "prefixItems": [_FACE, _COEFF], "minItems": 2, "maxItems": 2}
_CHAIN = {"type": "array", "items": _TERM}
_GRAM = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

SCHEMAS = {
    "info": {"type": "object", "required": ["kind", "dimension", "f_vector", "euler_characteristic", "facets"],
             "properties": {"kind": {"const": "info"}, "dimension": {"type": "integer"},
                            "f_vector": {"type": "array", "items": {"type": "integer"}},
                            "euler_characteristic": {"type": "integer"}, "pure": {"type": "boolean"},
                            "facets": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}}},
    "homology": {"type": "object", "required": ["kind", "dimension", "ring", "reduced", "groups"],
                 "properties": {"kind": {"enum": ["homology", "cohomology"]}, "dimension": {"type": "integer"},
                                "ring": {"type": "string"}, "reduced": {"type": "boolean"},
                                "groups": {"type": "array", "items": _GROUP},
                                "representatives": {"type": "object", "additionalProperties": {
                                    "type": "array", "items": {"type": "object", "required": ["order", "chain"],
                                                               "properties": {"order": {"type": "integer"},
                                                                              "chain": _CHAIN}}}}}},
    "morse": {"type": "object", "required": ["kind", "valid", "pairs", "critical", "critical_counts"],
              "properties": {"kind": {"const": "morse"}, "valid": {"type": "boolean"},
                             "pairs": {"type": "array", "items": {"type": "array", "items": _FACE}},
                             "critical": {"type": "array", "items": _FACE},
                             "critical_counts": {"type": "array", "items": {"type": "integer"}},
                             "homology": {"type": "array", "items": _GROUP},
                             "cycle": {"type": "array", "items": _FACE}}},
    "cup-table": {"type": "object", "required": ["kind", "ring", "generators", "products"],
                  "properties": {"kind": {"const": "cup_table"}, "ring": {"type": "string"},
                                 "generators": {"type": "object", "additionalProperties": {
                                     "type": "array", "items": {"type": "object", "required": ["order", "cochain"],
                                                                "properties": {"order": {"type": "integer"},
                                                                               "cochain": _CHAIN}}}},
                                 "products": {"type": "array", "items": {
                                     "type": "object", "required": ["left", "right", "coordinates"],
                                     "properties": {"left": {"type": "array", "items": {"type": "integer"}},
                                                    "right": {"type": "array", "items": {"type": "integer"}},
                                                    "coordinates": {"type": "array", "items": _COEFF}}}}}},
    "intersection-form": {"type": "object",
                          "required": ["kind", "rank", "gram", "parity", "signature", "determinant", "unimodular"],
                          "properties": {"kind": {"const": "intersection_form"}, "rank": {"type": "integer"},
                                         "gram": _GRAM, "parity": {"enum": ["even", "odd"]},
                                         "signature": {"type": "integer"}, "determinant": {"type": "integer"},
                                         "unimodular": {"type": "boolean"}}},
    "stiefel-whitney": {"type": "object", "required": ["kind", "classes"],
                        "properties": {"kind": {"const": "stiefel_whitney"}, "classes": {"type": "array", "items": {
                            "type": "object", "required": ["degree", "raw", "sparse", "null_homologous"],
                            "properties": {"degree": {"type": "integer"},
                                           "raw": {"type": "array", "items": _FACE},
                                           "sparse": {"type": "array", "items": _FACE},
                                           "null_homologous": {"type": "boolean"}}}}}},
    "pi1": {"type": "object", "required": ["kind", "generators", "edges", "relators", "abelianization"],
            "properties": {"kind": {"const": "pi1"},
                           "generators": {"type": "array", "items": {"type": "string"}},
                           "edges": {"type": "array", "items": _FACE},
                           "relators": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                           "abelianization": _GROUP}},
}
SCHEMAS["cohomology"] = SCHEMAS["homology"]


# ---------------------------------------------------------------------------
# commands; each returns (dict for json, text)


def _info(K: SimplicialComplex, cfg: RunConfig):
    d = {"kind": "info", "dimension": K.dim, "f_vector": list(K.f_vector()),
         "euler_characteristic": K.euler_characteristic(), "pure": K.is_pure,
         "facets": [[K.label(v) for v in F] for F in K.facets]}
    head = (f"# dimension {K.dim}\n# f-vector {' '.join(map(str, K.f_vector()))}\n"
            f"# euler characteristic {K.euler_characteristic()}\n")
    return d, head + K.to_text().rstrip("\n")


def _homology(K, cfg: RunConfig):
    H = homology(K, cfg.ring, reduced=cfg.reduced, strategy=cfg.strategy,
                 with_reps=cfg.reps, jobs=cfg.jobs, seed=cfg.seed)
    return H.to_dict(), H.to_text()


def _cohomology(K, cfg: RunConfig):
    H = cohomology(K, cfg.ring, with_reps=cfg.reps, strategy=cfg.strategy, jobs=cfg.jobs, seed=cfg.seed)
    return H.to_dict(), H.to_text()


def _morse(K, cfg: RunConfig):
    if cfg.matching:
        try:
            m = parse_matching(Path(cfg.matching).read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {cfg.matching}: {exc.strerror}") from None
    else:
        m = greedy_matching(K, seed=cfg.seed)
    rep = validate_matching(K, m)
    pairs = [[list(s), list(t)] for s, t in m.pairs]
    if not rep:
        d = {"kind": "morse", "valid": False, "pairs": pairs, "critical": [], "critical_counts": [],
             "cycle": [list(f) for f in rep.cycle]}
        return d, "invalid matching: " + rep.describe()
    crit = critical_faces(K, m)
    R = reduce_with_matching(K, m, cfg.ring, reduced=cfg.reduced)
    groups = groups_from_matrices(cfg.ring, R.matrices, K.dim)
    d = {"kind": "morse", "valid": True, "pairs": pairs, "critical": [list(f) for f in crit],
         "critical_counts": R.counts(), "homology": [g.to_dict() for g in groups]}
    lines = [f"pairs: {len(m)}", "critical: " + ", ".join(" ".join(map(str, f)) or "()" for f in crit),
             "critical counts: " + " ".join(map(str, R.counts()))]
    base = ring_name(cfg.ring) if cfg.ring.is_field else "Z"
    lines += [f"H_{k} = {g.format(base)}" for k, g in enumerate(groups)]
    return d, "\n".join(lines)


def _cup_table(K, cfg: RunConfig):
    T = cohomology_ring_table(K, cfg.ring)
    return T.to_dict(), T.to_text()


def _intersection_form(K, cfg: RunConfig):
    r = intersection_form(K)
    return r.to_dict(), r.to_text()


def _stiefel_whitney(K, cfg: RunConfig):
    r = stiefel_whitney_classes(K)
    return r.to_dict(), r.to_text()


def _pi1(K, cfg: RunConfig):
    P = presentation(K)
    if cfg.simplify:
        P = simplify(P)
    ab = abelianization(P)
    d = P.to_dict()
    d["abelianization"] = ab.to_dict()
    return d, f"{P.to_text()}\nabelianization: {ab.format()}"


HANDLERS = {"info": _info, "homology": _homology, "cohomology": _cohomology, "morse": _morse,
            "cup-table": _cup_table, "intersection-form": _intersection_form,
            "stiefel-whitney": _stiefel_whitney, "pi1": _pi1}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topinv", description="Homology and manifold invariants of simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("file", nargs="?", help="facet list, one facet per line")
        src.add_argument("--builtin", metavar="NAME",
                         help="named complex: " + ", ".join(sorted(BUILTINS)) + " (some take :N)")
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--ring", default="z", help="z | q | zp:<prime> (default z)")
        s.add_argument("--seed", type=int, default=0)
        if name in ("homology", "cohomology", "morse"):
            s.add_argument("--strategy", choices=("raw", "morse"), default="raw")
            s.add_argument("--jobs", type=int, default=1)
        if name in ("homology", "morse"):
            s.add_argument("--reduced", action="store_true")
        if name in ("homology", "cohomology"):
            s.add_argument("--reps", action="store_true", help="include generator representatives")
        if name == "morse":
            s.add_argument("--matching", metavar="FILE", help="validate and use this matching instead of greedy")
        if name == "pi1":
            s.add_argument("--simplify", action="store_true")
    return p


def make_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        source=args.builtin if args.builtin else args.file,
        is_builtin=bool(args.builtin),
        ring=parse_ring(args.ring),
        reduced=getattr(args, "reduced", False),
        strategy=getattr(args, "strategy", "raw"),
        reps=getattr(args, "reps", False),
        fmt=args.format,
        seed=args.seed,
        jobs=max(1, getattr(args, "jobs", 1)),
        matching=getattr(args, "matching", None),
        simplify=getattr(args, "simplify", False),
    )


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        K = cfg.load()
        data, text = HANDLERS[cfg.command](K, cfg)
    except ParseError as exc:
        print(f"topinv: error: {exc}", file=err)
        return 2
    except TopologyError as exc:
        print(f"topinv: error: {exc}", file=err)
        return 1
    if cfg.fmt == "json":
        print(json.dumps(data, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return 0


def main() -> None:
    sys.exit(run())
