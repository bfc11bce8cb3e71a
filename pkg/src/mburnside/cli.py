"""Command-line front end: ``mburnside <command> [--catalog NAME | --input FILE]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import catalog
from .action import right_regular
from .burnside import compute_basis, marks_table, semisimplicity_certificate
from .congruences import DEFAULT_CONGRUENCE_CAP
from .errors import CapExceeded, InputError, InputParse, InternalAssertion, SizeLimitExceeded
from .jsonio import dumps, load, monoid_from_json, monoid_to_json, mset_from_json, mset_to_json
from .monoid import DEFAULT_ELEMENT_CAP, FiniteMonoid, check_stability, maximal_subgroup, subgroups_up_to_conjugacy
from .orbits import aut_group, canonical_form, strong_orbits, weak_orbits
from .structure import build_structure_map, distinguishability, non_distinguishable_witnesses, structure_matrix

DEFAULT_SEED = 20240101

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    catalog: str | None = None
    format: str = "json"
    element_cap: int = DEFAULT_ELEMENT_CAP
    congruence_cap: int = DEFAULT_CONGRUENCE_CAP
    seed: int = DEFAULT_SEED
    out: str | None = None
    action: str | None = None
    name: str | None = None

    def __post_init__(self):
        if self.element_cap <= 0 or self.congruence_cap <= 0:
            raise InputParse("caps must be positive")


def _load_source(cfg: RunConfig):
    """Returns (monoid, M-set or None, source name)."""
    if (cfg.input is None) == (cfg.catalog is None):
        raise InputParse("give exactly one of --input FILE or --catalog NAME")
    if cfg.catalog is not None:
        entry = catalog.get(cfg.catalog)
        M, X, name = entry.monoid, None, entry.name
    else:
        doc = load(cfg.input)
        if isinstance(doc, dict) and "action" in doc:
            X = mset_from_json(doc, resolve=lambda ref: catalog.get(ref).monoid, element_cap=cfg.element_cap)
            M = X.monoid
        else:
            M, X = monoid_from_json(doc, cfg.element_cap), None
        name = cfg.input
    if M.size > cfg.element_cap:
        raise SizeLimitExceeded(f"monoid has {M.size} elements, cap is {cfg.element_cap}")
    return M, X, name


def _labels(M: FiniteMonoid, xs):
    return [M.label(x) for x in xs]


def cmd_analyze(cfg: RunConfig) -> dict:
    M, _, name = _load_source(cfg)
    g = M.green
    j_classes = []
    for j, J in enumerate(g.j_classes):
        j_classes.append({
            "id": j,
            "elements": _labels(M, J),
            "regular": g.regular_j[j],
            "r_classes": len({g.r_of[x] for x in J}),
            "l_classes": len({g.l_of[x] for x in J}),
            "h_class_size": len(g.h_class(J[0])),
        })
    subgroups = []
    for e in g.idempotents:
        H = maximal_subgroup(M, e)
        subgroups.append({
            "e": M.label(e),
            "order": H.order,
            "elements": _labels(M, H.elements),
            "subgroup_classes": len(subgroups_up_to_conjugacy(H)),
        })
    return {
        "source": name,
        "size": M.size,
        "identity": M.label(M.identity),
        "idempotents": _labels(M, g.idempotents),
        "stable": check_stability(M),
        "j_classes": j_classes,
        "maximal_subgroups": subgroups,
    }


def cmd_orbits(cfg: RunConfig) -> dict:
    M, X, name = _load_source(cfg)
    if X is None:
        X = right_regular(M)
    g = M.green
    strong = []
    for omega in strong_orbits(X):
        cf = canonical_form(omega)
        strong.append({
            "points": list(omega.points),
            "apex": _labels(M, g.j_classes[omega.apex_j_class]),
            "e": M.label(cf.e),
            "congruence": [_labels(M, c) for c in cf.congruence.classes],
            "aut_order": aut_group(omega).order,
        })
    return {
        "source": name,
        "points": X.size,
        "weak_orbits": [list(o) for o in weak_orbits(X)],
        "strong_orbits": strong,
    }


def _basis_manifest(basis):
    M = basis.monoid
    g = M.green
    return [
        {
            "id": O.index,
            "points": O.size,
            "apex": _labels(M, g.j_classes[O.apex]),
            "aut_order": O.aut_order,
            "e": M.label(O.e),
            "congruence": [_labels(M, c) for c in O.congruence.classes],
        }
        for O in basis
    ]


def cmd_burnside(cfg: RunConfig) -> dict:
    M, _, name = _load_source(cfg)
    basis = compute_basis(M, cfg.congruence_cap)
    return {
        "source": name,
        "rank": len(basis),
        "identity_class": basis.identity_index,
        "basis": _basis_manifest(basis),
        "multiplication": [[list(v) for v in row] for row in basis.mul_cube],
    }


def cmd_marks(cfg: RunConfig) -> dict:
    M, _, name = _load_source(cfg)
    basis = compute_basis(M, cfg.congruence_cap)
    table = marks_table(basis)
    cert = semisimplicity_certificate(table, seed=cfg.seed)
    return {
        "source": name,
        "order": list(table.row_order),
        "matrix": [list(r) for r in table.matrix],
        "certificate": {
            "determinant": cert.determinant,
            "index": cert.index,
            "semisimple": cert.semisimple,
            "multiplicative": cert.multiplicative,
            "checks": cert.checks,
        },
    }


def cmd_structure(cfg: RunConfig) -> dict:
    M, _, name = _load_source(cfg)
    g = M.green
    report = distinguishability(M)
    basis = compute_basis(M, cfg.congruence_cap)
    smap = build_structure_map(basis)
    sm = structure_matrix(smap)
    witnesses = non_distinguishable_witnesses(smap, report)
    per_j = []
    for r in report.per_j_class:
        per_j.append({
            "j_class": _labels(M, g.j_classes[r.j]),
            "idempotent": M.label(r.idempotent),
            "distinguishable": r.distinguishable,
            "indistinguishable_pairs": [
                [_labels(M, g.l_classes[a]), _labels(M, g.l_classes[b])] for a, b in r.indistinguishable
            ],
        })
    return {
        "source": name,
        "verdict": "distinguishable" if report.monoid_distinguishable else "not distinguishable",
        "er": report.er,
        "commuting_idempotents": report.commuting_idempotents,
        "j_classes": per_j,
        "idempotent_order": _labels(M, smap.idempotents),
        "phi": [[list(part) for part in img] for img in smap.images],
        "structure_matrix": {
            "columns": list(sm.columns),
            "matrix": [list(r) for r in sm.matrix],
            "unit_upper_triangular": sm.unit_upper_triangular,
        },
        "rank_burnside": sm.rank_burnside,
        "rank_group_product": sm.rank_target,
        "isomorphic_to_group_product": sm.isomorphic,
        "witness_classes": [
            {"idempotent": M.label(u), "class": k} for u, k in sorted(witnesses.items())
        ],
    }


def cmd_catalog(cfg: RunConfig) -> dict:
    if cfg.action == "list":
        return {"entries": catalog.names() + ["chain_mset"], "corpus": list(catalog.CORPUS)}
    if cfg.action == "emit":
        if not cfg.name:
            raise InputParse("catalog emit needs an entry name")
        parts = cfg.name.replace(":", " ").split()
        if parts[0] == "chain_mset":
            # the one catalog M-set; its monoid is referenced by name
            try:
                n = int(parts[1]) if len(parts) > 1 else 1
            except ValueError:
                raise InputParse(f"bad chain length in {cfg.name!r}") from None
            return mset_to_json(catalog.chain_mset(n), "mono_01")
        return monoid_to_json(catalog.get(cfg.name).monoid)
    raise InputParse(f"unknown catalog action {cfg.action!r}")


COMMANDS = {
    "analyze": cmd_analyze,
    "orbits": cmd_orbits,
    "burnside": cmd_burnside,
    "marks": cmd_marks,
    "structure": cmd_structure,
    "catalog": cmd_catalog,
}


def render_text(obj, indent: int = 0) -> str:
    """Plain-text rendering carrying the same values as the JSON."""
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 2))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        if obj and all(isinstance(r, list) and _is_flat(r) for r in obj):
            cells = [[_scalar(c) for c in r] for r in obj]
            width = max((len(c) for r in cells for c in r), default=1)
            lines.extend(pad + " ".join(c.rjust(width) for c in r) for r in cells)
        else:
            for i, v in enumerate(obj):
                lines.append(f"{pad}- [{i}]")
                lines.append(render_text(v, indent + 2))
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    return json.dumps(v) if not isinstance(v, str) else v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="FILE", help="monoid or M-set JSON document")
    src.add_argument("--catalog", metavar="NAME", help="catalog entry, e.g. 'full_transformation 2'")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    common.add_argument("--congruence-cap", type=int, default=DEFAULT_CONGRUENCE_CAP)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", metavar="FILE")

    parser = argparse.ArgumentParser(prog="mburnside", description="Burnside rings of finite monoids.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="Green's relations, idempotents, maximal subgroups")
    sub.add_parser("orbits", parents=[common], help="weak and strong orbits of an M-set")
    sub.add_parser("burnside", parents=[common], help="strong-orbit basis and multiplication table")
    sub.add_parser("marks", parents=[common], help="table of marks and semisimplicity certificate")
    sub.add_parser("structure", parents=[common], help="distinguishability and the structure map")
    cat = sub.add_parser("catalog", parents=[common], help="list or emit catalog entries")
    cat.add_argument("action", choices=("list", "emit"))
    cat.add_argument("name", nargs="*")
    return parser


def run(cfg: RunConfig) -> dict:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            input=args.input,
            catalog=args.catalog,
            format=args.format,
            element_cap=args.element_cap,
            congruence_cap=args.congruence_cap,
            seed=args.seed,
            out=args.out,
            action=getattr(args, "action", None),
            name=" ".join(getattr(args, "name", []) or []) or None,
        )
        result = run(cfg)
        code = EXIT_OK
    except (CapExceeded, SizeLimitExceeded) as exc:
        result, code = _error(exc), EXIT_CAP
    except InputError as exc:
        result, code = _error(exc), EXIT_INPUT
    except InternalAssertion as exc:
        result, code = _error(exc), EXIT_INTERNAL
    text = dumps(result) if args.format == "json" else render_text(result) + "\n"
    if code != EXIT_OK:
        sys.stderr.write(text)
        return code
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _error(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


if __name__ == "__main__":
    sys.exit(main())
