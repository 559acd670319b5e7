"""Command line front end.

Exit status: 0 on success, 1 on a computation error (JSON on stderr),
2 when the log model leaves a nonzero residual for the P-series, and 64
on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from . import cellular, chern, fgl, presentations
from .errors import LazardError
from .series import DEFAULT_BOUND

EX_USAGE = 64

# model used when --model is not given
DEFAULT_MODELS = {
    "nseries": "free",
    "inverse": "free",
    "pseries": "log",
    "sp2": "log",
    "present": "free",
    "chow": "free",
    "component": "free",
    "bq-relations": "free",
    "axioms": "free",
    "chern": "free",
}


@dataclass
class CommandConfig:
    subcommand: str
    model: str
    D: int = DEFAULT_BOUND
    Dc: Optional[int] = None
    json: bool = False
    output: Optional[str] = None
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("-D must be at least 1")
        if self.Dc is not None and self.Dc < 1:
            raise ValueError("--coeff-bound must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", choices=["free", "log", "add", "mult"])
    common.add_argument("-D", type=int, default=DEFAULT_BOUND, help="weighted degree bound")
    common.add_argument("--coeff-bound", type=int, dest="Dc", help="coefficient degree bound (default: D)")
    common.add_argument("--json", action="store_true")
    common.add_argument("-o", dest="output", help="write to this file instead of stdout")

    p = _Parser(prog="lazard", description="Truncated formal group law computations.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("nseries", parents=[common], help="the [n]-series")
    s.add_argument("-n", type=int, required=True)
    sub.add_parser("inverse", parents=[common], help="the inverse series [-1](x)")
    sub.add_parser("pseries", parents=[common], help="P with x + i(x) = P(x i(x))")
    s = sub.add_parser("sp2", parents=[common], help="P1, P3 in d2, d4 with residuals")
    s.add_argument("--roots", choices=["triple", "paired"], default="triple")
    for name in ("present", "chow"):
        s = sub.add_parser(name, parents=[common], help=f"{name} presentation of BG")
        s.add_argument("group")
    s = sub.add_parser("component", parents=[common], help="graded component via Smith normal form")
    s.add_argument("group")
    s.add_argument("-d", type=int, required=True, dest="degree")
    s.add_argument("--chow", action="store_true", help="specialize to the Chow ring first")
    sub.add_parser("bq-relations", parents=[common], help="the six quaternion relations")
    s = sub.add_parser("cells", parents=[common], help="cell rank table of P(n), Gr(k,n), products")
    s.add_argument("space", nargs="+")
    sub.add_parser("axioms", parents=[common], help="formal group law axiom report")
    s = sub.add_parser("chern", parents=[common], help="Chern class of a bundle expression")
    s.add_argument("bundle")
    s.add_argument("-i", type=int, required=True, dest="index")
    return p


def parse_config(argv: List[str]) -> CommandConfig:
    ns = vars(build_parser().parse_args(argv))
    cmd = ns.pop("subcommand")
    model = ns.pop("model") or DEFAULT_MODELS.get(cmd, "free")
    base = {k: ns.pop(k) for k in ("D", "Dc", "json", "output")}
    return CommandConfig(cmd, model, args=ns, **base)


def _series_doc(s) -> dict:
    return s.to_json()


def run(cfg: CommandConfig):
    """Returns ``(exit status, document text)``."""
    a = cfg.args
    cmd = cfg.subcommand
    if cmd == "cells":
        cx = cellular.build_complex(cellular.parse_space(a["space"]))
        mp = cellular.module_presentation(cx)
        if cfg.json:
            return 0, _dump(mp.to_json(cx))
        return 0, "ranks: " + " ".join(map(str, mp.ranks))

    F = fgl.build_model(cfg.model, cfg.D, cfg.Dc)
    if cmd == "nseries":
        s = fgl.n_series(F, a["n"])
        return 0, _dump(s.to_json()) if cfg.json else s.to_text()
    if cmd == "inverse":
        s = fgl.inverse_series(F)
        return 0, _dump(s.to_json()) if cfg.json else s.to_text()
    if cmd == "pseries":
        P, res = chern.p_series(F)
        status = 2 if (res and cfg.model == "log") else 0
        if cfg.json:
            doc = {"P": P.to_json(), "residual": res.to_json(), "residual_degree": res.lowest_degree()}
            return status, _dump(doc)
        return status, f"P = {P.to_text()}\nresidual = {res.to_text()}"
    if cmd == "sp2":
        r = chern.sp2_series(F, config=a["roots"])
        if cfg.json:
            doc = {k: v.to_json() for k, v in r._asdict().items()}
            doc["residual_degrees"] = [r.residual1.lowest_degree(), r.residual3.lowest_degree()]
            return 0, _dump(doc)
        return 0, "\n".join(f"{k} = {v.to_text()}" for k, v in r._asdict().items())
    if cmd in ("present", "chow", "component"):
        G = presentations.parse_group(a["group"])
        if G.family == "D8":
            pres = presentations.dihedral_chow()
        else:
            pres = presentations.present(G, F)
        if cmd == "chow" or (cmd == "component" and a["chow"]):
            pres = presentations.chow_specialize(pres)
        if cmd == "component":
            comp = presentations.graded_component(pres, a["degree"])
            if cfg.json:
                return 0, _dump(comp.to_json())
            tors = " ".join(map(str, comp.torsion)) or "none"
            return 0, f"degree: {comp.degree}\nrank: {comp.rank}\ntorsion: {tors}"
        return 0, _dump(pres.to_json()) if cfg.json else pres.to_text()
    if cmd == "bq-relations":
        rels = presentations.bq_relations(F)
        if cfg.json:
            return 0, _dump([r.to_json() for r in rels])
        return 0, "\n".join(f"R{k}: {r.to_text()}" for k, r in enumerate(rels, start=1))
    if cmd == "axioms":
        rep = fgl.check_axioms(F)
        if cfg.json:
            return 0, _dump(rep.to_json())
        lines = []
        for name, deg in rep.failures.items():
            lines.append(f"{name}: " + ("ok" if deg is None else f"fails in degree {deg}"))
        return 0, "\n".join(lines)
    if cmd == "chern":
        c = chern.chern_class(chern.parse_bundle(a["bundle"]), a["index"], F)
        return 0, _dump(c.to_json()) if cfg.json else c.to_text()
    raise ValueError(f"unknown subcommand {cmd!r}")


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ValueError as exc:
        print(f"lazard: error: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        status, text = run(cfg)
    except (LazardError, ValueError) as exc:
        doc = exc.to_json() if isinstance(exc, LazardError) else {"error": type(exc).__name__, "message": str(exc)}
        print(_dump(doc), file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
