"""Command-line entry point: ``whitehead verify|peel|oracle|telescope``.

Exit codes: 0 when every verdict passes, 1 when some verdict fails,
2 for unreadable input or a failed precondition.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import bracket_oracle, decomposer, lie_kernel, spaces, telescope
from .linalg import Field
from .series import DEFAULT_DEGREE, geom_inverse

log = logging.getLogger("whitehead")


class InputError(ValueError):
    """Bad input document or configuration; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    degree: int = DEFAULT_DEGREE
    field: Field = Field(101)
    out: Path = Path("reports")

    def __post_init__(self) -> None:
        if self.degree < 4:
            raise InputError(f"truncation degree must be at least 4, got {self.degree}")

    def to_dict(self) -> dict:
        return {"degree": self.degree, "field": str(self.field)}


def load_document(arg: str) -> dict:
    """A space document from a path, or inline JSON when ``arg`` starts with ``{``."""
    try:
        if arg.lstrip().startswith("{"):
            return json.loads(arg)
        return json.loads(Path(arg).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {arg!r}: {exc}") from exc


def parse_space(doc: dict, degree: int, default_name: str) -> spaces.SpaceModel:
    if not isinstance(doc, dict):
        raise InputError("space document must be a JSON object")
    name = str(doc.get("name", default_name))
    try:
        if "spheres" in doc:
            return spaces.from_spheres(doc["spheres"], degree, name=name)
        if "reduced_dims" in doc:
            return spaces.from_dims({int(k): int(v) for k, v in doc["reduced_dims"].items()}, degree, name)
    except spaces.ModelError as exc:
        raise InputError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed space document: {exc}") from exc
    raise InputError("space document needs 'spheres' or 'reduced_dims'")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(config: RunConfig, command: str, inputs, payload: dict) -> Path:
    """Persist ``payload`` as ``<command>-<hash of inputs and config>.json``."""
    key = json.dumps({"inputs": inputs, "config": config.to_dict()}, sort_keys=True)
    digest = hashlib.sha256(key.encode()).hexdigest()[:12]
    config.out.mkdir(parents=True, exist_ok=True)
    path = config.out / f"{command}-{digest}.json"
    path.write_text(_dump({"command": command, "config": config.to_dict(), "inputs": inputs, **payload}))
    return path


def _pair(args, config: RunConfig) -> tuple[list[dict], spaces.SpaceModel, spaces.SpaceModel]:
    docs = [load_document(args.G), load_document(args.H)]
    G = parse_space(docs[0], config.degree, "G")
    H = parse_space(docs[1], config.degree, "H")
    return docs, G, H


# subcommands ------------------------------------------------------------------------


def cmd_verify(args, config: RunConfig) -> int:
    docs, G, H = _pair(args, config)
    reports = []
    if not args.lie:
        reports = [r.to_dict() for r in spaces.verify_all(G, H)]
    reports.append(lie_kernel.check_kernel_identity(G.gen, H.gen).to_dict())
    payload: dict = {"reports": reports}
    if args.lie:
        lie = lie_kernel.free_lie_dims(G.gen + H.gen)
        payload["free_lie_dims"] = list(lie.coeffs)
        payload["pbw_roundtrip"] = lie_kernel.pbw_series(lie) == geom_inverse(G.gen + H.gen)
    ok = all(r["verdict"] == "equal" for r in reports) and payload.get("pbw_roundtrip", True)
    path = write_report(config, "verify-lie" if args.lie else "verify", docs, payload)
    for r in reports:
        print(f"{r['identity']:<10} {r['verdict']}")
    print(f"report: {path}")
    return 0 if ok else 1


def cmd_peel(args, config: RunConfig) -> int:
    docs, G, H = _pair(args, config)
    states = decomposer.peel_to(G, H, args.k)
    trace = [s.to_dict() for s in states]
    ok = all(t["conservation"] == "pass" for t in trace)
    path = write_report(config, "peel", {"spaces": docs, "k": args.k}, {"trace": trace})
    for t in trace:
        print(f"k={t['k']:<3} peeled={len(t['peeled']):<4} conservation={t['conservation']}")
    print(f"report: {path}")
    return 0 if ok else 1


def cmd_oracle(args, config: RunConfig) -> int:
    docs, G, H = _pair(args, config)
    if args.cap > config.degree:
        raise InputError(f"cap {args.cap} exceeds truncation degree {config.degree}")
    report = bracket_oracle.check_pbw_surjectivity(G, H, args.cap, config.field)
    payload = report.to_dict()
    path = write_report(config, "oracle", {"spaces": docs, "cap": args.cap}, payload)
    for row in payload["degrees"]:
        print(f"degree {row['degree']:<3} dim={row['dimension']:<6} rank={row['rank']:<6} count={row['count']:<6} {row['verdict']}")
    print(f"report: {path}")
    return 0 if report.passed else 1


def cmd_telescope(args, config: RunConfig) -> int:
    doc = load_document(args.input)
    field = Field.parse(doc["field"]) if "field" in doc else config.field
    check = doc.get("check")
    try:
        if check == "prop11":
            report = telescope.verify_prop11(telescope.GradedEndo.from_json(doc["E"], field))
        elif check == "prop13":
            F1 = telescope.GradedEndo.from_json(doc["F1"], field)
            F2 = telescope.GradedEndo.from_json(doc["F2"], field)
            report = telescope.verify_prop13(F1, F2)
        elif check == "quasi":
            E = telescope.GradedEndo.from_json(doc["E"], field)
            u = telescope.is_quasi_idempotent(E)
            report = telescope.TelescopeReport("quasi", [], {"unit": u, "pass": u is not None})
        elif check == "circle":
            X = parse_space(doc["X"], config.degree, "X")
            Y = parse_space(doc["Y"], config.degree, "Y")
            report = telescope.circle_via_telescope(X, Y, int(doc.get("cap", 6)), field)
        else:
            raise InputError(f"unknown telescope check {check!r}")
    except KeyError as exc:
        raise InputError(f"telescope document is missing {exc}") from exc
    except telescope.PreconditionError as exc:
        raise InputError(f"precondition failed: {exc}") from exc
    payload = report.to_dict()
    path = write_report(config, "telescope", doc, payload)
    print(f"{report.check}: {payload['verdict']}")
    print(f"report: {path}")
    return 0 if report.passed else 1


# argument parsing ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--degree", type=int, default=int(os.environ.get("WHITEHEAD_DEGREE", DEFAULT_DEGREE)),
        help="truncation degree D (default %(default)s, env WHITEHEAD_DEGREE)",
    )
    common.add_argument(
        "--field", default=os.environ.get("WHITEHEAD_FIELD", "101"),
        help="prime p or Q (default %(default)s, env WHITEHEAD_FIELD)",
    )
    common.add_argument(
        "--out", default=os.environ.get("WHITEHEAD_OUT", "reports"),
        help="report directory (default %(default)s, env WHITEHEAD_OUT)",
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="whitehead", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="series identities for a pair of spaces")
    p.add_argument("G", help="space document (path or inline JSON); 'lie' selects the Lie checks")
    p.add_argument("H")
    p.add_argument("rest", nargs="?", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("peel", parents=[common], help="peel Ω(G∨H) to threshold k")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--k", type=int, default=4)
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("oracle", parents=[common], help="tensor-algebra spanning check")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--cap", type=int, default=8)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("telescope", parents=[common], help="telescope checks on graded matrices")
    p.add_argument("input", help="telescope document (path or inline JSON)")
    p.set_defaults(func=cmd_telescope)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "verify":
        # ``verify lie G H`` runs the kernel identity and free Lie dimensions only
        args.lie = args.G == "lie"
        if args.lie:
            if args.rest is None:
                parser.error("verify lie needs two space documents")
            args.G, args.H = args.H, args.rest
        elif args.rest is not None:
            parser.error("verify takes two space documents")
    try:
        config = RunConfig(args.degree, Field.parse(args.field), Path(args.out))
        log.debug("running %s with %s", args.command, config)
        return args.func(args, config)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
