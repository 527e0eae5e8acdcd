"""Command line front end.

    toric analyze FILE
    toric verify FILE --rmax N [--multiplier M] [--search-degree S]
    toric family KIND --E ... (--n ... | --m ...) [--out PATH] [--check]
    toric random --seed S [--count N] [--out DIR]

Exit codes: 0 success, 1 verification failure, 2 input error, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import families
from .corpus import random_corpus
from .errors import InvariantBreach, NotPointedError, ToricError
from .report import AnalysisReport, analyze, diff_predictions, to_dict

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BREACH = 0, 1, 2, 3


class InputError(Exception):
    pass


def load_cone_file(path: str) -> dict[str, Any]:
    """Parse and validate ``{"rank": int, "generators": [[int, ...], ...], "name": str?}``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    rank = data.get("rank")
    gens = data.get("generators")
    name = data.get("name")
    if not _is_int(rank) or rank < 1:
        raise InputError(f"{path}: 'rank' must be a positive integer")
    if not isinstance(gens, list) or not gens:
        raise InputError(f"{path}: 'generators' must be a nonempty list")
    for i, g in enumerate(gens):
        if not isinstance(g, list) or not all(_is_int(x) for x in g):
            raise InputError(f"{path}: generator {i} is not a list of integers")
        if len(g) != rank:
            raise InputError(f"{path}: generator {i} has length {len(g)}, expected rank {rank}")
    if name is not None and not isinstance(name, str):
        raise InputError(f"{path}: 'name' must be a string")
    return {"rank": rank, "generators": [tuple(g) for g in gens], "name": name}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def dumps(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def summary(r: AnalysisReport) -> str:
    m, cg, fs, cl = r.multipliers, r.class_group, r.f_signature, r.classification
    flags = [k for k in ("simplicial", "smooth") if getattr(cl, k)]
    group = "Z^%d" % cg.free_rank if cg.free_rank else ""
    if cg.invariant_factors:
        group = " + ".join(filter(None, [group] + [f"Z/{d}" for d in cg.invariant_factors]))
    lines = [
        f"cone: {r.name or '-'} (rank {r.rank}, laurent rank {r.laurent_rank}"
        + (", " + ", ".join(flags) if flags else "") + ")",
        f"rays: {list(map(list, r.rays))}",
        f"dual rays: {list(map(list, r.dual_rays))}",
        f"hilbert basis ({len(r.hilbert_basis)}): {list(map(list, r.hilbert_basis))}",
        f"v_C: {list(r.v_C)}",
        f"D = {m.D}, B = {m.B_sharp}, T = {m.T if m.T is not None else '-'}, "
        f"U = {m.U if m.U is not None else '-'}",
        f"class group: {group or '0'}",
        f"f-signature: {fs.value}",
        f"faces: {sum(r.faces_by_dimension)} {list(r.faces_by_dimension)}",
    ]
    v = r.verification
    if v is not None:
        lines.append(f"containment r <= {v.r_max}: {len(v.verdicts) - len(v.failures)}"
                     f"/{len(v.verdicts)} pass")
        for f in v.failures:
            lines.append(f"  FAIL face {list(f.face)} r={f.r} {f.label}={f.multiplier}: "
                         f"{list(f.witness)} not in P^{f.r}")
        if v.sharpness is not None:
            s = v.sharpness
            lines.append(f"sharpness: ray {s.ray_index}, w = {list(s.dual_ray)}, B = {s.B}, "
                         f"{'valid' if s.valid else 'INVALID'}")
        lines.append("verification: " + ("passed" if v.passed else "FAILED"))
    return "\n".join(lines)


def _emit(r: AnalysisReport, args) -> None:
    if args.json or args.pretty:
        print(dumps(to_dict(r), args.pretty))
    else:
        print(summary(r))


def cmd_analyze(args) -> int:
    spec = load_cone_file(args.file)
    _emit(analyze(spec["rank"], spec["generators"], spec["name"]), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.rmax < 1:
        raise InputError("--rmax must be >= 1")
    if args.multiplier is not None and args.multiplier < 1:
        raise InputError("--multiplier must be >= 1")
    spec = load_cone_file(args.file)
    r = analyze(spec["rank"], spec["generators"], spec["name"], r_max=args.rmax,
                multiplier=args.multiplier, search_degree=args.search_degree)
    _emit(r, args)
    return EXIT_OK if r.verification.passed else EXIT_FAIL


def cmd_family(args) -> int:
    kind = args.kind.replace("-", "_")
    second = args.m if args.m is not None else args.n
    if args.E is None or second is None:
        raise InputError("family needs --E and one of --n / --m")
    _, spec = families.build(kind, args.E, second)
    cone_file = {"rank": spec.rank, "generators": [list(g) for g in spec.generators],
                 "name": spec.name}
    predictions = {"kind": spec.kind, "params": _params_json(spec.params),
                   "predicted": spec.predicted}
    if args.out:
        out = Path(args.out)
        out.write_text(dumps(cone_file, True) + "\n")
        out.with_name(out.stem + ".predictions.json").write_text(dumps(predictions, True) + "\n")
    if not args.check:
        if not args.out:
            print(dumps({"cone": cone_file, "predictions": predictions}, args.pretty))
        return EXIT_OK
    r = analyze(spec.rank, spec.generators, spec.name)
    diff = diff_predictions(spec.predicted, r)
    if args.json or args.pretty:
        print(dumps({"name": spec.name, "diff": diff}, args.pretty))
    else:
        print(summary(r))
        print("prediction diff: " + ("empty" if not diff else dumps(diff, False)))
    return EXIT_OK if not diff else EXIT_FAIL


def _params_json(params):
    return [list(p) if isinstance(p, tuple) else p for p in params]


def cmd_random(args) -> int:
    cones = random_corpus(args.seed, count=args.count, max_rank=args.max_rank,
                          bound=args.bound, max_multiplier=args.max_multiplier)
    files = [{"rank": c.ambient_rank, "generators": [list(g) for g in c.generators],
              "name": f"random-{args.seed}-{i:02d}"} for i, c in enumerate(cones)]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for f in files:
            (out / f"{f['name']}.json").write_text(dumps(f, True) + "\n")
    else:
        for f in files:
            print(dumps(f, False))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="compact JSON output")
    fmt.add_argument("--pretty", action="store_true", help="indented JSON output")

    p = argparse.ArgumentParser(prog="toric", description="Exact invariants of toric cones.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="analyse a cone file")
    a.add_argument("file")
    a.set_defaults(run=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="check containments and sharpness")
    v.add_argument("file")
    v.add_argument("--rmax", type=int, default=3)
    v.add_argument("--multiplier", type=int, help="replace D by this value")
    v.add_argument("--search-degree", type=int,
                   help="degree bound for the brute-force check of counterexamples")
    v.set_defaults(run=cmd_verify)

    f = sub.add_parser("family", parents=[common], help="emit a named example cone")
    f.add_argument("kind", choices=["hypersurface", "veronese", "segre-veronese", "segre_veronese"])
    f.add_argument("--E", type=_int_list)
    f.add_argument("--n", type=_int_list)
    f.add_argument("--m", type=_int_list)
    f.add_argument("--out", help="cone file to write; predictions go next to it")
    f.add_argument("--check", action="store_true", help="analyse and diff against predictions")
    f.set_defaults(run=cmd_family)

    r = sub.add_parser("random", help="emit seeded random full pointed cones")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--count", type=int, default=20)
    r.add_argument("--max-rank", type=int, default=3)
    r.add_argument("--bound", type=int, default=5)
    r.add_argument("--max-multiplier", type=int, default=24)
    r.add_argument("--out", help="directory for the cone files")
    r.set_defaults(run=cmd_random)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotPointedError as exc:
        print(f"error: cone is not pointed; lineality vector {list(exc.lineality)}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantBreach as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except ToricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
