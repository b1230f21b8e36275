"""``basisml`` command line.

Exit codes: 0 success, 1 domain error (incomplete basis, hypothesis violated,
budget exceeded, failed verification, ...), 2 usage error. With the default
JSON output a domain error is reported as ``{"error": <name>, "message": ...}``.
The decider budget defaults to ``$BASISML_BUDGET`` or 10**6.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .boolfn import (BUILTIN_BASES, BUILTIN_FUNCTIONS, Basis, is_affine, is_locally_monotone,
                     load_basis, monotone_direction)
from .errors import BasisMLError, VerificationFailed
from .formula import metrics, parse, render
from .semantics import (DEFAULT_BUDGET, FrameClass, counter_model, equivalent, load_model,
                        min_diamond_search, model_check, phi_n)


class UsageError(Exception):
    pass


def _budget(args) -> int:
    if args.budget is not None:
        value = args.budget
    else:
        raw = os.environ.get("BASISML_BUDGET")
        try:
            value = int(raw) if raw else DEFAULT_BUDGET
        except ValueError:
            raise UsageError(f"BASISML_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise UsageError("budget must be positive")
    return value


def resolve_basis(spec: str) -> Basis:
    """A builtin basis name (``dm``, ``extdm``) or a basis file path."""
    if spec in BUILTIN_BASES:
        return BUILTIN_BASES[spec]
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"no builtin basis or file named {spec!r}")
    return load_basis(path)


def _ambient(extra: list[str] | None) -> Basis:
    amb = Basis("builtins", tuple(BUILTIN_FUNCTIONS.values()))
    for spec in extra or ():
        amb = amb.union(resolve_basis(spec), name="ambient")
    return amb


def _formula_text(args, attr="formula") -> str:
    text = getattr(args, attr)
    file_attr = getattr(args, f"{attr}_file", None)
    if file_attr:
        path = Path(file_attr)
        if not path.is_file():
            raise UsageError(f"formula file {file_attr!r} not found")
        return path.read_text().strip()
    if text is None:
        raise UsageError(f"--{attr.replace('_', '-')} is required")
    return text


# --- subcommands -------------------------------------------------------------

def cmd_basis(args) -> dict:
    G = resolve_basis(args.file or args.name)
    fns = []
    for f in G:
        dirs = [monotone_direction(f, i) for i in range(1, f.arity + 1)]
        fns.append({
            "name": f.name, "arity": f.arity, "bits": f.bitstring,
            "locally_monotone": is_locally_monotone(f), "affine": is_affine(f),
            "monotone_args": [d is not None for d in dirs],
        })
    return {"basis": G.name, "complete": G.complete,
            "locally_monotone": G.locally_monotone, "functions": fns}


def cmd_translate(args) -> dict:
    from .translate import translate_pipeline

    F = resolve_basis(args.source)
    G = resolve_basis(args.target)
    phi = parse(_formula_text(args), F)
    psi, report = translate_pipeline(phi, F, G, verify=args.verify, budget=_budget(args),
                                     allow_exponential=not args.strict)
    report.formula = render(psi)
    if args.verify and report.verified is False:
        raise VerificationFailed(f"translation is not equivalent over {args.verify}")
    return report.as_dict()


def cmd_balance(args) -> dict:
    from .s5 import balance, depth_bound, eliminate_iff

    phi = parse(_formula_text(args), _ambient(None))
    out = balance(phi)
    bound = depth_bound(phi.norm)
    if args.to_dm:
        out = eliminate_iff(out)
        bound *= 3
    result = {"input": metrics(phi).as_dict(), "output": metrics(out).as_dict(),
              "depth_bound": bound, "to_dm": args.to_dm, "verified": None,
              "formula": render(out)}
    if args.verify:
        ok = equivalent(phi, out, "S5", budget=_budget(args))
        result["verified"] = ok
        if not ok:
            raise VerificationFailed("balanced formula is not S5-equivalent")
    return result


def cmd_equiv(args) -> dict:
    amb = _ambient(args.basis)
    left = parse(args.left, amb)
    right = parse(args.right, amb)
    frame = FrameClass.parse(args.frame)
    model = counter_model(left, right, frame, budget=_budget(args))
    out = {"left": render(left), "right": render(right), "frame_class": str(frame),
           "equivalent": model is None}
    if model is not None:
        out["counter_model"] = model.as_text()
    return out


def cmd_lowerbound(args) -> dict:
    target = phi_n(args.n)
    res = min_diamond_search(target, args.frame, args.max_diamonds, args.max_size,
                             budget=_budget(args))
    return {"n": args.n, "target": render(target), "frame_class": str(FrameClass.parse(args.frame)),
            "max_diamonds": args.max_diamonds, "max_size": args.max_size,
            "verdict": res.verdict,
            "found": render(res.found) if res.found is not None else None,
            "candidates": res.candidates, "classes": res.classes}


def cmd_check_model(args) -> dict:
    path = Path(args.model)
    if not path.is_file():
        raise UsageError(f"model file {args.model!r} not found")
    S = load_model(path, close_frame=args.close_frame)
    phi = parse(_formula_text(args), _ambient(args.basis))
    w = S.initial if args.world is None else args.world
    return {"model": str(path), "frame_class": str(S.frame), "world": w,
            "formula": render(phi), "holds": model_check(S, w, phi)}


# --- plumbing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=None,
                        help="decider node budget (default $BASISML_BUDGET or 10**6)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")

    p = argparse.ArgumentParser(prog="basisml", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"basisml {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", parents=[common], help="classify a basis")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--file")
    g.add_argument("--name", choices=sorted(BUILTIN_BASES))
    b.set_defaults(run=cmd_basis)

    t = sub.add_parser("translate", parents=[common], help="translate ML[F] into ML[G]")
    t.add_argument("--from", dest="source", required=True, help="builtin name or basis file")
    t.add_argument("--to", dest="target", required=True, help="builtin name or basis file")
    t.add_argument("--formula")
    t.add_argument("--formula-file")
    t.add_argument("--verify", choices=("K", "T", "S5"))
    t.add_argument("--strict", action="store_true",
                   help="fail with HypothesisViolated instead of falling back to a "
                        "translation without a polynomial size guarantee")
    t.set_defaults(run=cmd_translate)

    bl = sub.add_parser("balance", parents=[common], help="balance an extdm formula over S5")
    bl.add_argument("--formula")
    bl.add_argument("--formula-file")
    bl.add_argument("--to-dm", action="store_true", help="also eliminate iff")
    bl.add_argument("--verify", action="store_true", help="check S5-equivalence")
    bl.set_defaults(run=cmd_balance)

    e = sub.add_parser("equiv", parents=[common], help="decide equivalence over a frame class")
    e.add_argument("left")
    e.add_argument("right")
    e.add_argument("--frame", "--class", dest="frame", choices=("K", "T", "S5"), default="K")
    e.add_argument("--basis", action="append", help="extra basis file for custom functions")
    e.set_defaults(run=cmd_equiv)

    lb = sub.add_parser("lowerbound", parents=[common],
                        help="search small dM equivalents of phi_n")
    lb.add_argument("--n", type=int, required=True)
    lb.add_argument("--max-diamonds", type=int, required=True)
    lb.add_argument("--max-size", type=int, required=True)
    lb.add_argument("--frame", choices=("K", "T", "S5"), default="T")
    lb.set_defaults(run=cmd_lowerbound)

    c = sub.add_parser("check-model", parents=[common], help="model-check a formula")
    c.add_argument("--model", required=True)
    c.add_argument("--formula")
    c.add_argument("--formula-file")
    c.add_argument("--world", type=int)
    c.add_argument("--close-frame", action="store_true",
                   help="close the relation under the frame's conditions instead of rejecting")
    c.add_argument("--basis", action="append")
    c.set_defaults(run=cmd_check_model)
    return p


def _text(result: dict) -> str:
    lines = []
    for k, v in result.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.run(args)
    except UsageError as exc:
        print(f"basisml: error: {exc}", file=sys.stderr)
        return 2
    except BasisMLError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if args.format == "json":
            print(json.dumps(err), file=stdout)
        else:
            print(f"{err['error']}: {err['message']}", file=stdout)
        return 1
    if args.format == "json":
        print(json.dumps(result, indent=2), file=stdout)
    else:
        print(_text(result), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
