"""``covrad`` command-line interface.

Exit codes: 0 success, 1 domain error, 2 resource budget refusal,
3 usage, I/O or parse error. Reports are JSON on stdout unless ``--out csv``.
Caps and budgets come from flags, then COVRAD_BUDGET / COVRAD_ENUM_CAP,
then built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass

from covrad import bounds
from covrad.codefile import load_code, point_to_json
from covrad.crosscheck import cross_check
from covrad.errors import CodeFileError, DomainError, ResourceError
from covrad.injections import (
    MatchMapInstance,
    PermMapInstance,
    WPartition,
    phi_matching,
    phi_perm_broken,
    phi_perm_trace,
    verify_phi_matching_injective,
    verify_phi_matching_preserves_E,
    verify_phi_perm_injective,
    verify_phi_perm_outputs,
    verify_phi_perm_preserves_E,
)
from covrad.matchings import DEFAULT_MATCHING_CAP, PartialMatching, PerfectMatching
from covrad.montecarlo import EventSpec, estimate_event_probability
from covrad.perms import DEFAULT_PERM_CAP, PartialInjection, Permutation, PermutationCode
from covrad.radius import DEFAULT_BUDGET, MatchingSpace, PermutationSpace, multicovering_radius

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    budget: int
    enum_cap: int | None
    workers: int
    out: str
    output: str | None


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(float(raw))
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not an integer") from None


def _config(args) -> RunConfig:
    budget = args.budget if getattr(args, "budget", None) is not None else _env_int("COVRAD_BUDGET")
    cap = args.enum_cap if getattr(args, "enum_cap", None) is not None else _env_int("COVRAD_ENUM_CAP")
    return RunConfig(
        budget=DEFAULT_BUDGET if budget is None else budget,
        enum_cap=cap,
        workers=getattr(args, "workers", 1),
        out=getattr(args, "out", "json"),
        output=getattr(args, "output", None),
    )


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _edges(text: str) -> list[tuple[int, int]]:
    """Parse ``"1-2,3-4"`` into pairs."""
    out = []
    for tok in (t for t in text.split(",") if t.strip()):
        parts = tok.split("-")
        if len(parts) != 2:
            raise UsageError(f"expected edges like 1-2,3-4, got {text!r}")
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"expected edges like 1-2,3-4, got {text!r}") from None
    return out


def _space(code, cfg: RunConfig):
    if isinstance(code, PermutationCode):
        return PermutationSpace(code.n, cfg.enum_cap or DEFAULT_PERM_CAP)
    return MatchingSpace(code.n, cfg.enum_cap or DEFAULT_MATCHING_CAP)


def _emit(payload, cfg: RunConfig, stream) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        stream.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_exact(args, cfg):
    code = load_code(args.code)
    t0 = time.perf_counter()
    res = multicovering_radius(code, _space(code, cfg), m=args.m, budget=cfg.budget, workers=cfg.workers)
    elapsed = (time.perf_counter() - t0) * 1000
    return {
        "radius": res.radius,
        "witness": [point_to_json(p) for p in res.witness],
        "member": point_to_json(res.member),
        "member_distance": res.member_distance,
        "m": res.m,
        "candidates": res.candidates,
        "elapsed_ms": round(elapsed, 3),
    }


def _family_param(args) -> int:
    param = args.s if args.family in bounds.PERM_FAMILIES else args.x
    if param is None:
        param = args.x if args.s is None else args.s
    if param is None:
        raise UsageError("--s (or --x for matching families) is required")
    return param


def cmd_bound(args, cfg):
    param = _family_param(args)
    value = args.size if args.family.startswith("union") else args.k
    return bounds.evaluate(args.family, args.n, args.m, param, 1 if value is None else value).to_dict()


def cmd_sweep(args, cfg):
    size, k = args.size, args.k
    if size is None and k is None:
        size = k = 1
    sweep = bounds.best_bound(args.structure, args.n, args.m, size=size, k=k)
    if cfg.out == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["family", "n", "m", "s", "threshold", "satisfied", "implied_bound"])
        for r in sweep.reports:
            d = r.to_dict()
            writer.writerow([r.family, r.n, r.m, r.param, d["threshold"], str(r.satisfied).lower(), d["implied_bound"]])
        return buf.getvalue()
    return sweep.to_dict()


def cmd_map(args, cfg):
    if args.map == "phi-perm":
        S = _ints(args.S)
        f = PartialInjection(args.n, tuple(S), tuple(_ints(args.f)))
        inst = PermMapInstance(f, Permutation(tuple(_ints(args.h))))
        res = phi_perm_broken(inst) if args.broken else phi_perm_trace(inst)
        return {"map": "phi-perm-broken" if args.broken else "phi-perm", **res.to_dict()}
    X = PartialMatching(args.n, _edges(args.X))
    W = WPartition(args.n, tuple(_ints(args.singletons or "")), tuple(_edges(args.doubletons or "")))
    M = PerfectMatching(_edges(args.M), n=args.n)
    res = phi_matching(MatchMapInstance(X, W, M))
    return {"map": "phi-matching", "output": point_to_json(res), "n": args.n}


def cmd_verify(args, cfg):
    t0 = time.perf_counter()
    if args.target == "phi-perm":
        S = _ints(args.S) if args.S else None
        if args.broken:
            verdicts = [verify_phi_perm_injective(args.n, S=S, max_size=args.max_s, broken=True)]
        else:
            verdicts = [
                verify_phi_perm_outputs(args.n, S=S, max_size=args.max_s),
                verify_phi_perm_injective(args.n, S=S, max_size=args.max_s),
            ]
            if args.code:
                code = load_code(args.code)
                if not isinstance(code, PermutationCode):
                    raise DomainError("verify phi-perm needs a permutation code")
                verdicts.append(verify_phi_perm_preserves_E(args.n, code, S=S, max_size=args.max_s))
    else:
        xs = _ints(args.xs) if args.xs else None
        verdicts = [verify_phi_matching_injective(args.n, xs=xs), verify_phi_matching_preserves_E(args.n, xs=xs)]
    return {
        "target": args.target,
        "n": args.n,
        "ok": all(v.ok for v in verdicts),
        "verdicts": [v.to_dict() for v in verdicts],
        "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
    }


def cmd_mc(args, cfg):
    structure = "perm" if args.structure in ("perm", "permutation") else "matching"
    size = args.s if args.s is not None else args.x
    if size is None:
        raise UsageError("--s (or --x) is required")
    spec = EventSpec(structure, args.n, args.m, size)
    return estimate_event_probability(spec, args.samples, seed=args.seed, workers=cfg.workers).to_dict()


def cmd_enumerate(args, cfg):
    if args.structure in ("perm", "permutation"):
        space = PermutationSpace(args.n, cfg.enum_cap or DEFAULT_PERM_CAP)
    else:
        space = MatchingSpace(args.n, cfg.enum_cap or DEFAULT_MATCHING_CAP)
    points = space.points
    shown = points if args.limit is None else points[: args.limit]
    return {"structure": space.kind, "n": args.n, "count": len(points), "points": [point_to_json(p) for p in shown]}


def cmd_cross_check(args, cfg):
    code = load_code(args.code)
    families = args.families.split(",") if args.families else None
    for fam in families or ():
        if fam not in bounds.FAMILIES:
            raise DomainError(f"unknown bound family {fam!r}")
    result = cross_check(code, args.m, families=families, budget=cfg.budget, workers=cfg.workers)
    return {"structure": code.kind, "n": code.n, "size": len(code), **result.to_dict()}


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="covrad", description="Exact multicovering radii and probabilistic lower bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def limits(sp, budget=True):
        if budget:
            sp.add_argument("--budget", type=int, help=f"max candidate m-sets (default {DEFAULT_BUDGET:g})")
        sp.add_argument("--enum-cap", type=int, help="largest n to enumerate")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--output", help="write the report here instead of stdout")

    sp = sub.add_parser("exact", help="exact m-covering radius of a code file")
    sp.add_argument("--code", required=True)
    sp.add_argument("--m", type=int, default=1)
    limits(sp)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("bound", help="evaluate one certificate")
    sp.add_argument("--family", required=True, choices=bounds.FAMILIES)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--x", type=int)
    sp.add_argument("--size", type=int, help="code size for union families (default 1)")
    sp.add_argument("--k", type=int, help="max frequency for lll families (default 1)")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("sweep", help="evaluate every s (or x) for a code descriptor")
    sp.add_argument("--structure", required=True, choices=["perm", "permutation", "pm", "matching"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--size", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--out", choices=["json", "csv"], default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("map", help="apply one re-targeting map")
    msub = sp.add_subparsers(dest="map", required=True, parser_class=_Parser)
    pp = msub.add_parser("phi-perm")
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--S", required=True, help="positions, e.g. 1,2,3")
    pp.add_argument("--f", required=True, help="images of S, same order")
    pp.add_argument("--h", required=True, help="input permutation, e.g. 7,1,2,3,4,5,6")
    pp.add_argument("--broken", action="store_true", help="use the single-step rule")
    pp.add_argument("--output")
    pp.set_defaults(func=cmd_map)
    pm = msub.add_parser("phi-matching")
    pm.add_argument("--n", type=int, required=True)
    pm.add_argument("--X", required=True, help="x-matching, e.g. 1-2,3-4")
    pm.add_argument("--singletons", default="")
    pm.add_argument("--doubletons", default="")
    pm.add_argument("--M", required=True, help="perfect matching containing X")
    pm.add_argument("--output")
    pm.set_defaults(func=cmd_map)

    sp = sub.add_parser("verify", help="exhaustively verify a map")
    sp.add_argument("target", choices=["phi-perm", "phi-matching"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--S", help="restrict to this position set")
    sp.add_argument("--max-s", type=int, default=2)
    sp.add_argument("--broken", action="store_true")
    sp.add_argument("--code", help="permutation code file for the E-preservation check")
    sp.add_argument("--xs", help="x values for phi-matching, e.g. 1,2")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("mc", help="Monte Carlo estimate of an agreement event")
    sp.add_argument("--structure", required=True, choices=["perm", "permutation", "pm", "matching"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--x", type=int)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_mc)

    sp = sub.add_parser("enumerate", help="list the points of a space")
    sp.add_argument("--structure", required=True, choices=["perm", "permutation", "pm", "matching"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--enum-cap", type=int)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("cross-check", help="exact radius versus every certificate")
    sp.add_argument("--code", required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--families", help="comma-separated subset of families")
    limits(sp)
    sp.set_defaults(func=cmd_cross_check)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    old_err = sys.stderr
    sys.stderr = stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        payload = args.func(args, cfg)
        _emit(payload, cfg, stdout)
        return EXIT_OK
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_IO
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_IO
    except ResourceError as exc:
        print(f"covrad: resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except (CodeFileError, OSError) as exc:
        print(f"covrad: {exc}", file=stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"covrad: {exc}", file=stderr)
        return EXIT_DOMAIN
    finally:
        sys.stderr = old_err


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
