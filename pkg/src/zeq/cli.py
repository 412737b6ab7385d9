"""Command-line interface.

Subcommands:

    zeq musq "z^2 - x*y"                      multiplicity sequence of a germ
    zeq check-family "..." --params t --mode harness
    zeq curve-milnor "y^2 - x^3"              plane-curve Milnor number
    zeq corpus path/to/corpus.json            batch verification run

Exit codes: 0 success / decision emitted, 1 corpus failures, 2 input
error, 3 precision or trial budget exhausted.  Output is JSON by default
and deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import weier
from .corpus import format_table, load_corpus, run_corpus
from .equising import (
    SurfaceGerm,
    family_zariski_equisingular,
    multiplicity_sequence_detailed,
    nu_star_constant,
    nu_transverse_ze,
    theorem1_harness,
)
from .errors import (
    NotRegularError,
    ParseError,
    PolyError,
    PrecisionExhaustedError,
    TrialsExhaustedError,
    ZeqError,
)
from .isolated import PlaneCurveGerm, curve_discriminant_order, milnor_plane_curve
from .parser import parse_poly

EXIT_OK = 0
EXIT_CORPUS_FAIL = 1
EXIT_INPUT = 2
EXIT_RESOURCES = 3


def _split_params(raw: str | None) -> tuple[str, ...]:
    if not raw:
        return ()
    return tuple(p.strip() for p in raw.split(",") if p.strip())


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        for key, value in obj.items():
            sys.stdout.write(f"{key}: {value}\n")


def _change_payload(change) -> dict | None:
    if change is None:
        return None
    return {"matrix": change.as_lists(), "seed": change.seed, "trial": change.trial}


def _cmd_musq(args) -> int:
    params = _split_params(args.params)
    f = parse_poly(args.expression, ("x", "y", "z"), params)
    germ = SurfaceGerm.make(f, params=params)
    if params:
        germ = SurfaceGerm.make(germ.fiber())
    from .polygcd import squarefree_part
    red = squarefree_part(germ.f)
    was_reduced = not (red == germ.f.monic_deglex())
    seq, change, precision = multiplicity_sequence_detailed(
        germ, seed=args.seed, max_trials=args.max_trials)
    payload = {
        "mu_seq": list(seq.as_tuple()),
        "coord_change": _change_payload(change),
        "reduced": was_reduced,
        "precision_used": precision,
        "smooth": seq.smooth_discriminant,
        "seed": args.seed,
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_check_family(args) -> int:
    params = _split_params(args.params)
    if not params:
        raise PolyError("family decisions need at least one declared parameter (--params)")
    f = parse_poly(args.expression, ("x", "y", "z"), params)
    germ = SurfaceGerm.make(f, params=params)
    mode = args.mode
    if mode == "ze":
        r = family_zariski_equisingular(germ, seed=args.seed, max_trials=args.max_trials)
        payload = _report_payload(r, mode)
    elif mode == "nutze":
        r = nu_transverse_ze(germ, seed=args.seed)
        payload = _report_payload(r, mode)
    elif mode == "nustar":
        constant, generic, special = nu_star_constant(germ, seed=args.seed)
        payload = {
            "mode": mode,
            "decision": "yes" if constant else "no",
            "constant": constant,
            "generic_mu_seq": list(generic),
            "special_mu_seq": list(special),
            "seed": args.seed,
        }
    else:
        seeds = [args.seed, args.seed + 1]
        h = theorem1_harness(germ, seeds=seeds)
        payload = {
            "mode": "harness",
            "consistent": h["consistent"],
            "decision": h["decision"],
            "seeds": seeds,
            "runs": h["runs"],
        }
    _emit(payload, args.format)
    return EXIT_OK


def _report_payload(r, mode: str) -> dict:
    return {
        "mode": mode,
        "decision": r.decision,
        "j0": r.j0,
        "i0": r.i0,
        "generic_mult": r.generic_mult,
        "special_mult": r.special_mult,
        "special_entry_vanishes": r.special_vanishes,
        "unit_discriminant": r.unit_discriminant,
        "coord_change": _change_payload(r.coord_change),
        "precision_used": r.precision_used,
        "seed": r.seed,
        "reason": r.reason,
    }


def _cmd_curve_milnor(args) -> int:
    f = parse_poly(args.expression, ("x", "y"))
    curve = PlaneCurveGerm.make(f)
    mu = milnor_plane_curve(curve, seed=args.seed)
    m = curve.g.order_at_origin()
    d = curve_discriminant_order(curve, seed=args.seed)
    payload = {
        "milnor": mu,
        "multiplicity": m,
        "discriminant_order": d,
        "identity_holds": d == mu + m - 1,
        "seed": args.seed,
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_corpus(args) -> int:
    path = args.path
    if path == "builtin":
        with resources.as_file(resources.files("zeq") / "data" / "corpus.json") as p:
            entries = load_corpus(str(p))
    else:
        entries = load_corpus(path)
    results, ok = run_corpus(entries, seed=args.seed, parallel=args.parallel)
    sys.stdout.write(format_table(results) + "\n")
    return EXIT_OK if ok else EXIT_CORPUS_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zeq",
        description="Exact multiplicity sequences and equisingularity decisions "
                    "for polynomial surface germs in 3-space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--max-precision", type=int, default=None,
                       help="override the truncation-order ceiling")
        p.add_argument("--max-trials", type=int, default=32,
                       help="coordinate-search trial budget")
        p.add_argument("--format", choices=["json", "text"], default="json")

    p_musq = sub.add_parser("musq", help="multiplicity sequence of a surface germ")
    p_musq.add_argument("expression")
    p_musq.add_argument("--params", default="",
                        help="comma-separated parameter names (the germ is taken at parameter 0)")
    common(p_musq)
    p_musq.set_defaults(func=_cmd_musq)

    p_fam = sub.add_parser("check-family", help="equisingularity of a family")
    p_fam.add_argument("expression")
    p_fam.add_argument("--params", required=True, help="comma-separated parameter names")
    p_fam.add_argument("--mode", choices=["ze", "nutze", "nustar", "harness"], default="harness")
    common(p_fam)
    p_fam.set_defaults(func=_cmd_check_family)

    p_cm = sub.add_parser("curve-milnor", help="Milnor number of a plane curve germ")
    p_cm.add_argument("expression")
    common(p_cm)
    p_cm.set_defaults(func=_cmd_curve_milnor)

    p_corpus = sub.add_parser("corpus", help="run every check of a corpus file")
    p_corpus.add_argument("path", help="corpus JSON path, or 'builtin' for the bundled corpus")
    p_corpus.add_argument("--parallel", type=int, default=1)
    common(p_corpus)
    p_corpus.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_precision", None):
        weier.MAX_PRECISION_OVERRIDE = args.max_precision
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (PrecisionExhaustedError, TrialsExhaustedError) as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCES
    except (PolyError, NotRegularError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except ZeqError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
