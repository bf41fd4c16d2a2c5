"""Command-line entry point: ``rainbowtri <subcommand> ...``.

Every command writes its JSON/CSV result to stdout or ``--out`` and a run
manifest (command, flags, version, wall time, sha256 of the output) to
``--manifest``, to ``<out>.manifest.json`` when ``--out`` is given, or as a
single JSON line on stderr otherwise.  Results carry no timing data, so
identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from pathlib import Path

from rainbowtri import __version__, kernels
from rainbowtri.analysis import (
    check_claim1,
    neighborhood_equation_violations,
    proof_diagnostics,
    sweep_inequalities,
    three_color_isolation,
)
from rainbowtri.coloring import (
    ColoringError,
    edge_counts,
    has_rainbow_triangle,
    is_fully_colored,
    parse,
    product,
    serialize,
    t_colored_counts,
)
from rainbowtri.constructions import (
    TwoCliqueParams,
    default_clique_size,
    frankl_bipartite,
    theorem1_construction,
    two_clique_family,
)
from rainbowtri.objective import (
    GAMMA_LOWER,
    GAMMA_UPPER,
    SWEEP_CSV_HEADER,
    frankl_bound,
    maximize_objective,
    sweep,
    x0_discrepancy,
)
from rainbowtri.search import (
    SearchConfig,
    SearchError,
    Symmetry,
    construction_seed,
    default_threads,
    search_exact,
    verify_witness,
)

SCHEMA = 1
SIG_DIGITS = 12


class CommandFailed(Exception):
    """A hard assertion inside a command failed (exit code 1)."""


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isfinite(obj):
            return float(f"{obj:.{SIG_DIGITS}g}")
        return obj
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_round_floats(obj), sort_keys=True, indent=2) + "\n"


# -- commands ----------------------------------------------------------------


def cmd_gamma(args) -> str:
    res = maximize_objective(args.tol)
    disc = x0_discrepancy(res)
    ok = res.bounds_ok
    out = {
        "schema": SCHEMA,
        "x0": res.x0,
        "gamma": res.gamma,
        "bracket_width": res.bracket_width,
        "evaluations": res.evaluations,
        "tol": args.tol,
        "bounds": [float(GAMMA_LOWER), float(GAMMA_UPPER)],
        "bounds_check": ok,
        "printed_x0_check": {
            "printed_x0": disc["printed_x0"],
            "objective_at_printed_x0": disc["objective_at_printed_x0"],
            "within_bounds": disc["printed_x0_within_bounds"],
            "flag": None
            if disc["printed_x0_within_bounds"]
            else "printed maximizer 0.729 violates 1/52 < gamma < 1/51; computed x0 differs",
        },
    }
    if not ok:
        raise CommandFailed(dump_json(out))
    return dump_json(out)


def _build(args):
    if args.kind == "frankl":
        return frankl_bipartite(args.n), {"n": args.n}
    if args.kind == "theorem1":
        a = args.a if args.a is not None else default_clique_size(args.n)
        return theorem1_construction(args.n, a), {"n": args.n, "a": a}
    params = TwoCliqueParams(args.n, args.a or 0, args.b, args.c, args.d)
    return two_clique_family(params), {
        "n": args.n, "a": params.a, "b": params.b, "c": params.c, "d": params.d,
    }


def coloring_summary(c) -> dict:
    counts = edge_counts(c)
    return {
        "n": c.n,
        "counts": list(counts),
        "product": product(counts),
        "t_colored": list(t_colored_counts(c)),
        "fully_colored": is_fully_colored(c),
        "rainbow_free": has_rainbow_triangle(c) is None,
        "frankl_bound": frankl_bound(c.n),
    }


def cmd_construct(args) -> str:
    c, params = _build(args)
    out = {"schema": SCHEMA, "kind": args.kind, "params": params, **coloring_summary(c)}
    if args.coloring_out:
        Path(args.coloring_out).write_text(serialize(c, args.format) + "\n")
        out["coloring_file"] = str(args.coloring_out)
    else:
        out["coloring"] = serialize(c, "compact")
    if not out["rainbow_free"]:
        raise CommandFailed(dump_json(out))
    return dump_json(out)


def cmd_search(args) -> str:
    seed = None
    if args.seed_construction:
        seed, _ = construction_seed(args.n, args.fully_colored)
    cfg = SearchConfig(
        n=args.n,
        fully_colored=args.fully_colored,
        symmetry_level=Symmetry(args.symmetry),
        initial_lower_bound=seed,
        thread_hint=default_threads(args.threads),
        use_bound=not args.no_bound,
        node_limit=args.limit_nodes,
    )
    res = search_exact(cfg)
    out = {
        "schema": SCHEMA,
        "fully_colored": cfg.fully_colored,
        "symmetry": cfg.symmetry_level.value,
        "initial_lower_bound": seed,
        **res.to_dict(),
    }
    if args.n >= 2:
        # report only: small-n optima are not expected to match the asymptotics
        out["gamma_n6"] = maximize_objective().gamma * args.n**6
        out["frankl_bound"] = frankl_bound(args.n)
    bad = [w for w in res.witnesses if not verify_witness(w, res.best_product)]
    if bad:
        out["invalid_witnesses"] = bad
        raise CommandFailed(dump_json(out))
    return dump_json(out)


def cmd_check(args) -> str:
    c = parse(Path(args.infile).read_text())
    out = {"schema": SCHEMA, "check": args.what, "n": c.n}
    if args.what == "claim1":
        out.update(check_claim1(c).to_dict())
    elif args.what == "isolation":
        viol = three_color_isolation(c)
        out["violations"] = [[list(p), list(q)] for p, q in viol]
        out["three_colored"] = t_colored_counts(c)[3]
        out["matching_bound"] = c.n // 2
    elif args.what == "diagnostics":
        out.update(proof_diagnostics(c, epsilon=args.epsilon).to_dict())
    elif args.what == "neighborhoods":
        out["violations"] = [list(v) for v in neighborhood_equation_violations(c)]
    else:
        out.update(coloring_summary(c))
        w = has_rainbow_triangle(c)
        out["rainbow_witness"] = None if w is None else {
            "vertices": list(w.vertices), "assignment": list(w.assignment),
        }
    return dump_json(out)


def cmd_sweep(args) -> str:
    rows = sweep(args.n_max, args.n_min)
    if args.format == "json":
        return dump_json({
            "schema": SCHEMA,
            "columns": SWEEP_CSV_HEADER,
            "rows": [r.csv_fields() for r in rows],
        })
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


def cmd_inequalities(args) -> str:
    domains = ["proof", "wide"] if args.domain == "both" else [args.domain]
    out = {"schema": SCHEMA, "n_max": args.n_max}
    for dom in domains:
        viol = sweep_inequalities(args.n_max, dom)
        out[dom] = {
            "violations": len(viol),
            "d_violations": sum(v.kind == "d" for v in viol),
            "b_violations": sum(v.kind == "b" for v in viol),
            "examples": [v._asdict() for v in viol[: args.show]],
        }
    return dump_json(out)


# -- parser ------------------------------------------------------------------


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x >= 1e-12:
        raise argparse.ArgumentTypeError(f"tolerance must be >= 1e-12, got {text}")
    return x


def _natural(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {x}")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbowtri", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        if out:
            sp.add_argument("--out", help="write the result here instead of stdout")
        sp.add_argument("--manifest", help="write the run manifest here")
        return sp

    g = common(sub.add_parser("gamma", help="maximize the density objective"))
    g.add_argument("--tol", type=_positive_float, default=1e-10)
    g.set_defaults(func=cmd_gamma)

    c = common(sub.add_parser("construct", help="build an explicit construction"), out=False)
    c.add_argument("--kind", choices=["frankl", "theorem1", "family"], required=True)
    c.add_argument("--n", type=_natural, required=True)
    c.add_argument("--a", type=_natural, help="clique A size (theorem1 default: round(x0*n))")
    c.add_argument("--b", type=_natural, default=0)
    c.add_argument("--c", type=_natural, default=0)
    c.add_argument("--d", type=_natural, default=0)
    c.add_argument("--out", dest="coloring_out", help="write the coloring file here")
    c.add_argument("--format", choices=["json", "compact"], default="json")
    c.set_defaults(func=cmd_construct)

    s = common(sub.add_parser("search", help="exact maximum product for small n"))
    s.add_argument("--n", type=_natural, required=True)
    s.add_argument("--fully-colored", action="store_true")
    s.add_argument("--symmetry", choices=[x.value for x in Symmetry], default="color_and_vertex")
    s.add_argument("--seed-construction", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--threads", type=_natural, default=1, help="overridden by RAINBOW_THREADS")
    s.add_argument("--limit-nodes", type=_natural, default=None)
    s.add_argument("--no-bound", action="store_true", help="disable product-bound pruning")
    s.set_defaults(func=cmd_search)

    k = common(sub.add_parser("check", help="structural checks on a coloring file"))
    k.add_argument("what", choices=["claim1", "isolation", "diagnostics", "neighborhoods", "rainbow"])
    k.add_argument("--in", dest="infile", required=True, help="coloring file (JSON or compact)")
    k.add_argument("--epsilon", type=float, default=0.01)
    k.set_defaults(func=cmd_check)

    w = common(sub.add_parser(
        "sweep",
        help="best integer clique size per n",
        description="CSV columns: " + ",".join(SWEEP_CSV_HEADER),
    ))
    w.add_argument("--n-max", type=_natural, required=True)
    w.add_argument("--n-min", type=_natural, default=2)
    w.add_argument("--format", choices=["csv", "json"], default="csv")
    w.set_defaults(func=cmd_sweep)

    q = common(sub.add_parser("inequalities", help="exhaustive binomial inequality sweep"))
    q.add_argument("--n-max", type=_natural, required=True)
    q.add_argument("--domain", choices=["proof", "wide", "both"], default="proof")
    q.add_argument("--show", type=_natural, default=10, help="violations listed per domain")
    q.set_defaults(func=cmd_inequalities)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    status = 0
    try:
        text = args.func(args)
    except CommandFailed as exc:
        text = str(exc)
        status = 1
    except (ColoringError, SearchError, ValueError, OSError) as exc:
        print(f"rainbowtri {args.command}: error: {exc}", file=sys.stderr)
        return 2
    out_path = getattr(args, "out", None)
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)
    flags = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    manifest = {
        "schema": SCHEMA,
        "command": args.command,
        "flags": flags,
        "version": __version__,
        "backend": kernels.BACKEND,
        "wall_time_s": round(time.perf_counter() - t0, 6),
        "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "exit_code": status,
    }
    mtext = json.dumps(manifest, sort_keys=True)
    if args.manifest:
        Path(args.manifest).write_text(mtext + "\n")
    elif out_path:
        Path(out_path + ".manifest.json").write_text(mtext + "\n")
    else:
        print(mtext, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
