"""Command-line front end: ``cube-kappa <task> [options]``.

Every task prints one JSON task record (or a table with ``--format table``).
Exit status: 0 success, 1 claim violation, 2 usage error, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import Sequence

from . import __version__
from .constructions import expected_cut_size, extremal_cut, verify_extremal_cut
from .cube import CubeMeta, build_kary_cube
from .patterns import ONE_SINGLETON, EDGE_OR_TWO_SINGLETONS, SMALL_SIDES, CutReport
from .solver import (
    Budget,
    EvidenceKind,
    ExtraConnectivityResult,
    exact_extra_connectivity,
    fragment_search_bounds,
    is_super_connected,
    vertex_connectivity,
)
from .store import GRAPH_FORMATS, ResultCache, TaskRecord, cache_key, export_graph, format_graph
from .verify import (
    VerificationOutcome,
    verify_bounded_cut_structure,
    verify_common_neighbors,
    verify_regularity_partition_transitivity,
    verify_subcube_union_connected,
)

log = logging.getLogger("cube_kappa")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

DEFAULT_EXHAUSTIVE_WORK = 100_000_000
DEFAULT_FRAGMENT_WORK = 5_000_000

# claim id -> (bound as a function of n, allowed patterns)
CUT_CLAIMS = {
    "lemma33": (lambda n: 4 * n - 4, ONE_SINGLETON),
    "lemma34": (lambda n: 6 * n - 8, EDGE_OR_TWO_SINGLETONS),
    "thm37": (lambda n: 8 * n - 13, SMALL_SIDES),
}
CLAIMS = ("structure", "lemma31", *CUT_CLAIMS, "lemma36", "thm35")


class UsageError(Exception):
    pass


def _words(meta: CubeMeta, vs) -> list[str]:
    return [meta.word_str(v) for v in vs]


# ------------------------------------------------------------------ tasks


def task_build(args) -> dict:
    g, meta = build_kary_cube(args.k, args.n)
    degrees = sorted({g.degree(u) for u in range(g.vertex_count)})
    return {"vertex_count": g.vertex_count, "edge_count": g.edge_count, "degrees": degrees}


def task_kappa(args) -> dict:
    g, meta = build_kary_cube(args.k, args.n)
    out = {"kappa": vertex_connectivity(g), "min_degree": g.min_degree()}
    if args.super:
        out["super_connected"] = is_super_connected(g, workers=args.workers)
    return out


def _extra_payload(meta: CubeMeta, r: ExtraConnectivityResult) -> dict:
    ev = r.evidence
    cert = None
    if r.certificate is not None:
        cert = {
            "cut": _words(meta, r.certificate.cut),
            "components": [_words(meta, c) for c in r.certificate.components],
        }
    return {
        "h": r.h,
        "value": r.value,
        "evidence": {
            "kind": ev.kind.value,
            "lower": ev.lower,
            "upper": ev.upper,
            "searched_up_to": ev.searched_up_to,
            "work": ev.work,
        },
        "certificate": cert,
    }


def task_extra(args) -> dict:
    g, meta = build_kary_cube(args.k, args.n)
    if args.mode == "exhaustive":
        budget = Budget(max_cut_size=args.bound, max_work=args.max_work or DEFAULT_EXHAUSTIVE_WORK)
        r = exact_extra_connectivity(g, args.h, budget, workers=args.workers)
    elif args.mode == "fragment":
        budget = Budget(max_work=args.max_work or DEFAULT_FRAGMENT_WORK)
        r = fragment_search_bounds(g, args.h, meta, budget, symmetry=True)
    else:
        raise UsageError("extra supports --mode exhaustive or fragment")
    return _extra_payload(meta, r)


def task_construct(args) -> dict:
    g, meta = build_kary_cube(args.k, args.n)
    if meta.k != 3:
        raise UsageError("constructions are defined for --k 3")
    rep = extremal_cut(g, meta, args.h)
    ok = verify_extremal_cut(g, rep, args.h)
    return {
        "h": args.h,
        "fragment": rep.fragment.words(),
        "fragment_shape": str(rep.fragment.induced_shape),
        "cut_size": rep.cut_size,
        "expected_cut_size": expected_cut_size(meta.n, args.h),
        "layer_sizes": list(rep.layer_sizes),
        "cut": _words(meta, rep.cut),
        "residual_pattern": rep.residual.matched_pattern.value,
        "verdict": "pass" if ok and rep.cut_size == expected_cut_size(meta.n, args.h) else "fail",
    }


def _report_payload(meta: CubeMeta, rep) -> dict:
    if isinstance(rep, CutReport):
        return {
            "faults": _words(meta, rep.fault_set),
            "component_orders": [len(c) for c in rep.components],
            "shapes": [str(s) for s in rep.shapes],
            "pattern": rep.matched_pattern.value,
        }
    return rep


def _outcome_payload(meta: CubeMeta, o: VerificationOutcome) -> dict:
    return {
        "claim": o.claim,
        "verdict": o.verdict,
        "scope": o.scope,
        "checked_count": o.checked_count,
        "details": o.details,
        "violations": [_report_payload(meta, v) for v in o.violations],
    }


def task_verify(args) -> dict:
    g, meta = build_kary_cube(args.k, args.n)
    claim = args.claim
    if claim == "structure":
        return _outcome_payload(meta, verify_regularity_partition_transitivity(meta))
    if claim == "lemma31":
        return _outcome_payload(meta, verify_common_neighbors(meta))
    if claim == "thm35":
        rec = task_construct(args)
        return {"claim": claim, "verdict": rec["verdict"], "construction": rec}
    if claim == "lemma36":
        o = verify_subcube_union_connected(g, meta, args.dimension, args.seed, args.samples)
        return _outcome_payload(meta, o)
    bound_of, allowed = CUT_CLAIMS[claim]
    bound = args.bound if args.bound is not None else bound_of(meta.n)
    mode = args.mode or ("exhaustive" if meta.vertex_count <= 27 else "sample")
    if mode not in ("exhaustive", "sample"):
        raise UsageError("verify supports --mode exhaustive or sample")
    o = verify_bounded_cut_structure(
        g, bound, allowed, mode=mode, seed=args.seed, count=args.samples,
        workers=args.workers, claim=claim, meta=meta,
    )
    return _outcome_payload(meta, o)


TASKS = {
    "build": task_build,
    "kappa": task_kappa,
    "extra": task_extra,
    "construct": task_construct,
    "verify": task_verify,
}
CACHED = {"kappa", "extra", "construct", "verify"}


def task_params(args) -> dict:
    """Parameters that determine a task's result (never workers or output options)."""
    p = {"k": args.k, "n": args.n}
    if args.task == "kappa":
        p["super"] = args.super
    elif args.task == "extra":
        p.update(h=args.h, mode=args.mode, bound=args.bound, max_work=args.max_work)
    elif args.task == "construct":
        p["h"] = args.h
    elif args.task == "verify":
        p["claim"] = args.claim
        if args.claim in CUT_CLAIMS:
            p.update(mode=args.mode, bound=args.bound)
            if args.mode == "sample" or (args.mode is None and args.k**args.n > 27):
                p.update(seed=args.seed, samples=args.samples)
        elif args.claim == "lemma36":
            p.update(dimension=args.dimension, seed=args.seed, samples=args.samples)
        elif args.claim == "thm35":
            p["h"] = args.h
    return p


def exit_status(task: str, result: dict) -> int:
    if task == "extra":
        kind = result["evidence"]["kind"]
        ok = kind in (EvidenceKind.EXHAUSTIVE.value, EvidenceKind.FRAGMENT_EXACT.value)
        return EXIT_OK if ok else EXIT_INCONCLUSIVE
    if result.get("verdict") == "fail":
        return EXIT_VIOLATION
    return EXIT_OK


# ------------------------------------------------------------------ output


def _table(record: TaskRecord) -> str:
    rows = [("task", record.task), ("version", record.version)]
    rows += [(f"params.{k}", v) for k, v in record.params.items()]

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}", v)
        else:
            rows.append((prefix, value))

    walk("result", record.result)
    rows.append(("duration", f"{record.duration:.3f}"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def render(record: TaskRecord, fmt: str) -> str:
    return record.to_json() if fmt == "json" else _table(record)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=3, help="radix (default 3)")
    common.add_argument("--n", type=int, required=True, help="dimension")
    common.add_argument("--workers", type=int, default=None, help="worker threads (default: all CPUs)")
    common.add_argument("--cache-dir", default=None, help="results cache directory")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--force", action="store_true", help="recompute even when cached")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cube-kappa", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="task", required=True)

    sub.add_parser("build", parents=[common], help="build Q_n^k and report its size")
    p = sub.add_parser("kappa", parents=[common], help="vertex connectivity")
    p.add_argument("--super", action="store_true", help="also decide super-connectedness")

    p = sub.add_parser("extra", parents=[common], help="h-extra connectivity")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "fragment"), default="exhaustive")
    p.add_argument("--bound", type=int, default=None, help="largest cut size to try (exhaustive)")
    p.add_argument("--max-work", type=int, default=None,
                   help="subsets (exhaustive) or search nodes (fragment) before giving up")

    p = sub.add_parser("construct", parents=[common], help="extremal cut N(fragment)")
    p.add_argument("--h", type=int, choices=(1, 2, 3), required=True)

    p = sub.add_parser("verify", parents=[common], help="check a structural claim")
    p.add_argument("--claim", choices=CLAIMS, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default=None)
    p.add_argument("--bound", type=int, default=None, help="largest fault set (default from claim)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--dimension", type=int, default=0, help="partition dimension for lemma36")
    p.add_argument("--h", type=int, choices=(1, 2, 3), default=3, help="fragment order - 1 for thm35")

    p = sub.add_parser("export", parents=[common], help="write the cube as a graph file")
    p.add_argument("--graph-format", choices=GRAPH_FORMATS, default="edgelist")

    p = sub.add_parser("cache", help="inspect or clear the results cache")
    p.add_argument("action", choices=("info", "clear"))
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--format", choices=("json", "table"), default="json")
    return parser


def _cache(args) -> ResultCache:
    return ResultCache(args.cache_dir) if args.cache_dir else ResultCache()


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _dispatch(args)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"cube-kappa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cube-kappa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.task == "cache":
        cache = _cache(args)
        if args.action == "clear":
            info = {"directory": str(cache.directory), "removed": cache.clear()}
        else:
            info = {"directory": str(cache.directory), "entries": len(cache.entries())}
        print(render(TaskRecord("cache", {"action": args.action}, info, __version__), args.format))
        return EXIT_OK

    if args.task == "export":
        g, _ = build_kary_cube(args.k, args.n)
        if args.out is None:
            sys.stdout.write(format_graph(g, args.graph_format))
            return EXIT_OK
        export_graph(g, args.graph_format, args.out)
        result = {"path": args.out, "graph_format": args.graph_format,
                  "vertex_count": g.vertex_count, "edge_count": g.edge_count}
        print(render(TaskRecord("export", task_params(args), result, __version__), args.format))
        return EXIT_OK

    params = task_params(args)
    use_cache = args.task in CACHED and not args.no_cache
    cache = _cache(args) if use_cache else None
    key = cache_key(args.task, params, __version__)
    record = None
    if cache is not None and not args.force:
        record = cache.lookup(key)
        if record is not None:
            log.info("cache hit %s", key[:12])
    if record is None:
        start = time.perf_counter()
        result = TASKS[args.task](args)
        record = TaskRecord(args.task, params, result, __version__,
                            round(time.perf_counter() - start, 6))
        if cache is not None:
            try:
                cache.store(key, record)
            except OSError as exc:
                log.warning("could not write cache entry: %s", exc)
    _emit(render(record, args.format), args.out)
    return exit_status(record.task, record.result)


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
