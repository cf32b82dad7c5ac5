"""Command-line front end.

Exit codes: 0 answer produced, 1 verification mismatch, 2 input error.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

from . import oracle
from .artifacts import HostArtifacts
from .dp import max_induced_tw
from .graph import Graph, GraphFormatError, VertexSet, read_graph
from .iso import PatternTreewidthError, pattern_treewidth, solve_induced_iso
from .minsep import all_full_blocks, minimal_separator_masks
from .pmc import enumerate_pmcs, good_triples

__all__ = ["main", "run", "build_parser", "RunConfig", "ENVELOPE_SCHEMA", "VERIFY_MAX_N"]

logger = logging.getLogger("triangulex")

VERIFY_MAX_N = 13
GOLDEN_RATIO_BOUND = 1.6181

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

ENVELOPE_SCHEMA = {
    "type": "object",
    "required": ["command", "n", "m", "result", "counts", "elapsed_ms"],
    "properties": {
        "command": {"enum": ["seps", "pmcs", "maxsub", "iso", "oracle", "bench"]},
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "result": {"type": "object"},
        "counts": {"type": "object", "additionalProperties": {"type": "integer"}},
        "elapsed_ms": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}


class InputError(Exception):
    pass


class Mismatch(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    paths: list[str] = field(default_factory=list)
    format: str = "auto"
    t: int | None = None
    verify: bool = False
    json: bool = False
    seed: int = 0
    count: bool = False
    profile: bool = False
    certify: bool = False
    pattern: str | None = None
    task: str | None = None
    prune: bool = True
    budget_n: int | None = None
    threads: int = 1
    n: int = 18
    p: float = 0.3

    def __post_init__(self):
        if self.command == "maxsub" and self.t is None and not self.profile:
            raise InputError("maxsub needs --treewidth (or --profile for every t)")
        if self.t is not None and self.t < 0:
            raise InputError("--treewidth must be non-negative")
        if self.threads < 1:
            raise InputError("--threads must be at least 1")


# output helpers


def _line(vertices) -> str:
    return " ".join(map(str, vertices))


def _emit(cfg: RunConfig, g: Graph, result: dict, counts: dict, started: float, text: list[str]) -> None:
    if cfg.json:
        envelope = {
            "command": cfg.command,
            "n": g.n,
            "m": g.m,
            "result": result,
            "counts": counts,
            "elapsed_ms": round((time.perf_counter() - started) * 1000, 3),
        }
        print(json.dumps(envelope, sort_keys=True))
    else:
        for row in text:
            print(row)


def _load(cfg: RunConfig, path: str) -> Graph:
    try:
        return read_graph(path, cfg.format)
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc


def _verify_size(g: Graph) -> None:
    if g.n > VERIFY_MAX_N:
        raise InputError(f"--verify is limited to n <= {VERIFY_MAX_N}, graph has {g.n}")


def _budget(cfg: RunConfig) -> oracle.OracleBudget:
    return oracle.default_budget(cfg.budget_n)


# commands


def _cmd_seps(cfg: RunConfig, g: Graph, started: float) -> None:
    seps = minimal_separator_masks(g)
    rows = [[v for v in range(g.n) if s >> v & 1] for s in seps]
    if cfg.verify:
        _verify_size(g)
        expected = sorted(s.sorted() for s in oracle.brute_minimal_separators(g, _budget(cfg)))
        if sorted(rows) != expected:
            raise Mismatch(f"separators differ from oracle: got {len(rows)}, expected {len(expected)}")
    counts = {"separators": len(rows)}
    text = [str(len(rows))] if cfg.count else [_line(r) for r in rows]
    _emit(cfg, g, {"n": g.n, "separators": rows}, counts, started, text)


def _cmd_pmcs(cfg: RunConfig, g: Graph, started: float) -> None:
    pmcs = enumerate_pmcs(g, threads=cfg.threads)
    rows = [p.omega.sorted() for p in pmcs]
    if cfg.verify:
        _verify_size(g)
        expected = sorted(k.sorted() for k in oracle.brute_pmcs(g, _budget(cfg)))
        if sorted(rows) != expected:
            raise Mismatch(f"PMCs differ from oracle: got {len(rows)}, expected {len(expected)}")
    counts = {"pmcs": len(rows), "separators": len(minimal_separator_masks(g))}
    text = [str(len(rows))] if cfg.count else [_line(r) for r in rows]
    _emit(cfg, g, {"n": g.n, "pmcs": rows}, counts, started, text)


def _maxsub_one(cfg: RunConfig, g: Graph, t: int, art: HostArtifacts):
    res = max_induced_tw(g, t, art, certify=cfg.certify, budget=_budget(cfg))
    if cfg.verify:
        _verify_size(g)
        expected, _ = oracle.brute_max_induced_tw(g, t, _budget(cfg))
        if expected != res.ell_max:
            raise Mismatch(f"t={t}: ell_max {res.ell_max} but oracle says {expected}")
        if not oracle.treewidth_at_most(g, t, res.witness, _budget(cfg)):
            raise Mismatch(f"t={t}: oracle rejects witness {res.witness.sorted()}")
    return res


def _cmd_maxsub(cfg: RunConfig, g: Graph, started: float) -> None:
    try:
        art = HostArtifacts.build(g, threads=cfg.threads)
        if cfg.t is None:
            # --profile without a bound: one profile per t until everything fits
            profiles, text, t = {}, [], 0
            while True:
                res = _maxsub_one(cfg, g, t, art)
                profiles[str(t)] = res.profile
                text.append(f"t={t} " + " ".join("1" if b else "0" for b in res.profile))
                if res.ell_max == g.n:
                    break
                t += 1
            _emit(cfg, g, {"profiles": profiles}, art.counts(), started, text)
            return
        res = _maxsub_one(cfg, g, cfg.t, art)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    witness = res.witness.sorted()
    text = [str(res.ell_max), _line(witness)]
    if cfg.profile:
        text += [f"ell={ell} {'yes' if ok else 'no'}" for ell, ok in enumerate(res.profile)]
    result = {
        "t": cfg.t,
        "ell_max": res.ell_max,
        "witness": witness,
        "profile": res.profile,
        "bags": [b.sorted() for b in res.decomposition.bags],
        "tree_edges": [list(e) for e in res.decomposition.edges],
    }
    _emit(cfg, g, result, res.counts, started, text)


def _cmd_iso(cfg: RunConfig, g: Graph, started: float) -> None:
    if cfg.pattern is None:
        raise InputError("iso needs --pattern")
    f = _load(cfg, cfg.pattern)
    try:
        t = pattern_treewidth(f) if cfg.t is None else cfg.t
        art = HostArtifacts.build(g, threads=cfg.threads)
        stats: dict = {}
        emb = solve_induced_iso(g, f, t, art, stats=stats)
    except (PatternTreewidthError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if cfg.verify:
        _verify_size(g)
        expected = oracle.brute_induced_iso(g, f, budget=_budget(cfg))
        if (expected is None) != (emb is None):
            raise Mismatch(f"iso answer {'no' if emb is None else 'yes'} but oracle says {'no' if expected is None else 'yes'}")
    text = ["none"] if emb is None else [f"{p} -> {h}" for p, h in emb.items()]
    result = {
        "t": t,
        "pattern_n": f.n,
        "pattern_m": f.m,
        "found": emb is not None,
        "embedding": None if emb is None else [[p, h] for p, h in emb.items()],
    }
    _emit(cfg, g, result, dict(art.counts(), **stats), started, text)


ORACLE_TASKS = ("seps", "pmcs", "maxsub", "iso", "treewidth", "chordal")


def _cmd_oracle(cfg: RunConfig, g: Graph, started: float) -> None:
    budget = _budget(cfg)
    task = cfg.task
    try:
        if task == "seps":
            rows = sorted(s.sorted() for s in oracle.brute_minimal_separators(g, budget))
            result, text = {"separators": rows}, [str(len(rows))] if cfg.count else [_line(r) for r in rows]
        elif task == "pmcs":
            rows = sorted(k.sorted() for k in oracle.brute_pmcs(g, budget))
            result, text = {"pmcs": rows}, [str(len(rows))] if cfg.count else [_line(r) for r in rows]
        elif task == "maxsub":
            if cfg.t is None:
                raise InputError("oracle maxsub needs --treewidth")
            ell, wit = oracle.brute_max_induced_tw(g, cfg.t, budget)
            result, text = {"t": cfg.t, "ell_max": ell, "witness": wit.sorted()}, [str(ell), _line(wit.sorted())]
        elif task == "iso":
            if cfg.pattern is None:
                raise InputError("oracle iso needs --pattern")
            emb = oracle.brute_induced_iso(g, _load(cfg, cfg.pattern), prune=cfg.prune, budget=budget)
            result = {"found": emb is not None, "embedding": None if emb is None else [[p, h] for p, h in emb.items()]}
            text = ["none"] if emb is None else [f"{p} -> {h}" for p, h in emb.items()]
        elif task == "treewidth":
            tw = oracle.brute_treewidth(g, budget)
            result, text = {"treewidth": tw}, [str(tw)]
        else:
            ok = oracle.brute_is_chordal(g)
            result, text = {"chordal": ok}, ["yes" if ok else "no"]
    except oracle.BudgetExceeded as exc:
        raise InputError(f"{exc}; raise it with --budget-n") from exc
    _emit(cfg, g, dict(result, task=task), {}, started, text)


def _random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def _timed(fn: Callable):
    t0 = time.perf_counter()
    out = fn()
    return out, round((time.perf_counter() - t0) * 1000, 3)


def _cmd_bench(cfg: RunConfig, g: Graph, started: float) -> None:
    seps, ms_seps = _timed(lambda: minimal_separator_masks(g))
    print(json.dumps({"phase": "separators", "count": len(seps), "elapsed_ms": ms_seps}))
    pmcs, ms_pmcs = _timed(lambda: enumerate_pmcs(g, threads=cfg.threads))
    print(json.dumps({"phase": "pmcs", "count": len(pmcs), "elapsed_ms": ms_pmcs}))
    sep_sets = [VertexSet.from_bits(g.n, s) for s in seps]
    blocks, ms_blocks = _timed(lambda: all_full_blocks(g, sep_sets))
    print(json.dumps({"phase": "blocks", "count": len(blocks), "elapsed_ms": ms_blocks}))
    triples, ms_triples = _timed(lambda: good_triples(g, blocks, pmcs))
    print(json.dumps({"phase": "good_triples", "count": len(triples), "elapsed_ms": ms_triples}))
    art = HostArtifacts(g, sep_sets, blocks, pmcs, triples)
    t = 1 if cfg.t is None else cfg.t
    res, ms_dp = _timed(lambda: max_induced_tw(g, t, art))
    print(json.dumps({"phase": "dp", "t": t, "count": res.counts["dp_states"], "elapsed_ms": ms_dp}))
    bound = math.ceil(GOLDEN_RATIO_BOUND ** g.n)
    if len(seps) > bound:
        raise Mismatch(f"{len(seps)} minimal separators exceed the 1.6181^n sanity bound {bound}")
    summary = {
        "phase": "summary",
        "n": g.n,
        "m": g.m,
        "seed": cfg.seed,
        "separator_bound": bound,
        "counts": res.counts,
        "ell_max": res.ell_max,
        "elapsed_ms": round((time.perf_counter() - started) * 1000, 3),
    }
    print(json.dumps(summary, sort_keys=True))


COMMANDS = {
    "seps": _cmd_seps,
    "pmcs": _cmd_pmcs,
    "maxsub": _cmd_maxsub,
    "iso": _cmd_iso,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
}


def run(cfg: RunConfig) -> int:
    started = time.perf_counter()
    try:
        if cfg.command == "bench" and not cfg.paths:
            g = _random_graph(cfg.n, cfg.p, cfg.seed)
        else:
            if not cfg.paths:
                raise InputError("missing graph file")
            g = _load(cfg, cfg.paths[0])
        COMMANDS[cfg.command](cfg, g, started)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except oracle.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Mismatch as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["auto", "dimacs", "edgelist"], default="auto")
    common.add_argument("--json", action="store_true", help="emit one JSON envelope")
    common.add_argument("--budget-n", type=int, default=None, help="oracle size cap (also $TRIANGULEX_BUDGET_N)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="triangulex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, what in (("seps", "minimal separators"), ("pmcs", "potential maximal cliques")):
        p = sub.add_parser(name, parents=[common], help=f"enumerate {what}")
        p.add_argument("file")
        p.add_argument("--count", action="store_true")
        p.add_argument("--verify", action="store_true", help=f"compare with the oracle (n <= {VERIFY_MAX_N})")

    p = sub.add_parser("maxsub", parents=[common], help="maximum induced subgraph of treewidth <= t")
    p.add_argument("file")
    p.add_argument("--treewidth", "-t", type=int, dest="t")
    p.add_argument("--profile", action="store_true", help="print the yes/no vector over sizes")
    p.add_argument("--certify", action="store_true", help="certify the witness with the oracle")
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("iso", parents=[common], help="induced subgraph isomorphism")
    p.add_argument("file")
    p.add_argument("--pattern", required=True)
    p.add_argument("--treewidth", "-t", type=int, dest="t")
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("oracle", parents=[common], help="brute-force reference answers")
    p.add_argument("task", choices=ORACLE_TASKS)
    p.add_argument("file")
    p.add_argument("--treewidth", "-t", type=int, dest="t")
    p.add_argument("--pattern")
    p.add_argument("--count", action="store_true")
    p.add_argument("--no-prune", dest="prune", action="store_false", help="iso: skip degree-sequence pruning")

    p = sub.add_parser("bench", parents=[common], help="time every phase on one graph")
    p.add_argument("file", nargs="?")
    p.add_argument("--n", type=int, default=18)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--treewidth", "-t", type=int, dest="t")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig(
            command=args.command,
            paths=[args.file] if getattr(args, "file", None) else [],
            format=args.format,
            t=getattr(args, "t", None),
            verify=getattr(args, "verify", False),
            json=args.json,
            seed=getattr(args, "seed", 0),
            count=getattr(args, "count", False),
            profile=getattr(args, "profile", False),
            certify=getattr(args, "certify", False),
            pattern=getattr(args, "pattern", None),
            task=getattr(args, "task", None),
            prune=getattr(args, "prune", True),
            budget_n=args.budget_n,
            threads=args.threads,
            n=getattr(args, "n", 18),
            p=getattr(args, "p", 0.3),
        )
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
