"""Command-line interface. Every command prints one JSON report with sorted keys.

Exit codes: 0 for a definitive answer, 2 when a search ran out of budget or a
constructive step could not be completed, 1 for usage and input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import FORMULAS, BoundFormula, blowup_construction, eval_bound, interleaved_construction, lower_bound_coloring
from .core import (
    EdgeColoring,
    FormatError,
    OrderedGraph,
    ChainParams,
    parse_pattern,
    validate_witness,
)
from .exact import AvoidanceInstance, build_cnf, find_avoiding_coloring, ordered_ramsey_number
from .extractors import (
    ChainThresholds,
    ContradictionCertificate,
    ExtractionFailure,
    PreconditionError,
    QExtractParams,
    chain_extract_recursive,
    clique_pair_across_parts,
    erdos_szekeres_extract,
    pipeline_path_vs_clique,
    q_ramsey_extract,
    remark_pipeline,
    sample_clique_pair,
    validate_pipeline_result,
)
from .finders import BudgetExhausted, SearchBudget, SearchStats, find_ordered_embedding
from .tournament import find_directed_path_power, from_trn, reduce_tournament

EXIT_OK, EXIT_ERROR, EXIT_INDETERMINATE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("RAMSEY_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"RAMSEY_SEED must be an integer, got {env!r}") from None


def parse_vertex_set(text: str) -> list[int]:
    """``"0-4,7,9-10"`` -> ``[0, 1, 2, 3, 4, 7, 9, 10]``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = map(int, part.split("-", 1))
                if lo > hi:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad vertex set {text!r}") from None
    return sorted(set(out))


def _located(path: str, e: FormatError) -> FormatError:
    out = FormatError(f"{path}: {e}")
    out.lineno = e.lineno
    return out


class _Inputs:
    def __init__(self):
        self.digests: dict[str, str] = {}

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        self.digests[path] = hashlib.sha256(data).hexdigest()
        try:
            return data.decode()
        except UnicodeDecodeError:
            raise UsageError(f"{path} is not text") from None

    def host(self, path: str) -> OrderedGraph | EdgeColoring:
        text = self.read(path)
        head = text.split(maxsplit=1)[0] if text.strip() else ""
        try:
            if head == "og":
                return OrderedGraph.from_og(text)
            if head == "ocg":
                return EdgeColoring.from_ocg(text)
        except FormatError as e:
            raise _located(path, e) from None
        raise FormatError(f"{path}: unknown header {head!r}; expected 'og' or 'ocg'", 1)

    def graph(self, path: str) -> OrderedGraph:
        h = self.host(path)
        if isinstance(h, OrderedGraph):
            return h
        if h.n_colors != 2:
            raise UsageError("a two-colouring is needed; its red class is used as the graph")
        return OrderedGraph(h.n_vertices, h.class_rows[0])

    def coloring(self, path: str) -> EdgeColoring:
        h = self.host(path)
        return EdgeColoring.from_graph(h) if isinstance(h, OrderedGraph) else h


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.budget) if args.budget else SearchBudget()


def _write(path: str | None, text: str) -> str | None:
    if path is None:
        return None
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None
    return path


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_find(args, io: _Inputs) -> tuple[int, dict]:
    host = io.host(args.host)
    pattern = parse_pattern(args.pattern)
    color = args.color
    if isinstance(host, EdgeColoring) and color is None:
        color = 0
    stats = SearchStats()
    within = parse_vertex_set(args.within) if args.within else None
    w = find_ordered_embedding(host, color, pattern, _budget(args), within=within, stats=stats)
    rep = {"stats": vars(stats), "pattern": pattern.to_dict()}
    if w is None:
        return EXIT_OK, {**rep, "outcome": "none"}
    assert validate_witness(host, w)
    return EXIT_OK, {**rep, "outcome": "witness", "witness": w.to_dict()}


def _witness_or_certificate(g, out) -> dict:
    assert validate_pipeline_result(g, out)
    if isinstance(out, ContradictionCertificate):
        return {"outcome": "certificate", "certificate": out.to_dict()}
    return {"outcome": "witness", "witness": out.to_dict()}


_EXTRACT_NEEDS = {
    "es": ("s", "n"),
    "qgraph": ("l", "n", "t", "s"),
    "chain": ("s", "t", "l"),
    "pipeline": ("s", "t", "n", "block_size"),
    "remark": ("s", "t", "n", "r"),
    "cliquepair": ("t",),
}


def cmd_extract(args, io: _Inputs) -> tuple[int, dict]:
    seed = default_seed(args.seed)
    kind = args.procedure
    missing = [f"--{k.replace('_', '-')}" for k in _EXTRACT_NEEDS[kind] if getattr(args, k) is None]
    if missing:
        raise UsageError(f"extract {kind} needs {', '.join(missing)}")
    if kind == "es":
        c = io.coloring(args.host)
        w = erdos_szekeres_extract(c, args.s, args.n, check_threshold=not args.below_threshold)
        return EXIT_OK, {"outcome": "witness", "witness": w.to_dict()}
    if kind == "qgraph":
        c = io.coloring(args.host)
        params = QExtractParams(epsilon=float(args.eps), s=args.s, l0=args.l0, lam=None if args.lam is None else float(Fraction(args.lam)))
        w = q_ramsey_extract(c, args.l, args.n, args.t, params, _budget(args))
        return EXIT_OK, {"outcome": "witness", "witness": w.to_dict()}
    g = io.graph(args.host)
    if kind == "chain":
        frac = lambda x: None if x is None else Fraction(x)  # noqa: E731
        th = ChainThresholds(args.a_min, frac(args.left_fraction), frac(args.nonneighbor_fraction), frac(args.dense_fraction))
        ch = chain_extract_recursive(g, args.s, args.t, args.l, th, r=args.r)
        return EXIT_OK, {"outcome": "witness", "chain": ch.to_dict(), "params": ChainParams(args.a_min, args.t, args.s).to_dict()}
    if kind == "pipeline":
        out = pipeline_path_vs_clique(
            g, args.s, args.t, args.n, args.block_size, ChainParams(args.a_min, args.t, args.s),
            budget=_budget(args), rng_seed=seed, jobs=args.jobs,
        )
        return EXIT_OK, {**_witness_or_certificate(g, out), "seed": seed}
    if kind == "remark":
        out = remark_pipeline(g, args.s, args.t, args.n, args.r, budget=_budget(args), rng_seed=seed)
        return EXIT_OK, {**_witness_or_certificate(g, out), "seed": seed}
    if kind == "cliquepair":
        if args.parts:
            parts = [parse_vertex_set(p) for p in args.parts.split(";")]
            i, j, ti, tj = clique_pair_across_parts(g, parts, args.t, rng_seed=seed, retries=args.retries)
            return EXIT_OK, {"outcome": "witness", "parts": [i, j], "pair": [list(ti), list(tj)], "seed": seed}
        if not (args.v1 and args.v2):
            raise UsageError("cliquepair needs --parts or both --v1 and --v2")
        res = sample_clique_pair(g, parse_vertex_set(args.v1), parse_vertex_set(args.v2), args.t, args.s, seed, args.retries)
        rep = {"source": res.source, "samples": res.samples, "seed": seed}
        if res.pair is None:
            code = EXIT_OK if res.source == "absent" else EXIT_INDETERMINATE
            return code, {**rep, "outcome": "none" if code == EXIT_OK else "indeterminate"}
        return EXIT_OK, {**rep, "outcome": "witness", "pair": [list(res.pair[0]), list(res.pair[1])]}
    raise UsageError(f"unknown procedure {kind}")


def cmd_exact(args, io: _Inputs) -> tuple[int, dict]:
    red, blue = parse_pattern(args.red), parse_pattern(args.blue)
    stats = SearchStats()
    if args.mode == "ramsey-number":
        res = ordered_ramsey_number(red, blue, args.n_max, _budget(args), stats=stats, jobs=args.jobs)
        rep = {"outcome": "value", "stats": vars(stats), **res.to_dict()}
        if res.certificate is not None:
            for pat, col in ((red, 0), (blue, 1)):
                assert find_ordered_embedding(res.certificate, col, pat) is None
        return EXIT_OK, rep
    if args.n is None:
        raise UsageError("exact avoid needs --n")
    c = find_avoiding_coloring(AvoidanceInstance(args.n, red, blue), _budget(args), stats=stats, jobs=args.jobs)
    rep = {"stats": vars(stats), "n": args.n, "red": red.to_dict(), "blue": blue.to_dict()}
    if c is None:
        return EXIT_OK, {**rep, "outcome": "none"}
    _write(args.out, c.to_ocg())
    return EXIT_OK, {**rep, "outcome": "witness", "coloring": list(c.pair_colors()), "out": args.out}


def cmd_cnf(args, io: _Inputs) -> tuple[int, dict]:
    inst = AvoidanceInstance(args.n, parse_pattern(args.red), parse_pattern(args.blue))
    cnf = build_cnf(inst, args.cap)
    text = cnf.to_dimacs()
    rep = {"outcome": "value", "variables": cnf.n_vars, "clauses": len(cnf.clauses)}
    if args.out:
        _write(args.out, text)
        rep["out"] = args.out
    else:
        rep["dimacs"] = text
    return EXIT_OK, rep


def cmd_bound(args, io: _Inputs) -> tuple[int, dict]:
    fid = args.formula
    params = {k: getattr(args, k) for k in ("C", "D", "r", "n", "s", "t", "eps") if getattr(args, k) is not None}
    if fid == "thm13" and "C" not in params:
        # without C only the explicit form is computable
        fid = "thm13_internal"
    for k, v in params.items():
        try:
            params[k] = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--{k} must be a number, got {v!r}") from None
    bv = eval_bound(BoundFormula(fid, params))
    rep = {"outcome": "value", "formula": fid, "flags": list(bv.flags), "digits": bv.digits,
           "parameters": {k: str(v) for k, v in params.items()}}
    if not args.digits:
        rep["value"] = str(bv.value)
    return EXIT_OK, rep


def cmd_construct(args, io: _Inputs) -> tuple[int, dict]:
    if args.mode == "lower-bound":
        if None in (args.s, args.t, args.n):
            raise UsageError("lower-bound needs --s, --t and --n")
        lb = lower_bound_coloring(args.s, args.t, args.n)
        c, rep = lb.coloring, {"method": lb.method, "copies": lb.copies, "base_vertices": lb.base.n_vertices}
        if args.certify:
            from .core import Clique, PathPower

            rep["certified"] = (
                find_ordered_embedding(c, 0, PathPower(args.n, args.t), _budget(args)) is None
                and find_ordered_embedding(c, 1, Clique(args.s), _budget(args)) is None
            )
    else:
        if args.base is None:
            raise UsageError(f"{args.mode} needs --base")
        base = io.coloring(args.base)
        if args.mode == "blowup":
            c = blowup_construction(base, args.block_size, args.intra_color)
        else:
            c = interleaved_construction(base, args.block_size, args.intra_color)
        rep = {"method": args.mode}
    rep.update(outcome="value", n_vertices=c.n_vertices)
    if args.out:
        rep["out"] = _write(args.out, c.to_ocg())
    else:
        rep["coloring"] = list(c.pair_colors())
    return EXIT_OK, rep


def cmd_tournament(args, io: _Inputs) -> tuple[int, dict]:
    try:
        t, chi = from_trn(io.read(args.input), args.colors)
    except FormatError as e:
        raise _located(args.input, e) from None
    if args.mode == "reduce":
        c = reduce_tournament(t, chi)
        rep = {"outcome": "value", "n_vertices": c.n_vertices, "n_colors": c.n_colors}
        if args.out:
            rep["out"] = _write(args.out, c.to_ocg())
        else:
            rep["coloring"] = list(c.pair_colors())
        return EXIT_OK, rep
    if args.t is None:
        raise UsageError("tournament find needs --t")
    res = find_directed_path_power(t, chi, args.t, args.n_target or t.n_vertices or 1)
    return EXIT_OK, {"outcome": "witness" if res.witness else "none", **res.to_dict()}


def cmd_selftest(args, io: _Inputs) -> tuple[int, dict]:
    root = Path(__file__).resolve().parents[2]
    target = root / "tests" / "test_acceptance.py"
    if not target.exists():
        raise UsageError(f"acceptance suite not found at {target}")
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(target)], cwd=root, capture_output=True, text=True
    )
    lines = [ln for ln in proc.stdout.splitlines() if ln.startswith(("PASS", "FAIL"))]
    return (EXIT_OK if proc.returncode == 0 else EXIT_ERROR), {
        "outcome": "value", "passed": proc.returncode == 0, "criteria": lines,
    }


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordramsey", description="Ordered Ramsey tools for path powers, cliques and tournaments.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q, seed=False, jobs=False):
        q.add_argument("--budget", type=int, default=None, help="search node limit")
        if seed:
            q.add_argument("--seed", type=int, default=None, help="RNG seed (overrides RAMSEY_SEED)")
        if jobs:
            q.add_argument("--jobs", type=int, default=1)

    q = sub.add_parser("find", help="find an ordered pattern in a graph or colouring")
    q.add_argument("--host", required=True)
    q.add_argument("--pattern", required=True)
    q.add_argument("--color", type=int, default=None)
    q.add_argument("--within", default=None, help="restrict to a vertex set, e.g. 0-9,12")
    common(q)
    q.set_defaults(func=cmd_find)

    q = sub.add_parser("extract", help="run a constructive extractor")
    q.add_argument("procedure", choices=["es", "qgraph", "chain", "pipeline", "remark", "cliquepair"])
    q.add_argument("--host", required=True)
    for name in ("s", "t", "n", "l", "r"):
        q.add_argument(f"--{name}", type=int, default=None)
    q.add_argument("--l0", type=int, default=3)
    q.add_argument("--a-min", type=int, default=2)
    q.add_argument("--block-size", type=int, default=None)
    q.add_argument("--eps", default="1")
    q.add_argument("--lam", default=None)
    q.add_argument("--left-fraction", default=None)
    q.add_argument("--nonneighbor-fraction", default=None)
    q.add_argument("--dense-fraction", default=None)
    q.add_argument("--below-threshold", action="store_true", help="es: try even when N is below (s-1)(n-1)+1")
    q.add_argument("--v1", default=None)
    q.add_argument("--v2", default=None)
    q.add_argument("--parts", default=None, help="parts separated by ';', e.g. '0-9;10-19;20-29'")
    q.add_argument("--retries", type=int, default=32)
    common(q, seed=True, jobs=True)
    q.set_defaults(func=cmd_extract)

    q = sub.add_parser("exact", help="exact ordered Ramsey numbers and avoiding colourings")
    q.add_argument("mode", choices=["ramsey-number", "avoid"])
    q.add_argument("--red", required=True)
    q.add_argument("--blue", required=True)
    q.add_argument("--n-max", type=int, default=12)
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--out", default=None)
    common(q, jobs=True)
    q.set_defaults(func=cmd_exact)

    q = sub.add_parser("cnf", help="DIMACS export of an avoidance instance")
    q.add_argument("--red", required=True)
    q.add_argument("--blue", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--cap", type=int, default=10**6)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_cnf)

    q = sub.add_parser("bound", help="evaluate a bound formula exactly")
    q.add_argument("formula", choices=sorted(set(FORMULAS) | {"thm13"}))
    for name in ("C", "D", "r", "n", "s", "t", "eps"):
        q.add_argument(f"--{name}", default=None)
    q.add_argument("--digits", action="store_true", help="report only the number of decimal digits")
    q.set_defaults(func=cmd_bound)

    q = sub.add_parser("construct", help="lower-bound colourings")
    q.add_argument("mode", choices=["lower-bound", "blowup", "interleave"])
    q.add_argument("--s", type=int, default=None)
    q.add_argument("--t", type=int, default=None)
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--base", default=None)
    q.add_argument("--block-size", type=int, default=2, help="block size (blowup) or number of copies (interleave)")
    q.add_argument("--intra-color", type=int, default=0)
    q.add_argument("--certify", action="store_true")
    q.add_argument("--out", default=None)
    common(q)
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("tournament", help="coloured tournaments")
    q.add_argument("mode", choices=["reduce", "find"])
    q.add_argument("--input", required=True)
    q.add_argument("--colors", type=int, default=None, help="number of colours r (default: largest used + 1)")
    q.add_argument("--t", type=int, default=None)
    q.add_argument("--n-target", type=int, default=None)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_tournament)

    q = sub.add_parser("selftest", help="run the acceptance suite")
    q.set_defaults(func=cmd_selftest)
    return p


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    argv = list(sys.argv[1:] if argv is None else argv)
    io = _Inputs()
    base = {"command": argv}
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return EXIT_ERROR, {**base, "outcome": "error", "error": f"usage: {e}", "inputs": {}}
    try:
        code, rep = args.func(args, io)
    except BudgetExhausted as e:
        code, rep = EXIT_INDETERMINATE, {"outcome": "indeterminate", "nodes": e.nodes}
    except ExtractionFailure as e:
        code, rep = EXIT_INDETERMINATE, {"outcome": "failure", "failure": e.to_dict()}
    except FormatError as e:
        code, rep = EXIT_ERROR, {"outcome": "error", "error": str(e), "line": e.lineno}
    except (UsageError, PreconditionError, ValueError) as e:
        code, rep = EXIT_ERROR, {"outcome": "error", "error": str(e)}
    rep = {**base, **rep, "inputs": io.digests}
    if getattr(args, "timing", False):
        rep["seconds"] = round(time.perf_counter() - start, 6)
    return code, rep


def main(argv: list[str] | None = None) -> int:
    code, rep = run(argv)
    print(json.dumps(rep, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
