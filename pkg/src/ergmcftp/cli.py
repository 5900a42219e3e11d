"""Command-line front end: ``ergmcftp {sample,mcmc,oracle,validate,scaling}``."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import validation
from .cftp import CoalescenceError, run_cftp
from .config import PRESETS, ExperimentConfig, normalize_schedule, parse_initial, preset
from .graph import Graph, complete_graph, empty_graph, format_edge_list
from .mcmc import erdos_renyi, forward_run
from .model import NotMonotoneError
from .motifs import count_motif
from .oracle import (
    MixingNotReached,
    exact_distribution,
    exact_t_mix,
    exact_transition_matrix,
    format_oracle_csv,
)

DEFAULT_PRESET = {"validate": "oracle4"}


class CliError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _header(cfg: ExperimentConfig, extra=()) -> list[str]:
    lines = ["resolved config:"]
    lines += cfg.to_text().rstrip("\n").splitlines()
    lines += list(extra)
    return lines


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _csv(header: list[str], rows, comments: list[str]) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def initial_state(spec: str, n: int, seed) -> Graph:
    kind, p = parse_initial(spec)
    if kind == "empty":
        return empty_graph(n)
    if kind == "complete":
        return complete_graph(n)
    return erdos_renyi(n, p, seed)


# commands -------------------------------------------------------------------


def cmd_sample(cfg: ExperimentConfig, timing: bool = False) -> int:
    model = cfg.model()
    model.require_monotone()
    out = Path(cfg.out)
    seeds = cfg.run_seeds()
    names = [g.label for g in model.motifs[1:]]
    header = ["seed", "stop_time", "passes", "edges", *names] + (["wall_ms"] if timing else [])
    comments = _header(cfg, [f"seeds: {seeds[0]}..{seeds[-1]} ({len(seeds)})"])

    def attempt(s):
        try:
            return run_cftp(model, s, cfg.schedule, cfg.max_depth)
        except CoalescenceError as exc:
            return exc

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(attempt, seeds))
    else:
        results = [attempt(s) for s in seeds]
    rows, failed = [], []
    for s, r in zip(seeds, results):
        if isinstance(r, CoalescenceError):
            failed.append((s, r.bracket))
            continue
        x = r.sample
        row = [s, r.stop_time, r.passes, x.edge_count()]
        row += [count_motif(x, g) for g in model.motifs[1:]]
        if timing:
            row.append(round(r.wall_time * 1000, 3))
        rows.append(row)
        _write(
            out / f"sample_{s}.edges",
            format_edge_list(x, _header(cfg, [f"seed: {s}", f"stop_time: {r.stop_time}"])),
        )
    _write(out / "summary.csv", _csv(header, rows, comments))
    print(f"wrote {len(rows)} samples to {out}")
    if failed:
        for s, (lo, hi) in failed:
            print(f"seed {s}: no coalescence (last failed depth {lo}, limit {hi})",
                  file=sys.stderr)
        return 1
    return 0


def cmd_mcmc(cfg: ExperimentConfig, timing: bool = False) -> int:
    model = cfg.model()
    out = Path(cfg.out)
    seeds = cfg.run_seeds(cfg.replicates)
    for s in seeds:
        x0 = initial_state(cfg.initial, cfg.n, [s, 0])
        x, trace = forward_run(model, x0, cfg.n_steps, [s, 1], cfg.stride, cfg.initial)
        rows = [(0, x0.edge_count(), *(count_motif(x0, g) for g in model.motifs[1:]))]
        rows += trace.rows()
        comments = _header(cfg, [f"seed: {s}", f"model: {trace.model_id}",
                                 f"initial: {cfg.initial}"])
        _write(out / f"trace_{s}.csv", _csv(trace.header(), rows, comments))
        _write(out / f"final_{s}.edges", format_edge_list(x, comments))
    print(f"wrote {len(seeds)} traces to {out}")
    return 0


def cmd_oracle(cfg: ExperimentConfig, timing: bool = False) -> int:
    model = cfg.model()
    dist = exact_distribution(model)
    P = exact_transition_matrix(model)
    try:
        t_mix = exact_t_mix(P)
    except MixingNotReached:
        t_mix = None
    out = Path(cfg.out)
    extra = [f"log_z: {dist.log_z:.17g}", f"t_mix: {t_mix}"]
    _write(out / "oracle.csv", format_oracle_csv(dist, _header(cfg, extra)))
    print(json.dumps({"log_z": dist.log_z, "t_mix": t_mix, "states": len(dist)}))
    return 0


def cmd_validate(cfg: ExperimentConfig, timing: bool = False, quick: bool = False) -> int:
    model = cfg.model()
    model.require_monotone()
    if model.n_vertices > 5:
        raise CliError("validate needs N <= 5 for the exact oracle")
    k = 10 if quick else 1
    seed = cfg.seed
    checks = [
        validation.check_oracle_tv(100_000, seed=seed * 10**8 + 10**7, model=model),
        validation.check_independent_edges(10_000 // k, seed=seed * 10**8 + 2 * 10**7),
        validation.check_stationarity(seed=seed * 10**8 + 3 * 10**7),
        validation.check_stopping_time_bound(10_000 // k, seed=seed * 10**8 + 4 * 10**7, model=model),
    ]
    for c in checks:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['check']}")
    report = {"config": cfg.to_text(), "checks": checks,
              "passed": all(c["passed"] for c in checks)}
    _write(Path(cfg.out) / "validate.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0 if report["passed"] else 1


def cmd_scaling(cfg: ExperimentConfig, timing: bool = False) -> int:
    n_values = cfg.n_values or [cfg.n]
    seeds = cfg.run_seeds()
    rows = []
    for n in n_values:
        model = cfg.model(n)
        model.require_monotone()
        stops = []
        for s in seeds:
            stops.append(run_cftp(model, s, cfg.schedule, cfg.max_depth).stop_time)
        a = np.array(stops, dtype=float)
        se = float(a.std(ddof=1) / math.sqrt(len(a))) if len(a) > 1 else float("nan")
        rows.append([n, float(a.mean()), se])
    _write(Path(cfg.out) / "scaling.csv",
           _csv(["N", "mean_stop_time", "stderr"], rows, _header(cfg)))
    print(f"wrote {len(rows)} rows to {cfg.out}")
    return 0


COMMANDS = {
    "sample": (cmd_sample, "cftp"),
    "mcmc": (cmd_mcmc, "mcmc"),
    "oracle": (cmd_oracle, "oracle"),
    "validate": (cmd_validate, "validate"),
    "scaling": (cmd_scaling, "scaling"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergmcftp", description="Perfect sampling of exponential random graph models."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="config file ([model], [run], [output] sections)")
        p.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
        p.add_argument("--seeds", type=int, help="number of runs (seed, seed+1, ...)")
        p.add_argument("--schedule", type=normalize_schedule, help="unit | double")
        p.add_argument("--out", help="output directory")
        p.add_argument("--n-steps", type=int, dest="n_steps")
        p.add_argument("--replicates", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--timing", action="store_true",
                       help="add wall-clock columns (outputs are then not reproducible)")
        if name == "validate":
            p.add_argument("--quick", action="store_true", help="10x fewer samples, except for the oracle TV check")
    return parser


def resolve_config(args) -> ExperimentConfig:
    func, algorithm = COMMANDS[args.command]
    name = args.preset or (None if args.config else DEFAULT_PRESET.get(args.command))
    cfg = preset(name) if name else ExperimentConfig(algorithm=algorithm)
    if args.config:
        cfg = ExperimentConfig.from_text(Path(args.config).read_text(), base=cfg)
    overrides = {k: getattr(args, k) for k in
                 ("seed", "seeds", "schedule", "out", "n_steps", "replicates", "workers")
                 if getattr(args, k) is not None}
    return cfg.replace(algorithm=algorithm, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        func = COMMANDS[args.command][0]
        kwargs = {"timing": args.timing}
        if args.command == "validate":
            kwargs["quick"] = args.quick
        start = time.perf_counter()
        status = func(cfg, **kwargs)
        if args.timing:
            print(f"elapsed {time.perf_counter() - start:.3f} s")
        return status
    except NotMonotoneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
