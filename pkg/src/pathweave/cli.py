"""Command-line entry point.

Data goes to stdout or files, diagnostics to stderr. Exit codes: 0 ok,
2 usage/config error, 3 negative cycle. Every command can write a run manifest,
and ``replay`` re-executes one and checks the output digests.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import equivalence as eq
from .bellman_ford import bf_v1, bf_v2, detect_negative_cycle, reconstruct_path
from .graph import GeneratorConfig, GraphFormatError, generate_random_graph, graph_to_network, load_graph, save_graph
from .nnbf import DEFAULT_K, nnbf_solve, path_cost, reconstruct_path_from_max_inputs
from .plasticity import LearningConfig, SequenceTask, build_nav_environment, nav_learning_run, seq_learning_run
from .presets import preset
from .runio import RunManifest, write_csv, write_jsonl

EXIT_USAGE = 2
EXIT_NEGATIVE_CYCLE = 3
SEED_ENV = "PATHWEAVE_SEED"


class UsageError(Exception):
    pass


def _env_seed(seed):
    env = os.environ.get(SEED_ENV)
    if env is None:
        return seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


# -- executors: (config, out_dir, workers) -> (output paths, stdout payload or None)

def exec_generate(config, out_dir, workers=1):
    graph = generate_random_graph(GeneratorConfig.from_dict(config["generator"]))
    path = out_dir / config["out"]
    save_graph(graph, path)
    return [path], None


def exec_pairs(config, out_dir, workers=1):
    cfg = eq.PairExperimentConfig.from_dict(config)
    records = eq.pair_experiment(cfg, workers)
    rows = [(r.lengths[0], r.lengths[1], r.contrast, r.k0, r.seed) for r in records]
    return [write_csv(out_dir / "k0_pairs.csv", ("L_A", "L_B", "contrast", "k0", "seed"), rows)], None


def _families(config):
    return [eq.Family.from_dict(f) for f in config["families"]]


def exec_k0scan(config, out_dir, workers=1):
    results = eq.graph_k0_scan(_families(config), config.get("k_ladder", eq.DEFAULT_K_LADDER), workers)
    summary, detail = [], []
    for r in results:
        c = r.family.config
        summary.append((c.node_count, c.edge_prob, c.pos_cost_range[1], r.max_k0, r.family.graphs))
        detail += [(c.node_count, c.edge_prob, c.pos_cost_range[1], c.seed + i, k0) for i, k0 in enumerate(r.k0s)]
    return [
        write_csv(out_dir / "k0_graphs.csv", ("nodes", "density", "cost_max", "max_k0", "graphs"), summary),
        write_csv(out_dir / "k0_graphs_detail.csv", ("nodes", "density", "cost_max", "seed", "k0"), detail),
    ], None


def exec_converge(config, out_dir, workers=1):
    results = eq.convergence_experiment(_families(config), config.get("K", DEFAULT_K), workers)
    summary, hist = [], []
    for r in results:
        c = r.family.config
        for solver in ("bf1", "nnbf"):
            summary.append((c.node_count, round(r.mean_edges), solver, r.max_iterations(solver), c.edge_prob))
            hist += [(c.node_count, c.edge_prob, solver, k, v) for k, v in r.histogram(solver).items()]
    return [
        write_csv(out_dir / "convergence.csv", ("nodes", "edges", "solver", "max_iters", "density"), summary),
        write_csv(out_dir / "convergence_hist.csv", ("nodes", "density", "solver", "iterations", "count"), hist),
    ], None


def exec_bench(config, out_dir, workers=1):
    results = eq.runtime_benchmark(
        _families(config), config.get("sweeps", 10), config.get("repeats", 5), config.get("warmup", 2)
    )
    rows = [
        (r.family.name, r.solver, r.mean, r.stddev, r.family.config.node_count, r.family.config.edge_prob, r.edges)
        for r in results
    ]
    header = ("family", "solver", "mean", "stddev", "nodes", "density", "edges")
    return [write_csv(out_dir / "runtime.csv", header, rows)], None


def exec_learn_nav(config, out_dir, workers=1):
    env = build_nav_environment(config["scenario"], config["seed"])
    run = nav_learning_run(
        env, LearningConfig(alpha=config["alpha"], beta=config["beta"], plan_interval=config["plan_interval"]),
        config["iterations"], config.get("remove_at"), config["seed"], keep_weights=config.get("full_weights", False),
    )
    log = write_jsonl(out_dir / config["out"], (s.to_json() for s in run.snapshots))
    env_path = out_dir / (config["out"] + ".env.json")
    env_path.write_text(json.dumps(env.to_json_dict()) + "\n", encoding="utf-8", newline="\n")
    last = run.snapshots[-1]
    summary = {"iterations": last.iteration, "planned_path": last.planned_path,
               "path_euclidean_length": last.path_euclidean_length}
    return [log, env_path], summary


def exec_learn_seq(config, out_dir, workers=1):
    records, epochs, converged = [], [], 0
    for i in range(config["seeds"]):
        task = SequenceTask(target=config["target"], alphabet=config["alphabet"], alpha=config["alpha"],
                            seed=config["seed"] + i, epoch_cap=config["epoch_cap"])
        run = seq_learning_run(task)
        for e, (seq, digest) in enumerate(zip(run.sequences, run.digests)):
            records.append({"seed": task.seed, "epoch": e, "sequence": seq, "weights_digest": digest})
        epochs.append(run.epochs)
        converged += run.converged
    log = write_jsonl(out_dir / config["out"], records)
    summary = {
        "target": config["target"],
        "seeds": config["seeds"],
        "converged_fraction": converged / config["seeds"],
        "mean_epochs": float(np.mean(epochs)),
        "max_epochs": int(max(epochs)),
    }
    return [log], summary


EXECUTORS = {
    "generate": exec_generate,
    "pairs": exec_pairs,
    "k0scan": exec_k0scan,
    "converge": exec_converge,
    "bench": exec_bench,
    "learn-nav": exec_learn_nav,
    "learn-seq": exec_learn_seq,
}
VOLATILE = {"runtime.csv"}


def _apply_seed(command, config, seed):
    if seed is None:
        return config
    config = json.loads(json.dumps(config))
    if command == "pairs":
        config["seed"] = seed
    else:
        for fam in config.get("families", []):
            fam["config"]["seed"] = seed
    return config


def run_and_record(command, config, out_dir, workers, manifest_path, seed):
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(command, config, seed)
    paths, payload = EXECUTORS[command](config, out_dir, workers)
    manifest.finish(paths)
    manifest.volatile = sorted(VOLATILE & {p.name for p in paths})
    if manifest_path is not None:
        manifest.write(manifest_path)
    return paths, payload


# -- argument handling ------------------------------------------------------------

def _emit(payload):
    sys.stdout.write(json.dumps(payload) + "\n")


def cmd_generate(args):
    if args.nodes <= 0:
        raise UsageError("--nodes must be positive")
    seed = _env_seed(args.seed)
    gen = GeneratorConfig(
        args.nodes, args.edge_prob, (args.cost_min, args.cost_max), (args.neg_min, args.neg_max),
        args.neg_prob, seed, not args.real_costs,
    )
    out = Path(args.out)
    config = {"generator": gen.to_dict(), "out": out.name}
    run_and_record("generate", config, out.parent, 1, Path(str(out) + ".manifest.json"), seed)
    return 0


def cmd_solve(args):
    try:
        graph = load_graph(args.graph)
    except (OSError, UnicodeDecodeError, GraphFormatError) as exc:
        raise UsageError(f"cannot read graph {args.graph}: {exc}") from None
    if not 0 <= args.source < graph.node_count:
        raise UsageError(f"--source {args.source} outside [0, {graph.node_count})")
    if args.target is not None and not 0 <= args.target < graph.node_count:
        raise UsageError(f"--target {args.target} outside [0, {graph.node_count})")
    early = not args.no_early_stop
    check = bf_v1(graph, args.source, early_stop=True)
    if check.negative_cycle_detected or detect_negative_cycle(graph, check):
        print(f"error: negative cycle reachable from source {args.source}", file=sys.stderr)
        return EXIT_NEGATIVE_CYCLE
    if args.algo == "nnbf":
        K = DEFAULT_K if args.k is None else args.k
        if not K > 0:
            raise UsageError("--k must be positive")
        result = nnbf_solve(graph_to_network(graph, K), args.source, early)
        out = result.to_json_dict()
        out["K"] = K
        path = reconstruct_path_from_max_inputs(result, args.target) if args.target is not None else None
    else:
        result = (bf_v1 if args.algo == "bf1" else bf_v2)(graph, args.source, early)
        out = result.to_json_dict()
        path = reconstruct_path(result, args.target) if args.target is not None else None
    if args.target is not None:
        out["target"] = args.target
        out["path"] = path
        out["path_cost"] = None if path is None else path_cost(graph, path)
    _emit(out)
    if args.manifest:
        manifest = RunManifest("solve", {"graph": str(args.graph), "algo": args.algo, "source": args.source,
                                         "k": args.k, "target": args.target}, None)
        manifest.finish([args.graph]).write(args.manifest)
    return 0


def _experiment(command):
    def handler(args):
        if args.preset and args.config:
            raise UsageError("use either --preset or --config, not both")
        if args.config:
            try:
                config = json.loads(Path(args.config).read_text(encoding="utf-8"))
            except (OSError, ValueError) as exc:
                raise UsageError(f"cannot read config {args.config}: {exc}") from None
        else:
            config = preset(args.preset or _DEFAULT_PRESET[command], command)
        seed = _env_seed(args.seed)
        config = _apply_seed(command, config, seed)
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        out_dir = Path(args.out_dir)
        try:
            run_and_record(command, config, out_dir, args.workers, out_dir / f"{command}_manifest.json", seed)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed {command} config: {exc}") from None
        return 0
    return handler


_DEFAULT_PRESET = {"pairs": "fig3-desk", "k0scan": "fig4-desk", "converge": "fig5-desk", "bench": "bench-desk"}


def cmd_learn_nav(args):
    if args.iterations < 0:
        raise UsageError("--iterations must be >= 0")
    seed = _env_seed(args.seed)
    config = {
        "scenario": args.scenario, "iterations": args.iterations, "remove_at": args.remove_at, "seed": seed,
        "alpha": args.alpha, "beta": args.beta, "plan_interval": args.plan_interval,
        "full_weights": args.full_weights, "out": Path(args.out).name,
    }
    if args.scenario == "static" and args.remove_at is not None:
        raise UsageError("--remove-at only applies to the dynamic scenario")
    out = Path(args.out)
    _, summary = run_and_record("learn-nav", config, out.parent, 1, Path(str(out) + ".manifest.json"), seed)
    _emit(summary)
    return 0


def cmd_learn_seq(args):
    try:
        SequenceTask(target=args.target, alphabet=args.alphabet)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.seeds < 1:
        raise UsageError("--seeds must be >= 1")
    seed = _env_seed(args.seed)
    config = {
        "target": args.target, "alphabet": args.alphabet, "alpha": args.alpha, "seeds": args.seeds,
        "seed": seed, "epoch_cap": args.epoch_cap, "out": Path(args.out).name,
    }
    out = Path(args.out)
    _, summary = run_and_record("learn-seq", config, out.parent, 1, Path(str(out) + ".manifest.json"), seed)
    _emit(summary)
    return 0


def cmd_replay(args):
    try:
        manifest = RunManifest.read(args.manifest)
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read manifest {args.manifest}: {exc}") from None
    if manifest.command not in EXECUTORS:
        raise UsageError(f"command {manifest.command!r} cannot be replayed")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths, _ = EXECUTORS[manifest.command](manifest.config, out_dir, args.workers)
    fresh = RunManifest(manifest.command, manifest.config, manifest.seed).finish(paths).outputs
    volatile = set(manifest.volatile)
    files = {name: fresh.get(name) == digest for name, digest in manifest.outputs.items() if name not in volatile}
    _emit({"command": manifest.command, "identical": all(files.values()), "files": files})
    return 0 if all(files.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pathweave", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random graph (edge list, or JSON for a .json path)")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--edge-prob", type=float, default=0.1)
    g.add_argument("--cost-min", type=float, default=1.0)
    g.add_argument("--cost-max", type=float, default=100.0)
    g.add_argument("--neg-prob", type=float, default=0.0)
    g.add_argument("--neg-min", type=float, default=-10.0)
    g.add_argument("--neg-max", type=float, default=-1.0)
    g.add_argument("--real-costs", action="store_true", help="draw real-valued instead of integer costs")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve single-source shortest paths; JSON result on stdout")
    s.add_argument("graph")
    s.add_argument("--algo", choices=("bf1", "bf2", "nnbf"), default="bf1")
    s.add_argument("--source", type=int, default=0)
    s.add_argument("--k", type=float, default=None, help=f"cost-to-weight scale for nnbf (default {DEFAULT_K:g})")
    s.add_argument("--target", type=int, default=None)
    s.add_argument("--no-early-stop", action="store_true")
    s.add_argument("--manifest", default=None)
    s.set_defaults(func=cmd_solve)

    for name, help_ in (("pairs", "K0 statistics over random path pairs -> k0_pairs.csv"),
                        ("k0scan", "graph-level K0 on a K ladder -> k0_graphs.csv"),
                        ("converge", "sweeps until convergence -> convergence.csv"),
                        ("bench", "per-sweep runtime -> runtime.csv")):
        e = sub.add_parser(name, help=help_)
        e.add_argument("--preset", default=None)
        e.add_argument("--config", default=None, help="JSON config file")
        e.add_argument("--out-dir", default=".")
        e.add_argument("--workers", type=int, default=1)
        e.add_argument("--seed", type=int, default=None, help="override the base seed")
        e.set_defaults(func=_experiment(name))

    learn = sub.add_parser("learn", help="Hebbian learning scenarios")
    lsub = learn.add_subparsers(dest="scenario_kind", required=True)
    nav = lsub.add_parser("nav", help="grid navigation; JSON-lines snapshot log")
    nav.add_argument("--scenario", choices=("static", "dynamic"), default="static")
    nav.add_argument("--iterations", type=int, default=2000)
    nav.add_argument("--remove-at", type=int, default=None)
    nav.add_argument("--seed", type=int, default=0)
    nav.add_argument("--alpha", type=float, default=0.02)
    nav.add_argument("--beta", type=float, default=1.0)
    nav.add_argument("--plan-interval", type=int, default=100)
    nav.add_argument("--full-weights", action="store_true")
    nav.add_argument("--out", default="nav_log.jsonl")
    nav.set_defaults(func=cmd_learn_nav)
    seq = lsub.add_parser("seq", help="sequence learning; JSON-lines epoch log")
    seq.add_argument("--target", default="ABCDEF")
    seq.add_argument("--alphabet", default="ABCDEF")
    seq.add_argument("--alpha", type=float, default=0.9)
    seq.add_argument("--seeds", type=int, default=1)
    seq.add_argument("--seed", type=int, default=0, help="first seed")
    seq.add_argument("--epoch-cap", type=int, default=200)
    seq.add_argument("--out", default="seq_log.jsonl")
    seq.set_defaults(func=cmd_learn_seq)

    r = sub.add_parser("replay", help="re-run a manifest and compare output digests")
    r.add_argument("manifest")
    r.add_argument("--out-dir", default="replay")
    r.add_argument("--workers", type=int, default=1)
    r.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
