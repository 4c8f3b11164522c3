"""Command-line front end: rollouts, registry inspection, and throughput
benchmarking of the vector backends.

Exit codes: 0 success, 2 usage errors and unknown ids, 1 runtime failures.
JSON output is canonical (sorted keys, no insignificant whitespace); the
--no-timing flag drops wall-clock fields so equal invocations compare
byte-identically.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from .env import write_ppm
from .errors import EnvKitError, MalformedId, UnknownEnvironment, VersionNotFound
from .registry import default_registry, serialize_spec
from .seeding import Rng, entropy_seed
from .vector import BACKENDS, make_vec
from .wrappers import RecordEpisodeStatistics


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        _print_table(report)


def _print_table(report: dict, indent: str = "") -> None:
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_table(value, indent + "  ")
        else:
            print(f"{indent}{key}: {value}")


def _update_digest(digest, value) -> None:
    """Feed one result tree into a hash, canonically and type-tagged."""
    if isinstance(value, np.ndarray):
        digest.update(b"a")
        digest.update(str(value.dtype).encode())
        digest.update(str(value.shape).encode())
        digest.update(value.tobytes())
    elif isinstance(value, dict):
        digest.update(b"d")
        for key in sorted(value):
            digest.update(key.encode())
            _update_digest(digest, value[key])
    elif isinstance(value, (list, tuple)):
        digest.update(b"l")
        for item in value:
            _update_digest(digest, item)
    elif isinstance(value, (bool, int, float, str)) or value is None:
        digest.update(repr(value).encode())
    else:
        digest.update(repr(value).encode())


def _pick_render_mode(env_id: str) -> str:
    probe = default_registry.make(env_id)
    modes = probe.metadata.render_modes
    probe.close()
    if "ansi" in modes:
        return "ansi"
    if "rgb_array" in modes:
        return "rgb_array"
    raise EnvKitError(f"{env_id} supports no renderable mode for --render")


def cmd_rollout(args) -> int:
    seed = args.seed if args.seed is not None else entropy_seed()
    render_mode = _pick_render_mode(args.env) if args.render else None
    env = RecordEpisodeStatistics(default_registry.make(args.env, render_mode=render_mode))
    action_rng = Rng(seed)
    frame_dir = Path(args.render_dir)
    if args.render and render_mode == "rgb_array":
        frame_dir.mkdir(parents=True, exist_ok=True)

    episode_returns: list[float] = []
    episode_lengths: list[int] = []
    started = time.perf_counter()
    observation, info = env.reset(seed=seed)
    for step in range(args.steps):
        if args.render:
            output = env.render()
            if render_mode == "ansi":
                print(output)
            else:
                write_ppm(frame_dir / f"frame_{step:06d}.ppm", output)
        action = env.action_space.sample(action_rng)
        observation, reward, terminated, truncated, info = env.step(action)
        if terminated or truncated:
            episode_returns.append(info["episode"]["r"])
            episode_lengths.append(info["episode"]["l"])
            observation, info = env.reset()
    elapsed = time.perf_counter() - started
    env.close()

    report = {
        "env": args.env,
        "seed": seed,
        "total_steps": args.steps,
        "episodes_completed": len(episode_returns),
        "episode_returns": episode_returns,
        "episode_lengths": episode_lengths,
    }
    if not args.no_timing:
        report["wall_time_s"] = elapsed
        report["steps_per_second"] = args.steps / elapsed if elapsed > 0 else float("inf")
    _emit(report, args.format)
    return 0


def _run_bench_backend(env_id: str, num_envs: int, steps: int, seed: int, backend: str):
    venv = make_vec(env_id, num_envs, backend=backend)
    try:
        action_rng = Rng(seed)
        digest = hashlib.sha256()
        started = time.perf_counter()
        observations, infos = venv.reset(seed=seed)
        _update_digest(digest, observations)
        _update_digest(digest, infos)
        for _ in range(steps):
            actions = venv.action_space.sample(action_rng)
            observations, rewards, terminateds, truncateds, infos = venv.step(actions)
            for part in (observations, rewards, terminateds, truncateds, infos):
                _update_digest(digest, part)
        elapsed = time.perf_counter() - started
    finally:
        venv.close()
    return digest.hexdigest(), elapsed


def cmd_bench(args) -> int:
    seed = args.seed if args.seed is not None else entropy_seed()
    backends = list(BACKENDS) if args.backend is None else [args.backend]
    results = {}
    digests = {}
    for backend in backends:
        digest, elapsed = _run_bench_backend(args.env, args.num_envs, args.steps, seed, backend)
        digests[backend] = digest
        results[backend] = {}
        if not args.no_timing:
            results[backend]["wall_time_s"] = elapsed
            results[backend]["steps_per_second"] = (
                args.num_envs * args.steps / elapsed if elapsed > 0 else float("inf")
            )
    report = {
        "env": args.env,
        "num_envs": args.num_envs,
        "steps": args.steps,
        "seed": seed,
        "backends": results,
    }
    if len(backends) == 2:
        report["outputs_identical"] = digests["sequential"] == digests["parallel"]
    if args.format == "json":
        _emit(report, "json")
    else:
        _print_table(report)
        if "outputs_identical" in report:
            print(f"outputs identical: {str(report['outputs_identical']).lower()}")
    return 0


def cmd_list(args) -> int:
    specs = default_registry.list_registered(args.namespace)
    if args.format == "json":
        payload = [json.loads(serialize_spec(spec)) for spec in specs]
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for spec in specs:
            steps = spec.max_episode_steps if spec.max_episode_steps is not None else "-"
            print(f"{spec.id!s:<24} entry_point={spec.entry_point:<16} max_episode_steps={steps}")
    return 0


def cmd_inspect(args) -> int:
    spec = default_registry.spec_for(args.env)
    text = serialize_spec(spec)
    if args.format == "json":
        print(text)
    else:
        _print_table(json.loads(text))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="envkit",
        description="Rollouts, registry inspection, and vectorization benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--no-timing", action="store_true",
                       help="omit wall-clock fields for byte-stable output")

    rollout = sub.add_parser("rollout", help="replay the canonical random-action loop")
    rollout.add_argument("--env", required=True, help="environment id, e.g. CartPole-v1")
    rollout.add_argument("--steps", type=int, default=1000)
    rollout.add_argument("--seed", type=int, default=None)
    rollout.add_argument("--render", action="store_true",
                         help="emit frames/strings per the env's preferred mode")
    rollout.add_argument("--render-dir", default="frames",
                         help="directory for rgb frames written by --render")
    common(rollout)
    rollout.set_defaults(handler=cmd_rollout)

    bench = sub.add_parser("bench", help="compare vector backend throughput")
    bench.add_argument("--env", required=True)
    bench.add_argument("--steps", type=int, default=10_000)
    bench.add_argument("--num-envs", type=int, default=8)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--backend", choices=BACKENDS, default=None,
                       help="run one backend only (default: both, with equality check)")
    common(bench)
    bench.set_defaults(handler=cmd_bench)

    lister = sub.add_parser("list", help="list registered environments")
    lister.add_argument("--namespace", default=None)
    common(lister)
    lister.set_defaults(handler=cmd_list)

    inspect = sub.add_parser("inspect", help="print one environment's canonical spec")
    inspect.add_argument("--env", required=True)
    common(inspect)
    inspect.set_defaults(handler=cmd_inspect)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (UnknownEnvironment, VersionNotFound, MalformedId, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EnvKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
