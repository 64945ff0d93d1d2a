"""Command-line front end for the verification suite.

Subcommands:
  verify       run the randomized property suite for one configuration
  replay       run a single checker on a stored instance file
  emit-system  dump V, F, Q (and optionally lambda(A)) for inspection

Exit codes: 0 success / all properties passed, 1 verification failure,
2 configuration or usage error (bad ranges, unknown property, shape
mismatch), 3 I/O or parse error. The environment variable SCHURBLOCK_SEED,
when set, overrides --seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .blocks import (
    block_matrix_from_json,
    block_matrix_to_json,
    operator_to_json,
    vector_from_json,
)
from .errors import ShapeError
from .instances import (
    ENSEMBLES,
    GINIBRE,
    mix64,
    sample_block_matrix,
    sample_lift,
    sample_vector,
)
from .stinespring import StinespringSystem, build_lambda
from .verify import (
    DEFAULT_TOLERANCES,
    PROPERTY_IDS,
    PropertyResult,
    merge_results,
    run_property,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3

MAX_N = 8
MAX_D = 4
MAX_K = 3
DENSE_GUARD = 1024


class ConfigError(ValueError):
    """Invalid suite configuration, rejected before any allocation."""


@dataclass(frozen=True)
class TrialConfig:
    """Dimensions, trial counts, seed and tolerances for one suite run."""

    n: int = 4
    d: int = 2
    k: int = 2
    trials: int = 200
    seed: int = 42
    ensemble: str = GINIBRE
    tolerances: dict = field(default_factory=dict)
    properties: tuple = PROPERTY_IDS

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ConfigError(f"n must be in 1..{MAX_N}, got {self.n}")
        if not 1 <= self.d <= MAX_D:
            raise ConfigError(f"d must be in 1..{MAX_D}, got {self.d}")
        if not 1 <= self.k <= MAX_K:
            raise ConfigError(f"k must be in 1..{MAX_K}, got {self.k}")
        if self.trials < 0:
            raise ConfigError(f"trials must be nonnegative, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.ensemble not in ENSEMBLES:
            raise ConfigError(
                f"unknown ensemble {self.ensemble!r}, expected one of {ENSEMBLES}"
            )
        if self.n * self.d * self.n > DENSE_GUARD:
            raise ConfigError(
                f"n*d*n = {self.n * self.d * self.n} exceeds the dense-path "
                f"guard of {DENSE_GUARD}"
            )
        props = tuple(self.properties)
        for p in props:
            if p not in PROPERTY_IDS:
                raise ConfigError(f"unknown property {p!r}")
        object.__setattr__(self, "properties", props)
        for p, t in self.tolerances.items():
            if p not in PROPERTY_IDS:
                raise ConfigError(f"tolerance given for unknown property {p!r}")
            if not t >= 0:
                raise ConfigError(f"tolerance for {p!r} must be nonnegative, got {t}")

    def tolerance_for(self, property_id: str) -> float:
        return self.tolerances.get(property_id, DEFAULT_TOLERANCES[property_id])

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "trials": self.trials,
            "seed": self.seed,
            "ensemble": self.ensemble,
            "tolerances": {p: self.tolerance_for(p) for p in self.properties},
            "properties": list(self.properties),
        }


@dataclass(frozen=True)
class VerificationReport:
    config: TrialConfig
    results: list
    seconds: dict
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(r.failures == 0 for r in self.results)

    def as_dict(self) -> dict:
        return {
            "config": self.config.as_dict(),
            "results": [
                dict(r.as_dict(), seconds=self.seconds[r.property_id])
                for r in self.results
            ],
            "pass": self.passed,
            "version": self.version,
        }


def run_suite(config: TrialConfig) -> VerificationReport:
    """Run every selected property over seeded random trials.

    Trial t draws its instance from a generator seeded with
    mix64(config.seed, t); the draw order (A, B, xi, gamma, lifted A,
    lifted B) is fixed and independent of the property selection, so any
    recorded worst_seed regenerates its instance exactly.
    """
    per_property: dict[str, list[PropertyResult]] = {p: [] for p in config.properties}
    seconds = {p: 0.0 for p in config.properties}
    system = StinespringSystem.build(config.n, config.d)
    for t in range(config.trials):
        trial_seed = mix64(config.seed, t)
        rng = np.random.default_rng(trial_seed)
        a = sample_block_matrix(rng, config.n, config.d, config.ensemble)
        b = sample_block_matrix(rng, config.n, config.d, config.ensemble)
        xi = sample_vector(rng, config.n * config.d)
        gamma = sample_vector(rng, config.n * config.d)
        lift_a = sample_lift(rng, config.k, config.n, config.d, config.ensemble)
        lift_b = sample_lift(rng, config.k, config.n, config.d, config.ensemble)
        for p in config.properties:
            t0 = time.perf_counter()
            result = run_property(
                p, a=a, b=b, xi=xi, gamma=gamma,
                lift_a=lift_a, lift_b=lift_b, k=config.k,
                tol=config.tolerance_for(p), system=system, seed=trial_seed,
            )
            seconds[p] += time.perf_counter() - t0
            per_property[p].append(result)
    results = [merge_results(per_property[p]) for p in config.properties
               if per_property[p]]
    return VerificationReport(config=config, results=results, seconds=seconds)


def replay_instance(path: str, property_id: str,
                    tol: float | None = None) -> PropertyResult:
    """Run one checker on a stored {"A": ..., "B": ..., "xi": ..., "gamma": ...} file."""
    if property_id not in PROPERTY_IDS:
        raise ConfigError(f"unknown property {property_id!r}")
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or "A" not in obj:
        raise ValueError('instance file must be an object with at least field "A"')
    a = block_matrix_from_json(obj["A"], field="A")
    b = block_matrix_from_json(obj["B"], field="B") if "B" in obj else None
    xi = vector_from_json(obj["xi"], field="xi") if "xi" in obj else None
    gamma = vector_from_json(obj["gamma"], field="gamma") if "gamma" in obj else None
    return run_property(property_id, a=a, b=b, xi=xi, gamma=gamma, tol=tol)


def emit_system_dict(n: int, d: int, instance_path: str | None = None) -> dict:
    """Dense V, F, Q for (n, d), plus lambda(A) when an instance is given."""
    if not (1 <= n <= MAX_N and 1 <= d <= MAX_D):
        raise ConfigError(f"n must be in 1..{MAX_N} and d in 1..{MAX_D}")
    system = StinespringSystem.build(n, d)
    out = {
        "n": n,
        "d": d,
        "V": operator_to_json(system.V),
        "F": operator_to_json(system.F),
        "Q": operator_to_json(system.Q),
    }
    if instance_path is not None:
        with open(instance_path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        a = block_matrix_from_json(obj.get("A"), field="A")
        if (a.n, a.d) != (n, d):
            raise ShapeError(
                f"instance has (n={a.n}, d={a.d}), requested (n={n}, d={d})"
            )
        out["lambda_A"] = operator_to_json(build_lambda(a))
        out["A"] = block_matrix_to_json(a)
    return out


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"


def report_to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow([
        "property_id", "trials", "failures", "worst_residual",
        "worst_seed", "tolerance_used", "seconds",
    ])
    for r in report.results:
        writer.writerow([
            r.property_id, r.trials, r.failures, repr(r.worst_residual),
            r.worst_seed, repr(r.tolerance_used),
            repr(report.seconds[r.property_id]),
        ])
    return buf.getvalue()


def _write_output(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schurblock",
        description="Randomized verification of the Schur block product "
                    "and its triple-tensor-space factorization.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run the property suite")
    pv.add_argument("--n", type=int, default=4, help="block rows/cols (1..8)")
    pv.add_argument("--d", type=int, default=2, help="block dimension (1..4)")
    pv.add_argument("--k", type=int, default=2, help="lift level (1..3)")
    pv.add_argument("--trials", type=int, default=200)
    pv.add_argument("--seed", type=int, default=42,
                    help="suite seed (SCHURBLOCK_SEED overrides)")
    pv.add_argument("--ensemble", choices=ENSEMBLES, default=GINIBRE)
    pv.add_argument("--properties", default=None,
                    help="comma-separated property ids (default: all)")
    for prop in PROPERTY_IDS:
        pv.add_argument(f"--tol.{prop}", type=float, default=None,
                        dest=f"tol_{prop}", metavar="TOL",
                        help=f"tolerance for {prop} "
                             f"(default {DEFAULT_TOLERANCES[prop]:g})")
    pv.add_argument("--out", default=None, help="write the report here")
    pv.add_argument("--format", choices=("json", "csv"), default="json")

    pr = sub.add_parser("replay", help="re-run one checker on a stored instance")
    pr.add_argument("instance", help="instance JSON file")
    pr.add_argument("--property", required=True, choices=PROPERTY_IDS)
    pr.add_argument("--tol", type=float, default=None)

    pe = sub.add_parser("emit-system", help="dump V, F, Q (and lambda(A)) as JSON")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--d", type=int, required=True)
    pe.add_argument("--instance", default=None,
                    help="optional instance file; adds lambda(A) to the dump")
    pe.add_argument("--out", default=None)

    return parser


def _cmd_verify(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("SCHURBLOCK_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            print(f"error: SCHURBLOCK_SEED is not an integer: {env_seed!r}",
                  file=sys.stderr)
            return EXIT_CONFIG
    tolerances = {}
    for prop in PROPERTY_IDS:
        val = getattr(args, f"tol_{prop}")
        if val is not None:
            tolerances[prop] = val
    properties = PROPERTY_IDS if args.properties is None else tuple(
        p.strip() for p in args.properties.split(",") if p.strip()
    )
    config = TrialConfig(
        n=args.n, d=args.d, k=args.k, trials=args.trials, seed=seed,
        ensemble=args.ensemble, tolerances=tolerances, properties=properties,
    )
    report = run_suite(config)
    text = report_to_json(report) if args.format == "json" else report_to_csv(report)
    _write_output(text, args.out)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _cmd_replay(args) -> int:
    result = replay_instance(args.instance, args.property, args.tol)
    status = "PASS" if result.passed else "FAIL"
    print(f"property={result.property_id} residual={result.worst_residual:.6e} "
          f"tolerance={result.tolerance_used:.6e} result={status}")
    return EXIT_OK if result.passed else EXIT_VERIFICATION_FAILED


def _cmd_emit_system(args) -> int:
    out = emit_system_dict(args.n, args.d, args.instance)
    _write_output(json.dumps(out, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "replay":
            return _cmd_replay(args)
        return _cmd_emit_system(args)
    except json.JSONDecodeError as exc:
        print(f"error: cannot parse JSON: {exc.msg} at line {exc.lineno} "
              f"column {exc.colno}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        # schema violations inside instance files carry the offending field
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
