"""Command-line surface tying the pipeline together.

Subcommands: ``simulate`` (sample a snapshot stream from a circuit),
``reconstruct`` (per-subsystem diagnostic report), ``route`` (best qubit
chain from a report), ``nonlocal`` (non-local correlation scan), and
``perturb-study`` (the Bell-perturbation recovery table).  Every command is
deterministic given its arguments and seed.  The ZECS_THREADS environment
variable caps internal worker counts.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .diagnostics import build_report, nonlocal_scan, score_candidates
from .errors import ConfigError, ZecsError
from .routing import best_chain, edge_scores_from_report
from .simulator import run, sample_shadow, zero_state
from .states import DensityOperator
from .study import perturbation_study


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    """Parse '19,20;67,68' into [(19, 20), (67, 68)]."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2:
            raise ConfigError(f"expected 'a,b' pairs separated by ';', got {chunk!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    if not pairs:
        raise ConfigError("no qubit pairs given")
    return pairs


def _load_circuit(args) -> tuple:
    if args.circuit:
        obj = io.read_json(args.circuit)
        circuit_id = args.circuit_id or Path(args.circuit).stem
        return io.circuit_from_obj(obj), circuit_id
    if args.qubits is None or args.reps is None:
        raise ConfigError("give either --circuit FILE or both --qubits and --reps")
    obj = {
        "kind": "efficient_su2",
        "n_qubits": args.qubits,
        "reps": args.reps,
        "param_seed": args.param_seed,
    }
    circuit_id = args.circuit_id or f"su2-n{args.qubits}-r{args.reps}-p{args.param_seed}"
    return io.circuit_from_obj(obj), circuit_id


def cmd_simulate(args) -> int:
    if args.snapshots < 1:
        raise ConfigError(f"--snapshots must be >= 1, got {args.snapshots}")
    circuit, circuit_id = _load_circuit(args)
    state = run(circuit)
    records = sample_shadow(state, args.snapshots, args.seed, circuit_id=circuit_id)
    io.write_snapshots(args.out, records, circuit.n_qubits, endianness=args.endianness)
    print(f"wrote {len(records)} snapshots of {circuit.n_qubits} qubit(s) to {args.out}")
    return 0


def _references_from_specs(specs, raw_references, policy: str):
    references = {}
    for key, circuit_obj in raw_references.items():
        circuit = io.circuit_from_obj(circuit_obj)
        references[key] = run(circuit).to_density()
    if policy == "zero":
        for spec in specs:
            pair = spec.qubits[:2]
            if pair not in references and spec.qubits not in references:
                references[pair] = zero_state(2).to_density()
    elif policy != "require":
        raise ConfigError(f"unknown reference policy {policy!r}")
    return references


def cmd_reconstruct(args) -> int:
    records, _ = io.read_snapshots(args.snapshots, endianness=args.endianness)
    specs, raw_references = io.read_subsystems(args.subsystems)
    references = _references_from_specs(specs, raw_references, args.ref_policy)
    report = build_report(
        records, specs, references, entropy_normalization=args.entropy_norm
    )
    io.write_report(args.out, report)
    print(f"wrote report with {len(report.subsystems)} subsystem(s) to {args.out}")
    return 0


def cmd_route(args) -> int:
    report = io.read_report(args.report)
    layout = io.read_layout(args.layout)
    scores = edge_scores_from_report(report, layout)
    solution = best_chain(layout, scores, args.length, weight_w=args.weight)
    io.write_chain(args.out, solution, weight=args.weight)
    marker = " (approximate)" if solution.approximate else ""
    print(
        f"best {args.length}-qubit chain{marker}: cost {solution.cost:.6g}, "
        f"mean fidelity {solution.mean_fidelity:.4f} -> {args.out}"
    )
    return 0


def cmd_nonlocal(args) -> int:
    if args.values:
        obj = io.read_json(args.values)
        target = tuple(int(q) for q in obj["target"])
        values = [
            (tuple(int(q) for q in row["candidate"]), float(row["s_ij"]))
            for row in obj["pairs"]
        ]
        results = score_candidates(target, values)
    else:
        if not (args.snapshots and args.targets and args.candidates and args.layout):
            raise ConfigError(
                "need --snapshots, --targets, --candidates and --layout (or --values)"
            )
        records, _ = io.read_snapshots(args.snapshots, endianness=args.endianness)
        layout = io.read_layout(args.layout)
        results = nonlocal_scan(
            records,
            _parse_pairs(args.targets),
            _parse_pairs(args.candidates),
            layout,
        )
    io.write_canonical(args.out, io.scan_to_obj(results))
    flagged = sum(1 for r in results if r.flagged)
    print(f"scanned {len(results)} pairings, {flagged} flagged -> {args.out}")
    return 0


def cmd_perturb_study(args) -> int:
    sigmas = [float(s) for s in args.sigmas.split(",") if s.strip()]
    rows = perturbation_study(sigmas, args.trials, args.seed)
    io.write_canonical(args.out, {"format": io.STUDY_FORMAT, "rows": rows, "version": 1})
    print(f"wrote {len(rows)} sigma rows ({args.trials} trials each) to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zecs",
        description="Shadow-based state reconstruction and device diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="sample a snapshot stream from a circuit")
    p.add_argument("--circuit", help="circuit description JSON file")
    p.add_argument("--qubits", type=int, help="ansatz width (with --reps)")
    p.add_argument("--reps", type=int, help="ansatz repetitions (with --qubits)")
    p.add_argument("--param-seed", type=int, default=0, help="seed for random ansatz angles")
    p.add_argument("--circuit-id", default=None)
    p.add_argument("--snapshots", type=int, required=True, help="number of records")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--endianness", default=io.Q0_LEFTMOST,
                   choices=[io.Q0_LEFTMOST, io.Q0_RIGHTMOST])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="build a per-subsystem diagnostic report")
    p.add_argument("--snapshots", required=True)
    p.add_argument("--subsystems", required=True, help="subsystem spec JSON file")
    p.add_argument("--endianness", default=None,
                   choices=[io.Q0_LEFTMOST, io.Q0_RIGHTMOST])
    p.add_argument("--entropy-norm", default="per-kind", choices=["per-kind", "global"])
    p.add_argument("--ref-policy", default="require", choices=["require", "zero"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("route", help="select the best qubit chain from a report")
    p.add_argument("--report", required=True)
    p.add_argument("--layout", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--weight", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("nonlocal", help="scan for non-local correlations")
    p.add_argument("--snapshots")
    p.add_argument("--targets", help="target pairs, e.g. '19,20;67,68'")
    p.add_argument("--candidates", help="candidate pairs, same syntax")
    p.add_argument("--layout")
    p.add_argument("--values", help="archived entropy values JSON (skips reconstruction)")
    p.add_argument("--endianness", default=None,
                   choices=[io.Q0_LEFTMOST, io.Q0_RIGHTMOST])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_nonlocal)

    p = sub.add_parser("perturb-study", help="Bell-perturbation recovery table")
    p.add_argument("--sigmas", default="0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_perturb_study)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZecsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
