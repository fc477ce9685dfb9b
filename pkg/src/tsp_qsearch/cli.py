"""Command-line front end: dataset generation, search runs, sweeps.

Four subcommands cover the full experiment pipeline:

* ``gen``     writes a seeded Gaussian cost-phase dataset as JSON.
* ``run``     executes one search (gate-level circuit or operator-level
              reference model) and writes a JSON run report.
* ``sweep``   tabulates extreme-tour success probability against the
              second-stage iteration count as CSV.
* ``inspect`` prints circuit size metrics and optionally dumps the gate
              list as text.

Every command is deterministic given its flags.  Exit codes: 0 success,
2 I/O failure, 3 capacity exceeded, 4 unavailable or malformed data.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .circuits import Circuit, build_cost_oracle_r2, build_d2, build_g1, build_two_step, circuit_to_text, metrics
from .core import (
    CapacityError,
    DatasetError,
    HoboLayout,
    MAX_ENUM_CITIES,
    PhaseAssignment,
    Schedule,
    builtin_phases,
    gen_gaussian_phases,
    load_phases,
    optimal_q1,
    optimal_q2,
    save_phases,
)
from .matrix_model import ProbabilitySeries, evolve, series_to_csv, state_at, subspace
from .simulator import Distribution, main_distribution, new_state, run, sample

# The dense simulator handles the 4-city layout (15 qubits); the 5-city
# layout needs 41 and is served by the matrix model instead.
MAX_CIRCUIT_CITIES = 4

EXIT_OK = 0
EXIT_IO = 2
EXIT_CAPACITY = 3
EXIT_DATA = 4


@dataclass(frozen=True)
class HistogramEntry:
    bitstring: str
    probability: float
    count: int | None = None


@dataclass(frozen=True)
class RunReport:
    n: int
    k: int
    width: int
    q1: int
    q2: int
    mode: str
    seed: int
    shots: int
    histogram: tuple[HistogramEntry, ...]
    series: ProbabilitySeries | None = None

    def to_dict(self) -> dict:
        payload = {
            "n": self.n,
            "k": self.k,
            "width": self.width,
            "q1": self.q1,
            "q2": self.q2,
            "mode": self.mode,
            "seed": self.seed,
            "shots": self.shots,
            "histogram": [
                {"bitstring": e.bitstring, "probability": e.probability}
                | ({"count": e.count} if e.count is not None else {})
                for e in self.histogram
            ],
        }
        if self.series is not None:
            payload["series"] = [
                {"t": t, "p_min": lo, "p_max": hi, "p_combined": both}
                for t, lo, hi, both in zip(
                    self.series.times,
                    self.series.p_min,
                    self.series.p_max,
                    self.series.p_combined,
                )
            ]
        return payload

    @classmethod
    def from_dict(cls, payload: dict) -> RunReport:
        series = None
        if "series" in payload:
            rows = payload["series"]
            series = ProbabilitySeries(
                times=tuple(r["t"] for r in rows),
                p_min=tuple(r["p_min"] for r in rows),
                p_max=tuple(r["p_max"] for r in rows),
                p_combined=tuple(r["p_combined"] for r in rows),
            )
        return cls(
            n=payload["n"],
            k=payload["k"],
            width=payload["width"],
            q1=payload["q1"],
            q2=payload["q2"],
            mode=payload["mode"],
            seed=payload["seed"],
            shots=payload["shots"],
            histogram=tuple(
                HistogramEntry(e["bitstring"], e["probability"], e.get("count"))
                for e in payload["histogram"]
            ),
            series=series,
        )


def report_to_json(report: RunReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> RunReport:
    return RunReport.from_dict(json.loads(text))


def _load_dataset(dataset: str, n: int) -> PhaseAssignment:
    if dataset == "builtin":
        phases = builtin_phases(n)
    else:
        phases = load_phases(dataset)
    if phases.n != n:
        raise DatasetError(f"dataset is for n={phases.n}, requested n={n}")
    return phases


def _check_mode_capacity(mode: str, n: int) -> None:
    if mode == "circuit" and n > MAX_CIRCUIT_CITIES:
        raise CapacityError(
            f"circuit mode supports n <= {MAX_CIRCUIT_CITIES}; use matrix mode for n={n}"
        )
    if mode == "matrix" and n > MAX_ENUM_CITIES:
        raise CapacityError(f"matrix mode supports n <= {MAX_ENUM_CITIES}")


def _resolve_rescale(cost_angles: str, mode: str, n: int) -> bool:
    """Map the --cost-angles policy to a concrete convention.

    ``auto`` keeps the stored values as angles wherever a circuit
    comparison is possible (n <= 4) and switches to the rescaled
    reference convention for larger matrix-model runs.
    """
    if cost_angles == "raw":
        return False
    if cost_angles == "rescaled":
        if mode == "circuit":
            raise DatasetError(
                "circuit mode applies stored cost values as gate angles; "
                "--cost-angles rescaled is matrix-mode only"
            )
        return True
    return mode == "matrix" and n > MAX_CIRCUIT_CITIES


def _schedule(args) -> Schedule:
    q1 = args.q1 if args.q1 is not None else optimal_q1(args.n)
    q2 = args.q2 if args.q2 is not None else optimal_q2(args.n, 2)
    return Schedule(q1, q2)


def _circuit_prefix_state(layout: HoboLayout, phases: PhaseAssignment, q1: int):
    """State after marker prep, Hadamard layer and q1 first-stage rounds."""
    prefix = build_two_step(layout, phases, Schedule(q1, 0))
    return run(prefix, new_state(layout.width))


def cmd_gen(args) -> int:
    phases = gen_gaussian_phases(args.n, args.mu, args.sigma, args.seed)
    save_phases(phases, args.out)
    return EXIT_OK


def cmd_run(args) -> int:
    phases = _load_dataset(args.dataset, args.n)
    _check_mode_capacity(args.mode, args.n)
    rescale = _resolve_rescale(args.cost_angles, args.mode, args.n)
    schedule = _schedule(args)
    layout = HoboLayout.for_cities(args.n)

    if args.mode == "circuit":
        circuit = build_two_step(layout, phases, schedule)
        state = run(circuit, new_state(layout.width))
        dist = main_distribution(state, layout)
    else:
        space = subspace(phases, rescale_costs=rescale)
        psi = state_at(space, schedule.q2)
        dist = Distribution({b: float(abs(a) ** 2) for b, a in zip(space.basis, psi)})

    counts = sample(dist, args.shots, args.seed)
    histogram = tuple(
        HistogramEntry(b, p, counts.get(b, 0)) for b, p in sorted(dist.probs.items())
    )
    report = RunReport(
        n=args.n,
        k=layout.k,
        width=layout.width,
        q1=schedule.q1,
        q2=schedule.q2,
        mode=args.mode,
        seed=args.seed,
        shots=args.shots,
        histogram=histogram,
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(report_to_json(report))
    return EXIT_OK


def cmd_sweep(args) -> int:
    phases = _load_dataset(args.dataset, args.n)
    _check_mode_capacity(args.mode, args.n)
    rescale = _resolve_rescale(args.cost_angles, args.mode, args.n)

    if args.mode == "matrix":
        series = evolve(subspace(phases, rescale_costs=rescale), args.t_max)
    else:
        layout = HoboLayout.for_cities(args.n)
        q1 = args.q1 if args.q1 is not None else optimal_q1(args.n)
        state = _circuit_prefix_state(layout, phases, q1)
        one_g2 = Circuit(
            layout,
            build_cost_oracle_r2(layout, phases).gates + build_d2(layout, q1).gates,
        )
        p_min, p_max = [], []
        for t in range(args.t_max + 1):
            if t > 0:
                run(one_g2, state)
            dist = main_distribution(state, layout)
            p_min.append(dist.probs[phases.min_key])
            p_max.append(dist.probs[phases.max_key])
        series = ProbabilitySeries(
            times=tuple(range(args.t_max + 1)),
            p_min=tuple(p_min),
            p_max=tuple(p_max),
            p_combined=tuple(a + b for a, b in zip(p_min, p_max)),
        )

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(series_to_csv(series))
    return EXIT_OK


def cmd_inspect(args) -> int:
    if args.n > MAX_CIRCUIT_CITIES:
        raise CapacityError(
            f"inspect builds the full circuit and supports n <= {MAX_CIRCUIT_CITIES}"
        )
    layout = HoboLayout.for_cities(args.n)
    try:
        phases = builtin_phases(args.n)
    except DatasetError:
        # Gate structure does not depend on the stored values, only on n.
        phases = gen_gaussian_phases(args.n, math.pi, 0.5, 0)
    schedule = Schedule(optimal_q1(args.n), optimal_q2(args.n, 2))

    g1 = build_g1(layout)
    g2 = Circuit(
        layout,
        build_cost_oracle_r2(layout, phases).gates
        + build_d2(layout, schedule.q1).gates,
    )
    total = build_two_step(layout, phases, schedule)

    print(f"n={layout.n} k={layout.k} width={layout.width} q1={schedule.q1} q2={schedule.q2}")
    for name, circ in (("G1", g1), ("G2", g2), ("total", total)):
        m = metrics(circ)
        counts = " ".join(f"{kind}={count}" for kind, count in m.gate_counts.items())
        print(f"{name}: gates={len(circ)} unit_depth={m.unit_depth} {counts}")

    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(circuit_to_text(total))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsp-qsearch",
        description="Two-stage Grover tour search: datasets, runs, sweeps, circuit metrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a seeded Gaussian cost-phase dataset (JSON)")
    gen.add_argument("--n", type=int, required=True, help="city count")
    gen.add_argument("--mu", type=float, default=math.pi, help="Gaussian mean (default pi)")
    gen.add_argument("--sigma", type=float, default=0.5, help="Gaussian std dev (default 0.5)")
    gen.add_argument("--seed", type=int, default=42, help="generator seed")
    gen.add_argument("--out", required=True, help="output JSON path")
    gen.set_defaults(func=cmd_gen)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="city count")
    common.add_argument(
        "--dataset",
        default="builtin",
        help="'builtin' (n=3,4) or a path to a phase-dataset JSON file",
    )
    common.add_argument(
        "--mode",
        choices=("circuit", "matrix"),
        default="matrix",
        help="gate-level simulation (n<=4) or operator-level model (n<=6)",
    )
    common.add_argument(
        "--cost-angles",
        choices=("auto", "raw", "rescaled"),
        default="auto",
        help="matrix-mode oracle convention: stored values as angles (raw) or "
        "affinely rescaled onto [0,2pi] (rescaled); auto = raw for n<=4, "
        "rescaled for larger matrix runs",
    )

    run_p = sub.add_parser("run", parents=[common], help="run one search, write a JSON report")
    run_p.add_argument("--q1", type=int, default=None, help="first-stage iterations (default optimal)")
    run_p.add_argument("--q2", type=int, default=None, help="second-stage iterations (default optimal, m=2)")
    run_p.add_argument("--shots", type=int, default=1024, help="sample count (default 1024)")
    run_p.add_argument("--seed", type=int, default=42, help="sampling seed")
    run_p.add_argument("--out", required=True, help="output JSON path")
    run_p.set_defaults(func=cmd_run)

    sweep_p = sub.add_parser("sweep", parents=[common], help="tabulate P(t) as CSV")
    sweep_p.add_argument("--q1", type=int, default=None, help="first-stage iterations (default optimal)")
    sweep_p.add_argument("--t-max", type=int, default=10, dest="t_max", help="last iteration count (default 10)")
    sweep_p.add_argument("--out", required=True, help="output CSV path")
    sweep_p.set_defaults(func=cmd_sweep)

    inspect_p = sub.add_parser("inspect", help="print circuit width/depth/gate counts")
    inspect_p.add_argument("--n", type=int, required=True, help="city count (<= 4)")
    inspect_p.add_argument("--out", default=None, help="optional path for a gate-list dump")
    inspect_p.set_defaults(func=cmd_inspect)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
