"""Command-line front end: ``matchgates {simulate,compile,decompose,intertwine,verify}``.

Exit codes: 0 success, 1 invalid input, 2 tolerance failure, 3 resource or degree cap.
Lines are 0-indexed in arguments and output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from matchgates import oracle, suites
from matchgates.circuits import Policy, validate_circuit
from matchgates.compiler import LogicalCircuit, compile_circuit
from matchgates.decompose import decompose
from matchgates.errors import DegreeTooHigh, MatchgateError, ResourceError, ToleranceError
from matchgates.formats import circuit_to_json, job_from_json, load_json
from matchgates.gaussian import QuadraticHamiltonian, expectation_z
from matchgates.intertwine import CliffordCircuit, simulate_intertwined
from matchgates.pauli import PauliString

EXIT_OK, EXIT_VALIDATION, EXIT_TOLERANCE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    tolerance: float = 1e-9
    seed: int = suites.DEFAULT_SEED
    json: bool = False

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


class _Out:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    def emit(self, data: dict, lines: list[str]) -> None:
        if self.cfg.json:
            print(json.dumps(data, indent=2, sort_keys=True))
        else:
            print("\n".join(lines))


def _write_or_print(data: dict, output: str | None) -> None:
    text = json.dumps(data, indent=2)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def cmd_simulate(args, cfg: RunConfig) -> int:
    job = job_from_json(load_json(args.file))
    line = args.line if args.line is not None else (job.measure if job.measure is not None else 0)
    report = validate_circuit(job.circuit, Policy.NN_ONLY)
    data: dict = {"line": line, "n": job.circuit.n}
    lines = []
    fast = None
    if report.ok or not args.oracle:
        z = expectation_z(job.circuit, job.state, line)
        fast = z.value
        data.update({"z": z.value, "p0": z.p0, "p1": z.p1})
        lines.append(f"<Z_{line}> = {z.value:.12f}   p0 = {z.p0:.12f}   p1 = {z.p1:.12f}")
    else:
        lines.append(f"circuit is not a nearest-neighbour allowed circuit ({len(report.violations)} violations); oracle only")
    status = EXIT_OK
    if args.oracle:
        slow = oracle.expectation_z_dense(job.circuit, job.state, line)
        data["oracle"] = slow
        lines.append(f"oracle <Z_{line}> = {slow:.12f}")
        if fast is not None:
            diff = abs(fast - slow)
            data["difference"] = diff
            lines.append(f"|fast - oracle| = {diff:.3e} (tolerance {cfg.tolerance:.1e})")
            if diff > cfg.tolerance:
                status = EXIT_TOLERANCE
    _Out(cfg).emit(data, lines)
    return status


def cmd_compile(args, cfg: RunConfig) -> int:
    cc = compile_circuit(LogicalCircuit.from_json(load_json(args.file)))
    _write_or_print(cc.to_json(), args.output)
    return EXIT_OK


def cmd_decompose(args, cfg: RunConfig) -> int:
    c = decompose(QuadraticHamiltonian.from_json(load_json(args.file)))
    _write_or_print(circuit_to_json(c), args.output)
    return EXIT_OK


def cmd_intertwine(args, cfg: RunConfig) -> int:
    t = CliffordCircuit.from_json(load_json(args.clifford))
    job = job_from_json(load_json(args.base))
    target = PauliString.from_label(args.target)
    value = simulate_intertwined(t, job.circuit, job.state, target, args.degree_cap)
    data = {"target": str(target), "value": value}
    lines = [f"<{target}> = {value:.12f}"]
    status = EXIT_OK
    if args.oracle:
        tu = t.unitary()
        amps = tu.conj().T @ oracle.circuit_unitary(job.circuit) @ tu @ oracle.from_product(job.state).amplitudes
        slow = oracle.expectation_pauli_dense(oracle.StateVector(t.n, amps), target)
        data.update({"oracle": slow, "difference": abs(value - slow)})
        lines.append(f"oracle = {slow:.12f}   |difference| = {abs(value - slow):.3e}")
        if abs(value - slow) > cfg.tolerance:
            status = EXIT_TOLERANCE
    _Out(cfg).emit(data, lines)
    return status


def cmd_verify(args, cfg: RunConfig) -> int:
    results = suites.run(args.suite, cfg.seed)
    data = {"seed": cfg.seed, "ok": all(r.ok for r in results), "suites": [r.to_json() for r in results]}
    lines = []
    for r in results:
        lines.append(r.summary())
        for c in r.checks:
            mark = "ok " if c.ok else "BAD"
            value = "" if c.value is None else f" = {c.value:.3e}"
            tol = "" if c.tolerance is None else f" (<= {c.tolerance:.0e})"
            lines.append(f"  [{mark}] {c.label}{value}{tol}")
            if c.detail and not c.ok:
                lines.append(f"        {c.detail}")
    _Out(cfg).emit(data, lines)
    return EXIT_OK if data["ok"] else EXIT_TOLERANCE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting a flag given before it
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS, help="numerical tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=f"seed for randomized suites (default {suites.DEFAULT_SEED})")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    p = argparse.ArgumentParser(prog="matchgates", description="Matchgate circuit simulation and compilation.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", parents=[common], help="<Z_k> of a circuit file on its product input")
    s.add_argument("file")
    s.add_argument("--line", type=int, default=None, help="measured line (default: file's 'measure' or 0)")
    s.add_argument("--oracle", action="store_true", help="also run the dense statevector and compare")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("compile", parents=[common], help="compile a logical CZ + one-qubit circuit")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("decompose", parents=[common], help="n.n. gate circuit for exp(iH) of a quadratic Hamiltonian")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("intertwine", parents=[common], help="simulate a Clifford-conjugated circuit")
    s.add_argument("clifford")
    s.add_argument("base")
    s.add_argument("--target", required=True, help="Pauli string, e.g. 'IZIII'")
    s.add_argument("--degree-cap", type=int, default=6)
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_intertwine)

    s = sub.add_parser("verify", parents=[common], help="run the seeded verification suites")
    s.add_argument("--suite", default="all", choices=["all", *suites.SUITES])
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            args.command,
            tolerance=getattr(args, "tolerance", 1e-9),
            seed=getattr(args, "seed", suites.DEFAULT_SEED),
            json=getattr(args, "json", False),
        )
        return args.func(args, cfg)
    except (ResourceError, DegreeTooHigh) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (MatchgateError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
