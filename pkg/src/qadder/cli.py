"""Command-line interface.

Subcommands: landscape, ga, points, verify, export. Exit codes are
0 success, 2 usage or bad config, 3 I/O, 4 parse, 5 domain, 6 a
verification check failed.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import basis, fidelity, ga, io as qio, qudit
from .errors import ConfigError, DomainError, ParseError
from .sim import circuit_unitary

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_DOMAIN = 5
EXIT_VERIFY = 6

STANDARD_POINTS = "0,0;pi/2,pi/2;0,pi/2;pi/2,0;pi/4,pi/4;pi/8,pi/8"


def _parse_angle_token(token: str) -> float:
    """Accept plain floats and pi fractions such as pi, pi/2, 3pi/8."""
    token = token.strip().lower()
    if "pi" in token:
        head, _, tail = token.partition("pi")
        factor = float(head) if head and head != "+" else (-1.0 if head == "-" else 1.0)
        denom = 1.0
        if tail:
            if not tail.startswith("/"):
                raise DomainError(f"cannot parse angle token {token!r}")
            denom = float(tail[1:])
        return factor * math.pi / denom
    try:
        return float(token)
    except ValueError:
        raise DomainError(f"cannot parse angle token {token!r}") from None


def _resolve_adder(name: str) -> np.ndarray:
    if name == "basis":
        return basis.basis_adder_matrix()
    if name == "plus":
        return fidelity.constant_plus_unitary()
    return circuit_unitary(qio.read_circuit(name))


def cmd_landscape(args: argparse.Namespace) -> int:
    u = _resolve_adder(args.adder)
    ls = fidelity.landscape(u, args.grid)
    if args.out:
        qio.write_landscape_csv(ls, args.out)
    print(f"adder={args.adder} grid={args.grid}")
    print(f"average={ls.average:.6f}")
    print(f"minimum={ls.minimum:.6f}")
    print(f"argmin=({ls.argmin[0]:.6f},{ls.argmin[1]:.6f})")
    return EXIT_OK


def cmd_ga(args: argparse.Namespace) -> int:
    cfg = qio.read_run_config(args.config)
    record = ga.evolve(cfg.ga)
    with open(cfg.out_log, "w") as fh:
        fh.write("generation\tbest\tmean\n")
        for gen, best, mean in record.history:
            fh.write(f"{gen}\t{best:.12f}\t{mean:.12f}\n")
    best_circuit = ga.to_circuit(record.best_genome)
    qio.write_circuit(best_circuit, cfg.out_circuit)
    final = fidelity.landscape(circuit_unitary(best_circuit), cfg.final_grid_n)
    qio.write_landscape_csv(final, cfg.out_landscape)
    print(f"generations={cfg.ga.generations} evaluations={record.evaluations}")
    print(f"best_fitness={record.best_fitness:.6f} (grid {cfg.ga.grid_n}, {cfg.ga.fitness_mode})")
    print(f"final_average={final.average:.6f} final_minimum={final.minimum:.6f}"
          f" (grid {cfg.final_grid_n})")
    return EXIT_OK


def cmd_points(args: argparse.Namespace) -> int:
    circuit = qio.read_circuit(args.circuit)
    u = circuit_unitary(circuit)
    for pair in args.thetas.split(";"):
        tokens = pair.split(",")
        if len(tokens) != 2:
            raise DomainError(f"expected theta1,theta2 pairs, got {pair!r}")
        t1, t2 = (_parse_angle_token(tok) for tok in tokens)
        value = fidelity.adder_fidelity(u, t1, t2)
        print(f"{{{tokens[0].strip()},{tokens[1].strip()}}} {value:.3f}")
    return EXIT_OK


def _verify_basis() -> int:
    failed = False
    report = basis.verify_basis_action()
    for row in report.rows:
        status = "pass" if row.passed else "FAIL"
        print(
            f"summands |{row.summands[0]}{row.summands[1]}> -> ancilla {row.expected}:"
            f" trace distance {row.distance:.3e} [{status}]"
        )
    failed |= not report.passed
    u_direct = basis.basis_adder_matrix()
    u_gates = circuit_unitary(basis.basis_adder_circuit())
    err = float(np.max(np.abs(u_gates - u_direct)))
    ok = err < 1e-10
    print(f"gate decomposition equals direct matrix: max entry error {err:.3e}"
          f" [{'pass' if ok else 'FAIL'}]")
    failed |= not ok
    compiled = basis.compile_native(basis.basis_adder_circuit())
    counts = fidelity.count_gates(compiled)
    ok = counts.n_cnot <= 11 and counts.n_single <= 23
    print(f"compiled to {counts.n_cnot} CNOTs + {counts.n_single} rotations"
          f" [{'pass' if ok else 'FAIL'}]")
    failed |= not ok
    return EXIT_VERIFY if failed else EXIT_OK


def _verify_qudit(d: int) -> int:
    grouping = qudit.polygon_tuples(d)
    print(qudit.format_grouping(grouping))
    report = qudit.verify_grouping(grouping)
    for failure in report.failures:
        print(f"FAIL: {failure}")
    iso = report.passed and qudit.isometry_check(grouping)
    print(f"grouping checks: {'pass' if report.passed else 'FAIL'}")
    print(f"isometry (Gram matrix is identity): {'pass' if iso else 'FAIL'}")
    return EXIT_OK if report.passed and iso else EXIT_VERIFY


def cmd_verify(args: argparse.Namespace) -> int:
    if args.target == "basis":
        return _verify_basis()
    return _verify_qudit(args.dimension)


def cmd_export(args: argparse.Namespace) -> int:
    circuit = qio.read_circuit(args.circuit)
    try:
        text = qio.export_qasm(circuit)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {args.out}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qadder",
        description="Approximate quantum adders: landscapes, verification, and GA search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_land = sub.add_parser("landscape", help="fidelity landscape of an adder")
    p_land.add_argument("--adder", required=True,
                        help="'basis', 'plus', or a circuit file path")
    p_land.add_argument("--grid", type=int, default=fidelity.DEFAULT_GRID)
    p_land.add_argument("--out", help="landscape CSV output path")
    p_land.set_defaults(func=cmd_landscape)

    p_ga = sub.add_parser("ga", help="run a genetic search from a config file")
    p_ga.add_argument("config")
    p_ga.set_defaults(func=cmd_ga)

    p_points = sub.add_parser("points", help="fidelity of a circuit at theta pairs")
    p_points.add_argument("circuit")
    p_points.add_argument("--thetas", default=STANDARD_POINTS,
                          help="semicolon-separated theta1,theta2 pairs (pi fractions allowed)")
    p_points.set_defaults(func=cmd_points)

    p_verify = sub.add_parser("verify", help="check the basis adder or a qudit grouping")
    verify_sub = p_verify.add_subparsers(dest="target", required=True)
    v_basis = verify_sub.add_parser("basis")
    v_basis.set_defaults(func=cmd_verify, target="basis")
    v_qudit = verify_sub.add_parser("qudit")
    v_qudit.add_argument("dimension", type=int)
    v_qudit.set_defaults(func=cmd_verify, target="qudit")

    p_export = sub.add_parser("export", help="export a native circuit")
    p_export.add_argument("circuit")
    p_export.add_argument("--format", choices=("qasm",), default="qasm")
    p_export.add_argument("--out", required=True)
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
