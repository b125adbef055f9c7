"""
Command-line interface for the quantum Carnot tools.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from quantum_carnot_pkg.core.cycle import REPORT_KEYS, SAMPLE_COLUMNS, CarnotCycle, CycleSpec
from quantum_carnot_pkg.core.exceptions import DomainError, InfeasibleConstraintError, QuantumCarnotError
from quantum_carnot_pkg.core.maxent import BOUNDARY_SNAP_RTOL, MaxEntSolver
from quantum_carnot_pkg.core.performance.batch_processing import BatchProcessor
from quantum_carnot_pkg.core.spectrum import SpectrumKind, SpectrumModel
from quantum_carnot_pkg.core.verification import LEVELS, VerificationSuite
from quantum_carnot_pkg.reporting import generate_report
from quantum_carnot_pkg.reporting.csv_report import CsvReportGenerator
from quantum_carnot_pkg.reporting.json_report import dumps
from quantum_carnot_pkg.utils.config import SolverSettings, load_settings
from quantum_carnot_pkg.utils.logging_setup import setup_logging
from quantum_carnot_pkg.utils.system_info import get_system_info

MODEL_CHOICES = [kind.value for kind in SpectrumKind]
SWEEP_COLUMNS = ("lambda", "alpha", "S", "T", "dS_dlambda", "residual")


def positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text}")
    return value


@dataclass(frozen=True)
class SweepRequest:
    """A lambda grid to tabulate."""

    model: SpectrumModel
    lambda_start: float
    lambda_end: float
    points: int
    output_format: str = "csv"
    output_path: Optional[str] = None

    def validate(self) -> "SweepRequest":
        """
        Raises:
            DomainError: fewer than two points or an empty interval
            InfeasibleConstraintError: lambda-start below the ground-state boundary
        """
        if self.points < 2:
            raise DomainError(f"A sweep needs at least 2 points, got {self.points}")
        if not self.lambda_end > self.lambda_start:
            raise DomainError(f"lambda-end ({self.lambda_end}) must exceed lambda-start ({self.lambda_start})")
        ground = self.model.ground_coefficient
        if self.lambda_start * self.lambda_start < ground * (1.0 - BOUNDARY_SNAP_RTOL):
            raise InfeasibleConstraintError(
                f"lambda-start ({self.lambda_start}) lies below the boundary sqrt({ground}) of {self.model.name}")
        return self

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.lambda_start, self.lambda_end, self.points)


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    logging_group = parser.add_argument_group("Logging")
    logging_group.add_argument('--verbose', action='store_true', help='Enable verbose output')
    logging_group.add_argument('--debug', action='store_true', help='Enable debug output (even more verbose)')
    logging_group.add_argument('--quiet', action='store_true', help='Suppress all log output except errors')
    logging_group.add_argument('--log-file', help='Path to log file')

    config_group = parser.add_argument_group("Configuration")
    config_group.add_argument('--config', help='Settings file (JSON); default ~/.config/quantum_carnot/settings.json')


def _add_model_argument(group) -> None:
    group.add_argument('--model', choices=MODEL_CHOICES, default='square-well',
                       help='Spectrum of the working particle (default: square-well)')


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with the solve, cycle, sweep and verify subcommands.
    """
    parser = argparse.ArgumentParser(
        prog='qcarnot',
        description='Quantum Carnot engine - maximum-entropy states, cycles, sweeps and self-verification',
        formatter_class=argparse.RawTextHelpFormatter
    )
    subparsers = parser.add_subparsers(dest='command', metavar='{solve,cycle,sweep,verify}')
    subparsers.required = True

    common = argparse.ArgumentParser(add_help=False)
    _add_common_arguments(common)

    # solve
    solve = subparsers.add_parser('solve', parents=[common], help='Solve one maximum-entropy state',
                                  formatter_class=argparse.RawTextHelpFormatter)
    state_group = solve.add_argument_group("State")
    _add_model_argument(state_group)
    state_group.add_argument('--lambda', dest='lambda_eff', type=positive_float, required=True,
                             help='Effective width lambda = V * sqrt(E)')
    state_group.add_argument('--tol', type=positive_float,
                             help='Tolerance on the mean-energy constraint (default: 1e-10)')
    state_group.add_argument('--energy-scale', type=positive_float,
                             help='Multiply temperatures on output (default: 1)')

    # cycle
    cycle = subparsers.add_parser('cycle', parents=[common], help='Run a quantum Carnot cycle',
                                  formatter_class=argparse.RawTextHelpFormatter)
    cycle_group = cycle.add_argument_group("Cycle")
    _add_model_argument(cycle_group)
    cycle_group.add_argument('--v1', type=positive_float, required=True, help='Width at the start of the hot stroke')
    cycle_group.add_argument('--v2', type=positive_float, required=True, help='Width at the end of the hot stroke')
    cycle_group.add_argument('--v3', type=positive_float, required=True, help='Width at the end of the adiabatic expansion')
    cycle_group.add_argument('--e-h', type=positive_float, default=1.0, help='Hot bath energy (default: 1)')
    cycle_group.add_argument('--v4', type=positive_float,
                             help='Override the closing width V1*V3/V2 (the cycle is then only diagnosed)')
    cycle_group.add_argument('--samples', type=int, help='Samples per stroke (default: 50)')
    cycle_group.add_argument('--energy-scale', type=positive_float,
                             help='Multiply E, T, Q, W and P on output (default: 1)')
    cycle_output = cycle.add_argument_group("Output")
    cycle_output.add_argument('--output', help='CSV file for stroke samples (columns stroke,V,P,E,S,T)')
    cycle_output.add_argument('--report-path', help='Path to save the full cycle report')
    cycle_output.add_argument('--report-format', choices=['json', 'html'], default='json',
                              help='Format of the cycle report (default: json)')
    cycle_perf = cycle.add_argument_group("Performance")
    cycle_perf.add_argument('--workers', type=positive_int, help='Parallel workers for stroke samples (default: 1)')

    # sweep
    sweep = subparsers.add_parser('sweep', parents=[common], help='Tabulate the equilibrium state over a lambda grid',
                                  formatter_class=argparse.RawTextHelpFormatter)
    sweep_group = sweep.add_argument_group("Sweep")
    _add_model_argument(sweep_group)
    sweep_group.add_argument('--lambda-start', type=positive_float, required=True, help='First lambda of the grid')
    sweep_group.add_argument('--lambda-end', type=positive_float, required=True, help='Last lambda of the grid')
    sweep_group.add_argument('--points', type=int, default=100, help='Grid points (default: 100)')
    sweep_group.add_argument('--energy-scale', type=positive_float,
                             help='Multiply temperatures on output (default: 1)')
    sweep_output = sweep.add_argument_group("Output")
    sweep_output.add_argument('--format', dest='output_format', choices=['csv', 'json'], default='csv',
                              help='Output format (default: csv)')
    sweep_output.add_argument('--output', help='Output file (default: stdout)')
    sweep_perf = sweep.add_argument_group("Performance")
    sweep_perf.add_argument('--workers', type=positive_int, help='Parallel workers for grid points (default: auto)')

    # verify
    verify = subparsers.add_parser('verify', parents=[common], help='Run the verification suite',
                                   formatter_class=argparse.RawTextHelpFormatter)
    verify_group = verify.add_argument_group("Verification")
    verify_group.add_argument('--level', choices=list(LEVELS), default='quick',
                              help='quick (seconds) or full (includes large-lambda asymptotics)')
    verify_output = verify.add_argument_group("Reporting")
    verify_output.add_argument('--report-path', help='Path to save the verification report')
    verify_output.add_argument('--report-format', choices=['json', 'html'], default='json',
                               help='Format of the verification report (default: json)')

    parser.epilog = """Examples:
  # Equilibrium state of a particle in a box at lambda = 2
  qcarnot solve --model square-well --lambda 2

  # Carnot cycle with stroke samples written to CSV
  qcarnot cycle --v1 1 --v2 2 --v3 4 --output strokes.csv

  # Same cycle with an HTML report
  qcarnot cycle --v1 1 --v2 2 --v3 4 --report-format html --report-path cycle.html

  # S, T and dS/dlambda from lambda = 1 to 10
  qcarnot sweep --lambda-start 1 --lambda-end 10 --points 100 --output sweep.csv

  # Self-check of the solver against independent oracles
  qcarnot verify --level full --report-path verify.json
"""
    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Returns:
        Parsed arguments
    """
    return build_parser().parse_args(argv)


def _log_level(args: argparse.Namespace) -> int:
    if args.debug:
        return logging.DEBUG
    if args.verbose:
        return logging.INFO
    if args.quiet:
        return logging.ERROR
    return logging.WARNING


def _energy_scale(args: argparse.Namespace, settings: SolverSettings) -> float:
    return args.energy_scale if getattr(args, 'energy_scale', None) is not None else settings.energy_scale


def cmd_solve(args: argparse.Namespace, settings: SolverSettings, logger: logging.Logger) -> int:
    model = SpectrumModel.from_name(args.model)
    solver = MaxEntSolver.from_settings(settings, logger=logger)
    if args.tol is not None:
        solver.tol = args.tol

    state = solver.equilibrium_state(model, args.lambda_eff)
    result = state.to_dict()
    result["T"] = state.T * _energy_scale(args, settings)
    print(dumps(result))
    return 0


def cmd_cycle(args: argparse.Namespace, settings: SolverSettings, logger: logging.Logger) -> int:
    model = SpectrumModel.from_name(args.model)
    samples_per_stroke = args.samples if args.samples is not None else settings.samples_per_stroke
    workers = args.workers or settings.workers or 1
    scale = _energy_scale(args, settings)

    engine = CarnotCycle(
        model=model,
        solver=MaxEntSolver.from_settings(settings, logger=logger),
        batch_processor=BatchProcessor(max_workers=workers, logger=logger),
        logger=logger,
    )
    spec = CycleSpec(args.v1, args.v2, args.v3, e_h=args.e_h, v4_override=args.v4)
    report, samples = engine.run(spec, samples_per_stroke)

    summary = report.summary()
    for key in ("e_c", "q_h", "q_c", "w_net"):
        summary[key] *= scale
    rows = [(s.stroke, s.V, s.P * scale, s.E * scale, s.S, s.T * scale) for s in samples]

    if args.output:
        CsvReportGenerator(logger=logger).generate_report({"columns": SAMPLE_COLUMNS, "rows": rows}, args.output)

    if args.report_path:
        report_data = {
            "kind": "cycle",
            "model": model.name,
            "energy_scale": scale,
            "summary": summary,
            "report": report.to_dict(),
            "columns": list(SAMPLE_COLUMNS),
            "rows": rows,
        }
        generate_report(args.report_format, report_data, args.report_path, logger=logger)
        logger.info(f"Cycle report saved to {args.report_path}")

    print(dumps({key: summary[key] for key in REPORT_KEYS}))
    return 0


def sweep_rows(request: SweepRequest, solver: MaxEntSolver, batch_processor: BatchProcessor,
               energy_scale: float = 1.0) -> List[tuple]:
    """Rows (lambda, alpha, S, T, dS_dlambda, residual) in grid order."""

    def row(lambda_eff: float) -> tuple:
        state = solver.equilibrium_state(request.model, lambda_eff)
        slope = solver.entropy_slope(request.model, lambda_eff)
        return (lambda_eff, state.alpha, state.S, state.T * energy_scale,
                slope.value, state.constraint_residual)

    return batch_processor.map_ordered(row, [float(x) for x in request.grid])


def sweep_request(args: argparse.Namespace) -> SweepRequest:
    return SweepRequest(
        model=SpectrumModel.from_name(args.model),
        lambda_start=args.lambda_start,
        lambda_end=args.lambda_end,
        points=args.points,
        output_format=args.output_format,
        output_path=args.output,
    )


def cmd_sweep(args: argparse.Namespace, settings: SolverSettings, logger: logging.Logger) -> int:
    request = sweep_request(args).validate()

    solver = MaxEntSolver.from_settings(settings, logger=logger)
    processor = BatchProcessor(max_workers=args.workers or settings.workers, logger=logger)
    logger.info(f"Sweeping {request.model.name} over lambda in [{request.lambda_start}, {request.lambda_end}] "
                f"with {request.points} points")
    rows = sweep_rows(request, solver, processor, _energy_scale(args, settings))

    if request.output_format == 'csv':
        data = {"columns": SWEEP_COLUMNS, "rows": rows}
        generator = CsvReportGenerator(logger=logger)
        if request.output_path:
            generator.generate_report(data, request.output_path)
        else:
            generator.write(data, sys.stdout)
        return 0

    records = [dict(zip(SWEEP_COLUMNS, r)) for r in rows]
    if request.output_path:
        with open(request.output_path, 'w') as f:
            f.write(dumps(records))
            f.write("\n")
        logger.info(f"Wrote {len(records)} rows to {request.output_path}")
    else:
        print(dumps(records))
    return 0


def cmd_verify(args: argparse.Namespace, settings: SolverSettings, logger: logging.Logger) -> int:
    solver = MaxEntSolver.from_settings(settings, logger=logger)
    suite = VerificationSuite(level=args.level, solver=solver, logger=logger)
    report = suite.run()
    summary = report.to_dict()

    if args.report_path:
        generate_report(args.report_format, {"kind": "verification", **summary}, args.report_path,
                        system_info=get_system_info(), logger=logger)
        logger.info(f"Verification report saved to {args.report_path}")

    print(dumps(summary))
    if not report.passed:
        logger.error(f"Verification failed: {', '.join(report.failed_checks)}")
        return 1
    return 0


COMMANDS = {
    'solve': cmd_solve,
    'cycle': cmd_cycle,
    'sweep': cmd_sweep,
    'verify': cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point for qcarnot.

    Returns:
        0 on success, 1 on a computational or feasibility failure, 2 on a usage error
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logger = setup_logging(_log_level(args), args.log_file)

    if getattr(args, 'samples', None) is not None and args.samples < 2:
        parser.error(f"--samples must be at least 2, got {args.samples}")

    try:
        if args.command == 'sweep':
            try:
                sweep_request(args).validate()
            except DomainError as e:
                parser.error(str(e))
        settings = load_settings(args.config, logger=logger)
        return COMMANDS[args.command](args, settings, logger)
    except QuantumCarnotError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    except OSError as e:
        logger.error(f"Could not write output: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
