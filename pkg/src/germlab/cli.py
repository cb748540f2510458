"""Command line front end.

Five subcommands over JSON germ files:

``analyze``   hypothesis ledger + fast-cycle verdict for a weighted germ
``sigma``     the obstruction locus of the principal part
``newton``    diagram route for a single hypersurface equation
``foliate``   numerically deform the weighted foliation and check it
``milnor``    Milnor number of one isolated hypersurface singularity

Every run ends in one of the documented exit codes:

* ``0``  success (no obstruction / silent diagram / checks passed / value
  computed — for ``milnor`` this includes the honest "non-isolated" answer)
* ``10`` a certificate fired (``analyze``: fast cycle found; ``newton``:
  some face certifies)
* ``20`` undetermined (``analyze``: hypotheses unverified; ``sigma``: a
  component hit its budget; ``foliate``: checks failed or too few samples
  converged; ``milnor``: budget exhausted)
* ``1``  input error (bad file, bad polynomial, bad flag value)

Reports are byte-identical across runs for a fixed input and ``--seed``;
the opt-in ``--timing`` flag is the one switch that breaks that, by filling
``timing_seconds`` with a wall-clock value."""

from __future__ import annotations

import argparse
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from germlab import report as _report
from germlab.foliation import (
    DEFAULT_T_GRID,
    FoliationReport,
    SAME_ORDER_EPSILON_CAP,
    sample_link,
    sigma_link_cloud,
    verify_foliation,
    write_arc_csv,
)
from germlab.germ import Budget, analyze, analyze_newton, sigma
from germlab.germfile import GermFileError, load_raw, load_system, read_germ_file
from germlab.groebner import BudgetExhausted, milnor_number
from germlab.parse import ParseError

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CERTIFICATE = 10
EXIT_UNDETERMINED = 20

_VERDICT_EXIT = {
    "NO_OBSTRUCTION_FOUND": EXIT_OK,
    "FAST_CYCLE_FOUND": EXIT_CERTIFICATE,
    "HYPOTHESES_UNVERIFIED": EXIT_UNDETERMINED,
}

DEFAULT_EPSILON = Fraction(1, 2)
DEFAULT_SAME_ORDER_EPSILON = Fraction(1, 10)
DEFAULT_SAMPLES = 50
DEFAULT_CSV = "germlab_arcs.csv"
SIGMA_CLOUD_COUNT = 200


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the exit-code contract reserves 1
    for every input problem, so route usage errors there."""

    def error(self, message: str):  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="germlab",
        description="fast-cycle obstructions and deformed weighted foliations for polynomial germs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="JSON germ file")
        p.add_argument("--out", metavar="PATH", default=None, help="write the JSON report here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="root seed for every randomized step (default 0)")
        p.add_argument("--budget", type=int, default=None, metavar="N", help="step budget for exact computations")
        p.add_argument("--timing", action="store_true", help="record wall-clock seconds (breaks byte-reproducibility)")

    p_analyze = sub.add_parser("analyze", help="hypothesis ledger and fast-cycle verdict")
    common(p_analyze)
    p_analyze.add_argument(
        "--assume-milnor-fibre",
        action="store_true",
        help="assert the generic-section-is-Milnor-fibre hypothesis instead of verifying it",
    )
    p_analyze.add_argument(
        "--assume-noncontractible-component",
        action="store_true",
        help="assert a non-contractible section component (surface branch)",
    )
    p_analyze.set_defaults(handler=_cmd_analyze)

    p_sigma = sub.add_parser("sigma", help="obstruction locus of the principal part")
    common(p_sigma)
    p_sigma.set_defaults(handler=_cmd_sigma)

    p_newton = sub.add_parser("newton", help="Newton-diagram route for one equation")
    common(p_newton)
    p_newton.add_argument(
        "--probabilistic-nnd",
        action="store_true",
        help="fall back to a random torus search when exact nondegeneracy exhausts its budget",
    )
    p_newton.set_defaults(handler=_cmd_newton)

    p_foliate = sub.add_parser("foliate", help="deform the weighted foliation and check it")
    common(p_foliate)
    p_foliate.add_argument(
        "--epsilon",
        metavar="a/b",
        default=None,
        help="deformation scale as an exact rational (default 1/2; 1/10 for same-order families)",
    )
    p_foliate.add_argument(
        "--samples", type=int, default=DEFAULT_SAMPLES, metavar="N", help=f"link samples to deform (default {DEFAULT_SAMPLES})"
    )
    p_foliate.add_argument(
        "--csv", metavar="PATH", default=DEFAULT_CSV, help=f"arc CSV destination (default {DEFAULT_CSV})"
    )
    p_foliate.set_defaults(handler=_cmd_foliate)

    p_milnor = sub.add_parser("milnor", help="Milnor number of one hypersurface equation")
    common(p_milnor)
    p_milnor.set_defaults(handler=_cmd_milnor)

    return parser


def _budget(args) -> Budget | None:
    if args.budget is None:
        return None
    if args.budget <= 0:
        raise GermFileError("--budget must be a positive step count")
    return Budget(args.budget)


def _emit(args, command: str, input_echo: dict, body: dict, elapsed: float | None) -> None:
    doc = _report.document(command, input_echo, args.seed, elapsed, body)
    text = _report.render(doc)
    if args.out is not None:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _elapsed(args, started: float) -> float | None:
    return (time.perf_counter() - started) if args.timing else None


def _cmd_analyze(args) -> int:
    started = time.perf_counter()
    data = read_germ_file(args.file)
    loaded = load_system(data)
    assumptions = set(loaded.assumptions)
    if args.assume_milnor_fibre:
        assumptions.add("milnor-fibre")
    if args.assume_noncontractible_component:
        assumptions.add("noncontractible-component")
    result = analyze(loaded.system, frozenset(assumptions), seed=args.seed, budget=_budget(args))
    body = _report.analysis_body(loaded, result, assumptions)
    _emit(args, "analyze", data, body, _elapsed(args, started))
    return _VERDICT_EXIT[result.verdict]


def _cmd_sigma(args) -> int:
    started = time.perf_counter()
    data = read_germ_file(args.file)
    loaded = load_system(data)
    locus = sigma(loaded.system, budget=_budget(args))
    body = _report.sigma_body(loaded, locus)
    _emit(args, "sigma", data, body, _elapsed(args, started))
    undetermined = any(comp.status != "computed" for comp in locus.components)
    return EXIT_UNDETERMINED if undetermined else EXIT_OK


def _single_equation(raw, route: str):
    if len(raw.equations) != 1:
        raise GermFileError(f"the {route} route needs exactly one equation (got {len(raw.equations)})")
    return raw.equations[0]


def _cmd_newton(args) -> int:
    started = time.perf_counter()
    data = read_germ_file(args.file)
    raw = load_raw(data)
    f = _single_equation(raw, "Newton")
    analysis = analyze_newton(f, budget=_budget(args), probabilistic=args.probabilistic_nnd, seed=args.seed)
    body = _report.newton_body(raw, analysis)
    _emit(args, "newton", data, body, _elapsed(args, started))
    return EXIT_CERTIFICATE if analysis.any_certificate else EXIT_OK


def _parse_epsilon(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise GermFileError(f"--epsilon must be a rational like 1/2 (got {text!r}): {exc}") from None
    if value == 0:
        raise GermFileError("--epsilon must be nonzero (the unperturbed arcs are always computed alongside)")
    return value


def _cmd_foliate(args) -> int:
    started = time.perf_counter()
    data = read_germ_file(args.file)
    loaded = load_system(data)
    system = loaded.system
    same_order = system.is_same_order()
    notes: list[str] = []
    allow_large = False
    if args.epsilon is not None:
        epsilon = _parse_epsilon(args.epsilon)
        if same_order and abs(epsilon) > SAME_ORDER_EPSILON_CAP:
            allow_large = True
            notes.append(
                f"epsilon = {epsilon} exceeds the same-order cap {SAME_ORDER_EPSILON_CAP}; "
                "the deformation's convergence radius can shrink to zero"
            )
    else:
        epsilon = DEFAULT_SAME_ORDER_EPSILON if same_order else DEFAULT_EPSILON
    if args.samples < 2:
        raise GermFileError("--samples must be at least 2 (the checks compare pairs of arcs)")

    budget = _budget(args)
    cloud = sigma_link_cloud(system, count=SIGMA_CLOUD_COUNT, seed=args.seed, budget=budget)
    samples = sample_link(system, args.samples, args.seed, sigma_cloud=cloud)
    if len(samples) < 2:
        result = FoliationReport(
            passed=False,
            failures=(f"only {len(samples)} of {args.samples} link samples were found; need at least 2",),
            dichotomy=(),
            min_separation=math.inf,
            separation_ok=False,
            coordinate_planes_ok=False,
            converged_fraction=0.0,
            arcs=(),
            reference_arcs=(),
        )
    else:
        result = verify_foliation(
            system,
            complex(epsilon),
            samples,
            DEFAULT_T_GRID,
            seed=args.seed,
            allow_large_epsilon=allow_large,
        )
    csv_path = None
    if result.arcs or result.reference_arcs:
        write_arc_csv(args.csv, tuple(result.arcs) + tuple(result.reference_arcs), args.seed)
        csv_path = args.csv
    body = _report.foliate_body(loaded, result, epsilon, args.samples, csv_path, notes)
    _emit(args, "foliate", data, body, _elapsed(args, started))
    return EXIT_OK if result.passed else EXIT_UNDETERMINED


def _cmd_milnor(args) -> int:
    started = time.perf_counter()
    data = read_germ_file(args.file)
    raw = load_raw(data)
    f = _single_equation(raw, "Milnor-number")
    mu = milnor_number(f, budget=_budget(args))
    body = _report.milnor_body(raw, mu)
    _emit(args, "milnor", data, body, _elapsed(args, started))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits for usage errors and -h
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except BudgetExhausted as exc:
        print(f"germlab: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    except (GermFileError, ParseError, ValueError, OSError) as exc:
        print(f"germlab: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
