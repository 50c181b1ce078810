"""Command-line front end.

Every command produces a ``Report``: one item per checked input, with the verdict,
a re-checkable witness and a timing. Exit codes:

    0  every claim checked holds
    3  a finding (violation or witness) was produced
    2  usage error (bad flags, malformed input, invalid configuration)
    1  internal or precision error
"""

import argparse
import json
import logging
import os
import random
import sys
import time
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, TypeVar

from pydantic import ValidationError as PydanticValidationError

from . import ex1, ex3, numfield, simplex_builder
from .exceptions import (
    ConfigurationError,
    ConstantElement,
    ConstantFunction,
    DependentBasis,
    DimGroupsError,
    InterpolantNotFound,
    LambdaConditionFailed,
    NotFormallyReal,
    NotSquarefree,
    PrecisionExhausted,
    PreconditionViolated,
    ReducibleMinpoly,
    TopIndexZero,
    ValidationError,
    VanishingAtRational,
    ZeroPolynomial,
)
from .models import Report, ReportItem, ReportSummary, Settings, SimplexSpecInput
from .poly_real import Direction, DomainInterval, extremum_sign, format_xpoly, parse_xpoly
from .scalar_field import (
    DigitsFileOracle,
    PiMinusThreeOracle,
    TranscendentalOracle,
    configure,
    enclose,
    format_rational,
    format_scalar,
    parse_rational,
    parse_scalar,
    sign,
)

logger = logging.getLogger("dimgroups")

T = TypeVar("T")
R = TypeVar("R")

# Errors that mean the input was unusable rather than that something broke
USAGE_ERRORS: tuple[type[Exception], ...] = (
    ValidationError,
    ConfigurationError,
    PydanticValidationError,
    NotSquarefree,
    NotFormallyReal,
    ZeroPolynomial,
    ConstantFunction,
    ConstantElement,
    DependentBasis,
    TopIndexZero,
    PreconditionViolated,
)

SETTINGS_FLAGS = (
    "output",
    "seed",
    "oracle",
    "digits_file",
    "max_precision_bits",
    "log_level",
    "parallel",
)

SIGN_NAMES = {1: "POS", 0: "ZERO", -1: "NEG"}


def setup_logging(settings: Settings) -> logging.Logger:
    """Configure the package logger; stdout is reserved for the report."""
    log_level = getattr(logging, settings.log_level.upper())

    logger.setLevel(log_level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(log_level)
    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    handler.setFormatter(formatter)
    logger.addHandler(handler)

    return logger


def make_oracle(settings: Settings) -> TranscendentalOracle:
    if settings.oracle == "digits_file":
        if settings.digits_file is None:
            raise ConfigurationError("The digits_file oracle requires digits_file to be set")
        return DigitsFileOracle(settings.digits_file)
    return PiMinusThreeOracle()


def load_settings(args: argparse.Namespace) -> Settings:
    """Flags override the JSON config file, which overrides the environment."""
    values: dict[str, Any] = {}
    if args.config is not None:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Cannot read config file {args.config}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"Config file {args.config} must hold a JSON object")
        values.update(data)
    for key in SETTINGS_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            values[key] = value
    return Settings(**values)


def _map(settings: Settings, fn: Callable[[T], R], values: Iterable[T]) -> list[R]:
    """Ordered map, on a thread pool when --parallel is set."""
    if not settings.parallel:
        return [fn(value) for value in values]
    with ThreadPoolExecutor(max_workers=os.cpu_count() or 2) as pool:
        return list(pool.map(fn, values))


def _timed(fn: Callable[[], ReportItem]) -> ReportItem:
    start = time.perf_counter()
    item = fn()
    item.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return item


def _interval(values: Sequence[str]) -> DomainInterval:
    return DomainInterval.parse(values[0], values[1])


def _rational_list(text: str) -> list[str]:
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(not part for part in parts):
        raise ValidationError(f"Expected a comma-separated list of rationals, got '{text}'")
    return [format_rational(parse_rational(part)) for part in parts]


# scalar


def cmd_scalar_sign(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    def check(text: str) -> ReportItem:
        p = parse_scalar(text)
        bounds = enclose(p, Fraction(1, 2**64))
        return ReportItem(
            input={"scalar": format_scalar(p)},
            verdict=SIGN_NAMES[sign(p)],
            witness={"lo": format_rational(bounds.lo), "hi": format_rational(bounds.hi)},
        )

    return [_timed(lambda text=text: check(text)) for text in args.scalars]


# poly


def cmd_poly_minsign(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    f = parse_xpoly(args.coeffs)
    dom = _interval(args.interval)
    direction = Direction.MAX if args.max else Direction.MIN

    def check() -> ReportItem:
        report = extremum_sign(f, dom, direction)
        return ReportItem(
            input={
                "coeffs": format_xpoly(f),
                "interval": dom.describe(),
                "direction": direction.value,
            },
            verdict=report.verdict.value,
            witness=report.describe(),
        )

    return [_timed(check)]


# ex1


def _ex1_group(args: argparse.Namespace) -> ex1.Ex1Group:
    mode = ex1.GeneratorMode(args.mode)
    if args.alphas:
        return ex1.Ex1Group(args.n, tuple(parse_scalar(a) for a in args.alphas), mode)
    return ex1.Ex1Group.standard(args.n, mode)


def _ex1_input(group: ex1.Ex1Group) -> dict[str, Any]:
    return {
        "n": group.n,
        "alphas": [format_scalar(a) for a in group.alphas],
        "mode": group.mode.value,
    }


def cmd_ex1_scan(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    group = _ex1_group(args)

    def check() -> ReportItem:
        witness = ex1.extreme_simplicity_scan(group, args.bound)
        if witness is None:
            return ReportItem(input={**_ex1_input(group), "bound": args.bound}, verdict="NONE")
        return ReportItem(
            input={**_ex1_input(group), "bound": args.bound},
            verdict=ex1.Ex1Verdict.BOUNDARY.value,
            finding=True,
            witness={
                "element": list(witness.coeffs),
                "coordinates": [format_scalar(c) for c in ex1.coordinates(group, witness)],
            },
        )

    return [_timed(check)]


def cmd_ex1_classify(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    group = _ex1_group(args)
    g = group.element(args.element)

    def check() -> ReportItem:
        verdict = ex1.classify(group, g)
        return ReportItem(
            input={**_ex1_input(group), "element": list(g.coeffs)},
            verdict=verdict.value,
            finding=verdict is ex1.Ex1Verdict.BOUNDARY,
            witness={"coordinates": [format_scalar(c) for c in ex1.coordinates(group, g)]},
        )

    return [_timed(check)]


def cmd_ex1_density(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    group = _ex1_group(args)
    target = [parse_rational(x) for x in args.target]

    def check() -> ReportItem:
        nearest = ex1.nearest_element(group, target, args.bound)
        return ReportItem(
            input={
                **_ex1_input(group),
                "target": [format_rational(x) for x in target],
                "bound": args.bound,
            },
            verdict="PROBE",
            witness={
                "element": list(nearest.element.coeffs),
                "distance": f"{float(nearest.distance):.6e}",
            },
        )

    return [_timed(check)]


# nf


def cmd_nf_check(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    field = numfield.make_field(args.minpoly)
    elements = [field.element(parse_rational(c) for c in coeffs) for coeffs in args.element or []]
    items = [
        ReportItem(
            input={"minpoly": list(field.minpoly)}, verdict="FIELD", witness=field.describe()
        )
    ]

    def check_element(k: numfield.NFElement) -> ReportItem:
        base = {"minpoly": list(field.minpoly), "element": k.describe()}
        try:
            signs = [numfield.embed_sign(field, k, j) for j in range(len(field.embeddings))]
        except ReducibleMinpoly as e:
            return ReportItem(
                input=base, verdict="REDUCIBLE", finding=True, witness={"factor": e.factor}
            )
        positive = all(s == 1 for s in signs)
        witness: dict[str, Any] = {"signs": signs}
        if positive:
            witness["order_unit"] = numfield.is_order_unit(field, k)
        elif not k.is_zero:
            witness["order_unit_multiple"] = numfield.order_unit_multiple(field, k)
        return ReportItem(
            input=base,
            verdict="TOTALLY_POSITIVE" if positive else "NOT_TOTALLY_POSITIVE",
            finding=not k.is_zero and 0 in signs,
            witness=witness,
        )

    items.extend(_timed(lambda k=k: check_element(k)) for k in elements)

    def check_simplicity() -> ReportItem:
        witness = numfield.verify_extreme_simplicity(
            field, args.samples, settings.seed, extra=elements
        )
        base = {"minpoly": list(field.minpoly), "samples": args.samples, "seed": settings.seed}
        if witness is None:
            return ReportItem(input=base, verdict="EXTREMELY_SIMPLE")
        return ReportItem(input=base, verdict="WITNESS", finding=True, witness=witness.describe())

    items.append(_timed(check_simplicity))
    return items


# ex3


def _ex3_item(g: ex3.Ex3Element, dom: DomainInterval, found: ex3.Ex3Class) -> ReportItem:
    return ReportItem(
        input={"coeffs": g.describe(), "interval": dom.describe()},
        verdict=found.verdict.value,
        finding=found.verdict is ex3.Ex3Verdict.VIOLATION,
        witness=found.describe(),
    )


def cmd_ex3_classify(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    g = ex3.Ex3Element.of(_rational_list(args.coeffs))
    dom = _interval(args.interval)
    return [_timed(lambda: _ex3_item(g, dom, ex3.classify(g, dom)))]


def cmd_ex3_sensitivity(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    side = ex3.Side(args.side)

    def check(k: int) -> ReportItem:
        witness = ex3.sensitivity_witness(k, side)
        on_endpoint = ex3.classify(witness.element, witness.domain)
        on_unit = ex3.classify(witness.element, DomainInterval.unit())
        reproduced = (
            on_endpoint.verdict is ex3.Ex3Verdict.VIOLATION
            and on_unit.verdict is ex3.Ex3Verdict.SIGN_CHANGING
        )
        return ReportItem(
            input={"k": k, "side": side.value},
            verdict=on_endpoint.verdict.value,
            finding=not reproduced,
            witness={**witness.describe(), "on_unit_interval": on_unit.verdict.value},
        )

    return [_timed(lambda k=k: check(k)) for k in args.k]


def cmd_ex3_batch(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    dom = DomainInterval.unit()
    result = ex3.random_batch_verify(
        args.degree,
        args.count,
        settings.seed,
        args.bound,
        dom,
        workers=(os.cpu_count() or 2) if settings.parallel else 1,
    )
    items = []
    for entry in result.items:
        item = _ex3_item(entry.element, dom, entry.result)
        item.elapsed_ms = round(entry.elapsed_ms, 3)
        items.append(item)
    return items


def cmd_ex3_probe(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    g = ex3.Ex3Element.of(_rational_list(args.coeffs))
    points = [parse_rational(p) for p in args.points]

    def check(point: Fraction) -> ReportItem:
        described = {"coeffs": g.describe(), "point": format_rational(point)}
        try:
            (value,) = ex3.rational_nonvanishing_probe(g, [point])
        except VanishingAtRational as e:
            logger.warning(f"{g.describe()}: {e}")
            return ReportItem(input=described, verdict=SIGN_NAMES[0], finding=True)
        return ReportItem(input=described, verdict=SIGN_NAMES[value], finding=False)

    return [_timed(lambda p=p: check(p)) for p in points]


# simplex


def _simplex_state(args: argparse.Namespace) -> simplex_builder.ConstructionState:
    if args.spec is None:
        spec = simplex_builder.demo_spec()
    else:
        try:
            data = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"Cannot read simplex spec {args.spec}: {e}") from e
        spec = SimplexSpecInput.model_validate(data).to_spec()
    return simplex_builder.build(spec)


def cmd_simplex_build(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    def check() -> ReportItem:
        try:
            state = _simplex_state(args)
        except LambdaConditionFailed as e:
            return ReportItem(
                input={"spec": args.spec or "demo"},
                verdict="LAMBDA_IN_SPAN",
                finding=True,
                witness={"stage": e.stage},
            )
        return ReportItem(
            input={"spec": args.spec or "demo", "m": state.m, "n": state.n},
            verdict="CERTIFIED",
            witness={
                "lambdas": [format_scalar(lam) for lam in state.lambdas],
                "span_dimensions": [len(basis) for basis in state.spans],
            },
        )

    return [_timed(check)]


def cmd_simplex_verify(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    state = _simplex_state(args)
    rng = random.Random(settings.seed)  # noqa: S311
    elements = [simplex_builder.random_element(state, rng, args.bound) for _ in range(args.count)]

    def check(g: simplex_builder.SimplexElement) -> ReportItem:
        verdict = simplex_builder.classify(state, g)
        bounds = simplex_builder.s_bounds(state, g)
        witness: dict[str, Any] = bounds.describe()
        finding = (
            verdict is simplex_builder.SimplexVerdict.VIOLATION
            or sign(bounds.s_minus) == 0
            or sign(bounds.s_plus) == 0
        )
        if g.top >= 1:
            coset = simplex_builder.verify_coset(state, g)
            witness["coset"] = coset.describe()
            finding = finding or not coset.passed
        return ReportItem(
            input={"element": g.describe()}, verdict=verdict.value, finding=finding, witness=witness
        )

    return _map(settings, lambda g: _timed(lambda: check(g)), elements)


def cmd_simplex_interp(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    state = _simplex_state(args)
    rng = random.Random(settings.seed)  # noqa: S311
    quadruples = [
        simplex_builder.random_quadruple(state, rng, args.bound) for _ in range(args.count)
    ]

    def check(
        quadruple: tuple[
            simplex_builder.SimplexElement,
            simplex_builder.SimplexElement,
            simplex_builder.SimplexElement,
            simplex_builder.SimplexElement,
        ],
    ) -> ReportItem:
        names = ("g1", "g2", "h1", "h2")
        base = {name: g.describe() for name, g in zip(names, quadruple, strict=True)}
        try:
            z = simplex_builder.interpolate(state, *quadruple)
        except InterpolantNotFound as e:
            return ReportItem(
                input=base, verdict="NOT_FOUND", finding=True, witness={"attempts": e.attempts}
            )
        return ReportItem(input=base, verdict="INTERPOLATED", witness={"z": z.describe()})

    return _map(settings, lambda q: _timed(lambda: check(q)), quadruples)


def cmd_simplex_export(args: argparse.Namespace, settings: Settings) -> list[ReportItem]:
    state = _simplex_state(args)
    return [
        ReportItem(
            input={"spec": args.spec or "demo"},
            verdict="STATE",
            witness=simplex_builder.export_state(state),
        )
    ]


def batch_report(
    command: Sequence[str], settings: Settings, items: Iterable[ReportItem]
) -> Report:
    """Assemble items into a report with verdict counts."""
    collected = list(items)
    counts = Counter(item.verdict for item in collected)
    return Report(
        command=list(command),
        config=settings.model_dump(mode="json"),
        items=collected,
        summary=ReportSummary(
            total=len(collected),
            findings=sum(1 for item in collected if item.finding),
            counts=dict(sorted(counts.items())),
        ),
    )


def render(report: Report, output: str) -> str:
    if output == "json":
        return report.model_dump_json(indent=2)
    lines = []
    for item in report.items:
        marker = " [finding]" if item.finding else ""
        lines.append(f"{item.verdict}{marker} {json.dumps(item.input, sort_keys=True)}")
        if item.witness is not None:
            lines.append(f"    witness: {json.dumps(item.witness, sort_keys=True)}")
    counts = ", ".join(f"{k}={v}" for k, v in report.summary.counts.items())
    lines.append(
        f"summary: total={report.summary.total} findings={report.summary.findings}"
        + (f" ({counts})" if counts else "")
    )
    return "\n".join(lines)


def _add_ex1_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=2, help="Dimension n (default: 2)")
    parser.add_argument(
        "--mode",
        choices=[mode.value for mode in ex1.GeneratorMode],
        default=ex1.GeneratorMode.STD_PLUS_E.value,
        help="Generating set (default: STD_PLUS_E)",
    )
    parser.add_argument(
        "--alphas", nargs="+", default=None, help="alpha_1..alpha_n as scalars (default: t^j)"
    )


def _add_spec_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--spec", default=None, help="Simplex spec JSON file (default: built-in m=3, N=8 basis)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimgroups", description="Exact checks for simple archimedean dimension groups"
    )
    parser.add_argument("--output", choices=["text", "json"], default=None, help="Report format")
    parser.add_argument("--seed", type=int, default=None, help="Seed for random draws")
    parser.add_argument(
        "--oracle", choices=["pi_minus_3", "digits_file"], default=None, help="Source of t"
    )
    parser.add_argument("--digits-file", dest="digits_file", default=None, help="Digits of t")
    parser.add_argument(
        "--max-precision-bits",
        dest="max_precision_bits",
        type=int,
        default=None,
        help="Refinement cap of the sign oracle (default: 16384)",
    )
    parser.add_argument("--config", default=None, help="JSON file with the same keys as flags")
    parser.add_argument(
        "--parallel", action="store_true", default=None, help="Check batch items on threads"
    )
    parser.add_argument("--log-level", dest="log_level", default=None, help="Log level on stderr")

    commands = parser.add_subparsers(dest="command", required=True)

    scalar = commands.add_parser("scalar", help="Elements of Q[t]").add_subparsers(
        dest="action", required=True
    )
    scalar_sign = scalar.add_parser("sign", help="Sign of scalars at t")
    scalar_sign.add_argument("scalars", nargs="+", help="Scalars such as '1/7 - t'")
    scalar_sign.set_defaults(handler=cmd_scalar_sign)

    poly = commands.add_parser("poly", help="Polynomials in x over Q[t]").add_subparsers(
        dest="action", required=True
    )
    minsign = poly.add_parser("minsign", help="Sign of the minimum (or maximum) on an interval")
    minsign.add_argument("--coeffs", nargs="+", required=True, help="Coefficients, x^0 first")
    minsign.add_argument("--interval", nargs=2, default=["0", "1"], metavar=("A", "B"))
    minsign.add_argument("--max", action="store_true", help="Report the maximum instead")
    minsign.set_defaults(handler=cmd_poly_minsign)

    ex1_commands = commands.add_parser("ex1", help="Subgroups of R^n").add_subparsers(
        dest="action", required=True
    )
    scan = ex1_commands.add_parser("scan", help="Search for elements with a vanishing trace")
    _add_ex1_arguments(scan)
    scan.add_argument("--bound", type=int, default=1, help="Coefficient bound (default: 1)")
    scan.set_defaults(handler=cmd_ex1_scan)
    ex1_classify = ex1_commands.add_parser("classify", help="Classify one element")
    _add_ex1_arguments(ex1_classify)
    ex1_classify.add_argument("--element", type=int, nargs="+", required=True)
    ex1_classify.set_defaults(handler=cmd_ex1_classify)
    density = ex1_commands.add_parser("density", help="Nearest element to a target point")
    _add_ex1_arguments(density)
    density.add_argument("--target", nargs="+", required=True, help="Target coordinates")
    density.add_argument("--bound", type=int, default=5, help="Coefficient bound (default: 5)")
    density.set_defaults(handler=cmd_ex1_density)

    nf = commands.add_parser("nf", help="Real number fields").add_subparsers(
        dest="action", required=True
    )
    nf_check = nf.add_parser("check", help="Embeddings, positivity and extreme simplicity")
    nf_check.add_argument("--minpoly", type=int, nargs="+", required=True, help="x^0 first")
    nf_check.add_argument(
        "--element", action="append", nargs="+", default=None, help="Element, beta^0 first"
    )
    nf_check.add_argument("--samples", type=int, default=200, help="Random elements to draw")
    nf_check.set_defaults(handler=cmd_nf_check)

    ex3_commands = commands.add_parser(
        "ex3", help="Polynomial group on an interval"
    ).add_subparsers(dest="action", required=True)
    ex3_classify = ex3_commands.add_parser("classify", help="Classify one element")
    ex3_classify.add_argument("--coeffs", required=True, help="q_0,q_1,... comma separated")
    ex3_classify.add_argument("--interval", nargs=2, default=["0", "1"], metavar=("A", "B"))
    ex3_classify.set_defaults(handler=cmd_ex3_classify)
    sensitivity = ex3_commands.add_parser("sensitivity", help="Endpoint sensitivity witnesses")
    sensitivity.add_argument("--k", type=int, nargs="+", default=[1, 2, 3, 4])
    sensitivity.add_argument("--side", choices=[s.value for s in ex3.Side], default="LEFT")
    sensitivity.set_defaults(handler=cmd_ex3_sensitivity)
    batch = ex3_commands.add_parser("batch", help="Classify seeded random elements on [0, 1]")
    batch.add_argument("--degree", type=int, default=4, help="Maximum degree (default: 4)")
    batch.add_argument("--count", type=int, default=100, help="Number of elements")
    batch.add_argument("--bound", type=int, default=10, help="Coefficient bound")
    batch.set_defaults(handler=cmd_ex3_batch)
    probe = ex3_commands.add_parser("probe", help="Signs at rational points")
    probe.add_argument("--coeffs", required=True, help="q_0,q_1,... comma separated")
    probe.add_argument("--points", nargs="+", required=True, help="Rational points")
    probe.set_defaults(handler=cmd_ex3_probe)

    simplex = commands.add_parser("simplex", help="Construction over a simplex").add_subparsers(
        dest="action", required=True
    )
    simplex_build = simplex.add_parser("build", help="Build and certify the construction")
    _add_spec_argument(simplex_build)
    simplex_build.set_defaults(handler=cmd_simplex_build)
    simplex_verify = simplex.add_parser("verify", help="Check seeded random elements")
    _add_spec_argument(simplex_verify)
    simplex_verify.add_argument("--count", type=int, default=100)
    simplex_verify.add_argument("--bound", type=int, default=10)
    simplex_verify.set_defaults(handler=cmd_simplex_verify)
    simplex_interp = simplex.add_parser("interp", help="Interpolate seeded random quadruples")
    _add_spec_argument(simplex_interp)
    simplex_interp.add_argument("--count", type=int, default=10)
    simplex_interp.add_argument("--bound", type=int, default=10)
    simplex_interp.set_defaults(handler=cmd_simplex_interp)
    simplex_export = simplex.add_parser("export", help="Export the construction state")
    _add_spec_argument(simplex_export)
    simplex_export.set_defaults(handler=cmd_simplex_export)

    schema = commands.add_parser("schema", help="Print the JSON schema of reports")
    schema.set_defaults(handler=None)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if args.command == "schema":
        print(json.dumps(Report.model_json_schema(), indent=2))
        return 0

    try:
        settings = load_settings(args)
        setup_logging(settings)
        configure(make_oracle(settings), settings.max_precision_bits)
    except USAGE_ERRORS as e:
        print(f"dimgroups: configuration error: {e}", file=sys.stderr)
        return 2

    try:
        items = args.handler(args, settings)
    except USAGE_ERRORS as e:
        logger.error(f"Invalid input: {e}")
        print(f"dimgroups: error: {e}", file=sys.stderr)
        return 2
    except PrecisionExhausted as e:
        logger.error(f"Precision exhausted at {e.bits} bits: {e}")
        return 1
    except DimGroupsError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return 1

    report = batch_report(argv, settings, items)
    print(render(report, settings.output))
    if report.summary.findings:
        logger.warning(f"{report.summary.findings} finding(s) reported")
    return report.exit_code
