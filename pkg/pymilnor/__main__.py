"""
Module entry point; command-line tools
"""

import argparse
import concurrent.futures
import functools
import itertools
import logging
import math
import sys
import typing

import numpy

from .expr_eval import parse_number
from .foliations import (FrameField, HomogeneityCertificate,
    InhomogeneousFoliation, DEFAULT_TOLERANCE, homogeneity_certificate,
    is_metric_foliation, killing_foliation, lemma_equalities_check,
    sample_region, tilted_field)
from .geodesics import (BergerGeodesicSpec, GeodesicState, IntegratorConfig,
    TRAJECTORY_COLUMNS, HOPF_COLUMNS, berger_geodesic, find_period_shift,
    general_berger_geodesic, integrate_geodesic, verify_prop_geo)
from .group import (AlgebraVector, GroupPoint, IDENTITY, distance, hopf_flow,
    random_point)
from .log_conf import configure_logging
from .metrics import (BergerParams, MilnorTriple, christoffel, classify,
    sectional_curvature)
from .report import FORMATS, CommandReport
from .scalars import max_abs, to_float


LOGGER = logging.getLogger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERIC = 2

# Angles closer than this to 0 or pi follow the Hopf orbit
ENDPOINT_THRESHOLD = 1e-12

SWEEP_COLUMNS = ('eps', 'theta', 'period', 'shift', 'closed_form_residual')

PAIR_NAMES = ('E1E2', 'E1E3', 'E2E3')
CHECK_COLUMNS = ('sample', 'uu', 'ww', 'uw_wu', *(f'dw_{name}'
    for name in PAIR_NAMES))


class _ArgumentParser(argparse.ArgumentParser):
    """
    Parser whose usage errors exit with EXIT_INVALID.
    """

    def error(self, message: str) -> typing.NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def run(argv: typing.Sequence[str] | None = None) -> int:
    """
    Command-line entry point. Returns the exit code.
    """

    parser = _build_parser()
    args = parser.parse_args(argv)

    configure_logging(verbose=args.verbose)

    try:
        report = args.func(args)
    except ArithmeticError as err:
        LOGGER.error("Numerical failure: %s", err)
        return EXIT_NUMERIC
    except (ValueError, SyntaxError) as err:
        LOGGER.error("Invalid parameters: %s", err)
        return EXIT_INVALID

    report.write(args.format, args.out, sys.stdout)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument('--tol', default=None,
        help="Residual tolerance")
    common.add_argument('--samples', type=int, default=None,
        help="Number of sample points or times")
    common.add_argument('--seed', type=int, default=0,
        help="Seed of the random sample points (default: 0)")
    common.add_argument('--step', default=None,
        help="Integrator or finite difference step")
    common.add_argument('--out', default=None,
        help="Output file (default: standard output); relative paths are "
        "resolved in $MILNOR_OUT_DIR when set")
    common.add_argument('--format', choices=FORMATS, default='json',
        help="Output format (default: json)")
    common.add_argument('-v', '--verbose', action='store_true',
        help="Log at DEBUG level")

    parser = _ArgumentParser(prog='python3 -m pymilnor',
        description="Left-invariant metrics on SU(2), Berger geodesics and "
        "one-dimensional metric foliations")

    sub = parser.add_subparsers(title="Available commands", metavar='command',
        required=True)

    classify_p = sub.add_parser('classify', parents=[common],
        help="Classify a Milnor triple up to isometry and homothety")
    classify_p.add_argument('triple', nargs=3, metavar='X',
        help="Structure constants x y z")
    classify_p.set_defaults(func=_classify)

    geodesic_p = sub.add_parser('geodesic', parents=[common],
        help="Compare the closed-form and the integrated Berger geodesic")
    geodesic_p.add_argument('--eps', required=True, help="Berger parameter")
    geodesic_p.add_argument('--theta', required=True,
        help="Angle between the initial velocity and Y3, in [0, pi]")
    geodesic_p.add_argument('--t-end', default='4*pi',
        help="End time (default: 4*pi)")
    geodesic_p.add_argument('--hopf', action='store_true',
        help="Add the Hopf projection columns to the trajectory")
    geodesic_p.add_argument('--search', action='store_true',
        help="Also locate the period and the shift on the trajectory")
    geodesic_p.set_defaults(func=_geodesic)

    foliation_p = sub.add_parser('foliation',
        help="Build, check and certify one-dimensional foliations")
    modes = foliation_p.add_subparsers(title="Modes", metavar='mode',
        required=True)

    build_p = modes.add_parser('build', parents=[common],
        help="Build the inhomogeneous metric foliation of x > y > z")
    build_p.add_argument('triple', nargs=3, metavar='X',
        help="Structure constants x > y > z")
    build_p.set_defaults(func=_foliation_build)

    for name, func, text in (('check', _foliation_check,
        "Check whether a field spans a metric foliation"),
        ('certify', _foliation_certify,
        "Certify the homogeneity of a foliation")):

        mode_p = modes.add_parser(name, parents=[common], help=text)
        mode_p.add_argument('triple', nargs='*', metavar='X',
            help="Structure constants x y z (or use --eps)")
        mode_p.add_argument('--eps', default=None,
            help="Berger parameter, instead of a triple")
        mode_p.add_argument('--field', required=True,
            help="y3, y1, theorem1, killing:a1,a2,a3[,c] or tilted:angle")
        if name == 'check':
            mode_p.add_argument('--lemma', action='store_true',
                help="Also check the identities of Berger metric foliations")
        mode_p.set_defaults(func=func)

    sweep_p = sub.add_parser('sweep', parents=[common],
        help="Period and shift law over a grid of (eps, theta)")
    sweep_p.add_argument('--eps', nargs='+', default=[],
        help="Values of eps")
    sweep_p.add_argument('--theta', nargs='+', default=[],
        help="Values of theta")
    sweep_p.add_argument('--eps-range', nargs=3, metavar=('LOW', 'HIGH', 'N'),
        help="N evenly spaced values of eps")
    sweep_p.add_argument('--theta-range', nargs=3,
        metavar=('LOW', 'HIGH', 'N'), help="N evenly spaced values of theta")
    sweep_p.add_argument('--integrate', action='store_true',
        help="Also measure the law on integrated geodesics")
    sweep_p.add_argument('--jobs', type=int, default=1,
        help="Number of cells evaluated in parallel (default: 1)")
    sweep_p.set_defaults(func=_sweep)

    return parser


# MARK: Parameter helpers


def _float(text: str | None, default: float) -> float:
    return default if text is None else to_float(parse_number(text))


def _metric(args: argparse.Namespace) \
    -> tuple[MilnorTriple, BergerParams | None]:
    """
    The metric named by --eps or by a positional triple.
    """

    eps = getattr(args, 'eps', None)
    if eps is not None and args.triple:
        raise ValueError("Give either --eps or a triple, not both")

    if eps is not None:
        params = BergerParams(parse_number(eps))
        return params.triple(), params

    if len(args.triple) != 3:
        raise ValueError("Give --eps or the three structure constants")

    return MilnorTriple(*(parse_number(val) for val in args.triple)), None


def _resolve_field(name: str, triple: MilnorTriple,
    params: BergerParams | None) -> FrameField:
    kind, _, rest = name.partition(':')
    kind = kind.lower()

    if kind == 'y3' and not rest:
        return FrameField.basis(2)

    if kind == 'y1' and not rest:
        return FrameField.basis(0)

    if kind == 'theorem1' and not rest:
        return InhomogeneousFoliation(triple).field

    if kind == 'killing':
        if params is None:
            raise ValueError("Killing fields need a Berger sphere (--eps)")

        values = [to_float(parse_number(val)) for val in rest.split(',')]
        if len(values) not in (3, 4):
            raise ValueError(f"Expected killing:a1,a2,a3[,c], got {name!r}")

        coeff = values[3] if len(values) == 4 else 0.0
        return killing_foliation(params, AlgebraVector(*values[:3]), coeff)

    if kind == 'tilted' and rest:
        return tilted_field(to_float(parse_number(rest)))

    raise ValueError(f"Unknown field {name!r}")


def _sample_points(args: argparse.Namespace, default: int) \
    -> list[GroupPoint]:
    count = default if args.samples is None else args.samples
    if count < 0:
        raise ValueError("The sample count must not be negative")

    rng = numpy.random.default_rng(args.seed)
    return [random_point(rng) for _ in range(count)]


# MARK: Commands


def _classify(args: argparse.Namespace) -> CommandReport:
    triple = MilnorTriple(*(parse_number(val) for val in args.triple))
    result = classify(triple)
    table = christoffel(triple)

    gamma = {f'gamma_{i + 1}{j + 1}^{k + 1}': val
        for i, j, k, val in table.entries() if val != 0}
    curvature = {f'K_{i + 1}{j + 1}': sectional_curvature(table, triple, i, j)
        for i, j in ((0, 1), (0, 2), (1, 2))}

    return CommandReport('classify', {'triple': triple.as_tuple()}, {
        'class': result.tag.value,
        'canonical': result.canonical.as_tuple(),
        'eps': result.eps,
        'scale': result.scale,
        'christoffel': gamma,
        'sectional_curvature': curvature,
    })


def _shift_residual(curve: typing.Callable[[float], GroupPoint], eps: float,
    period: float, shift: float, times: typing.Iterable[float]) -> float:
    return max((distance(curve(time + period), hopf_flow(eps, shift,
        curve(time))) for time in times), default=0.0)


def _geodesic(args: argparse.Namespace) -> CommandReport:
    params = BergerParams(parse_number(args.eps))
    eps = to_float(params.eps)
    theta = _float(args.theta, 0.0)
    t_end = _float(args.t_end, 0.0)
    config = IntegratorConfig(_float(args.step, 1e-3))
    count = 100 if args.samples is None else args.samples

    if not 0 <= theta <= math.pi:
        raise BergerGeodesicSpec.DomainError(f"theta must lie in [0, pi], "
            f"not {theta}")

    results: dict[str, typing.Any] = {}
    endpoint = theta < ENDPOINT_THRESHOLD or \
        math.pi - theta < ENDPOINT_THRESHOLD

    if endpoint:
        LOGGER.warning("theta = %g is an endpoint: following the Hopf orbit "
            "of the identity", theta)
        velocity = (0.0, 0.0, 1.0 if theta < 1 else -1.0)
        period, shift = 2 * math.pi * eps, 0.0

        def closed(time: float) -> GroupPoint:
            return general_berger_geodesic(eps, IDENTITY, velocity, time)

        results['mode'] = 'hopf-orbit'
    else:
        spec = BergerGeodesicSpec(eps, theta)
        velocity = spec.initial_velocity
        period, shift = spec.period, spec.shift

        def closed(time: float) -> GroupPoint:
            return berger_geodesic(spec, time)

        results['mode'] = 'geodesic'
        if args.search:
            found = find_period_shift(spec, config)
            results['search_period'], results['search_shift'] = found

    traj = integrate_geodesic(params.triple(), GeodesicState(IDENTITY,
        velocity), t_end, config)
    times = numpy.linspace(0.0, t_end, count) if t_end > 0 and count > 0 \
        else [0.0]

    window = t_end - period
    if window >= 0:
        inner_times = numpy.linspace(0.0, window, max(count, 1))
        integrated = _shift_residual(lambda time: traj.at(time).point, eps,
            period, shift, inner_times)
    else:
        integrated = None

    results.update({
        'period': period,
        'shift': shift,
        'closed_form_residual': _shift_residual(closed, eps, period, shift,
            times),
        'integrated_residual': integrated,
        'return_gap': distance(closed(period), hopf_flow(eps, shift,
            IDENTITY)),
        'max_deviation': max(distance(state.point, closed(time))
            for time, state in traj),
        'max_speed_drift': max(abs(state.speed - 1) for state in traj.states),
        'max_norm_drift': traj.max_norm_drift,
    })

    columns = TRAJECTORY_COLUMNS + (HOPF_COLUMNS if args.hopf else ())
    return CommandReport('geodesic', {'eps': params.eps, 'theta': theta,
        't_end': t_end, 'step': config.step}, results, columns,
        traj.rows(hopf=args.hopf))


def _foliation_build(args: argparse.Namespace) -> CommandReport:
    triple = MilnorTriple(*(parse_number(val) for val in args.triple))
    example = InhomogeneousFoliation(triple)
    report = is_metric_foliation(triple, example.field, [IDENTITY])
    sample = report.samples[0]

    return CommandReport('foliation build', {'triple': triple.as_tuple()}, {
        'v2': example.v2,
        'v3': example.v3,
        'key_identity_residual': example.key_identity_residual,
        'metric_residuals': sample.residuals,
        'mean_curvature': example.mean_curvature_value,
        'd_omega': dict(zip(PAIR_NAMES, sample.d_omega)),
        'expected_d_omega': example.expected_d_omega,
        'exact': report.exact,
        'verdict': 'homogeneous' if report.is_closed else 'inhomogeneous',
    })


def _foliation_check(args: argparse.Namespace) -> CommandReport:
    triple, params = _metric(args)
    field = _resolve_field(args.field, triple, params)
    tol = _float(args.tol, DEFAULT_TOLERANCE)
    points = _sample_points(args, 8)
    kwargs = {} if args.step is None else {'step': _float(args.step, 0.0)}
    report = is_metric_foliation(triple, field, points, tol, **kwargs)

    results: dict[str, typing.Any] = {
        'field': field.name,
        'exact': report.exact,
        'is_metric': report.is_metric,
        'max_residual': report.max_residual,
        'is_closed': report.is_closed,
        'max_d_omega': report.max_d_omega,
    }

    if args.lemma:
        if params is None:
            raise ValueError("The identities only apply to Berger spheres "
                "(--eps)")

        rng = numpy.random.default_rng(args.seed)
        regions = sample_region(field, rng, max(1, len(points) // 2))
        check = lemma_equalities_check(params, field, regions,
            require_metric=False)
        results.update({
            'lemma_passed': check.passed,
            'lemma_converged': check.converged(),
            'lemma_residuals': check.residuals,
            'lemma_orders': check.orders,
        })

    rows = [(idx, *sample.residuals, *sample.d_omega)
        for idx, sample in enumerate(report.samples)]

    return CommandReport('foliation check', {'triple': triple.as_tuple(),
        'field': args.field, 'tol': tol, 'seed': args.seed}, results,
        CHECK_COLUMNS, rows)


def _foliation_certify(args: argparse.Namespace) -> CommandReport:
    triple, params = _metric(args)
    field = _resolve_field(args.field, triple, params)
    points = _sample_points(args, 4)
    parameters = {'triple': triple.as_tuple(), 'field': args.field,
        'seed': args.seed}

    kwargs = {}
    if args.tol is not None:
        kwargs['tol'] = _float(args.tol, 0.0)

    try:
        certificate = homogeneity_certificate(triple, field, IDENTITY, points,
            **kwargs)
    except HomogeneityCertificate.NotClosed as err:
        LOGGER.info("Mean curvature form of %s is not closed", field.name)
        i, j = err.pair
        return CommandReport('foliation certify', parameters, {
            'field': field.name,
            'closed': False,
            'witness': {'pair': f'E{i + 1}E{j + 1}', 'value': err.value,
                'point': err.point.as_tuple()},
            'verdict': 'inhomogeneous',
        })

    potential = max_abs([certificate.potential(point)
        for point in points] or [0.0])

    return CommandReport('foliation certify', parameters, {
        'field': field.name,
        'closed': True,
        'killing_residual': certificate.killing_residual,
        'max_potential': potential,
        'success': certificate.success,
        'verdict': 'homogeneous' if certificate.success else 'unverified',
    })


def _grid(values: list[str], span: list[str] | None) -> list[float]:
    grid = [to_float(parse_number(val)) for val in values]

    if span is not None:
        low, high = (to_float(parse_number(val)) for val in span[:2])
        count = int(span[2])
        if count < 1:
            raise ValueError(f"A range needs at least one value, not {count}")
        grid.extend(float(val) for val in numpy.linspace(low, high, count))

    return grid


def _sweep_cell(eps: float, theta: float, count: int,
    config: IntegratorConfig | None) -> tuple[float, ...]:

    spec = BergerGeodesicSpec(eps, theta)
    times = numpy.linspace(0.0, spec.period, count)
    row: tuple[float, ...] = (eps, theta, spec.period, spec.shift,
        verify_prop_geo(eps, theta, times))

    if config is not None:
        traj = integrate_geodesic(BergerParams(eps).triple(), GeodesicState(
            IDENTITY, spec.initial_velocity), 2 * spec.period, config)
        row += (verify_prop_geo(eps, theta, times,
            lambda time: traj.at(time).point),)

    LOGGER.debug("Sweep cell eps=%g theta=%g done", eps, theta)
    return row


def _sweep(args: argparse.Namespace) -> CommandReport:
    eps_grid = _grid(args.eps, args.eps_range)
    theta_grid = _grid(args.theta, args.theta_range)
    if not eps_grid or not theta_grid:
        raise ValueError("The grid is empty")

    if args.jobs < 1:
        raise ValueError(f"--jobs must be positive, not {args.jobs}")

    count = 100 if args.samples is None else args.samples
    config = IntegratorConfig(_float(args.step, 1e-3)) if args.integrate \
        else None
    cells = list(itertools.product(eps_grid, theta_grid))
    worker = functools.partial(_sweep_cell, count=count, config=config)

    LOGGER.info("Sweeping %d cells with %d jobs", len(cells), args.jobs)
    with concurrent.futures.ThreadPoolExecutor(args.jobs) as pool:
        # map keeps the order of the cells
        rows = list(pool.map(lambda cell: worker(*cell), cells))

    columns = SWEEP_COLUMNS + (('integrated_residual',) if args.integrate
        else ())
    results = {
        'cells': len(rows),
        'max_closed_form_residual': max(row[4] for row in rows),
    }
    if args.integrate:
        results['max_integrated_residual'] = max(row[5] for row in rows)

    return CommandReport('sweep', {'eps': eps_grid, 'theta': theta_grid,
        'samples': count, 'integrate': args.integrate}, results, columns,
        rows)


if __name__ == '__main__':
    sys.exit(run())
