import contextlib
import logging
import pathlib
import sys
from typing import cast, Iterator, Optional, Tuple
import warnings

import click
import click_pathlib
import numpy as np
import pandas as pd

from bmv_entanglement.chsh import chsh_gap, chsh_threshold, sup_horodecki_m
from bmv_entanglement.dataset import format_dataset, FORMATS
from bmv_entanglement.design import run_design
from bmv_entanglement.dynamics import evolve_closed
from bmv_entanglement.entanglement import lambda_closed, lambda_numeric, optimal_time
from bmv_entanglement.fluctuations import (
    averaged_state,
    DEFAULT_SEED,
    FluctuationSpec,
    max_time_jitter,
    monte_carlo_average,
)
from bmv_entanglement.model import PhysicalParams
from bmv_entanglement.sweep import QUANTITIES, run_sweep, SweepRequest
from bmv_entanglement.types import DomainException, ModelException, SimPoint

OutputPath = click_pathlib.Path(file_okay=True, dir_okay=False, writable=True)


class InputError(click.ClickException):
    exit_code = 2

    def __init__(self, message: str) -> None:
        super().__init__(f'input_error: {message}')


class DomainError(click.ClickException):
    exit_code = 3

    def __init__(self, message: str) -> None:
        super().__init__(f'domain_error: {message}')


@contextlib.contextmanager
def _model_errors() -> Iterator[None]:
    try:
        yield
    except DomainException as e:
        raise DomainError(str(e))
    except ModelException as e:
        raise InputError(str(e))


def _emit(ctx: click.Context, table: pd.DataFrame) -> None:
    params = cast(click.Context, ctx.parent).params
    text = format_dataset(table, params['format'])
    output: Optional[pathlib.Path] = params['output']
    if output is None:
        click.echo(text, nl=False)
    else:
        with output.open('w', encoding='utf-8', newline='') as stream:
            stream.write(text)


omega_option = click.option('--omega', type=float, required=True, help='Dimensionless coupling.')
time_option = click.option('--t', 't', type=float, required=True, help='Time in units of T.')
s_t_option = click.option('--s-t', 's_t', type=float, default=0.0, show_default=True)
s_omega_option = click.option('--s-omega', 's_omega', type=float, default=0.0, show_default=True)


@click.group(name='bmv-entanglement', help='Gravitationally induced entanglement under dephasing')
@click.option(
    '-f',
    '--format',
    'format',
    type=click.Choice(FORMATS),
    default='csv',
    show_default=True,
    envvar='BMV_ENTANGLEMENT_FORMAT',
)
@click.option('-o', '--output', type=OutputPath, default=None, help='Write data here, not stdout.')
@click.option('-v', '--verbose', is_flag=True, help='Log debug diagnostics to stderr.')
def cli(format: str, output: Optional[pathlib.Path], verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )
    logging.captureWarnings(True)


@cli.command(help='Evaluate a concrete setup given in SI units.')
@click.pass_context
@click.option('--m1', 'm1', type=float, required=True, help='Mass of the first particle (kg).')
@click.option('--m2', 'm2', type=float, required=True, help='Mass of the second particle (kg).')
@click.option('--d', 'd', type=float, required=True, help='Minimal separation (m).')
@click.option('--L', 'L', type=float, required=True, help='Superposition size (m).')
@click.option('--T', 'T', type=float, required=True, help='Decoherence time (s).')
@click.option('--omega', type=float, default=None, help='Target coupling to solve T for.')
def design(
    ctx: click.Context, m1: float, m2: float, d: float, L: float, T: float, omega: Optional[float]
) -> None:
    with _model_errors():
        report = run_design(PhysicalParams(m1=m1, m2=m2, d=d, L=L, T=T), target_omega=omega)
    _emit(ctx, pd.DataFrame([report.to_dict()]))


@cli.command(help='Print the exact state at a point, one matrix entry per row.')
@click.pass_context
@omega_option
@time_option
def evolve(ctx: click.Context, omega: float, t: float) -> None:
    with _model_errors():
        state = evolve_closed(SimPoint(omega, t))
        report = lambda_numeric(state)

    rows, columns = np.indices(state.matrix.shape)
    table = pd.DataFrame(
        {
            'row': rows.ravel(),
            'column': columns.ravel(),
            'real': state.matrix.real.ravel(),
            'imag': state.matrix.imag.ravel(),
        }
    )
    table['lambda_min'] = report.lambda_min
    table['negativity'] = report.negativity
    _emit(ctx, table)


@cli.command(help='Tabulate a quantity over a grid of times or couplings.')
@click.pass_context
@click.option('--quantity', type=click.Choice(QUANTITIES), required=True)
@click.option(
    '--range',
    'grid_range',
    type=(float, float, int),
    required=True,
    metavar='START STOP STEPS',
)
@click.option('--omega', type=float, default=0.0, show_default=True, help='Coupling for t sweeps.')
@s_t_option
@s_omega_option
def sweep(
    ctx: click.Context,
    quantity: str,
    grid_range: Tuple[float, float, int],
    omega: float,
    s_t: float,
    s_omega: float,
) -> None:
    start, stop, steps = grid_range
    with _model_errors():
        request = SweepRequest(
            quantity=quantity,
            start=start,
            stop=stop,
            steps=steps,
            omega=omega,
            fluctuations=FluctuationSpec(s_t=s_t, s_omega=s_omega),
        )
        table = run_sweep(request)
    _emit(ctx, table)


@cli.command(name='optimal-time', help='First time of maximal entanglement.')
@click.pass_context
@omega_option
def optimal_time_command(ctx: click.Context, omega: float) -> None:
    with _model_errors():
        t0 = optimal_time(omega)
        lambda_min = lambda_closed(SimPoint(omega, t0))
    _emit(ctx, pd.DataFrame([{'omega': omega, 'optimal_time': t0, 'lambda_min': lambda_min}]))


@cli.command(name='jitter-bound', help='Largest time jitter s_t^2 that keeps entanglement.')
@click.pass_context
@omega_option
def jitter_bound(ctx: click.Context, omega: float) -> None:
    with _model_errors():
        bound = max_time_jitter(omega)
    _emit(
        ctx,
        pd.DataFrame([{'omega': omega, 'jitter_bound': bound, 's_t_max': float(np.sqrt(bound))}]),
    )


@cli.command(name='chsh-threshold', help='Smallest coupling that violates CHSH.')
@click.pass_context
def chsh_threshold_command(ctx: click.Context) -> None:
    with _model_errors():
        omega_star = chsh_threshold()
        t, m = sup_horodecki_m(omega_star)
        gap = chsh_gap(omega_star)
    _emit(
        ctx,
        pd.DataFrame([{'omega': omega_star, 't': t, 'horodecki_M': m, 'gap': gap}]),
    )


@cli.command(name='monte-carlo', help='Average the exact state over sampled jitter.')
@click.pass_context
@omega_option
@time_option
@s_t_option
@s_omega_option
@click.option('--samples', type=click.IntRange(min=1), default=100000, show_default=True)
@click.option('--seed', type=click.IntRange(min=0), default=DEFAULT_SEED, show_default=True)
def monte_carlo(
    ctx: click.Context, omega: float, t: float, s_t: float, s_omega: float, samples: int, seed: int
) -> None:
    with _model_errors():
        point = SimPoint(omega, t)
        spec = FluctuationSpec(s_t=s_t, s_omega=s_omega)
        result = monte_carlo_average(point, spec, samples, seed)

        # The first-order formula for comparison, where it is defined
        formula = np.full((4, 4), complex(np.nan, np.nan), dtype=np.complex128)
        if spec.s_t == 0.0 or point.t > spec.s_t ** 2:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore')
                formula = averaged_state(point, spec).state.matrix

    rows, columns = np.indices((4, 4))
    table = pd.DataFrame(
        {
            'row': rows.ravel(),
            'column': columns.ravel(),
            'real': result.mean.matrix.real.ravel(),
            'imag': result.mean.matrix.imag.ravel(),
            'standard_error': result.standard_error.ravel(),
            'formula_real': formula.real.ravel(),
            'formula_imag': formula.imag.ravel(),
        }
    )
    for key, value in result.to_dict().items():
        table[key] = value
    _emit(ctx, table)


if __name__ == '__main__':
    cli()
