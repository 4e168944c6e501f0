import math
import warnings

import numpy as np
import pytest

from bmv_entanglement import fluctuations
from bmv_entanglement.entanglement import lambda_closed, pt_spectrum_closed
from bmv_entanglement.fluctuations import FluctuationSpec
from bmv_entanglement.linalg import hermitian_eigenvalues, partial_transpose
from bmv_entanglement.types import DomainException, FluctuationWarning, InputException, SimPoint


def small_jitter_slope(omega: float, s_t: float) -> float:
    # d(lambda_bar)/dt just after t = s_t^2, up to the factor 1/2
    return 1.0 - omega * math.exp(-(s_t ** 2) * (1.0 + omega ** 2) / 2.0)


@pytest.mark.parametrize('s_t, s_omega', [(-0.1, 0.0), (0.0, math.nan), (0.0, math.inf)])
def test_fluctuation_spec_invalid(s_t, s_omega):
    with pytest.raises(InputException):
        FluctuationSpec(s_t=s_t, s_omega=s_omega)


@pytest.mark.parametrize(
    'spec, point, expected',
    [
        (FluctuationSpec(), SimPoint(2.0, 0.0), (True, True)),
        (FluctuationSpec(0.1, 0.1), SimPoint(2.0, 1.0), (True, True)),
        (FluctuationSpec(0.5, 0.0), SimPoint(2.0, 1.0), (False, True)),
        (FluctuationSpec(0.0, 1.0), SimPoint(2.0, 1.0), (True, False)),
    ],
)
def test_validity_flags(spec, point, expected):
    flags = spec.validity_flags(point)

    assert (flags['small_time_jitter'], flags['small_coupling_jitter']) == expected


def test_lambda_bar_without_jitter(omega_grid, time_grid):
    for omega in omega_grid:
        for t in time_grid:
            point = SimPoint(float(omega), float(t))
            assert fluctuations.lambda_bar(point, FluctuationSpec()) == lambda_closed(point)
            np.testing.assert_allclose(
                fluctuations.pt_spectrum_bar(point, FluctuationSpec()),
                pt_spectrum_closed(point),
                atol=1e-15,
            )


@pytest.mark.parametrize('omega', [0.5, 2.0, 4.0])
@pytest.mark.parametrize('t', [0.2, 0.6, 1.5])
def test_pt_spectrum_bar_matches_numeric(omega, t):
    point = SimPoint(omega, t)
    spec = FluctuationSpec(0.1, 0.2)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', FluctuationWarning)
        state = fluctuations.averaged_state(point, spec).state

    numeric = hermitian_eigenvalues(partial_transpose(state))

    np.testing.assert_allclose(fluctuations.pt_spectrum_bar(point, spec), numeric, atol=1e-12)
    assert np.min(np.abs(numeric - fluctuations.lambda_bar(point, spec))) < 1e-12


def test_averaged_state_domain():
    with pytest.raises(DomainException, match='t > s_t'):
        fluctuations.averaged_state(SimPoint(2.0, 0.25), FluctuationSpec(0.5, 0.0))
    with pytest.raises(DomainException):
        fluctuations.lambda_bar(SimPoint(2.0, 0.01), FluctuationSpec(0.1, 0.0))


def test_averaged_state_warns():
    with pytest.warns(FluctuationWarning, match='small_time_jitter'):
        result = fluctuations.averaged_state(SimPoint(2.0, 1.0), FluctuationSpec(0.5, 0.0))

    assert not result.small_time_jitter
    assert result.small_coupling_jitter
    assert not result.valid
    assert not result.state.strict


def test_averaged_state_coherences():
    point, spec = SimPoint(2.0, 1.0), FluctuationSpec(0.05, 0.1)
    a = np.exp((2j - 1) + 0.5 * 0.05 ** 2 * (2j - 1) ** 2 - 0.5 * 0.1 ** 2)
    b = np.exp(-2.0 + 2 * 0.05 ** 2)

    result = fluctuations.averaged_state(point, spec)

    assert result.valid
    assert result.state.matrix[0, 1] == pytest.approx(a / 4, abs=1e-15)
    assert result.state.matrix[0, 3] == pytest.approx(b / 4, abs=1e-15)


@pytest.mark.parametrize('s_omega', [1.0, 5.0, 10.0])
def test_large_coupling_jitter_destroys_entanglement(s_omega):
    point = SimPoint(2.0, 1.0)

    value = fluctuations.lambda_bar(point, FluctuationSpec(0.0, s_omega))

    assert math.isfinite(value)
    assert value > 0.0


def test_max_time_jitter():
    assert fluctuations.max_time_jitter(math.e) == pytest.approx(2.0 / (1.0 + math.e ** 2))
    assert fluctuations.max_time_jitter(1.0) == 0.0


def test_max_time_jitter_below_threshold():
    with pytest.raises(DomainException):
        fluctuations.max_time_jitter(0.5)


@pytest.mark.parametrize('omega', [1.5, 2.0, 4.0])
def test_max_time_jitter_boundary(omega):
    bound = fluctuations.max_time_jitter(omega)

    inside = FluctuationSpec(s_t=math.sqrt(bound * (1 - 1e-3)))
    outside = FluctuationSpec(s_t=math.sqrt(bound * (1 + 1e-3)))

    assert small_jitter_slope(omega, inside.s_t) < 0.0 < small_jitter_slope(omega, outside.s_t)
    assert fluctuations.min_lambda_bar(omega, inside)[1] < 0.0
    assert fluctuations.min_lambda_bar(omega, outside)[1] > -1e-15


def test_min_lambda_bar_without_jitter():
    t, value = fluctuations.min_lambda_bar(3.0, FluctuationSpec())

    assert value == pytest.approx(lambda_closed(SimPoint(3.0, t)))
    assert value < 0.0


def test_min_lambda_bar_invalid():
    with pytest.raises(InputException):
        fluctuations.min_lambda_bar(2.0, FluctuationSpec(s_t=3.0), t_max=5.0)


def test_monte_carlo_matches_averaged_state():
    point, spec = SimPoint(2.0, 1.0), FluctuationSpec(0.05, 0.1)

    result = fluctuations.monte_carlo_average(
        point, spec, n_samples=1_000_000, seed=fluctuations.DEFAULT_SEED
    )
    expected = fluctuations.averaged_state(point, spec).state.matrix

    assert result.clamped == 0
    assert result.n_samples == 1_000_000
    assert np.all(np.abs(result.mean.matrix - expected) <= 5 * result.standard_error + 1e-5)
    np.testing.assert_array_equal(np.diag(result.standard_error), np.zeros(4))
    assert np.all(result.standard_error[~np.eye(4, dtype=bool)] > 0.0)


def test_monte_carlo_deterministic():
    point, spec = SimPoint(2.0, 0.5), FluctuationSpec(0.1, 0.2)

    first = fluctuations.monte_carlo_average(point, spec, 1000, seed=7)
    second = fluctuations.monte_carlo_average(point, spec, 1000, seed=7)
    other = fluctuations.monte_carlo_average(point, spec, 1000, seed=8)

    assert first.mean == second.mean
    np.testing.assert_array_equal(first.standard_error, second.standard_error)
    assert first.mean != other.mean
    assert first.to_dict() == {'n_samples': 1000, 'clamped': 0, 'seed': 7}


def test_monte_carlo_chunking(monkeypatch):
    point, spec = SimPoint(2.0, 0.5), FluctuationSpec(0.1, 0.2)
    whole = fluctuations.monte_carlo_average(point, spec, 1000, seed=3)

    monkeypatch.setattr(fluctuations, 'MONTE_CARLO_CHUNK', 7)
    chunked = fluctuations.monte_carlo_average(point, spec, 1000, seed=3)

    np.testing.assert_allclose(chunked.mean.matrix, whole.mean.matrix, rtol=0, atol=1e-14)


def test_monte_carlo_clamps_negative_times():
    result = fluctuations.monte_carlo_average(
        SimPoint(2.0, 0.01), FluctuationSpec(0.05, 0.0), 10000, seed=1
    )

    assert 0 < result.clamped < 10000
    assert result.mean.is_positive


def test_monte_carlo_without_jitter():
    point = SimPoint(2.0, 0.5)

    result = fluctuations.monte_carlo_average(point, FluctuationSpec(), 10, seed=0)

    np.testing.assert_allclose(
        result.mean.matrix, fluctuations.averaged_state(point, FluctuationSpec()).state.matrix
    )
    np.testing.assert_array_equal(result.standard_error, np.zeros((4, 4)))


@pytest.mark.parametrize(
    'n_samples, seed', [(0, 1), (1.5, 1), (True, 1), (10, -1), (10, 2.0)]
)
def test_monte_carlo_invalid(n_samples, seed):
    with pytest.raises(InputException):
        fluctuations.monte_carlo_average(SimPoint(2.0, 0.5), FluctuationSpec(), n_samples, seed)


@pytest.mark.parametrize('s_omega', [0.0, 1.0, 10.0])
def test_coupling_jitter_keeps_threshold(s_omega):
    spec = FluctuationSpec(0.0, s_omega)

    assert fluctuations.min_lambda_bar(1.1, spec)[1] < 0.0
    assert fluctuations.min_lambda_bar(0.9, spec)[1] >= 0.0


def test_lambda_bar_monotone_in_coupling_jitter():
    point = SimPoint(3.0, 0.4)
    values = [
        fluctuations.lambda_bar(point, FluctuationSpec(0.1, s_omega))
        for s_omega in (0.0, 0.1, 0.5, 2.0)
    ]

    assert all(later >= earlier for earlier, later in zip(values, values[1:]))
