import math

import numpy as np
import pytest

from bmv_entanglement import entanglement
from bmv_entanglement.dynamics import evolve_closed
from bmv_entanglement.linalg import hermitian_eigenvalues, partial_transpose
from bmv_entanglement.types import DomainException, InputException, SimPoint


def test_pt_spectrum_matches_numeric(omega_grid, time_grid):
    for omega in omega_grid:
        for t in time_grid:
            point = SimPoint(float(omega), float(t))
            numeric = hermitian_eigenvalues(partial_transpose(evolve_closed(point)))
            np.testing.assert_allclose(
                entanglement.pt_spectrum_closed(point), numeric, atol=1e-12
            )


def test_lambda_numeric_matches_closed(dense_points):
    for point in dense_points:
        report = entanglement.lambda_numeric(evolve_closed(point))
        closed = entanglement.lambda_closed(point)
        spectrum = entanglement.pt_spectrum_closed(point)

        assert report.lambda_min == pytest.approx(spectrum[0], abs=1e-12)
        # The tracked branch is always in the spectrum, and is its minimum when negative
        assert np.min(np.abs(spectrum - closed)) < 1e-12
        if closed <= 0.0:
            assert report.lambda_min == pytest.approx(closed, abs=1e-12)
        assert report.entangled == entanglement.is_entangled(point)
        assert (report.negativity > 0.0) == report.entangled


@pytest.mark.parametrize('t', [0.1, 0.5, 1.0, 3.0])
def test_uncoupled_minimum(t):
    report = entanglement.lambda_numeric(evolve_closed(SimPoint(0.0, t)))

    assert report.lambda_min == pytest.approx((1 - math.exp(-t)) ** 2 / 4, abs=1e-12)
    assert entanglement.lambda_closed(SimPoint(0.0, t)) >= report.lambda_min
    assert report.negativity == 0.0


@pytest.mark.parametrize('omega', [0.0, 0.5, 0.9, 0.99, 1.0])
def test_weak_coupling_never_entangles(omega):
    values = entanglement.smallest_pt_eigenvalue(omega, np.linspace(0.0, 10.0, 2001))

    assert np.all(values >= -1e-15)


@pytest.mark.parametrize('omega', [1.01, 1.1, 1.5, 3.0, 50.0])
def test_strong_coupling_entangles(omega):
    t0 = entanglement.optimal_time(omega)

    assert entanglement.is_entangled(SimPoint(omega, t0))
    assert entanglement.negativity_closed(SimPoint(omega, t0)) > 0.0


def test_smallest_pt_eigenvalue_even():
    t = np.linspace(0.0, 4.0, 101)

    np.testing.assert_array_equal(
        entanglement.smallest_pt_eigenvalue(-2.5, t), entanglement.smallest_pt_eigenvalue(2.5, t)
    )


def test_negativity_closed():
    point = SimPoint(3.0, 0.3)

    assert entanglement.negativity_closed(point) == pytest.approx(
        -entanglement.lambda_closed(point)
    )
    assert entanglement.negativity_closed(SimPoint(0.5, 0.3)) == 0.0


def test_lambda_numeric_bell(bell_state):
    report = entanglement.lambda_numeric(bell_state)

    assert report.lambda_min == pytest.approx(-0.5)
    assert report.negativity == pytest.approx(0.5)
    assert report.entangled
    assert report.to_dict() == {
        'lambda_min': report.lambda_min,
        'negativity': report.negativity,
        'entangled': True,
    }


def test_lambda_numeric_invalid():
    with pytest.raises(InputException):
        entanglement.lambda_numeric(np.eye(4))


@pytest.mark.parametrize('omega', [1.2, 1.8, 3.0, 7.5, 100.0])
def test_optimal_time_stationary(omega):
    t0 = entanglement.optimal_time(omega)

    assert 0.0 < t0 < math.pi / omega
    assert math.exp(-t0) + math.sin(omega * t0) - omega * math.cos(omega * t0) == pytest.approx(
        0.0, abs=1e-9
    )
    h = 1e-6 / omega
    assert entanglement.lambda_closed(SimPoint(omega, t0)) <= entanglement.lambda_closed(
        SimPoint(omega, t0 + h)
    )
    assert entanglement.lambda_closed(SimPoint(omega, t0)) <= entanglement.lambda_closed(
        SimPoint(omega, t0 - h)
    )


def test_optimal_time_strong_coupling():
    assert entanglement.optimal_time(1000.0) == pytest.approx(math.pi / 2000.0, rel=5e-3)


def test_optimal_time_peak():
    omegas = np.linspace(1.0, 3.0, 201)[1:]
    times = np.array([entanglement.optimal_time(omega) for omega in omegas])

    peak = int(np.argmax(times))
    assert times[peak] == pytest.approx(0.4, abs=0.02)
    assert 1.5 < omegas[peak] < 2.1


def test_optimal_time_decays():
    # Toward a quarter period
    assert entanglement.optimal_time(20.0) == pytest.approx(math.pi / 40.0, rel=0.1)


@pytest.mark.parametrize('omega', [0.5, 1.0])
def test_optimal_time_no_entanglement(omega):
    with pytest.raises(DomainException):
        entanglement.optimal_time(omega)


def test_optimal_time_invalid():
    with pytest.raises(InputException):
        entanglement.optimal_time(math.nan)


def test_entanglement_window_weak():
    assert entanglement.entanglement_window(0.5, 5.0) == []


def test_entanglement_window_single():
    intervals = entanglement.entanglement_window(3.0, 4.0)

    assert len(intervals) == 1
    start, end = intervals[0]
    assert start == pytest.approx(0.0, abs=1e-9)
    assert math.sinh(end) == pytest.approx(abs(math.sin(3.0 * end)), abs=1e-8)
    assert start < entanglement.optimal_time(3.0) < end
    assert entanglement.is_entangled(SimPoint(3.0, (start + end) / 2))


def test_entanglement_window_several():
    intervals = entanglement.entanglement_window(10.0, 2.0)

    assert len(intervals) >= 2
    for (_, previous_end), (next_start, _) in zip(intervals, intervals[1:]):
        assert previous_end < next_start
    for start, end in intervals:
        assert entanglement.lambda_closed(SimPoint(10.0, (start + end) / 2)) < 0.0


@pytest.mark.parametrize('omega, t_max', [(-1.0, 1.0), (2.0, 0.0), (2.0, math.inf)])
def test_entanglement_window_invalid(omega, t_max):
    with pytest.raises(InputException):
        entanglement.entanglement_window(omega, t_max)


def test_negativity_on_windows():
    intervals = entanglement.entanglement_window(10.0, 3.0)
    edges = np.array([edge for interval in intervals for edge in interval])

    for t in np.linspace(0.0, 3.0, 3001):
        if np.min(np.abs(edges - t)) < 1e-8:
            continue
        inside = any(start < t < end for start, end in intervals)
        report = entanglement.lambda_numeric(evolve_closed(SimPoint(10.0, float(t))))

        assert (report.negativity > 0.0) == inside


def test_lambda_numeric_product_state():
    report = entanglement.lambda_numeric(evolve_closed(SimPoint(2.0, 0.0)))

    assert report.negativity == 0.0
    assert not report.entangled
