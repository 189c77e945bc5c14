import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmorse.coherent import (
    CoherentState,
    SingularSampleError,
    UnsupportedChartError,
    coherent_from_morse,
    coherent_from_phase_space,
    evolve,
    mean_morse_trajectory,
    observables,
)
from gmorse.durumap import build_chart, morse_direct_in_t, morse_period, phase_point_at, radial_period
from gmorse.potential import MorseParams


@pytest.fixture
def unit_chart():
    # v1 = m alpha**2 / 8 gives Omega = 1; m = hbar = 1
    return build_chart(MorseParams(1 / 8, 1, 1, 1.0, 1.0))


def test_unit_chart(unit_chart):
    assert unit_chart.omega == 1


def test_from_phase_space(unit_chart):
    assert coherent_from_phase_space(0, 0, unit_chart) == 0
    assert coherent_from_phase_space(math.sqrt(2), 0, unit_chart) == pytest.approx(1, abs=1e-15)
    assert coherent_from_phase_space(0, math.sqrt(2), unit_chart) == pytest.approx(1j, abs=1e-15)


def test_observables_invert_construction(unit_chart):
    u, v = observables(CoherentState(1, 0, unit_chart))
    assert u.mean_q == pytest.approx(math.sqrt(2))
    assert u.mean_p == 0
    assert v.mean_q == v.mean_p == 0


@given(q=st.floats(-5, 5), p=st.floats(-5, 5), m=st.floats(0.2, 5), v1=st.floats(0.1, 5))
def test_phase_space_roundtrip(q, p, m, v1):
    chart = build_chart(MorseParams(v1, 1, 1, m, 1.0))
    a = coherent_from_phase_space(q, p, chart)
    obs = observables(CoherentState(a, 0, chart))[0]
    assert obs.mean_q == pytest.approx(q, abs=1e-12)
    assert obs.mean_p == pytest.approx(p, abs=1e-12)


def test_vacuum_fixed(unit_chart):
    st0 = CoherentState(0, 0, unit_chart)
    for ds in (0.1, 3.0, -7.0):
        assert evolve(st0, ds).a_u == 0


def test_full_period(bench):
    chart = build_chart(bench)
    st0 = CoherentState(0.6 - 0.8j, 0.3j, chart)
    st1 = evolve(st0, 2 * math.pi / chart.omega.real)
    assert abs(st1.a_u - st0.a_u) < 1e-15
    assert abs(st1.a_v - st0.a_v) < 1e-15


def test_modulus_drift(bench):
    st = CoherentState(0.6 - 0.8j, 0.5 + 0.1j, build_chart(bench))
    m0u, m0v = abs(st.a_u), abs(st.a_v)
    worst = 0.0
    for _ in range(10_000):
        st = evolve(st, 1e-3)
        worst = max(worst, abs(abs(st.a_u) - m0u), abs(abs(st.a_v) - m0v))
    assert worst < 1e-12
    assert st.s == pytest.approx(10.0)


@given(s1=st.floats(-10, 10), s2=st.floats(-10, 10))
def test_composition(s1, s2):
    chart = build_chart(MorseParams(1, 2, 1, 0.5, 1))
    st0 = CoherentState(0.7 + 0.2j, -0.4 + 0.9j, chart)
    a = evolve(evolve(st0, s1), s2)
    b = evolve(st0, s1 + s2)
    assert abs(a.a_u - b.a_u) < 1e-14 * max(1, abs(chart.omega) * (abs(s1) + abs(s2)))
    assert abs(a.a_v - b.a_v) < 1e-14 * max(1, abs(chart.omega) * (abs(s1) + abs(s2)))


def test_minimum_uncertainty_and_non_dispersion(bench):
    chart = build_chart(bench)
    st = CoherentState(1.2 - 0.3j, 0.4j, chart)
    ref = observables(st)
    for _ in range(200):
        st = evolve(st, 0.0137)
        for o, r in zip(observables(st), ref):
            assert abs(o.dq * o.dp - bench.hbar / 2) < 1e-15
            assert o.dq == r.dq and o.dp == r.dp


def test_complex_chart_evolves_but_has_no_observables(pt_case):
    chart = build_chart(pt_case)
    st = CoherentState(0.5, 0.5j, chart)
    moved = evolve(st, 0.3)
    assert moved.a_u == pytest.approx(0.5 * np.exp(-1j * chart.omega * 0.3))
    with pytest.raises(UnsupportedChartError):
        observables(moved)
    with pytest.raises(UnsupportedChartError):
        coherent_from_phase_space(1, 0, chart)


def test_invalid_state(bench):
    with pytest.raises(ValueError):
        CoherentState(complex("nan"), 0, build_chart(bench))


def test_circular_orbit_constant_x(bench):
    chart = build_chart(bench)
    r = 0.8
    st = CoherentState(r, 1j * r, chart)
    s = np.linspace(0, 5, 501)
    traj = mean_morse_trajectory(st, s, bench)
    assert np.ptp(traj.x_mean) < 1e-13
    rho2 = 2 * bench.hbar / (bench.mass * chart.omega.real) * r * r
    slope = 4 / bench.alpha.real ** 2 / rho2
    np.testing.assert_allclose(traj.t, slope * s, rtol=1e-12, atol=1e-14)
    assert traj.mapping == "classical"


def test_singular_mean_orbit(bench):
    st = CoherentState(1.0, 0, build_chart(bench))
    w = build_chart(bench).omega.real
    s = np.linspace(0, math.pi / w, 201)  # passes u = 0 at s = pi/(2 w)
    with pytest.raises(SingularSampleError) as err:
        mean_morse_trajectory(st, s, bench)
    assert err.value.s == pytest.approx(math.pi / (2 * w))


def test_displaced_state_follows_classical_morse(bench):
    pt = phase_point_at(bench, -0.2, 0.3)
    st = coherent_from_morse(bench, pt.x, pt.px)
    s = np.linspace(0, radial_period(bench), 2001)
    traj = mean_morse_trajectory(st, s, bench)
    assert traj.t[-1] == pytest.approx(morse_period(bench, -0.2), rel=1e-6)
    x_direct, _ = morse_direct_in_t(bench, pt.x, pt.px, traj.t)
    rel = np.abs(traj.x_mean - x_direct) / np.max(np.abs(x_direct))
    assert rel.max() < 1e-3
    # turning points of the bound orbit
    lo, hi = traj.x_mean.min(), traj.x_mean.max()
    assert lo < pt.x < hi


def test_mean_trajectory_csv(bench):
    st = CoherentState(0.8, 0.8j, build_chart(bench))
    traj = mean_morse_trajectory(st, np.linspace(0, 1, 4), bench)
    buf = io.StringIO()
    traj.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "s,t,x_mean,re_au,im_au,re_av,im_av"
    assert len(lines) == 5
