import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from squeezering import (
    Dissipator,
    FockOperator,
    FockSpace,
    ParameterError,
    SolverError,
    build_liouvillian,
    destroy,
    fock_dm,
    number,
    steady_state,
    time_evolve,
)


def _zero_h(space):
    return FockOperator(space, np.zeros((space.total_dim,) * 2))


def _squeezed_bath_dissipators(space, kappa, r, theta=0.0):
    o = math.sqrt(kappa) * destroy(space, 0)
    n = math.sinh(r) ** 2
    m = np.exp(1j * theta) * math.cosh(r) * math.sinh(r)
    return [
        Dissipator(o),
        Dissipator(o, "standard", n),
        Dissipator(o, "conjugate-standard", n),
        Dissipator(o, "anomalous", -m),
        Dissipator(o, "anomalous-conjugate", -np.conj(m)),
    ]


def test_dissipator_validation():
    space = FockSpace((3,), ("m",))
    a = destroy(space, 0)
    with pytest.raises(ParameterError):
        Dissipator(a, "bogus")
    with pytest.raises(ParameterError):
        Dissipator(a, "standard", -0.5)
    with pytest.raises(ParameterError):
        Dissipator(a, "conjugate-standard", 1.0 + 0.5j)
    Dissipator(a, "anomalous", -0.3 + 0.7j)  # complex anomalous weight is fine


def test_build_rejects_non_hermitian_h():
    space = FockSpace((3,), ("m",))
    with pytest.raises(ParameterError):
        build_liouvillian(destroy(space, 0), [])


def test_build_rejects_mismatched_spaces():
    s1 = FockSpace((3,), ("m",))
    s2 = FockSpace((4,), ("m",))
    with pytest.raises(ParameterError):
        build_liouvillian(_zero_h(s1), [Dissipator(destroy(s2, 0))])


def test_rate_convention_intensity_decay():
    # collapse sqrt(kappa) a must give <n(t)> = exp(-2 kappa t)
    kappa = 0.7
    space = FockSpace((4,), ("m",))
    L = build_liouvillian(_zero_h(space), [Dissipator(math.sqrt(kappa) * destroy(space, 0))])
    t = np.linspace(0.0, 2.0, 9)
    states = time_evolve(L, fock_dm(space, (1,)), t, rtol=1e-11, atol=1e-13)
    n_t = np.array([s.expect(number(space, 0)).real for s in states])
    rate = np.polyfit(t, np.log(n_t), 1)[0]
    assert abs(-rate - 2 * kappa) / (2 * kappa) < 1e-6


def test_exponential_decay_endpoint():
    space = FockSpace((4,), ("m",))
    L = build_liouvillian(_zero_h(space), [Dissipator(destroy(space, 0))])
    states = time_evolve(L, fock_dm(space, (1,)), [0.0, 5.0], rtol=1e-12, atol=1e-14)
    n_end = states[-1].expect(number(space, 0)).real
    assert n_end == pytest.approx(math.exp(-10.0), abs=1e-8)


def test_generator_trace_preservation(rng):
    # all four dissipator kinds plus a drive, 1000 random Hermitian matrices
    space = FockSpace((3, 2), ("a", "b"))
    a, b = destroy(space, 0), destroy(space, 1)
    h = 0.8 * (a.dag() @ a) + 0.5 * (a.dag() @ b + b.dag() @ a) \
        + 1j * 0.4 * (a.dag() - a)
    L = build_liouvillian(h, [Dissipator(a)] + _squeezed_bath_dissipators(space, 0.9, 0.6, 0.3))
    d = space.total_dim
    tr_idx = np.arange(d) * (d + 1)
    for _ in range(1000):
        m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        m = m + m.conj().T
        out = L.static @ m.reshape(-1, order="F")
        assert abs(out[tr_idx].sum()) <= 1e-10 * np.linalg.norm(m)


def test_vacuum_is_dark_state_of_lossy_mode():
    space = FockSpace((4,), ("m",))
    L = build_liouvillian(_zero_h(space), [Dissipator(destroy(space, 0))])
    vac = np.zeros((4, 4), dtype=complex)
    vac[0, 0] = 1.0
    assert np.linalg.norm(L.static @ vac.reshape(-1, order="F")) == 0.0


def test_steady_state_undriven_is_vacuum():
    space = FockSpace((5,), ("m",))
    L = build_liouvillian(_zero_h(space), [Dissipator(destroy(space, 0))])
    rho = steady_state(L)
    assert rho.matrix[0, 0].real == pytest.approx(1.0, abs=1e-12)


def test_steady_state_driven_cavity_closed_form():
    kappa_a, kex1, delta, alpha = 1.0, 0.7, 0.9, 0.35
    space = FockSpace((18,), ("a",))
    a = destroy(space, 0)
    h = delta * (a.dag() @ a) + 1j * math.sqrt(2 * kex1) * (alpha * a.dag() - alpha * a)
    L = build_liouvillian(h, [Dissipator(math.sqrt(kappa_a) * a)])
    rho = steady_state(L)
    expected = math.sqrt(2 * kex1) * alpha / (1j * delta + kappa_a)
    assert rho.expect(a) == pytest.approx(expected, abs=1e-10)


def test_steady_state_squeezed_bath_occupation():
    # pump-noise generator alone thermalizes the mode to sinh^2(r)
    r, theta = 0.6, 0.4
    space = FockSpace((40,), ("b",))
    L = build_liouvillian(_zero_h(space), _squeezed_bath_dissipators(space, 1.0, r, theta))
    rho = steady_state(L)
    b = destroy(space, 0)
    assert rho.expect(number(space, 0)).real == pytest.approx(math.sinh(r) ** 2, abs=1e-8)
    # anomalous moment of the squeezed vacuum
    m_p = np.exp(1j * theta) * math.cosh(r) * math.sinh(r)
    assert rho.expect(b @ b) == pytest.approx(np.conj(m_p), abs=1e-8)


def test_steady_state_rejects_degenerate_null_space():
    # two-photon loss leaves the {|0>, |1>} block dark: no unique steady state
    space = FockSpace((6,), ("m",))
    a = destroy(space, 0)
    L = build_liouvillian(_zero_h(space), [Dissipator(a @ a)])
    with pytest.raises(SolverError):
        steady_state(L)


def test_steady_state_rejects_zero_generator():
    space = FockSpace((3,), ("m",))
    with pytest.raises(SolverError):
        steady_state(build_liouvillian(_zero_h(space), []))


def test_time_evolve_identity_for_zero_generator():
    space = FockSpace((3,), ("m",))
    L = build_liouvillian(_zero_h(space), [])
    rho0 = fock_dm(space, (2,))
    states = time_evolve(L, rho0, [0.0, 1.0, 3.0])
    for s in states:
        assert_allclose(s.matrix, rho0.matrix, atol=1e-12)


def test_time_evolve_rabi_exchange():
    j = 0.8
    space = FockSpace((2, 2), ("a", "b"))
    a, b = destroy(space, 0), destroy(space, 1)
    h = j * (a.dag() @ b + b.dag() @ a)
    L = build_liouvillian(h, [])
    t_half = math.pi / (2 * j)
    states = time_evolve(L, fock_dm(space, (1, 0)), [0.0, t_half], rtol=1e-11, atol=1e-13)
    assert states[-1].expect(number(space, 1)).real == pytest.approx(1.0, abs=1e-9)
    assert states[-1].expect(number(space, 0)).real == pytest.approx(0.0, abs=1e-9)


def test_time_evolve_rejects_bad_grid():
    space = FockSpace((3,), ("m",))
    L = build_liouvillian(_zero_h(space), [Dissipator(destroy(space, 0))])
    with pytest.raises(ParameterError):
        time_evolve(L, fock_dm(space, (0,)), [0.0, 1.0, 1.0])


def test_time_dependent_parts_enter_generator():
    import scipy.sparse as sp

    from squeezering.liouville import Liouvillian, dissipator_superop

    space = FockSpace((4,), ("m",))
    part = sp.csr_matrix(dissipator_superop(Dissipator(destroy(space, 0))))
    base = build_liouvillian(_zero_h(space), [])
    L = Liouvillian(space, base.static, ((lambda t: 0.5 * t, part),))
    with pytest.raises(ParameterError):
        steady_state(L)
    # accumulated decay exp(-2 integral 0.5 t dt) = exp(-t^2/2)
    states = time_evolve(L, fock_dm(space, (1,)), [0.0, 2.0], rtol=1e-11, atol=1e-13)
    assert states[-1].expect(number(space, 0)).real == pytest.approx(math.exp(-4.0 / 2), abs=1e-8)
