import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkenergy import Status, classify, compose_steps, preset, taylor_polynomial
from rkenergy.presets import catalog
from rkenergy.verify import (
    InvalidSystemError,
    SemiNegativeSystem,
    counterexample_rk4,
    energy_decay_order,
    h_operator_norm,
    make_random_semi_negative,
    make_upwind_advection,
    stability_sweep,
    step_operator,
    sweep_over,
)

# |P_4(tau L)| - 1 on the counterexample, mpmath at 50 digits
P4_EXCESS = {0.005: 5.84143e-14, 0.01: 1.88675e-12, 0.02: 6.15046e-11, 0.04: 2.04148e-9}


def top_eig_of_form(sys):
    return np.linalg.eigvalsh(sys.dissipation_form).max()


# systems

def test_conserving_rotation_with_identity_weight():
    sys = make_random_semi_negative(2, seed=3, identity_weight=True)
    assert np.allclose(sys.L, -sys.L.T)
    # the exact flow is a rotation
    w, V = np.linalg.eig(sys.L)
    u = np.array([0.3, -1.2])
    flow = (V @ np.diag(np.exp(0.7 * w)) @ np.linalg.inv(V)).real @ u
    assert np.linalg.norm(flow) == pytest.approx(np.linalg.norm(u), rel=1e-12)


def test_dissipative_random_system_is_semi_negative():
    sys = make_random_semi_negative(8, seed=1, dissipation=1.0)
    assert top_eig_of_form(sys) <= 1e-10 * np.linalg.norm(sys.dissipation_form)
    assert not sys.is_conserving()
    assert sys.operator_h_norm() == pytest.approx(1.0, rel=1e-12)


def test_euler_expands_on_dissipative_system():
    sys = make_random_semi_negative(3, seed=7, dissipation=0.5)
    rep = stability_sweep(preset("euler"), sys, 1e-4, 1e-1, 20)
    assert rep.max_stable_tau is None
    assert all(v > 1 for v in rep.h_norms)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**31), st.floats(0, 5))
def test_generated_systems_pass_construction_check(n, seed, dissipation):
    sys = make_random_semi_negative(n, seed, dissipation)
    scale = max(np.linalg.norm(sys.dissipation_form), np.linalg.norm(sys.L) * np.linalg.norm(sys.H))
    assert top_eig_of_form(sys) <= 1e-10 * scale
    np.linalg.cholesky(sys.H)


def test_random_system_argument_checks():
    with pytest.raises(InvalidSystemError):
        make_random_semi_negative(1, 0)
    with pytest.raises(InvalidSystemError):
        make_random_semi_negative(4, 0, dissipation=-1)


def test_rejects_bad_systems():
    with pytest.raises(InvalidSystemError, match="semi-negative"):
        SemiNegativeSystem(np.eye(2), np.eye(2))
    with pytest.raises(InvalidSystemError):
        SemiNegativeSystem(-np.eye(2), -np.eye(2))
    with pytest.raises(InvalidSystemError):
        SemiNegativeSystem(-np.eye(2), np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(InvalidSystemError):
        SemiNegativeSystem(-np.eye(2), np.eye(3))


def test_upwind_structure():
    sys = make_upwind_advection(4)
    K = sys.L.T + sys.L
    assert np.linalg.eigvalsh(K).max() <= 1e-12
    assert sorted(np.round(np.linalg.eigvalsh(K), 10)) == [-16.0, -8.0, -8.0, 0.0]
    assert np.allclose(make_upwind_advection(3).L.sum(axis=1), 0)
    with pytest.raises(InvalidSystemError):
        make_upwind_advection(2)


def test_counterexample_matrix():
    sys = counterexample_rk4()
    assert np.array_equal(sys.L, -np.array([[1, 2, 2], [0, 1, 2], [0, 0, 1]]))
    assert np.array_equal(sys.H, np.eye(3))
    # L + L^T = -2 * ones(3, 3): eigenvalues 0, 0, -6
    assert np.linalg.eigvalsh(sys.L + sys.L.T) == pytest.approx([-6, 0, 0], abs=1e-12)


# norms

def test_norm_at_zero_is_one():
    systems = [counterexample_rk4(), make_upwind_advection(16),
               make_random_semi_negative(6, 2, 1.0)]
    for sys in systems:
        for r in catalog().values():
            assert h_operator_norm(r, sys, 0.0) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        h_operator_norm(taylor_polynomial(1), systems[0], -1.0)


@pytest.mark.parametrize("tau", sorted(P4_EXCESS))
def test_p4_excess_matches_high_precision_oracle(tau):
    got = h_operator_norm(taylor_polynomial(4), counterexample_rk4(), tau) - 1
    assert got == pytest.approx(P4_EXCESS[tau], rel=1e-3)
    assert got > 0


def test_norm_matches_scalar_spectrum_oracle():
    # H = I and skew L: |R(tau L)| = max over the spectrum i w of |R(i tau w)|
    sys = make_random_semi_negative(6, seed=11, identity_weight=True)
    omegas = np.linalg.eigvals(sys.L).imag
    r = taylor_polynomial(3)
    for tau in (0.05, 0.3, 0.9):
        want = max(abs(complex(r(1j * tau * w))) for w in omegas)
        assert h_operator_norm(r, sys, tau) == pytest.approx(want, rel=1e-10)


def test_weighted_norm_matches_generalized_eigenproblem():
    import scipy.linalg

    sys = make_random_semi_negative(5, seed=4, dissipation=0.7)
    r = preset("ssprk(10,4)")
    R = step_operator(r, sys, 0.4)
    # max u^T R^T H R u / u^T H u
    top = scipy.linalg.eigh(R.T @ sys.H @ R, sys.H, eigvals_only=True).max()
    assert h_operator_norm(r, sys, 0.4) == pytest.approx(np.sqrt(top), rel=1e-10)


# sweeps

def test_prop31_sweeps():
    sys = counterexample_rk4()
    one = stability_sweep(taylor_polynomial(4), sys, 1e-4, 1e-1, 40)
    assert one.violations()
    two = stability_sweep(compose_steps(taylor_polynomial(4), 2), sys, 1e-4, 1e-1, 40)
    assert two.max_stable_tau is not None and two.max_stable_tau > 0
    three = stability_sweep(taylor_polynomial(3), sys, 1e-4, 1e-1, 40)
    assert three.max_stable_tau is not None


def test_upwind_taylor3_has_stable_prefix():
    rep = stability_sweep(taylor_polynomial(3), make_upwind_advection(32), 1e-4, 1.0, 60)
    assert rep.max_stable_tau is not None and rep.max_stable_tau > 0
    assert len(rep.tau_grid) == len(rep.h_norms) == 60
    assert all(b > a for a, b in zip(rep.tau_grid, rep.tau_grid[1:]))


def test_upwind_n64_taylor3():
    rep = stability_sweep(taylor_polynomial(3), make_upwind_advection(64), 1e-5, 1e-2, 20)
    assert rep.max_stable_tau is not None and rep.max_stable_tau > 0


def test_taylor5_expands_on_conserving_system():
    # on a grid where tau^6 / 360 clears round-off
    sys = make_random_semi_negative(8, seed=0)
    rep = stability_sweep(taylor_polynomial(5), sys, 0.05, 1.0, 20)
    assert rep.max_stable_tau is None
    assert all(v > 1 + 1e-12 for v in rep.h_norms)


def test_tiny_tau_is_continuous():
    sys = make_random_semi_negative(5, seed=9, dissipation=0.3)
    rep = sweep_over(taylor_polynomial(4), sys, [1e-12, 2e-12])
    assert all(abs(v - 1) < 1e-9 for v in rep.h_norms)


def test_sweep_argument_checks():
    sys = counterexample_rk4()
    r = taylor_polynomial(3)
    for bad in ((0.0, 1.0, 5), (1.0, 0.5, 5), (0.1, 1.0, 1)):
        with pytest.raises(ValueError):
            stability_sweep(r, sys, *bad)
    with pytest.raises(ValueError):
        sweep_over(r, sys, [0.2, 0.1])


def test_sweeps_are_deterministic():
    a = stability_sweep(preset("ssprk(4,3)"), make_random_semi_negative(8, 5, 0.2), 1e-3, 1, 30)
    b = stability_sweep(preset("ssprk(4,3)"), make_random_semi_negative(8, 5, 0.2), 1e-3, 1, 30)
    assert a == b
    assert a.to_dict() == b.to_dict()


def test_not_strongly_stable_presets_expand_on_conserving_systems():
    systems = [make_random_semi_negative(8, seed) for seed in range(3)]
    for name, r in catalog().items():
        if classify(r).status is not Status.NOT_STRONGLY_STABLE:
            continue
        found = any(stability_sweep(r, sys, 1e-2, 1.0, 30).violations(1e-9) for sys in systems)
        assert found, name


def test_strongly_stable_presets_have_stable_prefix():
    systems = [make_random_semi_negative(8, seed, dissipation=float(seed % 3))
               for seed in range(20)]
    systems.append(make_upwind_advection(32))
    stable = [r for r in catalog().values() if classify(r).status is Status.STRONGLY_STABLE]
    assert len(stable) >= 5
    for r in stable:
        for sys in systems:
            tau_max = 1e-1 if sys.label.startswith("random") else 1e-3
            rep = stability_sweep(r, sys, tau_max * 1e-3, tau_max, 12)
            assert rep.max_stable_tau is not None and rep.max_stable_tau > 0, (r.label(), sys.label)


# energy decay

@pytest.mark.parametrize("p, slope, grows", [(1, 1, True), (2, 3, True), (3, 3, False),
                                             (4, 5, False)])
def test_energy_decay_slopes(p, slope, grows):
    fit = energy_decay_order(taylor_polynomial(p), seed=0)
    assert fit.slope == pytest.approx(slope, abs=0.3)
    assert fit.energy_grows is grows
    assert len(fit.taus) == 5


def test_energy_decay_rejects_dissipative_system():
    with pytest.raises(InvalidSystemError):
        energy_decay_order(taylor_polynomial(3), system=make_random_semi_negative(6, 0, 1.0))
    with pytest.raises(ValueError):
        energy_decay_order(taylor_polynomial(3), tau_list=[0.1, 0.05, 0.025])
    with pytest.raises(ValueError):
        energy_decay_order(taylor_polynomial(3), tau_list=[0.3, 0.15, 0.075, 0.0375])


def test_energy_decay_is_deterministic():
    a = energy_decay_order(taylor_polynomial(3), seed=2)
    b = energy_decay_order(taylor_polynomial(3), seed=2)
    assert a == b
