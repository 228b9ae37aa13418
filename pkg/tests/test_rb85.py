import numpy as np
import pytest

from clams.level_system import SystemParams
from clams.liouvillian import build_generator, cascaded_lambda_graph, steady_state
from clams.rb85 import (
    DEFAULT_GAMMA_MHZ,
    DEFAULT_RABI_FRACTION,
    EXCITED_M,
    F_EXCITED,
    F_GROUND,
    GROUND_M,
    N_GROUND,
    N_STATES,
    DriveField,
    ZeemanManifold,
    build_full_model,
    build_truncated_13,
    cg_coefficient,
    cg_weight,
    ground_block,
)
from clams.spectrum import coherence_peaks
from clams.units import angular_to_mhz, mhz_to_angular


def default_model(rabi_fraction=DEFAULT_RABI_FRACTION, line_detuning=0.0, offset_on="sigma+",
                  splitting=None):
    gamma = mhz_to_angular(DEFAULT_GAMMA_MHZ)
    gamma_prime = mhz_to_angular(0.2)
    dws = mhz_to_angular(2.34)
    if splitting is None:
        splitting = dws
    rabi = rabi_fraction * gamma
    drives = (
        DriveField("sigma+", rabi, line_detuning, dws if offset_on == "sigma+" else 0.0),
        DriveField("pi", rabi, line_detuning, dws if offset_on == "pi" else 0.0),
    )
    graph = build_full_model(
        ZeemanManifold(F_GROUND, splitting),
        ZeemanManifold(F_EXCITED, splitting),
        drives,
        gamma,
        gamma_prime,
    )
    return graph, dws


def test_stretched_transition_weight_is_one():
    assert cg_weight(F_GROUND, 3, +1, F_EXCITED, 4) == 1.0


def test_delta_m_beyond_one_vanishes():
    for m_g in GROUND_M:
        for m_e in EXCITED_M:
            if abs(m_e - m_g) > 1:
                assert all(
                    cg_weight(F_GROUND, m_g, q, F_EXCITED, m_e) == 0.0 for q in (-1, 0, 1)
                )


def test_branching_completeness():
    for m_e in EXCITED_M:
        total = sum(
            cg_weight(F_GROUND, m_g, m_e - m_g, F_EXCITED, m_e)
            for m_g in GROUND_M
            if abs(m_e - m_g) <= 1
        )
        assert abs(total - 1.0) <= 1e-12


def test_cg_invalid_quantum_numbers():
    with pytest.raises(ValueError):
        cg_coefficient(3, 4, 1, 0, 4, 4)
    with pytest.raises(ValueError):
        cg_weight(F_GROUND, 0, 2, F_EXCITED, 2)


def test_graph_respects_selection_rules():
    graph, _ = default_model()
    h = graph.hamiltonian
    for gi, m_g in enumerate(GROUND_M):
        for ei, m_e in enumerate(EXCITED_M):
            coupling = h[N_GROUND + ei, gi]
            if m_e - m_g not in (0, +1):  # only pi and sigma+ drives present
                assert coupling == 0.0
    for src, tgt, _rate in graph.population_decays:
        if src >= N_GROUND:  # spontaneous decay channel
            m_e = EXCITED_M[src - N_GROUND]
            m_g = GROUND_M[tgt]
            assert abs(m_e - m_g) <= 1


def test_branching_rates_sum_to_gamma():
    graph, _ = default_model()
    gamma = mhz_to_angular(DEFAULT_GAMMA_MHZ)
    for ei in range(N_GROUND, N_STATES):
        total = sum(rate for src, _tgt, rate in graph.population_decays if src == ei)
        assert total == pytest.approx(gamma, rel=1e-12)


def test_drives_off_gives_uniform_ground():
    graph, dws = default_model(rabi_fraction=0.0)
    rho = steady_state(build_generator(graph))
    pops = rho.populations
    assert np.allclose(pops[:N_GROUND], 1.0 / N_GROUND, atol=1e-10)
    assert np.allclose(pops[N_GROUND:], 0.0, atol=1e-12)


def test_hopping_scale_at_operating_point():
    gamma = mhz_to_angular(DEFAULT_GAMMA_MHZ)
    rabi = DEFAULT_RABI_FRACTION * gamma
    j_hop_khz = 1e3 * angular_to_mhz(rabi**2 / gamma)
    assert j_hop_khz == pytest.approx(121.6, rel=1e-12)


def test_full_model_steady_state_is_valid():
    graph, dws = default_model()
    rho = steady_state(build_generator(graph))
    rho.validate()
    peaks = coherence_peaks(ground_block(rho), dws, labels=GROUND_M)
    assert [p.n for p in peaks.peaks] == list(range(1, 7))
    weights = [p.weight for p in peaks.peaks]
    assert all(np.diff(weights) < 0)  # monotonically decreasing harmonics


def test_offset_branch_swap_is_equivalent_at_resonance():
    # moving the tone offset to the pi branch while flipping the Zeeman ladder
    # (and keeping both tones on their resonances) yields the same rotating
    # frame problem, hence identical peak weights
    dws = mhz_to_angular(2.34)
    graph_a, _ = default_model()
    gamma = mhz_to_angular(DEFAULT_GAMMA_MHZ)
    rabi = DEFAULT_RABI_FRACTION * gamma
    drives_b = (
        DriveField("sigma+", rabi, dws, 0.0),
        DriveField("pi", rabi, dws, dws),
    )
    graph_b = build_full_model(
        ZeemanManifold(F_GROUND, -dws),
        ZeemanManifold(F_EXCITED, -dws),
        drives_b,
        gamma,
        mhz_to_angular(0.2),
    )
    assert np.allclose(graph_a.hamiltonian, graph_b.hamiltonian, atol=1e-12)
    rho_a = steady_state(build_generator(graph_a))
    rho_b = steady_state(build_generator(graph_b))
    peaks_a = coherence_peaks(ground_block(rho_a), dws)
    peaks_b = coherence_peaks(ground_block(rho_b), dws)
    for pa, pb in zip(peaks_a.peaks, peaks_b.peaks):
        assert pa.weight == pytest.approx(pb.weight, rel=1e-12, abs=1e-300)


def test_drive_validation():
    gamma = mhz_to_angular(DEFAULT_GAMMA_MHZ)
    dws = mhz_to_angular(2.34)
    g3 = ZeemanManifold(F_GROUND, dws)
    e4 = ZeemanManifold(F_EXCITED, dws)
    with pytest.raises(ValueError, match="distinct"):
        build_full_model(g3, e4, (DriveField("pi", 1.0), DriveField("pi", 1.0, 0, dws)), gamma, 1.0)
    with pytest.raises(ValueError, match="sigma\\+ and"):
        build_full_model(
            g3, e4, (DriveField("sigma-", 1.0, 0, dws), DriveField("pi", 1.0)), gamma, 1.0
        )
    with pytest.raises(ValueError, match="offset"):
        build_full_model(g3, e4, (DriveField("sigma+", 1.0), DriveField("pi", 1.0)), gamma, 1.0)
    with pytest.raises(ValueError, match="offset"):
        build_full_model(
            g3, e4,
            (DriveField("sigma+", 1.0, 0, dws), DriveField("pi", 1.0, 0, -dws)),
            gamma, 1.0,
        )
    with pytest.raises(ValueError, match="polarization"):
        DriveField("sigma", 1.0)


def test_truncated_13_matches_generic_chain():
    gamma = mhz_to_angular(DEFAULT_GAMMA_MHZ)
    params = SystemParams(
        n_levels=13,
        rabi=DEFAULT_RABI_FRACTION * gamma,
        gamma=gamma,
        gamma_prime=mhz_to_angular(0.2),
        detunings=(0.0,) * 12,
        delta_omega_s=mhz_to_angular(2.34),
    )
    graph = build_truncated_13(params)
    generic = cascaded_lambda_graph(params)
    assert np.array_equal(graph.hamiltonian, generic.hamiltonian)
    assert graph.population_decays == generic.population_decays

    with pytest.raises(ValueError, match="13"):
        bad = SystemParams(7, 1.0, gamma, 1.0, (0.0,) * 6, 1.0)
        build_truncated_13(bad)


def test_truncated_13_uniform_ground_populations():
    params = SystemParams(
        n_levels=13,
        rabi=1e-5,
        gamma=1.0,
        gamma_prime=1e-10,
        detunings=(0.0,) * 12,
        delta_omega_s=1.0,
    )
    rho = steady_state(build_generator(build_truncated_13(params)))
    pops = rho.populations[0::2]
    assert np.allclose(pops, 1.0 / 7.0, atol=1e-8)


def test_ground_block_shape_and_error():
    graph, _ = default_model()
    rho = steady_state(build_generator(graph))
    assert ground_block(rho).shape == (N_GROUND, N_GROUND)
    with pytest.raises(ValueError):
        ground_block(np.eye(4))


def test_zeeman_manifold_m_values():
    assert ZeemanManifold(F_GROUND, 1.0).m_values == tuple(range(-3, 4))
    assert ZeemanManifold(F_EXCITED, -1.0).m_values == tuple(range(-4, 5))
    with pytest.raises(ValueError):
        ZeemanManifold(2, 1.0)
