"""Shared helpers for the test suite."""
from __future__ import annotations

import numpy as np

from clams.effective import build_effective_generator, effective_steady_state
from clams.level_system import SystemParams, ground_indices
from clams.liouvillian import CouplingGraph, build_generator, cascaded_lambda_graph, steady_state
from clams.spectrum import coherence_peaks, height_ratios


def chain_params(n_levels, rabi, gamma, gamma_prime, detunings=None, delta_omega_s=1.0):
    if detunings is None:
        detunings = (0.0,) * (n_levels - 1)
    return SystemParams(
        n_levels=n_levels,
        rabi=rabi,
        gamma=gamma,
        gamma_prime=gamma_prime,
        detunings=detunings,
        delta_omega_s=delta_omega_s,
    )


def chain_ground_state(params):
    """Full-chain steady state restricted to the ground manifold."""
    rho = steady_state(build_generator(cascaded_lambda_graph(params)))
    gidx = ground_indices(params.n_levels)
    return rho.matrix[np.ix_(gidx, gidx)]


def chain_height_ratios(params):
    peaks = coherence_peaks(chain_ground_state(params), params.delta_omega_s)
    return height_ratios(peaks)


def effective_ground_state(n_levels, j_hop, gamma_prime, detunings=None):
    gen = build_effective_generator(n_levels, j_hop, gamma_prime, detunings)
    return effective_steady_state(gen).matrix


def effective_height_ratios(n_levels, j_hop, gamma_prime, detunings=None, delta_omega_s=1.0):
    rho = effective_ground_state(n_levels, j_hop, gamma_prime, detunings)
    return height_ratios(coherence_peaks(rho, delta_omega_s))


def random_graph(rng, d=None) -> CouplingGraph:
    """Random connected coupling graph with d <= 7 states.

    A decay ring guarantees every state is reachable, extra random channels
    and a dense random Hermitian Hamiltonian make the steady state unique.
    """
    if d is None:
        d = int(rng.integers(2, 8))
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = 0.5 * (a + a.conj().T)
    chans = [(i, (i + 1) % d, float(rng.uniform(0.5, 2.0))) for i in range(d)]
    for _ in range(int(rng.integers(0, d))):
        src, tgt = rng.choice(d, size=2, replace=False)
        chans.append((int(src), int(tgt), float(rng.uniform(0.5, 2.0))))
    return CouplingGraph(n_states=d, hamiltonian=h, population_decays=tuple(chans))


def hermitian_random(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (a + a.conj().T)
