"""Seeded random-grid comparison of the closed-form maps against the dense circuits."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import oracle
from .noise import NoiseModel
from .purification import dejmps_noisy
from .states import GraphDiagonalState
from .swapping import connect_noisy

GRID = (1.0, 0.99, 0.9)
TOL = 1e-12


@dataclass
class MapCheck:
    name: str
    cases: int = 0
    max_deviation: float = 0.0
    worst_case: int = -1

    def record(self, case, dev):
        self.cases += 1
        if dev > self.max_deviation:
            self.max_deviation, self.worst_case = dev, case


def random_state(rng):
    coeffs = rng.dirichlet(np.ones(4))
    return GraphDiagonalState(coeffs, tuple(int(b) for b in rng.integers(0, 2, size=2)))


def case_inputs(seed, case):
    """Inputs of case ``case``; each case has its own stream so any case can be replayed alone."""
    rng = np.random.default_rng([seed, case])
    p, eta = list(itertools.product(GRID, GRID))[case % 9]
    return random_state(rng), random_state(rng), NoiseModel(p, eta), tuple(int(b) for b in rng.integers(0, 2, 2))


def equivalence_report(seed=0, cases=1000):
    """Run ``cases`` random cases through both routes.

    Checks, per case: the accepted-class diagonal and probability of one
    purification round, that the accepted and rejected class probabilities
    add to one, and the diagonal of a swap with a random outcome.
    Deviations are absolute and compared in the unshifted graph basis.

    Returns
    -------
    list of MapCheck
    """
    dejmps = MapCheck("dejmps_noisy")
    prob = MapCheck("success_probability")
    total = MapCheck("class_probability_sum")
    connect = MapCheck("connect_noisy")
    for case in range(cases):
        a, b, m, outcome = case_inputs(seed, case)

        r = dejmps_noisy(a, b, m)
        rho, N = oracle.dm_dejmps_class(a, b, m, accepted=True)
        _, N_rej = oracle.dm_dejmps_class(a, b, m, accepted=False)
        dejmps.record(case, _diag_dev(r.state, rho))
        prob.record(case, abs(r.success_prob - N))
        total.record(case, abs(N + N_rej - 1.0))

        c = connect_noisy(a, b, outcome, m).state
        rho_c, _ = oracle.dm_connect(oracle.dense_from_graph_diagonal(a), oracle.dense_from_graph_diagonal(b), m, outcome)
        connect.record(case, _diag_dev(c, rho_c))
    return [dejmps, prob, total, connect]


def _diag_dev(state, rho):
    return float(np.max(np.abs(oracle.graph_diagonal(oracle.dense_from_graph_diagonal(state)) - oracle.graph_diagonal(rho))))
