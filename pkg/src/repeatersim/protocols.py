"""Whole-repeater runs: standard (regular purification), Innsbruck (pumping) and blind-topped.

All runners work on one representative pair per level.  Level ``l`` spans
``2**(l-1)`` elementary segments; the pair entering level ``l + 1`` is the
noisy connection of two level-``l`` outputs.  Every purification round is
followed by the wait for its success signal, during which the kept pair
decoheres.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, NumericalError
from .noise import PERFECT_OPS, memory_decohere
from .purification import dejmps_noisy
from .states import GraphDiagonalState, WernerParams
from .swapping import connect_noisy
from .timing import TimeModel

KINDS = ("standard", "innsbruck", "blind_topped")
MAX_STEPS = 6
TIE = 1e-9


@dataclass(frozen=True)
class ProtocolSpec:
    """What to run.

    ``steps_per_level[l-1]`` is the number of purification rounds ``M_l`` on
    level ``l``.  ``base`` selects the runner used below the blind levels of
    a ``blind_topped`` run.
    """

    kind: str = "standard"
    levels: int = 1
    steps_per_level: Tuple[int, ...] = (3,)
    initial: WernerParams = field(default_factory=lambda: WernerParams.from_fidelity(0.8))
    blind_levels: int = 0
    branching: int = 2
    base: str = "innsbruck"

    def __post_init__(self):
        object.__setattr__(self, "steps_per_level", tuple(int(s) for s in self.steps_per_level))
        if self.kind not in KINDS:
            raise DomainError(f"unknown protocol kind {self.kind!r}")
        if self.levels < 1:
            raise DomainError(f"levels must be >= 1, got {self.levels}")
        if len(self.steps_per_level) != self.levels:
            raise DomainError(
                f"steps_per_level has {len(self.steps_per_level)} entries for {self.levels} levels"
            )
        if any(s < 0 for s in self.steps_per_level):
            raise DomainError("step counts must be non-negative")
        if self.branching < 2:
            raise DomainError(f"branching must be >= 2, got {self.branching}")
        if self.branching != 2 and self.kind != "blind_topped":
            raise DomainError("the level runners connect pairs two at a time (branching 2)")
        if not 0 <= self.blind_levels <= self.levels:
            raise DomainError(f"blind_levels must lie in [0, {self.levels}]")
        if self.base not in ("standard", "innsbruck"):
            raise DomainError(f"base runner must be standard or innsbruck, got {self.base!r}")

    @classmethod
    def uniform(cls, kind, levels, steps, F0=0.8, **kw):
        return cls(kind, levels, (steps,) * levels, WernerParams.from_fidelity(F0), **kw)


@dataclass(frozen=True)
class LevelReport:
    level: int
    fidelity: float
    coeffs: np.ndarray
    resources: float
    elapsed: float
    step_success_probs: Tuple[float, ...]


def _report(level, state, resources, elapsed, probs):
    if state.fidelity < 0.25:
        raise NumericalError(f"fidelity {state.fidelity} below 1/4 on level {level}")
    return LevelReport(level, state.fidelity, state.coeffs.copy(), float(resources), float(elapsed), tuple(probs))


def run_standard(spec, tm=None, m=PERFECT_OPS):
    """Regular purification on every level, then pairwise connection.

    Resources follow the doubling count: each round needs two pairs and
    succeeds with probability ``p_i``, so level ``l`` costs
    ``2**(M_1 + ... + M_l) / prod p_i``.  Elapsed time is the sum of the
    signal waits, ``sum_l M_l * 2**(l-1) * t0``.
    """
    tm = tm or TimeModel()
    s = spec.initial.state()
    log_res, elapsed, out = 0.0, 0.0, []
    for level, steps in enumerate(spec.steps_per_level, start=1):
        if level > 1:
            s = connect_noisy(s, s, m=m).state
        wait = tm.signal_time(level) + tm.gate_time
        probs = []
        for _ in range(steps):
            r = dejmps_noisy(s, s, m)
            s = memory_decohere(r.state, wait, m)
            probs.append(r.success_prob)
            log_res += math.log(2.0) - math.log(r.success_prob)
            elapsed += wait
        out.append(_report(level, s, math.exp(log_res), elapsed, probs))
    return out


def _pump_level(fresh, steps, t_fresh, signal, m):
    """Pump ``fresh`` with copies of itself; returns (state, probs, production time)."""
    s, probs = fresh, []
    produced = t_fresh
    for _ in range(steps):
        s = memory_decohere(s, t_fresh, m)  # wait for the next partner to be built
        r = dejmps_noisy(s, fresh, m)
        s = memory_decohere(r.state, signal, m)  # then for the success signal
        probs.append(r.success_prob)
        produced += (t_fresh + signal) / r.success_prob
    return s, probs, produced


class _InnsbruckLevel:
    """State of an Innsbruck run after some level; used by the runner and the optimizer."""

    __slots__ = ("level", "state", "probs", "t_fresh", "resources", "elapsed")

    def __init__(self, level, state, probs, t_fresh, resources, elapsed):
        self.level, self.state, self.probs = level, state, probs
        self.t_fresh, self.resources, self.elapsed = t_fresh, resources, elapsed


def _innsbruck_next(prev, steps, tm, m, elementary=None):
    """Advance one level.  ``prev=None`` starts at level 1 from ``elementary``."""
    if prev is None:
        level, fresh, t_fresh, r_fresh = 1, elementary, tm.t0, 1.0
    else:
        level = prev.level + 1
        s_prev = tm.signal_time(prev.level) + tm.gate_time
        fresh = connect_noisy(prev.state, prev.state, m=m).state
        t_fresh = sum((prev.t_fresh + s_prev) / p for p in prev.probs) + s_prev
        r_fresh = 2.0 * prev.resources
    signal = tm.signal_time(level) + tm.gate_time
    state, probs, produced = _pump_level(fresh, steps, t_fresh, signal, m)
    resources = r_fresh * (1.0 + sum(1.0 / p for p in probs))
    return _InnsbruckLevel(level, state, tuple(probs), t_fresh, resources, produced)


def run_innsbruck(spec, tm=None, m=PERFECT_OPS):
    """Entanglement pumping with ``M_l`` rounds on level ``l``.

    Before each round the stored pair waits ``T_fresh(l)`` for the partner
    to be built, and after it ``2**(l-1) * t0`` for the success signal
    (the two waits are added, not overlapped).  Failed rounds are accounted
    as independent geometric restarts: round ``i`` costs
    ``(T_fresh + signal) / p_i`` on average.  ``elapsed`` is the expected
    time to deliver one level-``l`` pair, ``resources`` the expected number
    of elementary pairs consumed.
    """
    tm = tm or TimeModel()
    cur, out = None, []
    for steps in spec.steps_per_level:
        cur = _innsbruck_next(cur, steps, tm, m, spec.initial.state())
        out.append(_report(cur.level, cur.state, cur.resources, cur.elapsed, cur.probs))
    return out


@dataclass(frozen=True)
class Strategy:
    max_level: int
    steps: Tuple[int, ...]
    fidelity: Optional[float]
    fidelities: Tuple[float, ...] = ()


def optimize_strategy(tm=None, m=PERFECT_OPS, initial=None, min_fidelity=None,
                      level_cap=12, max_steps=MAX_STEPS):
    """Greedy search for the highest level the Innsbruck protocol can reach.

    Starting from the best strategy ``X`` for level ``l`` (fidelity
    ``F_X``), the connected pair without purification on level ``l + 1``
    has fidelity ``F_X'``.  The search moves to level ``l + 1`` if some
    strategy ``Y`` with ``1 <= M_{l+1} <= M_l`` on every level beats
    ``F_X'``; ``Y`` then becomes the new ``X``.  Step counts are capped at
    ``max_steps`` and ties within ``1e-9`` go to fewer total rounds.  When
    neither connection nor purification loses fidelity the search also
    advances, so ideal devices reach ``level_cap``.

    Parameters
    ----------
    min_fidelity : float, optional
        If set, every level of ``Y`` must end at or above this fidelity.

    Returns
    -------
    Strategy
        ``max_level`` is 0 when level 1 cannot be purified at all.
    """
    tm = tm or TimeModel()
    initial = initial or WernerParams.from_fidelity(0.8)
    elementary = initial.state()

    def ok(node):
        f = node.state.fidelity
        return f > 0.5 and (min_fidelity is None or f >= min_fidelity - TIE)

    def best(nodes):
        top = max(f for f, _, _ in nodes)
        return min((n for n in nodes if n[0] >= top - TIE), key=lambda n: (sum(n[1]), n[1]))

    # frontier: steps prefix -> level node, all prefixes non-increasing with M >= 1
    frontier = {}
    for k in range(1, max_steps + 1):
        node = _innsbruck_next(None, k, tm, m, elementary)
        if ok(node):
            frontier[(k,)] = node
    if not frontier:
        return Strategy(0, (), None)
    cands = [(n.state.fidelity, key, n) for key, n in frontier.items()]
    F_X, X, node_X = best(cands)
    if F_X <= elementary.fidelity + TIE:
        return Strategy(0, (), None)

    while len(X) < level_cap:
        # connected pair, no purification on the next level
        F_conn = _innsbruck_next(node_X, 0, tm, m).state.fidelity
        nxt = {}
        for key, node in frontier.items():
            for k in range(1, key[-1] + 1):
                child = _innsbruck_next(node, k, tm, m)
                if ok(child):
                    nxt[key + (k,)] = child
        # lossless covers devices where nothing degrades at all
        jumps = [
            (n.state.fidelity, key, n) for key, n in nxt.items()
            if n.state.fidelity > F_conn or (F_conn >= F_X and n.state.fidelity >= F_X)
        ]
        if not jumps:
            break
        F_Y, Y, node_Y = best(jumps)
        frontier, X, F_X, node_X = nxt, Y, F_Y, node_Y

    fids = _level_fidelities(X, tm, m, elementary)
    return Strategy(len(X), X, F_X, fids)


def _level_fidelities(steps, tm, m, elementary):
    cur, out = None, []
    for k in steps:
        cur = _innsbruck_next(cur, k, tm, m, elementary)
        out.append(cur.state.fidelity)
    return tuple(out)


def blind_overhead(M, L, m, p_suc):
    """Extra resources ``1 / p_tot`` for running the top ``m`` levels blind.

    ``p_tot = p_suc ** (L**(m-1) * M**m)``: every one of the ``M**m``
    nested purification rounds, on each of the ``L**(m-1)`` branches, has to
    succeed.  The distance grows by ``L**m``.

    Returns
    -------
    (float, int)
        Overhead factor and distance gain.

    Examples
    --------
    >>> round(blind_overhead(3, 2, 1, 0.95)[0], 2)
    1.17
    """
    if M < 1 or L < 2 or m < 1:
        raise DomainError(f"need M >= 1, L >= 2, m >= 1; got M={M}, L={L}, m={m}")
    if not 0 < p_suc <= 1:
        raise DomainError(f"p_suc must lie in (0, 1], got {p_suc}")
    exponent = L ** (m - 1) * M**m
    return math.exp(-exponent * math.log(p_suc)), L**m


def run_blind_topped(spec, tm=None, m=PERFECT_OPS):
    """Base protocol on the lower levels, blind mode on the top ``blind_levels``.

    Blind levels do not wait for signals, so their rounds see no memory
    decoherence (gate time still applies).  Rounds are regular purification
    for a standard base and pumping with the fresh connected pair for an
    Innsbruck base.  The overhead is the closed form evaluated at the
    geometric means of the blind levels' step counts and round success
    probabilities, which reduces to :func:`blind_overhead` when these are
    uniform.

    Returns
    -------
    (list of LevelReport, float)
    """
    tm = tm or TimeModel()
    n_base = spec.levels - spec.blind_levels
    runner = run_standard if spec.base == "standard" else run_innsbruck
    reports = []
    if n_base:
        base = ProtocolSpec(spec.base, n_base, spec.steps_per_level[:n_base], spec.initial)
        reports = runner(base, tm, m)
    if spec.blind_levels == 0:
        return reports, 1.0

    if reports:
        last = reports[-1]
        s, res, elapsed = GraphDiagonalState(last.coeffs), last.resources, last.elapsed
    else:
        s, res, elapsed = spec.initial.state(), 1.0, 0.0
    regular = spec.base == "standard"
    log_p = []
    for level in range(n_base + 1, spec.levels + 1):
        if level > 1:
            s = connect_noisy(s, s, m=m).state
            res *= 2.0
        fresh, probs = s, []
        for _ in range(spec.steps_per_level[level - 1]):
            r = dejmps_noisy(s, s if regular else fresh, m)
            s = memory_decohere(r.state, tm.gate_time, m)
            probs.append(r.success_prob)
            res = 2.0 * res / r.success_prob if regular else res + res / r.success_prob
        elapsed += tm.signal_time(level)
        log_p += [math.log(p) for p in probs]
        reports.append(_report(level, s, res, elapsed, probs))

    if not log_p:
        return reports, 1.0
    blind_steps = np.maximum(spec.steps_per_level[n_base:], 1)
    M_eff = math.exp(np.mean(np.log(blind_steps)))
    exponent = spec.branching ** (spec.blind_levels - 1) * M_eff**spec.blind_levels
    return reports, math.exp(-exponent * np.mean(log_p))
