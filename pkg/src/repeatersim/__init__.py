"""Noisy entanglement purification and quantum repeater bookkeeping on graph-diagonal pairs."""
from .errors import ConvergenceError, DegenerateInputError, DomainError, NumericalError
from .noise import PERFECT_OPS, NoiseModel, PauliChannel, memory_decohere, memory_factor, transmit_half
from .protocols import (
    LevelReport,
    ProtocolSpec,
    Strategy,
    blind_overhead,
    optimize_strategy,
    run_blind_topped,
    run_innsbruck,
    run_standard,
)
from .purification import PurifyStepResult, dejmps_noisy, dejmps_perfect, pump, regular_round
from .regimes import RegimeReport, iterate_to_fixed_point, purification_regime
from .states import (
    PERFECT,
    GraphDiagonalState,
    WernerParams,
    apply_shift,
    fidelity,
    make_werner,
    werner_from_x,
    werner_x,
)
from .swapping import ConnectResult, connect_chain, connect_noisy, connect_perfect
from .timing import TimeModel

__version__ = "0.1.0"
