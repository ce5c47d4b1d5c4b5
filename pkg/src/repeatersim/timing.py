"""Classical signalling times along the repeater hierarchy."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

SPEED_IN_FIBRE_KM_S = 3.0e5  # t0 = 10 km / c gives the usual 0.333e-4 s


@dataclass(frozen=True)
class TimeModel:
    """Signal time ``t0`` over one elementary segment; level ``l`` spans ``2**(l-1)`` segments.

    ``segment_km`` is informational only.  ``gate_time`` is added to every
    waiting period (zero by default).
    """

    t0: float = 0.333e-4
    segment_km: float = 10.0
    gate_time: float = 0.0

    def __post_init__(self):
        if not self.t0 > 0:
            raise DomainError(f"t0 must be positive, got {self.t0}")
        if self.gate_time < 0:
            raise DomainError(f"gate_time must be non-negative, got {self.gate_time}")

    def signal_time(self, level):
        """One-way signal time between the end stations of a level-``level`` pair."""
        if level < 1:
            raise DomainError(f"levels start at 1, got {level}")
        return 2 ** (level - 1) * self.t0

    def distance_km(self, level):
        return 2 ** (level - 1) * self.segment_km
