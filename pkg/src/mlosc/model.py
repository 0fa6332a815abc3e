"""Parameter containers, domain validation and the energy <-> C mapping.

The three oscillator kinds share the position-dependent-mass kinetic term
``xdot^2 / (2 (1 + lambda x^2))`` and differ only in the potential:

* ``ORIGINAL``  -- V = alpha^2 x^2 / (2 (1 + lambda x^2))  (beta = 0)
* ``G1``        -- V = (alpha^2 x^2 - 2 beta x) / (2 (1 + lambda x^2))
* ``G2``        -- V = (alpha^2 x^2 - 2 beta x sqrt(1 + lambda x^2))
                      / (2 (1 + lambda x^2))

All types are immutable and every function here is pure.

Note: beta < 0 is rejected.  A beta < 0 system maps onto beta > 0 by the
reflection x -> -x; apply that map externally if needed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError


class OscillatorKind(Enum):
    ORIGINAL = "original"
    G1 = "g1"
    G2 = "g2"


@dataclass(frozen=True)
class PositionDomain:
    """Open interval of admissible positions."""

    lower: float
    upper: float

    def contains(self, x: float) -> bool:
        return self.lower < x < self.upper


@dataclass(frozen=True)
class State:
    t: float
    x: float
    xdot: float


@dataclass(frozen=True)
class ModelParams:
    kind: OscillatorKind
    alpha: float
    beta: float
    lam: float

    def __post_init__(self) -> None:
        validate(self)

    @property
    def domain(self) -> PositionDomain:
        if self.lam < 0.0:
            wall = 1.0 / math.sqrt(-self.lam)
            return PositionDomain(-wall, wall)
        return PositionDomain(-math.inf, math.inf)

    def mass_factor(self, x: float) -> float:
        return 1.0 + self.lam * x * x

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind.value,
                "alpha": self.alpha,
                "beta": self.beta,
                "lambda": self.lam,
            }
        )

    @staticmethod
    def from_json(text: str) -> "ModelParams":
        obj = json.loads(text)
        return ModelParams(
            kind=OscillatorKind(obj["kind"]),
            alpha=float(obj["alpha"]),
            beta=float(obj["beta"]),
            lam=float(obj["lambda"]),
        )


def validate(params: ModelParams) -> PositionDomain:
    """Check parameter invariants and return the legal position interval.

    Raises :class:`DomainError` naming the violated inequality.
    """
    alpha, beta, lam = params.alpha, params.beta, params.lam
    if not (alpha > 0.0) or not math.isfinite(alpha):
        raise DomainError(f"alpha > 0 violated (alpha = {alpha})")
    if lam == 0.0 or not math.isfinite(lam):
        raise DomainError(f"lambda != 0 violated (lambda = {lam})")
    if not math.isfinite(beta):
        raise DomainError(f"beta finite violated (beta = {beta})")

    if params.kind is OscillatorKind.ORIGINAL:
        if beta != 0.0:
            raise DomainError(f"beta = 0 violated for original kind (beta = {beta})")
    elif beta < 0.0:
        raise DomainError(f"beta >= 0 violated (beta = {beta})")
    elif params.kind is OscillatorKind.G1 and lam < 0.0:
        bound = alpha * alpha / (2.0 * math.sqrt(-lam))
        if beta >= bound:
            raise DomainError(
                f"beta < alpha^2/(2 sqrt|lambda|) violated "
                f"(beta = {beta}, bound = {bound})"
            )
    elif params.kind is OscillatorKind.G2 and lam > 0.0:
        bound = alpha * alpha / math.sqrt(lam)
        if beta >= bound:
            raise DomainError(
                f"beta < alpha^2/sqrt(lambda) violated "
                f"(beta = {beta}, bound = {bound})"
            )
    return params.domain


def energy_to_C(params: ModelParams, E: float) -> float:
    """Integration constant of the first integral: C = 2 E - alpha^2/lambda."""
    return 2.0 * E - params.alpha**2 / params.lam


def C_to_energy(params: ModelParams, C: float) -> float:
    """Exact inverse of :func:`energy_to_C`."""
    return 0.5 * C + params.alpha**2 / (2.0 * params.lam)


def energy_from_state(params: ModelParams, s: State) -> float:
    """Total conserved energy of a state."""
    m = params.mass_factor(s.x)
    if m <= 0.0:
        raise DomainError(f"1 + lambda x^2 > 0 violated (x = {s.x})")
    if params.kind is OscillatorKind.G2:
        pot = params.alpha**2 * s.x**2 - 2.0 * params.beta * s.x * math.sqrt(m)
    else:
        pot = params.alpha**2 * s.x**2 - 2.0 * params.beta * s.x
    return 0.5 * (s.xdot**2 + pot) / m
