"""
Decay kernel bases g_l for the impact functions φ_cc'(t) = Σ_l a_cc'l g_l(t).

Two families are supported, both with closed-form point values, interval
integrals and inverse-CDF sampling:

- exponential: g_l(t) = exp(-w_l t)
- gaussian:    g_l(t) = exp(-(t - c_l)^2 / (2 s_l^2)), integrated through the
  standard normal CDF.

Kernels vanish for negative lags, so history events never act backwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from django.conf import settings
from scipy import special

from apps.hawkes.exceptions import HawkesValidationError

EXPONENTIAL = "exponential"
GAUSSIAN = "gaussian"
KERNEL_KINDS = (EXPONENTIAL, GAUSSIAN)

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class KernelBasis:
    """
    A fixed basis of L nonnegative decay kernels.

    Attributes:
        kind: "exponential" or "gaussian".
        params: One tuple per kernel: (decay,) or (center, bandwidth).
    """

    kind: str
    params: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if self.kind not in KERNEL_KINDS:
            raise HawkesValidationError(
                f"Unknown kernel kind: {self.kind}",
                details={"allowed": list(KERNEL_KINDS)},
            )
        if not self.params:
            raise HawkesValidationError("Kernel basis needs at least one kernel")
        for p in self.params:
            if self.kind == EXPONENTIAL:
                if len(p) != 1 or not p[0] > 0:
                    raise HawkesValidationError(
                        "Exponential kernels take one positive decay rate",
                        details={"params": list(p)},
                    )
            elif len(p) != 2 or not p[1] > 0:
                raise HawkesValidationError(
                    "Gaussian kernels take (center, positive bandwidth)",
                    details={"params": list(p)},
                )

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def exponential(cls, decays: float | list[float] = 1.0) -> KernelBasis:
        if np.isscalar(decays):
            decays = [decays]
        return cls(EXPONENTIAL, tuple((float(w),) for w in decays))

    @classmethod
    def gaussian(cls, centers: list[float], bandwidths: list[float]) -> KernelBasis:
        if len(centers) != len(bandwidths):
            raise HawkesValidationError("centers and bandwidths differ in length")
        return cls(
            GAUSSIAN,
            tuple((float(c), float(s)) for c, s in zip(centers, bandwidths)),
        )

    @classmethod
    def from_settings(cls) -> KernelBasis:
        cfg = getattr(settings, "HAWKES_KERNEL", {})
        if cfg.get("kind", EXPONENTIAL) == GAUSSIAN:
            return cls.gaussian(cfg["centers"], cfg["bandwidths"])
        return cls.exponential(cfg.get("decay", 1.0))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> KernelBasis:
        return cls(
            str(data["kind"]), tuple(tuple(float(v) for v in p) for p in data["params"])
        )

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "params": [list(p) for p in self.params]}

    # ------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------

    @property
    def L(self) -> int:
        return len(self.params)

    @property
    def energy_bound(self) -> float:
        """G = max_l sup_{t>=0} g_l(t)^2."""
        if self.kind == EXPONENTIAL:
            return 1.0
        peaks = [
            1.0 if c >= 0 else math.exp(-(c * c) / (s * s)) for c, s in self.params
        ]
        return max(peaks)

    @property
    def _columns(self) -> tuple[np.ndarray, np.ndarray]:
        arr = np.asarray(self.params, dtype=float)
        if self.kind == EXPONENTIAL:
            return arr[:, 0], np.zeros(self.L)
        return arr[:, 0], arr[:, 1]

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def evaluate(self, lags: np.ndarray | float) -> np.ndarray:
        """
        Point values g_l(lag), shape lags.shape + (L,).

        Negative lags evaluate to zero.
        """
        lags = np.asarray(lags, dtype=float)[..., None]
        first, second = self._columns
        if self.kind == EXPONENTIAL:
            values = np.exp(-first * np.maximum(lags, 0.0))
        else:
            values = np.exp(-((lags - first) ** 2) / (2.0 * second**2))
        return np.where(lags >= 0.0, values, 0.0)

    def integrate(
        self, lower: np.ndarray | float, upper: np.ndarray | float
    ) -> np.ndarray:
        """
        ∫_lower^upper g_l(u) du over lags, shape broadcast(lower, upper) + (L,).

        The lower limit is clipped at zero; empty intervals give zero.
        """
        lower = np.maximum(np.asarray(lower, dtype=float), 0.0)[..., None]
        upper = np.asarray(upper, dtype=float)[..., None]
        upper = np.maximum(upper, lower)
        first, second = self._columns
        if self.kind == EXPONENTIAL:
            # (1/w)(e^{-w a} - e^{-w b}) written to stay accurate for small w(b-a)
            return np.exp(-first * lower) * -np.expm1(-first * (upper - lower)) / first
        hi = special.ndtr((upper - first) / second)
        lo = special.ndtr((lower - first) / second)
        return second * _SQRT_2PI * (hi - lo)

    def total_mass(self, horizon: np.ndarray | float = np.inf) -> np.ndarray:
        """∫_0^horizon g_l(u) du, shape horizon.shape + (L,)."""
        return self.integrate(0.0, horizon)

    def sample_lags(
        self,
        kernel: int,
        horizons: np.ndarray,
        rng: np.random.Generator,
    ) -> np.ndarray:
        """
        Draw one lag per horizon from g_l restricted to [0, horizon].

        The kernel is normalized as a density and inverted in closed form.
        """
        horizon = np.asarray(horizons, dtype=float)
        u = rng.random(horizon.shape)
        if self.kind == EXPONENTIAL:
            (w,) = self.params[kernel]
            mass = -np.expm1(-w * horizon)
            return -np.log1p(-u * mass) / w
        center, width = self.params[kernel]
        lo = special.ndtr(-center / width)
        hi = special.ndtr((horizon - center) / width)
        lags = center + width * special.ndtri(lo + u * (hi - lo))
        return np.clip(lags, 0.0, horizon)
