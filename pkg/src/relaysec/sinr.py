"""Per-realization SINRs and instantaneous secrecy rates.

Covers the three-hop scheme (exact and high-SNR forms) and the two-hop /
direct baselines.  All functions are elementwise over numpy arrays, so a
whole Monte Carlo chunk evaluates in one call.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from relaysec.errors import DegenerateSampleError, DomainError
from relaysec.model import ChannelSample


class SchemeKind(enum.Enum):
    """Transmission schemes under comparison."""

    THREE_HOP = "three-hop"
    TWO_HOP_CASE_I = "two-hop-1"  # R1 helps, R2 eavesdrops
    TWO_HOP_CASE_II = "two-hop-2"  # R2 helps, R1 eavesdrops
    DIRECT = "direct"


class SinrMethod(enum.Enum):
    """Which SINR expressions drive a Monte Carlo estimate."""

    EXACT = "mc-exact"
    HIGH_SNR = "mc-highsnr"


#: Pre-log factor of each scheme (reciprocal of its number of phases).
PRELOG = {
    SchemeKind.THREE_HOP: 1.0 / 3.0,
    SchemeKind.TWO_HOP_CASE_I: 0.5,
    SchemeKind.TWO_HOP_CASE_II: 0.5,
    SchemeKind.DIRECT: 1.0,
}


@dataclass(frozen=True)
class SinrBundle:
    """The four instantaneous SINRs of the three-hop scheme.

    gamma_r1_p1: at R1 during phase 1; gamma_r2: at R2; gamma_r1_p3: at R1
    during phase 3; gamma_d: at the destination.
    """

    gamma_r1_p1: np.ndarray | float
    gamma_r2: np.ndarray | float
    gamma_r1_p3: np.ndarray | float
    gamma_d: np.ndarray | float

    def max_leakage(self) -> np.ndarray | float:
        """Largest of the three relay SINRs."""
        return np.maximum(self.gamma_r1_p1, np.maximum(self.gamma_r2, self.gamma_r1_p3))


def exact_sinrs(s: ChannelSample) -> SinrBundle:
    """Exact SINRs of the three-hop scheme (every denominator is >= 1)."""
    g, h, f = s.gamma_g, s.gamma_h, s.gamma_f
    r1_p1 = g / (h + 1.0)
    r2 = g * h / (g * f + h * f + 2.0 * h + g + f + 1.0)
    r1_p3 = g * h**2 / (h**2 + h * (g + 1.0) ** 2 + (g + h + 1.0) ** 2 * (f + 1.0))
    d = g * h * f / (3.0 * h * f + 2.0 * f * g + g * h + 2.0 * f + 2.0 * h + g + 1.0)
    return SinrBundle(r1_p1, r2, r1_p3, d)


def highsnr_sinrs(s: ChannelSample) -> SinrBundle:
    """High-SNR SINR approximations; every gain must be strictly positive."""
    g, h, f = s.gamma_g, s.gamma_h, s.gamma_f
    if np.any(np.asarray(g) == 0) or np.any(np.asarray(h) == 0) or np.any(np.asarray(f) == 0):
        raise DegenerateSampleError("high-SNR SINRs need strictly positive gains")
    r1_p1 = g / h
    r2 = g * h / (f * (g + h))
    r1_p3 = g * h**2 / ((g + h) ** 2 * f + 2.0 * h * g**2)
    d = g * h * f / (3.0 * h * f + 2.0 * f * g + g * h)
    return SinrBundle(r1_p1, r2, r1_p3, d)


def instantaneous_secrecy_rate(b: SinrBundle, prelog: float = PRELOG[SchemeKind.THREE_HOP]):
    """Secrecy rate in bits/s/Hz for one (or a vector of) realizations.

    prelog * [log2(1 + gamma_d) - log2(1 + max relay SINR)], clamped at 0.
    """
    return secrecy_rate_from_pair(b.gamma_d, b.max_leakage(), prelog)


def secrecy_rate_from_pair(gamma_d, gamma_leak, prelog: float):
    """Clamped secrecy rate from a destination SINR and a leakage SINR."""
    rate = prelog * (np.log1p(gamma_d) - np.log1p(gamma_leak)) / np.log(2.0)
    return np.maximum(rate, 0.0)


def baseline_sinrs(s: ChannelSample, kind: SchemeKind, combining: str = "selection"):
    """Destination SINR and worst-case leakage SINR of a baseline scheme.

    Two-hop: one relay helps under destination-based jamming with
    self-interference cancellation at D, the other relay idles and overhears
    both phases.  ``combining`` picks how the idle eavesdropper merges its
    two observations: "selection" (max, the production choice) or "sum"
    (sensitivity variant reported by validate).  Direct: single phase, no
    jammer, both relays are pure eavesdroppers.
    """
    if kind is SchemeKind.THREE_HOP:
        raise DomainError("baseline_sinrs handles baseline schemes only; use exact_sinrs")
    if combining not in ("selection", "sum"):
        raise DomainError(f"unknown combining rule {combining!r}")

    if kind is SchemeKind.DIRECT:
        gamma_d = s.gamma_sd
        gamma_leak = np.maximum(s.gamma_sr1, s.gamma_sr2)
        return gamma_d, gamma_leak

    if kind is SchemeKind.TWO_HOP_CASE_I:
        a, b = s.gamma_sr1, s.gamma_dr1  # helper R1
        u, v, w = s.gamma_sr2, s.gamma_dr2, s.gamma_r1r2  # idle eavesdropper R2
    else:  # TWO_HOP_CASE_II, helper R2
        a, b = s.gamma_sr2, s.gamma_dr2
        u, v, w = s.gamma_sr1, s.gamma_dr1, s.gamma_r1r2

    gamma_d = a * b / (a + 2.0 * b + 1.0)
    gamma_helper = a / (b + 1.0)
    gamma_e1 = u / (v + 1.0)  # phase 1, D jams
    gamma_e2 = a * w / (b * w + w + a + b + 1.0)  # phase 2, relay forwards
    if combining == "selection":
        gamma_idle = np.maximum(gamma_e1, gamma_e2)
    else:
        gamma_idle = gamma_e1 + gamma_e2
    return gamma_d, np.maximum(gamma_helper, gamma_idle)
