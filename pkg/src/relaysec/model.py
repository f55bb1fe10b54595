"""Network geometry, mean channel powers and simulation configuration.

Nodes live on a one-dimensional axis.  Every mean channel power follows the
distance-power law m = d^(-n); all external interfaces speak dB while the
internal math is linear throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from relaysec.errors import DomainError, InvalidTopologyError


def db_to_linear(db: float) -> float:
    """Convert a dB power ratio to linear scale."""
    return 10.0 ** (db / 10.0)


def linear_to_db(lin: float) -> float:
    """Convert a linear power ratio to dB."""
    if lin <= 0:
        raise DomainError(f"linear value must be > 0, got {lin}")
    return 10.0 * math.log10(lin)


def mean_power(pos_a: float, pos_b: float, n: float) -> float:
    """Mean channel power of the link between two node positions.

    Distance-power law d^(-n); symmetric in its position arguments
    (TDD reciprocity).
    """
    if n <= 0:
        raise InvalidTopologyError(f"path-loss exponent must be > 0, got {n}")
    d = abs(pos_a - pos_b)
    if d == 0:
        raise InvalidTopologyError(
            f"coincident node positions ({pos_a}) give infinite mean power"
        )
    return d ** (-n)


@dataclass(frozen=True)
class Topology:
    """Node positions on a 1-D line plus the path-loss exponent.

    Order of nodes: source S, first relay R1, second relay R2, destination D.
    """

    x_s: float
    x_r1: float
    x_r2: float
    x_d: float
    n: float = 2.7

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise InvalidTopologyError(f"path-loss exponent must be > 0, got {self.n}")
        pos = [self.x_s, self.x_r1, self.x_r2, self.x_d]
        names = ["S", "R1", "R2", "D"]
        for i in range(4):
            for j in range(i + 1, 4):
                if pos[i] == pos[j]:
                    raise InvalidTopologyError(
                        f"nodes {names[i]} and {names[j]} coincide at {pos[i]}"
                    )

    def scaled(self, c: float) -> "Topology":
        """Same layout with every position multiplied by c > 0."""
        if c <= 0:
            raise InvalidTopologyError(f"scale factor must be > 0, got {c}")
        return Topology(c * self.x_s, c * self.x_r1, c * self.x_r2, c * self.x_d, self.n)


#: Reference layouts used throughout the experiments: the second is the first
#: shrunk by a factor of 3.
TOPOLOGY_1 = Topology(-3.0, -1.0, 1.0, 3.0, 2.7)
TOPOLOGY_2 = TOPOLOGY_1.scaled(1.0 / 3.0)


@dataclass(frozen=True)
class ChannelStats:
    """Mean channel powers of every link plus the per-node transmit SNR.

    m_g, m_h, m_f are the three hops S-R1, R1-R2, R2-D.  The remaining
    fields are the auxiliary links needed by the two-hop and direct
    baselines; m_sr1, m_r1r2 and m_dr2 duplicate m_g, m_h, m_f by
    reciprocity and exist for explicit naming at baseline call sites.
    """

    m_g: float
    m_h: float
    m_f: float
    m_sr2: float
    m_sd: float
    m_dr1: float
    rho: float

    def __post_init__(self) -> None:
        for name in ("m_g", "m_h", "m_f", "m_sr2", "m_sd", "m_dr1"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"mean power {name} must be finite and > 0, got {v}")
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise DomainError(f"transmit SNR rho must be finite and > 0, got {self.rho}")

    # Link aliases (reciprocity).
    @property
    def m_sr1(self) -> float:
        return self.m_g

    @property
    def m_r1r2(self) -> float:
        return self.m_h

    @property
    def m_dr2(self) -> float:
        return self.m_f

    # Average received SNRs (exponential means of the fading gains).
    @property
    def bar_g(self) -> float:
        return self.rho * self.m_g

    @property
    def bar_h(self) -> float:
        return self.rho * self.m_h

    @property
    def bar_f(self) -> float:
        return self.rho * self.m_f

    def with_rho(self, rho: float) -> "ChannelStats":
        """Same geometry at a different transmit SNR."""
        return ChannelStats(self.m_g, self.m_h, self.m_f, self.m_sr2, self.m_sd, self.m_dr1, rho)


def topology_to_stats(t: Topology, rho: float) -> ChannelStats:
    """Fill every mean channel power of a topology at transmit SNR rho (linear)."""
    if rho <= 0:
        raise DomainError(f"transmit SNR rho must be > 0, got {rho}")
    return ChannelStats(
        m_g=mean_power(t.x_s, t.x_r1, t.n),
        m_h=mean_power(t.x_r1, t.x_r2, t.n),
        m_f=mean_power(t.x_r2, t.x_d, t.n),
        m_sr2=mean_power(t.x_s, t.x_r2, t.n),
        m_sd=mean_power(t.x_s, t.x_d, t.n),
        m_dr1=mean_power(t.x_d, t.x_r1, t.n),
        rho=rho,
    )


@dataclass(frozen=True)
class ChannelSample:
    """One fading realization (or a vector of realizations) per link.

    Fields hold instantaneous received SNRs, i.e. rho * |channel gain|^2,
    and may be scalars or equally shaped numpy arrays.  gamma_sr1,
    gamma_r1r2 and gamma_dr2 alias the three hop gains by reciprocity.
    """

    gamma_g: np.ndarray | float
    gamma_h: np.ndarray | float
    gamma_f: np.ndarray | float
    gamma_sr2: np.ndarray | float
    gamma_sd: np.ndarray | float
    gamma_dr1: np.ndarray | float

    def __post_init__(self) -> None:
        for name in ("gamma_g", "gamma_h", "gamma_f", "gamma_sr2", "gamma_sd", "gamma_dr1"):
            v = np.asarray(getattr(self, name))
            if not (np.all(v >= 0) and np.all(np.isfinite(v))):
                raise DomainError(f"channel gain {name} must be finite and >= 0")

    @property
    def gamma_sr1(self) -> np.ndarray | float:
        return self.gamma_g

    @property
    def gamma_r1r2(self) -> np.ndarray | float:
        return self.gamma_h

    @property
    def gamma_dr2(self) -> np.ndarray | float:
        return self.gamma_f
