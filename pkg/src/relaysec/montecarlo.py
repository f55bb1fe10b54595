"""Monte Carlo estimation over Rayleigh fading.

Sampling is chunked with one counter-derived RNG stream per chunk, so the
result of an estimate depends only on (seed, n) and never on how many
workers processed the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from relaysec.errors import DomainError
from relaysec.model import ChannelSample, ChannelStats
from relaysec.sinr import (
    PRELOG,
    SchemeKind,
    SinrBundle,
    SinrMethod,
    baseline_sinrs,
    exact_sinrs,
    highsnr_sinrs,
    instantaneous_secrecy_rate,
    secrecy_rate_from_pair,
)

#: Fixed chunk size; part of the determinism contract (results are chunked
#: identically no matter how many workers run).
CHUNK_SIZE = 1 << 18


@dataclass(frozen=True)
class RngStream:
    """One reproducible random stream: (seed, stream_id) pins every draw."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, self.stream_id])))


@dataclass(frozen=True)
class EsrEstimate:
    """Monte Carlo ESR estimate with its sampling metadata."""

    mean: float
    std_error: float
    n_samples: int
    seed: int
    scheme: SchemeKind
    method: SinrMethod


def _draw_exponential(gen: np.random.Generator, mean: float, n: int,
                      strictly_positive: bool = False) -> np.ndarray:
    """Inverse-CDF exponential draws: -mean * ln(U) with U in (0, 1].

    The explicit transform keeps golden values portable.  U = 1 - random()
    avoids log(0); with strictly_positive the (astronomically rare) exact
    zeros are redrawn.
    """
    u = 1.0 - gen.random(n)
    x = -mean * np.log(u)
    if strictly_positive:
        while True:
            zero = x == 0.0
            if not zero.any():
                break
            x[zero] = -mean * np.log(1.0 - gen.random(int(zero.sum())))
    return x


def sample_channels(stats: ChannelStats, stream: RngStream, n: int = 1,
                    strictly_positive: bool = False) -> ChannelSample:
    """Draw n independent fading realizations for every link.

    Each gain is exponential with mean rho * m of its link; the draw order
    over links is fixed (g, h, f, sr2, sd, dr1).
    """
    if n < 1:
        raise DomainError(f"sample count must be >= 1, got {n}")
    gen = stream.generator()
    means = (
        stats.bar_g,
        stats.bar_h,
        stats.bar_f,
        stats.rho * stats.m_sr2,
        stats.rho * stats.m_sd,
        stats.rho * stats.m_dr1,
    )
    draws = [_draw_exponential(gen, m, n, strictly_positive) for m in means]
    return ChannelSample(*draws)


def _chunk_layout(n: int) -> list[tuple[int, int]]:
    """(stream_id, chunk_length) pairs covering n samples."""
    out = []
    idx = 0
    remaining = n
    while remaining > 0:
        take = min(CHUNK_SIZE, remaining)
        out.append((idx, take))
        idx += 1
        remaining -= take
    return out


def _chunk_rates(stats: ChannelStats, scheme: SchemeKind, method: SinrMethod,
                 stream: RngStream, n: int) -> np.ndarray:
    strictly_positive = method is SinrMethod.HIGH_SNR
    sample = sample_channels(stats, stream, n, strictly_positive=strictly_positive)
    if scheme is SchemeKind.THREE_HOP:
        bundle = exact_sinrs(sample) if method is SinrMethod.EXACT else highsnr_sinrs(sample)
        return np.asarray(instantaneous_secrecy_rate(bundle, PRELOG[scheme]))
    if method is not SinrMethod.EXACT:
        raise DomainError(f"{scheme.value} supports only the exact SINR method")
    gamma_d, gamma_leak = baseline_sinrs(sample, scheme)
    return np.asarray(secrecy_rate_from_pair(gamma_d, gamma_leak, PRELOG[scheme]))


def _reduce_chunks(partials: list[tuple[float, float]], n: int) -> tuple[float, float]:
    """Combine per-chunk (sum, sum of squares) into mean and standard error."""
    total = math.fsum(p[0] for p in partials)
    total_sq = math.fsum(p[1] for p in partials)
    mean = total / n
    if n < 2:
        return mean, 0.0
    var = max(0.0, (total_sq - n * mean * mean) / (n - 1))
    return mean, math.sqrt(var / n)


def _map_chunks(fn, layout, workers: int):
    if workers <= 1:
        return [fn(args) for args in layout]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, layout))


def estimate_esr(stats: ChannelStats, scheme: SchemeKind, method: SinrMethod,
                 n: int, seed: int, workers: int = 1) -> EsrEstimate:
    """Unbiased Monte Carlo ESR estimate over n fading realizations."""
    if n < 1:
        raise DomainError(f"sample count must be >= 1, got {n}")
    layout = _chunk_layout(n)

    def one_chunk(args: tuple[int, int]) -> tuple[float, float]:
        stream_id, length = args
        rates = _chunk_rates(stats, scheme, method, RngStream(seed, stream_id), length)
        return float(np.sum(rates)), float(np.sum(rates * rates))

    partials = _map_chunks(one_chunk, layout, workers)
    mean, stderr = _reduce_chunks(partials, n)
    return EsrEstimate(mean=mean, std_error=stderr, n_samples=n, seed=seed,
                       scheme=scheme, method=method)


def estimate_event_probability(stats: ChannelStats, event, n: int, seed: int,
                               method: SinrMethod = SinrMethod.HIGH_SNR,
                               workers: int = 1) -> tuple[float, float]:
    """Empirical probability of a predicate over the three-hop SINR bundle.

    event maps a SinrBundle (vectorized) to a boolean array.  Returns the
    frequency and its binomial standard error.
    """
    if n < 1:
        raise DomainError(f"sample count must be >= 1, got {n}")
    layout = _chunk_layout(n)

    def one_chunk(args: tuple[int, int]) -> int:
        stream_id, length = args
        sample = sample_channels(stats, RngStream(seed, stream_id), length,
                                 strictly_positive=method is SinrMethod.HIGH_SNR)
        bundle = exact_sinrs(sample) if method is SinrMethod.EXACT else highsnr_sinrs(sample)
        return int(np.count_nonzero(event(bundle)))

    hits = sum(_map_chunks(one_chunk, layout, workers))
    p = hits / n
    return p, math.sqrt(p * (1.0 - p) / n)


def empirical_cdf_ks(samples, cdf) -> float:
    """Kolmogorov-Smirnov sup-distance between sample data and a CDF."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise DomainError("empirical_cdf_ks requires a non-empty sample")
    f = np.asarray(cdf(x), dtype=float)
    grid = np.arange(1, n + 1) / n
    d_plus = np.max(grid - f)
    d_minus = np.max(f - (grid - 1.0 / n))
    return float(max(d_plus, d_minus))
