"""Monte Carlo samplers for the GOE edge point process.

Two routes to the same limit: the tridiagonal beta=1 Hermite ensemble under
edge scaling, and the discretized stochastic Airy operator.  Replicate r
always draws from the stream (seed, r), so results are bit-reproducible and
independent of worker scheduling.
"""

from __future__ import annotations

import enum
import math
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import BinaryIO, Callable, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import InvalidArgumentError

MAGIC = b"KPZE"
FORMAT_VERSION = 1


class SamplerKind(enum.Enum):
    TRIDIAG = "tridiag"
    SAO = "sao"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class PointConfiguration:
    """Finite truncation of an edge-scaled eigenvalue configuration,
    ordered strictly decreasing."""

    points: tuple[float, ...]
    source: SamplerKind

    def __post_init__(self):
        pts = self.points
        if any(not math.isfinite(p) for p in pts):
            raise InvalidArgumentError("points must all be finite")
        if any(pts[i] <= pts[i + 1] for i in range(len(pts) - 1)):
            raise InvalidArgumentError("points must be strictly decreasing")

    @property
    def k_kept(self) -> int:
        return len(self.points)

    @property
    def deepest(self) -> float:
        return self.points[-1] if self.points else math.inf


@dataclass(frozen=True)
class EnsembleSample:
    configs: tuple[PointConfiguration, ...]
    n: Optional[int]
    seed: int
    replicate_count: int
    sampler: SamplerKind

    def __post_init__(self):
        if len(self.configs) != self.replicate_count:
            raise InvalidArgumentError("replicate_count must match configs")
        ks = {c.k_kept for c in self.configs}
        if len(ks) > 1:
            raise InvalidArgumentError("all configurations must share k_kept")

    @property
    def k(self) -> int:
        return self.configs[0].k_kept if self.configs else 0

    def as_array(self) -> np.ndarray:
        """(replicates, k) array of points, replicate order preserved."""
        return np.array([c.points for c in self.configs])


def _replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(replicate,)))


def _tridiag_one(args) -> np.ndarray:
    n, k, seed, replicate = args
    rng = _replicate_rng(seed, replicate)
    diag = rng.normal(0.0, math.sqrt(2.0), n)
    off = np.sqrt(rng.chisquare(n - np.arange(1, n)))
    top = eigh_tridiagonal(diag, off, select="i", select_range=(n - k, n - 1),
                           eigvals_only=True)
    return n ** (1.0 / 6.0) * (top[::-1] - 2.0 * math.sqrt(n))


def _sao_one(args) -> np.ndarray:
    beta, L, h, k, seed, replicate, noise = args
    rng = _replicate_rng(seed, replicate)
    n = int(round(L / h)) - 1
    x = h * np.arange(1, n + 1)
    diag = 2.0 / h**2 + x
    if noise:
        diag = diag + (2.0 / math.sqrt(beta)) * rng.normal(0.0, 1.0, n) / math.sqrt(h)
    off = np.full(n - 1, -1.0 / h**2)
    lam = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1),
                           eigvals_only=True)
    return -lam  # decreasing, matching the point-configuration convention


def _run_replicates(fn: Callable, arglist, workers: int) -> list[np.ndarray]:
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, arglist, chunksize=64))
    return [fn(a) for a in arglist]


def sample_tridiag_edge(n: int, k: int, replicates: int, seed: int,
                        workers: int = 1) -> EnsembleSample:
    """Edge-scaled top-k eigenvalues of the beta=1 tridiagonal Hermite
    ensemble: diagonal N(0, 2), off-diagonal j chi with n-j degrees of
    freedom, eigenvalues centered by 2*sqrt(n), scaled by n^(1/6)."""
    if n < 50:
        raise InvalidArgumentError(f"n must be >= 50, got {n}")
    if not 1 <= k <= n:
        raise InvalidArgumentError(f"need 1 <= k <= n, got k={k}, n={n}")
    if replicates < 1:
        raise InvalidArgumentError("replicates must be positive")
    rows = _run_replicates(_tridiag_one, [(n, k, seed, r) for r in range(replicates)],
                           workers)
    configs = tuple(PointConfiguration(points=tuple(map(float, row)), source=SamplerKind.TRIDIAG)
                    for row in rows)
    return EnsembleSample(configs=configs, n=n, seed=seed,
                          replicate_count=replicates, sampler=SamplerKind.TRIDIAG)


def sample_sao_eigs(beta: float, L: float, h: float, k: int, replicates: int,
                    seed: int, workers: int = 1, noise: bool = True) -> EnsembleSample:
    """Negated smallest eigenvalues of the discretized stochastic Airy
    operator -d^2/dx^2 + x + (2/sqrt(beta)) * white noise on (0, L) with a
    Dirichlet wall at 0.  Each diagonal site gets an independent Gaussian
    of variance (4/beta)/h.  With noise=False this is the plain Airy
    operator and the eigenvalues approach the Ai zeros as h -> 0, L -> inf."""
    if h > 0.1:
        raise InvalidArgumentError(f"grid too coarse: h must be <= 0.1, got {h}")
    if L < 10.0:
        raise InvalidArgumentError(f"L must be >= 10, got {L}")
    if beta <= 0.0:
        raise InvalidArgumentError("beta must be positive")
    dim = int(round(L / h)) - 1
    if not 1 <= k <= dim:
        raise InvalidArgumentError(f"need k <= L/h - 1 = {dim}, got k={k}")
    if replicates < 1:
        raise InvalidArgumentError("replicates must be positive")
    src = SamplerKind.SAO if noise else SamplerKind.SYNTHETIC
    rows = _run_replicates(_sao_one,
                           [(beta, L, h, k, seed, r, noise) for r in range(replicates)],
                           workers)
    configs = tuple(PointConfiguration(points=tuple(map(float, row)), source=src) for row in rows)
    return EnsembleSample(configs=configs, n=None, seed=seed,
                          replicate_count=replicates, sampler=src)


def thin(config: PointConfiguration, gamma: float, seed: int) -> PointConfiguration:
    """Keep each point independently with probability gamma."""
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise InvalidArgumentError(f"gamma must lie in [0, 1], got {gamma!r}")
    if gamma == 1.0:
        return config
    if gamma == 0.0:
        return PointConfiguration(points=(), source=config.source)
    rng = np.random.default_rng(seed)
    keep = rng.random(config.k_kept) < gamma
    pts = tuple(p for p, kept in zip(config.points, keep) if kept)
    return PointConfiguration(points=pts, source=config.source)


def write_sample(fh: BinaryIO, sample: EnsembleSample) -> None:
    """Binary layout: magic 'KPZE', version u32, k u32, replicates u64,
    seed u64, then replicates*k little-endian float64 points."""
    fh.write(MAGIC)
    fh.write(struct.pack("<IIQQ", FORMAT_VERSION, sample.k,
                         sample.replicate_count, sample.seed))
    fh.write(sample.as_array().astype("<f8").tobytes())


def read_sample(fh: BinaryIO, sampler: SamplerKind = SamplerKind.TRIDIAG,
                n: Optional[int] = None) -> EnsembleSample:
    magic = fh.read(4)
    if magic != MAGIC:
        raise InvalidArgumentError(f"bad magic {magic!r}, expected {MAGIC!r}")
    version, k, replicates, seed = struct.unpack("<IIQQ", fh.read(24))
    if version != FORMAT_VERSION:
        raise InvalidArgumentError(f"unsupported format version {version}")
    data = np.frombuffer(fh.read(8 * k * replicates), dtype="<f8")
    if data.size != k * replicates:
        raise InvalidArgumentError("truncated sample file")
    data = data.reshape(replicates, k)
    configs = tuple(PointConfiguration(points=tuple(map(float, row)), source=sampler)
                    for row in data)
    return EnsembleSample(configs=configs, n=n, seed=seed,
                          replicate_count=replicates, sampler=sampler)
