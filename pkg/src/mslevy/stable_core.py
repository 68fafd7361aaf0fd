"""Alpha-stable building blocks: parameters, seeded random streams,
Chambers-Mallows-Stuck sampling, characteristic functions, tail constants
and unit-rate arrival times.

Conventions follow the classical S_alpha(sigma, beta, mu) parameterisation:
the symmetric characteristic function is exp(-sigma^alpha |theta|^alpha),
and alpha = 2 is Gaussian with variance 2 sigma^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ParameterError

_MASK64 = (1 << 64) - 1

# Switch to the dedicated alpha = 1 formula inside this window to avoid the
# 0/0 forms of the generic CMS branch.
ALPHA_ONE_TOLERANCE = 1e-8


def _splitmix64(x: int) -> int:
    """One round of the splitmix64 mixer (public-domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RandomStream:
    """A reproducible, addressable source of randomness.

    Identical (seed, stream_id) pairs always produce identical draw
    sequences; distinct stream_ids under one seed are statistically
    independent.  Backed by the counter-based Philox generator keyed on
    (seed, stream_id), so streams never share state.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        key = np.array([self.seed & _MASK64, self.stream_id & _MASK64],
                       dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, *indices: int) -> "RandomStream":
        """Derive an independent substream addressed by an index path.

        The stream_id of the child is a splitmix64 fold of the parent id
        and the indices, so different index paths give (for all practical
        purposes) non-colliding, independent streams.
        """
        sid = self.stream_id & _MASK64
        for ix in indices:
            sid = _splitmix64(sid ^ _splitmix64(int(ix) & _MASK64))
        return RandomStream(self.seed, sid)

    def children(self, count: int) -> list["RandomStream"]:
        return [self.child(i) for i in range(count)]


@dataclass(frozen=True)
class StableParams:
    """Parameters of a stable law S_alpha(sigma, beta, mu)."""

    alpha: float
    sigma: float = 1.0
    beta: float = 0.0
    mu: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 2.0):
            raise ParameterError(f"alpha must lie in (0, 2], got {self.alpha}")
        if self.sigma < 0.0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")
        if not (-1.0 <= self.beta <= 1.0):
            raise ParameterError(f"beta must lie in [-1, 1], got {self.beta}")
        if self.alpha == 2.0 and self.beta != 0.0:
            raise ParameterError("beta must be 0 when alpha = 2")


def _uniform_pairs(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw n interleaved uniform pairs.

    Interleaving keeps draws prefix-consistent: requesting m < n pairs from
    a fresh generator yields exactly the first m pairs of the longer
    request, which makes dyadic/level-indexed draws reusable.
    """
    u = rng.random(2 * n)
    return u[0::2], u[1::2]


def _angles_and_exponentials(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    u1, u2 = _uniform_pairs(rng, n)
    phi = np.pi * (u1 - 0.5)
    # inverse-CDF exponential; floor keeps the (prob 2^-53) zero draw harmless
    w = np.maximum(-np.log1p(-u2), 1e-16)
    return phi, w


def _sym_standard(alphas: np.ndarray, phi: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Symmetric standard CMS transform, elementwise in alpha.

    Valid for the whole range (0, 2]; alpha = 2 reduces to 2 sqrt(W) sin(phi)
    (variance 2) without a special case.  Only a neighbourhood of alpha = 1
    needs the dedicated tan(phi) branch.
    """
    out = np.empty_like(phi)
    near_one = np.abs(alphas - 1.0) < ALPHA_ONE_TOLERANCE
    if np.any(near_one):
        out[near_one] = np.tan(phi[near_one])
    rest = ~near_one
    if np.any(rest):
        a = alphas[rest]
        p = phi[rest]
        ww = w[rest]
        inv_a = 1.0 / a
        out[rest] = (np.sin(a * p) / np.cos(p) ** inv_a
                     * (np.cos((1.0 - a) * p) / ww) ** ((1.0 - a) * inv_a))
    return out


def sample_symmetric(alphas: np.ndarray, stream: RandomStream) -> np.ndarray:
    """Draw independent symmetric standard stable variates, one per entry of
    ``alphas`` (each entry may differ).  Deterministic given the stream."""
    alphas = np.ascontiguousarray(alphas, dtype=float)
    if alphas.size == 0:
        return np.empty(0)
    if np.any(alphas <= 0.0) or np.any(alphas > 2.0):
        raise ParameterError("stability indices must lie in (0, 2]")
    phi, w = _angles_and_exponentials(stream.generator(), alphas.size)
    return _sym_standard(alphas, phi, w)


def symmetric_from_uniform_pairs(alphas: np.ndarray, u1, u2) -> np.ndarray:
    """Symmetric standard stable variates from explicit uniform pairs.

    Lets callers manage draw addressing themselves (e.g. one pair per dyadic
    rational) while staying bit-identical to :func:`sample_symmetric` fed the
    same uniforms.
    """
    alphas = np.ascontiguousarray(alphas, dtype=float)
    if np.any(alphas <= 0.0) or np.any(alphas > 2.0):
        raise ParameterError("stability indices must lie in (0, 2]")
    phi = np.pi * (np.ascontiguousarray(u1, dtype=float) - 0.5)
    w = np.maximum(-np.log1p(-np.ascontiguousarray(u2, dtype=float)), 1e-16)
    return _sym_standard(alphas, phi, w)


def sample_stable(params: StableParams, n: int, stream: RandomStream) -> np.ndarray:
    """Draw ``n`` i.i.d. variates from S_alpha(sigma, beta, mu) via the
    Chambers-Mallows-Stuck method.

    Uses the dedicated alpha = 1 branch within ALPHA_ONE_TOLERANCE of 1 and
    the skewed CMS branch otherwise; n = 0 returns an empty array.
    """
    if n < 0:
        raise ParameterError("sample size must be >= 0")
    if n == 0:
        return np.empty(0)
    a, sigma, beta, mu = params.alpha, params.sigma, params.beta, params.mu
    phi, w = _angles_and_exponentials(stream.generator(), n)

    if abs(a - 1.0) < ALPHA_ONE_TOLERANCE:
        if beta == 0.0:
            x = np.tan(phi)
        else:
            bphi = 0.5 * np.pi + beta * phi
            x = (2.0 / np.pi) * (bphi * np.tan(phi)
                                 - beta * np.log((0.5 * np.pi * w * np.cos(phi)) / bphi))
        # scaling a 1-stable law shifts the location by (2/pi) beta sigma ln sigma
        shift = (2.0 / np.pi) * beta * sigma * math.log(sigma) if sigma > 0.0 else 0.0
        return sigma * x + shift + mu

    if beta == 0.0:
        x = _sym_standard(np.full(n, a), phi, w)
    else:
        zeta = beta * math.tan(0.5 * np.pi * a)
        b0 = math.atan(zeta) / a
        scale0 = (1.0 + zeta * zeta) ** (0.5 / a)
        x = (scale0 * np.sin(a * (phi + b0)) / np.cos(phi) ** (1.0 / a)
             * (np.cos(phi - a * (phi + b0)) / w) ** ((1.0 - a) / a))
    return sigma * x + mu


def stable_cf(params: StableParams, theta) -> np.ndarray | complex:
    """Characteristic function of S_alpha(sigma, beta, mu).

    Returns exp(-sigma^alpha |theta|^alpha [1 - i beta sgn(theta)
    tan(pi alpha / 2)] + i mu theta) for alpha != 1 and the log-corrected
    form at alpha = 1; beta = 0 collapses to exp(-sigma^alpha|theta|^alpha).
    """
    a, sigma, beta, mu = params.alpha, params.sigma, params.beta, params.mu
    th = np.asarray(theta, dtype=float)
    abs_th = np.abs(th)
    if abs(a - 1.0) < ALPHA_ONE_TOLERANCE:
        with np.errstate(divide="ignore", invalid="ignore"):
            log_term = np.where(abs_th > 0.0, np.log(abs_th), 0.0)
        exponent = (-sigma * abs_th
                    * (1.0 + 1j * beta * (2.0 / np.pi) * np.sign(th) * log_term)
                    + 1j * mu * th)
    else:
        skew = 1.0 - 1j * beta * np.sign(th) * math.tan(0.5 * np.pi * a)
        exponent = -(sigma ** a) * abs_th ** a * skew + 1j * mu * th
    out = np.exp(exponent)
    if np.isscalar(theta):
        return complex(out)
    return out


def compute_C_alpha(u: float) -> float:
    """Normalising constant C_u = (integral_0^inf x^-u sin x dx)^-1.

    Closed form (1 - u) / (Gamma(2 - u) cos(pi u / 2)) for u != 1 and 2/pi
    at u = 1; defined for u in (0, 2).
    """
    if not (0.0 < u < 2.0):
        raise DomainError(f"the tail constant is defined for u in (0, 2), got {u}")
    if abs(u - 1.0) < 1e-12:
        return 2.0 / math.pi
    return (1.0 - u) / (math.gamma(2.0 - u) * math.cos(0.5 * math.pi * u))


class TailAsymptote(NamedTuple):
    upper: float
    lower: float


def tail_asymptote(params: StableParams, lam: float) -> TailAsymptote:
    """Asymptotic tail values for a stable law with alpha < 2.

    Returns (upper, lower) where P(Z > lam) ~ upper and P(Z < -lam) ~ lower
    as lam -> infinity:

        upper = C_alpha (1 + beta)/2 sigma^alpha lam^-alpha
        lower = C_alpha (1 - beta)/2 sigma^alpha lam^-alpha
    """
    if params.alpha >= 2.0:
        raise DomainError("power tails require alpha < 2 (the Gaussian tail decays faster)")
    if lam <= 0.0:
        raise DomainError(f"lam must be positive, got {lam}")
    base = compute_C_alpha(params.alpha) * params.sigma ** params.alpha * lam ** -params.alpha
    return TailAsymptote(upper=0.5 * (1.0 + params.beta) * base,
                         lower=0.5 * (1.0 - params.beta) * base)


@dataclass(frozen=True)
class PoissonArrivals:
    """Arrival times of a homogeneous Poisson process."""

    rate: float
    times: np.ndarray

    def __post_init__(self) -> None:
        if self.rate <= 0.0:
            raise ParameterError(f"rate must be positive, got {self.rate}")
        t = np.asarray(self.times, dtype=float)
        if t.size and (np.any(t <= 0.0) or np.any(np.diff(t) <= 0.0)):
            raise ParameterError("arrival times must be strictly increasing and positive")
        object.__setattr__(self, "times", t)

    def __len__(self) -> int:
        return int(self.times.size)


def poisson_arrivals(rate: float, count: int, stream: RandomStream) -> PoissonArrivals:
    """First ``count`` arrival times of a rate-``rate`` Poisson process.

    Inter-arrival gaps are drawn with the same prefix-consistent pair
    convention as the stable sampler, so shorter requests are prefixes of
    longer ones under the same stream.
    """
    if rate <= 0.0:
        raise ParameterError(f"rate must be positive, got {rate}")
    if count < 0:
        raise ParameterError("count must be >= 0")
    if count == 0:
        return PoissonArrivals(rate=rate, times=np.empty(0))
    _, gaps = _uniform_pairs(stream.generator(), count)
    gaps = np.maximum(-np.log1p(-gaps), 1e-16) / rate
    return PoissonArrivals(rate=rate, times=np.cumsum(gaps))
