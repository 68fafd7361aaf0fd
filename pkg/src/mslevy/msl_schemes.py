"""Weighted-sum approximation schemes for multistable Levy motion on the
dyadic grid, whole-line gluing, and the classical stable FCLT sum.

All three unit-interval schemes share the same symmetric stable draws
X(k, n); they differ only in the deterministic or arrival-driven weights:

- field-local weights (2^-n)^(1/alpha_n(k/2^n)) summed to floor(2^n u),
- the same weights summed to the floor of the floor(2^n u)-th Poisson
  arrival time (summand exponents clamped at the right endpoint),
- shared-arrival weights (1/Gamma_{2^n})^(1/alpha_n(k/2^n)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .alpha_model import AlphaFunction
from .errors import ParameterError
from .stable_core import (RandomStream, poisson_arrivals, sample_symmetric,
                          symmetric_from_uniform_pairs)

# substream tags (arbitrary fixed constants; see RandomStream.child)
_TAG_ARRIVALS = 0xA121
_TAG_SEGMENT = 0x5E6
_TAG_DYADIC = 0xD1AD


@dataclass(frozen=True)
class PathGrid:
    """A sampled path: strictly increasing times starting at 0 and the
    matching values with value 0 at time 0."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        t = np.ascontiguousarray(self.times, dtype=float)
        v = np.ascontiguousarray(self.values, dtype=float)
        if t.size == 0 or t.size != v.size:
            raise ParameterError("times and values must be non-empty and equally long")
        if t[0] != 0.0 or v[0] != 0.0:
            raise ParameterError("paths start at (0, 0)")
        if np.any(np.diff(t) <= 0.0):
            raise ParameterError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.times.size)

    def value_at(self, u: float) -> float:
        """Path value at the last grid time <= u (paths are cadlag steps)."""
        i = int(np.searchsorted(self.times, u + 1e-12, side="right")) - 1
        return float(self.values[max(i, 0)])


@dataclass(frozen=True)
class SchemeConfig:
    """Configuration of one dyadic-level simulation run.

    ``alpha_n`` optionally substitutes the exponent actually used at this
    level (a uniform approximation of ``af``); ``nested`` switches the
    fresh-draw convention to draw reuse by dyadic address, so refining n
    keeps the draws already attached to coarser grid points.
    """

    n: int
    af: AlphaFunction
    stream: RandomStream
    alpha_n: AlphaFunction | None = None
    nested: bool = False

    def __post_init__(self) -> None:
        if not (1 <= self.n <= 26):
            raise ParameterError(f"dyadic level n must lie in [1, 26], got {self.n}")

    @property
    def effective_alpha(self) -> AlphaFunction:
        return self.alpha_n if self.alpha_n is not None else self.af

    def alpha_sup_distance(self, probes: int = 1025) -> float:
        """sup |alpha_n - alpha| over a probe grid (0 when alpha_n is None)."""
        if self.alpha_n is None:
            return 0.0
        t0, t1 = self.af.domain
        xs = np.linspace(t0, t1, probes)
        xs = np.concatenate([xs, np.asarray(self.af.breakpoints, dtype=float),
                             np.asarray(self.alpha_n.breakpoints, dtype=float)])
        xs = np.clip(xs, t0, t1)
        return float(np.max(np.abs(self.af(xs) - self.alpha_n(xs))))


def _dyadic_times(n: int) -> np.ndarray:
    m = 2 ** n
    return np.arange(m + 1, dtype=float) / m


def _grid_alphas(cfg: SchemeConfig) -> np.ndarray:
    m = 2 ** cfg.n
    ks = np.arange(1, m + 1, dtype=float) / m
    return np.asarray(cfg.effective_alpha(ks), dtype=float)


def _coeffs(base: float, alphas: np.ndarray) -> np.ndarray:
    return base ** (1.0 / alphas)


def _dyadic_address_index(k: int, n: int) -> int:
    """Enumerate dyadic rationals k/2^n in lowest terms: 1 -> 0 and the
    level-m odd numerators j -> 2^(m-1) + (j-1)/2."""
    tz = (k & -k).bit_length() - 1
    j = k >> tz
    level = n - tz
    if level == 0:
        return 0
    return (1 << (level - 1)) + (j - 1) // 2


def _nested_draws(cfg: SchemeConfig, alphas: np.ndarray) -> np.ndarray:
    """Symmetric draws attached to dyadic addresses instead of (k, n) pairs,
    so X(2k, n+1) reuses X(k, n) exactly."""
    m = 2 ** cfg.n
    u1 = np.empty(m)
    u2 = np.empty(m)
    for k in range(1, m + 1):
        gen = cfg.stream.child(_TAG_DYADIC, _dyadic_address_index(k, cfg.n)).generator()
        pair = gen.random(2)
        u1[k - 1] = pair[0]
        u2[k - 1] = pair[1]
    return symmetric_from_uniform_pairs(alphas, u1, u2)


def _scheme_draws(cfg: SchemeConfig, alphas: np.ndarray) -> np.ndarray:
    if cfg.nested:
        return _nested_draws(cfg, alphas)
    return sample_symmetric(alphas, cfg.stream)


def simulate_li(cfg: SchemeConfig) -> PathGrid:
    """Field-local weighted-sum path on the dyadic grid k/2^n."""
    alphas = _grid_alphas(cfg)
    x = _scheme_draws(cfg, alphas)
    coeffs = _coeffs(2.0 ** -cfg.n, alphas)
    values = np.concatenate([[0.0], np.cumsum(coeffs * x)])
    return PathGrid(times=_dyadic_times(cfg.n), values=values)


def simulate_lr(cfg: SchemeConfig) -> PathGrid:
    """Arrival-driven variant: the value at k/2^n sums the first
    floor(Gamma_k) weighted draws, where Gamma_k is the k-th unit-rate
    arrival time drawn from a dedicated substream.

    Summand indices may exceed 2^n, so the exponent argument is clamped to
    min(j/2^n, 1); a Gamma_k below 1 leaves the value at exactly 0.
    """
    m = 2 ** cfg.n
    arrivals = poisson_arrivals(1.0, m, cfg.stream.child(_TAG_ARRIVALS)).times
    counts = np.floor(arrivals).astype(int)
    total = int(counts[-1])
    if total > 0:
        js = np.arange(1, total + 1, dtype=float) / m
        alphas = np.asarray(cfg.effective_alpha(np.minimum(js, 1.0)), dtype=float)
        x = _scheme_draws(cfg, alphas)
        prefix = np.concatenate([[0.0], np.cumsum(_coeffs(2.0 ** -cfg.n, alphas) * x)])
    else:
        prefix = np.zeros(1)
    values = np.concatenate([[0.0], prefix[np.minimum(counts, total)]])
    return PathGrid(times=_dyadic_times(cfg.n), values=values)


def simulate_lc(cfg: SchemeConfig, gamma_value: float | None = None) -> PathGrid:
    """Shared-arrival variant: every summand is weighted by
    (1/Gamma)^(1/alpha_n(k/2^n)) with one Gamma for the whole path (the
    2^n-th unit-rate arrival time, drawn as a Gamma(2^n, 1) variate from the
    dedicated arrival substream).

    ``gamma_value`` overrides the draw; with gamma_value = 2^n the path
    coincides exactly with the field-local scheme under the same stream.
    """
    m = 2 ** cfg.n
    if gamma_value is None:
        gamma_value = float(cfg.stream.child(_TAG_ARRIVALS).generator().gamma(shape=m))
    if gamma_value <= 0.0:
        raise ParameterError(f"arrival total must be positive, got {gamma_value}")
    alphas = _grid_alphas(cfg)
    x = _scheme_draws(cfg, alphas)
    values = np.concatenate([[0.0], np.cumsum(_coeffs(1.0 / gamma_value, alphas) * x)])
    return PathGrid(times=_dyadic_times(cfg.n), values=values)


def glue_whole_line(af: AlphaFunction, n: int, stream: RandomStream) -> PathGrid:
    """Concatenate independent unit-interval paths into one path on [0, T].

    Segment k runs the field-local scheme under the shifted exponent
    x -> alpha(x + k) and an independent substream; integer grid points
    carry the running sum of completed segment endpoints.
    """
    t0, t1 = af.domain
    if t0 != 0.0 or abs(t1 - round(t1)) > 1e-12 or t1 < 1.0:
        raise ParameterError("whole-line gluing needs an exponent domain [0, T], T integer >= 1")
    segments = int(round(t1))
    m = 2 ** n
    times = [np.zeros(1)]
    values = [np.zeros(1)]
    offset = 0.0
    for k in range(segments):
        seg = simulate_li(SchemeConfig(n=n, af=af.segment(k),
                                       stream=stream.child(_TAG_SEGMENT, k)))
        times.append(k + seg.times[1:])
        values.append(offset + seg.values[1:])
        offset += float(seg.values[-1])
    return PathGrid(times=np.concatenate(times), values=np.concatenate(values))


def simulate_stable_fclt(alpha: float, n_terms: int, stream: RandomStream) -> PathGrid:
    """Partial-sum path sum_{k <= floor(n u)} n^(-1/alpha) Y_k of i.i.d.
    symmetric alpha-stable draws on the grid u = k/n."""
    if not (0.0 < alpha <= 2.0):
        raise ParameterError(f"alpha must lie in (0, 2], got {alpha}")
    if n_terms < 1:
        raise ParameterError("n_terms must be >= 1")
    x = sample_symmetric(np.full(n_terms, float(alpha)), stream)
    values = np.concatenate([[0.0], np.cumsum(n_terms ** (-1.0 / alpha) * x)])
    times = np.arange(n_terms + 1, dtype=float) / n_terms
    return PathGrid(times=times, values=values)


# ---------------------------------------------------------------------------
# ensemble drivers (replicate r draws from stream.child(r))
# ---------------------------------------------------------------------------

def grid_index(n: int, u: float) -> int:
    """Index of the last dyadic grid point <= u (paths are cadlag steps)."""
    return int(math.floor(2 ** n * u + 1e-9))

def marginal_ensemble(scheme: str, af: AlphaFunction, n: int, us, ensemble: int,
                      stream: RandomStream, alpha_n: AlphaFunction | None = None,
                      nested: bool = False) -> np.ndarray:
    """Matrix (ensemble x len(us)) of scheme path values at the times ``us``.

    Replicate r is the full path simulation under stream.child(r), so the
    row equals the corresponding single-path run exactly.
    """
    simulators = {"li": simulate_li, "lr": simulate_lr, "lc": simulate_lc}
    if scheme not in simulators:
        raise ParameterError(f"unknown scheme {scheme!r}; expected one of {sorted(simulators)}")
    if ensemble < 1:
        raise ParameterError("ensemble size must be >= 1")
    idx = np.asarray([grid_index(n, u) for u in us], dtype=int)
    out = np.empty((ensemble, idx.size))
    for r in range(ensemble):
        cfg = SchemeConfig(n=n, af=af, stream=stream.child(r), alpha_n=alpha_n,
                           nested=nested)
        out[r] = simulators[scheme](cfg).values[idx]
    return out


def li_window_ensemble(af: AlphaFunction, n: int, k0: int, cell_offsets, ensemble: int,
                       stream: RandomStream,
                       alpha_n: AlphaFunction | None = None) -> np.ndarray:
    """Matrix (ensemble x len(cell_offsets)) of field-local increments
    L(k0/2^n + c/2^n) - L(k0/2^n) for each cell count c.

    Simulates only the window of cells actually spanned, which keeps large
    levels affordable for increment statistics.
    """
    m = 2 ** n
    offs = np.asarray(cell_offsets, dtype=int)
    if np.any(offs < 1) or k0 < 0 or k0 + int(offs.max()) > m:
        raise ParameterError("cell window must lie inside the dyadic grid")
    eff = alpha_n if alpha_n is not None else af
    ks = (k0 + np.arange(1, int(offs.max()) + 1, dtype=float)) / m
    alphas = np.asarray(eff(ks), dtype=float)
    coeffs = _coeffs(2.0 ** -n, alphas)
    out = np.empty((ensemble, offs.size))
    for r in range(ensemble):
        x = sample_symmetric(alphas, stream.child(r))
        cum = np.cumsum(coeffs * x)
        out[r] = cum[offs - 1]
    return out


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def path_to_csv(path: PathGrid, fp, meta: dict | None = None) -> None:
    """Write ``t,value`` rows in full double precision; an optional metadata
    dict goes into a leading ``#``-comment line so the artifact carries its
    own provenance."""
    if meta:
        import json
        fp.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    fp.write("t,value\n")
    for t, v in zip(path.times, path.values):
        fp.write(f"{float(t)!r},{float(v)!r}\n")


def ensemble_to_csv(paths, fp, meta: dict | None = None) -> None:
    """Long-format ``t,value,replicate`` rows for a path ensemble."""
    if meta:
        import json
        fp.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    fp.write("t,value,replicate\n")
    for r, path in enumerate(paths):
        for t, v in zip(path.times, path.values):
            fp.write(f"{float(t)!r},{float(v)!r},{r}\n")
