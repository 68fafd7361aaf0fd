"""Continuous symmetric stable processes built from the dyadic triangle
(tent) basis, the scale parameter of their marginals, and the continuous
multistable approximation that chains one such process per dyadic cell.

The process at truncation level J is
    X_J(t) = sum_{j=0..J} sum_k 2^(-jd) Z_jk phi(2^j t - k),
with i.i.d. symmetric alpha-stable Z_jk and the tent function phi.  Within
one level the tents have disjoint interiors, which yields exact identities
(level-increment sup norms, scale values at dyadic points) this module and
its tests rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alpha_model import AlphaFunction
from .errors import DomainError, ParameterError
from .msl_schemes import PathGrid
from .stable_core import (RandomStream, sample_symmetric,
                          symmetric_from_uniform_pairs)

_TAG_LEVEL = 0x1E7E1
_TAG_CELL = 0xCE11

_SERIES_TAIL_TOL = 1e-14


@dataclass(frozen=True)
class ContinuousStableConfig:
    """Triangle-series process parameters: stability index, basis decay
    exponent and inclusive truncation level.

    The uniform-convergence regime needs d > 1/alpha; the boundary case
    d = 1/alpha only gives moment (L^p) convergence and must be requested
    explicitly via ``lp_mode``.
    """

    alpha: float
    d: float
    levels: int = 16
    lp_mode: bool = False

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 2.0):
            raise ParameterError(f"alpha must lie in (0, 2], got {self.alpha}")
        if self.levels < 0:
            raise ParameterError("truncation level must be >= 0")
        floor = 1.0 / self.alpha
        if self.lp_mode:
            if self.d < floor - 1e-12:
                raise ParameterError(
                    f"moment mode needs d >= 1/alpha = {floor}, got d = {self.d}")
        elif self.d <= floor:
            raise ParameterError(
                f"continuous regime needs d > 1/alpha = {floor}, got d = {self.d}"
                " (pass lp_mode=True to allow the boundary case)")

    @classmethod
    def from_tolerance(cls, alpha: float, d: float, sup_tol: float) -> "ContinuousStableConfig":
        return cls(alpha=alpha, d=d, levels=truncation_level(alpha, d, sup_tol))


def truncation_level(alpha: float, d: float, sup_tol: float) -> int:
    """Truncation level whose deterministic tail bound is below ``sup_tol``.

    Level j contributes at most 2^(-jd) * max_k |Z_jk|, and the level max
    grows like 2^(jc) for any c > 1/alpha; with c midway between 1/alpha
    and d the tail sum_{j>J} 2^(j(c-d)) is geometric.
    """
    if not (0.0 < alpha <= 2.0):
        raise ParameterError(f"alpha must lie in (0, 2], got {alpha}")
    if d <= 1.0 / alpha:
        raise ParameterError("tail bound needs d > 1/alpha")
    if sup_tol <= 0.0:
        raise ParameterError("tolerance must be positive")
    c = 0.5 * (1.0 / alpha + d)
    q = 2.0 ** (c - d)
    j = math.ceil(math.log(sup_tol * (1.0 - q)) / math.log(q)) - 1
    return max(int(j), 0)


def triangle(t):
    """Tent function: 2t on [0, 1/2), 2 - 2t on [1/2, 1], 0 elsewhere."""
    arr = np.asarray(t, dtype=float)
    out = np.maximum(0.0, 1.0 - np.abs(2.0 * arr - 1.0))
    return float(out) if np.isscalar(t) or arr.ndim == 0 else out


def triangle_jk(j: int, k: int, t):
    """Dyadic tent phi(2^j t - k), supported on [k/2^j, (k+1)/2^j]."""
    if j < 0:
        raise DomainError(f"level must be >= 0, got {j}")
    if not (0 <= k <= 2 ** j - 1):
        raise DomainError(f"shift {k} out of range [0, 2^{j} - 1]")
    arr = np.asarray(t, dtype=float)
    out = triangle(np.ldexp(arr, j) - k)
    return float(out) if np.isscalar(t) or arr.ndim == 0 else out


def stable_level_draws(alpha: float, j: int, stream: RandomStream,
                       count: int | None = None) -> np.ndarray:
    """The basis coefficients Z_{j,0..count-1} of one level.

    Each level owns a child stream and draws are laid out by shift index,
    so asking for a shorter prefix (or re-asking at a higher truncation
    level) returns the same leading values.
    """
    if j < 0:
        raise ParameterError(f"level must be >= 0, got {j}")
    if count is None:
        count = 2 ** j
    if not (1 <= count <= 2 ** j):
        raise ParameterError(f"count must lie in [1, 2^{j}], got {count}")
    return sample_symmetric(np.full(count, float(alpha)), stream.child(_TAG_LEVEL, j))


def sample_continuous_stable(cfg: ContinuousStableConfig, t_grid,
                             stream: RandomStream) -> PathGrid:
    """Evaluate one draw of the truncated triangle series on ``t_grid``.

    The grid must start at 0 (where every tent vanishes, so the path does
    too) and stay inside [0, 1].  Draws are addressed per level, so the same
    stream at a higher truncation level refines this path rather than
    replacing it.
    """
    t = np.ascontiguousarray(t_grid, dtype=float)
    if t.size == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0.0):
        raise ParameterError("t_grid must start at 0 and increase strictly")
    if t[-1] > 1.0 or t[0] < 0.0:
        raise DomainError("t_grid must stay inside [0, 1]")
    values = np.zeros_like(t)
    for j in range(cfg.levels + 1):
        pos = np.ldexp(t, j)
        idx = np.minimum(np.floor(pos).astype(np.int64), 2 ** j - 1)
        z = stable_level_draws(cfg.alpha, j, stream, int(idx.max()) + 1)
        values += 2.0 ** (-j * cfg.d) * z[idx] * triangle(pos - idx)
    return PathGrid(times=t, values=values)


def _scale_alpha_series(alpha: float, d: float, t: np.ndarray) -> np.ndarray:
    """sum_j (2^(-jd) phi_j(t))^alpha, summed until the geometric tail
    bound sum_{j>J} 2^(-j alpha d) drops below 1e-14."""
    q = 2.0 ** (-alpha * d)
    total = np.zeros_like(t)
    j = 0
    while q ** (j + 1) / (1.0 - q) >= _SERIES_TAIL_TOL or j == 0:
        pos = np.ldexp(t, j)
        idx = np.minimum(np.floor(pos).astype(np.int64), 2 ** j - 1)
        total += (2.0 ** (-j * d) * triangle(pos - idx)) ** alpha
        j += 1
    return total


def scale_parameter(cfg: ContinuousStableConfig, t):
    """Scale of the series marginal at time t (its CF is
    exp(-scale^alpha |theta|^alpha)); exactly 0 at t = 0 and 1 at t = 1/2."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("scale parameter is defined on [0, 1]")
    out = _scale_alpha_series(cfg.alpha, cfg.d, np.atleast_1d(arr)) ** (1.0 / cfg.alpha)
    return float(out[0]) if np.isscalar(t) or arr.ndim == 0 else out.reshape(arr.shape)


def scale_bounds(cfg: ContinuousStableConfig, t):
    """The claimed envelope (phi(t)^(1/alpha), (1 - 2^(-alpha d))^(-1/alpha))
    for the scale parameter.

    The upper bound always holds: every level contributes at most
    2^(-j alpha d) to scale^alpha, a geometric series.  The lower bound as
    displayed is only valid for alpha <= 1: the level-0 term alone gives
    scale^alpha >= phi(t)^alpha, i.e. scale >= phi(t), which dominates
    phi(t)^(1/alpha) exactly when 1/alpha >= 1.  For alpha > 1 the claimed
    lower bound fails near t in {0, 1/2, 1} (by up to ~8e-3 at alpha = 1.5,
    d = 1); use phi(t) itself as the sound lower envelope there.
    """
    lower = triangle(t) ** (1.0 / cfg.alpha)
    upper = (1.0 - 2.0 ** (-cfg.alpha * cfg.d)) ** (-1.0 / cfg.alpha)
    return lower, upper


def max_deviation_probability(alpha: float, c: float, j: int, n_mc: int,
                              stream: RandomStream) -> float:
    """Monte-Carlo estimate of P(max_{k < 2^j} |Z_jk| > 2^(jc)).

    The level max governs the a.s. convergence rate of the series: for
    c > 1/alpha the probability decays like 2^(-j(alpha c - 1)).
    """
    if not (0.0 < alpha < 2.0):
        raise ParameterError(f"the tail rate needs alpha in (0, 2), got {alpha}")
    if c <= 1.0 / alpha:
        raise ParameterError(f"need c > 1/alpha = {1.0 / alpha}, got {c}")
    if j < 0 or n_mc < 1:
        raise ParameterError("level must be >= 0 and n_mc >= 1")
    m = 2 ** j
    threshold = 2.0 ** (j * c)
    block = max(1, 2_000_000 // m)
    exceed = 0
    done = 0
    b = 0
    while done < n_mc:
        rows = min(block, n_mc - done)
        z = sample_symmetric(np.full(rows * m, float(alpha)), stream.child(j, b))
        exceed += int(np.sum(np.max(np.abs(z.reshape(rows, m)), axis=1) > threshold))
        done += rows
        b += 1
    return exceed / n_mc


# ---------------------------------------------------------------------------
# continuous multistable approximation
# ---------------------------------------------------------------------------
#
# One independent triangle-series process per dyadic cell, time-dilated to
# X~(t) = X(t/2) so its scale stays positive on (0, 1].  The path value is
#
#   S_n(u) = sum_{k < floor(2^n u)} w_k X~_k(2^-n) / s_k
#            + w_K X~_K(u - K/2^n) / s_K,        K = floor(2^n u),
#
# with weights w_k = (2^-n)^(1/alpha(k/2^n)) and the fixed normalizer
# s_k = scale of X~_k at 2^-n, so each completed-cell summand has unit
# scale and the path is continuous across cell boundaries.


@dataclass(frozen=True)
class SnDiagnostics:
    """Per-cell witnesses used by the continuity checks: the normalized
    magnitude of each cell's level-0 coefficient and the completed-cell
    contributions."""

    level0_bound: np.ndarray
    cell_terms: np.ndarray


def _sn_cell_block_sizes(n: int, levels: int) -> list[int]:
    # Level j needs shifts 0..floor(2^(j-n-1)) to cover arguments in
    # [0, 2^(-n-1)]; the count is fixed by (n, j) alone so that every
    # evaluation consumes the same draws in the same order.
    return [(2 ** j) // (2 ** (n + 1)) + 1 for j in range(levels + 1)]


def _sn_cell_values(alpha: float, d: float, levels: int, n: int, gen,
                    args: np.ndarray) -> tuple[np.ndarray, float]:
    """Evaluate one cell's dilated series at ``args`` (within [0, 2^(-n-1)])
    drawing deterministic per-level blocks from ``gen``; also returns the
    cell's level-0 coefficient Z_00."""
    acc = np.zeros_like(args)
    z00 = 0.0
    for j, cnt in enumerate(_sn_cell_block_sizes(n, levels)):
        u = gen.random(2 * cnt)
        z = symmetric_from_uniform_pairs(np.full(cnt, alpha), u[0::2], u[1::2])
        if j == 0:
            z00 = float(z[0])
        pos = np.ldexp(args, j)
        idx = np.minimum(np.floor(pos).astype(np.int64), cnt - 1)
        acc += 2.0 ** (-j * d) * z[idx] * triangle(pos - idx)
    return acc, z00


def _sigma_tilde_boundary(alphas: np.ndarray, d: float, n: int) -> np.ndarray:
    """Exact dilated scale at argument 2^-n: only the shift-0 tents of
    levels j <= n are active there, with values 2^(j-n)."""
    js = np.arange(n + 1, dtype=float)
    coef = 2.0 ** (-js * d) * 2.0 ** (js - n)
    return (coef[None, :] ** alphas[:, None]).sum(axis=1) ** (1.0 / alphas)


def simulate_sn(n: int, af: AlphaFunction, stream: RandomStream, t_grid,
                d: float = 1.0, levels: int = 16, with_diagnostics: bool = False):
    """One draw of the continuous multistable approximation on ``t_grid``.

    Requires ``levels >= n`` so the per-cell normalizer (which the dilation
    turns into a finite sum over levels 0..n) matches the scale of the
    truncated series exactly, making each completed-cell summand exactly
    unit-scale stable.
    """
    if not (1 <= n <= 26):
        raise ParameterError(f"dyadic level n must lie in [1, 26], got {n}")
    if levels < n:
        raise ParameterError(
            f"truncation level {levels} cannot resolve cell width 2^-{n}; need levels >= n")
    t0, t1 = af.domain
    if t0 != 0.0 or t1 < 1.0:
        raise ParameterError("the exponent function must cover [0, 1]")
    t = np.ascontiguousarray(t_grid, dtype=float)
    if t.size == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0.0):
        raise ParameterError("t_grid must start at 0 and increase strictly")
    if t[-1] > 1.0:
        raise DomainError("t_grid must stay inside [0, 1]")

    m = 2 ** n
    alphas = np.asarray(af(np.arange(m, dtype=float) / m), dtype=float)
    if d <= 1.0 / float(np.min(alphas)):
        raise ParameterError(
            f"continuous regime needs d > 1/alpha on every cell; d = {d} fails")
    weights = (2.0 ** -n) ** (1.0 / alphas)
    sig = _sigma_tilde_boundary(alphas, d, n)

    cell_of = np.floor(np.ldexp(t, n)).astype(np.int64)
    args = t - cell_of / m
    cell_terms = np.empty(m)
    level0 = np.empty(m)
    active = np.zeros_like(t)
    half = 2.0 ** (-n - 1)
    for k in range(m):
        sel = np.flatnonzero((cell_of == k) & (args > 0.0))
        eval_args = np.concatenate([args[sel] / 2.0, [half]])
        gen = stream.child(_TAG_CELL, k).generator()
        vals, z00 = _sn_cell_values(float(alphas[k]), d, levels, n, gen, eval_args)
        cell_terms[k] = weights[k] * vals[-1] / sig[k]
        level0[k] = z00
        if sel.size:
            active[sel] = weights[k] * vals[:-1] / sig[k]
    prefix = np.concatenate([[0.0], np.cumsum(cell_terms)])
    path = PathGrid(times=t, values=prefix[cell_of] + active)
    if not with_diagnostics:
        return path
    diag = SnDiagnostics(level0_bound=weights * np.abs(level0) / sig,
                         cell_terms=cell_terms)
    return path, diag


def sn_boundary_ensemble(n: int, af: AlphaFunction, stream: RandomStream,
                         boundary_ks, ensemble: int, d: float = 1.0,
                         levels: int = 16) -> np.ndarray:
    """Matrix (ensemble x len(boundary_ks)) of S_n values at the cell
    boundaries k/2^n, bit-identical to full simulate_sn runs under
    stream.child(replicate).

    At a boundary only the shift-0 coefficients of levels 0..n enter, and
    those are exactly the first n+1 draw pairs of each cell's generator, so
    the ensemble touches a short prefix of every cell stream instead of
    evaluating whole paths.
    """
    if levels < n:
        raise ParameterError("need levels >= n (matches simulate_sn)")
    m = 2 ** n
    ks = np.asarray(boundary_ks, dtype=np.int64)
    if np.any(ks < 0) or np.any(ks > m):
        raise ParameterError("boundary indices must lie in [0, 2^n]")
    alphas = np.asarray(af(np.arange(m, dtype=float) / m), dtype=float)
    weights = (2.0 ** -n) ** (1.0 / alphas)
    sig = _sigma_tilde_boundary(alphas, d, n)
    pair_count = n + 1
    out = np.empty((ensemble, ks.size))
    flat_alphas = np.repeat(alphas, pair_count)
    for r in range(ensemble):
        base = stream.child(r)
        u = np.empty((m, 2 * pair_count))
        for k in range(m):
            u[k] = base.child(_TAG_CELL, k).generator().random(2 * pair_count)
        z = symmetric_from_uniform_pairs(flat_alphas, u[:, 0::2].ravel(),
                                         u[:, 1::2].ravel()).reshape(m, pair_count)
        xt = np.zeros(m)
        for j in range(pair_count):
            xt += 2.0 ** (-j * d) * z[:, j] * 2.0 ** (j - n)
        prefix = np.concatenate([[0.0], np.cumsum(weights * xt / sig)])
        out[r] = prefix[ks]
    return out
