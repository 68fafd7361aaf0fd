"""Empirical characteristic-function (ECF) machinery and the statistical
tests that turn the distributional limit claims into pass/fail checks.

Conventions shared by every test here:

- ensembles assign replicate r the stream ``stream.child(r)``, so any single
  row can be reproduced as a standalone simulation;
- ECF reductions are chunked with compensated (Kahan) combination across
  chunks, making every report bit-reproducible for a fixed seed;
- the default tolerance is 5 / sqrt(ensemble), five times the per-coordinate
  Monte-Carlo standard error of an ECF value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alpha_model import AlphaFunction, exponent_integral
from .errors import GridResolutionError, ParameterError
from .msl_schemes import grid_index, li_window_ensemble, marginal_ensemble
from .stable_core import RandomStream

_CHUNK_ELEMENTS = 2_000_000


def theta_grid_default() -> np.ndarray:
    """61 equispaced points on [-3, 3]: moderate frequencies, where stable
    CFs differ most and are still well above the Monte-Carlo noise floor."""
    return np.linspace(-3.0, 3.0, 61)


def _kahan_combine(acc: np.ndarray, comp: np.ndarray, term: np.ndarray) -> None:
    y = term - comp
    t = acc + y
    comp[...] = (t - acc) - y
    acc[...] = t


def empirical_cf(samples, theta_grid) -> np.ndarray:
    """(1/N) sum_j exp(i theta x_j) on the grid; exact 1 at theta = 0."""
    x = np.ascontiguousarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ParameterError("empirical CF needs at least one sample")
    th = np.ascontiguousarray(theta_grid, dtype=float).ravel()
    acc = np.zeros(th.size, dtype=complex)
    comp = np.zeros(th.size, dtype=complex)
    rows = max(1, _CHUNK_ELEMENTS // max(th.size, 1))
    for start in range(0, x.size, rows):
        block = np.exp(1j * np.outer(x[start:start + rows], th)).sum(axis=0)
        _kahan_combine(acc, comp, block)
    return acc / x.size


def empirical_cf_joint(samples, theta_tuples) -> np.ndarray:
    """(1/N) sum_j exp(i <theta, x_j>) for row vectors x_j and a list of
    frequency tuples; the joint-law analogue of :func:`empirical_cf`."""
    x = np.ascontiguousarray(samples, dtype=float)
    if x.ndim != 2 or x.size == 0:
        raise ParameterError("joint empirical CF needs a nonempty (N, J) sample matrix")
    th = np.ascontiguousarray(theta_tuples, dtype=float)
    if th.ndim != 2 or th.shape[1] != x.shape[1]:
        raise ParameterError("frequency tuples must match the sample dimension")
    acc = np.zeros(th.shape[0], dtype=complex)
    comp = np.zeros(th.shape[0], dtype=complex)
    rows = max(1, _CHUNK_ELEMENTS // max(th.shape[0], 1))
    for start in range(0, x.shape[0], rows):
        block = np.exp(1j * (x[start:start + rows] @ th.T)).sum(axis=0)
        _kahan_combine(acc, comp, block)
    return acc / x.shape[0]


@dataclass(frozen=True)
class EcfReport:
    """One ECF-versus-theory comparison on a frequency grid."""

    theta_grid: np.ndarray
    empirical: np.ndarray
    theoretical: np.ndarray
    sup_deviation: float
    mc_stderr: float
    n_samples: int
    label: str = ""

    def passes(self, tolerance: float | None = None) -> bool:
        tol = 5.0 * self.mc_stderr if tolerance is None else tolerance
        return bool(self.sup_deviation < tol)

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "theta_grid": [float(t) for t in self.theta_grid],
            "empirical_re": [float(v.real) for v in self.empirical],
            "empirical_im": [float(v.imag) for v in self.empirical],
            "theoretical_re": [float(v.real) for v in self.theoretical],
            "theoretical_im": [float(v.imag) for v in self.theoretical],
            "sup_deviation": float(self.sup_deviation),
            "mc_stderr": float(self.mc_stderr),
            "n_samples": int(self.n_samples),
            "passes_default": self.passes(),
        }


def ecf_report(samples, theoretical, theta_grid=None, label: str = "") -> EcfReport:
    """Compare samples against a theoretical CF (callable on theta or an
    array of values aligned with the grid)."""
    th = theta_grid_default() if theta_grid is None else np.ascontiguousarray(theta_grid, dtype=float)
    emp = empirical_cf(samples, th)
    theo = np.asarray([theoretical(t) for t in th], dtype=complex) if callable(theoretical) \
        else np.ascontiguousarray(theoretical, dtype=complex)
    if theo.size != th.size:
        raise ParameterError("theoretical CF values must align with the grid")
    n = np.asarray(samples).size
    return EcfReport(theta_grid=th, empirical=emp, theoretical=theo,
                     sup_deviation=float(np.max(np.abs(emp - theo))),
                     mc_stderr=1.0 / np.sqrt(n), n_samples=int(n), label=label)


def spearman_corr(xs, ys) -> float:
    """Spearman rank correlation (average ranks on ties), used for
    monotone-trend verdicts that must be robust to Monte-Carlo jitter."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size != y.size or x.size < 2:
        raise ParameterError("need two equally long vectors of length >= 2")
    rx, ry = _average_ranks(x), _average_ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    denom = np.sqrt((rx ** 2).sum() * (ry ** 2).sum())
    if denom == 0.0:
        return 0.0
    return float((rx * ry).sum() / denom)


def _average_ranks(v: np.ndarray) -> np.ndarray:
    order = np.argsort(v, kind="stable")
    ranks = np.empty(v.size, dtype=float)
    i = 0
    while i < v.size:
        j = i
        while j + 1 < v.size and v[order[j + 1]] == v[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


# ---------------------------------------------------------------------------
# increment CF convergence
# ---------------------------------------------------------------------------

def increment_cf_test(scheme: str, af: AlphaFunction, n: int, intervals,
                      ensemble: int, stream: RandomStream, theta_grid=None,
                      alpha_n: AlphaFunction | None = None,
                      nested: bool = False) -> list[EcfReport]:
    """Per interval (u1, u2): ECF of the path increment L(u2) - L(u1)
    against the limit CF exp(-integral_{u1}^{u2} |theta|^alpha(s) ds)."""
    if n < 1 or ensemble < 1000:
        raise ParameterError("need n >= 1 and ensemble >= 1000")
    th = theta_grid_default() if theta_grid is None else np.ascontiguousarray(theta_grid, dtype=float)
    us = sorted({float(u) for pair in intervals for u in pair})
    col = {u: i for i, u in enumerate(us)}
    values = marginal_ensemble(scheme, af, n, us, ensemble, stream,
                               alpha_n=alpha_n, nested=nested)
    reports = []
    for u1, u2 in intervals:
        if not (0.0 <= u1 <= u2 <= 1.0):
            raise ParameterError(f"interval ({u1}, {u2}) out of order or range")
        samples = values[:, col[float(u2)]] - values[:, col[float(u1)]]
        theo = np.asarray([np.exp(-exponent_integral(af, t, u1, u2)) for t in th],
                          dtype=complex)
        reports.append(ecf_report(samples, theo, th, label=f"{scheme}[{u1},{u2}]"))
    return reports


# ---------------------------------------------------------------------------
# localisability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalisabilityReport:
    """Deviation-vs-radius trend of rescaled increments around one point."""

    x: float
    u: float
    alpha_x: float
    r_list: tuple
    deviations: tuple
    spearman: float
    final_deviation: float
    tolerance: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "x": self.x, "u": self.u, "alpha_x": self.alpha_x,
            "r_list": list(self.r_list), "deviations": list(self.deviations),
            "spearman": self.spearman, "final_deviation": self.final_deviation,
            "tolerance": self.tolerance, "passed": self.passed,
        }


def localisability_test(af: AlphaFunction, x: float, u: float, r_list, n: int,
                        ensemble: int, stream: RandomStream, theta_grid=None,
                        tolerance: float = 0.05) -> LocalisabilityReport:
    """Check that (L(x + r u) - L(x)) / r^(1/alpha(x)) approaches the law of
    an alpha(x)-stable motion at time u as r shrinks.

    Pass requires the sup-CF deviation to trend downward along the
    decreasing radii (positive Spearman correlation of deviation against r)
    and the final deviation to beat the tolerance.
    """
    rs = [float(r) for r in r_list]
    if any(r2 >= r1 for r1, r2 in zip(rs, rs[1:])) or rs[-1] <= 0.0:
        raise ParameterError("radii must be strictly decreasing and positive")
    if u <= 0.0 or x < 0.0 or x + rs[0] * u > 1.0:
        raise ParameterError("window x + r*u must stay inside [0, 1]")
    smallest_span = rs[-1] * u
    if smallest_span < 2.0 ** (-n + 2):
        need = int(np.ceil(2.0 - np.log2(smallest_span)))
        raise GridResolutionError(
            f"radius {rs[-1]} spans fewer than 4 grid cells at level {n}; "
            f"the smallest resolving level is n = {need}")
    th = theta_grid_default() if theta_grid is None else np.ascontiguousarray(theta_grid, dtype=float)
    alpha_x = float(af(x))
    k0 = grid_index(n, x)
    offsets = [grid_index(n, x + r * u) - k0 for r in rs]
    window = li_window_ensemble(af, n, k0, offsets, ensemble, stream)
    deviations = []
    for i, r in enumerate(rs):
        samples = window[:, i] / r ** (1.0 / alpha_x)
        theo = np.exp(-u * np.abs(th) ** alpha_x).astype(complex)
        rep = ecf_report(samples, theo, th, label=f"r={r}")
        deviations.append(rep.sup_deviation)
    rho = spearman_corr(deviations, rs)
    final = deviations[-1]
    return LocalisabilityReport(
        x=float(x), u=float(u), alpha_x=alpha_x, r_list=tuple(rs),
        deviations=tuple(deviations), spearman=rho, final_deviation=final,
        tolerance=float(tolerance), passed=bool(rho > 0.0 and final < tolerance))


# ---------------------------------------------------------------------------
# tightness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TightnessReport:
    """Joint two-sided increment exceedance versus the explicit product
    bound C(gamma) * lambda^(-2 gamma) * (u2 - u1)^2."""

    triple: tuple
    lambdas: tuple
    empirical: tuple
    bounds: tuple
    gammas: tuple
    n: int
    ensemble: int
    zero_width: bool
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "triple": list(self.triple), "lambdas": list(self.lambdas),
            "empirical": list(self.empirical), "bounds": list(self.bounds),
            "gammas": list(self.gammas), "n": self.n, "ensemble": self.ensemble,
            "zero_width": self.zero_width, "passed": self.passed,
        }


def tightness_bound_constant(gamma: float) -> float:
    """Each one-sided tail obeys P(|increment| >= lambda) <=
    (2^(gamma+1)/(gamma+1)) * lambda^(-gamma) * (interval length); the joint
    bound is the product of the two independent sides."""
    return 2.0 ** (gamma + 1.0) / (gamma + 1.0)


def tightness_check(scheme: str, af: AlphaFunction, triple, lambdas, n: int,
                    ensemble: int, stream: RandomStream) -> TightnessReport:
    u1, u, u2 = (float(v) for v in triple)
    if not (0.0 <= u1 <= u <= u2 <= 1.0):
        raise ParameterError("need 0 <= u1 <= u <= u2 <= 1")
    lams = [float(l) for l in lambdas]
    if any(l <= 0.0 for l in lams):
        raise ParameterError("exceedance levels must be positive")
    zero_width = (u2 - u1) < 2.0 ** -n
    us = sorted({u1, u, u2})
    col = {v: i for i, v in enumerate(us)}
    values = marginal_ensemble(scheme, af, n, us, ensemble, stream)
    left = np.abs(values[:, col[u]] - values[:, col[u1]])
    right = np.abs(values[:, col[u2]] - values[:, col[u]])
    empirical, bounds, gammas = [], [], []
    for lam in lams:
        emp = float(np.mean((left >= lam) & (right >= lam)))
        gamma = af.a if lam >= 2.0 else af.b
        c = tightness_bound_constant(gamma) ** 2
        bounds.append(c * lam ** (-2.0 * gamma) * (u2 - u1) ** 2)
        gammas.append(gamma)
        empirical.append(emp)
    ok = all(e <= b for e, b in zip(empirical, bounds))
    if zero_width:
        ok = ok and all(e == 0.0 for e in empirical)
    return TightnessReport(triple=(u1, u, u2), lambdas=tuple(lams),
                           empirical=tuple(empirical), bounds=tuple(bounds),
                           gammas=tuple(gammas), n=n, ensemble=ensemble,
                           zero_width=zero_width, passed=bool(ok))


# ---------------------------------------------------------------------------
# increment independence (factorization)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorizationReport:
    """Sup distance between the joint increment ECF and the product of the
    marginal ECFs over a product frequency grid."""

    intervals: tuple
    distance: float
    threshold: float
    mc_stderr: float
    ensemble: int
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "intervals": [list(iv) for iv in self.intervals],
            "distance": self.distance, "threshold": self.threshold,
            "mc_stderr": self.mc_stderr, "ensemble": self.ensemble,
            "passed": self.passed,
        }


def factorization_test(scheme: str, af: AlphaFunction, intervals, n: int,
                       ensemble: int, stream: RandomStream,
                       theta_grid=None) -> FactorizationReport:
    ivs = [(float(a), float(b)) for a, b in intervals]
    if any(not (0.0 <= a <= b <= 1.0) for a, b in ivs):
        raise ParameterError("intervals must satisfy 0 <= u1 <= u2 <= 1")
    ordered = sorted(ivs)
    for (_, b1), (a2, _) in zip(ordered, ordered[1:]):
        if a2 < b1 - 1e-15:
            raise ParameterError(f"intervals overlap near {a2}; they must be disjoint")
    th = np.linspace(-3.0, 3.0, 13) if theta_grid is None else np.ascontiguousarray(theta_grid, dtype=float)
    us = sorted({v for iv in ivs for v in iv})
    col = {v: i for i, v in enumerate(us)}
    values = marginal_ensemble(scheme, af, n, us, ensemble, stream)
    incs = np.column_stack([values[:, col[b]] - values[:, col[a]] for a, b in ivs])
    j = len(ivs)
    if j == 1:
        return FactorizationReport(intervals=tuple(ivs), distance=0.0,
                                   threshold=4.0 / np.sqrt(ensemble),
                                   mc_stderr=1.0 / np.sqrt(ensemble),
                                   ensemble=ensemble, passed=True)
    grids = np.meshgrid(*([th] * j), indexing="ij")
    tuples = np.column_stack([g.ravel() for g in grids])
    joint = empirical_cf_joint(incs, tuples)
    # product CF in the same lexicographic (ij) order as the tuples
    product = empirical_cf(incs[:, 0], th)
    for axis in range(1, j):
        marg = empirical_cf(incs[:, axis], th)
        product = (product[:, None] * marg[None, :]).ravel()
    distance = float(np.max(np.abs(joint - product)))
    stderr = 1.0 / np.sqrt(ensemble)
    return FactorizationReport(intervals=tuple(ivs), distance=distance,
                               threshold=4.0 * stderr, mc_stderr=stderr,
                               ensemble=ensemble,
                               passed=bool(distance < 4.0 * stderr))
