"""Variable stability exponents, integrands, characteristic-function
exponent integrals and the variable-exponent (Luxemburg) quasinorm.

An exponent function u -> alpha(u) is cadlag on a closed interval with
values in a band [a, b] inside (0, 2].  Integrands live on [0, 1] either as
closed-form handles with declared breakpoints or as uniform-grid tables with
step interpolation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InfiniteQuasinormError, ParameterError
from .quadrature import adaptive_simpson

_KINDS = ("constant", "linear", "piecewise", "piecewise_linear", "table")
_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class AlphaFunction:
    """A cadlag stability-exponent function on a closed interval.

    Supported shapes: constant value, affine ramp, piecewise-constant steps,
    piecewise-affine ramps and uniform-grid tables (step interpolation).
    Construction validates that the range stays inside (0, 2]; the attained
    band is exposed as ``a`` (infimum) and ``b`` (supremum).
    """

    kind: str
    domain: tuple[float, float] = (0.0, 1.0)
    value: float = 0.0
    intercept: float = 0.0
    slope: float = 0.0
    breaks: tuple[float, ...] = ()
    values: tuple[float, ...] = ()
    intercepts: tuple[float, ...] = ()
    slopes: tuple[float, ...] = ()
    a: float = field(init=False, default=0.0)
    b: float = field(init=False, default=0.0)

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value: float, domain=(0.0, 1.0)) -> "AlphaFunction":
        return cls(kind="constant", domain=tuple(domain), value=float(value))

    @classmethod
    def linear(cls, intercept: float, slope: float, domain=(0.0, 1.0)) -> "AlphaFunction":
        return cls(kind="linear", domain=tuple(domain),
                   intercept=float(intercept), slope=float(slope))

    @classmethod
    def piecewise(cls, breaks: Sequence[float], values: Sequence[float],
                  domain=(0.0, 1.0)) -> "AlphaFunction":
        return cls(kind="piecewise", domain=tuple(domain),
                   breaks=tuple(float(x) for x in breaks),
                   values=tuple(float(x) for x in values))

    @classmethod
    def piecewise_linear(cls, breaks: Sequence[float], intercepts: Sequence[float],
                         slopes: Sequence[float], domain=(0.0, 1.0)) -> "AlphaFunction":
        return cls(kind="piecewise_linear", domain=tuple(domain),
                   breaks=tuple(float(x) for x in breaks),
                   intercepts=tuple(float(x) for x in intercepts),
                   slopes=tuple(float(x) for x in slopes))

    @classmethod
    def from_table(cls, values: Sequence[float], domain=(0.0, 1.0)) -> "AlphaFunction":
        return cls(kind="table", domain=tuple(domain),
                   values=tuple(float(x) for x in values))

    # -- validation -------------------------------------------------------

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ParameterError(f"unknown exponent kind {self.kind!r}")
        t0, t1 = self.domain
        if not (t0 < t1):
            raise ParameterError(f"domain must be a proper interval, got {self.domain}")
        if self.kind == "piecewise":
            if len(self.values) != len(self.breaks) + 1:
                raise ParameterError("piecewise needs len(values) == len(breaks) + 1")
        if self.kind == "piecewise_linear":
            if not (len(self.intercepts) == len(self.slopes) == len(self.breaks) + 1):
                raise ParameterError(
                    "piecewise_linear needs len(intercepts) == len(slopes) == len(breaks) + 1")
        if self.kind in ("piecewise", "piecewise_linear"):
            br = np.asarray(self.breaks, dtype=float)
            if br.size and (np.any(np.diff(br) <= 0.0)
                            or br[0] <= t0 + _EDGE_TOL or br[-1] >= t1 - _EDGE_TOL):
                raise ParameterError("breaks must be strictly increasing interior points")
        if self.kind == "table" and len(self.values) < 1:
            raise ParameterError("table needs at least one value")

        lo, hi = self._range_bounds()
        object.__setattr__(self, "a", lo)
        object.__setattr__(self, "b", hi)
        if not (0.0 < lo and hi <= 2.0):
            raise ParameterError(
                f"exponent values must stay in (0, 2], attained range is [{lo}, {hi}]")

    def _range_bounds(self) -> tuple[float, float]:
        t0, t1 = self.domain
        if self.kind == "constant":
            return self.value, self.value
        if self.kind == "linear":
            ends = (self.intercept + self.slope * t0, self.intercept + self.slope * t1)
            return min(ends), max(ends)
        if self.kind == "piecewise":
            return min(self.values), max(self.values)
        if self.kind == "piecewise_linear":
            edges = (t0, *self.breaks, t1)
            cand = []
            for i, (c, m) in enumerate(zip(self.intercepts, self.slopes)):
                cand.append(c + m * edges[i])
                cand.append(c + m * edges[i + 1])
            return min(cand), max(cand)
        return min(self.values), max(self.values)

    # -- evaluation -------------------------------------------------------

    def __call__(self, u):
        scalar = np.isscalar(u)
        x = np.asarray(u, dtype=float)
        t0, t1 = self.domain
        if np.any(x < t0 - _EDGE_TOL) or np.any(x > t1 + _EDGE_TOL):
            raise DomainError(f"argument outside exponent domain [{t0}, {t1}]")
        x = np.clip(x, t0, t1)

        if self.kind == "constant":
            out = np.full_like(x, self.value)
        elif self.kind == "linear":
            out = self.intercept + self.slope * x
        elif self.kind == "piecewise":
            idx = np.searchsorted(np.asarray(self.breaks), x, side="right")
            out = np.asarray(self.values, dtype=float)[idx]
        elif self.kind == "piecewise_linear":
            idx = np.searchsorted(np.asarray(self.breaks), x, side="right")
            c = np.asarray(self.intercepts, dtype=float)[idx]
            m = np.asarray(self.slopes, dtype=float)[idx]
            out = c + m * x
        else:  # table: right-continuous steps on a uniform grid
            m = len(self.values)
            idx = np.clip(np.floor((x - t0) / (t1 - t0) * m).astype(int), 0, m - 1)
            out = np.asarray(self.values, dtype=float)[idx]
        return float(out) if scalar else out

    # -- structure --------------------------------------------------------

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Interior points where the exponent may jump or kink."""
        if self.kind in ("piecewise", "piecewise_linear"):
            return self.breaks
        if self.kind == "table":
            t0, t1 = self.domain
            m = len(self.values)
            return tuple(t0 + (t1 - t0) * i / m for i in range(1, m))
        return ()

    @property
    def is_piecewise_constant(self) -> bool:
        return self.kind in ("constant", "piecewise", "table")

    def panels(self, u1: float, u2: float) -> list[tuple[float, float, float]]:
        """(lo, hi, value) cells covering [u1, u2] for piecewise-constant kinds."""
        if not self.is_piecewise_constant:
            raise ParameterError("panels are only defined for piecewise-constant kinds")
        edges = [u1] + [p for p in self.breakpoints if u1 < p < u2] + [u2]
        return [(lo, hi, self(lo)) for lo, hi in zip(edges, edges[1:]) if hi > lo]

    def max_jump(self) -> float:
        """Largest discontinuity across interior breakpoints (0 if continuous)."""
        jump = 0.0
        for p in self.breakpoints:
            left = self(max(p - 1e-9, self.domain[0]))
            jump = max(jump, abs(self(p) - left))
        return jump

    def segment(self, k: int) -> "AlphaFunction":
        """Exponent x -> alpha(x + k) restricted to the unit interval.

        Used when gluing unit-interval processes along the line.  Table
        exponents are sliced exactly when the grid aligns with integers and
        resampled at their native resolution otherwise.
        """
        t0, t1 = self.domain
        if k < t0 - _EDGE_TOL or k + 1 > t1 + _EDGE_TOL:
            raise DomainError(f"segment [{k}, {k + 1}] outside domain [{t0}, {t1}]")
        if self.kind == "constant":
            return AlphaFunction.constant(self.value)
        if self.kind == "linear":
            return AlphaFunction.linear(self.intercept + self.slope * k, self.slope)
        if self.kind in ("piecewise", "piecewise_linear"):
            new_breaks = tuple(p - k for p in self.breaks if k < p < k + 1)
            probes = (0.0, *new_breaks)
            if self.kind == "piecewise":
                vals = tuple(self(min(p + k, t1)) for p in probes)
                return AlphaFunction.piecewise(new_breaks, vals)
            src = np.searchsorted(np.asarray(self.breaks),
                                  [min(p + k, t1) for p in probes], side="right")
            cs = tuple(self.intercepts[i] + self.slopes[i] * k for i in src)
            ms = tuple(self.slopes[i] for i in src)
            return AlphaFunction.piecewise_linear(new_breaks, cs, ms)
        # table
        m = len(self.values)
        h = (t1 - t0) / m
        start = (k - t0) / h
        per_unit = 1.0 / h
        if abs(start - round(start)) < 1e-9 and abs(per_unit - round(per_unit)) < 1e-9:
            i0 = int(round(start))
            cnt = int(round(per_unit))
            return AlphaFunction.from_table(self.values[i0:i0 + cnt])
        res = max(256, int(math.ceil(per_unit)))
        xs = k + np.arange(res) / res
        return AlphaFunction.from_table(self(np.minimum(xs, t1)))

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.domain != (0.0, 1.0):
            d["domain"] = list(self.domain)
        if self.kind == "constant":
            d["value"] = self.value
        elif self.kind == "linear":
            d["intercept"] = self.intercept
            d["slope"] = self.slope
        elif self.kind == "piecewise":
            d["breaks"] = list(self.breaks)
            d["values"] = list(self.values)
        elif self.kind == "piecewise_linear":
            d["breaks"] = list(self.breaks)
            d["intercepts"] = list(self.intercepts)
            d["slopes"] = list(self.slopes)
        else:
            d["values"] = list(self.values)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, spec: str | dict) -> "AlphaFunction":
        d = json.loads(spec) if isinstance(spec, str) else dict(spec)
        kind = d.get("kind")
        domain = tuple(d.get("domain", (0.0, 1.0)))
        try:
            if kind == "constant":
                return cls.constant(d["value"], domain)
            if kind == "linear":
                return cls.linear(d["intercept"], d["slope"], domain)
            if kind == "piecewise":
                return cls.piecewise(d["breaks"], d["values"], domain)
            if kind == "piecewise_linear":
                return cls.piecewise_linear(d["breaks"], d["intercepts"],
                                            d["slopes"], domain)
            if kind == "table":
                return cls.from_table(d["values"], domain)
        except KeyError as exc:
            raise ParameterError(f"missing field {exc} for exponent kind {kind!r}") from exc
        raise ParameterError(f"unknown exponent kind {kind!r}")


def eval_alpha(af: AlphaFunction, u):
    """Evaluate the exponent function (vectorised over ``u``)."""
    return af(u)


# ---------------------------------------------------------------------------
# integrands
# ---------------------------------------------------------------------------

class IntegrandFunction:
    """A deterministic integrand on [0, 1].

    Holds either a vectorised closed-form handle with declared breakpoints
    or a uniform-grid table with right-continuous step interpolation.
    Supports the arithmetic needed to form differences and scalings.
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray],
                 breakpoints: Sequence[float] = (), label: str = "",
                 table: np.ndarray | None = None):
        self._fn = fn
        self.breakpoints = tuple(sorted(set(float(p) for p in breakpoints if 0.0 < p < 1.0)))
        self.label = label or "integrand"
        self.table = None if table is None else np.asarray(table, dtype=float)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_callable(cls, fn, breakpoints=(), label="") -> "IntegrandFunction":
        return cls(lambda x: np.asarray(fn(x), dtype=float), breakpoints, label)

    @classmethod
    def from_table(cls, values, label="table") -> "IntegrandFunction":
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ParameterError("table integrand needs a non-empty 1-d value array")
        m = vals.size

        def fn(x):
            idx = np.clip(np.floor(np.asarray(x, dtype=float) * m).astype(int), 0, m - 1)
            return vals[idx]

        return cls(fn, [i / m for i in range(1, m)], label, table=vals)

    @classmethod
    def indicator(cls, lo: float, hi: float) -> "IntegrandFunction":
        if not (0.0 <= lo < hi <= 1.0):
            raise ParameterError(f"indicator needs 0 <= lo < hi <= 1, got ({lo}, {hi})")

        def fn(x):
            x = np.asarray(x, dtype=float)
            return ((x >= lo) & (x <= hi)).astype(float)

        out = cls(fn, [lo, hi], f"indicator[{lo},{hi}]")
        out._indicator = (lo, hi)  # noqa: SLF001 - used for exact panel logic
        return out

    @classmethod
    def constant(cls, c: float) -> "IntegrandFunction":
        c = float(c)
        return cls(lambda x: np.full_like(np.asarray(x, dtype=float), c), (), f"const({c})",
                   table=np.array([c]))

    @classmethod
    def zero(cls) -> "IntegrandFunction":
        return cls.constant(0.0)

    # -- evaluation and algebra -------------------------------------------

    def __call__(self, x):
        scalar = np.isscalar(x)
        out = self._fn(np.asarray(x, dtype=float))
        return float(out) if scalar else np.asarray(out, dtype=float)

    def __sub__(self, other: "IntegrandFunction") -> "IntegrandFunction":
        table = None
        if (self.table is not None and other.table is not None
                and self.table.size == other.table.size):
            table = self.table - other.table
        return IntegrandFunction(lambda x: self._fn(x) - other._fn(x),
                                 self.breakpoints + other.breakpoints,
                                 f"({self.label} - {other.label})", table=table)

    def __add__(self, other: "IntegrandFunction") -> "IntegrandFunction":
        table = None
        if (self.table is not None and other.table is not None
                and self.table.size == other.table.size):
            table = self.table + other.table
        return IntegrandFunction(lambda x: self._fn(x) + other._fn(x),
                                 self.breakpoints + other.breakpoints,
                                 f"({self.label} + {other.label})", table=table)

    def scaled(self, c: float) -> "IntegrandFunction":
        c = float(c)
        table = None if self.table is None else c * self.table
        return IntegrandFunction(lambda x: c * self._fn(x), self.breakpoints,
                                 f"{c}*{self.label}", table=table)

    def __mul__(self, c: float) -> "IntegrandFunction":
        return self.scaled(c)

    __rmul__ = __mul__

    # -- helpers ------------------------------------------------------------

    def value_panels(self) -> list[tuple[float, float, float]] | None:
        """(lo, hi, value) cells when the integrand is exactly piecewise
        constant, else None."""
        if self.table is not None:
            m = self.table.size
            return [(i / m, (i + 1) / m, float(self.table[i])) for i in range(m)]
        ind = getattr(self, "_indicator", None)
        if ind is not None:
            lo, hi = ind
            cells = []
            if lo > 0.0:
                cells.append((0.0, lo, 0.0))
            cells.append((lo, hi, 1.0))
            if hi < 1.0:
                cells.append((hi, 1.0, 0.0))
            return cells
        return None

    def sup_bound(self, n_probe: int = 4097) -> float:
        """Estimated sup of |f| over [0, 1] (exact for tables/indicators)."""
        if self.table is not None:
            return float(np.max(np.abs(self.table)))
        if getattr(self, "_indicator", None) is not None:
            return 1.0
        xs = np.linspace(0.0, 1.0, n_probe)
        if self.breakpoints:
            near = np.concatenate([[max(p - 1e-9, 0.0), p, min(p + 1e-9, 1.0)]
                                   for p in self.breakpoints])
            xs = np.concatenate([xs, near])
        return float(np.max(np.abs(self(xs))))


# ---------------------------------------------------------------------------
# exponent integrals and characteristic functions
# ---------------------------------------------------------------------------

def _check_interval(af: AlphaFunction, u1: float, u2: float) -> None:
    t0, t1 = af.domain
    if not (t0 - _EDGE_TOL <= u1 <= u2 <= t1 + _EDGE_TOL):
        raise DomainError(f"need {t0} <= u1 <= u2 <= {t1}, got ({u1}, {u2})")


def exponent_integral(af: AlphaFunction, theta: float, u1: float, u2: float) -> float:
    """integral_{u1}^{u2} |theta|^alpha(s) ds.

    Exact panel sums for piecewise-constant exponents; adaptive Simpson with
    breakpoint splits otherwise.  |theta| in {0, 1} short-circuits to the
    exact values 0 and u2 - u1.
    """
    _check_interval(af, u1, u2)
    if u2 <= u1:
        return 0.0
    abs_t = abs(float(theta))
    if abs_t == 0.0:
        return 0.0
    if abs_t == 1.0:
        return u2 - u1
    if af.is_piecewise_constant:
        return sum((hi - lo) * abs_t ** v for lo, hi, v in af.panels(u1, u2))
    log_t = math.log(abs_t)
    return adaptive_simpson(lambda s: math.exp(log_t * af(s)), u1, u2,
                            breakpoints=af.breakpoints)


def li_cf(af: AlphaFunction, times: Sequence[float], thetas: Sequence[float]) -> float:
    """Joint characteristic function of the limiting motion at ``times``.

    Evaluates exp(-integral_0^1 |sum_j theta_j 1_[0, t_j](s)|^alpha(s) ds),
    splitting the integral at the (sorted) evaluation times where the inner
    step function changes value.
    """
    if len(times) != len(thetas):
        raise ParameterError("times and thetas must have equal length")
    if af.domain[0] != 0.0:
        raise ParameterError("the limiting motion starts at 0; exponent domain must too")
    t_end = af.domain[1]
    ts = np.asarray(times, dtype=float)
    if ts.size == 0:
        return 1.0
    if np.any(ts < 0.0) or np.any(ts > t_end + _EDGE_TOL):
        raise DomainError(f"evaluation times must lie in [0, {t_end}]")
    th = np.asarray(thetas, dtype=float)
    edges = sorted(set(ts.tolist()) | {0.0})
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        coeff = float(th[ts >= hi].sum())
        total += exponent_integral(af, coeff, lo, hi)
    return math.exp(-total)


def integral_cf(fs: Sequence[IntegrandFunction], thetas: Sequence[float],
                af: AlphaFunction) -> float:
    """Joint CF exp(-integral_0^1 |sum_j theta_j f_j(x)|^alpha(x) dx) of
    weighted-sum integrals; raises if the combination is not integrable."""
    if len(fs) != len(thetas):
        raise ParameterError("integrands and thetas must have equal length")
    if not fs:
        return 1.0
    th = [float(t) for t in thetas]
    breaks: list[float] = list(af.breakpoints)
    for f in fs:
        breaks.extend(f.breakpoints)

    def g_pow(x: float) -> float:
        g = 0.0
        for t, f in zip(th, fs):
            g += t * f(x)
        g = abs(g)
        return g ** af(x) if g > 0.0 else 0.0

    total = adaptive_simpson(g_pow, 0.0, 1.0, breakpoints=breaks)
    if not math.isfinite(total):
        raise DomainError("the combined integrand is not integrable under this exponent")
    return math.exp(-total)


def plateau_identity_alpha(b: float) -> AlphaFunction:
    """The exponent that stays flat at b/2 on [0, b/2] and then follows the
    identity, alpha(u) = u, up to 1.

    This is the canonical witness that the naive field-based scheme diverges:
    feed it to :func:`lf_n_exponent` at any u > b/2.  Requires 0 < b < 2 so
    the plateau height and the break both lie inside the admissible band.
    """
    if not 0.0 < b < 2.0:
        raise ParameterError(f"plateau parameter must lie in (0, 2), got {b}")
    half = b / 2.0
    return AlphaFunction.piecewise_linear(
        breaks=(half,), intercepts=(half, 0.0), slopes=(0.0, 1.0))


def lf_n_exponent(af: AlphaFunction, u: float, theta: float, n: int) -> float:
    """Exact finite-sum CF exponent of the naive field-based scheme,

        sum_{k=1}^{floor(2^n u)} |theta|^alpha(k/2^n) (2^-n)^(alpha(k/2^n)/alpha(u)),

    whose growth in n witnesses that rescaling by the evaluation point's own
    exponent cannot converge when alpha varies below the evaluation point.
    """
    if n < 0:
        raise ParameterError("level n must be >= 0")
    _check_interval(af, 0.0, u)
    m = 2 ** n
    count = int(math.floor(m * u + 1e-12))
    if count == 0:
        return 0.0
    ks = np.arange(1, count + 1, dtype=float)
    alphas = np.asarray(af(ks / m), dtype=float)
    a_u = af(u)
    abs_t = abs(float(theta))
    weights = (2.0 ** -n) ** (alphas / a_u)
    if abs_t == 0.0:
        return 0.0
    return float(np.sum(abs_t ** alphas * weights))


# ---------------------------------------------------------------------------
# variable-exponent quasinorm
# ---------------------------------------------------------------------------

def _modular(f: IntegrandFunction, af: AlphaFunction, lam: float) -> float:
    """integral_0^1 |f(x)/lam|^alpha(x) dx (exact when both sides are
    piecewise constant)."""
    panels = f.value_panels() if af.is_piecewise_constant else None
    if panels is not None:
        edges = sorted({0.0, 1.0, *af.breakpoints,
                        *(lo for lo, _, _ in panels), *(hi for _, hi, _ in panels)})
        total = 0.0
        for lo, hi in zip(edges, edges[1:]):
            if hi <= lo:
                continue
            mid = 0.5 * (lo + hi)
            v = abs(f(mid)) / lam
            total += (hi - lo) * (v ** af(mid) if v > 0.0 else 0.0)
        return total

    def integrand(x: float) -> float:
        v = abs(f(x)) / lam
        return v ** af(x) if v > 0.0 else 0.0

    return adaptive_simpson(integrand, 0.0, 1.0,
                            breakpoints=(*af.breakpoints, *f.breakpoints))


def modular_integral(f: IntegrandFunction, af: AlphaFunction, lam: float = 1.0) -> float:
    """integral_0^1 |f(x)/lam|^alpha(x) dx, the modular behind the quasinorm
    (and, at lam = 1, the variable-exponent energy of an integrand)."""
    if lam <= 0.0:
        raise ParameterError(f"scale must be positive, got {lam}")
    return _modular(f, af, lam)


def quasinorm(f: IntegrandFunction, af: AlphaFunction, rel_tol: float = 1e-12) -> float:
    """Luxemburg-style variable-exponent quasinorm

        ||f|| = inf { lam > 0 : integral_0^1 |f(x)/lam|^alpha(x) dx <= 1 },

    located by geometric bracket expansion followed by bisection on the
    strictly decreasing modular.  The zero integrand has quasinorm 0; a
    modular that stays infinite signals a non-normable integrand.
    """
    sup = f.sup_bound()
    if sup == 0.0:
        return 0.0

    hi = sup
    for _ in range(200):
        g_hi = _modular(f, af, hi)
        if math.isinf(g_hi):
            hi *= 2.0
            if hi > sup * 2.0 ** 200:
                raise InfiniteQuasinormError(
                    "modular integral is non-finite for every scaling")
            continue
        if g_hi <= 1.0:
            break
        hi *= 2.0
    else:
        raise InfiniteQuasinormError("modular never drops below 1 under expansion")

    lo = min(sup * 1e-6, 0.5 * hi)
    for _ in range(600):
        if _modular(f, af, lo) >= 1.0:
            break
        lo *= 0.25
        if lo < 1e-300:
            return 0.0
    else:  # pragma: no cover - modular must blow up as lam -> 0 for f != 0
        return 0.0

    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if _modular(f, af, mid) >= 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# localisability diagnostic on the exponent itself
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Condition7Report:
    """Result of the vanishing-oscillation diagnostic on alpha.

    ``values[i]`` is the sup over the probe grid of
    |(alpha(x) - alpha(x + t_i)) ln t_i|; the diagnostic is ``satisfied``
    when the value at the smallest lag falls below the threshold and
    ``violated`` when the sequence grows instead.
    """

    t_grid: tuple[float, ...]
    values: tuple[float, ...]
    threshold: float
    verdict: str

    def to_json_dict(self) -> dict:
        return {"t_grid": list(self.t_grid), "values": list(self.values),
                "threshold": self.threshold, "verdict": self.verdict}


def check_condition7(af: AlphaFunction, x_grid, t_grid,
                     threshold: float = 1e-3) -> Condition7Report:
    """Probe whether exponent oscillations vanish faster than 1/|ln t|.

    ``t_grid`` must be strictly decreasing lags in (0, 1); the verdict keys
    off the value at the smallest lag (convention: satisfied below
    ``threshold``, violated when the sequence grows above it instead).
    """
    xs = np.asarray(x_grid, dtype=float)
    ts = np.asarray(t_grid, dtype=float)
    if ts.size == 0 or np.any(ts <= 0.0) or np.any(ts >= 1.0):
        raise DomainError("lags must lie in (0, 1)")
    if np.any(np.diff(ts) >= 0.0):
        raise DomainError("lags must be strictly decreasing")
    t0, t1 = af.domain
    values = []
    for t in ts:
        valid = xs[(xs >= t0) & (xs + t <= t1 + _EDGE_TOL)]
        if valid.size == 0:
            raise DomainError(f"no probe point x with x + {t} inside the domain")
        osc = np.abs((af(valid) - af(np.minimum(valid + t, t1))) * math.log(t))
        values.append(float(np.max(osc)))
    if values[-1] <= threshold:
        verdict = "satisfied"
    elif values[-1] > max(values[0], threshold):
        verdict = "violated"
    else:
        verdict = "inconclusive"
    return Condition7Report(t_grid=tuple(float(t) for t in ts),
                            values=tuple(values), threshold=threshold,
                            verdict=verdict)
