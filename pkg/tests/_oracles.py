"""Independent numerical oracles for the test suite.

Nothing in this module imports the package under test.  The frozen table
below was produced by two independent high-precision evaluations of the
oscillatory integral I(u) = integral_0^inf x^-u sin(x) dx (power series on
[0, pi] plus, separately, mpmath.quadosc from pi and an accelerated
alternating pi-panel sum); the two methods agreed to every printed digit at
30 significant digits before rounding to float.
"""

from __future__ import annotations

import math

import numpy as np

# (u, 1 / I(u)) pairs: the tail-normalizing constant at 50 midpoints of
# (0.05, 1.95).  Frozen output of the dual high-precision computation.
C_ALPHA_ORACLE = (
    (0.069, 0.9627162449674632),
    (0.107, 0.944106435301615),
    (0.145, 0.9266504077976957),
    (0.183, 0.9102044939798426),
    (0.221, 0.8946407055617102),
    (0.259, 0.8798442647634882),
    (0.297, 0.8657115669107411),
    (0.335, 0.8521484893823135),
    (0.373, 0.8390689800344996),
    (0.411, 0.826393872671639),
    (0.449, 0.8140498881702574),
    (0.487, 0.801968788365419),
    (0.525, 0.7900866564060506),
    (0.563, 0.778343282443606),
    (0.601, 0.7666816375776497),
    (0.639, 0.7550474221976111),
    (0.677, 0.7433886774234177),
    (0.715, 0.7316554504036735),
    (0.753, 0.719799505888696),
    (0.791, 0.7077740778415527),
    (0.829, 0.6955336559484195),
    (0.867, 0.6830338027907034),
    (0.905, 0.6702309981849099),
    (0.943, 0.6570825078131878),
    (0.981, 0.6435462737822778),
    (1.019, 0.6295808251806253),
    (1.057, 0.615145207068103),
    (1.095, 0.6001989266424869),
    (1.133, 0.5847019155914412),
    (1.171, 0.5686145078662929),
    (1.209, 0.5518974323107687),
    (1.247, 0.5345118197493823),
    (1.285, 0.5164192242905361),
    (1.323, 0.49758165873213583),
    (1.361, 0.4779616440754092),
    (1.399, 0.45752227325799094),
    (1.437, 0.43622728931204596),
    (1.475, 0.41404117823877373),
    (1.513, 0.3909292769682761),
    (1.551, 0.36685789684445885),
    (1.589, 0.3417944631391185),
    (1.627, 0.31570767115822496),
    (1.665, 0.2885676595570572),
    (1.703, 0.2603462015295708),
    (1.741, 0.23101691458132165),
    (1.779, 0.2005554896344925),
    (1.817, 0.1689399402480041),
    (1.855, 0.13615087276519505),
    (1.893, 0.102171778225877),
    (1.931, 0.06698934689838745),
)


def sine_integral_live(u: float, n_panels: int = 240) -> float:
    """Float-precision re-derivation of I(u) = integral_0^inf x^-u sin x dx.

    Power series on the first pi-panel (exact alternating expansion), then
    composite Simpson on each subsequent pi-panel with iterated averaging of
    the alternating partial sums.  Good to ~1e-10 on (0.05, 1.95); used as a
    live sanity check of the frozen table above.
    """
    if not 0.0 < u < 2.0:
        raise ValueError(f"u must lie in (0, 2), got {u}")
    first, k = 0.0, 0
    while True:
        term = (-1.0) ** k * math.pi ** (2 * k + 2 - u) / (
            math.factorial(2 * k + 1) * (2 * k + 2 - u))
        first += term
        if abs(term) < 1e-18 and k > 2:
            break
        k += 1

    def panel(k: int) -> float:
        xs = np.linspace(k * math.pi, (k + 1) * math.pi, 201)
        ys = np.sin(xs) / xs ** u
        h = (xs[-1] - xs[0]) / (len(xs) - 1)
        return float(h / 3.0 * (ys[0] + ys[-1] + 4.0 * ys[1:-1:2].sum()
                                + 2.0 * ys[2:-1:2].sum()))

    partial = np.cumsum([panel(k) for k in range(1, n_panels + 1)])
    row = partial
    for _ in range(60):
        if len(row) < 2:
            break
        row = 0.5 * (row[:-1] + row[1:])
    return first + float(row[-1])


def exponent_integral_linear(intercept: float, slope: float, theta: float,
                             u1: float, u2: float) -> float:
    """Closed form of integral_{u1}^{u2} |theta|^(intercept + slope*s) ds."""
    t = abs(theta)
    if t == 0.0:
        return 0.0
    if slope == 0.0 or t == 1.0:
        return (u2 - u1) * t ** (intercept + slope * 0.5 * (u1 + u2)) if t == 1.0 \
            else (u2 - u1) * t ** intercept
    log_t = math.log(t)
    return (t ** (intercept + slope * u2) - t ** (intercept + slope * u1)) / (slope * log_t)


def quasinorm_bisection(values, alphas, lo: float = 0.0,
                        hi: float | None = None, iters: int = 200) -> float:
    """Independent Luxemburg quasinorm for a tabulated function under a
    tabulated exponent, both on uniform grids over [0, 1].

    Refines both tables to a common grid, then bisects on
    g(lam) = mean(|f_i/lam|^alpha_i) <= 1 (g strictly decreasing in lam).
    """
    values = np.asarray(values, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    m = math.lcm(len(values), len(alphas))
    f = np.repeat(values, m // len(values))
    a = np.repeat(alphas, m // len(alphas))
    if np.all(f == 0.0):
        return 0.0

    def modular(lam: float) -> float:
        return float(np.mean((np.abs(f) / lam) ** a))

    if hi is None:
        hi = float(np.max(np.abs(f)))
    while modular(hi) > 1.0:
        hi *= 2.0
    lo = hi / 2.0
    while modular(lo) <= 1.0:
        lo /= 2.0
        if lo < 1e-300:
            return 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if modular(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def lf_exponent_bruteforce(alpha_fn, u: float, theta: float, n: int) -> float:
    """Direct double-checkable loop for the naive scheme's CF exponent."""
    m = 2 ** n
    count = math.floor(m * u + 1e-12)
    a_u = alpha_fn(u)
    total = 0.0
    for k in range(1, count + 1):
        a_k = alpha_fn(k / m)
        total += abs(theta) ** a_k * (2.0 ** -n) ** (a_k / a_u)
    return total


def cf_of_increment_brute(alpha_fn, theta: float, u1: float, u2: float,
                          panels: int = 20001) -> complex:
    """Midpoint-rule evaluation of exp(-integral_{u1}^{u2} |theta|^alpha(s) ds)."""
    xs = u1 + (u2 - u1) * (np.arange(panels) + 0.5) / panels
    vals = np.abs(theta) ** np.asarray([alpha_fn(x) for x in xs])
    return complex(math.exp(-float(np.mean(vals)) * (u2 - u1)))
