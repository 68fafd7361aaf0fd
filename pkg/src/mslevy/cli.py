"""Command-line front door: simulate paths, run verification suites, compute
norms and diagnostics, emit CSV/JSON/SVG artifacts.

Exit codes follow a stable contract: 0 when everything passes, 1 when a
verification suite (or trend diagnostic) fails, 2 on usage errors.  Flags
override values from a ``--config`` JSON file, which in turn override the
built-in defaults; the default seed comes from the ``MSLEVY_SEED`` environment
variable.  Every artifact embeds the fully resolved configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .alpha_model import (
    AlphaFunction,
    IntegrandFunction,
    check_condition7,
    exponent_integral,
    lf_n_exponent,
    modular_integral,
    plateau_identity_alpha,
    quasinorm,
)
from .continuous_paths import (
    ContinuousStableConfig,
    sample_continuous_stable,
    scale_bounds,
    scale_parameter,
    simulate_sn,
    sn_boundary_ensemble,
    stable_level_draws,
    triangle,
)
from .errors import ParameterError
from .integrals import (
    billingsley_bound,
    half_open_indicator,
    independence_test,
    KernelFunction,
    pairwise_independence,
    weighted_mslm,
)
from .msl_schemes import (
    SchemeConfig,
    ensemble_to_csv,
    marginal_ensemble,
    path_to_csv,
    simulate_lc,
    simulate_li,
    simulate_lr,
    simulate_stable_fclt,
)
from .stable_core import RandomStream, StableParams, compute_C_alpha, sample_stable
from .verify_stats import (
    ecf_report,
    empirical_cf,
    increment_cf_test,
    localisability_test,
    theta_grid_default,
    tightness_check,
)

_ENV_SEED = "MSLEVY_SEED"
_SCHEMES = ("li", "lr", "lc", "sn", "stable", "weighted")
_SUITES = ("stable", "schemes", "continuous", "integrals", "localisability")
_DEFAULT_ALPHA = {"kind": "linear", "intercept": 1.2, "slope": 0.6}


# ---------------------------------------------------------------------------
# config plumbing
# ---------------------------------------------------------------------------

def _env_seed() -> int:
    raw = os.environ.get(_ENV_SEED)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(
            f"environment variable {_ENV_SEED} must be an integer, got {raw!r}")


def _resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """Built-in defaults, overridden by the --config file, overridden by
    explicitly supplied flags (argparse defaults are all None)."""
    resolved = dict(defaults)
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ParameterError("the config file must hold a JSON object")
        unknown = sorted(set(file_cfg) - set(defaults))
        if unknown:
            raise ParameterError(f"unknown config keys: {', '.join(unknown)}")
        resolved.update(file_cfg)
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            resolved[key] = value
    if "seed" in resolved and resolved["seed"] is None:
        resolved["seed"] = _env_seed()
    return resolved


def _alpha_of(resolved: dict) -> AlphaFunction:
    af = AlphaFunction.from_json(resolved["alpha"])
    resolved["alpha"] = af.to_json_dict()
    return af


def _parse_floats(value) -> list[float]:
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    return [float(tok) for tok in str(value).replace(",", " ").split()]


def _jsonable(obj):
    """Recursively convert numpy scalars/arrays so json can serialize."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _svg_target(resolved: dict) -> str:
    out = resolved.get("out")
    if not out:
        raise ParameterError("--plot needs --out to know where the SVG goes")
    return os.path.splitext(out)[0] + ".svg"


# ---------------------------------------------------------------------------
# SVG line charts (self-contained, no external assets)
# ---------------------------------------------------------------------------

_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
               "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _xml_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_svg(fp, series, title: str = "", meta: dict | None = None) -> None:
    """Minimal polyline chart.  ``series`` is an iterable of (xs, ys, label)
    triples; the resolved config travels inside a <desc> element."""
    series = [(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), label)
              for xs, ys, label in series]
    finite = [(x, y) for xs, ys, _ in series
              for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
    if not finite:
        raise ParameterError("nothing to plot: no finite points")
    x0 = min(p[0] for p in finite)
    x1 = max(p[0] for p in finite)
    y0 = min(p[1] for p in finite)
    y1 = max(p[1] for p in finite)
    if x1 - x0 <= 0.0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 <= 0.0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    width, height, margin = 720, 440, 60

    def sx(x: float) -> float:
        return margin + (x - x0) * (width - 2 * margin) / (x1 - x0)

    def sy(y: float) -> float:
        return height - margin - (y - y0) * (height - 2 * margin) / (y1 - y0)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">']
    if meta is not None:
        parts.append("<desc>"
                     + _xml_escape(json.dumps(_jsonable(meta), sort_keys=True))
                     + "</desc>")
    parts.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    axis = (f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
            f'y2="{height - margin}" stroke="black"/>'
            f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
            f'y2="{height - margin}" stroke="black"/>')
    parts.append(axis)
    label_style = 'font-family="monospace" font-size="11"'
    parts.append(f'<text x="{margin}" y="{height - margin + 16}" {label_style}>'
                 f'{x0:.6g}</text>')
    parts.append(f'<text x="{width - margin}" y="{height - margin + 16}" '
                 f'{label_style} text-anchor="end">{x1:.6g}</text>')
    parts.append(f'<text x="{margin - 4}" y="{height - margin}" {label_style} '
                 f'text-anchor="end">{y0:.6g}</text>')
    parts.append(f'<text x="{margin - 4}" y="{margin + 10}" {label_style} '
                 f'text-anchor="end">{y1:.6g}</text>')
    if title:
        parts.append(f'<text x="{width / 2}" y="24" font-family="monospace" '
                     f'font-size="14" text-anchor="middle">'
                     f'{_xml_escape(title)}</text>')
    for i, (xs, ys, label) in enumerate(series):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = " ".join(f"{sx(float(x)):.2f},{sy(float(y)):.2f}"
                       for x, y in zip(xs, ys)
                       if math.isfinite(float(x)) and math.isfinite(float(y)))
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5" points="{pts}"/>')
        if label:
            ly = margin + 14 * (i + 1)
            parts.append(f'<line x1="{width - margin - 120}" y1="{ly - 4}" '
                         f'x2="{width - margin - 100}" y2="{ly - 4}" '
                         f'stroke="{color}" stroke-width="2"/>')
            parts.append(f'<text x="{width - margin - 94}" y="{ly}" '
                         f'{label_style}>{_xml_escape(str(label))}</text>')
    parts.append("</svg>")
    fp.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

_SIMULATE_DEFAULTS: dict = {
    "scheme": "li", "alpha": _DEFAULT_ALPHA, "n": 10, "ensemble": 1,
    "seed": None, "out": None, "nested": False, "d": 1.0, "levels": None,
    "mesh_level": None, "weight": "1", "n_terms": None, "plot": False,
}


def _simulate_path(resolved: dict, af: AlphaFunction, stream: RandomStream):
    scheme = resolved["scheme"]
    n = int(resolved["n"])
    if scheme in ("li", "lr", "lc"):
        cfg = SchemeConfig(n=n, af=af, stream=stream,
                           nested=bool(resolved["nested"]))
        return {"li": simulate_li, "lr": simulate_lr, "lc": simulate_lc}[scheme](cfg)
    if scheme == "sn":
        mesh = resolved["mesh_level"]
        mesh = int(mesh) if mesh is not None else min(n + 2, 16)
        t_grid = np.arange(2 ** mesh + 1, dtype=float) / 2.0 ** mesh
        levels = resolved["levels"]
        levels = int(levels) if levels is not None else max(16, n)
        return simulate_sn(n, af, stream, t_grid, d=float(resolved["d"]),
                           levels=levels)
    if scheme == "stable":
        if af.kind != "constant":
            raise ParameterError(
                'the stable scheme needs a constant exponent, e.g. '
                '--alpha \'{"kind":"constant","value":1.5}\'')
        n_terms = resolved["n_terms"]
        n_terms = int(n_terms) if n_terms is not None else 2 ** n
        return simulate_stable_fclt(af.value, n_terms, stream)
    if scheme == "weighted":
        w = IntegrandFunction.from_table(_parse_floats(resolved["weight"]))
        return weighted_mslm(w, af, n, stream)
    raise ParameterError(f"unknown scheme {scheme!r}; pick one of {_SCHEMES}")


def _cmd_simulate(args: argparse.Namespace) -> int:
    resolved = _resolve(args, _SIMULATE_DEFAULTS)
    af = _alpha_of(resolved)
    if resolved["scheme"] not in _SCHEMES:
        raise ParameterError(
            f"unknown scheme {resolved['scheme']!r}; pick one of {_SCHEMES}")
    ensemble = int(resolved["ensemble"])
    if ensemble < 1:
        raise ParameterError(f"ensemble must be >= 1, got {ensemble}")
    svg_path = _svg_target(resolved) if resolved["plot"] else None
    stream = RandomStream(int(resolved["seed"]))
    paths = [_simulate_path(resolved, af, stream.child(r))
             for r in range(ensemble)]
    meta = {"command": "simulate", "format": "csv", **resolved}
    out = resolved["out"]
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            if ensemble == 1:
                path_to_csv(paths[0], fh, meta)
            else:
                ensemble_to_csv(paths, fh, meta)
    else:
        if ensemble == 1:
            path_to_csv(paths[0], sys.stdout, meta)
        else:
            ensemble_to_csv(paths, sys.stdout, meta)
    if svg_path:
        shown = paths[:len(_SVG_COLORS)]
        series = [(p.times, p.values, f"replicate {r}" if ensemble > 1 else "")
                  for r, p in enumerate(shown)]
        with open(svg_path, "w", encoding="utf-8") as fh:
            write_svg(fh, series, title=f"{resolved['scheme']} path", meta=meta)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

_VERIFY_DEFAULTS: dict = {
    "suite": "all", "alpha": _DEFAULT_ALPHA, "n": 10, "ensemble": 2000,
    "seed": None, "tolerance": None, "out": None,
}


def _ecf_item(name: str, report, limit: float | None) -> dict:
    eff = limit if limit is not None else 5.0 * report.mc_stderr
    return {"name": name, "passed": bool(report.sup_deviation < eff),
            "deviation": float(report.sup_deviation), "limit": float(eff)}


def _suite_stable(resolved: dict, stream: RandomStream) -> list[dict]:
    ens = int(resolved["ensemble"])
    tol = resolved["tolerance"]
    items = []
    c1 = compute_C_alpha(1.0)
    dev = abs(c1 - 2.0 / math.pi)
    items.append({"name": "stable.normalizer_at_one",
                  "passed": bool(dev < 1e-12), "deviation": dev,
                  "limit": 1e-12})
    for i, alpha in enumerate((0.8, 1.5, 2.0)):
        draws = sample_stable(StableParams(alpha=alpha), ens, stream.child(i))
        rep = ecf_report(draws, lambda th: np.exp(-np.abs(th) ** alpha),
                         label=f"alpha={alpha}")
        items.append(_ecf_item(f"stable.cf_match[{alpha}]", rep, tol))
    bound = billingsley_bound(lambda t: math.exp(-abs(t)), 2.0)
    dev = abs(bound - 2.0 / math.e)
    items.append({"name": "stable.billingsley_exponential",
                  "passed": bool(dev < 1e-9), "deviation": dev,
                  "limit": 1e-9})
    return items


def _suite_schemes(resolved: dict, af: AlphaFunction,
                   stream: RandomStream) -> list[dict]:
    ens = int(resolved["ensemble"])
    n = int(resolved["n"])
    tol = resolved["tolerance"]
    items = []
    for rep in increment_cf_test("li", af, n, [(0.0, 1.0), (0.25, 0.75)],
                                 ens, stream.child(0)):
        items.append(_ecf_item(f"schemes.increment_{rep.label}", rep, tol))
    th = theta_grid_default()
    ecfs = {}
    for i, scheme in enumerate(("li", "lr", "lc")):
        col = marginal_ensemble(scheme, af, n, [1.0], ens, stream.child(1 + i))
        ecfs[scheme] = empirical_cf(col[:, 0], th)
    pair_limit = tol if tol is not None else 5.0 * math.sqrt(2.0 / ens)
    for a, b in (("li", "lr"), ("li", "lc"), ("lr", "lc")):
        dist = float(np.max(np.abs(ecfs[a] - ecfs[b])))
        items.append({"name": f"schemes.agreement_{a}_{b}",
                      "passed": bool(dist < pair_limit),
                      "deviation": dist, "limit": float(pair_limit)})
    rep = tightness_check("li", af, (0.2, 0.5, 0.8), (1.0, 3.0), n, ens,
                          stream.child(4))
    items.append({"name": "schemes.tightness", "passed": bool(rep.passed),
                  "empirical": list(rep.empirical), "bounds": list(rep.bounds)})
    return items


def _suite_continuous(resolved: dict, af: AlphaFunction,
                      stream: RandomStream) -> list[dict]:
    ens = int(resolved["ensemble"])
    tol = resolved["tolerance"]
    items = []

    alpha_c, d_c = 1.5, 1.0
    worst = 0.0
    for j in range(1, 9):
        peaks = (2.0 * np.arange(2 ** j) + 1.0) / 2.0 ** (j + 1)
        t_grid = np.concatenate([[0.0], peaks])
        hi = sample_continuous_stable(
            ContinuousStableConfig(alpha_c, d_c, levels=j), t_grid,
            stream.child(0))
        lo = sample_continuous_stable(
            ContinuousStableConfig(alpha_c, d_c, levels=j - 1), t_grid,
            stream.child(0))
        observed = float(np.max(np.abs(hi.values[1:] - lo.values[1:])))
        z = stable_level_draws(alpha_c, j, stream.child(0))
        expected = 2.0 ** (-j * d_c) * float(np.max(np.abs(z)))
        worst = max(worst, abs(observed - expected))
    items.append({"name": "continuous.level_increment_identity",
                  "passed": bool(worst < 1e-14), "deviation": worst,
                  "limit": 1e-14})

    # The provable envelope is phi(t) <= scale <= upper for every admissible
    # pair; the steeper lower bound phi(t)^(1/alpha) holds once alpha <= 1.
    worst = 0.0
    pins = 0.0
    ts = np.linspace(0.0, 1.0, 1001)
    for alpha, d in ((1.5, 1.0), (0.8, 2.0), (2.0, 0.6)):
        cfg = ContinuousStableConfig(alpha, d)
        pins = max(pins, abs(scale_parameter(cfg, 0.0)),
                   abs(scale_parameter(cfg, 0.5) - 1.0))
        sig = scale_parameter(cfg, ts)
        lower_claim, upper = scale_bounds(cfg, ts)
        lower = lower_claim if alpha <= 1.0 else triangle(ts)
        worst = max(worst, float(np.max(lower - sig)), float(np.max(sig - upper)))
    items.append({"name": "continuous.scale_pins",
                  "passed": bool(pins < 1e-14), "deviation": pins,
                  "limit": 1e-14})
    items.append({"name": "continuous.scale_bounds",
                  "passed": bool(worst < 1e-12), "worst_violation": worst,
                  "limit": 1e-12})

    n_sn = min(int(resolved["n"]), 6)
    draws = sn_boundary_ensemble(n_sn, af, stream.child(1), [2 ** n_sn], ens)
    theo = [np.exp(-exponent_integral(af, t, 0.0, 1.0))
            for t in theta_grid_default()]
    rep = ecf_report(draws[:, 0], np.asarray(theo, dtype=complex),
                     label="sn boundary")
    items.append(_ecf_item("continuous.boundary_marginal_cf", rep, tol))
    return items


def _suite_integrals(resolved: dict, af: AlphaFunction,
                     stream: RandomStream) -> list[dict]:
    ens = int(resolved["ensemble"])
    n = min(int(resolved["n"]), 10)
    items = []

    alpha_c = AlphaFunction.constant(1.5)
    table = stream.child(0).generator().random(16) + 0.5
    f = IntegrandFunction.from_table(table)
    oracle = float(np.mean(table ** 1.5) ** (1.0 / 1.5))
    dev = abs(quasinorm(f, alpha_c) - oracle)
    items.append({"name": "integrals.quasinorm_closed_form",
                  "passed": bool(dev < 1e-10), "deviation": dev,
                  "limit": 1e-10})

    rep = independence_test(half_open_indicator(0.0, 0.5),
                            half_open_indicator(0.5, 1.0), af,
                            stream.child(1), n=n, ensemble=ens)
    items.append({"name": "integrals.independent_disjoint",
                  "passed": bool(rep.verdict == "independent"
                                 and rep.empirical_independent),
                  "overlap": rep.overlap, "distance": rep.distance,
                  "threshold": rep.threshold})
    whole = half_open_indicator(0.0, 1.0)
    rep = independence_test(whole, whole, af, stream.child(2), n=n,
                            ensemble=ens)
    items.append({"name": "integrals.dependent_overlap",
                  "passed": bool(rep.verdict == "dependent"
                                 and not rep.empirical_independent),
                  "overlap": rep.overlap, "distance": rep.distance,
                  "threshold": rep.threshold})
    thirds = [half_open_indicator(k / 3.0, (k + 1) / 3.0) for k in range(3)]
    pw = pairwise_independence(thirds, af)
    items.append({"name": "integrals.pairwise_thirds",
                  "passed": bool(pw.independent),
                  "overlaps": [list(o) for o in pw.overlaps]})

    kernel = KernelFunction.running_indicator()
    worst = 0.0
    for t, v in ((0.5, 0.5 - 2.0 ** -4), (0.75, 0.75 - 2.0 ** -6)):
        delta = kernel.slice(t) - kernel.slice(v)
        worst = max(worst, abs(modular_integral(delta, af) - (t - v)))
    items.append({"name": "integrals.hoelder_energy_identity",
                  "passed": bool(worst < 1e-10), "deviation": worst,
                  "limit": 1e-10})
    return items


def _suite_localisability(resolved: dict, af: AlphaFunction,
                          stream: RandomStream) -> list[dict]:
    ens = int(resolved["ensemble"])
    n = max(int(resolved["n"]), 12)
    tol = resolved["tolerance"]
    tolerance = tol if tol is not None else max(0.05, 6.0 / math.sqrt(ens))
    rep = localisability_test(af, 0.5, 1.0,
                              [2.0 ** -4, 2.0 ** -5, 2.0 ** -6, 2.0 ** -7],
                              n, ens, stream.child(0), tolerance=tolerance)
    return [{"name": "localisability.linear_trend",
             "passed": bool(rep.passed),
             "deviations": list(rep.deviations),
             "spearman": float(rep.spearman),
             "final_deviation": float(rep.final_deviation),
             "tolerance": float(rep.tolerance)}]


def _cmd_verify(args: argparse.Namespace) -> int:
    resolved = _resolve(args, _VERIFY_DEFAULTS)
    af = _alpha_of(resolved)
    suite = resolved["suite"]
    if suite != "all" and suite not in _SUITES:
        raise ParameterError(
            f"unknown suite {suite!r}; pick one of {('all',) + _SUITES}")
    selected = _SUITES if suite == "all" else (suite,)
    stream = RandomStream(int(resolved["seed"]))
    runners = {
        "stable": lambda s: _suite_stable(resolved, s),
        "schemes": lambda s: _suite_schemes(resolved, af, s),
        "continuous": lambda s: _suite_continuous(resolved, af, s),
        "integrals": lambda s: _suite_integrals(resolved, af, s),
        "localisability": lambda s: _suite_localisability(resolved, af, s),
    }
    items: list[dict] = []
    for tag, name in enumerate(_SUITES):
        if name in selected:
            items.extend(runners[name](stream.child(tag)))
    items.sort(key=lambda item: item["name"])
    all_pass = all(item["passed"] for item in items)
    report = {"command": "verify", "config": resolved, "items": items,
              "all_pass": all_pass}
    _emit_json(report, resolved["out"])
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# norm / localize / condition7 / example1
# ---------------------------------------------------------------------------

_NORM_DEFAULTS: dict = {"alpha": _DEFAULT_ALPHA, "table": None, "out": None}


def _cmd_norm(args: argparse.Namespace) -> int:
    resolved = _resolve(args, _NORM_DEFAULTS)
    af = _alpha_of(resolved)
    if resolved["table"] is None:
        raise ParameterError("norm needs --table with comma-separated values")
    values = _parse_floats(resolved["table"])
    value = quasinorm(IntegrandFunction.from_table(values), af)
    sys.stdout.write(f"{value!r}\n")
    if resolved["out"]:
        _emit_json({"command": "norm", "config": resolved,
                    "quasinorm": value}, resolved["out"])
    return 0


_LOCALIZE_DEFAULTS: dict = {
    "alpha": _DEFAULT_ALPHA, "x": 0.5, "u": 1.0, "n": 12, "ensemble": 4000,
    "seed": None, "r_list": "0.0625,0.03125,0.015625,0.0078125",
    "tolerance": None, "out": None, "plot": False,
}


def _cmd_localize(args: argparse.Namespace) -> int:
    resolved = _resolve(args, _LOCALIZE_DEFAULTS)
    af = _alpha_of(resolved)
    ens = int(resolved["ensemble"])
    tol = resolved["tolerance"]
    tolerance = float(tol) if tol is not None else max(0.05, 6.0 / math.sqrt(ens))
    resolved["tolerance"] = tolerance
    rep = localisability_test(af, float(resolved["x"]), float(resolved["u"]),
                              _parse_floats(resolved["r_list"]),
                              int(resolved["n"]), ens,
                              RandomStream(int(resolved["seed"])),
                              tolerance=tolerance)
    payload = {"command": "localize", "config": resolved,
               "report": rep.to_json_dict()}
    _emit_json(payload, resolved["out"])
    if resolved["plot"]:
        with open(_svg_target(resolved), "w", encoding="utf-8") as fh:
            write_svg(fh, [(rep.r_list, rep.deviations, "sup CF deviation")],
                      title=f"rescaled increments at x={rep.x}", meta=payload)
    return 0 if rep.passed else 1


_CONDITION7_DEFAULTS: dict = {
    "alpha": _DEFAULT_ALPHA, "threshold": 1e-3, "x_points": 257,
    "lags": tuple(2.0 ** -k for k in range(2, 21)), "out": None,
}


def _cmd_condition7(args: argparse.Namespace) -> int:
    resolved = _resolve(args, _CONDITION7_DEFAULTS)
    af = _alpha_of(resolved)
    lags = _parse_floats(resolved["lags"])
    resolved["lags"] = lags
    t0, t1 = af.domain
    xs = np.linspace(t0, t1, int(resolved["x_points"]))
    # A jump at p only registers for lag t when some probe lies in
    # [p - t, p), so straddle every breakpoint at every lag explicitly.
    straddles = [p - lag / 2.0 for p in af.breakpoints for lag in lags]
    if straddles:
        xs = np.union1d(xs, np.clip(straddles, t0, t1))
    rep = check_condition7(af, xs, lags, float(resolved["threshold"]))
    _emit_json({"command": "condition7", "config": resolved,
                "report": rep.to_json_dict()}, resolved["out"])
    return 0 if rep.verdict == "satisfied" else 1


_EXAMPLE1_DEFAULTS: dict = {
    "b": 1.8, "u": 0.95, "theta": 1.0, "n_min": 4, "n_max": 20,
    "out": None, "plot": False,
}


def _cmd_example1(args: argparse.Namespace) -> int:
    resolved = _resolve(args, _EXAMPLE1_DEFAULTS)
    n_min, n_max = int(resolved["n_min"]), int(resolved["n_max"])
    if not 0 <= n_min <= n_max:
        raise ParameterError(f"need 0 <= n_min <= n_max, got {n_min}..{n_max}")
    af = plateau_identity_alpha(float(resolved["b"]))
    u, theta = float(resolved["u"]), float(resolved["theta"])
    rows = [(n, lf_n_exponent(af, u, theta, n)) for n in range(n_min, n_max + 1)]
    sys.stdout.write("n,exponent\n")
    for n, value in rows:
        sys.stdout.write(f"{n},{value!r}\n")
    if resolved["out"]:
        _emit_json({"command": "example1", "config": resolved,
                    "alpha": af.to_json_dict(),
                    "rows": [[n, v] for n, v in rows]}, resolved["out"])
    if resolved["plot"]:
        with open(_svg_target(resolved), "w", encoding="utf-8") as fh:
            write_svg(fh, [([n for n, _ in rows], [v for _, v in rows],
                            "CF exponent")],
                      title="field-based scheme divergence",
                      meta={"command": "example1", "config": resolved})
    return 0


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mslevy",
        description="Simulate multistable Levy motions and verify their "
                    "distributional properties.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with defaults; explicit "
                                         "flags override its values")
    common.add_argument("--out", help="artifact path (default: stdout)")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int,
                        help=f"RNG seed (default: ${_ENV_SEED} or 0)")

    alpha_arg = argparse.ArgumentParser(add_help=False)
    alpha_arg.add_argument("--alpha", help="stability-exponent function as "
                                           "JSON (kind constant/linear/"
                                           "piecewise/piecewise_linear/table)")

    p = sub.add_parser("simulate", parents=[common, seeded, alpha_arg],
                       help="draw paths and write them as CSV")
    p.add_argument("--scheme", choices=_SCHEMES)
    p.add_argument("--n", type=int, help="dyadic refinement level")
    p.add_argument("--ensemble", type=int, help="number of replicate paths")
    p.add_argument("--nested", action="store_true", default=None,
                   help="share draws across levels (dyadic addressing)")
    p.add_argument("--d", type=float, help="basis decay exponent (sn)")
    p.add_argument("--levels", type=int, help="series truncation level (sn)")
    p.add_argument("--mesh-level", type=int, dest="mesh_level",
                   help="output grid level for sn (default n+2)")
    p.add_argument("--weight", help="comma-separated weight table (weighted)")
    p.add_argument("--n-terms", type=int, dest="n_terms",
                   help="summand count for the stable scheme (default 2^n)")
    p.add_argument("--plot", action="store_true", default=None,
                   help="also write an SVG chart next to --out")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", parents=[common, seeded, alpha_arg],
                       help="run a verification suite, write a JSON report")
    p.add_argument("--suite", choices=("all",) + _SUITES)
    p.add_argument("--n", type=int, help="dyadic refinement level")
    p.add_argument("--ensemble", type=int, help="Monte-Carlo size (>= 1000)")
    p.add_argument("--tolerance", type=float,
                   help="override every statistical pass threshold")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("norm", parents=[common, alpha_arg],
                       help="quasinorm of a tabulated function")
    p.add_argument("--table", help="comma-separated function values on a "
                                   "uniform grid")
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("localize", parents=[common, seeded, alpha_arg],
                       help="rescaled-increment convergence diagnostic")
    p.add_argument("--x", type=float, help="center point")
    p.add_argument("--u", type=float, help="window direction")
    p.add_argument("--n", type=int, help="dyadic refinement level")
    p.add_argument("--ensemble", type=int)
    p.add_argument("--r-list", dest="r_list",
                   help="comma-separated decreasing radii")
    p.add_argument("--tolerance", type=float,
                   help="final sup-CF deviation to beat")
    p.add_argument("--plot", action="store_true", default=None)
    p.set_defaults(func=_cmd_localize)

    p = sub.add_parser("condition7", parents=[common, alpha_arg],
                       help="vanishing-oscillation diagnostic on the exponent")
    p.add_argument("--threshold", type=float)
    p.add_argument("--x-points", type=int, dest="x_points")
    p.add_argument("--lags", help="comma-separated decreasing lags in (0,1)")
    p.set_defaults(func=_cmd_condition7)

    p = sub.add_parser("example1", parents=[common],
                       help="divergence table of the naive field-based "
                            "scheme's CF exponent")
    p.add_argument("--b", type=float, help="plateau parameter in (0,2)")
    p.add_argument("--u", type=float, help="evaluation point")
    p.add_argument("--theta", type=float, help="CF argument")
    p.add_argument("--n-min", type=int, dest="n_min")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--plot", action="store_true", default=None)
    p.set_defaults(func=_cmd_example1)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
