"""Seeded measurement runs: growth curves, zone envelopes, sweep audits.

Every run here is deterministic in (sizes, seeds) and returns a small
result object with to_rows()/to_dict() for the CSV and JSON emitters in
the command line layer.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .arrangement import build_arrangement, zone_upper_bound
from .constructions import (
    GeneratorSpec,
    gen_incircle_scene,
    gen_random_lines,
    generate,
)
from .errors import (
    GenerationRetriesExhausted,
    ParameterMismatch,
    QueryDegenerate,
)
from .geom import DEFAULT_MARGINS, Line, Margins, raw_intersection
from .hypergraph import build_hypergraph
from .tangent import total_hyperedge_audit


def fit_loglog(xs, ys) -> tuple[float, float, float]:
    """Least-squares line through (log x, log y).

    Returns (slope, intercept, max_residual); an exact power law c*x^a
    comes back with slope a and residual at float noise.
    """
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    if len(lx) < 2:
        raise ValueError("need at least two points to fit")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = float(np.max(np.abs(ly - (slope * lx + intercept))))
    return float(slope), float(intercept), resid


# ---------------------------------------------------------------------------
# growth curves

METRICS = (
    "totalEdgeCount",
    "tEdgeCount",
    "maxLineDegree",
    "zoneComplexity",
    "leqTZoneComplexity",
)

_T_METRICS = ("tEdgeCount", "maxLineDegree", "leqTZoneComplexity")


@dataclass(frozen=True)
class GrowthReport:
    metric_name: str
    t: int | None
    sizes: tuple[int, ...]
    seeds: tuple[int, ...]
    cells: tuple[dict, ...]  # {"n", "seed", "value"}; value None if the
    # cell's generation failed (the rest of the run continues)
    means: tuple[float, ...]  # per size, over the cells that produced values
    log_log_slope: float
    residual: float

    def to_rows(self):
        return [["n", "seed", "value"]] + [
            [c["n"], c["seed"], c["value"]] for c in self.cells
        ]

    def to_dict(self) -> dict:
        return {
            "metric": self.metric_name,
            "t": self.t,
            "sizes": list(self.sizes),
            "seeds": list(self.seeds),
            "cells": list(self.cells),
            "means": list(self.means),
            "logLogSlope": self.log_log_slope,
            "residual": self.residual,
        }


def _cell_value(metric, t, sc, margins, n, seed, queries_per=3) -> float:
    if metric in ("totalEdgeCount", "tEdgeCount", "maxLineDegree"):
        h = build_hypergraph(sc, validate=False)
        if metric == "totalEdgeCount":
            return float(len(h.edges))
        if metric == "tEdgeCount":
            return float(h.count_by_size(t))
        return float(max(h.degree_count(l.id, t) for l in sc.lines))
    lines = list(sc.lines)
    arr = build_arrangement(lines, margins)
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, 79]))
    vals = []
    for _ in range(queries_per):
        q = _random_query(rng, arr.box)
        if metric == "zoneComplexity":
            zr, arr = zone_of_query(lines, arr, q)
        else:
            try:
                arr.query_check(q)
            except QueryDegenerate:
                _, arr = zone_of_query(lines, arr, q)
            zr = arr.leq_t_zone(q, t)
        vals.append(zr.total_complexity)
    return float(np.mean(vals))


def run_growth_experiment(
    metric: str,
    generator: GeneratorSpec | None = None,
    sizes=(8, 12, 16, 24),
    seeds=(0, 1, 2),
    t: int | None = None,
    margins: Margins = DEFAULT_MARGINS,
) -> GrowthReport:
    """Fit a log-log slope of one metric across scene sizes.

    Metrics: totalEdgeCount, tEdgeCount, maxLineDegree (hypergraph counts,
    t-parameterized where it says so), zoneComplexity and
    leqTZoneComplexity (mean over seeded random queries).  The generator
    template's n and seed are overridden per cell.  A cell whose
    generation runs out of retries is recorded as None and skipped by the
    fit; the slope goes through the per-size means."""
    if metric not in METRICS:
        raise ParameterMismatch(f"unknown metric {metric!r}")
    if metric in _T_METRICS and t is None:
        raise ParameterMismatch(f"metric {metric} needs t")
    sizes = tuple(sizes)
    if len(sizes) < 4 or list(sizes) != sorted(set(sizes)):
        raise ParameterMismatch("sizes must be >= 4 strictly increasing values")
    if generator is None:
        generator = GeneratorSpec("incircleFamily", margins=margins,
                                  validate=False)
    cells = []
    by_size: dict[int, list[float]] = {n: [] for n in sizes}
    for n in sizes:
        for seed in seeds:
            try:
                sc = generate(replace(generator, n=n, seed=seed))
                v = _cell_value(metric, t, sc, margins, n, seed)
            except GenerationRetriesExhausted:
                cells.append({"n": n, "seed": seed, "value": None})
                continue
            cells.append({"n": n, "seed": seed, "value": v})
            by_size[n].append(v)
    fit_ns = [n for n in sizes if by_size[n]]
    means = [float(np.mean(by_size[n])) for n in fit_ns]
    slope, _, resid = fit_loglog(fit_ns, means)
    return GrowthReport(
        metric_name=metric,
        t=t,
        sizes=sizes,
        seeds=tuple(seeds),
        cells=tuple(cells),
        means=tuple(means),
        log_log_slope=slope,
        residual=resid,
    )


# ---------------------------------------------------------------------------
# zone envelope


def _random_query(rng, box) -> Line:
    xlo, ylo, xhi, yhi = box
    theta = rng.uniform(0.0, np.pi)
    a, b = np.sin(theta), np.cos(theta)
    px = rng.uniform(xlo + 0.2 * (xhi - xlo), xhi - 0.2 * (xhi - xlo))
    py = rng.uniform(ylo + 0.2 * (yhi - ylo), yhi - 0.2 * (yhi - ylo))
    return Line(-1, a, b, a * px + b * py)


def zone_of_query(lines, arr, q: Line):
    """Zone of q, rebuilding with q's crossings as anchors when q leaves
    the clipped window."""
    try:
        return arr.zone(q), arr
    except QueryDegenerate:
        extra = [p for l in lines if (p := raw_intersection(q, l)) is not None]
        arr2 = build_arrangement(lines, arr.margins, extra_points=extra)
        return arr2.zone(q), arr2


@dataclass(frozen=True)
class ZoneEnvelopeResult:
    rows: tuple[dict, ...]
    all_within: bool

    def to_rows(self):
        header = ["n", "seed", "query", "complexity", "bound", "within"]
        return [header] + [[r[k] for k in header] for r in self.rows]

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "all_within": self.all_within}


def verify_zone_envelope(
    sizes=(10, 50, 100, 200),
    seeds=(0, 1, 2, 3, 4, 5, 6, 7, 8, 9),
    queries_per=5,
    margins: Margins = DEFAULT_MARGINS,
) -> ZoneEnvelopeResult:
    """Zone complexity of random queries against the linear envelope."""
    rows = []
    ok = True
    for n in sizes:
        bound = zone_upper_bound(n)
        for seed in seeds:
            lines = gen_random_lines(n, seed, margins)
            arr = build_arrangement(lines, margins)
            rng = np.random.default_rng(np.random.SeedSequence([seed, n, 77]))
            for k in range(queries_per):
                q = _random_query(rng, arr.box)
                zr, arr = zone_of_query(lines, arr, q)
                comp = zr.total_complexity
                within = comp <= bound
                ok = ok and within
                rows.append({
                    "n": n, "seed": seed, "query": k,
                    "complexity": comp, "bound": int(bound), "within": within,
                })
    return ZoneEnvelopeResult(tuple(rows), ok)


# ---------------------------------------------------------------------------
# <=t zone linearity


@dataclass(frozen=True)
class LeqTResult:
    slopes: dict[int, float]
    rows: tuple[dict, ...]

    def to_rows(self):
        header = ["t", "n", "mean_complexity"]
        return [header] + [[r[k] for k in header] for r in self.rows]

    def to_dict(self) -> dict:
        return {
            "slopes": {str(t): s for t, s in sorted(self.slopes.items())},
            "rows": list(self.rows),
        }


def verify_leq_t_linearity(
    ts=(1, 2, 3),
    sizes=(50, 100, 200, 400),
    seeds=(0, 1, 2),
    queries_per=2,
    margins: Margins = DEFAULT_MARGINS,
) -> LeqTResult:
    """Mean <=t-zone complexity per size and its log-log slope in n."""
    comp: dict[tuple[int, int], list[float]] = {}
    for n in sizes:
        for seed in seeds:
            lines = gen_random_lines(n, seed, margins)
            arr = build_arrangement(lines, margins)
            rng = np.random.default_rng(np.random.SeedSequence([seed, n, 78]))
            for _ in range(queries_per):
                q = _random_query(rng, arr.box)
                try:
                    arr.query_check(q)
                except QueryDegenerate:
                    _, arr = zone_of_query(lines, arr, q)
                for t in ts:
                    zr = arr.leq_t_zone(q, t)
                    comp.setdefault((t, n), []).append(zr.total_complexity)
    rows = []
    slopes = {}
    for t in ts:
        means = [float(np.mean(comp[(t, n)])) for n in sizes]
        for n, m in zip(sizes, means):
            rows.append({"t": t, "n": n, "mean_complexity": m})
        slopes[t], _, _ = fit_loglog(sizes, means)
    return LeqTResult(slopes, tuple(rows))


# ---------------------------------------------------------------------------
# batch checks used by the command line verify group


@dataclass(frozen=True)
class AronovRangeResult:
    rows: tuple[dict, ...]
    all_exact: bool

    def to_rows(self):
        header = ["n", "seed", "exact"]
        return [header] + [[r[k] for k in header] for r in self.rows]

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "all_exact": self.all_exact}


def verify_aronov_range(
    sizes=range(4, 10),
    seeds=range(20),
    margins: Margins = DEFAULT_MARGINS,
) -> AronovRangeResult:
    """Exact per-size histograms of incircle families: C(n-t+2, 2) edges
    of every size t in 3..n and C(n, 3) in total."""
    from math import comb

    rows = []
    ok = True
    for n in sizes:
        want = {t: comb(n - t + 2, 2) for t in range(3, n + 1)}
        for seed in seeds:
            sc = gen_incircle_scene(n, seed, margins, validate=False)
            h = build_hypergraph(sc, validate=False)
            exact = h.size_histogram == want and len(h.edges) == comb(n, 3)
            ok = ok and exact
            rows.append({"n": n, "seed": seed, "exact": exact})
    return AronovRangeResult(tuple(rows), ok)


@dataclass(frozen=True)
class SweepScenesResult:
    rows: tuple[dict, ...]
    all_covered: bool

    def to_rows(self):
        header = ["seed", "covered", "total", "wedge_pairs"]
        return [header] + [[r[k] for k in header] for r in self.rows]

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "all_covered": self.all_covered}


def verify_sweep_scenes(
    seeds=range(20),
    n: int = 10,
    m: int = 25,
    margins: Margins = DEFAULT_MARGINS,
) -> SweepScenesResult:
    """Shrink + wedge-sweep audit over seeded random disc scenes."""
    from .constructions import gen_random_scene_discs

    rows = []
    ok = True
    for seed in seeds:
        lines = gen_random_lines(n, seed, margins)
        sc = gen_random_scene_discs(lines, m, seed, margins)
        audit = total_hyperedge_audit(sc)
        covered = audit.covered_edges == audit.total_edges
        ok = ok and covered
        rows.append({
            "seed": seed,
            "covered": audit.covered_edges,
            "total": audit.total_edges,
            "wedge_pairs": len(audit.pairs),
        })
    return SweepScenesResult(tuple(rows), ok)
