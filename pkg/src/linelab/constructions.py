"""Seeded generators for scenes: random lines, random discs, incircle
families, and jittered grids with disjoint disc bundles.

Every generator draws from numpy's PCG64 stream keyed by the caller's seed,
so equal seeds reproduce scenes bit for bit.  Rejection sampling enforces
the scene margins with a safety factor, keeping validator flags and builder
rejections away from the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateTriangle,
    GenerationRetriesExhausted,
    ParameterMismatch,
)
from .geom import (
    DEFAULT_MARGINS,
    Disc,
    Line,
    Margins,
    Point,
    Scene,
    incircle_of_triangle,
    validate_general_position,
)

_ANGLE_SAFETY = 2.0
_SEP_SAFETY = 4.0


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative recipe for a scene; `generate` dispatches on `kind`."""

    kind: str
    n: int = 0
    m: int = 0
    t: int = 0
    seed: int = 0
    radius_range: tuple[float, float] = (0.05, 0.2)
    margins: Margins = DEFAULT_MARGINS
    validate: bool = True  # incircleFamily only: full-scene audit on/off

    KINDS = ("randomLines", "gridLines", "randomDiscs", "disjointDiscGrid",
             "incircleFamily")


def generate(spec: GeneratorSpec) -> Scene:
    if spec.kind == "randomLines":
        return Scene(tuple(gen_random_lines(spec.n, spec.seed, spec.margins)),
                     margins=spec.margins)
    if spec.kind == "gridLines":
        return Scene(tuple(gen_grid_lines(spec.n, spec.seed, spec.margins)),
                     margins=spec.margins)
    if spec.kind == "randomDiscs":
        lines = gen_random_lines(spec.n, spec.seed, spec.margins) if spec.n else []
        return gen_random_scene_discs(lines, spec.m, spec.seed, spec.margins,
                                      spec.radius_range)
    if spec.kind == "disjointDiscGrid":
        return gen_disjoint_disc_grid(spec.n, spec.t, spec.seed, spec.margins)
    if spec.kind == "incircleFamily":
        return gen_incircle_scene(spec.n, spec.seed, spec.margins,
                                  validate=spec.validate)
    raise ParameterMismatch(f"unknown generator kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# random lines


def gen_random_lines(
    n: int,
    seed: int,
    margins: Margins = DEFAULT_MARGINS,
    max_retries_per_line: int = 2000,
) -> list[Line]:
    """n lines with pairwise angular gaps and crossing separations beyond the
    margins (with a safety factor), suitable for arrangement building.

    A candidate is rejected when it comes within the separation margin of an
    existing crossing (the perpendicular distance bounds the along-line gap
    from below) or when two of its own crossings would be too close.
    """
    if n < 1:
        raise ParameterMismatch("need n >= 1 lines")
    rng = np.random.default_rng(seed)
    min_gap = _ANGLE_SAFETY * margins.min_angle
    min_sep = _SEP_SAFETY * margins.min_separation

    angles: list[float] = []
    la: list[float] = []
    lb: list[float] = []
    lc: list[float] = []
    vx = np.empty(0)
    vy = np.empty(0)
    tries = 0
    while len(la) < n:
        tries += 1
        if tries > max_retries_per_line * max(n, 1):
            raise GenerationRetriesExhausted(
                f"random lines: margins too tight for n={n}"
            )
        phi = float(rng.uniform(0.0, math.pi))
        c = float(rng.uniform(-1.0, 1.0))
        if angles:
            diffs = np.abs(np.array(angles) - phi)
            if float(np.min(np.minimum(diffs, math.pi - diffs))) < min_gap:
                continue
        a, b = math.cos(phi), math.sin(phi)
        if len(vx) and float(np.min(np.abs(a * vx + b * vy - c))) < min_sep:
            continue
        if la:
            aa = np.array(la)
            bb = np.array(lb)
            cc = np.array(lc)
            det = a * bb - aa * b
            nx = (c * bb - cc * b) / det
            ny = (a * cc - aa * c) / det
            if len(nx) > 1:
                t_par = -b * nx + a * ny
                t_par.sort()
                if float(np.min(np.diff(t_par))) < min_sep:
                    continue
            vx = np.concatenate([vx, nx])
            vy = np.concatenate([vy, ny])
        angles.append(phi)
        la.append(a)
        lb.append(b)
        lc.append(c)
    return [Line(i, la[i], lb[i], lc[i]) for i in range(n)]


def gen_grid_lines(
    n: int, seed: int, margins: Margins = DEFAULT_MARGINS
) -> list[Line]:
    """n/2 vertical and n/2 horizontal unit-spaced lines with seed-scaled
    jitter small enough to keep every disc margin intact.

    Near-parallel pairs remain by design; grid scenes feed hypergraph
    counting, not arrangement construction.
    """
    if n < 2 or n % 2:
        raise ParameterMismatch("grid lines need an even n >= 2")
    rng = np.random.default_rng(seed)
    half = n // 2
    extent = max(half, 1.0)
    jitter_angle = 0.1 * margins.min_separation / extent
    jitter_offset = 0.1 * margins.min_separation
    lines = []
    for i in range(half):
        phi = jitter_angle * float(rng.uniform(-1.0, 1.0))
        off = float(i) + jitter_offset * float(rng.uniform(-1.0, 1.0))
        lines.append(Line(i, math.cos(phi), math.sin(phi), off))
    for j in range(half):
        phi = math.pi / 2 + jitter_angle * float(rng.uniform(-1.0, 1.0))
        off = float(j) + jitter_offset * float(rng.uniform(-1.0, 1.0))
        lines.append(Line(half + j, math.cos(phi), math.sin(phi), off))
    return lines


# ---------------------------------------------------------------------------
# random discs


def gen_random_discs(
    m: int,
    seed: int,
    radius_range: tuple[float, float] = (0.05, 0.2),
    box: tuple[float, float, float, float] = (-1.0, -1.0, 1.0, 1.0),
    margins: Margins = DEFAULT_MARGINS,
) -> list[Disc]:
    """m discs with centers in the box; no margin interaction is checked here
    (use gen_random_scene_discs to co-generate with lines)."""
    rng = np.random.default_rng(seed)
    lo, hi = radius_range
    xlo, ylo, xhi, yhi = box
    return [
        Disc(
            k,
            Point(float(rng.uniform(xlo, xhi)), float(rng.uniform(ylo, yhi))),
            float(rng.uniform(lo, hi)),
        )
        for k in range(m)
    ]


def gen_random_scene_discs(
    lines: Sequence[Line],
    m: int,
    seed: int,
    margins: Margins = DEFAULT_MARGINS,
    radius_range: tuple[float, float] = (0.05, 0.2),
    box: tuple[float, float, float, float] = (-1.0, -1.0, 1.0, 1.0),
    max_retries_per_disc: int = 4000,
) -> Scene:
    """Scene of the given lines plus m rejection-sampled discs that keep all
    tangency and contact margins, so the scene validates cleanly."""
    rng = np.random.default_rng(seed)
    lo, hi = radius_range
    xlo, ylo, xhi, yhi = box
    la = np.array([l.a for l in lines]) if lines else np.empty(0)
    lb = np.array([l.b for l in lines]) if lines else np.empty(0)
    lc = np.array([l.c for l in lines]) if lines else np.empty(0)
    min_sep = _SEP_SAFETY * margins.min_separation

    discs: list[Disc] = []
    tries = 0
    while len(discs) < m:
        tries += 1
        if tries > max_retries_per_disc * max(m, 1):
            raise GenerationRetriesExhausted(
                f"random discs: margins too tight for m={m}"
            )
        cx = float(rng.uniform(xlo, xhi))
        cy = float(rng.uniform(ylo, yhi))
        r = float(rng.uniform(lo, hi))
        if len(la):
            gap = np.abs(np.abs(la * cx + lb * cy - lc) - r)
            if float(gap.min()) < min_sep * r:
                continue
        ok = True
        for d in discs:
            dist = math.hypot(d.center.x - cx, d.center.y - cy)
            scale = max(d.radius, r, 1.0)
            if (
                abs(dist - (d.radius + r)) < min_sep * scale
                or abs(dist - abs(d.radius - r)) < min_sep * scale
            ):
                ok = False
                break
        if not ok:
            continue
        cand = Disc(len(discs), Point(cx, cy), r)
        if len(la) and not _boundary_points_clear(cand, discs, la, lb, lc, min_sep):
            continue
        discs.append(cand)
    return Scene(tuple(lines), tuple(discs), margins)


def _boundary_points_clear(cand, discs, la, lb, lc, min_sep) -> bool:
    """No boundary-boundary crossing of cand with an accepted disc lies
    within the separation margin of any line."""
    for d in discs:
        dx = d.center.x - cand.center.x
        dy = d.center.y - cand.center.y
        dist = math.hypot(dx, dy)
        if dist >= cand.radius + d.radius or dist <= abs(cand.radius - d.radius):
            continue
        a = (dist * dist + cand.radius**2 - d.radius**2) / (2.0 * dist)
        h = math.sqrt(max(cand.radius**2 - a * a, 0.0))
        mx = cand.center.x + a * dx / dist
        my = cand.center.y + a * dy / dist
        ox, oy = -dy / dist, dx / dist
        for sgn in (1.0, -1.0):
            qx, qy = mx + sgn * h * ox, my + sgn * h * oy
            if float(np.min(np.abs(la * qx + lb * qy - lc))) < min_sep:
                return False
    return True


# ---------------------------------------------------------------------------
# incircle families


def incircle_family(
    lines: Sequence[Line], margins: Margins = DEFAULT_MARGINS
) -> Scene:
    """One disc per line triple: the inscribed circle of their triangle,
    with all three tangencies recorded.  Disc ids follow the lexicographic
    triple order."""
    lines = sorted(lines, key=lambda l: l.id)
    discs = []
    for disc_id, (l1, l2, l3) in enumerate(combinations(lines, 3)):
        discs.append(incircle_of_triangle(l1, l2, l3, margins, disc_id=disc_id))
    return Scene(tuple(lines), tuple(discs), margins)


def gen_incircle_scene(
    n: int,
    seed: int,
    margins: Margins = DEFAULT_MARGINS,
    max_attempts: int = 60,
    validate: bool = True,
) -> Scene:
    """Margin-validated incircle family over n random lines.

    Draws line sets from sub-seeds (seed, attempt) until the full scene,
    incircles included, passes the general-position audit.  validate=False
    skips the quadratic disc-pair audit (the lines themselves are still
    margin-checked); bulk experiments use that path since the counted
    quantities depend only on tangency structure the construction fixes."""
    if n < 3:
        raise ParameterMismatch("incircle family needs n >= 3 lines")
    for attempt in range(max_attempts):
        lines = gen_random_lines(n, np.random.SeedSequence([seed, attempt]),
                                 margins)
        try:
            scene = incircle_family(lines, margins)
        except DegenerateTriangle:
            continue
        if not validate:
            return scene
        report = validate_general_position(scene)
        if report.valid:
            return scene
    raise GenerationRetriesExhausted(
        f"no margin-valid incircle scene for n={n}, seed={seed} "
        f"after {max_attempts} attempts"
    )


# ---------------------------------------------------------------------------
# disjoint disc grid


def gen_disjoint_disc_grid(
    n: int, t: int, seed: int, margins: Margins = DEFAULT_MARGINS
) -> Scene:
    """Jittered (n/2 x n/2) grid of lines plus (n/t)^2 pairwise-disjoint
    discs, each crossing exactly one (t/2 x t/2) bundle of t lines."""
    if t < 2 or t % 2:
        raise ParameterMismatch("bundle size t must be even and >= 2")
    if n % 2 or n < t or n % t:
        raise ParameterMismatch("n must be even and a multiple of t")
    lines = gen_grid_lines(n, seed, margins)
    half = n // 2
    bundle = t // 2
    groups = half // bundle
    radius = (bundle - 1) / 2.0 + 0.45
    discs = []
    disc_id = 0
    for gi in range(groups):
        for gj in range(groups):
            cx = gi * bundle + (bundle - 1) / 2.0
            cy = gj * bundle + (bundle - 1) / 2.0
            discs.append(Disc(disc_id, Point(cx, cy), radius))
            disc_id += 1
    return Scene(tuple(lines), tuple(discs), margins)
