"""Deterministic SVG pictures of scenes, arrangements, and zones, plus
matplotlib figures for the measurement reports.

The SVG writer is hand-rolled so output bytes depend only on the input:
fixed 4-decimal coordinates, sorted iteration, one polygon element per
zone face (they carry class "zone-face", so a report can count them).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .arrangement import Arrangement, ZoneReport, _clip_line_to_box
from .geom import ConvexPolygon, Disc, Scene

_LINE_COLORS = ("#2a6f97", "#61a5c2", "#468faf", "#014f86", "#89c2d9")
_LAYER_FILLS = ("#ffb703", "#fd9e02", "#fb8500", "#e36414", "#c9184a")


def _f(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _poly_points(pts) -> str:
    return " ".join(f"{_f(p.x)},{_f(p.y)}" for p in pts)


def render_svg(
    s: Scene,
    arr: Arrangement | None = None,
    zone: ZoneReport | None = None,
    width: int = 640,
    path: str | None = None,
) -> str:
    """SVG document for a scene, optionally with arrangement edges and a
    zone overlay (one polygon per zone face).  An empty scene still
    renders, axes only."""
    if arr is not None:
        xlo, ylo, xhi, yhi = arr.box
    else:
        xs, ys = [0.0], [0.0]
        for l in s.lines:
            xs.extend((l.c * l.a - 2 * l.b, l.c * l.a + 2 * l.b))
            ys.extend((l.c * l.b + 2 * l.a, l.c * l.b - 2 * l.a))
        for p in s.pseudo_discs:
            if isinstance(p, Disc):
                xs.extend((p.center.x - p.radius, p.center.x + p.radius))
                ys.extend((p.center.y - p.radius, p.center.y + p.radius))
            elif isinstance(p, ConvexPolygon):
                xs.extend(q.x for q in p.vertices)
                ys.extend(q.y for q in p.vertices)
        pad = 0.25 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        xlo, xhi = min(xs) - pad, max(xs) + pad
        ylo, yhi = min(ys) - pad, max(ys) + pad
    span = max(xhi - xlo, yhi - ylo)
    sw = span / 400.0
    height = int(round(width * (yhi - ylo) / (xhi - xlo)))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="{_f(xlo)} {_f(ylo)} {_f(xhi - xlo)} '
        f'{_f(yhi - ylo)}">',
        # y grows upward in scene coordinates
        f'<g transform="translate(0 {_f(yhi + ylo)}) scale(1 -1)">',
        f'<rect x="{_f(xlo)}" y="{_f(ylo)}" width="{_f(xhi - xlo)}" '
        f'height="{_f(yhi - ylo)}" fill="#fdfdfd"/>',
    ]
    axis = f'stroke="#cccccc" stroke-width="{_f(sw)}"'
    if xlo < 0 < xhi:
        out.append(f'<line x1="0" y1="{_f(ylo)}" x2="0" y2="{_f(yhi)}" {axis}/>')
    if ylo < 0 < yhi:
        out.append(f'<line x1="{_f(xlo)}" y1="0" x2="{_f(xhi)}" y2="0" {axis}/>')

    if zone is not None and arr is not None:
        for layer_idx, layer in enumerate(zone.layers):
            fill = _LAYER_FILLS[min(layer_idx, len(_LAYER_FILLS) - 1)]
            for f in sorted(layer):
                out.append(
                    f'<polygon class="zone-face" data-face="{f}" '
                    f'data-layer="{layer_idx}" '
                    f'points="{_poly_points(arr.face_polygon(f))}" '
                    f'fill="{fill}" fill-opacity="0.45" stroke="none"/>'
                )

    if arr is not None:
        seen = set()
        for f in range(arr.n_faces):
            for h in arr.face_ring(f):
                e = h >> 1
                if e in seen or arr.edge_line(e) < 0:
                    continue
                seen.add(e)
                u, v = arr.edge_segment(e)
                out.append(
                    f'<line x1="{_f(u.x)}" y1="{_f(u.y)}" x2="{_f(v.x)}" '
                    f'y2="{_f(v.y)}" stroke="#9db4c0" '
                    f'stroke-width="{_f(0.6 * sw)}"/>'
                )

    for l in sorted(s.lines, key=lambda l: l.id):
        hit = _clip_line_to_box((xlo, ylo, xhi, yhi), l.c * l.a, l.c * l.b,
                                l.b, -l.a)
        if hit is None:
            continue
        t0, _, t1, _ = hit
        x1, y1 = l.c * l.a + t0 * l.b, l.c * l.b - t0 * l.a
        x2, y2 = l.c * l.a + t1 * l.b, l.c * l.b - t1 * l.a
        color = _LINE_COLORS[l.id % len(_LINE_COLORS)]
        out.append(
            f'<line class="scene-line" data-line="{l.id}" x1="{_f(x1)}" '
            f'y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" stroke="{color}" '
            f'stroke-width="{_f(1.4 * sw)}"/>'
        )

    for p in sorted(s.pseudo_discs, key=lambda p: p.id):
        if isinstance(p, Disc):
            out.append(
                f'<circle class="scene-disc" data-disc="{p.id}" '
                f'cx="{_f(p.center.x)}" cy="{_f(p.center.y)}" '
                f'r="{_f(p.radius)}" fill="#80b918" fill-opacity="0.25" '
                f'stroke="#55752f" stroke-width="{_f(sw)}"/>'
            )
        else:
            out.append(
                f'<polygon class="scene-disc" data-disc="{p.id}" '
                f'points="{_poly_points(p.vertices)}" fill="#80b918" '
                f'fill-opacity="0.25" stroke="#55752f" '
                f'stroke-width="{_f(sw)}"/>'
            )

    out.append("</g>")
    out.append("</svg>")
    doc = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(doc)
    return doc


# ---------------------------------------------------------------------------
# report figures


def growth_figure(report, path: str) -> None:
    """Log-log scatter of a growth report with its fitted slope."""
    ns = [c["n"] for c in report.cells if c["value"] is not None]
    vs = [c["value"] for c in report.cells if c["value"] is not None]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.loglog(ns, vs, "o", color="#2a6f97", alpha=0.6, label="cells")
    fit_ns = [n for n in report.sizes if n in set(ns)]
    ax.loglog(fit_ns, report.means, "s-", color="#e36414",
              label=f"means (slope {report.log_log_slope:.3f})")
    label = report.metric_name
    if report.t is not None:
        label += f"(t={report.t})"
    ax.set_xlabel("n")
    ax.set_ylabel(label)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def zone_figure(result, path: str) -> None:
    """Zone complexities against the linear envelope."""
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ns = sorted({r["n"] for r in result.rows})
    for n in ns:
        comps = [r["complexity"] for r in result.rows if r["n"] == n]
        ax.plot([n] * len(comps), comps, "o", color="#2a6f97", alpha=0.4)
    bounds = [next(r["bound"] for r in result.rows if r["n"] == n) for n in ns]
    ax.plot(ns, bounds, "-", color="#c9184a", label="envelope")
    ax.set_xlabel("n")
    ax.set_ylabel("zone complexity")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
