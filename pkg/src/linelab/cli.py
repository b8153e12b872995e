"""Command line front end.

Every command is a pure function of its arguments and input files: JSON
output is canonical (sorted keys, two-space indent, trailing newline) and
byte-identical across runs.  Exit codes: 0 success or check passed, 1 a
verification-style check failed, 2 bad input.  CSV is a lossy projection
of the JSON report; report commands that write CSV also drop a PNG figure
next to it.
"""

from __future__ import annotations

import csv
import io as _io
import sys
from pathlib import Path

import click
import numpy as np

from . import experiments, render
from .arrangement import build_arrangement, zone_upper_bound
from .constructions import GeneratorSpec, generate, incircle_family
from .errors import CapExceeded, LineLabError
from .geom import (
    Line,
    Scene,
    validate_general_position,
    validate_pseudo_disc_family,
)
from .hypergraph import build_hypergraph, delaunay_graph, planarity_check, vc_dimension
from .io import dumps, load_scene, save_scene
from .tangent import shrink_family, total_hyperedge_audit

_KIND_ALIASES = {
    "random-lines": "randomLines",
    "grid-lines": "gridLines",
    "random-discs": "randomDiscs",
    "disjoint-disc-grid": "disjointDiscGrid",
    "incircle-family": "incircleFamily",
}


class SizeList(click.ParamType):
    """Sizes as `a..b` (inclusive) or a comma list `8,12,16,24`."""

    name = "sizes"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            if ".." in value:
                a, b = value.split("..")
                lo, hi = int(a), int(b)
                if hi < lo:
                    raise ValueError
                return tuple(range(lo, hi + 1))
            return tuple(int(v) for v in value.split(","))
        except ValueError:
            self.fail(f"{value!r} is not a..b or a comma list of integers",
                      param, ctx)


SIZES = SizeList()


def _line_from_text(text: str) -> Line:
    try:
        a, b, c = (float(v) for v in text.split(","))
    except ValueError:
        raise click.UsageError(f"expected a,b,c floats, got {text!r}")
    return Line(-1, a, b, c)


def _read_scene(path: str) -> Scene:
    try:
        return load_scene(path)
    except (OSError, ValueError) as exc:
        click.echo(f"cannot read scene {path}: {exc}", err=True)
        sys.exit(2)


def _emit(payload: dict, out: str | None, as_csv: bool, rows=None,
          fig=None) -> None:
    if as_csv:
        if rows is None:
            raise click.UsageError("this command has no CSV projection")
        buf = _io.StringIO()
        w = csv.writer(buf)
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = dumps(payload)
    if out:
        Path(out).write_text(text)
        if as_csv and fig is not None:
            fig(str(Path(out).with_suffix(".png")))
    else:
        click.echo(text, nl=False)


def _pass_fail(ok: bool) -> None:
    if not ok:
        sys.exit(1)


@click.group()
def main() -> None:
    """Line arrangements and the hypergraph of lines over pseudo-discs."""


@main.command()
@click.option("--kind", required=True,
              type=click.Choice(sorted(set(GeneratorSpec.KINDS)
                                       | set(_KIND_ALIASES))))
@click.option("--n", default=0, type=int)
@click.option("--m", default=0, type=int)
@click.option("--t", default=0, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--radius-range", default="0.05,0.2")
@click.option("--no-validate", is_flag=True,
              help="skip the full-scene audit (incircle families)")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def gen(kind, n, m, t, seed, radius_range, no_validate, out):
    """Generate a scene and write it as JSON."""
    kind = _KIND_ALIASES.get(kind, kind)
    try:
        lo, hi = (float(v) for v in radius_range.split(","))
    except ValueError:
        raise click.UsageError(f"bad --radius-range {radius_range!r}")
    try:
        scene = generate(GeneratorSpec(kind, n=n, m=m, t=t, seed=seed,
                                       radius_range=(lo, hi),
                                       validate=not no_validate))
    except LineLabError as exc:
        click.echo(f"generation failed: {exc}", err=True)
        sys.exit(2)
    save_scene(scene, out)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--json", "as_json", is_flag=True, default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def validate(scene_path, as_json, out):
    """General-position and pseudo-disc family audits; exit 1 if invalid."""
    s = _read_scene(scene_path)
    gp = validate_general_position(s)
    fam = validate_pseudo_disc_family(s.pseudo_discs, s.margins)
    _emit({"general_position": gp.to_dict(), "family": fam.to_dict(),
           "valid": gp.valid and fam.valid}, out, False)
    _pass_fail(gp.valid and fam.valid)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def arrange(scene_path, out):
    """Build the arrangement of the scene's lines and print its counts."""
    s = _read_scene(scene_path)
    try:
        arr = build_arrangement(list(s.lines), s.margins)
    except LineLabError as exc:
        click.echo(f"arrangement failed: {exc}", err=True)
        sys.exit(2)
    _emit(arr.stats(), out, False)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--line", "line_text", default=None,
              help="query line as a,b,c (a*x + b*y = c)")
@click.option("--seed", default=None, type=int,
              help="draw the query line from this seed instead")
@click.option("--t", default=0, type=int, help="expand to the <=t-zone")
@click.option("--json", "as_json", is_flag=True, default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def zone(scene_path, line_text, seed, t, as_json, out):
    """Zone (or <=t-zone) of a query line in the scene's arrangement."""
    s = _read_scene(scene_path)
    if (line_text is None) == (seed is None):
        raise click.UsageError("give exactly one of --line or --seed")
    lines = list(s.lines)
    arr = build_arrangement(lines, s.margins)
    if line_text is not None:
        q = _line_from_text(line_text)
    else:
        rng = np.random.default_rng(seed)
        q = experiments._random_query(rng, arr.box)
    try:
        if t > 0:
            try:
                arr.query_check(q)
            except LineLabError:
                _, arr = experiments.zone_of_query(lines, arr, q)
            zr = arr.leq_t_zone(q, t)
        else:
            zr, arr = experiments.zone_of_query(lines, arr, q)
    except LineLabError as exc:
        click.echo(f"zone walk failed: {exc}", err=True)
        sys.exit(2)
    payload = zr.to_dict()
    payload["bound"] = zone_upper_bound(len(lines))
    _emit(payload, out, False)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--json", "as_json", is_flag=True, default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def count(scene_path, as_json, out):
    """Hyperedge counts of the scene, grouped by size."""
    s = _read_scene(scene_path)
    h = build_hypergraph(s, validate=False)
    _emit(h.to_dict(), out, False)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--line", "line_id", required=True, type=int)
@click.option("--t", default=None, type=int)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def degree(scene_path, line_id, t, out):
    """Number of hyperedges through one line, optionally of one size."""
    s = _read_scene(scene_path)
    h = build_hypergraph(s, validate=False)
    try:
        d = h.degree_count(line_id, t)
    except LineLabError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    _emit({"line": line_id, "t": t, "degree": d}, out, False)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def delaunay(scene_path, out):
    """Size-2 hyperedges as a graph, with a planarity verdict."""
    s = _read_scene(scene_path)
    g = delaunay_graph(build_hypergraph(s, validate=False))
    payload = g.to_dict()
    payload["planar"] = planarity_check(g)
    _emit(payload, out, False)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--cap", default=6, type=int)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def vc(scene_path, cap, out):
    """Exact VC dimension (up to --cap) and the Delaunay density constant."""
    s = _read_scene(scene_path)
    h = build_hypergraph(s, validate=False)
    try:
        rep = vc_dimension(h, cap=cap)
    except CapExceeded as exc:
        _emit(exc.report.to_dict(), out, False)
        click.echo(str(exc), err=True)
        sys.exit(1)
    _emit(rep.to_dict(), out, False)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def incircles(scene_path, out):
    """Replace the scene's discs with the incircle family of its lines."""
    s = _read_scene(scene_path)
    try:
        save_scene(incircle_family(list(s.lines), s.margins), out)
    except LineLabError as exc:
        click.echo(f"incircle family failed: {exc}", err=True)
        sys.exit(2)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--report", "report_path", default=None,
              type=click.Path(dir_okay=False))
def shrink(scene_path, out, report_path):
    """Shrink every disc to double tangency; the hypergraph is unchanged."""
    s = _read_scene(scene_path)
    try:
        res = shrink_family(s)
    except LineLabError as exc:
        click.echo(f"shrink failed: {exc}", err=True)
        sys.exit(2)
    save_scene(res.scene, out)
    payload = {
        "passthrough": list(res.passthrough_ids),
        "ties": [[d, list(t)] for d, t in res.ties],
    }
    _emit(payload, report_path, False)


@main.command()
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def audit(scene_path, out):
    """Wedge-sweep coverage of all size >= 2 hyperedges; exit 1 on a miss."""
    s = _read_scene(scene_path)
    try:
        rep = total_hyperedge_audit(s)
    except LineLabError as exc:
        click.echo(f"audit failed: {exc}", err=True)
        sys.exit(1)
    _emit(rep.to_dict(), out, False)


@main.command()
@click.option("--metric", required=True, type=click.Choice(experiments.METRICS))
@click.option("--kind", default="incircleFamily",
              type=click.Choice(sorted(set(GeneratorSpec.KINDS)
                                       | set(_KIND_ALIASES))))
@click.option("--n", "sizes", default="8,12,16,24", type=SIZES)
@click.option("--seeds", default=3, type=int)
@click.option("--t", default=None, type=int)
@click.option("--csv", "as_csv", is_flag=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def growth(metric, kind, sizes, seeds, t, as_csv, out):
    """Log-log growth of one metric across sizes; CSV output also drops a
    PNG of the fit next to it."""
    kind = _KIND_ALIASES.get(kind, kind)
    try:
        rep = experiments.run_growth_experiment(
            metric,
            GeneratorSpec(kind, validate=False),
            sizes=sizes,
            seeds=tuple(range(seeds)),
            t=t,
        )
    except LineLabError as exc:
        click.echo(f"growth run failed: {exc}", err=True)
        sys.exit(2)
    _emit(rep.to_dict(), out, as_csv, rows=rep.to_rows(),
          fig=lambda p: render.growth_figure(rep, p))


@main.group()
def verify() -> None:
    """Batch checks; exit 0 when every run passes."""


@verify.command("aronov")
@click.option("--n", "sizes", default="4..9", type=SIZES)
@click.option("--seeds", default=20, type=int)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def verify_aronov(sizes, seeds, out):
    """Exact incircle-family histograms across sizes and seeds."""
    rep = experiments.verify_aronov_range(sizes, range(seeds))
    _emit(rep.to_dict(), out, False)
    _pass_fail(rep.all_exact)


@verify.command("zone")
@click.option("--n", "sizes", default="10,50,100,200", type=SIZES)
@click.option("--seeds", default=10, type=int)
@click.option("--queries", default=5, type=int)
@click.option("--csv", "as_csv", is_flag=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def verify_zone(sizes, seeds, queries, as_csv, out):
    """Random-query zone complexities against the linear envelope."""
    rep = experiments.verify_zone_envelope(sizes, range(seeds), queries)
    _emit(rep.to_dict(), out, as_csv, rows=rep.to_rows(),
          fig=lambda p: render.zone_figure(rep, p))
    _pass_fail(rep.all_within)


@verify.command("sweep")
@click.option("--seeds", default=20, type=int)
@click.option("--n", default=10, type=int)
@click.option("--m", default=25, type=int)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def verify_sweep(seeds, n, m, out):
    """Shrink + wedge-sweep audit over seeded random disc scenes."""
    try:
        rep = experiments.verify_sweep_scenes(range(seeds), n, m)
    except LineLabError as exc:
        click.echo(f"sweep audit failed: {exc}", err=True)
        sys.exit(1)
    _emit(rep.to_dict(), out, False)
    _pass_fail(rep.all_covered)


@main.command("render")
@click.option("--scene", "scene_path", required=True, type=click.Path())
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--with-arrangement", is_flag=True)
@click.option("--zone-line", default=None, help="overlay zone of a,b,c")
@click.option("--t", default=0, type=int)
@click.option("--width", default=640, type=int)
def render_cmd(scene_path, out, with_arrangement, zone_line, t, width):
    """Write an SVG picture of the scene."""
    s = _read_scene(scene_path)
    arr = None
    zr = None
    if with_arrangement or zone_line:
        try:
            arr = build_arrangement(list(s.lines), s.margins)
            if zone_line:
                q = _line_from_text(zone_line)
                if t > 0:
                    try:
                        arr.query_check(q)
                    except LineLabError:
                        _, arr = experiments.zone_of_query(list(s.lines), arr, q)
                    zr = arr.leq_t_zone(q, t)
                else:
                    zr, arr = experiments.zone_of_query(list(s.lines), arr, q)
        except LineLabError as exc:
            click.echo(f"render failed: {exc}", err=True)
            sys.exit(2)
    render.render_svg(s, arr=arr, zone=zr, width=width, path=out)


if __name__ == "__main__":
    main()
