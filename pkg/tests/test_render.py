"""SVG and figure output: structure, determinism, coordinate formatting."""

import re

from linelab import (
    Disc,
    Line,
    Point,
    Scene,
    build_arrangement,
    gen_random_lines,
    raw_intersection,
    render_svg,
)
from linelab.experiments import run_growth_experiment, verify_zone_envelope
from linelab.render import growth_figure, zone_figure


def test_empty_scene_renders():
    doc = render_svg(Scene(()))
    assert doc.startswith("<svg")
    assert doc.endswith("</svg>\n")


def test_scene_elements_tagged():
    lines = gen_random_lines(3, 0)
    s = Scene(tuple(lines), (Disc(0, Point(0.1, 0.1), 0.2),))
    doc = render_svg(s)
    assert doc.count('class="scene-line"') == 3
    assert doc.count('class="scene-disc"') == 1
    assert 'data-line="2"' in doc


def test_zone_overlay_polygons_carry_layers():
    lines = gen_random_lines(4, 7)
    q = Line(-1, 0.3, 1.0, 0.05)
    extra = [p for l in lines if (p := raw_intersection(q, l)) is not None]
    arr = build_arrangement(lines, extra_points=extra)
    zr = arr.leq_t_zone(q, 2)
    doc = render_svg(Scene(tuple(lines)), arr=arr, zone=zr)
    assert doc.count('class="zone-face"') == len(zr.faces())
    for idx, layer in enumerate(zr.layers):
        assert doc.count(f'data-layer="{idx}"') == len(layer)
    # every line-supported arrangement edge is drawn once
    plain_edges = doc.count('stroke="#9db4c0"')
    assert plain_edges == arr.n_segments


def test_coordinates_are_fixed_width():
    lines = gen_random_lines(3, 5)
    doc = render_svg(Scene(tuple(lines)))
    for num in re.findall(r'x1="([-0-9.]+)"', doc):
        assert re.fullmatch(r"-?\d+\.\d{4}|0", num)
    assert "-0.0000" not in doc


def test_svg_bytes_deterministic(tmp_path):
    lines = gen_random_lines(5, 9)
    arr = build_arrangement(lines)
    a = render_svg(Scene(tuple(lines)), arr=arr)
    b = render_svg(Scene(tuple(lines)), arr=arr, path=str(tmp_path / "x.svg"))
    assert a == b
    assert (tmp_path / "x.svg").read_text() == a


def test_report_figures_write_png(tmp_path):
    rep = run_growth_experiment("totalEdgeCount", sizes=(4, 5, 6, 7),
                                seeds=(0,))
    p1 = tmp_path / "growth.png"
    growth_figure(rep, str(p1))
    assert p1.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    env = verify_zone_envelope(sizes=(10, 12), seeds=(0,), queries_per=1)
    p2 = tmp_path / "zone.png"
    zone_figure(env, str(p2))
    assert p2.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
