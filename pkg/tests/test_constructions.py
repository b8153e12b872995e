"""Scene generators: determinism, margin safety, and exact tangency counts."""

import math
from itertools import combinations

import pytest

import naive
from linelab import (
    GenerationRetriesExhausted,
    GeneratorSpec,
    Margins,
    ParameterMismatch,
    build_hypergraph,
    gen_disjoint_disc_grid,
    gen_grid_lines,
    gen_incircle_scene,
    gen_random_discs,
    gen_random_lines,
    gen_random_scene_discs,
    generate,
    incircle_family,
    validate_general_position,
    validate_pseudo_disc_family,
)

C = math.comb


# -- random lines ------------------------------------------------------------


def test_random_lines_deterministic():
    assert gen_random_lines(6, 42) == gen_random_lines(6, 42)
    assert gen_random_lines(6, 42) != gen_random_lines(6, 43)


def test_random_lines_margin_safety_factors():
    """Generated scenes keep twice the angle margin and four times the
    separation margin, so downstream perturbations stay valid."""
    margins = Margins()
    lines = gen_random_lines(12, 0, margins)
    angles = [math.atan2(l.b, l.a) % math.pi for l in lines]
    for p1, p2 in combinations(angles, 2):
        d = abs(p1 - p2)
        assert min(d, math.pi - d) >= 2.0 * margins.min_angle
    for l in lines:
        ts = []
        dx, dy = l.direction()
        for other in lines:
            if other.id == l.id:
                continue
            px, py = naive.cross_point(l, other)
            ts.append(dx * px + dy * py)
        ts.sort()
        for t1, t2 in zip(ts, ts[1:]):
            assert t2 - t1 >= 4.0 * margins.min_separation


def test_random_lines_rejects_bad_n():
    with pytest.raises(ParameterMismatch):
        gen_random_lines(0, 0)


def test_random_lines_impossible_margins_exhaust():
    # 8 angles pairwise 1.2 rad apart do not fit in [0, pi)
    with pytest.raises(GenerationRetriesExhausted):
        gen_random_lines(8, 0, Margins(min_angle=0.6), max_retries_per_line=50)


# -- grid lines --------------------------------------------------------------


def test_grid_lines_shape():
    lines = gen_grid_lines(6, 1)
    assert [l.id for l in lines] == list(range(6))
    vertical = [l for l in lines if abs(l.a) > abs(l.b)]
    horizontal = [l for l in lines if abs(l.b) > abs(l.a)]
    assert len(vertical) == len(horizontal) == 3
    # jitter stays tiny against the unit spacing
    for k, l in enumerate(vertical):
        assert abs(l.c - k) < 1e-3
    assert gen_grid_lines(6, 1) == gen_grid_lines(6, 1)


@pytest.mark.parametrize("n", [0, 1, 3, 7])
def test_grid_lines_rejects_odd_or_tiny_n(n):
    with pytest.raises(ParameterMismatch):
        gen_grid_lines(n, 0)


# -- random discs ------------------------------------------------------------


def test_random_discs_ranges():
    discs = gen_random_discs(20, 5, radius_range=(0.1, 0.3), box=(-2, -1, 2, 1))
    assert len(discs) == 20
    assert [d.id for d in discs] == list(range(20))
    for d in discs:
        assert 0.1 <= d.radius <= 0.3
        assert -2 <= d.center.x <= 2 and -1 <= d.center.y <= 1
    assert discs == gen_random_discs(20, 5, radius_range=(0.1, 0.3), box=(-2, -1, 2, 1))


def test_random_scene_discs_validate():
    lines = gen_random_lines(5, 2)
    s = gen_random_scene_discs(lines, 12, 2)
    assert len(s.discs) == 12
    assert tuple(s.lines) == tuple(lines)
    assert validate_general_position(s).valid
    assert validate_pseudo_disc_family(s.pseudo_discs, s.margins).valid


def test_random_scene_discs_without_lines():
    s = gen_random_scene_discs([], 4, 7)
    assert len(s.lines) == 0 and len(s.discs) == 4


# -- incircle family ---------------------------------------------------------


def test_incircle_family_structure():
    lines = gen_random_lines(5, 11)
    s = incircle_family(lines)
    assert len(s.discs) == C(5, 3)
    for disc_id, triple in enumerate(combinations(range(5), 3)):
        d = s.discs[disc_id]
        assert d.id == disc_id
        assert d.tangent_to == triple
        for lid in triple:
            l = lines[lid]
            dist = abs(l.a * d.center.x + l.b * d.center.y - l.c)
            assert abs(dist - d.radius) < 1e-9


def test_incircle_scene_validates_when_asked():
    s = gen_incircle_scene(5, 0, validate=True)
    assert validate_general_position(s).valid
    assert gen_incircle_scene(5, 0, validate=True) == s


def test_incircle_scene_rejects_small_n():
    with pytest.raises(ParameterMismatch):
        gen_incircle_scene(2, 0)


@pytest.mark.parametrize(
    "n,expect",
    [
        (4, {3: 3, 4: 1}),
        (5, {3: 6, 4: 3, 5: 1}),
        (6, {3: 10, 4: 6, 5: 3, 6: 1}),
    ],
)
def test_incircle_hyperedge_tables(n, expect):
    """Size histogram of the incircle-family hypergraph is determined by n
    alone: C(n-t+2, 2) edges of size t and C(n, 3) in total."""
    for seed in (0, 1):
        s = gen_incircle_scene(n, seed, validate=False)
        # recorded tangencies drive membership, the pair audit is skippable
        h = build_hypergraph(s, validate=False)
        assert {t: h.count_by_size(t) for t in sorted(expect)} == expect
        assert len(h.edges) == C(n, 3)
        assert expect == {t: C(n - t + 2, 2) for t in range(3, n + 1)}


# -- disjoint disc grid ------------------------------------------------------


@pytest.mark.parametrize("n,t", [(8, 2), (8, 4), (12, 6)])
def test_disjoint_disc_grid_counts(n, t):
    s = gen_disjoint_disc_grid(n, t, seed=0)
    k = (n // t) ** 2
    assert len(s.discs) == k
    h = build_hypergraph(s, validate=False)
    assert h.count_by_size(t) == k
    assert len(h.edges) == k


def test_disjoint_disc_grid_discs_disjoint():
    s = gen_disjoint_disc_grid(8, 4, seed=0)
    for d1, d2 in combinations(s.discs, 2):
        assert d1.center.distance_to(d2.center) > d1.radius + d2.radius


@pytest.mark.parametrize("n,t", [(8, 3), (8, 1), (7, 2), (8, 6), (4, 8)])
def test_disjoint_disc_grid_rejects_bad_shapes(n, t):
    with pytest.raises(ParameterMismatch):
        gen_disjoint_disc_grid(n, t, seed=0)


# -- declarative dispatch ----------------------------------------------------


def test_generate_dispatch_matches_direct_calls():
    assert generate(GeneratorSpec("randomLines", n=4, seed=3)).lines == tuple(
        gen_random_lines(4, 3)
    )
    assert generate(GeneratorSpec("gridLines", n=4, seed=3)).lines == tuple(
        gen_grid_lines(4, 3)
    )
    spec = GeneratorSpec("randomDiscs", n=3, m=5, seed=3)
    assert generate(spec) == gen_random_scene_discs(gen_random_lines(3, 3), 5, 3)
    assert generate(GeneratorSpec("disjointDiscGrid", n=8, t=2, seed=3)) == \
        gen_disjoint_disc_grid(8, 2, 3)
    assert generate(GeneratorSpec("incircleFamily", n=4, seed=3)) == \
        gen_incircle_scene(4, 3)


def test_generate_respects_radius_range():
    s = generate(GeneratorSpec("randomDiscs", m=6, seed=1, radius_range=(0.4, 0.5)))
    assert all(0.4 <= d.radius <= 0.5 for d in s.discs)


def test_generate_unknown_kind():
    with pytest.raises(ParameterMismatch, match="unknown generator kind"):
        generate(GeneratorSpec("mysteryKind", n=4))
    assert "randomLines" in GeneratorSpec.KINDS
