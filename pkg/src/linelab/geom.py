"""Primitives and predicates for scenes of lines, discs, and convex polygons.

Lines are stored in the normalized form a*x + b*y = c with a**2 + b**2 == 1
and the first nonzero of (a, b) positive, so equality of supporting lines is
plain float equality and signed distances need no rescaling.  All membership
predicates use closed-region semantics: touching counts as intersecting.
Known tangencies recorded on a disc override the float test entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence, Union

from .errors import (
    DegenerateContact,
    DegenerateTriangle,
    NearParallel,
)

_NORM_EPS = 1e-12


@dataclass(frozen=True)
class Margins:
    """Explicit robustness thresholds carried by a scene.

    min_angle is in radians; min_separation is an absolute distance;
    tangency_tolerance is relative to the disc radius.
    """

    min_angle: float = 1e-4
    min_separation: float = 1e-6
    tangency_tolerance: float = 1e-9


DEFAULT_MARGINS = Margins()


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Line:
    """Oriented line a*x + b*y = c, normalized on construction."""

    id: int
    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        norm = math.hypot(a, b)
        if not math.isfinite(norm) or norm < _NORM_EPS:
            raise ValueError("line has no direction: (a, b) ~ (0, 0)")
        a, b, c = a / norm, b / norm, c / norm
        # canonical sign: first nonzero of (a, b) positive
        if a < 0.0 or (a == 0.0 and b < 0.0):
            a, b, c = -a, -b, -c
        object.__setattr__(self, "a", a + 0.0)
        object.__setattr__(self, "b", b + 0.0)
        object.__setattr__(self, "c", c + 0.0)

    def direction(self) -> tuple[float, float]:
        """Unit direction vector of the line."""
        return (-self.b, self.a)

    def foot(self) -> Point:
        """The point of the line closest to the origin."""
        return Point(self.a * self.c, self.b * self.c)


def normalize(l: Line) -> Line:
    """Idempotent renormalization (construction already normalizes)."""
    return Line(l.id, l.a, l.b, l.c)


@dataclass(frozen=True)
class Disc:
    id: int
    center: Point
    radius: float
    tangent_to: tuple[int, ...] = ()

    def __post_init__(self):
        if not (self.radius > 0.0) or not math.isfinite(self.radius):
            raise ValueError("disc radius must be positive and finite")
        object.__setattr__(self, "tangent_to", tuple(sorted(set(self.tangent_to))))


@dataclass(frozen=True)
class ConvexPolygon:
    id: int
    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(verts) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        for i in range(n):
            o, p, q = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            cross = (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x)
            if cross <= 0.0:
                raise ValueError(
                    "polygon vertices must be strictly convex in CCW order"
                )

    def segments(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


PseudoDisc = Union[Disc, ConvexPolygon]


@dataclass(frozen=True)
class Scene:
    """A finite family of lines and pseudo-discs sharing one margin set."""

    lines: tuple[Line, ...]
    pseudo_discs: tuple[PseudoDisc, ...] = ()
    margins: Margins = DEFAULT_MARGINS

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "pseudo_discs", tuple(self.pseudo_discs))
        ids = [l.id for l in self.lines]
        if sorted(ids) != list(range(len(ids))):
            raise ValueError("line ids must be dense 0..n-1")
        pd_ids = [p.id for p in self.pseudo_discs]
        if len(set(pd_ids)) != len(pd_ids):
            raise ValueError("pseudo-disc ids must be unique")
        known = set(ids)
        for p in self.pseudo_discs:
            if isinstance(p, Disc):
                for t in p.tangent_to:
                    if t not in known:
                        raise ValueError(f"disc {p.id} tangent to unknown line {t}")

    @property
    def discs(self) -> list[Disc]:
        return [p for p in self.pseudo_discs if isinstance(p, Disc)]

    @property
    def polygons(self) -> list[ConvexPolygon]:
        return [p for p in self.pseudo_discs if isinstance(p, ConvexPolygon)]

    def line(self, line_id: int) -> Line:
        for l in self.lines:
            if l.id == line_id:
                return l
        raise KeyError(line_id)

    def with_discs(self, discs: Sequence[PseudoDisc]) -> "Scene":
        return replace(self, pseudo_discs=tuple(discs))


# ---------------------------------------------------------------------------
# predicates


def signed_distance(p: Point, l: Line) -> float:
    """Signed distance of p from l; sign follows the normalized orientation."""
    return l.a * p.x + l.b * p.y - l.c


def line_line_intersection(
    l1: Line, l2: Line, margins: Margins = DEFAULT_MARGINS
) -> Point:
    """Intersection point of two lines.

    Raises NearParallel when the angle between them is below margins.min_angle
    (for normalized lines |a1*b2 - a2*b1| == sin of that angle).
    """
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) < math.sin(margins.min_angle):
        raise NearParallel(
            f"lines {l1.id} and {l2.id}: |det| = {abs(det):.3e} below angle margin"
        )
    x = (l1.c * l2.b - l2.c * l1.b) / det
    y = (l1.a * l2.c - l2.a * l1.c) / det
    return Point(x, y)


def raw_intersection(l1: Line, l2: Line) -> Point | None:
    """Intersection without the angle margin; None for (near-)parallel lines.

    Used where a crossing is needed wherever it is, however far out, e.g.
    to anchor a clipping window around an arbitrary query line."""
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) < 1e-12:
        return None
    return Point(
        (l1.c * l2.b - l2.c * l1.b) / det,
        (l1.a * l2.c - l2.a * l1.c) / det,
    )


def line_intersects_disc(l: Line, d: Disc, margins: Margins = DEFAULT_MARGINS) -> bool:
    """Closed intersection test; recorded tangencies short-circuit the float test."""
    if l.id in d.tangent_to:
        return True
    dist = abs(signed_distance(d.center, l))
    return dist <= d.radius * (1.0 + margins.tangency_tolerance)


def line_intersects_polygon(
    l: Line, p: ConvexPolygon, margins: Margins = DEFAULT_MARGINS
) -> bool:
    """True unless every vertex lies strictly on one side of l."""
    scale = max(1.0, max(max(abs(v.x), abs(v.y)) for v in p.vertices))
    tol = margins.tangency_tolerance * scale
    ds = [signed_distance(v, l) for v in p.vertices]
    if all(d > tol for d in ds):
        return False
    if all(d < -tol for d in ds):
        return False
    return True


def line_intersects_pseudo_disc(
    l: Line, pd: PseudoDisc, margins: Margins = DEFAULT_MARGINS
) -> bool:
    if isinstance(pd, Disc):
        return line_intersects_disc(l, pd, margins)
    return line_intersects_polygon(l, pd, margins)


def incircle_of_triangle(
    l1: Line,
    l2: Line,
    l3: Line,
    margins: Margins = DEFAULT_MARGINS,
    disc_id: int = -1,
) -> Disc:
    """Inscribed circle of the triangle bounded by three lines.

    The returned disc records all three tangencies as metadata.  Raises
    DegenerateTriangle when a pair is near-parallel or the triple is close
    to concurrent (incircle radius below margins.min_separation).
    """
    try:
        va = line_line_intersection(l2, l3, margins)  # opposite l1
        vb = line_line_intersection(l1, l3, margins)
        vc = line_line_intersection(l1, l2, margins)
    except NearParallel as exc:
        raise DegenerateTriangle(str(exc)) from exc
    a_len = vb.distance_to(vc)  # side on l1
    b_len = va.distance_to(vc)
    c_len = va.distance_to(vb)
    perim = a_len + b_len + c_len
    area = 0.5 * abs(
        (vb.x - va.x) * (vc.y - va.y) - (vb.y - va.y) * (vc.x - va.x)
    )
    radius = 2.0 * area / perim
    if radius < margins.min_separation:
        raise DegenerateTriangle(
            f"lines {l1.id},{l2.id},{l3.id}: incircle radius {radius:.3e} "
            "below separation margin"
        )
    cx = (a_len * va.x + b_len * vb.x + c_len * vc.x) / perim
    cy = (a_len * va.y + b_len * vb.y + c_len * vc.y) / perim
    return Disc(
        disc_id, Point(cx, cy), radius, tangent_to=(l1.id, l2.id, l3.id)
    )


# ---------------------------------------------------------------------------
# boundary crossings


def _circle_circle_points(d1: Disc, d2: Disc) -> list[Point]:
    """The two transversal boundary intersection points (caller checked count)."""
    dx = d2.center.x - d1.center.x
    dy = d2.center.y - d1.center.y
    d = math.hypot(dx, dy)
    a = (d * d + d1.radius**2 - d2.radius**2) / (2.0 * d)
    h_sq = d1.radius**2 - a * a
    h = math.sqrt(max(h_sq, 0.0))
    mx = d1.center.x + a * dx / d
    my = d1.center.y + a * dy / d
    ox, oy = -dy / d, dx / d
    return [Point(mx + h * ox, my + h * oy), Point(mx - h * ox, my - h * oy)]


def _crossings_circle_circle(d1: Disc, d2: Disc, margins: Margins) -> int:
    d = d1.center.distance_to(d2.center)
    rsum = d1.radius + d2.radius
    rdiff = abs(d1.radius - d2.radius)
    tol = margins.min_separation * max(d1.radius, d2.radius, 1.0)
    if abs(d - rsum) <= tol or abs(d - rdiff) <= tol:
        raise DegenerateContact(
            f"discs {d1.id} and {d2.id} touch tangentially within tolerance"
        )
    if d > rsum or d < rdiff:
        return 0
    return 2


def _segment_circle_params(p: Point, q: Point, d: Disc) -> tuple[float, float, list[float]]:
    """Quadratic coefficients and real roots t of |p + t*(q-p) - center| = r."""
    ex, ey = q.x - p.x, q.y - p.y
    fx, fy = p.x - d.center.x, p.y - d.center.y
    a = ex * ex + ey * ey
    b = 2.0 * (ex * fx + ey * fy)
    c = fx * fx + fy * fy - d.radius * d.radius
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return a, disc, []
    s = math.sqrt(disc)
    return a, disc, [(-b - s) / (2.0 * a), (-b + s) / (2.0 * a)]


def _crossings_circle_polygon(d: Disc, poly: ConvexPolygon, margins: Margins) -> int:
    tol = margins.min_separation * max(1.0, d.radius)
    for v in poly.vertices:
        if abs(v.distance_to(d.center) - d.radius) <= tol:
            raise DegenerateContact(
                f"vertex of polygon {poly.id} lies on boundary of disc {d.id}"
            )
    count = 0
    for p, q in poly.segments():
        seg_len = p.distance_to(q)
        ex, ey = q.x - p.x, q.y - p.y
        fx, fy = d.center.x - p.x, d.center.y - p.y
        dist_line = abs(ex * fy - ey * fx) / seg_len
        t_foot = (ex * fx + ey * fy) / (seg_len * seg_len)
        t_eps = tol / seg_len
        if abs(dist_line - d.radius) <= tol and -t_eps < t_foot < 1.0 + t_eps:
            raise DegenerateContact(
                f"polygon {poly.id} edge near-tangent to disc {d.id}"
            )
        _, _, roots = _segment_circle_params(p, q, d)
        for t in roots:
            if abs(t) <= t_eps or abs(t - 1.0) <= t_eps:
                raise DegenerateContact(
                    f"boundary of disc {d.id} passes near a vertex of polygon {poly.id}"
                )
            if 0.0 < t < 1.0:
                count += 1
    return count


def _seg_seg_cross(
    p1: Point, p2: Point, q1: Point, q2: Point, tol: float
) -> int:
    """1 for a proper crossing, 0 for none; DegenerateContact when borderline."""

    def orient(a: Point, b: Point, c: Point) -> float:
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)

    len_p = max(p1.distance_to(p2), 1e-30)
    len_q = max(q1.distance_to(q2), 1e-30)
    # true point-to-supporting-line distances, so tol is an absolute margin
    ds = [
        orient(q1, q2, p1) / len_q,
        orient(q1, q2, p2) / len_q,
        orient(p1, p2, q1) / len_p,
        orient(p1, p2, q2) / len_p,
    ]
    if (ds[0] > tol and ds[1] < -tol or ds[0] < -tol and ds[1] > tol) and (
        ds[2] > tol and ds[3] < -tol or ds[2] < -tol and ds[3] > tol
    ):
        return 1
    if any(abs(v) <= tol for v in ds):
        # potentially touching configurations only matter if the boxes overlap
        if (
            min(p1.x, p2.x) <= max(q1.x, q2.x) + tol
            and min(q1.x, q2.x) <= max(p1.x, p2.x) + tol
            and min(p1.y, p2.y) <= max(q1.y, q2.y) + tol
            and min(q1.y, q2.y) <= max(p1.y, p2.y) + tol
        ):
            raise DegenerateContact("polygon boundaries touch within tolerance")
    return 0


def _crossings_polygon_polygon(
    a: ConvexPolygon, b: ConvexPolygon, margins: Margins
) -> int:
    count = 0
    for p1, p2 in a.segments():
        for q1, q2 in b.segments():
            count += _seg_seg_cross(p1, p2, q1, q2, margins.min_separation)
    return count


def boundary_crossings(
    p1: PseudoDisc, p2: PseudoDisc, margins: Margins = DEFAULT_MARGINS
) -> int:
    """Number of transversal boundary intersection points of two regions.

    Symmetric in its arguments.  Tangential or near-tangential contact raises
    DegenerateContact rather than guessing a count.
    """
    if isinstance(p1, Disc) and isinstance(p2, Disc):
        return _crossings_circle_circle(p1, p2, margins)
    if isinstance(p1, Disc):
        return _crossings_circle_polygon(p1, p2, margins)
    if isinstance(p2, Disc):
        return _crossings_circle_polygon(p2, p1, margins)
    return _crossings_polygon_polygon(p1, p2, margins)


def boundary_intersection_points(
    p1: PseudoDisc, p2: PseudoDisc, margins: Margins = DEFAULT_MARGINS
) -> list[Point]:
    """Boundary-boundary intersection points of two pseudo-discs (may be empty)."""
    if isinstance(p1, Disc) and isinstance(p2, Disc):
        if _crossings_circle_circle(p1, p2, margins) == 0:
            return []
        return _circle_circle_points(p1, p2)
    if isinstance(p2, Disc):
        p1, p2 = p2, p1
    if isinstance(p1, Disc):
        pts: list[Point] = []
        for p, q in p2.segments():
            _, _, roots = _segment_circle_params(p, q, p1)
            for t in roots:
                if 0.0 < t < 1.0:
                    pts.append(Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))
        return pts
    pts = []
    for a1, a2 in p1.segments():
        for b1, b2 in p2.segments():
            if _seg_seg_cross(a1, a2, b1, b2, margins.min_separation):
                den = (a2.x - a1.x) * (b2.y - b1.y) - (a2.y - a1.y) * (b2.x - b1.x)
                t = ((b1.x - a1.x) * (b2.y - b1.y) - (b1.y - a1.y) * (b2.x - b1.x)) / den
                pts.append(Point(a1.x + t * (a2.x - a1.x), a1.y + t * (a2.y - a1.y)))
    return pts


# ---------------------------------------------------------------------------
# validation


@dataclass
class FamilyReport:
    """Outcome of the pairwise pseudo-disc family check."""

    violations: list[tuple[int, int, int]] = field(default_factory=list)
    warnings: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [list(v) for v in self.violations],
            "warnings": [list(w) for w in self.warnings],
        }


def validate_pseudo_disc_family(
    pds: Sequence[PseudoDisc], margins: Margins = DEFAULT_MARGINS
) -> FamilyReport:
    """Every pair of boundaries may cross at most twice.

    Pairs whose crossing count cannot be decided (tangential contact) are
    reported as warnings, not violations.
    """
    report = FamilyReport()
    items = list(pds)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            a, b = items[i], items[j]
            try:
                k = boundary_crossings(a, b, margins)
            except DegenerateContact:
                report.warnings.append((a.id, b.id, "degenerate-contact"))
                continue
            if k > 2:
                report.violations.append((a.id, b.id, k))
    return report


@dataclass
class GeneralPositionReport:
    """Flags raised by the scene-level general-position audit.

    Near-parallel line pairs are warnings only: they are harmless for
    hypergraph semantics and are rejected separately by arrangement
    construction, which cannot host them.
    """

    parallel_pairs: list[tuple[int, int, float]] = field(default_factory=list)
    concurrent_triples: list[tuple[int, int, int, float]] = field(default_factory=list)
    boundary_hits: list[tuple[int, int, int, float]] = field(default_factory=list)
    near_tangencies: list[tuple[int, int, float]] = field(default_factory=list)
    contact_warnings: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (
            self.concurrent_triples or self.boundary_hits or self.near_tangencies
        )

    @property
    def arrangeable(self) -> bool:
        """Whether the line set additionally qualifies for arrangement building."""
        return self.valid and not self.parallel_pairs

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "arrangeable": self.arrangeable,
            "parallel_pairs": [list(v) for v in self.parallel_pairs],
            "concurrent_triples": [list(v) for v in self.concurrent_triples],
            "boundary_hits": [list(v) for v in self.boundary_hits],
            "near_tangencies": [list(v) for v in self.near_tangencies],
            "contact_warnings": [list(v) for v in self.contact_warnings],
        }


def validate_general_position(s: Scene) -> GeneralPositionReport:
    """Report-only audit of the degeneracies the predicates cannot absorb."""
    m = s.margins
    report = GeneralPositionReport()
    lines = list(s.lines)
    n = len(lines)
    sin_min = math.sin(m.min_angle)

    parallel = set()
    for i in range(n):
        for j in range(i + 1, n):
            det = lines[i].a * lines[j].b - lines[j].a * lines[i].b
            if abs(det) < sin_min:
                parallel.add((i, j))
                report.parallel_pairs.append(
                    (lines[i].id, lines[j].id, math.asin(min(1.0, abs(det))))
                )

    def inter(i: int, j: int) -> Point | None:
        if (i, j) in parallel:
            return None
        l1, l2 = lines[i], lines[j]
        det = l1.a * l2.b - l2.a * l1.b
        return Point(
            (l1.c * l2.b - l2.c * l1.b) / det, (l1.a * l2.c - l2.a * l1.c) / det
        )

    for i in range(n):
        for j in range(i + 1, n):
            p = inter(i, j)
            if p is None:
                continue
            for k in range(j + 1, n):
                if (i, k) in parallel or (j, k) in parallel:
                    continue
                d = abs(signed_distance(p, lines[k]))
                if d < m.min_separation:
                    report.concurrent_triples.append(
                        (lines[i].id, lines[j].id, lines[k].id, d)
                    )

    pds = list(s.pseudo_discs)
    for i in range(len(pds)):
        for j in range(i + 1, len(pds)):
            try:
                pts = boundary_intersection_points(pds[i], pds[j], m)
            except DegenerateContact:
                report.contact_warnings.append(
                    (pds[i].id, pds[j].id, "degenerate-contact")
                )
                continue
            for pt in pts:
                for l in lines:
                    d = abs(signed_distance(pt, l))
                    if d < m.min_separation:
                        report.boundary_hits.append((l.id, pds[i].id, pds[j].id, d))

    for pd in pds:
        if not isinstance(pd, Disc):
            continue
        for l in lines:
            if l.id in pd.tangent_to:
                continue
            gap = abs(abs(signed_distance(pd.center, l)) - pd.radius)
            if gap < m.min_separation * pd.radius:
                report.near_tangencies.append((l.id, pd.id, gap))

    return report
