"""Planar subdivision of a line arrangement clipped to a bounding box.

The arrangement is represented as a half-edge complex.  Construction sorts
the crossings along every line, closes the picture with a rectangular frame
strictly containing all vertices, and traces faces by rotational walks, so
face ids are a deterministic function of the input.  Clipping preserves the
cell structure: every unbounded cell of the true arrangement meets the box
in one convex piece, and two interior faces are adjacent across a line edge
exactly when the true cells are.

Zone queries walk the complex along the query line instead of scanning all
faces, so their cost is proportional to the zone size.  A query must cross
every arrangement line strictly inside the box; the builder accepts extra
points to inflate the box for planned queries.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .errors import GeneralPositionViolation, QueryDegenerate
from .geom import DEFAULT_MARGINS, Line, Margins, Point

_BOTTOM, _RIGHT, _TOP, _LEFT = 0, 1, 2, 3
_SIDE_ANGLE = {_BOTTOM: 0.0, _RIGHT: math.pi / 2, _TOP: math.pi, _LEFT: -math.pi / 2}


def _flip_angle(theta: float) -> float:
    return theta - math.pi if theta > 0.0 else theta + math.pi


def _clip_line_to_box(box, px: float, py: float, dx: float, dy: float):
    """Liang-Barsky: parameter window of the line p + t*d inside the box,
    with entry/exit side codes.  Returns None when the line misses."""
    xlo, ylo, xhi, yhi = box
    t0, t1 = -math.inf, math.inf
    side0 = side1 = -1
    for coord, d, lo_side, hi_side, lo, hi in (
        (px, dx, _LEFT, _RIGHT, xlo, xhi),
        (py, dy, _BOTTOM, _TOP, ylo, yhi),
    ):
        if abs(d) < 1e-300:
            if not (lo < coord < hi):
                return None
            continue
        ta = (lo - coord) / d
        tb = (hi - coord) / d
        sa, sb = lo_side, hi_side
        if ta > tb:
            ta, tb, sa, sb = tb, ta, sb, sa
        if ta > t0:
            t0, side0 = ta, sa
        if tb < t1:
            t1, side1 = tb, sb
    if t0 >= t1:
        return None
    return t0, side0, t1, side1


@dataclass
class ZoneReport:
    """Layered zone of a query line; layers[0] is the set of crossed faces."""

    query: Line
    t: int
    layers: list[set[int]]
    complexity_per_layer: list[int]

    @property
    def total_complexity(self) -> int:
        return sum(self.complexity_per_layer)

    def faces(self) -> set[int]:
        out: set[int] = set()
        for layer in self.layers:
            out |= layer
        return out

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "layers": [sorted(layer) for layer in self.layers],
            "complexity_per_layer": list(self.complexity_per_layer),
            "total_complexity": self.total_complexity,
        }


class Arrangement:
    """Half-edge complex of n lines inside a padded rectangle."""

    def __init__(self, lines, margins, box, vx, vy, n_interior,
                 he_org, he_line, he_next, he_face, faces_start,
                 faces_comp, faces_nedges, faces_unbounded, side_index):
        self.lines = tuple(lines)
        self.n = len(self.lines)
        self.margins = margins
        self.box = box
        self.vx = vx
        self.vy = vy
        self.n_interior_vertices = n_interior
        self._he_org = he_org
        self._he_line = he_line
        self._he_next = he_next
        self._he_face = he_face
        self._face_start = faces_start
        self._face_comp = faces_comp
        self._face_nedges = faces_nedges
        self._face_unbounded = faces_unbounded
        self._side_index = side_index

    # -- structural counts ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return self.n_interior_vertices

    @property
    def n_segments(self) -> int:
        return sum(1 for l in self._he_line[::2] if l >= 0)

    @property
    def n_faces(self) -> int:
        return len(self._face_start)

    def euler_ok(self) -> bool:
        v = len(self.vx)
        e = len(self._he_org) // 2
        f = self.n_faces + 1  # plus the outer face
        return v - e + f == 2

    def stats(self) -> dict:
        return {
            "n": self.n,
            "vertices": self.n_vertices,
            "segments": self.n_segments,
            "faces": self.n_faces,
            "euler_ok": self.euler_ok(),
        }

    # -- faces ---------------------------------------------------------------

    def face_ring(self, face_id: int):
        """Yield the half-edges of the face cycle."""
        start = self._face_start[face_id]
        h = start
        while True:
            yield h
            h = self._he_next[h]
            if h == start:
                break

    def cell_complexity(self, face_id: int) -> int:
        """Number of boundary edges supported by arrangement lines (box sides
        do not count)."""
        return self._face_comp[face_id]

    def face_unbounded(self, face_id: int) -> bool:
        """True when the face is the clipped remnant of an unbounded cell."""
        return self._face_unbounded[face_id]

    def face_polygon(self, face_id: int) -> list[Point]:
        return [
            Point(self.vx[self._he_org[h]], self.vy[self._he_org[h]])
            for h in self.face_ring(face_id)
        ]

    def face_interior_point(self, face_id: int) -> Point:
        poly = self.face_polygon(face_id)
        # faces are convex, the vertex centroid is interior
        return Point(
            sum(p.x for p in poly) / len(poly), sum(p.y for p in poly) / len(poly)
        )

    def face_lines(self, face_id: int) -> set[int]:
        return {
            self._he_line[h]
            for h in self.face_ring(face_id)
            if self._he_line[h] >= 0
        }

    def face_neighbors(self, face_id: int) -> set[int]:
        """Faces sharing an arrangement edge (box edges never join two faces)."""
        out = set()
        for h in self.face_ring(face_id):
            if self._he_line[h] >= 0:
                g = self._he_face[h ^ 1]
                if g >= 0:
                    out.add(g)
        return out

    # -- edges ---------------------------------------------------------------

    def edge_line(self, edge_id: int) -> int:
        return self._he_line[2 * edge_id]

    def edge_segment(self, edge_id: int) -> tuple[Point, Point]:
        u = self._he_org[2 * edge_id]
        v = self._he_org[2 * edge_id + 1]
        return (
            Point(self.vx[u], self.vy[u]),
            Point(self.vx[v], self.vy[v]),
        )

    def face_edges(self, face_id: int) -> list[int]:
        """Ids of arrangement edges on the face boundary."""
        return [h >> 1 for h in self.face_ring(face_id) if self._he_line[h] >= 0]

    # -- zone queries --------------------------------------------------------

    def query_check(self, l: Line, tolerance: float | None = None):
        """Raise QueryDegenerate unless l is usable for a zone walk."""
        tol = self.margins.min_separation if tolerance is None else tolerance
        dist = np.abs(l.a * self.vx + l.b * self.vy - l.c)
        if len(dist) and float(dist.min()) < tol:
            raise QueryDegenerate(
                f"query line passes within {tol:g} of an arrangement vertex"
            )
        xlo, ylo, xhi, yhi = self.box
        eps = 1e-9 * max(xhi - xlo, yhi - ylo)
        for other in self.lines:
            det = l.a * other.b - other.a * l.b
            if abs(det) < 1e-12:
                continue  # parallel pair, no crossing to place
            cx = (l.c * other.b - other.c * l.b) / det
            cy = (l.a * other.c - other.a * l.c) / det
            if not (xlo + eps < cx < xhi - eps and ylo + eps < cy < yhi - eps):
                raise QueryDegenerate(
                    f"query crosses line {other.id} outside the clipping box; "
                    "rebuild the arrangement with extra_points covering the query"
                )

    def _entry_half_edge(self, side: int, param: float) -> int:
        starts, hes = self._side_index[side]
        k = bisect_right(starts, param) - 1
        if k < 0:
            k = 0
        return hes[k]

    def zone(self, l: Line, tolerance: float | None = None) -> ZoneReport:
        """Faces whose closed region meets l, found by walking along l."""
        self.query_check(l, tolerance)
        dx, dy = l.direction()
        fx, fy = l.foot()
        clip = _clip_line_to_box(self.box, fx, fy, dx, dy)
        if clip is None:
            raise QueryDegenerate("query line misses the clipping box")
        t0, side0, _, _ = clip
        xlo, ylo, xhi, yhi = self.box
        ex = fx + t0 * dx
        ey = fy + t0 * dy
        entry_param = {
            _BOTTOM: ex - xlo,
            _RIGHT: ey - ylo,
            _TOP: xhi - ex,
            _LEFT: yhi - ey,
        }[side0]
        entry_he = self._entry_half_edge(side0, entry_param)
        face = self._he_face[entry_he]

        sv = l.a * self.vx + l.b * self.vy - l.c
        he_org = self._he_org
        he_line = self._he_line
        he_face = self._he_face

        faces = [face]
        entry_edge = entry_he >> 1
        guard = self.n_faces + 1
        while True:
            exit_he = -1
            for h in self.face_ring(face):
                if (h >> 1) == entry_edge:
                    continue
                su = sv[he_org[h]]
                st = sv[he_org[h ^ 1]]
                if (su > 0.0) != (st > 0.0):
                    exit_he = h
                    break
            if exit_he < 0:
                raise QueryDegenerate("zone walk lost the query line")
            if he_line[exit_he] < 0:
                break
            face = he_face[exit_he ^ 1]
            entry_edge = exit_he >> 1
            faces.append(face)
            if len(faces) > guard:
                raise QueryDegenerate("zone walk failed to terminate")

        layer = set(faces)
        comp = sum(self._face_comp[f] for f in layer)
        return ZoneReport(query=l, t=1, layers=[layer], complexity_per_layer=[comp])

    def leq_t_zone(self, l: Line, t: int, tolerance: float | None = None) -> ZoneReport:
        """Layers 1..t by breadth-first expansion over edge adjacency."""
        if t < 1:
            raise ValueError("t must be >= 1")
        report = self.zone(l, tolerance)
        layers = report.layers
        comps = report.complexity_per_layer
        seen = set(layers[0])
        frontier = layers[0]
        for _ in range(2, t + 1):
            nxt: set[int] = set()
            for f in frontier:
                for g in self.face_neighbors(f):
                    if g not in seen:
                        nxt.add(g)
            if not nxt:
                break
            seen |= nxt
            layers.append(nxt)
            comps.append(sum(self._face_comp[f] for f in nxt))
            frontier = nxt
        return ZoneReport(query=l, t=t, layers=layers, complexity_per_layer=comps)


def build_arrangement(
    lines,
    margins: Margins = DEFAULT_MARGINS,
    extra_points=(),
) -> Arrangement:
    """Build the clipped arrangement of the given lines.

    Lines must carry dense ids 0..n-1, be pairwise non-parallel beyond
    margins.min_angle, and have no three crossings closer than
    margins.min_separation along any line.  extra_points are included when
    choosing the clipping box (use them to keep planned query crossings
    inside).
    """
    lines = sorted(lines, key=lambda l: l.id)
    n = len(lines)
    if n == 0:
        raise ValueError("need at least one line")
    if [l.id for l in lines] != list(range(n)):
        raise ValueError("line ids must be dense 0..n-1")

    a = np.array([l.a for l in lines])
    b = np.array([l.b for l in lines])
    c = np.array([l.c for l in lines])

    I, J = np.triu_indices(n, 1)
    det = a[I] * b[J] - a[J] * b[I]
    sin_min = math.sin(margins.min_angle)
    bad = np.abs(det) < sin_min
    if bad.any():
        k = int(np.argmax(bad))
        raise GeneralPositionViolation(
            f"lines {lines[I[k]].id} and {lines[J[k]].id} are near-parallel"
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        px = (c[I] * b[J] - c[J] * b[I]) / det
        py = (a[I] * c[J] - a[J] * c[I]) / det
    n_interior = len(I)

    # per-line crossing lists
    owners = np.concatenate([I, J])
    vids = np.concatenate([np.arange(n_interior), np.arange(n_interior)])
    order = np.argsort(owners, kind="stable")
    grouped = vids[order]
    per_line = [grouped[i * (n - 1):(i + 1) * (n - 1)] for i in range(n)] if n > 1 \
        else [np.empty(0, dtype=int)]

    dxs, dys = -b, a
    line_params: list[np.ndarray] = []
    line_orders: list[np.ndarray] = []
    for i in range(n):
        vv = per_line[i]
        t_par = dxs[i] * px[vv] + dys[i] * py[vv]
        o = np.argsort(t_par, kind="stable")
        t_sorted = t_par[o]
        if len(t_sorted) > 1:
            gaps = np.diff(t_sorted)
            if float(gaps.min()) < margins.min_separation:
                k = int(np.argmin(gaps))
                j1 = lines[_pair_other(I, J, vv[o][k], i)].id
                j2 = lines[_pair_other(I, J, vv[o][k + 1], i)].id
                raise GeneralPositionViolation(
                    f"crossings of line {lines[i].id} with lines {j1} and {j2} "
                    f"are closer than the separation margin"
                )
        line_params.append(t_sorted)
        line_orders.append(vv[o])

    # clipping box from vertices, feet, and caller-supplied extra points
    feet_x = a * c
    feet_y = b * c
    ex_x = np.array([p.x for p in extra_points]) if len(extra_points) else np.empty(0)
    ex_y = np.array([p.y for p in extra_points]) if len(extra_points) else np.empty(0)
    all_x = np.concatenate([px, feet_x, ex_x])
    all_y = np.concatenate([py, feet_y, ex_y])
    xmin, xmax = float(all_x.min()), float(all_x.max())
    ymin, ymax = float(all_y.min()), float(all_y.max())
    span = max(xmax - xmin, ymax - ymin, 1.0)

    pads = np.array([0.5347, 0.5779, 0.4973, 0.6131]) * span + np.array(
        [1.013, 1.117, 0.971, 1.193]
    )
    for _ in range(60):
        xlo, xhi = xmin - pads[0], xmax + pads[1]
        ylo, yhi = ymin - pads[2], ymax + pads[3]
        eps = max(1e-9 * span, 1e-9)
        corners = [(xlo, ylo), (xhi, ylo), (xhi, yhi), (xlo, yhi)]
        ok = True
        for cxr, cyr in corners:
            if np.min(np.abs(a * cxr + b * cyr - c)) < eps:
                ok = False
                break
        if ok:
            break
        pads = pads * 1.0173
    else:
        raise GeneralPositionViolation("could not place a corner-safe clipping box")
    box = (xlo, ylo, xhi, yhi)

    # box crossings of every line
    n_box_base = n_interior
    vx_list = [0.0] * (n_interior + 2 * n + 4)
    vy_list = [0.0] * (n_interior + 2 * n + 4)
    for k in range(n_interior):
        vx_list[k] = float(px[k])
        vy_list[k] = float(py[k])
    entry_side = [0] * n
    exit_side = [0] * n
    for i in range(n):
        clip = _clip_line_to_box(box, feet_x[i], feet_y[i], dxs[i], dys[i])
        if clip is None:
            raise GeneralPositionViolation(
                f"line {lines[i].id} does not cross the clipping box"
            )
        t0, s0, t1, s1 = clip
        entry_side[i], exit_side[i] = s0, s1
        vx_list[n_box_base + 2 * i] = feet_x[i] + t0 * dxs[i]
        vy_list[n_box_base + 2 * i] = feet_y[i] + t0 * dys[i]
        vx_list[n_box_base + 2 * i + 1] = feet_x[i] + t1 * dxs[i]
        vy_list[n_box_base + 2 * i + 1] = feet_y[i] + t1 * dys[i]
        if len(line_params[i]):
            if not (t0 < line_params[i][0] and line_params[i][-1] < t1):
                raise GeneralPositionViolation(
                    f"crossing on line {lines[i].id} escaped the clipping box"
                )

    corner_base = n_interior + 2 * n
    sw, se, ne, nw = corner_base, corner_base + 1, corner_base + 2, corner_base + 3
    vx_list[sw], vy_list[sw] = xlo, ylo
    vx_list[se], vy_list[se] = xhi, ylo
    vx_list[ne], vy_list[ne] = xhi, yhi
    vx_list[nw], vy_list[nw] = xlo, yhi

    # half-edges: for each line, consecutive pairs along its direction
    he_org: list[int] = []
    he_line: list[int] = []
    he_angle: list[float] = []

    def add_edge(u: int, v: int, line_id: int, theta: float) -> int:
        h = len(he_org)
        he_org.append(u)
        he_line.append(line_id)
        he_angle.append(theta)
        he_org.append(v)
        he_line.append(line_id)
        he_angle.append(_flip_angle(theta))
        return h

    for i in range(n):
        theta = math.atan2(dys[i], dxs[i])
        seq = [n_box_base + 2 * i] + [int(v) for v in line_orders[i]] + [
            n_box_base + 2 * i + 1
        ]
        for k in range(len(seq) - 1):
            add_edge(seq[k], seq[k + 1], i, theta)

    # box cycle, counterclockwise starting at the SW corner
    side_members: dict[int, list[tuple[float, int]]] = {s: [] for s in range(4)}
    for i in range(n):
        for vid, s in (
            (n_box_base + 2 * i, entry_side[i]),
            (n_box_base + 2 * i + 1, exit_side[i]),
        ):
            par = {
                _BOTTOM: vx_list[vid] - xlo,
                _RIGHT: vy_list[vid] - ylo,
                _TOP: xhi - vx_list[vid],
                _LEFT: yhi - vy_list[vid],
            }[s]
            side_members[s].append((par, vid))
    for s in range(4):
        side_members[s].sort()

    cycle: list[tuple[int, int]] = []  # (vertex, side of the edge that FOLLOWS it)
    for corner, s in ((sw, _BOTTOM), (se, _RIGHT), (ne, _TOP), (nw, _LEFT)):
        cycle.append((corner, s))
        cycle.extend((vid, s) for _, vid in side_members[s])

    side_index: dict[int, tuple[list[float], list[int]]] = {
        s: ([], []) for s in range(4)
    }
    m_cycle = len(cycle)
    for k in range(m_cycle):
        u, s = cycle[k]
        v, _ = cycle[(k + 1) % m_cycle]
        h = add_edge(u, v, -1, _SIDE_ANGLE[s])
        par_u = {
            _BOTTOM: vx_list[u] - xlo,
            _RIGHT: vy_list[u] - ylo,
            _TOP: xhi - vx_list[u],
            _LEFT: yhi - vy_list[u],
        }[s]
        side_index[s][0].append(par_u)
        side_index[s][1].append(h)

    n_he = len(he_org)

    # rotation order around every vertex; face successor is the clockwise
    # neighbor of the twin at the twin's origin
    sort_idx = np.lexsort((np.array(he_angle), np.array(he_org))).tolist()
    rot_pred = [0] * n_he
    pos = 0
    while pos < n_he:
        end = pos
        o = he_org[sort_idx[pos]]
        while end < n_he and he_org[sort_idx[end]] == o:
            end += 1
        size = end - pos
        for k in range(pos, end):
            rot_pred[sort_idx[k]] = sort_idx[pos + (k - pos - 1) % size]
        pos = end

    he_next = [0] * n_he
    for h in range(n_he):
        he_next[h] = rot_pred[h ^ 1]

    # face tracing in half-edge id order
    he_face = [-2] * n_he
    face_start: list[int] = []
    face_comp: list[int] = []
    face_nedges: list[int] = []
    face_unbounded: list[bool] = []
    outer_found = False
    fid = 0
    for h0 in range(n_he):
        if he_face[h0] != -2:
            continue
        ring = []
        h = h0
        while True:
            ring.append(h)
            h = he_next[h]
            if h == h0:
                break
        area2 = 0.0
        comp = 0
        unbounded = False
        for h in ring:
            u = he_org[h]
            v = he_org[h ^ 1]
            area2 += vx_list[u] * vy_list[v] - vx_list[v] * vy_list[u]
            if he_line[h] >= 0:
                comp += 1
            else:
                unbounded = True
        if area2 <= 0.0:
            if outer_found:
                raise GeneralPositionViolation(
                    "face tracing produced two outer cycles; box degenerate"
                )
            outer_found = True
            for h in ring:
                he_face[h] = -1
            continue
        for h in ring:
            he_face[h] = fid
        face_start.append(h0)
        face_comp.append(comp)
        face_nedges.append(len(ring))
        face_unbounded.append(unbounded)
        fid += 1

    if not outer_found:
        raise GeneralPositionViolation("face tracing found no outer cycle")

    return Arrangement(
        lines=lines,
        margins=margins,
        box=box,
        vx=np.array(vx_list),
        vy=np.array(vy_list),
        n_interior=n_interior,
        he_org=he_org,
        he_line=he_line,
        he_next=he_next,
        he_face=he_face,
        faces_start=face_start,
        faces_comp=face_comp,
        faces_nedges=face_nedges,
        faces_unbounded=face_unbounded,
        side_index=side_index,
    )


def _pair_other(I: np.ndarray, J: np.ndarray, pair_idx: int, line_idx: int) -> int:
    i, j = int(I[pair_idx]), int(J[pair_idx])
    return j if i == line_idx else i


def cell_complexity(arr: Arrangement, face_id: int) -> int:
    return arr.cell_complexity(face_id)


def zone(arr: Arrangement, l: Line, tolerance: float | None = None) -> ZoneReport:
    return arr.zone(l, tolerance)


def leq_t_zone(
    arr: Arrangement, l: Line, t: int, tolerance: float | None = None
) -> ZoneReport:
    return arr.leq_t_zone(l, t, tolerance)


def zone_upper_bound(n: int) -> float:
    """Complexity envelope for the zone of a line among n lines: the tight
    bound for n >= 10 and the plain linear envelope below."""
    if n >= 10:
        return math.floor(9.5 * (n - 1)) - 3
    return 9.5 * n
