"""The hypergraph of lines with respect to a pseudo-disc family.

Vertices are the scene's lines.  Every pseudo-disc contributes the set of
lines it meets (closed semantics, recorded tangencies included); equal sets
are merged and remember all witnesses.  On top of that live the Delaunay
graph (size-2 edges), exact VC-dimension search, and the cell-pair graph
that certifies the linear bound on 3-hyperedges through a fixed line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np

from .arrangement import Arrangement, build_arrangement
from .errors import (
    CapExceeded,
    UnknownVertex,
    ValidationFailed,
    WitnessLocalizationFailed,
)
from .geom import (
    Disc,
    Line,
    Margins,
    Point,
    Scene,
    line_intersects_pseudo_disc,
    raw_intersection,
    validate_general_position,
    validate_pseudo_disc_family,
)


@dataclass(frozen=True)
class Hypergraph:
    vertex_ids: frozenset[int]
    edges: tuple[tuple[int, ...], ...]
    witnesses: dict[tuple[int, ...], tuple[int, ...]]

    @property
    def size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for e in self.edges:
            hist[len(e)] = hist.get(len(e), 0) + 1
        return hist

    def count_by_size(self, t: int) -> int:
        return self.size_histogram.get(t, 0)

    def degree_count(self, line_id: int, t: int | None = None) -> int:
        """Edges containing line_id, optionally restricted to size t."""
        if line_id not in self.vertex_ids:
            raise UnknownVertex(f"line {line_id} is not a hypergraph vertex")
        return sum(
            1
            for e in self.edges
            if line_id in e and (t is None or len(e) == t)
        )

    def to_dict(self) -> dict:
        edges = [list(e) for e in self.edges]
        return {
            "n": len(self.vertex_ids),
            "edges": edges,
            "witnesses": {
                str(i): list(self.witnesses[e]) for i, e in enumerate(self.edges)
            },
            "histogram": {str(k): v for k, v in sorted(self.size_histogram.items())},
        }


def line_set_of(pd, lines, margins: Margins) -> tuple[int, ...]:
    """Sorted ids of the lines meeting the pseudo-disc."""
    return tuple(
        sorted(l.id for l in lines if line_intersects_pseudo_disc(l, pd, margins))
    )


def build_hypergraph(s: Scene, validate: bool = True) -> Hypergraph:
    """Hypergraph of the scene's lines over its pseudo-disc family.

    With validate=True (the default) the scene must pass the
    general-position audit and the pairwise family check first; generators
    in this package already guarantee those margins, so bulk experiment code
    may opt out.
    """
    if validate:
        gp = validate_general_position(s)
        if not gp.valid:
            raise ValidationFailed("scene fails general-position audit", gp)
        fam = validate_pseudo_disc_family(s.pseudo_discs, s.margins)
        if not fam.valid:
            raise ValidationFailed("pseudo-disc family check failed", fam)

    discs = [p for p in s.pseudo_discs if isinstance(p, Disc)]
    others = [p for p in s.pseudo_discs if not isinstance(p, Disc)]
    edge_map: dict[tuple[int, ...], list[int]] = {}

    if discs and s.lines:
        la = np.array([l.a for l in s.lines])
        lb = np.array([l.b for l in s.lines])
        lc = np.array([l.c for l in s.lines])
        ids = np.array([l.id for l in s.lines])
        cx = np.array([d.center.x for d in discs])
        cy = np.array([d.center.y for d in discs])
        rr = np.array([d.radius for d in discs])
        tol = 1.0 + s.margins.tangency_tolerance
        hit = (
            np.abs(np.outer(cx, la) + np.outer(cy, lb) - lc[None, :])
            <= (rr * tol)[:, None]
        )
        for k, d in enumerate(discs):
            row = set(ids[hit[k]].tolist()) | set(d.tangent_to)
            if row:
                edge_map.setdefault(tuple(sorted(row)), []).append(d.id)

    for p in others:
        e = line_set_of(p, s.lines, s.margins)
        if e:
            edge_map.setdefault(e, []).append(p.id)

    edges = tuple(sorted(edge_map))
    witnesses = {e: tuple(sorted(edge_map[e])) for e in edges}
    return Hypergraph(
        vertex_ids=frozenset(l.id for l in s.lines),
        edges=edges,
        witnesses=witnesses,
    )


def count_by_size(h: Hypergraph, t: int) -> int:
    return h.count_by_size(t)


def degree_count(h: Hypergraph, line_id: int, t: int | None = None) -> int:
    return h.degree_count(line_id, t)


def induced_subhypergraph(h: Hypergraph, vertex_subset) -> Hypergraph:
    """Trace hypergraph on a vertex subset: edges are intersections, empty
    traces drop out, witnesses accumulate."""
    vs = frozenset(vertex_subset)
    unknown = vs - h.vertex_ids
    if unknown:
        raise UnknownVertex(f"unknown vertex ids {sorted(unknown)}")
    edge_map: dict[tuple[int, ...], set[int]] = {}
    for e in h.edges:
        trace = tuple(v for v in e if v in vs)
        if trace:
            edge_map.setdefault(trace, set()).update(h.witnesses[e])
    edges = tuple(sorted(edge_map))
    return Hypergraph(
        vertex_ids=vs,
        edges=edges,
        witnesses={e: tuple(sorted(edge_map[e])) for e in edges},
    )


def link_of_line(h: Hypergraph, line_id: int) -> Hypergraph:
    """Edges through line_id with the line removed; empty remainders drop."""
    if line_id not in h.vertex_ids:
        raise UnknownVertex(f"line {line_id} is not a hypergraph vertex")
    edge_map: dict[tuple[int, ...], set[int]] = {}
    for e in h.edges:
        if line_id not in e:
            continue
        rest = tuple(v for v in e if v != line_id)
        if rest:
            edge_map.setdefault(rest, set()).update(h.witnesses[e])
    edges = tuple(sorted(edge_map))
    return Hypergraph(
        vertex_ids=h.vertex_ids - {line_id},
        edges=edges,
        witnesses={e: tuple(sorted(edge_map[e])) for e in edges},
    )


# ---------------------------------------------------------------------------
# Delaunay graph and planarity


@dataclass(frozen=True)
class DelaunayGraph:
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def edge_count(self) -> int:
        return len(self.edges)

    def to_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": sorted(list(e) for e in self.edges),
        }


def delaunay_graph(h: Hypergraph) -> DelaunayGraph:
    """Graph of the size-2 hyperedges."""
    return DelaunayGraph(
        vertices=h.vertex_ids,
        edges=frozenset(e for e in h.edges if len(e) == 2),
    )


def planarity_check(g) -> bool:
    """Planarity of a simple graph (DelaunayGraph, nx.Graph, or edge list)."""
    if isinstance(g, DelaunayGraph):
        gr = nx.Graph()
        gr.add_nodes_from(g.vertices)
        gr.add_edges_from(g.edges)
    elif isinstance(g, nx.Graph):
        gr = g
    else:
        gr = nx.Graph()
        gr.add_edges_from(g)
    ok, _ = nx.check_planarity(gr)
    return ok


# ---------------------------------------------------------------------------
# VC dimension


@dataclass
class VcReport:
    vc_dimension: int
    shattered_witness: tuple[int, ...]
    delaunay_constant: float
    delaunay_exhaustive: bool
    cap: int

    def to_dict(self) -> dict:
        return {
            "vc_dimension": self.vc_dimension,
            "shattered_witness": list(self.shattered_witness),
            "delaunay_constant": self.delaunay_constant,
            "delaunay_exhaustive": self.delaunay_exhaustive,
            "cap": self.cap,
        }


def _is_shattered(edge_sets: list[frozenset[int]], subset: tuple[int, ...]) -> bool:
    want = 1 << len(subset)
    seen: set[frozenset[int]] = set()
    target = frozenset(subset)
    for e in edge_sets:
        seen.add(e & target)
        if len(seen) == want:
            return True
    return False


def _delaunay_constant(
    h: Hypergraph, exhaustive_limit: int, samples: int, seed: int
) -> tuple[float, bool]:
    verts = sorted(h.vertex_ids)
    if not verts:
        return 0.0, True
    edge_sets = [frozenset(e) for e in h.edges]

    def ratio(subset: frozenset[int]) -> float:
        pairs = {
            tuple(sorted(e & subset))
            for e in edge_sets
            if len(e & subset) == 2
        }
        return len(pairs) / len(subset)

    if len(verts) <= exhaustive_limit:
        best = 0.0
        for mask in range(1, 1 << len(verts)):
            subset = frozenset(v for k, v in enumerate(verts) if mask >> k & 1)
            best = max(best, ratio(subset))
        return best, True
    rng = np.random.default_rng(seed)
    best = max(ratio(frozenset(verts)), 0.0)
    for _ in range(samples):
        k = int(rng.integers(1, len(verts) + 1))
        subset = frozenset(rng.choice(verts, size=k, replace=False).tolist())
        best = max(best, ratio(subset))
    return best, False


def vc_dimension(
    h: Hypergraph,
    cap: int = 6,
    exhaustive_limit: int = 12,
    samples: int = 200,
    seed: int = 0,
) -> VcReport:
    """Exact VC dimension by growing shattered sets, stopping at cap.

    Raises CapExceeded (report attached) when a shattered set of size cap
    exists, since the true value may be larger.  The Delaunay constant c
    (max induced Delaunay edges per vertex) is exhaustive up to
    exhaustive_limit vertices and a sampled lower bound beyond.
    """
    verts = sorted(h.vertex_ids)
    edge_sets = [frozenset(e) for e in h.edges]
    const, exhaustive = _delaunay_constant(h, exhaustive_limit, samples, seed)

    best = 0
    witness: tuple[int, ...] = ()
    for k in range(1, min(cap, len(verts)) + 1):
        found = None
        for subset in combinations(verts, k):
            if _is_shattered(edge_sets, subset):
                found = subset
                break
        if found is None:
            break
        best, witness = k, found
    report = VcReport(
        vc_dimension=best,
        shattered_witness=witness,
        delaunay_constant=const,
        delaunay_exhaustive=exhaustive,
        cap=cap,
    )
    if best >= cap:
        raise CapExceeded(
            f"a shattered set of size {cap} exists; VC dimension >= {cap}",
            report,
        )
    return report


# ---------------------------------------------------------------------------
# cell-pair graph for 3-hyperedges through a pivot line


@dataclass
class CellPairGraph:
    """For every 3-hyperedge {pivot, p, q} one pair of arrangement edges of
    a common cell in the <=2-zone of the pivot, grouped per cell."""

    pivot: int
    vertices: tuple[int, ...]  # arrangement-edge ids in the <=2-zone
    edges: tuple[tuple[tuple[int, int], tuple[int, ...], int], ...]
    # ((edge_p, edge_q), hyperedge, face)
    per_cell: dict[int, dict]
    zone_faces: tuple[int, ...]
    arrangement: Arrangement

    def edge_count(self) -> int:
        return len(self.edges)

    def to_dict(self) -> dict:
        return {
            "pivot": self.pivot,
            "n_vertices": len(self.vertices),
            "n_edges": len(self.edges),
            "per_cell": {
                str(f): {
                    "cell_edges": rec["cell_edges"],
                    "pairs": [list(map(list, p[:1])) + [list(p[1])] for p in rec["pairs"]],
                }
                for f, rec in sorted(self.per_cell.items())
            },
        }


def _disc_meets_segment(d: Disc, u: Point, v: Point, line_id: int,
                        margins: Margins) -> bool:
    """Closed disc vs closed segment; a recorded tangency to the segment's
    line demands the tangency point inside the segment."""
    ex, ey = v.x - u.x, v.y - u.y
    seg2 = ex * ex + ey * ey
    if seg2 <= 0.0:
        return False
    t = ((d.center.x - u.x) * ex + (d.center.y - u.y) * ey) / seg2
    tol_t = margins.tangency_tolerance + 1e-12
    if line_id in d.tangent_to:
        return -tol_t <= t <= 1.0 + tol_t
    t_cl = min(1.0, max(0.0, t))
    qx, qy = u.x + t_cl * ex, u.y + t_cl * ey
    dist = math.hypot(qx - d.center.x, qy - d.center.y)
    return dist <= d.radius * (1.0 + margins.tangency_tolerance)


def three_hyperedge_cell_graph(
    s: Scene, pivot_id: int, validate: bool = True
) -> CellPairGraph:
    """Certificate structure behind the linear 3-hyperedge bound.

    Builds the arrangement of all lines except the pivot, takes the <=2-zone
    of the pivot, and maps every 3-hyperedge {pivot, p, q} to one cell of
    that zone where a witness disc meets an edge on p and an edge on q
    (lowest face id, then lexicographically smallest edge pair).  Distinct
    3-hyperedges use distinct line pairs, so the graph has exactly one edge
    per 3-hyperedge.
    """
    pivot = s.line(pivot_id)
    h = build_hypergraph(s, validate=validate)
    three = [
        e for e in h.edges if len(e) == 3 and pivot_id in e
    ]
    rest = sorted((l for l in s.lines if l.id != pivot_id), key=lambda l: l.id)
    if not rest:
        raise UnknownVertex("cell graph needs at least one non-pivot line")
    to_dense = {l.id: k for k, l in enumerate(rest)}
    to_orig = {k: l.id for k, l in enumerate(rest)}
    dense_lines = [Line(to_dense[l.id], l.a, l.b, l.c) for l in rest]
    extra = [p for l in rest if (p := raw_intersection(pivot, l)) is not None]
    arr = build_arrangement(dense_lines, s.margins, extra_points=extra)
    zr = arr.leq_t_zone(pivot, 2, tolerance=s.margins.min_separation / 4)
    zone_faces = sorted(zr.faces())

    # boundary edges of every zone face, grouped by original line id
    face_edges: dict[int, dict[int, list[int]]] = {}
    verts: set[int] = set()
    for f in zone_faces:
        by_line: dict[int, list[int]] = {}
        for eid in arr.face_edges(f):
            li = to_orig[arr.edge_line(eid)]
            by_line.setdefault(li, []).append(eid)
            verts.add(eid)
        for li in by_line:
            by_line[li].sort()
        face_edges[f] = by_line

    disc_by_id = {p.id: p for p in s.pseudo_discs}
    graph_edges = []
    per_cell: dict[int, dict] = {}
    for e in three:
        p, q = sorted(v for v in e if v != pivot_id)
        rep = None
        for w in h.witnesses[e]:
            d = disc_by_id[w]
            if not isinstance(d, Disc):
                continue
            located = _locate_witness(arr, zone_faces, face_edges, d, p, q,
                                      s.margins)
            if located is None:
                raise WitnessLocalizationFailed(
                    f"witness disc {w} of 3-hyperedge {e}: no cell of the "
                    f"<=2-zone of line {pivot_id} exposes edges on lines "
                    f"{p} and {q} meeting the disc"
                )
            if rep is None:
                rep = located
        if rep is None:
            raise WitnessLocalizationFailed(
                f"3-hyperedge {e} has no disc witness to localize"
            )
        face, pair = rep
        graph_edges.append((pair, e, face))
        rec = per_cell.setdefault(
            face, {"cell_edges": arr.cell_complexity(face), "pairs": []}
        )
        rec["pairs"].append((pair, e))

    return CellPairGraph(
        pivot=pivot_id,
        vertices=tuple(sorted(verts)),
        edges=tuple(graph_edges),
        per_cell=per_cell,
        zone_faces=tuple(zone_faces),
        arrangement=arr,
    )


def _locate_witness(arr, zone_faces, face_edges, d, p, q, margins):
    for f in zone_faces:
        by_line = face_edges[f]
        cand_p = [
            eid
            for eid in by_line.get(p, ())
            if _disc_meets_segment(d, *arr.edge_segment(eid), p, margins)
        ]
        if not cand_p:
            continue
        cand_q = [
            eid
            for eid in by_line.get(q, ())
            if _disc_meets_segment(d, *arr.edge_segment(eid), q, margins)
        ]
        if not cand_q:
            continue
        return f, (cand_p[0], cand_q[0])
    return None
