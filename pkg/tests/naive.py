"""Brute-force reference implementations the tests compare against.

Everything here recomputes results from definitions with plain Python
floats and exhaustive search, sharing no machinery with the package:
cells are counted through sign vectors, zones through polygon side
changes, adjacency through coordinate-matched edges, planarity through
Kuratowski subdivision search, shattering through bitmask enumeration.
Only valid for margin-respecting general-position inputs.
"""

from __future__ import annotations

from itertools import combinations


def cross_point(l1, l2):
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) < 1e-12:
        return None
    return (
        (l1.c * l2.b - l2.c * l1.b) / det,
        (l1.a * l2.c - l2.a * l1.c) / det,
    )


def naive_vertex_count(lines) -> int:
    pts = set()
    for l1, l2 in combinations(lines, 2):
        p = cross_point(l1, l2)
        if p is not None:
            pts.add((round(p[0], 9), round(p[1], 9)))
    return len(pts)


def naive_segment_count(lines) -> int:
    total = 0
    for l in lines:
        k = sum(
            1 for o in lines if o.id != l.id and cross_point(l, o) is not None
        )
        total += k + 1
    return total


def naive_face_count(lines) -> int:
    """Count cells by the sign vectors seen from every edge midpoint.

    Each cell of an arrangement with n >= 1 lines has an edge on some
    line; stations at edge midpoints (and beyond the extreme crossings
    for the unbounded edges) visit every cell from both sides."""
    lines = list(lines)
    if not lines:
        return 1
    sigs = set()
    for i, li in enumerate(lines):
        px, py = li.c * li.a, li.c * li.b
        dx, dy = li.b, -li.a
        params = []
        for lj in lines:
            if lj.id == li.id:
                continue
            p = cross_point(li, lj)
            if p is None:
                continue
            params.append((p[0] - px) * dx + (p[1] - py) * dy)
        params.sort()
        if params:
            spread = max(1.0, params[-1] - params[0])
            stations = [params[0] - spread, params[-1] + spread]
            stations += [0.5 * (a + b) for a, b in zip(params, params[1:])]
        else:
            stations = [0.0]
        for t in stations:
            qx, qy = px + t * dx, py + t * dy
            base = []
            for j, lj in enumerate(lines):
                if j == i:
                    base.append(0)
                else:
                    v = lj.a * qx + lj.b * qy - lj.c
                    base.append(1 if v > 0 else -1)
            for side in (1, -1):
                sig = tuple(side if j == i else base[j]
                            for j in range(len(lines)))
                sigs.add(sig)
    return len(sigs)


# ---------------------------------------------------------------------------
# zones from face polygons


def polygon_zone_faces(arr, q) -> set[int]:
    """Faces whose interior the query line passes through: the polygon has
    strictly positive and strictly negative vertices."""
    out = set()
    for f in range(arr.n_faces):
        vals = [q.a * p.x + q.b * p.y - q.c for p in arr.face_polygon(f)]
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            out.add(f)
    return out


def coordinate_adjacency(arr) -> dict[int, set[int]]:
    """Face adjacency recovered from edge endpoint coordinates alone.

    Interior edges appear in exactly two face rings; edges lying on the
    clipping box have no partner and drop out on their own."""
    by_edge: dict[tuple, list[int]] = {}
    for f in range(arr.n_faces):
        poly = arr.face_polygon(f)
        for k in range(len(poly)):
            u = poly[k]
            v = poly[(k + 1) % len(poly)]
            key = tuple(sorted([(round(u.x, 9), round(u.y, 9)),
                                (round(v.x, 9), round(v.y, 9))]))
            by_edge.setdefault(key, []).append(f)
    adj: dict[int, set[int]] = {f: set() for f in range(arr.n_faces)}
    for faces in by_edge.values():
        if len(faces) == 2:
            a, b = faces
            adj[a].add(b)
            adj[b].add(a)
    return adj


def bfs_layers(start: set[int], adj, t: int) -> list[set[int]]:
    layers = [set(start)]
    seen = set(start)
    for _ in range(t):
        nxt = set()
        for f in layers[-1]:
            nxt |= adj[f] - seen
        layers.append(nxt)
        seen |= nxt
    return layers


# ---------------------------------------------------------------------------
# hyperedges from definitions


def naive_hyperedges(scene) -> dict[tuple, tuple]:
    """{sorted line-id tuple: sorted witness disc ids} straight from the
    closed-distance definition plus recorded tangencies."""
    tol = 1.0 + scene.margins.tangency_tolerance
    edges: dict[tuple, list] = {}
    for d in scene.pseudo_discs:
        met = set(d.tangent_to)
        for l in scene.lines:
            if abs(l.a * d.center.x + l.b * d.center.y - l.c) <= d.radius * tol:
                met.add(l.id)
        if met:
            edges.setdefault(tuple(sorted(met)), []).append(d.id)
    return {e: tuple(sorted(ws)) for e, ws in edges.items()}


def naive_degree(scene, line_id: int, t=None) -> int:
    return sum(
        1
        for e in naive_hyperedges(scene)
        if line_id in e and (t is None or len(e) == t)
    )


# ---------------------------------------------------------------------------
# shattering by bitmask enumeration


def naive_vc(edges, verts) -> tuple[int, tuple]:
    """(vc dimension, witness subset) by checking every vertex subset."""
    verts = sorted(verts)
    pos = {v: k for k, v in enumerate(verts)}
    masks = {
        sum(1 << pos[v] for v in e if v in pos) for e in edges
    }
    best, witness = 0, ()
    for r in range(1, len(verts) + 1):
        found = None
        for sub in combinations(verts, r):
            smask = sum(1 << pos[v] for v in sub)
            if len({m & smask for m in masks}) == 1 << r:
                found = sub
                break
        if found is None:
            break
        best, witness = r, found
    return best, witness


def naive_delaunay_constant(edges, verts) -> float:
    """Max induced density of size-2 traces over every vertex subset."""
    verts = sorted(verts)
    best = 0.0
    edge_sets = [frozenset(e) for e in edges]
    for r in range(1, len(verts) + 1):
        for sub in combinations(verts, r):
            s = frozenset(sub)
            pairs = {
                tuple(sorted(e & s)) for e in edge_sets if len(e & s) == 2
            }
            best = max(best, len(pairs) / r)
    return best


# ---------------------------------------------------------------------------
# planarity by Kuratowski subdivision search (graphs up to ~10 vertices)


def _simple_paths(adj, u, v, banned, limit=40000):
    """Simple u->v paths with interiors avoiding `banned`."""
    out = []
    stack = [(u, [u])]
    steps = 0
    while stack and steps < limit:
        steps += 1
        node, path = stack.pop()
        for w in sorted(adj.get(node, ())):
            if w == v:
                out.append(path + [v])
            elif w not in banned and w not in path:
                stack.append((w, path + [w]))
    return out


def _disjoint_paths(adj, pairs, branch):
    used: set = set()

    def rec(k):
        if k == len(pairs):
            return True
        u, v = pairs[k]
        for path in _simple_paths(adj, u, v, used | branch):
            interior = set(path[1:-1])
            if interior & used:
                continue
            used.update(interior)
            if rec(k + 1):
                return True
            used.difference_update(interior)
        return False

    return rec(0)


def _has_subdivision(adj, nodes, kind) -> bool:
    if kind == "k5":
        for branch in combinations(nodes, 5):
            pairs = list(combinations(branch, 2))
            if _disjoint_paths(adj, pairs, set(branch)):
                return True
        return False
    for branch in combinations(nodes, 6):
        for left in combinations(branch, 3):
            right = [b for b in branch if b not in left]
            pairs = [(u, v) for u in left for v in right]
            if _disjoint_paths(adj, pairs, set(branch)):
                return True
    return False


def naive_planar(vertices, edges) -> bool:
    """No K5 and no K3,3 subdivision."""
    nodes = sorted(vertices)
    adj: dict = {v: set() for v in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if len(nodes) < 5:
        return True
    if _has_subdivision(adj, nodes, "k5"):
        return False
    if len(nodes) >= 6 and _has_subdivision(adj, nodes, "k33"):
        return False
    return True
