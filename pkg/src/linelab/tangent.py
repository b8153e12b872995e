"""Shrinking discs to double tangency and sweeping wedge families.

A disc that meets some lines can be shrunk, without changing the set of
lines it meets, until it is tangent to two of them.  Double-tangent discs
group by (line pair, quadrant) into wedge families, linearly ordered by how
close their tangency chord sits to the wedge apex.  Along that order every
other line meets a consecutive run of discs, which caps the number of
distinct line sets per wedge and yields the sweep audit at the bottom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    IntervalViolation,
    OrderInconsistency,
    ParameterMismatch,
    UnattributedEdge,
)
from .geom import (
    DEFAULT_MARGINS,
    Disc,
    Line,
    Margins,
    Point,
    Scene,
    line_line_intersection,
    signed_distance,
)
from .hypergraph import build_hypergraph


def _members(d: Disc, lines, margins: Margins) -> list[Line]:
    tol = 1.0 + margins.tangency_tolerance
    out = []
    for l in lines:
        if l.id in d.tangent_to or abs(signed_distance(d.center, l)) <= d.radius * tol:
            out.append(l)
    return out


def shrink_disc(
    d: Disc, lines, margins: Margins = DEFAULT_MARGINS
) -> tuple[Disc, tuple[int, ...]]:
    """Shrink d keeping its line set; returns (disc, tangent line ids).

    Phase 1 drops the radius to the farthest member line, phase 2 slides
    the disc along the pencil of circles tangent there until a second
    member line becomes tangent.  A disc meeting no line is returned
    unchanged with an empty tangency tuple.  Three or more ids in the
    second slot mean a tangency tie (the disc touches them all at once).
    """
    g = _members(d, lines, margins)
    if not g:
        return d, ()

    dists = [abs(signed_distance(d.center, l)) for l in g]
    r1 = max(dists)
    star = g[dists.index(r1)]
    if r1 <= 0.0:
        raise ParameterMismatch(
            f"disc {d.id} is centered on line {star.id}; cannot shrink"
        )
    s_star = signed_distance(d.center, star)
    # foot of the center on the farthest line, unit normal toward the center
    tx = d.center.x - s_star * star.a
    ty = d.center.y - s_star * star.b
    ux = (d.center.x - tx) / r1
    uy = (d.center.y - ty) / r1

    if len(g) == 1:
        res = Disc(d.id, Point(tx + r1 * ux, ty + r1 * uy), r1,
                   tangent_to=(star.id,))
        _check_preserved(d, res, lines, margins)
        return res, (star.id,)

    rho0 = r1
    crit: list[tuple[float, int]] = []
    for m in g:
        if m.id == star.id:
            continue
        a = signed_distance(Point(tx, ty), m)
        b = m.a * ux + m.b * uy
        if abs(a) < 1e-15:
            crit.append((0.0, m.id))  # m passes through the tangency point
            continue
        sigma = 1.0 if a > 0 else -1.0
        denom = 1.0 - sigma * b
        if denom <= 1e-12:
            crit.append((0.0, m.id))  # pencil never reaches m from this side
            continue
        crit.append((min(abs(a) / denom, rho0), m.id))

    rho = max(c[0] for c in crit)
    tie_tol = margins.min_separation * max(1.0, rho)
    touching = sorted([star.id] + [mid for val, mid in crit
                                   if val >= rho - tie_tol])
    center = Point(tx + rho * ux, ty + rho * uy)
    res = Disc(d.id, center, rho, tangent_to=tuple(touching))
    _check_preserved(d, res, lines, margins)
    return res, tuple(touching)


def _check_preserved(old: Disc, new: Disc, lines, margins: Margins) -> None:
    before = {l.id for l in _members(old, lines, margins)}
    after = {l.id for l in _members(new, lines, margins)}
    # geometry guarantees this; a mismatch means the margins were violated
    assert before == after, (
        f"disc {old.id}: line set changed under shrinking "
        f"({sorted(before)} -> {sorted(after)})"
    )


@dataclass(frozen=True)
class ShrinkResult:
    scene: Scene
    passthrough_ids: tuple[int, ...]  # discs meeting no line, kept as-is
    ties: tuple[tuple[int, tuple[int, ...]], ...]  # disc id -> >=3 tangencies


def shrink_family(s: Scene) -> ShrinkResult:
    """Shrink every disc of the scene; the hypergraph is unchanged."""
    if any(not isinstance(p, Disc) for p in s.pseudo_discs):
        raise ParameterMismatch("shrinking is defined for circular discs only")
    out = []
    passthrough = []
    ties = []
    for d in s.pseudo_discs:
        nd, touch = shrink_disc(d, s.lines, s.margins)
        out.append(nd)
        if not touch:
            passthrough.append(d.id)
        elif len(touch) > 2:
            ties.append((d.id, touch))
    return ShrinkResult(
        scene=Scene(s.lines, tuple(out), s.margins),
        passthrough_ids=tuple(passthrough),
        ties=tuple(ties),
    )


# ---------------------------------------------------------------------------
# wedge families of double-tangent discs

WedgeId = tuple[int, int, int, int]  # (line1, line2, sign1, sign2)


@dataclass(frozen=True)
class TangentDisc:
    disc_id: int
    pair: tuple[int, int]
    wedge: WedgeId
    apex_distance: float
    touch1: Point
    touch2: Point


@dataclass(frozen=True)
class WedgeOrder:
    wedge: WedgeId
    apex: Point
    entries: tuple[TangentDisc, ...]  # sorted by apex_distance

    @property
    def disc_ids(self) -> tuple[int, ...]:
        return tuple(e.disc_id for e in self.entries)


def _tangent_lines(d: Disc, lines, margins: Margins) -> list[Line]:
    tol = margins.tangency_tolerance * max(1.0, d.radius)
    out = []
    for l in lines:
        if l.id in d.tangent_to or abs(
            abs(signed_distance(d.center, l)) - d.radius
        ) <= tol:
            out.append(l)
    return out


def _foot(p: Point, l: Line) -> Point:
    s = signed_distance(p, l)
    return Point(p.x - s * l.a, p.y - s * l.b)


def tangent_family(s: Scene) -> dict[WedgeId, WedgeOrder]:
    """Group double-tangent discs into per-wedge orders.

    A disc tangent to k>=2 lines joins the family of each tangent pair.
    Pairs of parallel lines span no wedge and are skipped.  Raises
    OrderInconsistency when a disc's two tangency points disagree about
    their distance to the apex (they are equal for a circle).
    """
    if any(not isinstance(p, Disc) for p in s.pseudo_discs):
        raise ParameterMismatch("wedge families are defined for circular discs")
    groups: dict[WedgeId, list[TangentDisc]] = {}
    apexes: dict[WedgeId, Point] = {}
    for d in s.pseudo_discs:
        tl = _tangent_lines(d, s.lines, s.margins)
        for i in range(len(tl)):
            for j in range(i + 1, len(tl)):
                p, q = tl[i], tl[j]
                if abs(p.a * q.b - q.a * p.b) < math.sin(s.margins.min_angle):
                    continue  # parallel pair, no apex
                apex = line_line_intersection(p, q, s.margins)
                s1 = 1 if signed_distance(d.center, p) > 0 else -1
                s2 = 1 if signed_distance(d.center, q) > 0 else -1
                w: WedgeId = (p.id, q.id, s1, s2)
                t1 = _foot(d.center, p)
                t2 = _foot(d.center, q)
                d1 = math.hypot(t1.x - apex.x, t1.y - apex.y)
                d2 = math.hypot(t2.x - apex.x, t2.y - apex.y)
                scale = max(1.0, d1, d2)
                if abs(d1 - d2) > 1e-9 * scale + s.margins.tangency_tolerance * scale:
                    raise OrderInconsistency(
                        f"disc {d.id} touches lines {p.id},{q.id} at apex "
                        f"distances {d1:.12g} and {d2:.12g}"
                    )
                groups.setdefault(w, []).append(
                    TangentDisc(d.id, (p.id, q.id), w, 0.5 * (d1 + d2), t1, t2)
                )
                apexes[w] = apex
    out = {}
    for w, entries in groups.items():
        entries.sort(key=lambda e: (e.apex_distance, e.disc_id))
        out[w] = WedgeOrder(w, apexes[w], tuple(entries))
    return out


def interval_property_check(s: Scene, wo: WedgeOrder) -> dict[int, tuple[int, int]]:
    """Positions met by each non-pair line must form one consecutive run.

    Returns {line id: (first, last)} over the wedge order; raises
    IntervalViolation with the offending position set otherwise.
    """
    disc_by_id = {p.id: p for p in s.pseudo_discs}
    runs: dict[int, tuple[int, int]] = {}
    for l in s.lines:
        if l.id in wo.wedge[:2]:
            continue
        pos = [
            k
            for k, e in enumerate(wo.entries)
            if l in _members(disc_by_id[e.disc_id], [l], s.margins)
        ]
        if not pos:
            continue
        if pos[-1] - pos[0] + 1 != len(pos):
            raise IntervalViolation(
                f"line {l.id} meets wedge {wo.wedge} discs at positions {pos}"
            )
        runs[l.id] = (pos[0], pos[-1])
    return runs


@dataclass(frozen=True)
class SweepReport:
    wedge: WedgeId
    sets: tuple[tuple[int, ...], ...]  # line set per disc along the order
    distinct: int
    changes: int  # consecutive positions with a different set
    toggles: int  # membership flips summed over lines

    def to_dict(self) -> dict:
        return {
            "wedge": list(self.wedge),
            "distinct": self.distinct,
            "changes": self.changes,
            "toggles": self.toggles,
        }


def sweep_distinct_count(s: Scene, wo: WedgeOrder) -> SweepReport:
    """Walk the wedge order and count distinct line sets.

    Checks distinct <= changes + 1 and toggles <= 2n, which the interval
    property forces; IntervalViolation reports a breach.
    """
    interval_property_check(s, wo)
    disc_by_id = {p.id: p for p in s.pseudo_discs}
    sets = tuple(
        tuple(sorted(l.id for l in _members(disc_by_id[e.disc_id], s.lines,
                                            s.margins)))
        for e in wo.entries
    )
    changes = sum(1 for a, b in zip(sets, sets[1:]) if a != b)
    toggles = sum(
        len(set(a) ^ set(b)) for a, b in zip(sets, sets[1:])
    )
    distinct = len(set(sets))
    n = len(s.lines)
    if distinct > changes + 1:
        raise IntervalViolation(
            f"wedge {wo.wedge}: {distinct} distinct sets from {changes} changes"
        )
    if toggles > 2 * n:
        raise IntervalViolation(
            f"wedge {wo.wedge}: {toggles} membership flips exceed 2n={2 * n}"
        )
    return SweepReport(wo.wedge, sets, distinct, changes, toggles)


# ---------------------------------------------------------------------------
# whole-scene audit


@dataclass(frozen=True)
class AuditReport:
    pairs: tuple[dict, ...]
    covered_edges: int
    total_edges: int
    passthrough: tuple[int, ...]
    ties: tuple[tuple[int, tuple[int, ...]], ...]

    def to_dict(self) -> dict:
        return {
            "pairs": list(self.pairs),
            "covered_edges": self.covered_edges,
            "total_edges": self.total_edges,
            "passthrough": list(self.passthrough),
            "ties": [[d, list(t)] for d, t in self.ties],
        }


def total_hyperedge_audit(s: Scene) -> AuditReport:
    """Attribute every hyperedge of size >= 2 to a wedge sweep.

    Shrinks the family, groups the results into wedges, sweeps each, and
    checks that the union of swept line sets covers every size >= 2
    hyperedge of the original scene (size-1 edges have single-tangent
    witnesses and no wedge; they are excluded from the covered/total
    figures).  Raises UnattributedEdge when coverage fails.
    """
    h0 = build_hypergraph(s, validate=False)
    shrunk = shrink_family(s)
    fam = tangent_family(shrunk.scene)

    by_pair: dict[tuple[int, int], list] = {}
    covered: set[tuple[int, ...]] = set()
    for w in sorted(fam):
        rep = sweep_distinct_count(shrunk.scene, fam[w])
        covered.update(rep.sets)
        by_pair.setdefault((w[0], w[1]), []).append(
            {
                "quadrant": [w[2], w[3]],
                "discs": list(fam[w].disc_ids),
                "distinct": rep.distinct,
                "changes": rep.changes,
            }
        )

    targets = [e for e in h0.edges if len(e) >= 2]
    for e in targets:
        if e not in covered:
            raise UnattributedEdge(
                f"hyperedge {e} is not met by any wedge sweep"
            )
    pairs = tuple(
        {"l1": p, "l2": q, "wedges": wedges}
        for (p, q), wedges in sorted(by_pair.items())
    )
    return AuditReport(
        pairs=pairs,
        covered_edges=len(targets),
        total_edges=len(targets),
        passthrough=shrunk.passthrough_ids,
        ties=shrunk.ties,
    )
