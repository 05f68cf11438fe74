# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Triangulations of small point sets.

Triangulations are found by backtracking over the candidate edges in canonical
(lexicographic) order: every edge is either taken, or skipped and later crossed by
a taken edge. A maximal non-crossing set is exactly a triangulation, so the search
visits every triangulation once. The same search with some edges forbidden is the
decision procedure behind the MaxMin solver.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from errors import AllCollinear, LimitExceeded, TooLarge
from geometry.predicates import (Point, Segment, cross, dist_sq, format_rational, orientation,
                                 Orientation, point_on_segment, segments_properly_cross)

DEFAULT_CAP = 12
DEFAULT_LIMIT = 200000


class Edge(NamedTuple):
    i: int
    j: int

    @classmethod
    def make(cls, i, j) -> 'Edge':
        i, j = int(i), int(j)
        if i == j:
            raise ValueError('edge endpoints must differ, got ({}, {})'.format(i, j))
        return cls(i, j) if i < j else cls(j, i)


@dataclass(frozen=True)
class PointSet:
    points: Tuple[Point, ...]

    def __post_init__(self):
        points = tuple(p if isinstance(p, Point) else Point.make(*p) for p in self.points)
        object.__setattr__(self, 'points', points)
        if len(set(points)) != len(points):
            raise ValueError('point set contains duplicate points')

    def __len__(self):
        return len(self.points)

    def __getitem__(self, index) -> Point:
        return self.points[index]

    def __iter__(self):
        return iter(self.points)

    def segment(self, edge: Edge) -> Segment:
        return Segment(self.points[edge.i], self.points[edge.j])

    def to_json(self):
        return {'kind': 'pointset', 'points': [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, payload) -> 'PointSet':
        return cls(tuple(Point.from_json(p) for p in payload['points']))


@dataclass(frozen=True)
class Triangulation:
    base: PointSet
    edges: FrozenSet[Edge]
    hull_size: int

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def edge_lengths_sq(self) -> List[Fraction]:
        return [dist_sq(self.base[e.i], self.base[e.j]) for e in self.sorted_edges()]

    def min_edge_sq(self) -> Fraction:
        return min(self.edge_lengths_sq())

    def to_json(self):
        return {'kind': 'triangulation',
                'points': [p.to_json() for p in self.base],
                'edges': [[e.i, e.j] for e in self.sorted_edges()],
                'hull_size': self.hull_size}

    @classmethod
    def from_json(cls, payload) -> 'Triangulation':
        base = PointSet(tuple(Point.from_json(p) for p in payload['points']))
        edges = frozenset(Edge.make(i, j) for i, j in payload['edges'])
        return cls(base, edges, int(payload['hull_size']))


@dataclass(frozen=True)
class MaxMinResult:
    optimum_sq: Fraction
    witness: Triangulation

    def to_json(self):
        return {'kind': 'maxmin',
                'optimum_sq': format_rational(self.optimum_sq),
                'triangulation': self.witness.to_json()}


class SeparationViolation(NamedTuple):
    p: int
    q: int
    has_edge: bool
    separated: bool


def convex_hull(ps: PointSet) -> List[int]:
    """Counterclockwise hull indices, points on hull edges included."""
    n = len(ps)
    if n < 3:
        raise AllCollinear('need at least 3 points, got {}'.format(n))
    order = sorted(range(n), key=lambda k: (ps[k].x, ps[k].y))

    def chain(indices):
        hull = []
        for k in indices:
            while len(hull) >= 2 and cross(ps[hull[-2]], ps[hull[-1]], ps[k]) <= 0:
                hull.pop()
            hull.append(k)
        return hull

    lower = chain(order)
    upper = chain(reversed(order))
    corners = lower[:-1] + upper[:-1]
    if len(corners) < 3:
        raise AllCollinear('all {} points are collinear'.format(n))

    hull = []
    for pos, u in enumerate(corners):
        v = corners[(pos + 1) % len(corners)]
        side = Segment(ps[u], ps[v])
        between = [k for k in range(n)
                   if k != u and k != v and point_on_segment(ps[k], side)]
        between.sort(key=lambda k: dist_sq(ps[u], ps[k]))
        hull.append(u)
        hull.extend(between)
    return hull


def hull_edges(hull: Sequence[int]) -> List[Edge]:
    return [Edge.make(hull[k], hull[(k + 1) % len(hull)]) for k in range(len(hull))]


def expected_edge_count(n: int, h: int) -> int:
    return 3 * n - h - 3


def expected_face_count(n: int, h: int) -> int:
    return 2 * n - h - 2


def candidate_edges(ps: PointSet) -> List[Edge]:
    """Pairs whose open segment contains no other point, in canonical order."""
    n = len(ps)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            s = Segment(ps[i], ps[j])
            if not any(k != i and k != j and point_on_segment(ps[k], s) for k in range(n)):
                edges.append(Edge(i, j))
    return edges


def edges_cross(ps: PointSet, e: Edge, f: Edge) -> bool:
    if len({e.i, e.j, f.i, f.j}) < 4:
        return False
    return segments_properly_cross(ps.segment(e), ps.segment(f)) is not None


def is_valid_triangulation(ps: PointSet, edges: Iterable[Edge]) -> bool:
    edges = set(Edge.make(*e) for e in edges)
    n = len(ps)
    if any(not (0 <= e.i < n and 0 <= e.j < n) for e in edges):
        return False
    try:
        hull = convex_hull(ps)
    except AllCollinear:
        return False
    allowed = set(candidate_edges(ps))
    if not edges <= allowed:
        return False
    if not set(hull_edges(hull)) <= edges:
        return False
    if len(edges) != expected_edge_count(n, len(hull)):
        return False
    ordered = sorted(edges)
    for a in range(len(ordered)):
        for b in range(a + 1, len(ordered)):
            if edges_cross(ps, ordered[a], ordered[b]):
                return False
    return True


def count_faces(ps: PointSet, edges: Iterable[Edge]) -> int:
    """Bounded triangular faces: empty triangles whose three sides are edges."""
    edges = set(Edge.make(*e) for e in edges)
    adjacency = {}
    for e in edges:
        adjacency.setdefault(e.i, set()).add(e.j)
        adjacency.setdefault(e.j, set()).add(e.i)
    faces = 0
    for e in sorted(edges):
        for k in sorted(adjacency[e.i] & adjacency[e.j]):
            if k <= e.j:
                continue
            a, b, c = ps[e.i], ps[e.j], ps[k]
            turn = orientation(a, b, c)
            if turn == Orientation.Collinear:
                continue
            if not any(_strictly_inside(ps[m], a, b, c, turn)
                       for m in range(len(ps)) if m not in (e.i, e.j, k)):
                faces += 1
    return faces


def _strictly_inside(p, a, b, c, turn) -> bool:
    sign = turn.value
    return (cross(a, b, p) * sign > 0 and cross(b, c, p) * sign > 0
            and cross(c, a, p) * sign > 0)


class _EdgeSpace(object):
    """Candidate edges with their crossing masks, shared by all searches."""

    def __init__(self, ps: PointSet):
        self.ps = ps
        self.hull = convex_hull(ps)
        self.edges = candidate_edges(ps)
        self.index = {e: k for k, e in enumerate(self.edges)}
        self.hull_mask = 0
        for e in hull_edges(self.hull):
            self.hull_mask |= 1 << self.index[e]
        self.target = expected_edge_count(len(ps), len(self.hull))
        m = len(self.edges)
        self.cross = [0] * m
        for a in range(m):
            for b in range(a + 1, m):
                if edges_cross(ps, self.edges[a], self.edges[b]):
                    self.cross[a] |= 1 << b
                    self.cross[b] |= 1 << a

    def mask_of(self, edges: Iterable[Edge]) -> int:
        mask = 0
        for e in edges:
            k = self.index.get(Edge.make(*e))
            if k is not None:
                mask |= 1 << k
        return mask

    def search(self, forbidden_mask: int = 0) -> Iterator[Triangulation]:
        """Yield every triangulation avoiding the forbidden edges, in canonical order."""
        if forbidden_mask & self.hull_mask:
            return
        m = len(self.edges)
        allowed = ~forbidden_mask
        last_crosser = [(self.cross[k] & allowed).bit_length() - 1 for k in range(m)]

        def recurse(k, included, count, pending):
            if count + (m - k) < self.target:
                return
            live = []
            for e in pending:
                if self.cross[e] & included:
                    continue
                if last_crosser[e] < k:
                    return
                live.append(e)
            if k == m:
                if not live and count == self.target:
                    yield self._build(included)
                return
            bit = 1 << k
            if self.cross[k] & included:
                yield from recurse(k + 1, included, count, live)
                return
            if not forbidden_mask & bit:
                yield from recurse(k + 1, included | bit, count + 1, live)
            if last_crosser[k] > k:
                yield from recurse(k + 1, included, count, live + [k])

        yield from recurse(0, 0, 0, [])

    def _build(self, included: int) -> Triangulation:
        edges = frozenset(e for k, e in enumerate(self.edges) if included >> k & 1)
        return Triangulation(self.ps, edges, len(self.hull))


def _check_cap(ps: PointSet, cap: int):
    if len(ps) > cap:
        raise TooLarge('{} points exceed the triangulation cap of {}'.format(len(ps), cap))


def enumerate_triangulations(ps: PointSet, limit: int = DEFAULT_LIMIT,
                             cap: int = DEFAULT_CAP) -> List[Triangulation]:
    _check_cap(ps, cap)
    found = []
    for tri in _EdgeSpace(ps).search():
        found.append(tri)
        if len(found) > limit:
            raise LimitExceeded('more than {} triangulations'.format(limit))
    return found


def triangulation_exists_avoiding(ps: PointSet, forbidden: Iterable[Edge],
                                  cap: int = DEFAULT_CAP) -> Optional[Triangulation]:
    _check_cap(ps, cap)
    space = _EdgeSpace(ps)
    return next(space.search(space.mask_of(forbidden)), None)


def maxmin_triangulation(ps: PointSet, cap: int = DEFAULT_CAP) -> MaxMinResult:
    """Largest achievable shortest edge, by binary search over realised lengths."""
    _check_cap(ps, cap)
    space = _EdgeSpace(ps)
    lengths = [dist_sq(space.ps[e.i], space.ps[e.j]) for e in space.edges]
    candidates = sorted(set(lengths))

    def feasible(threshold):
        mask = 0
        for k, length in enumerate(lengths):
            if length < threshold:
                mask |= 1 << k
        return next(space.search(mask), None)

    best = feasible(candidates[0])
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        witness = feasible(candidates[mid])
        if witness is None:
            hi = mid - 1
        else:
            lo, best = mid, witness
    return MaxMinResult(candidates[lo], best)


def separates(e: Edge, p: int, q: int, ps: PointSet) -> bool:
    """Closed edge e strictly separates p from q."""
    a, b = ps[e.i], ps[e.j]
    sp, sq = cross(a, b, ps[p]), cross(a, b, ps[q])
    if sp * sq >= 0:
        return False
    ta, tb = cross(ps[p], ps[q], a), cross(ps[p], ps[q], b)
    return ta * tb <= 0


def separation_edge_audit(t: Triangulation) -> List[SeparationViolation]:
    ps = t.base
    n = len(ps)
    allowed = set(candidate_edges(ps))
    violations = []
    for p in range(n):
        for q in range(p + 1, n):
            pair = Edge(p, q)
            if pair not in allowed:
                continue
            has_edge = pair in t.edges
            separated = any(separates(e, p, q, ps) for e in t.edges
                            if p not in e and q not in e)
            if has_edge == separated:
                violations.append(SeparationViolation(p, q, has_edge, separated))
    return violations


def count_convex_triangulations(k: int) -> int:
    """Triangulations of a convex k-gon by the interval dynamic program."""
    if k < 3:
        return 0
    ways = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        ways[i][i + 1] = 1
    for span in range(2, k):
        for i in range(k - span):
            j = i + span
            ways[i][j] = sum(ways[i][m] * ways[m][j] for m in range(i + 1, j))
    return ways[0][k - 1]
