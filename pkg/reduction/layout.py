# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Straight-line spine drawing of a formula's variable/clause incidence graph.

Variables sit on the x axis at even integer positions; every clause is a vertex
above or below the axis joined by straight legs to its variables. A clause nested
between two legs of another clause on the same side is drawn lower than it.
"""
from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from errors import NotPlanarWithHints
from geometry.predicates import (Point, Segment, cross, dist_sq, format_rational,
                                 point_on_segment, segments_properly_cross)
from reduction.cnf import ClauseHint, Cnf3

SCALE_K = 4
EXHAUSTIVE_SIDES = 10


class LayoutEdge(NamedTuple):
    var: int
    clause: int
    position: int
    positive: bool


@dataclass(frozen=True)
class IncidenceLayout:
    var_pos: Tuple[Point, ...]
    clause_pos: Tuple[Point, ...]
    edges: Tuple[LayoutEdge, ...]
    sides: Tuple[str, ...]
    scale: Fraction = Fraction(1)

    def segment(self, edge: LayoutEdge) -> Segment:
        return Segment(self.var_pos[edge.var], self.clause_pos[edge.clause])

    def segments(self) -> List[Segment]:
        return [self.segment(e) for e in self.edges]

    def incident(self, var: int) -> List[LayoutEdge]:
        return [e for e in self.edges if e.var == var]

    def vertices(self) -> List[Point]:
        return list(self.var_pos) + list(self.clause_pos)

    def to_json(self):
        return {'kind': 'layout',
                'var_pos': [p.to_json() for p in self.var_pos],
                'clause_pos': [p.to_json() for p in self.clause_pos],
                'edges': [[e.var, e.clause, e.position, e.positive] for e in self.edges],
                'sides': list(self.sides),
                'scale': format_rational(self.scale)}

    @classmethod
    def from_json(cls, payload) -> 'IncidenceLayout':
        return cls(tuple(Point.from_json(p) for p in payload['var_pos']),
                   tuple(Point.from_json(p) for p in payload['clause_pos']),
                   tuple(LayoutEdge(int(v), int(c), int(k), bool(s)) for v, c, k, s in payload['edges']),
                   tuple(payload['sides']),
                   Fraction(payload.get('scale', '1')))


def spine_order(cnf: Cnf3, hints: Dict[int, ClauseHint]) -> List[int]:
    """Variables left to right: smallest index first among those every hint allows."""
    after = {v: set() for v in range(cnf.num_vars)}
    indegree = [0] * cnf.num_vars
    for hint in hints.values():
        for u, w in zip(hint.order, hint.order[1:]):
            if w not in after[u]:
                after[u].add(w)
                indegree[w] += 1
    ready = [v for v in range(cnf.num_vars) if indegree[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in sorted(after[v]):
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != cnf.num_vars:
        raise NotPlanarWithHints('layout hints order the variables cyclically')
    return order


class _Comb(object):
    """One clause's legs on the spine."""

    def __init__(self, xs: Sequence[int]):
        self.legs = sorted(xs)
        self.lo, self.hi = self.legs[0], self.legs[-1]

    @property
    def gaps(self):
        return list(zip(self.legs, self.legs[1:]))

    def nests_in(self, other: '_Comb') -> bool:
        if (self.lo, self.hi) == (other.lo, other.hi):
            return False
        return any(u <= self.lo and self.hi <= w for u, w in other.gaps)

    def meets(self, other: '_Comb') -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def compatible(self, other: '_Comb') -> bool:
        if self.hi < other.lo or other.hi < self.lo:
            return True
        if self.hi == other.lo or other.hi == self.lo:
            return not (self.lo == self.hi == other.lo == other.hi)
        return self.nests_in(other) or other.nests_in(self)


def _greedy_sides(combs: List[_Comb], fixed: Dict[int, str]) -> List[str]:
    sides = [fixed.get(c) for c in range(len(combs))]
    for c, comb in enumerate(combs):
        if sides[c] is not None:
            continue
        placed = [(d, sides[d]) for d in range(len(combs)) if d != c and sides[d] is not None]
        scores = []
        for side in ('above', 'below'):
            same = [combs[d] for d, s in placed if s == side]
            clash = sum(1 for other in same if not comb.compatible(other))
            touch = sum(1 for other in same if comb.meets(other))
            scores.append((clash, touch))
        sides[c] = 'above' if scores[0] <= scores[1] else 'below'
    return sides


def _heights(combs: List[_Comb], sides: Sequence[str]) -> List[int]:
    heights: Dict[int, int] = {}

    def height(c):
        if c not in heights:
            inner = [height(d) for d in range(len(combs))
                     if d != c and sides[d] == sides[c] and combs[d].nests_in(combs[c])]
            heights[c] = 2 * max(inner) + 1 if inner else 1
        return heights[c]

    return [height(c) for c in range(len(combs))]


def _draw(cnf: Cnf3, xs: Dict[int, int], combs: List[_Comb], sides: Sequence[str]) -> IncidenceLayout:
    var_pos = tuple(Point(Fraction(xs[v]), Fraction(0)) for v in range(cnf.num_vars))
    heights = _heights(combs, sides)
    clause_pos = []
    for c, comb in enumerate(combs):
        x = comb.lo + 1 if comb.lo == comb.hi else Fraction(comb.lo + comb.hi, 2)
        y = heights[c] if sides[c] == 'above' else -heights[c]
        clause_pos.append(Point(Fraction(x), Fraction(y)))
    edges = tuple(LayoutEdge(lit.var, c, k, lit.positive)
                  for c, clause in enumerate(cnf.clauses) for k, lit in enumerate(clause))
    return IncidenceLayout(var_pos, tuple(clause_pos), edges, tuple(sides))


def planarity_defects(layout: IncidenceLayout) -> List[dict]:
    """Crossings, overlaps and vertices lying on foreign edges."""
    defects = []
    segments = layout.segments()
    vertices = layout.vertices()
    num_vars = len(layout.var_pos)
    for a, b in itertools.combinations(range(len(segments)), 2):
        ea, eb = layout.edges[a], layout.edges[b]
        s, t = segments[a], segments[b]
        if segments_properly_cross(s, t) is not None:
            defects.append({'code': 'crossing', 'edges': [a, b]})
        elif ea.var == eb.var or ea.clause == eb.clause:
            shared, u, w = (s.a, s.b, t.b) if ea.var == eb.var else (s.b, s.a, t.a)
            if cross(shared, u, w) == 0 and (u - shared).x * (w - shared).x + (u - shared).y * (w - shared).y > 0:
                defects.append({'code': 'overlap', 'edges': [a, b]})
    for k, edge in enumerate(layout.edges):
        ends = (edge.var, num_vars + edge.clause)
        for v, p in enumerate(vertices):
            if v not in ends and point_on_segment(p, segments[k]):
                defects.append({'code': 'vertex-on-edge', 'edge': k, 'vertex': v})
    for u, w in itertools.combinations(range(len(vertices)), 2):
        if vertices[u] == vertices[w]:
            defects.append({'code': 'coincident-vertices', 'vertices': [u, w]})
    return defects


def layout_incidence_graph(cnf: Cnf3, hints: Optional[Dict[int, ClauseHint]] = None,
                           logger: Optional[logging.Logger] = None) -> IncidenceLayout:
    logger = logger or logging.getLogger('maxmin')
    hints = hints or {}
    order = spine_order(cnf, hints)
    xs = {v: 2 * rank for rank, v in enumerate(order)}
    combs = [_Comb([xs[lit.var] for lit in clause]) for clause in cnf.clauses]
    fixed = {c: h.side for c, h in hints.items() if h.side}

    sides = _greedy_sides(combs, fixed)
    layout = _draw(cnf, xs, combs, sides)
    defects = planarity_defects(layout)
    free = [c for c in range(len(combs)) if c not in fixed]
    if defects and len(free) <= EXHAUSTIVE_SIDES:
        logger.info('greedy clause sides cross, trying all {} side assignments'.format(2 ** len(free)))
        for choice in itertools.product(('above', 'below'), repeat=len(free)):
            trial = list(sides)
            for c, side in zip(free, choice):
                trial[c] = side
            candidate = _draw(cnf, xs, combs, trial)
            if not planarity_defects(candidate):
                layout, defects = candidate, []
                break
    if defects:
        raise NotPlanarWithHints('no crossing-free spine layout under the given hints', defects)
    logger.info('spine layout: {} variables, {} clauses ({} above, {} below)'.format(
        cnf.num_vars, cnf.num_clauses, layout.sides.count('above'), layout.sides.count('below')))
    return layout


def scale_layout(layout: IncidenceLayout, n: int, k: int = SCALE_K) -> IncidenceLayout:
    factor = Fraction(k * n * n)
    if factor == 0:
        return layout
    return IncidenceLayout(tuple(p.scale(factor) for p in layout.var_pos),
                           tuple(p.scale(factor) for p in layout.clause_pos),
                           layout.edges, layout.sides, layout.scale * factor)


def min_vertex_dist_sq(layout: IncidenceLayout) -> Optional[Fraction]:
    vertices = layout.vertices()
    if len(vertices) < 2:
        return None
    return min(dist_sq(p, q) for p, q in itertools.combinations(vertices, 2))
