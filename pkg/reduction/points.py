# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""CDS instance to point set.

Stabber endpoints are kept; every target is replaced by a pair of points a tiny
distance apart, placed in opposite sectors of the lines through it so exactly the
stabbers covering the target separate the pair. Before that the instance is
perturbed until the only collinear triples are the ones its stabbers force, and
the clearance delta (smallest distance of a point to a segment it does not lie on
by construction) fixes how small the pairs must be.
"""
from __future__ import annotations

import itertools
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from cds.instance import CdsInstance
from errors import AuditFailed, DegenerateCollinearity, InputError, SectorDegeneracy
from geometry.predicates import Point, Segment, dist_sq, format_rational, segments_properly_cross
from geometry.triangulation import Edge, PointSet, separates
from reduction.certificate import GadgetCertificate, check_certificate
from reduction.gadgets import angle_of, rational_unit

DEFAULT_SCHEDULES = 8
FULL_CLEARANCE_CAP = 40
DIRECTION_DENOMINATOR = 4096
SIGNS = ((1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (1, -1), (-1, -1))


class GapPolynomial(NamedTuple):
    text: str
    terms: Tuple[Tuple[int, int], ...]

    def __call__(self, n: int) -> int:
        return sum(coef * n ** power for power, coef in self.terms)


_TERM = re.compile(r'^(?:(\d+)\s*\*?\s*)?n(?:\s*\^\s*(\d+))?$')


def parse_gap_polynomial(text: str) -> GapPolynomial:
    """Polynomials like ``n^2``, ``3*n^2+1`` or ``2n``: non-negative integer terms."""
    terms = {}
    for raw in text.replace(' ', '').split('+'):
        if not raw:
            raise InputError('empty term in gap polynomial {!r}'.format(text))
        if raw.isdigit():
            power, coef = 0, int(raw)
        else:
            match = _TERM.match(raw)
            if match is None:
                raise InputError('cannot read term {!r} of gap polynomial {!r}'.format(raw, text))
            coef = int(match.group(1) or 1)
            power = int(match.group(2) or 1)
        terms[power] = terms.get(power, 0) + coef
    return GapPolynomial(text.strip(), tuple(sorted(terms.items())))


def rational_sqrt_floor(value: Fraction, bits: int = 32) -> Fraction:
    """Largest-ish rational r with r * r <= value; exact for perfect squares."""
    value = Fraction(value)
    if value <= 0:
        return Fraction(0)
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    while True:
        root = math.isqrt(num * den << (2 * bits))
        if root > 0:
            return Fraction(root, den << bits)
        bits *= 2


def _rational_sqrt_ceil(value: Fraction) -> Fraction:
    low = rational_sqrt_floor(value)
    if low * low == value:
        return low
    return low + Fraction(1, value.denominator << 32)


class EpsPair(NamedTuple):
    t1: int
    t2: int
    source: int


class _Frame(object):
    """Points on a common integer grid so the cubic scans avoid Fraction overhead."""

    def __init__(self, points: Sequence[Point]):
        self.denominator = reduce(lambda a, b: a * b // math.gcd(a, b),
                                  (c.denominator for p in points for c in p), 1)
        self.xy = [(int(p.x * self.denominator), int(p.y * self.denominator)) for p in points]

    def cross(self, o, a, b) -> int:
        (ox, oy), (ax, ay), (bx, by) = self.xy[o], self.xy[a], self.xy[b]
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)

    def dist_sq(self, a, b) -> int:
        (ax, ay), (bx, by) = self.xy[a], self.xy[b]
        return (ax - bx) ** 2 + (ay - by) ** 2

    def point_segment(self, p, q, r) -> Tuple[int, int]:
        """Squared distance from p to segment qr, as (numerator, denominator) on the grid."""
        (px, py), (qx, qy), (rx, ry) = self.xy[p], self.xy[q], self.xy[r]
        dx, dy = rx - qx, ry - qy
        length = dx * dx + dy * dy
        dot = (px - qx) * dx + (py - qy) * dy
        if dot <= 0:
            return self.dist_sq(p, q), 1
        if dot >= length:
            return self.dist_sq(p, r), 1
        c = self.cross(q, r, p)
        return c * c, length

    def to_fraction(self, value: Tuple[int, int]) -> Fraction:
        return Fraction(value[0], value[1] * self.denominator ** 2)


def _smaller(a, b) -> bool:
    return b is None or a[0] * b[1] < b[0] * a[1]


class _Anatomy(object):
    """Points of Q and T with the stabbers whose family each one belongs to."""

    def __init__(self, inst: CdsInstance):
        self.points: List[Point] = []
        self.index: Dict[Point, int] = {}
        for seg in inst.stabbers:
            for p in seg:
                self._add(p)
        self.target_index = [self._add(t) for t in inst.targets]
        member = [set() for _ in self.points]
        for s, seg in enumerate(inst.stabbers):
            fam = {self.index[seg.a], self.index[seg.b]}
            fam.update(self.target_index[t] for t in inst.targets_of(s))
            for p in fam:
                member[p].add(s)
        self.member = [frozenset(m) for m in member]

    def _add(self, p: Point) -> int:
        if p not in self.index:
            self.index[p] = len(self.points)
            self.points.append(p)
        return self.index[p]

    def constructive(self, *ids) -> bool:
        return bool(reduce(lambda acc, p: acc & self.member[p], ids[1:], self.member[ids[0]]))


def collinear_defects(inst: CdsInstance, limit: int = 20) -> List[dict]:
    """Collinear triples of Q and T that no single stabber explains."""
    anatomy = _Anatomy(inst)
    frame = _Frame(anatomy.points)
    defects = []
    for p, q, r in itertools.combinations(range(len(anatomy.points)), 3):
        if frame.cross(p, q, r) == 0 and not anatomy.constructive(p, q, r):
            defects.append({'code': 'collinear', 'points': [anatomy.points[k].to_json() for k in (p, q, r)]})
            if len(defects) >= limit:
                break
    return defects


def compute_clearance(inst: CdsInstance, full: Optional[bool] = None) -> Optional[Fraction]:
    """Squared clearance delta of a perturbed instance; None with fewer than two points.

    The full scan takes every point against every segment spanned by two other
    points. Above ``FULL_CLEARANCE_CAP`` points only targets are scanned against
    segments; point pairs are always all included.
    """
    anatomy = _Anatomy(inst)
    frame = _Frame(anatomy.points)
    n = len(anatomy.points)
    if n < 2:
        return None
    if full is None:
        full = n <= FULL_CLEARANCE_CAP
    best = None
    for p, q in itertools.combinations(range(n), 2):
        value = (frame.dist_sq(p, q), 1)
        if _smaller(value, best):
            best = value
    candidates = range(n) if full else sorted(set(anatomy.target_index))
    for p in candidates:
        for q, r in itertools.combinations(range(n), 2):
            if p == q or p == r or anatomy.constructive(p, q, r):
                continue
            if frame.cross(q, r, p) == 0:
                raise DegenerateCollinearity('points {}, {} and {} are collinear'.format(
                    anatomy.points[p], anatomy.points[q], anatomy.points[r]),
                    [{'code': 'collinear', 'points': [anatomy.points[k].to_json() for k in (p, q, r)]}])
            value = frame.point_segment(p, q, r)
            if _smaller(value, best):
                best = value
    if best[0] == 0:
        raise DegenerateCollinearity('two points of the instance coincide')
    return frame.to_fraction(best)


def _min_point_distance(points: Sequence[Point]) -> Fraction:
    d2 = min(float(dist_sq(p, q)) for p, q in itertools.combinations(points, 2))
    return Fraction(math.sqrt(d2) / 2).limit_denominator(1000) or Fraction(1, 1000)


def _ratio_on(seg: Segment, t: Point) -> Fraction:
    d = seg.b - seg.a
    return ((t.x - seg.a.x) * d.x + (t.y - seg.a.y) * d.y) / (d.x * d.x + d.y * d.y)


def _relation_defects(before: CdsInstance, after: CdsInstance, cert) -> List[dict]:
    defects = []
    if after.coverage != before.coverage:
        changed = [t for t in range(len(before.targets)) if after.coverage[t] != before.coverage[t]]
        defects.append({'code': 'coverage-changed', 'targets': changed})
    if after.conflicts != before.conflicts:
        changed = [s for s in range(len(before.stabbers)) if after.conflicts[s] != before.conflicts[s]]
        defects.append({'code': 'conflicts-changed', 'stabbers': changed})
    if defects:
        return defects
    defects.extend(collinear_defects(after))
    if cert is not None:
        defects.extend(check_certificate(cert, after))
    return defects


def perturb(inst: CdsInstance, cert: Optional[GadgetCertificate] = None,
            schedules: int = DEFAULT_SCHEDULES, logger: Optional[logging.Logger] = None) -> CdsInstance:
    """Move every point by a deterministic tiny amount, keeping the stabber structure.

    Point k moves by base * (a, b) / (8 * n^(2 + j + k mod 3)) under schedule j, with
    (a, b) from a fixed sign table. Targets on exactly two crossing stabbers are
    recomputed as the crossing; other targets move and drag one endpoint of each
    stabber through them.
    """
    logger = logger or logging.getLogger('maxmin')
    if not inst.stabbers:
        return inst
    anatomy = _Anatomy(inst)
    n = max(2, len(anatomy.points))
    base = _min_point_distance(anatomy.points) if len(anatomy.points) > 1 else Fraction(1)

    derived = {}
    for t, target in enumerate(inst.targets):
        cover = sorted(inst.coverage[t])
        if len(cover) == 2 and segments_properly_cross(inst.stabbers[cover[0]], inst.stabbers[cover[1]]) == target:
            derived[t] = tuple(cover)
    pinned_on = {s: [t for t in inst.targets_of(s) if t not in derived] for s in range(len(inst.stabbers))}
    frozen = {s for s, ts in pinned_on.items() if len(ts) > 1}
    frozen_targets = {t for s in frozen for t in pinned_on[s]}

    defects = []
    for j in range(schedules):
        def move(p: Point) -> Point:
            k = anatomy.index[p]
            sx, sy = SIGNS[(3 * k + 5 * j) % len(SIGNS)]
            mag = base / (8 * n ** (2 + j + k % 3))
            return Point(p.x + sx * mag, p.y + sy * mag)

        targets = list(inst.targets)
        for t in range(len(targets)):
            if t not in derived and t not in frozen_targets:
                targets[t] = move(inst.targets[t])
        stabbers = []
        for s, seg in enumerate(inst.stabbers):
            if s in frozen:
                stabbers.append(seg)
            elif pinned_on[s]:
                t = pinned_on[s][0]
                lam = _ratio_on(seg, inst.targets[t])
                anchor = targets[t]
                if lam == 0:
                    stabbers.append(Segment(anchor, move(seg.b)))
                elif lam == 1:
                    stabbers.append(Segment(move(seg.a), anchor))
                else:
                    a = move(seg.a)
                    stabbers.append(Segment(a, anchor + (anchor - a).scale((1 - lam) / lam)))
            else:
                stabbers.append(Segment(move(seg.a), move(seg.b)))
        lost = []
        for t, (s, u) in derived.items():
            point = segments_properly_cross(stabbers[s], stabbers[u])
            if point is None:
                lost.append(t)
            else:
                targets[t] = point
        if lost:
            defects = [{'code': 'crossing-lost', 'targets': lost}]
            continue
        candidate = CdsInstance(tuple(stabbers), tuple(targets), inst.exempt_targets, inst.roles)
        defects = _relation_defects(inst, candidate, cert)
        if not defects:
            logger.info('perturbation schedule {} passed the audit'.format(j))
            return candidate
        logger.info('perturbation schedule {} rejected: {}'.format(j, defects[0]['code']))
    raise AuditFailed('all {} perturbation schedules produced degeneracies'.format(schedules), defects)


def choose_epsilon(delta_sq: Fraction, gap_poly: Optional[GapPolynomial] = None,
                   n: Optional[int] = None) -> Fraction:
    """A perfect square epsilon_sq with epsilon <= delta/4, and delta/epsilon >= 2 p(n) in gap mode."""
    if delta_sq <= 0:
        raise ValueError('clearance must be positive')
    root = rational_sqrt_floor(delta_sq)
    p = gap_poly(n) if gap_poly is not None else 0
    epsilon = root / (2 * max(2, p))
    return epsilon * epsilon


@dataclass(frozen=True)
class PointInstance:
    points: PointSet
    stabber_edges: Tuple[Edge, ...]
    pairs: Tuple[EpsPair, ...]
    covering: Tuple[Tuple[int, ...], ...]
    epsilon_sq: Optional[Fraction]
    delta_sq: Optional[Fraction]
    threshold_sq: Optional[Fraction]
    gap_poly: Optional[str] = None
    gap_n: Optional[int] = None
    roles: Optional[Tuple[str, ...]] = None

    @cached_property
    def families(self) -> Tuple[FrozenSet[int], ...]:
        members = [{e.i, e.j} for e in self.stabber_edges]
        for pair, cover in zip(self.pairs, self.covering):
            for s in cover:
                members[s].update((pair.t1, pair.t2))
        return tuple(frozenset(m) for m in members)

    def pair_edges(self) -> List[Edge]:
        return [Edge.make(p.t1, p.t2) for p in self.pairs]

    def short_edges(self) -> List[Edge]:
        """Every point pair closer than the threshold; equal to the pair edges when audited."""
        if self.threshold_sq is None:
            return []
        return [Edge(i, j) for i, j in itertools.combinations(range(len(self.points)), 2)
                if dist_sq(self.points[i], self.points[j]) < self.threshold_sq]

    def to_json(self):
        def rational(value):
            return None if value is None else format_rational(value)
        payload = {'kind': 'points',
                   'points': [p.to_json() for p in self.points],
                   'stabber_edges': [[e.i, e.j] for e in self.stabber_edges],
                   'pairs': [list(p) for p in self.pairs],
                   'covering': [list(c) for c in self.covering],
                   'epsilon_sq': rational(self.epsilon_sq),
                   'delta_sq': rational(self.delta_sq),
                   'threshold_sq': rational(self.threshold_sq),
                   'gap_poly': self.gap_poly,
                   'n': self.gap_n}
        if self.roles is not None:
            payload['roles'] = list(self.roles)
        return payload

    @classmethod
    def from_json(cls, payload) -> 'PointInstance':
        def rational(value):
            return None if value is None else Fraction(value)
        try:
            pi = cls(PointSet(tuple(Point.from_json(p) for p in payload['points'])),
                     tuple(Edge.make(i, j) for i, j in payload['stabber_edges']),
                     tuple(EpsPair(int(a), int(b), int(c)) for a, b, c in payload['pairs']),
                     tuple(tuple(int(s) for s in c) for c in payload['covering']),
                     rational(payload.get('epsilon_sq')), rational(payload.get('delta_sq')),
                     rational(payload.get('threshold_sq')), payload.get('gap_poly'),
                     payload.get('n'), tuple(payload['roles']) if 'roles' in payload else None)
        except (KeyError, ValueError, TypeError) as err:
            raise InputError('malformed point instance: {}'.format(err))
        defects = point_instance_defects(pi)
        if defects:
            raise InputError('point instance fails its invariants', defects)
        return pi


def point_instance_defects(pi: PointInstance) -> List[dict]:
    defects = []
    if not pi.pairs:
        return defects
    eps, delta, threshold = pi.epsilon_sq, pi.delta_sq, pi.threshold_sq
    if not (eps is not None and delta is not None and threshold is not None):
        return [{'code': 'missing-scales'}]
    if not eps < delta:
        defects.append({'code': 'epsilon-not-below-delta'})
    if not eps < threshold <= delta:
        defects.append({'code': 'threshold-out-of-range'})
    paired = {}
    for k, pair in enumerate(pi.pairs):
        paired[pair.t1] = paired[pair.t2] = k
        d = dist_sq(pi.points[pair.t1], pi.points[pair.t2])
        if not eps <= d <= 2 * eps:
            defects.append({'code': 'pair-distance', 'pair': k})
        for s in pi.covering[k]:
            if not separates(pi.stabber_edges[s], pair.t1, pair.t2, pi.points):
                defects.append({'code': 'pair-not-separated', 'pair': k, 'stabber': s})
    frame = _Frame(pi.points.points)
    scale = frame.denominator ** 2
    for i, j in itertools.combinations(range(len(pi.points)), 2):
        if i in paired and paired.get(j) == paired[i]:
            continue
        if frame.dist_sq(i, j) <= threshold * scale:
            defects.append({'code': 'short-distance', 'points': [i, j]})
    return defects


def _strictly_apart(seg: Segment, p1: Point, p2: Point) -> bool:
    ps = PointSet((seg.a, seg.b, p1, p2))
    return separates(Edge(0, 1), 2, 3, ps)


def _bisector(directions: Sequence[Point]) -> float:
    rays = sorted({angle_of(d) % math.pi for d in directions})
    rays = rays + [r + math.pi for r in rays]
    widths = np.diff(np.append(rays, rays[0] + 2 * math.pi))
    widest = int(np.argmax(widths))
    return rays[widest] + widths[widest] / 2


def _endpoints(inst: CdsInstance) -> Tuple[List[Point], Tuple[Edge, ...]]:
    endpoints, index = [], {}
    for seg in inst.stabbers:
        for p in seg:
            if p not in index:
                index[p] = len(endpoints)
                endpoints.append(p)
    return endpoints, tuple(Edge.make(index[seg.a], index[seg.b]) for seg in inst.stabbers)


def split_targets(inst: CdsInstance, cert: Optional[GadgetCertificate], epsilon_sq: Fraction,
                  delta_sq: Optional[Fraction] = None, gap: Optional[GapPolynomial] = None) -> PointInstance:
    """Replace each target by an epsilon-pair across the widest sector at it."""
    if delta_sq is None:
        delta_sq = compute_clearance(inst)
    if delta_sq is not None and not epsilon_sq < delta_sq:
        raise ValueError('epsilon_sq must stay below delta_sq')
    epsilon = _rational_sqrt_ceil(epsilon_sq)
    half = epsilon / 2

    endpoints, stabber_edges = _endpoints(inst)

    split, covering = [], []
    for t, target in enumerate(inst.targets):
        cover = sorted(inst.coverage[t])
        directions = [inst.stabbers[s].b - inst.stabbers[s].a for s in cover]
        for (a, u), (b, w) in itertools.combinations(zip(cover, directions), 2):
            if u.x * w.y - u.y * w.x == 0:
                raise SectorDegeneracy('stabbers {} and {} share a carrier line at target {}'.format(a, b, t),
                                       [{'code': 'parallel-stabbers', 'target': t, 'stabbers': [a, b]}])
        angle = _bisector(directions)
        for denominator in (DIRECTION_DENOMINATOR, DIRECTION_DENOMINATOR ** 2):
            u = rational_unit(angle, denominator)
            t1, t2 = target + u.scale(half), target - u.scale(half)
            if all(_strictly_apart(inst.stabbers[s], t1, t2) for s in cover):
                break
        else:
            raise SectorDegeneracy('no exact separating placement for target {}'.format(t),
                                   [{'code': 'sector', 'target': t}])
        split.extend((t1, t2))
        covering.append(tuple(cover))

    base = len(endpoints)
    pairs = tuple(EpsPair(base + 2 * t, base + 2 * t + 1, t) for t in range(len(inst.targets)))
    roles = inst.roles
    if roles is None and cert is not None:
        roles = cert.stabber_roles()
    try:
        points = PointSet(tuple(endpoints + split))
    except ValueError as err:
        raise AuditFailed('split points collide: {}'.format(err))
    pi = PointInstance(points, stabber_edges, pairs, tuple(covering), epsilon_sq, delta_sq,
                       4 * epsilon_sq if inst.targets else None,
                       gap.text if gap is not None else None,
                       len(points) if gap is not None else None, roles)
    defects = point_instance_defects(pi)
    if defects:
        raise AuditFailed('point instance fails its invariants', defects)
    return pi


def separation_soundness_audit(pi: PointInstance) -> List[dict]:
    """Segments between instance points that separate an epsilon-pair without lying along a covering stabber."""
    frame = _Frame(pi.points.points)
    n = len(pi.points)
    families = pi.families
    violations = []
    for k, pair in enumerate(pi.pairs):
        t1, t2 = pair.t1, pair.t2
        side = [frame.cross(t1, t2, m) for m in range(n)]
        for p, q in itertools.combinations(range(n), 2):
            if p in (t1, t2) or q in (t1, t2) or side[p] * side[q] > 0:
                continue
            if frame.cross(p, q, t1) * frame.cross(p, q, t2) >= 0:
                continue
            if any(p in families[s] and q in families[s] for s in pi.covering[k]):
                continue
            violations.append({'code': 'foreign-separator', 'pair': k, 'source': pair.source, 'edge': [p, q]})
    return violations


def separating_stabbers(pi: PointInstance, k: int) -> List[int]:
    pair = pi.pairs[k]
    return [s for s, e in enumerate(pi.stabber_edges) if separates(e, pair.t1, pair.t2, pi.points)]


def decode_triangulation(pi: PointInstance, edges) -> FrozenSet[int]:
    """Stabbers selected by a triangulation: those along which an edge separates a covered pair."""
    chosen = set()
    families = pi.families
    for e in edges:
        e = Edge.make(*e)
        for k, pair in enumerate(pi.pairs):
            if not separates(e, pair.t1, pair.t2, pi.points):
                continue
            chosen.update(s for s in pi.covering[k] if e.i in families[s] and e.j in families[s])
    return frozenset(chosen)


def build_point_instance(inst: CdsInstance, cert: Optional[GadgetCertificate] = None,
                         gap: Optional[GapPolynomial] = None, schedules: int = DEFAULT_SCHEDULES,
                         full_clearance: Optional[bool] = None,
                         logger: Optional[logging.Logger] = None) -> Tuple[CdsInstance, PointInstance]:
    """Perturb, measure clearance, choose epsilon and split; returns the perturbed instance too."""
    logger = logger or logging.getLogger('maxmin')
    perturbed = perturb(inst, cert, schedules, logger)
    delta_sq = compute_clearance(perturbed, full_clearance)
    endpoints, stabber_edges = _endpoints(perturbed)
    if not perturbed.targets:
        roles = perturbed.roles or (cert.stabber_roles() if cert is not None else None)
        pi = PointInstance(PointSet(tuple(endpoints)), stabber_edges, (), (), None, delta_sq, None,
                           gap.text if gap is not None else None, None, roles)
        return perturbed, pi
    n = len(endpoints) + 2 * len(perturbed.targets)
    epsilon_sq = choose_epsilon(delta_sq, gap, n)
    pi = split_targets(perturbed, cert, epsilon_sq, delta_sq, gap)
    logger.info('point instance: {} points, {} pairs, delta_sq={} epsilon_sq={}'.format(
        len(pi.points), len(pi.pairs), format_rational(delta_sq), format_rational(epsilon_sq)))
    return perturbed, pi
