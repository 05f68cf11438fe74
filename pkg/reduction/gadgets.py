# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Formula to CDS instance: variable cycles, clause segments and their audits.

Every variable with incidences gets a closed cycle of 2d mutually crossing
segments around its vertex (d its number of occurrences); consecutive segments
cross at the corner targets, so a cover takes all even or all odd segments. Every
incidence edge becomes a clause segment that starts inside the cycle, crosses one
cycle segment and runs through the clause vertex, where a clause's segments meet
at the clause target.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from cds.instance import CdsInstance, CdsSolution, validate_instance
from errors import CrossingAudit, DegenerateDirections, MixedParity, NotSatisfying
from geometry.predicates import (Point, Segment, cross, point_on_segment, segments_conflict,
                                 segments_properly_cross)
from reduction.certificate import (CLAUSE, EVEN, ODD, ClauseRecord, GadgetCertificate, IncidenceRecord,
                                   VariableRecord, check_certificate, flip, parity_for)
from reduction.cnf import ClauseHint, Cnf3
from reduction.layout import IncidenceLayout, layout_incidence_graph, scale_layout


@dataclass(frozen=True)
class GadgetConfig:
    """Construction constants. Radius and shift scale with n = #variables + #clauses."""
    scale_k: int = 4
    radius_factor: Fraction = Fraction(1)
    shift_factor: Fraction = Fraction(1, 8)
    extension: Fraction = Fraction(1, 64)
    direction_denominator: int = 4096

    def radius(self, n: int) -> Fraction:
        return self.radius_factor * max(n, 1)

    def shift(self, n: int) -> Fraction:
        return self.shift_factor * self.radius(n)


class Incidence(NamedTuple):
    key: Tuple[int, int]
    direction: Point
    positive: bool


@dataclass(frozen=True)
class VariableCycle:
    var: int
    segments: Tuple[Segment, ...]
    parities: Tuple[str, ...]
    corners: Tuple[Point, ...]
    corner_pairs: Tuple[Tuple[int, int], ...]
    assigned: Dict[Tuple[int, int], int] = field(default_factory=dict)


@dataclass(frozen=True)
class ClauseGadgets:
    segments: Dict[Tuple[int, int], Segment]
    targets: Tuple[Point, ...]


@dataclass(frozen=True)
class Compilation:
    layout: IncidenceLayout
    instance: CdsInstance
    certificate: GadgetCertificate


def rational_unit(angle: float, denominator: int) -> Point:
    """Exact rational unit vector close to the direction ``angle`` (radians)."""
    angle = math.remainder(angle, 2 * math.pi)
    flipped = abs(angle) > math.pi / 2
    if flipped:
        angle = angle - math.copysign(math.pi, angle)
    t = Fraction(float(np.tan(angle / 2))).limit_denominator(denominator)
    norm = 1 + t * t
    unit = Point((1 - t * t) / norm, 2 * t / norm)
    return unit.scale(-1) if flipped else unit


def angle_of(vector: Point) -> float:
    return float(np.arctan2(float(vector.y), float(vector.x)))


def approx_unit_multiple(vector: Point, denominator: int) -> Fraction:
    """Rational lam with lam * |vector| close to 1, keeping lam * vector exactly parallel."""
    length = float(np.hypot(float(vector.x), float(vector.y)))
    return Fraction(1.0 / length).limit_denominator(denominator * max(1, int(math.ceil(length))))


def _check_directions(var: int, incidences: Sequence[Incidence]):
    for a, b in itertools.combinations(incidences, 2):
        u, w = a.direction, b.direction
        if u.x * w.y - u.y * w.x == 0 and u.x * w.x + u.y * w.y > 0:
            raise DegenerateDirections('variable {} has two incidences leaving in the same direction'.format(var + 1),
                                       [{'code': 'same-direction', 'var': var, 'incidences': [list(a.key), list(b.key)]}])


def _lens(var, center, incidence, radius, config):
    """Degree one: two segments crossing once, the first one on the incidence ray."""
    d = rational_unit(angle_of(incidence.direction), config.direction_denominator)
    e = Point(-d.y, d.x)
    half, quarter = radius / 2, radius / 4
    across = Segment(center + d.scale(half) - e.scale(half), center + d.scale(half) + e.scale(half))
    along = Segment(center + d.scale(quarter) + e.scale(quarter), center + d.scale(3 * quarter) + e.scale(quarter))
    required = parity_for(incidence.positive)
    corner = segments_properly_cross(across, along)
    return VariableCycle(var, (across, along), (required, flip(required)), (corner,), ((0, 1),),
                         {incidence.key: 0})


def _filler_counts(gaps, parities) -> List[int]:
    d = len(parities)
    fillers = [0 if parities[i] != parities[(i + 1) % d] else 1 for i in range(d)]
    widest = int(np.argmax(gaps))
    fillers[widest] += d - sum(fillers)
    return fillers


def build_variable_cycle(var: int, center: Point, incidences: Sequence[Incidence],
                         radius: Fraction, config: Optional[GadgetConfig] = None) -> VariableCycle:
    """Closed cycle of 2d segments around ``center`` with alternating parities.

    Incidence i points through the interior of a side whose parity is odd for a
    positive literal and even for a negated one. Filler sides between two
    incidences keep the alternation consistent.
    """
    config = config or GadgetConfig()
    if not incidences:
        raise ValueError('variable {} has no incidences'.format(var + 1))
    _check_directions(var, incidences)
    if len(incidences) == 1:
        return _lens(var, center, incidences[0], radius, config)

    incidences = sorted(incidences, key=lambda inc: angle_of(inc.direction) % (2 * np.pi))
    d = len(incidences)
    thetas = np.array([angle_of(inc.direction) % (2 * np.pi) for inc in incidences])
    gaps = np.diff(np.append(thetas, thetas[0] + 2 * np.pi))
    required = [parity_for(inc.positive) for inc in incidences]
    fillers = _filler_counts(gaps, required)

    angles, incidence_side = [], {}
    for i in range(d):
        steps = fillers[i] + 2
        angles.extend(thetas[i] + gaps[i] * k / steps for k in range(1, fillers[i] + 2))
        incidence_side[(i + 1) % d] = len(angles) - 1
    m = len(angles)
    vertices = [center + rational_unit(a, config.direction_denominator).scale(radius) for a in angles]

    lengths = [float(np.hypot(float(vertices[(k + 1) % m].x - vertices[k].x),
                              float(vertices[(k + 1) % m].y - vertices[k].y))) for k in range(m)]
    reach = [config.extension * Fraction(min(lengths[k - 1], lengths[k])).limit_denominator(16)
             for k in range(m)]
    segments = []
    for k in range(m):
        a, b = vertices[k], vertices[(k + 1) % m]
        step = b - a
        lam_a = reach[k] * approx_unit_multiple(step, config.direction_denominator)
        lam_b = reach[(k + 1) % m] * approx_unit_multiple(step, config.direction_denominator)
        segments.append(Segment(a - step.scale(lam_a), b + step.scale(lam_b)))

    # side m-1 carries the first incidence, parities alternate from there
    parities = tuple(required[0] if k % 2 == 1 else flip(required[0]) for k in range(m))
    for i in range(d):
        assert parities[incidence_side[i]] == required[i]
    corner_pairs = tuple(((k - 1) % m, k) for k in range(m))
    corners = tuple(segments_properly_cross(segments[a], segments[b]) for a, b in corner_pairs)
    if any(p is None for p in corners):
        raise CrossingAudit('cycle of variable {} lost a corner'.format(var + 1))
    assigned = {incidences[i].key: incidence_side[i] for i in range(d)}
    return VariableCycle(var, tuple(segments), parities, corners, corner_pairs, assigned)


def build_clause_segments(layout: IncidenceLayout, cycles: Dict[int, VariableCycle],
                          shift: Fraction, config: Optional[GadgetConfig] = None) -> ClauseGadgets:
    """Shift every incidence edge toward its clause and audit all crossings."""
    config = config or GadgetConfig()
    segments = {}
    for edge in layout.edges:
        v, c = layout.var_pos[edge.var], layout.clause_pos[edge.clause]
        step = (c - v).scale(shift * approx_unit_multiple(c - v, config.direction_denominator))
        segments[(edge.clause, edge.position)] = Segment(v + step, c + step)
    gadgets = ClauseGadgets(segments, tuple(layout.clause_pos))
    defects = crossing_audit(layout, cycles, gadgets)
    if defects:
        raise CrossingAudit('gadget segments cross where they must not', defects)
    return gadgets


def crossing_audit(layout: IncidenceLayout, cycles: Dict[int, VariableCycle],
                   gadgets: ClauseGadgets) -> List[dict]:
    labelled = []
    for v in sorted(cycles):
        labelled.extend((('var', v, k), seg) for k, seg in enumerate(cycles[v].segments))
    labelled.extend((('clause',) + key, seg) for key, seg in sorted(gadgets.segments.items()))

    must_cross = set()
    for v, cycle in cycles.items():
        must_cross.update(frozenset({('var', v, a), ('var', v, b)}) for a, b in cycle.corner_pairs)
        for key, side in cycle.assigned.items():
            must_cross.add(frozenset({('clause',) + key, ('var', v, side)}))

    defects = []
    for (la, sa), (lb, sb) in itertools.combinations(labelled, 2):
        pair = frozenset({la, lb})
        if pair in must_cross:
            if segments_properly_cross(sa, sb) is None:
                defects.append({'code': 'missing-crossing', 'segments': [list(la), list(lb)]})
        elif la[0] == lb[0] == 'clause' and la[1] == lb[1]:
            if not point_on_segment(gadgets.targets[la[1]], sa) or not point_on_segment(gadgets.targets[la[1]], sb):
                defects.append({'code': 'clause-not-concurrent', 'clause': la[1]})
            elif cross(sa.a, sa.b, sb.a) == 0 and cross(sa.a, sa.b, sb.b) == 0:
                defects.append({'code': 'clause-overlap', 'segments': [list(la), list(lb)]})
        elif segments_conflict(sa, sb):
            defects.append({'code': 'stray-crossing', 'segments': [list(la), list(lb)]})
    return defects


def compile_formula(cnf: Cnf3, hints: Optional[Dict[int, ClauseHint]] = None,
                    config: Optional[GadgetConfig] = None,
                    logger: Optional[logging.Logger] = None) -> Compilation:
    config = config or GadgetConfig()
    logger = logger or logging.getLogger('maxmin')
    n = cnf.num_vars + cnf.num_clauses
    layout = scale_layout(layout_incidence_graph(cnf, hints, logger), n, config.scale_k)
    radius, shift = config.radius(n), config.shift(n)

    cycles = {}
    for v in range(cnf.num_vars):
        incident = [Incidence((e.clause, e.position), layout.clause_pos[e.clause] - layout.var_pos[v], e.positive)
                    for e in layout.incident(v)]
        if incident:
            cycles[v] = build_variable_cycle(v, layout.var_pos[v], incident, radius, config)
    gadgets = build_clause_segments(layout, cycles, shift, config)

    stabbers, targets, roles = [], [], []
    variables, where = [], {}
    for v in sorted(cycles):
        cycle = cycles[v]
        first, corner_first = len(stabbers), len(targets)
        stabbers.extend(cycle.segments)
        roles.extend(cycle.parities)
        targets.extend(cycle.corners)
        variables.append(VariableRecord(
            v, tuple(range(first, first + len(cycle.segments))), cycle.parities,
            tuple(range(corner_first, corner_first + len(cycle.corners))),
            tuple((first + a, first + b) for a, b in cycle.corner_pairs)))
        where[v] = first

    incidences, clauses, exempt = [], [], set()
    for c, clause in enumerate(cnf.clauses):
        target = len(targets)
        targets.append(gadgets.targets[c])
        indices = []
        for k, lit in enumerate(clause):
            indices.append(len(stabbers))
            stabbers.append(gadgets.segments[(c, k)])
            roles.append(CLAUSE)
            side = cycles[lit.var].assigned[(c, k)]
            incidences.append(IncidenceRecord(c, k, lit.var, lit.positive, indices[-1],
                                              where[lit.var] + side, cycles[lit.var].parities[side]))
        if len(clause) == 1:
            exempt.add(target)
        clauses.append(ClauseRecord(c, tuple(indices), target, len(clause) == 1))

    instance = CdsInstance(tuple(stabbers), tuple(targets), frozenset(exempt), tuple(roles))
    certificate = GadgetCertificate(cnf, tuple(variables), tuple(incidences), tuple(clauses),
                                    layout.scale, radius, shift, len(stabbers), len(targets))
    defects = validate_instance(instance) + check_certificate(certificate, instance)
    if defects:
        raise CrossingAudit('compiled instance fails its own audit', defects)
    logger.info('compiled {} variables / {} clauses into {} stabbers and {} targets'.format(
        cnf.num_vars, cnf.num_clauses, len(stabbers), len(targets)))
    return Compilation(layout, instance, certificate)


def compile_3sat_to_cds(cnf: Cnf3, hints: Optional[Dict[int, ClauseHint]] = None,
                        config: Optional[GadgetConfig] = None,
                        logger: Optional[logging.Logger] = None) -> Tuple[CdsInstance, GadgetCertificate]:
    compiled = compile_formula(cnf, hints, config, logger)
    return compiled.instance, compiled.certificate


def encode_assignment(cert: GadgetCertificate, assignment: Sequence[bool]) -> CdsSolution:
    """True variables take their even segments, false ones their odd segments."""
    failing = cert.cnf.failing_clauses(assignment)
    if failing:
        raise NotSatisfying('assignment fails clauses {}'.format(', '.join(str(c + 1) for c in failing)),
                            [{'code': 'failing-clause', 'clause': c} for c in failing])
    chosen = set()
    for record in cert.variables:
        chosen.update(record.of_parity(EVEN if assignment[record.var] else ODD))
    for c, clause in enumerate(cert.cnf.clauses):
        k = next(k for k, lit in enumerate(clause) if lit.holds(assignment))
        chosen.add(cert.incidence(c, k).clause_segment)
    return CdsSolution(frozenset(chosen))


def decode_solution(cert: GadgetCertificate, sol: CdsSolution) -> List[bool]:
    assignment = [False] * cert.cnf.num_vars
    for record in cert.variables:
        picked = set(record.segments) & sol.chosen
        if picked == set(record.of_parity(EVEN)):
            assignment[record.var] = True
        elif picked != set(record.of_parity(ODD)):
            raise MixedParity('cover mixes parities on the cycle of variable {}'.format(record.var + 1),
                              [{'code': 'mixed-parity', 'var': record.var, 'chosen': sorted(picked)}])
    failing = cert.cnf.failing_clauses(assignment)
    if failing:
        raise NotSatisfying('decoded assignment fails clauses {}'.format(', '.join(str(c + 1) for c in failing)),
                            [{'code': 'failing-clause', 'clause': c} for c in failing])
    return assignment
