# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Provenance of a compiled CDS instance.

The certificate maps every stabber and target of a compiled instance back to the
formula: variable cycles with their parity labels and corners, the variable
segment each clause segment crosses, and the clause targets.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from errors import CertificateMismatch, InputError
from geometry.predicates import format_rational, point_on_segment, segments_conflict, segments_properly_cross
from reduction.cnf import Cnf3

EVEN, ODD = 'even', 'odd'
CLAUSE = 'clause'


def flip(parity: str) -> str:
    return ODD if parity == EVEN else EVEN


def parity_for(positive: bool) -> str:
    """Parity of the variable segment a literal's clause segment crosses."""
    return ODD if positive else EVEN


@dataclass(frozen=True)
class VariableRecord:
    var: int
    segments: Tuple[int, ...]
    parities: Tuple[str, ...]
    corners: Tuple[int, ...]
    corner_pairs: Tuple[Tuple[int, int], ...]

    def of_parity(self, parity: str) -> Tuple[int, ...]:
        return tuple(s for s, p in zip(self.segments, self.parities) if p == parity)

    def to_json(self):
        return {'var': self.var, 'segments': list(self.segments), 'parities': list(self.parities),
                'corners': list(self.corners), 'corner_pairs': [list(p) for p in self.corner_pairs]}

    @classmethod
    def from_json(cls, payload) -> 'VariableRecord':
        return cls(int(payload['var']), tuple(payload['segments']), tuple(payload['parities']),
                   tuple(payload['corners']), tuple(tuple(p) for p in payload['corner_pairs']))


@dataclass(frozen=True)
class IncidenceRecord:
    clause: int
    position: int
    var: int
    positive: bool
    clause_segment: int
    crossed_segment: int
    crossed_parity: str

    def to_json(self):
        return dict(self.__dict__)

    @classmethod
    def from_json(cls, payload) -> 'IncidenceRecord':
        return cls(int(payload['clause']), int(payload['position']), int(payload['var']),
                   bool(payload['positive']), int(payload['clause_segment']),
                   int(payload['crossed_segment']), str(payload['crossed_parity']))


@dataclass(frozen=True)
class ClauseRecord:
    clause: int
    segments: Tuple[int, ...]
    target: int
    exempt: bool

    def to_json(self):
        return {'clause': self.clause, 'segments': list(self.segments),
                'target': self.target, 'exempt': self.exempt}

    @classmethod
    def from_json(cls, payload) -> 'ClauseRecord':
        return cls(int(payload['clause']), tuple(payload['segments']),
                   int(payload['target']), bool(payload['exempt']))


@dataclass(frozen=True)
class GadgetCertificate:
    cnf: Cnf3
    variables: Tuple[VariableRecord, ...]
    incidences: Tuple[IncidenceRecord, ...]
    clauses: Tuple[ClauseRecord, ...]
    scale: Fraction
    radius: Fraction
    shift: Fraction
    num_stabbers: int
    num_targets: int

    def variable(self, var: int) -> Optional[VariableRecord]:
        for record in self.variables:
            if record.var == var:
                return record
        return None

    def incidence(self, clause: int, position: int) -> IncidenceRecord:
        for record in self.incidences:
            if record.clause == clause and record.position == position:
                return record
        raise KeyError((clause, position))

    def stabber_roles(self) -> Tuple[str, ...]:
        roles = [CLAUSE] * self.num_stabbers
        for record in self.variables:
            for s, parity in zip(record.segments, record.parities):
                roles[s] = parity
        return tuple(roles)

    def to_json(self):
        return {'kind': 'certificate',
                'cnf': self.cnf.to_json(),
                'variables': [r.to_json() for r in self.variables],
                'incidences': [r.to_json() for r in self.incidences],
                'clauses': [r.to_json() for r in self.clauses],
                'scale': format_rational(self.scale),
                'radius': format_rational(self.radius),
                'shift': format_rational(self.shift),
                'num_stabbers': self.num_stabbers,
                'num_targets': self.num_targets}

    @classmethod
    def from_json(cls, payload) -> 'GadgetCertificate':
        try:
            return cls(Cnf3.from_json(payload['cnf']),
                       tuple(VariableRecord.from_json(r) for r in payload['variables']),
                       tuple(IncidenceRecord.from_json(r) for r in payload['incidences']),
                       tuple(ClauseRecord.from_json(r) for r in payload['clauses']),
                       Fraction(payload['scale']), Fraction(payload['radius']),
                       Fraction(payload['shift']),
                       int(payload['num_stabbers']), int(payload['num_targets']))
        except (KeyError, ValueError, TypeError) as err:
            raise InputError('malformed certificate: {}'.format(err))


def _relation_defects(cert: GadgetCertificate, inst) -> List[dict]:
    defects = []
    stabbers, targets = inst.stabbers, inst.targets
    for record in cert.variables:
        if len(record.segments) != 2 * cert.cnf.degree(record.var):
            defects.append({'code': 'cycle-size', 'var': record.var})
        if len(record.of_parity(EVEN)) != len(record.of_parity(ODD)):
            defects.append({'code': 'unbalanced-parity', 'var': record.var})
        for corner, (a, b) in zip(record.corners, record.corner_pairs):
            point = segments_properly_cross(stabbers[a], stabbers[b])
            if point is None or point != targets[corner]:
                defects.append({'code': 'corner-lost', 'var': record.var, 'target': corner})
    for inc in cert.incidences:
        record = cert.variable(inc.var)
        if inc.crossed_parity != parity_for(inc.positive):
            defects.append({'code': 'literal-parity', 'clause': inc.clause, 'var': inc.var})
        if record is None or inc.crossed_segment not in record.segments:
            defects.append({'code': 'crossed-outside-cycle', 'clause': inc.clause, 'var': inc.var})
            continue
        if record.parities[record.segments.index(inc.crossed_segment)] != inc.crossed_parity:
            defects.append({'code': 'parity-label', 'clause': inc.clause, 'var': inc.var})
        clause_seg = stabbers[inc.clause_segment]
        if segments_properly_cross(clause_seg, stabbers[inc.crossed_segment]) is None:
            defects.append({'code': 'incidence-crossing-lost', 'clause': inc.clause, 'var': inc.var})
        for s in record.segments:
            if s != inc.crossed_segment and segments_conflict(clause_seg, stabbers[s]):
                defects.append({'code': 'stray-crossing', 'clause': inc.clause, 'var': inc.var,
                                'stabbers': [inc.clause_segment, s]})
    for clause in cert.clauses:
        for s in clause.segments:
            if not point_on_segment(targets[clause.target], stabbers[s]):
                defects.append({'code': 'clause-target-lost', 'clause': clause.clause, 'stabber': s})
    return defects


def check_certificate(cert: GadgetCertificate, inst) -> List[dict]:
    """Relations the certificate promises, re-checked on the instance coordinates."""
    if cert.num_stabbers != len(inst.stabbers) or cert.num_targets != len(inst.targets):
        raise CertificateMismatch('certificate describes {} stabbers and {} targets, instance has {} and {}'.format(
            cert.num_stabbers, cert.num_targets, len(inst.stabbers), len(inst.targets)))
    indices = [s for r in cert.variables for s in r.segments]
    indices += [s for r in cert.clauses for s in r.segments]
    if sorted(indices) != list(range(cert.num_stabbers)):
        raise CertificateMismatch('certificate does not partition the stabbers')
    return _relation_defects(cert, inst)


def incidences_by_clause(cert: GadgetCertificate) -> Dict[int, List[IncidenceRecord]]:
    grouped = {}
    for inc in cert.incidences:
        grouped.setdefault(inc.clause, []).append(inc)
    for group in grouped.values():
        group.sort(key=lambda inc: inc.position)
    return grouped
