# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Covering by Disjoint Segments: instances, solutions and their validation.

An instance is a list of segments (stabbers) and a list of points (targets) each
lying on some of the stabbers. A solution picks pairwise disjoint stabbers that
together contain every target.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, List, Optional, Tuple

from errors import InputError
from geometry.predicates import (Point, Segment, line_intersection, point_on_segment,
                                 segments_conflict)


def coverage_of(stabbers, targets) -> Tuple[FrozenSet[int], ...]:
    return tuple(frozenset(s for s, seg in enumerate(stabbers) if point_on_segment(t, seg))
                 for t in targets)


def defect(code, message, **where):
    entry = {'code': code, 'message': message}
    entry.update(where)
    return entry


@dataclass(frozen=True)
class CdsInstance:
    """Stabbers and targets. ``exempt_targets`` may lie on a single stabber."""
    stabbers: Tuple[Segment, ...] = ()
    targets: Tuple[Point, ...] = ()
    exempt_targets: FrozenSet[int] = frozenset()
    roles: Optional[Tuple[str, ...]] = None
    coverage: Tuple[FrozenSet[int], ...] = field(default=None, compare=False)

    def __post_init__(self):
        stabbers = tuple(s if isinstance(s, Segment) else Segment.make(*s) for s in self.stabbers)
        targets = tuple(t if isinstance(t, Point) else Point.make(*t) for t in self.targets)
        object.__setattr__(self, 'stabbers', stabbers)
        object.__setattr__(self, 'targets', targets)
        object.__setattr__(self, 'exempt_targets', frozenset(self.exempt_targets))
        if self.roles is not None:
            if len(self.roles) != len(stabbers):
                raise ValueError('{} roles for {} stabbers'.format(len(self.roles), len(stabbers)))
            object.__setattr__(self, 'roles', tuple(self.roles))
        if self.coverage is None:
            object.__setattr__(self, 'coverage', coverage_of(stabbers, targets))

    @cached_property
    def conflicts(self) -> Tuple[int, ...]:
        """Bitmask per stabber of the other stabbers it touches."""
        masks = [0] * len(self.stabbers)
        for a in range(len(self.stabbers)):
            for b in range(a + 1, len(self.stabbers)):
                if segments_conflict(self.stabbers[a], self.stabbers[b]):
                    masks[a] |= 1 << b
                    masks[b] |= 1 << a
        return tuple(masks)

    @cached_property
    def covering_masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << s for s in cover) for cover in self.coverage)

    def targets_of(self, s: int) -> List[int]:
        return [t for t, cover in enumerate(self.coverage) if s in cover]

    def to_json(self):
        payload = {'kind': 'cds',
                   'stabbers': [s.to_json() for s in self.stabbers],
                   'targets': [t.to_json() for t in self.targets]}
        if self.exempt_targets:
            payload['exempt_targets'] = sorted(self.exempt_targets)
        if self.roles is not None:
            payload['roles'] = list(self.roles)
        return payload

    @classmethod
    def from_json(cls, payload) -> 'CdsInstance':
        """Coverage is recomputed from the coordinates; a stored copy must agree."""
        try:
            inst = cls(tuple(Segment.from_json(s) for s in payload.get('stabbers', [])),
                       tuple(Point.from_json(t) for t in payload.get('targets', [])),
                       frozenset(int(t) for t in payload.get('exempt_targets', [])),
                       payload.get('roles'))
        except (ValueError, TypeError, IndexError) as err:
            raise InputError('malformed CDS instance: {}'.format(err))
        if 'coverage' in payload:
            stored = tuple(frozenset(int(s) for s in cover) for cover in payload['coverage'])
            if stored != inst.coverage:
                raise InputError('stored coverage disagrees with the coordinates')
        defects = validate_instance(inst)
        if defects:
            raise InputError('invalid CDS instance', defects)
        return inst


@dataclass(frozen=True)
class CdsSolution:
    chosen: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'chosen', frozenset(int(s) for s in self.chosen))

    def to_json(self):
        return {'kind': 'cds_solution', 'chosen': sorted(self.chosen)}

    @classmethod
    def from_json(cls, payload) -> 'CdsSolution':
        return cls(frozenset(payload['chosen']))


def _is_intersection_point(inst: CdsInstance, t: int) -> bool:
    """Some two covering stabbers have distinct carrier lines, so t is their meeting point."""
    cover = sorted(inst.coverage[t])
    for a in range(len(cover)):
        for b in range(a + 1, len(cover)):
            if line_intersection(inst.stabbers[cover[a]], inst.stabbers[cover[b]]) is not None:
                return True
    return False


def validate_instance(inst: CdsInstance) -> List[dict]:
    defects = []
    seen = {}
    for t, point in enumerate(inst.targets):
        if point in seen:
            defects.append(defect('duplicate-target',
                                  'target {} repeats target {}'.format(t, seen[point]), target=t))
        seen.setdefault(point, t)
    for t in sorted(inst.exempt_targets):
        if not 0 <= t < len(inst.targets):
            defects.append(defect('exempt-out-of-range',
                                  'exempt target {} does not exist'.format(t), target=t))
    expected = coverage_of(inst.stabbers, inst.targets)
    for t, cover in enumerate(inst.coverage):
        if cover != expected[t]:
            defects.append(defect('coverage-mismatch',
                                  'coverage of target {} disagrees with the coordinates'.format(t),
                                  target=t))
            continue
        if not cover:
            defects.append(defect('uncovered-by-construction',
                                  'target {} lies on no stabber'.format(t), target=t))
        elif t in inst.exempt_targets:
            continue
        elif len(cover) == 1 or not _is_intersection_point(inst, t):
            defects.append(defect('not an intersection point',
                                  'target {} is not a crossing of two stabbers'.format(t),
                                  target=t, stabbers=sorted(cover)))
    return defects


def verify_solution(inst: CdsInstance, sol) -> bool:
    chosen = sol.chosen if isinstance(sol, CdsSolution) else frozenset(sol)
    if any(not 0 <= s < len(inst.stabbers) for s in chosen):
        raise IndexError('solution names a stabber outside the instance')
    mask = sum(1 << s for s in chosen)
    if any(inst.conflicts[s] & mask for s in chosen):
        return False
    return all(cover & mask for cover in inst.covering_masks)

