# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""3-CNF formulas, DIMACS input and the layout hint comments.

Hint comment syntax, one per clause (clause ids are 1-based like DIMACS):

    c layout clause <id> side=<above|below> order=<v1,v2,...>

``order`` lists the clause's variables (1-based, unsigned) from left to right.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from errors import CnfParseError

SIDES = ('above', 'below')


class Literal(NamedTuple):
    var: int
    positive: bool

    def to_dimacs(self) -> int:
        return self.var + 1 if self.positive else -(self.var + 1)

    @classmethod
    def from_dimacs(cls, value: int) -> 'Literal':
        if value == 0:
            raise ValueError('0 is not a literal')
        return cls(abs(value) - 1, value > 0)

    def holds(self, assignment: Sequence[bool]) -> bool:
        return bool(assignment[self.var]) == self.positive


@dataclass(frozen=True)
class Cnf3:
    num_vars: int
    clauses: Tuple[Tuple[Literal, ...], ...] = ()

    def __post_init__(self):
        clauses = tuple(tuple(Literal.from_dimacs(l) if isinstance(l, int) else Literal(*l)
                              for l in clause) for clause in self.clauses)
        object.__setattr__(self, 'clauses', clauses)
        if self.num_vars < 0:
            raise ValueError('negative variable count')
        for k, clause in enumerate(clauses):
            if not 1 <= len(clause) <= 3:
                raise ValueError('clause {} has {} literals, expected 1 to 3'.format(k + 1, len(clause)))
            seen = [lit.var for lit in clause]
            if len(set(seen)) != len(seen):
                raise ValueError('clause {} repeats a variable'.format(k + 1))
            for lit in clause:
                if not 0 <= lit.var < self.num_vars:
                    raise ValueError('clause {} uses variable {} out of range'.format(k + 1, lit.var + 1))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def degree(self, var: int) -> int:
        return sum(1 for clause in self.clauses for lit in clause if lit.var == var)

    def failing_clauses(self, assignment: Sequence[bool]) -> List[int]:
        if len(assignment) != self.num_vars:
            raise ValueError('assignment has {} values for {} variables'.format(
                len(assignment), self.num_vars))
        return [k for k, clause in enumerate(self.clauses)
                if not any(lit.holds(assignment) for lit in clause)]

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return not self.failing_clauses(assignment)

    def to_dimacs(self, hints: Optional[Dict[int, 'ClauseHint']] = None) -> str:
        lines = ['p cnf {} {}'.format(self.num_vars, self.num_clauses)]
        for k in sorted(hints or {}):
            lines.append(hints[k].to_comment(k))
        for clause in self.clauses:
            lines.append(' '.join(str(lit.to_dimacs()) for lit in clause) + ' 0')
        return '\n'.join(lines) + '\n'

    def to_json(self):
        return {'num_vars': self.num_vars,
                'clauses': [[lit.to_dimacs() for lit in clause] for clause in self.clauses]}

    @classmethod
    def from_json(cls, payload) -> 'Cnf3':
        return cls(int(payload['num_vars']),
                   tuple(tuple(int(l) for l in clause) for clause in payload['clauses']))


@dataclass(frozen=True)
class ClauseHint:
    side: Optional[str] = None
    order: Tuple[int, ...] = field(default_factory=tuple)

    def to_comment(self, clause: int) -> str:
        parts = ['c layout clause {}'.format(clause + 1)]
        if self.side:
            parts.append('side={}'.format(self.side))
        if self.order:
            parts.append('order={}'.format(','.join(str(v + 1) for v in self.order)))
        return ' '.join(parts)


_HINT = re.compile(r'^c\s+layout\s+clause\s+(\d+)((?:\s+\w+=\S+)*)\s*$')


def _parse_hint(line: str, lineno: int):
    match = _HINT.match(line)
    if match is None:
        raise CnfParseError('line {}: malformed layout hint {!r}'.format(lineno, line))
    clause = int(match.group(1)) - 1
    side, order = None, ()
    for token in match.group(2).split():
        key, value = token.split('=', 1)
        if key == 'side':
            if value not in SIDES:
                raise CnfParseError('line {}: side must be above or below, got {!r}'.format(lineno, value))
            side = value
        elif key == 'order':
            try:
                order = tuple(int(v) - 1 for v in value.split(','))
            except ValueError:
                raise CnfParseError('line {}: order must list variable numbers'.format(lineno))
        else:
            raise CnfParseError('line {}: unknown hint key {!r}'.format(lineno, key))
    return clause, ClauseHint(side, order)


def parse_dimacs(text: str) -> Tuple[Cnf3, Dict[int, ClauseHint]]:
    """Parse DIMACS CNF text; returns the formula and the clause layout hints."""
    header = None
    hints = {}
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('%'):
            continue
        if line.startswith('c'):
            if re.match(r'^c\s+layout\b', line):
                clause, hint = _parse_hint(line, lineno)
                hints[clause] = hint
            continue
        if line.startswith('p'):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != 'cnf':
                raise CnfParseError('line {}: bad problem line {!r}'.format(lineno, line))
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfParseError('line {}: bad problem line {!r}'.format(lineno, line))
            continue
        if header is None:
            raise CnfParseError('line {}: clause before the problem line'.format(lineno))
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise CnfParseError('line {}: {!r} is not a literal'.format(lineno, token))
            if value == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(value)
    if header is None:
        raise CnfParseError('missing problem line "p cnf <vars> <clauses>"')
    if current:
        clauses.append(tuple(current))
    num_vars, num_clauses = header
    if len(clauses) != num_clauses:
        raise CnfParseError('problem line announces {} clauses, found {}'.format(num_clauses, len(clauses)))
    try:
        cnf = Cnf3(num_vars, tuple(clauses))
    except ValueError as err:
        raise CnfParseError(str(err))
    for clause, hint in hints.items():
        if not 0 <= clause < cnf.num_clauses:
            raise CnfParseError('layout hint for unknown clause {}'.format(clause + 1))
        if hint.order and sorted(hint.order) != sorted(lit.var for lit in cnf.clauses[clause]):
            raise CnfParseError('layout hint order for clause {} must list exactly its variables'.format(clause + 1))
    return cnf, hints


def read_dimacs(path: str) -> Tuple[Cnf3, Dict[int, ClauseHint]]:
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as err:
        raise CnfParseError('cannot read {}'.format(path),
                            [{'code': 'unreadable', 'message': str(err), 'path': path}])
    return parse_dimacs(text)
