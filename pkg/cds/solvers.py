# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Two independent CDS solvers.

``solve_bruteforce`` knows nothing about where an instance came from and is the
oracle. ``solve_structured`` only searches the covers a compiled instance can
have: one parity per variable cycle and one clause segment per clause.
"""
from __future__ import annotations

import itertools
from typing import Iterator, List, Optional

from cds.instance import CdsInstance, CdsSolution, verify_solution
from errors import CertificateMismatch, TooLarge
from reduction.certificate import EVEN, ODD, GadgetCertificate, check_certificate, incidences_by_clause

DEFAULT_CAP = 24
SUBSET_CAP = 12


def _first_uncovered(order, covering_masks, chosen):
    for t in order:
        if not covering_masks[t] & chosen:
            return t
    return None


def solve_bruteforce(inst: CdsInstance, cap: int = DEFAULT_CAP) -> Optional[CdsSolution]:
    """First cover in branch order: fewest-covered target first, stabbers by index."""
    if len(inst.stabbers) > cap:
        raise TooLarge('{} stabbers exceed the brute-force CDS cap of {}'.format(len(inst.stabbers), cap))
    order = sorted(range(len(inst.targets)), key=lambda t: (len(inst.coverage[t]), t))
    covering, conflicts = inst.covering_masks, inst.conflicts

    def recurse(chosen):
        t = _first_uncovered(order, covering, chosen)
        if t is None:
            return chosen
        for s in sorted(inst.coverage[t]):
            if conflicts[s] & chosen:
                continue
            found = recurse(chosen | 1 << s)
            if found is not None:
                return found
        return None

    found = recurse(0)
    if found is None:
        return None
    return CdsSolution(frozenset(s for s in range(len(inst.stabbers)) if found >> s & 1))


def all_covers(inst: CdsInstance, cap: int = SUBSET_CAP) -> Iterator[CdsSolution]:
    """Every valid cover, by plain subset enumeration."""
    n = len(inst.stabbers)
    if n > cap:
        raise TooLarge('{} stabbers exceed the subset enumeration cap of {}'.format(n, cap))
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            if verify_solution(inst, subset):
                yield CdsSolution(frozenset(subset))


def solve_structured(inst: CdsInstance, cert: GadgetCertificate) -> Optional[CdsSolution]:
    defects = check_certificate(cert, inst)
    if defects:
        raise CertificateMismatch('instance does not match its certificate', defects)
    grouped = incidences_by_clause(cert)
    conflicts = inst.conflicts

    # clause picks are pruned against the variable segments already chosen
    for parities in itertools.product((EVEN, ODD), repeat=len(cert.variables)):
        chosen = 0
        for record, parity in zip(cert.variables, parities):
            for s in record.of_parity(parity):
                chosen |= 1 << s
        if any(conflicts[s] & chosen for s in range(len(inst.stabbers)) if chosen >> s & 1):
            continue
        picks = []
        for clause in cert.clauses:
            options = [inc.clause_segment for inc in grouped.get(clause.clause, [])
                       if not conflicts[inc.clause_segment] & chosen]
            if not options:
                break
            picks.append(options)
        else:
            for combo in itertools.product(*picks):
                mask = chosen
                for s in combo:
                    mask |= 1 << s
                solution = CdsSolution(frozenset(s for s in range(len(inst.stabbers)) if mask >> s & 1))
                if verify_solution(inst, solution):
                    return solution
    return None


def parity_profile(cert: GadgetCertificate, sol: CdsSolution) -> List[Optional[str]]:
    """Per cycle, which parity class the cover picked; None for a mixed choice."""
    profile = []
    for record in cert.variables:
        picked = set(record.segments) & sol.chosen
        if picked == set(record.of_parity(EVEN)):
            profile.append(EVEN)
        elif picked == set(record.of_parity(ODD)):
            profile.append(ODD)
        else:
            profile.append(None)
    return profile
