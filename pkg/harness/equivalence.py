# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""End-to-end agreement of SAT, CDS and triangulation feasibility for one formula."""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from functools import partial
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional

from tqdm import tqdm

from cds.instance import verify_solution
from cds.solvers import DEFAULT_CAP as CDS_CAP, solve_bruteforce, solve_structured
from errors import MaxMinError
from geometry.triangulation import DEFAULT_CAP as TRI_CAP, triangulation_exists_avoiding
from harness.oracles import SAT_CAP, random_small_planar_cnf, sat_bruteforce
from reduction.cnf import ClauseHint, Cnf3
from reduction.gadgets import compile_formula, decode_solution
from reduction.points import build_point_instance, decode_triangulation, separation_soundness_audit


@dataclass(frozen=True)
class EquivalenceReport:
    """Feasibility of one formula at every level of the reduction.

    ``cds_bruteforce`` and ``triangulation_feasible`` are None when the instance
    is beyond the respective cap; ``audit_ok`` is None when the point stage was
    skipped; ``decoded_ok`` is None when nothing was decoded.
    """
    formula: str
    sat: bool
    cds_feasible: bool
    cds_bruteforce: Optional[bool]
    triangulation_feasible: Optional[bool]
    audit_ok: Optional[bool]
    decoded_ok: Optional[bool]
    num_points: Optional[int]
    consistent: bool

    def to_json(self):
        payload = asdict(self)
        payload['kind'] = 'equivalence'
        return payload


def formula_id(cnf: Cnf3) -> str:
    clauses = ' & '.join('(' + ' '.join(str(lit.to_dimacs()) for lit in clause) + ')' for clause in cnf.clauses)
    return 'v{}: {}'.format(cnf.num_vars, clauses or 'true')


def _consistent(levels: List[Optional[bool]], *checks: Optional[bool]) -> bool:
    present = [level for level in levels if level is not None]
    return len(set(present)) <= 1 and all(check is not False for check in checks)


def end_to_end_check(cnf: Cnf3, hints: Optional[Dict[int, ClauseHint]] = None, name: Optional[str] = None,
                     tri_cap: int = TRI_CAP, cds_cap: int = CDS_CAP, sat_cap: int = SAT_CAP,
                     point_stage: bool = True, logger: Optional[logging.Logger] = None) -> EquivalenceReport:
    logger = logger or logging.getLogger('maxmin')
    name = name or formula_id(cnf)
    model = sat_bruteforce(cnf, sat_cap)

    compiled = compile_formula(cnf, hints, logger=logger)
    inst, cert = compiled.instance, compiled.certificate
    structured = solve_structured(inst, cert)
    decoded_ok = None
    if structured is not None:
        decoded_ok = cnf.evaluate(decode_solution(cert, structured))

    brute = None
    if len(inst.stabbers) <= cds_cap:
        cover = solve_bruteforce(inst, cds_cap)
        brute = cover is not None
        if cover is not None:
            try:
                decoded_ok = (decoded_ok is not False) and cnf.evaluate(decode_solution(cert, cover))
            except MaxMinError as err:
                logger.warning('{}: brute-force cover does not decode: {}'.format(name, err))
                decoded_ok = False

    audit_ok, triangulated, num_points = None, None, None
    if point_stage:
        perturbed, pi = build_point_instance(inst, cert, logger=logger)
        num_points = len(pi.points)
        violations = separation_soundness_audit(pi)
        audit_ok = not violations
        if violations:
            logger.warning('{}: {} foreign separators, first {}'.format(name, len(violations), violations[0]))
        if not pi.pairs:
            triangulated = True
        elif num_points <= tri_cap:
            witness = triangulation_exists_avoiding(pi.points, pi.short_edges(), tri_cap)
            triangulated = witness is not None
            if witness is not None:
                chosen = decode_triangulation(pi, witness.edges)
                ok = verify_solution(perturbed, chosen)
                decoded_ok = (decoded_ok is not False) and ok

    report = EquivalenceReport(name, model is not None, structured is not None, brute, triangulated,
                               audit_ok, decoded_ok, num_points,
                               _consistent([model is not None, structured is not None, brute, triangulated],
                                           audit_ok, decoded_ok))
    if not report.consistent:
        logger.warning('inconsistent report for {}: {}'.format(name, report))
    return report


def _check_seed(seed: int, tri_cap: int, cds_cap: int, point_stage: bool) -> EquivalenceReport:
    cnf = random_small_planar_cnf(seed)
    return end_to_end_check(cnf, name='seed {}: {}'.format(seed, formula_id(cnf)), tri_cap=tri_cap,
                            cds_cap=cds_cap, point_stage=point_stage)


def sweep_seeds(seeds, workers: int = 1, tri_cap: int = TRI_CAP, cds_cap: int = CDS_CAP,
                point_stage: bool = True, progress: bool = False) -> Iterator[EquivalenceReport]:
    """Reports for the random formulas of ``seeds``, yielded in seed order."""
    seeds = list(seeds)
    check = partial(_check_seed, tri_cap=tri_cap, cds_cap=cds_cap, point_stage=point_stage)
    if workers <= 1:
        results = map(check, seeds)
        for report in tqdm(results, total=len(seeds), disable=not progress):
            yield report
        return
    with Pool(workers) as pool:
        for report in tqdm(pool.imap(check, seeds), total=len(seeds), disable=not progress):
            yield report
