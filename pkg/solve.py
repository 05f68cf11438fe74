# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import argparse
import os
import sys

from cds.instance import CdsInstance
from cds.solvers import solve_bruteforce, solve_structured
from data import load_artifact
from errors import AuditFailed, InputError, MaxMinError
from geometry.predicates import format_rational
from geometry.triangulation import (PointSet, count_convex_triangulations, convex_hull, enumerate_triangulations,
                                    separation_edge_audit, maxmin_triangulation)
from harness.oracles import sat_bruteforce
from parser_options import parser_, relative_path_to_absolute_path
from reduction.cnf import read_dimacs
from reduction.points import PointInstance
from utils import get_logger, report_error, set_seed, write_json

MODES = ('cds', 'maxmin', 'sat', 'count')


def _point_set(artifact):
    if isinstance(artifact, PointInstance):
        return artifact.points
    if isinstance(artifact, PointSet):
        return artifact
    raise InputError('expected a points or pointset artifact, got {}'.format(type(artifact).__name__))


def solve_cds(opt, logger):
    inst = load_artifact(opt.instance)
    if not isinstance(inst, CdsInstance):
        raise InputError('expected a cds artifact, got {}'.format(type(inst).__name__))
    if opt.certificate:
        sol = solve_structured(inst, load_artifact(opt.certificate))
    else:
        sol = solve_bruteforce(inst, opt.cds_cap)
    if sol is None:
        return {'kind': 'cds_solution', 'status': 'infeasible', 'chosen': []}, 'cds: infeasible'
    payload = sol.to_json()
    payload['status'] = 'feasible'
    return payload, 'cds: cover of size {}: {}'.format(len(sol.chosen), sorted(sol.chosen))


def solve_maxmin(opt, logger):
    ps = _point_set(load_artifact(opt.instance))
    result = maxmin_triangulation(ps, opt.tri_cap)
    if opt.audit:
        violations = separation_edge_audit(result.witness)
        if violations:
            raise AuditFailed('edge separation check fails on the witness',
                              [dict(v._asdict()) for v in violations])
        logger.info('witness passes the separation audit')
    return result.to_json(), 'maxmin: optimum_sq {}'.format(format_rational(result.optimum_sq))


def solve_sat(opt, logger):
    cnf, _ = read_dimacs(opt.instance)
    model = sat_bruteforce(cnf, opt.sat_cap)
    payload = {'kind': 'sat_solution', 'assignment': model}
    if model is None:
        return payload, 'sat: unsatisfiable'
    return payload, 'sat: {}'.format(' '.join(str(v + 1 if value else -(v + 1)) for v, value in enumerate(model)))


def count_triangulations(opt, logger):
    """Enumerate and count; for points in convex position also report the Catalan check."""
    ps = _point_set(load_artifact(opt.instance))
    found = enumerate_triangulations(ps, opt.enum_limit, opt.tri_cap)
    summary = 'count: {} triangulations'.format(len(found))
    if len(convex_hull(ps)) == len(ps):
        summary += ' (convex position, dynamic program gives {})'.format(count_convex_triangulations(len(ps)))
    return None, summary


SOLVERS = {'cds': solve_cds, 'maxmin': solve_maxmin, 'sat': solve_sat, 'count': count_triangulations}


def solve(opt, logger):
    if opt.mode not in SOLVERS:
        raise InputError('unknown mode {}, expected one of {}'.format(opt.mode, '|'.join(MODES)))
    payload, summary = SOLVERS[opt.mode](opt, logger)
    if payload is not None:
        out = opt.out or os.path.splitext(opt.instance)[0] + '.{}.json'.format(opt.mode)
        write_json(out, payload)
        logger.info('wrote {}'.format(out))
    print(summary)
    logger.info(summary)
    return payload


def run(argv=None):
    parser = argparse.ArgumentParser(description="solve a cds, maxmin or sat instance")
    parser = parser_(parser, 'solve')
    opt = parser.parse_args(argv)

    opt = relative_path_to_absolute_path(opt)
    logger = get_logger(opt.logdir)
    set_seed(opt)
    try:
        solve(opt, logger)
    except MaxMinError as err:
        return report_error(err, logger)
    return 0


if __name__ == "__main__":
    sys.exit(run())
