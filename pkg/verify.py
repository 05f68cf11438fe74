# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import argparse
import json
import os
import sys
import time

from errors import InputError, MaxMinError
from harness.equivalence import end_to_end_check, sweep_seeds
from metrics import averageMeter, runningConsistency
from parser_options import parser_, relative_path_to_absolute_path
from reduction.cnf import read_dimacs
from utils import get_logger, report_error, set_seed


def _reports(opt, logger):
    point_stage = not opt.no_points
    if opt.cnf:
        cnf, hints = read_dimacs(opt.cnf)
        yield end_to_end_check(cnf, hints, name=os.path.basename(opt.cnf), tri_cap=opt.tri_cap,
                               cds_cap=opt.cds_cap, sat_cap=opt.sat_cap, point_stage=point_stage,
                               logger=logger)
    if opt.seeds:
        seeds = range(opt.first_seed, opt.first_seed + opt.seeds)
        for report in sweep_seeds(seeds, opt.num_workers, opt.tri_cap, opt.cds_cap, point_stage,
                                  progress=not opt.quiet):
            yield report


def verify(opt, logger):
    """JSON-lines reports; returns the tally."""
    if not opt.cnf and not opt.seeds:
        raise InputError('give a DIMACS file or --seeds N')
    running = runningConsistency()
    timer = averageMeter('time per report')
    out = open(opt.out, 'w') if opt.out else sys.stdout
    try:
        start = time.perf_counter()
        for report in _reports(opt, logger):
            timer.update(time.perf_counter() - start)
            running.update(report)
            out.write(json.dumps(report.to_json(), sort_keys=True) + '\n')
            start = time.perf_counter()
    finally:
        if out is not sys.stdout:
            out.close()
    for k, v in running.get_scores().items():
        logger.info('{}: {}'.format(k, v))
    logger.info(timer.summary())
    for name in running.failures:
        logger.warning('inconsistent: {}'.format(name))
    return running


def run(argv=None):
    parser = argparse.ArgumentParser(description="check SAT, CDS and triangulation feasibility agree")
    parser = parser_(parser, 'verify')
    opt = parser.parse_args(argv)

    opt = relative_path_to_absolute_path(opt)
    logger = get_logger(opt.logdir)
    set_seed(opt)
    try:
        running = verify(opt, logger)
    except MaxMinError as err:
        return report_error(err, logger)
    print('{} of {} reports consistent'.format(running.consistent, running.total), file=sys.stderr)
    return 0 if running.all_consistent else 1


if __name__ == "__main__":
    sys.exit(run())
