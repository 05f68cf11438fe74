# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import argparse
import os
import sys
import time
from fractions import Fraction

from errors import AuditFailed, MaxMinError
from geometry.predicates import format_rational
from metrics import averageMeter
from parser_options import parser_, relative_path_to_absolute_path
from reduction.cnf import read_dimacs
from reduction.gadgets import GadgetConfig, compile_formula
from reduction.points import build_point_instance, parse_gap_polynomial, separation_soundness_audit
from utils import get_logger, report_error, set_seed, write_json


def gadget_config(opt):
    return GadgetConfig(scale_k=opt.scale_k,
                        radius_factor=Fraction(opt.radius_factor),
                        shift_factor=Fraction(opt.shift_factor),
                        extension=Fraction(opt.extension),
                        direction_denominator=opt.direction_denominator)


def compile_cnf(opt, logger):
    """Write layout.json, cds.json, cert.json and (unless --no_points) points.json."""
    timer = averageMeter('stage time')
    written = {}

    start = time.time()
    cnf, hints = read_dimacs(opt.cnf)
    compiled = compile_formula(cnf, hints, gadget_config(opt), logger)
    timer.update(time.time() - start)
    written['layout'] = write_json(os.path.join(opt.out, 'layout.json'), compiled.layout.to_json())
    written['cds'] = write_json(os.path.join(opt.out, 'cds.json'), compiled.instance.to_json())
    written['certificate'] = write_json(os.path.join(opt.out, 'cert.json'), compiled.certificate.to_json())
    summary = 'compiled {}: {} stabbers, {} targets'.format(
        os.path.basename(opt.cnf), len(compiled.instance.stabbers), len(compiled.instance.targets))

    if not opt.no_points:
        start = time.time()
        gap = parse_gap_polynomial(opt.gap) if opt.gap else None
        _, pi = build_point_instance(compiled.instance, compiled.certificate, gap, opt.schedules, logger=logger)
        violations = separation_soundness_audit(pi)
        if violations:
            raise AuditFailed('separation soundness audit found {} foreign separators'.format(len(violations)),
                              violations)
        timer.update(time.time() - start)
        written['points'] = write_json(os.path.join(opt.out, 'points.json'), pi.to_json())
        summary += ', {} points'.format(len(pi.points))
        if pi.epsilon_sq is not None:
            summary += ', epsilon_sq={} delta_sq={}'.format(format_rational(pi.epsilon_sq),
                                                            format_rational(pi.delta_sq))

    print(summary)
    logger.info(summary)
    logger.info(timer.summary())
    return written


def run(argv=None):
    parser = argparse.ArgumentParser(description="compile a planar 3-CNF into CDS and point instances")
    parser = parser_(parser, 'compile')
    opt = parser.parse_args(argv)

    opt = relative_path_to_absolute_path(opt)
    logger = get_logger(opt.logdir)
    set_seed(opt)
    try:
        compile_cnf(opt, logger)
    except MaxMinError as err:
        return report_error(err, logger)
    return 0


if __name__ == "__main__":
    sys.exit(run())
