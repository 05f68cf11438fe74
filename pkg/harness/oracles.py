# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Independent oracles and canned fixtures for the equivalence checks."""
from __future__ import annotations

import itertools
from typing import List, Optional, Tuple

import numpy as np

from cds.instance import CdsInstance
from errors import TooLarge
from geometry.predicates import Point, Segment
from geometry.triangulation import PointSet
from reduction.cnf import Cnf3
from reduction.points import PointInstance, build_point_instance

SAT_CAP = 20

# (x1 v x2 v -x3) & (-x2 v x3 v -x4) & (-x1 v x2 v x4)
FIGURE_FORMULA = Cnf3(4, ((1, 2, -3), (-2, 3, -4), (-1, 2, 4)))


def sat_bruteforce(cnf: Cnf3, cap: int = SAT_CAP) -> Optional[List[bool]]:
    """Lexicographically first model with False < True, or None."""
    if cnf.num_vars > cap:
        raise TooLarge('{} variables exceed the brute-force SAT cap of {}'.format(cnf.num_vars, cap))
    for bits in itertools.product((False, True), repeat=cnf.num_vars):
        if cnf.evaluate(bits):
            return list(bits)
    return None


def random_small_planar_cnf(seed: int, max_vars: int = 3, max_clauses: int = 2) -> Cnf3:
    if not 1 <= max_vars <= 3 or not 1 <= max_clauses <= 2:
        raise ValueError('generator limits are 1..3 variables and 1..2 clauses')
    rng = np.random.default_rng(seed)
    num_vars = int(rng.integers(1, max_vars + 1))
    clauses = []
    for _ in range(int(rng.integers(1, max_clauses + 1))):
        size = int(rng.integers(1, min(3, num_vars) + 1))
        chosen = sorted(int(v) for v in rng.choice(num_vars, size=size, replace=False))
        signs = rng.integers(0, 2, size=size)
        clauses.append(tuple(v + 1 if sign else -(v + 1) for v, sign in zip(chosen, signs)))
    return Cnf3(num_vars, tuple(clauses))


def x_instance() -> CdsInstance:
    """Two crossing diagonals and their crossing: feasible with one stabber."""
    return CdsInstance((Segment.make((0, 0), (4, 4)), Segment.make((0, 4), (4, 0))),
                       (Point.make(2, 2),))


def negative_gadget_cds() -> CdsInstance:
    """Three pairwise crossing stabbers with a target at every crossing; no disjoint cover exists."""
    return CdsInstance((Segment.make((-2, 0), (10, 0)),
                        Segment.make((9, -2), (3, 10)),
                        Segment.make((-1, -2), (5, 10))),
                       (Point.make(0, 0), Point.make(8, 0), Point.make(4, 8)))


def x_point_instance() -> PointInstance:
    return build_point_instance(x_instance())[1]


def negative_gadget_instance() -> PointInstance:
    """The three-crossing fixture with endpoints and split targets (12 points)."""
    return build_point_instance(negative_gadget_cds())[1]


def pair_core(pi: PointInstance) -> Tuple[PointSet, List[Tuple[int, int]]]:
    """Only the epsilon-pair points of an instance, with the pairs reindexed.

    Without stabber endpoints no segment reaches a target's neighbourhood from
    outside, so every triangulation of the core keeps all pair edges.
    """
    points, pairs = [], []
    for pair in pi.pairs:
        pairs.append((len(points), len(points) + 1))
        points.extend((pi.points[pair.t1], pi.points[pair.t2]))
    return PointSet(tuple(points)), pairs
