# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import json

import pytest

from cds.solvers import solve_bruteforce
from errors import TooLarge
from geometry.triangulation import Edge, enumerate_triangulations, maxmin_triangulation, triangulation_exists_avoiding
from harness.equivalence import EquivalenceReport, end_to_end_check, formula_id, sweep_seeds
from harness.oracles import (FIGURE_FORMULA, negative_gadget_cds, negative_gadget_instance, pair_core,
                             random_small_planar_cnf, sat_bruteforce, x_point_instance)
from metrics import averageMeter, runningConsistency
from reduction.cnf import Cnf3, read_dimacs
from tests.testing import GeometryTestCase, instance_path


class TestOracles(GeometryTestCase):
    def test_sat_bruteforce(self):
        model = sat_bruteforce(FIGURE_FORMULA)
        self.assertEqual(model, [False] * 4)
        self.assertTrue(FIGURE_FORMULA.evaluate(model))
        self.assertIsNone(sat_bruteforce(Cnf3(1, ((1,), (-1,)))))
        self.assertEqual(sat_bruteforce(Cnf3(0)), [])
        with self.assertRaises(TooLarge):
            sat_bruteforce(FIGURE_FORMULA, cap=3)

    def test_random_formulas_are_stable(self):
        self.assertEqual(random_small_planar_cnf(0), random_small_planar_cnf(0))
        for seed in range(50):
            cnf = random_small_planar_cnf(seed)
            self.assertTrue(1 <= cnf.num_vars <= 3)
            self.assertTrue(1 <= cnf.num_clauses <= 2)

    def test_formula_id(self):
        self.assertEqual(formula_id(Cnf3(2, ((1, -2), (2,)))), 'v2: (1 -2) & (2)')
        self.assertEqual(formula_id(Cnf3(0)), 'v0: true')


class TestEquivalence(GeometryTestCase):
    def test_unit_clause(self):
        report = end_to_end_check(Cnf3(1, ((1,),)))
        self.assertEqual((report.sat, report.cds_feasible, report.cds_bruteforce, report.triangulation_feasible),
                         (True, True, True, True))
        self.assertTrue(report.audit_ok)
        self.assertTrue(report.decoded_ok)
        self.assertEqual(report.num_points, 10)
        self.assertTrue(report.consistent)

    def test_contradiction(self):
        cnf, hints = read_dimacs(instance_path('contradiction.cnf'))
        report = end_to_end_check(cnf, hints)
        self.assertEqual((report.sat, report.cds_feasible, report.cds_bruteforce), (False, False, False))
        self.assertIsNone(report.triangulation_feasible)
        self.assertIsNone(report.decoded_ok)
        self.assertTrue(report.audit_ok)
        self.assertTrue(report.consistent)

    def test_figure_without_points(self):
        cnf, hints = read_dimacs(instance_path('fig1.cnf'))
        report = end_to_end_check(cnf, hints, point_stage=False)
        self.assertTrue(report.sat)
        self.assertTrue(report.cds_feasible)
        self.assertIsNone(report.cds_bruteforce)
        self.assertIsNone(report.triangulation_feasible)
        self.assertIsNone(report.audit_ok)
        self.assertTrue(report.consistent)

    @pytest.mark.slow
    def test_figure_with_points(self):
        cnf, hints = read_dimacs(instance_path('fig1.cnf'))
        report = end_to_end_check(cnf, hints)
        self.assertTrue(report.audit_ok)
        self.assertIsNone(report.triangulation_feasible)
        self.assertGreater(report.num_points, 12)
        self.assertTrue(report.consistent)

    def test_empty_formula(self):
        report = end_to_end_check(Cnf3(0))
        self.assertTrue(report.sat and report.cds_feasible and report.cds_bruteforce)
        self.assertTrue(report.triangulation_feasible)
        self.assertEqual(report.num_points, 0)
        self.assertTrue(report.consistent)

    def test_report_json(self):
        payload = end_to_end_check(Cnf3(1, ((1,),)), point_stage=False).to_json()
        self.assertEqual(payload['kind'], 'equivalence')
        self.assertEqual(payload['formula'], 'v1: (1)')
        self.assertIsNone(payload['num_points'])

    def test_inconsistency_is_flagged(self):
        running = runningConsistency()
        good = EquivalenceReport('a', True, True, True, True, True, True, 10, True)
        bad = EquivalenceReport('b', True, False, None, None, None, None, None, False)
        running.update(good)
        running.update(bad)
        self.assertFalse(running.all_consistent)
        self.assertEqual(running.failures, ['b'])
        self.assertEqual(running.get_scores()['Inconsistent : \t'], 1)


class TestMeters(GeometryTestCase):
    def test_duration_meter(self):
        meter = averageMeter('time per report')
        self.assertEqual(meter.avg, 0.0)
        for seconds in (0.5, 1.5, 1.0):
            meter.update(seconds)
        self.assertEqual((meter.count, meter.avg, meter.worst), (3, 1.0, 1.5))
        self.assertEqual(meter.summary(), 'time per report: avg 1.000s, max 1.500s over 3')
        meter.reset()
        self.assertEqual(meter.count, 0)


class TestFixtures(GeometryTestCase):
    def test_x_fixture_avoids_its_pair(self):
        pi = x_point_instance()
        result = maxmin_triangulation(pi.points)
        self.assertGreater(result.optimum_sq, pi.epsilon_sq)
        self.assertFalse(set(pi.pair_edges()) & result.witness.edges)

    def test_negative_fixture_has_no_cover(self):
        self.assertIsNone(solve_bruteforce(negative_gadget_cds()))
        pi = negative_gadget_instance()
        self.assertEqual(len(pi.points), 12)
        self.assertEqual(len(pi.pairs), 3)

    def test_pair_core_keeps_every_pair(self):
        pi = negative_gadget_instance()
        core, pairs = pair_core(pi)
        self.assertEqual(len(core), 6)
        pair_edges = {Edge(a, b) for a, b in pairs}
        for t in enumerate_triangulations(core):
            self.assertTrue(pair_edges <= t.edges)
        self.assertLessEqual(maxmin_triangulation(core).optimum_sq, 2 * pi.epsilon_sq)

    @pytest.mark.slow
    def test_negative_fixture_needs_compiled_geometry(self):
        """Without the clause structure around it, one full stabber plus a partial edge
        along a second one already separates all three pairs, so the point level alone
        does not inherit the infeasibility of the bare three-crossing instance."""
        pi = negative_gadget_instance()
        witness = triangulation_exists_avoiding(pi.points, pi.short_edges())
        self.assertIsNotNone(witness)
        self.assertFalse(set(pi.pair_edges()) & witness.edges)


class TestSweep(GeometryTestCase):
    def test_first_seeds(self):
        reports = list(sweep_seeds(range(20)))
        self.assertEqual(len(reports), 20)
        self.assertTrue(all(r.formula.startswith('seed {}:'.format(k)) for k, r in enumerate(reports)))
        self.assertTrue(all(r.consistent for r in reports), [r for r in reports if not r.consistent])

    def test_reports_are_reproducible(self):
        def lines():
            return [json.dumps(r.to_json(), sort_keys=True) for r in sweep_seeds(range(8))]
        self.assertEqual(lines(), lines())
        pooled = [json.dumps(r.to_json(), sort_keys=True) for r in sweep_seeds(range(8), workers=2)]
        self.assertEqual(pooled, lines())

    @pytest.mark.slow
    def test_thousand_seeds(self):
        running = runningConsistency()
        for report in sweep_seeds(range(1000), workers=2, point_stage=False):
            running.update(report)
        self.assertEqual(running.total, 1000)
        self.assertEqual(running.audited, 0)
        self.assertTrue(running.all_consistent, running.failures)

    @pytest.mark.slow
    def test_point_stage_seeds(self):
        running = runningConsistency()
        for report in sweep_seeds(range(100), workers=2):
            running.update(report)
        self.assertEqual(running.audited, 100)
        self.assertTrue(running.all_consistent, running.failures)
