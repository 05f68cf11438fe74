# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

from cds.instance import CdsInstance, CdsSolution, validate_instance, verify_solution
from cds.solvers import all_covers, solve_bruteforce
from errors import InputError, TooLarge
from geometry.predicates import Point, Segment, segments_properly_cross
from harness.oracles import negative_gadget_cds, x_instance
from tests.testing import GeometryTestCase


class TestValidation(GeometryTestCase):
    def test_x_instance(self):
        inst = x_instance()
        self.assertEqual(validate_instance(inst), [])
        self.assertEqual(inst.coverage, (frozenset({0, 1}),))
        self.assertEqual(inst.conflicts, (0b10, 0b01))

    def test_uncovered_target(self):
        inst = CdsInstance(x_instance().stabbers, (Point.make(2, 2), Point.make(9, 9)))
        self.assertEqual([d['code'] for d in validate_instance(inst)], ['uncovered-by-construction'])

    def test_single_stabber_target(self):
        inst = CdsInstance(x_instance().stabbers, (Point.make(1, 1),))
        self.assertEqual([d['code'] for d in validate_instance(inst)], ['not an intersection point'])
        exempt = CdsInstance(x_instance().stabbers, (Point.make(1, 1),), frozenset({0}))
        self.assertEqual(validate_instance(exempt), [])

    def test_duplicate_target(self):
        inst = CdsInstance(x_instance().stabbers, (Point.make(2, 2), Point.make(2, 2)))
        self.assertIn('duplicate-target', [d['code'] for d in validate_instance(inst)])

    def test_json_reload(self):
        inst = x_instance()
        self.assertEqual(CdsInstance.from_json(inst.to_json()), inst)
        payload = inst.to_json()
        payload['coverage'] = [[0]]
        with self.assertRaises(InputError):
            CdsInstance.from_json(payload)


class TestSolutions(GeometryTestCase):
    def test_verify(self):
        inst = x_instance()
        self.assertTrue(verify_solution(inst, CdsSolution(frozenset({0}))))
        self.assertTrue(verify_solution(inst, {1}))
        self.assertFalse(verify_solution(inst, {0, 1}))
        self.assertFalse(verify_solution(inst, set()))
        with self.assertRaises(IndexError):
            verify_solution(inst, {5})

    def test_bruteforce(self):
        self.assertEqual(solve_bruteforce(x_instance()).chosen, frozenset({0}))
        self.assertIsNone(solve_bruteforce(negative_gadget_cds()))
        self.assertEqual(solve_bruteforce(CdsInstance()).chosen, frozenset())

    def test_negative_gadget_exhaustive(self):
        inst = negative_gadget_cds()
        self.assertEqual(validate_instance(inst), [])
        self.assertEqual(list(all_covers(inst)), [])

    def test_bruteforce_agrees_with_subsets(self):
        # a ladder: two rails crossed by three rungs
        rails = [Segment.make((0, 0), (10, 0)), Segment.make((0, 4), (10, 4))]
        rungs = [Segment.make((x, -1), (x + 1, 5)) for x in (1, 4, 7)]
        stabbers = tuple(rails + rungs)
        targets = []
        for rung in rungs:
            for rail in rails:
                targets.append(segments_properly_cross(rail, rung))
        inst = CdsInstance(stabbers, tuple(targets))
        covers = list(all_covers(inst))
        found = solve_bruteforce(inst)
        self.assertEqual(found is not None, bool(covers))
        if found is not None:
            self.assertValidCover(inst, found.chosen)

    def test_cap(self):
        with self.assertRaises(TooLarge):
            solve_bruteforce(x_instance(), cap=1)
