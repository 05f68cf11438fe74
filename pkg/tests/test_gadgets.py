# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import itertools
import unittest
from fractions import Fraction

from cds.instance import CdsSolution, validate_instance
from cds.solvers import parity_profile, solve_bruteforce, solve_structured
from errors import CertificateMismatch, DegenerateDirections, MixedParity, NotSatisfying
from geometry.predicates import Point, segments_properly_cross
from harness.oracles import sat_bruteforce
from reduction.certificate import CLAUSE, EVEN, ODD, GadgetCertificate, check_certificate
from reduction.cnf import Cnf3, read_dimacs
from reduction.gadgets import (Incidence, build_variable_cycle, compile_3sat_to_cds, compile_formula,
                               decode_solution, encode_assignment)
from tests.testing import GeometryTestCase, instance_path


class _Figure(object):
    compiled = None

    @classmethod
    def get(cls):
        if cls.compiled is None:
            cnf, hints = read_dimacs(instance_path('fig1.cnf'))
            cls.compiled = compile_formula(cnf, hints)
        return cls.compiled


class TestFigureCompilation(GeometryTestCase):
    def setUp(self):
        self.compiled = _Figure.get()
        self.inst, self.cert = self.compiled.instance, self.compiled.certificate

    def test_counts(self):
        roles = self.inst.roles
        self.assertEqual(sum(1 for r in roles if r in (EVEN, ODD)), 18)
        self.assertEqual(roles.count(CLAUSE), 9)
        self.assertEqual(sum(len(r.corners) for r in self.cert.variables), 18)
        self.assertEqual(len(self.cert.clauses), 3)
        self.assertEqual(len(self.inst.targets), 21)

    def test_degree_three_cycle(self):
        record = self.cert.variable(1)
        self.assertEqual(len(record.segments), 6)
        self.assertEqual(len(record.corners), 6)
        self.assertEqual(len(record.of_parity(EVEN)), 3)
        self.assertEqual(len(record.of_parity(ODD)), 3)

    def test_audits(self):
        self.assertEqual(validate_instance(self.inst), [])
        self.assertEqual(check_certificate(self.cert, self.inst), [])

    def test_clause_targets_concurrent(self):
        for clause in self.cert.clauses:
            self.assertEqual(len(clause.segments), 3)
            self.assertEqual(self.inst.coverage[clause.target], frozenset(clause.segments))

    def test_every_model_encodes(self):
        cnf = self.cert.cnf
        for bits in itertools.product((False, True), repeat=cnf.num_vars):
            if not cnf.evaluate(bits):
                with self.assertRaises(NotSatisfying):
                    encode_assignment(self.cert, bits)
                continue
            sol = encode_assignment(self.cert, bits)
            self.assertValidCover(self.inst, sol.chosen)
            decoded = decode_solution(self.cert, sol)
            self.assertEqual(decoded, list(bits))
            self.assertEqual(parity_profile(self.cert, sol), [EVEN if b else ODD for b in bits])

    def test_structured_solver(self):
        sol = solve_structured(self.inst, self.cert)
        self.assertIsNotNone(sol)
        self.assertValidCover(self.inst, sol.chosen)
        self.assertTrue(self.cert.cnf.evaluate(decode_solution(self.cert, sol)))

    def test_mixed_parity(self):
        sol = encode_assignment(self.cert, sat_bruteforce(self.cert.cnf))
        record = self.cert.variable(1)
        chosen = set(sol.chosen)
        picked = sorted(chosen & set(record.segments))
        unpicked = sorted(set(record.segments) - chosen)
        chosen.discard(picked[0])
        chosen.add(unpicked[0])
        with self.assertRaises(MixedParity):
            decode_solution(self.cert, CdsSolution(frozenset(chosen)))

    def test_certificate_reload(self):
        payload = self.cert.to_json()
        self.assertEqual(payload['kind'], 'certificate')
        self.assertEqual(GadgetCertificate.from_json(payload), self.cert)

    def test_certificate_mismatch(self):
        _, other = compile_3sat_to_cds(Cnf3(1, ((1,),)))
        with self.assertRaises(CertificateMismatch):
            solve_structured(self.inst, other)


class TestSmallFormulas(GeometryTestCase):
    def test_unit_clause(self):
        compiled = compile_formula(Cnf3(1, ((1,),)))
        inst, cert = compiled.instance, compiled.certificate
        self.assertEqual(len(inst.stabbers), 3)
        self.assertEqual(inst.roles, (ODD, EVEN, CLAUSE))
        self.assertEqual(inst.exempt_targets, frozenset({1}))
        inc = cert.incidence(0, 0)
        self.assertEqual(inc.crossed_parity, ODD)
        self.assertIsNotNone(segments_properly_cross(inst.stabbers[inc.clause_segment],
                                                     inst.stabbers[inc.crossed_segment]))

        sol = encode_assignment(cert, [True])
        self.assertEqual(sol.chosen, frozenset({1, 2}))
        self.assertValidCover(inst, sol.chosen)
        with self.assertRaises(NotSatisfying):
            encode_assignment(cert, [False])
        self.assertEqual(decode_solution(cert, solve_bruteforce(inst)), [True])

    def test_positive_literals_cross_odd_segments(self):
        inst, cert = compile_3sat_to_cds(Cnf3(3, ((1, 2, 3), (1, 3))))
        for inc in cert.incidences:
            self.assertEqual(inc.crossed_parity, ODD)
            self.assertEqual(inst.roles[inc.crossed_segment], ODD)
            self.assertIsNotNone(segments_properly_cross(inst.stabbers[inc.clause_segment],
                                                         inst.stabbers[inc.crossed_segment]))

    def test_contradiction(self):
        cnf, hints = read_dimacs(instance_path('contradiction.cnf'))
        inst, cert = compile_3sat_to_cds(cnf, hints)
        self.assertEqual(len(cert.variable(0).segments), 4)
        self.assertIsNone(solve_structured(inst, cert))
        self.assertIsNone(solve_bruteforce(inst))

    def test_empty_formula(self):
        inst, cert = compile_3sat_to_cds(Cnf3(0))
        self.assertEqual(inst.stabbers, ())
        self.assertEqual(inst.targets, ())
        self.assertEqual(solve_structured(inst, cert).chosen, frozenset())

    def test_unused_variable_has_no_cycle(self):
        _, cert = compile_3sat_to_cds(Cnf3(2, ((2,),)))
        self.assertIsNone(cert.variable(0))
        self.assertIsNotNone(cert.variable(1))


class TestCycleBuilder(unittest.TestCase):
    def test_alternation(self):
        incidences = [Incidence((0, 0), Point.make(1, 1), True),
                      Incidence((1, 0), Point.make(-1, 1), True),
                      Incidence((2, 0), Point.make(0, -1), False)]
        cycle = build_variable_cycle(0, Point.make(0, 0), incidences, Fraction(4))
        self.assertEqual(len(cycle.segments), 6)
        m = len(cycle.parities)
        self.assertTrue(all(cycle.parities[k] != cycle.parities[(k + 1) % m] for k in range(m)))
        for inc in incidences:
            side = cycle.assigned[inc.key]
            self.assertEqual(cycle.parities[side], ODD if inc.positive else EVEN)
        self.assertTrue(all(p is not None for p in cycle.corners))

    def test_same_direction(self):
        incidences = [Incidence((0, 0), Point.make(1, 0), True),
                      Incidence((1, 0), Point.make(2, 0), False)]
        with self.assertRaises(DegenerateDirections):
            build_variable_cycle(0, Point.make(0, 0), incidences, Fraction(4))
