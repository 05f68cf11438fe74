# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import json
import os
import re
import shutil
import tempfile
import unittest
from fractions import Fraction

import compile_cnf
import main
import render
import solve
import verify
from cds.instance import CdsInstance
from data import create_artifact, load_artifact
from errors import InputError, UnknownArtifact
from harness.oracles import negative_gadget_cds
from reduction.certificate import GadgetCertificate
from reduction.layout import IncidenceLayout
from reduction.points import PointInstance
from tests.testing import instance_path
from utils import read_json, write_json


def gid_count(svg, pattern):
    return len(re.findall(r'<g id="{}"'.format(pattern), svg))


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.root = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.root, ignore_errors=True)

    def path(self, *parts):
        return os.path.join(self.root, *parts)

    def common(self):
        return ['--root', self.root, '--quiet']


class TestCompile(CliTestCase):
    def test_figure_artifacts(self):
        code = compile_cnf.run([instance_path('fig1.cnf'), '--out', self.path('fig1')] + self.common())
        self.assertEqual(code, 0)
        for name in ('layout.json', 'cds.json', 'cert.json', 'points.json'):
            self.assertTrue(os.path.exists(self.path('fig1', name)), name)
        self.assertIsInstance(load_artifact(self.path('fig1', 'layout.json')), IncidenceLayout)
        self.assertIsInstance(load_artifact(self.path('fig1', 'cert.json')), GadgetCertificate)
        inst = load_artifact(self.path('fig1', 'cds.json'))
        self.assertEqual(len(inst.stabbers), 27)
        self.assertEqual(len(inst.targets), 21)
        pi = load_artifact(self.path('fig1', 'points.json'))
        self.assertEqual(len(pi.pairs), 21)
        self.assertTrue(os.listdir(self.path('logs', 'maxmin')))

    def test_gap_instance(self):
        code = compile_cnf.run([instance_path('unit.cnf'), '--out', self.path('unit'), '--gap', 'n^2'] + self.common())
        self.assertEqual(code, 0)
        payload = read_json(self.path('unit', 'points.json'))
        n = payload['n']
        self.assertEqual(payload['gap_poly'], 'n^2')
        self.assertGreater(Fraction(payload['delta_sq']) / Fraction(payload['epsilon_sq']), n ** 4)
        self.assertIsInstance(load_artifact(self.path('unit', 'points.json')), PointInstance)

    def test_malformed_dimacs(self):
        bad = self.path('bad.cnf')
        with open(bad, 'w') as f:
            f.write('p cnf 2 1\n1 x 0\n')
        self.assertEqual(compile_cnf.run([bad, '--out', self.path('bad')] + self.common()), 2)
        self.assertFalse(os.path.exists(self.path('bad', 'cds.json')))

    def test_undecodable_dimacs(self):
        bad = self.path('binary.cnf')
        with open(bad, 'wb') as f:
            f.write(b'p cnf 1 1\n\xff\xfe 0\n')
        self.assertEqual(compile_cnf.run([bad, '--out', self.path('binary')] + self.common()), 2)
        self.assertEqual(verify.run([bad, '--out', self.path('binary.jsonl')] + self.common()), 2)
        missing = self.path('missing.cnf')
        self.assertEqual(compile_cnf.run([missing] + self.common()), 2)
        self.assertEqual(solve.run([missing, '--mode', 'sat', '--out', self.path('m.json')] + self.common()), 2)

    def test_forced_crossing(self):
        bad = self.path('crossing.cnf')
        with open(bad, 'w') as f:
            f.write('p cnf 4 2\nc layout clause 1 side=above\nc layout clause 2 side=above\n1 3 0\n2 4 0\n')
        self.assertEqual(compile_cnf.run([bad] + self.common()), 3)


class TestSolve(CliTestCase):
    def test_maxmin_square(self):
        out = self.path('square.maxmin.json')
        self.assertEqual(solve.run([instance_path('square.json'), '--mode', 'maxmin', '--audit', '--out', out]
                                   + self.common()), 0)
        payload = read_json(out)
        self.assertEqual(payload['optimum_sq'], '1/1')
        self.assertEqual(load_artifact(out).optimum_sq, 1)

    def test_cds_x(self):
        out = self.path('x.sol.json')
        self.assertEqual(solve.run([instance_path('x.json'), '--out', out] + self.common()), 0)
        payload = read_json(out)
        self.assertEqual(payload['chosen'], [0])
        self.assertEqual(payload['status'], 'feasible')
        self.assertEqual(load_artifact(out).chosen, frozenset({0}))

    def test_cds_negative(self):
        src = write_json(self.path('negative.json'), negative_gadget_cds().to_json())
        self.assertEqual(solve.run([src] + self.common()), 0)
        payload = read_json(self.path('negative.cds.json'))
        self.assertEqual(payload['status'], 'infeasible')
        self.assertIsNone(load_artifact(self.path('negative.cds.json')))

    def test_structured_with_certificate(self):
        compile_cnf.run([instance_path('fig1.cnf'), '--out', self.path('fig1'), '--no_points'] + self.common())
        out = self.path('fig1', 'sol.json')
        code = solve.run([self.path('fig1', 'cds.json'), '--certificate', self.path('fig1', 'cert.json'),
                          '--out', out] + self.common())
        self.assertEqual(code, 0)
        self.assertEqual(read_json(out)['status'], 'feasible')

    def test_sat(self):
        out = self.path('fig1.sat.json')
        self.assertEqual(solve.run([instance_path('fig1.cnf'), '--mode', 'sat', '--out', out] + self.common()), 0)
        self.assertEqual(load_artifact(out), [False] * 4)

    def test_count_and_errors(self):
        self.assertEqual(solve.run([instance_path('square.json'), '--mode', 'count'] + self.common()), 0)
        self.assertEqual(solve.run([instance_path('square.json'), '--mode', 'nope'] + self.common()), 6)
        self.assertEqual(solve.run([instance_path('square.json'), '--mode', 'maxmin', '--tri_cap', '3',
                                    '--out', self.path('capped.json')] + self.common()), 5)
        self.assertEqual(solve.run([instance_path('x.json'), '--mode', 'maxmin'] + self.common()), 6)


class TestVerify(CliTestCase):
    def test_unit_clause(self):
        out = self.path('report.jsonl')
        self.assertEqual(verify.run([instance_path('unit.cnf'), '--out', out] + self.common()), 0)
        with open(out) as f:
            reports = [json.loads(line) for line in f]
        self.assertEqual(len(reports), 1)
        self.assertTrue(reports[0]['consistent'])
        self.assertTrue(reports[0]['triangulation_feasible'])

    def test_unsatisfiable(self):
        out = self.path('report.jsonl')
        self.assertEqual(verify.run([instance_path('contradiction.cnf'), '--out', out] + self.common()), 0)
        with open(out) as f:
            report = json.loads(f.readline())
        self.assertFalse(report['sat'])
        self.assertFalse(report['cds_feasible'])
        self.assertTrue(report['consistent'])

    def test_seeds(self):
        out = self.path('seeds.jsonl')
        self.assertEqual(verify.run(['--seeds', '10', '--out', out] + self.common()), 0)
        with open(out) as f:
            self.assertEqual(sum(1 for _ in f), 10)

    def test_nothing_to_check(self):
        self.assertEqual(verify.run(self.common()), 6)


class TestRender(CliTestCase):
    def compile_figure(self):
        compile_cnf.run([instance_path('fig1.cnf'), '--out', self.path('fig1'), '--no_points'] + self.common())

    def test_figure_layers(self):
        self.compile_figure()
        out = self.path('fig1', 'cds.svg')
        code = render.run([self.path('fig1', 'cds.json'), '--certificate', self.path('fig1', 'cert.json')]
                          + self.common())
        self.assertEqual(code, 0)
        with open(out) as f:
            svg = f.read()
        self.assertEqual(gid_count(svg, r'(even|odd)-\d+'), 18)
        self.assertEqual(gid_count(svg, r'clause-\d+'), 9)
        self.assertEqual(gid_count(svg, r'target-\d+'), 21)

    def test_layout_labels(self):
        self.compile_figure()
        render.run([self.path('fig1', 'layout.json')] + self.common())
        with open(self.path('fig1', 'layout.svg')) as f:
            svg = f.read()
        self.assertEqual(gid_count(svg, r'leg-\d+'), 9)
        self.assertEqual(gid_count(svg, r'label-x\d+'), 4)
        self.assertEqual(gid_count(svg, r'label-c\d+'), 3)

    def test_byte_identical(self):
        self.compile_figure()
        first, second = self.path('a.svg'), self.path('b.svg')
        for out in (first, second):
            render.run([self.path('fig1', 'cds.json'), '--out', out, '--no_labels'] + self.common())
        with open(first, 'rb') as a, open(second, 'rb') as b:
            self.assertEqual(a.read(), b.read())

    def test_points_with_pairs(self):
        compile_cnf.run([instance_path('unit.cnf'), '--out', self.path('unit')] + self.common())
        self.assertEqual(render.run([self.path('unit', 'points.json')] + self.common()), 0)
        with open(self.path('unit', 'points.svg')) as f:
            svg = f.read()
        self.assertEqual(gid_count(svg, r'pair-\d+'), 2)

    def test_empty_instance(self):
        src = write_json(self.path('empty.json'), CdsInstance().to_json())
        self.assertEqual(render.run([src] + self.common()), 0)
        with open(self.path('empty.svg')) as f:
            self.assertIn('<svg', f.read())

    def test_unknown_layer(self):
        self.assertEqual(render.run([instance_path('x.json'), '--hide', 'bogus', '--out', self.path('x.svg')]
                                    + self.common()), 6)


class TestArtifacts(CliTestCase):
    def test_unknown_kind(self):
        with self.assertRaises(UnknownArtifact):
            create_artifact({'kind': 'movie'})
        with self.assertRaises(UnknownArtifact):
            create_artifact({'points': []})

    def test_not_json(self):
        path = self.path('broken.json')
        with open(path, 'w') as f:
            f.write('{"kind": ')
        with self.assertRaises(InputError):
            load_artifact(path)

    def test_missing_file(self):
        with self.assertRaises(InputError):
            load_artifact(self.path('nowhere.json'))
        self.assertEqual(solve.run([self.path('nowhere.json'), '--out', self.path('x.json')] + self.common()), 6)
        self.assertEqual(render.run([self.path('nowhere.json'), '--out', self.path('x.svg')] + self.common()), 6)

    def test_cds_reload(self):
        inst = load_artifact(instance_path('x.json'))
        self.assertEqual(len(inst.stabbers), 2)
        path = write_json(self.path('again.json'), inst.to_json())
        self.assertEqual(load_artifact(path), inst)


class TestMain(CliTestCase):
    def test_dispatch(self):
        self.assertEqual(main.main([]), 2)
        self.assertEqual(main.main(['train']), 2)
        self.assertEqual(main.main(['solve', instance_path('x.json'), '--out', self.path('x.sol.json')]
                                   + self.common()), 0)
