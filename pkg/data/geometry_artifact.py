# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

from fractions import Fraction

from data.base_artifact import BaseArtifact
from geometry.triangulation import MaxMinResult, PointSet, Triangulation, is_valid_triangulation
from errors import InputError
from reduction.points import PointInstance


class pointset_loader(BaseArtifact):
    kind = 'pointset'

    def build(self):
        return self.load(PointSet.from_json)


class triangulation_loader(BaseArtifact):
    kind = 'triangulation'

    def build(self):
        tri = self.load(Triangulation.from_json)
        if not is_valid_triangulation(tri.base, tri.edges):
            raise InputError('{} is not a triangulation of its points'.format(self.path or 'payload'))
        return tri


class maxmin_loader(BaseArtifact):
    kind = 'maxmin'

    def build(self):
        result = self.load(lambda p: MaxMinResult(Fraction(p['optimum_sq']),
                                                  Triangulation.from_json(p['triangulation'])))
        if result.witness.min_edge_sq() != result.optimum_sq:
            raise InputError('maxmin witness does not realise the recorded optimum')
        return result


class points_loader(BaseArtifact):
    kind = 'points'

    def build(self):
        return self.load(PointInstance.from_json)
