# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

from data.base_artifact import BaseArtifact
from reduction.certificate import GadgetCertificate
from reduction.layout import IncidenceLayout


class layout_loader(BaseArtifact):
    kind = 'layout'

    def build(self):
        return self.load(IncidenceLayout.from_json)


class certificate_loader(BaseArtifact):
    kind = 'certificate'

    def build(self):
        return self.load(GadgetCertificate.from_json)


class sat_solution_loader(BaseArtifact):
    """Returns the assignment, or None for an unsatisfiable formula."""
    kind = 'sat_solution'

    def build(self):
        def assignment(payload):
            values = payload['assignment']
            return None if values is None else [bool(v) for v in values]
        return self.load(assignment)
