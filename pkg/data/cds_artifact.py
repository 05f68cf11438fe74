# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

from cds.instance import CdsInstance, CdsSolution
from data.base_artifact import BaseArtifact


class cds_loader(BaseArtifact):
    kind = 'cds'

    def build(self):
        return self.load(CdsInstance.from_json)


class cds_solution_loader(BaseArtifact):
    """Returns None for a file recording an infeasible instance."""
    kind = 'cds_solution'

    def build(self):
        if self.payload.get('status') == 'infeasible':
            return None
        return self.load(CdsSolution.from_json)
