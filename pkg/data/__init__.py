# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import importlib
import json

from data.base_artifact import BaseArtifact
from errors import InputError, UnknownArtifact

# artifact kind -> module "data/[name]_artifact.py"
KIND_MODULES = {
    'layout': 'reduction',
    'certificate': 'reduction',
    'sat_solution': 'reduction',
    'cds': 'cds',
    'cds_solution': 'cds',
    'pointset': 'geometry',
    'triangulation': 'geometry',
    'maxmin': 'geometry',
    'points': 'geometry',
}


def find_artifact_using_name(kind):
    """Import the module "data/[name]_artifact.py" holding the loader of ``kind``.

    In the file, the class called [Kind]_loader will be used. It has to be a
    subclass of BaseArtifact, and it is case-insensitive.
    """
    if kind not in KIND_MODULES:
        raise UnknownArtifact('unknown artifact kind {!r}'.format(kind))
    artifact_filename = "data." + KIND_MODULES[kind] + "_artifact"
    artifactlib = importlib.import_module(artifact_filename)

    artifact = None
    target_artifact_name = kind + '_loader'
    for _name, cls in artifactlib.__dict__.items():
        if _name.lower() == target_artifact_name.lower() \
           and isinstance(cls, type) and issubclass(cls, BaseArtifact):
            artifact = cls

    if artifact is None:
        raise NotImplementedError("In %s.py, there should be a subclass of BaseArtifact with class name that matches %s in lowercase." % (artifact_filename, target_artifact_name))

    return artifact


def create_artifact(payload, path=None):
    """Wrap a decoded JSON payload in the loader for its kind."""
    if not isinstance(payload, dict) or 'kind' not in payload:
        raise UnknownArtifact('artifact {} has no kind'.format(path or '<payload>'))
    return find_artifact_using_name(payload['kind'])(payload, path)


def load_artifact(path):
    """Read ``path`` and build the domain object it describes."""
    try:
        with open(path, encoding='utf-8') as f:
            payload = json.load(f)
    except OSError as err:
        raise InputError('cannot read {}: {}'.format(path, err))
    except ValueError as err:
        raise InputError('{} is not JSON: {}'.format(path, err))
    return create_artifact(payload, path).build()
