# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""This module implements an abstract base class (ABC) 'BaseArtifact' for JSON artifacts.

To create a subclass, implement <build>, which turns the payload into the domain
object and raises InputError when the payload breaks the object's invariants.
"""
from abc import ABC, abstractmethod

from errors import InputError


class BaseArtifact(ABC):
    kind = None

    def __init__(self, payload, path=None):
        """Keep the decoded payload and where it came from."""
        if payload.get('kind') != self.kind:
            raise InputError('{} holds a {!r} artifact, expected {!r}'.format(
                path or 'payload', payload.get('kind'), self.kind))
        self.payload = payload
        self.path = path

    @abstractmethod
    def build(self):
        """Return the domain object."""
        pass

    def load(self, builder):
        try:
            return builder(self.payload)
        except InputError:
            raise
        except (KeyError, ValueError, TypeError, IndexError) as err:
            raise InputError('malformed {} artifact {}: {}'.format(self.kind, self.path or '', err))
