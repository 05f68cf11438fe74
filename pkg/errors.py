# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exception hierarchy shared by the library and the command line scripts.

Every error carries the exit code the scripts return for it and an optional
list of machine-readable defects (plain dicts, JSON serialisable).
"""


class MaxMinError(Exception):
    exit_code = 1

    def __init__(self, message, defects=None):
        super(MaxMinError, self).__init__(message)
        self.defects = list(defects) if defects else []

    def to_dict(self):
        return {'error': self.__class__.__name__,
                'message': str(self),
                'defects': self.defects}


class ParseError(MaxMinError):
    exit_code = 2


class LayoutError(MaxMinError):
    exit_code = 3


class AuditError(MaxMinError):
    exit_code = 4


class CapacityError(MaxMinError):
    exit_code = 5


class InputError(MaxMinError):
    exit_code = 6


# geometry
class AllCollinear(InputError):
    pass


class TooLarge(CapacityError):
    pass


class LimitExceeded(CapacityError):
    pass


# cds
class CertificateMismatch(InputError):
    pass


# reduction
class CnfParseError(ParseError):
    pass


class NotPlanarWithHints(LayoutError):
    pass


class DegenerateDirections(LayoutError):
    pass


class CrossingAudit(AuditError):
    pass


class NotSatisfying(InputError):
    pass


class MixedParity(AuditError):
    pass


class DegenerateCollinearity(AuditError):
    pass


class AuditFailed(AuditError):
    pass


class SectorDegeneracy(AuditError):
    pass


# artifacts
class UnknownArtifact(InputError):
    pass
