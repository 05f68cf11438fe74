# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.


class runningConsistency(object):
    """Tally of equivalence reports over a sweep."""
    def __init__(self):
        self.reset()

    def update(self, report):
        self.total += 1
        self.consistent += int(report.consistent)
        self.sat += int(report.sat)
        self.triangulated += int(report.triangulation_feasible is not None)
        self.audited += int(report.audit_ok is not None)
        if not report.consistent:
            self.failures.append(report.formula)

    def get_scores(self):
        return {
            "Reports : \t": self.total,
            "Consistent : \t": self.consistent,
            "Inconsistent : \t": self.total - self.consistent,
            "Satisfiable : \t": self.sat,
            "Unsatisfiable : \t": self.total - self.sat,
            "Triangulation checked : \t": self.triangulated,
            "Soundness audited : \t": self.audited,
        }

    @property
    def all_consistent(self):
        return self.consistent == self.total

    def reset(self):
        self.total = 0
        self.consistent = 0
        self.sat = 0
        self.triangulated = 0
        self.audited = 0
        self.failures = []


class averageMeter(object):
    """Running mean and worst case of a duration in seconds."""
    def __init__(self, name):
        self.name = name
        self.reset()

    def reset(self):
        self.count = 0
        self.total = 0.0
        self.worst = 0.0

    def update(self, seconds):
        self.count += 1
        self.total += seconds
        self.worst = max(self.worst, seconds)

    @property
    def avg(self):
        return self.total / self.count if self.count else 0.0

    def summary(self):
        return '{}: avg {:.3f}s, max {:.3f}s over {}'.format(self.name, self.avg, self.worst, self.count)
