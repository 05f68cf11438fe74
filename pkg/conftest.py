# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import matplotlib
import pytest
from hypothesis import HealthCheck, settings

matplotlib.use('Agg')

settings.register_profile('maxmin', deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile('maxmin')


@pytest.fixture
def workspace(tmp_path):
    """Root directory handed to the entry scripts through --root."""
    return str(tmp_path)
