from __future__ import annotations

import pytest

import fixtures


@pytest.fixture
def pipeline_drawing():
    return fixtures.pipeline_lbend_drawing()


@pytest.fixture
def grid_drawing():
    return fixtures.grid_3x2_drawing()


@pytest.fixture
def lightning_drawing():
    return fixtures.lightning_two_rod_drawing()
