import json

import numpy as np
import pytest

from qchernoff.io import matrix_to_json

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def diag_pair():
    return np.diag([0.75, 0.25]).astype(complex), np.diag([0.25, 0.75]).astype(complex)


@pytest.fixture
def write_matrix(tmp_path):
    def write(name, M):
        path = tmp_path / name
        path.write_text(json.dumps(matrix_to_json(M)))
        return str(path)

    return write
