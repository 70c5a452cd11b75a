import os
import sys
import threading

import pytest

# Ensure project root is on sys.path for imports
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from relgraph.workers import run_cells


@pytest.mark.parametrize("threads", [1, 4])
def test_results_keep_input_order(threads):
    assert run_cells(lambda x: x * x, range(20), threads) == [x * x for x in range(20)]


def test_single_thread_runs_inline():
    seen = set()

    def record(x):
        seen.add(threading.get_ident())
        return x

    assert run_cells(record, [1, 2, 3], threads=1) == [1, 2, 3]
    assert seen == {threading.get_ident()}


def test_empty_input():
    assert run_cells(lambda x: x, [], threads=8) == []


def test_errors_propagate():
    def boom(x):
        if x == 3:
            raise ValueError("bad cell")
        return x

    with pytest.raises(ValueError):
        run_cells(boom, range(5), threads=2)
