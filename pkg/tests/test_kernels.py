from __future__ import annotations

import numpy as np
import pytest

from helpers import random_trial

from tusq.chains import ChainSpace, Extension
from tusq.kernels import BACKEND_ENV, default_backend, get_backend, numba_available
from tusq.miner import MiningConfig, dpp_filter, mine

needs_numba = pytest.mark.skipif(not numba_available(), reason="numba not installed")


def test_env_flag_selects_backend(monkeypatch):
    monkeypatch.setenv(BACKEND_ENV, "numpy")
    assert default_backend() == "numpy"
    assert get_backend().NAME == "numpy"
    monkeypatch.setenv(BACKEND_ENV, "fortran")
    with pytest.raises(ValueError, match=BACKEND_ENV):
        default_backend()
    with pytest.raises(ValueError):
        get_backend("fortran")


def test_default_backend_without_env(monkeypatch):
    monkeypatch.delenv(BACKEND_ENV, raising=False)
    assert default_backend() == ("numba" if numba_available() else "numpy")


def _walk(space: ChainSpace, chain, depth, out):
    ilist, slist = space.extension_items(chain)
    out.append((chain.pattern, chain.cells.tolist(), chain.utils.tolist(), chain.head_sru.tolist(), ilist.tolist(), slist.tolist()))
    if depth == 0:
        return
    for kind, items in ((Extension.I, ilist), (Extension.S, slist)):
        for item in items.tolist():
            child = space.project(chain, item, kind)
            if child is not None:
                _walk(space, child, depth - 1, out)


@needs_numba
@pytest.mark.parametrize("seed", range(25))
def test_backends_agree_on_every_projection(seed):
    trial = random_trial(seed)
    filtered = dpp_filter(trial.db, trial.target)
    traces = []
    for name in ("numpy", "numba"):
        space = ChainSpace(filtered, trial.target, name)
        out = []
        for chain in space.initial_chains().values():
            if chain:
                _walk(space, chain, 3, out)
        traces.append(out)
    assert traces[0] == traces[1]


@needs_numba
@pytest.mark.parametrize("seed", range(0, 60, 3))
def test_backends_agree_on_mining(seed):
    trial = random_trial(seed)
    runs = [mine(trial.db, trial.target, MiningConfig("0.1", backend=b)) for b in ("numpy", "numba")]
    assert runs[0][0] == runs[1][0]
    assert runs[0][1].counters() == runs[1][1].counters()


def test_segment_cummax_restarts_per_segment():
    from tusq.kernels._numpy import _segment_cummax

    vals = np.array([3, 1, 4, 1, 5, 2], dtype=np.int64)
    seg = np.array([0, 0, 0, 1, 1, 1], dtype=np.int64)
    assert _segment_cummax(vals, seg).tolist() == [3, 3, 4, 1, 5, 5]


def test_ranges_concatenates_aranges():
    from tusq.kernels._numpy import _ranges

    out = _ranges(np.array([0, 5, 9]), np.array([2, 5, 11]))
    assert out.tolist() == [0, 1, 9, 10]
