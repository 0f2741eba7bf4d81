import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import _helpers
import framecast
from framecast import cli, frames, pipeline
from framecast._backend import available

settings.register_profile(
    "framecast", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("framecast")


def _instrument_to_parseval():
    original = frames.to_parseval

    def wrapped(*args, **kwargs):
        res = original(*args, **kwargs)
        w = res.w
        defect = float(np.linalg.norm(w @ w.conj().T - np.eye(w.shape[0])))
        b = frames.frame_bounds(res.parseval, on_span=True)
        _helpers.PARSEVAL_CALLS.append((defect, abs(b.lower - 1), abs(b.upper - 1)))
        return res

    wrapped.__wrapped__ = original
    for mod in (frames, framecast, cli, pipeline):
        mod.to_parseval = wrapped


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria")
    _instrument_to_parseval()


@pytest.fixture(params=available())
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    calls = _helpers.PARSEVAL_CALLS
    if not _helpers.CRITERIA and not calls:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, ok, detail in sorted(_helpers.CRITERIA, key=lambda c: c[0]):
        tr.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    if calls:
        d = max(c[0] for c in calls)
        a = max(c[1] for c in calls)
        b = max(c[2] for c in calls)
        ok = d <= 1e-10 and a <= 1e-9 and b <= 1e-9
        tr.write_line(
            f"criterion  2 (suite-wide, {len(calls)} to_parseval runs): "
            f"{'PASS' if ok else 'FAIL'}  max ||WW*-I||_F={d:.2e} (tol 1e-10), "
            f"max |A-1|={a:.2e}, max |B-1|={b:.2e} (tol 1e-9)"
        )
