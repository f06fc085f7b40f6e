import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from ranksum import _accel
from ranksum.kernels import auc, roc_curve
from ranksum.preorder import induce_preorder, rank_vector

backends = [
    pytest.param((_accel.rank_vector_numpy, _accel.auc_numpy, _accel.roc_area_numpy), id="numpy"),
]
if _accel.HAVE_NUMBA:
    backends.append(
        pytest.param((_accel.rank_vector_numba, _accel.auc_numba, _accel.roc_area_numba), id="numba")
    )

small_scores = hnp.arrays(np.float64, st.integers(1, 30),
                          elements=st.sampled_from([0.0, 0.25, 0.5, 1.0, -3.0, 7.5]))


@pytest.mark.parametrize("impl", backends)
class TestBackends:
    @given(small_scores)
    def test_rank_vector_matches_exact(self, impl, values):
        rv, _, _ = impl
        assert tuple(rv(values)) == rank_vector(induce_preorder(values.tolist()))

    @given(small_scores, st.data())
    def test_auc_and_area_match_exact(self, impl, values, data):
        _, auc_fn, area_fn = impl
        y = np.array(data.draw(st.lists(st.integers(0, 1), min_size=len(values),
                                        max_size=len(values))))
        p = induce_preorder(values.tolist())
        exact = auc(y.tolist(), p)
        assert abs(auc_fn(values, y, 0.5) - float(exact)) <= 1e-12
        if 0 < y.sum() < len(y):
            assert abs(area_fn(values, y) - float(roc_curve(y.tolist(), p).area())) <= 1e-12
        else:
            assert np.isnan(area_fn(values, y))


def test_dispatch_reports_backend():
    assert _accel.backend() in ("numba", "numpy")
    v = np.array([0.1, 0.4, 0.4, 0.9])
    y = np.array([0, 1, 0, 1])
    assert _accel.auc_float(v, y) == pytest.approx(0.875)
    assert _accel.roc_area_float(v, y) == pytest.approx(0.875)


def test_env_flag_disables_numba(monkeypatch):
    import importlib

    monkeypatch.setenv("RANKSUM_DISABLE_NUMBA", "1")
    mod = importlib.reload(_accel)
    try:
        assert mod.backend() == "numpy"
    finally:
        monkeypatch.delenv("RANKSUM_DISABLE_NUMBA")
        importlib.reload(_accel)
