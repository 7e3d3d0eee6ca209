import importlib
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from skein import _kernels, _pykernels

polys = st.dictionaries(st.integers(-30, 30), st.integers(-(1 << 70), 1 << 70)).map(
    lambda d: tuple(sorted((e, c) for e, c in d.items() if c)))

ck = pytest.importorskip("skein._ckernels")


@given(polys, polys)
def test_compiled_kernels_agree(a, b):
    assert ck.poly_add(a, b) == _pykernels.poly_add(a, b)
    assert ck.poly_mul(a, b) == _pykernels.poly_mul(a, b)
    m = _pykernels.poly_mul(a, ((-2, 1), (2, 1)))
    assert ck.poly_div_alpha(m) == _pykernels.poly_div_alpha(m) == (a if a else ())
    assert ck.poly_div_alpha(a) == _pykernels.poly_div_alpha(a)


def test_backend_selection():
    assert _kernels.BACKEND == "cython"
    env = {**os.environ, "SKEIN_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", "from skein import _kernels; print(_kernels.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
