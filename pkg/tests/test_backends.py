import pytest
from hypothesis import given, settings

from grtbv import canon
from grtbv import _canon_py

from strategies import graphs

compiled = pytest.importorskip("grtbv._canon")


@settings(max_examples=400, deadline=None)
@given(graphs(max_n=8, max_l=14, loops=True))
def test_compiled_and_python_kernels_agree(g):
    edges = [(u - 1, v - 1) for u, v in g.edges]
    assert compiled.canonical_form(g.n, edges) == _canon_py.canonical_form(g.n, edges)


def test_backend_selection_reports_a_known_kernel():
    assert canon.BACKEND in ("cython", "python")
    assert canon.python_canonical_form is _canon_py.canonical_form


def test_environment_variable_forces_the_python_kernel():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GRTBV_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from grtbv import canon; print(canon.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
