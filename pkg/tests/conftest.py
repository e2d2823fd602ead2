import copy
import inspect
import io
import logging
import random
import shutil
import typing as ty
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from hagafold.fold import build
from hagafold.tritangent import RightTriangleFrame

# (d, e) -> (case, a, b, c)
WORKED_CONFIGS = {
    (1, 3): ("h1", Fraction(6), Fraction(2), Fraction(3)),
    (2, 3): ("h3", Fraction(3), Fraction(1), Fraction(6)),
    (2, 2): ("h4", Fraction(0), Fraction(0), Fraction(2)),
    (2, 1): ("h5", Fraction(1, 3), Fraction(1), Fraction(2, 3)),
    (2, 0): ("h6", Fraction(0), Fraction(2), Fraction(0)),
    (2, -1): ("h7", Fraction(3, 5), Fraction(3), Fraction(2, 5)),
}

ORDINARY_CONFIGS = [(1, 3), (2, 3), (2, 1), (2, -1)]

# one e for each case when d = 1
ALL_CASES_E = ["-3", "-1/2", "0", "1/3", "1/2", "1", "3/2", "2", "5/2", "3"]


def rationals(
    min_value: int = -20, max_value: int = 20, max_denominator: int = 12
) -> st.SearchStrategy[Fraction]:
    return st.integers(1, max_denominator).flatmap(
        lambda q: st.integers(min_value * q, max_value * q).map(lambda p: Fraction(p, q))
    )


def positive_rationals(max_value: int = 10) -> st.SearchStrategy[Fraction]:
    return rationals(0, max_value).filter(lambda f: f > 0)


def pythagorean_legs() -> st.SearchStrategy[tuple[Fraction, Fraction]]:
    """
    Legs ``k (m^2 - n^2, 2mn)`` with ``m > n`` of rational right triangles, in random order.
    """
    return st.builds(
        lambda n, gap, k, swap: _legs(n + gap, n, k, swap),
        st.integers(1, 8),
        st.integers(1, 8),
        st.builds(Fraction, st.integers(1, 9), st.integers(1, 9)),
        st.booleans(),
    )


def _legs(m: int, n: int, k: Fraction, swap: bool) -> tuple[Fraction, Fraction]:
    legs = ((m * m - n * n) * k, 2 * m * n * k)
    return (legs[1], legs[0]) if swap else legs


def ordinary_d_e() -> st.SearchStrategy[tuple[Fraction, Fraction]]:
    return st.tuples(positive_rationals(), rationals()).filter(
        lambda de: de[1] not in (0, de[0], 2 * de[0])
    )


def _capture_logger():
    out = io.StringIO()
    logger = logging.getLogger()
    logger.addHandler(logging.StreamHandler(out))
    return out


@pytest.fixture
def capture_logger():
    return _capture_logger


@pytest.fixture
def haga_config():
    return build(2, 1)


def _haga_config():
    return build(2, 1)


@pytest.fixture
def triangle_345():
    return RightTriangleFrame.from_legs(4, 3)


def _triangle_345():
    return RightTriangleFrame.from_legs(4, 3)


def run_tests_local(
    locals: dict,
    conftest: ty.Type,
    kwargs: dict[str, ty.Any] | None = None,
    tmp_path: Path | None = None,
):
    """
    Runs the ``test_`` functions of a module without pytest, for use with a debugger.
    Fixtures are looked up in ``conftest`` as ``_<name>`` and ``parametrize`` marks are
    expanded.

    Parameters
    ----------
    locals : dict
        the namespace of the test module.
    conftest : ty.Type
        this module.
    kwargs : dict[str, ty.Any] | None, optional
        extra arguments, deep-copied for each call, by default None
    tmp_path : Path | None, optional
        the temporary directory passed as ``tmp_path``, by default ``/tmp/test_exp``

    Raises
    ------
    ValueError
        If a test requires an argument that is not available.
    """
    random.seed(1)
    np.random.seed(1)
    kwargs = {} if kwargs is None else kwargs
    tmp_path = Path("/tmp/test_exp") if tmp_path is None else tmp_path

    test_fns = [v for k, v in locals.items() if k.startswith("test_")]
    for fn in test_fns:
        parameters = inspect.signature(fn).parameters
        grid: dict[str, list] = {}
        if hasattr(fn, "pytestmark"):
            for mark in fn.pytestmark:
                if mark.name == "parametrize":
                    names, values = mark.args
                    names = [n.strip() for n in names.split(",")]
                    for name in names:
                        grid[name] = []
                    for value in values:
                        value = value if len(names) > 1 else (value,)
                        for name, v in zip(names, value):
                            grid[name].append(v)

        n_runs = max((len(v) for v in grid.values()), default=1)
        for i in range(n_runs):
            _args: dict[str, ty.Any] = {}
            for k, p in parameters.items():
                if k in grid:
                    _args[k] = grid[k][i]
                elif k == "tmp_path":
                    _args[k] = tmp_path
                elif k in kwargs:
                    _args[k] = copy.deepcopy(kwargs[k])
                elif hasattr(conftest, f"_{k}"):
                    _args[k] = getattr(conftest, f"_{k}")
                    if k != "capture_logger":
                        _args[k] = _args[k]()
                elif p.default != inspect.Parameter.empty:
                    _args[k] = p.default
                else:
                    raise ValueError(f"Missing kwarg {k}.")
            shutil.rmtree(tmp_path, ignore_errors=True)
            tmp_path.mkdir()
            fn(**_args)
