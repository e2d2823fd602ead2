import copy
import io
import re
from fractions import Fraction
from pathlib import Path

import pytest

from hagafold.config import List, Optional, Stateless, config
from hagafold.config.main import Missing
from hagafold.config.types import Annotation, Enum, Stateful, parse_type_hint, parse_value
from hagafold.fold import HagaCase
from hagafold.settings import FigureConfig, OracleConfig, SweepConfig
from hagafold.utils import (
    dict_hash,
    flatten_nested_dict,
    format_rational,
    parse_rational,
    to_jsonable,
)
from hagafold.kernel import Circle, Point


@config
class RequiredConfig:
    d: Fraction
    e: Fraction = Fraction(1)
    label: Optional[str] = None


@config
class NestedConfig:
    required: RequiredConfig
    name: str = "nested"


def test_parse_type_hint():
    assert parse_type_hint(Optional[List[Fraction]]) == Annotation(
        state=Stateful, optional=True, collection=List, variable_type=Fraction
    )
    assert parse_type_hint(Stateless[int]).state is Stateless
    assert parse_value(["1/2", 3], parse_type_hint(List[Fraction])) == [
        Fraction(1, 2),
        Fraction(3),
    ]
    with pytest.raises(ValueError, match="Invalid type"):
        parse_value("1/2", parse_type_hint(List[Fraction]))


def test_required_values(capture_logger):
    out: io.StringIO = capture_logger()
    with pytest.raises(ValueError, match=re.escape("Missing required values ['d'].")):
        RequiredConfig()
    cfg = RequiredConfig(debug=True)
    assert cfg.d is None
    assert out.getvalue().split("\n")[-2] == (
        "Loading RequiredConfig in `debug` mode. Setting missing required value d to"
        " `None`."
    )
    RequiredConfig(d=1, extra=2, debug=True)
    assert out.getvalue().split("\n")[-2] == (
        "Loading RequiredConfig in `debug` mode. Ignoring unexpected arguments: `extra`"
    )
    RequiredConfig(d=0.5, debug=True)
    assert "Unable to parse `d` value 0.5" in out.getvalue()


def test_invalid_arguments():
    with pytest.raises(KeyError, match="Unexpected arguments"):
        RequiredConfig(d=1, extra=2)
    with pytest.raises(ValueError, match="positional"):
        RequiredConfig(1)
    with pytest.raises(ValueError, match="float"):
        RequiredConfig(d=0.5)
    with pytest.raises(ValueError, match="__init__"):

        @config
        class WithInit:
            def __init__(self) -> None:
                pass


def test_rational_fields():
    cfg = RequiredConfig(d="3/6", label="half")
    assert cfg.d == Fraction(1, 2) and cfg.e == 1
    cfg.e = "-2"
    assert cfg.e == Fraction(-2)
    assert cfg.to_dict() == {"d": "1/2", "e": "-2", "label": "half"}
    assert repr(cfg) == "RequiredConfig(d='1/2', e='-2', label='half')"


def test_sweep_config_yaml(tmp_path: Path):
    cfg = SweepConfig(d="1/2", e_values=["-1", "1/3"], workers=4)
    assert cfg.e_values == [Fraction(-1), Fraction(1, 3)]
    path = tmp_path / "sweep.yaml"
    cfg.write(path)
    loaded = SweepConfig.load(path)
    assert loaded == cfg
    assert loaded.diff(cfg) == []
    assert loaded.oracle == OracleConfig()
    assert loaded.workers == 4
    assert SweepConfig.from_yaml(cfg.to_yaml()).e_grid() == [Fraction(-1), Fraction(1, 3)]


def test_uid():
    cfg = SweepConfig(d=1, e_values=[0])
    assert len(cfg.uid) == 5
    assert cfg.uid == SweepConfig(d=1, e_values=[0], workers=8, output="out.json").uid
    assert cfg.uid != SweepConfig(d=2, e_values=[0]).uid
    changed = SweepConfig(d=1, e_values=[0])
    changed.oracle.tolerance = 1e-6
    assert cfg.uid != changed.uid


def test_diff():
    left, right = SweepConfig(d=1, e_values=[0]), SweepConfig(d=2, e_values=[0])
    assert left.diff(right) == [("d", (str, "1"), (str, "2"))]
    right.output = "sweep.json"
    assert len(left.diff(right)) == 2
    assert len(left.diff(right, ignore_stateless=True)) == 1


def test_freeze_unfreeze():
    cfg = SweepConfig(d=1, e_values=[0])
    cfg.freeze()
    with pytest.raises(RuntimeError, match="frozen"):
        cfg.d = Fraction(2)
    with pytest.raises(RuntimeError, match="frozen"):
        cfg.oracle.enabled = True
    cfg_copy = copy.deepcopy(cfg)
    cfg_copy.unfreeze()
    cfg_copy.oracle.enabled = True
    assert cfg_copy.oracle.enabled and not cfg.oracle.enabled


def test_nested_load(tmp_path: Path):
    nested = NestedConfig(required=RequiredConfig(d=2))
    path = tmp_path / "nested.yaml"
    nested.write(path)
    loaded = NestedConfig.load(path)
    assert loaded.required.d == 2
    assert flatten_nested_dict(loaded.to_dict()) == {
        "required.d": "2",
        "required.e": "1",
        "required.label": None,
        "name": "nested",
    }


def test_sweep_validate():
    assert SweepConfig(d=1, e_from=0, e_to=1, steps=2).e_grid() == [
        Fraction(0),
        Fraction(1, 2),
        Fraction(1),
    ]
    with pytest.raises(ValueError, match="either"):
        SweepConfig(d=1).validate()
    with pytest.raises(ValueError, match="either"):
        SweepConfig(d=1, e_values=[0], steps=3).validate()
    with pytest.raises(ValueError, match="together"):
        SweepConfig(d=1, e_from=0, steps=3).validate()
    with pytest.raises(ValueError, match="positive"):
        SweepConfig(d=0, e_values=[0]).validate()
    with pytest.raises(ValueError, match="workers"):
        SweepConfig(d=1, e_values=[0], workers=0).validate()
    with pytest.raises(ValueError, match="n_bins"):
        SweepConfig(d=1, e_from=0, e_to=1, steps=0).e_grid()


def test_figure_config():
    figure = FigureConfig(circles=["alpha"])
    assert FigureConfig().circles == []
    assert figure.margin == Fraction(1, 10)
    assert figure.to_dict()["circles"] == ["alpha"]


def test_enum():
    assert HagaCase.H1 == "h1"
    assert HagaCase.H1 != "h9"
    assert HagaCase("h3") in {HagaCase.H3}
    assert repr(HagaCase.H5) == "HagaCase('h5')"

    class Kind(Enum):
        SOLID = "solid"

    assert Kind.SOLID == "solid" and Kind.SOLID != HagaCase.H1


@config
class CaseConfig:
    case: HagaCase = HagaCase.H1
    sides: List[RequiredConfig] = []


def test_enum_and_list_fields():
    cfg = CaseConfig(case="h3", sides=[{"d": "2"}, RequiredConfig(d=1)])
    assert cfg.case == HagaCase.H3
    assert cfg.to_dict() == {
        "case": "h3",
        "sides": [
            {"d": "2", "e": "1", "label": None},
            {"d": "1", "e": "1", "label": None},
        ],
    }
    assert CaseConfig.from_yaml(cfg.to_yaml()) == cfg
    cfg.freeze()
    with pytest.raises(RuntimeError, match="frozen"):
        cfg.sides[0].d = Fraction(3)
    cfg.unfreeze()
    cfg.sides[0].d = Fraction(3)
    assert cfg.diff(CaseConfig(case="h3", sides=[{"d": "3"}])) == [
        ("sides.1.d", (str, "1"), (Missing, None)),
        ("sides.1.e", (str, "1"), (Missing, None)),
        ("sides.1.label", (type(None), None), (Missing, None)),
    ]


def test_rationals():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(-2) == "-2"
    assert parse_rational(" -3/6 ") == Fraction(-1, 2)
    assert parse_rational(Fraction(1, 3)) == Fraction(1, 3)
    for bad in ["1.5", "1/0", "a", "1/-2", True, 0.5]:
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_to_jsonable():
    document = to_jsonable({
        "case": HagaCase.H2,
        "circle": Circle(Point(1, 1), Fraction(1, 2)),
        "values": (Fraction(1, 3), 2, None, True),
    })
    assert document == {
        "case": "h2",
        "circle": {"center": ["1", "1"], "radius": "1/2"},
        "values": ["1/3", "2", None, True],
    }
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_flatten_nested_dict():
    out = flatten_nested_dict({"a": {"b": 1, "c": {"d": 2}}, "e": [3, 4]}, False, "#")
    assert out == {"e": [3, 4], "a#b": 1, "a#c#d": 2}
    out = flatten_nested_dict({"a": {"b": 1, "c": {"d": 2}}, "e": [3, 4]}, True, "#")
    assert out == {"a#b": 1, "e#0": 3, "e#1": 4, "a#c#d": 2}
    assert flatten_nested_dict({"a": {"b": {"c": 1}}}) == {"a.b.c": 1}


def test_dict_hash():
    assert dict_hash({"a": 1, "b": 2}) == dict_hash({"b": 2, "a": 1})
    assert dict_hash({"a": Fraction(1, 2)}) == dict_hash({"a": "1/2"})
    assert len(dict_hash({"a": 1}, hash_len=8)) == 8


if __name__ == "__main__":
    from conftest import run_tests_local
    import conftest

    _locals = locals()
    run_tests_local(_locals, conftest)
