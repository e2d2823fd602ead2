import copy
import logging
import typing as ty
from collections import ChainMap
from fractions import Fraction
from pathlib import Path

import yaml
from typing_extensions import Self

from hagafold.config.types import (
    Annotation,
    Enum,
    List,
    Stateless,
    parse_type_hint,
    parse_value,
)
from hagafold.utils import dict_hash, flatten_nested_dict, format_rational

Difference = tuple[str, tuple[type, ty.Any], tuple[type, ty.Any]]


def config(cls: type) -> type:
    """
    Makes ``cls`` a configuration class. The methods of :class:`ConfigBase` that
    ``cls`` does not define are attached to it.

    Parameters
    ----------
    cls : type
        a class made of annotated fields, without an ``__init__``.

    Returns
    -------
    type
        ``cls`` itself, marked with ``config_class``.

    Raises
    ------
    ValueError
        When ``cls`` defines ``__init__``.
    """
    if "__init__" in cls.__dict__:
        raise ValueError("Can not over-ride protected function name `__init__`.")
    for name, member in ConfigBase.__dict__.items():
        if name not in cls.__dict__ and name != "__dict__":
            setattr(cls, name, member)
    cls.config_class = cls  # type: ignore[attr-defined]
    cls._class_name = cls.__name__  # type: ignore[attr-defined]
    return cls


def _plain(value: ty.Any, ignore_stateless: bool) -> ty.Any:
    # YAML primitives only; rationals as "p/q"
    if isinstance(value, Fraction):
        return format_rational(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if hasattr(type(value), "config_class"):
        return value.to_dict(ignore_stateless=ignore_stateless)
    raise NotImplementedError(f"Can not serialize {type(value).__name__}.")


class Missing:
    """
    Stands for a key present on one side of :meth:`ConfigBase.diff` only.
    """


class ConfigBase:
    """
    The methods shared by every ``@config`` class. Fields are assigned by keyword,
    cast to their annotated type and validated on assignment.

    Parameters
    ----------
    debug : bool, optional
        load leniently: missing and unparsable values become ``None`` and unexpected
        keywords are dropped, each with a warning. By default ``False``.
    **kwargs : Any
        the field values.

    Raises
    ------
    ValueError
        On positional arguments, missing required values or values that can not be
        cast.
    KeyError
        On unexpected keywords.

    Examples
    --------
    >>> @config
    >>> class Square:
    ...     d: Fraction
    ...     e: Fraction = Fraction(1)
    >>> Square(d="2", e="1/2")
    Square(d='2', e='1/2')
    """

    config_class = type(None)

    def __init__(self, *args: ty.Any, debug: bool = False, **kwargs: ty.Any):
        self._debug: bool
        self._freeze: bool
        self._class_name: str
        object.__setattr__(self, "_debug", debug)
        object.__setattr__(self, "_freeze", False)
        if len(args) > 0:
            raise ValueError(
                f"{self._class_name} does not support positional arguments."
            )
        if not isinstance(self, self.config_class):  # type: ignore[arg-type]
            raise RuntimeError(f"Decorate `{self._class_name}` with ``@config``.")

        missing = self._missing(kwargs)
        if len(missing) > 0 and not debug:
            raise ValueError(f"Missing required values {missing}.")

        for name in self.annotations:
            if name in missing:
                logging.warning(
                    "Loading %s in `debug` mode. Setting missing required value %s to"
                    " `None`.",
                    self._class_name,
                    name,
                )
                object.__setattr__(self, name, None)
                continue
            value = kwargs.pop(name) if name in kwargs else copy.deepcopy(
                getattr(type(self), name, None)
            )
            try:
                setattr(self, name, value)
            except Exception:  # pylint: disable=broad-exception-caught
                if not debug:
                    raise
                logging.warning(
                    "Loading %s in `debug` mode. Unable to parse `%s` value %s."
                    " Setting to `None`.",
                    self._class_name,
                    name,
                    value,
                )
                object.__setattr__(self, name, None)

        if len(kwargs) > 0:
            unexpected = ", ".join(kwargs)
            if not debug:
                raise KeyError(f"Unexpected arguments: `{unexpected}`")
            logging.warning(
                "Loading %s in `debug` mode. Ignoring unexpected arguments: `%s`",
                self._class_name,
                unexpected,
            )

    def _missing(self, kwargs: dict[str, ty.Any]) -> list[str]:
        return [
            name
            for name, annotation in self.annotations.items()
            if not annotation.optional
            and annotation.state is not Stateless
            and kwargs.get(name) is None
            and getattr(type(self), name, None) is None
        ]

    def __setattr__(self, k: str, v: ty.Any) -> None:
        if self._freeze:
            raise RuntimeError(
                f"Can not set attribute {k} on frozen configuration"
                f" ``{type(self).__name__}``."
            )
        value = parse_value(v, self.annotations[k], k, self._debug)
        object.__setattr__(self, k, value)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, self.__class__) and len(self.diff(other)) == 0

    def __repr__(self) -> str:
        fields = ", ".join(
            f"{k}='{v}'" if isinstance(v, str) else f"{k}={v!r}"
            for k, v in self.to_dict().items()
        )
        return f"{self._class_name}({fields})"

    @property
    def annotations(self) -> dict[str, Annotation]:
        """
        The parsed annotations of the class and its bases, by field name.
        """
        hints = ChainMap(*(
            c.__annotations__
            for c in type(self).__mro__
            if "__annotations__" in c.__dict__
        ))
        return {name: parse_type_hint(hint) for name, hint in hints.items()}

    def to_dict(self, ignore_stateless: bool = False) -> dict[str, ty.Any]:
        """
        The fields as YAML primitives, nested configurations as nested dictionaries.

        Parameters
        ----------
        ignore_stateless : bool, optional
            leave out ``Stateless`` fields, by default ``False``.

        Raises
        ------
        NotImplementedError
            When a value can not be written as YAML.
        """
        document: dict[str, ty.Any] = {}
        for name, annotation in self.annotations.items():
            if ignore_stateless and annotation.state is Stateless:
                continue
            value = getattr(self, name)
            if value is not None and annotation.collection == List:
                document[name] = [_plain(v, ignore_stateless) for v in value]
            else:
                document[name] = _plain(value, ignore_stateless)
        return document

    def diff(
        self, config: "ConfigBase", ignore_stateless: bool = False
    ) -> list[Difference]:
        """
        The fields that differ between ``self`` and ``config``, by dotted path.

        Returns
        -------
        list[Difference]
            ``(path, (type, left value), (type, right value))`` for each difference,
            sorted by path. A side without the path shows ``(Missing, None)``.

        Examples
        --------
        >>> SweepConfig(d=1, e_values=[0]).diff(SweepConfig(d=2, e_values=[0]))
        [('d', (str, '1'), (str, '2'))]
        """
        left = flatten_nested_dict(self.to_dict(ignore_stateless))
        right = flatten_nested_dict(config.to_dict(ignore_stateless))
        diffs: list[Difference] = []
        for k in sorted(left.keys() | right.keys()):
            left_v, right_v = left.get(k), right.get(k)
            left_side = (type(left_v), left_v) if k in left else (Missing, None)
            right_side = (type(right_v), right_v) if k in right else (Missing, None)
            if left_side != right_side:
                diffs.append((k, left_side, right_side))
        return diffs

    def to_yaml(self) -> str:
        return yaml.dump(self.to_dict())

    @classmethod
    def from_yaml(cls, text: str, debug: bool = False) -> Self:
        return cls(**(yaml.safe_load(text) or {}), debug=debug)

    def write(self, path: Path | str) -> None:
        Path(path).write_text(self.to_yaml(), encoding="utf-8")

    @classmethod
    def load(cls, path: Path | str, debug: bool = False) -> Self:
        """
        Reads a configuration written with :meth:`write`.

        Parameters
        ----------
        path : Path | str
            the YAML file.
        debug : bool, optional
            load leniently, see :class:`ConfigBase`. By default ``False``.
        """
        return cls.from_yaml(Path(path).read_text(encoding="utf-8"), debug=debug)

    @property
    def uid(self) -> str:
        """
        A five character fingerprint of the stateful fields.
        """
        return dict_hash(self.to_dict(ignore_stateless=True), hash_len=5)

    def freeze(self) -> None:
        """
        Forbids assignments to this configuration and to every nested configuration.
        """
        object.__setattr__(self, "_freeze", True)
        for nested in self._nested():
            nested.freeze()

    def unfreeze(self) -> None:
        object.__setattr__(self, "_freeze", False)
        for nested in self._nested():
            nested.unfreeze()

    def _nested(self) -> ty.Iterator["ConfigBase"]:
        for name, annotation in self.annotations.items():
            value = getattr(self, name)
            if value is None or not hasattr(annotation.variable_type, "config_class"):
                continue
            yield from value if annotation.collection == List else [value]
