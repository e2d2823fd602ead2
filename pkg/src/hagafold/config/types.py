"""
Custom types for runtime checking of configuration values
"""

import inspect
import typing as ty
from collections import namedtuple
from enum import Enum as _Enum
from fractions import Fraction

from hagafold.utils import parse_rational

T = ty.TypeVar("T")


# pylint: disable=deprecated-typing-alias
class List(ty.List[T]):
    """
    A class for list data type, used when you need to annotate an attribute as a list.
    Remember to wrap the type of the list elements in ``List[]``, e.g. ``List[str]``,
    ``List[Fraction]``.

    Examples
    --------
    >>> @config
    >>> class MyConfig:
    >>>     e_values: List[Fraction]

    Values are cast to the element type when possible:

    >>> MyConfig(e_values=["1/2", 3])
    MyConfig(e_values=['1/2', '3'])
    """


class Optional(ty.Generic[T]):
    """
    A class for optional data types. An optional attribute can be left empty, in which
    case it is ``None``.

    Examples
    --------
    >>> @config
    >>> class MyConfig:
    >>>     caption: Optional[str]
    >>> MyConfig()
    MyConfig(caption=None)
    """


class Stateful(ty.Generic[T]):
    """
    The default state of an attribute. Stateful attributes take part in the
    configuration fingerprint ``uid``.
    """


class Stateless(ty.Generic[T]):
    """
    Stateless attributes can change between runs without changing the meaning of the
    configuration, e.g. an output path or the number of workers. They are ignored by the
    configuration fingerprint ``uid``.
    """


Type = type


class Enum(_Enum):
    """
    A custom Enum class that compares equal to its raw values. This lets enumeration
    members be read back from YAML and JSON documents without a conversion step.

    Examples
    --------
    >>> class Color(Enum):
    >>>     RED = "red"
    >>> Color.RED == "red"
    True
    """

    def __eq__(self, __o: object) -> bool:
        val = __o
        if not isinstance(val, type(self)):
            try:
                val = type(self)(val)
            except ValueError:
                return False
        return super().__eq__(val)

    def __hash__(self) -> int:
        return _Enum.__hash__(self)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.value.__repr__()})"


# Each annotation is of the format
# "STATE", "OPTIONAL", "COLLECTION", "TYPE"

ALLOWED_TYPES = (int, float, str, bool, Fraction, None)

ALLOWED_COLLECTIONS = (
    None,
    List,
    Type,
    Enum,
)
Annotation = namedtuple(
    "Annotation", ["state", "optional", "collection", "variable_type"]
)


def _val2bool(val: str | bool) -> bool:
    """
    _val2bool parses the string representation as a boolean expression. It
    returns `True` if `val` is in ["true", "t", "1"] (case-insentivive)
    and `False` if `val` is in ["false", "f", "0"] (case-insentivive).

    Raises
    ------
    ValueError
        It raises an error if `val` is not in ["true", "t", "1", "false", "f", "0"] (case-insentivive).
    """
    if isinstance(val, bool):
        return val
    if str(val).lower() in {"true", "t", "1"}:
        return True
    if str(val).lower() in {"false", "f", "0"}:
        return False
    raise ValueError(f"Cannot parse {val} as bool.")


def _cast(variable_type: type, val: ty.Any) -> ty.Any:
    if variable_type is Fraction:
        return parse_rational(val)
    if variable_type is bool:
        return _val2bool(val)
    return variable_type(val)


def _strip_hint_state(type_hint: type[ty.Any]) -> tuple:
    """
    Strips the hint state from a type hint.

    Examples
    --------
    >>> _strip_hint_state(Stateless[int])
    (Stateless, int)
    """
    origin = ty.get_origin(type_hint)
    if origin in [Stateful, Stateless]:
        assert len(type_hint.__args__) == 1
        return origin, type_hint.__args__[0]

    return Stateful, type_hint


def _strip_hint_optional(type_hint: type[ty.Any]) -> tuple:
    if ty.get_origin(type_hint) == Optional:
        args = ty.get_args(type_hint)
        assert len(args) == 1
        return True, args[0]
    return False, type_hint


def _strip_hint_collection(type_hint: type[ty.Any]) -> tuple:
    """
    Strips the collection from a type hint.

    Raises
    ------
    NotImplementedError
        If the type hint is not valid or custom classes don't implement __dict__.
    ValueError
        If the type hint is a string such as a forward reference, e.g. "Class"

    Examples
    --------
    >>> _strip_hint_collection(List[Fraction])
    (List, Fraction)
    """
    origin = ty.get_origin(type_hint)
    assert origin in ALLOWED_COLLECTIONS, f"Invalid collection {origin}."
    if origin is None and type_hint in ALLOWED_TYPES:
        return None, type_hint
    if origin == List:
        args = ty.get_args(type_hint)
        assert len(args) == 1
        return List, args[0]
    if isinstance(type_hint, str):
        raise ValueError("Does not support forward reference configuration types.")
    if issubclass(type_hint, Enum):
        valid_values = [_v.value for _v in list(type_hint)]
        return type_hint, valid_values
    if isinstance(type(type_hint), Type) and hasattr(type_hint, "__dict__"):
        assert origin is None
        return Type, type_hint
    raise NotImplementedError(
        f"{type_hint} is not a valid hint. Custom classes must implement __dict__."
    )


def parse_type_hint(type_hint: type[ty.Any]) -> Annotation:
    """
    Parses a type hint and returns a parsed annotation.

    Parameters
    ----------
    type_hint : type[ty.Any]
        The input type hint to parse.

    Returns
    -------
    Annotation
        A namedtuple containing ``state``, ``optional``, ``collection``, and ``variable_type`` information.

    Examples
    --------
    >>> parse_type_hint(Optional[List[Fraction]])
    Annotation(state=Stateful, optional=True, collection=List, variable_type=Fraction)
    """
    state, _type_hint = _strip_hint_state(type_hint)

    optional, _type_hint = _strip_hint_optional(_type_hint)

    collection, variable_type = _strip_hint_collection(_type_hint)
    return Annotation(
        state=state,
        optional=optional,
        collection=collection,
        variable_type=variable_type,
    )


def _parse_class(cls: ty.Any, kwargs: dict | object, debug: bool = False) -> object:
    """
    Parse values of nested configuration types, either given as an instance or as
    the dictionary of its keyword arguments.

    Raises
    ------
    RuntimeError
        If the input kwargs is incompatible
    """
    if isinstance(kwargs, cls):
        return kwargs
    if not isinstance(kwargs, dict):
        raise RuntimeError(
            f"{cls} provided kwargs ({kwargs}) must be formatted as a dictionary."
        )
    kwargs = dict(kwargs)
    params = inspect.signature(cls).parameters.keys()
    if "debug" in params or hasattr(cls, "config_class"):
        kwargs["debug"] = debug
    return cls(**kwargs)


def parse_value(
    val: ty.Any, annot: Annotation, name: str | None = None, debug: bool = False
) -> ty.Any:
    """
    Parses a value based on the given annotation.

    Parameters
    ----------
    val : ty.Any
        The input value to parse.
    annot : Annotation
        The annotation namedtuple to guide the parsing.
    name : str | None
        The name of the value, by default ``None``.
    debug : bool, optional
        Whether to load the configuration in debug mode, and ignore discrepencies / errors, by default ``False``.

    Returns
    -------
    ty.Any
        The parsed value.

    Raises
    ------
    RuntimeError
        If the required value is missing and it is not optional or stateless.
    ValueError
        If the value of a list is not valid

    Examples
    --------
    >>> annotation = parse_type_hint(Optional[List[Fraction]])
    >>> parse_value(["1/2", 3], annotation)
    [Fraction(1, 2), Fraction(3, 1)]
    """
    if val is None:
        if not (annot.state is Stateless or annot.optional):
            raise RuntimeError(f"Missing required value for {name}.")
        return None
    if annot.collection == List:
        if not isinstance(val, (list, tuple)):
            raise ValueError(f"Invalid type {type(val)} for type List")
        if annot.variable_type in ALLOWED_TYPES:
            return [_cast(annot.variable_type, _v) for _v in val]
        if issubclass(annot.variable_type, Enum):
            return [annot.variable_type(_v) for _v in val]
        if issubclass(type(annot.variable_type), Type):
            _kwargs = annot._asdict()
            _kwargs["collection"] = Type
            return [parse_value(_v, Annotation(**_kwargs), debug=debug) for _v in val]
        raise ValueError(f"Invalid type {type(annot.variable_type)} and field {name}")
    if annot.collection == Type:
        return _parse_class(annot.variable_type, val, debug=debug)
    if annot.collection is None:
        return _cast(annot.variable_type, val)
    if issubclass(annot.collection, Enum):
        assert (
            val in annot.variable_type
        ), f"{val} is not supported by {annot.collection}"
        return annot.collection(val)
    raise NotImplementedError
