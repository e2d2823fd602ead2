import copy
import hashlib
import json
import re
import typing as ty
from collections import abc
from enum import Enum as _Enum
from fractions import Fraction
from functools import reduce

RATIONAL_PATTERN = re.compile(r"^-?\d+(/\d+)?$")


def format_rational(value: Fraction | int) -> str:
    """
    Formats an exact rational in its canonical string form.

    Parameters
    ----------
    value : Fraction | int
        the rational to format.

    Returns
    -------
    str
        ``"p/q"`` in lowest terms, or ``"p"`` when the denominator is 1.

    Examples
    --------
    >>> format_rational(Fraction(6, 4))
    '3/2'
    >>> format_rational(Fraction(-4, 2))
    '-2'
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(value: ty.Any) -> Fraction:
    """
    Parses the rational syntax ``P`` or ``P/Q`` used by the command line and
    the configuration files. Floats are rejected since they can not be carried
    exactly.

    Parameters
    ----------
    value : ty.Any
        a ``Fraction``, an ``int`` or a string in ``P/Q`` syntax.

    Returns
    -------
    Fraction
        the parsed rational in canonical form.

    Raises
    ------
    ValueError
        When the value is a float, a bool, malformed or has a zero denominator.
    """
    if isinstance(value, bool):
        raise ValueError(f"Can not parse {value} as a rational.")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(
            f"Can not parse float {value} as a rational. Use the `P/Q` syntax."
        )
    if not isinstance(value, str) or RATIONAL_PATTERN.match(value.strip()) is None:
        raise ValueError(f"Can not parse `{value}` as a rational. Expected `P/Q`.")
    numerator, _, denominator = value.strip().partition("/")
    if denominator and int(denominator) == 0:
        raise ValueError(f"Zero denominator in `{value}`.")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def to_jsonable(obj: ty.Any) -> ty.Any:
    """
    Converts exact geometric values to JSON compatible primitives. Rationals become
    ``"p/q"`` strings and objects exposing ``to_json`` (points, lines, circles) are
    converted with it.

    Parameters
    ----------
    obj : ty.Any
        the value to convert.

    Returns
    -------
    ty.Any
        the JSON compatible representation.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (Fraction, int)):
        return format_rational(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, _Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"Can not convert {type(obj).__name__} to JSON.")


def flatten_nested_dict(
    dict_: dict, expand_list: bool = True, seperator: str = "."
) -> dict[str, ty.Any]:
    """
    Flattens a nested dictionary, expanding lists and tuples if specified.

    Parameters
    ----------
    dict_ : dict
        The input dictionary to be flattened.
    expand_list : bool
        Whether to expand lists and tuples in the dictionary, by default ``True``.
    seperator : str
        The separator used for joining the keys, by default ``"."``.

    Returns
    -------
    dict[str, ty.Any]
        The flattened dictionary.

    Examples
    --------
    >>> flatten_nested_dict({"oracle": {"tolerance": 1e-9}, "e_values": ["1/2", "3"]})
    {'oracle.tolerance': 1e-09, 'e_values.0': '1/2', 'e_values.1': '3'}
    """
    flatten_dict = copy.deepcopy(dict_)
    for k, v in dict_.items():
        _gen: ty.Optional[abc.Iterable] = None
        if isinstance(v, dict):
            _gen = v.items()

        if isinstance(v, (list, tuple)) and expand_list:
            _gen = enumerate(v)

        if _gen is not None:
            del flatten_dict[k]
            for _k, _v in _gen:
                flatten_dict[f"{k}{seperator}{_k}"] = _v

    nested = (dict, list, tuple) if expand_list else (dict,)
    if any(isinstance(v, nested) for v in flatten_dict.values()):
        return flatten_nested_dict(flatten_dict, expand_list, seperator)
    return flatten_dict


def dict_hash(*dictionaries: dict[str, ty.Any], hash_len: int = 4) -> str:
    """
    Calculates the MD5 hash of one or more dictionaries. The keys are sorted so that
    the hash does not depend on insertion order.

    Parameters
    ----------
    *dictionaries : dict[str, ty.Any]
        One or more dictionaries to calculate the hash for.
    hash_len : int
        The length of the hash to return, by default ``4``.

    Returns
    -------
    str
        The MD5 hash of the dictionaries.
    """
    dictionary = reduce(
        lambda a, b: {**a, **b}, [copy.deepcopy(_) for _ in dictionaries]
    )
    dhash = hashlib.md5()
    dictionary = flatten_nested_dict(dictionary)
    _dict = {}
    for k, v in dictionary.items():
        if isinstance(v, Fraction):
            v = format_rational(v)
        elif not isinstance(v, (bool, str, int, float, type(None))):
            v = getattr(v, "__name__", str(v))
        _dict[k] = v

    encoded = json.dumps(_dict, sort_keys=True).encode()
    dhash.update(encoded)
    return dhash.hexdigest()[:hash_len]
