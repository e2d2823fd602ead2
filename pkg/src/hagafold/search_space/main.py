import copy
import typing as ty
from fractions import Fraction

from hagafold.utils import parse_rational


class Distribution:
    """
    Distribution represents an exact rational grid over a closed range, split into
    ``n_bins`` equal intervals.

    Parameters
    ----------
    low : Fraction | int | str
        the lower end of the range. It is inclusive.
    high : Fraction | int | str
        the upper end of the range. It is inclusive.
    n_bins : int
        the number of intervals, the grid has ``n_bins + 1`` points.

    Raises
    ------
    ValueError
        When `n_bins` is not > 0
    ValueError
        When low > high

    Examples
    --------
    >>> d = Distribution(0, 1, n_bins=4)
    >>> d.expand()
    [Fraction(0, 1), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1, 1)]
    """

    low: Fraction
    high: Fraction
    n_bins: int

    def __init__(
        self,
        low: Fraction | int | str,
        high: Fraction | int | str,
        n_bins: int,
    ) -> None:
        self.n_bins = int(n_bins)
        if self.n_bins <= 0:
            raise ValueError("`n_bins` must be greater than 0.")
        self.low = parse_rational(low)
        self.high = parse_rational(high)
        if self.low > self.high:
            raise ValueError(f"Invalid arguments. low>high for {type(self).__name__}.")

    def expand(self) -> list[Fraction]:
        step = (self.high - self.low) / self.n_bins
        return sorted({self.low + k * step for k in range(self.n_bins + 1)})

    def contains(self, value: Fraction | int | str) -> bool:
        return self.low <= parse_rational(value) <= self.high

    def __repr__(self) -> str:
        return f"Distribution(low={self.low!r}, high={self.high!r}, n_bins={self.n_bins})"


class CategoricalDistribution:
    """
    CategoricalDistribution represents an explicit list of outcomes. An outcome can
    itself be a ``Distribution``, in which case its grid is spliced in its place.

    Parameters
    ----------
    choices : list[ty.Any]
        the discrete outcomes.

    Raises
    ------
    ValueError
        When choices does not contain any elements.

    Examples
    --------
    >>> d = CategoricalDistribution([Distribution(0, 1, n_bins=2), Fraction(5, 3)])
    >>> d.expand()
    [Fraction(0, 1), Fraction(1, 2), Fraction(1, 1), Fraction(5, 3)]
    """

    choices: list

    def __init__(self, choices: list[ty.Any]) -> None:
        self.choices = list(choices)
        if len(self.choices) == 0:
            raise ValueError(
                f"Must provide at least one item for {type(self).__name__}"
            )

    def expand(self) -> list:
        expanded: list = []
        for choice in self.choices:
            if isinstance(choice, (Distribution, CategoricalDistribution)):
                expanded.extend(choice.expand())
            else:
                expanded.append(choice)
        return expanded

    def contains(self, value) -> bool:
        return value in self.expand()


class SearchSpace:
    """
    A SearchSpace maps configuration field names to the values they range over. Its
    expansion is the cartesian product of the value grids, in declaration order.

    Parameters
    ----------
    search_space : dict[str, Distribution | CategoricalDistribution | ty.Any]
        The keys are configuration field names. Values that are neither distributions
        nor lists are held fixed.

    Examples
    --------
    >>> space = SearchSpace({"d": 1, "e": Distribution(0, 2, n_bins=2)})
    >>> space.expand()
    [{'d': 1, 'e': Fraction(0, 1)}, {'d': 1, 'e': Fraction(1, 1)}, {'d': 1, 'e': Fraction(2, 1)}]
    """

    def __init__(
        self, search_space: dict[str, Distribution | CategoricalDistribution | ty.Any]
    ) -> None:
        self.search_space = search_space

    def expand(self) -> list[dict[str, ty.Any]]:
        return expand_dict(self.search_space)

    def __len__(self) -> int:
        return len(self.expand())


def expand_item(
    configs: list[dict[str, ty.Any]],
    value: Distribution | CategoricalDistribution | ty.Any,
    key: str,
) -> list[dict[str, ty.Any]]:
    _configs = []
    expanded_space: list[ty.Any]
    if isinstance(value, (Distribution, CategoricalDistribution)):
        expanded_space = value.expand()
    elif isinstance(value, list):
        expanded_space = value
    else:
        expanded_space = [value]
    for _config in configs:
        for _v in expanded_space:
            _config[key] = _v
            _configs.append(copy.deepcopy(_config))
    return _configs


def expand_dict(
    search_space: dict[str, Distribution | CategoricalDistribution | ty.Any]
) -> list[dict[str, ty.Any]]:
    configs: list[dict[str, ty.Any]] = [{}]

    for k, v in search_space.items():
        try:
            configs = expand_item(configs, v, k)
        except ValueError as e:
            raise ValueError(f"Invalid search space for {k}. {str(e)}") from e
    return configs
