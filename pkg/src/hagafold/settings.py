"""
Configuration classes of the command line surface. They are plain ``@config``
classes, so they load from and write to YAML and carry a fingerprint ``uid``.
"""

from fractions import Fraction

from hagafold.config import List, Optional, Stateless, config
from hagafold.search_space import CategoricalDistribution, Distribution, SearchSpace


@config
class OracleConfig:
    """
    Settings of the floating point cross-check.

    Parameters
    ----------
    enabled : bool
        whether to run the oracle next to the exact verification.
    tolerance : float
        the largest discrepancy accepted between the two.
    exclusion : float
        configurations with ``|e - 2d|`` below it are skipped by the oracle.
    """

    enabled: bool = False
    tolerance: float = 1e-9
    exclusion: float = 1e-6


@config
class SweepConfig:
    """
    A sweep of the ordinate ``e`` over a fixed square of side ``d``. The grid is either
    an explicit list ``e_values`` or ``steps`` equal intervals of ``[e_from, e_to]``.

    Examples
    --------
    >>> SweepConfig(d=1, e_from=0, e_to=1, steps=2).e_grid()
    [Fraction(0, 1), Fraction(1, 2), Fraction(1, 1)]
    """

    d: Fraction = Fraction(1)
    e_from: Optional[Fraction] = None
    e_to: Optional[Fraction] = None
    steps: Optional[int] = None
    e_values: Optional[List[Fraction]] = None
    oracle: OracleConfig = OracleConfig()
    workers: Stateless[int] = 1
    output: Stateless[Optional[str]] = None

    def validate(self) -> None:
        """
        Raises
        ------
        ValueError
            When ``d <= 0``, when both or neither grid forms are given, or when the
            range grid is invalid.
        """
        if self.d <= 0:
            raise ValueError(f"The side of the square must be positive, got {self.d}.")
        range_values = (self.e_from, self.e_to, self.steps)
        has_range = any(v is not None for v in range_values)
        if (self.e_values is not None) == has_range:
            raise ValueError(
                "Provide either `e_values` or all of `e_from`, `e_to` and `steps`."
            )
        if has_range and any(v is None for v in range_values):
            raise ValueError("`e_from`, `e_to` and `steps` must be given together.")
        if self.workers < 1:
            raise ValueError(f"`workers` must be at least 1, got {self.workers}.")

    def search_space(self) -> SearchSpace:
        self.validate()
        if self.e_values is not None:
            grid = CategoricalDistribution(self.e_values)
        else:
            grid = Distribution(self.e_from, self.e_to, n_bins=self.steps)
        return SearchSpace({"d": self.d, "e": grid})

    def e_grid(self) -> list[Fraction]:
        return [point["e"] for point in self.search_space().expand()]


@config
class FigureConfig:
    """
    A figure of one fold with a selection of its named circles.

    Parameters
    ----------
    d : Fraction
        the side of the square.
    e : Fraction
        the ordinate of ``E``.
    circles : List[str]
        names of the circles to draw, e.g. ``["alpha", "delta"]``.
    caption : Optional[str]
        a caption written under the figure.
    height : int
        the height of the drawing in pixels.
    margin : Fraction
        the margin around the bounding box, as a fraction of each side.
    font_size : int
        the font size of the labels in pixels.
    output : Stateless[Optional[str]]
        where to write the SVG document.
    """

    d: Fraction = Fraction(1)
    e: Fraction = Fraction(1, 2)
    circles: List[str] = []
    caption: Optional[str] = None
    height: int = 600
    margin: Fraction = Fraction(1, 10)
    font_size: int = 14
    output: Stateless[Optional[str]] = None
