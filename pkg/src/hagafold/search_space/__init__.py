from hagafold.search_space.main import (
    CategoricalDistribution,
    Distribution,
    SearchSpace,
)
