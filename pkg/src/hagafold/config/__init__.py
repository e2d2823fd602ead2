"""
A typed, compositional configuration layer. Configuration classes are declared with the
``@config`` decorator and are parsed, validated, serialized to YAML and fingerprinted.
"""

from hagafold.config.types import (
    Annotation,
    Enum,
    List,
    Optional,
    Stateful,
    Stateless,
)

from hagafold.config.main import ConfigBase, config
