"""
Exact rational constructions of the generalized Haga fold of a square, with verification
of its circle and length theorems, a floating point oracle and SVG figures.
"""

__version__ = "0.1.0"

from hagafold.kernel import Circle, GeometryError, Line, Point, rat

from hagafold.tritangent import RightTriangleFrame, TritangentKind

from hagafold.fold import CircleSet, HagaCase, HagaConfig, build, circle_set, classify

from hagafold.verifier import CheckId, Status, VerificationReport, sweep, verify
