"""Combinatorial scenes of reduced three-dimensional vector-field singularities.

Load a scene with :func:`load_scene`, check it with :func:`validate_all`, then
use :mod:`mark_calculus` for quasi-orders and saturation paths,
:mod:`fattening` for the symbolic fattening and :mod:`numeric_oracle` for
numerical cross-checks on linear saddles.
"""

from .core_model import FoliatedScene, build_scene, load_scene, serialize
from .errors import SceneError
from .validators import ValidationReport, Violation, validate_all

__version__ = "0.1.0"

__all__ = [
    "FoliatedScene",
    "SceneError",
    "ValidationReport",
    "Violation",
    "build_scene",
    "load_scene",
    "serialize",
    "validate_all",
]
