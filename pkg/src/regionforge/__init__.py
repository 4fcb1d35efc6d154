"""regionforge: link diagrams as 4-valent planar maps, with certified moves.

The library builds diagrams whose complementary regions hit a prescribed
size census (triangles-and-quadrilaterals realizations and the related
universal region sequences), checking every construction step with exact
region counts and replayable move logs.
"""

from .planar import (
    DiagramError,
    FaceCensus,
    PlaneDiagram,
    ValidationReport,
    circle_diagram,
    euler_identity,
    face_census,
    is_reduced,
    kink_diagram,
    positive_kink,
    random_diagram,
    validate,
    writhe,
)

__all__ = [
    "DiagramError",
    "FaceCensus",
    "PlaneDiagram",
    "ValidationReport",
    "circle_diagram",
    "euler_identity",
    "face_census",
    "is_reduced",
    "kink_diagram",
    "positive_kink",
    "random_diagram",
    "validate",
    "writhe",
]

__version__ = "0.1.0"
