"""Frequent quadri-concept mining and profile-aware recommendation for folksonomies."""

from .model import (
    ConceptSet,
    Dimension,
    ElementId,
    PFolksonomy,
    QuadriConcept,
    SupportThresholds,
    build_pfolksonomy,
    is_maximal,
)
from .miner import KERNEL, filter_concepts, mine

__all__ = [
    "ConceptSet",
    "Dimension",
    "ElementId",
    "KERNEL",
    "PFolksonomy",
    "QuadriConcept",
    "SupportThresholds",
    "build_pfolksonomy",
    "filter_concepts",
    "is_maximal",
    "mine",
]
