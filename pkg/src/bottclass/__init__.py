"""Exact cohomology, Chern classes and Bott diagrams of Z-trivial Bott towers."""

from .census import enumerate_labelled, enumerate_shapes
from .deck import Ambiguous, Deck, InvalidDeck, count_copies, make_deck, reconstruct
from .errors import ParseError
from .forest import BottDiagram, InvalidDiagram, canonical_code, isomorphic, levels
from .ring import (
    PresentationMismatch,
    RingElement,
    RingPresentation,
    graded_component,
    multiply,
    reduce,
    total_chern,
)
from .tower import (
    BottMatrix,
    NotZTrivial,
    ZBasis,
    biholomorphic,
    chern_in_z_basis,
    diagram,
    presentation,
    tower_of_diagram,
    z_basis,
)

__version__ = "0.1.0"
