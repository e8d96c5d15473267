"""Exact symbolic engine for the blowup calculus of sphere classes.

Modules:
    rings     -- rationals, polynomials in x, truncated t-series,
                 polynomials in q and in the sphere class alpha
    elliptic  -- the blowup power series B, S, Delta, Q, q from
                 Weierstrass data, with machine-checked identities
    model     -- formal evaluation of exceptional-class expressions
                 under twist patterns
    embedded  -- structure equations of embedded spheres
    immersed  -- the inductive machine for immersed-sphere structure
                 equations in q-normal form, plus finite-type orders
    lens      -- flat character classes of L(p,1) and charge posets
    emit      -- text / JSON / LaTeX / DOT emitters
    cli       -- command-line front end
"""

from .elliptic import BlowupFunctions, blowup_functions, verify_elliptic_identities
from .embedded import EmbeddedRelation, derive_embedded, verify_embedded_relation
from .immersed import NormalForm, derive_immersed, finite_type_order, shift_reduce
from .lens import (
    FlatClass,
    PosetJ,
    build_poset,
    character_variety,
    dim_cylinder,
    dim_end,
    minimal_energy,
    render_poset,
)
from .rings import PolyX, QPoly, AlphaPoly, SeriesT, rat

__all__ = [
    "AlphaPoly",
    "BlowupFunctions",
    "EmbeddedRelation",
    "FlatClass",
    "NormalForm",
    "PolyX",
    "PosetJ",
    "QPoly",
    "SeriesT",
    "blowup_functions",
    "build_poset",
    "character_variety",
    "derive_embedded",
    "derive_immersed",
    "dim_cylinder",
    "dim_end",
    "finite_type_order",
    "minimal_energy",
    "rat",
    "render_poset",
    "shift_reduce",
    "verify_elliptic_identities",
    "verify_embedded_relation",
]

__version__ = "1.0.0"
