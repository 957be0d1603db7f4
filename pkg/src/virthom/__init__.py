"""virthom: homology of finite covers as a detector for free-group
automorphisms and braid-theoretic spectral bounds.

The library has two halves that meet in the middle:

* group theory — finite quotients of free and surface groups, their
  covers, the deck action on cover homology, and catalog-driven witness
  searches (faithfulness, non-innerness, conjugacy separation);
* braids — reduced Burau and Lawrence–Krammer matrices over exact
  Laurent rings, with spectral suprema over the unit circle/torus and
  dilatation comparisons.

See the README for the command-line interface.
"""

from .words import (
    Endo,
    Presentation,
    Word,
    braid_to_endo,
    compose,
    conjugation_endo,
    endo_from_strings,
    format_word,
    free_reduce,
    identity_endo,
    parse_word,
)
from .quotients import (
    FiniteQuotient,
    build_from_images,
    build_heisenberg_mod_p,
    build_mod_m_abelian,
    compose_tower,
    conjugacy_classes,
    nielsen_generators,
    verify_characteristic,
)
from .covers import (
    CoverHomology,
    KernelNotPreserved,
    SchreierData,
    build_schreier,
    homology,
    induced_automorphism,
    induced_deck,
    rewrite,
)
from .rep_theory import (
    deck_character,
    fixed_subspace,
    reducibility_report,
    verify_chevalley_weil,
)
from .detectors import (
    NO_OBSTRUCTION,
    OBSTRUCTION_FOUND,
    Witness,
    classify_witnesses,
    conjugacy_separation,
    expansion_separates,
    faithfulness_witness,
    finite_type_expansion,
    non_inner_witness,
)
from .burau import (
    SpectralSupremum,
    burau_reduced,
    burau_unreduced,
    circle_supremum,
    dilatation_root,
    fox_derivative,
    lk_matrix,
    specialize,
    spectral_radius,
    torus_supremum,
)
from .catalog import default_catalog, load_catalog, save_catalog
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "Endo",
    "Presentation",
    "Word",
    "braid_to_endo",
    "compose",
    "conjugation_endo",
    "endo_from_strings",
    "format_word",
    "free_reduce",
    "identity_endo",
    "parse_word",
    "FiniteQuotient",
    "build_from_images",
    "build_heisenberg_mod_p",
    "build_mod_m_abelian",
    "compose_tower",
    "conjugacy_classes",
    "nielsen_generators",
    "verify_characteristic",
    "CoverHomology",
    "KernelNotPreserved",
    "SchreierData",
    "build_schreier",
    "homology",
    "induced_automorphism",
    "induced_deck",
    "rewrite",
    "deck_character",
    "fixed_subspace",
    "reducibility_report",
    "verify_chevalley_weil",
    "NO_OBSTRUCTION",
    "OBSTRUCTION_FOUND",
    "Witness",
    "classify_witnesses",
    "conjugacy_separation",
    "expansion_separates",
    "faithfulness_witness",
    "finite_type_expansion",
    "non_inner_witness",
    "SpectralSupremum",
    "burau_reduced",
    "burau_unreduced",
    "circle_supremum",
    "dilatation_root",
    "fox_derivative",
    "lk_matrix",
    "specialize",
    "spectral_radius",
    "torus_supremum",
    "LaurentPoly",
    "default_catalog",
    "load_catalog",
    "save_catalog",
    "__version__",
]
