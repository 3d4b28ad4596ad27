"""Spinor L-factors of irreducible GSp(4) representations via anisotropic Bessel models."""

from .bessel import (LFactorTriple, anisotropic_lambda_condition, h_functional_dim, has_anisotropic_bessel,
                     l_exceptional, l_full_anisotropic, l_full_any_model, l_regular, lfactor_query)
from .catalog import (TYPE_SYMBOLS, BesselDatum, Cuspidal, DeclaredPredicate, GSp4Rep, OneDimensional,
                      OpaqueCuspidal, PrincipalSeries, Special, central_character, is_extended_sk, is_generic,
                      make_rep, twist)
from .characters import (Character, CharacterContext, CharacterK, ExtensionDatum, GeneratorDecl, KGeneratorDecl,
                         Word)
from .errors import GSp4Error, InputError, NoBesselModelError, UndeclaredFlagError
from .euler import EulerFactor, tate_factor, tate_product
from .notation import NotationError, Scope, parse_character, parse_factor, parse_rep, print_factor, print_rep
from .packets import endoscopic_packet, sk_packet, verify_packet_identity

__version__ = "0.1.0"
