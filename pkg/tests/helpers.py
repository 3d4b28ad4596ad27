"""Shared constructors for the tests."""

import random

from gsp4_lfactors.characters import CharacterContext, GeneratorDecl
from gsp4_lfactors.instances import _needed, instantiate


def make_ctx(ext="unramified", k_generators=(), **decls):
    """Context from keyword declarations: None (free unramified), "ramified", an int order, or a Word."""
    out = []
    for name, spec in decls.items():
        if spec is None:
            out.append(GeneratorDecl(name, ramified=False))
        elif spec == "ramified":
            out.append(GeneratorDecl(name, ramified=True))
        elif isinstance(spec, int):
            out.append(GeneratorDecl(name, ramified=False, order=spec))
        else:
            out.append(GeneratorDecl(name, eq=spec))
    return CharacterContext(ext, out, k_generators)


def generic_instance(type_, modes=None, **flags):
    """Free unramified generators, xi of order 2, pi with central character eta; ``modes`` overrides."""
    base_modes = dict.fromkeys(("sigma", "chi", "chi1", "chi2", "mu"), "unramified")
    base_modes["xi"] = "order2"
    base_modes.update(modes or {})
    modes = {name: mode for name, mode in base_modes.items() if name in _needed(type_)}
    base = {"omega_pi": "eta", "hom": True, "jl": None, "dihedral": False, "models": True}
    base.update(flags)
    return instantiate(type_, random.Random(0), ext="unramified", modes=modes, flags=base)


# Instances on which each anisotropic row admits some Lambda: the guard xi = chi_{K/k}
# needs xi identified with chi_{K/k}; the Waldspurger-filtered rows need their flag.
ADMITTING = {
    "Vd": dict(modes={"xi": "chi_Kk"}),
    "Va*": dict(modes={"xi": "chi_Kk"}),
    "IXb": dict(modes={"xi": "chi_Kk"}, dihedral=True),
    "VIIIb": dict(hom=False),
    "XIa*": dict(jl=True),
}


def admitting_instance(type_):
    return generic_instance(type_, **ADMITTING.get(type_, {}))


def sign_name(inst):
    return "xi" if inst.modes.get("xi") == "chi_Kk" else None
