"""Seeded random instantiations of every catalog type.

Each named character of the tables (sigma, chi, chi1, chi2, xi, mu) is
declared as a generator in one of several modes:

    unramified   free unramified generator
    ramified     free ramified generator
    chi_Kk       substitution g = chi_{K/k}
    order2       unramified generator of order 2
    order2r      ramified generator of order 2
    shifted      substitution g = nu^{+-1/2} eta, eta free unramified
    trivial      substitution g = 1

xi is always non-trivial quadratic (chi_Kk, order2 or order2r), which
covers both outcomes of the guards xi = chi_{K/k}.  The context is built
twice: once to compute the central character omega, then again with
abstract K-characters lam, lam_alt (restriction omega), lam_off
(restriction omega * nu) and, for dihedral pi, mL and mL_conj.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import (SCHEMA, TYPE_SYMBOLS, Cuspidal, DeclaredPredicate, GSp4Rep, OpaqueCuspidal,
                      central_character, make_rep)
from .characters import (CharacterContext, CharacterK, ExtensionDatum, GeneratorDecl, KGeneratorDecl, Word)
from .notation import Scope

__all__ = ["Instance", "MODES", "instantiate", "instances", "mode_declaration"]

MODES = ("unramified", "ramified", "chi_Kk", "order2", "order2r", "shifted", "trivial")
XI_MODES = ("chi_Kk", "order2", "order2r")
MU_MODES = ("unramified", "shifted", "order2", "chi_Kk")


def mode_declaration(name: str, mode: str, shift=Fraction(1, 2)) -> GeneratorDecl:
    if mode == "unramified":
        return GeneratorDecl(name, ramified=False)
    if mode == "ramified":
        return GeneratorDecl(name, ramified=True)
    if mode == "chi_Kk":
        return GeneratorDecl(name, eq=Word.of((), 0, 1))
    if mode == "order2":
        return GeneratorDecl(name, ramified=False, order=2)
    if mode == "order2r":
        return GeneratorDecl(name, ramified=True, order=2)
    if mode == "shifted":
        return GeneratorDecl(name, eq=Word.of({"eta": 1}, shift))
    if mode == "trivial":
        return GeneratorDecl(name, eq=Word.of())
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class Instance:
    scope: Scope
    rep: GSp4Rep
    lambdas: list[CharacterK]
    modes: dict[str, str] = field(default_factory=dict)
    flags: dict[str, object] = field(default_factory=dict)

    @property
    def ctx(self) -> CharacterContext:
        return self.scope.ctx

    @property
    def mu(self):
        return self.ctx.gen("mu")

    def describe(self) -> str:
        modes = ", ".join(f"{k}={v}" for k, v in sorted(self.modes.items()))
        flags = ", ".join(f"{k}={v}" for k, v in sorted(self.flags.items()))
        return f"{self.rep.type} over {self.ctx.extension.kind} K/k [{modes}] [{flags}] : {self.rep}"


def _needed(type_: str) -> list[str]:
    params = [p for p in SCHEMA[type_] if p not in ("pi", "data")]
    return params + ["mu"]


def _choose(rng: random.Random, type_: str, ext: str, overrides: dict | None) -> dict[str, str]:
    modes = {}
    for name in _needed(type_):
        if name == "xi":
            choices = XI_MODES
        elif name == "mu":
            choices = MU_MODES if ext == "unramified" else MU_MODES[:3]
        else:
            choices = MODES
        modes[name] = rng.choice(choices)
    modes.update(overrides or {})
    return modes


def _declarations(modes: dict[str, str], shifts: dict[str, Fraction]) -> list[GeneratorDecl]:
    decls = [GeneratorDecl("eta", ramified=False)]
    decls += [mode_declaration(name, mode, shifts.get(name, Fraction(1, 2))) for name, mode in modes.items()]
    return decls


def instantiate(type_: str, rng: random.Random, ext: str | None = None,
                modes: dict[str, str] | None = None, flags: dict | None = None) -> Instance:
    """A random instance of ``type_``; ``modes``/``flags`` pin selected choices."""
    if type_ not in TYPE_SYMBOLS:
        raise ValueError(f"unknown type {type_!r}")
    ext = ext or rng.choice(("unramified", "ramified"))
    mode_map = _choose(rng, type_, ext, modes)
    if ext == "ramified" and mode_map.get("mu") == "chi_Kk":
        mode_map["mu"] = "unramified"
    shifts = {name: rng.choice((Fraction(1, 2), Fraction(-1, 2), Fraction(1))) for name in mode_map}
    pinned = dict(flags or {})
    flags = dict(pinned)
    flags.setdefault("hom", rng.random() < 0.5)          # default of Hom_T(pi, Lambda) != 0
    flags.setdefault("hom_lam", rng.random() < 0.5)      # override at Lambda = lam
    flags.setdefault("jl", rng.choice((None, True, False)))
    flags.setdefault("dihedral", rng.random() < 0.5)
    flags.setdefault("omega_pi", rng.choice(("trivial", "sigma2", "eta")))
    flags.setdefault("models", rng.random() < 0.5)
    if type_ in ("XIa", "XIb", "XIa*"):
        flags["omega_pi"] = "trivial"
    if type_ in ("IXa", "IXb") and mode_map["xi"] == "chi_Kk":
        flags["dihedral"] = pinned.get("dihedral", True)

    decls = _declarations(mode_map, shifts)
    ext_datum = ExtensionDatum(ext)

    def build(k_decls=()):
        ctx = CharacterContext(ext_datum, decls, k_decls)
        scope = Scope(ctx)
        omega_pi = {"trivial": ctx.trivial(), "eta": ctx.gen("eta"),
                    "sigma2": ctx.gen("eta") ** 2}[flags["omega_pi"]]
        return scope, omega_pi

    scope0, omega_pi0 = build()
    rep0 = _make(type_, scope0, omega_pi0, flags, dihedral=None)
    omega = central_character(rep0).to_word()
    off = (central_character(rep0) * scope0.ctx.nu(1)).to_word()
    k_decls = [KGeneratorDecl("lam", omega), KGeneratorDecl("lam_alt", omega), KGeneratorDecl("lam_off", off),
               KGeneratorDecl("mL", omega), KGeneratorDecl("mL_conj", omega)]
    scope, omega_pi = build(k_decls)
    ctx = scope.ctx
    dihedral = (ctx.kgen("mL"), ctx.kgen("mL_conj")) if flags["dihedral"] else None
    rep = _make(type_, scope, omega_pi, flags, dihedral)

    lambdas = [ctx.kgen("lam"), ctx.kgen("lam_alt"), ctx.kgen("lam_off"), ctx.kgen("mL"), ctx.kgen("mL_conj")]
    for name in ("sigma", "chi", "xi", "chi1", "chi2"):
        if ctx.has_generator(name):
            lambdas.append(ctx.norm(ctx.gen(name)))
    if ctx.has_generator("sigma"):
        s = ctx.gen("sigma")
        for other in ("chi", "xi", "chi1"):
            if ctx.has_generator(other):
                lambdas.append(ctx.norm(ctx.gen(other) * s))
        lambdas.append(ctx.norm(ctx.nu(1) * s))
    lambdas.append(ctx.k_trivial())
    unique = []
    for lam in lambdas:
        if lam not in unique:
            unique.append(lam)
    return Instance(scope, rep, unique, mode_map, flags)


def _make(type_: str, scope: Scope, omega_pi, flags: dict, dihedral) -> GSp4Rep:
    ctx = scope.ctx
    params = {}
    for name in SCHEMA[type_]:
        if name == "pi":
            overrides = ()
            if ctx.has_k_generator("lam"):
                overrides = ((ctx.kgen("lam"), flags["hom_lam"]),)
            jl = None if flags["jl"] is None else DeclaredPredicate(flags["jl"], (), "Jacquet-Langlands flag")
            params[name] = scope.add_cusp(Cuspidal("pi", omega_pi, DeclaredPredicate(flags["hom"], overrides),
                                                   jl, dihedral))
        elif name == "data":
            models = DeclaredPredicate(flags["models"], (), "Bessel-model declaration")
            params[name] = scope.add_opaque(OpaqueCuspidal("Theta", omega_pi, models))
        else:
            params[name] = ctx.gen(name)
    return make_rep(type_, **params)


def instances(type_: str, count: int, seed: int = 0, **kw):
    """``count`` reproducible instances of ``type_``."""
    rng = random.Random(f"{seed}:{type_}")
    return [instantiate(type_, rng, **kw) for _ in range(count)]
